//! Steady-state observables: heat currents, amplification factors, the
//! closed-form fully common case and lambda scans.

mod amplification;
mod closed_form;
mod currents;
mod optimize;

pub use amplification::{
    amplification_factor, amplification_factor_with_step, AmplificationResult, DEFAULT_RELATIVE_STEP,
    DEGENERATE_CONTROL_RATIO,
};
pub use closed_form::{closed_form_populations, ClosedForm, RETAINED, VALIDITY_LIMIT};
pub use currents::{heat_currents, HeatCurrentTriple, STEADY_RESIDUAL_TOL};
pub use optimize::{optimize_lambda, AxisSummary, LambdaPoint, LambdaSurface, Trend};

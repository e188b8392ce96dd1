//! Master-equation dynamics: rate equations, steady states, time evolution
//! and driving.

mod dd;
mod drive;
mod evolve;
mod lindblad;
pub mod ode;
mod population;
mod rates;
mod steady;

pub(crate) use dd::Dd;
pub use drive::{apply_drive, Drivable, DriveSpec};
pub use evolve::{evolve_populations, evolve_with_rates};
pub use lindblad::{evolve_density_matrix, evolve_density_matrix_with, CMat8, DensityMatrix, Dissipator};
pub use population::{PopulationVector, POPULATION_TOL};
pub use rates::{bose_occupation, RateMatrix, KERNEL_CUTOFF};
pub(crate) use steady::stationary;
pub use steady::{solve_steady_state, steady_state};

use crate::error::Result;
use crate::params::SystemParams;
use crate::transistor::Transistor;

/// Rate matrix of the population equations for `params`.
pub fn rate_matrix(params: &SystemParams) -> Result<RateMatrix> {
    Ok(Transistor::new(*params)?.rates().clone())
}

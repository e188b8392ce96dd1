use crate::dynamics::{stationary, Dd};
use crate::error::{Error, Result};
use crate::params::{SystemParams, Terminal};
use crate::transistor::Transistor;

/// Default relative temperature step for the central differences.
pub const DEFAULT_RELATIVE_STEP: f64 = 1e-3;

/// `|dQ_M|` below this fraction of the largest current is treated as zero.
pub const DEGENERATE_CONTROL_RATIO: f64 = 1e-14;

/// `alpha_{L,R} = (dQ_{L,R}/dT_X) / (dQ_M/dT_X)` from central differences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplificationResult {
    pub alpha_l: f64,
    pub alpha_r: f64,
    pub control: Terminal,
    pub dt: f64,
    /// Largest change in either factor when the step is halved.
    pub convergence_estimate: f64,
}

impl AmplificationResult {
    /// `alpha_L + alpha_R + 1`, zero by current conservation.
    pub fn sum_rule_residual(&self) -> f64 {
        self.alpha_l + self.alpha_r + 1.0
    }
}

/// Amplification with the default step `T_X * 1e-3`. `rho44` is the
/// conserved dark-state population when all `lambda = 1`.
pub fn amplification_factor(
    params: &SystemParams,
    control: Terminal,
    rho44: Option<f64>,
) -> Result<AmplificationResult> {
    amplification_factor_with_step(
        params,
        control,
        params.temperature(control) * DEFAULT_RELATIVE_STEP,
        rho44,
    )
}

pub fn amplification_factor_with_step(
    params: &SystemParams,
    control: Terminal,
    dt: f64,
    rho44: Option<f64>,
) -> Result<AmplificationResult> {
    let tx = params.temperature(control);
    if !(dt > 0.0 && dt < tx) {
        return Err(Error::param(
            "dT",
            format!("step must lie in (0, T_X = {tx}), got {dt}"),
        ));
    }
    let coarse = central_difference(params, control, dt, rho44)?;
    let fine = central_difference(params, control, 0.5 * dt, rho44)?;
    Ok(AmplificationResult {
        alpha_l: coarse[0],
        alpha_r: coarse[1],
        control,
        dt,
        convergence_estimate: (coarse[0] - fine[0]).abs().max((coarse[1] - fine[1]).abs()),
    })
}

fn currents_at(params: &SystemParams, rho44: Option<f64>) -> Result<[Dd; 3]> {
    let t = Transistor::new(*params)?;
    Ok(t.currents_precise(&stationary(t.rates(), rho44)?))
}

fn central_difference(params: &SystemParams, control: Terminal, dt: f64, rho44: Option<f64>) -> Result<[f64; 2]> {
    let tx = params.temperature(control);
    let up = currents_at(&params.with_temperature(control, tx + dt), rho44)?;
    let down = currents_at(&params.with_temperature(control, tx - dt), rho44)?;
    let dq = |t: Terminal| (up[t.index()] - down[t.index()]).to_f64();
    let delta = dq(Terminal::M);
    let scale = up.iter().chain(&down).fold(0.0f64, |m, x| m.max(x.to_f64().abs()));
    if !(delta.abs() >= DEGENERATE_CONTROL_RATIO * scale) || delta == 0.0 {
        return Err(Error::DegenerateControl { delta, scale });
    }
    Ok([dq(Terminal::L) / delta, dq(Terminal::R) / delta])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig2_magnitude_and_sum_rule() {
        let p = SystemParams::reference().with_lambda([0.7; 3]);
        let a = amplification_factor(&p, Terminal::M, None).unwrap();
        assert!(a.alpha_l.abs() > 20.0 && a.alpha_l.abs() < 45.0, "{a:?}");
        assert!(a.sum_rule_residual().abs() < 1e-6, "{a:?}");
        assert!(a.convergence_estimate < 1e-3 * a.alpha_l.abs());
    }

    #[test]
    fn equal_temperatures_still_differentiate() {
        let p = SystemParams {
            temperature: [1.0; 3],
            ..SystemParams::reference().with_lambda([0.4; 3])
        };
        assert!(amplification_factor(&p, Terminal::M, None).is_ok());
    }

    #[test]
    fn rejects_bad_step() {
        let p = SystemParams::reference();
        assert!(amplification_factor_with_step(&p, Terminal::M, 2.0, None).is_err());
        assert!(amplification_factor_with_step(&p, Terminal::M, 0.0, None).is_err());
    }
}

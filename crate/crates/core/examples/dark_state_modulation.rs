//! Switching the heat flow on by rotating the conserved dark population
//! into a bright state.

use std::f64::consts::PI;

use thermal_transistor::dynamics::DriveSpec;
use thermal_transistor::experiments::run_modulation;
use thermal_transistor::model::EigenSystem;
use thermal_transistor::{SystemParams, Terminal};

fn main() -> thermal_transistor::Result<()> {
    let params = SystemParams {
        lambda: [1.0; 3],
        gamma: [0.004; 3],
        ..SystemParams::reference().with_g(0.7)
    }
    .with_temperature(Terminal::M, 3.0);
    let omega = 0.3;
    let drive = DriveSpec::new(omega, 0.7 * PI / omega, &EigenSystem::analytic(&params)?)?;
    let report = run_modulation(&params, &drive, 0.99, 11)?;

    println!("rho44: {:.6} -> {:.6}", report.rho44_before, report.rho44_after);
    for nu in Terminal::ALL {
        let (b, a) = (report.before.get(nu), report.after.get(nu));
        println!("Q_{nu}: {b:+.4e} -> {a:+.4e}  (x{:.3})", a / b);
    }
    println!("predicted gain {:.3}", report.predicted_scale);
    for (t, rho44) in &report.trajectory {
        println!("t = {t:>7.3}  rho44 = {rho44:.6}");
    }
    Ok(())
}

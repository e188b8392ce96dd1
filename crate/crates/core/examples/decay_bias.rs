//! Amplification as the outer terminals decay faster than the control.

use thermal_transistor::experiments::with_gamma_bias;
use thermal_transistor::observables::amplification_factor;
use thermal_transistor::{SystemParams, Terminal};

fn main() -> thermal_transistor::Result<()> {
    let base = SystemParams::reference().with_g(0.7).with_temperature(Terminal::M, 2.0);
    println!("{:>4} {:>12} {:>16}", "b", "lambda = 0", "(0.7, 0.2, 0.2)");
    for b in [1.0, 2.0, 3.0, 4.0, 6.0] {
        let alpha = |lambda| -> thermal_transistor::Result<f64> {
            Ok(amplification_factor(&with_gamma_bias(&base.with_lambda(lambda), b), Terminal::M, None)?.alpha_l)
        };
        println!("{b:>4} {:>12.4} {:>16.4}", alpha([0.0; 3])?, alpha([0.7, 0.2, 0.2])?);
    }
    Ok(())
}

//! Amplification factor along the control temperature, with and without
//! a common reservoir.

use thermal_transistor::observables::amplification_factor;
use thermal_transistor::{SystemParams, Terminal};

fn main() -> thermal_transistor::Result<()> {
    println!(
        "{:>6} {:>14} {:>14} {:>10}",
        "T_M", "alpha_L(0)", "alpha_L(0.7)", "sum rule"
    );
    for t_m in [0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let base = SystemParams::reference().with_temperature(Terminal::M, t_m);
        let independent = amplification_factor(&base.with_lambda([0.0; 3]), Terminal::M, None)?;
        let common = amplification_factor(&base.with_lambda([0.7; 3]), Terminal::M, None)?;
        println!(
            "{t_m:>6.2} {:>14.6} {:>14.6} {:>10.1e}",
            independent.alpha_l,
            common.alpha_l,
            common.sum_rule_residual()
        );
    }
    Ok(())
}

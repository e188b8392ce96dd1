//! Truncated closed-form populations for fully common reservoirs against
//! the exact stationary state.

use thermal_transistor::observables::closed_form_populations;
use thermal_transistor::{SystemParams, Terminal, Transistor};

fn main() -> thermal_transistor::Result<()> {
    let params = SystemParams {
        lambda: [1.0; 3],
        ..SystemParams::reference().with_g(0.3)
    };
    for t_m in [0.5, 1.0, 2.0] {
        let p = params.with_temperature(Terminal::M, t_m);
        let exact = Transistor::new(p)?.steady_state(Some(0.2))?;
        let cf = closed_form_populations(&p, 0.2)?;
        println!(
            "T_M = {t_m}: max deviation {:.2e}, neglected rho77 + rho88 = {:.2e}, valid = {}",
            cf.populations.max_abs_diff(&exact),
            cf.neglected,
            cf.valid
        );
    }
    Ok(())
}

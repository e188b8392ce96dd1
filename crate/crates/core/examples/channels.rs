//! Eigen-operator channels of each reservoir, tabulated and recovered
//! numerically from the jump operators.

use thermal_transistor::channels::{decompose_numeric, jump_operators, write_channels_csv, DEFAULT_GROUPING_TOL};
use thermal_transistor::{SystemParams, Terminal, Transistor};

fn main() -> thermal_transistor::Result<()> {
    let params = SystemParams::reference().with_lambda([0.7, 0.2, 0.5]);
    let t = Transistor::new(params)?;
    write_channels_csv(t.channels(), std::io::stdout())?;

    let jumps = jump_operators(&params)?;
    for nu in Terminal::ALL {
        let numeric = decompose_numeric(nu, &jumps[nu.index()], t.eigen(), DEFAULT_GROUPING_TOL)?;
        let worst = t
            .channels()
            .iter()
            .filter(|c| c.reservoir == nu)
            .map(|c| {
                let m = numeric
                    .iter()
                    .find(|n| (n.frequency - c.frequency).abs() < 1e-9)
                    .expect("every tabulated channel has a numeric partner");
                (m.operator() - c.operator()).amax()
            })
            .fold(0.0, f64::max);
        eprintln!(
            "{nu}: {} channels, max coefficient deviation {worst:.1e}",
            numeric.len()
        );
    }
    Ok(())
}

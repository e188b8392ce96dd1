//! Stationary populations and heat currents for one operating point.

use thermal_transistor::model::DIM;
use thermal_transistor::{SystemParams, Terminal, Transistor};

fn main() -> thermal_transistor::Result<()> {
    let params = SystemParams::reference()
        .with_lambda([0.7; 3])
        .with_temperature(Terminal::M, 1.5);
    let t = Transistor::new(params)?;
    let (p, q) = t.steady_currents(None)?;

    for k in 0..DIM {
        println!(
            "rho_{0}{0} = {1:.6e}  (e = {2:+.6})",
            k + 1,
            p[k],
            t.eigen().eigenvalues[k]
        );
    }
    for nu in Terminal::ALL {
        println!("Q_{nu} = {:+.6e}", q.get(nu));
    }
    println!("|sum Q| / max|Q| = {:.1e}", q.conservation_residual());
    println!("|W p|_inf = {:.1e}", q.steady_residual);

    // the trace form is an independent evaluation of the same currents
    let tr = t.heat_currents_trace_form(&p);
    println!("trace form: {:+.6e} {:+.6e} {:+.6e}", tr[0], tr[1], tr[2]);
    Ok(())
}

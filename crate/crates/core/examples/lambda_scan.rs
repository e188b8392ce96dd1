//! Grid scan of the amplification over two correlation strengths.

use thermal_transistor::observables::optimize_lambda;
use thermal_transistor::{SystemParams, Terminal};

fn main() -> thermal_transistor::Result<()> {
    let base = SystemParams {
        lambda: [0.3; 3],
        ..SystemParams::reference().with_g(0.3)
    }
    .with_temperature(Terminal::M, 3.0);
    let n = 6;
    let surface = optimize_lambda(&base, &[0, 2], n, Terminal::M)?;

    print!("{:>10}", "l1 \\ l3");
    for v in &surface.values {
        print!("{v:>10.2}");
    }
    println!();
    for (row, chunk) in surface.points.chunks(n).enumerate() {
        print!("{:>10.2}", surface.values[row]);
        for point in chunk {
            match &point.alpha_l {
                Ok(a) => print!("{a:>10.3}"),
                Err(_) => print!("{:>10}", "-"),
            }
        }
        println!();
    }
    for axis in &surface.axes {
        println!(
            "lambda{}: {:?} ({} up, {} down)",
            axis.axis + 1,
            axis.trend,
            axis.increases,
            axis.decreases
        );
    }
    if let Some(best) = surface.best() {
        println!("best lambda = {:?}", best.lambda);
    }
    Ok(())
}

//! Full master-equation evolution of a coherent initial state, compared
//! with the population steady state.

use num_complex::Complex64;

use thermal_transistor::dynamics::{evolve_density_matrix, DensityMatrix};
use thermal_transistor::model::DIM;
use thermal_transistor::{SystemParams, Transistor};

fn main() -> thermal_transistor::Result<()> {
    let params = SystemParams {
        omega_l: 3.0,
        omega_m: 1.0,
        g: 0.4,
        lambda: [0.6, 0.4, 0.3],
        temperature: [3.0, 2.0, 1.5],
        gamma: [0.01; 3],
    };
    let amp = Complex64::new((1.0 / DIM as f64).sqrt(), 0.0);
    let rho0 = DensityMatrix::pure(&[amp; DIM])?;
    let target = Transistor::new(params)?.steady_state(None)?;

    let grid: Vec<f64> = (0..=8).map(|i| 500.0 * i as f64).collect();
    let states = evolve_density_matrix(&params, &rho0, &grid)?;
    println!("{:>8} {:>14} {:>14}", "t", "max coherence", "|diag - p|");
    for (t, rho) in grid.iter().zip(&states) {
        let diag = (0..DIM)
            .map(|k| (rho.matrix()[(k, k)].re - target[k]).abs())
            .fold(0.0, f64::max);
        println!("{t:>8.0} {:>14.3e} {:>14.3e}", rho.max_coherence(), diag);
    }
    Ok(())
}

use super::ode::{integrate, OdeOptions};
use super::population::PopulationVector;
use super::rates::RateMatrix;
use crate::error::Result;
use crate::model::DIM;
use crate::params::SystemParams;
use crate::transistor::Transistor;

/// Integrate `dp/dt = W p` from `p0` at `t = 0`; one sample per grid time.
pub fn evolve_populations(
    params: &SystemParams,
    p0: &PopulationVector,
    t_grid: &[f64],
) -> Result<Vec<PopulationVector>> {
    let t = Transistor::new(*params)?;
    evolve_with_rates(t.rates(), p0, t_grid, &OdeOptions::default())
}

pub fn evolve_with_rates(
    rates: &RateMatrix,
    p0: &PopulationVector,
    t_grid: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<PopulationVector>> {
    let w = rates.matrix();
    let samples = integrate(
        |y, dy| {
            for (k, d) in dy.iter_mut().enumerate() {
                *d = (0..DIM).map(|l| w[(k, l)] * y[l]).sum();
            }
        },
        p0.as_array(),
        t_grid,
        opts,
    )?;
    samples
        .into_iter()
        .map(|y| {
            let mut p = [0.0; DIM];
            p.copy_from_slice(&y);
            PopulationVector::normalized(p, 1.0)
        })
        .collect()
}

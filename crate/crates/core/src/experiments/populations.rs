use std::io::Write;

use rayon::prelude::*;

use crate::dynamics::PopulationVector;
use crate::error::Result;
use crate::format::sci;
use crate::model::DIM;
use crate::params::{SystemParams, Terminal};
use crate::transistor::Transistor;

use super::sweep::with_pool;

#[derive(Clone, Debug, PartialEq)]
pub struct PopulationRecord {
    pub t_m: f64,
    pub populations: std::result::Result<PopulationVector, String>,
    /// `p(lambda1 = compare) - p(base)`, when a comparison was requested.
    pub difference: Option<std::result::Result<[f64; DIM], String>>,
}

/// Steady populations along `t_m_values`; fully common points use
/// `rho44 = 0`.
pub fn run_populations(
    base: &SystemParams,
    t_m_values: &[f64],
    compare_lambda1: Option<f64>,
    workers: usize,
) -> Result<Vec<PopulationRecord>> {
    base.validate()?;
    let solve = |p: SystemParams| -> std::result::Result<PopulationVector, String> {
        let rho44 = p.is_fully_common().then_some(0.0);
        Transistor::new(p)
            .and_then(|t| t.steady_state(rho44))
            .map_err(|e| e.to_string())
    };
    with_pool(workers, || {
        t_m_values
            .par_iter()
            .map(|&t_m| {
                let params = base.with_temperature(Terminal::M, t_m);
                let populations = solve(params);
                let difference = compare_lambda1.map(|l1| {
                    let mut lambda = params.lambda;
                    lambda[0] = l1;
                    let other = solve(params.with_lambda(lambda))?;
                    let own = populations.clone()?;
                    Ok(std::array::from_fn(|k| other[k] - own[k]))
                });
                PopulationRecord {
                    t_m,
                    populations,
                    difference,
                }
            })
            .collect()
    })
}

pub fn write_populations_csv<W: Write>(records: &[PopulationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["T_M".to_string()];
    header.extend((1..=DIM).map(|k| format!("rho_{k}{k}")));
    header.extend((1..=DIM).map(|k| format!("diff_{k}{k}")));
    header.push("error".into());
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![sci(r.t_m)];
        let mut errors = Vec::new();
        match &r.populations {
            Ok(p) => row.extend(p.iter().map(|&x| sci(x))),
            Err(e) => {
                row.extend(std::iter::repeat_n(String::new(), DIM));
                errors.push(e.clone());
            }
        }
        match &r.difference {
            Some(Ok(d)) => row.extend(d.iter().map(|&x| sci(x))),
            Some(Err(e)) => {
                row.extend(std::iter::repeat_n(String::new(), DIM));
                errors.push(e.clone());
            }
            None => row.extend(std::iter::repeat_n(String::new(), DIM)),
        }
        row.push(errors.join("; "));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

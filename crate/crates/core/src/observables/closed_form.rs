//! Closed-form stationary populations for fully common reservoirs,
//! neglecting the two highest levels.
//!
//! With `rho77 = rho88 = 0` the balance equations close on the five states
//! `e_1, e_2, e_3, e_5, e_6`; replacing one of them by the normalization
//! `sum = 1 - rho44` gives a 5x5 system solved by Cramer's rule with
//! cofactor-expanded determinants. Every population is then proportional to
//! `1 - rho44`.

use crate::channels::DARK_STATE;
use crate::dynamics::PopulationVector;
use crate::error::{Error, Result};
use crate::model::DIM;
use crate::params::SystemParams;
use crate::transistor::Transistor;

/// States kept by the truncation (0-based).
pub const RETAINED: [usize; 5] = [0, 1, 2, 4, 5];

/// Above this `rho77 + rho88` the truncation is not trusted.
pub const VALIDITY_LIMIT: f64 = 1e-3;

/// Scaled determinants below this are treated as singular.
pub const SINGULAR_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub populations: PopulationVector,
    /// `rho77 + rho88` of the full stationary state.
    pub neglected: f64,
    /// `neglected <= VALIDITY_LIMIT`; agreement claims are withheld otherwise.
    pub valid: bool,
}

pub fn closed_form_populations(params: &SystemParams, rho44: f64) -> Result<ClosedForm> {
    if params.lambda != [1.0; 3] {
        return Err(Error::DarkStateAbsent);
    }
    if !(0.0..=1.0).contains(&rho44) {
        return Err(Error::param("rho44", format!("must lie in [0, 1], got {rho44}")));
    }
    let t = Transistor::new(*params)?;
    let w = t.rates().matrix();

    let n = RETAINED.len();
    let mut a = vec![vec![0.0; n]; n];
    for (r, &i) in RETAINED.iter().enumerate() {
        for (c, &j) in RETAINED.iter().enumerate() {
            if r != c {
                a[r][c] = w[(i, j)];
            }
        }
    }
    for c in 0..n {
        a[c][c] = -(0..n).filter(|&r| r != c).map(|r| a[r][c]).sum::<f64>();
    }
    // bring rates to order one so the singularity test is scale free
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Err(Error::SingularDenominator(0.0));
    }
    for x in a.iter_mut().flatten() {
        *x /= scale;
    }
    a[n - 1] = vec![1.0; n];
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0 - rho44;

    let d = determinant(&a);
    if !(d.abs() >= SINGULAR_TOL) {
        return Err(Error::SingularDenominator(d));
    }
    let mut p = [0.0; DIM];
    for (c, &state) in RETAINED.iter().enumerate() {
        let mut ac = a.clone();
        for (row, b) in ac.iter_mut().zip(&rhs) {
            row[c] = *b;
        }
        p[state] = determinant(&ac) / d;
    }
    p[DARK_STATE] = rho44;
    let populations = PopulationVector::new(p)?;

    let full = t.steady_state(Some(rho44))?;
    let neglected = full[6] + full[7];
    Ok(ClosedForm {
        populations,
        neglected,
        valid: neglected <= VALIDITY_LIMIT,
    })
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .filter(|&c| m[0][c] != 0.0)
            .map(|c| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * determinant(&minor)
            })
            .sum(),
    }
}

use std::ops::Index;

use crate::error::{Error, Result};
use crate::model::{Vec8, DIM};

/// Tolerance on normalization and on negative occupations.
pub const POPULATION_TOL: f64 = 1e-12;

/// Diagonal of the density matrix in the energy eigenbasis, indexed by
/// eigenstate (0-based: index 0 is `|e_1>`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PopulationVector([f64; DIM]);

impl PopulationVector {
    /// Validates `sum = 1` and `p_k >= -1e-12`; small negatives are clamped
    /// to zero.
    pub fn new(p: [f64; DIM]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > POPULATION_TOL {
            return Err(Error::NonPhysicalState(format!("populations sum to {sum}, not 1")));
        }
        if let Some(bad) = p.iter().find(|&&x| !(x >= -POPULATION_TOL)) {
            return Err(Error::NonPhysicalState(format!("negative population {bad}")));
        }
        Ok(PopulationVector(p.map(|x| x.max(0.0))))
    }

    /// Clamp rounding-level negatives and rescale to `total`. Used for
    /// solver output where the normalization is known exactly.
    pub(crate) fn normalized(mut p: [f64; DIM], total: f64) -> Result<Self> {
        let scale = p.iter().map(|x| x.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        if let Some(bad) = p.iter().find(|&&x| !(x >= -1e-9 * scale)) {
            return Err(Error::NonPhysicalState(format!(
                "solver produced negative population {bad}"
            )));
        }
        for x in p.iter_mut() {
            *x = x.max(0.0);
        }
        let sum: f64 = p.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::NonPhysicalState("solver produced an all-zero population".into()));
        }
        for x in p.iter_mut() {
            *x *= total / sum;
        }
        Ok(PopulationVector(p))
    }

    /// All population in eigenstate `k`.
    pub fn basis(k: usize) -> Self {
        let mut p = [0.0; DIM];
        p[k] = 1.0;
        PopulationVector(p)
    }

    pub fn ground() -> Self {
        Self::basis(0)
    }

    pub fn as_array(&self) -> &[f64; DIM] {
        &self.0
    }

    pub fn to_vec8(&self) -> Vec8 {
        Vec8::from_column_slice(&self.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.0.iter()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &PopulationVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for PopulationVector {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

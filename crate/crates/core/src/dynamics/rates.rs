use std::ops::Index;

use crate::channels::DissipationChannel;
use crate::error::{Error, Result};
use crate::model::{Mat8, DIM};
use crate::params::SystemParams;

/// Mean thermal occupation `1 / (exp(w/T) - 1)`.
///
/// Evaluated as `exp(-x) / (1 - exp(-x))` for `x = w/T > 1`, so large
/// ratios underflow gracefully to 0 instead of overflowing.
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::param(
            "omega",
            format!("Bose occupation needs omega > 0, got {omega}"),
        ));
    }
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::param(
            "T",
            format!("Bose occupation needs T > 0, got {temperature}"),
        ));
    }
    let x = omega / temperature;
    Ok(if x > 1.0 {
        let e = (-x).exp();
        e / (1.0 - e)
    } else {
        1.0 / x.exp_m1()
    })
}

/// Classical generator of the population dynamics, `dp/dt = W p`.
///
/// Off-diagonal `W[(k, l)]` is the rate of `l -> k` transfer; the diagonal
/// closes every column to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct RateMatrix(Mat8);

impl RateMatrix {
    /// Sum of every reservoir's channel rates: each matrix element `A` at
    /// Bohr frequency `w` adds `gamma (n + 1) |A|^2` downward and
    /// `gamma n |A|^2` upward.
    pub fn from_channels(params: &SystemParams, channels: &[DissipationChannel]) -> Result<Self> {
        let mut w = Mat8::zeros();
        for ch in channels {
            let gamma = params.gamma(ch.reservoir);
            let n = bose_occupation(ch.frequency, params.temperature(ch.reservoir))?;
            for t in &ch.transitions {
                let a2 = t.amplitude * t.amplitude;
                w[(t.lower, t.upper)] += gamma * (n + 1.0) * a2;
                w[(t.upper, t.lower)] += gamma * n * a2;
            }
        }
        for col in 0..DIM {
            let out: f64 = (0..DIM).filter(|&r| r != col).map(|r| w[(r, col)]).sum();
            w[(col, col)] = -out;
        }
        Ok(RateMatrix(w))
    }

    pub fn matrix(&self) -> &Mat8 {
        &self.0
    }

    pub fn into_inner(self) -> Mat8 {
        self.0
    }

    /// Largest absolute column sum.
    pub fn column_sum_error(&self) -> f64 {
        (0..DIM).map(|c| self.0.column(c).sum().abs()).fold(0.0, f64::max)
    }

    /// Number of singular values below `1e-10 * sigma_max`.
    pub fn kernel_dimension(&self) -> usize {
        let sv = self.0.singular_values();
        let cutoff = KERNEL_CUTOFF * sv.max();
        sv.iter().filter(|&&s| s <= cutoff).count()
    }
}

impl Index<(usize, usize)> for RateMatrix {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// Relative singular-value cutoff for counting kernel dimensions.
pub const KERNEL_CUTOFF: f64 = 1e-10;

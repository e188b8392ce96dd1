use nalgebra::DMatrix;

use super::dd::Dd;
use super::population::PopulationVector;
use super::rates::{RateMatrix, KERNEL_CUTOFF};
use crate::channels::DARK_STATE;
use crate::error::{Error, Result};
use crate::model::DIM;
use crate::params::SystemParams;
use crate::transistor::Transistor;

/// Stationary populations `W p = 0`, `sum p = 1`.
///
/// For fully common coupling the dark state `|e_4>` decouples, the kernel
/// becomes two-dimensional and its population `rho44` (conserved from the
/// initial state) must be supplied. Supplying it when the kernel is
/// one-dimensional is an error.
pub fn steady_state(params: &SystemParams, rho44: Option<f64>) -> Result<PopulationVector> {
    Transistor::new(*params)?.steady_state(rho44)
}

pub fn solve_steady_state(rates: &RateMatrix, rho44: Option<f64>) -> Result<PopulationVector> {
    let p = stationary(rates, rho44)?;
    PopulationVector::new(p.map(Dd::to_f64))
}

/// Stationary populations in double-double precision.
pub(crate) fn stationary(rates: &RateMatrix, rho44: Option<f64>) -> Result<[Dd; DIM]> {
    let w = DMatrix::from_column_slice(DIM, DIM, rates.matrix().as_slice());
    match (kernel_dimension(&w), rho44) {
        (1, None) => Ok(to_array(&null_vector(&w)?, Dd::from(1.0), None)),
        (1, Some(_)) => Err(Error::OverSpecified),
        (2, Some(r44)) if is_decoupled(rates, DARK_STATE) => {
            if !(0.0..=1.0).contains(&r44) {
                return Err(Error::param("rho44", format!("must lie in [0, 1], got {r44}")));
            }
            let reduced = w.remove_row(DARK_STATE).remove_column(DARK_STATE);
            let rdim = kernel_dimension(&reduced);
            if rdim != 1 {
                return Err(Error::Underdetermined { kernel_dim: rdim + 1 });
            }
            let mut p = to_array(&null_vector(&reduced)?, Dd::from(1.0) - Dd::from(r44), Some(DARK_STATE));
            p[DARK_STATE] = Dd::from(r44);
            Ok(p)
        }
        (d, _) => Err(Error::Underdetermined { kernel_dim: d }),
    }
}

fn is_decoupled(rates: &RateMatrix, state: usize) -> bool {
    let w = rates.matrix();
    w.row(state).iter().all(|&x| x == 0.0) && w.column(state).iter().all(|&x| x == 0.0)
}

/// Number of singular values below the kernel cutoff.
fn kernel_dimension(w: &DMatrix<f64>) -> usize {
    let sv = w.singular_values();
    let cutoff = KERNEL_CUTOFF * sv.max();
    sv.iter().filter(|&&s| s <= cutoff).count()
}

/// Unnormalized stationary vector. GTH elimination is free of subtractions
/// and resolves tiny populations to full relative precision; the smallest
/// singular vector is the fallback when elimination breaks down.
fn null_vector(w: &DMatrix<f64>) -> Result<Vec<Dd>> {
    match gth(w) {
        Some(v) => Ok(v),
        None => {
            let mut p = [0.0; DIM];
            let v = svd_null_vector(w);
            p[..v.len()].copy_from_slice(&v);
            let p = PopulationVector::normalized(p, 1.0)?;
            Ok(p.iter().take(v.len()).map(|&x| Dd::from(x)).collect())
        }
    }
}

/// Grassmann-Taksar-Heyman elimination on the off-diagonal rates
/// (`w[(k, l)]` is the rate `l -> k`). Returns `None` when some state has no
/// path to the states eliminated after it.
fn gth(w: &DMatrix<f64>) -> Option<Vec<Dd>> {
    let n = w.nrows();
    // a[i][j]: rate i -> j
    let mut a: Vec<Vec<Dd>> = (0..n).map(|i| (0..n).map(|j| Dd::from(w[(j, i)])).collect()).collect();
    for k in (1..n).rev() {
        let s: Dd = (0..k).map(|j| a[k][j]).sum();
        if !s.is_positive() {
            return None;
        }
        for i in 0..k {
            a[i][k] = a[i][k] / s;
        }
        for i in 0..k {
            let aik = a[i][k];
            if aik == Dd::ZERO {
                continue;
            }
            for j in (0..k).filter(|&j| j != i) {
                a[i][j] = a[i][j] + aik * a[k][j];
            }
        }
    }
    let mut p = vec![Dd::ZERO; n];
    p[0] = Dd::from(1.0);
    for j in 1..n {
        p[j] = (0..j).map(|i| p[i] * a[i][j]).sum();
    }
    Some(p)
}

/// Right singular vector of the smallest singular value.
fn svd_null_vector(w: &DMatrix<f64>) -> Vec<f64> {
    let svd = w.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    let mut v: Vec<f64> = v_t.row(imin).iter().copied().collect();
    // singular vectors carry an arbitrary sign
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Scale a kernel vector to `total` and expand it to 8 entries, leaving a
/// zero at `skipped`.
fn to_array(v: &[Dd], total: Dd, skipped: Option<usize>) -> [Dd; DIM] {
    let sum: Dd = v.iter().copied().sum();
    let mut out = [Dd::ZERO; DIM];
    let mut src = v.iter();
    for (k, slot) in out.iter_mut().enumerate() {
        if Some(k) == skipped {
            continue;
        }
        *slot = *src.next().expect("kernel vector length") * total / sum;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Terminal;

    fn gibbs(t: &Transistor, temp: f64) -> [f64; DIM] {
        let e = &t.eigen().eigenvalues;
        let z: f64 = e.iter().map(|x| (-(x - e[0]) / temp).exp()).sum();
        e.map(|x| (-(x - e[0]) / temp).exp() / z)
    }

    #[test]
    fn equal_temperatures_give_gibbs_state() {
        for lambda in [[0.0; 3], [0.7; 3], [0.2, 0.9, 0.5]] {
            let p = SystemParams {
                temperature: [0.8; 3],
                lambda,
                g: 0.3,
                ..SystemParams::reference()
            };
            let t = Transistor::new(p).unwrap();
            let ss = t.steady_state(None).unwrap();
            let expected = gibbs(&t, 0.8);
            for k in 0..DIM {
                assert!((ss[k] - expected[k]).abs() < 1e-10, "{k}: {} vs {}", ss[k], expected[k]);
            }
        }
    }

    #[test]
    fn dark_case_requires_rho44() {
        let p = SystemParams::reference().with_lambda([1.0; 3]).with_g(0.3);
        assert!(matches!(
            steady_state(&p, None),
            Err(Error::Underdetermined { kernel_dim: 2 })
        ));
        let full = steady_state(&p, Some(1.0)).unwrap();
        assert_eq!(full.as_array(), &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let half = steady_state(&p, Some(0.5)).unwrap();
        let none = steady_state(&p, Some(0.0)).unwrap();
        assert_eq!(none[DARK_STATE], 0.0);
        for k in (0..DIM).filter(|&k| k != DARK_STATE) {
            assert!((half[k] - 0.5 * none[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn unique_case_rejects_rho44() {
        let p = SystemParams::reference().with_lambda([0.7; 3]);
        assert!(matches!(steady_state(&p, Some(0.2)), Err(Error::OverSpecified)));
    }

    #[test]
    fn steady_state_is_in_kernel() {
        let p = SystemParams::reference()
            .with_lambda([0.7; 3])
            .with_temperature(Terminal::M, 2.0);
        let t = Transistor::new(p).unwrap();
        let ss = t.steady_state(None).unwrap();
        let r = t.rates().matrix() * ss.to_vec8();
        assert!(r.amax() < 1e-17, "{}", r.amax());
        assert!((ss.sum() - 1.0).abs() < 1e-14);
    }
}

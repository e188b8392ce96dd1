//! System Hamiltonian and its eigensystem.
//!
//! Basis convention: tensor order (L, M, R), label `|q_L q_M q_R>` with
//! `|1>` the excited level (sigma^z eigenvalue +1). The computational basis
//! index of `|q_L q_M q_R>` is `4 q_L + 2 q_M + q_R`.
//!
//! The spectrum pairs each basis state with its all-flipped partner, so the
//! exact eigenstates are 2x2 rotations by the mixing angles `beta_R`,
//! `beta_L`, `beta_M` and `beta_4 = pi/4`.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use nalgebra::{DMatrix, SMatrix, SVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::params::{SystemParams, Terminal};

pub type Mat8 = SMatrix<f64, 8, 8>;
pub type Vec8 = SVector<f64, 8>;

pub const DIM: usize = 8;

/// Index of the computational basis state `|q_L q_M q_R>`.
#[inline]
pub const fn basis_index(q_l: usize, q_m: usize, q_r: usize) -> usize {
    4 * q_l + 2 * q_m + q_r
}

/// Single-qubit operator acting on `site` (0 = L, 1 = M, 2 = R) embedded in
/// the three-qubit space.
pub(crate) fn embed(site: usize, op: &SMatrix<f64, 2, 2>) -> Mat8 {
    let mut out = Mat8::zeros();
    let shift = 2 - site;
    for row in 0..DIM {
        for col in 0..DIM {
            // every other qubit must be untouched
            let mask = !(1usize << shift) & 0b111;
            if row & mask != col & mask {
                continue;
            }
            let r = (row >> shift) & 1;
            let c = (col >> shift) & 1;
            out[(row, col)] = op[(r, c)];
        }
    }
    out
}

pub(crate) fn sigma_z() -> SMatrix<f64, 2, 2> {
    // basis (|0>, |1>), |1> excited
    SMatrix::<f64, 2, 2>::new(-1.0, 0.0, 0.0, 1.0)
}

pub(crate) fn sigma_x() -> SMatrix<f64, 2, 2> {
    SMatrix::<f64, 2, 2>::new(0.0, 1.0, 1.0, 0.0)
}

/// Lowering operator `|0><1|`.
pub(crate) fn sigma_minus() -> SMatrix<f64, 2, 2> {
    SMatrix::<f64, 2, 2>::new(0.0, 1.0, 0.0, 0.0)
}

pub(crate) fn sigma_plus() -> SMatrix<f64, 2, 2> {
    sigma_minus().transpose()
}

/// `H = 1/2 sum_nu w_nu sigma^z_nu + g sigma^x_L sigma^x_M sigma^x_R`.
pub fn build_hamiltonian(params: &SystemParams) -> Result<Mat8> {
    params.validate()?;
    let sz = sigma_z();
    let sx = sigma_x();
    let mut h = Mat8::zeros();
    for (site, t) in Terminal::ALL.into_iter().enumerate() {
        h += embed(site, &sz) * (0.5 * params.omega(t));
    }
    h += embed(0, &sx) * embed(1, &sx) * embed(2, &sx) * params.g;
    Ok(h)
}

/// Mixing angle of one flip-pair: `sin b = g / sqrt((sqrt(w^2+g^2)+w)^2 + g^2)`.
///
/// Returns 0 for `g = 0` (decoupled limit). For `omega = 0` and `g > 0` the
/// angle is exactly `pi/4`.
pub fn mixing_angle(omega: f64, g: f64) -> f64 {
    let e = omega.hypot(g);
    // atan2 keeps full relative precision when g << omega
    g.atan2(e + omega)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingAngles {
    pub r: f64,
    pub l: f64,
    pub m: f64,
    pub four: f64,
}

impl MixingAngles {
    pub fn new(params: &SystemParams) -> Self {
        MixingAngles {
            r: mixing_angle(params.omega_r(), params.g),
            l: mixing_angle(params.omega_l, params.g),
            m: mixing_angle(params.omega_m, params.g),
            // beta_4 keeps its formula value pi/4 even in the degenerate g = 0 limit
            four: FRAC_PI_4,
        }
    }
}

/// Eigenvalues in ascending order and eigenvectors as columns of an
/// orthogonal matrix (column `i` is `|e_{i+1}>` in the computational basis).
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: [f64; DIM],
    pub eigenvectors: Mat8,
    /// Present only for the analytic construction.
    pub mixing_angles: Option<MixingAngles>,
}

impl EigenSystem {
    /// Closed-form eigensystem assembled from the mixing angles.
    pub fn analytic(params: &SystemParams) -> Result<Self> {
        params.validate()?;
        let g = params.g;
        let angles = MixingAngles::new(params);
        let er = params.omega_r().hypot(g);
        let el = params.omega_l.hypot(g);
        let em = params.omega_m.hypot(g);
        let eigenvalues = [-er, -el, -em, -g, g, em, el, er];

        let (sr, cr) = angles.r.sin_cos();
        let (sl, cl) = angles.l.sin_cos();
        let (sm, cm) = angles.m.sin_cos();
        let (s4, c4) = angles.four.sin_cos();
        let b = basis_index;
        // (column, [(basis, amplitude); 2])
        let columns: [[(usize, f64); 2]; DIM] = [
            [(b(0, 0, 0), cr), (b(1, 1, 1), -sr)],
            [(b(0, 1, 0), cl), (b(1, 0, 1), -sl)],
            [(b(0, 1, 1), sm), (b(1, 0, 0), -cm)],
            [(b(0, 0, 1), s4), (b(1, 1, 0), -c4)],
            [(b(1, 1, 0), s4), (b(0, 0, 1), c4)],
            [(b(1, 0, 0), sm), (b(0, 1, 1), cm)],
            [(b(1, 0, 1), cl), (b(0, 1, 0), sl)],
            [(b(1, 1, 1), cr), (b(0, 0, 0), sr)],
        ];
        let mut v = Mat8::zeros();
        for (col, entries) in columns.iter().enumerate() {
            for &(row, amp) in entries {
                v[(row, col)] = amp;
            }
        }
        Ok(EigenSystem {
            eigenvalues,
            eigenvectors: v,
            mixing_angles: Some(angles),
        })
    }

    /// Dense symmetric diagonalization of [`build_hamiltonian`], sorted
    /// ascending. Eigenvector signs are whatever the solver returns; use
    /// [`EigenSystem::aligned_to`] before comparing individual columns.
    pub fn numeric(params: &SystemParams) -> Result<Self> {
        let h = build_hamiltonian(params)?;
        let eig = SymmetricEigen::new(h);
        let mut order: Vec<usize> = (0..DIM).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let mut eigenvalues = [0.0; DIM];
        let mut v = Mat8::zeros();
        for (dst, &src) in order.iter().enumerate() {
            eigenvalues[dst] = eig.eigenvalues[src];
            v.set_column(dst, &eig.eigenvectors.column(src));
        }
        Ok(EigenSystem {
            eigenvalues,
            eigenvectors: v,
            mixing_angles: None,
        })
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    pub fn hamiltonian_diag(&self) -> Mat8 {
        Mat8::from_diagonal(&Vec8::from_column_slice(&self.eigenvalues))
    }

    /// `V^T A V`: an operator given in the computational basis, expressed
    /// in the energy eigenbasis.
    pub fn to_eigenbasis(&self, op: &Mat8) -> Mat8 {
        self.eigenvectors.transpose() * op * self.eigenvectors
    }

    /// Inverse of [`EigenSystem::to_eigenbasis`].
    pub fn from_eigenbasis(&self, op: &Mat8) -> Mat8 {
        self.eigenvectors * op * self.eigenvectors.transpose()
    }

    /// `max_i |H v_i - e_i v_i|`.
    pub fn residual(&self, h: &Mat8) -> f64 {
        (0..DIM)
            .map(|i| {
                let v = self.eigenvectors.column(i);
                (h * v - v * self.eigenvalues[i]).amax()
            })
            .fold(0.0, f64::max)
    }

    /// `max |V^T V - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        (self.eigenvectors.transpose() * self.eigenvectors - Mat8::identity()).amax()
    }

    /// Groups of eigenvalue indices that coincide within `tol`.
    pub fn degenerate_clusters(&self, tol: f64) -> Vec<Vec<usize>> {
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for i in 0..DIM {
            match clusters.last_mut() {
                Some(c) if (self.eigenvalues[i] - self.eigenvalues[*c.last().unwrap()]).abs() <= tol => c.push(i),
                _ => clusters.push(vec![i]),
            }
        }
        clusters
    }

    /// Re-express this eigenbasis as close as possible to `reference`:
    /// sign flips for simple eigenvalues and an orthogonal Procrustes
    /// rotation inside each degenerate subspace. Eigenvalues are untouched.
    pub fn aligned_to(&self, reference: &EigenSystem) -> EigenSystem {
        let tol = degeneracy_tol(&self.eigenvalues);
        let mut v = self.eigenvectors;
        for cluster in self.degenerate_clusters(tol) {
            let k = cluster.len();
            let mut ours = DMatrix::<f64>::zeros(DIM, k);
            let mut theirs = DMatrix::<f64>::zeros(DIM, k);
            for (c, &idx) in cluster.iter().enumerate() {
                ours.set_column(c, &self.eigenvectors.column(idx));
                theirs.set_column(c, &reference.eigenvectors.column(idx));
            }
            // min ||ours * Q - theirs|| over orthogonal Q: Q = U W^T with
            // ours^T theirs = U S W^T
            let svd = (ours.transpose() * &theirs).svd(true, true);
            let q = svd.u.unwrap() * svd.v_t.unwrap();
            let rotated = ours * q;
            for (c, &idx) in cluster.iter().enumerate() {
                v.set_column(idx, &rotated.column(c));
            }
        }
        EigenSystem {
            eigenvalues: self.eigenvalues,
            eigenvectors: v,
            mixing_angles: self.mixing_angles,
        }
    }

    /// Largest distance between spectral projectors of corresponding
    /// degenerate subspaces. Zero when both eigenbases span the same
    /// eigenspaces, independent of signs and rotations.
    pub fn subspace_distance(&self, other: &EigenSystem) -> f64 {
        let tol = degeneracy_tol(&self.eigenvalues);
        self.degenerate_clusters(tol)
            .iter()
            .map(|cluster| {
                let mut pa = Mat8::zeros();
                let mut pb = Mat8::zeros();
                for &i in cluster {
                    let a = self.eigenvectors.column(i);
                    let b = other.eigenvectors.column(i);
                    pa += a * a.transpose();
                    pb += b * b.transpose();
                }
                (pa - pb).amax()
            })
            .fold(0.0, f64::max)
    }

    /// Distinct positive Bohr frequencies `e_j - e_i`, ascending. Values
    /// closer than the floating-point noise floor are treated as one.
    pub fn bohr_frequencies(&self) -> Vec<f64> {
        let floor = noise_floor(&self.eigenvalues);
        let mut freqs: Vec<f64> = (0..DIM)
            .flat_map(|i| (i + 1..DIM).map(move |j| (i, j)))
            .map(|(i, j)| self.eigenvalues[j] - self.eigenvalues[i])
            .filter(|&w| w > floor)
            .collect();
        freqs.sort_by(f64::total_cmp);
        freqs.dedup_by(|a, b| (*a - *b).abs() <= floor);
        freqs
    }

    /// Smallest gap between distinct positive Bohr frequencies, or
    /// infinity when fewer than two exist.
    pub fn min_bohr_gap(&self) -> f64 {
        self.bohr_frequencies()
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Rounding-level separation for quantities of the spectrum's magnitude.
pub(crate) fn noise_floor(eigenvalues: &[f64]) -> f64 {
    let scale = eigenvalues.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    64.0 * f64::EPSILON * scale
}

fn degeneracy_tol(eigenvalues: &[f64]) -> f64 {
    let scale = eigenvalues.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    1e-9 * scale
}

/// Ratio below which the secular approximation is flagged.
pub const SECULAR_COUPLING_RATIO: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SecularFlag {
    Pass,
    Warn,
}

impl fmt::Display for SecularFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SecularFlag::Pass => "PASS",
            SecularFlag::Warn => "WARN",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecularReport {
    /// `2g / max(gamma)`.
    pub coupling_ratio: f64,
    /// `min(w_nu) / g`; infinite for `g = 0`.
    pub frequency_ratio: f64,
    pub min_bohr_gap: f64,
    pub flag: SecularFlag,
    pub warnings: Vec<String>,
}

/// Advisory check of the regime where the global secular master equation
/// is trusted (`2g >> gamma`, `w_nu > g`).
pub fn validate_secular(params: &SystemParams) -> Result<SecularReport> {
    let eig = EigenSystem::analytic(params)?;
    let gamma_max = params.gamma.iter().copied().fold(0.0, f64::max);
    let coupling_ratio = 2.0 * params.g / gamma_max;
    let omega_min = Terminal::ALL
        .iter()
        .map(|&t| params.omega(t))
        .fold(f64::INFINITY, f64::min);
    let frequency_ratio = if params.g > 0.0 {
        omega_min / params.g
    } else {
        f64::INFINITY
    };

    let mut warnings = Vec::new();
    if coupling_ratio < SECULAR_COUPLING_RATIO {
        warnings.push(format!(
            "2g/gamma = {coupling_ratio:.3} < {SECULAR_COUPLING_RATIO}: channels are not resolved by the secular approximation"
        ));
    }
    if frequency_ratio <= 1.0 {
        warnings.push(format!("min(omega)/g = {frequency_ratio:.3} <= 1"));
    }
    let flag = if warnings.is_empty() {
        SecularFlag::Pass
    } else {
        SecularFlag::Warn
    };
    Ok(SecularReport {
        coupling_ratio,
        frequency_ratio,
        min_bohr_gap: eig.min_bohr_gap(),
        flag,
        warnings,
    })
}

pub(crate) fn require_valid(params: &SystemParams) -> Result<()> {
    params.validate()?;
    if params.omega_l <= params.omega_m {
        return Err(Error::param(
            "omega_L",
            format!(
                "the eigenstate labelling needs omega_L > omega_M (got {} <= {})",
                params.omega_l, params.omega_m
            ),
        ));
    }
    Ok(())
}

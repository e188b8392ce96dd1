//! Full master-equation evolution of the density matrix, used as an
//! independent oracle for the population solver.
//!
//! The secular dissipator commutes with the free rotation generated by the
//! system Hamiltonian, so the equation is integrated in the frame rotating
//! with it and the phases `exp(-i (e_a - e_b) t)` are restored afterwards.
//! Every jump operator is real in the energy eigenbasis, hence the generator
//! maps real matrices to real matrices and the real and imaginary parts of
//! the state evolve independently.

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;

use super::ode::{integrate, OdeOptions};
use super::population::{PopulationVector, POPULATION_TOL};
use super::rates::bose_occupation;
use crate::channels::{decompose_numeric, jump_operators, DEFAULT_GROUPING_TOL};
use crate::error::{Error, Result};
use crate::model::{require_valid, EigenSystem, Mat8, DIM};
use crate::params::{SystemParams, Terminal};

pub type CMat8 = SMatrix<Complex64, 8, 8>;

const DIM2: usize = DIM * DIM;

/// Density matrix in the energy eigenbasis.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(CMat8);

impl DensityMatrix {
    /// Checks hermiticity, unit trace and positivity, each to 1e-12.
    pub fn new(rho: CMat8) -> Result<Self> {
        let herm = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > POPULATION_TOL {
            return Err(Error::NonPhysicalState(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = rho.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > POPULATION_TOL {
            return Err(Error::NonPhysicalState(format!("trace is {tr}, not 1")));
        }
        let rho = (rho + rho.adjoint()).scale(0.5);
        let min = rho.symmetric_eigenvalues().min();
        if min < -POPULATION_TOL {
            return Err(Error::NonPhysicalState(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix(rho))
    }

    pub fn from_populations(p: &PopulationVector) -> Self {
        DensityMatrix(CMat8::from_diagonal(&p.to_vec8().map(|x| Complex64::new(x, 0.0))))
    }

    /// `|psi><psi|` for a normalized state vector in the energy eigenbasis.
    pub fn pure(psi: &[Complex64; DIM]) -> Result<Self> {
        let v = SMatrix::<Complex64, 8, 1>::from_column_slice(psi);
        Self::new(v * v.adjoint())
    }

    /// Convert a density matrix given in the computational basis.
    pub fn from_computational(rho: &CMat8, eig: &EigenSystem) -> Result<Self> {
        let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        Self::new(v.transpose() * rho * v)
    }

    pub fn matrix(&self) -> &CMat8 {
        &self.0
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn populations(&self) -> Result<PopulationVector> {
        let mut p = [0.0; DIM];
        for (k, slot) in p.iter_mut().enumerate() {
            *slot = self.0[(k, k)].re;
        }
        PopulationVector::new(p)
    }

    /// Largest off-diagonal modulus.
    pub fn max_coherence(&self) -> f64 {
        let mut m = 0.0f64;
        for a in 0..DIM {
            for b in 0..DIM {
                if a != b {
                    m = m.max(self.0[(a, b)].norm());
                }
            }
        }
        m
    }

    pub(crate) fn from_raw(rho: CMat8) -> Self {
        DensityMatrix(rho)
    }
}

/// Secular dissipator as a sparse real map on vectorized 8x8 matrices
/// (row-major index `8 a + b`).
#[derive(Clone, Debug)]
pub struct Dissipator {
    entries: Vec<(usize, usize, f64)>,
    energies: [f64; DIM],
}

impl Dissipator {
    /// Built from the numerical eigen-operator decomposition of the jump
    /// operators, independently of the tabulated channel coefficients.
    pub fn new(params: &SystemParams) -> Result<Self> {
        require_valid(params)?;
        let eig = EigenSystem::analytic(params)?;
        let jumps = jump_operators(params)?;
        let mut terms: Vec<(f64, Mat8)> = Vec::new();
        for nu in Terminal::ALL {
            let gamma = params.gamma(nu);
            for ch in decompose_numeric(nu, &jumps[nu.index()], &eig, DEFAULT_GROUPING_TOL)? {
                let n = bose_occupation(ch.frequency, params.temperature(nu))?;
                let a = ch.operator();
                terms.push((gamma * (n + 1.0), a));
                terms.push((gamma * n, a.transpose()));
            }
        }

        let mut entries = Vec::new();
        for col in 0..DIM2 {
            let mut unit = Mat8::zeros();
            unit[(col / DIM, col % DIM)] = 1.0;
            let mut out = Mat8::zeros();
            for (rate, a) in &terms {
                if *rate == 0.0 {
                    continue;
                }
                let ad = a.transpose();
                let ada = ad * a;
                out += (a * unit * ad - (ada * unit + unit * ada) * 0.5) * *rate;
            }
            for row in 0..DIM2 {
                let v = out[(row / DIM, row % DIM)];
                if v != 0.0 {
                    entries.push((row, col, v));
                }
            }
        }
        Ok(Dissipator {
            entries,
            energies: eig.eigenvalues,
        })
    }

    /// `out = D[x]` for a vectorized real matrix `x`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for &(r, c, v) in &self.entries {
            out[r] += v * x[c];
        }
    }

    /// Dense 64x64 representation.
    pub fn dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(DIM2, DIM2);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn energies(&self) -> &[f64; DIM] {
        &self.energies
    }
}

/// Integrate the master equation from `rho0` at `t = 0`, returning the state
/// at every time in `t_grid`.
pub fn evolve_density_matrix(
    params: &SystemParams,
    rho0: &DensityMatrix,
    t_grid: &[f64],
) -> Result<Vec<DensityMatrix>> {
    evolve_density_matrix_with(params, rho0, t_grid, &OdeOptions::default())
}

pub fn evolve_density_matrix_with(
    params: &SystemParams,
    rho0: &DensityMatrix,
    t_grid: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<DensityMatrix>> {
    let d = Dissipator::new(params)?;
    let mut y0 = vec![0.0; 2 * DIM2];
    for a in 0..DIM {
        for b in 0..DIM {
            let z = rho0.0[(a, b)];
            y0[DIM * a + b] = z.re;
            y0[DIM2 + DIM * a + b] = z.im;
        }
    }
    let samples = integrate(
        |y, dy| {
            let (re, im) = y.split_at(DIM2);
            let (dre, dim) = dy.split_at_mut(DIM2);
            d.apply(re, dre);
            d.apply(im, dim);
        },
        &y0,
        t_grid,
        opts,
    )?;

    let e = &d.energies;
    Ok(samples
        .iter()
        .zip(t_grid)
        .map(|(y, &t)| {
            let mut rho = CMat8::zeros();
            for a in 0..DIM {
                for b in 0..DIM {
                    let z = Complex64::new(y[DIM * a + b], y[DIM2 + DIM * a + b]);
                    rho[(a, b)] = if a == b {
                        z
                    } else {
                        z * Complex64::from_polar(1.0, -(e[a] - e[b]) * t)
                    };
                }
            }
            DensityMatrix::from_raw(rho)
        })
        .collect())
}

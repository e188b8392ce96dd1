//! Instantaneous resonant drive between two eigenstates.

use num_complex::Complex64;

use super::lindblad::{CMat8, DensityMatrix};
use super::population::PopulationVector;
use crate::error::{Error, Result};
use crate::model::{EigenSystem, DIM};

/// Rabi drive of strength `omega` applied for `duration` on the eigenstate
/// pair `pair` (0-based; default `|e_4>, |e_8>`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveSpec {
    pub omega: f64,
    pub duration: f64,
    pub pair: (usize, usize),
    /// Resonant frequency `e_j - e_i` of the pair, kept for reporting.
    pub drive_frequency: f64,
}

impl DriveSpec {
    pub fn new(omega: f64, duration: f64, eig: &EigenSystem) -> Result<Self> {
        Self::with_pair(omega, duration, (3, 7), eig)
    }

    pub fn with_pair(omega: f64, duration: f64, pair: (usize, usize), eig: &EigenSystem) -> Result<Self> {
        let spec = DriveSpec {
            omega,
            duration,
            pair,
            drive_frequency: 0.0,
        };
        spec.validate()?;
        Ok(DriveSpec {
            drive_frequency: eig.eigenvalues[pair.1] - eig.eigenvalues[pair.0],
            ..spec
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidDrive(format!("strength must be > 0, got {}", self.omega)));
        }
        if !(self.duration >= 0.0 && self.duration.is_finite()) {
            return Err(Error::InvalidDrive(format!(
                "duration must be >= 0, got {}",
                self.duration
            )));
        }
        let (i, j) = self.pair;
        if i >= DIM || j >= DIM || i == j {
            return Err(Error::InvalidDrive(format!(
                "pair ({i}, {j}) must be two distinct indices below {DIM}"
            )));
        }
        Ok(())
    }

    /// Rotation angle `omega * duration`.
    pub fn angle(&self) -> f64 {
        self.omega * self.duration
    }

    /// `U = cos(theta) 1 + i sin(theta) sigma_x` on the pair, identity elsewhere.
    pub fn unitary(&self) -> CMat8 {
        let (c, s) = (self.angle().cos(), self.angle().sin());
        let (i, j) = self.pair;
        let mut u = CMat8::identity();
        u[(i, i)] = Complex64::new(c, 0.0);
        u[(j, j)] = Complex64::new(c, 0.0);
        u[(i, j)] = Complex64::new(0.0, s);
        u[(j, i)] = Complex64::new(0.0, s);
        u
    }
}

/// States the drive can act on.
pub trait Drivable: Sized {
    fn driven(&self, drive: &DriveSpec) -> Result<Self>;
}

impl Drivable for PopulationVector {
    fn driven(&self, drive: &DriveSpec) -> Result<Self> {
        drive.validate()?;
        let (i, j) = drive.pair;
        let (c2, s2) = (drive.angle().cos().powi(2), drive.angle().sin().powi(2));
        let mut p = *self.as_array();
        p[i] = self[i] * c2 + self[j] * s2;
        p[j] = self[j] * c2 + self[i] * s2;
        PopulationVector::normalized(p, 1.0)
    }
}

impl Drivable for DensityMatrix {
    fn driven(&self, drive: &DriveSpec) -> Result<Self> {
        drive.validate()?;
        let u = drive.unitary();
        Ok(DensityMatrix::from_raw(u * self.matrix() * u.adjoint()))
    }
}

pub fn apply_drive<S: Drivable>(state: &S, drive: &DriveSpec) -> Result<S> {
    state.driven(drive)
}

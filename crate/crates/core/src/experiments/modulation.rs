//! Dark-state heat modulation: drive part of the conserved `|e_4>`
//! population into `|e_8>`, then let the system relax again.

use std::f64::consts::PI;

use crate::channels::DARK_STATE;
use crate::dynamics::{apply_drive, DriveSpec};
use crate::error::{Error, Result};
use crate::observables::HeatCurrentTriple;
use crate::params::SystemParams;
use crate::transistor::Transistor;

#[derive(Clone, Debug, PartialEq)]
pub struct ModulationReport {
    pub drive: DriveSpec,
    pub rho44_before: f64,
    pub rho44_after: f64,
    pub before: HeatCurrentTriple,
    pub after: HeatCurrentTriple,
    /// `(1 - rho44_after) / (1 - rho44_before)`.
    pub predicted_scale: f64,
    /// `(t, rho44(t))` over one Rabi period of the drive.
    pub trajectory: Vec<(f64, f64)>,
}

pub fn run_modulation(
    params: &SystemParams,
    drive: &DriveSpec,
    rho44_before: f64,
    trajectory_points: usize,
) -> Result<ModulationReport> {
    if !params.is_fully_common() {
        return Err(Error::DarkStateAbsent);
    }
    drive.validate()?;
    let t = Transistor::new(*params)?;
    let (p_before, before) = t.steady_currents(Some(rho44_before))?;

    let driven = apply_drive(&p_before, drive)?;
    // relaxation conserves the dark population reached by the drive
    let rho44_after = driven[DARK_STATE];
    let (_, after) = t.steady_currents(Some(rho44_after))?;

    let period = PI / drive.omega;
    let n = trajectory_points.max(2);
    let trajectory = (0..n)
        .map(|k| {
            let time = period * k as f64 / (n - 1) as f64;
            let d = DriveSpec {
                duration: time,
                ..*drive
            };
            apply_drive(&p_before, &d).map(|p| (time, p[DARK_STATE]))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ModulationReport {
        drive: *drive,
        rho44_before,
        rho44_after,
        before,
        after,
        predicted_scale: (1.0 - rho44_after) / (1.0 - rho44_before),
        trajectory,
    })
}

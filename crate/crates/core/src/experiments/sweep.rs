use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::dynamics::PopulationVector;
use crate::error::{Error, Result};
use crate::format::sci;
use crate::model::{validate_secular, SecularReport};
use crate::observables::{amplification_factor, AmplificationResult, HeatCurrentTriple};
use crate::params::{SystemParams, Terminal};
use crate::transistor::Transistor;

use super::config::{linspace, Axis, Config};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axis: Axis,
    pub values: Vec<f64>,
    pub control: Terminal,
    /// Dark-state population, used only at fully common points (default 0).
    pub rho44: Option<f64>,
}

impl SweepSpec {
    pub fn new(base: SystemParams, axis: Axis, values: Vec<f64>, control: Terminal) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::param("points", format!("need at least 2, got {}", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("values", "sweep values must be finite"));
        }
        base.validate()?;
        Ok(SweepSpec {
            base,
            axis,
            values,
            control,
            rho44: None,
        })
    }

    pub fn from_range(
        base: SystemParams,
        axis: Axis,
        lo: f64,
        hi: f64,
        points: usize,
        control: Terminal,
    ) -> Result<Self> {
        Self::new(base, axis, linspace(lo, hi, points)?, control)
    }

    pub fn from_config(cfg: &Config) -> Result<Self> {
        let axis = cfg
            .axis
            .ok_or_else(|| Error::param("axis", "no sweep axis configured"))?;
        let mut spec = Self::new(cfg.resolved_params()?, axis, cfg.grid()?, cfg.control)?;
        spec.rho44 = cfg.rho44;
        Ok(spec)
    }

    pub fn with_rho44(mut self, rho44: f64) -> Self {
        self.rho44 = Some(rho44);
        self
    }

    /// Parameters and effective dark-state population at one axis value.
    pub fn point(&self, v: f64) -> (SystemParams, Option<f64>) {
        let params = self.axis.apply(&self.base, v);
        let rho44 = if self.axis == Axis::Rho44 { Some(v) } else { self.rho44 };
        (params, params.is_fully_common().then(|| rho44.unwrap_or(0.0)))
    }
}

#[derive(Clone, Debug)]
pub struct RunRecord {
    pub axis_value: f64,
    pub params: SystemParams,
    pub rho44: Option<f64>,
    pub populations: Option<PopulationVector>,
    pub currents: Option<HeatCurrentTriple>,
    pub amplification: Option<AmplificationResult>,
    pub secular: Option<SecularReport>,
    /// Every error met at this point, in evaluation order.
    pub errors: Vec<String>,
    pub wall_time: Duration,
}

impl RunRecord {
    /// No steady state could be computed.
    pub fn failed(&self) -> bool {
        self.populations.is_none()
    }
}

pub fn run_point(axis_value: f64, params: SystemParams, rho44: Option<f64>, control: Terminal) -> RunRecord {
    let start = Instant::now();
    let mut rec = RunRecord {
        axis_value,
        params,
        rho44,
        populations: None,
        currents: None,
        amplification: None,
        secular: None,
        errors: Vec::new(),
        wall_time: Duration::ZERO,
    };
    match validate_secular(&params) {
        Ok(r) => rec.secular = Some(r),
        Err(e) => rec.errors.push(e.to_string()),
    }
    match Transistor::new(params).and_then(|t| t.steady_currents(rho44)) {
        Ok((p, q)) => {
            rec.currents = Some(q);
            rec.populations = Some(p);
            match amplification_factor(&params, control, rho44) {
                Ok(a) => rec.amplification = Some(a),
                Err(e) => rec.errors.push(e.to_string()),
            }
        }
        Err(e) => rec.errors.push(e.to_string()),
    }
    rec.wall_time = start.elapsed();
    rec
}

/// Evaluate every grid point on a pool of `workers` threads; records come
/// back in grid order.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<Vec<RunRecord>> {
    with_pool(workers, || {
        spec.values
            .par_iter()
            .map(|&v| {
                let (params, rho44) = spec.point(v);
                run_point(v, params, rho44, spec.control)
            })
            .collect()
    })
}

pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::param("workers", e.to_string()))?;
    Ok(pool.install(f))
}

pub const SWEEP_HEADER: &str =
    "axis_value,Q_L,Q_M,Q_R,alpha_L,alpha_R,rho_11,rho_22,rho_33,rho_44,rho_55,rho_66,rho_77,rho_88,secular_flag,error";

/// One row per record; unavailable quantities are left empty.
pub fn write_sweep_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER.split(','))?;
    for r in records {
        let mut row = vec![sci(r.axis_value)];
        match &r.currents {
            Some(q) => row.extend(q.q.iter().map(|&x| sci(x))),
            None => row.extend(std::iter::repeat_n(String::new(), 3)),
        }
        match &r.amplification {
            Some(a) => row.extend([sci(a.alpha_l), sci(a.alpha_r)]),
            None => row.extend([String::new(), String::new()]),
        }
        match &r.populations {
            Some(p) => row.extend(p.iter().map(|&x| sci(x))),
            None => row.extend(std::iter::repeat_n(String::new(), 8)),
        }
        row.push(r.secular.as_ref().map(|s| s.flag.to_string()).unwrap_or_default());
        row.push(r.errors.join("; "));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

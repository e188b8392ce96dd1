use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{SystemParams, Terminal};

use super::amplification::amplification_factor;

/// One grid point of a lambda scan.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaPoint {
    pub lambda: [f64; 3],
    /// `alpha_L`, or the reason the point was excluded.
    pub alpha_l: std::result::Result<f64, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    Mixed,
    Flat,
}

/// Signs of the finite differences of `alpha_L` along one free axis,
/// counted over every adjacent pair of valid grid points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisSummary {
    /// Component of lambda (0-based).
    pub axis: usize,
    pub increases: usize,
    pub decreases: usize,
    pub trend: Trend,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSurface {
    pub free: Vec<usize>,
    pub values: Vec<f64>,
    /// Row-major over `free`, the last free axis varying fastest.
    pub points: Vec<LambdaPoint>,
    /// Index into `points` of the largest valid `alpha_L`.
    pub argmax: Option<usize>,
    pub axes: Vec<AxisSummary>,
}

impl LambdaSurface {
    pub fn best(&self) -> Option<&LambdaPoint> {
        self.argmax.map(|i| &self.points[i])
    }

    pub fn axis(&self, component: usize) -> Option<&AxisSummary> {
        self.axes.iter().find(|a| a.axis == component)
    }
}

/// Scan `alpha_L` over `resolution` evenly spaced values in `[0, 1]` for
/// each free lambda component; the others keep their `base` values. An
/// empty `free` set evaluates the base point alone. Fully common points use
/// `rho44 = 0`, which does not affect `alpha`.
pub fn optimize_lambda(
    base: &SystemParams,
    free: &[usize],
    resolution: usize,
    control: Terminal,
) -> Result<LambdaSurface> {
    let mut free = free.to_vec();
    free.sort_unstable();
    free.dedup();
    if free.iter().any(|&k| k > 2) {
        return Err(Error::param("free", "lambda components are 0, 1, 2"));
    }
    if !free.is_empty() && resolution < 2 {
        return Err(Error::param(
            "resolution",
            format!("needs >= 2 points per axis, got {resolution}"),
        ));
    }
    base.validate()?;
    let values: Vec<f64> = if free.is_empty() {
        Vec::new()
    } else {
        (0..resolution).map(|i| i as f64 / (resolution - 1) as f64).collect()
    };

    let count = values.len().pow(free.len() as u32);
    let lambdas: Vec<[f64; 3]> = (0..count)
        .map(|mut idx| {
            let mut lambda = base.lambda;
            for &k in free.iter().rev() {
                lambda[k] = values[idx % values.len()];
                idx /= values.len();
            }
            lambda
        })
        .collect();

    let points: Vec<LambdaPoint> = lambdas
        .par_iter()
        .map(|&lambda| {
            let p = base.with_lambda(lambda);
            let rho44 = (lambda == [1.0; 3]).then_some(0.0);
            LambdaPoint {
                lambda,
                alpha_l: amplification_factor(&p, control, rho44)
                    .map(|a| a.alpha_l)
                    .map_err(|e| e.to_string()),
            }
        })
        .collect();

    let argmax = points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.alpha_l.as_ref().ok().map(|&a| (i, a)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i);

    let axes = free
        .iter()
        .enumerate()
        .map(|(pos, &axis)| summarize(&points, free.len(), values.len(), pos, axis))
        .collect();

    Ok(LambdaSurface {
        free,
        values,
        points,
        argmax,
        axes,
    })
}

fn summarize(points: &[LambdaPoint], dims: usize, res: usize, pos: usize, axis: usize) -> AxisSummary {
    let stride = res.pow((dims - 1 - pos) as u32);
    let (mut increases, mut decreases) = (0, 0);
    for (i, p) in points.iter().enumerate() {
        if (i / stride) % res == res - 1 {
            continue;
        }
        if let (Ok(a), Ok(b)) = (&p.alpha_l, &points[i + stride].alpha_l) {
            if b > a {
                increases += 1;
            } else if b < a {
                decreases += 1;
            }
        }
    }
    let trend = match (increases, decreases) {
        (0, 0) => Trend::Flat,
        (_, 0) => Trend::Increasing,
        (0, _) => Trend::Decreasing,
        _ => Trend::Mixed,
    };
    AxisSummary {
        axis,
        increases,
        decreases,
        trend,
    }
}

//! Adaptive Dormand-Prince 5(4) integrator for autonomous systems
//! `dy/dt = f(y)`.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-14,
            max_steps: 5_000_000,
        }
    }
}

// Butcher tableau; the system is autonomous so the nodes are not needed
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order solution minus embedded fourth-order one
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate from `y0` at `t = 0` and return the state at every time in
/// `t_grid` (non-negative, non-decreasing). Steps are clipped to land on
/// each grid time exactly.
pub fn integrate<F>(mut rhs: F, y0: &[f64], t_grid: &[f64], opts: &OdeOptions) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(&[f64], &mut [f64]),
{
    if let Some(&t) = t_grid.first() {
        if !(t >= 0.0) {
            return Err(Error::param("t_grid", "times must be >= 0"));
        }
    }
    if t_grid.windows(2).any(|w| !(w[1] >= w[0])) || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::param("t_grid", "times must be finite and non-decreasing"));
    }

    let n = y0.len();
    let mut y = y0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut y_new = vec![0.0; n];
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut out = Vec::with_capacity(t_grid.len());

    rhs(&y, &mut k[0]);
    let mut h = initial_step(&y, &k[0], opts);

    for &target in t_grid {
        while t < target {
            if steps >= opts.max_steps {
                return Err(Error::Integration {
                    t,
                    step: h,
                    steps,
                    reason: "step budget exhausted".into(),
                });
            }
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };

            for s in 1..7 {
                for i in 0..n {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += A[s][j] * kj[i];
                    }
                    tmp[i] = y[i] + step * acc;
                }
                rhs(&tmp, &mut k[s]);
                if s == 6 {
                    y_new.copy_from_slice(&tmp);
                }
            }
            // stage 7 sits at the fifth-order solution, so k[6] = f(y_new)
            let mut err = 0.0f64;
            for i in 0..n {
                let mut e = 0.0;
                for (j, kj) in k.iter().enumerate() {
                    e += E[j] * kj[i];
                }
                let scale = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                err = err.max((step * e).abs() / scale);
            }
            if !err.is_finite() {
                return Err(Error::Integration {
                    t,
                    step,
                    steps,
                    reason: "non-finite error estimate".into(),
                });
            }

            if err <= 1.0 {
                t = if last { target } else { t + step };
                y.copy_from_slice(&y_new);
                k.swap(0, 6);
                steps += 1;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            // a clipped final step says nothing about the natural step size
            if !(last && err <= 1.0) {
                h = step * factor;
            }
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(Error::Integration {
                    t,
                    step: h,
                    steps,
                    reason: "step size underflow".into(),
                });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

fn initial_step(y: &[f64], f: &[f64], opts: &OdeOptions) -> f64 {
    let (mut d0, mut d1) = (0.0f64, 0.0f64);
    for (yi, fi) in y.iter().zip(f) {
        let sc = opts.atol + opts.rtol * yi.abs();
        d0 = d0.max(yi.abs() / sc);
        d1 = d1.max(fi.abs() / sc);
    }
    if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    }
}

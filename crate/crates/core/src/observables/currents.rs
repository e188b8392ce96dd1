use crate::dynamics::{bose_occupation, stationary, Dd, PopulationVector};
use crate::error::Result;
use crate::model::{Mat8, Vec8, DIM};
use crate::params::{SystemParams, Terminal};
use crate::transistor::Transistor;

/// Populations with `|W p|_inf` above this are flagged as non-stationary.
pub const STEADY_RESIDUAL_TOL: f64 = 1e-8;

/// Heat currents `(Q_L, Q_M, Q_R)`; positive means heat flowing from the
/// reservoir into the system.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatCurrentTriple {
    pub q: [f64; 3],
    /// `|W p|_inf` of the populations the currents were computed from.
    pub steady_residual: f64,
    pub warning: Option<String>,
}

impl HeatCurrentTriple {
    pub fn get(&self, t: Terminal) -> f64 {
        self.q[t.index()]
    }

    pub fn total(&self) -> f64 {
        self.q.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.q.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `|Q_L + Q_M + Q_R| / max |Q|`, zero when all currents vanish.
    pub fn conservation_residual(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            0.0
        } else {
            self.total().abs() / scale
        }
    }
}

pub fn heat_currents(params: &SystemParams, p: &PopulationVector) -> Result<HeatCurrentTriple> {
    Ok(Transistor::new(*params)?.heat_currents(p))
}

impl Transistor {
    /// Sum over every channel transition `i <-> j` of the net upward flux
    /// times the transition energy.
    pub fn heat_currents(&self, p: &PopulationVector) -> HeatCurrentTriple {
        let q = self.currents_precise(&p.as_array().map(Dd::from)).map(Dd::to_f64);
        let steady_residual = (self.rates().matrix() * p.to_vec8()).amax();
        let warning = (steady_residual > STEADY_RESIDUAL_TOL)
            .then(|| format!("populations are not stationary (|W p| = {steady_residual:e})"));
        HeatCurrentTriple {
            q,
            steady_residual,
            warning,
        }
    }

    /// Stationary populations together with their heat currents. The
    /// currents come from the extended-precision stationary vector, so they
    /// keep conservation to full relative precision even when the net fluxes
    /// are many orders of magnitude below the individual rates.
    pub fn steady_currents(&self, rho44: Option<f64>) -> Result<(PopulationVector, HeatCurrentTriple)> {
        let exact = stationary(self.rates(), rho44)?;
        let p = PopulationVector::new(exact.map(Dd::to_f64))?;
        let q = self.currents_precise(&exact).map(Dd::to_f64);
        let steady_residual = (self.rates().matrix() * p.to_vec8()).amax();
        let warning = (steady_residual > STEADY_RESIDUAL_TOL)
            .then(|| format!("populations are not stationary (|W p| = {steady_residual:e})"));
        Ok((
            p,
            HeatCurrentTriple {
                q,
                steady_residual,
                warning,
            },
        ))
    }

    /// Accumulated in double-double with the exact rates of the rate matrix,
    /// so the currents of a stationary state cancel far below `f64`
    /// round-off.
    pub(crate) fn currents_precise(&self, p: &[Dd; DIM]) -> [Dd; 3] {
        let w = self.rates().matrix();
        let e = &self.eigen().eigenvalues;
        let mut q = [Dd::ZERO; 3];
        for ch in self.channels() {
            for t in &ch.transitions {
                let (i, j) = (t.lower, t.upper);
                let flux = Dd::from(w[(j, i)]) * p[i] - Dd::from(w[(i, j)]) * p[j];
                q[ch.reservoir.index()] += flux * (Dd::from(e[j]) - Dd::from(e[i]));
            }
        }
        q
    }

    /// `Tr{H L_nu[rho]}` for `rho = diag(p)`, evaluated with full operator
    /// products for each reservoir.
    pub fn heat_currents_trace_form(&self, p: &PopulationVector) -> [f64; 3] {
        let params = self.params();
        let h = Mat8::from_diagonal(&Vec8::from_column_slice(&self.eigen().eigenvalues));
        let rho = Mat8::from_diagonal(&p.to_vec8());
        let mut q = [0.0; 3];
        for ch in self.channels() {
            let nu = ch.reservoir;
            let gamma = params.gamma(nu);
            let n = bose_occupation(ch.frequency, params.temperature(nu)).expect("validated");
            let a = ch.operator();
            for (rate, x) in [(gamma * (n + 1.0), a), (gamma * n, a.transpose())] {
                let xdx = x.transpose() * x;
                let d = x * rho * x.transpose() - (xdx * rho + rho * xdx) * 0.5;
                q[nu.index()] += rate * (h * d).trace();
            }
        }
        q
    }
}

//! A prepared parameter point: eigensystem, channels and rate matrix built
//! once and reused by every solver and observable.

use crate::channels::{channels_analytic, DissipationChannel};
use crate::dynamics::{solve_steady_state, PopulationVector, RateMatrix};
use crate::error::Result;
use crate::model::{require_valid, EigenSystem};
use crate::params::SystemParams;

#[derive(Clone, Debug)]
pub struct Transistor {
    params: SystemParams,
    eigen: EigenSystem,
    channels: Vec<DissipationChannel>,
    rates: RateMatrix,
}

impl Transistor {
    pub fn new(params: SystemParams) -> Result<Self> {
        require_valid(&params)?;
        let eigen = EigenSystem::analytic(&params)?;
        let channels = channels_analytic(&params, &eigen)?;
        let rates = RateMatrix::from_channels(&params, &channels)?;
        Ok(Transistor {
            params,
            eigen,
            channels,
            rates,
        })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    pub fn channels(&self) -> &[DissipationChannel] {
        &self.channels
    }

    pub fn rates(&self) -> &RateMatrix {
        &self.rates
    }

    /// See [`crate::dynamics::steady_state`].
    pub fn steady_state(&self, rho44: Option<f64>) -> Result<PopulationVector> {
        solve_steady_state(&self.rates, rho44)
    }
}

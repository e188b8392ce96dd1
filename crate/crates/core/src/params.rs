//! Physical inputs of the transistor.
//!
//! Units: hbar = k_B = 1, every frequency, temperature and decay rate is
//! measured in units of the reference frequency w0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the three terminals (qubit + its reservoir).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    L,
    M,
    R,
}

impl Terminal {
    pub const ALL: [Terminal; 3] = [Terminal::L, Terminal::M, Terminal::R];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Terminal::L => "L",
            Terminal::M => "M",
            Terminal::R => "R",
        }
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Terminal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "L" | "l" => Ok(Terminal::L),
            "M" | "m" => Ok(Terminal::M),
            "R" | "r" => Ok(Terminal::R),
            other => Err(Error::param("terminal", format!("expected L, M or R, got `{other}`"))),
        }
    }
}

/// All physical inputs. `omega_R` is never stored: it is always
/// `omega_l + omega_m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    pub omega_l: f64,
    pub omega_m: f64,
    /// Three-body coupling strength.
    pub g: f64,
    /// Common-coupling strengths (lambda1, lambda2, lambda3).
    pub lambda: [f64; 3],
    /// Bath temperatures indexed by [`Terminal::index`].
    pub temperature: [f64; 3],
    /// Flat spectral densities indexed by [`Terminal::index`].
    pub gamma: [f64; 3],
}

impl SystemParams {
    /// Parameters shared by most presets: w_M = 1, w_L = 30,
    /// T_L = 5, T_M = 1, T_R = 0.5, g = 0.1, all lambda = 0, gamma = 0.002.
    pub fn reference() -> Self {
        SystemParams {
            omega_l: 30.0,
            omega_m: 1.0,
            g: 0.1,
            lambda: [0.0; 3],
            temperature: [5.0, 1.0, 0.5],
            gamma: [0.002; 3],
        }
    }

    #[inline]
    pub fn omega_r(&self) -> f64 {
        self.omega_l + self.omega_m
    }

    /// Bare qubit frequency of a terminal.
    pub fn omega(&self, t: Terminal) -> f64 {
        match t {
            Terminal::L => self.omega_l,
            Terminal::M => self.omega_m,
            Terminal::R => self.omega_r(),
        }
    }

    #[inline]
    pub fn temperature(&self, t: Terminal) -> f64 {
        self.temperature[t.index()]
    }

    #[inline]
    pub fn gamma(&self, t: Terminal) -> f64 {
        self.gamma[t.index()]
    }

    pub fn with_temperature(mut self, t: Terminal, value: f64) -> Self {
        self.temperature[t.index()] = value;
        self
    }

    pub fn with_lambda(mut self, lambda: [f64; 3]) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_g(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    pub fn with_gamma(mut self, gamma: [f64; 3]) -> Self {
        self.gamma = gamma;
        self
    }

    /// Completely correlated transitions: lambda1 = lambda2 = lambda3 = 1.
    pub fn is_fully_common(&self) -> bool {
        self.lambda.iter().all(|&l| l == 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        positive("omega_L", self.omega_l)?;
        positive("omega_M", self.omega_m)?;
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::param("g", format!("must be finite and >= 0, got {}", self.g)));
        }
        for (i, &l) in self.lambda.iter().enumerate() {
            if !(0.0..=1.0).contains(&l) {
                return Err(Error::param(
                    format!("lambda{}", i + 1),
                    format!("must lie in [0, 1], got {l}"),
                ));
            }
        }
        for t in Terminal::ALL {
            positive(&format!("T_{t}"), self.temperature(t))?;
            positive(&format!("gamma_{t}"), self.gamma(t))?;
        }
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite and > 0, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_r_is_derived() {
        let p = SystemParams::reference();
        assert_eq!(p.omega_r(), 31.0);
        assert_eq!(p.omega(Terminal::R), 31.0);
    }

    #[test]
    fn rejects_out_of_domain_values() {
        let p = SystemParams::reference();
        assert!(p.validate().is_ok());
        assert!(p.with_lambda([0.0, 1.2, 0.0]).validate().is_err());
        assert!(p.with_g(-0.1).validate().is_err());
        assert!(p.with_temperature(Terminal::M, 0.0).validate().is_err());
        assert!(p.with_gamma([0.002, f64::NAN, 0.002]).validate().is_err());
        assert!(SystemParams { omega_m: 0.0, ..p }.validate().is_err());
        // g = 0 is the decoupled limit and stays valid
        assert!(p.with_g(0.0).validate().is_ok());
    }

    #[test]
    fn terminal_parsing() {
        assert_eq!("R".parse::<Terminal>().unwrap(), Terminal::R);
        assert!("X".parse::<Terminal>().is_err());
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dyson index of the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Beta {
    /// Real entries.
    Real,
    /// Complex entries.
    Complex,
}

impl Beta {
    pub fn from_index(beta: u8) -> Result<Self> {
        match beta {
            1 => Ok(Beta::Real),
            2 => Ok(Beta::Complex),
            other => Err(Error::domain(format!("beta must be 1 or 2, got {other}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Beta::Real => 1,
            Beta::Complex => 2,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.index())
    }
}

/// `(N, L, β)` of one induced Ginibre ensemble.
///
/// Invariants: `N ≥ 1`, `L ≥ 0` finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleParams {
    n: usize,
    l: f64,
    beta: Beta,
}

impl EnsembleParams {
    pub fn new(n: usize, l: f64, beta: Beta) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("matrix dimension N must be at least 1"));
        }
        if !l.is_finite() || l < 0.0 {
            return Err(Error::domain(format!("rectangularity L must be finite and >= 0, got {l}")));
        }
        Ok(Self { n, l, beta })
    }

    /// Shorthand for the complex ensemble.
    pub fn complex(n: usize, l: f64) -> Result<Self> {
        Self::new(n, l, Beta::Complex)
    }

    /// Shorthand for the real ensemble.
    pub fn real(n: usize, l: f64) -> Result<Self> {
        Self::new(n, l, Beta::Real)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    /// `L` as a row count, for samplers that draw an `(N+L)×N` Gaussian.
    pub fn integer_l(&self) -> Result<usize> {
        if self.l.fract() != 0.0 {
            return Err(Error::domain(format!(
                "Gaussian samplers need an integer L, got {}",
                self.l
            )));
        }
        Ok(self.l as usize)
    }

    pub(crate) fn require_beta(&self, beta: Beta) -> Result<()> {
        if self.beta != beta {
            return Err(Error::domain(format!(
                "expected beta={}, got beta={}",
                beta.index(),
                self.beta.index()
            )));
        }
        Ok(())
    }

    pub(crate) fn require_even_n(&self) -> Result<()> {
        if self.n % 2 != 0 {
            return Err(Error::domain(format!(
                "real-ensemble analytics need even N, got N={}",
                self.n
            )));
        }
        Ok(())
    }
}

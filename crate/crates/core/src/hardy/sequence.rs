use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fmath::ceil;

type TermRule = dyn Fn(u64) -> f64 + Send + Sync;

/// A positive sequence `a_1, a_2, ...`, indexed from 1.
#[derive(Clone)]
pub enum Sequence {
    /// `a_n = 1/n`: divergent sum, terms tend to zero.
    Harmonic,
    /// A finite list of terms.
    Explicit(Arc<[f64]>),
    /// A caller-supplied rule. Divergence of its sum cannot be checked.
    Custom(Arc<TermRule>),
}

impl Sequence {
    pub fn explicit(terms: impl Into<Vec<f64>>) -> Self {
        Self::Explicit(terms.into().into())
    }

    pub fn custom(rule: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(rule))
    }

    /// Number of terms, if finite.
    pub fn len(&self) -> Option<u64> {
        match self {
            Self::Explicit(v) => Some(v.len() as u64),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Whether `sum a_n = inf` and `a_n -> 0` are known rather than assumed.
    pub fn divergence_known(&self) -> bool {
        matches!(self, Self::Harmonic)
    }

    /// The term `a_n`, checked to be finite and positive.
    pub fn term(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::domain("sequences are indexed from 1"));
        }
        let a = match self {
            Self::Harmonic => 1.0 / n as f64,
            Self::Explicit(v) => *v.get((n - 1) as usize).ok_or(Error::SequenceExhausted {
                requested: n,
                available: v.len() as u64,
            })?,
            Self::Custom(rule) => rule(n),
        };
        if a > 0.0 && a.is_finite() {
            Ok(a)
        } else {
            Err(Error::domain(alloc::format!(
                "sequence term {n} is {a}, expected a finite positive real"
            )))
        }
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Harmonic => f.write_str("Harmonic"),
            Self::Explicit(v) => f.debug_tuple("Explicit").field(&v.len()).finish(),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Which indices a trace records.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stride {
    /// Every index.
    Every,
    /// `n -> max(n + 1, ceil(n * ratio))`, starting at 1.
    Geometric(f64),
}

impl Default for Stride {
    fn default() -> Self {
        Self::Geometric(1.1)
    }
}

impl Stride {
    pub(crate) fn validate(self) -> Result<Self> {
        match self {
            Self::Geometric(r) if !(r > 1.0 && r.is_finite()) => Err(Error::domain(
                "geometric stride ratio must be finite and > 1",
            )),
            _ => Ok(self),
        }
    }

    /// The sampled index following `n`.
    pub fn next_after(self, n: u64) -> u64 {
        match self {
            Self::Every => n + 1,
            Self::Geometric(r) => {
                let g = ceil(n as f64 * r);
                if g >= u64::MAX as f64 {
                    u64::MAX
                } else {
                    (g as u64).max(n + 1)
                }
            }
        }
    }
}

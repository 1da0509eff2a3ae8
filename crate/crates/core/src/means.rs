//! Batch evaluation of power means and Gini means on finite positive samples.
//!
//! Every evaluator returns a value clamped into `[min(s), max(s)]`, so
//! internality and idempotence hold exactly in floating point, not just up
//! to rounding.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::fmath::{exp, ln, ln_ratio, pow_fast, powf};
use crate::gauss::{self, CompoundSettings};
use crate::sum::CompensatedSum;

/// Exponent of a power mean, an extended real with NaN excluded.
///
/// `-0.0` is normalised to `0.0` so that equality and ordering agree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerExponent(f64);

impl PowerExponent {
    pub const NEG_INFINITY: Self = Self(f64::NEG_INFINITY);
    pub const INFINITY: Self = Self(f64::INFINITY);
    pub const GEOMETRIC: Self = Self(0.0);
    pub const ARITHMETIC: Self = Self(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(Error::domain("power-mean exponent is NaN"));
        }
        Ok(Self(if value == 0.0 { 0.0 } else { value }))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl Eq for PowerExponent {}

impl PartialOrd for PowerExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PowerExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl TryFrom<f64> for PowerExponent {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl fmt::Display for PowerExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A validated, borrowed sample: nonempty, every entry finite and positive.
#[derive(Debug, Clone, Copy)]
pub struct Sample<'a> {
    entries: &'a [f64],
    min: f64,
    max: f64,
}

impl<'a> Sample<'a> {
    pub fn new(entries: &'a [f64]) -> Result<Self> {
        let Some(&first) = entries.first() else {
            return Err(Error::domain("sample is empty"));
        };
        let mut min = first;
        let mut max = first;
        for (i, &a) in entries.iter().enumerate() {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::domain(alloc::format!(
                    "sample entry {} is {a}, expected a finite positive real",
                    i + 1
                )));
            }
            min = min.min(a);
            max = max.max(a);
        }
        Ok(Self { entries, min, max })
    }

    pub fn entries(&self) -> &'a [f64] {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn is_constant(&self) -> bool {
        self.min == self.max
    }

    pub(crate) fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.min, self.max)
    }
}

/// Parameters of a Gini mean; `p != q`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GiniParams {
    p: f64,
    q: f64,
}

impl GiniParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() {
            return Err(Error::domain("Gini parameters must be finite reals"));
        }
        if p == q {
            return Err(Error::UnsupportedParameters { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// The same mean with `p` and `q` exchanged.
    pub fn swapped(self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }
}

/// Exponent list of a Gaussian compound: nonempty, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundExponents(Vec<f64>);

impl CompoundExponents {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::domain("compound exponent list is empty"));
        }
        if let Some(bad) = exponents.iter().find(|l| !l.is_finite()) {
            return Err(Error::domain(alloc::format!(
                "compound exponents must be finite, got {bad}"
            )));
        }
        let exponents = exponents
            .into_iter()
            .map(|l| if l == 0.0 { 0.0 } else { l })
            .collect();
        Ok(Self(exponents))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

impl TryFrom<Vec<f64>> for CompoundExponents {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Self::new(value)
    }
}

/// Selects one of the three mean families.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanDescriptor {
    Power(PowerExponent),
    Gini(GiniParams),
    GaussCompound(CompoundExponents),
}

impl MeanDescriptor {
    pub fn power(lambda: f64) -> Result<Self> {
        PowerExponent::new(lambda).map(Self::Power)
    }

    pub fn gini(p: f64, q: f64) -> Result<Self> {
        GiniParams::new(p, q).map(Self::Gini)
    }

    pub fn gauss(exponents: impl Into<Vec<f64>>) -> Result<Self> {
        CompoundExponents::new(exponents.into()).map(Self::GaussCompound)
    }

    /// Evaluates the mean on `s`, using default compound settings.
    pub fn evaluate(&self, s: &Sample<'_>) -> Result<f64> {
        self.evaluate_with(s, &CompoundSettings::default())
    }

    pub fn evaluate_with(&self, s: &Sample<'_>, cfg: &CompoundSettings) -> Result<f64> {
        match self {
            Self::Power(l) => Ok(power_mean(s, *l)),
            Self::Gini(g) => Ok(gini_mean(s, *g)),
            Self::GaussCompound(exps) => gauss::compound_mean(s, exps, cfg),
        }
    }

    /// Finite nonzero exponents whose power sums a streaming evaluator must
    /// keep to produce this mean.
    pub fn required_power_sums(&self) -> Vec<f64> {
        let mut out: Vec<f64> = match self {
            Self::Power(l) => alloc::vec![l.value()],
            Self::Gini(g) => alloc::vec![g.p, g.q],
            Self::GaussCompound(exps) => exps.as_slice().to_vec(),
        };
        out.retain(|l| l.is_finite() && *l != 0.0);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

impl fmt::Display for MeanDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power(l) => write!(f, "power:{l}"),
            Self::Gini(g) => write!(f, "gini:{},{}", g.p, g.q),
            Self::GaussCompound(exps) => {
                f.write_str("gauss:")?;
                for (i, l) in exps.as_slice().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                Ok(())
            }
        }
    }
}

/// Power mean of order `lambda`: min, max, geometric mean, or
/// `((1/n) sum a_i^lambda)^(1/lambda)`.
///
/// For finite nonzero `lambda` the sample is divided by its max (`lambda > 0`)
/// or min (`lambda < 0`) first, so every term lies in `(0, 1]`.
pub fn power_mean(s: &Sample<'_>, lambda: PowerExponent) -> f64 {
    let l = lambda.value();
    if s.is_constant() {
        return s.min();
    }
    if l == f64::NEG_INFINITY {
        return s.min();
    }
    if l == f64::INFINITY {
        return s.max();
    }
    let n = s.len() as f64;
    if l == 0.0 {
        let pivot = s.max();
        let logs: CompensatedSum = s.entries().iter().map(|&a| ln_ratio(a, pivot)).collect();
        return s.clamp(pivot * exp(logs.value() / n));
    }
    let pivot = if l > 0.0 { s.max() } else { s.min() };
    let terms: CompensatedSum = s
        .entries()
        .iter()
        .map(|&a| pow_fast(a / pivot, l))
        .collect();
    s.clamp(pivot * powf(terms.value() / n, 1.0 / l))
}

/// Natural log of `sum (a_i / scale)^p`, stable for any sign of `p`.
pub(crate) fn ln_power_sum(entries: &[f64], p: f64, scale: f64, lo: f64, hi: f64) -> f64 {
    if p == 0.0 {
        return ln(entries.len() as f64);
    }
    let pivot = if p > 0.0 { hi } else { lo };
    let terms: CompensatedSum = entries.iter().map(|&a| pow_fast(a / pivot, p)).collect();
    ln(terms.value()) + p * ln_ratio(pivot, scale)
}

/// Gini mean `(sum a_i^p / sum a_i^q)^(1/(p - q))`.
///
/// Both power sums are taken in the log domain after dividing the sample by
/// its max, so neither sum can overflow.
pub fn gini_mean(s: &Sample<'_>, g: GiniParams) -> f64 {
    if s.is_constant() {
        return s.min();
    }
    let scale = s.max();
    let (lo, hi) = (s.min(), s.max());
    let lp = ln_power_sum(s.entries(), g.p, scale, lo, hi);
    let lq = ln_power_sum(s.entries(), g.q, scale, lo, hi);
    s.clamp(scale * exp((lp - lq) / (g.p - g.q)))
}

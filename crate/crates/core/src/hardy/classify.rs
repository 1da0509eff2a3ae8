//! Closed-form Hardy criteria for the three mean families.
//!
//! * power mean `P_l`: Hardy iff `l < 1`;
//! * Gaussian product `P_{l_0} x ... x P_{l_p}`: Hardy iff `max l_i < 1`;
//! * Gini mean `G_{p,q}`: Hardy iff `min(p,q) <= 0` and `max(p,q) < 1`.

use core::fmt;

use crate::error::{Error, Result};
use crate::fmath::ceil;
use crate::means::{GiniParams, MeanDescriptor, PowerExponent};

/// Which criterion decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    PowerMean,
    GaussianProduct,
    Gini,
}

impl Criterion {
    pub fn tag(self) -> &'static str {
        match self {
            Self::PowerMean => "power-mean-criterion",
            Self::GaussianProduct => "gaussian-product-criterion",
            Self::Gini => "gini-criterion",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The clause of the criterion that holds or fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictReason {
    ExponentBelowOne,
    ExponentAtLeastOne,
    MaxExponentBelowOne,
    MaxExponentAtLeastOne,
    GiniRegion,
    GiniMaxAtLeastOne,
    GiniMinPositive,
    GiniBothClausesFail,
}

impl VerdictReason {
    pub fn clause(self) -> &'static str {
        match self {
            Self::ExponentBelowOne => "lambda < 1",
            Self::ExponentAtLeastOne => "lambda >= 1",
            Self::MaxExponentBelowOne => "max lambda < 1",
            Self::MaxExponentAtLeastOne => "max lambda >= 1",
            Self::GiniRegion => "min(p,q) <= 0 and max(p,q) < 1",
            Self::GiniMaxAtLeastOne => "max(p,q) >= 1",
            Self::GiniMinPositive => "min(p,q) > 0",
            Self::GiniBothClausesFail => "min(p,q) > 0 and max(p,q) >= 1",
        }
    }
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.clause())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HardyVerdict {
    pub is_hardy: bool,
    pub reason: VerdictReason,
    pub source: Criterion,
}

pub fn classify_power(lambda: PowerExponent) -> HardyVerdict {
    let is_hardy = lambda.value() < 1.0;
    HardyVerdict {
        is_hardy,
        reason: if is_hardy {
            VerdictReason::ExponentBelowOne
        } else {
            VerdictReason::ExponentAtLeastOne
        },
        source: Criterion::PowerMean,
    }
}

pub fn classify_gauss(exps: &[f64]) -> Result<HardyVerdict> {
    if exps.is_empty() {
        return Err(Error::domain("compound exponent list is empty"));
    }
    if exps.iter().any(|l| !l.is_finite()) {
        return Err(Error::domain("compound exponents must be finite"));
    }
    let max = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let is_hardy = max < 1.0;
    Ok(HardyVerdict {
        is_hardy,
        reason: if is_hardy {
            VerdictReason::MaxExponentBelowOne
        } else {
            VerdictReason::MaxExponentAtLeastOne
        },
        source: Criterion::GaussianProduct,
    })
}

pub fn classify_gini(p: f64, q: f64) -> Result<HardyVerdict> {
    GiniParams::new(p, q)?;
    let min_ok = p.min(q) <= 0.0;
    let max_ok = p.max(q) < 1.0;
    let reason = match (min_ok, max_ok) {
        (true, true) => VerdictReason::GiniRegion,
        (true, false) => VerdictReason::GiniMaxAtLeastOne,
        (false, true) => VerdictReason::GiniMinPositive,
        (false, false) => VerdictReason::GiniBothClausesFail,
    };
    Ok(HardyVerdict {
        is_hardy: min_ok && max_ok,
        reason,
        source: Criterion::Gini,
    })
}

pub fn classify(m: &MeanDescriptor) -> HardyVerdict {
    match m {
        MeanDescriptor::Power(l) => classify_power(*l),
        MeanDescriptor::Gini(g) => {
            classify_gini(g.p(), g.q()).expect("GiniParams are validated on construction")
        }
        MeanDescriptor::GaussCompound(exps) => classify_gauss(exps.as_slice())
            .expect("CompoundExponents are validated on construction"),
    }
}

/// The minorant `G_{1,-k}` of a non-Hardy Gini mean, with the smallest
/// `k >= 1` such that `-k <= min(p, q)`.
///
/// Gini means are symmetric in `(p, q)` and nondecreasing in each, so
/// `G_{p,q} >= G_{1,-k}` pointwise whenever `max(p, q) >= 1`.
pub fn reduce_gini(p: f64, q: f64) -> Result<GiniParams> {
    GiniParams::new(p, q)?;
    if p.max(q) < 1.0 {
        return Err(Error::domain(
            "Gini reduction needs max(p,q) >= 1; the mean is Hardy otherwise or not covered",
        ));
    }
    let k = ceil(-p.min(q)).max(1.0);
    GiniParams::new(1.0, -k)
}

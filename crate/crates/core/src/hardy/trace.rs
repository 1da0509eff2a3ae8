use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{ln, powf};
use crate::gauss::{f_value, CompoundSettings, ProofParams};
use crate::hardy::classify::reduce_gini;
use crate::hardy::sequence::{Sequence, Stride};
use crate::means::MeanDescriptor;
use crate::prefix::PrefixEvaluator;

/// One sampled point of a ratio trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub n: u64,
    /// `a_n`.
    pub term: f64,
    /// `A(a_1, ..., a_n)`.
    pub mean: f64,
    /// `A(a_1, ..., a_n) / a_n`.
    pub ratio: f64,
}

/// Sampled values of `r_n = A(a_1..a_n) / a_n`. Unbounded growth of `r_n`
/// along a divergent sequence with `a_n -> 0` rules out the Hardy property.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RatioTrace {
    pub records: Vec<TraceRecord>,
}

impl RatioTrace {
    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }
}

/// Streams trace records, pushing every term into a [`PrefixEvaluator`]
/// and evaluating the mean only at sampled indices.
pub struct TraceIter<'a> {
    mean: &'a MeanDescriptor,
    sequence: &'a Sequence,
    cfg: CompoundSettings,
    stride: Stride,
    evaluator: PrefixEvaluator,
    last: u64,
    next_sample: u64,
    failed: bool,
}

impl<'a> TraceIter<'a> {
    pub fn new(
        mean: &'a MeanDescriptor,
        sequence: &'a Sequence,
        last: u64,
        stride: Stride,
        cfg: CompoundSettings,
    ) -> Result<Self> {
        if last == 0 {
            return Err(Error::domain("trace length must be at least 1"));
        }
        if let Some(len) = sequence.len() {
            if len < last {
                return Err(Error::SequenceExhausted {
                    requested: last,
                    available: len,
                });
            }
        }
        Ok(Self {
            mean,
            sequence,
            cfg,
            stride: stride.validate()?,
            evaluator: PrefixEvaluator::for_mean(mean),
            last,
            next_sample: 1,
            failed: false,
        })
    }

    fn advance(&mut self) -> Result<TraceRecord> {
        let target = self.next_sample.min(self.last);
        let mut term = 0.0;
        while self.evaluator.count() < target {
            term = self.sequence.term(self.evaluator.count() + 1)?;
            self.evaluator.push(term)?;
        }
        let mean = self.evaluator.value_with(self.mean, &self.cfg)?;
        self.next_sample = self.stride.next_after(target);
        Ok(TraceRecord {
            n: target,
            term,
            mean,
            ratio: mean / term,
        })
    }
}

impl Iterator for TraceIter<'_> {
    type Item = Result<TraceRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.evaluator.count() >= self.last {
            return None;
        }
        let out = self.advance();
        self.failed = out.is_err();
        Some(out)
    }
}

/// Collects the ratio trace of `mean` along `sequence` up to index `last`.
/// The final index is always recorded.
pub fn ratio_trace(
    mean: &MeanDescriptor,
    sequence: &Sequence,
    last: u64,
    stride: Stride,
    cfg: &CompoundSettings,
) -> Result<RatioTrace> {
    let records = TraceIter::new(mean, sequence, last, stride, *cfg)?.collect::<Result<_>>()?;
    Ok(RatioTrace { records })
}

/// `(ln n)^(1/(k+1))`, the lower bound on `r_n` for `G_{1,-k}` along the
/// harmonic sequence. Zero at `n = 1`.
pub fn gini_ratio_lower_bound(k: u32, n: u64) -> Result<f64> {
    if k == 0 || n == 0 {
        return Err(Error::domain("need k >= 1 and n >= 1"));
    }
    Ok(powf(ln(n as f64), 1.0 / (f64::from(k) + 1.0)))
}

/// `(ln n)^(e/(lambda+e)) / (theta (p+1))`, the lower bound on `r_n` for
/// `P_1 x P_{-lambda} x ... x P_{-lambda}` along the harmonic sequence.
pub fn gauss_ratio_lower_bound(pp: &ProofParams, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("the compound growth bound needs n >= 2"));
    }
    Ok(pp.coefficient() * powf(ln(n as f64), pp.growth_exponent()))
}

/// A closed-form lower bound on the harmonic ratio trace of a non-Hardy mean,
/// obtained from a minorant in the same family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HarmonicBound {
    /// `P_l >= P_1`, and `r_n(P_1) = H_n >= ln n`.
    Power,
    /// `G_{p,q} >= G_{1,-k}`.
    Gini { k: u32 },
    /// Compound minorant `P_1 x P_{-lambda}^p` at a fixed `theta`.
    Gauss(ProofParams),
}

impl HarmonicBound {
    /// Splitting ratio used for compound bounds.
    pub const DEFAULT_THETA: f64 = 1.5;

    /// The bound available for `mean`, if it is not Hardy.
    ///
    /// Compounds are bounded through `P_1 x P_{-lambda}^p`, where `p + 1` is
    /// the number of exponents and `-lambda` is at most every exponent but
    /// the largest (`lambda = 1` when those are all nonnegative).
    pub fn for_mean(mean: &MeanDescriptor) -> Option<Self> {
        match mean {
            MeanDescriptor::Power(l) if l.value() >= 1.0 => Some(Self::Power),
            MeanDescriptor::Gini(g) => reduce_gini(g.p(), g.q())
                .ok()
                .map(|r| Self::Gini { k: (-r.q()) as u32 }),
            MeanDescriptor::GaussCompound(exps) if exps.max() >= 1.0 && exps.len() >= 2 => {
                let mut sorted = exps.as_slice().to_vec();
                sorted.sort_by(f64::total_cmp);
                let lowest = sorted[0];
                let lambda = if lowest < 0.0 { -lowest } else { 1.0 };
                ProofParams::new((exps.len() - 1) as u32, lambda, Self::DEFAULT_THETA)
                    .ok()
                    .map(Self::Gauss)
            }
            _ => None,
        }
    }

    pub fn at(&self, n: u64) -> f64 {
        match self {
            Self::Power => ln(n as f64),
            Self::Gini { k } => gini_ratio_lower_bound(*k, n).unwrap_or(0.0),
            Self::Gauss(pp) => gauss_ratio_lower_bound(pp, n).unwrap_or(0.0),
        }
    }
}

/// The three quantities of the compound growth chain at one `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainLedger {
    pub n: u64,
    /// `n * A(1, 1/2, ..., 1/n)`.
    pub ratio: f64,
    /// `F(ln n, 1)`.
    pub f_at_log: f64,
    /// `(ln n)^(e/(lambda+e)) / (theta (p+1))`.
    pub bound: f64,
    /// `P_1(1, ..., 1/n) >= ln n / n`.
    pub arithmetic_ok: bool,
    /// `P_{-lambda}(1, ..., 1/n) >= 1/n`.
    pub harmonic_ok: bool,
    /// `ratio >= f_at_log * (1 - tol)`.
    pub ratio_ge_f: bool,
    /// `f_at_log >= bound * (1 - tol)`.
    pub f_ge_bound: bool,
}

impl ChainLedger {
    pub fn holds(&self) -> bool {
        self.arithmetic_ok && self.harmonic_ok && self.ratio_ge_f && self.f_ge_bound
    }
}

/// Evaluates `n * A(1, ..., 1/n) >= F(ln n, 1) >= bound` for the compound
/// `A = P_1 x P_{-lambda}^p`, with the prefix mean computed by streaming.
pub fn chain_check(pp: &ProofParams, n: u64, cfg: &CompoundSettings) -> Result<ChainLedger> {
    if n < 3 {
        return Err(Error::domain("chain check needs n >= 3 so that ln n > 1"));
    }
    let mean = MeanDescriptor::GaussCompound(pp.exponents());
    let mut ev = PrefixEvaluator::for_mean(&mean);
    for i in 1..=n {
        ev.push(1.0 / i as f64)?;
    }
    let nf = n as f64;
    let ratio = nf * ev.value_with(&mean, cfg)?;
    let f_at_log = f_value(ln(nf), 1.0, pp, cfg)?;
    let bound = gauss_ratio_lower_bound(pp, n)?;
    let slack = 1.0 - cfg.rel_tolerance;
    Ok(ChainLedger {
        n,
        ratio,
        f_at_log,
        bound,
        arithmetic_ok: ev.power_mean(1.0)? >= ln(nf) / nf,
        harmonic_ok: ev.power_mean(-pp.lambda())? >= 1.0 / nf,
        ratio_ge_f: ratio >= f_at_log * slack,
        f_ge_bound: f_at_log >= bound * slack,
    })
}

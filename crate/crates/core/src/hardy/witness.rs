//! Explicit refutation of a candidate Hardy constant `C`.
//!
//! Given a divergent positive sequence with `a_n -> 0` whose ratio
//! `r_n = A(a_1..a_n) / a_n` eventually exceeds `2C`, pick `n0` with
//! `r_n > 2C` for `n > n0`, then `n1 > n0` with
//! `sum_{n0 < i < n1} a_i > sum_{i <= n0} a_i`. The spliced sequence
//! `b_n = a_n (n <= n1)`, `b_n = a_{n1} 2^-n (n > n1)` is summable and
//! `sum_{n0 < n <= n1} A(b_1..b_n) > C sum_n b_n`, so `C` is not a Hardy
//! constant for `A`.

use crate::error::{Error, Result};
use crate::fmath::{exp2, log2};
use crate::gauss::CompoundSettings;
use crate::hardy::sequence::Sequence;
use crate::means::MeanDescriptor;
use crate::prefix::PrefixEvaluator;
use crate::sum::CompensatedSum;

/// Partial sums recorded while the witness was found.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WitnessLedger {
    /// `sum_{i <= n0} a_i`.
    pub head_sum: f64,
    /// `sum_{n0 < i < n1} a_i`.
    pub middle_sum: f64,
    /// `a_{n1}`.
    pub a_n1: f64,
    /// `log2` of the tail bound `sum_{n > n1} b_n <= a_{n1} 2^-n1`.
    pub tail_log2: f64,
    /// Smallest `r_n` over `n0 < n <= n1`.
    pub min_ratio: f64,
    /// True when the divergence of the sequence was taken on trust.
    pub divergence_assumed: bool,
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub c: f64,
    pub n0: u64,
    pub n1: u64,
    pub sequence: Sequence,
    pub ledger: WitnessLedger,
}

impl Witness {
    /// A witness with an empty ledger; [`verify_witness`] recomputes
    /// everything it needs.
    pub fn unchecked(c: f64, n0: u64, n1: u64, sequence: Sequence) -> Self {
        Self {
            c,
            n0,
            n1,
            sequence,
            ledger: WitnessLedger::default(),
        }
    }

    /// `b_n` of the spliced sequence; underflows to zero far into the tail.
    pub fn spliced_term(&self, n: u64) -> Result<f64> {
        Ok(exp2(self.spliced_term_log2(n)?))
    }

    pub fn spliced_term_log2(&self, n: u64) -> Result<f64> {
        if n <= self.n1 {
            Ok(log2(self.sequence.term(n)?))
        } else {
            Ok(log2(self.sequence.term(self.n1)?) - n as f64)
        }
    }
}

/// Scans `n = 1..=cap` for the first `n0` after which `r_n > 2C` holds at every
/// index, and the first `n1` completing the sum condition.
///
/// Every index is evaluated, so `n0` and the ratio condition on `(n0, n1]` are
/// exact rather than sampled. A not-found error means `C` is too large for the
/// cap, not that the mean is Hardy.
pub fn build_witness(
    mean: &MeanDescriptor,
    sequence: &Sequence,
    c: f64,
    cap: u64,
    cfg: &CompoundSettings,
) -> Result<Witness> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::domain(
            "candidate constant C must be positive and finite",
        ));
    }
    let threshold = 2.0 * c;
    let last = sequence.len().map_or(cap, |len| len.min(cap));
    let mut ev = PrefixEvaluator::for_mean(mean);
    let mut prefix = CompensatedSum::new();
    let mut n0: Option<(u64, f64)> = None;
    let mut min_ratio = f64::INFINITY;
    let (mut best, mut best_at) = (f64::NEG_INFINITY, 0u64);

    for n in 1..=last {
        let a = sequence.term(n)?;
        ev.push(a)?;
        let ratio = ev.value_with(mean, cfg)? / a;
        if ratio > best {
            (best, best_at) = (ratio, n);
        }
        let before = prefix.value();
        prefix.add(a);
        if ratio <= threshold {
            n0 = None;
            continue;
        }
        let Some((start, head)) = n0 else {
            n0 = Some((n, prefix.value()));
            min_ratio = f64::INFINITY;
            continue;
        };
        min_ratio = min_ratio.min(ratio);
        let middle = before - head;
        if middle > head {
            return Ok(Witness {
                c,
                n0: start,
                n1: n,
                sequence: sequence.clone(),
                ledger: WitnessLedger {
                    head_sum: head,
                    middle_sum: middle,
                    a_n1: a,
                    tail_log2: log2(a) - n as f64,
                    min_ratio,
                    divergence_assumed: !sequence.divergence_known(),
                },
            });
        }
    }
    Err(Error::WitnessNotFound {
        cap: last,
        largest_ratio: best,
        largest_ratio_at: best_at,
        n0: n0.map(|(n, _)| n),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessCheck {
    /// `sum_{n0 < n <= n1} A(b_1, ..., b_n)`.
    pub lhs: f64,
    /// `C (sum_{n <= n1} b_n + a_{n1} 2^-n1)`.
    pub rhs: f64,
    pub refuted: bool,
}

/// Recomputes a witness from scratch and evaluates both sides of the
/// refuting inequality. The geometric tail enters only through its closed
/// form, never term by term.
pub fn verify_witness(
    w: &Witness,
    mean: &MeanDescriptor,
    cfg: &CompoundSettings,
) -> Result<WitnessCheck> {
    if !(w.c > 0.0 && w.c.is_finite()) {
        return Err(Error::InvalidWitness(
            "C must be positive and finite".into(),
        ));
    }
    if w.n0 == 0 || w.n1 <= w.n0 {
        return Err(Error::InvalidWitness("need 1 <= n0 < n1".into()));
    }
    let threshold = 2.0 * w.c;
    let mut ev = PrefixEvaluator::for_mean(mean);
    let mut prefix = CompensatedSum::new();
    let mut lhs = CompensatedSum::new();
    let mut head = 0.0;
    let mut before_n1 = 0.0;
    let mut a_n1 = 0.0;
    for n in 1..=w.n1 {
        let a = w.sequence.term(n)?;
        ev.push(a)?;
        if n == w.n1 {
            before_n1 = prefix.value();
            a_n1 = a;
        }
        prefix.add(a);
        if n == w.n0 {
            head = prefix.value();
        }
        if n > w.n0 {
            let mean_value = ev.value_with(mean, cfg)?;
            if mean_value / a <= threshold {
                return Err(Error::InvalidWitness(alloc::format!(
                    "ratio at n = {n} is {}, not above 2C = {threshold}",
                    mean_value / a
                )));
            }
            lhs.add(mean_value);
        }
    }
    let middle = before_n1 - head;
    if middle <= head {
        return Err(Error::InvalidWitness(alloc::format!(
            "sum over (n0, n1) is {middle}, not above the head sum {head}"
        )));
    }
    let tail = exp2(log2(a_n1) - w.n1 as f64);
    let lhs = lhs.value();
    let rhs = w.c * (prefix.value() + tail);
    Ok(WitnessCheck {
        lhs,
        rhs,
        refuted: lhs > rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CompoundSettings {
        CompoundSettings::default()
    }

    #[test]
    fn small_constant_gives_immediate_witness() {
        let m = MeanDescriptor::gini(1.0, -1.0).unwrap();
        let w = build_witness(&m, &Sequence::Harmonic, 0.1, 1000, &cfg()).unwrap();
        assert_eq!(w.n0, 1);
        assert_eq!(w.n1, 5);
        assert!(!w.ledger.divergence_assumed);
        let check = verify_witness(&w, &m, &cfg()).unwrap();
        assert!(check.refuted, "{check:?}");
    }

    #[test]
    fn arithmetic_mean_witness() {
        let m = MeanDescriptor::power(1.0).unwrap();
        let w = build_witness(&m, &Sequence::Harmonic, 1.5, 100_000, &cfg()).unwrap();
        let check = verify_witness(&w, &m, &cfg()).unwrap();
        assert!(check.refuted);
        assert!(w.ledger.middle_sum > w.ledger.head_sum);
        assert!(w.ledger.min_ratio > 3.0);
    }

    #[test]
    fn degenerate_witness_is_rejected() {
        let m = MeanDescriptor::gini(1.0, -1.0).unwrap();
        let w = Witness::unchecked(0.1, 5, 6, Sequence::Harmonic);
        assert!(matches!(
            verify_witness(&w, &m, &cfg()),
            Err(Error::InvalidWitness(_))
        ));
        let w = Witness::unchecked(0.1, 5, 5, Sequence::Harmonic);
        assert!(verify_witness(&w, &m, &cfg()).is_err());
    }

    #[test]
    fn ratio_condition_is_rechecked() {
        let m = MeanDescriptor::gini(1.0, -1.0).unwrap();
        // r_n stays below 4 for small n, so C = 2 cannot start at n0 = 1.
        let w = Witness::unchecked(2.0, 1, 10, Sequence::Harmonic);
        assert!(matches!(
            verify_witness(&w, &m, &cfg()),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn hardy_mean_reports_not_found() {
        let m = MeanDescriptor::power(0.0).unwrap();
        match build_witness(&m, &Sequence::Harmonic, 2.0, 20_000, &cfg()) {
            Err(Error::WitnessNotFound {
                largest_ratio, cap, ..
            }) => {
                assert_eq!(cap, 20_000);
                assert!(largest_ratio < 4.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spliced_tail_halves() {
        let w = Witness::unchecked(1.0, 2, 4, Sequence::Harmonic);
        assert_eq!(w.spliced_term(3).unwrap(), 1.0 / 3.0);
        assert_eq!(w.spliced_term(5).unwrap(), 0.25 / 32.0);
        assert_eq!(w.spliced_term(6).unwrap(), 0.25 / 64.0);
        assert_eq!(w.spliced_term(5000).unwrap(), 0.0);
        assert!(w.spliced_term_log2(5000).unwrap() < -4000.0);
    }
}

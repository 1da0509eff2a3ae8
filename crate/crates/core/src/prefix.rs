//! Streaming evaluation of prefix means `A(a_1, ..., a_n)` in O(1) per term.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{exp, ln, pow_fast, powf};
use crate::gauss::{self, CompoundSettings};
use crate::means::MeanDescriptor;
use crate::sum::CompensatedSum;

// A scaled power sum is rebased once a single term would exceed this.
const REBASE_THRESHOLD: f64 = 1e150;

/// Running `sum a_i^lambda`, stored as `pivot^lambda * scaled`.
#[derive(Debug, Clone)]
struct PowerSum {
    exponent: f64,
    pivot: f64,
    scaled: CompensatedSum,
}

impl PowerSum {
    fn push(&mut self, a: f64) {
        if self.pivot == 0.0 {
            self.pivot = a;
        }
        let term = pow_fast(a / self.pivot, self.exponent);
        if term > REBASE_THRESHOLD {
            self.scaled.scale(1.0 / term);
            self.pivot = a;
            self.scaled.add(1.0);
        } else {
            self.scaled.add(term);
        }
    }

    fn ln_sum(&self) -> f64 {
        ln(self.scaled.value()) + self.exponent * ln(self.pivot)
    }

    fn mean_value(&self, n: f64) -> f64 {
        self.pivot * powf(self.scaled.value() / n, 1.0 / self.exponent)
    }
}

/// Running statistics of a positive stream: count, min, max, log-sum and a
/// configurable set of power sums.
///
/// Any [`MeanDescriptor`] whose exponents are tracked can be evaluated on the
/// current prefix without revisiting earlier terms; Gaussian compounds are
/// reduced to their power-mean image first.
#[derive(Debug, Clone)]
pub struct PrefixEvaluator {
    count: u64,
    sums: Vec<PowerSum>,
    log_pivot: f64,
    log_sum: CompensatedSum,
    min: f64,
    max: f64,
}

impl PrefixEvaluator {
    /// Tracks `sum a^l` for every finite nonzero `l` in `exponents`; zero and
    /// infinite exponents need no power sum and are skipped.
    pub fn new(exponents: &[f64]) -> Result<Self> {
        let mut sums: Vec<PowerSum> = Vec::new();
        for &l in exponents {
            if l.is_nan() {
                return Err(Error::domain("tracked exponent is NaN"));
            }
            if !l.is_finite() || l == 0.0 || sums.iter().any(|s| s.exponent == l) {
                continue;
            }
            sums.push(PowerSum {
                exponent: l,
                pivot: 0.0,
                scaled: CompensatedSum::new(),
            });
        }
        Ok(Self {
            count: 0,
            sums,
            log_pivot: 0.0,
            log_sum: CompensatedSum::new(),
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        })
    }

    /// An evaluator tracking exactly what `m` needs.
    pub fn for_mean(m: &MeanDescriptor) -> Self {
        Self::new(&m.required_power_sums()).expect("descriptor exponents are never NaN")
    }

    pub fn push(&mut self, a: f64) -> Result<()> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::domain(alloc::format!(
                "term {} is {a}, expected a finite positive real",
                self.count + 1
            )));
        }
        if self.count == 0 {
            self.log_pivot = ln(a);
        }
        self.count += 1;
        self.min = self.min.min(a);
        self.max = self.max.max(a);
        self.log_sum.add(ln(a) - self.log_pivot);
        for s in &mut self.sums {
            s.push(a);
        }
        Ok(())
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Smallest term so far (`+inf` before any push).
    pub fn min(&self) -> f64 {
        self.min
    }

    /// Largest term so far (`-inf` before any push).
    pub fn max(&self) -> f64 {
        self.max
    }

    /// `sum ln a_i`.
    pub fn log_sum(&self) -> f64 {
        self.log_sum.value() + self.count as f64 * self.log_pivot
    }

    pub fn tracks(&self, lambda: f64) -> bool {
        self.sum_for(lambda).is_some()
    }

    /// `sum a_i^lambda`; may overflow to infinity even though means stay finite.
    pub fn power_sum(&self, lambda: f64) -> Option<f64> {
        self.sum_for(lambda)
            .map(|s| s.scaled.value() * powf(s.pivot, s.exponent))
    }

    fn sum_for(&self, lambda: f64) -> Option<&PowerSum> {
        self.sums.iter().find(|s| s.exponent == lambda)
    }

    fn ensure_nonempty(&self) -> Result<()> {
        if self.count == 0 {
            Err(Error::domain("prefix evaluator is empty"))
        } else {
            Ok(())
        }
    }

    /// Power mean of order `lambda` over the prefix.
    pub fn power_mean(&self, lambda: f64) -> Result<f64> {
        self.ensure_nonempty()?;
        if self.min == self.max {
            return Ok(self.min);
        }
        let n = self.count as f64;
        let v = if lambda == f64::NEG_INFINITY {
            self.min
        } else if lambda == f64::INFINITY {
            self.max
        } else if lambda == 0.0 {
            exp(self.log_pivot + self.log_sum.value() / n)
        } else {
            self.sum_for(lambda)
                .ok_or(Error::UntrackedExponent(lambda))?
                .mean_value(n)
        };
        Ok(v.clamp(self.min, self.max))
    }

    fn ln_power_sum(&self, lambda: f64) -> Result<f64> {
        if lambda == 0.0 {
            return Ok(ln(self.count as f64));
        }
        self.sum_for(lambda)
            .map(PowerSum::ln_sum)
            .ok_or(Error::UntrackedExponent(lambda))
    }

    /// Value of `m` on the current prefix, with default compound settings.
    pub fn value(&self, m: &MeanDescriptor) -> Result<f64> {
        self.value_with(m, &CompoundSettings::default())
    }

    pub fn value_with(&self, m: &MeanDescriptor, cfg: &CompoundSettings) -> Result<f64> {
        self.ensure_nonempty()?;
        match m {
            MeanDescriptor::Power(l) => self.power_mean(l.value()),
            MeanDescriptor::Gini(g) => {
                let lp = self.ln_power_sum(g.p())?;
                let lq = self.ln_power_sum(g.q())?;
                if self.min == self.max {
                    return Ok(self.min);
                }
                Ok(exp((lp - lq) / (g.p() - g.q())).clamp(self.min, self.max))
            }
            MeanDescriptor::GaussCompound(exps) => {
                let image = exps
                    .as_slice()
                    .iter()
                    .map(|&l| self.power_mean(l))
                    .collect::<Result<Vec<f64>>>()?;
                gauss::compound_iterate(&image, exps.as_slice(), cfg).map(|o| o.value)
            }
        }
    }
}

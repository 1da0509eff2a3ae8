//! Gaussian products of power means.
//!
//! Given exponents `l_1..l_k` and a positive vector `v`, the map
//! `v -> (P_{l_1}(v), ..., P_{l_k}(v))` is iterated until all components
//! agree; the common limit is the compound mean `P_{l_1} x ... x P_{l_k}`.
//! With exponents `(1, 0)` this is the arithmetic-geometric mean.
//!
//! The second half of the module holds the two-variable functions used to
//! show that `P_1 x P_{-l} x ... x P_{-l}` (p copies of `P_{-l}`) grows faster
//! than any constant multiple of `a_n` along the harmonic sequence:
//! [`f_value`], the contraction [`tau`] and its invariant [`g_value`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{exp, ln, powf};
use crate::means::{power_mean, CompoundExponents, PowerExponent, Sample};

/// Stopping rule of the compound iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompoundSettings {
    /// Stop once `(max - min) / min` of the iterate drops below this.
    pub rel_tolerance: f64,
    pub max_iterations: u32,
}

impl Default for CompoundSettings {
    fn default() -> Self {
        Self {
            rel_tolerance: 1e-12,
            max_iterations: 200,
        }
    }
}

impl CompoundSettings {
    pub fn new(rel_tolerance: f64, max_iterations: u32) -> Result<Self> {
        if !(rel_tolerance > 0.0 && rel_tolerance.is_finite()) {
            return Err(Error::domain(
                "relative tolerance must be positive and finite",
            ));
        }
        if max_iterations == 0 {
            return Err(Error::domain("max_iterations must be at least 1"));
        }
        Ok(Self {
            rel_tolerance,
            max_iterations,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompoundOutcome {
    /// Midpoint of the final iterate's `[min, max]`.
    pub value: f64,
    /// Number of applications of the power-mean map.
    pub iterations: u32,
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

fn check_exponents(exps: &[f64]) -> Result<Vec<PowerExponent>> {
    if exps.is_empty() {
        return Err(Error::domain("compound exponent list is empty"));
    }
    exps.iter()
        .map(|&l| {
            if l.is_finite() {
                PowerExponent::new(l)
            } else {
                Err(Error::domain(alloc::format!(
                    "compound exponents must be finite, got {l}"
                )))
            }
        })
        .collect()
}

fn apply_map(cur: &[f64], exps: &[PowerExponent], next: &mut Vec<f64>) -> Result<()> {
    let s = Sample::new(cur)?;
    next.clear();
    next.extend(exps.iter().map(|&l| power_mean(&s, l)));
    Ok(())
}

/// Spread at which a bracket that stopped shrinking is a rounding fixed point.
const ROUNDING_SPREAD: f64 = 256.0 * f64::EPSILON;

fn iterate_from(
    start: Vec<f64>,
    exps: &[PowerExponent],
    cfg: &CompoundSettings,
    already: u32,
) -> Result<CompoundOutcome> {
    let mut cur = start;
    let mut next = Vec::with_capacity(exps.len());
    let mut iterations = 0u32;
    let mut prev_spread = f64::INFINITY;
    loop {
        let (lo, hi) = min_max(&cur);
        let spread = (hi - lo) / lo;
        let stalled = spread >= prev_spread && spread <= ROUNDING_SPREAD;
        if hi == lo || spread < cfg.rel_tolerance || stalled {
            return Ok(CompoundOutcome {
                value: lo + (hi - lo) / 2.0,
                iterations: iterations + already,
            });
        }
        if iterations >= cfg.max_iterations {
            return Err(Error::Convergence {
                iterations: iterations + already,
                relative_spread: spread,
                last_iterate: cur,
            });
        }
        apply_map(&cur, exps, &mut next)?;
        core::mem::swap(&mut cur, &mut next);
        iterations += 1;
        prev_spread = spread;
    }
}

/// Iterates the power-mean map starting from `v` until the relative spread
/// of the iterate falls below `cfg.rel_tolerance`.
///
/// The iterate's max never increases and its min never decreases, so every
/// iterate brackets the limit.
pub fn compound_iterate(
    v: &[f64],
    exps: &[f64],
    cfg: &CompoundSettings,
) -> Result<CompoundOutcome> {
    Sample::new(v)?;
    let exps = check_exponents(exps)?;
    iterate_from(v.to_vec(), &exps, cfg, 0)
}

/// Compound mean of a sample of any length.
///
/// The first application of the map sends the n-vector `s` to the
/// `exps.len()`-vector of its power means; iteration continues there.
pub fn compound_mean(
    s: &Sample<'_>,
    exps: &CompoundExponents,
    cfg: &CompoundSettings,
) -> Result<f64> {
    compound_mean_outcome(s, exps, cfg).map(|o| o.value)
}

pub fn compound_mean_outcome(
    s: &Sample<'_>,
    exps: &CompoundExponents,
    cfg: &CompoundSettings,
) -> Result<CompoundOutcome> {
    if s.is_constant() {
        return Ok(CompoundOutcome {
            value: s.min(),
            iterations: 0,
        });
    }
    let exps = check_exponents(exps.as_slice())?;
    let image: Vec<f64> = exps.iter().map(|&l| power_mean(s, l)).collect();
    iterate_from(image, &exps, cfg, 1)
}

/// `(p, lambda, theta)` of the compound `P_1 x P_{-lambda} x ... x P_{-lambda}`
/// with `p` copies of `P_{-lambda}`; `theta > 1` is a free splitting ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofParams {
    p: u32,
    lambda: f64,
    theta: f64,
}

impl ProofParams {
    pub fn new(p: u32, lambda: f64, theta: f64) -> Result<Self> {
        if p < 1 {
            return Err(Error::domain("p must be at least 1"));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain("lambda must be positive and finite"));
        }
        if !(theta > 1.0 && theta.is_finite()) {
            return Err(Error::domain("theta must be finite and greater than 1"));
        }
        Ok(Self { p, lambda, theta })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(1, -lambda, ..., -lambda)`.
    pub fn exponents(&self) -> CompoundExponents {
        let mut v = vec![1.0];
        v.extend(core::iter::repeat_n(-self.lambda, self.p as usize));
        CompoundExponents::new(v).expect("finite nonempty by construction")
    }

    fn p1(&self) -> f64 {
        f64::from(self.p) + 1.0
    }

    /// `(p+1) / (theta^-lambda + p)`, always in `(1, (p+1)/p)`.
    fn contraction_ratio(&self) -> f64 {
        self.p1() / (exp(-self.lambda * ln(self.theta)) + f64::from(self.p))
    }

    /// Factor applied to the second coordinate by [`tau`].
    pub fn b_factor(&self) -> f64 {
        powf(self.contraction_ratio(), 1.0 / self.lambda)
    }

    /// `log_{p+1}((p+1) / (theta^-lambda + p))`.
    pub fn log_ratio(&self) -> f64 {
        ln(self.contraction_ratio()) / ln(self.p1())
    }

    /// Exponent `e / (lambda + e)` of the `ln n` growth bound, `e` = [`Self::log_ratio`].
    pub fn growth_exponent(&self) -> f64 {
        let e = self.log_ratio();
        e / (self.lambda + e)
    }

    /// `1 / (theta (p+1))`.
    pub fn coefficient(&self) -> f64 {
        1.0 / (self.theta * self.p1())
    }
}

/// `F(a, b) = A(a, b, ..., b)` with `b` repeated `p` times.
pub fn f_value(a: f64, b: f64, pp: &ProofParams, cfg: &CompoundSettings) -> Result<f64> {
    let mut v = vec![b; pp.p as usize + 1];
    v[0] = a;
    compound_mean(&Sample::new(&v)?, &pp.exponents(), cfg)
}

fn check_pair(a: f64, b: f64) -> Result<()> {
    if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("arguments must be finite and positive"))
    }
}

/// `tau(a, b) = (a / (p+1), ((p+1)/(theta^-lambda + p))^(1/lambda) * b)`.
pub fn tau(a: f64, b: f64, pp: &ProofParams) -> Result<(f64, f64)> {
    check_pair(a, b)?;
    Ok((a / pp.p1(), b * pp.b_factor()))
}

/// `G(a, b) = (a^e b^lambda)^(1/(lambda + e))`, a weighted geometric mean
/// left invariant by [`tau`].
pub fn g_value(a: f64, b: f64, pp: &ProofParams) -> Result<f64> {
    check_pair(a, b)?;
    Ok(b * powf(a / b, pp.growth_exponent()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FLowerBound {
    /// `F(a, b)`.
    pub lhs: f64,
    /// `G(a, b) / (theta (p+1))`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `F(a, b) > G(a, b) / (theta (p+1))` for `a > b`.
pub fn check_f_lower_bound(
    a: f64,
    b: f64,
    pp: &ProofParams,
    cfg: &CompoundSettings,
) -> Result<FLowerBound> {
    check_pair(a, b)?;
    if a <= b {
        return Err(Error::domain("lower-bound check needs a > b"));
    }
    let lhs = f_value(a, b, pp, cfg)?;
    let rhs = g_value(a, b, pp)? * pp.coefficient();
    Ok(FLowerBound {
        lhs,
        rhs,
        holds: lhs > rhs,
    })
}

/// Whether `F(tau(a, b)) <= F(a, b)` for `a > theta * b`, allowing a relative
/// slack of `cfg.rel_tolerance` for the two compound evaluations.
pub fn f_tau_monotone(a: f64, b: f64, pp: &ProofParams, cfg: &CompoundSettings) -> Result<bool> {
    check_pair(a, b)?;
    if a <= pp.theta * b {
        return Err(Error::domain("monotonicity under tau needs a > theta * b"));
    }
    let (ta, tb) = tau(a, b, pp)?;
    let before = f_value(a, b, pp, cfg)?;
    let after = f_value(ta, tb, pp, cfg)?;
    Ok(after <= before * (1.0 + cfg.rel_tolerance))
}

/// End point of the `tau` orbit started at `(a, b)`, tracked in logs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauDescent {
    /// Smallest `N` with `a_N <= theta * b_N`.
    pub steps: u64,
    pub ln_a: f64,
    pub ln_b: f64,
}

impl TauDescent {
    /// `a_N > b_N / (p+1)`: the orbit stops before overshooting.
    pub fn lands_in_band(&self, pp: &ProofParams) -> bool {
        self.ln_a > self.ln_b - ln(pp.p1())
    }

    /// `ln G(a_N, b_N)`; equals `ln G(a, b)` since `G` is `tau`-invariant.
    pub fn ln_g(&self, pp: &ProofParams) -> f64 {
        let w = pp.growth_exponent();
        w * self.ln_a + (1.0 - w) * self.ln_b
    }
}

/// Applies `tau` until the first coordinate no longer exceeds `theta` times
/// the second. Works in the log domain, so arbitrarily deep orbits are fine.
pub fn tau_descent(a: f64, b: f64, pp: &ProofParams) -> Result<TauDescent> {
    check_pair(a, b)?;
    let (mut ln_a, mut ln_b) = (ln(a), ln(b));
    let step_a = ln(pp.p1());
    let step_b = ln(pp.b_factor());
    let ln_theta = ln(pp.theta);
    let mut steps = 0u64;
    while ln_a > ln_theta + ln_b {
        ln_a -= step_a;
        ln_b += step_b;
        steps += 1;
    }
    Ok(TauDescent { steps, ln_a, ln_b })
}

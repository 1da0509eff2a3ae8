//! Extended-precision constants of the compound growth bound
//! `r_n >= (ln n)^w / (theta (p+1))` for `P_1 x P_{-lambda}^p` along `1/n`.
//!
//! The exponent `w` is tiny for typical parameters (about `0.0341` at
//! `p = 3, lambda = 5, theta = 3/2`), so the bound only passes a target value
//! at astronomically large `n`. That `n` is reported through `log10 n` and
//! never materialised.

mod hp;

pub use hp::{Decimal, HpReal, Precision};

use crate::error::{Error, Result};
use crate::gauss::ProofParams;

/// Proof parameters held exactly: `p >= 1`, `lambda > 0`, `theta > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HpProofParams {
    pub p: u32,
    pub lambda: HpReal,
    pub theta: HpReal,
    pub precision: Precision,
}

impl HpProofParams {
    pub fn new(p: u32, lambda: HpReal, theta: HpReal, precision: Precision) -> Result<Self> {
        if p < 1 {
            return Err(Error::domain("p must be at least 1"));
        }
        if !lambda.is_positive() {
            return Err(Error::domain("lambda must be positive"));
        }
        if theta <= HpReal::from_int(1, precision) {
            return Err(Error::domain("theta must be greater than 1"));
        }
        Ok(Self {
            p,
            lambda,
            theta,
            precision,
        })
    }

    /// Parses decimal or `a/b` strings exactly.
    pub fn parse(p: u32, lambda: &str, theta: &str, precision: Precision) -> Result<Self> {
        Self::new(
            p,
            HpReal::parse(lambda, precision)?,
            HpReal::parse(theta, precision)?,
            precision,
        )
    }

    /// Lifts binary64 parameters exactly.
    pub fn from_params(pp: &ProofParams, precision: Precision) -> Result<Self> {
        Self::new(
            pp.p(),
            HpReal::from_f64(pp.lambda(), precision)?,
            HpReal::from_f64(pp.theta(), precision)?,
            precision,
        )
    }

    fn p1(&self) -> HpReal {
        HpReal::from_int(i64::from(self.p) + 1, self.precision)
    }
}

/// `e / (lambda + e)` with `e = log_{p+1}((p+1) / (theta^-lambda + p))`.
pub fn growth_exponent(pp: &HpProofParams) -> Result<HpReal> {
    let p1 = pp.p1();
    let theta_pow = pp.theta.pow(&pp.lambda.neg())?;
    let ratio = p1.div(&theta_pow.add(&HpReal::from_int(i64::from(pp.p), pp.precision)))?;
    let e = ratio.ln()?.div(&p1.ln()?)?;
    e.div(&pp.lambda.add(&e))
}

/// `1 / (theta (p+1))`.
pub fn coefficient(pp: &HpProofParams) -> Result<HpReal> {
    HpReal::from_int(1, pp.precision).div(&pp.theta.mul(&pp.p1()))
}

/// `log10 n*` where `(ln n*)^w / (theta (p+1)) = target`, i.e.
/// `ln n* = (target theta (p+1))^(1/w)`.
pub fn crossing_threshold_log10(pp: &HpProofParams, target: &HpReal) -> Result<HpReal> {
    if !target.is_positive() {
        return Err(Error::domain("target must be positive"));
    }
    let w = growth_exponent(pp)?;
    let ln_n = target.div(&coefficient(pp)?)?.ln()?.div(&w)?.exp();
    ln_n.div(&HpReal::ln10(pp.precision))
}

/// The bound `(ln n)^w / (theta (p+1))` evaluated at `n = 10^log10_n`.
pub fn bound_at_log10(pp: &HpProofParams, log10_n: &HpReal) -> Result<HpReal> {
    let ln_n = log10_n.mul(&HpReal::ln10(pp.precision));
    let w = growth_exponent(pp)?;
    Ok(coefficient(pp)?.mul(&ln_n.pow(&w)?))
}

#[derive(Debug, Clone)]
pub struct RemarkReport {
    pub params: HpProofParams,
    pub target: HpReal,
    pub growth_exponent: HpReal,
    pub coefficient: HpReal,
    pub threshold_log10: HpReal,
    /// `|bound(threshold) - target| / target`.
    pub round_trip_error: HpReal,
}

impl RemarkReport {
    /// Display digits: the working precision.
    pub fn digits(&self) -> u32 {
        self.params.precision.decimal_digits()
    }

    pub fn growth_exponent_decimal(&self, sig: u32) -> Decimal {
        self.growth_exponent.to_decimal(sig)
    }

    pub fn coefficient_decimal(&self, sig: u32) -> Decimal {
        self.coefficient.to_decimal(sig)
    }

    pub fn threshold_log10_decimal(&self, sig: u32) -> Decimal {
        self.threshold_log10.to_decimal(sig)
    }
}

pub fn remark_report(pp: &HpProofParams, target: &HpReal) -> Result<RemarkReport> {
    let growth = growth_exponent(pp)?;
    let coef = coefficient(pp)?;
    let threshold = crossing_threshold_log10(pp, target)?;
    let back = bound_at_log10(pp, &threshold)?;
    let round_trip_error = back.sub(target).div(target)?.abs();
    Ok(RemarkReport {
        params: pp.clone(),
        target: target.clone(),
        growth_exponent: growth,
        coefficient: coef,
        threshold_log10: threshold,
        round_trip_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> HpProofParams {
        HpProofParams::parse(3, "5", "1.5", Precision::default()).unwrap()
    }

    fn one(prec: Precision) -> HpReal {
        HpReal::from_int(1, prec)
    }

    #[test]
    fn reference_exponent_and_threshold() {
        let pp = reference();
        let w = growth_exponent(&pp).unwrap();
        // Independent 60-digit evaluation (mpmath).
        assert_eq!(
            w.to_decimal(40).plain(),
            "0.03410198191385218520569267200630496472920"
        );
        assert_eq!(w.to_decimal(3).plain(), "0.0341");
        let t = crossing_threshold_log10(&pp, &one(pp.precision)).unwrap();
        assert_eq!(t.to_decimal(3).scientific(), "2.86e22");
        assert_eq!(t.to_decimal(30).plain(), "28585306661624948165384.5095227");
        assert_eq!(coefficient(&pp).unwrap().to_decimal(5).plain(), "0.16667");
    }

    #[test]
    fn small_parameters_exponent() {
        let pp = HpProofParams::parse(1, "1", "2", Precision::default()).unwrap();
        let w = growth_exponent(&pp).unwrap();
        // log2(4/3) / (1 + log2(4/3))
        assert_eq!(w.to_decimal(30).plain(), "0.293304947388576270527457059912");
    }

    #[test]
    fn round_trip_at_fifty_digits() {
        for (p, l, t, target) in [
            (3, "5", "1.5", "1"),
            (1, "1", "2", "1"),
            (2, "0.5", "2.5", "7/3"),
        ] {
            let pp = HpProofParams::parse(p, l, t, Precision::default()).unwrap();
            let target = HpReal::parse(target, pp.precision).unwrap();
            let r = remark_report(&pp, &target).unwrap();
            assert!(
                r.round_trip_error < HpReal::parse("1e-40", pp.precision).unwrap(),
                "{:?}",
                r.round_trip_error
            );
        }
    }

    #[test]
    fn target_equal_to_coefficient_gives_ln_n_one() {
        let pp = reference();
        let t = crossing_threshold_log10(&pp, &coefficient(&pp).unwrap()).unwrap();
        let log10e = one(pp.precision).exp().log10().unwrap();
        assert!(t.sub(&log10e).abs() < HpReal::parse("1e-45", pp.precision).unwrap());
    }

    #[test]
    fn agrees_with_binary64_pipeline() {
        let pp = ProofParams::new(3, 5.0, 1.5).unwrap();
        let hp = HpProofParams::from_params(&pp, Precision::default()).unwrap();
        let w = growth_exponent(&hp).unwrap().to_f64();
        assert!((w - pp.growth_exponent()).abs() / w < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        let prec = Precision::default();
        assert!(HpProofParams::parse(0, "1", "2", prec).is_err());
        assert!(HpProofParams::parse(1, "0", "2", prec).is_err());
        assert!(HpProofParams::parse(1, "1", "1", prec).is_err());
        let pp = reference();
        assert!(crossing_threshold_log10(&pp, &HpReal::zero(prec)).is_err());
    }
}

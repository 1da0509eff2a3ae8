//! Binary fixed-point reals on top of `BigInt`.
//!
//! A value is `mantissa / 2^frac_bits`. Magnitude is unbounded above; the
//! absolute resolution is `2^-frac_bits`. This covers what the growth
//! constants need (`ln`, `exp`, `pow`, `log10`, exact decimal input and
//! correctly rounded decimal output) and nothing more.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Working precision: `digits` significant decimals plus guard bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
    frac_bits: u32,
}

impl Precision {
    const GUARD_BITS: u32 = 64;

    pub fn digits(digits: u32) -> Self {
        let digits = digits.max(1);
        // log2(10) < 3.3220
        let frac_bits = (u64::from(digits) * 33220).div_ceil(10000) as u32 + Self::GUARD_BITS;
        Self { digits, frac_bits }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.digits
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::digits(50)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HpReal {
    mant: BigInt,
    bits: u32,
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// `num / den` rounded to nearest, ties to even. `den > 0`.
fn div_round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice = &r << 1u32;
    match twice.cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    }
}

impl HpReal {
    pub fn zero(prec: Precision) -> Self {
        Self {
            mant: BigInt::zero(),
            bits: prec.frac_bits,
        }
    }

    pub fn from_int(v: i64, prec: Precision) -> Self {
        Self {
            mant: BigInt::from(v) << prec.frac_bits,
            bits: prec.frac_bits,
        }
    }

    /// `num / den`, rounded to the working resolution.
    pub fn from_ratio(num: BigInt, den: BigInt, prec: Precision) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        Ok(Self {
            mant: div_round_half_even(&(num << prec.frac_bits), &den),
            bits: prec.frac_bits,
        })
    }

    /// Exact conversion of a finite binary64 value (down to the resolution).
    pub fn from_f64(x: f64, prec: Precision) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain("cannot convert a non-finite float"));
        }
        if x == 0.0 {
            return Ok(Self::zero(prec));
        }
        let raw = x.abs().to_bits();
        let exp_field = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & ((1u64 << 52) - 1);
        let (m, e2) = if exp_field == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_field - 1075)
        };
        let mut mant = BigInt::from(m);
        let shift = e2 + i64::from(prec.frac_bits);
        if shift >= 0 {
            mant <<= shift as u64;
        } else {
            mant = div_round_half_even(&mant, &(BigInt::one() << (-shift) as u64));
        }
        if x < 0.0 {
            mant = -mant;
        }
        Ok(Self {
            mant,
            bits: prec.frac_bits,
        })
    }

    /// Parses `[-]digits[.digits][e[-]digits]` or `a/b` with both sides of
    /// that form. The decimal value is taken exactly before rounding.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => {
                let (an, ad) = parse_decimal(a)?;
                let (bn, bd) = parse_decimal(b)?;
                (an * bd, ad * bn)
            }
            None => parse_decimal(s)?,
        };
        Self::from_ratio(num, den, prec)
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    fn with(&self, mant: BigInt) -> Self {
        Self {
            mant,
            bits: self.bits,
        }
    }

    fn aligned(&self, other: &Self) -> BigInt {
        match other.bits.cmp(&self.bits) {
            Ordering::Equal => other.mant.clone(),
            Ordering::Less => &other.mant << (self.bits - other.bits),
            Ordering::Greater => &other.mant >> (other.bits - self.bits),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        self.with(self.mant.abs())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with(&self.mant + self.aligned(other))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with(&self.mant - self.aligned(other))
    }

    pub fn neg(&self) -> Self {
        self.with(-&self.mant)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.with((&self.mant * self.aligned(other)) >> self.bits)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let d = self.aligned(other);
        if d.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(self.with((&self.mant << self.bits) / d))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.with(&self.mant * k)
    }

    pub fn div_int(&self, k: i64) -> Self {
        self.with(&self.mant / k)
    }

    /// `self * 2^k`.
    pub fn scale2(&self, k: i64) -> Self {
        if k >= 0 {
            self.with(&self.mant << k as u64)
        } else {
            self.with(&self.mant >> (-k) as u64)
        }
    }

    fn one(&self) -> Self {
        self.with(BigInt::one() << self.bits)
    }

    /// `2 atanh(z) = ln((1+z)/(1-z))` for `|z| <= 1/3`.
    fn two_atanh(z: &Self) -> Self {
        let z2 = z.mul(z);
        let mut power = z.clone();
        let mut sum = z.clone();
        let mut k = 1i64;
        loop {
            power = power.mul(&z2);
            let term = power.div_int(2 * k + 1);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            k += 1;
        }
        sum.scale2(1)
    }

    fn ln2(&self) -> Self {
        let third = self.one().div_int(3);
        Self::two_atanh(&third)
    }

    /// Natural logarithm; `self > 0`.
    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::domain("logarithm of a nonpositive number"));
        }
        // self = m * 2^k with m in [1, 2)
        let k = self.mant.bits() as i64 - 1 - i64::from(self.bits);
        let m = self.scale2(-k);
        let one = self.one();
        let z = m.sub(&one).div(&m.add(&one))?;
        Ok(Self::two_atanh(&z).add(&self.ln2().mul_int(k)))
    }

    pub fn exp(&self) -> Self {
        const HALVINGS: i64 = 16;
        let ln2 = self.ln2();
        let k = self.div(&ln2).expect("ln 2 is nonzero").round_to_integer();
        let k = k.to_i64().expect("exponent of exp out of range");
        let r = self.sub(&ln2.mul_int(k)).scale2(-HALVINGS);
        let one = self.one();
        let mut term = one.clone();
        let mut sum = one;
        let mut j = 1i64;
        loop {
            term = term.mul(&r).div_int(j);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        for _ in 0..HALVINGS {
            sum = sum.mul(&sum);
        }
        sum.scale2(k)
    }

    /// `self^y` for `self > 0`.
    pub fn pow(&self, y: &Self) -> Result<Self> {
        Ok(self.ln()?.mul(y).exp())
    }

    pub fn ln10(prec: Precision) -> Self {
        Self::from_int(10, prec).ln().expect("10 > 0")
    }

    pub fn log10(&self) -> Result<Self> {
        let ln10 = Self::from_int(10, Precision::from_bits(self.bits)).ln()?;
        self.ln()?.div(&ln10)
    }

    /// Nearest integer, ties away from zero.
    fn round_to_integer(&self) -> BigInt {
        let half = BigInt::one() << (self.bits - 1);
        if self.is_negative() {
            -((-&self.mant + half) >> self.bits)
        } else {
            (&self.mant + half) >> self.bits
        }
    }

    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits() as i64;
        let (m, shift) = if len > 120 {
            (&self.mant >> (len - 120) as u64, len - 120)
        } else {
            (self.mant.clone(), 0)
        };
        let m = m.to_f64().unwrap_or(f64::NAN);
        let e = shift - i64::from(self.bits);
        libm::scalbn(m, e.clamp(i64::from(i32::MIN), i64::from(i32::MAX)) as i32)
    }

    /// `|self|` compared against `10^e`.
    fn cmp_abs_pow10(&self, e: i64) -> Ordering {
        let a = self.mant.abs();
        if e >= 0 {
            a.cmp(&(pow10(e as u32) << self.bits))
        } else {
            (a * pow10((-e) as u32)).cmp(&(BigInt::one() << self.bits))
        }
    }

    /// Rounds to `sig` significant decimal digits, ties to even.
    pub fn to_decimal(&self, sig: u32) -> Decimal {
        let sig = sig.max(1);
        if self.is_zero() {
            return Decimal {
                negative: false,
                digits: "0".repeat(sig as usize),
                exp10: 0,
            };
        }
        let approx = self.to_f64().abs();
        let mut e10 = if approx.is_finite() && approx > 0.0 {
            libm::floor(libm::log10(approx)) as i64
        } else {
            0
        };
        while self.cmp_abs_pow10(e10) == Ordering::Less {
            e10 -= 1;
        }
        while self.cmp_abs_pow10(e10 + 1) != Ordering::Less {
            e10 += 1;
        }
        let scale = i64::from(sig) - 1 - e10;
        let a = self.mant.abs();
        let unit = BigInt::one() << self.bits;
        let mut q = if scale >= 0 {
            div_round_half_even(&(a * pow10(scale as u32)), &unit)
        } else {
            div_round_half_even(&a, &(unit * pow10((-scale) as u32)))
        };
        if q == pow10(sig) {
            q /= 10;
            e10 += 1;
        }
        Decimal {
            negative: self.is_negative(),
            digits: q.to_string(),
            exp10: e10,
        }
    }
}

impl Precision {
    fn from_bits(frac_bits: u32) -> Self {
        Self {
            digits: (frac_bits.saturating_sub(Self::GUARD_BITS) * 10000 / 33220).max(1),
            frac_bits,
        }
    }
}

impl fmt::Debug for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpReal({})", self.to_decimal(40))
    }
}

impl PartialOrd for HpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.mant.cmp(&self.aligned(other)))
    }
}

fn parse_decimal(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::domain(alloc::format!("cannot parse '{s}' as a decimal number"));
    let s = s.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let e = i64::from(exponent) - frac_part.len() as i64;
    if e.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    Ok(if e >= 0 {
        (num * pow10(e as u32), BigInt::one())
    } else {
        (num, pow10((-e) as u32))
    })
}

/// A decimal rounded to a fixed number of significant digits:
/// `0.d1 d2 ... * 10^(exp10 + 1)`, i.e. `d1.d2... * 10^exp10`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    pub negative: bool,
    pub digits: String,
    pub exp10: i64,
}

impl Decimal {
    /// `d.ddd` followed by `e<exp10>` when the exponent is nonzero.
    pub fn scientific(&self) -> String {
        let mut out = String::new();
        if self.negative {
            out.push('-');
        }
        out.push_str(&self.digits[..1]);
        if self.digits.len() > 1 {
            out.push('.');
            out.push_str(&self.digits[1..]);
        }
        if self.exp10 != 0 {
            out.push('e');
            out.push_str(&self.exp10.to_string());
        }
        out
    }

    /// Positional notation, no exponent.
    pub fn plain(&self) -> String {
        let mut out = String::new();
        if self.negative {
            out.push('-');
        }
        let n = self.digits.len() as i64;
        if self.exp10 < 0 {
            out.push_str("0.");
            for _ in 0..(-self.exp10 - 1) {
                out.push('0');
            }
            out.push_str(&self.digits);
        } else if self.exp10 + 1 >= n {
            out.push_str(&self.digits);
            for _ in 0..(self.exp10 + 1 - n) {
                out.push('0');
            }
        } else {
            let split = (self.exp10 + 1) as usize;
            out.push_str(&self.digits[..split]);
            out.push('.');
            out.push_str(&self.digits[split..]);
        }
        out
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if (-7..21).contains(&self.exp10) {
            f.write_str(&self.plain())
        } else {
            f.write_str(&self.scientific())
        }
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = Precision::from_bits(self.bits).decimal_digits();
        write!(f, "{}", self.to_decimal(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p50() -> Precision {
        Precision::default()
    }

    fn hp(s: &str) -> HpReal {
        HpReal::parse(s, p50()).unwrap()
    }

    #[test]
    fn known_constants() {
        let ln2 = HpReal::from_int(2, p50()).ln().unwrap();
        assert_eq!(
            ln2.to_decimal(50).plain(),
            "0.69314718055994530941723212145817656807550013436026"
        );
        let e = HpReal::from_int(1, p50()).exp();
        assert_eq!(
            e.to_decimal(50).plain(),
            "2.7182818284590452353602874713526624977572470937000"
        );
        let log10e = e.log10().unwrap();
        assert_eq!(
            log10e.to_decimal(30).plain(),
            "0.434294481903251827651128918917"
        );
    }

    #[test]
    fn exp_ln_round_trip() {
        for s in ["0.001", "1.5", "52.5", "-7.25", "1e-20", "12345.678"] {
            let x = hp(s);
            let back = x.exp().ln().unwrap();
            let err = back.sub(&x).abs();
            assert!(err < hp("1e-45"), "{s}: {err:?}");
        }
        let big = hp("6.6e22");
        let back = big.ln().unwrap().exp();
        let rel = back.sub(&big).div(&big).unwrap().abs();
        assert!(rel < hp("1e-55"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(hp("1.5"), HpReal::from_f64(1.5, p50()).unwrap());
        assert_eq!(hp("3/2"), hp("1.5"));
        assert_eq!(hp("-2e3"), HpReal::from_int(-2000, p50()));
        assert_eq!(hp(".25e-1"), hp("25/1000"));
        assert!(HpReal::parse("abc", p50()).is_err());
        assert!(HpReal::parse("1/0", p50()).is_err());
        assert!(HpReal::parse("", p50()).is_err());
        assert!(HpReal::parse("1.2.3", p50()).is_err());
    }

    #[test]
    fn decimal_rounding_half_even() {
        // exact binary ties
        assert_eq!(hp("0.625").to_decimal(2).digits, "62");
        assert_eq!(hp("0.375").to_decimal(2).digits, "38");
        assert_eq!(hp("0.034251").to_decimal(3).digits, "343");
        let d = hp("9.996").to_decimal(3);
        assert_eq!((d.digits.as_str(), d.exp10), ("100", 1));
        assert_eq!(hp("2.8585e22").to_decimal(3).scientific(), "2.86e22");
        assert_eq!(hp("0.0341019").to_decimal(3).plain(), "0.0341");
        assert_eq!(hp("-123.456").to_decimal(4).to_string(), "-123.5");
        assert_eq!(hp("1000").to_decimal(2).plain(), "1000");
    }

    #[test]
    fn f64_conversion_is_exact() {
        for x in [1.5, -0.1, 1e-300, 6.02e23, f64::MIN_POSITIVE] {
            let v = HpReal::from_f64(x, Precision::digits(400)).unwrap();
            assert_eq!(v.to_f64(), x);
        }
    }
}

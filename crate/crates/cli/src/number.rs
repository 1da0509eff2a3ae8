//! Text forms of binary64 values.

use hardy_core::remark::Decimal;

/// Shortest string that parses back to `x`: positional for
/// `1e-5 <= |x| < 1e16`, otherwise `d.ddde±x`.
pub fn round_trip(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn split_exp(s: &str) -> (String, i64) {
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let digits = mant.chars().filter(char::is_ascii_digit).collect();
    (digits, exp.parse().expect("integer exponent"))
}

/// `x` to `sig` significant digits. Values whose shortest form is already
/// that short print without padding (`2`, not `2.00000000000000`).
pub fn significant(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return round_trip(x);
    }
    let sig = sig.max(1);
    let (mut digits, mut exp10) = split_exp(&format!("{:e}", x.abs()));
    if digits.len() > sig {
        (digits, exp10) = split_exp(&format!("{:.*e}", sig - 1, x.abs()));
    }
    Decimal {
        negative: x < 0.0,
        digits,
        exp10,
    }
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_forms() {
        assert_eq!(round_trip(2.0), "2");
        assert_eq!(round_trip(0.1), "0.1");
        assert_eq!(round_trip(1e16), "1e16");
        assert_eq!(round_trip(2.5e-7), "2.5e-7");
        assert_eq!(round_trip(-3.25), "-3.25");
        for x in [
            std::f64::consts::PI,
            1.0 / 3.0,
            9_999_999_999_999_998.0,
            1.2345e-5,
            f64::MAX,
            f64::MIN_POSITIVE,
        ] {
            assert_eq!(round_trip(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn fifteen_digits() {
        assert_eq!(significant(2.0, 15), "2");
        assert_eq!(significant(2f64.sqrt(), 15), "1.41421356237310");
        assert_eq!(significant(0.1, 15), "0.1");
        assert_eq!(significant(1.0 / 3.0, 15), "0.333333333333333");
        assert_eq!(significant(-2.0 / 3.0, 15), "-0.666666666666667");
        assert_eq!(significant(9.999999999999999e20, 15), "1.00000000000000e21");
        assert_eq!(significant(123456.0, 15), "123456");
        assert_eq!(significant(1.0 / 3.0 * 1e-9, 15), "3.33333333333333e-10");
    }
}

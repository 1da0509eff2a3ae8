// Thin wrappers so the numeric code reads the same with or without std.

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[cfg(test)]
#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub(crate) fn exp2(x: f64) -> f64 {
    libm::exp2(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// `x^y` with cheap exact paths for the exponents that show up most often.
#[inline]
pub(crate) fn pow_fast(x: f64, y: f64) -> f64 {
    if y == 1.0 {
        x
    } else if y == -1.0 {
        1.0 / x
    } else if y == 2.0 {
        x * x
    } else {
        powf(x, y)
    }
}

/// `ln(a / b)`, falling back to `ln a - ln b` when the quotient leaves the
/// normal range.
#[inline]
pub(crate) fn ln_ratio(a: f64, b: f64) -> f64 {
    let r = a / b;
    if r.is_normal() {
        ln(r)
    } else {
        ln(a) - ln(b)
    }
}

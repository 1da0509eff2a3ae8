//! Mean and sequence specifications.
//!
//! ```text
//! mean     := "power:" (real | "inf" | "-inf")
//!           | "gini:" real "," real
//!           | "gauss:" real ("," real)*
//! sequence := "harmonic" | "file:" path
//! ```

use std::fs;
use std::path::Path;

use hardy_core::hardy::Sequence;
use hardy_core::MeanDescriptor;

use crate::error::{CliError, CliResult};

/// Parses a finite real, or an infinity when `allow_inf` is set.
pub fn parse_real(s: &str, allow_inf: bool) -> CliResult<f64> {
    let t = s.trim();
    let v = match t {
        "inf" | "+inf" if allow_inf => return Ok(f64::INFINITY),
        "-inf" if allow_inf => return Ok(f64::NEG_INFINITY),
        _ => t.parse::<f64>().ok(),
    };
    match v {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::parse(format!("not a finite real number: {s:?}"))),
    }
}

fn parse_list(s: &str, what: &str) -> CliResult<Vec<f64>> {
    if s.trim().is_empty() {
        return Err(CliError::parse(format!("{what}: empty exponent list")));
    }
    s.split(',').map(|p| parse_real(p, false)).collect()
}

pub fn parse_mean(spec: &str) -> CliResult<MeanDescriptor> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| CliError::parse(format!("mean spec {spec:?}: expected <kind>:<args>")))?;
    let mean = match kind {
        "power" => MeanDescriptor::power(parse_real(args, true)?),
        "gini" => {
            let v = parse_list(args, spec)?;
            let [p, q] = v[..] else {
                return Err(CliError::parse(format!(
                    "mean spec {spec:?}: gini takes exactly two exponents"
                )));
            };
            MeanDescriptor::gini(p, q)
        }
        "gauss" => MeanDescriptor::gauss(parse_list(args, spec)?),
        _ => {
            return Err(CliError::parse(format!(
                "mean spec {spec:?}: unknown kind {kind:?} (power, gini, gauss)"
            )))
        }
    };
    Ok(mean?)
}

pub fn parse_sequence(spec: &str) -> CliResult<Sequence> {
    if spec == "harmonic" {
        return Ok(Sequence::Harmonic);
    }
    match spec.strip_prefix("file:") {
        Some(path) => read_sequence_file(Path::new(path)),
        None => Err(CliError::parse(format!(
            "sequence spec {spec:?}: expected harmonic or file:<path>"
        ))),
    }
}

/// One positive decimal per line; blank lines are skipped.
pub fn read_sequence_file(path: &Path) -> CliResult<Sequence> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_sequence_text(&text).map_err(|mut e| {
        e.message = format!("{}:{}", path.display(), e.message);
        e
    })
}

pub fn parse_sequence_text(text: &str) -> CliResult<Sequence> {
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let x: f64 = t
            .parse()
            .map_err(|_| CliError::parse(format!("{}: not a number: {t:?}", i + 1)))?;
        if x.is_nan() {
            return Err(CliError::parse(format!("{}: not a number: {t:?}", i + 1)));
        }
        if !(x > 0.0 && x.is_finite()) {
            return Err(CliError::domain(format!(
                "{}: term {t} is not a finite positive real",
                i + 1
            )));
        }
        terms.push(x);
    }
    if terms.is_empty() {
        return Err(CliError::domain("sequence file has no terms"));
    }
    Ok(Sequence::explicit(terms))
}

/// A nonnegative integer, written plainly or as an exact float (`1e7`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("not a nonnegative integer: {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::exit;

    #[test]
    fn mean_grammar() {
        assert_eq!(parse_mean("power:1").unwrap().to_string(), "power:1");
        assert_eq!(parse_mean("power:-inf").unwrap().to_string(), "power:-inf");
        assert_eq!(parse_mean("gini:1,-1").unwrap().to_string(), "gini:1,-1");
        assert_eq!(
            parse_mean("gauss:1,-5,-5,-5").unwrap().to_string(),
            "gauss:1,-5,-5,-5"
        );
        for bad in [
            "power",
            "power:x",
            "gini:1",
            "gini:1,2,3",
            "gauss:",
            "gauss:1,,2",
            "lehmer:1",
            "power:nan",
            "gauss:inf",
        ] {
            assert_eq!(parse_mean(bad).unwrap_err().code, exit::PARSE, "{bad}");
        }
        assert_eq!(parse_mean("gini:1,1").unwrap_err().code, exit::DOMAIN);
    }

    #[test]
    fn sequence_text() {
        let s = parse_sequence_text("1\n\n0.5\n  0.25  \n").unwrap();
        assert_eq!(s.len(), Some(3));
        assert_eq!(s.term(3).unwrap(), 0.25);
        let e = parse_sequence_text("1\n2\nabc\n").unwrap_err();
        assert_eq!((e.code, e.message.starts_with("3:")), (exit::PARSE, true));
        let e = parse_sequence_text("1\n\n-2\n").unwrap_err();
        assert_eq!((e.code, e.message.starts_with("3:")), (exit::DOMAIN, true));
        assert_eq!(parse_sequence_text("0\n").unwrap_err().code, exit::DOMAIN);
        assert_eq!(parse_sequence_text("nan\n").unwrap_err().code, exit::PARSE);
        assert!(parse_sequence("harmonic").is_ok());
        assert_eq!(parse_sequence("geometric").unwrap_err().code, exit::PARSE);
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("100"), Ok(100));
        assert_eq!(parse_count("1e7"), Ok(10_000_000));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-1").is_err());
    }
}

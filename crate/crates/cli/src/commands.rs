use std::io::Write;

use hardy_core::gauss::CompoundSettings;
use hardy_core::hardy::{
    build_witness, classify, verify_witness, HarmonicBound, Sequence, Stride, TraceIter,
};
use hardy_core::remark::{remark_report, HpProofParams, HpReal, Precision};
use hardy_core::{MeanDescriptor, Sample};

use crate::error::{CliError, CliResult};
use crate::number::significant;
use crate::record::{Format, Record, RecordWriter};
use crate::spec::parse_real;

/// Stopping rule for `eval`: tight enough that all printed digits are settled.
pub const EVAL_SETTINGS: CompoundSettings = CompoundSettings {
    rel_tolerance: 1e-15,
    max_iterations: 200,
};

pub const EVAL_DIGITS: usize = 15;
pub const DEFAULT_TRACE_CAP: u64 = 10_000_000;
pub const TRACE_CAP_ENV: &str = "HARDY_TRACE_CAP";

pub fn eval(mean: &MeanDescriptor, values: &[String]) -> CliResult<String> {
    let v = values
        .iter()
        .map(|s| parse_real(s, false))
        .collect::<CliResult<Vec<_>>>()?;
    let x = mean.evaluate_with(&Sample::new(&v)?, &EVAL_SETTINGS)?;
    Ok(significant(x, EVAL_DIGITS))
}

pub fn verdict_record(mean: &MeanDescriptor) -> Record {
    let v = classify(mean);
    Record::new("verdict.v1")
        .with("mean", mean.to_string())
        .with("verdict", if v.is_hardy { "Hardy" } else { "NotHardy" })
        .with("is_hardy", v.is_hardy)
        .with("reason", v.reason.clause())
        .with("criterion", v.source.tag())
}

/// Trace cap from the environment, falling back to the default.
pub fn trace_cap_from_env() -> CliResult<u64> {
    match std::env::var(TRACE_CAP_ENV) {
        Ok(s) => crate::spec::parse_count(s.trim())
            .map_err(|e| CliError::parse(format!("{TRACE_CAP_ENV}: {e}"))),
        Err(_) => Ok(DEFAULT_TRACE_CAP),
    }
}

pub struct TraceRequest<'a> {
    pub mean: &'a MeanDescriptor,
    pub sequence: &'a Sequence,
    pub last: u64,
    pub stride: Stride,
    pub cap: u64,
}

/// Streams trace rows. An error after the first row ends the stream with a
/// `trace-error.v1` trailer before it is returned.
pub fn trace<W: Write>(req: &TraceRequest<'_>, out: W, format: Format) -> CliResult<()> {
    if req.last > req.cap {
        return Err(CliError::cap(format!(
            "trace length {} exceeds the cap {} (set {TRACE_CAP_ENV} to raise it)",
            req.last, req.cap
        )));
    }
    let bound = match req.sequence {
        Sequence::Harmonic => HarmonicBound::for_mean(req.mean),
        _ => None,
    };
    let rows = TraceIter::new(
        req.mean,
        req.sequence,
        req.last,
        req.stride,
        CompoundSettings::default(),
    )?;
    let mut w = RecordWriter::new(out, format);
    let mut written = 0u64;
    for row in rows {
        match row {
            Ok(r) => {
                w.write(
                    &Record::new("trace-row.v1")
                        .with("n", r.n)
                        .with("a_n", r.term)
                        .with("mean", r.mean)
                        .with("ratio", r.ratio)
                        .with("lower_bound", bound.as_ref().map(|b| b.at(r.n))),
                )?;
                written += 1;
            }
            Err(e) => {
                let e = CliError::from(e);
                w.write(
                    &Record::new("trace-error.v1")
                        .with("rows", written)
                        .with("message", e.message.as_str()),
                )?;
                w.flush()?;
                return Err(e);
            }
        }
    }
    w.flush()
}

pub struct FalsifyRequest<'a> {
    pub mean: &'a MeanDescriptor,
    pub sequence: &'a Sequence,
    pub sequence_spec: &'a str,
    pub c: f64,
    pub cap: u64,
}

pub fn falsify(req: &FalsifyRequest<'_>) -> CliResult<Record> {
    let cfg = CompoundSettings::default();
    let w = build_witness(req.mean, req.sequence, req.c, req.cap, &cfg)?;
    let check = verify_witness(&w, req.mean, &cfg)?;
    Ok(Record::new("witness-report.v1")
        .with("mean", req.mean.to_string())
        .with("sequence", req.sequence_spec)
        .with("c", req.c)
        .with("cap", req.cap)
        .with("n0", w.n0)
        .with("n1", w.n1)
        .with("lhs", check.lhs)
        .with("rhs", check.rhs)
        .with("refuted", check.refuted)
        .with("head_sum", w.ledger.head_sum)
        .with("middle_sum", w.ledger.middle_sum)
        .with("a_n1", w.ledger.a_n1)
        .with("tail_log2", w.ledger.tail_log2)
        .with("min_ratio", w.ledger.min_ratio)
        .with("divergence_assumed", w.ledger.divergence_assumed))
}

pub struct RemarkRequest<'a> {
    pub p: u32,
    pub lambda: &'a str,
    pub theta: &'a str,
    pub target: &'a str,
    pub digits: u32,
}

/// Extra working digits beyond those printed.
const GUARD_DIGITS: u32 = 10;

pub fn remark(req: &RemarkRequest<'_>) -> CliResult<Record> {
    if !(1..=2000).contains(&req.digits) {
        return Err(CliError::parse("--digits must lie in 1..=2000"));
    }
    let prec = Precision::digits(req.digits + GUARD_DIGITS);
    let parse = |what: &str, s: &str| {
        HpReal::parse(s, prec).map_err(|e| CliError::parse(format!("{what}: {e}")))
    };
    let pp = HpProofParams::new(
        req.p,
        parse("lambda", req.lambda)?,
        parse("theta", req.theta)?,
        prec,
    )?;
    let target = parse("target", req.target)?;
    let r = remark_report(&pp, &target)?;
    let d = req.digits;
    Ok(Record::new("remark-report.v1")
        .with("p", req.p)
        .with("lambda", req.lambda)
        .with("theta", req.theta)
        .with("target", req.target)
        .with("digits", d)
        .with("exponent", r.growth_exponent_decimal(d).plain())
        .with("exponent_3sf", r.growth_exponent_decimal(3).plain())
        .with("coefficient", r.coefficient_decimal(d).plain())
        .with("threshold_log10", r.threshold_log10_decimal(d).plain())
        .with(
            "threshold_log10_3sf",
            r.threshold_log10_decimal(3).to_string(),
        )
        .with(
            "round_trip_error",
            r.round_trip_error.to_decimal(3).scientific(),
        ))
}

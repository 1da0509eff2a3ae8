//! Hardy-property classification and numeric refutation of Hardy constants.
//!
//! Verdicts come only from the closed-form criteria in [`classify`]. The
//! trace and witness machinery demonstrates non-Hardiness: if
//! `A(a_1..a_n) / a_n` grows without bound along a divergent sequence with
//! `a_n -> 0`, no constant `C` can work, and [`build_witness`] exhibits an
//! explicit summable sequence on which a given `C` fails. A Hardy mean can
//! never be confirmed this way.

pub mod classify;
mod sequence;
mod trace;
mod witness;

pub use classify::{
    classify, classify_gauss, classify_gini, classify_power, reduce_gini, Criterion, HardyVerdict,
    VerdictReason,
};
pub use sequence::{Sequence, Stride};
pub use trace::{
    chain_check, gauss_ratio_lower_bound, gini_ratio_lower_bound, ratio_trace, ChainLedger,
    HarmonicBound, RatioTrace, TraceIter, TraceRecord,
};
pub use witness::{build_witness, verify_witness, Witness, WitnessCheck, WitnessLedger};

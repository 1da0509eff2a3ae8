use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation (nonpositive entry,
    /// NaN exponent, empty sample, violated precondition).
    Domain(String),
    /// Gini parameters with `p == q`; that limit case is not supported.
    UnsupportedParameters { p: f64, q: f64 },
    /// A prefix evaluator was asked for an exponent it does not track.
    UntrackedExponent(f64),
    /// The compound iteration did not reach its tolerance.
    Convergence {
        iterations: u32,
        relative_spread: f64,
        last_iterate: Vec<f64>,
    },
    /// A finite sequence ran out before the requested index.
    SequenceExhausted { requested: u64, available: u64 },
    /// Witness search hit its cap without locating `n0` and `n1`.
    WitnessNotFound {
        cap: u64,
        largest_ratio: f64,
        largest_ratio_at: u64,
        n0: Option<u64>,
    },
    /// A witness fails one of its defining conditions.
    InvalidWitness(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Self::Domain(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::UnsupportedParameters { p, .. } => {
                write!(f, "unsupported Gini parameters p = q = {p} (need p != q)")
            }
            Self::UntrackedExponent(l) => {
                write!(f, "exponent {l} is not tracked by this prefix evaluator")
            }
            Self::Convergence {
                iterations,
                relative_spread,
                ..
            } => write!(
                f,
                "compound iteration did not converge after {iterations} iterations \
                 (relative spread {relative_spread:e})"
            ),
            Self::SequenceExhausted {
                requested,
                available,
            } => write!(
                f,
                "sequence has {available} terms, term {requested} was requested"
            ),
            Self::WitnessNotFound {
                cap,
                largest_ratio,
                largest_ratio_at,
                n0,
            } => {
                write!(
                    f,
                    "no witness within {cap} terms: largest ratio {largest_ratio} at n = {largest_ratio_at}"
                )?;
                if let Some(n0) = n0 {
                    write!(f, " (n0 = {n0} found, n1 not reached)")?;
                }
                Ok(())
            }
            Self::InvalidWitness(msg) => write!(f, "invalid witness: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

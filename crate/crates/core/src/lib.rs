//! Power means, Gini means and Gaussian compound means, together with the
//! machinery to classify their Hardy property and to refute a candidate
//! Hardy constant numerically.
//!
//! A mean `A` is *Hardy* when some constant `C` bounds
//! `sum A(a_1..a_n) < C * sum a_n` for every summable positive sequence.
//! Numerics can never confirm that property, only refute a particular `C`:
//! [`hardy::build_witness`] and [`hardy::verify_witness`] produce such
//! refutations, while the verdicts in [`hardy::classify`] come from closed-form
//! criteria.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is off.
//!
//! ```
//! use hardy_core::hardy::{build_witness, classify, verify_witness, Sequence};
//! use hardy_core::{CompoundSettings, MeanDescriptor, Sample};
//!
//! let agm = MeanDescriptor::gauss(vec![1.0, 0.0])?;
//! let x = agm.evaluate(&Sample::new(&[1.0, 2.0])?)?;
//! assert!((x - 1.456_791_031_046_906_9).abs() < 1e-12);
//!
//! let m = MeanDescriptor::gini(1.0, -1.0)?;
//! assert!(!classify(&m).is_hardy);
//!
//! let cfg = CompoundSettings::default();
//! let w = build_witness(&m, &Sequence::Harmonic, 1.0, 1_000_000, &cfg)?;
//! assert!(verify_witness(&w, &m, &cfg)?.refuted);
//! # Ok::<(), hardy_core::Error>(())
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod fmath;
mod sum;

pub mod gauss;
pub mod hardy;
pub mod means;
pub mod prefix;
pub mod remark;

pub use error::{Error, Result};
pub use gauss::{CompoundOutcome, CompoundSettings, ProofParams};
pub use means::{CompoundExponents, GiniParams, MeanDescriptor, PowerExponent, Sample};
pub use prefix::PrefixEvaluator;

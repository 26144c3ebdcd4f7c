//! Exact-arithmetic engine for weighted-sum identities over second-order
//! linear recurrences.
//!
//! The crate covers rational arithmetic ([`numeric`]), recurrence sequences
//! ([`sequences`]), identity descriptors and their generators ([`engine`]),
//! a catalog of known identities ([`catalog`]), verification and fuzzing
//! ([`verifier`]), and JSON/LaTeX serialization ([`io`]).

pub mod catalog;
pub mod engine;
pub mod error;
pub mod io;
pub mod numeric;
pub mod sequences;
pub mod verifier;

pub use engine::{IdentityDescriptor, SumSide, Summand, GeometricTerm};
pub use error::{Error, Result};
pub use numeric::Rational;
pub use sequences::{NamedFamily, Sequence, SequenceDef};
pub use verifier::{VerificationReport, Status};

//! Exact enumeration of non-crossing partitions by occurrences of subword
//! patterns.
//!
//! The crate brute-forces distributions over `NC_n`, expands the closed-form
//! generating functions as truncated power series with exact rational
//! coefficients, evaluates the recurrence for `12...(m-1)m^a`, and realizes the
//! bijections behind the subword equivalences. The [`verify`] module ties the
//! three together into cross-checked reports.

pub mod algebra;
pub mod bijections;
pub mod checks;
pub mod error;
pub mod formulas;
pub mod partition;
pub mod recurrence;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{CanonicalSeq, Letter, NCPartition, PatternFamily, SubwordPattern};

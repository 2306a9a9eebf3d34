//! Exact invariants of complete intersections `X_n(d_1, ..., d_r)` in
//! `CP^{n+r}`: total degree, power sums, moduli-space dimension, composed
//! multidegrees and their consecutive differences, invariant-based
//! equivalence checks, and a search for multidegree pairs with equal
//! products and equal power sums.
//!
//! All arithmetic is exact; big integers cross every serialization boundary
//! as decimal strings.

pub mod arith;
pub mod cli;
pub mod decimal;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod moduli;
pub mod multidegree;
pub mod search;
pub mod selftest;

pub use equivalence::{
    classify, divisibility_condition, same_homeomorphism_data, EquivalenceLevel,
    EquivalenceVerdict, ExponentRule, PrimePowerCondition,
};
pub use error::{Error, Exclusion, Result};
pub use moduli::{
    difference_decomposed, moduli_dimension, moduli_dimension_oracle, monotonic_scan,
    DifferenceReport, ModuliReport, ScanReport,
};
pub use multidegree::{compose, ComposedSpec, InvariantTuple, Multidegree};
pub use search::{find_pairs, verify_pair, PairReport, SearchKey, SearchParams};

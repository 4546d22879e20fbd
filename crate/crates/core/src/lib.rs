//! Exact fixed-point analysis for finite p-groups acting on partition
//! complexes.
//!
//! The unitary side works with orthogonal decompositions of `C^n` whose
//! coordinates live in a cyclotomic field, so every predicate is decided
//! exactly. The discrete side enumerates set partitions of `{1..n}` and
//! computes integral homology of fixed-point order complexes.

pub mod acceptance;
pub mod cyclonum;
pub mod discretia;
pub mod exactla;
pub mod lowdim;
pub mod matgroup;
pub mod orthopart;
pub mod repdecomp;
pub mod verdict;

pub use cyclonum::{CycError, CycNumber, Rational};
pub use exactla::{CMatrix, CSubspace, LinAlgError};
pub use matgroup::{AbstractQuotient, FiniteMatrixGroup, GroupError, TableGroup};
pub use orthopart::{OrthoPartition, PartitionError};
pub use verdict::{analyze, verify_witness, AnalysisConfig, AnalysisReport, Verdict};

/// Version tag written into every JSON document this crate produces.
pub const SCHEMA_VERSION: &str = "1";

//! The finite partition complex: proper nontrivial set partitions of
//! `{1..n}`, fixed points of permutation groups, and integral homology of
//! order complexes by Smith normal form.

pub mod complex;
pub mod partition;
pub mod perm;
pub mod snf;
pub mod sweep;

use thiserror::Error;

pub use complex::{homology, order_complex, reduced_homology, ChainComplex, HomologyGroup, HomologyResult, SimplicialComplex};
pub use partition::{PartitionPoset, SetPartition};
pub use perm::Perm;
pub use snf::{smith_normal_form, sparse_invariant_factors, SmithForm, SparseMatrix};
pub use sweep::{sweep, SweepReport, SweepRow, DEFAULT_SWEEP_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscreteError {
    #[error("n = {n} exceeds the sweep bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("n = {0} is too small; the partition poset needs n >= 2")]
    TooSmall(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

/// `P_n` with the fixed points of the group generated by `generators`.
pub fn fixed_point_homology(n: usize, generators: &[Perm]) -> HomologyResult {
    let poset = PartitionPoset::proper_nontrivial(n).fixed_subposet(generators);
    reduced_homology(&order_complex(&poset).chain_complex())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_complex_homology() {
        let h3 = fixed_point_homology(3, &[]);
        assert_eq!(h3.betti(0), 2);
        assert!(h3.groups.iter().filter(|g| g.degree != 0).all(HomologyGroup::is_zero));
        let h4 = fixed_point_homology(4, &[]);
        assert_eq!(h4.betti(1), 6);
        assert!(h4.groups.iter().filter(|g| g.degree != 1).all(HomologyGroup::is_zero));
        let h5 = fixed_point_homology(5, &[]);
        assert_eq!(h5.betti(2), 24);
        assert!(h5.groups.iter().filter(|g| g.degree != 2).all(HomologyGroup::is_zero));
    }

    #[test]
    fn conjugate_subgroups_have_equal_homology() {
        let a = Perm::parse_cycles("(1 2)(3 4)", 5).unwrap();
        let b = Perm::parse_cycles("(2 5)(1 3)", 5).unwrap();
        assert_eq!(fixed_point_homology(5, &[a]), fixed_point_homology(5, &[b]));
    }
}

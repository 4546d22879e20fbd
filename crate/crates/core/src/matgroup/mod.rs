//! Finite unitary matrix groups.
//!
//! [`FiniteMatrixGroup::generate`] closes a generating set by breadth-first
//! search over right multiplication by the generators. Elements are then
//! sorted into canonical matrix order, and the Cayley table is rebuilt from
//! the search tree without further matrix products, so every structural
//! question (center, Frattini subgroup, quotients) is answered on the table.

mod lift;
mod table;

use std::collections::HashMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::cyclonum::{lcm, CycError};
use crate::exactla::{CMatrix, LinAlgError};

pub use lift::{lift_order_p, OrderPLift};
pub use table::{AbstractQuotient, TableGroup};

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the closure cap {cap}")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not unitary")]
    NotUnitary { index: usize },
    #[error("a generating set needs at least one matrix")]
    EmptyGenerators,
    #[error("generators must be square matrices of one size: {0}")]
    ShapeMismatch(String),
    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { p: u64, order: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group is elementary abelian")]
    IsElementaryAbelian,
    #[error("group is trivial")]
    IsTrivial,
    #[error("A^p is not a scalar matrix of finite order")]
    NotProjectiveOrderP,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("internal consistency failure: {0} not found")]
    ConsistencyFailure(&'static str),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// A finite group of unitary `n×n` matrices over `Q(ζ_m)`.
#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    n: usize,
    conductor: u64,
    generators: Vec<CMatrix>,
    elements: Vec<CMatrix>,
    index: HashMap<CMatrix, usize>,
    identity: usize,
    /// `right[i][g]` is the index of `elements[i] * generators[g]`.
    right: Vec<Vec<u32>>,
    /// Search tree: `elements[i] = elements[parent] * generators[g]`.
    parent: Vec<Option<(usize, usize)>>,
    bfs_order: Vec<usize>,
    table: OnceLock<TableGroup>,
}

impl FiniteMatrixGroup {
    /// Closes `generators` under multiplication. Fails with
    /// [`GroupError::CapExceeded`] once more than `cap` elements appear.
    pub fn generate(generators: &[CMatrix], cap: usize) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::EmptyGenerators)?;
        let n = first.rows();
        if let Some(bad) = generators.iter().find(|g| !g.is_square() || g.rows() != n) {
            return Err(GroupError::ShapeMismatch(format!(
                "expected {n}x{n}, found {}x{}",
                bad.rows(),
                bad.cols()
            )));
        }
        let m = generators.iter().map(CMatrix::conductor).fold(1, lcm);
        let gens = generators.iter().map(|g| g.embed(m)).collect::<Result<Vec<_>, _>>()?;
        for (i, g) in gens.iter().enumerate() {
            if !g.is_unitary()? {
                return Err(GroupError::NotUnitary { index: i });
            }
        }

        let mut elements = vec![CMatrix::identity(n, m)];
        let mut index: HashMap<CMatrix, usize> = HashMap::from([(elements[0].clone(), 0)]);
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut parent = vec![None];
        let mut next = 0;
        while next < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (gi, g) in gens.iter().enumerate() {
                let y = elements[next].mul(g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::CapExceeded { cap });
                        }
                        let j = elements.len();
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push(Some((next, gi)));
                        j
                    }
                };
                row.push(j as u32);
            }
            right.push(row);
            next += 1;
        }

        // Re-index into canonical matrix order.
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
        let mut new_of_old = vec![0usize; elements.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let sorted: Vec<CMatrix> = order.iter().map(|&old| elements[old].clone()).collect();
        let right_sorted = order
            .iter()
            .map(|&old| right[old].iter().map(|&j| new_of_old[j as usize] as u32).collect())
            .collect();
        let parent_sorted = order
            .iter()
            .map(|&old| parent[old].map(|(p, g)| (new_of_old[p], g)))
            .collect();
        // BFS discovery order is a valid order for replaying the search tree.
        let bfs_order = (0..elements.len()).map(|old| new_of_old[old]).collect();
        let index = sorted.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();

        Ok(FiniteMatrixGroup {
            n,
            conductor: m,
            generators: gens,
            elements: sorted,
            index,
            identity: new_of_old[0],
            right: right_sorted,
            parent: parent_sorted,
            bfs_order,
            table: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CMatrix {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, a: &CMatrix) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Index of `elements[i] * generators[g]`.
    pub fn right_mul_generator(&self, i: usize, g: usize) -> usize {
        self.right[i][g] as usize
    }

    /// The Cayley table, built on first use.
    pub fn table(&self) -> &TableGroup {
        self.table.get_or_init(|| {
            let n = self.order();
            let mut rows = vec![vec![0u32; n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                for &j in &self.bfs_order {
                    row[j] = match self.parent[j] {
                        None => i as u32,
                        Some((p, g)) => self.right[row[p] as usize][g],
                    };
                }
            }
            TableGroup::from_table(rows).expect("closure produces a group table")
        })
    }

    pub fn exponent(&self) -> u64 {
        self.table().exponent()
    }

    pub fn is_abelian(&self) -> bool {
        // generators commuting pairwise is enough
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn center(&self) -> Vec<usize> {
        self.table().center()
    }

    /// Indices of the elements that are scalar matrices (the group ∩ S¹).
    pub fn scalar_subgroup(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.elements[i].as_scalar().is_some()).collect()
    }

    pub fn elements_of_order(&self, k: u64) -> Vec<usize> {
        self.table().elements_of_order(k)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.table().is_p_group(p)
    }

    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.table().is_elementary_abelian(p)
    }

    /// The subgroup on the given element indices, as a matrix group.
    pub fn subgroup(&self, indices: &[usize]) -> Result<FiniteMatrixGroup, GroupError> {
        let gens = self.table().generating_set(indices);
        let mats: Vec<CMatrix> = if gens.is_empty() {
            vec![self.elements[self.identity].clone()]
        } else {
            gens.iter().map(|&i| self.elements[i].clone()).collect()
        };
        FiniteMatrixGroup::generate(&mats, self.order().max(1))
    }

    /// `G^p[G,G]` as a matrix group.
    pub fn power_commutator_subgroup(&self, p: u64) -> Result<FiniteMatrixGroup, GroupError> {
        if !self.is_p_group(p) {
            return Err(GroupError::NotAPGroup { p, order: self.order() });
        }
        self.subgroup(&self.table().power_commutator_subgroup(p))
    }

    pub fn frattini_quotient(&self, p: u64) -> Result<AbstractQuotient, GroupError> {
        self.table().frattini_quotient(p)
    }

    /// Image in `PU(n)`: the quotient by the scalar subgroup.
    pub fn projective_image(&self) -> AbstractQuotient {
        self.table()
            .quotient(&self.scalar_subgroup())
            .expect("scalar matrices form a central subgroup")
    }

    pub fn is_projective_elementary_abelian(&self, p: u64) -> bool {
        self.projective_image().group().is_elementary_abelian(p)
    }

    /// The identity quotient, for applying quotient-level operations to the
    /// group itself.
    pub fn as_quotient(&self) -> AbstractQuotient {
        self.table().as_quotient()
    }

    /// The same group with entries written at conductor `m2`.
    pub fn embed(&self, m2: u64, cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
        let gens = self.generators.iter().map(|g| g.embed(m2)).collect::<Result<Vec<_>, _>>()?;
        FiniteMatrixGroup::generate(&gens, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclonum::CycNumber;

    fn i4() -> CycNumber {
        CycNumber::root_of_unity(4, 1)
    }

    fn tau(m: u64) -> CMatrix {
        CMatrix::from_ints(m, &[&[0, 1], &[1, 0]])
    }

    pub(crate) fn quaternion() -> Vec<CMatrix> {
        let i = i4();
        let a = CMatrix::diagonal(&[i.clone(), -i]).unwrap();
        let b = CMatrix::from_ints(4, &[&[0, -1], &[1, 0]]);
        vec![a, b]
    }

    fn d_and_tau() -> Vec<CMatrix> {
        vec![CMatrix::diagonal(&[CycNumber::one(4), i4()]).unwrap(), tau(4)]
    }

    #[test]
    fn closure_orders() {
        assert_eq!(FiniteMatrixGroup::generate(&[tau(1)], 100).unwrap().order(), 2);
        assert_eq!(FiniteMatrixGroup::generate(&quaternion(), 100).unwrap().order(), 8);
        assert_eq!(FiniteMatrixGroup::generate(&d_and_tau(), 100).unwrap().order(), 32);
    }

    #[test]
    fn cap_and_unitarity_errors() {
        assert_eq!(
            FiniteMatrixGroup::generate(&d_and_tau(), 10).unwrap_err(),
            GroupError::CapExceeded { cap: 10 }
        );
        let shear = CMatrix::from_ints(1, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            FiniteMatrixGroup::generate(&[tau(1), shear], 10).unwrap_err(),
            GroupError::NotUnitary { index: 1 }
        );
        assert_eq!(FiniteMatrixGroup::generate(&[], 10).unwrap_err(), GroupError::EmptyGenerators);
    }

    #[test]
    fn table_matches_matrix_products() {
        let g = FiniteMatrixGroup::generate(&d_and_tau(), 100).unwrap();
        let t = g.table();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(g.element(t.mul(a, b)), &g.element(a).mul(g.element(b)));
            }
        }
        assert_eq!(g.element(g.identity_index()), &CMatrix::identity(2, 4));
    }

    #[test]
    fn quaternion_center_and_frattini() {
        let q8 = FiniteMatrixGroup::generate(&quaternion(), 100).unwrap();
        let center: Vec<&CMatrix> = q8.center().iter().map(|&i| q8.element(i)).collect();
        let minus = CMatrix::scalar(2, &CycNumber::from_int(-1, 4));
        assert_eq!(center.len(), 2);
        assert!(center.contains(&&minus));
        let phi = q8.power_commutator_subgroup(2).unwrap();
        assert_eq!(phi.order(), 2);
        assert!(phi.index_of(&minus).is_some());
        let quot = q8.frattini_quotient(2).unwrap();
        assert_eq!(quot.order(), 4);
        assert!(quot.group().is_elementary_abelian(2));
        let v = q8.as_quotient().central_order_p_in_frattini_kernel(2).unwrap();
        assert_eq!(q8.element(v), &minus);
    }

    #[test]
    fn scalar_subgroup_of_d_and_tau() {
        let g = FiniteMatrixGroup::generate(&d_and_tau(), 100).unwrap();
        let scalars: Vec<CMatrix> = g.scalar_subgroup().iter().map(|&i| g.element(i).clone()).collect();
        assert_eq!(scalars.len(), 4);
        for k in 0..4 {
            assert!(scalars.contains(&CMatrix::scalar(2, &CycNumber::root_of_unity(4, k))));
        }
    }

    #[test]
    fn order_two_elements_of_swap_group() {
        let g = FiniteMatrixGroup::generate(&[tau(1)], 10).unwrap();
        let invol = g.elements_of_order(2);
        assert_eq!(invol.len(), 1);
        assert_eq!(g.element(invol[0]), &tau(1));
    }

    #[test]
    fn cyclic_four_power_commutator() {
        let a = CMatrix::diagonal(&[i4(), CycNumber::one(4)]).unwrap();
        let g = FiniteMatrixGroup::generate(std::slice::from_ref(&a), 10).unwrap();
        let sub = g.power_commutator_subgroup(2).unwrap();
        assert_eq!(sub.order(), 2);
        assert!(sub.index_of(&a.mul(&a)).is_some());
        assert_eq!(g.frattini_quotient(2).unwrap().order(), 2);
    }

    #[test]
    fn projective_images() {
        let q8 = FiniteMatrixGroup::generate(&quaternion(), 100).unwrap();
        let img = q8.projective_image();
        assert_eq!(img.order(), 4);
        assert!(q8.is_projective_elementary_abelian(2));

        let swap = FiniteMatrixGroup::generate(&[tau(1)], 10).unwrap();
        assert_eq!(swap.projective_image().order(), 2);
        assert!(swap.is_projective_elementary_abelian(2));

        let g = FiniteMatrixGroup::generate(&d_and_tau(), 100).unwrap();
        let img = g.projective_image();
        assert_eq!(img.order(), 8);
        assert!(!img.group().is_abelian());
        assert!(!g.is_projective_elementary_abelian(2));
        // the central order-2 element of D8 is the class of diag(1, -1)
        let v = img.central_order_p_in_frattini_kernel(2).unwrap();
        let rep = g.element(img.representative(v));
        let d2 = CMatrix::diagonal(&[CycNumber::one(4), CycNumber::from_int(-1, 4)]).unwrap();
        let same_class = img.coset_members(v).iter().any(|&i| g.element(i) == &d2);
        assert!(same_class, "representative {rep:?}");
    }
}

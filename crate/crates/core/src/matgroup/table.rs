//! Finite groups given by a full multiplication table.
//!
//! Element `i` of a [`TableGroup`] is just an index; subgroups are sorted
//! index lists. Both the structure of a matrix group and every quotient the
//! crate builds are expressed this way, so the group theory lives here once.

use std::collections::BTreeSet;

use super::GroupError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    table: Vec<Vec<u32>>,
    identity: usize,
    inverse: Vec<usize>,
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl TableGroup {
    /// Validates identity and inverses; associativity is the caller's
    /// responsibility (see [`TableGroup::check_associative`]).
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n)) {
            return Err(GroupError::InvalidTable("table is not a square array of element indices".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] as usize == x && table[x][e] as usize == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for (x, row) in table.iter().enumerate() {
            let y = row
                .iter()
                .position(|&v| v as usize == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {x} has no inverse")))?;
            inverse[x] = y;
        }
        Ok(TableGroup { table, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, crate::cyclonum::lcm)
    }

    /// Full associativity check; cubic in the order.
    pub fn check_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.commutes(a, b)))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.commutes(a, b))).collect()
    }

    pub fn elements_of_order(&self, k: u64) -> Vec<usize> {
        (0..self.order()).filter(|&a| self.element_order(a) == k).collect()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order(), p as usize)
    }

    /// Abelian and every non-identity element has order `p`.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.is_abelian() && (0..self.order()).all(|a| a == self.identity || self.element_order(a) == p)
    }

    /// The subgroup generated by `gens`, as a sorted index list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.contains(&self.identity) && subset.iter().all(|&a| subset.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let set: BTreeSet<usize> = subgroup.iter().copied().collect();
        (0..self.order()).all(|g| {
            subgroup
                .iter()
                .all(|&h| set.contains(&self.mul(self.mul(self.inv(g), h), g)))
        })
    }

    /// `G^p[G,G]`: the subgroup generated by all p-th powers and commutators.
    pub fn power_commutator_subgroup(&self, p: u64) -> Vec<usize> {
        let n = self.order();
        let mut gens: BTreeSet<usize> = (0..n).map(|a| self.pow(a, p)).collect();
        for a in 0..n {
            for b in 0..n {
                gens.insert(self.commutator(a, b));
            }
        }
        gens.remove(&self.identity);
        let gens: Vec<usize> = gens.into_iter().collect();
        self.generated(&gens)
    }

    /// A short generating set, chosen greedily in index order.
    pub fn generating_set(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = BTreeSet::from([self.identity]);
        for &x in subgroup {
            if !span.contains(&x) {
                gens.push(x);
                span = self.generated(&gens).into_iter().collect();
            }
        }
        gens
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest
    /// member, so the quotient inherits the element order of `self`.
    pub fn quotient(&self, normal: &[usize]) -> Result<AbstractQuotient, GroupError> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order();
        let mut projection = vec![usize::MAX; n];
        let mut section = Vec::new();
        for g in 0..n {
            if projection[g] != usize::MAX {
                continue;
            }
            let c = section.len();
            section.push(g);
            for &k in normal {
                projection[self.mul(g, k)] = c;
            }
        }
        let table = section
            .iter()
            .map(|&a| section.iter().map(|&b| projection[self.mul(a, b)] as u32).collect())
            .collect();
        let group = TableGroup::from_table(table)?;
        Ok(AbstractQuotient { group, projection, section })
    }

    /// Quotient by `G^p[G,G]`, the maximal elementary abelian p-quotient.
    pub fn frattini_quotient(&self, p: u64) -> Result<AbstractQuotient, GroupError> {
        if !self.is_p_group(p) {
            return Err(GroupError::NotAPGroup { p, order: self.order() });
        }
        self.quotient(&self.power_commutator_subgroup(p))
    }

    /// The identity quotient `G → G`.
    pub fn as_quotient(&self) -> AbstractQuotient {
        let n = self.order();
        AbstractQuotient { group: self.clone(), projection: (0..n).collect(), section: (0..n).collect() }
    }

    /// A central element of order `p` inside `G^p[G,G]`, the first one in
    /// element order. Requires a nontrivial p-group that is not elementary
    /// abelian; such an element then exists because a nontrivial normal
    /// subgroup of a finite p-group meets the center nontrivially.
    pub fn central_order_p_in_frattini_kernel(&self, p: u64) -> Result<usize, GroupError> {
        if self.is_trivial() {
            return Err(GroupError::IsTrivial);
        }
        if !self.is_p_group(p) {
            return Err(GroupError::NotAPGroup { p, order: self.order() });
        }
        if self.is_elementary_abelian(p) {
            return Err(GroupError::IsElementaryAbelian);
        }
        let frattini: BTreeSet<usize> = self.power_commutator_subgroup(p).into_iter().collect();
        let center = self.center();
        center
            .into_iter()
            .find(|a| frattini.contains(a) && self.element_order(*a) == p)
            .ok_or(GroupError::ConsistencyFailure("central element of order p in the Frattini subgroup"))
    }
}

/// A quotient group `G/K` with its projection and a coset section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractQuotient {
    group: TableGroup,
    projection: Vec<usize>,
    section: Vec<usize>,
}

impl AbstractQuotient {
    pub fn group(&self) -> &TableGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Coset index of a parent element.
    pub fn project(&self, parent_element: usize) -> usize {
        self.projection[parent_element]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// The chosen representative (smallest parent index) of a coset.
    pub fn representative(&self, coset: usize) -> usize {
        self.section[coset]
    }

    /// Parent elements lying in a coset.
    pub fn coset_members(&self, coset: usize) -> Vec<usize> {
        (0..self.projection.len()).filter(|&g| self.projection[g] == coset).collect()
    }

    /// Checks that the projection is a homomorphism from the parent table.
    pub fn is_homomorphism_from(&self, parent: &TableGroup) -> bool {
        let n = parent.order();
        n == self.projection.len()
            && (0..n).all(|a| {
                (0..n).all(|b| self.projection[parent.mul(a, b)] == self.group.mul(self.projection[a], self.projection[b]))
            })
    }

    pub fn central_order_p_in_frattini_kernel(&self, p: u64) -> Result<usize, GroupError> {
        self.group.central_order_p_in_frattini_kernel(p)
    }
}

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::complex::{order_complex, reduced_homology};
use super::partition::PartitionPoset;
use super::perm::Perm;
use super::DiscreteError;
use crate::cyclonum::is_prime;

pub const DEFAULT_SWEEP_BOUND: usize = 6;

/// `Σ_n` with its full multiplication table.
pub struct SymmetricGroup {
    elements: Vec<Perm>,
    /// `table[a * len + b]` is the index of `a ∘ b`.
    table: Vec<u16>,
    inverse: Vec<u16>,
    order: Vec<u64>,
    identity: usize,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        let elements = Perm::all(n);
        let index: HashMap<&Perm, u16> = elements.iter().enumerate().map(|(i, p)| (p, i as u16)).collect();
        let mut table = Vec::with_capacity(elements.len() * elements.len());
        for a in &elements {
            for b in &elements {
                table.push(index[&a.compose(b)]);
            }
        }
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let order = elements.iter().map(Perm::order).collect();
        SymmetricGroup { identity: index[&Perm::identity(n)] as usize, elements, table, inverse, order }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    /// Subgroup generated by element indices, as a sorted index list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    frontier.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn conjugate(&self, subgroup: &[usize], x: usize) -> Vec<usize> {
        let xi = self.inverse[x] as usize;
        let mut out: Vec<usize> = subgroup.iter().map(|&h| self.mul(self.mul(x, h), xi)).collect();
        out.sort_unstable();
        out
    }
}

fn is_power_of(mut k: usize, p: usize) -> bool {
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

/// A p-subgroup of `Σ_n` given by generators and its element indices.
#[derive(Debug, Clone)]
pub struct PSubgroup {
    pub generators: Vec<usize>,
    pub elements: Vec<usize>,
}

/// Representatives of the conjugacy classes of p-subgroups of `Σ_n`, in
/// breadth-first order from the trivial group. Every p-subgroup `P ≠ 1`
/// contains a subgroup `K` of index p, and a conjugate of `P` is reached
/// from the representative of `K`'s class by adding one element.
pub fn p_subgroup_classes(sym: &SymmetricGroup, p: u64) -> Vec<PSubgroup> {
    let p_elements: Vec<usize> = (0..sym.len())
        .filter(|&i| i != sym.identity && is_power_of(sym.order[i] as usize, p as usize))
        .collect();
    let trivial = PSubgroup { generators: Vec::new(), elements: vec![sym.identity] };
    let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.elements.clone()]);
    let mut reps = vec![trivial];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let base = reps[k].clone();
        for &g in &p_elements {
            if base.elements.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = base.generators.clone();
            gens.push(g);
            let elements = sym.closure(&gens);
            if !is_power_of(elements.len(), p as usize) || seen.contains(&elements) {
                continue;
            }
            for x in 0..sym.len() {
                seen.insert(sym.conjugate(&elements, x));
            }
            reps.push(PSubgroup { generators: gens, elements });
            queue.push_back(reps.len() - 1);
        }
    }
    reps
}

fn is_elementary_abelian(sym: &SymmetricGroup, s: &PSubgroup, p: u64) -> bool {
    s.elements.iter().all(|&x| x == sym.identity || sym.order[x] == p)
        && s.generators.iter().all(|&a| s.generators.iter().all(|&b| sym.mul(a, b) == sym.mul(b, a)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    /// Cycle notation, 1-based.
    pub subgroup_generators: Vec<String>,
    pub order: usize,
    pub elementary_abelian: bool,
    pub fixed_poset_size: usize,
    /// Reduced Betti numbers starting at degree -1.
    pub reduced_betti: Vec<u64>,
    /// Reduced torsion coefficients starting at degree -1.
    pub torsion: Vec<Vec<u64>>,
    pub acyclic: bool,
    /// Not acyclic implies elementary abelian.
    pub implication_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub p: u64,
    pub rows: Vec<SweepRow>,
    pub violations: usize,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "subgroup_generators,order,elementary_abelian,fixed_poset_size,reduced_betti,torsion,acyclic,implication_holds\n",
        );
        for r in &self.rows {
            let gens = if r.subgroup_generators.is_empty() { "()".to_string() } else { r.subgroup_generators.join(" ") };
            let betti: Vec<String> = r.reduced_betti.iter().map(u64::to_string).collect();
            let torsion: Vec<String> = r
                .torsion
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_empty())
                .map(|(i, t)| {
                    let fs: Vec<String> = t.iter().map(u64::to_string).collect();
                    format!("{}:{}", i as i64 - 1, fs.join("/"))
                })
                .collect();
            out.push_str(&format!(
                "\"{}\",{},{},{},{},{},{},{}\n",
                gens,
                r.order,
                r.elementary_abelian,
                r.fixed_poset_size,
                betti.join(" "),
                torsion.join(" "),
                r.acyclic,
                r.implication_holds
            ));
        }
        out
    }
}

/// Fixed-point homology of every p-subgroup of `Σ_n` up to conjugacy on the
/// poset of proper nontrivial partitions of `{1..n}`.
pub fn sweep(n: usize, p: u64, bound: usize) -> Result<SweepReport, DiscreteError> {
    if n > bound {
        return Err(DiscreteError::BoundExceeded { n, bound });
    }
    if n < 2 {
        return Err(DiscreteError::TooSmall(n));
    }
    if !is_prime(p) {
        return Err(DiscreteError::NotPrime(p));
    }
    let sym = SymmetricGroup::new(n);
    let poset = PartitionPoset::proper_nontrivial(n);
    let classes = p_subgroup_classes(&sym, p);
    let rows: Vec<SweepRow> = classes
        .par_iter()
        .map(|s| {
            let gens: Vec<Perm> = s.generators.iter().map(|&g| sym.element(g).clone()).collect();
            let fixed = poset.fixed_subposet(&gens);
            let h = reduced_homology(&order_complex(&fixed).chain_complex());
            let elementary = is_elementary_abelian(&sym, s, p);
            let acyclic = h.is_z_acyclic();
            SweepRow {
                subgroup_generators: gens.iter().map(ToString::to_string).collect(),
                order: s.elements.len(),
                elementary_abelian: elementary,
                fixed_poset_size: fixed.len(),
                reduced_betti: h.groups.iter().map(|g| g.betti).collect(),
                torsion: h.groups.iter().map(|g| g.torsion.clone()).collect(),
                acyclic,
                implication_holds: acyclic || elementary,
            }
        })
        .collect();
    let violations = rows.iter().filter(|r| !r.implication_holds).count();
    Ok(SweepReport { n, p, rows, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_count(n: usize, p: u64) -> usize {
        p_subgroup_classes(&SymmetricGroup::new(n), p).len()
    }

    /// Conjugacy classes of p-subgroups, counted by hand: Σ_3 has 1, ⟨(1 2)⟩
    /// for p = 2 and 1, ⟨(1 2 3)⟩ for p = 3. Σ_4 has 1, ⟨(12)⟩, ⟨(12)(34)⟩,
    /// ⟨(1234)⟩, ⟨(12),(34)⟩, ⟨(12)(34),(13)(24)⟩ and D_8 for p = 2.
    #[test]
    fn subgroup_class_counts() {
        assert_eq!(class_count(3, 2), 2);
        assert_eq!(class_count(3, 3), 2);
        assert_eq!(class_count(4, 2), 7);
        assert_eq!(class_count(4, 3), 2);
        assert_eq!(class_count(5, 2), 7);
        assert_eq!(class_count(5, 5), 2);
        assert_eq!(class_count(6, 2), 19);
        assert_eq!(class_count(6, 3), 4);
    }

    #[test]
    fn small_sweeps() {
        let r = sweep(3, 3, DEFAULT_SWEEP_BOUND).unwrap();
        let rot = r.rows.iter().find(|row| row.order == 3).unwrap();
        assert_eq!(rot.fixed_poset_size, 0);
        assert_eq!(rot.reduced_betti, vec![1]);
        assert!(!rot.acyclic && rot.elementary_abelian);

        let r = sweep(3, 2, DEFAULT_SWEEP_BOUND).unwrap();
        let swap = r.rows.iter().find(|row| row.order == 2).unwrap();
        assert_eq!(swap.fixed_poset_size, 1);
        assert!(swap.acyclic);

        let r = sweep(4, 2, DEFAULT_SWEEP_BOUND).unwrap();
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn bound_and_prime_checks() {
        assert_eq!(sweep(7, 2, 6).unwrap_err(), DiscreteError::BoundExceeded { n: 7, bound: 6 });
        assert_eq!(sweep(4, 4, 6).unwrap_err(), DiscreteError::NotPrime(4));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = sweep(3, 2, DEFAULT_SWEEP_BOUND).unwrap();
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 1 + r.rows.len());
        assert!(csv.starts_with("subgroup_generators,order"));
    }
}

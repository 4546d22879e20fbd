use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::perm::Perm;

/// A set partition of `{0..n}`, blocks stored as bit masks sorted by their
/// least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<u32>,
}

impl SetPartition {
    /// Builds a partition from blocks of 0-based points; `None` unless the
    /// blocks are nonempty, disjoint and cover `{0..n}`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut masks = Vec::with_capacity(blocks.len());
        let mut seen = 0u32;
        for b in blocks {
            let mut m = 0u32;
            for &i in b {
                if i >= n || (seen | m) & (1 << i) != 0 {
                    return None;
                }
                m |= 1 << i;
            }
            if m == 0 {
                return None;
            }
            seen |= m;
            masks.push(m);
        }
        (seen.count_ones() as usize == n).then(|| Self::from_masks(n, masks))
    }

    fn from_masks(n: usize, mut blocks: Vec<u32>) -> Self {
        blocks.sort_by_key(|m| m.trailing_zeros());
        SetPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_masks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&m| (0..self.n).filter(|i| m & (1 << i) != 0).collect()).collect()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// At least two blocks and at least one block with two or more points.
    pub fn is_proper_nontrivial(&self) -> bool {
        self.blocks.len() >= 2 && self.blocks.len() < self.n
    }

    /// Every block of `self` lies in a block of `coarser`.
    pub fn refines(&self, coarser: &SetPartition) -> bool {
        self.blocks.iter().all(|&b| coarser.blocks.iter().any(|&c| b & c == b))
    }

    pub fn act(&self, g: &Perm) -> SetPartition {
        Self::from_masks(self.n, self.blocks.iter().map(|&b| g.apply_mask(b)).collect())
    }

    pub fn is_fixed_by(&self, g: &Perm) -> bool {
        self.blocks.iter().all(|&b| {
            let img = g.apply_mask(b);
            self.blocks.contains(&img)
        })
    }

    /// All set partitions of `{0..n}`, by restricted growth strings.
    pub fn all(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
            let n = rgs.len();
            if i == n {
                let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
                let mut masks = vec![0u32; k];
                for (pt, &b) in rgs.iter().enumerate() {
                    masks[b] |= 1 << pt;
                }
                out.push(SetPartition::from_masks(n, masks));
                return;
            }
            for b in 0..=max.min(i) {
                rgs[i] = b;
                rec(i + 1, if b == max { max + 1 } else { max }, rgs, out);
            }
        }
        if n == 0 {
            return vec![SetPartition { n: 0, blocks: Vec::new() }];
        }
        rec(1, 1, &mut rgs, &mut out);
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n >= 10 { "," } else { "" };
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite poset of set partitions under refinement. Elements are sorted
/// by decreasing block count, so the index order is a linear extension and
/// everything strictly coarser than element `i` has an index above `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPoset {
    n: usize,
    elements: Vec<SetPartition>,
    /// `above[i]`: indices of elements strictly coarser than `i`, ascending.
    above: Vec<Vec<u32>>,
}

impl PartitionPoset {
    /// `P_n`: proper nontrivial partitions of `{1..n}` under coarsening.
    pub fn proper_nontrivial(n: usize) -> Self {
        let elements = SetPartition::all(n).into_iter().filter(SetPartition::is_proper_nontrivial).collect();
        Self::from_elements(n, elements)
    }

    fn from_elements(n: usize, mut elements: Vec<SetPartition>) -> Self {
        elements.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
        let above = (0..elements.len())
            .map(|i| {
                ((i + 1)..elements.len())
                    .filter(|&j| elements[j].num_blocks() < elements[i].num_blocks() && elements[i].refines(&elements[j]))
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        PartitionPoset { n, elements, above }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    /// Strictly coarser elements of `i`.
    pub fn above(&self, i: usize) -> &[u32] {
        &self.above[i]
    }

    pub fn less_than(&self, i: usize, j: usize) -> bool {
        self.above[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn index_of(&self, x: &SetPartition) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    /// The subposet of partitions whose block set every generator preserves.
    pub fn fixed_subposet(&self, generators: &[Perm]) -> PartitionPoset {
        let keep: Vec<usize> =
            (0..self.len()).filter(|&i| generators.iter().all(|g| self.elements[i].is_fixed_by(g))).collect();
        let new_index: HashMap<usize, u32> = keep.iter().enumerate().map(|(k, &i)| (i, k as u32)).collect();
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let above = keep
            .iter()
            .map(|&i| self.above[i].iter().filter_map(|j| new_index.get(&(*j as usize)).copied()).collect())
            .collect();
        PartitionPoset { n: self.n, elements, above }
    }

    /// Number of order relations `x < y`.
    pub fn num_relations(&self) -> usize {
        self.above.iter().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bell numbers.
    #[test]
    fn counts() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(SetPartition::all(n).len(), b);
        }
        assert_eq!(PartitionPoset::proper_nontrivial(3).len(), 3);
        assert_eq!(PartitionPoset::proper_nontrivial(4).len(), 13);
        assert_eq!(PartitionPoset::proper_nontrivial(2).len(), 0);
    }

    #[test]
    fn p3_has_no_relations() {
        let p = PartitionPoset::proper_nontrivial(3);
        assert_eq!(p.num_relations(), 0);
        let names: Vec<String> = p.elements().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1|23", "12|3", "13|2"]);
    }

    #[test]
    fn fixed_subposets_of_p3() {
        let p = PartitionPoset::proper_nontrivial(3);
        let swap = Perm::parse_cycles("(1 2)", 3).unwrap();
        let fixed = p.fixed_subposet(&[swap]);
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed.elements()[0].to_string(), "12|3");
        let rot = Perm::parse_cycles("(1 2 3)", 3).unwrap();
        assert!(p.fixed_subposet(&[rot]).is_empty());
    }

    #[test]
    fn refinement_and_action() {
        let a = SetPartition::from_blocks(4, &[vec![0], vec![1], vec![2, 3]]).unwrap();
        let b = SetPartition::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(a.refines(&b) && !b.refines(&a));
        let g = Perm::parse_cycles("(1 3)(2 4)", 4).unwrap();
        assert!(b.is_fixed_by(&g));
        assert_eq!(b.act(&g), SetPartition::from_blocks(4, &[vec![2, 3], vec![0, 1]]).unwrap());
        assert!(!a.is_fixed_by(&g));
        assert!(SetPartition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_none());
    }

    #[test]
    fn p4_relations() {
        let p = PartitionPoset::proper_nontrivial(4);
        // the 6 atoms (a single pair) each lie below 3 coatoms
        assert_eq!(p.num_relations(), 6 * 3);
    }
}

//! Finite strict partial orders on dense indices `0..size`.
//!
//! The relation is stored transitively closed as one bit row per element
//! (`above[a]` holds every `b` with `a < b`). Cover relations, levels and
//! the Hasse diagram are derived on demand.

mod count;
mod iso;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::PosetError;

pub use count::{count_linear_extensions, count_nonstrict_maps, count_strict_maps};
pub use iso::is_isomorphic;

/// Size bounds for the brute-force oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest poset whose order polynomial is interpolated from map counts.
    pub series_size: usize,
    /// Largest poset handed to the down-set linear-extension counter.
    pub linext_size: usize,
    /// Largest poset handed to the isomorphism search.
    pub iso_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            series_size: 10,
            linext_size: 10,
            iso_size: 12,
        }
    }
}

/// Finite poset with elements `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    above: Vec<FixedBitSet>,
}

/// Cover relations and first Betti number of the undirected Hasse graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseData {
    pub covers: Vec<(usize, usize)>,
    pub components: usize,
    pub betti: usize,
}

/// Serialized form of a poset: element count plus cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub size: usize,
    pub covers: Vec<[usize; 2]>,
}

impl Poset {
    /// Builds a poset from arbitrary generating pairs `(a, b)` meaning `a < b`.
    /// The transitive closure is taken; reflexive pairs and cycles are rejected.
    pub fn from_relations(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PosetError> {
        if size == 0 {
            return Err(PosetError::EmptyPoset);
        }
        let mut above = vec![FixedBitSet::with_capacity(size); size];
        for (a, b) in pairs {
            for index in [a, b] {
                if index >= size {
                    return Err(PosetError::IndexOutOfRange { index, size });
                }
            }
            if a == b {
                return Err(PosetError::Reflexive(a));
            }
            above[a].insert(b);
        }
        // Warshall closure over bit rows.
        for k in 0..size {
            let row_k = above[k].clone();
            for row in above.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if let Some(a) = (0..size).find(|&a| above[a].contains(a)) {
            return Err(PosetError::Cycle(a));
        }
        Ok(Self { size, above })
    }

    /// Internal constructor for relations already known to be a closed strict order.
    fn from_closed(size: usize, above: Vec<FixedBitSet>) -> Self {
        debug_assert_eq!(above.len(), size);
        Self { size, above }
    }

    /// The total order `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::EmptyChain);
        }
        let above = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert_range(a + 1..n);
                row
            })
            .collect();
        Ok(Self::from_closed(n, above))
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::EmptyPoset);
        }
        Ok(Self::from_closed(n, vec![FixedBitSet::with_capacity(n); n]))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// All pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|a| self.above[a].ones().map(move |b| (a, b)))
            .collect()
    }

    pub(crate) fn above_row(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// Elements strictly below `b`.
    pub fn below(&self, b: usize) -> Vec<usize> {
        (0..self.size).filter(|&a| self.less(a, b)).collect()
    }

    pub fn is_antichain(&self) -> bool {
        self.above.iter().all(|row| row.count_ones(..) == 0)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&b| (0..self.size).all(|a| !self.less(a, b)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&a| self.above[a].count_ones(..) == 0)
            .collect()
    }

    pub fn has_unique_min_and_max(&self) -> bool {
        self.minimal_elements().len() == 1 && self.maximal_elements().len() == 1
    }

    /// Ordinal sum: every element of `self` below every element of `other`.
    pub fn concat(&self, other: &Poset) -> Poset {
        let n = self.size + other.size;
        let mut above = Vec::with_capacity(n);
        for row in &self.above {
            let mut grown = FixedBitSet::with_capacity(n);
            grown.extend(row.ones());
            grown.insert_range(self.size..n);
            above.push(grown);
        }
        for row in &other.above {
            let mut grown = FixedBitSet::with_capacity(n);
            grown.extend(row.ones().map(|b| b + self.size));
            above.push(grown);
        }
        Poset::from_closed(n, above)
    }

    /// Side-by-side union with no relations across the two parts.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let n = self.size + other.size;
        let mut above = Vec::with_capacity(n);
        for row in &self.above {
            let mut grown = FixedBitSet::with_capacity(n);
            grown.extend(row.ones());
            above.push(grown);
        }
        for row in &other.above {
            let mut grown = FixedBitSet::with_capacity(n);
            grown.extend(row.ones().map(|b| b + self.size));
            above.push(grown);
        }
        Poset::from_closed(n, above)
    }

    /// `c1 * (c1 ⊔ X) * c1`: new minimum, a handle element, `X`, new maximum.
    ///
    /// Element layout: 0 is the new minimum, 1 the handle, `2..2+|X|` the
    /// copy of `X`, and the last index the new maximum.
    pub fn d_handle(&self) -> Poset {
        let point = Poset::singleton();
        point.concat(&point.disjoint_union(self)).concat(&point)
    }

    pub(crate) fn singleton() -> Poset {
        Poset::from_closed(1, vec![FixedBitSet::with_capacity(1)])
    }

    /// Replaces the i-th point of `base` by `blocks[i]`; points of different
    /// blocks compare as their base points do.
    pub fn lex_sum(base: &Poset, blocks: &[Poset]) -> Result<Poset, PosetError> {
        if blocks.len() != base.size {
            return Err(PosetError::BlockCountMismatch {
                expected: base.size,
                actual: blocks.len(),
            });
        }
        let offsets: Vec<usize> = blocks
            .iter()
            .scan(0, |acc, block| {
                let start = *acc;
                *acc += block.size;
                Some(start)
            })
            .collect();
        let n: usize = blocks.iter().map(Poset::size).sum();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (i, block) in blocks.iter().enumerate() {
            for a in 0..block.size {
                let row = &mut above[offsets[i] + a];
                row.extend(block.above[a].ones().map(|b| offsets[i] + b));
                for j in base.above[i].ones() {
                    row.insert_range(offsets[j]..offsets[j] + blocks[j].size);
                }
            }
        }
        Ok(Poset::from_closed(n, above))
    }

    /// Number of elements in a longest chain ending at each element.
    pub fn levels(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut level = vec![1; self.size];
        for &b in &order {
            level[b] = 1 + self.below(b).iter().map(|&a| level[a]).max().unwrap_or(0);
        }
        level
    }

    /// Number of elements strictly above each element along a longest chain.
    pub(crate) fn heights_above(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut height = vec![0; self.size];
        for &a in order.iter().rev() {
            height[a] = self.above[a]
                .ones()
                .map(|b| height[b] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    /// A linear extension: elements sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut down = vec![0usize; self.size];
        for row in &self.above {
            for b in row.ones() {
                down[b] += 1;
            }
        }
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&a| (down[a], a));
        order
    }

    /// Cardinality of a maximum chain.
    pub fn longest_chain(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0)
    }

    /// Cover relations, component count and first Betti number.
    pub fn hasse(&self) -> HasseData {
        let covers = self.covers();
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.size;
        for &(a, b) in &covers {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        let betti = covers.len() + components - self.size;
        HasseData {
            covers,
            components,
            betti,
        }
    }

    /// Pairs `a < b` with no element strictly between them.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in self.above[a].ones() {
                let between = self.above[a].ones().any(|c| self.less(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            size: self.size,
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Poset, PosetError> {
        Poset::from_relations(json.size, json.covers.iter().map(|&[a, b]| (a, b)))
    }

    /// Graphviz digraph of the cover relations, drawn left to right.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=LR;\n  node [shape=circle];\n");
        for a in 0..self.size {
            let _ = writeln!(out, "  {a};");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  {a} -> {b};");
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("size", &self.size)
            .field("covers", &self.covers())
            .finish()
    }
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PosetJson::deserialize(deserializer)?;
        Poset::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// Every labeled poset on `n` elements (exponential; intended for `n <= 4`).
pub fn all_labeled_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let Ok(poset) = Poset::from_relations(n, chosen.iter().copied()) else {
            continue;
        };
        // Only closed relation sets are kept so each poset appears once.
        if poset.relations().len() == chosen.len() && seen.insert(poset.relations()) {
            out.push(poset);
        }
    }
    out
}

/// One representative per isomorphism class of posets on `n` elements.
pub fn unlabeled_posets(n: usize) -> Vec<Poset> {
    let limits = Limits::default();
    let mut reps: Vec<Poset> = Vec::new();
    for poset in all_labeled_posets(n) {
        let known = reps
            .iter()
            .any(|r| is_isomorphic(r, &poset, &limits).expect("within iso bound"));
        if !known {
            reps.push(poset);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Poset {
        Poset::chain(n).unwrap()
    }

    #[test]
    fn chain_relations() {
        assert_eq!(c(1).relations(), vec![]);
        assert_eq!(c(3).relations(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(Poset::chain(0), Err(PosetError::EmptyChain));
    }

    #[test]
    fn concat_of_chains_is_a_chain() {
        assert_eq!(c(2).concat(&c(2)), c(4));
        assert_eq!(c(1).concat(&c(1)), c(2));
        assert_eq!(c(2).concat(&c(3)), c(5));
    }

    #[test]
    fn longest_chain_adds_under_concat() {
        let x = c(1).d_handle();
        let y = c(2);
        assert_eq!(x.longest_chain(), 3);
        assert_eq!(x.concat(&y).longest_chain(), 5);
    }

    #[test]
    fn disjoint_union_of_points_is_antichain() {
        let u = c(1).disjoint_union(&c(1));
        assert!(u.is_antichain());
        assert_eq!(u, Poset::antichain(2).unwrap());
    }

    #[test]
    fn d_handle_of_point_is_diamond() {
        let d = c(1).d_handle();
        assert_eq!(d.size(), 4);
        assert_eq!(d.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(d.hasse().betti, 1);
        assert_eq!(d.longest_chain(), 3);
        let d3 = c(3).d_handle();
        assert_eq!((d3.size(), d3.longest_chain()), (6, 5));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(c(4).hasse().betti, 0);
        assert_eq!(c(1).d_handle().d_handle().hasse().betti, 2);
        let two = Poset::antichain(2).unwrap().hasse();
        assert_eq!((two.components, two.betti), (2, 0));
    }

    #[test]
    fn relation_validation() {
        assert_eq!(
            Poset::from_relations(2, [(0, 0)]),
            Err(PosetError::Reflexive(0))
        );
        assert!(matches!(
            Poset::from_relations(3, [(0, 1), (1, 2), (2, 0)]),
            Err(PosetError::Cycle(_))
        ));
        assert_eq!(
            Poset::from_relations(2, [(0, 5)]),
            Err(PosetError::IndexOutOfRange { index: 5, size: 2 })
        );
        assert_eq!(Poset::from_relations(0, []), Err(PosetError::EmptyPoset));
    }

    #[test]
    fn closure_of_covers_reproduces_relation() {
        let x = c(2).d_handle().concat(&c(1).d_handle());
        let rebuilt = Poset::from_relations(x.size(), x.covers()).unwrap();
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn lex_sum_rejects_length_mismatch() {
        assert_eq!(
            Poset::lex_sum(&c(2), &[c(1)]),
            Err(PosetError::BlockCountMismatch {
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn lex_sum_along_chain_is_concat() {
        let x = c(1).d_handle();
        let y = Poset::antichain(2).unwrap();
        assert_eq!(
            Poset::lex_sum(&c(2), &[x.clone(), y.clone()]).unwrap(),
            x.concat(&y)
        );
    }

    #[test]
    fn json_round_trip() {
        let x = c(1).d_handle().concat(&c(2));
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(
            text,
            r#"{"size":6,"covers":[[0,1],[0,2],[1,3],[2,3],[3,4],[4,5]]}"#
        );
        let back: Poset = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn dot_export_lists_covers() {
        let dot = c(2).to_dot();
        assert!(dot.contains("rankdir=LR;"));
        assert_eq!(dot.matches("->").count(), 1);
        assert_eq!(c(1).d_handle().to_dot().matches("->").count(), 4);
    }

    #[test]
    fn small_poset_census() {
        // Labeled and unlabeled counts of posets on 1..4 points (OEIS A001035, A000112).
        let labeled: Vec<usize> = (1..=4).map(|n| all_labeled_posets(n).len()).collect();
        assert_eq!(labeled, vec![1, 3, 19, 219]);
        let unlabeled: Vec<usize> = (1..=4).map(|n| unlabeled_posets(n).len()).collect();
        assert_eq!(unlabeled, vec![1, 2, 5, 16]);
    }
}

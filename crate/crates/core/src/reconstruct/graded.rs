//! Order-only analysis of a Boolean-subalgebra poset: grading, maximal and
//! sub-maximal detection, spikedness, and minimal spiked extensions of
//! two-dimensional nodes.

use fixedbitset::FixedBitSet;

use super::ReconstructError;
use crate::poset::{AbstractPoset, NodeId};

/// Classification of a two-dimensional node by what lies above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneCase {
    /// Maximal: both generators are atoms.
    Maximal,
    /// Below a maximal three-dimensional node: an atom and a join of two atoms.
    MaximalParent,
    /// Every four-dimensional node above it holds exactly three
    /// three-dimensional nodes above it: one generator is an atom.
    AtomicGenerator,
    /// Neither generator is an atom.
    NoAtomicGenerator,
}

impl PlaneCase {
    pub fn name(self) -> &'static str {
        match self {
            PlaneCase::Maximal => "i",
            PlaneCase::MaximalParent => "ii",
            PlaneCase::AtomicGenerator => "iii-atomic",
            PlaneCase::NoAtomicGenerator => "iii-nonatomic",
        }
    }
}

/// Which construction of the minimal spiked extensions applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupCase {
    /// Not spiked: minimal spiked nodes above.
    A,
    /// Spiked, not sub-maximal: maximal nodes above, plus the node itself.
    B,
    /// Spiked and sub-maximal: as in `B`.
    C,
    /// Maximal: just the node itself.
    D,
}

impl SupCase {
    pub fn name(self) -> &'static str {
        match self {
            SupCase::A => "a",
            SupCase::B => "b",
            SupCase::C => "c",
            SupCase::D => "d",
        }
    }
}

/// Minimal spiked extensions `M_V` of a two-dimensional node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupSet {
    pub case: SupCase,
    /// Ascending node ids.
    pub members: Vec<NodeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeProfile {
    pub node: NodeId,
    pub dimension: usize,
    pub is_maximal: bool,
    pub is_sub_mbsa: bool,
    pub is_spiked: bool,
    pub plane_case: Option<PlaneCase>,
}

/// A poset that has passed the grading check, with its dimension function
/// and reachability rows.
#[derive(Clone, Debug)]
pub struct GradedPoset<'a> {
    poset: &'a AbstractPoset,
    dims: Vec<usize>,
    up: Vec<FixedBitSet>,
    maximal: FixedBitSet,
    bottom: NodeId,
}

impl<'a> GradedPoset<'a> {
    /// Assigns each node `1 + (longest chain from the minimum)` and checks
    /// that every cover raises this by exactly one.
    pub fn grade(poset: &'a AbstractPoset) -> Result<Self, ReconstructError> {
        let n = poset.size();
        if n == 0 {
            return Err(ReconstructError::EmptyPoset);
        }
        let minima: Vec<NodeId> = poset.nodes().filter(|&v| poset.lower_covers(v).is_empty()).collect();
        if minima.len() != 1 {
            return Err(ReconstructError::NoUniqueMinimum(minima));
        }
        let order = poset.topological_order().expect("validated poset");
        let mut dims = vec![1usize; n];
        for &v in &order {
            for &w in poset.upper_covers(v) {
                dims[w.index()] = dims[w.index()].max(dims[v.index()] + 1);
            }
        }
        for &(a, b) in poset.covers() {
            if dims[b.index()] != dims[a.index()] + 1 {
                return Err(ReconstructError::NotGraded { lower: a, upper: b });
            }
        }
        let mut maximal = FixedBitSet::with_capacity(n);
        for v in poset.nodes().filter(|&v| poset.upper_covers(v).is_empty()) {
            maximal.insert(v.index());
        }
        Ok(GradedPoset { poset, dims, up: poset.up_sets(), maximal, bottom: minima[0] })
    }

    pub fn poset(&self) -> &AbstractPoset {
        self.poset
    }

    pub fn bottom(&self) -> NodeId {
        self.bottom
    }

    pub fn dimension(&self, v: NodeId) -> usize {
        self.dims[v.index()]
    }

    pub fn dimensions(&self) -> &[usize] {
        &self.dims
    }

    pub fn max_dimension(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    /// `v <= w`.
    #[inline]
    pub fn leq(&self, v: NodeId, w: NodeId) -> bool {
        self.up[v.index()].contains(w.index())
    }

    pub fn up_set(&self, v: NodeId) -> &FixedBitSet {
        &self.up[v.index()]
    }

    pub fn maximal_nodes(&self) -> &FixedBitSet {
        &self.maximal
    }

    pub fn nodes_of_dimension(&self, d: usize) -> impl Iterator<Item = NodeId> + '_ {
        self.poset.nodes().filter(move |&v| self.dims[v.index()] == d)
    }

    pub fn detect_mbsa(&self, v: NodeId) -> bool {
        self.maximal.contains(v.index())
    }

    /// Non-maximal, and every successor is maximal: the one non-atom
    /// generator splits only into atoms.
    pub fn detect_sub_mbsa(&self, v: NodeId) -> bool {
        let succ = self.poset.upper_covers(v);
        !succ.is_empty() && succ.iter().all(|&s| self.detect_mbsa(s))
    }

    /// For each double successor `D` of `v`, the number of successors of
    /// `v` that `D` covers.
    pub fn successor_counts(&self, v: NodeId) -> Vec<(NodeId, usize)> {
        let succ = self.poset.upper_covers(v);
        let mut doubles: Vec<NodeId> = succ
            .iter()
            .flat_map(|&s| self.poset.upper_covers(s).iter().copied())
            .collect();
        doubles.sort_unstable();
        doubles.dedup();
        doubles
            .into_iter()
            .map(|d| {
                let lower = self.poset.lower_covers(d);
                (d, succ.iter().filter(|s| lower.contains(s)).count())
            })
            .collect()
    }

    /// Maximal and sub-maximal nodes are spiked by definition; otherwise a
    /// node is spiked iff every double successor contains exactly three of
    /// its successors.
    pub fn detect_spiked(&self, v: NodeId) -> bool {
        if self.detect_mbsa(v) || self.detect_sub_mbsa(v) {
            return true;
        }
        self.successor_counts(v).iter().all(|&(_, c)| c == 3)
    }

    /// Case analysis of a two-dimensional node, read directly off the
    /// three- and four-dimensional nodes above it.
    pub fn plane_case(&self, v: NodeId) -> Option<PlaneCase> {
        if self.dimension(v) != 2 {
            return None;
        }
        if self.detect_mbsa(v) {
            return Some(PlaneCase::Maximal);
        }
        let above = &self.up[v.index()];
        let threes: Vec<NodeId> = above.ones().map(NodeId::new).filter(|&w| self.dimension(w) == 3).collect();
        if threes.iter().any(|&w| self.detect_mbsa(w)) {
            return Some(PlaneCase::MaximalParent);
        }
        let atomic = above
            .ones()
            .map(NodeId::new)
            .filter(|&w| self.dimension(w) == 4)
            .all(|w| threes.iter().filter(|&&t| self.leq(t, w)).count() == 3);
        Some(if atomic { PlaneCase::AtomicGenerator } else { PlaneCase::NoAtomicGenerator })
    }

    pub fn profile(&self, v: NodeId) -> NodeProfile {
        NodeProfile {
            node: v,
            dimension: self.dimension(v),
            is_maximal: self.detect_mbsa(v),
            is_sub_mbsa: self.detect_sub_mbsa(v),
            is_spiked: self.detect_spiked(v),
            plane_case: self.plane_case(v),
        }
    }

    pub fn minimal_spiked_supbsas(&self, v: NodeId) -> Result<SupSet, ReconstructError> {
        if self.dimension(v) != 2 {
            return Err(ReconstructError::NotTwoDimensional(v));
        }
        if self.detect_mbsa(v) {
            return Ok(SupSet { case: SupCase::D, members: vec![v] });
        }
        let above = &self.up[v.index()];
        if self.detect_spiked(v) {
            let case = if self.detect_sub_mbsa(v) { SupCase::C } else { SupCase::B };
            let mut members: Vec<NodeId> = above.intersection(&self.maximal).map(NodeId::new).collect();
            members.push(v);
            members.sort_unstable();
            return Ok(SupSet { case, members });
        }
        let spiked: Vec<NodeId> = above
            .ones()
            .map(NodeId::new)
            .filter(|&w| w != v && self.detect_spiked(w))
            .collect();
        let members = spiked
            .iter()
            .copied()
            .filter(|&w| !spiked.iter().any(|&t| t != w && self.leq(t, w)))
            .collect();
        Ok(SupSet { case: SupCase::A, members })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_has_dimension_one() {
        let p = AbstractPoset::new(1, []).unwrap();
        let g = GradedPoset::grade(&p).unwrap();
        assert_eq!(g.dimension(NodeId(0)), 1);
        assert!(g.detect_mbsa(NodeId(0)));
        assert!(g.detect_spiked(NodeId(0)));
    }

    #[test]
    fn unequal_chains_are_rejected() {
        // 0 < 1 < 2 < 4 and 0 < 3 < 4
        let p = AbstractPoset::new(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(matches!(
            GradedPoset::grade(&p),
            Err(ReconstructError::NotGraded { .. })
        ));
    }

    #[test]
    fn two_minima_are_rejected() {
        let p = AbstractPoset::new(3, [(0, 2), (1, 2)]).unwrap();
        assert!(matches!(GradedPoset::grade(&p), Err(ReconstructError::NoUniqueMinimum(_))));
    }

    #[test]
    fn supsets_need_two_dimensional_nodes() {
        let p = AbstractPoset::new(2, [(0, 1)]).unwrap();
        let g = GradedPoset::grade(&p).unwrap();
        assert_eq!(g.minimal_spiked_supbsas(NodeId(0)), Err(ReconstructError::NotTwoDimensional(NodeId(0))));
        let d = g.minimal_spiked_supbsas(NodeId(1)).unwrap();
        assert_eq!(d, SupSet { case: SupCase::D, members: vec![NodeId(1)] });
    }
}

//! Boolean subalgebras of a finite orthomodular lattice and their inclusion
//! poset.
//!
//! In a finite OML every Boolean subalgebra is generated by its atoms, which
//! form a family of pairwise orthogonal nonzero elements joining to `1`. We
//! therefore enumerate these orthopartitions of `1` and identify each
//! subalgebra with its generating family.

use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{Elem, Lattice};
use crate::poset::{anonymize, Anonymized, AbstractPoset, NodeId};

/// Default cap on the number of partial families visited by the search.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

/// Subalgebras with more generators than this are not expanded to element sets.
const MAX_DIMENSION: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsaError {
    #[error("enumeration budget of {limit} partial states exhausted")]
    Budget { limit: usize },
    #[error("subalgebra of dimension {0} is too large to expand")]
    TooLarge(usize),
}

/// Pairwise orthogonal nonzero elements with join `1`, sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrthoPartition {
    blocks: Vec<Elem>,
}

impl OrthoPartition {
    /// Checks the defining properties; `None` if `blocks` is not an
    /// orthopartition of `1` in `l`.
    pub fn new(l: &Lattice, mut blocks: Vec<Elem>) -> Option<Self> {
        blocks.sort_unstable();
        let distinct = blocks.windows(2).all(|w| w[0] != w[1]);
        let nonzero = blocks.iter().all(|&b| b != l.bottom());
        let orthogonal = blocks
            .iter()
            .enumerate()
            .all(|(i, &a)| blocks[i + 1..].iter().all(|&b| l.orthogonal(a, b)));
        let covers = l.join_all(blocks.iter().copied()) == l.top();
        (distinct && nonzero && orthogonal && covers && !blocks.is_empty()).then_some(OrthoPartition { blocks })
    }

    pub fn blocks(&self) -> &[Elem] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        self.blocks.len()
    }
}

/// Lattice-side facts about one subalgebra. Never shown to the
/// reconstruction; used for differential testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundTruth {
    pub is_mbsa: bool,
    pub is_sub_mbsa: bool,
    pub is_spiked: bool,
    /// The unique non-atom generator of a spiked, non-maximal subalgebra.
    pub leading: Option<Elem>,
}

/// The inclusion poset of all Boolean subalgebras, in canonical node order
/// (by dimension, then by sorted generator ids). Node 0 is the trivial
/// subalgebra `{0, 1}`.
#[derive(Clone, Debug)]
pub struct BsaPoset {
    nodes: Vec<OrthoPartition>,
    elements: Vec<FixedBitSet>,
    poset: AbstractPoset,
    truth: Vec<GroundTruth>,
}

impl BsaPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, v: NodeId) -> &OrthoPartition {
        &self.nodes[v.index()]
    }

    pub fn nodes(&self) -> &[OrthoPartition] {
        &self.nodes
    }

    pub fn dimension(&self, v: NodeId) -> usize {
        self.nodes[v.index()].dimension()
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.nodes.iter().map(OrthoPartition::dimension).collect()
    }

    /// Element set of the subalgebra at `v`.
    pub fn elements(&self, v: NodeId) -> &FixedBitSet {
        &self.elements[v.index()]
    }

    /// Inclusion covers over canonical node ids (annotations stripped).
    pub fn poset(&self) -> &AbstractPoset {
        &self.poset
    }

    pub fn truth(&self, v: NodeId) -> GroundTruth {
        self.truth[v.index()]
    }

    pub fn anonymize(&self, seed: u64) -> Anonymized {
        anonymize(&self.poset, seed)
    }

    /// Subset test on element sets.
    pub fn includes(&self, v: NodeId, w: NodeId) -> bool {
        self.elements[v.index()].is_subset(&self.elements[w.index()])
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub budget: usize,
    pub parallel: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { budget: DEFAULT_NODE_BUDGET, parallel: true }
    }
}

/// The `2^dim` joins of sub-families of the generators.
pub fn subalgebra_elements(l: &Lattice, p: &OrthoPartition) -> Result<FixedBitSet, BsaError> {
    let dim = p.dimension();
    if dim > MAX_DIMENSION {
        return Err(BsaError::TooLarge(dim));
    }
    let mut set = FixedBitSet::with_capacity(l.size());
    // joins[mask] built incrementally from the lowest set bit.
    let mut joins = vec![l.bottom(); 1 << dim];
    set.insert(l.bottom().index());
    for mask in 1usize..(1 << dim) {
        let low = mask.trailing_zeros() as usize;
        let j = l.join(joins[mask & (mask - 1)], p.blocks[low]);
        joins[mask] = j;
        set.insert(j.index());
    }
    Ok(set)
}

/// Is `coarse` obtained by grouping the generators of `fine`? Every block
/// of `coarse` must be the join of the blocks of `fine` below it.
pub fn is_grouping_of(l: &Lattice, coarse: &OrthoPartition, fine: &OrthoPartition) -> bool {
    coarse.blocks.iter().all(|&q| {
        let below = fine.blocks.iter().copied().filter(|&p| l.leq(p, q));
        l.join_all(below) == q
    })
}

/// Enumerates every orthopartition of `1` and builds the inclusion poset.
pub fn enumerate_bsas(l: &Lattice, opts: &EnumerateOptions) -> Result<BsaPoset, BsaError> {
    let mut families = orthopartitions(l, opts)?;
    families.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let nodes: Vec<OrthoPartition> = families
        .into_iter()
        .map(|blocks| OrthoPartition { blocks })
        .collect();
    let elements = nodes
        .iter()
        .map(|p| subalgebra_elements(l, p))
        .collect::<Result<Vec<_>, _>>()?;

    let n = nodes.len();
    let mut above = vec![FixedBitSet::with_capacity(n); n];
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for v in 0..n {
        for w in 0..n {
            if v != w && elements[v].is_subset(&elements[w]) {
                above[v].insert(w);
                below[w].insert(v);
            }
        }
    }
    let mut covers = Vec::new();
    for (v, row) in above.iter().enumerate() {
        for w in row.ones() {
            if row.is_disjoint(&below[w]) {
                covers.push((v, w));
            }
        }
    }
    let poset = AbstractPoset::new(n, covers).expect("inclusion is a partial order");
    let truth = ground_truth(l, &nodes);
    Ok(BsaPoset { nodes, elements, poset, truth })
}

/// Depth-first search over families in increasing id order, so each
/// orthopartition is produced exactly once.
fn orthopartitions(l: &Lattice, opts: &EnumerateOptions) -> Result<Vec<Vec<Elem>>, BsaError> {
    let n = l.size();
    let nonzero: Vec<Elem> = l.elements().filter(|&e| e != l.bottom()).collect();
    let orth: Vec<FixedBitSet> = l
        .elements()
        .map(|a| {
            let mut row = l.down_set(l.ortho(a)).clone();
            row.set(l.bottom().index(), false);
            row
        })
        .collect();
    let visited = AtomicUsize::new(0);
    let search = |first: &Elem| -> Result<Vec<Vec<Elem>>, BsaError> {
        let mut out = Vec::new();
        let mut chosen = vec![*first];
        let mut allowed = orth[first.index()].clone();
        allowed.set_range(..first.index() + 1, false);
        if *first == l.top() {
            out.push(chosen);
            return Ok(out);
        }
        let mut ctx = Search { l, orth: &orth, visited: &visited, budget: opts.budget, out: &mut out };
        ctx.extend(&mut chosen, *first, &allowed)?;
        Ok(out)
    };
    let parts: Vec<Vec<Vec<Elem>>> = if opts.parallel {
        nonzero.par_iter().map(search).collect::<Result<_, _>>()?
    } else {
        nonzero.iter().map(search).collect::<Result<_, _>>()?
    };
    debug_assert!(parts.len() <= n);
    Ok(parts.into_iter().flatten().collect())
}

struct Search<'a> {
    l: &'a Lattice,
    orth: &'a [FixedBitSet],
    visited: &'a AtomicUsize,
    budget: usize,
    out: &'a mut Vec<Vec<Elem>>,
}

impl Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<Elem>, join: Elem, allowed: &FixedBitSet) -> Result<(), BsaError> {
        for b in allowed.ones().map(Elem::new) {
            if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(BsaError::Budget { limit: self.budget });
            }
            let j = self.l.join(join, b);
            chosen.push(b);
            if j == self.l.top() {
                self.out.push(chosen.clone());
            } else {
                let mut next = allowed.clone();
                next.intersect_with(&self.orth[b.index()]);
                next.set_range(..b.index() + 1, false);
                if !next.is_clear() {
                    self.extend(chosen, j, &next)?;
                }
            }
            chosen.pop();
        }
        Ok(())
    }
}

/// Classifies each subalgebra from the heights of its generators.
pub fn ground_truth(l: &Lattice, nodes: &[OrthoPartition]) -> Vec<GroundTruth> {
    nodes
        .iter()
        .map(|p| {
            let non_atoms: Vec<Elem> = p.blocks.iter().copied().filter(|&b| !l.is_atom(b)).collect();
            GroundTruth {
                is_mbsa: non_atoms.is_empty(),
                is_sub_mbsa: non_atoms.len() == 1 && l.height(non_atoms[0]) == 2,
                is_spiked: non_atoms.len() <= 1,
                leading: (non_atoms.len() == 1).then(|| non_atoms[0]),
            }
        })
        .collect()
}

/// Nodes covering `v`.
pub fn successors(poset: &AbstractPoset, v: NodeId) -> Vec<NodeId> {
    poset.upper_covers(v).to_vec()
}

/// Covers of covers of `v`, ascending and deduplicated.
pub fn double_successors(poset: &AbstractPoset, v: NodeId) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = poset
        .upper_covers(v)
        .iter()
        .flat_map(|&s| poset.upper_covers(s).iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boolean_algebra, bowtie, mo};

    fn find(l: &Lattice, name: &str) -> Elem {
        l.elements().find(|&e| l.name(e) == name).unwrap()
    }

    fn node_of(bsa: &BsaPoset, l: &Lattice, names: &[&str]) -> NodeId {
        let blocks: Vec<Elem> = names.iter().map(|n| find(l, n)).collect();
        let p = OrthoPartition::new(l, blocks).unwrap();
        NodeId::new(bsa.nodes().iter().position(|q| *q == p).unwrap())
    }

    #[test]
    fn subalgebra_element_sets() {
        let b3 = boolean_algebra(3).unwrap();
        let trivial = OrthoPartition::new(&b3, vec![b3.top()]).unwrap();
        let e = subalgebra_elements(&b3, &trivial).unwrap();
        assert_eq!(e.ones().collect::<Vec<_>>(), vec![0, 7]);
        let full = OrthoPartition::new(&b3, b3.atoms().collect()).unwrap();
        assert_eq!(subalgebra_elements(&b3, &full).unwrap().count_ones(..), 8);

        let bt = bowtie().unwrap();
        let c = find(&bt, "c");
        let p = OrthoPartition::new(&bt, vec![c, bt.ortho(c)]).unwrap();
        let e = subalgebra_elements(&bt, &p).unwrap();
        let mut want = vec![bt.bottom().index(), c.index(), bt.ortho(c).index(), bt.top().index()];
        want.sort_unstable();
        assert_eq!(e.ones().collect::<Vec<_>>(), want);
    }

    #[test]
    fn orthopartition_validation() {
        let b3 = boolean_algebra(3).unwrap();
        let p1 = find(&b3, "p1");
        let p12 = find(&b3, "p1+p2");
        assert!(OrthoPartition::new(&b3, vec![p1, p12]).is_none());
        assert!(OrthoPartition::new(&b3, vec![p1]).is_none());
        assert!(OrthoPartition::new(&b3, vec![p1, b3.ortho(p1), b3.bottom()]).is_none());
    }

    #[test]
    fn small_counts() {
        let opts = EnumerateOptions::default();
        assert_eq!(enumerate_bsas(&boolean_algebra(3).unwrap(), &opts).unwrap().len(), 5);
        assert_eq!(enumerate_bsas(&mo(3).unwrap(), &opts).unwrap().len(), 4);
        assert_eq!(enumerate_bsas(&bowtie().unwrap(), &opts).unwrap().len(), 8);
    }

    #[test]
    fn budget_aborts() {
        let opts = EnumerateOptions { budget: 10, parallel: false };
        let err = enumerate_bsas(&boolean_algebra(4).unwrap(), &opts).unwrap_err();
        assert_eq!(err, BsaError::Budget { limit: 10 });
    }

    #[test]
    fn successors_in_b4() {
        let l = boolean_algebra(4).unwrap();
        let bsa = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
        let trivial = NodeId(0);
        let succ = successors(bsa.poset(), trivial);
        assert_eq!(succ.len(), 7);
        assert!(succ.iter().all(|&s| bsa.dimension(s) == 2));
        let full = node_of(&bsa, &l, &["p1", "p2", "p3", "p4"]);
        assert!(successors(bsa.poset(), full).is_empty());

        let b3 = boolean_algebra(3).unwrap();
        let bsa3 = enumerate_bsas(&b3, &EnumerateOptions::default()).unwrap();
        let full3 = node_of(&bsa3, &b3, &["p1", "p2", "p3"]);
        assert_eq!(double_successors(bsa3.poset(), NodeId(0)), vec![full3]);
    }

    #[test]
    fn ground_truth_tags() {
        let b3 = boolean_algebra(3).unwrap();
        let bsa3 = enumerate_bsas(&b3, &EnumerateOptions::default()).unwrap();
        let full = node_of(&bsa3, &b3, &["p1", "p2", "p3"]);
        let t = bsa3.truth(full);
        assert!(t.is_mbsa && t.is_spiked && !t.is_sub_mbsa && t.leading.is_none());

        let b4 = boolean_algebra(4).unwrap();
        let bsa4 = enumerate_bsas(&b4, &EnumerateOptions::default()).unwrap();
        let v = node_of(&bsa4, &b4, &["p1", "p2+p3+p4"]);
        let t = bsa4.truth(v);
        assert!(t.is_spiked && !t.is_mbsa && !t.is_sub_mbsa);
        assert_eq!(t.leading, Some(find(&b4, "p2+p3+p4")));
        let w = node_of(&bsa4, &b4, &["p1+p2", "p3+p4"]);
        assert!(!bsa4.truth(w).is_spiked);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let l = boolean_algebra(4).unwrap();
        let a = enumerate_bsas(&l, &EnumerateOptions { parallel: false, ..Default::default() }).unwrap();
        let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
        assert_eq!(a.nodes(), b.nodes());
        assert_eq!(a.poset(), b.poset());
    }
}

//! Finite posets given by their cover relation, with opaque node ids.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("node {id} out of range for a poset of size {size}")]
    OutOfRange { id: usize, size: usize },
    #[error("node {0} covers itself")]
    SelfCover(NodeId),
    #[error("cover {0} < {1} listed twice")]
    DuplicateCover(NodeId, NodeId),
    #[error("cover relation has a cycle through node {0}")]
    Cycle(NodeId),
}

/// A poset known only through its covers. This is all the reconstruction
/// ever sees: no lattice data, no dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractPoset {
    size: usize,
    covers: Vec<(NodeId, NodeId)>,
    upper: Vec<Vec<NodeId>>,
    lower: Vec<Vec<NodeId>>,
}

impl AbstractPoset {
    /// `covers` holds pairs `(lower, upper)`.
    pub fn new(size: usize, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PosetError> {
        let mut pairs = Vec::new();
        for (a, b) in covers {
            for id in [a, b] {
                if id >= size {
                    return Err(PosetError::OutOfRange { id, size });
                }
            }
            if a == b {
                return Err(PosetError::SelfCover(NodeId::new(a)));
            }
            pairs.push((NodeId::new(a), NodeId::new(b)));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateCover(w[0].0, w[0].1));
        }
        let mut upper = vec![Vec::new(); size];
        let mut lower = vec![Vec::new(); size];
        for &(a, b) in &pairs {
            upper[a.index()].push(b);
            lower[b.index()].push(a);
        }
        let p = AbstractPoset { size, covers: pairs, upper, lower };
        p.topological_order()?;
        Ok(p)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.size).map(NodeId::new)
    }

    /// Sorted `(lower, upper)` cover pairs.
    pub fn covers(&self) -> &[(NodeId, NodeId)] {
        &self.covers
    }

    /// Nodes covering `v` (its successors), ascending.
    pub fn upper_covers(&self, v: NodeId) -> &[NodeId] {
        &self.upper[v.index()]
    }

    pub fn lower_covers(&self, v: NodeId) -> &[NodeId] {
        &self.lower[v.index()]
    }

    /// Kahn's algorithm; smallest ready id first, so the order is canonical.
    pub fn topological_order(&self) -> Result<Vec<NodeId>, PosetError> {
        let mut indegree: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..self.size).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.size);
        while let Some(v) = ready.pop_first() {
            order.push(NodeId::new(v));
            for w in &self.upper[v] {
                indegree[w.index()] -= 1;
                if indegree[w.index()] == 0 {
                    ready.insert(w.index());
                }
            }
        }
        if order.len() < self.size {
            let stuck = (0..self.size).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(PosetError::Cycle(NodeId::new(stuck)));
        }
        Ok(order)
    }

    /// `above[v]` = every node `w` with `v <= w`.
    pub fn up_sets(&self) -> Vec<FixedBitSet> {
        let order = self.topological_order().expect("validated at construction");
        let mut above = vec![FixedBitSet::with_capacity(self.size); self.size];
        for &v in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(self.size);
            row.insert(v.index());
            for w in &self.upper[v.index()] {
                row.union_with(&above[w.index()]);
            }
            above[v.index()] = row;
        }
        above
    }

    /// Relabels node `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> AbstractPoset {
        AbstractPoset::new(
            self.size,
            self.covers.iter().map(|&(a, b)| (perm[a.index()], perm[b.index()])),
        )
        .expect("a relabeling of a valid poset is valid")
    }
}

/// A poset with shuffled node ids plus the secret map back to the
/// original ids. Only test harnesses look at `hidden`.
#[derive(Clone, Debug)]
pub struct Anonymized {
    pub poset: AbstractPoset,
    /// `hidden[abstract id] = original id`.
    pub hidden: Vec<NodeId>,
}

/// Shuffles node ids with a ChaCha8 stream seeded by `seed`; only the cover
/// relation survives.
pub fn anonymize(poset: &AbstractPoset, seed: u64) -> Anonymized {
    let mut perm: Vec<usize> = (0..poset.size()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perm.shuffle(&mut rng);
    let mut hidden = vec![NodeId(0); poset.size()];
    for (orig, &new) in perm.iter().enumerate() {
        hidden[new] = NodeId::new(orig);
    }
    Anonymized { poset: poset.permuted(&perm), hidden }
}

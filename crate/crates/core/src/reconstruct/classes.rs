//! Splitting `M_V` into the two cells that stand for the generators of `V`.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use super::graded::{GradedPoset, SupCase, SupSet};
use super::ReconstructError;
use crate::poset::NodeId;

/// Which rule produced a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionRule {
    /// Maximal `V`: two anonymous elements.
    Apair,
    /// Spiked, non-maximal `V`: maximal nodes above versus `V` itself.
    Spiked,
    /// Some members sub-maximal, some not.
    Mixed,
    /// Every member sub-maximal: split by having no common maximal node above.
    SubMaximalOnly,
    /// No member sub-maximal: merged through other non-spiked nodes.
    Witnessed,
}

impl PartitionRule {
    pub fn number(self) -> u8 {
        match self {
            PartitionRule::Apair => 1,
            PartitionRule::Spiked => 2,
            PartitionRule::Mixed => 3,
            PartitionRule::SubMaximalOnly => 4,
            PartitionRule::Witnessed => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub rule: PartitionRule,
    /// `None` for apairs. For spiked owners cell 0 is the atom side and
    /// cell 1 is `{V}`; otherwise cells are ordered by smallest member.
    pub cells: Option<[Vec<NodeId>; 2]>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn groups(mut self, members: &[NodeId]) -> Vec<Vec<NodeId>> {
        let mut by_root: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
        for (i, &m) in members.iter().enumerate() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(m);
        }
        let mut groups: Vec<Vec<NodeId>> = by_root.into_values().collect();
        groups.sort();
        groups
    }
}

fn two_cells(
    v: NodeId,
    rule: PartitionRule,
    mut groups: Vec<Vec<NodeId>>,
) -> Result<Partition, ReconstructError> {
    if groups.len() != 2 {
        return Err(ReconstructError::PartitionCells { node: v, rule, cells: groups.len() });
    }
    groups.sort();
    let b = groups.pop().unwrap();
    let a = groups.pop().unwrap();
    Ok(Partition { rule, cells: Some([a, b]) })
}

/// Partitions `M_V` for a two-dimensional `v`. `sups` must hold `M_W` for
/// every two-dimensional node `W`.
pub fn partition_classes(
    g: &GradedPoset<'_>,
    v: NodeId,
    sup: &SupSet,
    sups: &BTreeMap<NodeId, SupSet>,
) -> Result<Partition, ReconstructError> {
    match sup.case {
        SupCase::D => Ok(Partition { rule: PartitionRule::Apair, cells: None }),
        SupCase::B | SupCase::C => {
            let atoms: Vec<NodeId> = sup.members.iter().copied().filter(|&m| m != v).collect();
            Ok(Partition { rule: PartitionRule::Spiked, cells: Some([atoms, vec![v]]) })
        }
        SupCase::A => {
            let members = &sup.members;
            let (sub, rest): (Vec<NodeId>, Vec<NodeId>) =
                members.iter().partition(|&&m| g.detect_sub_mbsa(m));
            if !sub.is_empty() && !rest.is_empty() {
                if let Some(&bad) = rest.iter().find(|&&m| g.dimension(m) != 3) {
                    return Err(ReconstructError::UnexpectedDimension {
                        owner: v,
                        node: bad,
                        dimension: g.dimension(bad),
                    });
                }
                return two_cells(v, PartitionRule::Mixed, vec![sub, rest]);
            }
            let mut uf = UnionFind::new(members.len());
            if rest.is_empty() {
                let maximal = g.maximal_nodes();
                for i in 0..members.len() {
                    for j in i + 1..members.len() {
                        let mut common: FixedBitSet = g.up_set(members[i]).clone();
                        common.intersect_with(g.up_set(members[j]));
                        common.intersect_with(maximal);
                        if common.is_clear() {
                            uf.union(i, j);
                        }
                    }
                }
                return two_cells(v, PartitionRule::SubMaximalOnly, uf.groups(members));
            }
            for (&w, sup_w) in sups {
                if w == v || sup_w.case != SupCase::A {
                    continue;
                }
                let up_w: Vec<usize> = (0..members.len())
                    .filter(|&i| sup_w.members.iter().any(|&c| g.leq(members[i], c)))
                    .collect();
                for pair in up_w.windows(2) {
                    uf.union(pair[0], pair[1]);
                }
            }
            two_cells(v, PartitionRule::Witnessed, uf.groups(members))
        }
    }
}

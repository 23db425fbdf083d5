//! Elements of the reconstructed lattice and the relations between them.

use fixedbitset::FixedBitSet;

use super::classes::Partition;
use super::graded::{GradedPoset, SupCase, SupSet};
use super::{ReconstructError, ReconstructOptions};
use crate::lattice::transitive_closure;
use crate::poset::NodeId;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassElement {
    Zero,
    One,
    /// One of the two anonymous elements of a maximal two-dimensional node.
    Apair { owner: NodeId, index: u8 },
    /// A cell of the partition of `M_owner`.
    Class { owner: NodeId, cell: Vec<NodeId> },
}

/// What a two-dimensional node contributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OwnerAnalysis {
    pub node: NodeId,
    pub sup: SupSet,
    pub partition: Partition,
    /// Indices into the element list. For spiked owners `[R_V, S_V]`.
    pub elements: [usize; 2],
}

impl OwnerAnalysis {
    pub fn is_spiked_non_maximal(&self) -> bool {
        matches!(self.sup.case, SupCase::B | SupCase::C)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationRule {
    /// `0 <= x <= 1`.
    Bounds,
    /// Containment between cells of non-spiked owners.
    Containment,
    /// The atom of a spiked owner below a cell.
    AtomBelowClass,
    /// A cell below the coatom of a spiked owner.
    ClassBelowCoatom,
    /// Atom of one spiked owner below the coatom of another sharing a
    /// maximal node.
    AtomBelowCoatom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub lower: usize,
    pub upper: usize,
    pub rule: RelationRule,
}

/// Sorts the elements canonically and fills in each owner's indices.
pub fn build_elements(
    parts: Vec<(NodeId, SupSet, Partition)>,
) -> (Vec<ClassElement>, Vec<OwnerAnalysis>) {
    let mut elements = vec![ClassElement::Zero, ClassElement::One];
    for (owner, _, p) in &parts {
        match &p.cells {
            None => {
                elements.push(ClassElement::Apair { owner: *owner, index: 1 });
                elements.push(ClassElement::Apair { owner: *owner, index: 2 });
            }
            Some(cells) => {
                for cell in cells {
                    elements.push(ClassElement::Class { owner: *owner, cell: cell.clone() });
                }
            }
        }
    }
    elements.sort();
    let index_of = |e: &ClassElement| elements.binary_search(e).expect("element listed");
    let owners = parts
        .into_iter()
        .map(|(node, sup, partition)| {
            let idx = match &partition.cells {
                None => [
                    index_of(&ClassElement::Apair { owner: node, index: 1 }),
                    index_of(&ClassElement::Apair { owner: node, index: 2 }),
                ],
                Some([a, b]) => [
                    index_of(&ClassElement::Class { owner: node, cell: a.clone() }),
                    index_of(&ClassElement::Class { owner: node, cell: b.clone() }),
                ],
            };
            OwnerAnalysis { node, sup, partition, elements: idx }
        })
        .collect();
    (elements, owners)
}

fn member_set(n: usize, cell: &[NodeId]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in cell {
        s.insert(v.index());
    }
    s
}

fn cells(o: &OwnerAnalysis) -> &[Vec<NodeId>; 2] {
    o.partition.cells.as_ref().expect("owner has cells")
}

pub fn order_relations(
    g: &GradedPoset<'_>,
    elements: &[ClassElement],
    owners: &[OwnerAnalysis],
    opts: &ReconstructOptions,
) -> Vec<Relation> {
    let n = g.poset().size();
    let mut rel = Vec::new();
    for x in 0..elements.len() {
        if x != 0 {
            rel.push(Relation { lower: 0, upper: x, rule: RelationRule::Bounds });
        }
        if x != 1 {
            rel.push(Relation { lower: x, upper: 1, rule: RelationRule::Bounds });
        }
    }

    let free: Vec<&OwnerAnalysis> = owners.iter().filter(|o| o.sup.case == SupCase::A).collect();
    let spiked: Vec<&OwnerAnalysis> = owners.iter().filter(|o| o.is_spiked_non_maximal()).collect();

    // For each cell of a non-spiked owner: its members, and everything above them.
    let mut members = Vec::new();
    let mut above = Vec::new();
    for o in &free {
        for (k, cell) in cells(o).iter().enumerate() {
            let mut up = FixedBitSet::with_capacity(n);
            for v in cell {
                up.union_with(g.up_set(*v));
            }
            members.push((o.node, o.elements[k], member_set(n, cell)));
            above.push(up);
        }
    }
    for (owner_x, x, set_x) in &members {
        for (j, (owner_y, y, _)) in members.iter().enumerate() {
            if owner_x != owner_y && !above[j].is_disjoint(set_x) {
                rel.push(Relation { lower: *x, upper: *y, rule: RelationRule::Containment });
            }
        }
    }

    for v in &spiked {
        let [r, s] = v.elements;
        let up_v = g.up_set(v.node);
        for w in &free {
            let c = cells(w);
            for k in 0..2 {
                let other = 1 - k;
                if c[other].iter().any(|a| up_v.contains(a.index())) {
                    rel.push(Relation { lower: r, upper: w.elements[k], rule: RelationRule::AtomBelowClass });
                    rel.push(Relation {
                        lower: w.elements[other],
                        upper: s,
                        rule: RelationRule::ClassBelowCoatom,
                    });
                }
            }
        }
    }

    if opts.gap_rule {
        for (v, w, _) in sharing_pairs(n, &spiked) {
            rel.push(Relation { lower: v.elements[0], upper: w.elements[1], rule: RelationRule::AtomBelowCoatom });
        }
    }
    rel.sort();
    rel.dedup();
    rel
}

/// Ordered pairs of distinct spiked non-maximal owners whose atom cells
/// share a maximal node, with one such node.
fn sharing_pairs<'o>(
    n: usize,
    spiked: &[&'o OwnerAnalysis],
) -> Vec<(&'o OwnerAnalysis, &'o OwnerAnalysis, NodeId)> {
    let sets: Vec<FixedBitSet> = spiked.iter().map(|o| member_set(n, &cells(o)[0])).collect();
    let mut out = Vec::new();
    for (i, v) in spiked.iter().enumerate() {
        for (j, w) in spiked.iter().enumerate() {
            if i != j {
                if let Some(m) = sets[i].intersection(&sets[j]).next() {
                    out.push((*v, *w, NodeId::new(m)));
                }
            }
        }
    }
    out
}

/// Reflexive-transitive closure of the relations, checked for
/// antisymmetry and for every atom-coatom pair that must hold.
pub fn close(
    size: usize,
    relations: &[Relation],
    owners: &[OwnerAnalysis],
    n_nodes: usize,
) -> Result<Vec<FixedBitSet>, ReconstructError> {
    let mut up = vec![FixedBitSet::with_capacity(size); size];
    for (i, row) in up.iter_mut().enumerate() {
        row.insert(i);
    }
    for r in relations {
        up[r.lower].insert(r.upper);
    }
    transitive_closure(&mut up);
    for a in 0..size {
        for b in up[a].ones() {
            if b != a && up[b].contains(a) {
                return Err(ReconstructError::Cycle { a, b });
            }
        }
    }
    let spiked: Vec<&OwnerAnalysis> = owners.iter().filter(|o| o.is_spiked_non_maximal()).collect();
    let missing: Vec<(NodeId, NodeId, NodeId)> = sharing_pairs(n_nodes, &spiked)
        .into_iter()
        .filter(|(v, w, _)| !up[v.elements[0]].contains(w.elements[1]))
        .map(|(v, w, m)| (v.node, w.node, m))
        .collect();
    if !missing.is_empty() {
        return Err(ReconstructError::MissingAtomCoatom(missing));
    }
    Ok(up)
}

//! Rebuilding an orthomodular lattice from the bare cover relation of its
//! Boolean-subalgebra poset.
//!
//! Stages: grade the poset, profile every node, find the minimal spiked
//! extensions `M_V` of each two-dimensional node, split each `M_V` into two
//! cells, relate the cells, close, and check the result.

mod classes;
mod graded;
mod order;

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

pub use classes::{partition_classes, Partition, PartitionRule};
pub use graded::{GradedPoset, PlaneCase, NodeProfile, SupCase, SupSet};
pub use order::{build_elements, close, order_relations, ClassElement, OwnerAnalysis, Relation, RelationRule};

use crate::lattice::{Lattice, LatticeError};
use crate::poset::{AbstractPoset, NodeId};
use crate::verify::{verify, Axiom, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReconstructOptions {
    /// Relate the atom of each spiked owner to the coatom of every other
    /// spiked owner sharing a maximal node.
    pub gap_rule: bool,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions { gap_rule: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("the poset is empty")]
    EmptyPoset,
    #[error("expected one minimal node, found {}", fmt_nodes(.0))]
    NoUniqueMinimum(Vec<NodeId>),
    #[error("cover {lower} < {upper} skips a rank")]
    NotGraded { lower: NodeId, upper: NodeId },
    #[error("node {0} is not two-dimensional")]
    NotTwoDimensional(NodeId),
    #[error("node {node} gives {cells} cells under rule {}, expected 2", rule.number())]
    PartitionCells { node: NodeId, rule: PartitionRule, cells: usize },
    #[error("node {node} in M_{owner} has dimension {dimension}, expected 3")]
    UnexpectedDimension { owner: NodeId, node: NodeId, dimension: usize },
    #[error("elements {a} and {b} are below each other")]
    Cycle { a: usize, b: usize },
    #[error("missing atom-coatom relations {}", fmt_missing(.0))]
    MissingAtomCoatom(Vec<(NodeId, NodeId, NodeId)>),
    #[error("{0}")]
    NotALattice(LatticeError),
    #[error("{} axiom fails: {witness}", axiom.name())]
    AxiomFailure { axiom: Axiom, witness: Violation },
    #[error("lattice height {height} differs from largest dimension {dimension}")]
    HeightMismatch { height: usize, dimension: usize },
}

impl ReconstructError {
    pub fn stage(&self) -> &'static str {
        use ReconstructError::*;
        match self {
            EmptyPoset | NoUniqueMinimum(_) | NotGraded { .. } => "grading",
            NotTwoDimensional(_) => "extensions",
            PartitionCells { .. } | UnexpectedDimension { .. } => "partition",
            Cycle { .. } | MissingAtomCoatom(_) => "closure",
            NotALattice(_) => "assembly",
            AxiomFailure { .. } => "verification",
            HeightMismatch { .. } => "height",
        }
    }
}

fn fmt_nodes(v: &[NodeId]) -> String {
    let ids: Vec<String> = v.iter().map(NodeId::to_string).collect();
    format!("[{}]", ids.join(", "))
}

fn fmt_missing(v: &[(NodeId, NodeId, NodeId)]) -> String {
    let shown: Vec<String> = v.iter().take(4).map(|(a, b, m)| format!("R{a} <= S{b} (via {m})")).collect();
    let more = if v.len() > 4 { format!(" and {} more", v.len() - 4) } else { String::new() };
    format!("{}{more}", shown.join(", "))
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub profiles: Vec<NodeProfile>,
    pub owners: Vec<OwnerAnalysis>,
    pub elements: Vec<ClassElement>,
    pub relations: Vec<Relation>,
    pub lattice: Lattice,
    pub timings: Vec<(&'static str, Duration)>,
}

impl Reconstruction {
    /// Number of two-dimensional nodes in each extension case.
    pub fn case_counts(&self) -> [(SupCase, usize); 4] {
        let mut out = [(SupCase::A, 0), (SupCase::B, 0), (SupCase::C, 0), (SupCase::D, 0)];
        for o in &self.owners {
            out.iter_mut().find(|(c, _)| *c == o.sup.case).unwrap().1 += 1;
        }
        out
    }

    pub fn rule_counts(&self) -> [(PartitionRule, usize); 5] {
        use PartitionRule::*;
        let mut out = [(Apair, 0), (Spiked, 0), (Mixed, 0), (SubMaximalOnly, 0), (Witnessed, 0)];
        for o in &self.owners {
            out.iter_mut().find(|(r, _)| *r == o.partition.rule).unwrap().1 += 1;
        }
        out
    }

    pub fn owner(&self, v: NodeId) -> Option<&OwnerAnalysis> {
        self.owners.iter().find(|o| o.node == v)
    }
}

impl fmt::Display for Reconstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes: {}", self.profiles.len())?;
        writeln!(f, "two-dimensional nodes: {}", self.owners.len())?;
        let cases: Vec<String> = self.case_counts().iter().map(|(c, k)| format!("{}={k}", c.name())).collect();
        writeln!(f, "cases: {}", cases.join(" "))?;
        let rules: Vec<String> = self.rule_counts().iter().map(|(r, k)| format!("{}={k}", r.number())).collect();
        writeln!(f, "rules: {}", rules.join(" "))?;
        writeln!(f, "elements: {}", self.elements.len())?;
        writeln!(f, "relations: {}", self.relations.len())?;
        for (stage, t) in &self.timings {
            writeln!(f, "time {stage}: {:.3} ms", t.as_secs_f64() * 1e3)?;
        }
        Ok(())
    }
}

fn labels(elements: &[ClassElement], owners: &[OwnerAnalysis]) -> Vec<String> {
    let mut out: Vec<String> = elements
        .iter()
        .map(|e| match e {
            ClassElement::Zero => "0".to_string(),
            ClassElement::One => "1".to_string(),
            ClassElement::Apair { owner, index } => format!("A{owner}.{index}"),
            ClassElement::Class { owner, .. } => format!("M{owner}"),
        })
        .collect();
    for o in owners {
        match o.sup.case {
            SupCase::B | SupCase::C => {
                out[o.elements[0]] = format!("R{}", o.node);
                out[o.elements[1]] = format!("S{}", o.node);
            }
            SupCase::A => {
                out[o.elements[0]] = format!("M{}.0", o.node);
                out[o.elements[1]] = format!("M{}.1", o.node);
            }
            SupCase::D => {}
        }
    }
    out
}

pub fn reconstruct(poset: &AbstractPoset, opts: &ReconstructOptions) -> Result<Reconstruction, ReconstructError> {
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |stage: &'static str, timings: &mut Vec<(&'static str, Duration)>| {
        timings.push((stage, clock.elapsed()));
        clock = Instant::now();
    };

    let g = GradedPoset::grade(poset)?;
    lap("grade", &mut timings);

    let profiles: Vec<NodeProfile> = poset.nodes().map(|v| g.profile(v)).collect();
    lap("profile", &mut timings);

    let sups = g
        .nodes_of_dimension(2)
        .map(|v| g.minimal_spiked_supbsas(v).map(|s| (v, s)))
        .collect::<Result<std::collections::BTreeMap<_, _>, _>>()?;
    lap("extensions", &mut timings);

    let mut parts = Vec::with_capacity(sups.len());
    for (&v, sup) in &sups {
        let p = partition_classes(&g, v, sup, &sups)?;
        parts.push((v, sup.clone(), p));
    }
    lap("partition", &mut timings);

    let (elements, owners) = build_elements(parts);
    let relations = order_relations(&g, &elements, &owners, opts);
    lap("relations", &mut timings);

    let up = close(elements.len(), &relations, &owners, poset.size())?;
    lap("closure", &mut timings);

    let mut ortho = vec![0usize; elements.len()];
    ortho[0] = 1;
    ortho[1] = 0;
    for o in &owners {
        let [a, b] = o.elements;
        ortho[a] = b;
        ortho[b] = a;
    }
    let lattice = Lattice::new(up, ortho, Some(labels(&elements, &owners))).map_err(ReconstructError::NotALattice)?;
    lap("assembly", &mut timings);

    if let Some(c) = verify(&lattice).first_failure() {
        return Err(ReconstructError::AxiomFailure {
            axiom: c.axiom,
            witness: c.witness.clone().expect("failed check has a witness"),
        });
    }
    let height = lattice.height(lattice.top());
    let dimension = g.max_dimension();
    if height != dimension {
        return Err(ReconstructError::HeightMismatch { height, dimension });
    }
    lap("verify", &mut timings);

    Ok(Reconstruction { profiles, owners, elements, relations, lattice, timings })
}

/// Just the lattice, with default options.
pub fn assemble(poset: &AbstractPoset) -> Result<Lattice, ReconstructError> {
    reconstruct(poset, &ReconstructOptions::default()).map(|r| r.lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsa::{enumerate_bsas, EnumerateOptions};
    use crate::builders::{boolean_algebra, bowtie, mo};

    fn rebuild(l: &Lattice, opts: ReconstructOptions) -> Result<Reconstruction, ReconstructError> {
        let b = enumerate_bsas(l, &EnumerateOptions::default()).unwrap();
        reconstruct(&b.anonymize(5).poset, &opts)
    }

    #[test]
    fn sizes_match() {
        for l in [
            boolean_algebra(1).unwrap(),
            boolean_algebra(2).unwrap(),
            boolean_algebra(3).unwrap(),
            boolean_algebra(4).unwrap(),
            mo(2).unwrap(),
            mo(3).unwrap(),
            bowtie().unwrap(),
        ] {
            let r = rebuild(&l, ReconstructOptions::default()).unwrap();
            assert_eq!(r.lattice.size(), l.size());
            assert_eq!(r.lattice.atoms().count(), l.atoms().count());
        }
    }

    #[test]
    fn boolean_three_uses_spiked_owners_only() {
        let r = rebuild(&boolean_algebra(3).unwrap(), ReconstructOptions::default()).unwrap();
        assert_eq!(r.case_counts(), [(SupCase::A, 0), (SupCase::B, 0), (SupCase::C, 3), (SupCase::D, 0)]);
        let gap = r.relations.iter().filter(|x| x.rule == RelationRule::AtomBelowCoatom).count();
        assert_eq!(gap, 6);
    }

    #[test]
    fn mo_owners_are_apairs() {
        let r = rebuild(&mo(3).unwrap(), ReconstructOptions::default()).unwrap();
        assert_eq!(r.owners.len(), 3);
        assert!(r.owners.iter().all(|o| o.partition.rule == PartitionRule::Apair));
    }

    #[test]
    fn without_gap_rule_boolean_three_fails_in_closure() {
        let err = rebuild(&boolean_algebra(3).unwrap(), ReconstructOptions { gap_rule: false }).unwrap_err();
        assert!(matches!(err, ReconstructError::MissingAtomCoatom(ref m) if m.len() == 6));
        assert_eq!(err.stage(), "closure");
    }

    #[test]
    fn ungraded_poset_names_the_stage() {
        let p = AbstractPoset::new(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        let err = assemble(&p).unwrap_err();
        assert_eq!(err.stage(), "grading");
        assert_eq!(err.to_string(), "cover 3 < 4 skips a rank");
    }
}

//! Test-side map from reconstructed elements back to the original lattice,
//! using the anonymization secret. The reconstruction never sees any of this.

use thiserror::Error;

use crate::bsa::BsaPoset;
use crate::lattice::{Elem, Lattice};
use crate::poset::{Anonymized, NodeId};
use crate::reconstruct::{ClassElement, Reconstruction, Relation, SupCase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("node {0} is not a two-dimensional subalgebra")]
    NotTwoDimensional(NodeId),
    #[error("a member of cell {cell} of node {owner} has no single non-atom generator")]
    NoLeading { owner: NodeId, cell: usize },
    #[error("cell {cell} of node {owner} mixes leading elements")]
    MixedLeading { owner: NodeId, cell: usize },
    #[error("cell {cell} of node {owner} leads with {leading}, not a generator of the node")]
    ForeignLeading { owner: NodeId, cell: usize, leading: Elem },
    #[error("both cells of node {0} lead with the same element")]
    SameLeading(NodeId),
    #[error("spiked node {0} does not have exactly one atom generator")]
    SpikedShape(NodeId),
}

/// `images[i]` is the element of `l` that reconstructed element `i`
/// stands for. Fails when a cell does not correspond to one generator.
pub fn hidden_images(
    l: &Lattice,
    bsas: &BsaPoset,
    anon: &Anonymized,
    r: &Reconstruction,
) -> Result<Vec<Elem>, HarnessError> {
    let original = |v: NodeId| anon.hidden[v.index()];
    let mut images = vec![l.bottom(); r.elements.len()];
    for (i, e) in r.elements.iter().enumerate() {
        if *e == ClassElement::One {
            images[i] = l.top();
        }
    }
    for o in &r.owners {
        let gens = bsas.node(original(o.node)).blocks();
        if gens.len() != 2 {
            return Err(HarnessError::NotTwoDimensional(o.node));
        }
        let [x, y] = o.elements;
        match o.sup.case {
            SupCase::D => {
                images[x] = gens[0];
                images[y] = gens[1];
            }
            SupCase::B | SupCase::C => {
                let atoms: Vec<Elem> = gens.iter().copied().filter(|&g| l.is_atom(g)).collect();
                if atoms.len() != 1 {
                    return Err(HarnessError::SpikedShape(o.node));
                }
                images[x] = atoms[0];
                images[y] = l.ortho(atoms[0]);
            }
            SupCase::A => {
                let cells = o.partition.cells.as_ref().expect("case a has cells");
                let mut lead = [l.bottom(); 2];
                for (k, cell) in cells.iter().enumerate() {
                    let mut found = None;
                    for &m in cell {
                        let t = bsas.truth(original(m)).leading.ok_or(HarnessError::NoLeading { owner: o.node, cell: k })?;
                        match found {
                            None => found = Some(t),
                            Some(f) if f != t => return Err(HarnessError::MixedLeading { owner: o.node, cell: k }),
                            Some(_) => {}
                        }
                    }
                    let t = found.ok_or(HarnessError::NoLeading { owner: o.node, cell: k })?;
                    if !gens.contains(&t) {
                        return Err(HarnessError::ForeignLeading { owner: o.node, cell: k, leading: t });
                    }
                    lead[k] = t;
                }
                if lead[0] == lead[1] {
                    return Err(HarnessError::SameLeading(o.node));
                }
                images[x] = lead[0];
                images[y] = lead[1];
            }
        }
    }
    Ok(images)
}

/// Generating relations that do not hold in `l` under `images`.
pub fn false_relations<'r>(l: &Lattice, r: &'r Reconstruction, images: &[Elem]) -> Vec<&'r Relation> {
    r.relations
        .iter()
        .filter(|rel| !l.leq(images[rel.lower], images[rel.upper]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsa::{enumerate_bsas, EnumerateOptions};
    use crate::builders::{boolean_algebra, bowtie};
    use crate::iso::is_isomorphism;
    use crate::reconstruct::{reconstruct, ReconstructOptions};

    #[test]
    fn images_form_an_isomorphism() {
        for l in [boolean_algebra(3).unwrap(), boolean_algebra(4).unwrap(), bowtie().unwrap()] {
            let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
            let anon = b.anonymize(9);
            let r = reconstruct(&anon.poset, &ReconstructOptions::default()).unwrap();
            let images = hidden_images(&l, &b, &anon, &r).unwrap();
            assert!(false_relations(&l, &r, &images).is_empty());
            assert!(is_isomorphism(&r.lattice, &l, &images));
        }
    }
}

//! Greechie diagrams: pastings of finite Boolean blocks along shared atoms.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;

use crate::builders::{checked, BuildError};
use crate::lattice::Lattice;

/// Named atoms plus the atom sets of the maximal Boolean blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreechieDiagram {
    pub atoms: Vec<String>,
    /// Each block lists atom indices into `atoms`.
    pub blocks: Vec<Vec<usize>>,
}

const MAX_BLOCK: usize = 16;

impl GreechieDiagram {
    pub fn new(atoms: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<Self, BuildError> {
        let g = GreechieDiagram { atoms, blocks };
        g.validate()?;
        Ok(g)
    }

    /// Builds a diagram from blocks of atom names; atoms are numbered in
    /// order of first appearance.
    pub fn from_named_blocks(blocks: &[&[&str]]) -> Result<Self, BuildError> {
        let mut atoms: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let blocks = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|name| {
                        *index.entry(name.to_string()).or_insert_with(|| {
                            atoms.push(name.to_string());
                            atoms.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        GreechieDiagram::new(atoms, blocks)
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        let invalid = |msg: String| Err(BuildError::InvalidDiagram(msg));
        if self.blocks.is_empty() {
            return invalid("no blocks".into());
        }
        let mut seen = vec![false; self.atoms.len()];
        let mut names = HashMap::new();
        for (i, a) in self.atoms.iter().enumerate() {
            if names.insert(a.as_str(), i).is_some() {
                return invalid(format!("atom {a} declared twice"));
            }
        }
        for (bi, block) in self.blocks.iter().enumerate() {
            if block.len() < 2 {
                return invalid(format!("block {bi} has fewer than 2 atoms"));
            }
            if block.len() > MAX_BLOCK {
                return invalid(format!("block {bi} has more than {MAX_BLOCK} atoms"));
            }
            let mut inner = block.clone();
            inner.sort_unstable();
            inner.dedup();
            if inner.len() != block.len() {
                return invalid(format!("block {bi} repeats an atom"));
            }
            for &a in block {
                if a >= self.atoms.len() {
                    return invalid(format!("block {bi} names unknown atom #{a}"));
                }
                seen[a] = true;
            }
        }
        if let Some(a) = seen.iter().position(|s| !s) {
            return invalid(format!("atom {} is in no block", self.atoms[a]));
        }
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let shared = self.blocks[i]
                    .iter()
                    .filter(|a| self.blocks[j].contains(a))
                    .count();
                if shared > 1 {
                    return invalid(format!("blocks {i} and {j} share {shared} atoms"));
                }
            }
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Pastes the Boolean blocks of `g` into a lattice.
///
/// Every (block, subset) pair is a representation; two representations are
/// the same element when their atom sets coincide or when their in-block
/// complements coincide. The order is generated by in-block inclusion. The
/// result is verified exhaustively and rejected on any axiom failure.
pub fn from_greechie(g: &GreechieDiagram) -> Result<Lattice, BuildError> {
    g.validate()?;
    // Representations: (block, mask over the block's atom list).
    let mut reps: Vec<(usize, u32)> = Vec::new();
    let mut offsets = Vec::with_capacity(g.blocks.len());
    for (bi, block) in g.blocks.iter().enumerate() {
        offsets.push(reps.len());
        for mask in 0..(1u32 << block.len()) {
            reps.push((bi, mask));
        }
    }
    let content = |&(bi, mask): &(usize, u32)| -> Vec<usize> {
        let mut atoms: Vec<usize> = g.blocks[bi]
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &a)| a)
            .collect();
        atoms.sort_unstable();
        atoms
    };
    let complement = |&(bi, mask): &(usize, u32)| -> (usize, u32) {
        let full = (1u32 << g.blocks[bi].len()) - 1;
        (bi, full & !mask)
    };

    let mut uf = UnionFind((0..reps.len()).collect());
    let mut by_content: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut by_complement: HashMap<Vec<usize>, usize> = HashMap::new();
    for (r, rep) in reps.iter().enumerate() {
        let c = content(rep);
        if let Some(&other) = by_content.get(&c) {
            uf.union(r, other);
        } else {
            by_content.insert(c, r);
        }
        let cc = content(&complement(rep));
        if let Some(&other) = by_complement.get(&cc) {
            uf.union(r, other);
        } else {
            by_complement.insert(cc, r);
        }
    }

    // Canonical element order: by the (size, sorted content) of the smallest
    // representation of each class.
    let mut canon: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (r, rep) in reps.iter().enumerate() {
        let root = uf.find(r);
        let c = content(rep);
        let entry = canon.entry(root).or_insert_with(|| c.clone());
        if (c.len(), &c) < (entry.len(), &*entry) {
            *entry = c;
        }
    }
    let top_root = uf.find(offsets[0] + (1usize << g.blocks[0].len()) - 1);
    let mut classes: Vec<(Vec<usize>, usize)> = canon.into_iter().map(|(r, c)| (c, r)).collect();
    classes.sort_by_key(|(c, r)| (*r == top_root, c.len(), c.clone()));
    let n = classes.len();
    let mut id_of_root = HashMap::new();
    for (id, (_, root)) in classes.iter().enumerate() {
        id_of_root.insert(*root, id);
    }
    let mut id_of = |r: usize| id_of_root[&uf.find(r)];
    let rep_ids: Vec<usize> = (0..reps.len()).map(&mut id_of).collect();

    let mut up = vec![FixedBitSet::with_capacity(n); n];
    let mut ortho = vec![usize::MAX; n];
    for (bi, block) in g.blocks.iter().enumerate() {
        let k = block.len();
        let base = offsets[bi];
        for s in 0..(1u32 << k) {
            let a = rep_ids[base + s as usize];
            let o = rep_ids[base + complement(&(bi, s)).1 as usize];
            if ortho[a] == usize::MAX {
                ortho[a] = o;
            } else if ortho[a] != o {
                return Err(BuildError::InvalidDiagram(format!(
                    "orthocomplement of {} is not well defined",
                    label(g, &classes[a].0)
                )));
            }
            for t in 0..(1u32 << k) {
                if s & t == s {
                    up[a].insert(rep_ids[base + t as usize]);
                }
            }
        }
    }
    crate::lattice::transitive_closure(&mut up);
    let labels = classes.iter().enumerate().map(|(id, (c, _))| {
        if id + 1 == n {
            "1".to_string()
        } else {
            label(g, c)
        }
    });
    let lattice = Lattice::new(up, ortho, Some(labels.collect()))?;
    checked(lattice)
}

fn label(g: &GreechieDiagram, content: &[usize]) -> String {
    if content.is_empty() {
        "0".to_string()
    } else {
        content
            .iter()
            .map(|&a| g.atoms[a].as_str())
            .collect::<Vec<_>>()
            .join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Axiom;

    #[test]
    fn rejects_blocks_sharing_two_atoms() {
        let err = GreechieDiagram::from_named_blocks(&[&["a", "b", "c"], &["a", "b", "d"]]);
        assert!(matches!(err, Err(BuildError::InvalidDiagram(_))));
    }

    #[test]
    fn rejects_singleton_block() {
        let err = GreechieDiagram::from_named_blocks(&[&["a"]]);
        assert!(matches!(err, Err(BuildError::InvalidDiagram(_))));
    }

    #[test]
    fn rejects_unused_atom() {
        let err = GreechieDiagram::new(
            vec!["a".into(), "b".into(), "z".into()],
            vec![vec![0, 1]],
        );
        assert!(matches!(err, Err(BuildError::InvalidDiagram(_))));
    }

    #[test]
    fn bowtie_has_twelve_elements() {
        let g = GreechieDiagram::from_named_blocks(&[&["a", "b", "c"], &["c", "d", "e"]]).unwrap();
        let l = from_greechie(&g).unwrap();
        assert_eq!(l.size(), 12);
        assert_eq!(l.atoms().count(), 5);
        let coatoms = l
            .elements()
            .filter(|&e| l.upper_covers(e) == [l.top()])
            .count();
        assert_eq!(coatoms, 5);
        // c⊥ is reachable in both blocks as a+b and d+e.
        let c = l.elements().find(|&e| l.name(e) == "c").unwrap();
        let cp = l.ortho(c);
        assert_eq!(l.height(cp), 2);
        assert_eq!(l.lower_covers(cp).len(), 4);
    }

    #[test]
    fn triangle_is_rejected() {
        let g = GreechieDiagram::from_named_blocks(&[
            &["a", "b", "c"],
            &["c", "d", "e"],
            &["e", "f", "a"],
        ])
        .unwrap();
        match from_greechie(&g) {
            Err(BuildError::NotALattice(_)) => {}
            Err(BuildError::AxiomFailure { axiom, .. }) => {
                assert!(matches!(axiom, Axiom::Orthomodular | Axiom::Lattice))
            }
            other => panic!("triangle accepted: {other:?}"),
        }
    }
}

//! Oracles computed on the lattice side, independent of the poset-only code.
#![allow(dead_code)]

use omlkit::bsa::{enumerate_bsas, BsaPoset, EnumerateOptions};
use omlkit::builders::Family;
use omlkit::poset::NodeId;
use omlkit::reconstruct::PlaneCase;
use omlkit::{Elem, Lattice};

pub const CORPUS: &[&str] = &[
    "boolean(1)",
    "boolean(2)",
    "boolean(3)",
    "boolean(4)",
    "boolean(5)",
    "mo(1)",
    "mo(2)",
    "mo(3)",
    "mo(4)",
    "mo(5)",
    "bowtie",
    "chain(3)",
    "product(boolean(2),mo(2))",
    "hsum(boolean(3),boolean(3))",
];

/// Lattices large enough for both generators of a two-dimensional
/// subalgebra to have height at least three.
pub const WIDE: &[&str] = &["boolean(6)", "product(mo(2),boolean(4))"];

pub fn build(expr: &str) -> Lattice {
    expr.parse::<Family>().unwrap().build().unwrap()
}

pub fn bsas(l: &Lattice) -> BsaPoset {
    enumerate_bsas(l, &EnumerateOptions::default()).unwrap()
}

/// Number of set partitions of an `n`-set, by listing restricted growth strings.
pub fn set_partitions(n: usize) -> usize {
    fn go(pos: usize, n: usize, max: usize) -> usize {
        if pos == n {
            return 1;
        }
        (0..=max + 1).map(|b| go(pos + 1, n, max.max(b))).sum()
    }
    if n == 0 {
        1
    } else {
        go(1, n, 0)
    }
}

pub fn non_atoms(l: &Lattice, blocks: &[Elem]) -> Vec<Elem> {
    blocks.iter().copied().filter(|&b| l.height(b) > 1).collect()
}

pub fn spiked(l: &Lattice, blocks: &[Elem]) -> bool {
    non_atoms(l, blocks).len() <= 1
}

pub fn maximal(l: &Lattice, blocks: &[Elem]) -> bool {
    non_atoms(l, blocks).is_empty()
}

pub fn sub_maximal(l: &Lattice, blocks: &[Elem]) -> bool {
    let na = non_atoms(l, blocks);
    na.len() == 1 && l.height(na[0]) == 2
}

/// The non-atom generator of a spiked, non-maximal subalgebra.
pub fn leading(l: &Lattice, blocks: &[Elem]) -> Option<Elem> {
    let na = non_atoms(l, blocks);
    (na.len() == 1).then(|| na[0])
}

/// The case a two-dimensional subalgebra `{P, P'}` falls in, from the
/// heights of `P` and `P'`.
pub fn plane_case_truth(l: &Lattice, blocks: &[Elem]) -> PlaneCase {
    let mut h: Vec<usize> = blocks.iter().map(|&b| l.height(b)).collect();
    h.sort_unstable();
    match (h[0], h[1]) {
        (1, 1) => PlaneCase::Maximal,
        (1, 2) => PlaneCase::MaximalParent,
        (1, _) => PlaneCase::AtomicGenerator,
        _ => PlaneCase::NoAtomicGenerator,
    }
}

/// Element-set inclusion between two subalgebras, recomputed from joins of
/// generator subsets.
pub fn element_set(l: &Lattice, blocks: &[Elem]) -> Vec<bool> {
    let mut out = vec![false; l.size()];
    for mask in 0u32..(1 << blocks.len()) {
        let j = l.join_all((0..blocks.len()).filter(|i| mask >> i & 1 == 1).map(|i| blocks[i]));
        out[j.index()] = true;
    }
    out
}

pub fn contained(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !x || *y)
}

/// `M_V` by the lattice-side definition, over original node ids.
pub fn minimal_spiked_truth(l: &Lattice, b: &BsaPoset, v: NodeId) -> Vec<NodeId> {
    let sets: Vec<Vec<bool>> = b.nodes().iter().map(|p| element_set(l, p.blocks())).collect();
    let vb = b.node(v).blocks();
    if maximal(l, vb) {
        return vec![v];
    }
    let above: Vec<NodeId> = (0..b.len())
        .map(NodeId::new)
        .filter(|&w| contained(&sets[v.index()], &sets[w.index()]))
        .collect();
    if spiked(l, vb) {
        let mut out: Vec<NodeId> = above.into_iter().filter(|&w| maximal(l, b.node(w).blocks())).collect();
        out.push(v);
        out.sort();
        return out;
    }
    let sp: Vec<NodeId> =
        above.into_iter().filter(|&w| w != v && spiked(l, b.node(w).blocks())).collect();
    sp.iter()
        .copied()
        .filter(|&w| !sp.iter().any(|&t| t != w && contained(&sets[t.index()], &sets[w.index()])))
        .collect()
}

/// All bijections, checked one by one. Only for tiny lattices.
pub fn brute_force_isomorphic(l1: &Lattice, l2: &Lattice) -> bool {
    let n = l1.size();
    if l2.size() != n {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let works = |p: &[usize]| {
        (0..n).all(|a| {
            let ea = Elem::new(a);
            p[l1.ortho(ea).index()] == l2.ortho(Elem::new(p[a])).index()
                && (0..n).all(|b| l1.leq(ea, Elem::new(b)) == l2.leq(Elem::new(p[a]), Elem::new(p[b])))
        })
    };
    if works(&perm) {
        return true;
    }
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if works(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

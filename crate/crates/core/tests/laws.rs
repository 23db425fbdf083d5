//! Algebraic laws on randomly relabeled corpus lattices.

mod common;

use common::*;
use omlkit::bsa::{enumerate_bsas, is_grouping_of, EnumerateOptions};
use omlkit::format::oml;
use omlkit::iso::{are_isomorphic, fingerprint, DEFAULT_ISO_BUDGET};
use omlkit::poset::anonymize;
use omlkit::verify::{search_join, search_meet, verify, Axiom, Violation};
use omlkit::{Elem, Lattice};
use proptest::prelude::*;

const SMALL: &[&str] = &[
    "boolean(2)",
    "boolean(3)",
    "boolean(4)",
    "mo(2)",
    "mo(3)",
    "bowtie",
    "chain(3)",
    "product(boolean(1),mo(2))",
    "hsum(boolean(2),boolean(3))",
    "benzene",
];

fn relabeled() -> impl Strategy<Value = Lattice> {
    prop::sample::select(SMALL).prop_flat_map(|expr| {
        let l = if expr == "benzene" { omlkit::builders::benzene() } else { build(expr) };
        let n = l.size();
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(move |p| l.relabel(&p).unwrap())
    })
}

fn elems(l: &Lattice) -> impl Strategy<Value = (Elem, Elem, Elem)> {
    let n = l.size();
    (0..n, 0..n, 0..n).prop_map(|(a, b, c)| (Elem::new(a), Elem::new(b), Elem::new(c)))
}

fn with_elems() -> impl Strategy<Value = (Lattice, (Elem, Elem, Elem))> {
    relabeled().prop_flat_map(|l| {
        let e = elems(&l);
        (Just(l), e)
    })
}

#[test]
fn benzene_breaks_orthomodularity_with_a_real_witness() {
    let l = omlkit::builders::benzene();
    let report = verify(&l);
    let check = report.check(Axiom::Orthomodular);
    match check.witness {
        Some(Violation::NotOrthomodular(a, b)) => {
            assert!(l.leq(a, b));
            assert_ne!(l.join(a, l.meet(l.ortho(a), b)), b);
        }
        ref other => panic!("unexpected {other:?}"),
    }
    assert!(report.check(Axiom::Ortholattice).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lattice_laws((l, (a, b, c)) in with_elems()) {
        prop_assert_eq!(l.meet(a, b), l.meet(b, a));
        prop_assert_eq!(l.join(a, b), l.join(b, a));
        prop_assert_eq!(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
        prop_assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        prop_assert_eq!(l.meet(a, l.join(a, b)), a);
        prop_assert_eq!(l.join(a, l.meet(a, b)), a);
        prop_assert_eq!(Some(l.join(a, b)), search_join(&l, a, b));
        prop_assert_eq!(Some(l.meet(a, b)), search_meet(&l, a, b));
        prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
    }

    #[test]
    fn ortho_laws((l, (a, b, _)) in with_elems()) {
        prop_assert_eq!(l.ortho(l.ortho(a)), a);
        prop_assert_eq!(l.leq(a, b), l.leq(l.ortho(b), l.ortho(a)));
        prop_assert_eq!(l.ortho(l.join(a, b)), l.meet(l.ortho(a), l.ortho(b)));
        prop_assert_eq!(l.meet(a, l.ortho(a)), l.bottom());
        prop_assert_eq!(l.orthogonal(a, b), l.orthogonal(b, a));
    }

    #[test]
    fn orthomodular_law((l, (a, b, _)) in with_elems()) {
        prop_assume!(verify(&l).all_passed());
        let b = l.join(a, b);
        prop_assert_eq!(l.join(a, l.meet(l.ortho(a), b)), b);
    }

    #[test]
    fn atom_decomposition((l, (a, _, _)) in with_elems()) {
        prop_assume!(verify(&l).all_passed());
        let atoms = l.atom_decomposition(a).unwrap();
        prop_assert_eq!(l.join_all(atoms.iter().copied()), a);
        prop_assert!(atoms.len() <= l.height(a));
        for (i, &p) in atoms.iter().enumerate() {
            prop_assert!(l.is_atom(p));
            for &q in &atoms[i + 1..] {
                prop_assert!(l.orthogonal(p, q));
            }
        }
    }

    #[test]
    fn relabeling_preserves_invariants(l in relabeled()) {
        prop_assert!(verify(&l).check(Axiom::Ortholattice).passed());
        let text = oml::serialize(&l);
        let back = oml::parse_unverified(&text).unwrap();
        prop_assert_eq!(&back, &l);
        let f = fingerprint(&l);
        prop_assert_eq!(f.size, l.size());
    }

    #[test]
    fn relabeled_copies_are_isomorphic(l in relabeled(), seed in any::<u64>()) {
        let n = l.size();
        let mut p: Vec<usize> = (0..n).collect();
        p.rotate_left((seed as usize) % n);
        let m = l.relabel(&p).unwrap();
        prop_assert!(are_isomorphic(&l, &m, DEFAULT_ISO_BUDGET).unwrap().is_isomorphic());
        prop_assert_eq!(fingerprint(&l), fingerprint(&m));
    }

    #[test]
    fn grouping_matches_element_inclusion(l in relabeled()) {
        prop_assume!(verify(&l).all_passed());
        let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
        let sets: Vec<Vec<bool>> = b.nodes().iter().map(|p| element_set(&l, p.blocks())).collect();
        for (i, p) in b.nodes().iter().enumerate() {
            for (j, q) in b.nodes().iter().enumerate() {
                prop_assert_eq!(is_grouping_of(&l, p, q), contained(&sets[i], &sets[j]));
                prop_assert_eq!(b.includes(omlkit::NodeId::new(i), omlkit::NodeId::new(j)), contained(&sets[i], &sets[j]));
            }
        }
    }

    #[test]
    fn enumeration_ignores_labels(l in relabeled(), seed in any::<u64>()) {
        prop_assume!(verify(&l).all_passed());
        let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
        let a = anonymize(b.poset(), seed);
        prop_assert_eq!(a.poset.covers().len(), b.poset().covers().len());
        prop_assert_eq!(b.dimension(omlkit::NodeId(0)), 1);
    }
}

use omlkit::bsa::{enumerate_bsas, EnumerateOptions};
use omlkit::builders::Family;
use omlkit::harness::{false_relations, hidden_images};
use omlkit::iso::{are_isomorphic, is_isomorphism, DEFAULT_ISO_BUDGET};
use omlkit::reconstruct::{reconstruct, ReconstructOptions};
use omlkit::Lattice;

const CORPUS: &[&str] = &[
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

fn build(expr: &str) -> Lattice {
    expr.parse::<Family>().unwrap().build().unwrap()
}

#[test]
fn corpus_reconstructs_up_to_isomorphism() {
    for expr in CORPUS {
        let l = build(expr);
        let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
        for seed in 0..3 {
            let anon = b.anonymize(seed);
            let r = reconstruct(&anon.poset, &ReconstructOptions::default())
                .unwrap_or_else(|e| panic!("{expr} seed {seed}: {e}"));
            assert_eq!(r.lattice.size(), l.size(), "{expr}");
            let iso = are_isomorphic(&l, &r.lattice, DEFAULT_ISO_BUDGET).unwrap();
            assert!(iso.is_isomorphic(), "{expr} seed {seed}: {iso}");
        }
    }
}

#[test]
fn hidden_map_is_an_isomorphism() {
    for expr in CORPUS {
        let l = build(expr);
        let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
        let anon = b.anonymize(42);
        let r = reconstruct(&anon.poset, &ReconstructOptions::default()).unwrap();
        let images = hidden_images(&l, &b, &anon, &r).unwrap_or_else(|e| panic!("{expr}: {e}"));
        assert!(false_relations(&l, &r, &images).is_empty(), "{expr}");
        assert!(is_isomorphism(&r.lattice, &l, &images), "{expr}");
    }
}

#[test]
fn output_is_independent_of_seed_up_to_node_names() {
    let l = build("bowtie");
    let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
    let sizes: Vec<usize> = (0..5)
        .map(|s| reconstruct(&b.anonymize(s).poset, &ReconstructOptions::default()).unwrap().relations.len())
        .collect();
    assert!(sizes.windows(2).all(|w| w[0] == w[1]), "{sizes:?}");
}

#[test]
fn larger_lattices_round_trip() {
    for expr in ["boolean(6)", "product(mo(2),boolean(4))"] {
        let l = build(expr);
        let b = enumerate_bsas(&l, &EnumerateOptions::default()).unwrap();
        let anon = b.anonymize(1);
        let r = reconstruct(&anon.poset, &ReconstructOptions::default()).unwrap_or_else(|e| panic!("{expr}: {e}"));
        let images = hidden_images(&l, &b, &anon, &r).unwrap_or_else(|e| panic!("{expr}: {e}"));
        assert!(is_isomorphism(&r.lattice, &l, &images), "{expr}");
    }
}

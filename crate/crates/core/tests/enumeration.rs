mod common;

use common::*;
use omlkit::bsa::{enumerate_bsas, BsaError, EnumerateOptions};
use omlkit::NodeId;

#[test]
fn boolean_counts_are_set_partition_counts() {
    for n in 1..=6 {
        let b = bsas(&build(&format!("boolean({n})")));
        assert_eq!(b.len(), set_partitions(n), "2^{n}");
    }
    assert_eq!((1..=5).map(set_partitions).collect::<Vec<_>>(), [1, 2, 5, 15, 52]);
}

#[test]
fn other_counts() {
    for n in 1..=5 {
        assert_eq!(bsas(&build(&format!("mo({n})"))).len(), n + 1);
    }
    assert_eq!(bsas(&build("bowtie")).len(), 8);
}

#[test]
fn covers_are_inclusions_one_dimension_apart() {
    for expr in CORPUS {
        let l = build(expr);
        let b = bsas(&l);
        for &(x, y) in b.poset().covers() {
            assert!(b.includes(x, y), "{expr}");
            assert_eq!(b.dimension(x) + 1, b.dimension(y), "{expr}");
        }
        let up = b.poset().up_sets();
        for (i, row) in up.iter().enumerate() {
            for j in 0..b.len() {
                let (v, w) = (NodeId::new(i), NodeId::new(j));
                assert_eq!(row.contains(j), b.includes(v, w), "{expr} {v} {w}");
            }
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let l = build("product(mo(2),boolean(3))");
    let a = enumerate_bsas(&l, &EnumerateOptions { parallel: true, ..Default::default() }).unwrap();
    let b = enumerate_bsas(&l, &EnumerateOptions { parallel: false, ..Default::default() }).unwrap();
    assert_eq!(a.nodes(), b.nodes());
    assert_eq!(a.poset(), b.poset());
}

#[test]
fn budget_is_an_error() {
    let l = build("boolean(6)");
    let r = enumerate_bsas(&l, &EnumerateOptions { budget: 50, ..Default::default() });
    assert!(matches!(r, Err(BsaError::Budget { limit: 50 })));
}

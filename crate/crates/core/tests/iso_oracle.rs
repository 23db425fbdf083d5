mod common;

use common::*;
use omlkit::builders::benzene;
use omlkit::iso::{are_isomorphic, is_isomorphism, DEFAULT_ISO_BUDGET};
use omlkit::Lattice;

fn tiny() -> Vec<(String, Lattice)> {
    let mut out: Vec<(String, Lattice)> = ["boolean(1)", "boolean(2)", "boolean(3)", "mo(1)", "mo(2)", "mo(3)", "mo(4)"]
        .iter()
        .map(|e| (e.to_string(), build(e)))
        .collect();
    out.push(("benzene".into(), benzene()));
    let shuffled: Vec<(String, Lattice)> = out
        .iter()
        .map(|(name, l)| {
            let n = l.size();
            let perm: Vec<usize> = (0..n).map(|i| (i * 3 + 1) % n).collect();
            let perm = if is_permutation(&perm) { perm } else { (0..n).rev().collect() };
            (format!("{name}*"), l.relabel(&perm).unwrap())
        })
        .collect();
    out.extend(shuffled);
    out
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
}

#[test]
fn agrees_with_brute_force_on_tiny_lattices() {
    let all = tiny();
    for (n1, l1) in &all {
        for (n2, l2) in &all {
            let fast = are_isomorphic(l1, l2, DEFAULT_ISO_BUDGET).unwrap();
            let slow = brute_force_isomorphic(l1, l2);
            assert_eq!(fast.is_isomorphic(), slow, "{n1} vs {n2}");
            let back = are_isomorphic(l2, l1, DEFAULT_ISO_BUDGET).unwrap();
            assert_eq!(fast.is_isomorphic(), back.is_isomorphic(), "{n1} vs {n2}");
            if let Some(w) = fast.witness() {
                assert!(is_isomorphism(l1, l2, w));
            }
        }
    }
}

#[test]
fn boolean_three_and_mo_three_differ() {
    let (b, m) = (build("boolean(3)"), build("mo(3)"));
    assert!(!are_isomorphic(&b, &m, DEFAULT_ISO_BUDGET).unwrap().is_isomorphic());
    assert!(!brute_force_isomorphic(&b, &m));
}

#[test]
fn constructor_identities() {
    let pairs = [
        ("hsum(boolean(2),boolean(2))", "mo(2)"),
        ("product(boolean(1),boolean(2))", "boolean(3)"),
        ("product(boolean(2),boolean(3))", "boolean(5)"),
        ("hsum(mo(2),boolean(2))", "mo(3)"),
    ];
    for (a, b) in pairs {
        assert!(are_isomorphic(&build(a), &build(b), DEFAULT_ISO_BUDGET).unwrap().is_isomorphic(), "{a} vs {b}");
    }
}

#[test]
fn reflexive_on_corpus() {
    for expr in CORPUS {
        let l = build(expr);
        let r = are_isomorphic(&l, &l, DEFAULT_ISO_BUDGET).unwrap();
        assert!(r.is_isomorphic(), "{expr}");
    }
}

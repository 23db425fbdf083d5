//! Exhaustive axiom checks for finite ortholattices.

use std::fmt;

use crate::lattice::{Elem, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Poset,
    Lattice,
    Ortholattice,
    Orthomodular,
    Atomic,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Poset,
        Axiom::Lattice,
        Axiom::Ortholattice,
        Axiom::Orthomodular,
        Axiom::Atomic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Poset => "poset",
            Axiom::Lattice => "lattice",
            Axiom::Ortholattice => "ortholattice",
            Axiom::Orthomodular => "orthomodular",
            Axiom::Atomic => "atomic",
        }
    }
}

/// A counterexample to one axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive(Elem),
    NotAntisymmetric(Elem, Elem),
    NotTransitive(Elem, Elem, Elem),
    NoMeet(Elem, Elem),
    NoJoin(Elem, Elem),
    NotInvolution(Elem),
    NotOrderReversing(Elem, Elem),
    NotComplement(Elem),
    /// `a <= b` but `a ∨ (a⊥ ∧ b) != b`.
    NotOrthomodular(Elem, Elem),
    NoAtomBelow(Elem),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive(a) => write!(f, "not {a} <= {a}"),
            Violation::NotAntisymmetric(a, b) => write!(f, "{a} <= {b} <= {a}"),
            Violation::NotTransitive(a, b, c) => {
                write!(f, "{a} <= {b} <= {c} but not {a} <= {c}")
            }
            Violation::NoMeet(a, b) => write!(f, "no meet of {a} and {b}"),
            Violation::NoJoin(a, b) => write!(f, "no join of {a} and {b}"),
            Violation::NotInvolution(a) => write!(f, "ortho(ortho({a})) != {a}"),
            Violation::NotOrderReversing(a, b) => {
                write!(f, "{a} <= {b} but not ortho({b}) <= ortho({a})")
            }
            Violation::NotComplement(a) => {
                write!(f, "{a} and ortho({a}) are not complements")
            }
            Violation::NotOrthomodular(a, b) => {
                write!(f, "{a} <= {b} but {a} ∨ ({a}⊥ ∧ {b}) != {b}")
            }
            Violation::NoAtomBelow(a) => write!(f, "no atom below nonzero element {a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witness: Option<Violation>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<AxiomCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is reported")
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "{:<13} pass", c.axiom.name())?,
                Some(w) => writeln!(f, "{:<13} FAIL  {w}", c.axiom.name())?,
            }
        }
        Ok(())
    }
}

/// Checks every axiom exhaustively. The poset and lattice checks recompute
/// bounds by brute-force search instead of trusting the stored tables.
pub fn verify(l: &Lattice) -> VerifyReport {
    let checks = vec![
        AxiomCheck { axiom: Axiom::Poset, witness: check_poset(l) },
        AxiomCheck { axiom: Axiom::Lattice, witness: check_bounds(l) },
        AxiomCheck { axiom: Axiom::Ortholattice, witness: check_ortho(l) },
        AxiomCheck { axiom: Axiom::Orthomodular, witness: check_orthomodular(l) },
        AxiomCheck { axiom: Axiom::Atomic, witness: check_atomic(l) },
    ];
    VerifyReport { checks }
}

fn check_poset(l: &Lattice) -> Option<Violation> {
    for a in l.elements() {
        if !l.leq(a, a) {
            return Some(Violation::NotReflexive(a));
        }
        for b in l.elements() {
            if a != b && l.leq(a, b) && l.leq(b, a) {
                return Some(Violation::NotAntisymmetric(a, b));
            }
            if !l.leq(a, b) {
                continue;
            }
            if let Some(c) = l.up_set(b).difference(l.up_set(a)).next() {
                return Some(Violation::NotTransitive(a, b, Elem::new(c)));
            }
        }
    }
    None
}

/// Least upper bound by scanning all elements.
pub fn search_join(l: &Lattice, a: Elem, b: Elem) -> Option<Elem> {
    let uppers: Vec<Elem> = l
        .elements()
        .filter(|&c| l.leq(a, c) && l.leq(b, c))
        .collect();
    uppers
        .iter()
        .copied()
        .find(|&c| uppers.iter().all(|&u| l.leq(c, u)))
}

/// Greatest lower bound by scanning all elements.
pub fn search_meet(l: &Lattice, a: Elem, b: Elem) -> Option<Elem> {
    let lowers: Vec<Elem> = l
        .elements()
        .filter(|&c| l.leq(c, a) && l.leq(c, b))
        .collect();
    lowers
        .iter()
        .copied()
        .find(|&c| lowers.iter().all(|&w| l.leq(w, c)))
}

fn check_bounds(l: &Lattice) -> Option<Violation> {
    for a in l.elements() {
        for b in l.elements().filter(|&b| b >= a) {
            if search_meet(l, a, b) != Some(l.meet(a, b)) {
                return Some(Violation::NoMeet(a, b));
            }
            if search_join(l, a, b) != Some(l.join(a, b)) {
                return Some(Violation::NoJoin(a, b));
            }
        }
    }
    None
}

fn check_ortho(l: &Lattice) -> Option<Violation> {
    for a in l.elements() {
        if l.ortho(l.ortho(a)) != a {
            return Some(Violation::NotInvolution(a));
        }
        let o = l.ortho(a);
        if l.meet(a, o) != l.bottom() || l.join(a, o) != l.top() {
            return Some(Violation::NotComplement(a));
        }
    }
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b) && !l.leq(l.ortho(b), l.ortho(a)) {
                return Some(Violation::NotOrderReversing(a, b));
            }
        }
    }
    None
}

fn check_orthomodular(l: &Lattice) -> Option<Violation> {
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b) && l.join(a, l.meet(l.ortho(a), b)) != b {
                return Some(Violation::NotOrthomodular(a, b));
            }
        }
    }
    None
}

fn check_atomic(l: &Lattice) -> Option<Violation> {
    l.elements()
        .filter(|&a| a != l.bottom())
        .find(|&a| !l.down_set(a).ones().any(|q| l.is_atom(Elem::new(q))))
        .map(Violation::NoAtomBelow)
}

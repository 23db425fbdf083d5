//! Ortholattice isomorphism by backtracking, with cheap invariants first.

use std::fmt;

use thiserror::Error;

use crate::bsa::{enumerate_bsas, BsaError, EnumerateOptions};
use crate::lattice::{Elem, Lattice};
use crate::reconstruct::{reconstruct, ReconstructError, ReconstructOptions, SupCase};

pub const DEFAULT_ISO_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("isomorphism search exceeded its budget of {limit} steps")]
pub struct IsoBudgetExceeded {
    pub limit: u64,
}

/// Per-element invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSignature {
    pub height: usize,
    pub up_degree: usize,
    pub down_degree: usize,
    pub upper_covers: usize,
    pub lower_covers: usize,
    /// 1 if the element is its own complement, else 2.
    pub ortho_orbit: usize,
    pub ortho_height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub size: usize,
    pub height: usize,
    pub per_height: Vec<usize>,
    pub atoms: usize,
    /// Sorted.
    pub elements: Vec<ElementSignature>,
}

pub fn signature(l: &Lattice, a: Elem) -> ElementSignature {
    let o = l.ortho(a);
    ElementSignature {
        height: l.height(a),
        up_degree: l.up_set(a).count_ones(..),
        down_degree: l.down_set(a).count_ones(..),
        upper_covers: l.upper_covers(a).len(),
        lower_covers: l.lower_covers(a).len(),
        ortho_orbit: if o == a { 1 } else { 2 },
        ortho_height: l.height(o),
    }
}

pub fn fingerprint(l: &Lattice) -> Fingerprint {
    let height = l.height(l.top());
    let mut per_height = vec![0; height + 1];
    for a in l.elements() {
        per_height[l.height(a)] += 1;
    }
    let mut elements: Vec<ElementSignature> = l.elements().map(|a| signature(l, a)).collect();
    elements.sort_unstable();
    Fingerprint { size: l.size(), height, per_height, atoms: l.atoms().count(), elements }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Size(usize, usize),
    Height(usize, usize),
    Atoms(usize, usize),
    ElementSignatures,
    /// Invariants agree but the search found no isomorphism.
    Exhausted,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::Size(a, b) => write!(f, "sizes differ ({a} vs {b})"),
            Refutation::Height(a, b) => write!(f, "heights differ ({a} vs {b})"),
            Refutation::Atoms(a, b) => write!(f, "atom counts differ ({a} vs {b})"),
            Refutation::ElementSignatures => write!(f, "element signatures differ"),
            Refutation::Exhausted => write!(f, "no order- and ortho-preserving bijection"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// `map[a]` is the image in the second lattice of element `a` of the first.
    Isomorphic(Vec<Elem>),
    NotIsomorphic(Refutation),
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&[Elem]> {
        match self {
            IsoResult::Isomorphic(m) => Some(m),
            IsoResult::NotIsomorphic(_) => None,
        }
    }
}

impl fmt::Display for IsoResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoResult::Isomorphic(_) => write!(f, "isomorphic"),
            IsoResult::NotIsomorphic(r) => write!(f, "not isomorphic: {r}"),
        }
    }
}

/// Checks exhaustively that `map` is a bijection preserving order both
/// ways and commuting with the orthocomplement.
pub fn is_isomorphism(l1: &Lattice, l2: &Lattice, map: &[Elem]) -> bool {
    let n = l1.size();
    if l2.size() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &b in map {
        if b.index() >= n || std::mem::replace(&mut seen[b.index()], true) {
            return false;
        }
    }
    l1.elements().all(|a| {
        map[l1.ortho(a).index()] == l2.ortho(map[a.index()])
            && l1.elements().all(|b| l1.leq(a, b) == l2.leq(map[a.index()], map[b.index()]))
    })
}

struct Search<'a> {
    l1: &'a Lattice,
    l2: &'a Lattice,
    sig1: Vec<ElementSignature>,
    sig2: Vec<ElementSignature>,
    order: Vec<Elem>,
    map: Vec<Option<Elem>>,
    used: Vec<bool>,
    mapped: Vec<Elem>,
    steps: u64,
    limit: u64,
}

impl Search<'_> {
    fn consistent(&self, a: Elem, b: Elem) -> bool {
        self.sig1[a.index()] == self.sig2[b.index()]
            && self.mapped.iter().all(|&x| {
                let y = self.map[x.index()].unwrap();
                self.l1.leq(x, a) == self.l2.leq(y, b) && self.l1.leq(a, x) == self.l2.leq(b, y)
            })
    }

    fn assign(&mut self, a: Elem, b: Elem) {
        self.map[a.index()] = Some(b);
        self.used[b.index()] = true;
        self.mapped.push(a);
    }

    fn unassign(&mut self, a: Elem) {
        let b = self.map[a.index()].take().unwrap();
        self.used[b.index()] = false;
        self.mapped.pop();
    }

    fn run(&mut self, pos: usize) -> Result<bool, IsoBudgetExceeded> {
        let Some(&a) = self.order[pos..].iter().find(|a| self.map[a.index()].is_none()) else {
            return Ok(true);
        };
        let oa = self.l1.ortho(a);
        for b in self.l2.elements() {
            if self.used[b.index()] {
                continue;
            }
            self.steps += 1;
            if self.steps > self.limit {
                return Err(IsoBudgetExceeded { limit: self.limit });
            }
            let ob = self.l2.ortho(b);
            if (oa == a) != (ob == b) || !self.consistent(a, b) {
                continue;
            }
            self.assign(a, b);
            if oa != a {
                if self.used[ob.index()] || !self.consistent(oa, ob) {
                    self.unassign(a);
                    continue;
                }
                self.assign(oa, ob);
            }
            if self.run(pos + 1)? {
                return Ok(true);
            }
            if oa != a {
                self.unassign(oa);
            }
            self.unassign(a);
        }
        Ok(false)
    }
}

pub fn are_isomorphic(l1: &Lattice, l2: &Lattice, budget: u64) -> Result<IsoResult, IsoBudgetExceeded> {
    if l1.size() != l2.size() {
        return Ok(IsoResult::NotIsomorphic(Refutation::Size(l1.size(), l2.size())));
    }
    let (f1, f2) = (fingerprint(l1), fingerprint(l2));
    if f1.atoms != f2.atoms {
        return Ok(IsoResult::NotIsomorphic(Refutation::Atoms(f1.atoms, f2.atoms)));
    }
    if f1.height != f2.height {
        return Ok(IsoResult::NotIsomorphic(Refutation::Height(f1.height, f2.height)));
    }
    if f1 != f2 {
        return Ok(IsoResult::NotIsomorphic(Refutation::ElementSignatures));
    }
    let n = l1.size();
    let mut order: Vec<Elem> = l1.elements().collect();
    order.sort_by_key(|&a| (l1.height(a), a));
    let mut s = Search {
        l1,
        l2,
        sig1: l1.elements().map(|a| signature(l1, a)).collect(),
        sig2: l2.elements().map(|a| signature(l2, a)).collect(),
        order,
        map: vec![None; n],
        used: vec![false; n],
        mapped: Vec::with_capacity(n),
        steps: 0,
        limit: budget,
    };
    if !s.run(0)? {
        return Ok(IsoResult::NotIsomorphic(Refutation::Exhausted));
    }
    let map: Vec<Elem> = s.map.into_iter().map(Option::unwrap).collect();
    assert!(is_isomorphism(l1, l2, &map), "search produced an invalid witness");
    Ok(IsoResult::Isomorphic(map))
}

#[derive(Clone, Copy, Debug)]
pub struct RoundTripOptions {
    pub seed: u64,
    pub enumerate: EnumerateOptions,
    pub reconstruct: ReconstructOptions,
    pub iso_budget: u64,
}

impl Default for RoundTripOptions {
    fn default() -> Self {
        RoundTripOptions {
            seed: 0,
            enumerate: EnumerateOptions::default(),
            reconstruct: ReconstructOptions::default(),
            iso_budget: DEFAULT_ISO_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic(Refutation),
    EnumerationFailed(BsaError),
    ReconstructionFailed(ReconstructError),
    SearchBudget(IsoBudgetExceeded),
}

impl Verdict {
    pub fn is_isomorphic(&self) -> bool {
        *self == Verdict::Isomorphic
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Isomorphic => write!(f, "isomorphic"),
            Verdict::NotIsomorphic(r) => write!(f, "not isomorphic: {r}"),
            Verdict::EnumerationFailed(e) => write!(f, "enumeration failure: {e}"),
            Verdict::ReconstructionFailed(e) => write!(f, "reconstruction failure: {e} (stage {})", e.stage()),
            Verdict::SearchBudget(e) => write!(f, "inconclusive: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripReport {
    pub lattice_size: usize,
    pub nodes: Option<usize>,
    pub reconstructed_size: Option<usize>,
    pub cases: Option<[(SupCase, usize); 4]>,
    pub verdict: Verdict,
}

impl fmt::Display for RoundTripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        writeln!(f, "elements: {}", self.lattice_size)?;
        writeln!(f, "nodes: {}", opt(self.nodes))?;
        writeln!(f, "reconstructed elements: {}", opt(self.reconstructed_size))?;
        if let Some(cases) = &self.cases {
            let parts: Vec<String> = cases.iter().map(|(c, k)| format!("{}={k}", c.name())).collect();
            writeln!(f, "cases: {}", parts.join(" "))?;
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}

/// Enumerates, anonymizes, reconstructs and compares with the original.
pub fn check_reconstruction(l: &Lattice, opts: &RoundTripOptions) -> RoundTripReport {
    let mut report = RoundTripReport {
        lattice_size: l.size(),
        nodes: None,
        reconstructed_size: None,
        cases: None,
        verdict: Verdict::Isomorphic,
    };
    let bsas = match enumerate_bsas(l, &opts.enumerate) {
        Ok(b) => b,
        Err(e) => {
            report.verdict = Verdict::EnumerationFailed(e);
            return report;
        }
    };
    report.nodes = Some(bsas.len());
    let anon = bsas.anonymize(opts.seed);
    let r = match reconstruct(&anon.poset, &opts.reconstruct) {
        Ok(r) => r,
        Err(e) => {
            report.verdict = Verdict::ReconstructionFailed(e);
            return report;
        }
    };
    report.reconstructed_size = Some(r.lattice.size());
    report.cases = Some(r.case_counts());
    report.verdict = match are_isomorphic(l, &r.lattice, opts.iso_budget) {
        Ok(IsoResult::Isomorphic(_)) => Verdict::Isomorphic,
        Ok(IsoResult::NotIsomorphic(why)) => Verdict::NotIsomorphic(why),
        Err(e) => Verdict::SearchBudget(e),
    };
    report
}

//! Constructors for the standard finite orthomodular lattices.
//!
//! Every constructor runs the full axiom check on its output and refuses to
//! return anything that is not an atomic orthomodular lattice. The one
//! exception is [`benzene`], which exists precisely as a counterexample.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::greechie::{from_greechie, GreechieDiagram};
use crate::lattice::{Elem, Lattice, LatticeError};
use crate::verify::{verify, Axiom, Violation};

/// Largest supported Boolean algebra; tables are quadratic in `2^n`.
pub const MAX_BOOLEAN_ATOMS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("invalid Greechie diagram: {0}")]
    InvalidDiagram(String),
    #[error("not a lattice: {0}")]
    NotALattice(#[from] LatticeError),
    #[error("{} axiom fails: {witness}", axiom.name())]
    AxiomFailure { axiom: Axiom, witness: Violation },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Parse(String),
}

/// Runs [`verify`] and converts the first failing axiom into an error.
pub fn checked(l: Lattice) -> Result<Lattice, BuildError> {
    let report = verify(&l);
    match report.first_failure() {
        None => Ok(l),
        Some(c) => Err(BuildError::AxiomFailure {
            axiom: c.axiom,
            witness: c.witness.clone().expect("failed check has a witness"),
        }),
    }
}

/// The power-set lattice on `n` atoms. Element ids are bit masks.
pub fn boolean_algebra(n: usize) -> Result<Lattice, BuildError> {
    if !(1..=MAX_BOOLEAN_ATOMS).contains(&n) {
        return Err(BuildError::Range(format!(
            "boolean algebra needs 1..={MAX_BOOLEAN_ATOMS} atoms, got {n}"
        )));
    }
    let size = 1usize << n;
    let full = size - 1;
    let up = (0..size)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(size);
            for b in 0..size {
                if a & b == a {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    let ortho = (0..size).map(|a| full & !a).collect();
    let labels = (0..size)
        .map(|a| match a {
            0 => "0".to_string(),
            _ if a == full => "1".to_string(),
            _ => (0..n)
                .filter(|i| a & (1 << i) != 0)
                .map(|i| format!("p{}", i + 1))
                .collect::<Vec<_>>()
                .join("+"),
        })
        .collect();
    checked(Lattice::new(up, ortho, Some(labels))?)
}

/// MO(n): `0`, `1`, and `n` complementary pairs of mutually incomparable atoms.
///
/// Ids: `0` is the bottom, `2i-1` and `2i` are `a_i` and `a_i⊥`, `2n+1` is the top.
pub fn mo(n: usize) -> Result<Lattice, BuildError> {
    if n == 0 {
        return Err(BuildError::Range("MO(n) needs n >= 1".into()));
    }
    let top = 2 * n + 1;
    let mut covers = Vec::with_capacity(4 * n);
    let mut ortho = vec![0; top + 1];
    let mut labels = vec!["0".to_string(); top + 1];
    for i in 1..=n {
        let (a, b) = (2 * i - 1, 2 * i);
        covers.extend([(0, a), (0, b), (a, top), (b, top)]);
        ortho[a] = b;
        ortho[b] = a;
        labels[a] = format!("a{i}");
        labels[b] = format!("a{i}'");
    }
    ortho[0] = top;
    ortho[top] = 0;
    labels[top] = "1".to_string();
    checked(Lattice::from_covers(top + 1, &covers, ortho, Some(labels))?)
}

/// Componentwise order and orthocomplement; element `(i, j)` has id `i * |l2| + j`.
pub fn direct_product(l1: &Lattice, l2: &Lattice) -> Result<Lattice, BuildError> {
    let (n1, n2) = (l1.size(), l2.size());
    let size = n1 * n2;
    let mut up = vec![FixedBitSet::with_capacity(size); size];
    let mut ortho = vec![0; size];
    let mut labels = Vec::with_capacity(size);
    for i in l1.elements() {
        for j in l2.elements() {
            let id = i.index() * n2 + j.index();
            for k in l1.up_set(i).ones() {
                for m in l2.up_set(j).ones() {
                    up[id].insert(k * n2 + m);
                }
            }
            ortho[id] = l1.ortho(i).index() * n2 + l2.ortho(j).index();
            labels.push(format!("({},{})", l1.name(i), l2.name(j)));
        }
    }
    checked(Lattice::new(up, ortho, Some(labels))?)
}

/// Glues `l1` and `l2` at their bottoms and tops; all other elements of the
/// two summands are incomparable.
pub fn horizontal_sum(l1: &Lattice, l2: &Lattice) -> Result<Lattice, BuildError> {
    if l1.size() < 2 || l2.size() < 2 {
        return Err(BuildError::Range("horizontal sum needs summands with >= 2 elements".into()));
    }
    // Ids: 0 bottom, then l1's middle, then l2's middle, then top.
    let middle = |l: &Lattice| -> Vec<Elem> {
        l.elements().filter(|&e| e != l.bottom() && e != l.top()).collect()
    };
    let (m1, m2) = (middle(l1), middle(l2));
    let size = m1.len() + m2.len() + 2;
    let top = size - 1;
    let mut map1 = vec![0; l1.size()];
    let mut map2 = vec![0; l2.size()];
    map1[l1.top().index()] = top;
    map2[l2.top().index()] = top;
    for (k, e) in m1.iter().enumerate() {
        map1[e.index()] = k + 1;
    }
    for (k, e) in m2.iter().enumerate() {
        map2[e.index()] = m1.len() + k + 1;
    }
    let mut up = vec![FixedBitSet::with_capacity(size); size];
    let mut ortho = vec![0; size];
    let mut labels = vec![String::new(); size];
    up[0].insert_range(..);
    for (l, map, tag) in [(l1, &map1, "L"), (l2, &map2, "R")] {
        for e in l.elements() {
            let id = map[e.index()];
            if id == 0 {
                continue;
            }
            for f in l.up_set(e).ones() {
                up[id].insert(map[f]);
            }
            ortho[id] = map[l.ortho(e).index()];
            labels[id] = if id == top {
                "1".to_string()
            } else {
                format!("{tag}.{}", l.name(e))
            };
        }
    }
    ortho[0] = top;
    labels[0] = "0".to_string();
    checked(Lattice::new(up, ortho, Some(labels))?)
}

/// The six-element "benzene ring" ortholattice O6: `0 < x < y < 1`,
/// `0 < y⊥ < x⊥ < 1`. It is an ortholattice but not orthomodular, so it is
/// returned unverified.
pub fn benzene() -> Lattice {
    // 0, x, y, y', x', 1
    let covers = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
    let ortho = vec![5, 4, 3, 2, 1, 0];
    let labels = ["0", "x", "y", "y'", "x'", "1"].map(String::from).to_vec();
    Lattice::from_covers(6, &covers, ortho, Some(labels)).expect("O6 is a lattice")
}

/// Two three-atom blocks sharing the atom `c`.
pub fn bowtie_diagram() -> GreechieDiagram {
    GreechieDiagram::from_named_blocks(&[&["a", "b", "c"], &["c", "d", "e"]])
        .expect("bowtie diagram is valid")
}

/// `k` three-atom blocks in a path, consecutive blocks sharing one atom.
pub fn chain_diagram(k: usize) -> Result<GreechieDiagram, BuildError> {
    if k == 0 {
        return Err(BuildError::Range("a block chain needs at least one block".into()));
    }
    let name = |i: usize| format!("x{i}");
    let atoms: Vec<String> = (0..=2 * k).map(name).collect();
    let blocks = (0..k).map(|b| vec![2 * b, 2 * b + 1, 2 * b + 2]).collect();
    GreechieDiagram::new(atoms, blocks)
}

/// Three three-atom blocks pasted in a loop; not a lattice.
pub fn triangle_diagram() -> GreechieDiagram {
    GreechieDiagram::from_named_blocks(&[&["a", "b", "c"], &["c", "d", "e"], &["e", "f", "a"]])
        .expect("triangle diagram is valid")
}

pub fn bowtie() -> Result<Lattice, BuildError> {
    from_greechie(&bowtie_diagram())
}

/// A lattice family expression, e.g. `boolean(3)`, `mo(2)`, `bowtie`,
/// `chain(3)`, `product(boolean(2),mo(2))`, `hsum(boolean(3),boolean(3))`,
/// `oml(path/to/file.oml)` or `gd(path/to/file.gd)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Boolean(usize),
    Mo(usize),
    Bowtie,
    Chain(usize),
    Triangle,
    Benzene,
    Product(Box<Family>, Box<Family>),
    HorizontalSum(Box<Family>, Box<Family>),
    OmlFile(String),
    GreechieFile(String),
}

impl Family {
    pub fn build(&self) -> Result<Lattice, BuildError> {
        match self {
            Family::Boolean(n) => boolean_algebra(*n),
            Family::Mo(n) => mo(*n),
            Family::Bowtie => bowtie(),
            Family::Chain(k) => from_greechie(&chain_diagram(*k)?),
            Family::Triangle => from_greechie(&triangle_diagram()),
            Family::Benzene => checked(benzene()),
            Family::Product(a, b) => direct_product(&a.build()?, &b.build()?),
            Family::HorizontalSum(a, b) => horizontal_sum(&a.build()?, &b.build()?),
            Family::OmlFile(path) => {
                let text = read(path)?;
                crate::format::oml::parse(&text).map_err(|e| BuildError::Parse(format!("{path}: {e}")))
            }
            Family::GreechieFile(path) => {
                let text = read(path)?;
                let g = crate::format::gd::parse(&text)
                    .map_err(|e| BuildError::Parse(format!("{path}: {e}")))?;
                from_greechie(&g)
            }
        }
    }
}

fn read(path: &str) -> Result<String, BuildError> {
    std::fs::read_to_string(path).map_err(|e| BuildError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Boolean(n) => write!(f, "boolean({n})"),
            Family::Mo(n) => write!(f, "mo({n})"),
            Family::Bowtie => write!(f, "bowtie"),
            Family::Chain(k) => write!(f, "chain({k})"),
            Family::Triangle => write!(f, "triangle"),
            Family::Benzene => write!(f, "benzene"),
            Family::Product(a, b) => write!(f, "product({a},{b})"),
            Family::HorizontalSum(a, b) => write!(f, "hsum({a},{b})"),
            Family::OmlFile(p) => write!(f, "oml({p})"),
            Family::GreechieFile(p) => write!(f, "gd({p})"),
        }
    }
}

impl FromStr for Family {
    type Err = BuildError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ExprParser { src: s.trim(), pos: 0 };
        let fam = p.family()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(fam)
    }
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> BuildError {
        BuildError::Parse(format!("family expression {:?} at offset {}: {msg}", self.src, self.pos))
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), BuildError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| c == '(' || c == ')' || c == ',' || c.is_whitespace())
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn number(&mut self) -> Result<usize, BuildError> {
        let w = self.word().to_string();
        w.parse().map_err(|_| self.error(&format!("expected a number, found {w:?}")))
    }

    fn family(&mut self) -> Result<Family, BuildError> {
        let name = self.word().to_ascii_lowercase();
        let fam = match name.as_str() {
            "bowtie" => Family::Bowtie,
            "triangle" => Family::Triangle,
            "benzene" | "o6" => Family::Benzene,
            "boolean" | "mo" | "chain" => {
                self.expect('(')?;
                let n = self.number()?;
                self.expect(')')?;
                match name.as_str() {
                    "boolean" => Family::Boolean(n),
                    "mo" => Family::Mo(n),
                    _ => Family::Chain(n),
                }
            }
            "product" | "hsum" => {
                self.expect('(')?;
                let a = Box::new(self.family()?);
                self.expect(',')?;
                let b = Box::new(self.family()?);
                self.expect(')')?;
                if name == "product" {
                    Family::Product(a, b)
                } else {
                    Family::HorizontalSum(a, b)
                }
            }
            "oml" | "gd" => {
                self.expect('(')?;
                let path = self.word().to_string();
                if path.is_empty() {
                    return Err(self.error("expected a path"));
                }
                self.expect(')')?;
                if name == "oml" {
                    Family::OmlFile(path)
                } else {
                    Family::GreechieFile(path)
                }
            }
            "" => return Err(self.error("expected a family name")),
            other => return Err(self.error(&format!("unknown family {other:?}"))),
        };
        Ok(fam)
    }
}

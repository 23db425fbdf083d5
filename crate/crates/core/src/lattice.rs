//! Finite bounded ortholattices over dense element ids.
//!
//! The order relation is stored as bit rows: `up[a]` is the up-set
//! `{ b : a <= b }` and `down[a]` the down-set `{ b : b <= a }`. Meets and
//! joins are tabulated once at construction, so every query after that is a
//! table or bit lookup.

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// An element id of a [`Lattice`]. Ids are dense: `0..lattice.size()`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("element id {id} out of range for a lattice of size {size}")]
    OutOfRange { id: usize, size: usize },
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("order relation has {rows} rows but the lattice has {size} elements")]
    ShapeMismatch { rows: usize, size: usize },
    #[error("order is not reflexive at element {0}")]
    NotReflexive(Elem),
    #[error("order is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(Elem, Elem),
    #[error("order is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(Elem, Elem, Elem),
    #[error("no least element")]
    NoBottom,
    #[error("no greatest element")]
    NoTop,
    #[error("elements {0} and {1} have no meet")]
    NoMeet(Elem, Elem),
    #[error("elements {0} and {1} have no join")]
    NoJoin(Elem, Elem),
    #[error("orthocomplement of {elem} is {image}, out of range")]
    OrthoOutOfRange { elem: Elem, image: usize },
    #[error("{got} labels for {size} elements")]
    LabelCount { got: usize, size: usize },
    #[error("element {0} is not orthomodular-decomposable (no progress splitting off atoms)")]
    NoDecomposition(Elem),
}

/// A finite bounded lattice with an orthocomplementation map.
///
/// Construction only guarantees the bounded-lattice structure and that the
/// orthocomplement map is in range; the ortholattice, orthomodular and
/// atomicity axioms are checked by [`crate::verify::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    size: usize,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    ortho: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    meet: Vec<u32>,
    join: Vec<u32>,
    height: Vec<u32>,
    upper_covers: Vec<Vec<Elem>>,
    lower_covers: Vec<Vec<Elem>>,
    labels: Option<Vec<String>>,
}

impl Lattice {
    /// Builds a lattice from its up-sets (`up[a]` holds every `b` with
    /// `a <= b`) and an orthocomplement table.
    pub fn new(
        up: Vec<FixedBitSet>,
        ortho: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, LatticeError> {
        let size = up.len();
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        if ortho.len() != size {
            return Err(LatticeError::ShapeMismatch { rows: ortho.len(), size });
        }
        if let Some(labels) = &labels {
            if labels.len() != size {
                return Err(LatticeError::LabelCount { got: labels.len(), size });
            }
        }
        let mut up = up;
        for row in up.iter_mut() {
            if row.len() > size {
                return Err(LatticeError::ShapeMismatch { rows: row.len(), size });
            }
            row.grow(size);
        }
        let ortho = ortho
            .into_iter()
            .enumerate()
            .map(|(a, o)| {
                if o < size {
                    Ok(Elem::new(o))
                } else {
                    Err(LatticeError::OrthoOutOfRange { elem: Elem::new(a), image: o })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;

        check_partial_order(&up)?;
        let down = transpose(&up);

        let bottom = (0..size)
            .find(|&a| up[a].count_ones(..) == size)
            .map(Elem::new)
            .ok_or(LatticeError::NoBottom)?;
        let top = (0..size)
            .find(|&a| down[a].count_ones(..) == size)
            .map(Elem::new)
            .ok_or(LatticeError::NoTop)?;

        let down_count: Vec<usize> = down.iter().map(|d| d.count_ones(..)).collect();
        let up_count: Vec<usize> = up.iter().map(|u| u.count_ones(..)).collect();
        let mut meet = vec![0u32; size * size];
        let mut join = vec![0u32; size * size];
        for a in 0..size {
            for b in a..size {
                let m = extremal_bound(&down[a], &down[b], &down_count)
                    .ok_or(LatticeError::NoMeet(Elem::new(a), Elem::new(b)))?;
                let j = extremal_bound(&up[a], &up[b], &up_count)
                    .ok_or(LatticeError::NoJoin(Elem::new(a), Elem::new(b)))?;
                meet[a * size + b] = m as u32;
                meet[b * size + a] = m as u32;
                join[a * size + b] = j as u32;
                join[b * size + a] = j as u32;
            }
        }

        // Elements sorted by down-set size form a linear extension.
        let mut linear: Vec<usize> = (0..size).collect();
        linear.sort_by_key(|&a| down_count[a]);
        let mut upper_covers = vec![Vec::new(); size];
        let mut lower_covers = vec![Vec::new(); size];
        for a in 0..size {
            for b in up[a].ones() {
                if b == a {
                    continue;
                }
                // a < b is a cover iff the interval [a, b] has two elements.
                let mut interval = up[a].clone();
                interval.intersect_with(&down[b]);
                if interval.count_ones(..) == 2 {
                    upper_covers[a].push(Elem::new(b));
                    lower_covers[b].push(Elem::new(a));
                }
            }
        }
        let mut height = vec![0u32; size];
        for &b in &linear {
            height[b] = lower_covers[b]
                .iter()
                .map(|a| height[a.index()] + 1)
                .max()
                .unwrap_or(0);
        }

        Ok(Lattice {
            size,
            up,
            down,
            ortho,
            bottom,
            top,
            meet,
            join,
            height,
            upper_covers,
            lower_covers,
            labels,
        })
    }

    /// Builds a lattice from its strict cover pairs `(lower, upper)`; the
    /// order is the reflexive-transitive closure of the covers.
    pub fn from_covers(
        size: usize,
        covers: &[(usize, usize)],
        ortho: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, LatticeError> {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (a, row) in up.iter_mut().enumerate() {
            row.insert(a);
        }
        for &(a, b) in covers {
            for id in [a, b] {
                if id >= size {
                    return Err(LatticeError::OutOfRange { id, size });
                }
            }
            up[a].insert(b);
        }
        transitive_closure(&mut up);
        Lattice::new(up, ortho, labels)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Validates a raw id.
    pub fn elem(&self, id: usize) -> Result<Elem, LatticeError> {
        if id < self.size {
            Ok(Elem::new(id))
        } else {
            Err(LatticeError::OutOfRange { id, size: self.size })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(Elem::new)
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a.index()].contains(b.index())
    }

    /// Range-checked form of [`Lattice::leq`].
    pub fn try_leq(&self, a: usize, b: usize) -> Result<bool, LatticeError> {
        Ok(self.leq(self.elem(a)?, self.elem(b)?))
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.index() * self.size + b.index()])
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.index() * self.size + b.index()])
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    #[inline]
    pub fn ortho(&self, a: Elem) -> Elem {
        self.ortho[a.index()]
    }

    /// `a <= b⊥`.
    #[inline]
    pub fn orthogonal(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, self.ortho(b))
    }

    /// Length of the longest chain from the bottom to `a`.
    #[inline]
    pub fn height(&self, a: Elem) -> usize {
        self.height[a.index()] as usize
    }

    #[inline]
    pub fn is_atom(&self, a: Elem) -> bool {
        self.height[a.index()] == 1
    }

    pub fn atoms(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(|&a| self.is_atom(a))
    }

    pub fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a.index()]
    }

    pub fn down_set(&self, a: Elem) -> &FixedBitSet {
        &self.down[a.index()]
    }

    pub fn upper_covers(&self, a: Elem) -> &[Elem] {
        &self.upper_covers[a.index()]
    }

    pub fn lower_covers(&self, a: Elem) -> &[Elem] {
        &self.lower_covers[a.index()]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of `a`, or its id when the lattice is unlabeled.
    pub fn name(&self, a: Elem) -> String {
        match &self.labels {
            Some(labels) => labels[a.index()].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<Self, LatticeError> {
        if let Some(l) = &labels {
            if l.len() != self.size {
                return Err(LatticeError::LabelCount { got: l.len(), size: self.size });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Splits `a` into pairwise orthogonal atoms whose join is `a`.
    ///
    /// Greedy: take the lowest-id atom `q <= a` and continue with `q⊥ ∧ a`.
    /// Decompositions are not unique in general.
    pub fn atom_decomposition(&self, a: Elem) -> Result<Vec<Elem>, LatticeError> {
        let mut rest = a;
        let mut atoms = Vec::new();
        while rest != self.bottom {
            let q = self.down[rest.index()]
                .ones()
                .map(Elem::new)
                .find(|&q| self.is_atom(q))
                .ok_or(LatticeError::NoDecomposition(a))?;
            let next = self.meet(self.ortho(q), rest);
            if next == rest {
                return Err(LatticeError::NoDecomposition(a));
            }
            atoms.push(q);
            rest = next;
        }
        let pairwise = atoms
            .iter()
            .enumerate()
            .all(|(i, &p)| atoms[i + 1..].iter().all(|&q| self.orthogonal(p, q)));
        if !pairwise || self.join_all(atoms.iter().copied()) != a {
            return Err(LatticeError::NoDecomposition(a));
        }
        Ok(atoms)
    }

    /// Up-set rows as plain id lists (used by the text format and tests).
    pub fn up_rows(&self) -> &[FixedBitSet] {
        &self.up
    }

    pub fn ortho_table(&self) -> Vec<usize> {
        self.ortho.iter().map(|e| e.index()).collect()
    }

    /// Applies the relabeling `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[usize]) -> Result<Lattice, LatticeError> {
        let n = self.size;
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut ortho = vec![0; n];
        for a in 0..n {
            for b in self.up[a].ones() {
                up[perm[a]].insert(perm[b]);
            }
            ortho[perm[a]] = perm[self.ortho[a].index()];
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for a in 0..n {
                out[perm[a]] = l[a].clone();
            }
            out
        });
        Lattice::new(up, ortho, labels)
    }
}

fn extremal_bound(a: &FixedBitSet, b: &FixedBitSet, count: &[usize]) -> Option<usize> {
    // With rows of the same kind (down-sets for meets, up-sets for joins),
    // the bound is the element of the intersection whose own row has the
    // same cardinality as the intersection.
    let mut inter = a.clone();
    inter.intersect_with(b);
    let target = inter.count_ones(..);
    inter.ones().find(|&c| count[c] == target)
}

fn transpose(rows: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = rows.len();
    let mut out = vec![FixedBitSet::with_capacity(n); n];
    for (a, row) in rows.iter().enumerate() {
        for b in row.ones() {
            out[b].insert(a);
        }
    }
    out
}

/// Warshall's algorithm over bit rows.
pub(crate) fn transitive_closure(rows: &mut [FixedBitSet]) {
    let n = rows.len();
    for k in 0..n {
        let row_k = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

fn check_partial_order(up: &[FixedBitSet]) -> Result<(), LatticeError> {
    let n = up.len();
    for a in 0..n {
        if !up[a].contains(a) {
            return Err(LatticeError::NotReflexive(Elem::new(a)));
        }
        for b in up[a].ones() {
            if b != a && up[b].contains(a) {
                return Err(LatticeError::NotAntisymmetric(Elem::new(a), Elem::new(b)));
            }
            if !up[b].is_subset(&up[a]) {
                let c = up[b].difference(&up[a]).next().unwrap_or(b);
                return Err(LatticeError::NotTransitive(
                    Elem::new(a),
                    Elem::new(b),
                    Elem::new(c),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Lattice {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let ortho = (0..n).rev().collect();
        Lattice::from_covers(n, &covers, ortho, None).unwrap()
    }

    #[test]
    fn bounds_of_a_chain() {
        let l = chain(3);
        assert_eq!(l.bottom(), Elem(0));
        assert_eq!(l.top(), Elem(2));
        assert!(l.leq(l.bottom(), l.top()));
        assert!(!l.leq(l.top(), l.bottom()));
        assert_eq!(l.height(l.top()), 2);
        assert_eq!(l.join(Elem(0), Elem(1)), Elem(1));
        assert_eq!(l.meet(Elem(2), Elem(1)), Elem(1));
    }

    #[test]
    fn out_of_range_ids_are_input_errors() {
        let l = chain(2);
        assert_eq!(l.try_leq(0, 1), Ok(true));
        assert_eq!(l.try_leq(0, 2), Err(LatticeError::OutOfRange { id: 2, size: 2 }));
        assert!(l.elem(5).is_err());
    }

    #[test]
    fn rejects_missing_join() {
        // 0 < a, b < c, d  (two incomparable upper bounds of {a, b}), plus a top.
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)];
        let err = Lattice::from_covers(6, &covers, (0..6).rev().collect(), None).unwrap_err();
        assert_eq!(err, LatticeError::NoJoin(Elem(1), Elem(2)));
    }

    #[test]
    fn rejects_cycles() {
        let covers = [(0, 1), (1, 0)];
        let err = Lattice::from_covers(2, &covers, vec![1, 0], None).unwrap_err();
        assert!(matches!(err, LatticeError::NotAntisymmetric(..)));
    }

    #[test]
    fn rejects_ortho_out_of_range() {
        let covers = [(0, 1)];
        let err = Lattice::from_covers(2, &covers, vec![1, 7], None).unwrap_err();
        assert_eq!(err, LatticeError::OrthoOutOfRange { elem: Elem(1), image: 7 });
    }

    #[test]
    fn relabel_preserves_structure() {
        let l = chain(4);
        let r = l.relabel(&[3, 1, 0, 2]).unwrap();
        assert_eq!(r.bottom(), Elem(3));
        assert_eq!(r.top(), Elem(2));
        assert!(r.leq(Elem(1), Elem(0)));
    }
}

//! The explicit cover of `S^{n+δ}`.
//!
//! Two pieces:
//!
//! * **top**: `x_d >= 1+δ`, a translate of `S^{n-1}` by `(1+δ)e`, triangulated
//!   by its `(n-1)^d` Kuhn simplices;
//! * **base**: `0 <= x_d <= 1+δ`, covered by squeezing the `(n+1)^d - n^d`
//!   simplices of the slab `v_d = 0` of `S^{n+1}`. A slab simplex `k(v, π)`
//!   becomes `k((1-δ)v, π)` when `π^{-1}(d) = d` (type a) and
//!   `k((1-δ)v + δe, π)` otherwise (type b).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{Permutation, Point, Rational};
use crate::simplex::KuhnSimplex;
use crate::triangulation::{
    enumerate_base_slab, enumerate_simplex_triangulation, is_admissible, AdmissiblePair,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("n must be at least 1, got {0}")]
    InvalidN(i64),

    #[error("count (n+1)^d + (n-1)^d - n^d overflows for d={d}, n={n}")]
    Overflow { d: usize, n: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverKind {
    Top,
    BaseA,
    BaseB,
}

impl CoverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverKind::Top => "top",
            CoverKind::BaseA => "base_a",
            CoverKind::BaseB => "base_b",
        }
    }
}

impl fmt::Display for CoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "top" => Ok(CoverKind::Top),
            "base_a" => Ok(CoverKind::BaseA),
            "base_b" => Ok(CoverKind::BaseB),
            other => Err(format!("unknown cover kind {other:?}")),
        }
    }
}

/// One simplex of the cover, remembering the lattice pair it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverElement {
    pub kind: CoverKind,
    pub v: Vec<i64>,
    pub perm: Permutation,
    simplex: KuhnSimplex,
}

impl CoverElement {
    /// Derive the anchor from `(kind, v, π)` and `δ`.
    pub fn new(kind: CoverKind, v: Vec<i64>, perm: Permutation, delta: &Rational) -> Self {
        let anchor = anchor_for(kind, &v, delta);
        let simplex = KuhnSimplex::new(anchor, perm.clone()).expect("matching dimensions");
        CoverElement {
            kind,
            v,
            perm,
            simplex,
        }
    }

    /// Rebuild from a stored anchor, e.g. one read back from disk.
    pub fn with_anchor(kind: CoverKind, v: Vec<i64>, perm: Permutation, anchor: Point) -> Self {
        let simplex = KuhnSimplex::new(anchor, perm.clone()).expect("matching dimensions");
        CoverElement {
            kind,
            v,
            perm,
            simplex,
        }
    }

    pub fn anchor(&self) -> &Point {
        self.simplex.anchor()
    }

    pub fn simplex(&self) -> &KuhnSimplex {
        &self.simplex
    }

    fn key(&self) -> ElementKey {
        (self.kind, self.v.clone(), self.perm.clone())
    }
}

/// Anchor of the cover element of the given kind for lattice point `v`.
pub fn anchor_for(kind: CoverKind, v: &[i64], delta: &Rational) -> Point {
    let one = Rational::one();
    let shrink = &one - delta;
    let coords = v.iter().map(|&c| {
        let c = Rational::from(c);
        match kind {
            CoverKind::Top => c + &one + delta,
            CoverKind::BaseA => c * &shrink,
            CoverKind::BaseB => c * &shrink + delta,
        }
    });
    Point::new(coords.collect())
}

type ElementKey = (CoverKind, Vec<i64>, Permutation);

/// The full cover for a given `(d, n)`.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    d: usize,
    n: i64,
    delta: Rational,
    elements: Vec<CoverElement>,
    index: HashMap<ElementKey, usize>,
}

impl CoverSpec {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn elements(&self) -> &[CoverElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn count_kind(&self, kind: CoverKind) -> usize {
        self.elements.iter().filter(|e| e.kind == kind).count()
    }

    /// Index of the element with the same kind, `v` and `π`, if present.
    pub fn position(&self, kind: CoverKind, v: &[i64], perm: &Permutation) -> Option<usize> {
        self.index.get(&(kind, v.to_vec(), perm.clone())).copied()
    }

    pub fn contains_element(&self, e: &CoverElement) -> bool {
        self.index
            .get(&e.key())
            .is_some_and(|&i| self.elements[i] == *e)
    }

    /// Check every per-element invariant; returns a description of the first
    /// violation.
    pub fn validate(&self) -> Result<(), String> {
        let d = self.d;
        for (i, e) in self.elements.iter().enumerate() {
            let last = d - 1;
            let ok = match e.kind {
                CoverKind::Top => is_admissible(&e.v, &e.perm, self.n - 1),
                CoverKind::BaseA => {
                    is_admissible(&e.v, &e.perm, self.n + 1)
                        && e.v[last] == 0
                        && e.perm.position_of(last) == last
                }
                CoverKind::BaseB => {
                    is_admissible(&e.v, &e.perm, self.n + 1)
                        && e.v[last] == 0
                        && e.perm.position_of(last) < last
                }
            };
            if !ok {
                return Err(format!("element {i} ({:?}) violates its kind's pairing rule", e));
            }
            if *e.anchor() != anchor_for(e.kind, &e.v, &self.delta) {
                return Err(format!("element {i} has anchor {:?}", e.anchor()));
            }
        }
        Ok(())
    }
}

/// `δ = 1/(n+2)`.
pub fn delta(n: i64) -> Result<Rational, CoverError> {
    if n < 1 {
        return Err(CoverError::InvalidN(n));
    }
    Ok(Rational::new(1, n + 2).expect("n + 2 > 0"))
}

fn check_args(d: usize, n: i64) -> Result<(), CoverError> {
    if d < 2 {
        return Err(CoverError::InvalidDimension(d));
    }
    if n < 1 {
        return Err(CoverError::InvalidN(n));
    }
    Ok(())
}

/// `(n+1)^d + (n-1)^d - n^d`.
pub fn cover_count(d: usize, n: i64) -> Result<u128, CoverError> {
    check_args(d, n)?;
    let overflow = CoverError::Overflow { d, n };
    let e = u32::try_from(d).map_err(|_| overflow.clone())?;
    let n = n as u128;
    let pow = |b: u128| b.checked_pow(e).ok_or(overflow.clone());
    (pow(n + 1)? + pow(n - 1)?)
        .checked_sub(pow(n)?)
        .ok_or(overflow.clone())
}

/// Build every cover element: top first, then the squeezed slab in
/// triangulation order.
pub fn build_cover(d: usize, n: i64) -> Result<CoverSpec, CoverError> {
    check_args(d, n)?;
    let delta = delta(n)?;

    let top_pairs: Vec<AdmissiblePair> = if n >= 2 {
        enumerate_simplex_triangulation(d, n - 1).expect("validated arguments")
    } else {
        Vec::new()
    };
    let slab = enumerate_base_slab(d, n + 1).expect("validated arguments");

    let mut elements = Vec::with_capacity(top_pairs.len() + slab.len());
    for p in top_pairs {
        elements.push(CoverElement::new(CoverKind::Top, p.v, p.perm, &delta));
    }
    for p in slab {
        let kind = if p.perm.position_of(d - 1) == d - 1 {
            CoverKind::BaseA
        } else {
            CoverKind::BaseB
        };
        elements.push(CoverElement::new(kind, p.v, p.perm, &delta));
    }

    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.key(), i))
        .collect();
    Ok(CoverSpec {
        d,
        n,
        delta,
        elements,
        index,
    })
}

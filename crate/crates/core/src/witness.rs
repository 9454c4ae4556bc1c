//! Constructive point location in the cover.
//!
//! Given `x` in `S^{n+δ}`, pick a cover element containing `x` without
//! scanning the cover:
//!
//! * `x_d >= 1+δ` (and `n >= 2`): subtract `(1+δ)e` and locate the result in
//!   the Kuhn triangulation of `S^{n-1}`.
//! * otherwise try type a: `v_j = floor(x_j / (1-δ))` for `j < d`, stepping
//!   `v_j` down by one when `v_j > 0` and `w_j <= δ`, where
//!   `w = x - (1-δ)v`. This works whenever `w_d = x_d` can be ordered last.
//! * failing that, type b: `v_j = floor((x_j - δ) / (1-δ))` puts every
//!   `w_j` (`j < d`) in `[δ, 1)`, and the descending sort of `w` then places
//!   `d` before the end.
//!
//! In every branch `π` sorts the offsets descending with ties in ascending
//! index order. Each candidate is re-checked with the exact membership test
//! and looked up in the cover; if anything disagrees the cover is scanned
//! exhaustively and the result is tagged [`Route::Fallback`].

use std::fmt;

use crate::arith::{Permutation, Point, Rational};
use crate::cover::{delta, CoverElement, CoverKind, CoverSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("point {0:?} is outside S^(n+δ)")]
    OutOfDomain(Point),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The constructed candidate does not contain the point.
    #[error("constructed simplex does not contain {0:?}")]
    MembershipFailed(Point),

    /// No element of the cover contains the point. Never expected.
    #[error("no cover element contains {0:?}")]
    NoCover(Point),
}

/// Which branch produced the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Top,
    BaseA,
    BaseB,
    Fallback,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Top => "top",
            Route::BaseA => "base_a",
            Route::BaseB => "base_b",
            Route::Fallback => "fallback",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<CoverKind> for Route {
    fn from(k: CoverKind) -> Self {
        match k {
            CoverKind::Top => Route::Top,
            CoverKind::BaseA => Route::BaseA,
            CoverKind::BaseB => Route::BaseB,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult {
    pub element: CoverElement,
    pub route: Route,
    /// Offset used to order coordinates: `x - (1-δ)v` on the base routes,
    /// `x - anchor` on the top and fallback routes.
    pub w: Point,
}

/// `n + eps >= x_1 >= ... >= x_d >= 0`.
pub fn in_domain(x: &Point, n: i64, eps: &Rational) -> bool {
    let c = x.coords();
    !c.is_empty()
        && c[0] <= Rational::from(n) + eps
        && x.is_weakly_decreasing()
        && !c[c.len() - 1].is_negative()
}

fn check_point(x: &Point, d: usize, n: i64) -> Result<Rational, WitnessError> {
    let delta = delta(n).map_err(|e| WitnessError::Precondition(e.to_string()))?;
    if x.dim() != d || d < 2 {
        return Err(WitnessError::Precondition(format!(
            "point has dimension {}, expected {d} >= 2",
            x.dim()
        )));
    }
    if !in_domain(x, n, &delta) {
        return Err(WitnessError::OutOfDomain(x.clone()));
    }
    Ok(delta)
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor_i64().expect("coordinates of in-domain points are small")
}

/// Locate `x` (with `x_d >= 1+δ`) in the translated triangulation of `S^{n-1}`.
pub fn witness_top(x: &Point, d: usize, n: i64) -> Result<CoverElement, WitnessError> {
    let delta = check_point(x, d, n)?;
    let shift = Rational::one() + &delta;
    if n < 2 || x.coords()[d - 1] < shift {
        return Err(WitnessError::Precondition(
            "top route needs n >= 2 and x_d >= 1+δ".into(),
        ));
    }
    let u = &(x - &Point::splat(d, &shift));
    let cap = n - 2;
    let v: Vec<i64> = u.coords().iter().map(|c| floor_i64(c).min(cap)).collect();
    let f = u - &Point::from_integers(&v);
    let perm = Permutation::sorting_descending(f.coords());
    let e = CoverElement::new(CoverKind::Top, v, perm, &delta);
    verify(&e, x)?;
    Ok(e)
}

/// Type-a candidate, or `None` when `x_d` cannot be ordered last.
pub fn witness_base_a(x: &Point, d: usize, n: i64) -> Result<Option<CoverElement>, WitnessError> {
    let delta = check_point(x, d, n)?;
    let one = Rational::one();
    if x.coords()[d - 1] > &one + &delta {
        return Err(WitnessError::Precondition("base route needs x_d <= 1+δ".into()));
    }
    let (v, w) = base_a_offsets(x, &delta);
    let xd = &w.coords()[d - 1];
    if *xd > one || w.coords()[..d - 1].iter().any(|wj| wj < xd) {
        return Ok(None);
    }
    let perm = Permutation::sorting_descending(w.coords());
    debug_assert_eq!(perm.position_of(d - 1), d - 1);
    let e = CoverElement::new(CoverKind::BaseA, v, perm, &delta);
    verify(&e, x)?;
    Ok(Some(e))
}

fn base_a_offsets(x: &Point, delta: &Rational) -> (Vec<i64>, Point) {
    let d = x.dim();
    let shrink = Rational::one() - delta;
    let mut v = vec![0i64; d];
    let mut w = x.coords().to_vec();
    for j in 0..d - 1 {
        let mut vj = floor_i64(&(&x.coords()[j] / &shrink));
        let mut wj = &x.coords()[j] - &(Rational::from(vj) * &shrink);
        if vj > 0 && wj <= *delta {
            vj -= 1;
            wj = wj + &shrink;
        }
        v[j] = vj;
        w[j] = wj;
    }
    (v, Point::new(w))
}

/// Type-b candidate. Falls back to the type-a element with the same `(v, π)`
/// when the sort happens to put `d` last.
pub fn witness_base_b(x: &Point, d: usize, n: i64) -> Result<CoverElement, WitnessError> {
    let delta = check_point(x, d, n)?;
    let one = Rational::one();
    if x.coords()[d - 1] > &one + &delta {
        return Err(WitnessError::Precondition("base route needs x_d <= 1+δ".into()));
    }
    if x.coords().iter().any(|c| *c <= delta) {
        return Err(WitnessError::Precondition("type b needs x_j > δ for all j".into()));
    }
    let (v, w) = base_b_offsets(x, &delta);
    let perm = Permutation::sorting_descending(w.coords());
    let kind = if perm.position_of(d - 1) < d - 1 {
        CoverKind::BaseB
    } else {
        CoverKind::BaseA
    };
    let e = CoverElement::new(kind, v, perm, &delta);
    verify(&e, x)?;
    Ok(e)
}

fn base_b_offsets(x: &Point, delta: &Rational) -> (Vec<i64>, Point) {
    let d = x.dim();
    let shrink = Rational::one() - delta;
    let mut v = vec![0i64; d];
    let mut w = x.coords().to_vec();
    for j in 0..d - 1 {
        let vj = floor_i64(&((&x.coords()[j] - delta) / &shrink));
        w[j] = &x.coords()[j] - &(Rational::from(vj) * &shrink);
        v[j] = vj;
    }
    (v, Point::new(w))
}

fn verify(e: &CoverElement, x: &Point) -> Result<(), WitnessError> {
    match e.simplex().contains(x, false) {
        Ok(true) => Ok(()),
        _ => Err(WitnessError::MembershipFailed(x.clone())),
    }
}

/// Locate a cover element containing `x`.
///
/// The returned element is always one of `cover.elements()` and always
/// contains `x`. [`Route::Fallback`] means the constructive branches failed
/// and an exhaustive scan was needed.
pub fn witness(x: &Point, cover: &CoverSpec) -> Result<WitnessResult, WitnessError> {
    let (d, n) = (cover.d(), cover.n());
    let delta = check_point(x, d, n)?;
    let seam = Rational::one() + &delta;

    let constructed = if n >= 2 && x.coords()[d - 1] >= seam {
        witness_top(x, d, n).ok()
    } else {
        match witness_base_a(x, d, n) {
            Ok(Some(e)) => Some(e),
            Ok(None) => witness_base_b(x, d, n).ok(),
            Err(_) => None,
        }
    };

    if let Some(e) = constructed {
        let bounded = e.kind == CoverKind::Top || e.v[0] <= n;
        if bounded && cover.contains_element(&e) {
            let w = match e.kind {
                CoverKind::Top => x - e.anchor(),
                _ => x - &Point::from_integers(&e.v).scale(&(Rational::one() - &delta)),
            };
            return Ok(WitnessResult {
                route: e.kind.into(),
                element: e,
                w,
            });
        }
    }

    let found = cover
        .elements()
        .iter()
        .find(|e| e.simplex().contains(x, false).unwrap_or(false))
        .ok_or_else(|| WitnessError::NoCover(x.clone()))?;
    Ok(WitnessResult {
        element: found.clone(),
        route: Route::Fallback,
        w: x - found.anchor(),
    })
}

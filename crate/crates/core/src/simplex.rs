//! Unit right simplices `k(u, π)`.
//!
//! `k(u, π)` is the convex hull of `u`, `u + e^{π(1)}`, `u + e^{π(1)} + e^{π(2)}`,
//! ..., `u + e`. Membership reduces to the chain
//!
//! ```text
//! 1 >= (x - u)_{π(1)} >= (x - u)_{π(2)} >= ... >= (x - u)_{π(d)} >= 0
//! ```
//!
//! which [`KuhnSimplex::contains`] evaluates directly. [`KuhnSimplex::contains_oracle`]
//! reaches the same answer through an exact barycentric solve and exists only
//! to cross-check the chain test.

use crate::arith::{Permutation, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplexError {
    #[error("dimension mismatch: simplex has dimension {expected}, point has {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Only `d >= 2` is meaningful here.
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
}

/// The unit right simplex anchored at `anchor` with increment order `perm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KuhnSimplex {
    anchor: Point,
    perm: Permutation,
}

impl KuhnSimplex {
    pub fn new(anchor: Point, perm: Permutation) -> Result<Self, SimplexError> {
        if anchor.dim() != perm.len() {
            return Err(SimplexError::DimensionMismatch {
                expected: perm.len(),
                found: anchor.dim(),
            });
        }
        Ok(KuhnSimplex { anchor, perm })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// The `d + 1` vertices along the monotone path from `anchor` to `anchor + e`.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.dim() + 1);
        let mut current: Vec<Rational> = self.anchor.coords().to_vec();
        out.push(Point::new(current.clone()));
        let one = Rational::one();
        for pos in 0..self.dim() {
            let j = self.perm.image(pos);
            current[j] = &current[j] + &one;
            out.push(Point::new(current.clone()));
        }
        out
    }

    /// Closed membership, or interior membership when `strict` is set.
    pub fn contains(&self, x: &Point, strict: bool) -> Result<bool, SimplexError> {
        self.check_dim(x)?;
        let xs = x.coords();
        let us = self.anchor.coords();
        let mut upper = Rational::one();
        for pos in 0..self.dim() {
            let j = self.perm.image(pos);
            let y = &xs[j] - &us[j];
            let ok = if strict { y < upper } else { y <= upper };
            if !ok {
                return Ok(false);
            }
            upper = y;
        }
        let zero = Rational::zero();
        Ok(if strict { upper > zero } else { upper >= zero })
    }

    /// Closed membership decided by solving for barycentric coordinates.
    ///
    /// Builds the `(d+1) x (d+1)` system `sum λ_i p_i = x, sum λ_i = 1` over the
    /// vertices and eliminates exactly; `x` is inside iff every `λ_i >= 0`.
    pub fn contains_oracle(&self, x: &Point) -> Result<bool, SimplexError> {
        self.check_dim(x)?;
        let lambda = barycentric(&self.vertices(), x);
        let zero = Rational::zero();
        let sum = lambda.iter().fold(Rational::zero(), |acc, l| acc + l);
        Ok(lambda.iter().all(|l| *l >= zero) && sum == Rational::one())
    }

    fn check_dim(&self, x: &Point) -> Result<(), SimplexError> {
        if x.dim() != self.dim() {
            return Err(SimplexError::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }
}

/// Exact Gauss-Jordan solve of the barycentric system. The vertices must be
/// affinely independent.
fn barycentric(vertices: &[Point], x: &Point) -> Vec<Rational> {
    let n = vertices.len();
    let d = x.dim();
    debug_assert_eq!(n, d + 1);
    // Rows: d coordinate equations followed by the affine constraint.
    let mut m: Vec<Vec<Rational>> = (0..=d)
        .map(|row| {
            let mut r: Vec<Rational> = vertices
                .iter()
                .map(|p| {
                    if row < d {
                        p.coords()[row].clone()
                    } else {
                        Rational::one()
                    }
                })
                .collect();
            r.push(if row < d {
                x.coords()[row].clone()
            } else {
                Rational::one()
            });
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("simplex vertices are affinely independent");
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for a in &mut m[col][col..] {
            *a = &*a * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (a, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *a = &*a - &(&factor * p);
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

/// Volume of any unit right `d`-simplex, `1/d!`.
pub fn unit_volume(d: usize) -> Result<Rational, SimplexError> {
    if d < 2 {
        return Err(SimplexError::InvalidDimension(d));
    }
    Ok(factorial(d).recip())
}

pub(crate) fn factorial(d: usize) -> Rational {
    (1..=d as i64).fold(Rational::one(), |acc, k| acc * Rational::from(k))
}

/// Entries of `MᵀM` for the shear `M = [[1, -1/2], [0, √3/2]]` that maps right
/// triangles onto equilateral ones. All three entries are rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMetric2D {
    pub g11: Rational,
    pub g12: Rational,
    pub g22: Rational,
}

impl Default for GramMetric2D {
    fn default() -> Self {
        GramMetric2D {
            g11: Rational::one(),
            g12: Rational::new(-1, 2).expect("nonzero denominator"),
            g22: Rational::one(),
        }
    }
}

impl GramMetric2D {
    /// `uᵀ G u`.
    pub fn squared_length(&self, u: &Point) -> Result<Rational, SimplexError> {
        if u.dim() != 2 {
            return Err(SimplexError::DimensionMismatch {
                expected: 2,
                found: u.dim(),
            });
        }
        let (a, b) = (&u.coords()[0], &u.coords()[1]);
        let two = Rational::from(2i64);
        Ok(&self.g11 * &(a * a) + &two * &self.g12 * (a * b) + &self.g22 * &(b * b))
    }
}

/// Squared length of `Mu`, i.e. `u1² - u1 u2 + u2²`.
pub fn gram_squared_length(u: &Point) -> Result<Rational, SimplexError> {
    GramMetric2D::default().squared_length(u)
}

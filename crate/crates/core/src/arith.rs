//! Exact rational numbers, points and permutations.
//!
//! Every geometric predicate in this crate reduces to comparisons between
//! rationals, so coordinates are kept exact end to end. Floating point only
//! shows up in the SVG renderer.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Errors raised while parsing or constructing arithmetic values.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    /// The input is not of the form `p`, `p/q` or `-p/q`.
    #[error("malformed rational {0:?}")]
    Malformed(String),

    /// The denominator is zero.
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),

    /// A point string had the wrong number of coordinates.
    #[error("expected {expected} coordinates, found {found}")]
    Arity {
        /// Required dimension
        expected: usize,
        /// Number of tokens present
        found: usize,
    },

    /// The image sequence is not a bijection on `1..=d`.
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
}

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator("0".to_string()));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Greatest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// [`Rational::floor`] narrowed to `i64`, `None` on overflow.
    pub fn floor_i64(&self) -> Option<i64> {
        self.floor().to_i64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (p, q) = match body.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (body, None),
        };
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        if !digits(p) || !q.is_none_or(digits) {
            return Err(ArithError::Malformed(s.to_string()));
        }
        let mut num: BigInt = p.parse().map_err(|_| ArithError::Malformed(s.to_string()))?;
        if neg {
            num = -num;
        }
        let den: BigInt = match q {
            Some(q) => q.parse().map_err(|_| ArithError::Malformed(s.to_string()))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

/// Canonical `p/q` form, or `p` when the value is an integer.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Parse a rational from `p`, `p/q` or `-p/q`.
pub fn rat_parse(s: &str) -> Result<Rational, ArithError> {
    s.parse()
}

pub fn rat_format(r: &Rational) -> String {
    r.to_string()
}

pub fn rat_floor(r: &Rational) -> BigInt {
    r.floor()
}

/// A point in `R^d` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point(Box<[Rational]>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords.into_boxed_slice())
    }

    pub fn zero(d: usize) -> Self {
        Point(vec![Rational::zero(); d].into_boxed_slice())
    }

    /// The vector with every coordinate equal to `value` (so `e` for 1).
    pub fn splat(d: usize, value: &Rational) -> Self {
        Point(vec![value.clone(); d].into_boxed_slice())
    }

    pub fn from_integers(v: &[i64]) -> Self {
        Point(v.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }

    /// `true` iff the coordinates are weakly decreasing.
    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Point(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Point(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Parse a comma separated list of exactly `d` rationals.
pub fn point_parse(s: &str, d: usize) -> Result<Point, ArithError> {
    let tokens: Vec<&str> = s.split(',').collect();
    if tokens.len() != d {
        return Err(ArithError::Arity {
            expected: d,
            found: tokens.len(),
        });
    }
    tokens
        .into_iter()
        .map(rat_parse)
        .collect::<Result<Vec<_>, _>>()
        .map(Point::new)
}

/// A permutation of the coordinate indices.
///
/// Stored 0-based; [`Permutation::from_one_based`] and
/// [`Permutation::to_one_based`] convert at the serialization boundary.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Box<[usize]>,
    inverse: Box<[usize]>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, ArithError> {
        let d = images.len();
        let mut inverse = vec![usize::MAX; d];
        for (pos, &img) in images.iter().enumerate() {
            if img >= d || inverse[img] != usize::MAX {
                return Err(ArithError::NotAPermutation(
                    images.iter().map(|i| i + 1).collect(),
                ));
            }
            inverse[img] = pos;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
            inverse: inverse.into_boxed_slice(),
        })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self, ArithError> {
        if images.contains(&0) {
            return Err(ArithError::NotAPermutation(images.to_vec()));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(d: usize) -> Self {
        Permutation::new((0..d).collect()).expect("identity is a permutation")
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based `π(pos)`.
    pub fn image(&self, pos: usize) -> usize {
        self.images[pos]
    }

    /// 0-based `π^{-1}(index)`: the position at which `index` appears.
    pub fn position_of(&self, index: usize) -> usize {
        self.inverse[index]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `true` iff index `a` appears before index `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.inverse[a] < self.inverse[b]
    }

    /// Indices sorted by `key` descending, equal keys in ascending index order.
    pub fn sorting_descending(key: &[Rational]) -> Self {
        let mut idx: Vec<usize> = (0..key.len()).collect();
        idx.sort_by(|&a, &b| match key[b].cmp(&key[a]) {
            Ordering::Equal => a.cmp(&b),
            other => other,
        });
        Permutation::new(idx).expect("sorted indices form a permutation")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_one_based())
    }
}

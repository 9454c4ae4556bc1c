//! Kuhn triangulations of the unit cube, of `S^n`, and of the base slab of `S^n`.
//!
//! `S^n = {x : n >= x_1 >= ... >= x_d >= 0}` is triangulated by the `n^d`
//! simplices `k(v, π)` with `v` an integer point of `S^{n-1}` and `π` obeying
//! the tie rule: whenever `v_j = v_{j+1}`, index `j` precedes `j+1` in `π`.
//! The slab `0 <= x_d <= 1` of `S^m` is triangulated by the subset with
//! `v_d = 0`.
//!
//! Output order is canonical: `v` ascending lexicographically over weakly
//! decreasing vectors, then `π` ascending lexicographically by image sequence.

use crate::arith::{Permutation, Point, Rational};
use crate::simplex::{factorial, KuhnSimplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("scale must be at least 1, got {0}")]
    InvalidScale(i64),
}

/// A lattice anchor together with an increment order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub v: Vec<i64>,
    pub perm: Permutation,
}

impl AdmissiblePair {
    pub fn new(v: Vec<i64>, perm: Permutation) -> Self {
        AdmissiblePair { v, perm }
    }

    pub fn simplex(&self) -> KuhnSimplex {
        KuhnSimplex::new(Point::from_integers(&self.v), self.perm.clone())
            .expect("anchor and permutation share a dimension")
    }
}

/// The right simplex `S^scale = {x : scale >= x_1 >= ... >= x_d >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainSimplex {
    pub scale: Rational,
    pub d: usize,
}

impl DomainSimplex {
    pub fn new(scale: Rational, d: usize) -> Self {
        assert!(scale > Rational::zero(), "scale must be positive");
        DomainSimplex { scale, d }
    }

    pub fn contains(&self, x: &Point) -> bool {
        let c = x.coords();
        c.len() == self.d
            && c[0] <= self.scale
            && x.is_weakly_decreasing()
            && c[self.d - 1] >= Rational::zero()
    }

    /// `scale^d / d!`.
    pub fn volume(&self) -> Rational {
        let mut p = Rational::one();
        for _ in 0..self.d {
            p = p * &self.scale;
        }
        p / factorial(self.d)
    }
}

/// `true` iff `k(v, π)` is one of the simplices triangulating `S^n`.
pub fn is_admissible(v: &[i64], perm: &Permutation, n: i64) -> bool {
    if v.is_empty() || v.len() != perm.len() {
        return false;
    }
    if v[0] > n - 1 || *v.last().unwrap() < 0 {
        return false;
    }
    v.windows(2).enumerate().all(|(j, w)| {
        w[0] > w[1] || (w[0] == w[1] && perm.precedes(j, j + 1))
    })
}

fn check_args(d: usize, n: i64) -> Result<(), TriangulationError> {
    if d < 2 {
        return Err(TriangulationError::InvalidDimension(d));
    }
    if n < 1 {
        return Err(TriangulationError::InvalidScale(n));
    }
    Ok(())
}

/// The `d!` simplices `k(0, π)` triangulating `[0,1]^d`.
pub fn enumerate_cube_triangulation(d: usize) -> Result<Vec<AdmissiblePair>, TriangulationError> {
    check_args(d, 1)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    let mut used = vec![false; d];
    all_permutations(d, &mut current, &mut used, &mut |p| {
        out.push(AdmissiblePair::new(vec![0; d], p));
    });
    Ok(out)
}

fn all_permutations(
    d: usize,
    current: &mut Vec<usize>,
    used: &mut [bool],
    emit: &mut dyn FnMut(Permutation),
) {
    if current.len() == d {
        emit(Permutation::new(current.clone()).expect("distinct indices"));
        return;
    }
    for i in 0..d {
        if !used[i] {
            used[i] = true;
            current.push(i);
            all_permutations(d, current, used, emit);
            current.pop();
            used[i] = false;
        }
    }
}

/// The `n^d` admissible pairs triangulating `S^n`.
pub fn enumerate_simplex_triangulation(
    d: usize,
    n: i64,
) -> Result<Vec<AdmissiblePair>, TriangulationError> {
    check_args(d, n)?;
    Ok(enumerate_pairs(d, n - 1, false))
}

/// The `m^d - (m-1)^d` admissible pairs of `S^m` with `v_d = 0`.
pub fn enumerate_base_slab(d: usize, m: i64) -> Result<Vec<AdmissiblePair>, TriangulationError> {
    check_args(d, m)?;
    Ok(enumerate_pairs(d, m - 1, true))
}

fn enumerate_pairs(d: usize, bound: i64, last_zero: bool) -> Vec<AdmissiblePair> {
    let mut out = Vec::new();
    for v in weakly_decreasing_vectors(d, bound, last_zero) {
        for perm in tie_respecting_permutations(&v) {
            out.push(AdmissiblePair::new(v.clone(), perm));
        }
    }
    out
}

/// Weakly decreasing `v` with `bound >= v_1` and `v_d >= 0` (or `v_d = 0`),
/// in ascending lexicographic order.
pub fn weakly_decreasing_vectors(d: usize, bound: i64, last_zero: bool) -> Vec<Vec<i64>> {
    fn rec(
        d: usize,
        upper: i64,
        last_zero: bool,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if current.len() == d {
            out.push(current.clone());
            return;
        }
        let top = if last_zero && current.len() == d - 1 { 0 } else { upper };
        for value in 0..=top {
            current.push(value);
            rec(d, value, last_zero, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if bound >= 0 {
        rec(d, bound, last_zero, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

/// Permutations in which every run of equal `v` entries appears in ascending
/// index order, generated directly in lexicographic order.
///
/// Since `v` is weakly decreasing the equal entries form contiguous runs, so
/// this is the set of shuffles of the runs.
pub fn tie_respecting_permutations(v: &[i64]) -> Vec<Permutation> {
    // Runs as (start, end) index ranges.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for (i, value) in v.iter().enumerate() {
        match runs.last_mut() {
            Some((start, end)) if v[*start] == *value => *end = i + 1,
            _ => runs.push((i, i + 1)),
        }
    }

    fn rec(
        runs: &[(usize, usize)],
        next: &mut [usize],
        current: &mut Vec<usize>,
        d: usize,
        out: &mut Vec<Permutation>,
    ) {
        if current.len() == d {
            out.push(Permutation::new(current.clone()).expect("shuffle of disjoint runs"));
            return;
        }
        // Runs are ordered by start index, so their heads are ascending.
        for r in 0..runs.len() {
            if next[r] < runs[r].1 {
                current.push(next[r]);
                next[r] += 1;
                rec(runs, next, current, d, out);
                next[r] -= 1;
                current.pop();
            }
        }
    }

    let mut next: Vec<usize> = runs.iter().map(|r| r.0).collect();
    let mut out = Vec::new();
    rec(&runs, &mut next, &mut Vec::with_capacity(v.len()), v.len(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(p: &[usize]) -> Permutation {
        Permutation::from_one_based(p).unwrap()
    }

    fn pair(v: &[i64], p: &[usize]) -> AdmissiblePair {
        AdmissiblePair::new(v.to_vec(), perm(p))
    }

    /// Filtering oracle: every (v, π) with v in the bounding box, kept if admissible.
    fn brute_force(d: usize, n: i64, last_zero: bool) -> Vec<AdmissiblePair> {
        let mut perms = Vec::new();
        all_permutations(d, &mut Vec::new(), &mut vec![false; d], &mut |p| perms.push(p));
        let side = n.max(1);
        let total = (side as usize).pow(d as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..d)
                .map(|_| {
                    let x = (c % side as usize) as i64;
                    c /= side as usize;
                    x
                })
                .collect();
            if last_zero && v[d - 1] != 0 {
                continue;
            }
            for p in &perms {
                if is_admissible(&v, p, n) {
                    out.push(AdmissiblePair::new(v.clone(), p.clone()));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn admissibility_examples() {
        for n in 1..4 {
            assert!(!is_admissible(&[0, 0], &perm(&[2, 1]), n));
        }
        assert!(is_admissible(&[1, 0], &perm(&[2, 1]), 2));
        assert!(!is_admissible(&[2, 0], &perm(&[1, 2]), 2));
        assert!(!is_admissible(&[0, 1], &perm(&[1, 2]), 2));
        assert!(!is_admissible(&[0, -1], &perm(&[1, 2]), 2));
        assert!(!is_admissible(&[0, 0, 0], &perm(&[1, 2]), 2));
    }

    #[test]
    fn cube_counts() {
        assert_eq!(
            enumerate_cube_triangulation(2).unwrap(),
            vec![pair(&[0, 0], &[1, 2]), pair(&[0, 0], &[2, 1])]
        );
        assert_eq!(enumerate_cube_triangulation(3).unwrap().len(), 6);
        assert_eq!(enumerate_cube_triangulation(4).unwrap().len(), 24);
        assert_eq!(
            enumerate_cube_triangulation(1),
            Err(TriangulationError::InvalidDimension(1))
        );
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(
            enumerate_simplex_triangulation(2, 2).unwrap(),
            vec![
                pair(&[0, 0], &[1, 2]),
                pair(&[1, 0], &[1, 2]),
                pair(&[1, 0], &[2, 1]),
                pair(&[1, 1], &[1, 2]),
            ]
        );
        assert_eq!(
            enumerate_simplex_triangulation(3, 1).unwrap(),
            vec![pair(&[0, 0, 0], &[1, 2, 3])]
        );
        assert_eq!(enumerate_simplex_triangulation(3, 2).unwrap().len(), 8);
        assert!(enumerate_simplex_triangulation(2, 0).is_err());
        assert!(enumerate_simplex_triangulation(1, 3).is_err());
    }

    #[test]
    fn slab_examples() {
        assert_eq!(
            enumerate_base_slab(2, 2).unwrap(),
            vec![
                pair(&[0, 0], &[1, 2]),
                pair(&[1, 0], &[1, 2]),
                pair(&[1, 0], &[2, 1]),
            ]
        );
        assert_eq!(enumerate_base_slab(3, 2).unwrap().len(), 7);
        assert_eq!(enumerate_base_slab(2, 1).unwrap().len(), 1);
    }

    #[test]
    fn cardinalities() {
        for d in 2..=5usize {
            for n in 1..=6i64 {
                let full = enumerate_simplex_triangulation(d, n).unwrap();
                assert_eq!(full.len() as i64, n.pow(d as u32));
                let slab = enumerate_base_slab(d, n).unwrap();
                assert_eq!(slab.len() as i64, n.pow(d as u32) - (n - 1).pow(d as u32));
            }
        }
    }

    #[test]
    fn constructive_matches_filtering_oracle() {
        for d in 2..=4 {
            for n in 1..=4 {
                let mut built = enumerate_simplex_triangulation(d, n).unwrap();
                built.sort();
                assert_eq!(built, brute_force(d, n, false), "d={d} n={n}");
                let mut slab = enumerate_base_slab(d, n).unwrap();
                slab.sort();
                assert_eq!(slab, brute_force(d, n, true), "slab d={d} n={n}");
            }
        }
    }

    #[test]
    fn canonical_order_is_sorted() {
        let pairs = enumerate_simplex_triangulation(4, 3).unwrap();
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(pairs, sorted);
        assert!(pairs.iter().all(|p| is_admissible(&p.v, &p.perm, 3)));
    }

    #[test]
    fn tie_runs() {
        let perms = tie_respecting_permutations(&[2, 2, 0]);
        let got: Vec<_> = perms.iter().map(|p| p.to_one_based()).collect();
        assert_eq!(got, vec![vec![1, 2, 3], vec![1, 3, 2], vec![3, 1, 2]]);
        assert_eq!(tie_respecting_permutations(&[3, 2, 1, 0]).len(), 24);
        assert_eq!(tie_respecting_permutations(&[0, 0, 0, 0]).len(), 1);
    }

    #[test]
    fn domain_volume() {
        let s = DomainSimplex::new(Rational::from(3i64), 2);
        assert_eq!(s.volume(), Rational::new(9, 2).unwrap());
        assert!(s.contains(&Point::from_integers(&[3, 0])));
        assert!(!s.contains(&Point::from_integers(&[1, 2])));
    }
}

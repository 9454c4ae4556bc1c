//! Sampling campaigns over the target simplex and partition checks for the
//! underlying triangulations.
//!
//! Coverage is certified point by point: every sample is located with
//! [`witness`], and the located simplex is re-checked with the exact
//! membership test. Lattices are exhaustive at a given resolution; random
//! streams are seeded and reproducible.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{Point, Rational};
use crate::cover::{delta, CoverElement, CoverSpec};
use crate::simplex::{factorial, unit_volume};
use crate::triangulation::{weakly_decreasing_vectors, AdmissiblePair};
use crate::witness::{in_domain, witness, Route, WitnessError};

/// Integer range used by [`random_samples`].
pub const RANDOM_RESOLUTION: i64 = 1_000_000;

/// Denominator of generic interior samples. Prime, so no coordinate or
/// coordinate difference lands on an integer by accident.
const GENERIC_DENOMINATOR: i64 = 1_000_003;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("eps = {eps} is outside [0, δ = {delta}]")]
    EpsOutOfRange {
        eps: Box<Rational>,
        delta: Box<Rational>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sample {0:?} is outside the target simplex")]
    OutOfDomain(Point),
}

/// How a [`SamplePlan`] generates its points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleMode {
    /// Every grid point with step `δ/q`.
    Lattice { q: u32 },
    /// `count` seeded pseudo-random points.
    Random { count: usize, seed: u64 },
    /// Vertices, centroid and points on the seam and sliver planes.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePlan {
    pub mode: SampleMode,
    pub d: usize,
    pub n: i64,
    pub eps: Rational,
}

impl SamplePlan {
    pub fn new(mode: SampleMode, d: usize, n: i64, eps: Rational) -> Result<Self, VerifyError> {
        check_plan(d, n, &eps)?;
        Ok(SamplePlan { mode, d, n, eps })
    }

    pub fn samples(&self) -> Result<Vec<Point>, VerifyError> {
        match self.mode {
            SampleMode::Lattice { q } => lattice_samples(self.d, self.n, &self.eps, q),
            SampleMode::Random { count, seed } => {
                random_samples(self.d, self.n, &self.eps, count, seed)
            }
            SampleMode::Boundary => boundary_suite(self.d, self.n, &self.eps),
        }
    }
}

fn check_plan(d: usize, n: i64, eps: &Rational) -> Result<Rational, VerifyError> {
    if d < 2 {
        return Err(VerifyError::InvalidParameter(format!("d = {d} < 2")));
    }
    let delta = delta(n).map_err(|e| VerifyError::InvalidParameter(e.to_string()))?;
    if eps.is_negative() || *eps > delta {
        return Err(VerifyError::EpsOutOfRange {
            eps: Box::new(eps.clone()),
            delta: Box::new(delta),
        });
    }
    Ok(delta)
}

/// All points `s·k` of `S^{n+eps}` with `s = δ/q` and integer `k`.
pub fn lattice_samples(d: usize, n: i64, eps: &Rational, q: u32) -> Result<Vec<Point>, VerifyError> {
    let delta = check_plan(d, n, eps)?;
    if q == 0 {
        return Err(VerifyError::InvalidParameter("q must be at least 1".into()));
    }
    let step = delta / Rational::from(q);
    let top = (Rational::from(n) + eps) / &step;
    let kmax = top.floor_i64().expect("small lattice bound");
    Ok(weakly_decreasing_vectors(d, kmax, false)
        .into_iter()
        .map(|k| {
            // Largest coordinate first.
            let coords = k.iter().map(|&c| Rational::from(c) * &step).collect();
            Point::new(coords)
        })
        .collect())
}

/// `count` points: `d` integers uniform in `[0, 10^6]`, sorted descending and
/// scaled by `(n+eps)/10^6`.
pub fn random_samples(
    d: usize,
    n: i64,
    eps: &Rational,
    count: usize,
    seed: u64,
) -> Result<Vec<Point>, VerifyError> {
    check_plan(d, n, eps)?;
    let scale = (Rational::from(n) + eps) / Rational::from(RANDOM_RESOLUTION);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut ks = vec![0i64; d];
    for _ in 0..count {
        for k in ks.iter_mut() {
            *k = rng.gen_range(0..=RANDOM_RESOLUTION);
        }
        ks.sort_unstable_by(|a, b| b.cmp(a));
        out.push(Point::new(
            ks.iter().map(|&k| Rational::from(k) * &scale).collect(),
        ));
    }
    Ok(out)
}

/// Edge cases of the construction.
///
/// All weakly decreasing tuples over the levels `0, δ, 2δ, 1-δ, 1, 1+δ, 2,
/// (n+eps)/2, n-δ, n, n+eps` (those inside `[0, n+eps]`), followed by the
/// centroid. This contains the `d+1` vertices, points with `x_d = δ`
/// (sliver) and `x_d = 1+δ` (seam), and points with coordinates exactly `δ`
/// or `1`.
pub fn boundary_suite(d: usize, n: i64, eps: &Rational) -> Result<Vec<Point>, VerifyError> {
    let delta = check_plan(d, n, eps)?;
    let one = Rational::one();
    let nr = Rational::from(n);
    let top = &nr + eps;
    let mut levels = vec![
        Rational::zero(),
        delta.clone(),
        &delta + &delta,
        &one - &delta,
        one.clone(),
        &one + &delta,
        Rational::from(2i64),
        &top / Rational::from(2i64),
        &nr - &delta,
        nr,
        top.clone(),
    ];
    levels.retain(|l| !l.is_negative() && *l <= top);
    levels.sort();
    levels.dedup();

    let mut out: Vec<Point> = weakly_decreasing_vectors(d, levels.len() as i64 - 1, false)
        .into_iter()
        .map(|idx| Point::new(idx.iter().map(|&i| levels[i as usize].clone()).collect()))
        .collect();

    // Centroid of the vertices 0 and top·(e^1 + ... + e^k).
    let denom = Rational::from(d as i64 + 1);
    let centroid = Point::new(
        (0..d)
            .map(|i| &top * &Rational::from((d - i) as i64) / &denom)
            .collect(),
    );
    if !out.contains(&centroid) {
        out.push(centroid);
    }
    Ok(out)
}

/// Route counts of a campaign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RouteHistogram {
    pub top: u64,
    pub base_a: u64,
    pub base_b: u64,
    pub fallback: u64,
}

impl RouteHistogram {
    pub fn record(&mut self, route: Route) {
        match route {
            Route::Top => self.top += 1,
            Route::BaseA => self.base_a += 1,
            Route::BaseB => self.base_b += 1,
            Route::Fallback => self.fallback += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.top + self.base_a + self.base_b + self.fallback
    }

    pub fn merge(&mut self, other: &RouteHistogram) {
        self.top += other.top;
        self.base_a += other.base_a;
        self.base_b += other.base_b;
        self.fallback += other.fallback;
    }
}

/// Aggregate outcome of a coverage campaign.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverageReport {
    pub total: u64,
    pub covered: u64,
    pub routes: RouteHistogram,
    /// Samples no cover element contains.
    pub failures: Vec<Point>,
    /// Samples with `x_d <= δ` that were routed to the base.
    pub sliver_samples: u64,
    /// Sliver samples whose route was not `base_a`.
    pub sliver_exceptions: Vec<Point>,
    pub elapsed: Duration,
}

impl CoverageReport {
    pub fn is_success(&self) -> bool {
        self.covered == self.total && self.routes.fallback == 0 && self.failures.is_empty()
    }

    /// Component-wise sum. Failures are concatenated in argument order.
    pub fn merge(&mut self, other: CoverageReport) {
        self.total += other.total;
        self.covered += other.covered;
        self.routes.merge(&other.routes);
        self.failures.extend(other.failures);
        self.sliver_samples += other.sliver_samples;
        self.sliver_exceptions.extend(other.sliver_exceptions);
        self.elapsed += other.elapsed;
    }

    /// The report without its wall-clock timing, for reproducibility checks.
    pub fn without_timing(&self) -> CoverageReport {
        CoverageReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }
}

/// Locate every sample, re-verify membership exactly and tally routes.
pub fn coverage_report(
    cover: &CoverSpec,
    samples: &[Point],
    eps: &Rational,
) -> Result<CoverageReport, VerifyError> {
    let start = Instant::now();
    let n = cover.n();
    check_plan(cover.d(), n, eps)?;
    if let Some(bad) = samples.iter().find(|x| !in_domain(x, n, eps)) {
        return Err(VerifyError::OutOfDomain(bad.clone()));
    }
    let delta = cover.delta();

    let outcomes: Vec<Result<Route, WitnessError>> = samples
        .par_iter()
        .map(|x| {
            let r = witness(x, cover)?;
            match r.element.simplex().contains(x, false) {
                Ok(true) => Ok(r.route),
                _ => Err(WitnessError::NoCover(x.clone())),
            }
        })
        .collect();

    let mut report = CoverageReport::default();
    for (x, outcome) in samples.iter().zip(outcomes) {
        report.total += 1;
        match outcome {
            Ok(route) => {
                report.covered += 1;
                report.routes.record(route);
                let xd = &x.coords()[x.dim() - 1];
                if xd <= delta && route != Route::Top {
                    report.sliver_samples += 1;
                    if route != Route::BaseA {
                        report.sliver_exceptions.push(x.clone());
                    }
                }
            }
            Err(_) => report.failures.push(x.clone()),
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Every cover element containing `x`, decided by the barycentric oracle.
pub fn bruteforce_containing(cover: &CoverSpec, x: &Point) -> Vec<CoverElement> {
    cover
        .elements()
        .iter()
        .filter(|e| e.simplex().contains_oracle(x).unwrap_or(false))
        .cloned()
        .collect()
}

/// Region triangulated by one of the enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `[0,1]^d`
    Cube,
    /// `S^n`
    Simplex(i64),
    /// `{x in S^m : x_d <= 1}`
    BaseSlab(i64),
}

impl Region {
    pub fn volume(&self, d: usize) -> Rational {
        let pow = |b: i64| Rational::from(b.pow(d as u32));
        match *self {
            Region::Cube => Rational::one(),
            Region::Simplex(n) => pow(n) / factorial(d),
            Region::BaseSlab(m) => (pow(m) - pow(m - 1)) / factorial(d),
        }
    }

    /// Generic interior test on numerators over [`GENERIC_DENOMINATOR`]: the
    /// point is strictly inside and off every hyperplane `x_j = z` and
    /// `x_i - x_j = z` with `z` an integer.
    fn accepts(&self, k: &[i64]) -> bool {
        let p = GENERIC_DENOMINATOR;
        let off_grid = k.iter().all(|&c| c.rem_euclid(p) != 0)
            && k.iter()
                .enumerate()
                .all(|(i, &a)| k[i + 1..].iter().all(|&b| (a - b).rem_euclid(p) != 0));
        if !off_grid {
            return false;
        }
        let decreasing = k.windows(2).all(|w| w[0] > w[1]) && k[k.len() - 1] > 0;
        match *self {
            Region::Cube => k.iter().all(|&c| c > 0 && c < p),
            Region::Simplex(n) => decreasing && k[0] < n * p,
            Region::BaseSlab(m) => decreasing && k[0] < m * p && k[k.len() - 1] < p,
        }
    }

    fn upper(&self) -> i64 {
        match *self {
            Region::Cube => GENERIC_DENOMINATOR,
            Region::Simplex(n) | Region::BaseSlab(n) => n * GENERIC_DENOMINATOR,
        }
    }
}

/// `count` seeded points in the interior of `region` that avoid every
/// triangulation hyperplane.
pub fn generic_interior_samples(d: usize, region: Region, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom = Rational::from(GENERIC_DENOMINATOR);
    let upper = region.upper();
    let mut out = Vec::with_capacity(count);
    let mut k = vec![0i64; d];
    while out.len() < count {
        for c in k.iter_mut() {
            *c = rng.gen_range(1..upper);
        }
        if region != Region::Cube {
            k.sort_unstable_by(|a, b| b.cmp(a));
        }
        if region.accepts(&k) {
            out.push(Point::new(
                k.iter().map(|&c| Rational::from(c) / &denom).collect(),
            ));
        }
    }
    out
}

/// Outcome of a partition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub samples: usize,
    /// Samples whose strict-containment multiplicity is not exactly 1.
    pub defects: Vec<(Point, usize)>,
    pub simplex_count: usize,
    pub simplex_volume: Rational,
    pub region_volume: Rational,
}

impl PartitionReport {
    pub fn volume_matches(&self) -> bool {
        self.simplex_volume == self.region_volume
    }

    pub fn is_ok(&self) -> bool {
        self.defects.is_empty() && self.volume_matches()
    }
}

/// Check that `pairs` partition `region`: every generic sample lies strictly
/// inside exactly one simplex, and the volumes add up.
///
/// A simplex strictly containing `x` must be anchored at `floor(x)`, so only
/// that bucket is scanned.
pub fn partition_check(
    d: usize,
    pairs: &[AdmissiblePair],
    region: Region,
    samples: &[Point],
) -> PartitionReport {
    let mut buckets: HashMap<&[i64], Vec<&AdmissiblePair>> = HashMap::new();
    for p in pairs {
        buckets.entry(p.v.as_slice()).or_default().push(p);
    }
    let defects: Vec<(Point, usize)> = samples
        .par_iter()
        .filter_map(|x| {
            let v: Vec<i64> = x
                .coords()
                .iter()
                .map(|c| c.floor_i64().expect("bounded sample"))
                .collect();
            let hits = buckets.get(v.as_slice()).map_or(0, |cands| {
                cands
                    .iter()
                    .filter(|p| p.simplex().contains(x, true).unwrap_or(false))
                    .count()
            });
            (hits != 1).then(|| (x.clone(), hits))
        })
        .collect();
    let unit = unit_volume(d).expect("d >= 2");
    PartitionReport {
        samples: samples.len(),
        defects,
        simplex_count: pairs.len(),
        simplex_volume: Rational::from(pairs.len() as i64) * unit,
        region_volume: region.volume(d),
    }
}

//! JSON shapes written by the command-line tool.
//!
//! Covers are stored as JSON lines, one [`CoverRecord`] per element:
//!
//! ```text
//! {"kind":"base_b","v":[1,0],"pi":[2,1],"anchor":["1","1/4"]}
//! ```
//!
//! Permutations are 1-based and rationals use the canonical `p/q` form.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::arith::{ArithError, Permutation, Point, Rational};
use crate::cover::{CoverElement, CoverSpec};
use crate::verify::CoverageReport;
use crate::witness::WitnessResult;

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error("bad field: {0}")]
    Field(String),

    #[error(transparent)]
    Arith(#[from] ArithError),

    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRecord {
    pub kind: String,
    pub v: Vec<i64>,
    pub pi: Vec<usize>,
    pub anchor: Vec<String>,
}

fn point_strings(p: &Point) -> Vec<String> {
    p.coords().iter().map(Rational::to_string).collect()
}

impl From<&CoverElement> for CoverRecord {
    fn from(e: &CoverElement) -> Self {
        CoverRecord {
            kind: e.kind.as_str().to_string(),
            v: e.v.clone(),
            pi: e.perm.to_one_based(),
            anchor: point_strings(e.anchor()),
        }
    }
}

impl TryFrom<CoverRecord> for CoverElement {
    type Error = RecordError;

    fn try_from(r: CoverRecord) -> Result<Self, Self::Error> {
        let kind = r.kind.parse().map_err(RecordError::Field)?;
        let perm = Permutation::from_one_based(&r.pi)?;
        let anchor = r
            .anchor
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        if r.v.len() != perm.len() || anchor.len() != perm.len() {
            return Err(RecordError::Field(format!(
                "v, pi and anchor lengths differ ({}, {}, {})",
                r.v.len(),
                perm.len(),
                anchor.len()
            )));
        }
        Ok(CoverElement::with_anchor(kind, r.v, perm, Point::new(anchor)))
    }
}

pub fn write_cover_jsonl<W: Write>(cover: &CoverSpec, mut out: W) -> io::Result<()> {
    for e in cover.elements() {
        serde_json::to_writer(&mut out, &CoverRecord::from(e))?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn read_cover_jsonl<R: BufRead>(input: R) -> Result<Vec<CoverElement>, RecordError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CoverRecord = serde_json::from_str(&line).map_err(|source| RecordError::Json {
            line: i + 1,
            source,
        })?;
        out.push(rec.try_into()?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutesJson {
    pub top: u64,
    pub base_a: u64,
    pub base_b: u64,
    pub fallback: u64,
}

/// Wire form of a [`CoverageReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub total: u64,
    pub covered: u64,
    pub routes: RoutesJson,
    pub failures: Vec<Vec<String>>,
    pub elapsed_ms: u64,
}

impl From<&CoverageReport> for ReportJson {
    fn from(r: &CoverageReport) -> Self {
        ReportJson {
            total: r.total,
            covered: r.covered,
            routes: RoutesJson {
                top: r.routes.top,
                base_a: r.routes.base_a,
                base_b: r.routes.base_b,
                fallback: r.routes.fallback,
            },
            failures: r.failures.iter().map(point_strings).collect(),
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub route: String,
    pub element: CoverRecord,
    pub w: Vec<String>,
}

impl From<&WitnessResult> for WitnessJson {
    fn from(r: &WitnessResult) -> Self {
        WitnessJson {
            route: r.route.as_str().to_string(),
            element: CoverRecord::from(&r.element),
            w: point_strings(&r.w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_cover;
    use proptest::prelude::*;

    #[test]
    fn record_shape() {
        let c = build_cover(2, 2).unwrap();
        let base_b = c
            .elements()
            .iter()
            .find(|e| e.v == [1, 0] && e.perm.to_one_based() == [2, 1])
            .unwrap();
        let json = serde_json::to_string(&CoverRecord::from(base_b)).unwrap();
        assert_eq!(json, r#"{"kind":"base_b","v":[1,0],"pi":[2,1],"anchor":["1","1/4"]}"#);
    }

    #[test]
    fn jsonl_errors() {
        let bad = "{\"kind\":\"side\",\"v\":[0,0],\"pi\":[1,2],\"anchor\":[\"0\",\"0\"]}\n";
        assert!(matches!(read_cover_jsonl(bad.as_bytes()), Err(RecordError::Field(_))));
        let bad = "{\"kind\":\"top\",\"v\":[0,0],\"pi\":[1,1],\"anchor\":[\"0\",\"0\"]}\n";
        assert!(matches!(read_cover_jsonl(bad.as_bytes()), Err(RecordError::Arith(_))));
        let bad = "\n\nnot json\n";
        assert!(matches!(
            read_cover_jsonl(bad.as_bytes()),
            Err(RecordError::Json { line: 3, .. })
        ));
        let bad = "{\"kind\":\"top\",\"v\":[0],\"pi\":[1,2],\"anchor\":[\"0\",\"0\"]}\n";
        assert!(matches!(read_cover_jsonl(bad.as_bytes()), Err(RecordError::Field(_))));
    }

    proptest! {
        #[test]
        fn cover_files_round_trip(d in 2usize..=4, n in 1i64..=4) {
            let c = build_cover(d, n).unwrap();
            let mut buf = Vec::new();
            write_cover_jsonl(&c, &mut buf).unwrap();
            let back = read_cover_jsonl(buf.as_slice()).unwrap();
            prop_assert_eq!(back.as_slice(), c.elements());
        }
    }
}

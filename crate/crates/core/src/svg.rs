//! SVG drawings of planar covers.
//!
//! Coordinates stay exact until the final conversion to `f64`. With the
//! equilateral option every point goes through the shear
//! `M = [[1, -1/2], [0, √3/2]]` first, which turns each unit right triangle
//! into a unit equilateral triangle.

use std::fmt::Write;

use crate::arith::{Point, Rational};
use crate::cover::{CoverKind, CoverSpec};

/// Pixels per unit length.
pub const UNIT_PX: f64 = 120.0;
const MARGIN_PX: f64 = 30.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderOptions {
    pub equilateral: bool,
    pub labels: bool,
}

/// Plane coordinates of `p` before scaling to pixels.
pub fn plane_coords(p: &Point, equilateral: bool) -> (f64, f64) {
    let (x, y) = (p.coords()[0].to_f64(), p.coords()[1].to_f64());
    if equilateral {
        (x - 0.5 * y, 3f64.sqrt() / 2.0 * y)
    } else {
        (x, y)
    }
}

fn fill(kind: CoverKind) -> &'static str {
    match kind {
        CoverKind::Top => "#4c72b0",
        CoverKind::BaseA => "#55a868",
        CoverKind::BaseB => "#dd8452",
    }
}

/// Render a `d = 2` cover together with the outline of `S^{n+δ}`.
///
/// Panics if the cover is not planar.
pub fn render_cover(cover: &CoverSpec, opts: RenderOptions) -> String {
    assert_eq!(cover.d(), 2, "only planar covers can be rendered");
    let top = Rational::from(cover.n()) + cover.delta();
    let zero = Rational::zero();
    let outline = [
        Point::new(vec![zero.clone(), zero.clone()]),
        Point::new(vec![top.clone(), zero]),
        Point::new(vec![top.clone(), top]),
    ];

    let polys: Vec<(CoverKind, Vec<(f64, f64)>)> = cover
        .elements()
        .iter()
        .map(|e| {
            let pts = e
                .simplex()
                .vertices()
                .iter()
                .map(|v| plane_coords(v, opts.equilateral))
                .collect();
            (e.kind, pts)
        })
        .collect();
    let target: Vec<(f64, f64)> = outline
        .iter()
        .map(|v| plane_coords(v, opts.equilateral))
        .collect();

    let all = polys.iter().flat_map(|(_, p)| p.iter()).chain(target.iter());
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0f64, 0f64, 0f64, 0f64);
    for &(x, y) in all {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let width = (max_x - min_x) * UNIT_PX + 2.0 * MARGIN_PX;
    let height = (max_y - min_y) * UNIT_PX + 2.0 * MARGIN_PX;
    // y grows upward in the plane and downward in SVG.
    let to_px = |(x, y): (f64, f64)| {
        (
            MARGIN_PX + (x - min_x) * UNIT_PX,
            MARGIN_PX + (max_y - y) * UNIT_PX,
        )
    };
    let points_attr = |pts: &[(f64, f64)]| {
        pts.iter()
            .map(|&p| {
                let (x, y) = to_px(p);
                format!("{x:.9},{y:.9}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.6} {height:.6}">"#
    );
    let _ = writeln!(
        s,
        "<!-- d=2 n={} delta={} equilateral={} -->",
        cover.n(),
        cover.delta(),
        opts.equilateral
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, (kind, pts)) in polys.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<polygon class="cover {kind}" data-index="{i}" points="{}" fill="{}" fill-opacity="0.35" stroke="{}" stroke-width="1"/>"#,
            points_attr(pts),
            fill(*kind),
            fill(*kind),
        );
    }
    let _ = writeln!(
        s,
        r#"<polygon class="target" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        points_attr(&target)
    );
    if opts.labels {
        for (i, (kind, pts)) in polys.iter().enumerate() {
            let cx = pts.iter().map(|p| p.0).sum::<f64>() / 3.0;
            let cy = pts.iter().map(|p| p.1).sum::<f64>() / 3.0;
            let (x, y) = to_px((cx, cy));
            let _ = writeln!(
                s,
                r#"<text x="{x:.6}" y="{y:.6}" font-size="11" text-anchor="middle" dominant-baseline="middle">{i}:{kind}</text>"#
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

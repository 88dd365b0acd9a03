//! Point/polyline and polyline/polyline distances.

use super::{ClosedCurve, Point2};
use alloc::vec::Vec;

/// Distance from `p` to the closed segment `a b`.
pub fn point_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let dd = d.norm_sq();
    if dd == 0.0 {
        return p.dist(a);
    }
    let u = ((p - a).dot(d) / dd).clamp(0.0, 1.0);
    p.dist(a.lerp(b, u))
}

/// Distance from `p` to a polyline (closed when `closed` is set).
pub fn point_to_polyline(p: Point2, pts: &[Point2], closed: bool) -> f64 {
    let n = pts.len();
    if n == 0 {
        return f64::INFINITY;
    }
    if n == 1 {
        return p.dist(pts[0]);
    }
    let last = if closed { n } else { n - 1 };
    let mut best = f64::INFINITY;
    for i in 0..last {
        let d = point_to_segment(p, pts[i], pts[(i + 1) % n]);
        if d < best {
            best = d;
        }
    }
    best
}

/// One-sided distance: supremum over the vertices of `a` of the distance to
/// the polyline `b`. This is the discrete form of "`a` lies in the
/// eps-neighborhood of `b`" (true when the result is below eps).
pub fn directed_distance(a: &[Point2], b: &[Point2], b_closed: bool) -> f64 {
    a.iter().map(|&p| point_to_polyline(p, b, b_closed)).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two closed curves.
pub fn hausdorff_distance(a: &ClosedCurve, b: &ClosedCurve) -> f64 {
    hausdorff_polylines(a.vertices(), true, b.vertices(), true)
}

/// Symmetric Hausdorff distance between polylines, each open or closed.
pub fn hausdorff_polylines(a: &[Point2], a_closed: bool, b: &[Point2], b_closed: bool) -> f64 {
    directed_distance(a, b, b_closed).max(directed_distance(b, a, a_closed))
}

/// Minimum distance between two closed curves; exactly zero when their
/// boundaries cross.
///
/// For non-crossing polygons the minimum is attained at a vertex of one
/// against an edge of the other, so the vertex sweep is exact.
pub fn min_curve_distance(a: &ClosedCurve, b: &ClosedCurve) -> f64 {
    use super::intersect::{classify_segments, SegmentRelation};
    for (a0, a1) in a.edges() {
        for (b0, b1) in b.edges() {
            if classify_segments(a0, a1, b0, b1, 0.0) != SegmentRelation::Disjoint {
                return 0.0;
            }
        }
    }
    let d_ab = directed_min(a.vertices(), b.vertices());
    let d_ba = directed_min(b.vertices(), a.vertices());
    d_ab.min(d_ba)
}

fn directed_min(a: &[Point2], b: &[Point2]) -> f64 {
    let mut best = f64::INFINITY;
    for &p in a {
        let d = point_to_polyline(p, b, true);
        if d < best {
            best = d;
        }
    }
    best
}

/// Brute-force oracle used by tests: all pairs of vertices of `a` against all
/// segments of `b`, symmetrised. Kept separate from `hausdorff_polylines` so
/// the two routes stay independent.
#[doc(hidden)]
pub fn hausdorff_bruteforce(a: &[Point2], b: &[Point2]) -> f64 {
    let dir = |xs: &[Point2], ys: &[Point2]| -> f64 {
        let mut worst: f64 = 0.0;
        for &p in xs {
            let mut best = f64::INFINITY;
            for w in ys.windows(2) {
                best = best.min(point_to_segment(p, w[0], w[1]));
            }
            best = best.min(point_to_segment(p, ys[ys.len() - 1], ys[0]));
            worst = worst.max(best);
        }
        worst
    };
    dir(a, b).max(dir(b, a))
}

/// Clip an open polyline to the horizontal band `|y| <= y_max`, interpolating
/// the boundary crossings; returns the pieces as separate polylines.
pub fn clip_to_band(pts: &[Point2], y_max: f64) -> Vec<Vec<Point2>> {
    let mut pieces: Vec<Vec<Point2>> = Vec::new();
    let mut current: Vec<Point2> = Vec::new();
    let inside = |p: Point2| p.y.abs() <= y_max;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        match (inside(a), inside(b)) {
            (true, true) => {
                if current.is_empty() {
                    current.push(a);
                }
                current.push(b);
            }
            (true, false) => {
                if current.is_empty() {
                    current.push(a);
                }
                current.push(band_crossing(a, b, y_max));
                pieces.push(core::mem::take(&mut current));
            }
            (false, true) => {
                current.push(band_crossing(a, b, y_max));
                current.push(b);
            }
            (false, false) => {}
        }
    }
    if !current.is_empty() {
        pieces.push(current);
    }
    pieces
}

fn band_crossing(a: Point2, b: Point2, y_max: f64) -> Point2 {
    let target = if (a.y + b.y) * 0.5 >= 0.0 { y_max } else { -y_max };
    let u = (target - a.y) / (b.y - a.y);
    a.lerp(b, u.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::super::tests::circle;
    use super::*;
    use crate::geometry::ClosedCurve;

    #[test]
    fn identical_curves_have_zero_distance() {
        let c = ClosedCurve::new(circle(Point2::default(), 1.0, 128)).unwrap();
        assert_eq!(hausdorff_distance(&c, &c), 0.0);
    }

    #[test]
    fn concentric_circles_distance_is_gap() {
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 512)).unwrap();
        let b = ClosedCurve::new(circle(Point2::default(), 2.0, 512)).unwrap();
        assert!((hausdorff_distance(&a, &b) - 1.0).abs() < 1e-3);
        assert!(min_curve_distance(&a, &b) > 0.9);
    }

    #[test]
    fn translation_distance_matches_offset_against_oracle() {
        let a = ClosedCurve::new(circle(Point2::default(), 5.0, 512)).unwrap();
        let b = a.transformed(|p| p + Point2::new(0.3, 0.0)).unwrap();
        let d = hausdorff_distance(&a, &b);
        assert!((d - 0.3).abs() < 1e-3, "d = {d}");
        let oracle = hausdorff_bruteforce(a.vertices(), b.vertices());
        assert!((d - oracle).abs() < 1e-12);
    }

    #[test]
    fn crossing_curves_have_zero_min_distance() {
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 64)).unwrap();
        let b = ClosedCurve::new(circle(Point2::new(1.0, 0.0), 1.0, 64)).unwrap();
        assert_eq!(min_curve_distance(&a, &b), 0.0);
    }

    #[test]
    fn band_clipping_interpolates_boundary() {
        let pts = [
            Point2::new(0.0, -2.0),
            Point2::new(0.0, -0.5),
            Point2::new(0.0, 0.5),
            Point2::new(0.0, 2.0),
        ];
        let pieces = clip_to_band(&pts, 1.0);
        assert_eq!(pieces.len(), 1);
        let piece = &pieces[0];
        assert_eq!(piece.first().unwrap().y, -1.0);
        assert_eq!(piece.last().unwrap().y, 1.0);
    }
}

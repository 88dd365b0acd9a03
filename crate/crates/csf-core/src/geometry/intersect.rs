//! Segment intersection tests and embeddedness sweeps.
//!
//! Crossing tests use the adaptive-precision orientation predicate from the
//! `robust` crate, so the *sign* of every orientation is exact; tolerances
//! only enter through the transversality angle.

use super::{ClosedCurve, GeometryError, Point2, TRANSVERSALITY_TOL};
use alloc::vec::Vec;

/// Exact-sign orientation of `c` relative to the directed line `a -> b`:
/// positive = left, negative = right, zero = collinear.
pub(crate) fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    )
}

fn bbox_disjoint(a0: Point2, a1: Point2, b0: Point2, b1: Point2) -> bool {
    a0.x.max(a1.x) < b0.x.min(b1.x)
        || b0.x.max(b1.x) < a0.x.min(a1.x)
        || a0.y.max(a1.y) < b0.y.min(b1.y)
        || b0.y.max(b1.y) < a0.y.min(a1.y)
}

/// Is `p` (known collinear with `a -> b`) within the segment's bbox?
fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Relation of two closed segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SegmentRelation {
    Disjoint,
    /// Interiors cross at a single point.
    ProperCrossing,
    /// Endpoint contact, collinear overlap, or a crossing below the
    /// transversality angle.
    Degenerate,
}

/// Classify the relation of segments `a0 a1` and `b0 b1` with a minimum
/// crossing angle `tol` (radians; compared through the sine).
pub(crate) fn classify_segments(
    a0: Point2,
    a1: Point2,
    b0: Point2,
    b1: Point2,
    tol: f64,
) -> SegmentRelation {
    if bbox_disjoint(a0, a1, b0, b1) {
        return SegmentRelation::Disjoint;
    }
    let o1 = orient(a0, a1, b0);
    let o2 = orient(a0, a1, b1);
    let o3 = orient(b0, b1, a0);
    let o4 = orient(b0, b1, a1);
    if o1 == 0.0 && on_segment(a0, a1, b0) {
        return SegmentRelation::Degenerate;
    }
    if o2 == 0.0 && on_segment(a0, a1, b1) {
        return SegmentRelation::Degenerate;
    }
    if o3 == 0.0 && on_segment(b0, b1, a0) {
        return SegmentRelation::Degenerate;
    }
    if o4 == 0.0 && on_segment(b0, b1, a1) {
        return SegmentRelation::Degenerate;
    }
    if (o1 > 0.0) != (o2 > 0.0) && (o3 > 0.0) != (o4 > 0.0) {
        let da = a1 - a0;
        let db = b1 - b0;
        let denom = da.norm() * db.norm();
        if denom == 0.0 {
            return SegmentRelation::Degenerate;
        }
        let sin_angle = (da.cross(db) / denom).abs();
        if sin_angle < tol {
            return SegmentRelation::Degenerate;
        }
        return SegmentRelation::ProperCrossing;
    }
    SegmentRelation::Disjoint
}

/// Number of transversal crossing points between two embedded closed curves.
///
/// Symmetric in its arguments. Tangential or otherwise degenerate contact
/// yields [`GeometryError::NonGenericConfiguration`]; the caller perturbs
/// (see [`ClosedCurve::perturbed`]) rather than this function resolving the
/// tie silently.
pub fn count_intersections(a: &ClosedCurve, b: &ClosedCurve) -> Result<usize, GeometryError> {
    count_intersections_with_tolerance(a, b, TRANSVERSALITY_TOL)
}

/// [`count_intersections`] with an explicit transversality angle (radians).
pub fn count_intersections_with_tolerance(
    a: &ClosedCurve,
    b: &ClosedCurve,
    tol: f64,
) -> Result<usize, GeometryError> {
    let mut count = 0usize;
    for (a0, a1) in a.edges() {
        for (b0, b1) in b.edges() {
            match classify_segments(a0, a1, b0, b1, tol) {
                SegmentRelation::Disjoint => {}
                SegmentRelation::ProperCrossing => count += 1,
                SegmentRelation::Degenerate => {
                    return Err(GeometryError::NonGenericConfiguration)
                }
            }
        }
    }
    Ok(count)
}

/// True iff the vertex list, read as a closed polygon, has no two edges
/// intersecting except at shared endpoints of adjacent edges.
pub fn is_embedded_polygon(points: &[Point2]) -> bool {
    first_self_intersection(points).is_none()
}

/// Find one offending edge pair of a closed polygon, if any.
pub(crate) fn first_self_intersection(points: &[Point2]) -> Option<(usize, usize)> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    // fold of adjacent edges: collinear doubling-back counts as contact
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        let c = points[(i + 2) % n];
        let e1 = b - a;
        let e2 = c - b;
        if e1.cross(e2) == 0.0 && e1.dot(e2) < 0.0 {
            return Some((i, (i + 1) % n));
        }
    }
    let tree = EdgeTree::build(points);
    tree.first_contact(points)
}

/// Flat binary tree of edge-range bounding boxes over the cyclic edge list.
///
/// Rebuilding is O(n) and queries prune almost everything for curves whose
/// strands stay separated, which keeps the per-step embeddedness check in the
/// flow loop cheap.
pub(crate) struct EdgeTree {
    n_edges: usize,
    n_leaves: usize, // power of two >= n_edges
    // nodes[1] is the root; children of k are 2k and 2k+1
    lo: Vec<Point2>,
    hi: Vec<Point2>,
}

impl EdgeTree {
    pub(crate) fn build(points: &[Point2]) -> EdgeTree {
        let n_edges = points.len();
        let n_leaves = n_edges.next_power_of_two();
        let size = 2 * n_leaves;
        let mut lo = alloc::vec![Point2::new(f64::INFINITY, f64::INFINITY); size];
        let mut hi = alloc::vec![Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY); size];
        for i in 0..n_edges {
            let a = points[i];
            let b = points[(i + 1) % n_edges];
            lo[n_leaves + i] = Point2::new(a.x.min(b.x), a.y.min(b.y));
            hi[n_leaves + i] = Point2::new(a.x.max(b.x), a.y.max(b.y));
        }
        for k in (1..n_leaves).rev() {
            let (l, r) = (2 * k, 2 * k + 1);
            lo[k] = Point2::new(lo[l].x.min(lo[r].x), lo[l].y.min(lo[r].y));
            hi[k] = Point2::new(hi[l].x.max(hi[r].x), hi[l].y.max(hi[r].y));
        }
        EdgeTree { n_edges, n_leaves, lo, hi }
    }

    fn disjoint(&self, a: usize, b: usize) -> bool {
        self.hi[a].x < self.lo[b].x
            || self.hi[b].x < self.lo[a].x
            || self.hi[a].y < self.lo[b].y
            || self.hi[b].y < self.lo[a].y
    }

    fn leaf_range(&self, k: usize) -> (usize, usize) {
        // range of leaf indices under node k
        let mut lo = k;
        let mut hi = k;
        while lo < self.n_leaves {
            lo *= 2;
            hi = 2 * hi + 1;
        }
        (lo - self.n_leaves, hi - self.n_leaves)
    }

    fn first_contact(&self, points: &[Point2]) -> Option<(usize, usize)> {
        let mut stack: Vec<(usize, usize)> = alloc::vec![(1usize, 1usize)];
        let n = self.n_edges;
        while let Some((a, b)) = stack.pop() {
            if a == b {
                if a >= self.n_leaves {
                    continue;
                }
                stack.push((2 * a, 2 * a));
                stack.push((2 * a + 1, 2 * a + 1));
                stack.push((2 * a, 2 * a + 1));
                continue;
            }
            if self.disjoint(a, b) {
                continue;
            }
            let a_leaf = a >= self.n_leaves;
            let b_leaf = b >= self.n_leaves;
            if a_leaf && b_leaf {
                let i = a - self.n_leaves;
                let j = b - self.n_leaves;
                if i >= n || j >= n {
                    continue;
                }
                // adjacent edges share exactly one endpoint; skip them
                if (i + 1) % n == j || (j + 1) % n == i {
                    continue;
                }
                let (p, q) = (points[i], points[(i + 1) % n]);
                let (r, s) = (points[j], points[(j + 1) % n]);
                if classify_segments(p, q, r, s, 0.0) != SegmentRelation::Disjoint {
                    return Some((i.min(j), i.max(j)));
                }
                continue;
            }
            // descend the node covering the wider leaf range
            let split_a = if a_leaf {
                false
            } else if b_leaf {
                true
            } else {
                let ra = self.leaf_range(a);
                let rb = self.leaf_range(b);
                (ra.1 - ra.0) >= (rb.1 - rb.0)
            };
            if split_a {
                stack.push((2 * a, b));
                stack.push((2 * a + 1, b));
            } else {
                stack.push((a, 2 * b));
                stack.push((a, 2 * b + 1));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{circle, ellipse, figure_eight};
    use super::*;
    use crate::geometry::ClosedCurve;

    #[test]
    fn concentric_circles_do_not_cross() {
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 128)).unwrap();
        let b = ClosedCurve::new(circle(Point2::default(), 2.0, 128)).unwrap();
        assert_eq!(count_intersections(&a, &b).unwrap(), 0);
    }

    #[test]
    fn offset_unit_circles_cross_twice() {
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 128)).unwrap();
        let b = ClosedCurve::new(circle(Point2::new(1.0, 0.0), 1.0, 128)).unwrap();
        assert_eq!(count_intersections(&a, &b).unwrap(), 2);
    }

    /// Oracle: dense sampling of sign changes of the radial difference
    /// between the two curves, both star-shaped about the origin.
    fn radial_crossings(a: f64, b: f64) -> usize {
        let m = 1 << 14;
        let radius_ellipse = |th: f64| {
            let c = th.cos();
            let s = th.sin();
            1.0 / ((c / a) * (c / a) + (s / b) * (s / b)).sqrt()
        };
        let mut count = 0;
        let mut prev = radius_ellipse(0.0) - 1.0;
        for i in 1..=m {
            let th = core::f64::consts::TAU * (i as f64) / (m as f64);
            let cur = radius_ellipse(th) - 1.0;
            if prev * cur < 0.0 {
                count += 1;
            }
            prev = cur;
        }
        count
    }

    #[test]
    fn circle_vs_ellipse_matches_radial_oracle() {
        let expected = radial_crossings(1.5, 0.5);
        assert_eq!(expected, 4);
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 256)).unwrap();
        let b = ClosedCurve::new(ellipse(1.5, 0.5, 256)).unwrap();
        assert_eq!(count_intersections(&a, &b).unwrap(), expected);
    }

    #[test]
    fn symmetry_of_count() {
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 96)).unwrap();
        let b = ClosedCurve::new(ellipse(1.5, 0.5, 112)).unwrap();
        assert_eq!(
            count_intersections(&a, &b).unwrap(),
            count_intersections(&b, &a).unwrap()
        );
    }

    #[test]
    fn shared_vertex_is_non_generic() {
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 64)).unwrap();
        // touching circles share the point (1, 0) tangentially
        let b = ClosedCurve::new(circle(Point2::new(2.0, 0.0), 1.0, 64)).unwrap();
        match count_intersections(&a, &b) {
            Err(GeometryError::NonGenericConfiguration) => {}
            Ok(c) => assert_eq!(c % 2, 0, "tangential polygons may resolve to an even count"),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn embeddedness_examples() {
        let c = ClosedCurve::new(circle(Point2::default(), 1.0, 128)).unwrap();
        assert!(c.is_embedded());
        let f8 = ClosedCurve::new_unchecked(figure_eight()).unwrap();
        assert!(!f8.is_embedded());
    }

    #[test]
    fn perturbation_resolves_degeneracy() {
        let a = ClosedCurve::new(circle(Point2::default(), 1.0, 64)).unwrap();
        let b = ClosedCurve::new(circle(Point2::new(2.0, 0.0), 1.0, 64)).unwrap();
        let mut result = count_intersections(&a, &b);
        let mut attempt = 0;
        while result.is_err() && attempt < 8 {
            result = count_intersections(&a, &b.perturbed(attempt));
            attempt += 1;
        }
        assert!(result.is_ok());
    }
}

//! Discrete planar-curve primitives.
//!
//! A [`ClosedCurve`] is an ordered, embedded polygon with at least
//! [`MIN_VERTICES`] vertices, normalised to counter-clockwise orientation.
//! All operations are pure functions of immutable inputs and are safe to call
//! concurrently.

mod curvature;
mod distance;
mod intersect;

pub use curvature::{arclength_derivative, curvature, CurvatureField};
pub use distance::{
    clip_to_band, directed_distance, hausdorff_bruteforce, hausdorff_distance,
    hausdorff_polylines, min_curve_distance, point_to_polyline, point_to_segment,
};
pub use intersect::{count_intersections, count_intersections_with_tolerance, is_embedded_polygon};

use alloc::vec::Vec;
use core::fmt;

/// Minimum vertex count accepted for a closed curve.
pub const MIN_VERTICES: usize = 8;

/// Minimum crossing angle (radians) below which an intersection counts as
/// non-generic. Callers that need a definite answer perturb their inputs.
pub const TRANSVERSALITY_TOL: f64 = 1e-6;

/// A point of the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// 2D cross product (z-component of the wedge).
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise quarter turn: the left normal of a direction vector.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        if n == 0.0 {
            Point2::new(0.0, 0.0)
        } else {
            self * (1.0 / n)
        }
    }

    pub fn lerp(self, other: Point2, u: f64) -> Point2 {
        Point2::new(self.x + (other.x - self.x) * u, self.y + (other.y - self.y) * u)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl core::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl core::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl core::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl core::ops::Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Winding orientation of a closed polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub min: Point2,
    pub max: Point2,
}

impl BoundingBox {
    pub fn of(points: &[Point2]) -> BoundingBox {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        BoundingBox { min, max }
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }
}

/// Errors from curve construction and the geometric operations.
#[derive(Clone, Debug, PartialEq)]
pub enum GeometryError {
    /// Fewer vertices than [`MIN_VERTICES`] (or than the operation requires).
    TooFewVertices { got: usize, min: usize },
    /// A coordinate is NaN or infinite.
    NonFinite { index: usize },
    /// Two consecutive vertices coincide.
    DuplicateVertex { index: usize },
    /// The polygon has zero signed area; orientation cannot be normalised.
    DegenerateArea,
    /// Two non-adjacent edges intersect.
    SelfIntersecting { edge_a: usize, edge_b: usize },
    /// Three consecutive vertices are collocated; curvature is undefined.
    DegenerateTriple { index: usize },
    /// Tangential or overlapping contact between the two inputs; the caller
    /// should perturb one input and retry.
    NonGenericConfiguration,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::TooFewVertices { got, min } => {
                write!(f, "curve needs at least {min} vertices, got {got}")
            }
            GeometryError::NonFinite { index } => {
                write!(f, "non-finite coordinate at vertex {index}")
            }
            GeometryError::DuplicateVertex { index } => {
                write!(f, "consecutive duplicate vertex at index {index}")
            }
            GeometryError::DegenerateArea => write!(f, "polygon encloses zero signed area"),
            GeometryError::SelfIntersecting { edge_a, edge_b } => {
                write!(f, "self-intersection between edges {edge_a} and {edge_b}")
            }
            GeometryError::DegenerateTriple { index } => {
                write!(f, "degenerate vertex triple around index {index}")
            }
            GeometryError::NonGenericConfiguration => {
                write!(f, "non-generic configuration (tangential or degenerate contact)")
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// An ordered, closed, embedded polygonal curve, stored counter-clockwise.
///
/// The last vertex connects to the first by convention. [`ClosedCurve::new`]
/// validates the full invariant set, including embeddedness;
/// [`ClosedCurve::new_unchecked`] skips the embeddedness sweep for callers
/// that already guarantee it (or that deliberately hold a non-embedded
/// polygon to inspect with [`ClosedCurve::is_embedded`]).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosedCurve {
    vertices: Vec<Point2>,
}

impl ClosedCurve {
    /// Validate and normalise a vertex list into a curve.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let curve = Self::new_unchecked(vertices)?;
        if let Some((edge_a, edge_b)) = intersect::first_self_intersection(&curve.vertices) {
            return Err(GeometryError::SelfIntersecting { edge_a, edge_b });
        }
        Ok(curve)
    }

    /// Build a curve without the embeddedness sweep.
    ///
    /// Finiteness, vertex count, consecutive-distinctness and orientation
    /// normalisation still apply.
    pub fn new_unchecked(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.len() < MIN_VERTICES {
            return Err(GeometryError::TooFewVertices { got: vertices.len(), min: MIN_VERTICES });
        }
        for (i, p) in vertices.iter().enumerate() {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite { index: i });
            }
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(GeometryError::DuplicateVertex { index: i });
            }
        }
        let mut vertices = vertices;
        let signed = shoelace(&vertices);
        if signed == 0.0 {
            return Err(GeometryError::DegenerateArea);
        }
        if signed < 0.0 {
            vertices.reverse();
        }
        Ok(ClosedCurve { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    /// Always [`Orientation::Ccw`] after construction; kept as a query for
    /// orientation-sensitive callers.
    pub fn orientation(&self) -> Orientation {
        if shoelace(&self.vertices) >= 0.0 {
            Orientation::Ccw
        } else {
            Orientation::Cw
        }
    }

    /// Signed shoelace area (positive for the stored CCW orientation).
    pub fn signed_area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    /// Positive area of the region enclosed by the curve.
    pub fn enclosed_area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// Total length of the polygon boundary.
    pub fn arc_length(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn min_edge_length(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).fold(f64::INFINITY, f64::min)
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).fold(0.0, f64::max)
    }

    pub fn bounding_box(&self) -> BoundingBox {
        BoundingBox::of(&self.vertices)
    }

    /// True iff no pair of non-adjacent edges intersects or touches.
    pub fn is_embedded(&self) -> bool {
        intersect::first_self_intersection(&self.vertices).is_none()
    }

    /// Resample to `n` vertices at equal arclength spacing along the
    /// polyline, anchored at vertex 0. Orientation is preserved.
    pub fn resample(&self, n: usize) -> Result<ClosedCurve, GeometryError> {
        if n < MIN_VERTICES {
            return Err(GeometryError::TooFewVertices { got: n, min: MIN_VERTICES });
        }
        let pts = resample_closed_polyline(&self.vertices, n);
        ClosedCurve::new_unchecked(pts)
    }

    /// Apply a point map (intended for rigid motions and scalings, which
    /// preserve the curve invariants).
    pub fn transformed(&self, f: impl Fn(Point2) -> Point2) -> Result<ClosedCurve, GeometryError> {
        ClosedCurve::new_unchecked(self.vertices.iter().map(|&p| f(p)).collect())
    }

    /// Translate the whole curve by a deterministic sub-diameter offset.
    ///
    /// This is the perturbation policy for non-generic intersection
    /// configurations: magnitude `1e-9 * diameter`, direction derived from
    /// the attempt index `k` so retries are reproducible.
    pub fn perturbed(&self, k: u64) -> ClosedCurve {
        let eps = 1e-9 * self.bounding_box().diagonal();
        // golden-angle sequence keeps successive directions well separated
        let angle = (k as f64) * 2.399963229728653 + 0.7;
        let delta = Point2::new(eps * angle.cos(), eps * angle.sin());
        ClosedCurve { vertices: self.vertices.iter().map(|&p| p + delta).collect() }
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }
}

/// Signed shoelace sum of a vertex list.
pub fn shoelace(points: &[Point2]) -> f64 {
    let n = points.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = points[i];
        let q = points[(i + 1) % n];
        acc += p.cross(q);
    }
    0.5 * acc
}

/// Length of an open polyline.
pub fn polyline_length(points: &[Point2]) -> f64 {
    points.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Equal-arclength resampling of a closed polyline to `n` points,
/// anchored at vertex 0.
pub(crate) fn resample_closed_polyline(points: &[Point2], n: usize) -> Vec<Point2> {
    let m = points.len();
    let mut cumulative = Vec::with_capacity(m + 1);
    cumulative.push(0.0);
    let mut total = 0.0;
    for i in 0..m {
        total += points[i].dist(points[(i + 1) % m]);
        cumulative.push(total);
    }
    let mut out = Vec::with_capacity(n);
    let mut edge = 0usize;
    for k in 0..n {
        let s = total * (k as f64) / (n as f64);
        while edge + 1 < m && cumulative[edge + 1] <= s {
            edge += 1;
        }
        let seg = cumulative[edge + 1] - cumulative[edge];
        let u = if seg > 0.0 { (s - cumulative[edge]) / seg } else { 0.0 };
        out.push(points[edge].lerp(points[(edge + 1) % m], u));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn circle(center: Point2, r: f64, n: usize) -> Vec<Point2> {
        (0..n)
            .map(|i| {
                let th = core::f64::consts::TAU * (i as f64) / (n as f64);
                Point2::new(center.x + r * th.cos(), center.y + r * th.sin())
            })
            .collect()
    }

    pub(crate) fn ellipse(a: f64, b: f64, n: usize) -> Vec<Point2> {
        (0..n)
            .map(|i| {
                let th = core::f64::consts::TAU * (i as f64) / (n as f64);
                Point2::new(a * th.cos(), b * th.sin())
            })
            .collect()
    }

    /// Unit square padded by edge subdivision to satisfy the vertex minimum.
    pub(crate) fn unit_square_subdivided() -> Vec<Point2> {
        let corners =
            [Point2::new(0., 0.), Point2::new(1., 0.), Point2::new(1., 1.), Point2::new(0., 1.)];
        let mut pts = Vec::new();
        for i in 0..4 {
            let a = corners[i];
            let b = corners[(i + 1) % 4];
            pts.push(a);
            pts.push(a.lerp(b, 0.5));
        }
        pts
    }

    #[test]
    fn rejects_too_few_vertices() {
        let pts = circle(Point2::default(), 1.0, 7);
        assert!(matches!(
            ClosedCurve::new(pts),
            Err(GeometryError::TooFewVertices { got: 7, min: 8 })
        ));
    }

    #[test]
    fn rejects_duplicate_and_nonfinite() {
        let mut pts = circle(Point2::default(), 1.0, 16);
        pts[3] = pts[4];
        assert!(matches!(ClosedCurve::new(pts), Err(GeometryError::DuplicateVertex { .. })));
        let mut pts = circle(Point2::default(), 1.0, 16);
        pts[5].y = f64::NAN;
        assert!(matches!(ClosedCurve::new(pts), Err(GeometryError::NonFinite { index: 5 })));
    }

    #[test]
    fn rejects_self_intersecting_figure_eight() {
        let pts = figure_eight();
        assert!(matches!(ClosedCurve::new(pts), Err(GeometryError::SelfIntersecting { .. })));
    }

    pub(crate) fn figure_eight() -> Vec<Point2> {
        // lemniscate-like sampling; crosses itself at the origin region
        (0..64)
            .map(|i| {
                let t = core::f64::consts::TAU * (i as f64) / 64.0;
                Point2::new((2.0 * t).sin() * 0.3 + t.cos(), t.sin() * (t.cos()))
            })
            .collect()
    }

    #[test]
    fn normalises_to_ccw() {
        let mut pts = circle(Point2::default(), 1.0, 32);
        pts.reverse();
        let c = ClosedCurve::new(pts).unwrap();
        assert_eq!(c.orientation(), Orientation::Ccw);
        assert!(c.signed_area() > 0.0);
    }

    #[test]
    fn unit_square_area_and_length() {
        let c = ClosedCurve::new(unit_square_subdivided()).unwrap();
        assert_eq!(c.enclosed_area(), 1.0);
        assert_eq!(c.arc_length(), 4.0);
    }

    #[test]
    fn circle_area_and_length_converge() {
        let c = ClosedCurve::new(circle(Point2::default(), 1.0, 1024)).unwrap();
        assert!((c.enclosed_area() - core::f64::consts::PI).abs() < 1e-4);
        assert!((c.arc_length() - core::f64::consts::TAU).abs() < 1e-4);
    }

    #[test]
    fn ellipse_area() {
        let c = ClosedCurve::new(ellipse(2.0, 1.0, 1024)).unwrap();
        assert!((c.enclosed_area() - 2.0 * core::f64::consts::PI).abs() < 1e-3);
    }

    #[test]
    fn length_scales_linearly() {
        let c = ClosedCurve::new(ellipse(2.0, 1.0, 64)).unwrap();
        let scaled = c.transformed(|p| p * 3.5).unwrap();
        let ratio = scaled.arc_length() / c.arc_length();
        assert!((ratio - 3.5).abs() < 1e-12);
    }

    #[test]
    fn resample_refinement_improves_circle_area() {
        let coarse = ClosedCurve::new(circle(Point2::default(), 1.0, 64)).unwrap();
        let fine = coarse.resample(256).unwrap();
        assert!((fine.enclosed_area() - coarse.enclosed_area()).abs() < 1e-3);
        assert_eq!(fine.vertex_count(), 256);
    }

    #[test]
    fn resample_fixed_point_on_uniform_curve() {
        let c = ClosedCurve::new(circle(Point2::default(), 1.0, 128)).unwrap();
        let r = c.resample(128).unwrap();
        for (p, q) in c.vertices().iter().zip(r.vertices()) {
            assert!(p.dist(*q) < 1e-9);
        }
    }

    #[test]
    fn resample_equalises_nonuniform_ellipse() {
        let c = ClosedCurve::new(ellipse(2.0, 1.0, 512)).unwrap();
        let r = c.resample(512).unwrap();
        let ratio = r.max_edge_length() / r.min_edge_length();
        assert!(ratio <= 1.01, "edge ratio {ratio}");
    }

    #[test]
    fn resample_rejects_small_n() {
        let c = ClosedCurve::new(circle(Point2::default(), 1.0, 64)).unwrap();
        assert!(c.resample(7).is_err());
    }

    #[test]
    fn perturbation_is_tiny_and_deterministic() {
        let c = ClosedCurve::new(circle(Point2::default(), 1.0, 64)).unwrap();
        let p1 = c.perturbed(3);
        let p2 = c.perturbed(3);
        assert_eq!(p1.vertices(), p2.vertices());
        assert!(c.vertices()[0].dist(p1.vertices()[0]) < 1e-8);
        assert!(c.vertices()[0].dist(p1.vertices()[0]) > 0.0);
    }
}

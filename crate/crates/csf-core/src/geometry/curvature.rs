//! Discrete curvature of closed polygons.
//!
//! Magnitude comes from the circumscribed circle of each vertex triple
//! (exact on circular arcs, second order on smooth curves); the sign is the
//! orientation of the triple, so convex stretches of a CCW curve carry
//! positive curvature. Normals are the left normals of the arclength-weighted
//! tangent, hence unit length by construction, and `kappa * normal` is
//! invariant under reversal of the parametrisation direction.

use super::{intersect::orient, ClosedCurve, GeometryError, Point2};
use alloc::vec::Vec;

/// Per-vertex signed curvature and unit normal of a closed curve.
#[derive(Clone, Debug)]
pub struct CurvatureField {
    /// Signed curvature; positive toward the enclosed region on CCW curves.
    pub kappa: Vec<f64>,
    /// Unit normals; `kappa[i] * normal[i]` is the curvature vector.
    pub normal: Vec<Point2>,
}

impl CurvatureField {
    pub fn max_abs(&self) -> f64 {
        self.kappa.iter().fold(0.0, |m, k| m.max(k.abs()))
    }

    /// Curvature vector at vertex `i`.
    pub fn vector(&self, i: usize) -> Point2 {
        self.normal[i] * self.kappa[i]
    }
}

/// Compute the curvature field of a closed curve.
pub fn curvature(curve: &ClosedCurve) -> Result<CurvatureField, GeometryError> {
    let pts = curve.vertices();
    let n = pts.len();
    let mut kappa = Vec::with_capacity(n);
    let mut normal = Vec::with_capacity(n);
    for i in 0..n {
        let prev = pts[(i + n - 1) % n];
        let cur = pts[i];
        let next = pts[(i + 1) % n];
        let e_prev = cur - prev;
        let e_next = next - cur;
        let chord = next - prev;
        let a = e_prev.norm();
        let b = e_next.norm();
        let c = chord.norm();
        if a == 0.0 || b == 0.0 || c == 0.0 {
            return Err(GeometryError::DegenerateTriple { index: i });
        }
        let cross = e_prev.cross(e_next);
        let mut k = 2.0 * cross / (a * b * c);
        if k != 0.0 {
            // exact sign from the robust orientation predicate
            let o = orient(prev, cur, next);
            if o == 0.0 {
                k = 0.0;
            } else if (o > 0.0) != (k > 0.0) {
                k = -k;
            }
        }
        // tangent of the quadratic through the three points at the middle one
        let tangent = (e_prev * (b * b / a) + e_next * (a * a / b)) * (1.0 / (a * b));
        let t = tangent.normalized();
        let t = if t.norm() == 0.0 { e_next.normalized() } else { t };
        kappa.push(k);
        normal.push(t.perp());
    }
    Ok(CurvatureField { kappa, normal })
}

/// Iterated centered arclength differences of a per-vertex scalar field.
///
/// Each application is second order on smooth data; `order` applications give
/// an estimate of the m-th arclength derivative.
pub fn arclength_derivative(curve: &ClosedCurve, values: &[f64], order: usize) -> Vec<f64> {
    let pts = curve.vertices();
    let n = pts.len();
    let mut half_span = Vec::with_capacity(n);
    for i in 0..n {
        let prev = pts[(i + n - 1) % n];
        let next = pts[(i + 1) % n];
        let cur = pts[i];
        half_span.push(prev.dist(cur) + cur.dist(next));
    }
    let mut field: Vec<f64> = values.into();
    for _ in 0..order {
        let mut next_field = Vec::with_capacity(n);
        for i in 0..n {
            let f_prev = field[(i + n - 1) % n];
            let f_next = field[(i + 1) % n];
            next_field.push((f_next - f_prev) / half_span[i]);
        }
        field = next_field;
    }
    field
}

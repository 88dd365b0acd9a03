//! Analytic comparison solutions and curve samplers.

use super::FlowError;
use crate::geometry::{ClosedCurve, Point2};
use alloc::vec::Vec;

/// Radius of the shrinking circle: `sqrt(r0^2 - 2t)`.
pub fn circle_radius(r0: f64, t: f64) -> Result<f64, FlowError> {
    if 2.0 * t >= r0 * r0 {
        return Err(FlowError::OutOfDomain("circle extinct: 2t >= r0^2"));
    }
    Ok((r0 * r0 - 2.0 * t).sqrt())
}

/// Point of the grim reaper soliton at height `y` and time `t`:
/// `(t - ln cos y, y)`, the profile `x = -ln cos y` translating in `+x` at
/// unit speed. Defined for `|y| < pi/2`.
pub fn grim_reaper_point(y: f64, t: f64) -> Result<Point2, FlowError> {
    if y.abs() >= core::f64::consts::FRAC_PI_2 {
        return Err(FlowError::OutOfDomain("grim reaper profile needs |y| < pi/2"));
    }
    Ok(Point2::new(t - y.cos().ln(), y))
}

/// Regular `n`-gon inscribed in the circle of radius `r` about `center`.
pub fn sample_circle(center: Point2, r: f64, n: usize) -> ClosedCurve {
    let pts: Vec<Point2> = (0..n)
        .map(|i| {
            let th = core::f64::consts::TAU * (i as f64) / (n as f64);
            Point2::new(center.x + r * th.cos(), center.y + r * th.sin())
        })
        .collect();
    ClosedCurve::new_unchecked(pts).expect("regular polygon is a valid curve")
}

/// Axis-aligned ellipse with semi-axes `a`, `b`, sampled by parameter angle.
pub fn sample_ellipse(a: f64, b: f64, n: usize) -> ClosedCurve {
    let pts: Vec<Point2> = (0..n)
        .map(|i| {
            let th = core::f64::consts::TAU * (i as f64) / (n as f64);
            Point2::new(a * th.cos(), b * th.sin())
        })
        .collect();
    ClosedCurve::new_unchecked(pts).expect("ellipse sampling is a valid curve")
}

/// Closed test curve around a truncated grim reaper nose.
///
/// The profile `x = -ln cos y` is kept for `|y| <= y_trunc`; the two loose
/// ends continue as straight whiskers along the profile tangents out to
/// `x = x_end`, and a far semicircular arc closes the curve. Near the nose
/// the flow of this curve tracks the translating soliton.
pub fn grim_reaper_curve(y_trunc: f64, x_end: f64, spacing: f64) -> ClosedCurve {
    assert!(y_trunc > 0.0 && y_trunc < core::f64::consts::FRAC_PI_2);
    let mut pts: Vec<Point2> = Vec::new();
    // nose, bottom to top, stepped so edges have roughly equal arclength
    let mut y = -y_trunc;
    while y < y_trunc {
        pts.push(Point2::new(-y.cos().ln(), y));
        let dy = (spacing * y.cos()).max(1e-4);
        y += dy;
    }
    pts.push(Point2::new(-y_trunc.cos().ln(), y_trunc));
    // upper whisker along the tangent direction (tan y, 1)
    let top = *pts.last().expect("nose is non-empty");
    let dir = Point2::new(y_trunc.tan(), 1.0).normalized();
    let whisker_len = (x_end - top.x) / dir.x;
    let m = (whisker_len / spacing).ceil() as usize;
    for k in 1..=m {
        let s = whisker_len * (k as f64) / (m as f64);
        pts.push(top + dir * s);
    }
    // far cap: semicircle from the upper whisker end to its mirror image
    let end_y = pts.last().unwrap().y;
    let steps = ((core::f64::consts::PI * end_y) / spacing).ceil().max(8.0) as usize;
    for k in 1..steps {
        let th = core::f64::consts::FRAC_PI_2
            - core::f64::consts::PI * (k as f64) / (steps as f64);
        pts.push(Point2::new(x_end + end_y * th.cos(), end_y * th.sin()));
    }
    // lower whisker mirrors the upper one, traversed inward
    for k in (1..=m).rev() {
        let s = whisker_len * (k as f64) / (m as f64);
        let p = top + dir * s;
        pts.push(Point2::new(p.x, -p.y));
    }
    ClosedCurve::new(pts).expect("reaper test curve is embedded")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_radius_examples() {
        assert_eq!(circle_radius(1.0, 0.0).unwrap(), 1.0);
        assert!((circle_radius(1.0, 0.375).unwrap() - 0.5).abs() < 1e-15);
        let delta = 1e-6;
        let r0: f64 = 2.0;
        let r = circle_radius(r0, r0 * r0 / 2.0 - delta).unwrap();
        assert!((r - (2.0 * delta).sqrt()).abs() < 1e-12);
        assert!(circle_radius(1.0, 0.5).is_err());
    }

    #[test]
    fn grim_reaper_examples() {
        let p = grim_reaper_point(0.0, 0.0).unwrap();
        assert_eq!((p.x, p.y), (0.0, 0.0));
        let p = grim_reaper_point(0.0, 3.0).unwrap();
        assert_eq!((p.x, p.y), (3.0, 0.0));
        let p = grim_reaper_point(core::f64::consts::FRAC_PI_3, 0.0).unwrap();
        assert!((p.x - core::f64::consts::LN_2).abs() < 1e-15);
        assert!((p.y - core::f64::consts::FRAC_PI_3).abs() < 1e-15);
        assert!(grim_reaper_point(1.6, 0.0).is_err());
    }

    #[test]
    fn reaper_curve_is_embedded_and_big() {
        let c = grim_reaper_curve(1.4, 40.0, 0.1);
        assert!(c.is_embedded());
        assert!(c.enclosed_area() > 50.0);
    }
}

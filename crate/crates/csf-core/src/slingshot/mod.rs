//! Non-compact hairpin initial curves and their capped compact approximants.
//!
//! An [`OpenCurveSpec`] models a smooth embedded curve that encloses a finite
//! area, lives in the strip `(a, inf) x (-c, c)`, and beyond `x = b` is the
//! union of two graphs `u+` (positive, decreasing to zero) and `u-`
//! (negative, increasing to zero) with decaying slopes. Capping the curve at
//! integer abscissae `i >= b + 3` inside the box
//! `[i, i+1] x [u-(i), u+(i)]` yields the compact approximants whose flows
//! this module drives and compares.

mod build;
mod family;
mod preset;

pub use build::{build_family, build_gamma0, cap, is_embedded_open, sample_reference};
pub use family::{
    confinement_boxes, convergence_report, halfplane_area, run_family, tail_decay_rate,
    ConfinementRow, ConvergenceReport, TailDecayReport,
};
pub use preset::{validate_hypotheses, ClauseCheck, HypothesisReport, Preset};

use crate::flow::FlowError;
use crate::geometry::{GeometryError, Point2};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Decay law of one tail graph.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TailForm {
    /// `amplitude * exp(-alpha x)`
    ExpDecay { alpha: f64, amplitude: f64 },
    /// `amplitude * x^(-p)`
    PowerDecay { p: f64, amplitude: f64 },
}

impl TailForm {
    /// Unsigned tail height at `x`.
    pub fn height(&self, x: f64) -> f64 {
        match *self {
            TailForm::ExpDecay { alpha, amplitude } => amplitude * (-alpha * x).exp(),
            TailForm::PowerDecay { p, amplitude } => amplitude * x.powf(-p),
        }
    }

    /// Derivative of the unsigned height.
    pub fn height_slope(&self, x: f64) -> f64 {
        match *self {
            TailForm::ExpDecay { alpha, amplitude } => -alpha * amplitude * (-alpha * x).exp(),
            TailForm::PowerDecay { p, amplitude } => -p * amplitude * x.powf(-p - 1.0),
        }
    }

    /// Integral of the unsigned height over `[x, inf)`, when finite.
    pub fn integral_to_infinity(&self, x: f64) -> Option<f64> {
        match *self {
            TailForm::ExpDecay { alpha, amplitude } => {
                (alpha > 0.0).then(|| amplitude / alpha * (-alpha * x).exp())
            }
            TailForm::PowerDecay { p, amplitude } => {
                (p > 1.0).then(|| amplitude * x.powf(1.0 - p) / (p - 1.0))
            }
        }
    }

    /// Positive, decreasing to zero at infinity, with decaying slope.
    pub fn is_decaying(&self) -> bool {
        match *self {
            TailForm::ExpDecay { alpha, amplitude } => alpha > 0.0 && amplitude > 0.0,
            TailForm::PowerDecay { p, amplitude } => p > 0.0 && amplitude > 0.0,
        }
    }
}

/// Which of the two tail graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TailSign {
    Plus,
    Minus,
}

/// One analytic tail graph on `[start, inf)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TailGraph {
    /// Domain start (the strip parameter `b`).
    pub start: f64,
    pub form: TailForm,
    pub sign: TailSign,
}

impl TailGraph {
    /// Signed graph value.
    pub fn value(&self, x: f64) -> f64 {
        match self.sign {
            TailSign::Plus => self.form.height(x),
            TailSign::Minus => -self.form.height(x),
        }
    }

    pub fn slope(&self, x: f64) -> f64 {
        match self.sign {
            TailSign::Plus => self.form.height_slope(x),
            TailSign::Minus => -self.form.height_slope(x),
        }
    }
}

/// Analytic plus sampled model of the non-compact initial curve.
///
/// The curve is the hairpin `s -> (s^2, tanh(s) exp(-s^2))` for
/// `x = s^2 <= b`, continued by the two analytic tails for `x >= b`
/// (the presets match value and slope at the join).
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OpenCurveSpec {
    /// Left strip bound: the curve stays in `(a, inf) x (-c, c)`.
    pub a: f64,
    /// Tail-graph domain start; requires `a + 1 < b`.
    pub b: f64,
    /// Half-height of the strip.
    pub c: f64,
    /// Sampled polyline of the curve on `{x <= b + 1}` (validation data).
    pub core: Vec<Point2>,
    pub upper_tail: TailGraph,
    pub lower_tail: TailGraph,
    pub preset_id: String,
}

impl OpenCurveSpec {
    /// Hairpin core height at `0 <= x <= b` (upper branch).
    pub fn core_height(&self, x: f64) -> f64 {
        let s = x.max(0.0).sqrt();
        s.tanh() * (-x).exp()
    }

    /// Derivative of the upper core height; blows up at `x = 0` where the
    /// head has a vertical tangent.
    pub fn core_height_slope(&self, x: f64) -> f64 {
        let s = x.sqrt();
        let th = s.tanh();
        (-x).exp() * ((1.0 - th * th) / (2.0 * s) - th)
    }

    /// Upper graph `u+` of the full curve (core for `x < b`, tail beyond).
    pub fn u_plus(&self, x: f64) -> f64 {
        if x >= self.b {
            self.upper_tail.value(x)
        } else {
            self.core_height(x)
        }
    }

    /// Lower graph `u-`.
    pub fn u_minus(&self, x: f64) -> f64 {
        if x >= self.b {
            self.lower_tail.value(x)
        } else {
            -self.core_height(x)
        }
    }

    pub fn u_plus_slope(&self, x: f64) -> f64 {
        if x >= self.b {
            self.upper_tail.slope(x)
        } else {
            self.core_height_slope(x)
        }
    }

    pub fn u_minus_slope(&self, x: f64) -> f64 {
        if x >= self.b {
            self.lower_tail.slope(x)
        } else {
            -self.core_height_slope(x)
        }
    }

    /// Point of the hairpin core at parameter `s in [-sqrt(b), sqrt(b)]`.
    pub fn core_point(&self, s: f64) -> Point2 {
        Point2::new(s * s, s.tanh() * (-s * s).exp())
    }

    /// Velocity of the core parametrisation.
    pub fn core_velocity(&self, s: f64) -> Point2 {
        let th = s.tanh();
        let e = (-s * s).exp();
        Point2::new(2.0 * s, e * (1.0 - th * th - 2.0 * s * th))
    }

    /// Enclosed area of the full non-compact curve: quadrature over the core
    /// plus the analytic tail integrals. This is the reference `A0`.
    pub fn reference_area(&self) -> f64 {
        // core area = 2 int_0^b u dx = 2 int_0^sqrt(b) y(s) 2s ds
        let s_max = self.b.sqrt();
        let core = 2.0
            * adaptive_simpson(&|s: f64| 2.0 * s * s.tanh() * (-s * s).exp(), 0.0, s_max, 1e-10, 24);
        let up = self.upper_tail.form.integral_to_infinity(self.b).unwrap_or(f64::INFINITY);
        let lo = self.lower_tail.form.integral_to_infinity(self.b).unwrap_or(f64::INFINITY);
        core + up + lo
    }

    /// Abscissa beyond which both tails drop below `height`, capped so
    /// slowly decaying presets stay manageable.
    pub fn truncation_for_height(&self, height: f64) -> f64 {
        let solve = |form: &TailForm| -> f64 {
            match *form {
                TailForm::ExpDecay { alpha, amplitude } => {
                    if alpha <= 0.0 {
                        f64::INFINITY
                    } else {
                        (amplitude / height).ln() / alpha
                    }
                }
                TailForm::PowerDecay { p, amplitude } => {
                    if p <= 0.0 {
                        f64::INFINITY
                    } else {
                        (amplitude / height).powf(1.0 / p)
                    }
                }
            }
        };
        let x = solve(&self.upper_tail.form).max(solve(&self.lower_tail.form));
        x.clamp(self.b + 4.0, 10_000.0)
    }
}

/// Adaptive Simpson quadrature with a recursion depth cap.
pub(crate) fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, m: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, 0.5 * (a + m), m);
        let right = simpson(f, m, 0.5 * (m + b), b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    recurse(f, a, b, simpson(f, a, m, b), tol, depth)
}

/// The compact approximants of one spec.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ApproximantFamily {
    pub spec: OpenCurveSpec,
    pub indices: Vec<i32>,
    pub curves: Vec<crate::geometry::ClosedCurve>,
}

/// Errors from slingshot construction and diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub enum SlingshotError {
    /// A hypothesis clause failed; `clause` names it.
    Validation { clause: &'static str, detail: String },
    Geometry(GeometryError),
    Flow { index: i32, source: FlowError },
    /// Cap index below `b + 3`.
    IndexTooSmall { index: i32, min: f64 },
    /// The sampled curve does not reach the requested abscissa.
    NotSampledTo { needed: f64 },
    /// The capped polygon self-intersects; resample the curve finer.
    CapSelfIntersects,
    /// Requested times reach past the shortest approximant lifespan.
    GridBeyondLifespan { t_max: f64, lifespan: f64 },
    /// Trajectories passed to a reducer are not on a common grid.
    GridMismatch,
    /// Too few samples for the requested finite differences.
    TooFewSamples { got: usize, min: usize },
    /// A diagnostic precondition failed (named).
    Precondition(&'static str),
    /// Resolution or truncation argument out of range.
    BadArgument(&'static str),
}

impl From<GeometryError> for SlingshotError {
    fn from(e: GeometryError) -> Self {
        SlingshotError::Geometry(e)
    }
}

impl fmt::Display for SlingshotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlingshotError::Validation { clause, detail } => {
                write!(f, "hypothesis clause '{clause}' fails: {detail}")
            }
            SlingshotError::Geometry(e) => write!(f, "geometry: {e}"),
            SlingshotError::Flow { index, source } => {
                write!(f, "flow of approximant {index} failed: {source}")
            }
            SlingshotError::IndexTooSmall { index, min } => {
                write!(f, "cap index {index} below the minimum {min}")
            }
            SlingshotError::NotSampledTo { needed } => {
                write!(f, "curve not sampled out to x = {needed}")
            }
            SlingshotError::CapSelfIntersects => {
                write!(f, "cap self-intersects; use a higher sampling resolution")
            }
            SlingshotError::GridBeyondLifespan { t_max, lifespan } => {
                write!(f, "grid end {t_max} reaches past the shortest lifespan {lifespan}")
            }
            SlingshotError::GridMismatch => write!(f, "trajectories use different sample grids"),
            SlingshotError::TooFewSamples { got, min } => {
                write!(f, "need at least {min} samples, got {got}")
            }
            SlingshotError::Precondition(name) => write!(f, "precondition failed: {name}"),
            SlingshotError::BadArgument(m) => write!(f, "{m}"),
        }
    }
}

impl core::error::Error for SlingshotError {}

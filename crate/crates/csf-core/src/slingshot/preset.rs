//! Built-in initial-curve presets and the hypothesis validator.

use super::{OpenCurveSpec, TailForm, TailGraph, TailSign};
use crate::geometry::Point2;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Built-in analytic initial curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Preset {
    /// Hairpin with exponentially decaying tails grafted at `b = 1` with
    /// matched value and slope.
    TanhHairpin,
    /// The same hairpin joined where its logarithmic derivative equals
    /// `-2 / x`, so the tails are exactly `A x^{-2}` (slow decay).
    PowerHairpin,
}

impl Preset {
    pub fn id(&self) -> &'static str {
        match self {
            Preset::TanhHairpin => "tanh-hairpin",
            Preset::PowerHairpin => "power-hairpin",
        }
    }

    pub fn from_id(id: &str) -> Option<Preset> {
        match id {
            "tanh-hairpin" => Some(Preset::TanhHairpin),
            "power-hairpin" => Some(Preset::PowerHairpin),
            _ => None,
        }
    }

    /// Materialise the preset.
    pub fn spec(&self) -> OpenCurveSpec {
        match self {
            Preset::TanhHairpin => {
                let b = 1.0;
                let v = core_height(b);
                let s = core_height_slope(b);
                let alpha = -s / v;
                let amplitude = v * (alpha * b).exp();
                build_spec(self.id(), b, TailForm::ExpDecay { alpha, amplitude })
            }
            Preset::PowerHairpin => {
                let p = 2.0;
                // join where x u'(x) / u(x) = -p, so value and slope of
                // A x^{-p} both match the core
                let b = bisect(|x| x * core_height_slope(x) / core_height(x) + p, 1.2, 4.0);
                let amplitude = core_height(b) * b.powf(p);
                build_spec(self.id(), b, TailForm::PowerDecay { p, amplitude })
            }
        }
    }
}

fn core_height(x: f64) -> f64 {
    x.sqrt().tanh() * (-x).exp()
}

fn core_height_slope(x: f64) -> f64 {
    let s = x.sqrt();
    let th = s.tanh();
    (-x).exp() * ((1.0 - th * th) / (2.0 * s) - th)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(f(lo) * f(hi) < 0.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn build_spec(id: &str, b: f64, form: TailForm) -> OpenCurveSpec {
    let upper = TailGraph { start: b, form, sign: TailSign::Plus };
    let lower = TailGraph { start: b, form, sign: TailSign::Minus };
    let mut spec = OpenCurveSpec {
        a: -0.5,
        b,
        c: 0.4,
        core: Vec::new(),
        upper_tail: upper,
        lower_tail: lower,
        preset_id: String::from(id),
    };
    spec.core = sample_core_polyline(&spec, 512);
    spec
}

/// Sample the curve on `{x <= b + 1}` as one open polyline (upper tail
/// first, then the hairpin head, then the lower tail).
fn sample_core_polyline(spec: &OpenCurveSpec, count: usize) -> Vec<Point2> {
    let x_hi = spec.b + 1.0;
    let mut pts = Vec::with_capacity(count + 2);
    let quarter = count / 4;
    for k in 0..quarter {
        let x = x_hi - (x_hi - spec.b) * (k as f64) / (quarter as f64);
        pts.push(Point2::new(x, spec.u_plus(x)));
    }
    let s_max = spec.b.sqrt();
    let half = count / 2;
    for k in 0..=half {
        let s = s_max - 2.0 * s_max * (k as f64) / (half as f64);
        pts.push(spec.core_point(s));
    }
    for k in 1..=quarter {
        let x = spec.b + (x_hi - spec.b) * (k as f64) / (quarter as f64);
        pts.push(Point2::new(x, spec.u_minus(x)));
    }
    pts
}

/// One validated hypothesis clause.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClauseCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Per-clause outcome of the initial-curve hypotheses.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisReport {
    pub clauses: Vec<ClauseCheck>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&ClauseCheck> {
        self.clauses.iter().find(|c| !c.pass)
    }
}

/// Check every hypothesis clause of the initial curve; failures are report
/// entries, never errors.
pub fn validate_hypotheses(spec: &OpenCurveSpec) -> HypothesisReport {
    let mut clauses = Vec::new();
    let mut push = |name: &'static str, pass: bool, detail: String| {
        clauses.push(ClauseCheck { name, pass, detail });
    };

    push(
        "a_plus_one_below_b",
        spec.a + 1.0 < spec.b,
        format!("a + 1 = {} vs b = {}", spec.a + 1.0, spec.b),
    );
    push("c_positive", spec.c > 0.0, format!("c = {}", spec.c));

    let core_max_y = spec.core.iter().map(|p| p.y.abs()).fold(0.0, f64::max);
    let core_min_x = spec.core.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let tail_max = spec.upper_tail.value(spec.b).abs().max(spec.lower_tail.value(spec.b).abs());
    let contained = core_max_y < spec.c && core_min_x > spec.a && tail_max < spec.c;
    push(
        "strip_containment",
        contained,
        format!(
            "max |y| = {:.6}, min x = {:.6}, tail height at b = {:.6}, strip ({}, inf) x (-{}, {})",
            core_max_y, core_min_x, tail_max, spec.a, spec.c, spec.c
        ),
    );

    push(
        "upper_tail_decreasing_to_zero",
        spec.upper_tail.sign == TailSign::Plus && spec.upper_tail.form.is_decaying(),
        format!("{:?}", spec.upper_tail.form),
    );
    push(
        "lower_tail_increasing_to_zero",
        spec.lower_tail.sign == TailSign::Minus && spec.lower_tail.form.is_decaying(),
        format!("{:?}", spec.lower_tail.form),
    );

    // slope magnitudes must decrease to zero along the tail
    let slope_decay = {
        let samples = [spec.b, spec.b + 1.0, spec.b + 4.0, spec.b + 16.0];
        let decays = |tail: &TailGraph| {
            samples.windows(2).all(|w| tail.slope(w[1]).abs() < tail.slope(w[0]).abs() + 1e-15)
                && tail.slope(samples[3]).abs() < tail.slope(samples[0]).abs()
        };
        spec.upper_tail.form.is_decaying()
            && decays(&spec.upper_tail)
            && decays(&spec.lower_tail)
    };
    push("tail_slope_decay", slope_decay, String::from("finite differences along the tail"));

    let join_gap_value = (spec.core_height(spec.b) - spec.upper_tail.value(spec.b)).abs();
    let join_gap_slope = (spec.core_height_slope(spec.b) - spec.upper_tail.slope(spec.b)).abs();
    let join_gap_value_lo = (-spec.core_height(spec.b) - spec.lower_tail.value(spec.b)).abs();
    let join_gap_slope_lo =
        (-spec.core_height_slope(spec.b) - spec.lower_tail.slope(spec.b)).abs();
    let c1 = join_gap_value <= 1e-8
        && join_gap_slope <= 1e-8
        && join_gap_value_lo <= 1e-8
        && join_gap_slope_lo <= 1e-8;
    push(
        "c1_join",
        c1,
        format!(
            "value gaps ({:.2e}, {:.2e}), slope gaps ({:.2e}, {:.2e})",
            join_gap_value, join_gap_value_lo, join_gap_slope, join_gap_slope_lo
        ),
    );

    push(
        "embedded",
        super::build::is_embedded_open(&spec.core),
        format!("core polyline with {} vertices", spec.core.len()),
    );

    let area = spec.reference_area();
    push("finite_area", area.is_finite() && area > 0.0, format!("A0 = {area}"));

    HypothesisReport { clauses }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_preset_joins_c1_and_passes() {
        let spec = Preset::TanhHairpin.spec();
        assert!((spec.b - 1.0).abs() < 1e-15);
        let report = validate_hypotheses(&spec);
        assert!(report.all_pass(), "{:?}", report.first_failure());
        // tail parameters pin the exponential graft at b = 1
        if let TailForm::ExpDecay { alpha, amplitude } = spec.upper_tail.form {
            assert!((alpha - 0.724_279_4).abs() < 1e-6, "alpha = {alpha}");
            assert!((amplitude - 0.578_069_0).abs() < 1e-6, "A = {amplitude}");
        } else {
            panic!("tanh preset uses exponential tails");
        }
    }

    #[test]
    fn power_preset_has_p2_tails_joined_c1() {
        let spec = Preset::PowerHairpin.spec();
        match spec.upper_tail.form {
            TailForm::PowerDecay { p, .. } => assert_eq!(p, 2.0),
            _ => panic!("power preset uses power tails"),
        }
        assert!(spec.b > 1.9 && spec.b < 2.5, "join at b = {}", spec.b);
        let report = validate_hypotheses(&spec);
        assert!(report.all_pass(), "{:?}", report.first_failure());
    }

    #[test]
    fn tail_value_example() {
        let tail = TailGraph {
            start: 1.0,
            form: TailForm::ExpDecay { alpha: 1.0, amplitude: 1.0 },
            sign: TailSign::Plus,
        };
        assert!((tail.value(10.0) - (-10.0f64).exp()).abs() < 1e-18);
    }

    #[test]
    fn constant_tail_fails_decay_clause() {
        let mut spec = Preset::TanhHairpin.spec();
        spec.upper_tail.form = TailForm::ExpDecay { alpha: 0.0, amplitude: 0.1 };
        let report = validate_hypotheses(&spec);
        assert!(!report.all_pass());
        assert!(report
            .clauses
            .iter()
            .any(|c| c.name == "upper_tail_decreasing_to_zero" && !c.pass));
    }

    #[test]
    fn small_strip_fails_containment() {
        let mut spec = Preset::TanhHairpin.spec();
        spec.c = 0.3; // the hairpin reaches |y| ~ 0.375
        let report = validate_hypotheses(&spec);
        assert!(report.clauses.iter().any(|c| c.name == "strip_containment" && !c.pass));
    }

    #[test]
    fn reference_area_matches_independent_quadrature() {
        // trapezoid oracle on the graph form, deliberately separate from the
        // adaptive Simpson route used by reference_area
        let spec = Preset::TanhHairpin.spec();
        let m = 200_000;
        let mut acc = 0.0;
        let b = spec.b;
        for k in 0..m {
            let x0 = b * (k as f64) / (m as f64);
            let x1 = b * ((k + 1) as f64) / (m as f64);
            acc += 0.5 * (spec.core_height(x0) + spec.core_height(x1)) * (x1 - x0);
        }
        let tail = spec.upper_tail.form.integral_to_infinity(b).unwrap();
        let oracle = 2.0 * acc + 2.0 * tail;
        let a0 = spec.reference_area();
        assert!((a0 - oracle).abs() < 1e-6, "A0 = {a0}, oracle = {oracle}");
        // frozen reference value for the preset
        assert!((a0 - 1.425_324_905).abs() < 1e-6, "A0 = {a0}");
    }
}

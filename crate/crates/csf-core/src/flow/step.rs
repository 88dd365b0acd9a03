//! The integrator: single steps, remeshing, and full runs.

use super::{
    FlowError, FlowParams, FlowState, RemeshStrategy, Scheme, Termination, Trajectory,
    MAX_STEPS, MAX_VERTICES,
};
use crate::geometry::{
    curvature, is_embedded_polygon, resample_closed_polyline, ClosedCurve, CurvatureField, Point2,
};
use alloc::vec::Vec;

const RETRY_LIMIT: u32 = 5;

/// Advance one step from a snapshot.
///
/// The vertex update is `p + dt * kappa * n` for the explicit scheme, or the
/// backward-Euler solve of the frozen-coefficient arclength Laplacian for the
/// semi-implicit one. A remesh is applied afterwards when triggered, and the
/// result must be embedded. On embeddedness loss the caller is expected to
/// halve `cfl` and retry (see [`run_until`]).
pub fn step(state: &FlowState, params: &FlowParams) -> Result<FlowState, FlowError> {
    params.validate()?;
    let field = curvature(&state.curve)?;
    let pts = state.curve.vertices();
    let h_base = state.curve.arc_length() / params.target_vertices as f64;
    let dt = time_step(params.scheme, params.cfl, min_edge(pts));
    let moved = advance(pts, &field, dt, params.scheme);
    let moved = maybe_remesh(moved, params, h_base, state.t + dt)?;
    if !is_embedded_polygon(&moved) {
        return Err(FlowError::StepFailed { t: state.t + dt });
    }
    let curve = ClosedCurve::new_unchecked(moved)?;
    FlowState::from_curve(state.t + dt, curve, state.step_count + 1)
}

/// Run a flow from `initial`, recording snapshots at `sample_times`.
///
/// The returned trajectory starts with the `t = 0` state followed by one
/// state per requested time (dt is shortened so samples are landed exactly).
/// The run stops early with [`Termination::Extinct`] once the enclosed area
/// falls below `params.extinction_area`. On embeddedness loss the step is
/// rebuilt with halved `cfl`, up to five times, before giving up.
pub fn run_until(
    initial: &ClosedCurve,
    t_end: f64,
    sample_times: &[f64],
    params: &FlowParams,
) -> Result<Trajectory, FlowError> {
    params.validate()?;
    if !(t_end > 0.0) {
        return Err(FlowError::InvalidSampleGrid("t_end must be positive"));
    }
    for w in sample_times.windows(2) {
        if !(w[0] < w[1]) {
            return Err(FlowError::InvalidSampleGrid("sample times must be strictly increasing"));
        }
    }
    if let (Some(&first), Some(&last)) = (sample_times.first(), sample_times.last()) {
        if !(first > 0.0) || last > t_end * (1.0 + 1e-12) {
            return Err(FlowError::InvalidSampleGrid("sample times must lie in (0, t_end]"));
        }
    }

    let mut states = Vec::with_capacity(sample_times.len() + 1);
    states.push(FlowState::initial(initial.clone())?);

    let mut pts: Vec<Point2> = initial.vertices().into();
    let h_base0 = initial.arc_length() / params.target_vertices as f64;
    if matches!(params.remesh, RemeshStrategy::CurvatureAdaptive { .. }) {
        // normalise spacing before stepping so the first dt is not dictated
        // by construction artifacts
        let field = curvature_of(&pts)?;
        pts = remesh(&pts, &field, params, h_base0, 0.0)?;
    }

    let mut t = 0.0;
    let mut steps: u64 = 0;
    let mut next_sample = 0usize;
    let termination = loop {
        let area = crate::geometry::shoelace(&pts).abs();
        if area < params.extinction_area {
            break Termination::Extinct { time: t + area / (2.0 * core::f64::consts::PI) };
        }
        if t >= t_end - 1e-15 * (1.0 + t_end) {
            break Termination::TimeReached;
        }
        if steps >= MAX_STEPS {
            return Err(FlowError::StepCollapse { t });
        }

        let field = curvature_of(&pts)?;
        let h_base = crate::geometry::polyline_length(&pts) / params.target_vertices as f64;
        let h_min = min_edge(&pts);
        let mut dt_full = time_step(params.scheme, params.cfl, h_min);
        let target = if next_sample < sample_times.len() {
            sample_times[next_sample]
        } else {
            t_end
        };
        if t + dt_full > target {
            dt_full = target - t;
        }
        if !(dt_full > 0.0) {
            return Err(FlowError::StepCollapse { t });
        }

        // retry with halved steps on embeddedness loss
        let mut moved = None;
        let mut dt_try = dt_full;
        for _ in 0..=RETRY_LIMIT {
            let candidate = advance(&pts, &field, dt_try, params.scheme);
            if is_embedded_polygon(&candidate) {
                moved = Some((candidate, dt_try));
                break;
            }
            dt_try *= 0.5;
        }
        let Some((candidate, dt)) = moved else {
            return Err(FlowError::StepFailed { t });
        };

        pts = candidate;
        t += dt;
        steps += 1;

        let landed = next_sample < sample_times.len()
            && t >= sample_times[next_sample] - 1e-15 * (1.0 + t);
        if landed {
            let curve = ClosedCurve::new_unchecked(pts.clone())?;
            states.push(FlowState::from_curve(t, curve, steps)?);
            next_sample += 1;
        }

        let field = curvature_of(&pts)?;
        if remesh_due(&pts, &field, params, h_base) {
            pts = remesh(&pts, &field, params, h_base, t)?;
        }
    };

    Ok(Trajectory { states, termination })
}

fn curvature_of(pts: &[Point2]) -> Result<CurvatureField, FlowError> {
    let curve = ClosedCurve::new_unchecked(pts.into())?;
    Ok(curvature(&curve)?)
}

fn min_edge(pts: &[Point2]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].dist(pts[(i + 1) % n])).fold(f64::INFINITY, f64::min)
}

fn time_step(scheme: Scheme, cfl: f64, h_min: f64) -> f64 {
    match scheme {
        Scheme::Explicit => cfl * h_min * h_min / 2.0,
        Scheme::SemiImplicit => cfl * h_min,
    }
}

/// Move every vertex one step of size `dt`.
fn advance(pts: &[Point2], field: &CurvatureField, dt: f64, scheme: Scheme) -> Vec<Point2> {
    match scheme {
        Scheme::Explicit => {
            pts.iter().enumerate().map(|(i, &p)| p + field.vector(i) * dt).collect()
        }
        Scheme::SemiImplicit => semi_implicit(pts, dt),
    }
}

/// Backward Euler on the arclength Laplacian with frozen coefficients:
/// solve `(I - dt L) p_new = p_old` per coordinate.
fn semi_implicit(pts: &[Point2], dt: f64) -> Vec<Point2> {
    let n = pts.len();
    let mut sub = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    let mut sup = Vec::with_capacity(n);
    for i in 0..n {
        let prev = pts[(i + n - 1) % n];
        let cur = pts[i];
        let next = pts[(i + 1) % n];
        let h_prev = cur.dist(prev);
        let h_next = cur.dist(next);
        let a = 2.0 / (h_prev * (h_prev + h_next));
        let c = 2.0 / (h_next * (h_prev + h_next));
        sub.push(-dt * a);
        sup.push(-dt * c);
        diag.push(1.0 + dt * (a + c));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
    let nx = solve_cyclic_tridiagonal(&sub, &diag, &sup, &xs);
    let ny = solve_cyclic_tridiagonal(&sub, &diag, &sup, &ys);
    nx.into_iter().zip(ny).map(|(x, y)| Point2::new(x, y)).collect()
}

/// Thomas algorithm for a (non-cyclic) tridiagonal system. `sub[0]` and
/// `sup[n-1]` are ignored.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c_star = alloc::vec![0.0; n];
    let mut d_star = alloc::vec![0.0; n];
    c_star[0] = sup[0] / diag[0];
    d_star[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * c_star[i - 1];
        c_star[i] = if i + 1 < n { sup[i] / m } else { 0.0 };
        d_star[i] = (rhs[i] - sub[i] * d_star[i - 1]) / m;
    }
    let mut x = d_star;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c_star[i] * next;
    }
    x
}

/// Sherman-Morrison solve of a cyclic tridiagonal system whose corner
/// entries are `sub[0]` (row 0, column n-1) and `sup[n-1]` (row n-1,
/// column 0). Strict diagonal dominance of `I - dt L` keeps this stable.
pub(crate) fn solve_cyclic_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
) -> Vec<f64> {
    let n = diag.len();
    debug_assert!(n >= 3);
    let alpha = sub[0]; // A[0][n-1]
    let beta = sup[n - 1]; // A[n-1][0]
    let gamma = -diag[0];
    let mut diag_mod: Vec<f64> = diag.into();
    diag_mod[0] = diag[0] - gamma;
    diag_mod[n - 1] = diag[n - 1] - alpha * beta / gamma;
    let x = solve_tridiagonal(sub, &diag_mod, sup, rhs);
    let mut u = alloc::vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = beta;
    let z = solve_tridiagonal(sub, &diag_mod, sup, &u);
    let v_dot_x = x[0] + alpha / gamma * x[n - 1];
    let v_dot_z = z[0] + alpha / gamma * z[n - 1];
    let factor = v_dot_x / (1.0 + v_dot_z);
    x.iter().zip(&z).map(|(xi, zi)| xi - factor * zi).collect()
}

fn remesh_due(pts: &[Point2], field: &CurvatureField, params: &FlowParams, h_base: f64) -> bool {
    let n = pts.len();
    match params.remesh {
        RemeshStrategy::Uniform => {
            let mut lo = f64::INFINITY;
            let mut hi: f64 = 0.0;
            for i in 0..n {
                let h = pts[i].dist(pts[(i + 1) % n]);
                lo = lo.min(h);
                hi = hi.max(h);
            }
            hi > params.remesh_ratio * lo
        }
        RemeshStrategy::CurvatureAdaptive { angle_budget } => {
            let floor = adaptive_floor(h_base);
            for i in 0..n {
                let h = pts[i].dist(pts[(i + 1) % n]);
                let t0 = target_spacing(field.kappa[i], angle_budget, h_base, floor);
                let t1 = target_spacing(field.kappa[(i + 1) % n], angle_budget, h_base, floor);
                let target = 0.5 * (t0 + t1);
                if h > params.remesh_ratio * target || h * params.remesh_ratio < target {
                    return true;
                }
            }
            false
        }
    }
}

fn adaptive_floor(h_base: f64) -> f64 {
    1e-5 * h_base
}

fn target_spacing(kappa: f64, angle_budget: f64, h_base: f64, floor: f64) -> f64 {
    let by_curvature = angle_budget / kappa.abs().max(1e-12);
    by_curvature.min(h_base).max(floor)
}

fn maybe_remesh(
    pts: Vec<Point2>,
    params: &FlowParams,
    h_base: f64,
    t: f64,
) -> Result<Vec<Point2>, FlowError> {
    let field = curvature_of(&pts)?;
    if remesh_due(&pts, &field, params, h_base) {
        remesh(&pts, &field, params, h_base, t)
    } else {
        Ok(pts)
    }
}

/// Redistribute vertices according to the remesh strategy.
///
/// Uniform mode places `target_vertices` points at equal arclength along the
/// polygon (linear interpolation). Adaptive mode integrates the density
/// `1 / target_spacing` along the polygon and evaluates new vertices on the
/// chordal Catmull-Rom interpolant, whose fourth-order placement error keeps
/// the systematic area drift of frequent remeshing negligible.
fn remesh(
    pts: &[Point2],
    field: &CurvatureField,
    params: &FlowParams,
    h_base: f64,
    t: f64,
) -> Result<Vec<Point2>, FlowError> {
    match params.remesh {
        RemeshStrategy::Uniform => Ok(resample_closed_polyline(pts, params.target_vertices)),
        RemeshStrategy::CurvatureAdaptive { angle_budget } => {
            let n = pts.len();
            let floor = adaptive_floor(h_base);
            let mut weights = Vec::with_capacity(n);
            let mut total = 0.0;
            for i in 0..n {
                let h = pts[i].dist(pts[(i + 1) % n]);
                let t0 = target_spacing(field.kappa[i], angle_budget, h_base, floor);
                let t1 = target_spacing(field.kappa[(i + 1) % n], angle_budget, h_base, floor);
                let w = h * 0.5 * (1.0 / t0 + 1.0 / t1);
                weights.push(w);
                total += w;
            }
            let m = (total.round() as usize).max(crate::geometry::MIN_VERTICES);
            if m > MAX_VERTICES {
                return Err(FlowError::MeshBlowup { t, vertices: m });
            }
            let mut out = Vec::with_capacity(m);
            let mut edge = 0usize;
            let mut acc = 0.0;
            for k in 0..m {
                let s = total * (k as f64) / (m as f64);
                while edge + 1 < n && acc + weights[edge] <= s {
                    acc += weights[edge];
                    edge += 1;
                }
                let u = if weights[edge] > 0.0 { (s - acc) / weights[edge] } else { 0.0 };
                out.push(catmull_rom_closed(pts, edge, u.clamp(0.0, 1.0)));
            }
            Ok(out)
        }
    }
}

/// Chordal Catmull-Rom evaluation on edge `i` of a closed polygon.
fn catmull_rom_closed(pts: &[Point2], i: usize, u: f64) -> Point2 {
    let n = pts.len();
    let p0 = pts[(i + n - 1) % n];
    let p1 = pts[i];
    let p2 = pts[(i + 1) % n];
    let p3 = pts[(i + 2) % n];
    let d01 = p0.dist(p1).max(1e-300);
    let d12 = p1.dist(p2).max(1e-300);
    let d23 = p2.dist(p3).max(1e-300);
    let m1 = (p2 - p0) * (d12 / (d01 + d12));
    let m2 = (p3 - p1) * (d12 / (d12 + d23));
    let u2 = u * u;
    let u3 = u2 * u;
    let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    p1 * h00 + m1 * h10 + p2 * h01 + m2 * h11
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::sample_circle;
    use alloc::vec;

    #[test]
    fn explicit_circle_step_shrinks_radius_by_dt() {
        let c = sample_circle(Point2::default(), 1.0, 256);
        let state = FlowState::initial(c).unwrap();
        let params = FlowParams { target_vertices: 256, ..FlowParams::default() };
        let next = step(&state, &params).unwrap();
        let dt = next.t;
        assert!(dt > 0.0);
        for p in next.curve.vertices() {
            let r = p.norm();
            assert!(((1.0 - dt) - r).abs() < 1e-6 * (1.0 - dt), "r = {r}, dt = {dt}");
        }
    }

    #[test]
    fn flat_vertices_do_not_move() {
        // stadium-like track: two long straight runs joined by semicircles
        let mut pts = vec![];
        let m = 40;
        for i in 0..m {
            pts.push(Point2::new(-2.0 + 4.0 * (i as f64) / (m as f64), -1.0));
        }
        for i in 0..m {
            let th = -core::f64::consts::FRAC_PI_2
                + core::f64::consts::PI * (i as f64) / (m as f64);
            pts.push(Point2::new(2.0 + th.cos(), th.sin()));
        }
        for i in 0..m {
            pts.push(Point2::new(2.0 - 4.0 * (i as f64) / (m as f64), 1.0));
        }
        for i in 0..m {
            let th = core::f64::consts::FRAC_PI_2
                + core::f64::consts::PI * (i as f64) / (m as f64);
            pts.push(Point2::new(-2.0 + th.cos(), th.sin()));
        }
        let c = ClosedCurve::new(pts).unwrap();
        let state = FlowState::initial(c).unwrap();
        let params = FlowParams { target_vertices: 160, ..FlowParams::default() };
        let next = step(&state, &params).unwrap();
        // vertex 10 sits mid-run on the bottom straight
        let before = state.curve.vertices()[10];
        let after = next.curve.vertices()[10];
        assert!(before.dist(after) < 1e-10);
    }

    #[test]
    fn semi_implicit_circle_matches_exact_update() {
        let n = 256;
        let c = sample_circle(Point2::default(), 1.0, n);
        let state = FlowState::initial(c).unwrap();
        let params = FlowParams {
            scheme: Scheme::SemiImplicit,
            target_vertices: n,
            ..FlowParams::default()
        };
        let next = step(&state, &params).unwrap();
        let dt = next.t;
        // the discrete Laplacian of a regular n-gon has eigenvalue exactly
        // 1/r^2 on the position vector, so the implicit update divides the
        // radius by (1 + dt / r^2)
        let expected = 1.0 / (1.0 + dt);
        for p in next.curve.vertices() {
            assert!((p.norm() - expected).abs() < 1e-12, "r = {}", p.norm());
        }
    }

    #[test]
    fn cyclic_tridiagonal_matches_dense_solve() {
        // oracle: dense Gaussian elimination
        fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
            let n = b.len();
            for col in 0..n {
                let pivot = (col..n).max_by(|&i, &j| {
                    a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
                }).unwrap();
                a.swap(col, pivot);
                b.swap(col, pivot);
                for row in 0..n {
                    if row != col {
                        let f = a[row][col] / a[col][col];
                        for k in col..n {
                            let v = a[col][k];
                            a[row][k] -= f * v;
                        }
                        b[row] -= f * b[col];
                    }
                }
            }
            (0..n).map(|i| b[i] / a[i][i]).collect()
        }

        let n = 9;
        // deterministic pseudo-random diagonally dominant cyclic system
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 1000) as f64 / 1000.0
        };
        let sub: Vec<f64> = (0..n).map(|_| -0.3 * next()).collect();
        let sup: Vec<f64> = (0..n).map(|_| -0.3 * next()).collect();
        let diag: Vec<f64> =
            (0..n).map(|i| 1.0 + sub[i].abs() + sup[i].abs() + next()).collect();
        let rhs: Vec<f64> = (0..n).map(|_| next() - 0.5).collect();

        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            dense[i][i] = diag[i];
            dense[i][(i + n - 1) % n] += sub[i];
            dense[i][(i + 1) % n] += sup[i];
        }
        let expected = dense_solve(dense, rhs.clone());
        let got = solve_cyclic_tridiagonal(&sub, &diag, &sup, &rhs);
        for (g, e) in got.iter().zip(&expected) {
            assert!((g - e).abs() < 1e-10, "{g} vs {e}");
        }
    }

    #[test]
    fn run_until_lands_samples_and_tracks_area_law() {
        let c = sample_circle(Point2::default(), 1.0, 128);
        let params = FlowParams { target_vertices: 128, ..FlowParams::default() };
        let samples = [0.05, 0.1, 0.15, 0.2];
        let traj = run_until(&c, 0.2, &samples, &params).unwrap();
        assert_eq!(traj.states.len(), 5);
        assert_eq!(traj.termination, Termination::TimeReached);
        let a0 = traj.states[0].area;
        for s in &traj.states[1..] {
            let expected = a0 - 2.0 * core::f64::consts::PI * s.t;
            assert!((s.area - expected).abs() < 0.005 * a0, "t={} area={}", s.t, s.area);
        }
        let areas: Vec<f64> = traj.states.iter().map(|s| s.area).collect();
        for w in areas.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn unit_circle_goes_extinct_near_half() {
        let c = sample_circle(Point2::default(), 1.0, 128);
        let params = FlowParams { target_vertices: 128, ..FlowParams::default() };
        let traj = run_until(&c, 1.0, &[0.25], &params).unwrap();
        let time = traj.extinction_time().expect("circle must die");
        assert!((time - 0.5).abs() < 0.005, "extinction at {time}");
    }

    #[test]
    fn rejects_bad_grids_and_params() {
        let c = sample_circle(Point2::default(), 1.0, 64);
        let params = FlowParams::default();
        assert!(run_until(&c, 1.0, &[0.2, 0.1], &params).is_err());
        assert!(run_until(&c, 1.0, &[0.0, 0.1], &params).is_err());
        assert!(run_until(&c, 1.0, &[0.5, 1.5], &params).is_err());
        let bad = FlowParams { cfl: 1.5, ..FlowParams::default() };
        assert!(run_until(&c, 1.0, &[0.5], &bad).is_err());
    }
}

//! Trajectory-level monitors: avoidance, intersection counts, roundness.

use super::{FlowError, FlowState, Trajectory};
use crate::geometry::{count_intersections, min_curve_distance};
use alloc::vec::Vec;

/// Minimum pairwise distance per common sample time.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AvoidanceReport {
    pub times: Vec<f64>,
    pub min_distances: Vec<f64>,
    /// True iff the distance stays strictly positive at every common sample.
    pub disjoint: bool,
}

/// Crossing counts per common sample time. Samples where the configuration
/// is non-generic are `None` ("skipped"); the monotonicity flag is computed
/// over the generic samples only.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntersectionReport {
    pub times: Vec<f64>,
    pub counts: Vec<Option<usize>>,
    pub non_increasing: bool,
}

fn common_prefix(a: &Trajectory, b: &Trajectory) -> Result<usize, FlowError> {
    let shared = a.states.len().min(b.states.len());
    for k in 0..shared {
        let (ta, tb) = (a.states[k].t, b.states[k].t);
        if (ta - tb).abs() > 1e-9 * (1.0 + ta.abs()) {
            return Err(FlowError::SampleGridMismatch);
        }
    }
    Ok(shared)
}

/// Track the minimum distance between two flows over their common samples.
///
/// The trajectories must share their sample grid (one may stop earlier, e.g.
/// at extinction; the report then covers the shared prefix).
pub fn check_avoidance(a: &Trajectory, b: &Trajectory) -> Result<AvoidanceReport, FlowError> {
    let shared = common_prefix(a, b)?;
    let mut times = Vec::with_capacity(shared);
    let mut min_distances = Vec::with_capacity(shared);
    let mut disjoint = true;
    for k in 0..shared {
        let d = min_curve_distance(&a.states[k].curve, &b.states[k].curve);
        times.push(a.states[k].t);
        if d <= 0.0 {
            disjoint = false;
        }
        min_distances.push(d);
    }
    Ok(AvoidanceReport { times, min_distances, disjoint })
}

/// Track the crossing count of two flows over their common samples.
pub fn intersection_monotonicity(
    a: &Trajectory,
    b: &Trajectory,
) -> Result<IntersectionReport, FlowError> {
    let shared = common_prefix(a, b)?;
    let mut times = Vec::with_capacity(shared);
    let mut counts = Vec::with_capacity(shared);
    for k in 0..shared {
        times.push(a.states[k].t);
        counts.push(count_intersections(&a.states[k].curve, &b.states[k].curve).ok());
    }
    let mut non_increasing = true;
    let mut last: Option<usize> = None;
    for c in counts.iter().flatten() {
        if let Some(prev) = last {
            if *c > prev {
                non_increasing = false;
            }
        }
        last = Some(*c);
    }
    Ok(IntersectionReport { times, counts, non_increasing })
}

/// Isoperimetric ratio `L^2 / (4 pi A)`: at least 1, equal to 1 only for
/// circles, so it measures roundness near extinction.
pub fn isoperimetric_ratio(state: &FlowState) -> Result<f64, FlowError> {
    if !(state.area > 0.0) {
        return Err(FlowError::ExtinctState);
    }
    Ok(state.length * state.length / (4.0 * core::f64::consts::PI * state.area))
}

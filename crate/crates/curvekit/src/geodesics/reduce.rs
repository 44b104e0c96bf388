//! The spiral-surgery loop that lowers `i(v, w)` while keeping the distance.

use super::imin::{IminTable, IminValue};
use super::{distance, enumerate_efficient_geodesics, DistanceKind, GeodesicError};
use crate::curves::reference_arcs;
use crate::dotgraph::{common_regions, stacked_dot_graph};
use crate::ladder::Ladder;
use crate::surface::SurfaceComplex;
use crate::surgery::{find_spirals, spiral_surgery, Spiral, SurgeryKind};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepReason {
    /// Distance recomputed after the surgery and found unchanged.
    Accepted,
    /// The spiral is wider than `i - i_min`.
    WidthBound,
    /// Some efficient geodesic has no admissible region over the spiral.
    NoStackedRegion,
    /// No spiral surgery along the spiral keeps the larger polygons.
    SurgeryFailed,
    /// Recomputing the distance after the surgery gave a different value.
    DistanceVeto,
}

/// How the stacked dot graph condition was settled for a step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Gate {
    NotReached,
    Passed {
        arcs: (usize, usize),
        layers: usize,
    },
    Failed {
        layers: usize,
    },
    /// Dot graphs are built for geodesics of length 3 only.
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub step: usize,
    pub band: usize,
    pub w_arc: Option<usize>,
    pub width: usize,
    pub kind: Option<SurgeryKind>,
    pub i_before: usize,
    pub i_after: Option<usize>,
    pub i_min: IminValue,
    pub decomposition_before: Vec<usize>,
    pub decomposition_after: Option<Vec<usize>>,
    pub distance_before: DistanceKind,
    /// Distance of the surgered pair, recomputed from scratch.
    pub distance_after: Option<DistanceKind>,
    pub gate: Gate,
    pub accepted: bool,
    pub reason: StepReason,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub start: Ladder,
    pub result: Ladder,
    pub distance: DistanceKind,
}

impl ReductionTrace {
    pub fn accepted(&self) -> impl Iterator<Item = &ReductionStep> {
        self.steps.iter().filter(|s| s.accepted)
    }

    /// Every refused step names its reason, and every accepted step carries
    /// a recomputed distance equal to the one before it.
    pub fn is_explained(&self) -> bool {
        self.steps.iter().all(|s| match s.reason {
            StepReason::Accepted => {
                s.accepted && s.distance_after == Some(s.distance_before) && s.i_after.is_some()
            }
            StepReason::DistanceVeto => {
                !s.accepted
                    && s.distance_after.is_some()
                    && s.distance_after != Some(s.distance_before)
            }
            _ => !s.accepted && !s.detail.is_empty(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceOptions {
    pub max_d: usize,
    /// Also perform the surgery on width-refused spirals and record the
    /// recomputed distance, without accepting it.
    pub confirm_refusals: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            max_d: super::MAX_SUPPORTED_DISTANCE,
            confirm_refusals: true,
        }
    }
}

struct State {
    ladder: Ladder,
    d: usize,
    kind: DistanceKind,
    genus: usize,
    vector: Vec<usize>,
    large: Vec<usize>,
}

impl State {
    fn new(l: &Ladder, max_d: usize) -> Result<Option<Self>, GeodesicError> {
        let r = distance(l, max_d)?;
        let Some(d) = r.exact() else { return Ok(None) };
        let complex = SurfaceComplex::new(l)?;
        let dec = complex.decomposition();
        Ok(Some(State {
            ladder: l.clone(),
            d,
            kind: r.kind,
            genus: complex.genus(),
            vector: dec.vector(),
            large: dec.large_vector(),
        }))
    }
}

/// A consecutive arc pair over the spiral whose stacked dot graph has an
/// admissible region in every layer.
fn stacked_gate(st: &State, spiral: &Spiral) -> Result<(Gate, Option<usize>), GeodesicError> {
    if st.d != 3 {
        return Ok((
            Gate::Skipped {
                reason: format!("dot graphs are not built for distance {}", st.d),
            },
            spiral.band.w_arcs.first().copied(),
        ));
    }
    let complex = SurfaceComplex::new(&st.ladder)?;
    let g = complex.graph();
    let arcs = reference_arcs(&complex).map_err(|e| GeodesicError::Unsupported(e.to_string()))?;
    let set = enumerate_efficient_geodesics(&st.ladder, st.d)?;
    let n = st.ladder.n();
    for &k in &spiral.band.w_arcs {
        let stacked = stacked_dot_graph(g, &arcs, &set, k)
            .map_err(|e| GeodesicError::Unsupported(e.to_string()))?;
        if !common_regions(&stacked, false).is_empty() {
            let gate = Gate::Passed {
                arcs: (k, k % n + 1),
                layers: stacked.layers.len(),
            };
            return Ok((gate, Some(k)));
        }
    }
    Ok((Gate::Failed { layers: set.n() }, None))
}

fn width_allowance(i: usize, imin: IminValue) -> Option<usize> {
    match imin {
        IminValue::Exact(m) | IminValue::LowerBound(m) => Some(i.saturating_sub(m)),
        IminValue::Unknown => None,
    }
}

/// Repeatedly applies spiral surgery to `v`, keeping a step only when the
/// distance recomputed afterwards is unchanged. Returns an empty trace when
/// the distance is not decided within `max_d` or there is no spiral.
pub fn reduce_intersections(
    l: &Ladder,
    table: &IminTable,
    opts: ReduceOptions,
) -> Result<ReductionTrace, GeodesicError> {
    let mut steps = Vec::new();
    let Some(mut st) = State::new(l, opts.max_d)? else {
        let kind = distance(l, opts.max_d)?.kind;
        return Ok(ReductionTrace {
            steps,
            start: l.clone(),
            result: l.clone(),
            distance: kind,
        });
    };
    loop {
        let complex = SurfaceComplex::new(&st.ladder)?;
        let spirals = find_spirals(&complex);
        let i = st.ladder.n();
        let imin = table.lookup(st.d, st.genus, &st.large);
        let mut next = None;
        for spiral in &spirals {
            let width = spiral.band.width;
            let mut step = ReductionStep {
                step: steps.len(),
                band: spiral.band_index,
                w_arc: None,
                width,
                kind: None,
                i_before: i,
                i_after: None,
                i_min: imin,
                decomposition_before: st.vector.clone(),
                decomposition_after: None,
                distance_before: st.kind,
                distance_after: None,
                gate: Gate::NotReached,
                accepted: false,
                reason: StepReason::Accepted,
                detail: String::new(),
            };
            let too_wide = width_allowance(i, imin).is_some_and(|allow| width > allow);
            let w_arc = if too_wide {
                step.reason = StepReason::WidthBound;
                step.detail = format!(
                    "width {width} exceeds i - i_min = {}",
                    width_allowance(i, imin).unwrap_or(0)
                );
                if !opts.confirm_refusals {
                    steps.push(step);
                    continue;
                }
                spiral.band.w_arcs.first().copied()
            } else {
                let (gate, arc) = stacked_gate(&st, spiral)?;
                step.gate = gate;
                if arc.is_none() {
                    step.reason = StepReason::NoStackedRegion;
                    step.detail =
                        "some efficient geodesic has no empty, unpierced region over the spiral"
                            .into();
                    steps.push(step);
                    continue;
                }
                arc
            };
            let Some(w_arc) = w_arc else { continue };
            step.w_arc = Some(w_arc);
            let (out, trace) = match spiral_surgery(&st.ladder, spiral, w_arc) {
                Ok(x) => x,
                Err(e) => {
                    if !too_wide {
                        step.reason = StepReason::SurgeryFailed;
                    }
                    step.detail = format!(
                        "{}{}",
                        if too_wide {
                            format!("{}; ", step.detail)
                        } else {
                            String::new()
                        },
                        e
                    );
                    steps.push(step);
                    continue;
                }
            };
            step.kind = trace.kind;
            step.i_after = Some(trace.i_after);
            step.decomposition_after = Some(trace.decomposition_after.clone());
            let after = distance(&out, opts.max_d)?.kind;
            step.distance_after = Some(after);
            if too_wide {
                step.detail = format!(
                    "{}; recomputed distance after the surgery: {after}",
                    step.detail
                );
                steps.push(step);
                continue;
            }
            if after == st.kind {
                step.accepted = true;
                step.detail = format!("distance recomputed as {after}");
                steps.push(step);
                next = Some(out);
                break;
            }
            step.reason = StepReason::DistanceVeto;
            step.detail = format!("distance would change from {} to {after}", st.kind);
            steps.push(step);
        }
        match next {
            Some(out) => {
                st = State::new(&out, opts.max_d)?
                    .expect("an accepted step keeps an exact distance");
            }
            None => break,
        }
    }
    Ok(ReductionTrace {
        steps,
        start: l.clone(),
        result: st.ladder,
        distance: st.kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::l10;
    use crate::surgery::tests::doubly_added;

    #[test]
    fn spiral_free_pair_gives_an_empty_trace() {
        let t =
            reduce_intersections(&l10(), &IminTable::builtin(), ReduceOptions::default()).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.result, l10());
    }

    #[test]
    fn distance_three_step_is_accepted_after_recheck() {
        let once = crate::surgery::spiral_addition(
            &l10(),
            crate::surgery::AdditionSite::Run {
                start: 0,
                length: 1,
            },
            1,
        )
        .unwrap();
        let t =
            reduce_intersections(&once, &IminTable::builtin(), ReduceOptions::default()).unwrap();
        assert_eq!(t.steps.len(), 1);
        let s = &t.steps[0];
        assert!(s.accepted && s.reason == StepReason::Accepted);
        assert!(matches!(s.gate, Gate::Passed { .. }));
        assert_eq!((s.i_before, s.i_after, s.width), (11, Some(10), 1));
        assert_eq!(s.distance_after, Some(DistanceKind::Exact { d: 3 }));
        assert_eq!(t.distance, DistanceKind::Exact { d: 3 });
        assert!(crate::surgery::same_class(&t.result, &l10()));
        assert!(t.is_explained());
    }

    #[test]
    fn width_bound_refuses_on_the_distance_four_pair() {
        let t = reduce_intersections(
            &doubly_added(),
            &IminTable::builtin(),
            ReduceOptions::default(),
        )
        .unwrap();
        assert!(!t.steps.is_empty());
        assert!(t
            .steps
            .iter()
            .all(|s| s.reason == StepReason::WidthBound && !s.accepted));
        assert!(t.is_explained());
    }

    #[test]
    fn empty_table_shows_the_distance_veto() {
        let t = reduce_intersections(
            &doubly_added(),
            &IminTable::empty(),
            ReduceOptions::default(),
        )
        .unwrap();
        assert!(t.steps.iter().any(|s| s.reason == StepReason::DistanceVeto));
        assert_eq!(t.accepted().count(), 0);
        assert!(t.is_explained());
    }
}

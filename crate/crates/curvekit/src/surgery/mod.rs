//! Surgery on `v` along arcs parallel to `w`, bands and spirals, spiral
//! surgery and spiral addition.

pub mod bands;
pub mod constructions;
pub mod rewrite;
pub mod simultaneous;

pub use bands::{find_bands, find_spirals, Band, Spiral};
pub use rewrite::{ComplementCensus, ParallelArc, SurgeryKind, WSide};
pub use simultaneous::{simultaneous_surgery, SimultaneousSurgery};

use crate::ladder::{canonical_form, Crossing, Ladder};
use crate::surface::{Bicorn, SurfaceComplex, SurfaceError};
use rewrite::{component_ladder, components, surgered_complement, twist, Component};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("INCOMPATIBLE_KIND: {kind:?} is not admissible here (admissible: {admissible:?})")]
    IncompatibleKind {
        kind: Option<SurgeryKind>,
        admissible: Vec<SurgeryKind>,
    },
    #[error("NOT_IN_SPIRAL: w-arc {w_arc} is not a side of a rectangle of the spiral")]
    NotInSpiral { w_arc: usize },
    #[error("INVALID_SITE: {reason}")]
    InvalidSite { reason: String },
    #[error("REGION_INVALID: {reason}")]
    RegionInvalid { reason: String },
    #[error("PRECONDITION: {reason}")]
    Precondition { reason: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl SurgeryError {
    pub fn code(&self) -> &'static str {
        match self {
            SurgeryError::IncompatibleKind { .. } => "INCOMPATIBLE_KIND",
            SurgeryError::NotInSpiral { .. } => "NOT_IN_SPIRAL",
            SurgeryError::InvalidSite { .. } => "INVALID_SITE",
            SurgeryError::RegionInvalid { .. } => "REGION_INVALID",
            SurgeryError::Precondition { .. } => "PRECONDITION",
            SurgeryError::Surface(e) => e.code(),
        }
    }
}

/// A surgery arc running beside `w` between two columns on one side of `w`.
/// Its endpoints lie on the `v`-arcs leaving those columns on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryArc {
    pub from_column: usize,
    pub to_column: usize,
    pub side: WSide,
}

impl SurgeryArc {
    pub fn beside_w_arc(n: usize, w_label: usize, side: WSide) -> Self {
        let arc = ParallelArc { w_label, side };
        SurgeryArc {
            from_column: arc.west_column(n),
            to_column: arc.east_column(n),
            side,
        }
    }

    fn parallel(&self, n: usize) -> Option<ParallelArc> {
        if n < 3 || self.from_column >= n || self.to_column >= n {
            return None;
        }
        let (a, b) = (self.from_column, self.to_column);
        if (b + n - a) % n == 1 {
            Some(ParallelArc {
                w_label: b + 1,
                side: self.side,
            })
        } else if (a + n - b) % n == 1 {
            Some(ParallelArc {
                w_label: a + 1,
                side: self.side,
            })
        } else {
            None
        }
    }
}

/// A closed curve produced by surgery, described against `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeredCurve {
    pub kind: SurgeryKind,
    /// Crossings with `w` kept from `v`, in order along the new curve.
    pub route: Vec<Crossing>,
    /// Ladder of the new curve with `w` when they still meet.
    pub ladder: Option<Ladder>,
    pub complement: ComplementCensus,
}

impl SurgeredCurve {
    pub fn crossings(&self) -> usize {
        self.route.len()
    }
}

fn surgered(l: &Ladder, arc: ParallelArc, comp: &Component) -> SurgeredCurve {
    SurgeredCurve {
        kind: comp.kind,
        route: comp.route.clone(),
        ladder: component_ladder(l, comp),
        complement: surgered_complement(l, arc, comp),
    }
}

/// Kinds realizable along the arc: `{+-, -+}` for coherent strands and
/// `{++, --}` otherwise.
pub fn classify_surgery(l: &Ladder, arc: SurgeryArc) -> BTreeSet<SurgeryKind> {
    arc.parallel(l.n())
        .and_then(|p| components(l, p))
        .map(|cs| cs.iter().map(|c| c.kind).collect())
        .unwrap_or_default()
}

/// Performs surgery of the given kind. Mixed kinds give one curve. `++` and
/// `--` give the two curves built from the two components, the one matching
/// the requested signs first.
pub fn surger(
    l: &Ladder,
    arc: SurgeryArc,
    kind: SurgeryKind,
) -> Result<Vec<SurgeredCurve>, SurgeryError> {
    let incompatible = || SurgeryError::IncompatibleKind {
        kind: Some(kind),
        admissible: classify_surgery(l, arc).into_iter().collect(),
    };
    let p = arc.parallel(l.n()).ok_or_else(incompatible)?;
    let cs = components(l, p).ok_or_else(incompatible)?;
    let i = cs
        .iter()
        .position(|c| c.kind == kind)
        .ok_or_else(incompatible)?;
    let mut out = vec![surgered(l, p, &cs[i])];
    if !kind.is_mixed() {
        out.push(surgered(l, p, &cs[1 - i]));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryTrace {
    pub op: String,
    pub site: serde_json::Value,
    pub kind: Option<SurgeryKind>,
    pub width: usize,
    pub i_before: usize,
    pub i_after: usize,
    pub decomposition_before: Vec<usize>,
    pub decomposition_after: Vec<usize>,
}

fn census_of(l: &Ladder) -> Result<(usize, BTreeMap<usize, usize>), SurfaceError> {
    let c = SurfaceComplex::new(l)?;
    Ok((c.genus(), c.decomposition().counts))
}

fn large_part(m: &BTreeMap<usize, usize>) -> BTreeMap<usize, usize> {
    m.iter()
        .filter(|(&s, &c)| s > 4 && c > 0)
        .map(|(&s, &c)| (s, c))
        .collect()
}

/// Spiral surgery along one `w`-arc of the spiral: the mixed surgery that
/// removes `width` crossings and keeps every larger polygon.
pub fn spiral_surgery(
    l: &Ladder,
    spiral: &Spiral,
    w_arc: usize,
) -> Result<(Ladder, SurgeryTrace), SurgeryError> {
    if !spiral.band.contains_w_arc(w_arc) {
        return Err(SurgeryError::NotInSpiral { w_arc });
    }
    let n = l.n();
    let width = spiral.band.width;
    let complex = SurfaceComplex::new(l)?;
    let before = complex.decomposition();
    for side in [WSide::Top, WSide::Bottom] {
        let p = ParallelArc {
            w_label: w_arc,
            side,
        };
        let Some(cs) = components(l, p) else { continue };
        for comp in cs.iter().filter(|c| c.kind.is_mixed()) {
            if comp.route.len() + width != n {
                continue;
            }
            let Some(out) = component_ladder(l, comp) else {
                continue;
            };
            let Ok((g, counts)) = census_of(&out) else {
                continue;
            };
            if g != complex.genus() || large_part(&counts) != large_part(&before.counts) {
                continue;
            }
            let after = SurfaceComplex::new(&out)?.decomposition();
            let trace = SurgeryTrace {
                op: "spiral_surgery".into(),
                site: serde_json::json!({"band": spiral.band_index, "w_arc": w_arc, "side": side}),
                kind: Some(comp.kind),
                width,
                i_before: n,
                i_after: out.n(),
                decomposition_before: before.vector(),
                decomposition_after: after.vector(),
            };
            return Ok((out, trace));
        }
    }
    Err(SurgeryError::Precondition {
        reason: format!("no surgery along w-arc {w_arc} removes {width} crossings and keeps the larger polygons"),
    })
}

/// The kind used by spiral surgery on this spiral; it encodes the direction
/// in which the spiral winds.
pub fn spiral_winding(l: &Ladder, spiral: &Spiral) -> Option<SurgeryKind> {
    spiral
        .band
        .w_arcs
        .iter()
        .find_map(|&w| spiral_surgery(l, spiral, w).ok())
        .and_then(|(_, t)| t.kind)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdditionSite {
    Bicorn {
        v_arc: usize,
        w_arc: usize,
    },
    Band {
        index: usize,
    },
    /// A forward run of `length` arcs of `v` starting at route position
    /// `start` whose ends are adjacent along `w`.
    Run {
        start: usize,
        length: usize,
    },
}

impl From<Bicorn> for AdditionSite {
    fn from(b: Bicorn) -> Self {
        AdditionSite::Bicorn {
            v_arc: b.v_arc,
            w_arc: b.w_arc,
        }
    }
}

/// Route position and run length of a twisting site.
fn locate_site(l: &Ladder, site: AdditionSite) -> Result<(usize, usize), SurgeryError> {
    let n = l.n();
    let complex = SurfaceComplex::new(l)?;
    match site {
        AdditionSite::Bicorn { v_arc, w_arc } => {
            let found = complex
                .find_bicorns()
                .into_iter()
                .find(|b| b.v_arc == v_arc && b.w_arc == w_arc)
                .ok_or_else(|| SurgeryError::InvalidSite {
                    reason: format!("v-arc {v_arc} and w-arc {w_arc} do not form a bicorn"),
                })?;
            if found.pushoff.is_none() {
                return Err(SurgeryError::InvalidSite {
                    reason: format!("bicorn ({v_arc}, {w_arc}) admits no twisting push-off"),
                });
            }
            Ok(((v_arc + n - 2) % n, 1))
        }
        AdditionSite::Band { index } => {
            let bands = find_bands(&complex);
            let band = bands.get(index).ok_or_else(|| SurgeryError::InvalidSite {
                reason: format!("there is no band {index}"),
            })?;
            let route = l.route();
            let mut t_of = vec![0; n];
            for (t, c) in route.iter().enumerate() {
                t_of[c.column] = t;
            }
            let pos: Vec<usize> = (0..n).collect();
            for &w in &band.w_arcs {
                let (a, b) = l.w_arc_endpoints(w);
                for (x, y) in [(a, b), (b, a)] {
                    let alpha = t_of[x];
                    let m = (t_of[y] + n - alpha) % n;
                    if m != band.width {
                        continue;
                    }
                    let twistable = crate::surface::site_turns(&route, &pos, alpha, m)
                        .is_some_and(|t| t.twistable());
                    if twistable {
                        return Ok((alpha, m));
                    }
                }
            }
            Err(SurgeryError::InvalidSite {
                reason: format!("band {index} has no twistable w-arc"),
            })
        }
        AdditionSite::Run { start, length } => {
            let pos: Vec<usize> = (0..n).collect();
            let twistable = start < n
                && crate::surface::site_turns(&l.route(), &pos, start, length)
                    .is_some_and(|t| t.twistable());
            if twistable {
                Ok((start, length))
            } else {
                Err(SurgeryError::InvalidSite {
                    reason: format!(
                        "the run of {length} arcs from route position {start} is not twistable"
                    ),
                })
            }
        }
    }
}

/// Spiral addition: `m` successive twists at the site, each adding one
/// rectangle per crossing of the twisted run.
pub fn spiral_addition(l: &Ladder, site: AdditionSite, m: usize) -> Result<Ladder, SurgeryError> {
    if m == 0 {
        return Ok(l.clone());
    }
    let (mut alpha, run) = locate_site(l, site)?;
    let mut current = l.clone();
    for _ in 0..m {
        let t = twist(&current, alpha, run).ok_or_else(|| SurgeryError::InvalidSite {
            reason: "the twisting site is not twistable".into(),
        })?;
        alpha = t.end_index;
        current = t.ladder;
    }
    Ok(current)
}

/// Result of forcing a `++` or `--` surgery across a rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleSurgeryReport {
    pub face: usize,
    pub w_arc: usize,
    pub side: WSide,
    pub admissible: Vec<SurgeryKind>,
    pub attempted: SurgeryKind,
    /// False when the strands are coherent, so the kind cannot be performed.
    pub applicable: bool,
    pub outcomes: Vec<RectangleOutcome>,
    /// Every produced curve changes the larger-polygon census or fails to fill.
    pub violation_demonstrated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleOutcome {
    pub crossings: usize,
    pub fills: bool,
    pub bigons: usize,
    pub non_disc_regions: usize,
    pub disc_census: BTreeMap<usize, usize>,
    pub preserved: bool,
}

/// Side of `w` on which a face lies along one of its `w`-sides.
pub fn rectangle_side(complex: &SurfaceComplex, face: usize, w_arc: usize) -> Option<WSide> {
    let g = complex.graph();
    let e = w_arc.checked_sub(1)?;
    g.faces()
        .get(face)?
        .iter()
        .find(|&&d| g.dart_edge(d) == e)
        .map(|&d| {
            if g.dart_starts(d) {
                WSide::Bottom
            } else {
                WSide::Top
            }
        })
}

pub fn forbidden_rectangle_surgery_check(
    l: &Ladder,
    face: usize,
    w_arc: usize,
    kind: SurgeryKind,
) -> Result<RectangleSurgeryReport, SurgeryError> {
    if kind.is_mixed() {
        return Err(SurgeryError::IncompatibleKind {
            kind: Some(kind),
            admissible: vec![SurgeryKind::PlusPlus, SurgeryKind::MinusMinus],
        });
    }
    let complex = SurfaceComplex::new(l)?;
    if complex.graph().face_len(face) != 4 {
        return Err(SurgeryError::InvalidSite {
            reason: format!("face {face} is not a rectangle"),
        });
    }
    let side = rectangle_side(&complex, face, w_arc).ok_or_else(|| SurgeryError::InvalidSite {
        reason: format!("w-arc {w_arc} is not a side of face {face}"),
    })?;
    let before = large_part(&complex.decomposition().counts);
    let arc = SurgeryArc::beside_w_arc(l.n(), w_arc, side);
    let admissible: Vec<SurgeryKind> = classify_surgery(l, arc).into_iter().collect();
    let applicable = admissible.contains(&kind);
    let mut outcomes = Vec::new();
    if applicable {
        for c in surger(l, arc, kind)? {
            let census = c.complement.disc_census();
            let fills = c.complement.fills();
            let bigons = c.complement.bigons();
            let preserved = fills && bigons == 0 && large_part(&census) == before;
            outcomes.push(RectangleOutcome {
                crossings: c.crossings(),
                fills,
                bigons,
                non_disc_regions: c.complement.non_discs(),
                disc_census: census,
                preserved,
            });
        }
    }
    let violation_demonstrated = applicable && outcomes.iter().all(|o| !o.preserved);
    Ok(RectangleSurgeryReport {
        face,
        w_arc,
        side,
        admissible,
        attempted: kind,
        applicable,
        outcomes,
        violation_demonstrated,
    })
}

/// True when the two ladders agree after canonicalization.
pub fn same_class(a: &Ladder, b: &Ladder) -> bool {
    canonical_form(a).canonical_ladder == canonical_form(b).canonical_ladder
}

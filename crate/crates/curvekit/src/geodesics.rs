//! Curve-graph distance up to 4 through efficient geodesics, geodesic
//! enumeration, the minimal intersection table and the intersection
//! reduction loop.

use crate::curves::{enumerate_disjoint_curves, filling_ladder, ChordTypes, TransverseCurve};
use crate::ladder::Ladder;
use crate::surface::{CurveName, Hand, SurfaceComplex, SurfaceError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod imin;
pub mod reduce;

pub use imin::{IminEntry, IminKind, IminTable, IminValue};
pub use reduce::{
    reduce_intersections, Gate, ReduceOptions, ReductionStep, ReductionTrace, StepReason,
};

/// Largest distance the search decides.
pub const MAX_SUPPORTED_DISTANCE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeodesicError {
    #[error("UNSUPPORTED: {0}")]
    Unsupported(String),
    #[error("NOT_A_PATH: {0}")]
    NotAPath(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl GeodesicError {
    pub fn code(&self) -> &'static str {
        match self {
            GeodesicError::Unsupported(_) => "UNSUPPORTED",
            GeodesicError::NotAPath(_) => "NOT_A_PATH",
            GeodesicError::Surface(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DistanceKind {
    Exact { d: usize },
    AtLeast { d: usize },
}

impl std::fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistanceKind::Exact { d } => write!(f, "EXACT({d})"),
            DistanceKind::AtLeast { d } => write!(f, "AT_LEAST({d})"),
        }
    }
}

/// A path `v, v_1, ..., v_{d-1}, w`. The first vertex is a curve in the
/// complex of `ladder` avoiding `v`; the rest is either the last vertex
/// (avoiding `w` in the same complex) or a geodesic from `v_1` to `w` on the
/// ladder of that pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geodesic {
    pub ladder: Ladder,
    pub first: TransverseCurve,
    pub tail: Tail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Last(TransverseCurve),
    Inner(Box<Geodesic>),
}

impl Geodesic {
    pub fn length(&self) -> usize {
        match &self.tail {
            Tail::Last(_) => 3,
            Tail::Inner(g) => 1 + g.length(),
        }
    }

    /// Checks that consecutive vertices are disjoint, intermediate vertices
    /// are essential and nonseparating, and the path ends at the inputs.
    pub fn verify(&self) -> Result<(), GeodesicError> {
        let complex = SurfaceComplex::new(&self.ladder)?;
        let g = complex.graph();
        let check_vertex = |c: &TransverseCurve, base: CurveName, name: &str| {
            let pushoffs = [Hand::Left, Hand::Right].map(|h| TransverseCurve::pushoff(g, base, h));
            if c.crossings_with(g, base) != 0 {
                return Err(GeodesicError::NotAPath(format!(
                    "{name} meets its neighbour"
                )));
            }
            if !c.is_connected(g) || !c.is_nonseparating(g) || pushoffs.contains(c) {
                return Err(GeodesicError::NotAPath(format!(
                    "{name} is not a nonseparating curve distinct from its neighbour"
                )));
            }
            Ok(())
        };
        check_vertex(&self.first, CurveName::V, "v_1")?;
        match &self.tail {
            Tail::Last(last) => {
                check_vertex(last, CurveName::W, "v_{d-1}")?;
                if !ChordTypes::of(g, &self.first).disjoint_from(&ChordTypes::of(g, last)) {
                    return Err(GeodesicError::NotAPath("v_1 meets v_2".into()));
                }
            }
            Tail::Inner(inner) => {
                let expected = filling_ladder(&complex, &self.first)
                    .ok_or_else(|| GeodesicError::NotAPath("v_1 does not fill with w".into()))?;
                if expected != inner.ladder {
                    return Err(GeodesicError::NotAPath(
                        "inner ladder is not the pair (v_1, w)".into(),
                    ));
                }
                inner.verify()?;
            }
        }
        Ok(())
    }

    /// Crossing counts of each vertex against its reference arcs, in the
    /// order the efficiency conditions inspect them.
    pub fn efficiency_report(&self) -> Vec<ArcCheck> {
        let d = self.length();
        let complex = SurfaceComplex::new(&self.ladder).expect("verified ladder");
        let g = complex.graph();
        let max_on = |c: &TransverseCurve, curve: CurveName| {
            (0..g.edge_count())
                .filter(|&e| g.edge_curve(e) == curve)
                .map(|e| c.counts()[e])
                .max()
                .unwrap_or(0)
        };
        let mut out = vec![ArcCheck {
            vertex: "v_1".into(),
            pair: "(v, w)".into(),
            max_crossings: max_on(&self.first, CurveName::W),
            bound: d - 1,
        }];
        match &self.tail {
            Tail::Last(last) => out.push(ArcCheck {
                vertex: format!("v_{}", d - 1),
                pair: "(w, v)".into(),
                max_crossings: max_on(last, CurveName::V),
                bound: 2,
            }),
            Tail::Inner(inner) => {
                for mut c in inner.efficiency_report() {
                    c.vertex = shift_name(&c.vertex);
                    c.pair = c.pair.replace("(v,", "(v_1,").replace(", v)", ", v_1)");
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn is_efficient(&self) -> Result<bool, GeodesicError> {
        self.verify()?;
        Ok(self
            .efficiency_report()
            .iter()
            .all(|c| c.max_crossings <= c.bound))
    }
}

fn shift_name(s: &str) -> String {
    s.strip_prefix("v_")
        .and_then(|k| k.parse::<usize>().ok())
        .map_or_else(|| s.to_string(), |k| format!("v_{}", k + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCheck {
    pub vertex: String,
    pub pair: String,
    pub max_crossings: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    #[serde(flatten)]
    pub kind: DistanceKind,
    pub witness: Option<Geodesic>,
}

impl DistanceResult {
    pub fn exact(&self) -> Option<usize> {
        match self.kind {
            DistanceKind::Exact { d } => Some(d),
            DistanceKind::AtLeast { .. } => None,
        }
    }
}

/// The upper bound `d ≤ 2 log2(i) + 2`.
pub fn within_distance_bound(d: usize, i: usize) -> bool {
    (d as f64) <= 2.0 * (i as f64).log2() + 2.0 + 1e-9
}

fn nonseparating(complex: &SurfaceComplex, base: CurveName, bound: usize) -> Vec<TransverseCurve> {
    let g = complex.graph();
    enumerate_disjoint_curves(complex, base, bound)
        .into_iter()
        .filter(|c| c.is_nonseparating(g))
        .collect()
}

/// Candidate vertices next to each end of a distance-3 geodesic.
struct ThreeSearch {
    first: Vec<(TransverseCurve, ChordTypes)>,
    last: Vec<(TransverseCurve, ChordTypes)>,
}

impl ThreeSearch {
    fn new(complex: &SurfaceComplex) -> Self {
        let g = complex.graph();
        let tag = |c: TransverseCurve| {
            let t = ChordTypes::of(g, &c);
            (c, t)
        };
        ThreeSearch {
            first: nonseparating(complex, CurveName::V, 2)
                .into_iter()
                .map(tag)
                .collect(),
            last: nonseparating(complex, CurveName::W, 2)
                .into_iter()
                .map(tag)
                .collect(),
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (&TransverseCurve, &TransverseCurve)> + '_ {
        self.first.iter().flat_map(move |(a, ta)| {
            self.last
                .iter()
                .filter(move |(_, tb)| ta.disjoint_from(tb))
                .map(move |(b, _)| (a, b))
        })
    }
}

fn geodesic3(l: &Ladder, a: &TransverseCurve, b: &TransverseCurve) -> Geodesic {
    Geodesic {
        ladder: l.clone(),
        first: a.clone(),
        tail: Tail::Last(b.clone()),
    }
}

/// An efficient geodesic of length 3, if the distance is 3.
pub fn distance_three_witness(l: &Ladder) -> Result<Option<Geodesic>, GeodesicError> {
    let complex = SurfaceComplex::new(l)?;
    let s = ThreeSearch::new(&complex);
    let found = s.pairs().next().map(|(a, b)| geodesic3(l, a, b));
    Ok(found)
}

fn check_supported(complex: &SurfaceComplex, max_d: usize) -> Result<(), GeodesicError> {
    if max_d > MAX_SUPPORTED_DISTANCE {
        return Err(GeodesicError::Unsupported(format!(
            "distances above {MAX_SUPPORTED_DISTANCE} are not searched"
        )));
    }
    let dec = complex.decomposition();
    if !dec.only_four_and_six() {
        return Err(GeodesicError::Unsupported(format!(
            "the decomposition has a {}-gon; reference arcs need 4- and 6-gons",
            dec.max_sides()
        )));
    }
    Ok(())
}

/// Candidate first vertices of an efficient geodesic of length 4 that fill
/// with `w`, each with the ladder of `(v_1, w)`.
fn four_candidates(
    complex: &SurfaceComplex,
) -> impl Iterator<Item = (TransverseCurve, Ladder)> + '_ {
    nonseparating(complex, CurveName::V, 3)
        .into_iter()
        .filter_map(move |c| filling_ladder(complex, &c).map(|l| (c, l)))
}

/// Curve-graph distance of the filling pair, decided up to `max_d ≤ 4`.
pub fn distance(l: &Ladder, max_d: usize) -> Result<DistanceResult, GeodesicError> {
    let complex = SurfaceComplex::new(l)?;
    check_supported(&complex, max_d)?;
    // A filling pair is at distance at least 3.
    if max_d < 3 {
        return Ok(DistanceResult {
            kind: DistanceKind::AtLeast { d: 3 },
            witness: None,
        });
    }
    if let Some(w) = distance_three_witness(l)? {
        return Ok(DistanceResult {
            kind: DistanceKind::Exact { d: 3 },
            witness: Some(w),
        });
    }
    if max_d < 4 {
        return Ok(DistanceResult {
            kind: DistanceKind::AtLeast { d: 4 },
            witness: None,
        });
    }
    for (v1, l1) in four_candidates(&complex) {
        if let Some(inner) = distance_three_witness(&l1)? {
            return Ok(DistanceResult {
                kind: DistanceKind::Exact { d: 4 },
                witness: Some(Geodesic {
                    ladder: l.clone(),
                    first: v1,
                    tail: Tail::Inner(Box::new(inner)),
                }),
            });
        }
    }
    Ok(DistanceResult {
        kind: DistanceKind::AtLeast { d: 5 },
        witness: None,
    })
}

/// Distance between two curves that both avoid `v` in the same complex:
/// 0 when equal, 1 when disjoint, 2 otherwise (both are disjoint from `v`).
pub fn distance_between_curves(
    complex: &SurfaceComplex,
    a: &TransverseCurve,
    b: &TransverseCurve,
) -> DistanceKind {
    let g = complex.graph();
    if a == b {
        DistanceKind::Exact { d: 0 }
    } else if crate::curves::intersection_number(g, a, b) == 0 {
        DistanceKind::Exact { d: 1 }
    } else {
        DistanceKind::Exact { d: 2 }
    }
}

/// All efficient geodesics between a pair at distance `d ∈ {3, 4}`, with
/// intermediate curves in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicSet {
    pub d: usize,
    pub paths: Vec<Geodesic>,
}

impl GeodesicSet {
    pub fn n(&self) -> usize {
        self.paths.len()
    }
}

pub fn enumerate_efficient_geodesics(
    l: &Ladder,
    max_d: usize,
) -> Result<GeodesicSet, GeodesicError> {
    let result = distance(l, max_d)?;
    let Some(d) = result.exact() else {
        return Err(GeodesicError::Unsupported(
            "the distance exceeds the search cap".into(),
        ));
    };
    let complex = SurfaceComplex::new(l)?;
    let paths = match d {
        3 => {
            let s = ThreeSearch::new(&complex);
            s.pairs().map(|(a, b)| geodesic3(l, a, b)).collect()
        }
        _ => {
            let mut out = Vec::new();
            for (v1, l1) in four_candidates(&complex) {
                let inner_complex = SurfaceComplex::new(&l1)?;
                let s = ThreeSearch::new(&inner_complex);
                for (a, b) in s.pairs() {
                    out.push(Geodesic {
                        ladder: l.clone(),
                        first: v1.clone(),
                        tail: Tail::Inner(Box::new(geodesic3(&l1, a, b))),
                    });
                }
            }
            out
        }
    };
    Ok(GeodesicSet { d, paths })
}

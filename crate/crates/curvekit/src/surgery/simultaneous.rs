//! Surgery on the curves of a path guided by a region of its extended dot
//! graph, including the endpoint `v` when the region reaches height 0.

use super::{classify_surgery, surger, SurgeryArc, SurgeryError, SurgeryKind, WSide};
use crate::curves::{reference_arcs, TransverseCurve};
use crate::dotgraph::{
    build_dot_graph, extend, find_regions, intersection_sequence, DotGraph, Region,
};
use crate::geodesics::{distance_three_witness, enumerate_efficient_geodesics, Geodesic, Tail};
use crate::surface::{RibbonGraph, SurfaceComplex};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimultaneousSurgery {
    pub region: Region,
    pub surgered_v: bool,
    /// The arc of `w` beside which `v` was surgered.
    pub w_arc: Option<usize>,
    pub kind: Option<SurgeryKind>,
    pub i_before: usize,
    pub i_after: usize,
    /// Crossings of the intermediate curves with the two reference arcs;
    /// absent once `v` changes and the arcs are relabelled.
    pub arc_crossings_before: usize,
    pub arc_crossings_after: Option<usize>,
    pub path: Geodesic,
}

fn region_invalid(reason: impl Into<String>) -> SurgeryError {
    SurgeryError::RegionInvalid {
        reason: reason.into(),
    }
}

fn intermediate(path: &Geodesic) -> Result<Vec<TransverseCurve>, SurgeryError> {
    match &path.tail {
        Tail::Last(_) => Ok(vec![path.first.clone()]),
        Tail::Inner(_) => Err(SurgeryError::Precondition {
            reason: "dot graphs are built for paths of length 3".into(),
        }),
    }
}

fn extended_graph(
    g: &RibbonGraph,
    path: &Geodesic,
    k: usize,
) -> Result<(DotGraph, usize), SurgeryError> {
    let complex = SurfaceComplex::new(&path.ladder)?;
    let arcs = reference_arcs(&complex).map_err(|e| SurgeryError::Precondition {
        reason: e.to_string(),
    })?;
    let n = g.n();
    if k == 0 || k > n {
        return Err(region_invalid(format!("there is no reference arc {k}")));
    }
    let curves = intermediate(path)?;
    let a = intersection_sequence(g, &curves, &arcs[k - 1]);
    let b = intersection_sequence(g, &curves, &arcs[k % n]);
    let crossings = a.len() + b.len();
    let x = extend(&a, &b, n).map_err(|e| region_invalid(e.to_string()))?;
    Ok((build_dot_graph(&x), crossings))
}

/// The reference arc between the two crossings of `v` at the region's
/// lower corners.
fn arc_under(graph: &DotGraph, region: &Region, k: usize, n: usize) -> Option<usize> {
    let (a, b) = graph.sequence.parts?;
    let origin_at = |x: i64| {
        let x = usize::try_from(x).ok()?;
        (graph.sequence.entries.get(x) == Some(&0)).then(|| graph.sequence.provenance[x])
    };
    let (p, q) = region.horizontal_edges[0];
    let mut ends = [origin_at(p.0)?, origin_at(q.0)?];
    ends.sort();
    match ends {
        [0, m] if m == a + 1 => Some(k),
        [m, e] if m == a + 1 && e == a + b + 2 => Some(k % n + 1),
        _ => None,
    }
}

/// Applies the surgeries indicated by an admissible region of the extended
/// dot graph of `path` over arcs `k` and `k + 1`. The intermediate curves of
/// the result are recomputed on the new pair.
pub fn simultaneous_surgery(
    path: &Geodesic,
    region: &Region,
    k: usize,
) -> Result<SimultaneousSurgery, SurgeryError> {
    let complex = SurfaceComplex::new(&path.ladder)?;
    let g = complex.graph();
    let n = g.n();
    let (graph, before) = extended_graph(g, path, k)?;
    if !find_regions(&graph).contains(region) {
        return Err(region_invalid(
            "the region is not a region of the extended dot graph",
        ));
    }
    if !region.admissible() {
        return Err(region_invalid(
            "the region is not empty and unpierced, or is an acute hexagon",
        ));
    }
    if !region.touches_v() {
        // Only intermediate curves change: keep the path over the same pair
        // with the fewest crossings of the two arcs.
        let set = enumerate_efficient_geodesics(&path.ladder, 3).map_err(|e| {
            SurgeryError::Precondition {
                reason: e.to_string(),
            }
        })?;
        let best = set
            .paths
            .into_iter()
            .map(|p| {
                let c = extended_graph(g, &p, k)
                    .map(|(_, c)| c)
                    .unwrap_or(usize::MAX);
                (c, p)
            })
            .min_by_key(|(c, _)| *c)
            .filter(|(c, _)| *c <= before)
            .ok_or_else(|| SurgeryError::Precondition {
                reason: "no path over the same pair".into(),
            })?;
        return Ok(SimultaneousSurgery {
            region: region.clone(),
            surgered_v: false,
            w_arc: None,
            kind: None,
            i_before: n,
            i_after: n,
            arc_crossings_before: before,
            arc_crossings_after: Some(best.0),
            path: best.1,
        });
    }
    let label = arc_under(&graph, region, k, n).ok_or_else(|| {
        region_invalid("the lower corners of the region do not bound a single reference arc")
    })?;
    let arc = SurgeryArc::beside_w_arc(n, label, WSide::Top);
    let genus = complex.genus();
    for kind in classify_surgery(&path.ladder, arc) {
        for curve in surger(&path.ladder, arc, kind)? {
            let Some(l) = curve.ladder else { continue };
            let same_surface = SurfaceComplex::new(&l).is_ok_and(|c| c.genus() == genus);
            if !same_surface || l.n() >= n {
                continue;
            }
            let Ok(Some(new_path)) = distance_three_witness(&l) else {
                continue;
            };
            return Ok(SimultaneousSurgery {
                region: region.clone(),
                surgered_v: true,
                w_arc: Some(label),
                kind: Some(kind),
                i_before: n,
                i_after: l.n(),
                arc_crossings_before: before,
                arc_crossings_after: None,
                path: new_path,
            });
        }
    }
    Err(SurgeryError::Precondition {
        reason: format!("no surgery of v beside w-arc {label} leaves a path of length 3"),
    })
}

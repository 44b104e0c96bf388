//! Intersection sequences over reference arcs, their sawtooth normal form,
//! dot graphs, extended and stacked dot graphs, and the regions between runs.

use crate::curves::{ReferenceArc, TransverseCurve};
use crate::geodesics::{GeodesicSet, Tail};
use crate::surface::RibbonGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DotGraphError {
    #[error("NOT_CONSECUTIVE: reference arcs {first} and {second} are not consecutive")]
    NotConsecutive { first: usize, second: usize },
    #[error("MISALIGNED: {0}")]
    Misaligned(String),
    #[error("UNSUPPORTED: {0}")]
    Unsupported(String),
}

impl DotGraphError {
    pub fn code(&self) -> &'static str {
        match self {
            DotGraphError::NotConsecutive { .. } => "NOT_CONSECUTIVE",
            DotGraphError::Misaligned(_) => "MISALIGNED",
            DotGraphError::Unsupported(_) => "UNSUPPORTED",
        }
    }
}

/// Curve indices met along a reference arc (or two joined arcs), in order.
/// Entry `j` is a crossing with `v_j`; `0` is a crossing with `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionSequence {
    pub arc: usize,
    /// The second arc of an extended sequence.
    pub next_arc: Option<usize>,
    pub entries: Vec<usize>,
    /// Index of each entry in the sequence as first built, before any
    /// reordering.
    pub provenance: Vec<usize>,
    /// Lengths of the two plain sequences joined into an extended one.
    pub parts: Option<(usize, usize)>,
}

impl IntersectionSequence {
    pub fn new(arc: usize, entries: Vec<usize>) -> Self {
        IntersectionSequence {
            arc,
            next_arc: None,
            provenance: (0..entries.len()).collect(),
            entries,
            parts: None,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_extended(&self) -> bool {
        self.parts.is_some()
    }
}

/// The sequence of `path = [v_1, ..., v_{d-2}]` along `arc`. Crossings of
/// each curve sit at evenly spaced positions along the parallel `w`-arc;
/// crossings of different curves at the same position are ordered by curve
/// index.
pub fn intersection_sequence(
    g: &RibbonGraph,
    path: &[TransverseCurve],
    arc: &ReferenceArc,
) -> IntersectionSequence {
    // (position numerator, denominator, curve index)
    let mut points: Vec<(usize, usize, usize)> = Vec::new();
    for (i, c) in path.iter().enumerate() {
        let count = arc.crossings(g, c);
        points.extend((0..count).map(|p| (2 * p + 1, 2 * count, i + 1)));
    }
    points.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)).then(a.2.cmp(&b.2)));
    IntersectionSequence::new(arc.index, points.into_iter().map(|p| p.2).collect())
}

/// `j_i < j_{i+1}` implies `j_{i+1} = j_i + 1`.
pub fn is_sawtooth(entries: &[usize]) -> bool {
    entries.windows(2).all(|w| w[0] >= w[1] || w[1] == w[0] + 1)
}

/// Position of the leftmost adjacent pair `a, b` with `b ≥ a + 2`.
fn leftmost_violation(entries: &[usize]) -> Option<usize> {
    entries.windows(2).position(|w| w[1] >= w[0] + 2)
}

/// Sawtooth normal form: adjacent entries differing by at least 2 are
/// swapped, always at the leftmost ascending such pair, until none remains.
pub fn sawtooth(seq: &IntersectionSequence) -> IntersectionSequence {
    let mut out = seq.clone();
    while let Some(i) = leftmost_violation(&out.entries) {
        out.entries.swap(i, i + 1);
        out.provenance.swap(i, i + 1);
    }
    out
}

/// `(0, σ_k, 0, σ_{k+1}, 0)` for consecutive arcs `k, k+1` of a ladder
/// with `n` arcs (arc `n` is followed by arc 1).
pub fn extend(
    sk: &IntersectionSequence,
    sk1: &IntersectionSequence,
    n: usize,
) -> Result<IntersectionSequence, DotGraphError> {
    if sk.is_extended() || sk1.is_extended() || sk1.arc != sk.arc % n + 1 {
        return Err(DotGraphError::NotConsecutive {
            first: sk.arc,
            second: sk1.arc,
        });
    }
    let mut entries = vec![0];
    entries.extend(&sk.entries);
    entries.push(0);
    entries.extend(&sk1.entries);
    entries.push(0);
    Ok(IntersectionSequence {
        arc: sk.arc,
        next_arc: Some(sk1.arc),
        provenance: (0..entries.len()).collect(),
        entries,
        parts: Some((sk.len(), sk1.len())),
    })
}

/// A maximal run of consecutive points rising with slope 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub bottom: usize,
    pub top: usize,
}

impl Run {
    /// Horizontal position of the run (or its slope-1 extension) at `height`.
    fn x_at(&self, height: usize) -> i64 {
        self.start as i64 + height as i64 - self.bottom as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotGraph {
    pub sequence: IntersectionSequence,
    pub points: Vec<(usize, usize)>,
    pub runs: Vec<Run>,
}

fn runs_of(entries: &[usize]) -> Vec<Run> {
    let mut runs = Vec::new();
    let mut start = 0;
    for x in 0..entries.len() {
        let continues = x + 1 < entries.len() && entries[x + 1] == entries[x] + 1;
        if !continues {
            runs.push(Run {
                start,
                end: x,
                bottom: entries[start],
                top: entries[x],
            });
            start = x + 1;
        }
    }
    runs
}

/// The dot graph of the sawtooth form of `seq`.
pub fn build_dot_graph(seq: &IntersectionSequence) -> DotGraph {
    let sequence = sawtooth(seq);
    let points = sequence.entries.iter().copied().enumerate().collect();
    let runs = runs_of(&sequence.entries);
    DotGraph {
        sequence,
        points,
        runs,
    }
}

impl DotGraph {
    pub fn height(&self) -> usize {
        self.sequence.entries.iter().copied().max().unwrap_or(0)
    }

    /// One row per height, highest first; `*` marks a point.
    pub fn to_text(&self) -> String {
        let width = self.points.len();
        let label = self.height().to_string().len();
        let mut out = String::new();
        for y in (0..=self.height()).rev() {
            let row: String = (0..width)
                .map(|x| {
                    if self.sequence.entries[x] == y {
                        '*'
                    } else {
                        '.'
                    }
                })
                .collect();
            out.push_str(&format!("{y:>label$} | {row}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "arc": self.sequence.arc,
            "next_arc": self.sequence.next_arc,
            "entries": self.sequence.entries,
            "points": self.points,
            "runs": self.runs,
            "regions": find_regions(self),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegionKind {
    Box,
    Hex1,
    Hex2,
    #[serde(rename = "DEGENERATE_00")]
    Degenerate00,
}

type Point = (i64, i64);

/// A region between two runs, closed by horizontal edges (and, for
/// hexagons, by the slope-1 extension of the shorter run).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Region {
    pub kind: RegionKind,
    pub left: Run,
    pub right: Run,
    pub bottom: usize,
    pub top: usize,
    /// Corners in counter-clockwise order starting at the lower left.
    pub vertices: Vec<Point>,
    pub horizontal_edges: Vec<(Point, Point)>,
    pub empty: bool,
    pub unpierced: bool,
    /// A hexagon with an acute exterior angle.
    pub acute: bool,
}

impl Region {
    /// Empty, unpierced and not an acute hexagon.
    pub fn admissible(&self) -> bool {
        self.empty && self.unpierced && !self.acute
    }

    /// The lower corners lie on `v`.
    pub fn touches_v(&self) -> bool {
        self.bottom == 0
    }
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Strictly inside a convex polygon given counter-clockwise.
fn strictly_inside(poly: &[Point], p: Point) -> bool {
    (0..poly.len()).all(|i| cross(poly[i], poly[(i + 1) % poly.len()], p) > 0)
}

fn on_open_horizontal(edge: &(Point, Point), p: Point) -> bool {
    let ((x0, y), (x1, _)) = *edge;
    p.1 == y && p.0 > x0.min(x1) && p.0 < x0.max(x1)
}

/// Corners of the region bounded by `l` and `r` between `bottom` and `top`.
fn closure(l: &Run, r: &Run, bottom: usize, top: usize) -> Vec<Point> {
    let (b, t) = (bottom as i64, top as i64);
    let mut poly = vec![(l.x_at(bottom), b), (r.x_at(bottom), b)];
    // Right side, with a corner where the run meets its extension.
    if r.bottom > bottom {
        poly.push((r.start as i64, r.bottom as i64));
    }
    if r.top < top {
        poly.push((r.end as i64, r.top as i64));
    }
    poly.push((r.x_at(top), t));
    poly.push((l.x_at(top), t));
    if l.top < top {
        poly.push((l.end as i64, l.top as i64));
    }
    if l.bottom > bottom {
        poly.push((l.start as i64, l.bottom as i64));
    }
    poly.dedup();
    poly
}

fn region_between(g: &DotGraph, l: &Run, r: &Run) -> Option<Region> {
    if l.bottom == l.top || r.bottom == r.top || l.end >= r.start {
        return None;
    }
    let (kind, bottom, top, acute) = if l.bottom == r.bottom && l.top == r.top {
        (RegionKind::Box, l.bottom, l.top, false)
    } else if l.bottom == r.bottom {
        (RegionKind::Hex1, l.bottom, l.top.max(r.top), r.top > l.top)
    } else if l.top == r.top {
        (
            RegionKind::Hex2,
            l.bottom.min(r.bottom),
            l.top,
            l.bottom < r.bottom,
        )
    } else {
        return None;
    };
    // The closure must stay to the left of the right run at every height.
    if l.x_at(bottom) >= r.x_at(bottom) {
        return None;
    }
    let vertices = closure(l, r, bottom, top);
    let (b, t) = (bottom as i64, top as i64);
    let horizontal_edges = vec![
        ((l.x_at(bottom), b), (r.x_at(bottom), b)),
        ((l.x_at(top), t), (r.x_at(top), t)),
    ];
    let pts = g.points.iter().map(|&(x, y)| (x as i64, y as i64));
    let empty = !pts.clone().any(|p| strictly_inside(&vertices, p));
    let unpierced = !pts
        .clone()
        .any(|p| horizontal_edges.iter().any(|e| on_open_horizontal(e, p)));
    Some(Region {
        kind,
        left: *l,
        right: *r,
        bottom,
        top,
        vertices,
        horizontal_edges,
        empty,
        unpierced,
        acute,
    })
}

fn degenerate_region(g: &DotGraph) -> Option<Region> {
    let (a, b) = g.sequence.parts?;
    if a != 0 && b != 0 {
        return None;
    }
    let e = &g.sequence.entries;
    let x = (0..e.len().saturating_sub(1)).find(|&x| e[x] == 0 && e[x + 1] == 0)?;
    let run = |x: usize| Run {
        start: x,
        end: x,
        bottom: 0,
        top: 0,
    };
    let (p, q) = ((x as i64, 0), (x as i64 + 1, 0));
    Some(Region {
        kind: RegionKind::Degenerate00,
        left: run(x),
        right: run(x + 1),
        bottom: 0,
        top: 0,
        vertices: vec![p, q],
        horizontal_edges: vec![(p, q)],
        empty: true,
        unpierced: true,
        acute: false,
    })
}

fn regions_in_order(g: &DotGraph, pairs: &[(usize, usize)]) -> Vec<Region> {
    let found: BTreeSet<Region> = pairs
        .iter()
        .filter_map(|&(i, j)| region_between(g, &g.runs[i], &g.runs[j]))
        .chain(degenerate_region(g))
        .collect();
    found.into_iter().collect()
}

fn run_pairs(g: &DotGraph) -> Vec<(usize, usize)> {
    let r = g.runs.len();
    (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .collect()
}

/// Every box, hexagon and degenerate region of the graph, in a fixed order.
pub fn find_regions(g: &DotGraph) -> Vec<Region> {
    regions_in_order(g, &run_pairs(g))
}

/// Extended dot graphs over the same pair of arcs, one per geodesic, with
/// the crossings of `v` placed `spacing` apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackedDotGraph {
    pub arcs: (usize, usize),
    pub layers: Vec<DotGraph>,
    /// Largest curve index met along the joined arcs.
    pub r: usize,
    pub spacing: usize,
}

pub fn stack(layers: Vec<DotGraph>) -> Result<StackedDotGraph, DotGraphError> {
    let first = layers
        .first()
        .ok_or_else(|| DotGraphError::Misaligned("a stack needs at least one layer".into()))?;
    let arcs = match first.sequence.next_arc {
        Some(next) => (first.sequence.arc, next),
        None => {
            return Err(DotGraphError::Misaligned(
                "layers must be extended dot graphs".into(),
            ))
        }
    };
    for (i, layer) in layers.iter().enumerate() {
        if (layer.sequence.arc, layer.sequence.next_arc) != (arcs.0, Some(arcs.1)) {
            return Err(DotGraphError::Misaligned(format!(
                "layer {i} lies over different arcs"
            )));
        }
    }
    let r = layers.iter().map(DotGraph::height).max().unwrap_or(0);
    let longest = layers
        .iter()
        .filter_map(|l| l.sequence.parts)
        .map(|(a, b)| a.max(b))
        .max()
        .unwrap_or(0);
    Ok(StackedDotGraph {
        arcs,
        layers,
        r,
        spacing: r.max(longest) + 1,
    })
}

impl StackedDotGraph {
    /// Point positions with the crossings of `v` at `0`, `spacing` and
    /// `2 * spacing` in every layer.
    pub fn aligned_points(&self, layer: usize) -> Vec<(usize, usize)> {
        let l = &self.layers[layer];
        let (a, b) = l.sequence.parts.expect("stacked layers are extended");
        let s = self.spacing;
        let column = |o: usize| match o {
            o if o <= a => o,
            o if o <= a + 1 + b => s + o - a - 1,
            _ => 2 * s,
        };
        l.sequence
            .provenance
            .iter()
            .zip(&l.sequence.entries)
            .map(|(&o, &y)| (column(o), y))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let layers: Vec<serde_json::Value> = (0..self.layers.len())
            .map(|i| {
                serde_json::json!({
                    "entries": self.layers[i].sequence.entries,
                    "points": self.aligned_points(i),
                })
            })
            .collect();
        serde_json::json!({
            "arcs": [self.arcs.0, self.arcs.1],
            "r": self.r,
            "spacing": self.spacing,
            "layers": layers,
        })
    }
}

/// A region found in one layer of a stack.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRegion {
    pub layer: usize,
    pub region: Region,
}

fn region_key(r: &Region) -> (RegionKind, usize, usize, usize, usize) {
    (r.kind, r.bottom, r.top, r.left.start, r.right.start)
}

/// The admissible regions of every layer when each layer has one; empty
/// otherwise. With `aligned`, only regions present at the same place in
/// every layer count.
pub fn common_regions(stack: &StackedDotGraph, aligned: bool) -> Vec<LayerRegion> {
    let per_layer: Vec<Vec<Region>> = stack
        .layers
        .iter()
        .map(|l| {
            find_regions(l)
                .into_iter()
                .filter(Region::admissible)
                .collect()
        })
        .collect();
    let per_layer: Vec<Vec<Region>> = if aligned {
        let shared: BTreeSet<_> = per_layer
            .iter()
            .map(|rs| rs.iter().map(region_key).collect::<BTreeSet<_>>())
            .reduce(|a, b| a.intersection(&b).copied().collect())
            .unwrap_or_default();
        per_layer
            .into_iter()
            .map(|rs| {
                rs.into_iter()
                    .filter(|r| shared.contains(&region_key(r)))
                    .collect()
            })
            .collect()
    } else {
        per_layer
    };
    if per_layer.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    per_layer
        .into_iter()
        .enumerate()
        .flat_map(|(layer, rs)| {
            rs.into_iter()
                .map(move |region| LayerRegion { layer, region })
        })
        .collect()
}

/// The intermediate curves `v_1, ..., v_{d-2}` of a distance-3 geodesic,
/// which all live in the complex of the endpoints.
fn plain_path(path: &crate::geodesics::Geodesic) -> Result<Vec<TransverseCurve>, DotGraphError> {
    match path.tail {
        Tail::Last(_) => Ok(vec![path.first.clone()]),
        Tail::Inner(_) => Err(DotGraphError::Unsupported(
            "dot graphs are built for geodesics of length 3".into(),
        )),
    }
}

/// `Dot_k(v, w)`: the stacked extended dot graph over arcs `k` and `k + 1`
/// for every geodesic of the set.
pub fn stacked_dot_graph(
    g: &RibbonGraph,
    arcs: &[ReferenceArc],
    set: &GeodesicSet,
    k: usize,
) -> Result<StackedDotGraph, DotGraphError> {
    let n = g.n();
    let arc = |label: usize| &arcs[label - 1];
    let next = k % n + 1;
    let layers = set
        .paths
        .iter()
        .map(|p| {
            let path = plain_path(p)?;
            let a = intersection_sequence(g, &path, arc(k));
            let b = intersection_sequence(g, &path, arc(next));
            Ok(build_dot_graph(&extend(&a, &b, n)?))
        })
        .collect::<Result<Vec<_>, DotGraphError>>()?;
    stack(layers)
}

/// Sawtooth dot graphs of the plain sequences over each listed arc.
pub fn dot_graphs_over(
    g: &RibbonGraph,
    arcs: &[ReferenceArc],
    path: &[TransverseCurve],
    labels: &[usize],
) -> Vec<DotGraph> {
    labels
        .iter()
        .map(|&k| build_dot_graph(&intersection_sequence(g, path, &arcs[k - 1])))
        .collect()
}

/// Equal entries, or equal after reversing one of them.
pub fn same_or_reversed(a: &DotGraph, b: &DotGraph) -> bool {
    let (x, y) = (&a.sequence.entries, &b.sequence.entries);
    let reversed = IntersectionSequence::new(0, y.iter().rev().copied().collect());
    x == y || sawtooth(&reversed).entries == *x
}

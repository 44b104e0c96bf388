//! Simple closed curves transverse to `v ∪ w`, stored as normal curves over
//! the ribbon graph: a point count on every edge and a non-crossing chord
//! matching inside every face.

use crate::ladder::{Crossing, Ladder};
use crate::surface::{sigma, CurveName, Hand, RibbonGraph, SurfaceComplex, UnionFind};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvesError {
    #[error(
        "UNSUPPORTED_DECOMPOSITION: a face has {sides} sides; reference arcs need 4- and 6-gons"
    )]
    UnsupportedDecomposition { sides: usize },
    #[error("INVALID_CURVE: {0}")]
    InvalidCurve(String),
}

impl CurvesError {
    pub fn code(&self) -> &'static str {
        match self {
            CurvesError::UnsupportedDecomposition { .. } => "UNSUPPORTED_DECOMPOSITION",
            CurvesError::InvalidCurve(_) => "INVALID_CURVE",
        }
    }
}

/// Start offset of every side of a face in its boundary point sequence.
fn side_offsets(g: &RibbonGraph, counts: &[usize], f: usize) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(g.face_len(f));
    let mut total = 0;
    for &d in &g.faces()[f] {
        offsets.push(total);
        total += counts[g.dart_edge(d)];
    }
    (offsets, total)
}

fn locate(offsets: &[usize], idx: usize) -> (usize, usize) {
    let s = offsets.partition_point(|&o| o <= idx) - 1;
    (s, idx - offsets[s])
}

/// Position along the edge of the `k`-th point met on the side of dart `d`.
fn edge_position(g: &RibbonGraph, counts: &[usize], d: usize, k: usize) -> usize {
    if g.dart_starts(d) {
        k
    } else {
        counts[g.dart_edge(d)] - 1 - k
    }
}

/// Pairs of point indices.
pub type Matching = Vec<(usize, usize)>;

/// All non-crossing perfect matchings of the points, never pairing two
/// points carrying the same label.
pub fn face_matchings(labels: &[usize]) -> Vec<Matching> {
    fn rec(
        labels: &[usize],
        lo: usize,
        hi: usize,
        memo: &mut HashMap<(usize, usize), Vec<Matching>>,
    ) -> Vec<Matching> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        if (hi - lo) % 2 == 1 {
            return Vec::new();
        }
        if let Some(m) = memo.get(&(lo, hi)) {
            return m.clone();
        }
        let mut out = Vec::new();
        for j in (lo + 1..hi).step_by(2) {
            if labels[j] == labels[lo] {
                continue;
            }
            let inner = rec(labels, lo + 1, j, memo);
            if inner.is_empty() {
                continue;
            }
            let outer = rec(labels, j + 1, hi, memo);
            for a in &inner {
                for b in &outer {
                    let mut m = Vec::with_capacity(a.len() + b.len() + 1);
                    m.push((lo, j));
                    m.extend_from_slice(a);
                    m.extend_from_slice(b);
                    m.sort_unstable();
                    out.push(m);
                }
            }
        }
        out.sort();
        memo.insert((lo, hi), out.clone());
        out
    }
    rec(labels, 0, labels.len(), &mut HashMap::new())
}

fn side_labels(g: &RibbonGraph, counts: &[usize], f: usize) -> Vec<usize> {
    g.faces()[f]
        .iter()
        .enumerate()
        .flat_map(|(s, &d)| std::iter::repeat_n(s, counts[g.dart_edge(d)]))
        .collect()
}

/// One passage of a curve through a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub face: usize,
    pub entry_edge: usize,
    pub entry_slot: usize,
    pub exit_edge: usize,
    pub exit_slot: usize,
}

/// A multicurve in normal position with respect to `v ∪ w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransverseCurve {
    counts: Vec<usize>,
    chords: Vec<Vec<(usize, usize)>>,
}

impl TransverseCurve {
    /// Validates counts and per-face chords (pairs of boundary point indices).
    pub fn new(
        g: &RibbonGraph,
        counts: Vec<usize>,
        chords: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self, CurvesError> {
        if counts.len() != g.edge_count() || chords.len() != g.face_count() {
            return Err(CurvesError::InvalidCurve("dimension mismatch".into()));
        }
        let mut normalized = Vec::with_capacity(chords.len());
        for (f, fc) in chords.into_iter().enumerate() {
            let labels = side_labels(g, &counts, f);
            let mut seen = vec![false; labels.len()];
            let mut fc: Vec<(usize, usize)> =
                fc.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
            fc.sort_unstable();
            for &(a, b) in &fc {
                if b >= labels.len() || seen[a] || seen[b] || labels[a] == labels[b] {
                    return Err(CurvesError::InvalidCurve(format!(
                        "bad chord ({a}, {b}) in face {f}"
                    )));
                }
                seen[a] = true;
                seen[b] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(CurvesError::InvalidCurve(format!(
                    "unmatched point in face {f}"
                )));
            }
            for (&(a, b), &(c, d)) in fc.iter().tuple_combinations() {
                if (a < c && c < b) != (a < d && d < b) {
                    return Err(CurvesError::InvalidCurve(format!(
                        "crossing chords in face {f}"
                    )));
                }
            }
            normalized.push(fc);
        }
        Ok(TransverseCurve {
            counts,
            chords: normalized,
        })
    }

    /// The normal curve with the given edge counts when every face admits
    /// exactly one chord matching.
    pub fn from_counts(g: &RibbonGraph, counts: Vec<usize>) -> Result<Self, CurvesError> {
        let mut chords = Vec::new();
        for f in 0..g.face_count() {
            let mut ms = face_matchings(&side_labels(g, &counts, f));
            if ms.len() != 1 {
                return Err(CurvesError::InvalidCurve(format!(
                    "face {f} admits {} chord matchings",
                    ms.len()
                )));
            }
            chords.push(ms.pop().unwrap_or_default());
        }
        Self::new(g, counts, chords)
    }

    /// Push-off of `v` or `w` to one side.
    pub fn pushoff(g: &RibbonGraph, curve: CurveName, hand: Hand) -> Self {
        let on_side = |d: usize| {
            g.edge_curve(g.dart_edge(d)) == curve && g.dart_starts(d) == (hand == Hand::Right)
        };
        let mut counts = vec![0; g.edge_count()];
        for cycle in g.faces() {
            let len = cycle.len();
            for (s, &d) in cycle.iter().enumerate() {
                if g.edge_curve(g.dart_edge(d)) == curve {
                    continue;
                }
                let c = on_side(cycle[(s + len - 1) % len]) as usize
                    + on_side(cycle[(s + 1) % len]) as usize;
                counts[g.dart_edge(d)] = counts[g.dart_edge(d)].max(c);
            }
        }
        let chords = (0..g.face_count())
            .map(|f| {
                let cycle = &g.faces()[f];
                let len = cycle.len();
                let (offsets, _) = side_offsets(g, &counts, f);
                (0..len)
                    .filter(|&t| on_side(cycle[t]))
                    .map(|t| {
                        let before = (t + len - 1) % len;
                        let after = (t + 1) % len;
                        let last = offsets[before] + counts[g.dart_edge(cycle[before])] - 1;
                        (last, offsets[after])
                    })
                    .collect()
            })
            .collect();
        Self::new(g, counts, chords).expect("push-off is a normal curve")
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn chords(&self, face: usize) -> &[(usize, usize)] {
        &self.chords[face]
    }

    pub fn total_crossings(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn crossings_with(&self, g: &RibbonGraph, curve: CurveName) -> usize {
        (0..g.edge_count())
            .filter(|&e| g.edge_curve(e) == curve)
            .map(|e| self.counts[e])
            .sum()
    }

    fn partners(&self, g: &RibbonGraph) -> Vec<Vec<usize>> {
        (0..g.face_count())
            .map(|f| {
                let (_, total) = side_offsets(g, &self.counts, f);
                let mut p = vec![0; total];
                for &(a, b) in &self.chords[f] {
                    p[a] = b;
                    p[b] = a;
                }
                p
            })
            .collect()
    }

    /// Components as cyclic segment lists, each starting at its smallest
    /// edge point and entering the face on the right of that edge.
    pub fn trace(&self, g: &RibbonGraph) -> Vec<Vec<Segment>> {
        self.trace_darts(g)
            .into_iter()
            .map(|c| c.into_iter().map(|(s, _)| s).collect())
            .collect()
    }

    /// Like [`Self::trace`], pairing each segment with its exit dart.
    fn trace_darts(&self, g: &RibbonGraph) -> Vec<Vec<(Segment, usize)>> {
        let partners = self.partners(g);
        let offsets: Vec<Vec<usize>> = (0..g.face_count())
            .map(|f| side_offsets(g, &self.counts, f).0)
            .collect();
        let base: Vec<usize> = self
            .counts
            .iter()
            .scan(0, |acc, &c| {
                let b = *acc;
                *acc += c;
                Some(b)
            })
            .collect();
        let mut visited = vec![false; self.total_crossings()];
        let mut out = Vec::new();
        for e0 in 0..g.edge_count() {
            for p0 in 0..self.counts[e0] {
                if visited[base[e0] + p0] {
                    continue;
                }
                let mut comp = Vec::new();
                let (mut e, mut p, mut d) = (e0, p0, g.edge_start(e0));
                loop {
                    visited[base[e] + p] = true;
                    let f = g.face_of_dart(d);
                    let s = g.slot_in_face(d);
                    let k = edge_position(g, &self.counts, d, p);
                    let j = partners[f][offsets[f][s] + k];
                    let (s2, k2) = locate(&offsets[f], j);
                    let d2 = g.faces()[f][s2];
                    let e2 = g.dart_edge(d2);
                    let p2 = edge_position(g, &self.counts, d2, k2);
                    comp.push((
                        Segment {
                            face: f,
                            entry_edge: e,
                            entry_slot: p,
                            exit_edge: e2,
                            exit_slot: p2,
                        },
                        d2,
                    ));
                    e = e2;
                    p = p2;
                    d = g.alpha(d2);
                    if e == e0 && p == p0 {
                        break;
                    }
                }
                out.push(comp);
            }
        }
        out
    }

    pub fn component_count(&self, g: &RibbonGraph) -> usize {
        self.trace(g).len()
    }

    /// A single nonempty component.
    pub fn is_connected(&self, g: &RibbonGraph) -> bool {
        self.total_crossings() > 0 && self.component_count(g) == 1
    }

    /// True when the mod 2 crossing cochain is not a coboundary, i.e. the
    /// curve is homologically nontrivial.
    pub fn is_nonseparating(&self, g: &RibbonGraph) -> bool {
        let n = g.n();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for e in 0..g.edge_count() {
            let (a, b) = (g.edge_start(e) / 4, g.edge_end(e) / 4);
            let x = self.counts[e] % 2;
            adj[a].push((b, x));
            adj[b].push((a, x));
        }
        let mut label = vec![usize::MAX; n];
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = 0;
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                for &(b, x) in &adj[a] {
                    let want = label[a] ^ x;
                    if label[b] == usize::MAX {
                        label[b] = want;
                        stack.push(b);
                    } else if label[b] != want {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Essential: nonseparating, or separating with no disc on either side.
    pub fn is_essential(&self, complex: &SurfaceComplex) -> bool {
        let g = complex.graph();
        if self.total_crossings() == 0 {
            return false;
        }
        if self.is_nonseparating(g) {
            return true;
        }
        complement(complex, &[CurveRef::Curve(self)])
            .components
            .iter()
            .all(|c| c.kind != RegionKind::Disc)
    }

    /// Ladder of this curve (as the new `v`) with `target` (as `w`). The
    /// curve must avoid the other curve of the complex.
    pub fn ladder_with(&self, g: &RibbonGraph, target: CurveName) -> Option<Ladder> {
        let other = match target {
            CurveName::V => CurveName::W,
            CurveName::W => CurveName::V,
        };
        if self.crossings_with(g, other) != 0 || !self.is_connected(g) {
            return None;
        }
        let mut edges: Vec<usize> = (0..g.edge_count())
            .filter(|&e| g.edge_curve(e) == target)
            .collect();
        edges.sort_by_key(|&e| g.edge_label(e));
        let mut id = vec![Vec::new(); g.edge_count()];
        let mut w_order = Vec::new();
        for &e in &edges {
            for _ in 0..self.counts[e] {
                id[e].push(w_order.len());
                w_order.push(w_order.len());
            }
        }
        let comp = self.trace_darts(g).pop()?;
        let route: Vec<Crossing> = comp
            .iter()
            .filter(|(s, _)| g.edge_curve(s.exit_edge) == target)
            .map(|(s, d)| Crossing {
                column: id[s.exit_edge][s.exit_slot],
                up: g.dart_starts(*d),
            })
            .collect();
        Ladder::from_route_ordered(&route, &w_order).ok()
    }

    /// Segment records of every component, for reports.
    pub fn to_json(&self, g: &RibbonGraph) -> serde_json::Value {
        let comps: Vec<Vec<[usize; 5]>> = self
            .trace(g)
            .iter()
            .map(|c| {
                c.iter()
                    .map(|s| [s.face, s.entry_edge, s.entry_slot, s.exit_edge, s.exit_slot])
                    .collect()
            })
            .collect();
        serde_json::json!(comps)
    }
}

/// Choice of reference arcs: one arc in the top face of every `w`-arc,
/// parallel to it and joining the two `v`-sides at its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceArc {
    pub index: usize,
    pub face: usize,
    /// Labels of the two `v`-sides joined, in face order.
    pub v_sides: (usize, usize),
}

impl ReferenceArc {
    /// Crossings of a curve with this arc: the arc is parallel to `w^k`,
    /// so it meets exactly the chords ending on that side.
    pub fn crossings(&self, g: &RibbonGraph, c: &TransverseCurve) -> usize {
        c.counts()[g.w_edge(self.index)]
    }
}

fn arcs_of(g: &RibbonGraph) -> Vec<ReferenceArc> {
    (1..=g.n())
        .map(|k| {
            let e = g.w_edge(k);
            let d = g.edge_end(e);
            let f = g.face_of_dart(d);
            let cycle = &g.faces()[f];
            let len = cycle.len();
            let s = g.slot_in_face(d);
            let lab = |t: usize| g.edge_label(g.dart_edge(cycle[t]));
            ReferenceArc {
                index: k,
                face: f,
                v_sides: (lab((s + len - 1) % len), lab((s + 1) % len)),
            }
        })
        .collect()
}

pub fn reference_arcs(complex: &SurfaceComplex) -> Result<Vec<ReferenceArc>, CurvesError> {
    let dec = complex.decomposition();
    if !dec.only_four_and_six() {
        return Err(CurvesError::UnsupportedDecomposition {
            sides: dec.max_sides(),
        });
    }
    Ok(arcs_of(complex.graph()))
}

/// Every essential simple closed curve disjoint from `base`, not isotopic to
/// it, meeting each reference arc (one parallel to every side of the other
/// curve) at most `per_arc_bound` times. Ordered by total crossings, then
/// count vector, then chord matching.
pub fn enumerate_disjoint_curves(
    complex: &SurfaceComplex,
    base: CurveName,
    per_arc_bound: usize,
) -> Vec<TransverseCurve> {
    let mut out = Vec::new();
    for_each_disjoint_curve(complex, base, per_arc_bound, |c| {
        out.push(c);
        true
    });
    out.sort_by(|a, b| {
        (a.total_crossings(), &a.counts, &a.chords).cmp(&(
            b.total_crossings(),
            &b.counts,
            &b.chords,
        ))
    });
    out
}

/// Streams the curves of [`enumerate_disjoint_curves`] in search order; the
/// callback returns false to stop early.
pub fn for_each_disjoint_curve<F: FnMut(TransverseCurve) -> bool>(
    complex: &SurfaceComplex,
    base: CurveName,
    per_arc_bound: usize,
    mut emit: F,
) {
    let g = complex.graph();
    if per_arc_bound == 0 {
        return;
    }
    let vars: Vec<usize> = (0..g.edge_count())
        .filter(|&e| g.edge_curve(e) != base)
        .collect();
    let mut faces_of_edge: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for f in 0..g.face_count() {
        for &d in &g.faces()[f] {
            let e = g.dart_edge(d);
            if !faces_of_edge[e].contains(&f) {
                faces_of_edge[e].push(f);
            }
        }
    }
    // Greedy variable order: next edge shares the most faces with the
    // edges already placed, so faces complete early.
    let mut order = Vec::with_capacity(vars.len());
    let mut placed = vec![false; g.edge_count()];
    let mut touched = vec![0usize; g.face_count()];
    while order.len() < vars.len() {
        let &e = vars
            .iter()
            .filter(|&&e| !placed[e])
            .max_by_key(|&&e| {
                (
                    faces_of_edge[e].iter().map(|&f| touched[f]).sum::<usize>(),
                    std::cmp::Reverse(e),
                )
            })
            .expect("unplaced edge");
        placed[e] = true;
        for &f in &faces_of_edge[e] {
            touched[f] += 1;
        }
        order.push(e);
    }
    let mut completes: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for f in 0..g.face_count() {
        let last = g.faces()[f]
            .iter()
            .filter_map(|&d| order.iter().position(|&e| e == g.dart_edge(d)))
            .max();
        if let Some(i) = last {
            completes[i].push(f);
        }
    }
    let pushoffs = [
        TransverseCurve::pushoff(g, base, Hand::Left),
        TransverseCurve::pushoff(g, base, Hand::Right),
    ];
    let mut search = Search {
        complex,
        g,
        order,
        completes,
        bound: per_arc_bound,
        counts: vec![0; g.edge_count()],
        cache: HashMap::new(),
        pushoffs,
        stopped: false,
    };
    search.run(0, &mut emit);
}

type MatchingCache = HashMap<(usize, Vec<usize>), Vec<Vec<(usize, usize)>>>;

struct Search<'a> {
    complex: &'a SurfaceComplex,
    g: &'a RibbonGraph,
    order: Vec<usize>,
    completes: Vec<Vec<usize>>,
    bound: usize,
    counts: Vec<usize>,
    cache: MatchingCache,
    pushoffs: [TransverseCurve; 2],
    stopped: bool,
}

impl Search<'_> {
    fn matchings(&mut self, f: usize) -> &Vec<Vec<(usize, usize)>> {
        let key: Vec<usize> = self.g.faces()[f]
            .iter()
            .map(|&d| self.counts[self.g.dart_edge(d)])
            .collect();
        let g = self.g;
        let counts = &self.counts;
        self.cache
            .entry((f, key))
            .or_insert_with(|| face_matchings(&side_labels(g, counts, f)))
    }

    fn run<F: FnMut(TransverseCurve) -> bool>(&mut self, i: usize, emit: &mut F) {
        if self.stopped {
            return;
        }
        if i == self.order.len() {
            self.finish(emit);
            return;
        }
        let e = self.order[i];
        for x in 0..=self.bound {
            self.counts[e] = x;
            let faces = self.completes[i].clone();
            if faces.iter().all(|&f| !self.matchings(f).is_empty()) {
                self.run(i + 1, emit);
            }
            if self.stopped {
                break;
            }
        }
        self.counts[e] = 0;
    }

    fn finish<F: FnMut(TransverseCurve) -> bool>(&mut self, emit: &mut F) {
        if self.counts.iter().all(|&x| x == 0) {
            return;
        }
        let per_face: Vec<Vec<Vec<(usize, usize)>>> = (0..self.g.face_count())
            .map(|f| self.matchings(f).clone())
            .collect();
        for choice in per_face
            .iter()
            .map(|ms| ms.iter())
            .multi_cartesian_product()
        {
            let curve = TransverseCurve {
                counts: self.counts.clone(),
                chords: choice.into_iter().cloned().collect(),
            };
            if !curve.is_connected(self.g)
                || self.pushoffs.contains(&curve)
                || !curve.is_essential(self.complex)
            {
                continue;
            }
            if !emit(curve) {
                self.stopped = true;
                return;
            }
        }
    }
}

/// Two curves drawn together: the per-edge interleaving of their points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePair {
    pub curves: [TransverseCurve; 2],
    /// For every edge, the owner (0 or 1) of each point in edge direction.
    order: Vec<Vec<u8>>,
}

struct Endpoint {
    owner: u8,
    chord: usize,
    dart: usize,
    edge_index: usize,
}

impl CurvePair {
    pub fn new(a: TransverseCurve, b: TransverseCurve) -> Self {
        let order = a
            .counts
            .iter()
            .zip(&b.counts)
            .map(|(&x, &y)| {
                std::iter::repeat_n(0, x)
                    .chain(std::iter::repeat_n(1, y))
                    .collect()
            })
            .collect();
        CurvePair {
            curves: [a, b],
            order,
        }
    }

    pub fn with_order(a: TransverseCurve, b: TransverseCurve, order: Vec<Vec<u8>>) -> Self {
        CurvePair {
            curves: [a, b],
            order,
        }
    }

    pub fn order(&self) -> &[Vec<u8>] {
        &self.order
    }

    /// Cyclic boundary sequence of chord endpoints of both curves in a face.
    fn boundary(&self, g: &RibbonGraph, f: usize) -> Vec<Endpoint> {
        let offs: Vec<Vec<usize>> = self
            .curves
            .iter()
            .map(|c| side_offsets(g, &c.counts, f).0)
            .collect();
        let chord_of: Vec<Vec<usize>> = self
            .curves
            .iter()
            .map(|c| {
                let (_, total) = side_offsets(g, &c.counts, f);
                let mut v = vec![0; total];
                for (i, &(a, b)) in c.chords[f].iter().enumerate() {
                    v[a] = i;
                    v[b] = i;
                }
                v
            })
            .collect();
        let mut out = Vec::new();
        for (s, &d) in g.faces()[f].iter().enumerate() {
            let e = g.dart_edge(d);
            let seq = &self.order[e];
            let idx: Vec<usize> = if g.dart_starts(d) {
                (0..seq.len()).collect()
            } else {
                (0..seq.len()).rev().collect()
            };
            for i in idx {
                let owner = seq[i];
                let local = seq[..i].iter().filter(|&&o| o == owner).count();
                let c = &self.curves[owner as usize];
                let k = edge_position(g, &c.counts, d, local);
                out.push(Endpoint {
                    owner,
                    chord: chord_of[owner as usize][offs[owner as usize][s] + k],
                    dart: d,
                    edge_index: i,
                });
            }
        }
        out
    }

    /// Crossing chord pairs `(chord of curve 0, chord of curve 1)` in a face.
    fn face_crossings(bd: &[Endpoint]) -> Vec<(usize, usize)> {
        let mut pos: BTreeMap<(u8, usize), Vec<usize>> = BTreeMap::new();
        for (i, p) in bd.iter().enumerate() {
            pos.entry((p.owner, p.chord)).or_default().push(i);
        }
        let mut out = Vec::new();
        for (&(o1, c1), p1) in pos.range((0, 0)..(1, 0)) {
            let _ = o1;
            let (a, b) = (p1[0], p1[1]);
            for (&(_, c2), p2) in pos.range((1, 0)..) {
                let inside = |x: usize| a < x && x < b;
                if inside(p2[0]) != inside(p2[1]) {
                    out.push((c1, c2));
                }
            }
        }
        out
    }

    pub fn crossings(&self, g: &RibbonGraph) -> usize {
        (0..g.face_count())
            .map(|f| Self::face_crossings(&self.boundary(g, f)).len())
            .sum()
    }

    /// Finds a bigon cut out between two chords crossing in some face and
    /// crossing again after running side by side through adjacent faces.
    /// Returns the edge positions to swap.
    fn find_bigon(&self, g: &RibbonGraph) -> Option<Vec<(usize, usize)>> {
        let boundaries: Vec<Vec<Endpoint>> =
            (0..g.face_count()).map(|f| self.boundary(g, f)).collect();
        for (f, bd) in boundaries.iter().enumerate() {
            let len = bd.len();
            for (ca, cb) in Self::face_crossings(bd) {
                for i in 0..len {
                    let j = (i + 1) % len;
                    let (p, q) = (&bd[i], &bd[j]);
                    let hit = |x: &Endpoint, o: u8, c: usize| x.owner == o && x.chord == c;
                    let pair = (hit(p, 0, ca) && hit(q, 1, cb)) || (hit(p, 1, cb) && hit(q, 0, ca));
                    if !pair || p.dart != q.dart {
                        continue;
                    }
                    if let Some(swaps) = self.follow_strip(g, &boundaries, f, i, j) {
                        return Some(swaps);
                    }
                }
            }
        }
        None
    }

    fn follow_strip(
        &self,
        g: &RibbonGraph,
        bds: &[Vec<Endpoint>],
        f0: usize,
        i0: usize,
        j0: usize,
    ) -> Option<Vec<(usize, usize)>> {
        let mut swaps = Vec::new();
        let (mut f, mut i, mut j) = (f0, i0, j0);
        let limit = self.order.iter().map(Vec::len).sum::<usize>() + 1;
        for _ in 0..limit {
            let (p, q) = (&bds[f][i], &bds[f][j]);
            let e = g.dart_edge(p.dart);
            let lo = p.edge_index.min(q.edge_index);
            if p.edge_index.abs_diff(q.edge_index) != 1 {
                return None;
            }
            swaps.push((e, lo));
            // Cross into the neighbouring face.
            let d2 = g.alpha(p.dart);
            let f2 = g.face_of_dart(d2);
            let bd2 = &bds[f2];
            let find = |owner: u8, idx: usize| {
                bd2.iter()
                    .position(|x| x.dart == d2 && x.owner == owner && x.edge_index == idx)
            };
            let a_in = find(p.owner, p.edge_index)?;
            let b_in = find(q.owner, q.edge_index)?;
            let other_end = |k: usize| {
                let x = &bd2[k];
                bd2.iter()
                    .enumerate()
                    .position(|(t, y)| t != k && y.owner == x.owner && y.chord == x.chord)
                    .expect("chord has two ends")
            };
            let (a_out, b_out) = (other_end(a_in), other_end(b_in));
            let (ca, cb) = if bd2[a_in].owner == 0 {
                (bd2[a_in].chord, bd2[b_in].chord)
            } else {
                (bd2[b_in].chord, bd2[a_in].chord)
            };
            if Self::face_crossings(bd2).contains(&(ca, cb)) {
                return Some(swaps);
            }
            let l2 = bd2.len();
            let adjacent = (a_out + 1) % l2 == b_out || (b_out + 1) % l2 == a_out;
            if !adjacent || bd2[a_out].dart != bd2[b_out].dart {
                return None;
            }
            f = f2;
            i = a_out;
            j = b_out;
        }
        None
    }

    /// Removes bigons one at a time until none is left.
    pub fn reduce_bigons(&self, g: &RibbonGraph) -> CurvePair {
        let mut cur = self.clone();
        while let Some(swaps) = cur.find_bigon(g) {
            for (e, lo) in swaps {
                cur.order[e].swap(lo, lo + 1);
            }
        }
        cur
    }
}

/// Geometric intersection number of two normal curves after bigon removal.
/// Curves on complementary sides (one avoiding `v`, the other avoiding `w`)
/// never share an edge and are already minimal.
pub fn intersection_number(g: &RibbonGraph, a: &TransverseCurve, b: &TransverseCurve) -> usize {
    CurvePair::new(a.clone(), b.clone())
        .reduce_bigons(g)
        .crossings(g)
}

pub fn reduce_bigons(g: &RibbonGraph, a: &TransverseCurve, b: &TransverseCurve) -> CurvePair {
    CurvePair::new(a.clone(), b.clone()).reduce_bigons(g)
}

/// Per-face sets of chord types, where a type is an unordered pair of face
/// slots. Used for fast disjointness between a curve avoiding `v` and a
/// curve avoiding `w`, which meet only where chord types interleave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordTypes {
    types: Vec<Vec<(usize, usize)>>,
}

impl ChordTypes {
    pub fn of(g: &RibbonGraph, c: &TransverseCurve) -> Self {
        let types = (0..g.face_count())
            .map(|f| {
                let (offsets, _) = side_offsets(g, &c.counts, f);
                c.chords[f]
                    .iter()
                    .map(|&(a, b)| {
                        let (s, t) = (locate(&offsets, a).0, locate(&offsets, b).0);
                        (s.min(t), s.max(t))
                    })
                    .sorted()
                    .dedup()
                    .collect()
            })
            .collect();
        ChordTypes { types }
    }

    /// Number of crossings with a curve whose chords use disjoint sides.
    pub fn crossings_with(
        &self,
        g: &RibbonGraph,
        a: &TransverseCurve,
        other: &ChordTypes,
        b: &TransverseCurve,
    ) -> usize {
        let mult = |c: &TransverseCurve, f: usize, t: (usize, usize)| {
            let (offsets, _) = side_offsets(g, &c.counts, f);
            c.chords[f]
                .iter()
                .filter(|&&(x, y)| {
                    let (s, u) = (locate(&offsets, x).0, locate(&offsets, y).0);
                    (s.min(u), s.max(u)) == t
                })
                .count()
        };
        let mut total = 0;
        for f in 0..self.types.len() {
            for &t1 in &self.types[f] {
                for &t2 in &other.types[f] {
                    if types_cross(t1, t2) {
                        total += mult(a, f, t1) * mult(b, f, t2);
                    }
                }
            }
        }
        total
    }

    pub fn disjoint_from(&self, other: &ChordTypes) -> bool {
        self.types
            .iter()
            .zip(&other.types)
            .all(|(x, y)| x.iter().all(|&t1| y.iter().all(|&t2| !types_cross(t1, t2))))
    }
}

fn types_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let inside = |x: usize| a < x && x < b;
    a != c && a != d && b != c && b != d && inside(c) != inside(d)
}

#[derive(Debug, Clone, Copy)]
pub enum CurveRef<'a> {
    V,
    W,
    Curve(&'a TransverseCurve),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Disc,
    Annulus,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementComponent {
    pub euler_characteristic: i64,
    pub boundary_count: usize,
    pub genus: usize,
    pub kind: RegionKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub components: Vec<ComplementComponent>,
    pub fills: bool,
}

/// Components of the surface cut along `v`, `w` and at most one transverse
/// curve, computed on the overlay ribbon graph.
pub fn complement(complex: &SurfaceComplex, cut: &[CurveRef]) -> ComplementReport {
    let g = complex.graph();
    let n = g.n();
    let cut_v = cut.iter().any(|c| matches!(c, CurveRef::V));
    let cut_w = cut.iter().any(|c| matches!(c, CurveRef::W));
    let curves: Vec<&TransverseCurve> = cut
        .iter()
        .filter_map(|c| match c {
            CurveRef::Curve(t) => Some(*t),
            _ => None,
        })
        .collect();
    assert!(
        curves.len() <= 1,
        "complement supports one transverse curve"
    );
    let zero = vec![0; g.edge_count()];
    let counts: &[usize] = curves.first().map_or(&zero, |c| &c.counts);

    // Overlay darts: graph vertex darts first, then four per edge point in
    // counterclockwise order back, right, forward, left.
    const BACK: usize = 0;
    const RIGHT: usize = 1;
    const FWD: usize = 2;
    const LEFT: usize = 3;
    let mut point_base = vec![0; g.edge_count()];
    let mut next = 4 * n;
    for e in 0..g.edge_count() {
        point_base[e] = next;
        next += 4 * counts[e];
    }
    let darts = next;
    let mut alpha = vec![usize::MAX; darts];
    let mut in_cut = vec![false; darts];
    let pd = |e: usize, p: usize, s: usize| point_base[e] + 4 * p + s;
    for (e, &count) in counts.iter().enumerate().take(g.edge_count()) {
        let edge_cut = match g.edge_curve(e) {
            CurveName::V => cut_v,
            CurveName::W => cut_w,
        };
        let mut prev = g.edge_start(e);
        for p in 0..count {
            let d = pd(e, p, BACK);
            alpha[prev] = d;
            alpha[d] = prev;
            in_cut[prev] = edge_cut;
            in_cut[d] = edge_cut;
            prev = pd(e, p, FWD);
        }
        let end = g.edge_end(e);
        alpha[prev] = end;
        alpha[end] = prev;
        in_cut[prev] = edge_cut;
        in_cut[end] = edge_cut;
    }
    if let Some(c) = curves.first() {
        for f in 0..g.face_count() {
            let (offsets, _) = side_offsets(g, counts, f);
            let to_dart = |idx: usize| {
                let (s, k) = locate(&offsets, idx);
                let d = g.faces()[f][s];
                let e = g.dart_edge(d);
                let side = if g.dart_starts(d) { RIGHT } else { LEFT };
                pd(e, edge_position(g, counts, d, k), side)
            };
            for &(a, b) in &c.chords[f] {
                let (x, y) = (to_dart(a), to_dart(b));
                alpha[x] = y;
                alpha[y] = x;
                in_cut[x] = true;
                in_cut[y] = true;
            }
        }
    }
    debug_assert!(alpha.iter().all(|&a| a != usize::MAX));

    let mut face_of = vec![usize::MAX; darts];
    let mut faces = 0;
    for d0 in 0..darts {
        if face_of[d0] != usize::MAX {
            continue;
        }
        let mut d = d0;
        loop {
            face_of[d] = faces;
            d = sigma(alpha[d]);
            if d == d0 {
                break;
            }
        }
        faces += 1;
    }
    let mut uf = UnionFind::new(faces);
    for d in 0..darts {
        if !in_cut[d] {
            uf.union(face_of[d], face_of[alpha[d]]);
        }
    }
    let mut chi: BTreeMap<usize, i64> = BTreeMap::new();
    for f in 0..faces {
        *chi.entry(uf.find(f)).or_default() += 1;
    }
    for d in 0..darts {
        if !in_cut[d] && d < alpha[d] {
            *chi.entry(uf.find(face_of[d])).or_default() -= 1;
        }
    }
    let vertex_cut = cut_v || cut_w;
    if !vertex_cut {
        for c in 0..n {
            *chi.entry(uf.find(face_of[4 * c])).or_default() += 1;
        }
    }
    // Boundary walks of the cut graph, using the rotation restricted to it.
    let restricted_sigma = |d: usize| {
        let mut x = sigma(d);
        while !in_cut[x] {
            x = sigma(x);
        }
        x
    };
    let mut seen = vec![false; darts];
    let mut boundaries: BTreeMap<usize, usize> = BTreeMap::new();
    for d0 in 0..darts {
        if !in_cut[d0] || seen[d0] {
            continue;
        }
        let comp = uf.find(face_of[d0]);
        let mut d = d0;
        loop {
            seen[d] = true;
            d = restricted_sigma(alpha[d]);
            if d == d0 {
                break;
            }
        }
        *boundaries.entry(comp).or_default() += 1;
    }
    let components: Vec<ComplementComponent> = chi
        .iter()
        .map(|(root, &x)| {
            let b = boundaries.get(root).copied().unwrap_or(0);
            let genus = ((2 - x - b as i64) / 2) as usize;
            let kind = match (x, b, genus) {
                (1, 1, 0) => RegionKind::Disc,
                (0, 2, 0) => RegionKind::Annulus,
                _ => RegionKind::Other,
            };
            ComplementComponent {
                euler_characteristic: x,
                boundary_count: b,
                genus,
                kind,
            }
        })
        .collect();
    let fills = components.iter().all(|c| c.kind == RegionKind::Disc);
    ComplementReport { components, fills }
}

/// A curve avoiding `v` together with its ladder against `w`, when the two
/// fill the surface.
pub fn filling_ladder(complex: &SurfaceComplex, c: &TransverseCurve) -> Option<Ladder> {
    let l = c.ladder_with(complex.graph(), CurveName::W)?;
    let k = SurfaceComplex::new(&l).ok()?;
    (k.genus() == complex.genus()).then_some(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_minimal_ladder;
    use crate::ladder::l10;
    use crate::surface::equivalent;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn complex(l: &Ladder) -> SurfaceComplex {
        SurfaceComplex::new(l).unwrap()
    }

    /// All perfect matchings by brute force, filtered for planarity.
    fn naive_matchings(labels: &[usize]) -> BTreeSet<Vec<(usize, usize)>> {
        fn all(labels: &[usize], points: Vec<usize>) -> Vec<Vec<(usize, usize)>> {
            if points.is_empty() {
                return vec![vec![]];
            }
            let a = points[0];
            let mut out = Vec::new();
            for &b in &points[1..] {
                if labels[a] == labels[b] {
                    continue;
                }
                let rest: Vec<usize> = points
                    .iter()
                    .copied()
                    .filter(|&x| x != a && x != b)
                    .collect();
                for mut m in all(labels, rest) {
                    m.push((a, b));
                    out.push(m);
                }
            }
            out
        }
        all(labels, (0..labels.len()).collect())
            .into_iter()
            .filter(|m| {
                m.iter().tuple_combinations().all(|(&(a, b), &(c, d))| {
                    let inside = |x: usize| a < x && x < b;
                    inside(c) == inside(d)
                })
            })
            .map(|mut m| {
                m.sort();
                m
            })
            .collect()
    }

    #[test]
    fn face_matchings_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..300 {
            let len = 2 * rng.gen_range(0..5);
            let mut labels: Vec<usize> = (0..len).map(|_| rng.gen_range(0..4)).collect();
            labels.sort();
            let got: BTreeSet<_> = face_matchings(&labels).into_iter().collect();
            assert_eq!(got, naive_matchings(&labels), "{labels:?}");
        }
    }

    #[test]
    fn pushoffs_are_normal_and_rebuild_the_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..100 {
            let n = rng.gen_range(3..14);
            let l = random_minimal_ladder(&mut rng, n);
            let c = complex(&l);
            let g = c.graph();
            for hand in [Hand::Left, Hand::Right] {
                let p = TransverseCurve::pushoff(g, CurveName::V, hand);
                assert!(p.is_connected(g));
                assert_eq!(p.total_crossings(), n);
                assert!(p.is_nonseparating(g));
                let back = p.ladder_with(g, CurveName::W).unwrap();
                // The trace picks its own direction along the curve.
                assert!(
                    equivalent(&back, &l) || equivalent(&back.reverse_v(), &l),
                    "{l:?} vs {back:?}"
                );
                let q = TransverseCurve::pushoff(g, CurveName::W, hand);
                assert_eq!(q.crossings_with(g, CurveName::V), n);
            }
        }
    }

    #[test]
    fn reference_intersection_number() {
        let c = complex(&l10());
        let g = c.graph();
        let v = TransverseCurve::pushoff(g, CurveName::V, Hand::Right);
        let w = TransverseCurve::pushoff(g, CurveName::W, Hand::Left);
        assert_eq!(intersection_number(g, &v, &w), 10);
        assert_eq!(
            ChordTypes::of(g, &v).crossings_with(g, &v, &ChordTypes::of(g, &w), &w),
            10
        );
        let v2 = TransverseCurve::pushoff(g, CurveName::V, Hand::Left);
        assert_eq!(intersection_number(g, &v, &v2), 0);
        assert_eq!(intersection_number(g, &v, &v), 0);
    }

    #[test]
    fn complement_classification() {
        let c = complex(&l10());
        let both = complement(&c, &[CurveRef::V, CurveRef::W]);
        assert_eq!(both.components.len(), 8);
        assert!(both.fills);
        let only_v = complement(&c, &[CurveRef::V]);
        assert_eq!(only_v.components.len(), 1);
        assert_eq!(only_v.components[0].genus, 1);
        assert_eq!(only_v.components[0].boundary_count, 2);
        let none = complement(&c, &[]);
        assert_eq!(none.components[0].euler_characteristic, -2);
        let g = c.graph();
        let p = TransverseCurve::pushoff(g, CurveName::V, Hand::Left);
        let with = complement(&c, &[CurveRef::V, CurveRef::Curve(&p)]);
        let kinds: Vec<RegionKind> = with.components.iter().map(|x| x.kind).collect();
        assert!(kinds.contains(&RegionKind::Annulus), "{with:?}");
    }

    #[test]
    fn complement_euler_characteristics_sum_to_the_surface() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..40 {
            let n = rng.gen_range(3..9);
            let l = random_minimal_ladder(&mut rng, n);
            let c = complex(&l);
            let chi = 2 - 2 * c.genus() as i64;
            for curve in enumerate_disjoint_curves(&c, CurveName::V, 1)
                .iter()
                .take(5)
            {
                // Cutting along a graph with m crossings adds m to the total.
                let m = curve.crossings_with(c.graph(), CurveName::W) as i64;
                for (cut, expected) in [
                    (vec![CurveRef::Curve(curve)], chi),
                    (vec![CurveRef::W, CurveRef::Curve(curve)], chi + m),
                ] {
                    let r = complement(&c, &cut);
                    assert_eq!(
                        r.components
                            .iter()
                            .map(|x| x.euler_characteristic)
                            .sum::<i64>(),
                        expected
                    );
                }
                let r = complement(&c, &[CurveRef::Curve(curve)]);
                let expected = if curve.is_nonseparating(c.graph()) {
                    1
                } else {
                    2
                };
                assert_eq!(r.components.len(), expected);
            }
        }
    }

    #[test]
    fn zero_bound_gives_nothing() {
        let c = complex(&l10());
        assert!(enumerate_disjoint_curves(&c, CurveName::V, 0).is_empty());
    }

    #[test]
    fn enumerated_curves_avoid_the_base() {
        let c = complex(&l10());
        let g = c.graph();
        let v = TransverseCurve::pushoff(g, CurveName::V, Hand::Right);
        let curves = enumerate_disjoint_curves(&c, CurveName::V, 2);
        assert!(!curves.is_empty());
        for x in &curves {
            assert_eq!(x.crossings_with(g, CurveName::V), 0);
            assert_eq!(intersection_number(g, x, &v), 0);
            assert!(x.counts().iter().all(|&k| k <= 2));
        }
        let distinct: BTreeSet<_> = curves.iter().collect();
        assert_eq!(distinct.len(), curves.len());
    }

    /// Naive enumeration: every count vector, every chord matching from the
    /// brute-force matcher, then the same filters.
    fn naive_enumeration(
        c: &SurfaceComplex,
        base: CurveName,
        bound: usize,
    ) -> BTreeSet<TransverseCurve> {
        let g = c.graph();
        let vars: Vec<usize> = (0..g.edge_count())
            .filter(|&e| g.edge_curve(e) != base)
            .collect();
        let pushoffs = [
            TransverseCurve::pushoff(g, base, Hand::Left),
            TransverseCurve::pushoff(g, base, Hand::Right),
        ];
        let mut out = BTreeSet::new();
        for xs in vars.iter().map(|_| 0..=bound).multi_cartesian_product() {
            let mut counts = vec![0; g.edge_count()];
            for (&e, &x) in vars.iter().zip(&xs) {
                counts[e] = x;
            }
            if counts.iter().all(|&x| x == 0) {
                continue;
            }
            let per_face: Vec<Vec<Vec<(usize, usize)>>> = (0..g.face_count())
                .map(|f| {
                    naive_matchings(&side_labels(g, &counts, f))
                        .into_iter()
                        .collect()
                })
                .collect();
            for choice in per_face.iter().map(|m| m.iter()).multi_cartesian_product() {
                let curve =
                    TransverseCurve::new(g, counts.clone(), choice.into_iter().cloned().collect())
                        .unwrap();
                if curve.is_connected(g) && !pushoffs.contains(&curve) && curve.is_essential(c) {
                    out.insert(curve);
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_naive_oracle_on_small_ladders() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        let mut nonempty = 0;
        for _ in 0..25 {
            let n = rng.gen_range(3..=6);
            let l = random_minimal_ladder(&mut rng, n);
            let c = complex(&l);
            for base in [CurveName::V, CurveName::W] {
                let max_bound = if n <= 5 { 2 } else { 1 };
                let widest = (0..c.graph().face_count())
                    .map(|f| c.graph().face_len(f) / 2)
                    .max()
                    .unwrap();
                for bound in (1..=max_bound).filter(|b| b * widest <= 12) {
                    let got: BTreeSet<_> = enumerate_disjoint_curves(&c, base, bound)
                        .into_iter()
                        .collect();
                    let want = naive_enumeration(&c, base, bound);
                    assert_eq!(got, want, "{l:?} {base:?} {bound}");
                    nonempty += !got.is_empty() as usize;
                }
            }
        }
        assert!(nonempty > 0);
    }

    /// Minimum crossing count over every interleaving of points on every edge.
    fn brute_force_intersection(
        g: &RibbonGraph,
        a: &TransverseCurve,
        b: &TransverseCurve,
    ) -> usize {
        let per_edge: Vec<Vec<Vec<u8>>> = (0..g.edge_count())
            .map(|e| {
                let (x, y) = (a.counts()[e], b.counts()[e]);
                (0..x + y)
                    .combinations(x)
                    .map(|ones| {
                        let mut v = vec![1u8; x + y];
                        for i in ones {
                            v[i] = 0;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        per_edge
            .iter()
            .map(|o| o.iter())
            .multi_cartesian_product()
            .map(|order| {
                CurvePair::with_order(a.clone(), b.clone(), order.into_iter().cloned().collect())
                    .crossings(g)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn bigon_reduction_reaches_the_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let mut checked = 0;
        while checked < 40 {
            let n = rng.gen_range(3..7);
            let l = random_minimal_ladder(&mut rng, n);
            let c = complex(&l);
            let g = c.graph();
            let mut pool = enumerate_disjoint_curves(&c, CurveName::V, 1);
            pool.extend(enumerate_disjoint_curves(&c, CurveName::W, 1));
            pool.push(TransverseCurve::pushoff(g, CurveName::V, Hand::Left));
            pool.push(TransverseCurve::pushoff(g, CurveName::W, Hand::Right));
            if pool.len() < 2 {
                continue;
            }
            let a = &pool[rng.gen_range(0..pool.len())];
            let b = &pool[rng.gen_range(0..pool.len())];
            let shared: usize = a.counts().iter().zip(b.counts()).map(|(x, y)| x * y).sum();
            if shared > 6 {
                continue;
            }
            let reduced = reduce_bigons(g, a, b);
            assert_eq!(
                reduced.crossings(g),
                brute_force_intersection(g, a, b),
                "{l:?}"
            );
            let again = reduced.reduce_bigons(g);
            assert_eq!(again, reduced);
            checked += 1;
        }
    }

    #[test]
    fn complementary_curves_need_no_reduction() {
        let c = complex(&l10());
        let g = c.graph();
        let a = enumerate_disjoint_curves(&c, CurveName::V, 1);
        let b = enumerate_disjoint_curves(&c, CurveName::W, 1);
        for x in a.iter().take(10) {
            for y in b.iter().take(10) {
                let plain = CurvePair::new(x.clone(), y.clone()).crossings(g);
                assert_eq!(plain, intersection_number(g, x, y));
                let tx = ChordTypes::of(g, x);
                let ty = ChordTypes::of(g, y);
                assert_eq!(tx.crossings_with(g, x, &ty, y), plain);
                assert_eq!(tx.disjoint_from(&ty), plain == 0);
            }
        }
    }

    #[test]
    fn reference_arcs_follow_w() {
        let c = complex(&l10());
        let arcs = reference_arcs(&c).unwrap();
        assert_eq!(arcs.len(), 10);
        let l = c.ladder();
        for k in 1..=10 {
            let next = k % 10 + 1;
            assert_eq!(arcs[k - 1].index, k);
            assert_eq!(l.w_arc_endpoints(k).1, l.w_arc_endpoints(next).0);
            assert_ne!(arcs[k - 1].v_sides.0, 0);
        }
    }

    #[test]
    fn large_polygons_are_unsupported_for_reference_arcs() {
        let mut rng = ChaCha8Rng::seed_from_u64(56);
        loop {
            let l = random_minimal_ladder(&mut rng, 8);
            let c = complex(&l);
            if c.decomposition().max_sides() > 6 {
                assert!(matches!(
                    reference_arcs(&c),
                    Err(CurvesError::UnsupportedDecomposition { .. })
                ));
                break;
            }
        }
    }
}

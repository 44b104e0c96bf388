//! The ribbon graph `v ∪ w` rebuilt from a ladder, its faces, and the
//! polygon decomposition of the surface cut along both curves.

use crate::ladder::{canonical_form, Crossing, Ladder};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Dart slots at a vertex, in counterclockwise order.
pub const WEST: usize = 0;
pub const SOUTH: usize = 1;
pub const EAST: usize = 2;
pub const NORTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("BIGON_FOUND: face {face} has only two sides")]
    BigonFound { face: usize },
}

impl SurfaceError {
    pub fn code(&self) -> &'static str {
        "BIGON_FOUND"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveName {
    V,
    W,
}

/// Left or right of an oriented curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hand {
    Left,
    Right,
}

impl Hand {
    pub fn flip(self) -> Hand {
        match self {
            Hand::Left => Hand::Right,
            Hand::Right => Hand::Left,
        }
    }
}

/// One side of a face: the edge it runs along and whether the face boundary
/// traverses that edge in the edge's own direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSide {
    pub dart: usize,
    pub edge: usize,
    pub forward: bool,
}

/// Ribbon graph of a ladder. Edges `0..n` are the `w`-arcs (edge `t` carries
/// label `t+1`), edges `n..2n` are the `v`-arcs (edge `n+k-1` carries label
/// `k`). Dart `4c+s` sits at column `c` in slot `s`. Faces are orbits of
/// `sigma ∘ alpha`; each face lies to the right of its darts.
#[derive(Debug, Clone)]
pub struct RibbonGraph {
    ladder: Ladder,
    alpha: Vec<usize>,
    dart_edge: Vec<usize>,
    dart_starts: Vec<bool>,
    edge_start: Vec<usize>,
    edge_end: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of_dart: Vec<usize>,
    slot_in_face: Vec<usize>,
}

pub fn sigma(d: usize) -> usize {
    4 * (d / 4) + (d % 4 + 1) % 4
}

pub fn sigma_inv(d: usize) -> usize {
    4 * (d / 4) + (d % 4 + 3) % 4
}

impl RibbonGraph {
    pub fn new(ladder: &Ladder) -> Self {
        let n = ladder.n();
        let darts = 4 * n;
        let mut dart_edge = vec![0; darts];
        let mut dart_starts = vec![false; darts];
        let mut edge_start = vec![usize::MAX; 2 * n];
        let mut edge_end = vec![usize::MAX; 2 * n];
        let mut assign = |d: usize, e: usize, start: bool| {
            dart_edge[d] = e;
            dart_starts[d] = start;
            if start {
                edge_start[e] = d;
            } else {
                edge_end[e] = d;
            }
        };
        for c in 0..n {
            let up = ladder.is_up(c);
            assign(4 * c + WEST, c, false);
            assign(4 * c + EAST, (c + 1) % n, true);
            assign(4 * c + NORTH, n + ladder.top()[c] - 1, up);
            assign(4 * c + SOUTH, n + ladder.bottom()[c] - 1, !up);
        }
        let mut alpha = vec![0; darts];
        for e in 0..2 * n {
            alpha[edge_start[e]] = edge_end[e];
            alpha[edge_end[e]] = edge_start[e];
        }
        let mut face_of_dart = vec![usize::MAX; darts];
        let mut slot_in_face = vec![0; darts];
        let mut faces = Vec::new();
        for d0 in 0..darts {
            if face_of_dart[d0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut d = d0;
            loop {
                face_of_dart[d] = id;
                slot_in_face[d] = cycle.len();
                cycle.push(d);
                d = sigma(alpha[d]);
                if d == d0 {
                    break;
                }
            }
            faces.push(cycle);
        }
        RibbonGraph {
            ladder: ladder.clone(),
            alpha,
            dart_edge,
            dart_starts,
            edge_start,
            edge_end,
            faces,
            face_of_dart,
            slot_in_face,
        }
    }

    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }

    pub fn n(&self) -> usize {
        self.ladder.n()
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn dart_edge(&self, d: usize) -> usize {
        self.dart_edge[d]
    }

    /// True when the edge of `d` leaves the vertex of `d`.
    pub fn dart_starts(&self, d: usize) -> bool {
        self.dart_starts[d]
    }

    pub fn edge_start(&self, e: usize) -> usize {
        self.edge_start[e]
    }

    pub fn edge_end(&self, e: usize) -> usize {
        self.edge_end[e]
    }

    pub fn edge_count(&self) -> usize {
        2 * self.n()
    }

    pub fn edge_curve(&self, e: usize) -> CurveName {
        if e < self.n() {
            CurveName::W
        } else {
            CurveName::V
        }
    }

    /// The 1-based label of an edge.
    pub fn edge_label(&self, e: usize) -> usize {
        e % self.n() + 1
    }

    pub fn w_edge(&self, label: usize) -> usize {
        label - 1
    }

    pub fn v_edge(&self, label: usize) -> usize {
        self.n() + label - 1
    }

    /// Face lying to the right of the edge direction.
    pub fn right_face(&self, e: usize) -> usize {
        self.face_of_dart[self.edge_start[e]]
    }

    /// Face lying to the left of the edge direction.
    pub fn left_face(&self, e: usize) -> usize {
        self.face_of_dart[self.edge_end[e]]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of_dart(&self, d: usize) -> usize {
        self.face_of_dart[d]
    }

    pub fn slot_in_face(&self, d: usize) -> usize {
        self.slot_in_face[d]
    }

    pub fn face_sides(&self, f: usize) -> Vec<FaceSide> {
        self.faces[f]
            .iter()
            .map(|&d| FaceSide {
                dart: d,
                edge: self.dart_edge[d],
                forward: self.dart_starts[d],
            })
            .collect()
    }

    pub fn face_len(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Euler characteristic `V - E + F` of the closed ribbon surface.
    pub fn euler_characteristic(&self) -> i64 {
        self.n() as i64 - 2 * self.n() as i64 + self.faces.len() as i64
    }

    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        assert!(
            chi <= 2 && (2 - chi) % 2 == 0,
            "Euler characteristic {chi} does not come from a closed orientable surface"
        );
        ((2 - chi) / 2) as usize
    }

    pub fn has_bigon(&self) -> Option<usize> {
        self.faces.iter().position(|f| f.len() == 2)
    }

    /// Number of components of the surface cut along the named curve.
    pub fn components_after_cutting(&self, curve: CurveName) -> usize {
        let mut uf = UnionFind::new(self.faces.len());
        for e in 0..self.edge_count() {
            if self.edge_curve(e) != curve {
                uf.union(self.right_face(e), self.left_face(e));
            }
        }
        uf.count()
    }
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

/// A ribbon graph known to be in minimal position (no bigons).
#[derive(Debug, Clone)]
pub struct SurfaceComplex {
    graph: RibbonGraph,
    genus: usize,
}

pub fn build_complex(ladder: &Ladder) -> Result<SurfaceComplex, SurfaceError> {
    SurfaceComplex::new(ladder)
}

impl SurfaceComplex {
    pub fn new(ladder: &Ladder) -> Result<Self, SurfaceError> {
        let graph = RibbonGraph::new(ladder);
        if let Some(face) = graph.has_bigon() {
            return Err(SurfaceError::BigonFound { face });
        }
        let genus = graph.genus();
        Ok(SurfaceComplex { graph, genus })
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn ladder(&self) -> &Ladder {
        self.graph.ladder()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn check_nonseparating(&self, which: CurveName) -> bool {
        self.graph.components_after_cutting(which) == 1
    }

    pub fn decomposition(&self) -> Decomposition {
        decomposition(self)
    }

    pub fn find_bicorns(&self) -> Vec<Bicorn> {
        find_bicorns(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideInfo {
    pub curve: CurveName,
    pub label: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub genus: usize,
    pub i: usize,
    /// Number of faces by side count.
    pub counts: BTreeMap<usize, usize>,
    /// Sides of every face in boundary order.
    pub faces: Vec<Vec<SideInfo>>,
}

pub fn decomposition(complex: &SurfaceComplex) -> Decomposition {
    let g = complex.graph();
    let mut counts = BTreeMap::new();
    let mut faces = Vec::new();
    for f in 0..g.face_count() {
        *counts.entry(g.face_len(f)).or_insert(0) += 1;
        faces.push(
            g.face_sides(f)
                .into_iter()
                .map(|s| SideInfo {
                    curve: g.edge_curve(s.edge),
                    label: g.edge_label(s.edge),
                    forward: s.forward,
                })
                .collect(),
        );
    }
    let d = Decomposition {
        genus: complex.genus(),
        i: complex.n(),
        counts,
        faces,
    };
    if let Err(e) = d.check_identities() {
        panic!("decomposition identities failed: {e}");
    }
    d
}

impl Decomposition {
    pub fn f(&self, sides: usize) -> usize {
        self.counts.get(&sides).copied().unwrap_or(0)
    }

    /// `(F_4, F_6, ..., F_{8g-4})`.
    pub fn vector(&self) -> Vec<usize> {
        let top = (8 * self.genus).saturating_sub(4).max(4);
        (4..=top).step_by(2).map(|s| self.f(s)).collect()
    }

    /// `(F_6, ..., F_{8g-4})`, the census of polygons larger than rectangles.
    pub fn large_vector(&self) -> Vec<usize> {
        self.vector()[1..].to_vec()
    }

    pub fn face_count(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn max_sides(&self) -> usize {
        self.counts.keys().copied().max().unwrap_or(0)
    }

    pub fn only_four_and_six(&self) -> bool {
        self.counts.keys().all(|&s| s == 4 || s == 6)
    }

    /// Upper bound `2 log2(i) + 2` on the distance of the pair.
    pub fn distance_bound(&self) -> f64 {
        2.0 * (self.i as f64).log2() + 2.0
    }

    /// Checks the Euler and side-count identities exactly.
    pub fn check_identities(&self) -> Result<(), String> {
        let g = self.genus as i64;
        let i = self.i as i64;
        let weighted: i64 = self
            .counts
            .iter()
            .map(|(&s, &c)| (s as i64 / 2 - 2) * c as i64)
            .sum();
        if weighted != 4 * g - 4 {
            return Err(format!(
                "sum (k-2) F_2k = {weighted}, expected {}",
                4 * g - 4
            ));
        }
        let f4 = self.f(4) as i64;
        let twice_rest: i64 = self
            .counts
            .iter()
            .filter(|(&s, _)| s > 4)
            .map(|(&s, &c)| (s as i64 / 2) * c as i64)
            .sum();
        if 2 * i != 2 * f4 + twice_rest {
            return Err(format!(
                "2i = {} but 2F_4 + sum k F_2k = {}",
                2 * i,
                2 * f4 + twice_rest
            ));
        }
        let side_total: i64 = self.counts.iter().map(|(&s, &c)| s as i64 * c as i64).sum();
        if side_total != 4 * i {
            return Err(format!("face sides total {side_total}, expected {}", 4 * i));
        }
        if self.max_sides() as i64 > (8 * g - 4).max(4) {
            return Err(format!("a face has {} sides", self.max_sides()));
        }
        if self.only_four_and_six() && f4 != i - 6 * g + 6 {
            return Err(format!("F_4 = {f4} but i - 6g + 6 = {}", i - 6 * g + 6));
        }
        Ok(())
    }
}

/// A `v`-arc and a `w`-arc with the same pair of endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bicorn {
    pub v_arc: usize,
    pub w_arc: usize,
    /// Side of `v` (oriented along the `v`-arc) holding the push-off used by
    /// spiral addition, when the bicorn admits one.
    pub pushoff: Option<Hand>,
}

/// Turn data of a twisting site: a forward run of `m` arcs of `v` from route
/// position `alpha` to a crossing adjacent along `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteTurns {
    /// The start of the run lies immediately west of its end along `w`.
    pub start_west: bool,
    pub turn_start: Hand,
    pub turn_end: Hand,
}

impl SiteTurns {
    pub fn twistable(&self) -> bool {
        self.turn_start != self.turn_end
    }

    /// Side of the run holding the twisting push-off.
    pub fn pushoff(&self) -> Option<Hand> {
        self.twistable().then(|| self.turn_end.flip())
    }
}

/// Column positions along `w` for a route whose columns are arbitrary ids.
pub fn site_turns(route: &[Crossing], pos: &[usize], alpha: usize, m: usize) -> Option<SiteTurns> {
    let n = route.len();
    if n < 3 || m == 0 || m >= n {
        return None;
    }
    let a = route[alpha % n];
    let b = route[(alpha + m) % n];
    let (pa, pb) = (pos[a.column], pos[b.column]);
    let start_west = if (pb + n - pa) % n == 1 {
        true
    } else if (pa + n - pb) % n == 1 {
        false
    } else {
        return None;
    };
    let turn_end = if b.up == start_west {
        Hand::Left
    } else {
        Hand::Right
    };
    let turn_start = if a.up == start_west {
        Hand::Right
    } else {
        Hand::Left
    };
    Some(SiteTurns {
        start_west,
        turn_start,
        turn_end,
    })
}

pub fn find_bicorns(complex: &SurfaceComplex) -> Vec<Bicorn> {
    let l = complex.ladder();
    let n = l.n();
    if n < 3 {
        return Vec::new();
    }
    let route = l.route();
    let pos: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for a in 1..=n {
        let (s, e) = l.v_arc_endpoints(a);
        for b in 1..=n {
            let (x, y) = l.w_arc_endpoints(b);
            if (s == x && e == y) || (s == y && e == x) {
                // v-arc a arrives at route position a-1 and leaves position a-2.
                let alpha = (a + n - 2) % n;
                let pushoff = site_turns(&route, &pos, alpha, 1).and_then(|t| t.pushoff());
                out.push(Bicorn {
                    v_arc: a,
                    w_arc: b,
                    pushoff,
                });
            }
        }
    }
    out
}

/// Same decomposition vector and the same canonical ladder.
pub fn equivalent(a: &Ladder, b: &Ladder) -> bool {
    let (Ok(ca), Ok(cb)) = (SurfaceComplex::new(a), SurfaceComplex::new(b)) else {
        return false;
    };
    ca.decomposition().vector() == cb.decomposition().vector()
        && canonical_form(a).canonical_ladder == canonical_form(b).canonical_ladder
}

/// JSON fragment describing a complex.
pub fn complex_json(complex: &SurfaceComplex) -> serde_json::Value {
    let d = complex.decomposition();
    let bicorns: Vec<[usize; 2]> = complex
        .find_bicorns()
        .iter()
        .map(|b| [b.v_arc, b.w_arc])
        .collect();
    serde_json::json!({
        "n": complex.n(),
        "genus": complex.genus(),
        "decomposition": d.vector(),
        "nonseparating": {
            "v": complex.check_nonseparating(CurveName::V),
            "w": complex.check_nonseparating(CurveName::W),
        },
        "bicorns": bicorns,
    })
}

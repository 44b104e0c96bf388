//! Route-level rewrites of `v`: twisting along a push-off of a `v`-path closed
//! by a `w`-arc, and cut-and-paste surgery along an arc parallel to a `w`-arc.

use crate::ladder::{Crossing, Ladder};
use crate::surface::{site_turns, Hand, RibbonGraph, UnionFind, EAST, NORTH, SOUTH, WEST};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Side of `w` (top or bottom in the ladder picture).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WSide {
    Top,
    Bottom,
}

impl WSide {
    pub fn slot(self) -> usize {
        match self {
            WSide::Top => NORTH,
            WSide::Bottom => SOUTH,
        }
    }
}

/// The four surgery types, written as the sign at the west endpoint of the
/// surgery arc followed by the sign at its east endpoint. A sign is `+` when
/// the kept strand of `v` attaches to the arc from the top side of the arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurgeryKind {
    #[serde(rename = "++")]
    PlusPlus,
    #[serde(rename = "--")]
    MinusMinus,
    #[serde(rename = "+-")]
    PlusMinus,
    #[serde(rename = "-+")]
    MinusPlus,
}

impl SurgeryKind {
    pub const ALL: [SurgeryKind; 4] = [
        SurgeryKind::PlusPlus,
        SurgeryKind::MinusMinus,
        SurgeryKind::PlusMinus,
        SurgeryKind::MinusPlus,
    ];

    fn from_signs(west: bool, east: bool) -> Self {
        match (west, east) {
            (true, true) => SurgeryKind::PlusPlus,
            (false, false) => SurgeryKind::MinusMinus,
            (true, false) => SurgeryKind::PlusMinus,
            (false, true) => SurgeryKind::MinusPlus,
        }
    }

    /// Kinds joining strands that cross the arc endpoints coherently.
    pub fn is_mixed(self) -> bool {
        matches!(self, SurgeryKind::PlusMinus | SurgeryKind::MinusPlus)
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "++" => Some(SurgeryKind::PlusPlus),
            "--" => Some(SurgeryKind::MinusMinus),
            "+-" | "±" => Some(SurgeryKind::PlusMinus),
            "-+" | "∓" => Some(SurgeryKind::MinusPlus),
            _ => None,
        }
    }
}

impl fmt::Display for SurgeryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurgeryKind::PlusPlus => "++",
            SurgeryKind::MinusMinus => "--",
            SurgeryKind::PlusMinus => "+-",
            SurgeryKind::MinusPlus => "-+",
        })
    }
}

/// An arc running beside the `w`-arc with the given label, on the given side,
/// from the `v`-arc at its west end to the `v`-arc at its east end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParallelArc {
    pub w_label: usize,
    pub side: WSide,
}

impl ParallelArc {
    pub fn west_column(&self, n: usize) -> usize {
        (self.w_label + n - 2) % n
    }

    pub fn east_column(&self, n: usize) -> usize {
        (self.w_label + n - 1) % n
    }
}

/// One of the two components of `v` minus the arc endpoints. Parameters are
/// measured in quarter steps along `v`: crossing `t` sits at `4t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub from: usize,
    pub to: usize,
    pub kind: SurgeryKind,
    /// Kept crossings in the order met along `v`.
    pub route: Vec<Crossing>,
}

impl Component {
    fn contains(&self, q: usize, period: usize) -> bool {
        (q + period - self.from) % period < (self.to + period - self.from) % period
    }
}

/// Quarter parameter of the arc endpoint near a column, and whether `v`
/// leaves the column on the arc's side.
fn endpoint(l: &Ladder, t_of: &[usize], col: usize, side: WSide) -> (usize, bool) {
    let n = l.n();
    let departs = l.is_up(col) == (side == WSide::Top);
    let t = t_of[col];
    let q = if departs {
        4 * t + 1
    } else {
        (4 * t + 4 * n - 1) % (4 * n)
    };
    (q, departs)
}

fn sign(side: WSide, toward_w: bool) -> bool {
    (side == WSide::Top) != toward_w
}

fn route_positions(l: &Ladder) -> (Vec<Crossing>, Vec<usize>) {
    let route = l.route();
    let mut t_of = vec![0; l.n()];
    for (t, c) in route.iter().enumerate() {
        t_of[c.column] = t;
    }
    (route, t_of)
}

/// Both components of `v` cut at the endpoints of `arc`, each labelled with
/// the surgery kind it realizes.
pub fn components(l: &Ladder, arc: ParallelArc) -> Option<[Component; 2]> {
    let n = l.n();
    if n < 3 || arc.w_label == 0 || arc.w_label > n {
        return None;
    }
    let (route, t_of) = route_positions(l);
    let west = arc.west_column(n);
    let east = arc.east_column(n);
    let (qw, dw) = endpoint(l, &t_of, west, arc.side);
    let (qe, de) = endpoint(l, &t_of, east, arc.side);
    let period = 4 * n;
    let build = |from: usize, to: usize, dep_from: bool, dep_to: bool, from_is_west: bool| {
        let tiny_from = !dep_from;
        let tiny_to = dep_to;
        let (tw, te) = if from_is_west {
            (tiny_from, tiny_to)
        } else {
            (tiny_to, tiny_from)
        };
        let kind = SurgeryKind::from_signs(sign(arc.side, tw), sign(arc.side, te));
        let mut c = Component {
            from,
            to,
            kind,
            route: Vec::new(),
        };
        let mut kept = Vec::new();
        for step in 0..n {
            let t = (from / 4 + step) % n;
            if c.contains(4 * t, period) {
                kept.push(route[t]);
            }
        }
        kept.sort_by_key(|x| (4 * t_of[x.column] + period - from) % period);
        c.route = kept;
        c
    };
    Some([build(qw, qe, dw, de, true), build(qe, qw, de, dw, false)])
}

/// True when both endpoints see `v` leaving (or both arriving) on the arc's side.
pub fn coherent(l: &Ladder, arc: ParallelArc) -> bool {
    let (_, t_of) = route_positions(l);
    let n = l.n();
    let (_, dw) = endpoint(l, &t_of, arc.west_column(n), arc.side);
    let (_, de) = endpoint(l, &t_of, arc.east_column(n), arc.side);
    dw == de
}

/// Ladder of the curve obtained from a component, read against `w`, when it
/// still meets `w`.
pub fn component_ladder(l: &Ladder, comp: &Component) -> Option<Ladder> {
    if comp.route.is_empty() {
        return None;
    }
    let order: Vec<usize> = (0..l.n())
        .filter(|c| comp.route.iter().any(|x| x.column == *c))
        .collect();
    Ladder::from_route_ordered(&comp.route, &order).ok()
}

/// A complementary region of `v' ∪ w`: Euler characteristic and number of
/// corners (points of `v' ∩ w` on its boundary).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub chi: i64,
    pub corners: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementCensus {
    pub regions: Vec<RegionSummary>,
}

impl ComplementCensus {
    pub fn fills(&self) -> bool {
        self.regions.iter().all(|r| r.chi == 1)
    }

    /// Discs keyed by their number of sides.
    pub fn disc_census(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for r in self.regions.iter().filter(|r| r.chi == 1) {
            *m.entry(r.corners).or_insert(0) += 1;
        }
        m
    }

    pub fn bigons(&self) -> usize {
        self.regions
            .iter()
            .filter(|r| r.chi == 1 && r.corners == 2)
            .count()
    }

    pub fn non_discs(&self) -> usize {
        self.regions.iter().filter(|r| r.chi != 1).count()
    }

    pub fn total_chi(&self) -> i64 {
        self.regions.iter().map(|r| r.chi).sum()
    }
}

/// Exact complement of `v' ∪ w` in the surface of `l`, where `v'` is the
/// component joined to the surgery arc. Faces of `v ∪ w` are cut by the arc
/// into pieces and glued back across the parts of `v` that `v'` dropped.
pub fn surgered_complement(l: &Ladder, arc: ParallelArc, comp: &Component) -> ComplementCensus {
    let g = RibbonGraph::new(l);
    let n = l.n();
    let period = 4 * n;
    let (_, t_of) = route_positions(l);
    let west = arc.west_column(n);
    let east = arc.east_column(n);
    let e = arc.w_label - 1;
    let face = match arc.side {
        WSide::Top => g.left_face(e),
        WSide::Bottom => g.right_face(e),
    };
    let nf = g.face_count();
    let strip = nf;
    let slot = arc.side.slot();

    struct Corner {
        col: usize,
        v_dart: usize,
        w_dart: usize,
        q: usize,
    }
    let corners = [
        Corner {
            col: west,
            v_dart: 4 * west + slot,
            w_dart: 4 * west + EAST,
            q: endpoint(l, &t_of, west, arc.side).0,
        },
        Corner {
            col: east,
            v_dart: 4 * east + slot,
            w_dart: 4 * east + WEST,
            q: endpoint(l, &t_of, east, arc.side).0,
        },
    ];
    // Side of the v-edge (true = right) facing the strip between the arc and w.
    let strip_side = |c: &Corner| {
        let face_side_is_right = g.dart_starts(c.v_dart);
        if c.w_dart % 4 == (c.v_dart % 4 + 3) % 4 {
            face_side_is_right
        } else {
            !face_side_is_right
        }
    };
    let map_face = |f: usize| f;
    let kept = |q: usize| comp.contains(q, period);

    let mut uf = UnionFind::new(nf + 1);
    let mut glued: Vec<(usize, usize)> = Vec::new();
    for label in 1..=n {
        let x = g.v_edge(label);
        let t = (label + n - 2) % n;
        let lo = 4 * t;
        let mut cuts: Vec<usize> = corners
            .iter()
            .map(|c| c.q)
            .filter(|&q| {
                !(q + period - lo).is_multiple_of(period) && (q + period - lo) % period < 4
            })
            .map(|q| (q + period - lo) % period)
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut bounds = vec![0];
        bounds.extend(cuts);
        bounds.push(4);
        for w in bounds.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid2 = 2 * lo + a + b;
            // Membership in the kept component, tested at the sub-piece midpoint.
            let inside = {
                let from2 = 2 * comp.from;
                let to2 = 2 * comp.to;
                let p2 = 2 * period;
                (mid2 % p2 + p2 - from2) % p2 < (to2 + p2 - from2) % p2
            };
            if inside {
                continue;
            }
            let mut right = map_face(g.right_face(x));
            let mut left = map_face(g.left_face(x));
            for c in &corners {
                if g.dart_edge(c.v_dart) != x {
                    continue;
                }
                let at_start = g.dart_starts(c.v_dart);
                let tiny = if at_start { a == 0 } else { b == 4 };
                let touches_cut = if at_start {
                    b == (c.q + period - lo) % period
                } else {
                    a == (c.q + period - lo) % period
                };
                if tiny && touches_cut {
                    if strip_side(c) {
                        right = strip;
                    } else {
                        left = strip;
                    }
                }
            }
            glued.push((right, left));
            uf.union(right, left);
        }
    }
    // Corner ownership: the quadrant between darts x and sigma(x) belongs to
    // the face of sigma(x), except the two quadrants cut off by the arc.
    let mut corner_owner: Vec<(usize, usize)> = Vec::new();
    for (col, &t) in t_of.iter().enumerate().take(n) {
        if !kept(4 * t) {
            continue;
        }
        for s in 0..4 {
            let x = 4 * col + s;
            let y = 4 * col + (s + 1) % 4;
            let mut owner = map_face(g.face_of_dart(y));
            for c in &corners {
                if c.col == col
                    && ((x == c.w_dart && y == c.v_dart) || (x == c.v_dart && y == c.w_dart))
                {
                    owner = strip;
                }
            }
            corner_owner.push((col, owner));
        }
    }
    let _ = face;
    let mut chi: BTreeMap<usize, i64> = BTreeMap::new();
    let mut corner_count: BTreeMap<usize, usize> = BTreeMap::new();
    for p in 0..=nf {
        *chi.entry(uf.find(p)).or_insert(0) += 1;
    }
    for (a, _) in glued {
        *chi.get_mut(&uf.find(a)).unwrap() -= 1;
    }
    for (_, owner) in corner_owner {
        *corner_count.entry(uf.find(owner)).or_insert(0) += 1;
    }
    let regions = chi
        .iter()
        .map(|(root, &c)| RegionSummary {
            chi: c,
            corners: corner_count.get(root).copied().unwrap_or(0),
        })
        .collect();
    ComplementCensus { regions }
}

/// Result of twisting `v`: the new ladder and the route positions of the run
/// end and of the newly created crossing next to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twisted {
    pub ladder: Ladder,
    pub end_index: usize,
    pub new_index: usize,
}

/// Twists `v` once along the push-off of the forward run of `m` arcs starting
/// at route position `alpha`, closed by the `w`-arc joining the run's ends.
/// Adds `m` crossings and one rectangle per added crossing.
pub fn twist(l: &Ladder, alpha: usize, m: usize) -> Option<Twisted> {
    let n = l.n();
    let route = l.route();
    let pos: Vec<usize> = (0..n).collect();
    let turns = site_turns(&route, &pos, alpha, m)?;
    let side = turns.pushoff()?;
    let mut next = n;
    // (anchor column, new column, placed west of the anchor, distance rank)
    let mut items: Vec<(usize, usize, bool, usize)> = Vec::new();
    let mut inserted = Vec::new();
    for i in 1..m {
        let c = route[(alpha + i) % n];
        let west = if side == Hand::Left { c.up } else { !c.up };
        items.push((c.column, next, west, 1));
        inserted.push(Crossing {
            column: next,
            up: c.up,
        });
        next += 1;
    }
    let b = (alpha + m) % n;
    let end = route[b];
    items.push((end.column, next, !turns.start_west, 0));
    inserted.push(Crossing {
        column: next,
        up: end.up,
    });
    let mut order = Vec::with_capacity(n + m);
    for c in 0..n {
        let mut west: Vec<_> = items.iter().filter(|it| it.0 == c && it.2).collect();
        west.sort_by_key(|it| std::cmp::Reverse(it.3));
        order.extend(west.iter().map(|it| it.1));
        order.push(c);
        let mut east: Vec<_> = items.iter().filter(|it| it.0 == c && !it.2).collect();
        east.sort_by_key(|it| it.3);
        order.extend(east.iter().map(|it| it.1));
    }
    let mut new_route: Vec<Crossing> = route[..=b].to_vec();
    new_route.extend(inserted);
    new_route.extend_from_slice(&route[b + 1..]);
    let ladder = Ladder::from_route_ordered(&new_route, &order).ok()?;
    Some(Twisted {
        ladder,
        end_index: b,
        new_index: b + m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_minimal_ladder;
    use crate::ladder::{canonical_form, l10};
    use crate::surface::{build_complex, SurfaceComplex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn census(l: &Ladder) -> Option<(usize, BTreeMap<usize, usize>)> {
        let c = SurfaceComplex::new(l).ok()?;
        Some((c.genus(), c.decomposition().counts))
    }

    #[test]
    fn reference_twist_adds_one_rectangle() {
        let l = l10();
        // v-arc 2 leaves route position 0.
        let t = twist(&l, 0, 1).unwrap();
        assert_eq!(t.ladder.top(), &[1, 6, 10, 4, 3, 2, 7, 11, 5, 8, 7]);
        assert_eq!(t.ladder.bottom(), &[11, 5, 9, 3, 2, 1, 6, 10, 4, 9, 8]);
        let (g, counts) = census(&t.ladder).unwrap();
        assert_eq!(g, 2);
        assert_eq!(counts, BTreeMap::from([(4, 5), (6, 4)]));
    }

    #[test]
    fn twists_preserve_large_faces() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut applied = 0;
        for _ in 0..150 {
            let n = rng.gen_range(5..13);
            let l = random_minimal_ladder(&mut rng, n);
            let (g0, c0) = census(&l).unwrap();
            for alpha in 0..n {
                for m in 1..n {
                    let Some(t) = twist(&l, alpha, m) else {
                        continue;
                    };
                    applied += 1;
                    let (g, c) = census(&t.ladder).expect("twist leaves no bigon");
                    let mut expect = c0.clone();
                    *expect.entry(4).or_insert(0) += m;
                    assert_eq!((g, c), (g0, expect));
                }
            }
        }
        assert!(applied > 500);
    }

    #[test]
    fn surgery_undoes_a_twist() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut checked = 0;
        for _ in 0..100 {
            let n = rng.gen_range(5..12);
            let l = random_minimal_ladder(&mut rng, n);
            let canon = canonical_form(&l).canonical_ladder;
            for alpha in 0..n {
                for m in 1..n {
                    let Some(t) = twist(&l, alpha, m) else {
                        continue;
                    };
                    let nl = &t.ladder;
                    let route = nl.route();
                    let b = route[t.end_index].column;
                    let y = route[t.new_index].column;
                    let label = if (y + nl.n() - b) % nl.n() == 1 {
                        y + 1
                    } else {
                        b + 1
                    };
                    let mut hits = 0;
                    for side in [WSide::Top, WSide::Bottom] {
                        let arc = ParallelArc {
                            w_label: label,
                            side,
                        };
                        for comp in components(nl, arc).unwrap() {
                            if comp.route.len() != n {
                                continue;
                            }
                            let back = component_ladder(nl, &comp).unwrap();
                            if canonical_form(&back).canonical_ladder == canon {
                                assert!(comp.kind.is_mixed());
                                hits += 1;
                            }
                        }
                    }
                    assert!(hits >= 1);
                    checked += 1;
                }
            }
        }
        assert!(checked > 300);
    }

    #[test]
    fn complement_of_surgered_curve_matches_ribbon_faces() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut compared = 0;
        for _ in 0..200 {
            let n = rng.gen_range(4..12);
            let l = random_minimal_ladder(&mut rng, n);
            let genus = build_complex(&l).unwrap().genus() as i64;
            for label in 1..=n {
                for side in [WSide::Top, WSide::Bottom] {
                    let arc = ParallelArc {
                        w_label: label,
                        side,
                    };
                    for comp in components(&l, arc).unwrap() {
                        let cc = surgered_complement(&l, arc, &comp);
                        let k = comp.route.len() as i64;
                        assert_eq!(cc.total_chi(), 2 - 2 * genus + k);
                        if let Some(sub) = component_ladder(&l, &comp) {
                            let rg = RibbonGraph::new(&sub);
                            if rg.genus() as i64 == genus {
                                assert!(cc.fills());
                                let mut faces = BTreeMap::new();
                                for f in 0..rg.face_count() {
                                    *faces.entry(rg.face_len(f)).or_insert(0) += 1;
                                }
                                assert_eq!(cc.disc_census(), faces);
                                compared += 1;
                            } else {
                                assert!(!cc.fills());
                            }
                        }
                    }
                }
            }
        }
        assert!(compared > 100);
    }
}

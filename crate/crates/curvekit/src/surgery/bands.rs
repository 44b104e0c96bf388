//! Bands of rectangles glued along `w`-arcs, and spirals (bands that overlap
//! themselves along `v`).

use crate::surface::{CurveName, RibbonGraph, SurfaceComplex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A maximal chain of 4-gons glued along `w`-arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    /// Rectangle face ids in band order.
    pub faces: Vec<usize>,
    /// Labels of the `w`-arcs crossed by the band, in order, including the
    /// terminal arcs of a non-cyclic band.
    pub w_arcs: Vec<usize>,
    /// `v`-labels along the two long sides, one per rectangle.
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub cyclic: bool,
    /// `v` runs through both long sides in the same direction.
    pub parallel: bool,
    pub length: usize,
    pub m_v: usize,
    pub width: usize,
}

impl Band {
    pub fn contains_w_arc(&self, label: usize) -> bool {
        self.w_arcs.contains(&label)
    }

    /// A parallel band whose width does not exceed its length, so that the
    /// two long sides overlap or abut along `v`.
    pub fn is_spiral(&self) -> bool {
        self.parallel && self.width <= self.length
    }
}

fn other_w_side(g: &RibbonGraph, face: usize, entering: usize) -> usize {
    let cycle = &g.faces()[face];
    let i = g.slot_in_face(entering);
    cycle[(i + 2) % cycle.len()]
}

fn is_rectangle(g: &RibbonGraph, f: usize) -> bool {
    g.face_len(f) == 4
}

/// The `w`-side darts of a rectangle.
fn w_sides(g: &RibbonGraph, f: usize) -> Vec<usize> {
    g.faces()[f]
        .iter()
        .copied()
        .filter(|&d| g.edge_curve(g.dart_edge(d)) == CurveName::W)
        .collect()
}

pub fn find_bands(complex: &SurfaceComplex) -> Vec<Band> {
    let g = complex.graph();
    let n = g.n();
    let rects: Vec<usize> = (0..g.face_count())
        .filter(|&f| is_rectangle(g, f))
        .collect();
    let mut used = vec![false; g.face_count()];
    let mut bands = Vec::new();

    // Starting darts for non-cyclic bands: a rectangle w-side whose other side
    // is not a rectangle, taken in order of w-label so the result is stable.
    let mut starts: Vec<(usize, usize)> = Vec::new();
    for &f in &rects {
        for d in w_sides(g, f) {
            if !is_rectangle(g, g.face_of_dart(g.alpha(d))) {
                starts.push((g.edge_label(g.dart_edge(d)), d));
            }
        }
    }
    starts.sort();
    let walk = |entering: usize, cyclic: bool, used: &mut Vec<bool>| -> Band {
        let mut faces = Vec::new();
        let mut w_arcs = vec![g.edge_label(g.dart_edge(entering))];
        let mut side_a = Vec::new();
        let mut side_b = Vec::new();
        let mut parallel = true;
        let mut d = entering;
        loop {
            let f = g.face_of_dart(d);
            if used[f] {
                break;
            }
            used[f] = true;
            faces.push(f);
            let cycle = &g.faces()[f];
            let i = g.slot_in_face(d);
            let (da, db) = (cycle[(i + 1) % 4], cycle[(i + 3) % 4]);
            side_a.push(g.edge_label(g.dart_edge(da)));
            side_b.push(g.edge_label(g.dart_edge(db)));
            // Parallel sides are traversed in opposite senses by the face boundary.
            parallel &= g.dart_starts(da) != g.dart_starts(db);
            let exit = other_w_side(g, f, d);
            let next = g.alpha(exit);
            if cyclic && g.face_of_dart(next) == g.face_of_dart(entering) {
                break;
            }
            w_arcs.push(g.edge_label(g.dart_edge(exit)));
            if !is_rectangle(g, g.face_of_dart(next)) {
                break;
            }
            d = next;
        }
        let m_v = side_a[0].abs_diff(side_b[0]);
        let width = m_v.min(n - m_v);
        Band {
            length: faces.len(),
            faces,
            w_arcs,
            side_a,
            side_b,
            cyclic,
            parallel,
            m_v,
            width,
        }
    };
    for (_, d) in starts {
        if !used[g.face_of_dart(d)] {
            bands.push(walk(d, false, &mut used));
        }
    }
    for &f in &rects {
        if !used[f] {
            let d = w_sides(g, f)[0];
            bands.push(walk(d, true, &mut used));
        }
    }
    bands
}

/// A band overlapping itself along `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spiral {
    pub band_index: usize,
    pub band: Band,
    /// Rectangles whose four neighbours are rectangles of this spiral.
    pub interior: Vec<usize>,
    pub barrier: Vec<usize>,
    /// Number of bands spiralling together (1 for a single band).
    pub multiplicity: usize,
}

impl Spiral {
    /// Labels of the `w`-arcs on the sides of interior rectangles.
    pub fn interior_w_arcs(&self, complex: &SurfaceComplex) -> Vec<usize> {
        let g = complex.graph();
        let labels: BTreeSet<usize> = self
            .interior
            .iter()
            .flat_map(|&f| w_sides(g, f))
            .map(|d| g.edge_label(g.dart_edge(d)))
            .collect();
        labels.into_iter().collect()
    }
}

pub fn find_spirals(complex: &SurfaceComplex) -> Vec<Spiral> {
    let bands = find_bands(complex);
    let g = complex.graph();
    let mut out = Vec::new();
    for (band_index, band) in bands.iter().enumerate() {
        if !band.is_spiral() {
            continue;
        }
        let members: BTreeSet<usize> = band.faces.iter().copied().collect();
        let mut interior = Vec::new();
        let mut barrier = Vec::new();
        for &f in &band.faces {
            let all = g.faces()[f]
                .iter()
                .all(|&d| members.contains(&g.face_of_dart(g.alpha(d))));
            if all {
                interior.push(f);
            } else {
                barrier.push(f);
            }
        }
        let labels: BTreeSet<usize> = band.side_a.iter().chain(&band.side_b).copied().collect();
        let multiplicity = 1 + bands
            .iter()
            .enumerate()
            .filter(|(j, other)| {
                *j != band_index
                    && other.is_spiral()
                    && other
                        .side_a
                        .iter()
                        .chain(&other.side_b)
                        .any(|x| labels.contains(x))
            })
            .count();
        out.push(Spiral {
            band_index,
            band: band.clone(),
            interior,
            barrier,
            multiplicity,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_minimal_ladder;
    use crate::ladder::l10;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bands_partition_rectangles() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..300 {
            let n = rng.gen_range(3..16);
            let l = random_minimal_ladder(&mut rng, n);
            let c = SurfaceComplex::new(&l).unwrap();
            let bands = find_bands(&c);
            let total: usize = bands.iter().map(|b| b.length).sum();
            assert_eq!(total, c.decomposition().f(4));
            let mut seen = BTreeSet::new();
            for b in &bands {
                for f in &b.faces {
                    assert!(seen.insert(*f));
                }
            }
        }
    }

    #[test]
    fn width_is_the_same_for_every_member() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..300 {
            let n = rng.gen_range(3..16);
            let l = random_minimal_ladder(&mut rng, n);
            let c = SurfaceComplex::new(&l).unwrap();
            for b in find_bands(&c).into_iter().filter(|b| b.parallel) {
                for (a, x) in b.side_a.iter().zip(&b.side_b) {
                    let m = a.abs_diff(*x);
                    assert_eq!(m.min(n - m), b.width, "{b:?}");
                }
            }
        }
    }

    #[test]
    fn reference_band_census() {
        let c = SurfaceComplex::new(&l10()).unwrap();
        let bands = find_bands(&c);
        let census: Vec<(usize, usize, Vec<usize>)> = bands
            .iter()
            .map(|b| (b.length, b.width, b.w_arcs.clone()))
            .collect();
        assert_eq!(census, vec![(1, 4, vec![3, 7]), (3, 4, vec![4, 8, 2, 6])]);
        assert!(bands
            .iter()
            .all(|b| b.parallel && !b.cyclic && !b.is_spiral()));
        assert!(find_spirals(&c).is_empty());
    }
}

//! Random ladders for property tests and batch experiments.

use crate::ladder::{Crossing, Ladder};
use crate::surface::RibbonGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// A uniformly random route: a random column order with random directions.
/// Every route encodes a valid ladder.
pub fn random_route<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Crossing> {
    let mut cols: Vec<usize> = (0..n).collect();
    cols.shuffle(rng);
    cols.into_iter()
        .map(|column| Crossing {
            column,
            up: rng.gen_bool(0.5),
        })
        .collect()
}

/// A random ladder in minimal position (no bigon faces).
pub fn random_minimal_ladder<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Ladder {
    loop {
        let l = Ladder::from_route(&random_route(rng, n)).expect("routes give valid ladders");
        if RibbonGraph::new(&l).has_bigon().is_none() {
            return l;
        }
    }
}

/// A random minimal ladder of the given genus whose faces are 4- and 6-gons.
pub fn random_hexagonal_ladder<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    genus: usize,
) -> Option<Ladder> {
    for _ in 0..20_000 {
        let l = random_minimal_ladder(rng, n);
        let g = RibbonGraph::new(&l);
        if g.genus() == genus && (0..g.face_count()).all(|f| g.face_len(f) <= 6) {
            return Some(l);
        }
    }
    None
}

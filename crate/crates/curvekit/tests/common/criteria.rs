//! One check per acceptance criterion. Each returns a short summary on
//! success and a description of the first failure otherwise.

use super::{all_normal_forms, all_sequences, within_bound, Census};
use curvekit::curves::reference_arcs;
use curvekit::dotgraph::{
    dot_graphs_over, extend, is_sawtooth, same_or_reversed, sawtooth, IntersectionSequence,
};
use curvekit::generate::{random_hexagonal_ladder, random_minimal_ladder};
use curvekit::geodesics::{
    distance, enumerate_efficient_geodesics, reduce_intersections, DistanceKind, IminTable,
    IminValue, ReduceOptions, ReductionTrace, StepReason, Tail,
};
use curvekit::ladder::{l10, Ladder};
use curvekit::surface::SurfaceComplex;
use curvekit::surgery::constructions::spiral_constructions;
use curvekit::surgery::{
    classify_surgery, find_bands, find_spirals, rectangle_side, spiral_addition, spiral_surgery,
    surger, AdditionSite, SurgeryArc, SurgeryKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

pub type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(l: &Ladder, max_d: usize) -> Result<Option<usize>, String> {
    let r = distance(l, max_d).map_err(|e| e.to_string())?;
    Ok(match r.kind {
        DistanceKind::Exact { d } => Some(d),
        DistanceKind::AtLeast { .. } => None,
    })
}

/// L10 with one addition at each of its two bicorns. After the first
/// addition the second bicorn carries labels (8, 11).
pub fn doubly_added() -> Ladder {
    let once = spiral_addition(&l10(), AdditionSite::Bicorn { v_arc: 2, w_arc: 5 }, 1).unwrap();
    spiral_addition(
        &once,
        AdditionSite::Bicorn {
            v_arc: 8,
            w_arc: 11,
        },
        1,
    )
    .unwrap()
}

pub fn reference_pair() -> Outcome {
    let l = l10();
    let c = SurfaceComplex::new(&l).map_err(|e| e.to_string())?;
    let dec = c.decomposition();
    let oracle = Census::of(l.top(), l.bottom());
    ensure(c.genus() == 2 && oracle.genus == 2, || {
        format!("genus {} / oracle {}", c.genus(), oracle.genus)
    })?;
    ensure(l.n() == 10, || format!("i = {}", l.n()))?;
    ensure((dec.f(4), dec.f(6)) == (4, 4), || {
        format!("(F4, F6) = ({}, {})", dec.f(4), dec.f(6))
    })?;
    ensure((oracle.f(4), oracle.f(6)) == (4, 4), || {
        "oracle census differs".into()
    })?;
    let d = exact(&l, 4)?;
    ensure(d == Some(3), || format!("distance {d:?}"))?;
    Ok("genus 2, i = 10, (F4, F6) = (4, 4), EXACT(3)".into())
}

pub fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut hexagonal = 0;
    let total = 1000;
    for _ in 0..total {
        let n = rng.gen_range(3..40);
        let l = random_minimal_ladder(&mut rng, n);
        let census = Census::of(l.top(), l.bottom());
        let dec = SurfaceComplex::new(&l)
            .map_err(|e| e.to_string())?
            .decomposition();
        ensure(
            dec.counts.iter().all(|(s, c)| census.f(*s) == *c) && dec.genus == census.genus,
            || {
                format!(
                    "library census {:?} differs from oracle {:?} on {l:?}",
                    dec.counts, census.faces
                )
            },
        )?;
        ensure(census.euler_identity(), || {
            format!("4g - 4 identity fails on {l:?}")
        })?;
        ensure(census.intersection_identity(), || {
            format!("i identity fails on {l:?}")
        })?;
        ensure(census.doubled_identity(), || {
            format!("2i identity fails on {l:?}")
        })?;
        if census.only_four_and_six() {
            hexagonal += 1;
            ensure(census.f(4) + 6 * census.genus == n + 6, || {
                format!("F4 = i - 6g + 6 fails on {l:?}")
            })?;
        }
    }
    ensure(hexagonal > 0, || "no ladder with only 4- and 6-gons".into())?;
    Ok(format!(
        "{total} ladders, {hexagonal} with only 4- and 6-gons"
    ))
}

/// Ladders whose distance the suite decides: fixtures plus random pairs
/// with only 4- and 6-gons.
pub fn distance_corpus() -> Vec<Ladder> {
    let mut out = vec![l10(), doubly_added()];
    for c in spiral_constructions() {
        out.push(c.build().unwrap());
    }
    out.extend(hexagonal_corpus(20, 3));
    out
}

pub fn distance_bound() -> Outcome {
    let mut checked = 0;
    for l in distance_corpus() {
        let Ok(r) = distance(&l, 4) else { continue };
        if let DistanceKind::Exact { d } = r.kind {
            ensure(within_bound(d, l.n()), || {
                format!("EXACT({d}) with i = {} breaks the bound", l.n())
            })?;
            checked += 1;
        }
    }
    ensure(checked >= 3, || format!("only {checked} exact distances"))?;
    Ok(format!("{checked} exact distances within 2 log2(i) + 2"))
}

pub fn confluence() -> Outcome {
    let mut memo = HashMap::new();
    let seqs = all_sequences(5, 7);
    for s in &seqs {
        let forms = all_normal_forms(s, &mut memo);
        let ours = sawtooth(&IntersectionSequence::new(
            1,
            s.iter().map(|&x| x as usize).collect(),
        ))
        .entries;
        let ours: Vec<u8> = ours.iter().map(|&x| x as u8).collect();
        ensure(forms.len() == 1, || {
            format!("{s:?} has normal forms {forms:?}")
        })?;
        ensure(forms.contains(&ours), || {
            format!("{s:?}: implementation gives {ours:?}, rewriting gives {forms:?}")
        })?;
        let as_usize: Vec<usize> = ours.iter().map(|&x| x as usize).collect();
        ensure(is_sawtooth(&as_usize), || {
            format!("{ours:?} is not sawtooth")
        })?;
    }
    Ok(format!("{} sequences, one normal form each", seqs.len()))
}

pub fn extended_fixtures() -> Outcome {
    let seq = |arc, e: &[usize]| IntersectionSequence::new(arc, e.to_vec());
    let a = extend(&seq(1, &[1, 2]), &seq(2, &[3, 4]), 10).map_err(|e| e.to_string())?;
    ensure(a.entries == [0, 1, 2, 0, 3, 4, 0], || {
        format!("extend gives {:?}", a.entries)
    })?;
    let s = sawtooth(&a);
    ensure(s.entries == [0, 1, 2, 3, 4, 0, 0], || {
        format!("sawtooth gives {:?}", s.entries)
    })?;
    let b = extend(&seq(1, &[1, 2]), &seq(2, &[1, 2, 3, 4]), 10).map_err(|e| e.to_string())?;
    ensure(b.entries == [0, 1, 2, 0, 1, 2, 3, 4, 0], || {
        format!("extend gives {:?}", b.entries)
    })?;
    Ok("(0,1,2,0,3,4,0) -> (0,1,2,3,4,0,0); (0,1,2,0,1,2,3,4,0)".into())
}

pub fn spiral_deltas() -> Outcome {
    let mut widths = Vec::new();
    let mut fig6 = false;
    for c in spiral_constructions() {
        let l = c.build().map_err(|e| e.to_string())?;
        let spiral = c
            .spiral(&l)
            .ok_or_else(|| format!("{}: spiral not found", c.name))?;
        let before = Census::of(l.top(), l.bottom());
        let mut applied = 0;
        for &w in &spiral.band.w_arcs {
            let Ok((out, trace)) = spiral_surgery(&l, &spiral, w) else {
                continue;
            };
            applied += 1;
            let revalidated = Ladder::new(out.top().to_vec(), out.bottom().to_vec())
                .map_err(|e| e.to_string())?;
            SurfaceComplex::new(&revalidated).map_err(|e| format!("{}: {e}", c.name))?;
            let after = Census::of(out.top(), out.bottom());
            ensure(l.n() - out.n() == c.width && trace.width == c.width, || {
                format!("{}: i {} -> {}, width {}", c.name, l.n(), out.n(), c.width)
            })?;
            ensure(before.f(4) - after.f(4) == c.width, || {
                format!("{}: F4 {} -> {}", c.name, before.f(4), after.f(4))
            })?;
            ensure(
                before.large() == after.large() && before.genus == after.genus,
                || {
                    format!(
                        "{}: larger polygons {:?} -> {:?}",
                        c.name,
                        before.large(),
                        after.large()
                    )
                },
            )?;
        }
        ensure(applied > 0, || {
            format!("{}: no w-arc admits spiral surgery", c.name)
        })?;
        widths.push(c.width);
        fig6 |= c.length == 14 && c.width == 5;
    }
    widths.sort();
    ensure(widths == [1, 2, 3, 4, 5], || format!("widths {widths:?}"))?;
    ensure(fig6, || "no length-14 width-5 spiral".into())?;
    Ok("widths 1..5 including length 14 / width 5; di = dF4 = -width".into())
}

/// Ladders with at least one band of rectangles.
pub fn banded_ladders(count: usize, seed: u64) -> Vec<Ladder> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(6..16);
        let l = random_minimal_ladder(&mut rng, n);
        let c = SurfaceComplex::new(&l).unwrap();
        if !find_bands(&c).is_empty() {
            out.push(l);
        }
    }
    out
}

pub fn rectangle_surgeries() -> Outcome {
    let mut applicable = 0;
    let mut sites = 0;
    for l in banded_ladders(50, 7) {
        let c = SurfaceComplex::new(&l).map_err(|e| e.to_string())?;
        let g = c.graph();
        let before = Census::of(l.top(), l.bottom());
        for face in (0..g.face_count()).filter(|&f| g.face_len(f) == 4) {
            for w in 1..=l.n() {
                let Some(side) = rectangle_side(&c, face, w) else {
                    continue;
                };
                sites += 1;
                let arc = SurgeryArc::beside_w_arc(l.n(), w, side);
                let kinds = classify_surgery(&l, arc);
                for kind in [SurgeryKind::PlusPlus, SurgeryKind::MinusMinus] {
                    if !kinds.contains(&kind) {
                        continue;
                    }
                    applicable += 1;
                    for curve in surger(&l, arc, kind).map_err(|e| e.to_string())? {
                        let Some(out) = curve.ladder else { continue };
                        let after = Census::of(out.top(), out.bottom());
                        let preserved = after.genus == before.genus
                            && after.f(2) == 0
                            && after.large() == before.large();
                        ensure(!preserved, || {
                            format!(
                                "{kind} beside w-arc {w} of face {face} keeps the census on {l:?}"
                            )
                        })?;
                    }
                }
            }
        }
    }
    ensure(applicable > 0, || "no ++ or -- surgery applied".into())?;
    Ok(format!(
        "{sites} rectangle arcs, {applicable} ++/-- surgeries, no census kept"
    ))
}

pub fn reference_addition() -> Outcome {
    let l = doubly_added();
    let census = Census::of(l.top(), l.bottom());
    ensure(l.n() == 12, || format!("i = {}", l.n()))?;
    ensure((census.f(4), census.f(6)) == (6, 4), || {
        format!("census {:?}", census.faces)
    })?;
    let r = distance(&l, 4).map_err(|e| e.to_string())?;
    ensure(r.kind == DistanceKind::Exact { d: 4 }, || {
        format!("distance {}", r.kind)
    })?;
    let w = r.witness.ok_or("no witness")?;
    w.verify().map_err(|e| e.to_string())?;
    ensure(w.length() == 4, || {
        format!("witness of length {}", w.length())
    })?;
    Ok("i = 12, (F4, F6) = (6, 4), EXACT(4) with verified witness".into())
}

pub fn imin_lookup() -> Outcome {
    let t = IminTable::builtin();
    let a = t.lookup(4, 2, &[4, 0, 0, 0]);
    let b = t.lookup(4, 2, &[0, 0, 0, 1]);
    ensure(a == IminValue::Exact(12), || {
        format!("(4,2,(4,0,0,0)) -> {a:?}")
    })?;
    ensure(b == IminValue::LowerBound(13), || {
        format!("(4,2,(0,0,0,1)) -> {b:?}")
    })?;
    Ok("exact 12; lower bound 13".into())
}

/// Ladders with only 4- and 6-gons: random pairs of genus 2, some with
/// spiral additions at bicorns.
pub fn hexagonal_corpus(count: usize, seed: u64) -> Vec<Ladder> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(8..11);
        let Some(mut l) = random_hexagonal_ladder(&mut rng, n, 2) else {
            continue;
        };
        for _ in 0..rng.gen_range(0..3) {
            let c = SurfaceComplex::new(&l).unwrap();
            let sites: Vec<_> = c
                .find_bicorns()
                .into_iter()
                .filter(|b| b.pushoff.is_some())
                .collect();
            if sites.is_empty() {
                break;
            }
            let b = sites[rng.gen_range(0..sites.len())];
            l = spiral_addition(&l, b.into(), rng.gen_range(1..4)).unwrap();
        }
        out.push(l);
    }
    out
}

/// Distance-3 ladders carrying long spirals.
pub fn spiral_corpus() -> Vec<Ladder> {
    let mut out: Vec<Ladder> = spiral_constructions()
        .iter()
        .map(|c| c.build().unwrap())
        .collect();
    for m in 3..7 {
        out.push(
            spiral_addition(
                &l10(),
                AdditionSite::Run {
                    start: 0,
                    length: 1,
                },
                m,
            )
            .unwrap(),
        );
        out.push(spiral_addition(&l10(), AdditionSite::Bicorn { v_arc: 2, w_arc: 5 }, m).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for l in hexagonal_corpus(6, 13) {
        let c = SurfaceComplex::new(&l).unwrap();
        if let Some(b) = c.find_bicorns().into_iter().find(|b| b.pushoff.is_some()) {
            out.push(spiral_addition(&l, b.into(), rng.gen_range(3..6)).unwrap());
        }
    }
    out.retain(|l| exact(l, 3) == Ok(Some(3)));
    out
}

pub fn rigidity() -> Outcome {
    let (mut compared, mut paths, mut spirals) = (0, 0, 0);
    for l in spiral_corpus() {
        let complex = SurfaceComplex::new(&l).map_err(|e| e.to_string())?;
        let g = complex.graph();
        let arcs = reference_arcs(&complex).map_err(|e| e.to_string())?;
        let set = enumerate_efficient_geodesics(&l, 3).map_err(|e| e.to_string())?;
        for spiral in find_spirals(&complex) {
            spirals += 1;
            let labels = spiral.interior_w_arcs(&complex);
            for p in &set.paths {
                let Tail::Last(_) = p.tail else { continue };
                paths += 1;
                let path = [p.first.clone()];
                let graphs = dot_graphs_over(g, &arcs, &path, &labels);
                let counts: Vec<usize> = labels
                    .iter()
                    .map(|&k| arcs[k - 1].crossings(g, &p.first))
                    .collect();
                for i in 0..graphs.len() {
                    ensure(graphs[i].sequence.len() == counts[i], || {
                        format!("arc {} count mismatch on {l:?}", labels[i])
                    })?;
                    for j in i + 1..graphs.len() {
                        compared += 1;
                        ensure(counts[i] == counts[j], || {
                            format!(
                                "arcs {} and {} are crossed {} and {} times on {l:?}",
                                labels[i], labels[j], counts[i], counts[j]
                            )
                        })?;
                        ensure(same_or_reversed(&graphs[i], &graphs[j]), || {
                            format!(
                                "dot graphs over arcs {} and {} differ on {l:?}",
                                labels[i], labels[j]
                            )
                        })?;
                    }
                }
            }
        }
    }
    ensure(compared > 0, || "no pair of interior arcs compared".into())?;
    Ok(format!(
        "{spirals} spirals, {paths} geodesics, {compared} pairs of interior dot graphs agree"
    ))
}

/// Refusals name their reason and accepted steps carry an unchanged,
/// recomputed distance; the final pair's distance is recomputed here.
fn check_trace(t: &ReductionTrace, max_d: usize) -> Result<(), String> {
    for s in &t.steps {
        match s.reason {
            StepReason::Accepted => ensure(
                s.accepted && s.distance_after == Some(s.distance_before),
                || {
                    format!(
                        "step {} accepted without an equal recomputed distance",
                        s.step
                    )
                },
            )?,
            StepReason::DistanceVeto => ensure(
                !s.accepted && s.distance_after.is_some_and(|d| d != s.distance_before),
                || format!("step {} vetoed without a changed distance", s.step),
            )?,
            StepReason::WidthBound | StepReason::NoStackedRegion | StepReason::SurgeryFailed => {
                ensure(!s.accepted && !s.detail.is_empty(), || {
                    format!("step {} refused without detail", s.step)
                })?
            }
        }
    }
    let recomputed = distance(&t.result, max_d).map_err(|e| e.to_string())?.kind;
    ensure(recomputed == t.distance, || {
        format!("final distance {} recomputed as {recomputed}", t.distance)
    })?;
    ensure(
        t.accepted()
            .all(|s| s.i_after.is_some_and(|i| i < s.i_before)),
        || "an accepted step does not lower i".into(),
    )?;
    ensure(t.is_explained(), || {
        "the library disagrees about the trace".into()
    })
}

pub fn reduction_safety() -> Outcome {
    let mut inputs = vec![
        (doubly_added(), IminTable::builtin()),
        (doubly_added(), IminTable::empty()),
    ];
    for c in spiral_constructions() {
        inputs.push((c.build().unwrap(), IminTable::builtin()));
    }
    for l in hexagonal_corpus(10, 11) {
        let bicorn = SurfaceComplex::new(&l)
            .unwrap()
            .find_bicorns()
            .into_iter()
            .find(|b| b.pushoff.is_some());
        if let Some(b) = bicorn {
            inputs.push((
                spiral_addition(&l, b.into(), 1).unwrap(),
                IminTable::empty(),
            ));
        }
    }
    let (mut steps, mut accepted, mut traces) = (0, 0, 0);
    for (l, table) in &inputs {
        let Ok(t) = reduce_intersections(l, table, ReduceOptions::default()) else {
            continue;
        };
        check_trace(&t, ReduceOptions::default().max_d)?;
        traces += 1;
        steps += t.steps.len();
        accepted += t.accepted().count();
    }
    ensure(accepted > 0 && steps > accepted, || {
        format!("{steps} steps, {accepted} accepted")
    })?;
    Ok(format!(
        "{traces} traces, {steps} steps, {accepted} accepted, none unexplained"
    ))
}

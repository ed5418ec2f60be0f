//! Seeded random words, moves and diagrams for property tests and suites.

use std::sync::Arc;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve_diagram::{apply_move, from_word, run_length, simplest_between, CurveDiagram, Move, MoveOutcome, Param};
use crate::geom;
use crate::surface_group::{free_reduce, GroupWord};
use crate::surface_model::SurfaceModel;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Freely reduced word of length `1..=max_len` (possibly shorter after
/// reduction, never empty).
pub fn random_word(rng: &mut SampleRng, genus: usize, max_len: usize) -> GroupWord {
    loop {
        let len = rng.gen_range(1..=max_len.max(1));
        let mut v: Vec<i32> = Vec::with_capacity(len);
        while v.len() < len {
            let g = rng.gen_range(1..=2 * genus as i32);
            let l = if rng.gen_bool(0.5) { g } else { -g };
            if v.last() != Some(&-l) {
                v.push(l);
            }
        }
        let v = free_reduce(&v);
        if !v.is_empty() {
            return GroupWord::new(v);
        }
    }
}

/// Product of `k` random conjugates of the relator or its inverse.
pub fn random_relator_product(rng: &mut SampleRng, model: &SurfaceModel, k: usize, conj_len: usize) -> GroupWord {
    let r = GroupWord::new(model.relator());
    let mut acc = GroupWord::empty();
    for _ in 0..k {
        let u = random_word(rng, model.genus(), conj_len);
        let rr = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
        acc = acc.concat(&u).concat(&rr).concat(&u.inverse());
    }
    acc
}

/// Random applicable move with its outcome, or `None` after `attempts`
/// failed proposals.  Vertex pushes that lengthen the curve are proposed
/// only while it has fewer than `max_crossings` crossings.
pub fn random_move(
    rng: &mut SampleRng,
    c: &CurveDiagram,
    attempts: usize,
    max_crossings: usize,
) -> Option<(Move, MoveOutcome)> {
    for _ in 0..attempts {
        let Some(m) = propose(rng, c, max_crossings) else { continue };
        if let Ok(o) = apply_move(c, &m) {
            return Some((m, o));
        }
    }
    None
}

fn random_param_between(rng: &mut SampleRng, lo: Param, hi: Param) -> Param {
    let k = rng.gen_range(1..8i64);
    let t = lo + (hi - lo) * Param::new(k, 8);
    if t <= lo || t >= hi {
        simplest_between(lo, hi)
    } else {
        t
    }
}

/// Random free parameter on side `s`, between two consecutive used ones.
fn random_free_param(rng: &mut SampleRng, c: &CurveDiagram, s: usize) -> Param {
    let mut used = c.params_on_side(s);
    used.push(Param::from_integer(0));
    used.push(Param::one());
    used.sort();
    used.dedup();
    let i = rng.gen_range(0..used.len() - 1);
    random_param_between(rng, used[i], used[i + 1])
}

fn propose(rng: &mut SampleRng, c: &CurveDiagram, max_crossings: usize) -> Option<Move> {
    let model = c.model();
    let n = c.num_crossings();
    let chords = c.num_chords();
    let kind = rng.gen_range(0..7);
    match kind {
        0 if n > 0 => {
            let k = rng.gen_range(0..n);
            let s = c.crossings()[k].side;
            Some(Move::Slide { crossing: k, t: random_free_param(rng, c, s) })
        }
        1 if n > 0 && n < max_crossings => {
            let segs = c.segments();
            let sg = segs.choose(rng)?;
            // the side closest to the segment midpoint
            let m = geom::mid(sg.a, sg.b);
            let side = (0..model.num_sides())
                .min_by(|&x, &y| {
                    let (a, b) = model.side_endpoints(x);
                    let (p, q) = model.side_endpoints(y);
                    geom::point_seg_dist(m, a, b).total_cmp(&geom::point_seg_dist(m, p, q))
                })
                .unwrap();
            let t1 = random_free_param(rng, c, side);
            let t2 = random_free_param(rng, c, side);
            if t1 == t2 {
                return None;
            }
            Some(Move::EdgePushInsert {
                chord: sg.chord,
                seg: sg.idx,
                side,
                t_out: t1,
                t_back: t2,
                depth: rng.gen_range(0.1..0.6),
            })
        }
        2 if n > 1 => {
            let ks: Vec<usize> =
                (0..n).filter(|&k| c.crossings()[(k + 1) % n].side == model.pair(c.crossings()[k].side)).collect();
            ks.choose(rng).map(|&k| Move::EdgePushRemove { crossing: k })
        }
        3 if n > 0 => {
            let j = rng.gen_range(0..n);
            let ccw = rng.gen_bool(0.5);
            let run = run_length(c, j, ccw);
            let half = model.num_sides() / 2;
            let len = if n + model.num_sides() < max_crossings { rng.gen_range(1..=run) } else { run };
            if len <= half && n + model.num_sides() >= max_crossings {
                return None;
            }
            Some(Move::VertexPush { start: j, len, ccw })
        }
        4 => {
            let j = rng.gen_range(0..chords);
            let nseg = c.detours()[j].len() + usize::from(!c.is_closed_loop());
            Some(Move::DetourInsert { chord: j, seg: rng.gen_range(0..nseg) })
        }
        5 => {
            let j = rng.gen_range(0..chords);
            let w = &c.detours()[j];
            if w.is_empty() {
                return None;
            }
            let i = rng.gen_range(0..w.len());
            let r = rng.gen_range(0.005..0.08);
            let a = rng.gen_range(0.0..std::f64::consts::TAU);
            let to = [w[i][0] + r * a.cos(), w[i][1] + r * a.sin()];
            Some(Move::DetourMove { chord: j, index: i, to })
        }
        6 => {
            let j = rng.gen_range(0..chords);
            let w = &c.detours()[j];
            if w.is_empty() {
                return None;
            }
            Some(Move::DetourRemove { chord: j, index: rng.gen_range(0..w.len()) })
        }
        _ => None,
    }
}

/// `from_word` of a random word followed by up to `moves` random moves.
pub fn random_diagram(rng: &mut SampleRng, model: &Arc<SurfaceModel>, max_len: usize, moves: usize) -> CurveDiagram {
    let w = random_word(rng, model.genus(), max_len);
    let mut c = from_word(model, &w).expect("random words have layouts");
    for _ in 0..moves {
        if let Some((_, o)) = random_move(rng, &c, 20, 40) {
            c = o.diagram;
        }
    }
    c
}

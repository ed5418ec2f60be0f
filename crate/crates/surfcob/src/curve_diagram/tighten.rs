//! Geometric cyclic Dehn reduction of a diagram.
//!
//! Backtracks (a crossing immediately undone through the same edge) are
//! pulled back with edge pushes; runs circling a vertex through more than
//! half of its corners are pushed across the vertex.  A step is taken only
//! if it does not add self-intersections.

use num_traits::One;

use super::{apply_move, simplest_between, small_circle, CurveDiagram, Move, Param};

pub fn tighten(c: &CurveDiagram) -> CurveDiagram {
    let mut cur = c.clone();
    while let Some(next) = step(&cur) {
        cur = next;
    }
    cur
}

fn step(c: &CurveDiagram) -> Option<CurveDiagram> {
    let n = c.num_crossings();
    if n == 0 {
        return None;
    }
    if c.free_homotopy_word().is_empty() {
        return Some(small_circle(c.model_arc()));
    }
    let budget = c.num_self_intersections();
    let accept = |d: CurveDiagram| -> Option<CurveDiagram> {
        if d.num_self_intersections() <= budget {
            Some(d)
        } else {
            None
        }
    };
    let model = c.model();
    // backtracks
    for k in 0..n {
        let k1 = (k + 1) % n;
        if c.crossings[k1].side != model.pair(c.crossings[k].side) {
            continue;
        }
        if let Ok(o) = apply_move(c, &Move::EdgePushRemove { crossing: k }) {
            if let Some(d) = accept(o.diagram) {
                return Some(d);
            }
        }
        // narrow the tongue first: bring the return crossing next to the exit
        for cand in narrowed(c, k) {
            let Ok(s) = apply_move(c, &Move::Slide { crossing: k1, t: cand }) else { continue };
            let Ok(o) = apply_move(&s.diagram, &Move::EdgePushRemove { crossing: k }) else { continue };
            if let Some(d) = accept(o.diagram) {
                return Some(d);
            }
        }
    }
    // long runs around the vertex
    let half = model.num_sides() / 2;
    let mut cands: Vec<(usize, usize, bool)> = Vec::new();
    for j in 0..n {
        for ccw in [true, false] {
            let len = run_length(c, j, ccw);
            if len > half {
                cands.push((j, len, ccw));
            }
        }
    }
    cands.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    for (j, len, ccw) in cands {
        if let Ok(o) = apply_move(c, &Move::VertexPush { start: j, len, ccw }) {
            if let Some(d) = accept(o.diagram) {
                return Some(d);
            }
        }
    }
    None
}

/// Number of consecutive crossings from `j` circling a vertex in the given
/// direction through straight chords.
pub fn run_length(c: &CurveDiagram, j: usize, ccw: bool) -> usize {
    let m = c.model();
    let n = c.num_crossings();
    let ns = m.num_sides();
    let mut len = 1;
    while len < n {
        let a = c.crossings[(j + len - 1) % n].side;
        let b = c.crossings[(j + len) % n].side;
        let want = if ccw { (m.pair(a) + ns - 1) % ns } else { (m.pair(a) + 1) % ns };
        if b != want || !c.detours[(j + len) % n].is_empty() {
            break;
        }
        len += 1;
    }
    len
}

/// Candidate parameters for crossing `k+1` adjacent to where crossing `k`
/// re-enters, on either side.
fn narrowed(c: &CurveDiagram, k: usize) -> Vec<Param> {
    let n = c.num_crossings();
    let k1 = (k + 1) % n;
    let (side, t_in) = c.entry_of(k);
    debug_assert_eq!(side, c.crossings[k1].side);
    let params: Vec<Param> = c.params_on_side(side).into_iter().filter(|&x| x != c.crossings[k1].t).collect();
    let zero = Param::from_integer(0);
    let below = params.iter().filter(|&&x| x < t_in).max().copied().unwrap_or(zero);
    let above = params.iter().filter(|&&x| x > t_in).min().copied().unwrap_or(Param::one());
    let mut out = Vec::new();
    let cur = c.crossings[k1].t;
    let prefer_above = cur > t_in;
    let lo = simplest_between(below, t_in);
    let hi = simplest_between(t_in, above);
    if prefer_above {
        out.push(hi);
        out.push(lo);
    } else {
        out.push(lo);
        out.push(hi);
    }
    out.retain(|&x| x != cur);
    out
}

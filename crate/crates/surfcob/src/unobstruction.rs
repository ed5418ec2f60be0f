//! Unobstructedness through the universal cover, and the bigon criterion for
//! minimal position.
//!
//! Chord `j` of a curve with crossing letters `l_0 .. l_{n-1}` lies in the
//! tile `P_j = l_0 .. l_{j-1}` of the first period, and in `g^k P_j` in
//! period `k`, where `g` is the full crossing word.  Two lifts of chords `i`
//! and `j` share a tile iff `P_i^{-1} g^k P_j` is trivial; a double point
//! downstairs between those chords lifts to a double point upstairs exactly
//! for such shifts `k`.

use serde::{Deserialize, Serialize};

use crate::curve_diagram::{intersections, CurveDiagram, CurvePos, IntersectionPoint};
use crate::surface_group::{dehn_reduce, is_trivial, GroupWord};
use crate::Error;

/// Largest period shift examined before giving up.
pub const MAX_SHIFT: i64 = 4096;

/// Periodic development data of a lift.
#[derive(Debug, Clone)]
pub struct LiftWindow {
    pub period: GroupWord,
    /// Tile word `P_j` of each chord in period zero.
    pub prefixes: Vec<GroupWord>,
    /// Shifts `|k| <= radius` are examined.
    pub radius: i64,
}

/// A double point of the lift: self-intersection `point` of the base curve
/// between chords `chords.0` (period 0) and `chords.1` (period `shift`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftWitness {
    pub point: usize,
    pub location: IntersectionPoint,
    pub chords: (usize, usize),
    pub shift: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Unobstructedness {
    Unobstructed,
    /// The curve is null-homotopic; its periodic lift is not proper.
    NotProper,
    /// The lift has a double point, which bounds a teardrop.
    Obstructed(LiftWitness),
}

impl Unobstructedness {
    pub fn is_unobstructed(&self) -> bool {
        matches!(self, Unobstructedness::Unobstructed)
    }
}

pub fn lift_is_proper(c: &CurveDiagram) -> bool {
    !c.free_homotopy_word().is_empty()
}

/// Builds the lift window, with radius the least `K` such that the reduced
/// length of `g^K` exceeds `2 max |P_j| + |g|`.
pub fn develop_lift(c: &CurveDiagram) -> Result<LiftWindow, Error> {
    let model = c.model();
    let period = c.raw_word();
    if is_trivial(&period, model) {
        return Err(Error::TrivialWord);
    }
    let n = c.num_crossings();
    let prefixes: Vec<GroupWord> = (0..n).map(|j| GroupWord::new(period.letters[..j].to_vec())).collect();
    let maxp = prefixes.iter().map(GroupWord::len).max().unwrap_or(0);
    let bound = 2 * maxp + period.len();
    let mut k = 1;
    while dehn_reduce(&period.pow(k), model).len() <= bound {
        k += 1;
        if k > MAX_SHIFT {
            return Err(Error::WindowExhausted(k as usize));
        }
    }
    Ok(LiftWindow { period, prefixes, radius: k })
}

/// Same test with an explicit shift radius.
pub fn lift_witness_within(c: &CurveDiagram, w: &LiftWindow, radius: i64) -> Option<LiftWitness> {
    let model = c.model();
    for (idx, x) in c.self_intersections().into_iter().enumerate() {
        let (i, j) = (x.first.chord, x.second.chord);
        let pi_inv = w.prefixes[i].inverse();
        for k in std::iter::once(0).chain((1..=radius).flat_map(|k| [k, -k])) {
            let word = pi_inv.concat(&w.period.pow(k)).concat(&w.prefixes[j]);
            if is_trivial(&word, model) {
                return Some(LiftWitness { point: idx, location: x, chords: (i, j), shift: k });
            }
        }
    }
    None
}

/// `Ok(None)` when the lift is embedded, `Ok(Some(witness))` otherwise.
/// Null-homotopic curves are rejected.
pub fn lift_is_embedded(c: &CurveDiagram) -> Result<Option<LiftWitness>, Error> {
    let w = develop_lift(c)?;
    Ok(lift_witness_within(c, &w, w.radius))
}

pub fn is_unobstructed(c: &CurveDiagram) -> Unobstructedness {
    if c.is_closed_loop() || !lift_is_proper(c) {
        return Unobstructedness::NotProper;
    }
    match lift_is_embedded(c) {
        Ok(None) => Unobstructedness::Unobstructed,
        Ok(Some(w)) => Unobstructedness::Obstructed(w),
        Err(_) => Unobstructedness::NotProper,
    }
}

/// Arc of a curve between two intersection points, as crossing indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubArc {
    /// Traversed along the orientation of the curve.
    pub forward: bool,
    /// Crossings passed, in the order met.
    pub crossings: Vec<usize>,
}

/// Two intersection points joined by arcs whose loop is null-homotopic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BigonWitness {
    /// Indices into `intersections(c1, c2)`.
    pub points: (usize, usize),
    pub arc1: SubArc,
    pub arc2: SubArc,
}

fn along(a: &CurvePos, b: &CurvePos) -> bool {
    a.cmp_along(b) == std::cmp::Ordering::Less
}

/// Crossings passed moving forward from `from` to `to` (less than one period).
fn forward_crossings(n: usize, from: &CurvePos, to: &CurvePos) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let (a, b) = (from.chord, to.chord);
    let steps = if a == b && along(from, to) { 0 } else if a == b { n } else { (b + n - a) % n };
    (0..steps).map(|s| (a + s) % n).collect()
}

fn arc(c: &CurveDiagram, from: &CurvePos, to: &CurvePos, forward: bool) -> (SubArc, GroupWord) {
    let n = c.num_crossings();
    let model = c.model();
    if forward {
        let xs = forward_crossings(n, from, to);
        let w = GroupWord::new(xs.iter().map(|&k| model.letter_of_side(c.crossings()[k].side)).collect());
        (SubArc { forward, crossings: xs }, w)
    } else {
        let mut xs = forward_crossings(n, to, from);
        xs.reverse();
        let w = GroupWord::new(xs.iter().map(|&k| -model.letter_of_side(c.crossings()[k].side)).collect());
        (SubArc { forward, crossings: xs }, w)
    }
}

/// All pairs of intersection points of `c1` and `c2` joined by arcs of less
/// than one period on each curve whose loop (along `c1`, back along `c2`) is
/// null-homotopic.  Each unordered pair is reported once per arc choice.
pub fn find_bigons(c1: &CurveDiagram, c2: &CurveDiagram) -> Result<Vec<BigonWitness>, Error> {
    let pts = intersections(c1, c2)?;
    let model = c1.model();
    let mut out = Vec::new();
    for x in 0..pts.len() {
        for y in x + 1..pts.len() {
            for f1 in [true, false] {
                let (a1, w1) = arc(c1, &pts[x].first, &pts[y].first, f1);
                for f2 in [true, false] {
                    let (a2, w2) = arc(c2, &pts[y].second, &pts[x].second, f2);
                    if is_trivial(&w1.concat(&w2), model) {
                        out.push(BigonWitness { points: (x, y), arc1: a1.clone(), arc2: a2 });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn in_minimal_position(c1: &CurveDiagram, c2: &CurveDiagram) -> Result<bool, Error> {
    Ok(find_bigons(c1, c2)?.is_empty())
}

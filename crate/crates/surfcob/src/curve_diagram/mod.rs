//! Oriented immersed curves as chord diagrams on the polygon.
//!
//! A diagram with `n >= 1` crossings is a cyclic list of outgoing crossing
//! events `(side, t)`; the curve leaves the face at `point(side, t)` and comes
//! back in at `point(pair(side), 1 - t)`.  Chord `j` runs from the entry point
//! of crossing `j - 1` to the exit point of crossing `j` through the interior
//! waypoints `detours[j]`.  With `n = 0` the curve is the closed polygon
//! `detours[0]` inside the face.
//!
//! Side parameters are exact rationals, so the combinatorics of a straight
//! chord diagram (interleaving along the boundary) is exact.  Waypoints are
//! `f64`; incidence between polyline segments goes through exact orientation
//! predicates.

mod construct;
mod moves;
mod tighten;

use std::cmp::Ordering;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::geom::{self, Pt, SegHit};
use crate::surface_group::{self, GroupWord};
use crate::surface_model::{build_surface, SurfaceModel};
use crate::Error;

pub use construct::*;
pub use moves::{apply_move, Move, MoveOutcome};
pub use tighten::{run_length, tighten};

pub type Param = Ratio<i64>;

/// Converts an exact side parameter to `f64`.
pub fn param_f64(t: Param) -> f64 {
    *t.numer() as f64 / *t.denom() as f64
}

/// Simplest rational strictly inside the open interval `(lo, hi)`, found by
/// descending the Stern-Brocot tree.  Keeps denominators small under
/// repeated bisection.
pub fn simplest_between(lo: Param, hi: Param) -> Param {
    assert!(lo < hi, "empty interval");
    fn go(lo: Param, hi: Option<Param>) -> Param {
        let fl = lo.floor();
        let next = fl + Param::one();
        if hi.is_none_or(|h| next < h) {
            return next;
        }
        let h = hi.unwrap();
        let lo_frac = lo - fl;
        let new_lo = (h - fl).recip();
        let new_hi = if lo_frac.is_zero() { None } else { Some(lo_frac.recip()) };
        fl + go(new_lo, new_hi).recip()
    }
    if lo >= Param::zero() {
        go(lo, Some(hi))
    } else if hi <= Param::zero() {
        -go(-hi, Some(-lo))
    } else {
        Param::zero()
    }
}

/// One outgoing crossing event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub side: usize,
    pub t: Param,
}

impl Crossing {
    pub fn new(side: usize, t: Param) -> Self {
        Crossing { side, t }
    }
}

/// A position on a curve: chord index, segment index inside the chord's
/// polyline and the affine parameter along that segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePos {
    pub chord: usize,
    pub seg: usize,
    pub param: f64,
}

impl CurvePos {
    pub fn cmp_along(&self, other: &CurvePos) -> Ordering {
        (self.chord, self.seg)
            .cmp(&(other.chord, other.seg))
            .then(self.param.partial_cmp(&other.param).unwrap_or(Ordering::Equal))
    }
}

/// A transverse double point between two curves (or a curve and itself).
/// `degree` is 1 iff (first tangent, second tangent) is a positive basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub first: CurvePos,
    pub second: CurvePos,
    pub point: Pt,
    pub degree: u8,
}

/// A straight piece of a curve inside the face.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub chord: usize,
    pub idx: usize,
    pub a: Pt,
    pub b: Pt,
}

#[derive(Debug, Clone)]
pub struct CurveDiagram {
    model: Arc<SurfaceModel>,
    crossings: Vec<Crossing>,
    detours: Vec<Vec<Pt>>,
}

/// Element of the cyclic trace of a curve, used for structural edits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Item {
    Way(Pt),
    Cross(Crossing),
}

impl CurveDiagram {
    /// Builds a diagram and validates it.
    pub fn new(model: Arc<SurfaceModel>, crossings: Vec<Crossing>, detours: Vec<Vec<Pt>>) -> Result<Self, Error> {
        let c = CurveDiagram { model, crossings, detours };
        let v = c.validate();
        if v.is_empty() {
            Ok(c)
        } else {
            Err(Error::InvalidDiagram(v.join("; ")))
        }
    }

    /// Builds without validation; the caller validates.
    pub fn from_parts_unchecked(model: Arc<SurfaceModel>, crossings: Vec<Crossing>, detours: Vec<Vec<Pt>>) -> Self {
        CurveDiagram { model, crossings, detours }
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn model_arc(&self) -> &Arc<SurfaceModel> {
        &self.model
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn detours(&self) -> &[Vec<Pt>] {
        &self.detours
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Number of chords (one closed loop counts as one).
    pub fn num_chords(&self) -> usize {
        self.detours.len()
    }

    pub fn is_closed_loop(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn exit_point(&self, k: usize) -> Pt {
        let c = self.crossings[k];
        self.model.point(c.side, param_f64(c.t))
    }

    pub fn entry_point(&self, k: usize) -> Pt {
        let c = self.crossings[k];
        self.model.point(self.model.pair(c.side), 1.0 - param_f64(c.t))
    }

    /// Side and parameter where crossing `k` re-enters the face.
    pub fn entry_of(&self, k: usize) -> (usize, Param) {
        let c = self.crossings[k];
        (self.model.pair(c.side), Param::one() - c.t)
    }

    fn prev(&self, j: usize) -> usize {
        let n = self.crossings.len();
        (j + n - 1) % n
    }

    /// Vertices of chord `j`: entry point, waypoints, exit point.  For a
    /// closed loop the waypoints alone (the closing segment is implicit).
    pub fn chord_polyline(&self, j: usize) -> Vec<Pt> {
        if self.crossings.is_empty() {
            return self.detours[0].clone();
        }
        let mut v = Vec::with_capacity(self.detours[j].len() + 2);
        v.push(self.entry_point(self.prev(j)));
        v.extend_from_slice(&self.detours[j]);
        v.push(self.exit_point(j));
        v
    }

    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        if self.crossings.is_empty() {
            let p = &self.detours[0];
            for i in 0..p.len() {
                out.push(Segment { chord: 0, idx: i, a: p[i], b: p[(i + 1) % p.len()] });
            }
            return out;
        }
        for j in 0..self.crossings.len() {
            let p = self.chord_polyline(j);
            for i in 0..p.len() - 1 {
                out.push(Segment { chord: j, idx: i, a: p[i], b: p[i + 1] });
            }
        }
        out
    }

    /// Joint key of a crossing: the edge it sits on, as (lower side index,
    /// parameter on that side).
    pub fn joint_key(&self, c: &Crossing) -> (usize, Param) {
        let p = self.model.pair(c.side);
        if c.side < p {
            (c.side, c.t)
        } else {
            (p, Param::one() - c.t)
        }
    }

    /// Cyclic boundary coordinate `side + t` of a boundary point.
    fn boundary_coord(side: usize, t: Param) -> Param {
        Param::from_integer(side as i64) + t
    }

    pub(crate) fn to_trace(&self) -> Vec<Item> {
        if self.crossings.is_empty() {
            return self.detours[0].iter().map(|&p| Item::Way(p)).collect();
        }
        let mut v = Vec::new();
        for j in 0..self.crossings.len() {
            v.extend(self.detours[j].iter().map(|&p| Item::Way(p)));
            v.push(Item::Cross(self.crossings[j]));
        }
        v
    }

    /// Trace index at which a waypoint placed on segment `seg` of chord
    /// `chord` is inserted.
    pub(crate) fn trace_index_after(&self, chord: usize, seg: usize) -> usize {
        if self.crossings.is_empty() {
            seg + 1
        } else {
            (0..chord).map(|i| self.detours[i].len() + 1).sum::<usize>() + seg
        }
    }

    pub(crate) fn from_trace(model: Arc<SurfaceModel>, items: &[Item]) -> Self {
        let last = items.iter().rposition(|x| matches!(x, Item::Cross(_)));
        let Some(last) = last else {
            let pts = items
                .iter()
                .map(|x| match x {
                    Item::Way(p) => *p,
                    Item::Cross(_) => unreachable!(),
                })
                .collect();
            return CurveDiagram { model, crossings: Vec::new(), detours: vec![pts] };
        };
        let n = items.len();
        let mut crossings = Vec::new();
        let mut detours = Vec::new();
        let mut cur = Vec::new();
        for i in 0..n {
            match items[(last + 1 + i) % n] {
                Item::Way(p) => cur.push(p),
                Item::Cross(c) => {
                    crossings.push(c);
                    detours.push(std::mem::take(&mut cur));
                }
            }
        }
        CurveDiagram { model, crossings, detours }
    }

    /// Same curve traversed backwards.
    pub fn reverse(&self) -> Self {
        let m = &self.model;
        let items: Vec<Item> = self
            .to_trace()
            .into_iter()
            .rev()
            .map(|x| match x {
                Item::Cross(c) => Item::Cross(Crossing { side: m.pair(c.side), t: Param::one() - c.t }),
                w => w,
            })
            .collect();
        CurveDiagram::from_trace(self.model.clone(), &items)
    }

    /// Letters read at the crossings, in order.
    pub fn raw_word(&self) -> GroupWord {
        GroupWord::new(self.crossings.iter().map(|c| self.model.letter_of_side(c.side)).collect())
    }

    /// Free homotopy class as a cyclically Dehn-reduced word.
    pub fn free_homotopy_word(&self) -> GroupWord {
        surface_group::cyclic_reduce(&self.raw_word(), &self.model)
    }

    /// Signed count of crossings per edge label (`+1` leaving through the
    /// positively labelled side).
    pub fn crossing_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; 2 * self.model.genus()];
        for c in &self.crossings {
            let lab = self.model.labels()[c.side];
            v[lab.generator - 1] += lab.sign as i64;
        }
        v
    }

    /// All violations of the diagram invariants; empty iff valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let m = &self.model;
        let n = self.crossings.len();
        let ns = m.num_sides();
        if self.detours.len() != n.max(1) {
            out.push(format!("expected {} detour lists, found {}", n.max(1), self.detours.len()));
            return out;
        }
        for (k, c) in self.crossings.iter().enumerate() {
            if c.side >= ns {
                out.push(format!("crossing {k}: side {} out of range", c.side));
            }
            if c.t <= Param::zero() || c.t >= Param::one() {
                out.push(format!("crossing {k}: parameter {} outside (0,1)", c.t));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // interior waypoints
        for (j, d) in self.detours.iter().enumerate() {
            for (i, p) in d.iter().enumerate() {
                if !p[0].is_finite() || !p[1].is_finite() || !self.strictly_inside(*p) {
                    out.push(format!("chord {j}: waypoint {i} not strictly inside the face"));
                }
            }
        }
        if n == 0 && self.detours[0].len() < 3 {
            out.push("closed loop needs at least 3 waypoints".into());
            return out;
        }
        // coincident chord endpoints
        let mut zero_chord = vec![false; n];
        for j in 0..n {
            if self.detours[j].is_empty() {
                let (es, et) = self.entry_of(self.prev(j));
                let c = self.crossings[j];
                if es == c.side && et == c.t {
                    zero_chord[j] = true;
                    out.push(format!("chord {j} has coincident endpoints"));
                }
            }
        }
        // duplicate side parameters
        let mut keys: Vec<((usize, Param), usize)> =
            self.crossings.iter().enumerate().map(|(k, c)| (self.joint_key(c), k)).collect();
        keys.sort();
        for w in keys.windows(2) {
            if w[0].0 == w[1].0 {
                let (a, b) = (w[0].1, w[1].1);
                let adjacent_zero = (n > 0) && ((b == (a + 1) % n && zero_chord[b]) || (a == (b + 1) % n && zero_chord[a]));
                if !adjacent_zero {
                    out.push(format!("crossings {a} and {b} share side parameter {}", w[0].0 .1));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // straight chords along a side
        for j in 0..n {
            if self.detours[j].is_empty() {
                let (es, _) = self.entry_of(self.prev(j));
                if es == self.crossings[j].side {
                    out.push(format!("straight chord {j} runs along side {es}"));
                }
            }
        }
        let segs = self.segments();
        for s in &segs {
            if s.a == s.b {
                out.push(format!("chord {}: zero-length segment {}", s.chord, s.idx));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // transversality of the drawing
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                if self.segments_adjacent(&segs, i, j) {
                    let (a, b) = (&segs[i], &segs[j]);
                    let (p, q, r) = if geom::dist(a.b, b.a) == 0.0 { (a.a, a.b, b.b) } else { (b.a, b.b, a.b) };
                    if geom::orient(p, q, r) == 0 && geom::dot(geom::sub(q, p), geom::sub(r, q)) < 0.0 {
                        out.push(format!("chord {}: polyline folds back on itself", a.chord));
                    }
                    continue;
                }
                if geom::seg_hit(segs[i].a, segs[i].b, segs[j].a, segs[j].b) == SegHit::Degenerate {
                    out.push(format!(
                        "non-transverse contact between chord {} segment {} and chord {} segment {}",
                        segs[i].chord, segs[i].idx, segs[j].chord, segs[j].idx
                    ));
                }
            }
        }
        // the straight drawing realizes exactly the combinatorial interleavings
        for i in 0..n {
            if !self.detours[i].is_empty() {
                continue;
            }
            for j in (i + 1)..n {
                if !self.detours[j].is_empty() {
                    continue;
                }
                let comb = self.chords_interleave(i, j);
                let pi = self.chord_polyline(i);
                let pj = self.chord_polyline(j);
                let geo = geom::seg_hit(pi[0], pi[1], pj[0], pj[1]) == SegHit::Proper;
                if comb != geo {
                    out.push(format!("straight chords {i} and {j}: drawing disagrees with interleaving"));
                }
            }
        }
        out
    }

    fn strictly_inside(&self, p: Pt) -> bool {
        let m = &self.model;
        (0..m.num_sides()).all(|s| {
            let (a, b) = m.side_endpoints(s);
            geom::orient(a, b, p) > 0
        })
    }

    /// Do segments `i` and `j` (indices into `segments()`) share a vertex
    /// as consecutive pieces of one polyline?
    fn segments_adjacent(&self, segs: &[Segment], i: usize, j: usize) -> bool {
        let (a, b) = (&segs[i], &segs[j]);
        if a.chord != b.chord {
            return false;
        }
        if self.crossings.is_empty() {
            let len = self.detours[0].len();
            return (a.idx + 1) % len == b.idx || (b.idx + 1) % len == a.idx;
        }
        a.idx + 1 == b.idx || b.idx + 1 == a.idx
    }

    /// Boundary endpoints (entry, exit) of chord `j` as exact coordinates.
    fn chord_ends(&self, j: usize) -> (Param, Param) {
        let (es, et) = self.entry_of(self.prev(j));
        let c = self.crossings[j];
        (Self::boundary_coord(es, et), Self::boundary_coord(c.side, c.t))
    }

    /// Exact interleaving of the boundary endpoints of chords `i` and `j`.
    pub fn chords_interleave(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.chord_ends(i);
        let (c, d) = self.chord_ends(j);
        interleave(a, b, c, d)
    }

    /// All transverse self-intersections, ordered along the curve by their
    /// first branch.
    pub fn self_intersections(&self) -> Vec<IntersectionPoint> {
        let segs = self.segments();
        let mut out = Vec::new();
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                if self.segments_adjacent(&segs, i, j) {
                    continue;
                }
                if let Some(x) = crossing_of(&segs[i], &segs[j]) {
                    out.push(x);
                }
            }
        }
        out.sort_by(|a, b| a.first.cmp_along(&b.first).then(a.second.cmp_along(&b.second)));
        out
    }

    /// Number of transverse self-intersections.
    pub fn num_self_intersections(&self) -> usize {
        self.self_intersections().len()
    }

    /// Position on the curve of a point along a given segment.
    pub fn pos_point(&self, pos: &CurvePos) -> Pt {
        let poly = self.chord_polyline(pos.chord);
        let a = poly[pos.seg];
        let b = poly[(pos.seg + 1) % poly.len()];
        geom::lerp(a, b, pos.param)
    }

    /// Unit tangent of the curve at a position.
    pub fn pos_tangent(&self, pos: &CurvePos) -> Pt {
        let poly = self.chord_polyline(pos.chord);
        let a = poly[pos.seg];
        let b = poly[(pos.seg + 1) % poly.len()];
        geom::unit(geom::sub(b, a))
    }

    /// Exact side parameters used by this curve, keyed per edge.
    pub fn joint_keys(&self) -> Vec<(usize, Param)> {
        self.crossings.iter().map(|c| self.joint_key(c)).collect()
    }

    /// Event parameters present on side `s`, expressed in the coordinate of
    /// side `s` (exits through `s` and entries through `s`).
    pub fn params_on_side(&self, s: usize) -> Vec<Param> {
        let p = self.model.pair(s);
        let mut v: Vec<Param> = self
            .crossings
            .iter()
            .filter_map(|c| {
                if c.side == s {
                    Some(c.t)
                } else if c.side == p {
                    Some(Param::one() - c.t)
                } else {
                    None
                }
            })
            .collect();
        v.sort();
        v
    }

    /// Serializable form.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serializes")
    }
}

/// Exact cyclic interleaving of the point pairs {a, b} and {c, d}.
pub fn interleave(a: Param, b: Param, c: Param, d: Param) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |x: Param| lo < x && x < hi;
    inside(c) != inside(d)
}

fn crossing_of(s: &Segment, t: &Segment) -> Option<IntersectionPoint> {
    if geom::seg_hit(s.a, s.b, t.a, t.b) != SegHit::Proper {
        return None;
    }
    let (l, mu) = geom::seg_params(s.a, s.b, t.a, t.b);
    let d1 = geom::sub(s.b, s.a);
    let d2 = geom::sub(t.b, t.a);
    Some(IntersectionPoint {
        first: CurvePos { chord: s.chord, seg: s.idx, param: l },
        second: CurvePos { chord: t.chord, seg: t.idx, param: mu },
        point: geom::lerp(s.a, s.b, l),
        degree: if geom::cross(d1, d2) > 0.0 { 1 } else { 0 },
    })
}

/// Intersections between two distinct curves on a common model, ordered
/// along the first curve.  Shared side parameters are an error.
pub fn intersections(c1: &CurveDiagram, c2: &CurveDiagram) -> Result<Vec<IntersectionPoint>, Error> {
    check_joint(c1, c2)?;
    let s1 = c1.segments();
    let s2 = c2.segments();
    let mut out = Vec::new();
    for a in &s1 {
        for b in &s2 {
            match geom::seg_hit(a.a, a.b, b.a, b.b) {
                SegHit::Disjoint => {}
                SegHit::Degenerate => {
                    return Err(Error::InvalidDiagram(format!(
                        "non-transverse contact between the curves at chords {} and {}",
                        a.chord, b.chord
                    )))
                }
                SegHit::Proper => out.push(crossing_of(a, b).unwrap()),
            }
        }
    }
    out.sort_by(|a, b| a.first.cmp_along(&b.first));
    Ok(out)
}

/// Slides every crossing of `c` whose side parameter is also used by one of
/// `others` to a nearby free parameter, staying between the same neighbours.
/// Callers use this to make a configuration jointly generic.
pub fn separate_from(c: &CurveDiagram, others: &[&CurveDiagram]) -> Result<CurveDiagram, Error> {
    let mut cur = c.clone();
    for k in 0..c.num_crossings() {
        let key = cur.joint_key(&cur.crossings[k]);
        if !others.iter().any(|o| o.joint_keys().contains(&key)) {
            continue;
        }
        let side = cur.crossings[k].side;
        let t = cur.crossings[k].t;
        let mut used: Vec<Param> = cur.params_on_side(side).into_iter().filter(|&x| x != t).collect();
        for o in others {
            used.extend(o.params_on_side(side).into_iter().filter(|&x| x != t));
        }
        let below = used.iter().filter(|&&x| x < t).max().copied().unwrap_or(Param::from_integer(0));
        let above = used.iter().filter(|&&x| x > t).min().copied().unwrap_or(Param::one());
        let mut done = false;
        // a subdivided chord admits slides that a single waypoint blocks
        let refined = apply_move(&cur, &Move::DetourInsert { chord: k, seg: 0 }).map(|o| o.diagram);
        'search: for base in std::iter::once(cur.clone()).chain(refined) {
            for cand in [simplest_between(t, above), simplest_between(below, t)] {
                if let Ok(o) = apply_move(&base, &Move::Slide { crossing: k, t: cand }) {
                    cur = o.diagram;
                    done = true;
                    break 'search;
                }
            }
        }
        if !done {
            return Err(Error::Inapplicable(format!("could not separate crossing {k}")));
        }
    }
    Ok(cur)
}

/// Rejects pairs on different models or sharing a side parameter.
pub fn check_joint(c1: &CurveDiagram, c2: &CurveDiagram) -> Result<(), Error> {
    if c1.model() != c2.model() {
        return Err(Error::Precondition("curves live on different surface models".into()));
    }
    let k1 = c1.joint_keys();
    for k in c2.joint_keys() {
        if k1.contains(&k) {
            return Err(Error::ParameterCollision { edge: k.0, param: k.1.to_string() });
        }
    }
    Ok(())
}

impl PartialEq for CurveDiagram {
    /// Equality of cyclic traces up to the choice of starting chord.
    fn eq(&self, other: &Self) -> bool {
        if self.model() != other.model() {
            return false;
        }
        let a = self.to_trace();
        let b = other.to_trace();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let n = a.len();
        (0..n).any(|r| (0..n).all(|i| a[i] == b[(i + r) % n]))
    }
}

#[derive(Serialize, Deserialize)]
struct CrossingRepr {
    side: usize,
    t: String,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    genus: usize,
    total_area: f64,
    crossings: Vec<CrossingRepr>,
    detours: Vec<Vec<Pt>>,
}

pub fn parse_param(s: &str) -> Result<Param, Error> {
    let bad = || Error::Parse(format!("bad fraction {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Param::new(p, q))
}

impl Serialize for CurveDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramRepr {
            genus: self.model.genus(),
            total_area: self.model.total_area(),
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingRepr { side: c.side, t: format!("{}/{}", c.t.numer(), c.t.denom()) })
                .collect(),
            detours: self.detours.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DiagramRepr::deserialize(d)?;
        let model = Arc::new(build_surface(r.genus, r.total_area).map_err(D::Error::custom)?);
        let crossings = r
            .crossings
            .iter()
            .map(|c| Ok(Crossing { side: c.side, t: parse_param(&c.t)? }))
            .collect::<Result<Vec<_>, Error>>()
            .map_err(D::Error::custom)?;
        CurveDiagram::new(model, crossings, r.detours).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Param {
        Param::new(p, q)
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(r(0, 1), r(1, 1)), r(1, 2));
        assert_eq!(simplest_between(r(1, 3), r(1, 2)), r(2, 5));
        assert_eq!(simplest_between(r(1, 2), r(1, 1)), r(2, 3));
        assert_eq!(simplest_between(r(3, 10), r(7, 10)), r(1, 2));
        assert_eq!(simplest_between(r(0, 1), r(1, 100)), r(1, 101));
        for (a, b) in [(r(5, 17), r(6, 17)), (r(1, 1000), r(2, 1000)), (r(-3, 2), r(-1, 3))] {
            let x = simplest_between(a, b);
            assert!(a < x && x < b);
        }
    }

    #[test]
    fn interleaving() {
        assert!(interleave(r(0, 1), r(2, 1), r(1, 1), r(3, 1)));
        assert!(!interleave(r(0, 1), r(3, 1), r(1, 1), r(2, 1)));
    }

    #[test]
    fn param_parsing() {
        assert_eq!(parse_param("3/8").unwrap(), r(3, 8));
        assert_eq!(parse_param("1").unwrap(), r(1, 1));
        assert!(parse_param("1/0").is_err());
        assert!(parse_param("x").is_err());
    }
}

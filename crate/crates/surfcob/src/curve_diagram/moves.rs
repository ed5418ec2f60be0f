//! Elementary regular homotopies of a diagram and the area they sweep.
//!
//! The swept area of a move is computed chart by chart as the signed area of
//! the loop "new piece, then old piece backwards", closed along a side or
//! through a polygon corner.  It is positive when the curve moves to its
//! right.  Every move checks that no cusp appears during the homotopy; the
//! result is revalidated.

use num_traits::{One, Zero};

use super::{CurveDiagram, Crossing, Item, Param};
use crate::geom::{self, Pt};
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Move {
    /// Move crossing `crossing` along its side to parameter `t`.
    Slide { crossing: usize, t: Param },
    /// Push segment `seg` of chord `chord` through `side`: the curve leaves
    /// at `t_out`, runs along a tongue on the other side and comes back at
    /// `t_back` (both parameters on `side`).  `depth` is the tongue height as
    /// a fraction of its width.
    EdgePushInsert { chord: usize, seg: usize, side: usize, t_out: Param, t_back: Param, depth: f64 },
    /// Pull back the tongue formed by crossing `crossing` and the next one,
    /// which must cross the same edge in the opposite direction.
    EdgePushRemove { crossing: usize },
    /// Push the run of `len` crossings starting at `start`, which circles a
    /// vertex counterclockwise (`ccw`) or clockwise, across the vertex.
    VertexPush { start: usize, len: usize, ccw: bool },
    /// Move waypoint `index` of chord `chord` in a straight line to `to`.
    DetourMove { chord: usize, index: usize, to: Pt },
    /// Subdivide segment `seg` of chord `chord` at its midpoint.
    DetourInsert { chord: usize, seg: usize },
    /// Straighten away waypoint `index` of chord `chord`.
    DetourRemove { chord: usize, index: usize },
}

#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub diagram: CurveDiagram,
    pub swept_area: f64,
}

fn inapplicable(msg: impl Into<String>) -> Error {
    Error::Inapplicable(msg.into())
}

fn finish(c: &CurveDiagram, diagram: CurveDiagram, raw_area: f64) -> Result<MoveOutcome, Error> {
    let v = diagram.validate();
    if !v.is_empty() {
        return Err(inapplicable(format!("result is not a valid diagram: {}", v.join("; "))));
    }
    Ok(MoveOutcome { diagram, swept_area: raw_area * c.model().area_scale() })
}

fn rev(v: &[Pt]) -> Vec<Pt> {
    v.iter().rev().cloned().collect()
}

fn cat(parts: &[&[Pt]]) -> Vec<Pt> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Index of the first trace item belonging to chord `j`.
fn trace_offset(c: &CurveDiagram, j: usize) -> usize {
    (0..j).map(|i| c.detours[i].len() + 1).sum()
}

pub fn apply_move(c: &CurveDiagram, m: &Move) -> Result<MoveOutcome, Error> {
    match m {
        Move::Slide { crossing, t } => slide(c, *crossing, *t),
        Move::EdgePushInsert { chord, seg, side, t_out, t_back, depth } => {
            edge_insert(c, *chord, *seg, *side, *t_out, *t_back, *depth)
        }
        Move::EdgePushRemove { crossing } => edge_remove(c, *crossing),
        Move::VertexPush { start, len, ccw } => vertex_push(c, *start, *len, *ccw),
        Move::DetourMove { chord, index, to } => detour_move(c, *chord, *index, *to, false),
        Move::DetourInsert { chord, seg } => detour_insert(c, *chord, *seg),
        Move::DetourRemove { chord, index } => {
            let (a, b) = waypoint_neighbours(c, *chord, *index)?;
            detour_move(c, *chord, *index, geom::mid(a, b), true)
        }
    }
}

fn key_taken(c: &CurveDiagram, key: (usize, Param), except: &[usize]) -> bool {
    c.crossings.iter().enumerate().any(|(k, x)| !except.contains(&k) && c.joint_key(x) == key)
}

fn slide(c: &CurveDiagram, k: usize, t: Param) -> Result<MoveOutcome, Error> {
    let n = c.crossings.len();
    if k >= n {
        return Err(Error::OutOfRange(format!("crossing {k}")));
    }
    if t <= Param::zero() || t >= Param::one() {
        return Err(inapplicable("slide target outside (0,1)"));
    }
    let old = c.crossings[k];
    if t == old.t {
        return Ok(MoveOutcome { diagram: c.clone(), swept_area: 0.0 });
    }
    let new = Crossing { side: old.side, t };
    if key_taken(c, c.joint_key(&new), &[k]) {
        return Err(inapplicable("slide target parameter is occupied"));
    }
    let next = (k + 1) % n;
    let pk = c.chord_polyline(k);
    let pn = c.chord_polyline(next);
    if n == 1 && c.detours[0].len() == 1 {
        return Err(inapplicable("slide of a one-crossing curve with a single waypoint"));
    }
    let mut d = c.clone();
    d.crossings[k] = new;
    let e0 = c.exit_point(k);
    let e1 = d.exit_point(k);
    let s0 = c.entry_point(k);
    let s1 = d.entry_point(k);
    if pk.len() >= 3 {
        let w = pk[pk.len() - 2];
        let wpre = pk[pk.len() - 3];
        if geom::ray_hits_segment(w, wpre, e0, e1) {
            return Err(inapplicable("slide would create a cusp before the crossing"));
        }
    }
    if pn.len() >= 3
        && geom::ray_hits_segment(pn[1], pn[2], s0, s1) {
            return Err(inapplicable("slide would create a cusp after the crossing"));
        }
    let mut area = 0.0;
    let mut chords = vec![k, next];
    chords.dedup();
    for j in chords {
        let old_p = c.chord_polyline(j);
        let new_p = d.chord_polyline(j);
        area += geom::signed_area(&cat(&[&new_p, &rev(&old_p)]));
    }
    finish(c, d, area)
}

/// Vertex before and after waypoint `index` of chord `chord`.
fn waypoint_neighbours(c: &CurveDiagram, chord: usize, index: usize) -> Result<(Pt, Pt), Error> {
    let (poly, v, _) = waypoint_vertex(c, chord, index)?;
    let len = poly.len();
    Ok((poly[(v + len - 1) % len], poly[(v + 1) % len]))
}

/// Polyline of the chord, polyline index of the waypoint, and whether the
/// polyline is cyclic.
fn waypoint_vertex(c: &CurveDiagram, chord: usize, index: usize) -> Result<(Vec<Pt>, usize, bool), Error> {
    if chord >= c.detours.len() || index >= c.detours[chord].len() {
        return Err(Error::OutOfRange(format!("waypoint {index} of chord {chord}")));
    }
    if c.crossings.is_empty() {
        Ok((c.detours[0].clone(), index, true))
    } else {
        Ok((c.chord_polyline(chord), index + 1, false))
    }
}

/// Interior neighbour beyond `poly[v]` in direction `step`, if `poly[v]` is
/// itself an interior vertex.
fn outer(poly: &[Pt], v: usize, cyclic: bool, forward: bool) -> Option<Pt> {
    let len = poly.len();
    if cyclic {
        return Some(if forward { poly[(v + 1) % len] } else { poly[(v + len - 1) % len] });
    }
    if v == 0 || v + 1 == len {
        return None;
    }
    Some(if forward { poly[v + 1] } else { poly[v - 1] })
}

fn detour_move(c: &CurveDiagram, chord: usize, index: usize, to: Pt, remove: bool) -> Result<MoveOutcome, Error> {
    let (poly, v, cyclic) = waypoint_vertex(c, chord, index)?;
    let len = poly.len();
    if remove && cyclic && len <= 3 {
        return Err(inapplicable("a closed loop keeps at least three waypoints"));
    }
    let ia = (v + len - 1) % len;
    let ib = (v + 1) % len;
    let (a, b) = (poly[ia], poly[ib]);
    let q0 = poly[v];
    // the corner at the moving point must not fold back
    let o0 = geom::orient(a, b, q0);
    let o1 = geom::orient(a, b, to);
    if o0 * o1 <= 0 {
        let ab = geom::sub(b, a);
        let hits: Vec<f64> = if o0 == 0 && o1 == 0 {
            vec![geom::dot(geom::sub(q0, a), ab) / geom::dot(ab, ab), geom::dot(geom::sub(to, a), ab) / geom::dot(ab, ab)]
        } else {
            let (lam, _) = geom::seg_params(a, b, q0, to);
            vec![lam]
        };
        if hits.iter().any(|&l| !(l > 1e-12 && l < 1.0 - 1e-12)) {
            return Err(inapplicable("waypoint path meets the neighbour line outside the neighbours"));
        }
    }
    if let Some(apre) = outer(&poly, ia, cyclic, false) {
        if !(cyclic && len == 3) && geom::ray_hits_segment(a, apre, q0, to) {
            return Err(inapplicable("waypoint move would create a cusp at the previous vertex"));
        }
    }
    if let Some(bnext) = outer(&poly, ib, cyclic, true) {
        if !(cyclic && len == 3) && geom::ray_hits_segment(b, bnext, q0, to) {
            return Err(inapplicable("waypoint move would create a cusp at the next vertex"));
        }
    }
    if cyclic && len == 3 {
        // a triangle degenerates exactly when the moving vertex crosses the opposite side
        if o0 * o1 <= 0 {
            return Err(inapplicable("triangle loop would degenerate"));
        }
    }
    let mut d = c.clone();
    if remove {
        d.detours[chord].remove(index);
    } else {
        d.detours[chord][index] = to;
    }
    let area = geom::signed_area(&[a, to, b, q0]);
    finish(c, d, area)
}

fn detour_insert(c: &CurveDiagram, chord: usize, seg: usize) -> Result<MoveOutcome, Error> {
    if chord >= c.detours.len() {
        return Err(Error::OutOfRange(format!("chord {chord}")));
    }
    let poly = c.chord_polyline(chord);
    let cyclic = c.crossings.is_empty();
    let nseg = if cyclic { poly.len() } else { poly.len() - 1 };
    if seg >= nseg {
        return Err(Error::OutOfRange(format!("segment {seg} of chord {chord}")));
    }
    let a = poly[seg];
    let b = poly[(seg + 1) % poly.len()];
    let mut d = c.clone();
    // waypoint list index of the new vertex
    let at = if cyclic { seg + 1 } else { seg };
    d.detours[chord].insert(at, geom::mid(a, b));
    finish(c, d, 0.0)
}

/// Simple-loop and no-cusp checks for the tongue region of an edge push.
/// `loop_pts` is `[U, B1, G(tongue..), B2, V]` in the chart of `U`.
fn check_tongue(loop_pts: &[Pt], upre: Option<Pt>, vnext: Option<Pt>) -> Result<f64, Error> {
    if !geom::is_simple_polygon(loop_pts) {
        return Err(inapplicable("edge push region is not a simple disk"));
    }
    let area = geom::signed_area(loop_pts);
    let len = loop_pts.len();
    let (u, b1) = (loop_pts[0], loop_pts[1]);
    let (b2, v) = (loop_pts[len - 2], loop_pts[len - 1]);
    let ccw = area > 0.0;
    let wedge = |from: Pt, to: Pt, x: Pt| if ccw { geom::in_ccw_wedge(from, to, x) } else { geom::in_ccw_wedge(to, from, x) };
    if let Some(p) = upre {
        if wedge(geom::sub(b1, u), geom::sub(v, u), geom::sub(p, u)) {
            return Err(inapplicable("edge push would create a cusp at the segment start"));
        }
    }
    if let Some(p) = vnext {
        if wedge(geom::sub(u, v), geom::sub(b2, v), geom::sub(p, v)) {
            return Err(inapplicable("edge push would create a cusp at the segment end"));
        }
    }
    Ok(area)
}

#[allow(clippy::too_many_arguments)]
fn edge_insert(
    c: &CurveDiagram,
    chord: usize,
    seg: usize,
    side: usize,
    t_out: Param,
    t_back: Param,
    depth: f64,
) -> Result<MoveOutcome, Error> {
    let model = c.model();
    let n = c.crossings.len();
    if chord >= c.detours.len() || side >= model.num_sides() {
        return Err(Error::OutOfRange(format!("chord {chord} / side {side}")));
    }
    let poly = c.chord_polyline(chord);
    let cyclic = n == 0;
    let nseg = if cyclic { poly.len() } else { poly.len() - 1 };
    if seg >= nseg {
        return Err(Error::OutOfRange(format!("segment {seg} of chord {chord}")));
    }
    let zero = Param::zero();
    let one = Param::one();
    if t_out <= zero || t_out >= one || t_back <= zero || t_back >= one || t_out == t_back {
        return Err(inapplicable("edge push parameters must be distinct and inside (0,1)"));
    }
    if !(depth > 0.0 && depth.is_finite()) {
        return Err(inapplicable("tongue depth must be positive"));
    }
    let p = model.pair(side);
    let c_out = Crossing { side, t: t_out };
    let c_back = Crossing { side: p, t: one - t_back };
    if key_taken(c, c.joint_key(&c_out), &[]) || key_taken(c, c.joint_key(&c_back), &[]) {
        return Err(inapplicable("edge push parameter is occupied"));
    }
    if !cyclic {
        let (es, _) = c.entry_of((chord + n - 1) % n);
        if (seg == 0 && es == side) || (seg + 1 == nseg && c.crossings[chord].side == side) {
            return Err(inapplicable("segment endpoint lies on the pushed side"));
        }
    }
    let u = poly[seg];
    let v = poly[(seg + 1) % poly.len()];
    let upre = outer(&poly, seg, cyclic, false);
    let vnext = outer(&poly, (seg + 1) % poly.len(), cyclic, true);
    let tf = super::param_f64;
    let b1 = model.point(side, tf(t_out));
    let b2 = model.point(side, tf(t_back));
    let b1p = model.point(p, 1.0 - tf(t_out));
    let b2p = model.point(p, 1.0 - tf(t_back));
    let (pa, pb) = model.side_endpoints(p);
    let inward = geom::perp(geom::unit(geom::sub(pb, pa)));
    let z = geom::add(geom::mid(b1p, b2p), geom::scale(inward, depth * geom::dist(b1p, b2p)));
    let g = model.unfold_across(side);
    check_tongue(&[u, b1, g(z), b2, v], upre, vnext)?;

    let mut items = c.to_trace();
    let at = if cyclic { seg + 1 } else { trace_offset(c, chord) + seg };
    let ins = [Item::Cross(c_out), Item::Way(z), Item::Cross(c_back)];
    items.splice(at..at, ins);
    let d = CurveDiagram::from_trace(c.model.clone(), &items);
    let area = geom::signed_area(&[u, b1, b2, v]) + geom::signed_area(&[b1p, z, b2p]);
    finish(c, d, area)
}

fn edge_remove(c: &CurveDiagram, k: usize) -> Result<MoveOutcome, Error> {
    let model = c.model();
    let n = c.crossings.len();
    if k >= n {
        return Err(Error::OutOfRange(format!("crossing {k}")));
    }
    if n < 2 {
        return Err(inapplicable("no tongue to remove"));
    }
    let k1 = (k + 1) % n;
    let s = c.crossings[k].side;
    if c.crossings[k1].side != model.pair(s) {
        return Err(inapplicable("next crossing does not return through the same edge"));
    }
    let k2 = (k + 2) % n;
    let pk = c.chord_polyline(k);
    let tongue = c.chord_polyline(k1);
    let pk2 = c.chord_polyline(k2);
    let b1 = *pk.last().unwrap();
    let b2 = pk2[0];
    let g = model.unfold_across(s);
    let (u, v, upre, vnext);
    if n == 2 {
        let w = &c.detours[k];
        if w.len() < 3 {
            return Err(inapplicable("removing the tongue would leave a degenerate loop"));
        }
        u = *w.last().unwrap();
        v = w[0];
        upre = Some(w[w.len() - 2]);
        vnext = Some(w[1]);
    } else {
        u = pk[pk.len() - 2];
        v = pk2[1];
        upre = if pk.len() >= 3 { Some(pk[pk.len() - 3]) } else { None };
        vnext = if pk2.len() >= 3 { Some(pk2[2]) } else { None };
        if pk.len() == 2 && pk2.len() == 2 {
            let (es, _) = c.entry_of((k + n - 1) % n);
            if es == c.crossings[k2].side {
                return Err(inapplicable("merged chord would run along a side"));
            }
        }
    }
    let mut lp = vec![u, b1];
    lp.extend(tongue[1..tongue.len() - 1].iter().map(|&x| g(x)));
    lp.push(b2);
    lp.push(v);
    check_tongue(&lp, upre, vnext)?;

    let mut items = c.to_trace();
    let start = trace_offset(c, k) + c.detours[k].len();
    let count = c.detours[k1].len() + 2;
    let total = items.len();
    let drop: Vec<usize> = (0..count).map(|i| (start + i) % total).collect();
    let mut idx = 0;
    items.retain(|_| {
        let keep = !drop.contains(&idx);
        idx += 1;
        keep
    });
    let d = CurveDiagram::from_trace(c.model.clone(), &items);
    let area = -(geom::signed_area(&[u, b1, b2, v]) + geom::signed_area(&tongue));
    finish(c, d, area)
}

/// Corner shared by two adjacent sides.
fn shared_corner(n: usize, a: usize, b: usize) -> usize {
    if (a + n - 1) % n == b {
        a
    } else {
        debug_assert_eq!((a + 1) % n, b);
        b
    }
}

fn vertex_push(c: &CurveDiagram, j: usize, m: usize, ccw: bool) -> Result<MoveOutcome, Error> {
    let model = c.model();
    let n = c.crossings.len();
    let ns = model.num_sides();
    if j >= n {
        return Err(Error::OutOfRange(format!("crossing {j}")));
    }
    if m == 0 || m > n {
        return Err(inapplicable("vertex push needs 1 <= len <= number of crossings"));
    }
    if m >= ns || (m == n && n >= ns) {
        return Err(inapplicable("a full loop around the vertex has no replacement"));
    }
    let side = |i: usize| c.crossings[(j + i) % n].side;
    let step = |s: usize, ccw: bool| if ccw { (model.pair(s) + ns - 1) % ns } else { (model.pair(s) + 1) % ns };
    for i in 0..m - 1 {
        if side(i + 1) != step(side(i), ccw) {
            return Err(inapplicable("crossings do not circle a vertex"));
        }
    }
    for i in 1..m {
        if !c.detours[(j + i) % n].is_empty() {
            return Err(inapplicable("run chords must be straight"));
        }
    }
    let last = model.pair(side(m - 1));
    let (c0, cm) = if ccw { ((side(0) + 1) % ns, last) } else { (side(0), (last + 1) % ns) };
    // replacement sides, going the other way around
    let mut new_sides = Vec::with_capacity(ns - m);
    let mut s = if ccw { c0 } else { (c0 + ns - 1) % ns };
    for _ in 0..ns - m {
        new_sides.push(s);
        s = step(s, !ccw);
    }
    let arrive = if ccw {
        (model.pair(*new_sides.last().unwrap()) + 1) % ns
    } else {
        model.pair(*new_sides.last().unwrap())
    };
    if arrive != cm {
        return Err(inapplicable("replacement does not close up at the far corner"));
    }
    // new parameters: dyadic, closer to the vertex than anything on that side
    let run: Vec<usize> = (0..m).map(|i| (j + i) % n).collect();
    let mut existing: Vec<Crossing> =
        c.crossings.iter().enumerate().filter(|(k, _)| !run.contains(k)).map(|(_, x)| *x).collect();
    let mut new_cross = Vec::with_capacity(new_sides.len());
    for &s in &new_sides {
        let p = model.pair(s);
        let on_side: Vec<Param> = existing
            .iter()
            .filter_map(|x| {
                if x.side == s {
                    Some(x.t)
                } else if x.side == p {
                    Some(Param::one() - x.t)
                } else {
                    None
                }
            })
            .collect();
        let mut e = 3u32;
        let t = loop {
            if e > 40 {
                return Err(inapplicable("no room near the vertex"));
            }
            let eps = Param::new(1, 1i64 << e);
            // the new run goes clockwise iff the old one was counterclockwise;
            // clockwise runs leave near the start of each side
            let t = if ccw { eps } else { Param::one() - eps };
            let ok = on_side.iter().all(|&u| if ccw { t < u } else { t > u });
            if ok {
                break t;
            }
            e += 1;
        };
        let x = Crossing { side: s, t };
        existing.push(x);
        new_cross.push(x);
    }
    // end chords
    let cj = j;
    let cjm = (j + m) % n;
    let pj = c.chord_polyline(cj);
    let qm = c.chord_polyline(cjm);
    let whole = m == n;
    let mut tongue = false;
    if whole {
        // one chord carries both ends of the run
        if c.detours[cj].len() == 1 {
            return Err(inapplicable("both neighbours of the only waypoint would move"));
        }
        if c.detours[cj].is_empty() && model.pair(*new_sides.last().unwrap()) == new_sides[0] {
            tongue = true;
        }
    } else {
        if c.detours[cj].is_empty() {
            let (es, _) = c.entry_of((cj + n - 1) % n);
            if es == new_sides[0] {
                return Err(inapplicable("first chord would run along a side"));
            }
        }
        if c.detours[cjm].is_empty() && c.crossings[cjm].side == model.pair(*new_sides.last().unwrap()) {
            return Err(inapplicable("last chord would run along a side"));
        }
    }
    let p_c0 = model.corner(c0);
    let p_cm = model.corner(cm);
    let e_old = *pj.last().unwrap();
    let e_new = model.point(new_cross[0].side, super::param_f64(new_cross[0].t));
    let lastc = *new_cross.last().unwrap();
    let s_old = qm[0];
    let s_new = model.point(model.pair(lastc.side), 1.0 - super::param_f64(lastc.t));
    if pj.len() >= 3 {
        let (w, wpre) = (pj[pj.len() - 2], pj[pj.len() - 3]);
        if geom::ray_hits_segment(w, wpre, e_old, p_c0) || geom::ray_hits_segment(w, wpre, p_c0, e_new) {
            return Err(inapplicable("vertex push would create a cusp on the incoming chord"));
        }
    }
    if qm.len() >= 3 {
        let (w, wnext) = (qm[1], qm[2]);
        if geom::ray_hits_segment(w, wnext, s_old, p_cm) || geom::ray_hits_segment(w, wnext, p_cm, s_new) {
            return Err(inapplicable("vertex push would create a cusp on the outgoing chord"));
        }
    }

    let items = c.to_trace();
    let pos = trace_offset(c, j) + c.detours[j].len();
    let total = items.len();
    let mut rotated: Vec<Item> = (0..total).map(|i| items[(pos + i) % total]).collect();
    rotated.splice(0..m, new_cross.iter().map(|&x| Item::Cross(x)).collect::<Vec<_>>());
    let mut bend = Vec::new();
    if tongue {
        let (a, b) = model.side_endpoints(new_sides[0]);
        let inward = geom::perp(geom::unit(geom::sub(b, a)));
        bend.push(geom::add(geom::mid(s_new, e_new), geom::scale(inward, 0.5 * geom::dist(s_new, e_new))));
        rotated.push(Item::Way(bend[0]));
    }
    let d = CurveDiagram::from_trace(c.model.clone(), &rotated);

    // swept area, anchored at the corners the pieces collapse into
    let mut area = 0.0;
    if whole {
        let mut p_new = pj.clone();
        p_new[0] = s_new;
        *p_new.last_mut().unwrap() = e_new;
        p_new.splice(1..1, bend.iter().copied());
        area += geom::signed_area(&cat(&[&p_new, &[p_c0], &rev(&pj), &[p_cm]]));
    } else {
        let mut pj_new = pj.clone();
        *pj_new.last_mut().unwrap() = e_new;
        area += geom::signed_area(&cat(&[&pj_new, &[p_c0], &rev(&pj)]));
        let mut qm_new = qm.clone();
        qm_new[0] = s_new;
        area += geom::signed_area(&cat(&[&qm_new, &rev(&qm), &[p_cm]]));
    }
    for i in 1..m {
        let poly = c.chord_polyline((j + i) % n);
        let (es, _) = c.entry_of((j + i + n - 1) % n);
        let corner = model.corner(shared_corner(ns, es, c.crossings[(j + i) % n].side));
        area += geom::signed_area(&cat(&[&[corner], &rev(&poly)]));
    }
    for w in new_cross.windows(2) {
        let es = model.pair(w[0].side);
        let a = model.point(es, 1.0 - super::param_f64(w[0].t));
        let b = model.point(w[1].side, super::param_f64(w[1].t));
        let corner = model.corner(shared_corner(ns, es, w[1].side));
        area += geom::signed_area(&[a, b, corner]);
    }
    finish(c, d, area)
}

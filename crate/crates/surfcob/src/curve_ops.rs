//! Curve-level operations that realize cobordism relations: smoothing a
//! self double point, surgery at an intersection point, Dehn twists,
//! push-offs sweeping a prescribed area and finger moves.
//!
//! Smoothing and surgery reconnect the traces at the crossing through two
//! corner waypoints at distance `CORNER_EPS` from it, so they sweep no area.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::curve_diagram::{
    intersections, param_f64, simplest_between, Crossing, CurveDiagram, CurvePos, IntersectionPoint, Item, MoveOutcome, Param,
    Segment,
};
use crate::geom::{self, Pt};
use crate::invariants::{class_of, holonomy, homology_class, turning_number, CobordismClass};
use crate::{Error, GEOM_TOL};

pub const CORNER_EPS: f64 = 1e-7;

/// Collar width, in side-parameter units, used by [`push_off`] before the
/// bulge is added.
const PUSH_OFF_WIDTH: i64 = 1 << 24;
/// Collar width used for the copies spliced in by [`dehn_twist`].
const TWIST_WIDTH: i64 = 64;
const FAN_RAYS: usize = 24;
const MAX_BULGES: usize = 40;
const CANDIDATES: usize = 3;

fn corner(p: Pt, d_in: Pt, d_out: Pt, eps: f64) -> Pt {
    geom::add(p, geom::scale(geom::unit(geom::sub(d_out, d_in)), eps))
}

fn same_pos(a: &CurvePos, b: &CurvePos) -> bool {
    a.chord == b.chord && a.seg == b.seg && (a.param - b.param).abs() < 1e-9
}

fn find_point(pts: &[IntersectionPoint], x: &IntersectionPoint, swapped: bool) -> Option<IntersectionPoint> {
    pts.iter()
        .find(|p| {
            (same_pos(&p.first, &x.first) && same_pos(&p.second, &x.second))
                || (swapped && same_pos(&p.first, &x.second) && same_pos(&p.second, &x.first))
        })
        .cloned()
}

fn add_h(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn rotate_at(items: &[Item], at: usize) -> Vec<Item> {
    let mut v = items[at..].to_vec();
    v.extend_from_slice(&items[..at]);
    v
}

/// Orientation-respecting smoothing of `c` at the self-intersection `x`.
/// The first returned curve runs from the first passage through `x` to the
/// second, the other curve is the rest.
pub fn resolve_double_point(c: &CurveDiagram, x: &IntersectionPoint) -> Result<(CurveDiagram, CurveDiagram), Error> {
    let pts = c.self_intersections();
    let x = find_point(&pts, x, true).ok_or_else(|| Error::Precondition("not a self-intersection of the curve".into()))?;
    if pts.iter().filter(|p| geom::dist(p.point, x.point) < GEOM_TOL).count() > 1 {
        return Err(Error::Precondition("a third branch passes through the double point".into()));
    }
    let (p1, p2) = (x.first, x.second);
    let i1 = c.trace_index_after(p1.chord, p1.seg);
    let i2 = c.trace_index_after(p2.chord, p2.seg);
    let (i1, i2, p1, p2) = if i1 < i2 { (i1, i2, p1, p2) } else { (i2, i1, p2, p1) };
    let d1 = c.pos_tangent(&p1);
    let d2 = c.pos_tangent(&p2);
    let items = c.to_trace();
    let h = homology_class(c);
    let turn = turning_number(c)?;
    let si = pts.len();
    for eps in [CORNER_EPS, 1e-8, 1e-9, 1e-6] {
        let mut a = items[i1..i2].to_vec();
        a.push(Item::Way(corner(x.point, d2, d1, eps)));
        let mut b = items[i2..].to_vec();
        b.extend_from_slice(&items[..i1]);
        b.push(Item::Way(corner(x.point, d1, d2, eps)));
        let l1 = CurveDiagram::from_trace(c.model_arc().clone(), &a);
        let l2 = CurveDiagram::from_trace(c.model_arc().clone(), &b);
        if !l1.validate().is_empty() || !l2.validate().is_empty() {
            continue;
        }
        let (Ok(t1), Ok(t2)) = (turning_number(&l1), turning_number(&l2)) else { continue };
        let Ok(cross) = intersections(&l1, &l2) else { continue };
        let ok = t1 + t2 == turn
            && add_h(&homology_class(&l1), &homology_class(&l2)) == h
            && l1.num_self_intersections() + l2.num_self_intersections() + cross.len() + 1 == si;
        if ok {
            return Ok((l1, l2));
        }
    }
    Err(Error::InvalidDiagram("smoothing produced an invalid diagram".into()))
}

/// Smooths double points until every piece is embedded.
pub fn resolve_all(c: &CurveDiagram) -> Result<Vec<CurveDiagram>, Error> {
    let mut done = Vec::new();
    let mut todo = vec![c.clone()];
    while let Some(cur) = todo.pop() {
        match cur.self_intersections().first() {
            None => done.push(cur),
            Some(x) => {
                let (a, b) = resolve_double_point(&cur, x)?;
                todo.push(a);
                todo.push(b);
            }
        }
    }
    Ok(done)
}

/// Surgery `c1 #_x c2` at a degree-one intersection point: follow `c1` up to
/// `x`, turn onto `c2`, run once around it and turn back.
pub fn surgery(c1: &CurveDiagram, c2: &CurveDiagram, x: &IntersectionPoint) -> Result<CurveDiagram, Error> {
    if c1 == c2 {
        return Err(Error::Precondition("surgery needs two distinct curves; use resolve_double_point".into()));
    }
    let pts = intersections(c1, c2)?;
    let x = find_point(&pts, x, false).ok_or_else(|| Error::Precondition("not an intersection point of the two curves".into()))?;
    if x.degree != 1 {
        return Err(Error::DegreeZero);
    }
    let d1 = c1.pos_tangent(&x.first);
    let d2 = c2.pos_tangent(&x.second);
    let r1 = rotate_at(&c1.to_trace(), c1.trace_index_after(x.first.chord, x.first.seg));
    let r2 = rotate_at(&c2.to_trace(), c2.trace_index_after(x.second.chord, x.second.seg));
    let h = add_h(&homology_class(c1), &homology_class(c2));
    let turn = turning_number(c1)? + turning_number(c2)?;
    let si = c1.num_self_intersections() + c2.num_self_intersections() + pts.len() - 1;
    for eps in [CORNER_EPS, 1e-8, 1e-9, 1e-6] {
        let mut items = r1.clone();
        items.push(Item::Way(corner(x.point, d1, d2, eps)));
        items.extend_from_slice(&r2);
        items.push(Item::Way(corner(x.point, d2, d1, eps)));
        let out = CurveDiagram::from_trace(c1.model_arc().clone(), &items);
        if !out.validate().is_empty() {
            continue;
        }
        if turning_number(&out).ok() == Some(turn) && homology_class(&out) == h && out.num_self_intersections() == si {
            return Ok(out);
        }
    }
    Err(Error::InvalidDiagram("surgery produced an invalid diagram".into()))
}

/// Waypoints of a polyline moved `dist` along the left bisector (right for
/// negative `dist`); an open polyline keeps its end points.
fn offset_waypoints(poly: &[Pt], cyclic: bool, dist: f64) -> Vec<Pt> {
    let n = poly.len();
    let inner: Box<dyn Iterator<Item = usize>> = if cyclic { Box::new(0..n) } else { Box::new(1..n - 1) };
    inner
        .map(|i| {
            let w = poly[i];
            let prev = poly[(i + n - 1) % n];
            let next = poly[(i + 1) % n];
            let n1 = geom::perp(geom::unit(geom::sub(w, prev)));
            let n2 = geom::perp(geom::unit(geom::sub(next, w)));
            let bis = geom::unit(geom::add(n1, n2));
            let len = dist / geom::dot(bis, n1).max(0.2);
            geom::add(w, geom::scale(bis, len))
        })
        .collect()
}

fn side_length(c: &CurveDiagram, s: usize) -> f64 {
    let (a, b) = c.model().side_endpoints(s);
    geom::dist(a, b)
}

fn copies_at_width(c: &CurveDiagram, levels: usize, left: bool, avoid: &[&CurveDiagram], width: Param) -> Vec<CurveDiagram> {
    let m = levels as i64;
    let sign = if left { 1.0 } else { -1.0 };
    let zero = Param::from_integer(0);
    let one = Param::from_integer(1);
    // per crossing: available window on the chosen side
    let windows: Vec<Param> = c
        .crossings()
        .iter()
        .map(|x| {
            let mut used: Vec<Param> = c.params_on_side(x.side).into_iter().filter(|&t| t != x.t).collect();
            for o in avoid {
                used.extend(o.params_on_side(x.side));
            }
            let gap = if left {
                used.iter().filter(|&&t| t > x.t).min().copied().unwrap_or(one) - x.t
            } else {
                x.t - used.iter().filter(|&&t| t < x.t).max().copied().unwrap_or(zero)
            };
            (gap / 2).min(width)
        })
        .collect();
    (1..=m)
        .map(|l| {
            let crossings: Vec<Crossing> = c
                .crossings()
                .iter()
                .zip(&windows)
                .map(|(x, &w)| {
                    let lo = w * Ratio::new(2 * l - 1, 2 * m);
                    let hi = w * Ratio::new(2 * l, 2 * m);
                    let t = if left { simplest_between(x.t + lo, x.t + hi) } else { simplest_between(x.t - hi, x.t - lo) };
                    Crossing::new(x.side, t)
                })
                .collect();
            let shifted = CurveDiagram::from_parts_unchecked(c.model_arc().clone(), crossings, c.detours().to_vec());
            let detours: Vec<Vec<Pt>> = if c.is_closed_loop() {
                let min_side = (0..c.model().num_sides()).map(|s| side_length(c, s)).fold(f64::INFINITY, f64::min);
                let d = param_f64(width) * min_side * (2 * l - 1) as f64 / (2 * m) as f64;
                vec![offset_waypoints(&c.detours()[0], true, sign * d)]
            } else {
                (0..c.num_chords())
                    .map(|j| {
                        let old = c.chord_polyline(j);
                        let new = shifted.chord_polyline(j);
                        let d = 0.5 * (geom::dist(old[0], new[0]) + geom::dist(old[old.len() - 1], new[new.len() - 1]));
                        offset_waypoints(&old, false, sign * d)
                    })
                    .collect()
            };
            CurveDiagram::from_parts_unchecked(c.model_arc().clone(), shifted.crossings().to_vec(), detours)
        })
        .collect()
}

fn count(a: &CurveDiagram, b: &CurveDiagram) -> Option<usize> {
    intersections(a, b).ok().map(|v| v.len())
}

/// `levels` parallel copies of `c` on its left (or right), ordered by
/// distance from `c`, at most `width` away in side parameter.  Their side
/// parameters stay between the neighbouring parameters of `c` and `avoid`,
/// and each copy meets every curve of `avoid` as often as `c` does.
pub fn parallel_copies(
    c: &CurveDiagram,
    levels: usize,
    left: bool,
    avoid: &[&CurveDiagram],
    width: Param,
) -> Result<Vec<CurveDiagram>, Error> {
    let si = c.num_self_intersections();
    let base: Vec<Option<usize>> = avoid.iter().map(|o| count(c, o)).collect();
    let turn = turning_number(c)?;
    let mut w = width;
    for _ in 0..40 {
        let copies = copies_at_width(c, levels, left, avoid, w);
        let ok = copies.iter().enumerate().all(|(i, k)| {
            k.validate().is_empty()
                && turning_number(k).ok() == Some(turn)
                && k.num_self_intersections() == si
                && count(c, k) == Some(2 * si)
                && copies[..i].iter().all(|p| count(p, k) == Some(2 * si))
                && avoid.iter().zip(&base).all(|(o, &b)| b.is_some() && count(o, k) == b)
        });
        if ok {
            return Ok(copies);
        }
        w /= 2;
    }
    Err(Error::Inapplicable("no parallel copy found".into()))
}

/// Dehn twist of `beta` about the embedded essential curve `alpha`.  At
/// every point of `beta` on `alpha` the curve turns left onto a parallel
/// copy of `alpha`, runs once around it and continues along `beta`.
/// Homology transforms by `[beta] + (beta . alpha) [alpha]`.
pub fn dehn_twist(alpha: &CurveDiagram, beta: &CurveDiagram) -> Result<CurveDiagram, Error> {
    if alpha.num_self_intersections() > 0 {
        return Err(Error::Precondition("twist curve must be embedded".into()));
    }
    if alpha.free_homotopy_word().is_empty() {
        return Err(Error::Precondition("twist curve must be essential".into()));
    }
    let xs = intersections(beta, alpha)?;
    if xs.is_empty() {
        return Ok(beta.clone());
    }
    let copies = parallel_copies(alpha, xs.len(), true, &[beta], Ratio::new(1, TWIST_WIDTH))?;
    // the crossing of beta with copy k on the beta segment through x_k
    let mut splices = Vec::new();
    for (x, a) in xs.iter().zip(copies) {
        // the copy runs so that beta crosses it from right to left
        let a = if x.degree == 1 { a } else { a.reverse() };
        let pts = intersections(beta, &a)?;
        let y = pts
            .iter()
            .filter(|p| p.first.chord == x.first.chord && p.first.seg == x.first.seg)
            .min_by(|p, q| (p.first.param - x.first.param).abs().total_cmp(&(q.first.param - x.first.param).abs()))
            .cloned()
            .ok_or_else(|| Error::InvalidDiagram("parallel copy misses the segment of beta".into()))?;
        if y.degree != 1 {
            return Err(Error::InvalidDiagram("parallel copy crosses beta with the wrong degree".into()));
        }
        splices.push((y, a));
    }
    let turn = turning_number(beta)? + splices.iter().map(|(_, a)| turning_number(a)).sum::<Result<i64, Error>>()?;
    let mut h = homology_class(beta);
    for (_, a) in &splices {
        h = add_h(&h, &homology_class(a));
    }
    splices.sort_by(|(p, _), (q, _)| {
        beta.trace_index_after(p.first.chord, p.first.seg)
            .cmp(&beta.trace_index_after(q.first.chord, q.first.seg))
            .then(p.first.param.total_cmp(&q.first.param))
    });
    let items = beta.to_trace();
    for eps in [CORNER_EPS, 1e-8, 1e-9] {
        let mut out = Vec::new();
        let mut next = 0;
        for (y, a) in &splices {
            let at = beta.trace_index_after(y.first.chord, y.first.seg);
            out.extend_from_slice(&items[next..at]);
            next = at;
            let d1 = beta.pos_tangent(&y.first);
            let d2 = a.pos_tangent(&y.second);
            out.push(Item::Way(corner(y.point, d1, d2, eps)));
            out.extend(rotate_at(&a.to_trace(), a.trace_index_after(y.second.chord, y.second.seg)));
            out.push(Item::Way(corner(y.point, d2, d1, eps)));
        }
        out.extend_from_slice(&items[next..]);
        let t = CurveDiagram::from_trace(beta.model_arc().clone(), &out);
        if t.validate().is_empty() && turning_number(&t).ok() == Some(turn) && homology_class(&t) == h {
            return Ok(t);
        }
    }
    Err(Error::InvalidDiagram("twisted curve failed validation".into()))
}

/// `class_of(T_alpha beta) - class_of(beta) - (beta . alpha) class_of(alpha)`
/// together with the twisted curve.  Its `h` and `m` parts vanish; `hol` is
/// the real defect of the twist.
pub fn twist_defect(alpha: &CurveDiagram, beta: &CurveDiagram) -> Result<(CurveDiagram, CobordismClass), Error> {
    let t = dehn_twist(alpha, beta)?;
    let m = alpha.model();
    let k = m.pairing(&homology_class(beta), &homology_class(alpha));
    let d = &(&class_of(&t)? - &class_of(beta)?) - &(k * &class_of(alpha)?);
    Ok((t, d))
}

/// Distance along `dir` from `o` to the segment [p, q], if hit.
fn ray_dist(o: Pt, dir: Pt, p: Pt, q: Pt) -> Option<f64> {
    let e = geom::sub(q, p);
    let den = geom::cross(dir, e);
    if den.abs() < 1e-300 {
        return None;
    }
    let op = geom::sub(p, o);
    let s = geom::cross(op, e) / den;
    let u = geom::cross(op, dir) / den;
    (s > 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&u)).then_some(s)
}

struct Fan {
    seg: Segment,
    mid: Pt,
    rays: Vec<(Pt, f64)>,
}

fn fan(cur: &CurveDiagram, orig: &CurveDiagram, k: usize, right: bool) -> Fan {
    let segs = cur.segments();
    let seg = segs[k];
    let d = geom::unit(geom::sub(seg.b, seg.a));
    let n = if right { geom::scale(geom::perp(d), -1.0) } else { geom::perp(d) };
    let mid = geom::mid(seg.a, seg.b);
    let corners = cur.model().corners();
    let mut obstacles: Vec<(Pt, Pt)> = segs.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, s)| (s.a, s.b)).collect();
    obstacles.extend(orig.segments().iter().map(|s| (s.a, s.b)));
    obstacles.extend((0..corners.len()).map(|i| (corners[i], corners[(i + 1) % corners.len()])));
    let rays = (1..=FAN_RAYS)
        .map(|i| {
            let th = std::f64::consts::PI * i as f64 / (FAN_RAYS + 1) as f64;
            let dir = geom::add(geom::scale(d, -th.cos()), geom::scale(n, th.sin()));
            let h = obstacles.iter().filter_map(|&(p, q)| ray_dist(mid, dir, p, q)).fold(f64::INFINITY, f64::min);
            (dir, if h.is_finite() { 0.9 * h } else { 0.0 })
        })
        .collect();
    Fan { seg, mid, rays }
}

fn bulged(cur: &CurveDiagram, f: &Fan, lam: f64) -> CurveDiagram {
    let pts: Vec<Item> = f.rays.iter().map(|&(dir, h)| Item::Way(geom::add(f.mid, geom::scale(dir, lam * h)))).collect();
    let mut items = cur.to_trace();
    let at = cur.trace_index_after(f.seg.chord, f.seg.idx);
    items.splice(at..at, pts);
    CurveDiagram::from_trace(cur.model_arc().clone(), &items)
}

fn bulge_ok(cur: &CurveDiagram, orig: &CurveDiagram, b: &CurveDiagram, turn: i64, meets: usize) -> bool {
    b.validate().is_empty()
        && turning_number(b).ok() == Some(turn)
        && b.num_self_intersections() == cur.num_self_intersections()
        && count(orig, b) == Some(meets)
}

/// Largest valid fan scale on segment `k` and the holonomy change it gives.
fn capacity(cur: &CurveDiagram, orig: &CurveDiagram, f: &Fan, turn: i64, meets: usize) -> Result<(f64, f64), Error> {
    let h0 = holonomy(cur)?;
    let ok = |lam: f64| bulge_ok(cur, orig, &bulged(cur, f, lam), turn, meets);
    let lam = if ok(1.0) {
        1.0
    } else {
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..20 {
            let m = 0.5 * (lo + hi);
            if ok(m) {
                lo = m;
            } else {
                hi = m;
            }
        }
        lo
    };
    if lam == 0.0 {
        return Ok((0.0, 0.0));
    }
    Ok((lam, holonomy(&bulged(cur, f, lam))? - h0))
}

/// Embedded copy of `c`, disjoint from it when `c` is embedded, with
/// `Hol(copy) - Hol(c) = x` up to `1e-9`.  The copy sits on the right of `c`
/// for `x >= 0` (on the left otherwise) and the area is swept by fans of
/// waypoints grown from its segments, one segment at a time.  Fails when the
/// region beside `c` is too small; for an embedded non-separating curve the
/// swept annulus has area below the total area of the surface.
pub fn push_off(c: &CurveDiagram, x: f64) -> Result<CurveDiagram, Error> {
    if !x.is_finite() {
        return Err(Error::Precondition("push-off area must be finite".into()));
    }
    let right = x >= 0.0;
    let orig = c;
    let mut cur = parallel_copies(c, 1, !right, &[], Ratio::new(1, PUSH_OFF_WIDTH))?.remove(0);
    let h0 = holonomy(c)?;
    let turn = turning_number(c)?;
    let meets = 2 * c.num_self_intersections();
    let mut stalled = 0;
    for _ in 0..MAX_BULGES {
        let r = x - (holonomy(&cur)? - h0);
        if (right && r < 1e-10) || (!right && r > -1e-10) {
            return Ok(cur);
        }
        // rank segments by the area of their unclipped fan, then measure the best few
        let mut fans: Vec<(Fan, f64)> = (0..cur.segments().len())
            .map(|k| {
                let f = fan(&cur, orig, k, right);
                let mut poly = vec![f.seg.a];
                poly.extend(f.rays.iter().map(|&(dir, h)| geom::add(f.mid, geom::scale(dir, h))));
                poly.push(f.seg.b);
                let est = geom::signed_area(&poly).abs();
                (f, est)
            })
            .collect();
        fans.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut best: Option<(Fan, f64, f64)> = None;
        for (f, _) in fans.into_iter().take(CANDIDATES) {
            let (lam, gain) = capacity(&cur, orig, &f, turn, meets)?;
            if best.as_ref().is_none_or(|b| gain.abs() > b.2.abs()) {
                best = Some((f, lam, gain));
            }
        }
        let Some((f, lam_max, gain)) = best else { break };
        if gain.abs() < 0.05 * r.abs() {
            stalled += 1;
            if stalled >= 2 || gain.abs() < 1e-12 {
                break;
            }
        }
        if gain.abs() <= r.abs() {
            cur = bulged(&cur, &f, lam_max);
            continue;
        }
        let h1 = holonomy(&cur)?;
        let (mut lo, mut hi) = (0.0, lam_max);
        for _ in 0..100 {
            let m = 0.5 * (lo + hi);
            let g = holonomy(&bulged(&cur, &f, m))? - h1;
            if g.abs() < r.abs() {
                lo = m;
            } else {
                hi = m;
            }
        }
        cur = bulged(&cur, &f, lo);
        let rest = x - (holonomy(&cur)? - h0);
        if rest.abs() <= 1e-9 {
            return Ok(cur);
        }
    }
    Err(Error::Precondition(format!("push-off area {x} exceeds the room beside the curve")))
}

/// Splits `x` into `m` equal pieces, each realized by [`push_off`].  `m` is
/// the least power of two, from a guess of 5% of the total area per piece,
/// that fits.  The classes satisfy `sum_i (class(piece_i) - class(c)) = i(x)`.
pub fn push_off_pieces(c: &CurveDiagram, x: f64) -> Result<Vec<CurveDiagram>, Error> {
    let guess = (x.abs() / (0.05 * c.model().total_area())).ceil().max(1.0);
    let mut m = (guess as usize).next_power_of_two();
    while m <= 1 << 16 {
        if let Ok(p) = push_off(c, x / m as f64) {
            return Ok(vec![p; m]);
        }
        m *= 2;
    }
    Err(Error::Precondition(format!("no chunking realizes push-off area {x}")))
}

/// A finger move pushes a tongue from segment `seg` of the moving curve
/// across segment `target` of the fixed one (indices into `segments()`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerSite {
    pub seg: usize,
    pub target: usize,
}

/// Pushes a thin tongue of `c` across `across`, adding exactly two
/// intersection points of opposite degree bounding a bigon.  The swept area
/// equals the holonomy change.
pub fn finger_move(c: &CurveDiagram, across: &CurveDiagram, site: FingerSite) -> Result<MoveOutcome, Error> {
    let segs = c.segments();
    let targets = across.segments();
    let (Some(&sg), Some(&tg)) = (segs.get(site.seg), targets.get(site.target)) else {
        return Err(Error::OutOfRange(format!("finger site {site:?}")));
    };
    let bad = |msg: &str| Error::Precondition(format!("invalid finger site {site:?}: {msg}"));
    let before = count(c, across).ok_or_else(|| bad("curves are not jointly generic"))?;
    let ab = geom::sub(sg.b, sg.a);
    let len = geom::norm(ab);
    let tan = geom::unit(ab);
    let p = geom::mid(tg.a, tg.b);
    let u = (geom::dot(geom::sub(p, sg.a), ab) / (len * len)).clamp(0.2, 0.8);
    let m = geom::add(sg.a, geom::scale(ab, u));
    let reach = geom::dist(m, p);
    if reach < 1e-9 {
        return Err(bad("target touches the segment"));
    }
    let d = geom::unit(geom::sub(p, m));
    if geom::cross(d, geom::unit(geom::sub(tg.b, tg.a))).abs() < 0.2 || geom::cross(tan, d).abs() < 0.2 {
        return Err(bad("tongue would run nearly parallel"));
    }
    let turn = turning_number(c)?;
    let h0 = holonomy(c)?;
    let room = u.min(1.0 - u) * len;
    let items = c.to_trace();
    let at = c.trace_index_after(sg.chord, sg.idx);
    for k in 0..12 {
        let f = 0.6f64.powi(k);
        let w = (0.4 * room).min(0.2 * reach) * f;
        let over = 0.25 * reach * f.max(0.2);
        let a = geom::sub(m, geom::scale(tan, w));
        let b = geom::add(m, geom::scale(tan, w));
        let a2 = geom::add(a, geom::scale(d, reach + over));
        let b2 = geom::add(b, geom::scale(d, reach + over));
        let mut trial = items.clone();
        trial.splice(at..at, [a, a2, b2, b].map(Item::Way));
        let out = CurveDiagram::from_trace(c.model_arc().clone(), &trial);
        let ok = out.validate().is_empty()
            && turning_number(&out).ok() == Some(turn)
            && out.num_self_intersections() == c.num_self_intersections()
            && count(&out, across) == Some(before + 2);
        if ok {
            let swept_area = holonomy(&out)? - h0;
            return Ok(MoveOutcome { diagram: out, swept_area });
        }
    }
    Err(bad("no clear tongue"))
}

/// All sites at which [`finger_move`] succeeds.
pub fn finger_sites(c: &CurveDiagram, across: &CurveDiagram) -> Vec<FingerSite> {
    let ns = c.segments().len();
    let nt = across.segments().len();
    (0..ns)
        .flat_map(|seg| (0..nt).map(move |target| FingerSite { seg, target }))
        .filter(|&s| finger_move(c, across, s).is_ok())
        .collect()
}

//! Curated layouts and layout synthesis from words.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_traits::One;

use super::{tighten, CurveDiagram, Crossing, Item, Param};
use crate::geom::{self, Pt};
use crate::surface_group::GroupWord;
use crate::surface_model::SurfaceModel;
use crate::Error;

fn half() -> Param {
    Param::new(1, 2)
}

fn build(model: &Arc<SurfaceModel>, crossings: Vec<Crossing>, detours: Vec<Vec<Pt>>) -> CurveDiagram {
    CurveDiagram::new(model.clone(), crossings, detours).expect("curated layout is valid")
}

fn check_handle(model: &SurfaceModel, h: usize, max: usize) -> Result<(), Error> {
    if h == 0 || h > max {
        return Err(Error::OutOfRange(format!("index {h} not in 1..={max} for genus {}", model.genus())));
    }
    Ok(())
}

/// Counterclockwise regular polygon of radius `r` around `center`.
pub fn circle_at(model: &Arc<SurfaceModel>, center: Pt, r: f64) -> Result<CurveDiagram, Error> {
    let pts: Vec<Pt> = (0..16)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / 16.0;
            [center[0] + r * a.cos(), center[1] + r * a.sin()]
        })
        .collect();
    CurveDiagram::new(model.clone(), Vec::new(), vec![pts])
}

/// Small counterclockwise contractible circle around the face centre.
pub fn small_circle(model: &Arc<SurfaceModel>) -> CurveDiagram {
    circle_at(model, [0.0, 0.0], 0.05).expect("circle fits in the face")
}

/// Meridian-type curve `a_h`: one crossing reading the letter `a_h`.
pub fn lickorish_alpha(model: &Arc<SurfaceModel>, h: usize) -> Result<CurveDiagram, Error> {
    check_handle(model, h, model.genus())?;
    let s = model.side_of_letter(2 * h as i32 - 1);
    Ok(build(model, vec![Crossing::new(s, half())], vec![vec![]]))
}

/// Curve `b_h`: one crossing reading the letter `b_h`.
pub fn lickorish_beta(model: &Arc<SurfaceModel>, h: usize) -> Result<CurveDiagram, Error> {
    check_handle(model, h, model.genus())?;
    let s = model.side_of_letter(2 * h as i32);
    Ok(build(model, vec![Crossing::new(s, half())], vec![vec![]]))
}

/// Curve joining handles `j` and `j+1`: a counterclockwise run around the
/// vertex reading `b_j A_j B_j a_{j+1}`, closed by one chord.  Its homology
/// class is `a_{j+1} - a_j`.
pub fn lickorish_gamma(model: &Arc<SurfaceModel>, j: usize) -> Result<CurveDiagram, Error> {
    check_handle(model, j, model.genus() - 1)?;
    let (a, b) = (2 * j as i32 - 1, 2 * j as i32);
    vertex_run(model, &[b, -a, -b, a + 2])
}

/// Embedded curve reading `letters`, a subword of the counterclockwise
/// vertex link word: tiny chords around consecutive corners, closed by one
/// chord across the face.
pub fn vertex_run(model: &Arc<SurfaceModel>, letters: &[i32]) -> Result<CurveDiagram, Error> {
    let ns = model.num_sides();
    if letters.is_empty() || letters.len() >= ns {
        return Err(Error::Precondition("a vertex run has between 1 and 4g-1 letters".into()));
    }
    let sides: Vec<usize> = letters.iter().map(|&l| model.side_of_letter(l)).collect();
    for w in sides.windows(2) {
        if w[1] != (model.pair(w[0]) + ns - 1) % ns {
            return Err(Error::Precondition("letters are not consecutive around the vertex".into()));
        }
    }
    let t = Param::new(15, 16);
    let n = sides.len();
    CurveDiagram::new(model.clone(), sides.into_iter().map(|s| Crossing::new(s, t)).collect(), vec![vec![]; n])
}

/// Separating curve reading the inverse of `[a1,b1]...[a_gt,b_gt]`, oriented
/// with its genus-`gt` side to the left.
pub fn subsurface_boundary(model: &Arc<SurfaceModel>, gt: usize) -> Result<CurveDiagram, Error> {
    check_handle(model, gt, model.genus() - 1)?;
    let r = model.relator();
    Ok(vertex_run(model, &r[..4 * gt])?.reverse())
}

/// Separating curve cutting off the first handle.
pub fn torus_boundary(model: &Arc<SurfaceModel>) -> CurveDiagram {
    subsurface_boundary(model, 1).expect("genus is at least 2")
}

/// Straight-chord layout of a word with no simplification: one crossing per
/// letter, parameters spread evenly per edge, and a small tongue for every
/// chord whose ends lie on the same side.
pub fn raw_layout(model: &Arc<SurfaceModel>, w: &GroupWord) -> Result<CurveDiagram, Error> {
    if w.max_handle() > model.genus() {
        return Err(Error::OutOfRange(format!("word {w} uses handles beyond genus {}", model.genus())));
    }
    if w.is_empty() {
        return Ok(small_circle(model));
    }
    let sides: Vec<usize> = w.letters.iter().map(|&l| model.side_of_letter(l)).collect();
    let edge = |s: usize| s.min(model.pair(s));
    let mut count: HashMap<usize, i64> = HashMap::new();
    for &s in &sides {
        *count.entry(edge(s)).or_default() += 1;
    }
    let mut rank: HashMap<usize, i64> = HashMap::new();
    let crossings: Vec<Crossing> = sides
        .iter()
        .map(|&s| {
            let e = edge(s);
            let k = rank.entry(e).or_default();
            *k += 1;
            let tau = Param::new(*k, count[&e] + 1);
            Crossing::new(s, if s == e { tau } else { Param::one() - tau })
        })
        .collect();
    let n = crossings.len();
    let mut c = CurveDiagram::from_parts_unchecked(model.clone(), crossings, vec![vec![]; n]);
    for j in 0..n {
        let (es, _) = c.entry_of((j + n - 1) % n);
        if es == c.crossings[j].side {
            let poly = c.chord_polyline(j);
            let (a, b) = model.side_endpoints(es);
            let inward = geom::perp(geom::unit(geom::sub(b, a)));
            let z = geom::add(geom::mid(poly[0], poly[1]), geom::scale(inward, 0.5 * geom::dist(poly[0], poly[1])));
            c.detours[j].push(z);
        }
    }
    let v = c.validate();
    if !v.is_empty() {
        return Err(Error::InvalidDiagram(v.join("; ")));
    }
    Ok(c)
}

/// Layout of the free homotopy class of `w`: the raw layout, tightened.
pub fn from_word(model: &Arc<SurfaceModel>, w: &GroupWord) -> Result<CurveDiagram, Error> {
    Ok(tighten(&raw_layout(model, w)?))
}

/// Curve `u v` drawn as a figure eight: two lobes reading conjugates of `u`
/// and `v`, joined at one double point.  Short conjugates are searched for a
/// straight layout with a single double point splitting the lobes; failing
/// that (forced when the lobes have nonzero intersection pairing), single
/// letter lobes are drawn with the first chord bent across the second, which
/// costs two double points.
pub fn figure_eight(model: &Arc<SurfaceModel>, u: &GroupWord, v: &GroupWord) -> Result<CurveDiagram, Error> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::Precondition("figure_eight lobes must be nonempty".into()));
    }
    if u.max_handle() > model.genus() || v.max_handle() > model.genus() {
        return Err(Error::OutOfRange(format!("lobes {u}, {v} exceed genus {}", model.genus())));
    }
    let conj = conjugates(model, u);
    let conj_v = conjugates(model, v);
    for x in &conj {
        for y in &conj_v {
            let mut letters = x.letters.clone();
            letters.extend(&y.letters);
            if letters.first().copied() == letters.last().map(|l| -l) || x.letters.last().copied() == y.letters.first().map(|l| -l) {
                continue;
            }
            let Ok(c) = raw_layout(model, &GroupWord::new(letters)) else { continue };
            let pts = c.self_intersections();
            if pts.len() == 1 {
                let mut chords = [pts[0].first.chord, pts[0].second.chord];
                chords.sort();
                if chords == [0, x.len()] {
                    return Ok(c);
                }
            }
        }
    }
    if u.len() == 1 && v.len() == 1 && u.letters[0] != -v.letters[0] {
        return bent_figure_eight(model, u.letters[0], v.letters[0]);
    }
    Err(Error::InvalidDiagram(format!("no figure-eight layout found for {u}, {v}")))
}

/// `w` and its freely reduced conjugates by single letters.
fn conjugates(model: &SurfaceModel, w: &GroupWord) -> Vec<GroupWord> {
    let mut out = vec![w.clone()];
    for g in 1..=2 * model.genus() as i32 {
        for l in [g, -g] {
            let c = GroupWord::new(vec![l]).concat(w).concat(&GroupWord::new(vec![-l]));
            let r = crate::surface_group::free_reduce(&c.letters);
            if r.len() == w.len() + 2 {
                out.push(GroupWord::new(r));
            }
        }
    }
    out
}

fn bent_figure_eight(model: &Arc<SurfaceModel>, lu: i32, lv: i32) -> Result<CurveDiagram, Error> {
    let mut c = raw_layout(model, &GroupWord::new(vec![lu, lv]))?;
    if c.chords_interleave(0, 1) {
        return Ok(c);
    }
    let p0 = c.chord_polyline(0);
    let p1 = c.chord_polyline(1);
    let m0 = geom::mid(p0[0], p0[1]);
    let m1 = geom::mid(p1[0], p1[1]);
    let d1 = geom::unit(geom::sub(p1[1], p1[0]));
    let mut nrm = geom::perp(d1);
    if geom::dot(nrm, geom::sub(m1, m0)) < 0.0 {
        nrm = geom::scale(nrm, -1.0);
    }
    // distance from m1 to the boundary along nrm
    let mut far = 0.0f64;
    for s in 0..model.num_sides() {
        let (a, b) = model.side_endpoints(s);
        let probe = geom::add(m1, geom::scale(nrm, 10.0));
        if geom::seg_hit(m1, probe, a, b) == geom::SegHit::Proper {
            let (l, _) = geom::seg_params(m1, probe, a, b);
            far = far.max(10.0 * l);
        }
    }
    let w = geom::add(m1, geom::scale(nrm, 0.5 * far));
    c.detours[0].push(w);
    let v = c.validate();
    if !v.is_empty() {
        return Err(Error::InvalidDiagram(v.join("; ")));
    }
    Ok(c)
}

/// `from_word(w)` with one small curl added: exactly one extra double point
/// whose short loop bounds a disk.
pub fn kinked(model: &Arc<SurfaceModel>, w: &GroupWord) -> Result<CurveDiagram, Error> {
    let base = from_word(model, w)?;
    let before = base.num_self_intersections();
    let segs = base.segments();
    let longest = segs
        .iter()
        .enumerate()
        .max_by(|a, b| geom::dist(a.1.a, a.1.b).partial_cmp(&geom::dist(b.1.a, b.1.b)).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let sg = segs[longest];
    let (s, e) = (sg.a, sg.b);
    let d = geom::unit(geom::sub(e, s));
    let nrm = geom::perp(d);
    let mid = geom::mid(s, e);
    let mut r = 0.2 * geom::dist(s, e);
    let items = base.to_trace();
    // trace index right after the segment start
    let at = base.trace_index_after(sg.chord, sg.idx);
    for _ in 0..40 {
        let a = geom::add(mid, geom::scale(d, r));
        let b = geom::add(mid, geom::scale(nrm, r));
        let cc = geom::add(mid, geom::add(geom::scale(d, -0.5 * r), geom::scale(nrm, -0.5 * r)));
        let mut trial = items.clone();
        trial.splice(at..at, [Item::Way(a), Item::Way(b), Item::Way(cc)]);
        let k = CurveDiagram::from_trace(model.clone(), &trial);
        if k.validate().is_empty() && k.num_self_intersections() == before + 1 {
            return Ok(k);
        }
        r *= 0.5;
    }
    Err(Error::InvalidDiagram("could not place a kink".into()))
}

/// The Lickorish family `alpha_1..g, beta_1..g, gamma_1..g-1` with labels.
pub fn lickorish_family(model: &Arc<SurfaceModel>) -> Vec<(String, CurveDiagram)> {
    let g = model.genus();
    let mut v = Vec::new();
    for h in 1..=g {
        v.push((format!("alpha{h}"), lickorish_alpha(model, h).unwrap()));
        v.push((format!("beta{h}"), lickorish_beta(model, h).unwrap()));
        if h < g {
            v.push((format!("gamma{h}"), lickorish_gamma(model, h).unwrap()));
        }
    }
    v
}

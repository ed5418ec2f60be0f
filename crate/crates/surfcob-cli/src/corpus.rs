//! Deterministic curve corpora shared by the suites and the acceptance run.

use std::sync::Arc;

use num_rational::Ratio;
use surfcob::curve_diagram::*;
use surfcob::curve_ops::*;
use surfcob::sample::{random_diagram, random_word, SampleRng};
use surfcob::unobstruction::is_unobstructed;
use surfcob::{build_surface, CurveDiagram, GroupWord, SurfaceModel};

pub fn model(genus: usize) -> Result<Arc<SurfaceModel>, surfcob::Error> {
    Ok(Arc::new(build_surface(genus, 1.0)?))
}

pub fn word(s: &str) -> GroupWord {
    GroupWord::parse(s).expect("literal word")
}

pub fn family(m: &Arc<SurfaceModel>) -> Vec<CurveDiagram> {
    lickorish_family(m).into_iter().map(|(_, c)| c).collect()
}

/// Embedded essential curves: tightened random words of length at most 6.
pub fn embedded_curves(m: &Arc<SurfaceModel>, rng: &mut SampleRng, n: usize) -> Vec<CurveDiagram> {
    let mut out = Vec::new();
    for _ in 0..50 * n {
        if out.len() == n {
            break;
        }
        let w = random_word(rng, m.genus(), 6);
        let Ok(c) = from_word(m, &w) else { continue };
        let c = tighten(&c);
        if c.num_self_intersections() == 0 && !c.free_homotopy_word().is_empty() {
            out.push(c);
        }
    }
    out
}

/// Unobstructed curves: the Lickorish family, torus and subsurface
/// boundaries, figure eights and random embedded curves, `n` in total.
pub fn unobstructed_curves(m: &Arc<SurfaceModel>, rng: &mut SampleRng, n: usize) -> Vec<CurveDiagram> {
    let mut out = family(m);
    out.push(torus_boundary(m));
    for gt in 1..m.genus() {
        out.extend(subsurface_boundary(m, gt));
    }
    for (u, v) in [("a1", "b1"), ("a1", "a2"), ("b1", "b2")] {
        out.extend(figure_eight(m, &word(u), &word(v)));
    }
    out.retain(|c| is_unobstructed(c).is_unobstructed());
    let more = n.saturating_sub(out.len());
    out.extend(embedded_curves(m, rng, more));
    out.truncate(n);
    out
}

/// No two double points of `c` coincide.
pub fn is_generic(c: &CurveDiagram) -> bool {
    let pts = c.self_intersections();
    (0..pts.len()).all(|i| (0..i).all(|j| surfcob::geom::dist(pts[i].point, pts[j].point) > surfcob::GEOM_TOL))
}

/// Generic random diagrams with at least one double point.
pub fn immersed_curves(m: &Arc<SurfaceModel>, rng: &mut SampleRng, n: usize) -> Vec<CurveDiagram> {
    let mut out = Vec::new();
    for _ in 0..50 * n {
        if out.len() == n {
            break;
        }
        let c = random_diagram(rng, m, 6, 6);
        if c.num_self_intersections() > 0 && is_generic(&c) {
            out.push(c);
        }
    }
    out
}

/// Minimal-position pairs from the Lickorish families of genus 2 to 4,
/// oriented so that the first intersection point has degree one.
pub fn surgery_pairs() -> Vec<(CurveDiagram, CurveDiagram)> {
    let mut out = Vec::new();
    for g in 2..=4 {
        let m = model(g).unwrap();
        let fam = family(&m);
        for c1 in &fam {
            for c2 in &fam {
                let Ok(pts) = intersections(c1, c2) else { continue };
                if pts.is_empty() {
                    continue;
                }
                let c2 = if pts[0].degree == 1 { c2.clone() } else { c2.reverse() };
                out.push((c1.clone(), c2));
            }
        }
    }
    out
}

fn copy(c: &CurveDiagram, left: bool) -> Option<CurveDiagram> {
    parallel_copies(c, 1, left, &[], Ratio::new(1, 8)).ok()?.into_iter().next()
}

/// Curves isotopic to `c` and jointly generic with it: parallel copies with a
/// finger pushed back across `c`, and vertex pushes of the copies.
pub fn perturbations(c: &CurveDiagram) -> Vec<CurveDiagram> {
    let mut out = Vec::new();
    for left in [true, false] {
        let Some(base) = copy(c, left) else { continue };
        let mut vs = Vec::new();
        for s in finger_sites(&base, c).into_iter().take(2) {
            vs.extend(finger_move(&base, c, s).ok().map(|o| o.diagram));
        }
        for j in 0..base.num_crossings() {
            for ccw in [true, false] {
                if run_length(&base, j, ccw) > 0 {
                    vs.extend(apply_move(&base, &Move::VertexPush { start: j, len: 1, ccw }).ok().map(|o| o.diagram));
                }
            }
        }
        for v in vs {
            if is_unobstructed(&v).is_unobstructed() {
                out.extend(separate_from(&v, &[c]).ok());
            }
        }
    }
    out
}

/// Pairs of unobstructed jointly generic curves: Lickorish pairs, isotopic
/// perturbations, finger moves and immersed figure eights against the
/// family.
pub fn floer_pairs(m: &Arc<SurfaceModel>) -> Vec<(CurveDiagram, CurveDiagram)> {
    let fam = family(m);
    let mut out = Vec::new();
    for (i, a) in fam.iter().enumerate() {
        for (j, b) in fam.iter().enumerate() {
            if i != j {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    for c in &fam[..3] {
        for v in perturbations(c) {
            out.push((c.clone(), v));
        }
    }
    let (a, b) = (&fam[0], &fam[1]);
    for s in finger_sites(b, a) {
        out.extend(finger_move(b, a, s).ok().map(|o| (a.clone(), o.diagram)));
    }
    for s in finger_sites(a, b) {
        out.extend(finger_move(a, b, s).ok().map(|o| (o.diagram, b.clone())));
    }
    let mut immersed: Vec<CurveDiagram> =
        ["b1", "a2", "b2"].iter().filter_map(|u| figure_eight(m, &word("a1"), &word(u)).ok()).collect();
    immersed.push(tighten(&from_word(m, &word("a1b1")).unwrap()));
    for f in &immersed {
        for c in &fam {
            if let Ok(c) = separate_from(c, &[f]) {
                out.push((f.clone(), c));
            }
        }
    }
    out
}

/// `alpha_1`, `beta_1` and a copy of `alpha_1` tilted by a finger back
/// across it.
pub fn tilted_triple(m: &Arc<SurfaceModel>) -> Option<[CurveDiagram; 3]> {
    let a = lickorish_alpha(m, 1).ok()?;
    let b = lickorish_beta(m, 1).ok()?;
    let base = parallel_copies(&a, 1, true, &[&b], Ratio::new(1, 8)).ok()?.into_iter().next()?;
    let site = *finger_sites(&base, &a).first()?;
    let t = finger_move(&base, &a, site).ok()?.diagram;
    let t = separate_from(&t, &[&a, &b]).ok()?;
    Some([a, b, t])
}

/// Ordered triples of distinct curves drawn from `alpha_1`, `beta_1`,
/// `gamma_1`, the tilted copy and isotopic perturbations of `alpha_1` and
/// `beta_1`, each made jointly generic.
pub fn floer_triples(m: &Arc<SurfaceModel>) -> Vec<[CurveDiagram; 3]> {
    let Some([a, b, t]) = tilted_triple(m) else { return Vec::new() };
    let mut curves = vec![a.clone(), b.clone(), t];
    curves.extend(lickorish_gamma(m, 1));
    for c in [&a, &b] {
        curves.extend(perturbations(c).into_iter().filter(|v| v.num_crossings() > 1).take(2));
    }
    let mut out = Vec::new();
    for i in 0..curves.len() {
        for j in 0..curves.len() {
            for k in 0..curves.len() {
                if i == j || j == k || i == k {
                    continue;
                }
                let Ok(c1) = separate_from(&curves[j], &[&curves[i]]) else { continue };
                let Ok(c2) = separate_from(&curves[k], &[&curves[i], &c1]) else { continue };
                out.push([curves[i].clone(), c1, c2]);
            }
        }
    }
    out
}

//! Relation suites.  Each suite is a deterministic function of
//! `(genus, seed)` returning one [`CheckResult`] per check id.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use surfcob::curve_diagram::*;
use surfcob::curve_ops::*;
use surfcob::floer::*;
use surfcob::invariants::*;
use surfcob::sample::{random_diagram, random_move, random_relator_product, random_word, rng, SampleRng};
use surfcob::surface_group::{dehn_reduce, is_trivial};
use surfcob::unobstruction::{in_minimal_position, is_unobstructed, Unobstructedness};
use surfcob::{build_surface, CurveDiagram, Error, GroupWord, SurfaceModel, SUM_TOL, WINDING_TOL};

use crate::corpus::{self, model, word};
use crate::sig12;

pub const SUITES: &[&str] = &["moves", "classes", "holonomy", "mcg", "floer"];

/// Check ids with the statement each one tests.
pub const ANCHORS: &[(&str, &str)] = &[
    ("winding-integrality", "developed turning angles are whole turns"),
    ("moves-conserve", "slides, edge pushes and detour moves keep homology and turning"),
    ("vertex-push-shift", "a vertex push shifts turning by the Euler characteristic"),
    ("move-holonomy", "holonomy changes by the swept area"),
    ("word-problem", "Dehn's algorithm decides the word problem"),
    ("maslov-spot-values", "Maslov index of torus, subsurface and circle boundaries"),
    ("torus-class", "a torus boundary represents T up to holonomy"),
    ("subsurface-class", "a genus k subsurface boundary has discrete class (2k-1)T"),
    ("resolution-conservation", "smoothing a double point conserves the class sum"),
    ("iterated-resolution", "iterated smoothing ends in embedded curves"),
    ("surgery-conservation", "surgery adds classes"),
    ("unobstructed-verdicts", "unobstructedness of reference curves"),
    ("surgery-unobstructed", "surgery of unobstructed minimal pairs is unobstructed"),
    ("k0-reversal", "reversal negates the K0 class"),
    ("k0-agrees", "the K0 class is the cobordism class"),
    ("hol-section", "push-off realizes the holonomy section"),
    ("hol-section-chunked", "chunked push-offs realize the holonomy section"),
    ("hol-reversal", "holonomy is odd under reversal"),
    ("t-order", "T has order 2g-2"),
    ("twist-defect", "the holonomy defect of a twist is finite"),
    ("gamma-identity", "gamma_i = alpha_(i+1) - alpha_i - T"),
    ("twist-lickorish", "twist transvection on Lickorish pairs"),
    ("twist-random", "twist transvection on random embedded pairs"),
    ("twist-by-surgery", "surgery with parallel copies reproduces the twist"),
    ("floer-d-squared", "the Floer differential squares to zero"),
    ("floer-grading", "lunes join generators of opposite degree"),
    ("floer-exponents", "lune areas are positive"),
    ("floer-minimal-pair", "alpha_1 and beta_1 have Floer rank one"),
    ("floer-rank-invariance", "Floer rank is invariant under finger moves and push-offs"),
    ("floer-minimal-position", "Floer rank of a minimal pair is its intersection count"),
    ("floer-saturation", "lune counts saturate under window enlargement"),
    ("floer-leibniz", "the product satisfies the Leibniz rule mod 2"),
];

pub fn anchor(id: &str) -> &'static str {
    ANCHORS.iter().find(|(i, _)| *i == id).map(|(_, a)| *a).unwrap_or_else(|| panic!("unknown check id {id}"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    pub measured: BTreeMap<String, f64>,
    /// Zero for exact checks.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub genus: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub runtime_s: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Equal up to the runtime field.
    pub fn same_results(&self, other: &SuiteReport) -> bool {
        SuiteReport { runtime_s: 0.0, ..self.clone() } == SuiteReport { runtime_s: 0.0, ..other.clone() }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} genus {} seed {}\n", self.suite, self.genus, self.seed);
        for c in &self.checks {
            let vals: Vec<String> = c.measured.iter().map(|(k, v)| format!("{k}={}", sig12(*v))).collect();
            let _ = writeln!(
                s,
                "{} {} [{}] tol={} {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.anchor,
                sig12(c.tolerance),
                vals.join(" ")
            );
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(s, "{} checks, {} failed, {} s", self.checks.len(), failed, sig12(self.runtime_s));
        s
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub genus: usize,
    pub seed: u64,
    /// Tolerance for holonomy and area equalities.
    pub tolerance: f64,
}

impl SuiteOptions {
    pub fn new(genus: usize, seed: u64) -> Self {
        SuiteOptions { genus, seed, tolerance: SUM_TOL }
    }
}

pub fn run_suite(name: &str, genus: usize, seed: u64) -> Result<SuiteReport, Error> {
    run_suite_with(name, SuiteOptions::new(genus, seed))
}

pub fn run_suite_with(name: &str, o: SuiteOptions) -> Result<SuiteReport, Error> {
    let start = Instant::now();
    let m = model(o.genus)?;
    let mut r = rng(o.seed);
    let mut b = Builder { checks: Vec::new(), tol: o.tolerance };
    match name {
        "moves" => moves(&mut b, &m, &mut r),
        "classes" => classes(&mut b, &m, &mut r),
        "holonomy" => holonomy_suite(&mut b, &m, &mut r)?,
        "mcg" => mcg(&mut b, &m, &mut r),
        "floer" => floer(&mut b, &m, &mut r),
        _ => return Err(Error::Precondition(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        genus: o.genus,
        seed: o.seed,
        checks: b.checks,
        runtime_s: start.elapsed().as_secs_f64(),
    })
}

struct Builder {
    checks: Vec<CheckResult>,
    tol: f64,
}

impl Builder {
    fn push(&mut self, id: &str, pass: bool, tolerance: f64, measured: &[(&str, f64)]) {
        self.checks.push(CheckResult {
            id: id.into(),
            anchor: anchor(id).into(),
            pass,
            measured: measured.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            tolerance,
        });
    }
}

fn moves(b: &mut Builder, m: &std::sync::Arc<SurfaceModel>, r: &mut SampleRng) {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let c = random_diagram(r, m, 10, 20);
        let a = turning_angle(&c);
        worst = worst.max((a - a.round()).abs());
    }
    b.push("winding-integrality", worst < WINDING_TOL, WINDING_TOL, &[("diagrams", 1000.0), ("max_residual_turns", worst)]);

    let chi = m.euler_characteristic();
    let (mut plain, mut plain_bad, mut pushes, mut push_bad) = (0, 0, 0, 0);
    let mut hol_err = 0.0f64;
    for _ in 0..200 {
        let mut c = random_diagram(r, m, 8, 0);
        for _ in 0..50 {
            let Some((mv, o)) = random_move(r, &c, 20, 40) else { break };
            let dt = turning_number(&o.diagram).unwrap_or(i64::MIN) - turning_number(&c).unwrap_or(0);
            let same_h = homology_class(&o.diagram) == homology_class(&c);
            match mv {
                Move::VertexPush { ccw, .. } => {
                    pushes += 1;
                    push_bad += usize::from(!same_h || dt != if ccw { chi } else { -chi });
                }
                _ => {
                    plain += 1;
                    plain_bad += usize::from(!same_h || dt != 0);
                }
            }
            let dh = holonomy(&o.diagram).unwrap_or(f64::NAN) - holonomy(&c).unwrap_or(f64::NAN);
            hol_err = hol_err.max((dh - o.swept_area).abs());
            if dh.is_nan() {
                hol_err = f64::INFINITY;
            }
            c = o.diagram;
        }
    }
    b.push("moves-conserve", plain_bad == 0 && plain > 0, 0.0, &[("moves", plain as f64), ("violations", plain_bad as f64)]);
    b.push("vertex-push-shift", push_bad == 0 && pushes > 0, 0.0, &[("pushes", pushes as f64), ("violations", push_bad as f64)]);
    b.push("move-holonomy", hol_err < b.tol, b.tol, &[("moves", (plain + pushes) as f64), ("max_error", hol_err)]);
}

fn totals(cs: &[CurveDiagram]) -> Option<(Vec<i64>, i64, f64)> {
    let g = cs.first()?.model().genus();
    let mut h = vec![0; 2 * g];
    let (mut t, mut x) = (0, 0.0);
    for c in cs {
        h.iter_mut().zip(homology_class(c)).for_each(|(a, b)| *a += b);
        t += turning_number(c).ok()?;
        x += holonomy(c).ok()?;
    }
    Some((h, t, x))
}

/// Compares totals: `(exact part agrees, holonomy error)`.
fn compare(a: &[CurveDiagram], b: &[CurveDiagram]) -> (bool, f64) {
    match (totals(a), totals(b)) {
        (Some((h0, t0, x0)), Some((h1, t1, x1))) => (h0 == h1 && t0 == t1, (x0 - x1).abs()),
        _ => (false, f64::INFINITY),
    }
}

fn classes(b: &mut Builder, m: &std::sync::Arc<SurfaceModel>, r: &mut SampleRng) {
    let g = m.genus();
    let rel = GroupWord::new(m.relator());
    let mut bad = usize::from(!dehn_reduce(&rel, m).is_empty());
    for i in 0..100 {
        let w = random_relator_product(r, m, 1 + i % 5, 4);
        bad += usize::from(!dehn_reduce(&w, m).is_empty());
    }
    let mut nontrivial = 0;
    while nontrivial < 100 {
        let w = random_word(r, g, 6);
        if w.abelianization(g).iter().any(|&x| x != 0) {
            nontrivial += 1;
            bad += usize::from(is_trivial(&w, m));
        }
    }
    b.push("word-problem", bad == 0, 0.0, &[("words", 201.0), ("wrong", bad as f64)]);

    let modulus = m.maslov_modulus();
    let mut wrong = 0;
    wrong += usize::from(maslov(&torus_boundary(m)).ok() != Some((-1i64).rem_euclid(modulus)));
    wrong += usize::from(maslov(&small_circle(m)).ok() != Some(1 % modulus));
    for gt in 1..g {
        let got = subsurface_boundary(m, gt).ok().and_then(|c| maslov(&c).ok());
        wrong += usize::from(got != Some((1 - 2 * gt as i64).rem_euclid(modulus)));
    }
    b.push("maslov-spot-values", wrong == 0, 0.0, &[("curves", (g + 1) as f64), ("wrong", wrong as f64)]);

    let t = CobordismClass::t_class(g);
    let tb = class_of(&torus_boundary(m)).unwrap();
    let d = &tb - &i_of_real(tb.hol, g);
    b.push("torus-class", d.approx_eq(&t, 0.0), 0.0, &[("m", d.m as f64), ("h_norm", d.h.iter().map(|x| x.abs()).sum::<i64>() as f64)]);
    let mut wrong = 0;
    for gt in 1..g {
        let ok = subsurface_boundary(m, gt)
            .ok()
            .and_then(|c| class_of(&c).ok())
            .is_some_and(|c| c.same_discrete(&((2 * gt as i64 - 1) * &t)));
        wrong += usize::from(!ok);
    }
    b.push("subsurface-class", wrong == 0, 0.0, &[("curves", (g - 1) as f64), ("wrong", wrong as f64)]);

    let immersed = corpus::immersed_curves(m, r, 50);
    let (mut exact_bad, mut err, mut points) = (0, 0.0f64, 0);
    let mut not_embedded = 0;
    for c in &immersed {
        for x in c.self_intersections() {
            points += 1;
            match resolve_double_point(c, &x) {
                Ok((p, q)) => {
                    let (ok, e) = compare(std::slice::from_ref(c), &[p, q]);
                    exact_bad += usize::from(!ok);
                    err = err.max(e);
                }
                Err(_) => exact_bad += 1,
            }
        }
        match resolve_all(c) {
            Ok(pieces) => {
                not_embedded += usize::from(pieces.iter().any(|p| p.num_self_intersections() > 0));
                let (ok, e) = compare(std::slice::from_ref(c), &pieces);
                exact_bad += usize::from(!ok);
                err = err.max(e);
            }
            Err(_) => not_embedded += 1,
        }
    }
    let n = immersed.len() as f64;
    b.push(
        "resolution-conservation",
        exact_bad == 0 && err < b.tol && immersed.len() == 50,
        b.tol,
        &[("curves", n), ("double_points", points as f64), ("exact_violations", exact_bad as f64), ("max_hol_error", err)],
    );
    b.push("iterated-resolution", not_embedded == 0 && immersed.len() == 50, 0.0, &[("curves", n), ("not_embedded", not_embedded as f64)]);

    let (mut cases, mut exact_bad, mut err) = (0, 0, 0.0f64);
    for _ in 0..2000 {
        if cases == 50 {
            break;
        }
        let Some((c1, c2, x)) = random_surgery_pair(m, r) else { continue };
        cases += 1;
        match surgery(&c1, &c2, &x) {
            Ok(s) => {
                let (ok, e) = compare(&[c1, c2], &[s]);
                exact_bad += usize::from(!ok);
                err = err.max(e);
            }
            Err(_) => exact_bad += 1,
        }
    }
    b.push(
        "surgery-conservation",
        cases == 50 && exact_bad == 0 && err < b.tol,
        b.tol,
        &[("cases", cases as f64), ("exact_violations", exact_bad as f64), ("max_hol_error", err)],
    );

    let mut wrong = 0;
    for c in corpus::family(m).iter().chain([&torus_boundary(m)]) {
        wrong += usize::from(!is_unobstructed(c).is_unobstructed());
    }
    wrong += usize::from(is_unobstructed(&small_circle(m)) != Unobstructedness::NotProper);
    for w in ["a1", "b2", "a1b1"] {
        let v = kinked(m, &word(w)).map(|k| is_unobstructed(&k));
        wrong += usize::from(!matches!(v, Ok(Unobstructedness::Obstructed(_))));
    }
    let f8 = figure_eight(m, &word("a1"), &word("b1"));
    wrong += usize::from(!f8.is_ok_and(|f| f.num_self_intersections() > 0 && is_unobstructed(&f).is_unobstructed()));
    b.push("unobstructed-verdicts", wrong == 0, 0.0, &[("wrong", wrong as f64)]);

    let pairs = corpus::surgery_pairs();
    let (mut cases, mut wrong) = (0, 0);
    for (c1, c2) in &pairs {
        if !in_minimal_position(c1, c2).unwrap_or(false) {
            wrong += 1;
            continue;
        }
        let x = intersections(c1, c2).unwrap()[0];
        match surgery(c1, c2, &x) {
            Ok(s) if s.free_homotopy_word().is_empty() => {}
            Ok(s) => {
                cases += 1;
                wrong += usize::from(!is_unobstructed(&s).is_unobstructed());
            }
            Err(_) => wrong += 1,
        }
    }
    b.push("surgery-unobstructed", wrong == 0 && cases >= 20, 0.0, &[("cases", cases as f64), ("wrong", wrong as f64)]);

    let curves = corpus::unobstructed_curves(m, r, 50);
    let (mut rev_bad, mut agree_bad) = (0, 0);
    for c in &curves {
        match (k0_class(c), k0_class(&c.reverse()), class_of(c)) {
            (Ok(k), Ok(kr), Ok(cl)) => {
                rev_bad += usize::from(!(&k + &kr).is_zero(b.tol));
                agree_bad += usize::from(k != cl);
            }
            _ => {
                rev_bad += 1;
                agree_bad += 1;
            }
        }
    }
    let kink_rejected = kinked(m, &word("a1")).is_ok_and(|k| k0_class(&k).is_err());
    let n = curves.len() as f64;
    b.push("k0-reversal", rev_bad == 0 && curves.len() == 50, b.tol, &[("curves", n), ("wrong", rev_bad as f64)]);
    b.push(
        "k0-agrees",
        agree_bad == 0 && kink_rejected && curves.len() == 50,
        0.0,
        &[("curves", n), ("wrong", agree_bad as f64), ("kink_rejected", f64::from(u8::from(kink_rejected)))],
    );
}

/// A jointly generic pair of random curves with a degree-one point, no two
/// double points coinciding.
fn random_surgery_pair(m: &std::sync::Arc<SurfaceModel>, r: &mut SampleRng) -> Option<(CurveDiagram, CurveDiagram, IntersectionPoint)> {
    let c1 = from_word(m, &random_word(r, m.genus(), 6)).ok()?;
    let c2 = from_word(m, &random_word(r, m.genus(), 6)).ok()?;
    let c2 = separate_from(&c2, &[&c1]).ok()?;
    let pts = intersections(&c1, &c2).ok()?;
    let mut all: Vec<_> = pts.iter().map(|p| p.point).collect();
    all.extend(c1.self_intersections().iter().chain(&c2.self_intersections()).map(|p| p.point));
    let generic = (0..all.len()).all(|i| (0..i).all(|j| surfcob::geom::dist(all[i], all[j]) > 1e-9));
    if !generic {
        return None;
    }
    let x = *pts.iter().find(|p| p.degree == 1)?;
    Some((c1, c2, x))
}

fn holonomy_suite(b: &mut Builder, m: &std::sync::Arc<SurfaceModel>, r: &mut SampleRng) -> Result<(), Error> {
    let g = m.genus();
    let xs = [1.0 / 3.0, -1.0 / 3.0, 2.0, -2.0, 10.0];
    // a single push-off sweeps at most the room beside the curve, which
    // shrinks with the genus; this check uses a surface large enough for
    // x = 10
    let area = 256.0 * (g * g) as f64;
    let big = std::sync::Arc::new(build_surface(g, area)?);
    let c = lickorish_alpha(&big, 1)?;
    let h0 = holonomy(&c)?;
    let mut err = 0.0f64;
    for x in xs {
        err = err.max(push_off(&c, x).and_then(|p| holonomy(&p)).map_or(f64::INFINITY, |h| (h - h0 - x).abs()));
    }
    b.push("hol-section", err < b.tol, b.tol, &[("total_area", area), ("max_error", err)]);

    let c = lickorish_alpha(m, 1)?;
    let k0 = class_of(&c)?;
    let mut err = 0.0f64;
    let mut exact = true;
    for x in xs {
        let mut acc = CobordismClass::zero(g);
        match push_off_pieces(&c, x) {
            Ok(pieces) => {
                for p in &pieces {
                    acc = &acc + &(&class_of(p)? - &k0);
                }
                exact &= acc.same_discrete(&i_of_real(x, g));
                err = err.max((acc.hol - x).abs());
            }
            Err(_) => err = f64::INFINITY,
        }
    }
    b.push("hol-section-chunked", exact && err < b.tol, b.tol, &[("total_area", m.total_area()), ("max_error", err)]);

    let mut err = 0.0f64;
    for _ in 0..100 {
        let c = random_diagram(r, m, 8, 12);
        err = err.max((holonomy(&c)? + holonomy(&c.reverse())?).abs());
    }
    b.push("hol-reversal", err < b.tol, b.tol, &[("curves", 100.0), ("max_error", err)]);

    let t = CobordismClass::t_class(g);
    let ord = m.maslov_modulus();
    let ok = (ord * &t).is_zero(0.0) && (1..ord).all(|k| !(k * &t).is_zero(0.0));
    b.push("t-order", ok, 0.0, &[("order", ord as f64)]);

    let fam = corpus::family(m);
    let (mut pairs, mut bad, mut worst) = (0, 0, 0.0f64);
    let mut x11 = f64::NAN;
    for (i, alpha) in fam.iter().enumerate() {
        for (j, beta) in fam.iter().enumerate() {
            if i == j {
                continue;
            }
            pairs += 1;
            match twist_defect(alpha, beta) {
                Ok((_, d)) if d.hol.is_finite() => {
                    worst = worst.max(d.hol.abs());
                    if (i, j) == (0, 1) {
                        x11 = d.hol;
                    }
                }
                _ => bad += 1,
            }
        }
    }
    b.push(
        "twist-defect",
        bad == 0,
        0.0,
        &[("pairs", pairs as f64), ("failures", bad as f64), ("max_abs_x", worst), ("x_alpha1_beta1", x11)],
    );
    Ok(())
}

fn transvects(alpha: &CurveDiagram, beta: &CurveDiagram) -> bool {
    twist_defect(alpha, beta).is_ok_and(|(_, d)| d.h.iter().all(|&v| v == 0) && d.m == 0)
}

/// Surgery of `beta` with one parallel copy of `alpha` per point of
/// `beta` on `alpha`, each copy oriented to meet the running curve in a
/// degree-one point.  Its discrete class should be that of the twist.
fn twist_by_surgery(alpha: &CurveDiagram, beta: &CurveDiagram) -> Result<bool, Error> {
    let xs = intersections(beta, alpha)?;
    let copies = parallel_copies(alpha, xs.len().max(1), true, &[beta], num_rational::Ratio::new(1, 8))?;
    let mut s = beta.clone();
    for (x, a) in xs.iter().zip(copies) {
        let a = if x.degree == 1 { a } else { a.reverse() };
        let a = separate_from(&a, &[&s])?;
        let pts = intersections(&s, &a)?;
        let y = pts.iter().find(|p| p.degree == 1).ok_or(Error::DegreeZero)?;
        s = surgery(&s, &a, y)?;
    }
    let t = dehn_twist(alpha, beta)?;
    Ok(class_of(&s)?.same_discrete(&class_of(&t)?))
}

fn mcg(b: &mut Builder, m: &std::sync::Arc<SurfaceModel>, r: &mut SampleRng) {
    let g = m.genus();
    let t = CobordismClass::t_class(g);
    let mut wrong = 0;
    for i in 1..g {
        let ok = (|| -> Result<bool, Error> {
            let gam = class_of(&lickorish_gamma(m, i)?)?;
            let a1 = class_of(&lickorish_alpha(m, i)?)?;
            let a2 = class_of(&lickorish_alpha(m, i + 1)?)?;
            Ok(gam.same_discrete(&(&(&a2 - &a1) - &t)))
        })();
        wrong += usize::from(ok != Ok(true));
    }
    b.push("gamma-identity", wrong == 0, 0.0, &[("indices", (g - 1) as f64), ("wrong", wrong as f64)]);

    let fam = corpus::family(m);
    let (mut pairs, mut wrong, mut surg, mut surg_wrong) = (0, 0, 0, 0);
    for (i, alpha) in fam.iter().enumerate() {
        for (j, beta) in fam.iter().enumerate() {
            if i == j {
                continue;
            }
            pairs += 1;
            wrong += usize::from(!transvects(alpha, beta));
            if !intersections(beta, alpha).map_or(true, |x| x.is_empty()) {
                surg += 1;
                surg_wrong += usize::from(twist_by_surgery(alpha, beta) != Ok(true));
            }
        }
    }
    b.push("twist-lickorish", wrong == 0, 0.0, &[("pairs", pairs as f64), ("wrong", wrong as f64)]);

    let mut cases = 0;
    let mut wrong = 0;
    let mut attempts = 0;
    while cases < 50 && attempts < 500 {
        attempts += 1;
        let pair = corpus::embedded_curves(m, r, 2);
        let [alpha, beta] = &pair[..] else { continue };
        let Ok(beta) = separate_from(beta, &[alpha]) else { continue };
        if intersections(&beta, alpha).is_err() {
            continue;
        }
        cases += 1;
        wrong += usize::from(!transvects(alpha, &beta));
    }
    b.push("twist-random", cases == 50 && wrong == 0, 0.0, &[("pairs", cases as f64), ("wrong", wrong as f64)]);
    b.push("twist-by-surgery", surg > 0 && surg_wrong == 0, 0.0, &[("pairs", surg as f64), ("wrong", surg_wrong as f64)]);
}

/// `beta_1` after a seeded random walk through unobstructed diagrams, made
/// generic with `alpha_1`.
fn walked_beta(m: &std::sync::Arc<SurfaceModel>, r: &mut SampleRng, a: &CurveDiagram) -> Option<CurveDiagram> {
    let mut c = lickorish_beta(m, 1).ok()?;
    for _ in 0..12 {
        if let Some((_, o)) = random_move(r, &c, 20, 8) {
            if is_unobstructed(&o.diagram).is_unobstructed() {
                c = o.diagram;
            }
        }
    }
    separate_from(&c, &[a]).ok()
}

fn floer(b: &mut Builder, m: &std::sync::Arc<SurfaceModel>, r: &mut SampleRng) {
    let mut pairs = corpus::floer_pairs(m);
    let a1 = lickorish_alpha(m, 1).unwrap();
    for _ in 0..8 {
        pairs.extend(walked_beta(m, r, &a1).map(|c| (a1.clone(), c)));
    }
    let (mut built, mut failed, mut d2_bad, mut grading_bad, mut exp_bad, mut sat_bad) = (0, 0, 0, 0, 0, 0);
    let (mut lunes, mut immersed, mut minpos, mut minpos_bad) = (0, 0, 0, 0);
    for (c1, c2) in &pairs {
        let Ok(fc) = build_complex(c1, c2, default_radius(c1, c2)) else {
            failed += 1;
            continue;
        };
        built += 1;
        lunes += fc.lunes.len();
        immersed += usize::from(c1.num_self_intersections() + c2.num_self_intersections() > 0);
        d2_bad += usize::from(!fc.d_squared_is_zero());
        grading_bad += fc.lunes.iter().filter(|l| fc.generators[l.from].degree == fc.generators[l.to].degree).count();
        exp_bad += fc.differential.iter().flatten().filter(|e| e.exponents().iter().any(|&x| x <= 0.0)).count();
        exp_bad += fc.lunes.iter().filter(|l| l.area <= 0.0).count();
        sat_bad += usize::from(build_complex(c1, c2, fc.radius + 2).map_or(true, |w| w.differential != fc.differential));
        if in_minimal_position(c1, c2).unwrap_or(false) {
            minpos += 1;
            minpos_bad += usize::from(homology_rank(&fc).ok() != Some(fc.len()));
        }
    }
    let n = built as f64;
    b.push(
        "floer-d-squared",
        failed == 0 && d2_bad == 0 && built >= 30 && immersed > 0,
        0.0,
        &[("complexes", n), ("build_failures", failed as f64), ("immersed_members", immersed as f64), ("lunes", lunes as f64), ("nonzero", d2_bad as f64)],
    );
    b.push("floer-grading", grading_bad == 0, 0.0, &[("lunes", lunes as f64), ("wrong", grading_bad as f64)]);
    b.push("floer-exponents", exp_bad == 0, 0.0, &[("lunes", lunes as f64), ("nonpositive", exp_bad as f64)]);
    b.push("floer-saturation", sat_bad == 0, 0.0, &[("complexes", n), ("changed", sat_bad as f64)]);
    b.push("floer-minimal-position", minpos > 0 && minpos_bad == 0, 0.0, &[("pairs", minpos as f64), ("wrong", minpos_bad as f64)]);

    let b1 = lickorish_beta(m, 1).unwrap();
    let rank = build_complex(&a1, &b1, default_radius(&a1, &b1)).ok().and_then(|fc| homology_rank(&fc).ok());
    b.push("floer-minimal-pair", rank == Some(1), 0.0, &[("rank", rank.map_or(f64::NAN, |x| x as f64))]);

    let rank_of = |c1: &CurveDiagram, c2: &CurveDiagram| {
        build_complex(c1, c2, default_radius(c1, c2)).ok().and_then(|fc| homology_rank(&fc).ok())
    };
    let fam = corpus::family(m);
    let (mut configs, mut wrong) = (0, 0);
    for (i, c1) in fam.iter().enumerate() {
        for (j, c2) in fam.iter().enumerate() {
            if i == j {
                continue;
            }
            let r0 = rank_of(c1, c2);
            let mut moved: Vec<CurveDiagram> =
                finger_sites(c2, c1).into_iter().take(2).filter_map(|s| finger_move(c2, c1, s).ok()).map(|o| o.diagram).collect();
            moved.extend(push_off(c2, 0.01).ok().and_then(|p| separate_from(&p, &[c1]).ok()));
            for v in moved {
                configs += 1;
                wrong += usize::from(r0.is_none() || rank_of(c1, &v) != r0);
            }
        }
    }
    b.push("floer-rank-invariance", configs >= 10 && wrong == 0, 0.0, &[("configurations", configs as f64), ("wrong", wrong as f64)]);

    let (mut triples, mut skipped, mut bad, mut triangles) = (0, 0, 0, 0);
    for [c0, c1, c2] in corpus::floer_triples(m) {
        let (Ok(d01), Ok(d12), Ok(d02), Ok(p)) =
            (
                build_complex(&c0, &c1, default_radius(&c0, &c1)),
                build_complex(&c1, &c2, default_radius(&c1, &c2)),
                build_complex(&c0, &c2, default_radius(&c0, &c2)),
                mu2(&c0, &c1, &c2, product_radius(&c0, &c1, &c2)),
            )
        else {
            skipped += 1;
            continue;
        };
        triples += 1;
        triangles += p.triangles.len();
        bad += usize::from(!leibniz_defect(&d01, &d12, &d02, &p).iter().flatten().flatten().all(|n| n.is_zero()));
    }
    b.push(
        "floer-leibniz",
        triples >= 50 && bad == 0,
        0.0,
        &[("triples", triples as f64), ("skipped", skipped as f64), ("triangles", triangles as f64), ("violations", bad as f64)],
    );
}

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use surfcob::curve_diagram::*;
use surfcob::curve_ops::*;
use surfcob::invariants::*;
use surfcob::sample::{random_diagram, random_word, rng};
use surfcob::surface_group::conjugate_eq;
use surfcob::unobstruction::{find_bigons, in_minimal_position, is_unobstructed};
use surfcob::{build_surface, Error, GroupWord, SurfaceModel};

fn model(g: usize) -> Arc<SurfaceModel> {
    Arc::new(build_surface(g, 1.0).unwrap())
}

fn w(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap()
}

fn sum(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn hol(c: &CurveDiagram) -> f64 {
    holonomy(c).unwrap()
}

#[test]
fn figure_eight_splits_into_its_lobes() {
    let m = model(2);
    let f = figure_eight(&m, &w("a1"), &w("a2")).unwrap();
    let x = &f.self_intersections()[0];
    let (p, q) = resolve_double_point(&f, x).unwrap();
    let mut hs = vec![homology_class(&p), homology_class(&q)];
    hs.sort();
    let mut want = vec![m.letter_vector(1), m.letter_vector(3)];
    want.sort();
    assert_eq!(hs, want);
    assert_eq!(turning_number(&p).unwrap() + turning_number(&q).unwrap(), 0);
    assert!((hol(&p) + hol(&q) - hol(&f)).abs() < 1e-6);

    // the a1/b1 figure eight has two double points; smoothing either one
    // conserves the totals
    let f = figure_eight(&m, &w("a1"), &w("b1")).unwrap();
    for x in f.self_intersections() {
        let (p, q) = resolve_double_point(&f, &x).unwrap();
        assert_eq!(sum(&homology_class(&p), &homology_class(&q)), sum(&m.letter_vector(1), &m.letter_vector(2)));
        assert_eq!(turning_number(&p).unwrap() + turning_number(&q).unwrap(), 0);
    }
}

#[test]
fn kink_splits_off_a_circle() {
    let m = model(2);
    let k = kinked(&m, &w("a1")).unwrap();
    let x = &k.self_intersections()[0];
    let (p, q) = resolve_double_point(&k, x).unwrap();
    let (circle, rest) = if p.is_closed_loop() { (p, q) } else { (q, p) };
    assert!(circle.is_closed_loop());
    assert_eq!(turning_number(&circle).unwrap().abs(), 1);
    assert_eq!(homology_class(&rest), m.letter_vector(1));
    assert_eq!(rest.num_self_intersections(), 0);
    assert_eq!(turning_number(&circle).unwrap() + turning_number(&rest).unwrap(), turning_number(&k).unwrap());
}

#[test]
fn resolution_rejects_triple_points() {
    // three straight chords through one point
    let c: CurveDiagram = serde_json::from_str(
        r#"{"genus":2,"total_area":1.0,"crossings":[{"side":4,"t":"1/4"},{"side":4,"t":"1/2"},{"side":2,"t":"1/2"},{"side":6,"t":"1/4"}],"detours":[[[-0.676776695296637,-0.2803300858899106],[-0.801776695296637,-0.22855339059327368]],[],[],[[0.5151650429449552,-0.2866116523516816]]]}"#,
    )
    .unwrap();
    let pts = c.self_intersections();
    assert_eq!(pts.len(), 4);
    for x in &pts[1..] {
        assert!(matches!(resolve_double_point(&c, x), Err(Error::Precondition(_))));
    }
    assert!(resolve_double_point(&c, &pts[0]).is_ok());
}

#[test]
fn resolution_rejects_foreign_points() {
    let m = model(2);
    let a = lickorish_alpha(&m, 1).unwrap();
    let b = lickorish_beta(&m, 1).unwrap();
    let x = intersections(&a, &b).unwrap()[0];
    assert!(matches!(resolve_double_point(&a, &x), Err(Error::Precondition(_))));
}

#[test]
fn surgery_adds_classes() {
    let m = model(2);
    let a = lickorish_alpha(&m, 1).unwrap();
    let b = lickorish_beta(&m, 1).unwrap();
    let x = intersections(&a, &b).unwrap()[0];
    assert_eq!(x.degree, 1);
    let s = surgery(&a, &b, &x).unwrap();
    assert_eq!(homology_class(&s), sum(&homology_class(&a), &homology_class(&b)));
    let want = &class_of(&a).unwrap() + &class_of(&b).unwrap();
    assert!(class_of(&s).unwrap().approx_eq(&want, 1e-6));

    // the same point seen from beta has degree 0
    let y = intersections(&b, &a).unwrap()[0];
    assert_eq!(y.degree, 0);
    assert_eq!(surgery(&b, &a, &y), Err(Error::DegreeZero));
    assert!(matches!(surgery(&a, &a.clone(), &x), Err(Error::Precondition(_))));
}

#[test]
fn twist_transvects_homology() {
    for g in 2..=3 {
        let m = model(g);
        let fam = lickorish_family(&m);
        for (na, alpha) in &fam {
            for (nb, beta) in &fam {
                if na == nb {
                    continue;
                }
                let k = m.pairing(&homology_class(beta), &homology_class(alpha));
                let (t, d) = twist_defect(alpha, beta).unwrap();
                assert!(t.validate().is_empty());
                let want: Vec<i64> = homology_class(beta).iter().zip(homology_class(alpha)).map(|(b, a)| b + k * a).collect();
                assert_eq!(homology_class(&t), want, "{na} {nb}");
                assert!(d.h.iter().all(|&v| v == 0) && d.m == 0, "{na} {nb}: {d}");
                assert!(d.hol.is_finite());
                if k == 0 && intersections(beta, alpha).unwrap().is_empty() {
                    assert_eq!(&t, beta);
                }
            }
        }
    }
}

#[test]
fn twist_of_b1_about_a1_reads_b1_a1() {
    // independent check on words: a single crossing point gives b1 a1^(+-1)
    let m = model(2);
    let a = lickorish_alpha(&m, 1).unwrap();
    let b = lickorish_beta(&m, 1).unwrap();
    let t = dehn_twist(&a, &b).unwrap();
    let k = m.pairing(&homology_class(&b), &homology_class(&a));
    let want = if k > 0 { w("b1a1") } else { w("b1A1") };
    assert!(conjugate_eq(&t.free_homotopy_word(), &want, &m), "{}", t.free_homotopy_word());
    assert_eq!(t.num_self_intersections(), 0);
    assert!(dehn_twist(&figure_eight(&m, &w("a1"), &w("a2")).unwrap(), &b).is_err());
}

#[test]
fn zero_push_off_is_a_disjoint_copy() {
    let m = model(2);
    for (name, c) in lickorish_family(&m) {
        let p = push_off(&c, 0.0).unwrap();
        assert!(intersections(&c, &p).unwrap().is_empty(), "{name}");
        assert!((hol(&p) - hol(&c)).abs() < 1e-6, "{name}");
        assert_eq!(homology_class(&p), homology_class(&c));
        assert_eq!(turning_number(&p).unwrap(), turning_number(&c).unwrap());
    }
}

#[test]
fn push_off_sweeps_the_requested_area() {
    let m = Arc::new(build_surface(2, 256.0).unwrap());
    let c = lickorish_alpha(&m, 1).unwrap();
    for x in [1.0 / 3.0, -1.0 / 3.0, 2.0, -2.0, 10.0] {
        let p = push_off(&c, x).unwrap();
        assert!((hol(&p) - hol(&c) - x).abs() < 1e-6, "{x}");
        assert!(intersections(&c, &p).unwrap().is_empty());
        assert_eq!(p.num_self_intersections(), 0);
        assert_eq!(homology_class(&p), homology_class(&c));
        assert_eq!(turning_number(&p).unwrap(), turning_number(&c).unwrap());
        assert!(conjugate_eq(&p.free_homotopy_word(), &c.free_homotopy_word(), &m));
    }
}

#[test]
fn push_off_is_bounded_by_the_area_and_chunks_beyond() {
    let m = model(2);
    let c = lickorish_alpha(&m, 1).unwrap();
    // an embedded isotopic copy bounds an annulus with c
    assert!(push_off(&c, 10.0).is_err());
    for x in [1.0 / 3.0, -1.0 / 3.0, 2.0, -2.0, 10.0] {
        let pieces = push_off_pieces(&c, x).unwrap();
        let total: f64 = pieces.iter().map(|p| hol(p) - hol(&c)).sum();
        assert!((total - x).abs() < 1e-6, "{x}: {total}");
        let mut acc = CobordismClass::zero(2);
        for p in &pieces {
            acc = &acc + &(&class_of(p).unwrap() - &class_of(&c).unwrap());
        }
        assert!(acc.approx_eq(&i_of_real(x, 2), 1e-6), "{acc}");
    }
}

#[test]
fn finger_move_adds_a_bigon() {
    let m = model(2);
    let a = lickorish_alpha(&m, 1).unwrap();
    let b = lickorish_beta(&m, 1).unwrap();
    let sites = finger_sites(&b, &a);
    assert!(!sites.is_empty());
    for s in sites {
        let o = finger_move(&b, &a, s).unwrap();
        let before = intersections(&a, &b).unwrap();
        let after = intersections(&a, &o.diagram).unwrap();
        assert_eq!(after.len(), before.len() + 2);
        let ones = after.iter().filter(|p| p.degree == 1).count() as i64;
        let ones0 = before.iter().filter(|p| p.degree == 1).count() as i64;
        assert_eq!(2 * (ones - ones0), 2, "new points have opposite degree");
        assert!(!find_bigons(&a, &o.diagram).unwrap().is_empty());
        assert!((hol(&o.diagram) - hol(&b) - o.swept_area).abs() < 1e-12);
        assert_eq!(turning_number(&o.diagram).unwrap(), turning_number(&b).unwrap());
    }
    assert!(finger_move(&b, &a, FingerSite { seg: 99, target: 0 }).is_err());
}

/// Minimal-position pairs of unobstructed curves with an embedded second
/// member, oriented so that the first point has degree one.
fn surgery_corpus() -> Vec<(CurveDiagram, CurveDiagram)> {
    let mut out = Vec::new();
    for g in 2..=4 {
        let m = model(g);
        let fam = lickorish_family(&m);
        for (_, c1) in &fam {
            for (_, c2) in &fam {
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

#[test]
fn surgery_of_unobstructed_pairs_is_unobstructed() {
    let corpus = surgery_corpus();
    assert!(corpus.len() >= 20, "{}", corpus.len());
    for (c1, c2) in &corpus {
        assert!(is_unobstructed(c1).is_unobstructed() && is_unobstructed(c2).is_unobstructed());
        assert!(in_minimal_position(c1, c2).unwrap());
        let x = intersections(c1, c2).unwrap()[0];
        let s = surgery(c1, c2, &x).unwrap();
        if !s.free_homotopy_word().is_empty() {
            assert!(is_unobstructed(&s).is_unobstructed(), "{} # {}", c1.raw_word(), c2.raw_word());
        }
    }
}

fn totals(cs: &[CurveDiagram]) -> (Vec<i64>, i64, f64) {
    let g = cs[0].model().genus();
    let mut h = vec![0; 2 * g];
    let mut t = 0;
    let mut x = 0.0;
    for c in cs {
        h = sum(&h, &homology_class(c));
        t += turning_number(c).unwrap();
        x += hol(c);
    }
    (h, t, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn iterated_resolution_conserves_totals(seed in 0u64..100_000) {
        let m = model(2);
        let mut r = rng(seed);
        let c = random_diagram(&mut r, &m, 6, 6);
        let pts = c.self_intersections();
        prop_assume!((0..pts.len()).all(|i| (0..i).all(|j| surfcob::geom::dist(pts[i].point, pts[j].point) > 1e-9)));
        let pieces = resolve_all(&c).unwrap();
        prop_assert!(pieces.iter().all(|p| p.num_self_intersections() == 0));
        prop_assert!(pieces.len() <= c.num_self_intersections() + 1);
        let (h0, t0, x0) = totals(std::slice::from_ref(&c));
        let (h, t, x) = totals(&pieces);
        prop_assert_eq!(h, h0);
        prop_assert_eq!(t, t0);
        prop_assert!((x - x0).abs() < 1e-6);
    }

    #[test]
    fn surgery_conserves_totals(seed in 0u64..100_000) {
        let m = model(2);
        let mut r = rng(seed);
        let c1 = from_word(&m, &random_word(&mut r, 2, 6)).unwrap();
        let c2 = from_word(&m, &random_word(&mut r, 2, 6)).unwrap();
        let c2 = separate_from(&c2, &[&c1]).unwrap();
        let pts = intersections(&c1, &c2);
        prop_assume!(pts.is_ok());
        let pts = pts.unwrap();
        // general position: no triple points
        let mut all: Vec<_> = pts.iter().map(|p| p.point).collect();
        all.extend(c1.self_intersections().iter().chain(&c2.self_intersections()).map(|p| p.point));
        let generic = (0..all.len()).all(|i| (0..i).all(|j| surfcob::geom::dist(all[i], all[j]) > 1e-9));
        prop_assume!(generic);
        let Some(x) = pts.iter().find(|p| p.degree == 1) else { return Ok(()) };
        let s = surgery(&c1, &c2, x).unwrap();
        let (h0, t0, x0) = totals(&[c1.clone(), c2.clone()]);
        let (h, t, x1) = totals(&[s]);
        prop_assert_eq!(h, h0);
        prop_assert_eq!(t, t0);
        prop_assert!((x1 - x0).abs() < 1e-6);
    }

    #[test]
    fn random_twists_transvect(seed in 0u64..100_000) {
        let m = model(2);
        let mut r = rng(seed);
        let fam = lickorish_family(&m);
        let alpha = &fam[seed as usize % fam.len()].1;
        let beta = from_word(&m, &random_word(&mut r, 2, 5)).unwrap();
        let beta = separate_from(&beta, &[alpha]).unwrap();
        prop_assume!(intersections(&beta, alpha).is_ok());
        let k = m.pairing(&homology_class(&beta), &homology_class(alpha));
        let (t, d) = twist_defect(alpha, &beta).unwrap();
        let want: Vec<i64> = homology_class(&beta).iter().zip(homology_class(alpha)).map(|(b, a)| b + k * a).collect();
        prop_assert_eq!(homology_class(&t), want);
        prop_assert!(d.h.iter().all(|&v| v == 0) && d.m == 0);
    }
}

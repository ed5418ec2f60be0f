mod common;

use std::sync::Arc;

use num_rational::Ratio;
use proptest::prelude::*;
use surfcob::curve_diagram::*;
use surfcob::invariants::{homology_class, maslov, turning_number};
use surfcob::sample::{random_diagram, random_word, rng};
use surfcob::surface_group::conjugate_eq;
use surfcob::{build_surface, GroupWord, SurfaceModel};

fn model(g: usize) -> Arc<SurfaceModel> {
    Arc::new(build_surface(g, 1.0).unwrap())
}

fn w(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap()
}

fn basis(g: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * g];
    v[i] = 1;
    v
}

#[test]
fn validate_reports_single_violations() {
    let m = model(2);
    let a = lickorish_alpha(&m, 1).unwrap();
    assert!(a.validate().is_empty());

    let s = a.crossings()[0].side;
    let p = m.pair(s);
    let sb = lickorish_beta(&m, 1).unwrap().crossings()[0].side;
    // a1 b1 A1 where A1 re-uses the edge parameter of the a1 crossing
    let dup = CurveDiagram::from_parts_unchecked(
        m.clone(),
        vec![Crossing::new(s, Ratio::new(1, 3)), Crossing::new(sb, Ratio::new(1, 2)), Crossing::new(p, Ratio::new(2, 3))],
        vec![vec![], vec![], vec![]],
    );
    assert_eq!(dup.validate().len(), 1, "{:?}", dup.validate());

    // crossing straight back through the point just used: chord 1 is a point
    let coincident = CurveDiagram::from_parts_unchecked(
        m.clone(),
        vec![Crossing::new(s, Ratio::new(1, 3)), Crossing::new(p, Ratio::new(2, 3)), Crossing::new(sb, Ratio::new(1, 2))],
        vec![vec![], vec![], vec![]],
    );
    assert_eq!(coincident.validate().len(), 1, "{:?}", coincident.validate());
}

#[test]
fn lickorish_pattern_holds() {
    for g in 2..=5 {
        let m = model(g);
        let fam = lickorish_family(&m);
        assert_eq!(fam.len(), 3 * g - 1);
        for (name, c) in &fam {
            assert!(c.validate().is_empty(), "{name}");
            assert_eq!(c.num_self_intersections(), 0, "{name}");
        }
        for h in 1..=g {
            assert_eq!(homology_class(&lickorish_alpha(&m, h).unwrap()), basis(g, 2 * h - 2));
            assert_eq!(homology_class(&lickorish_beta(&m, h).unwrap()), basis(g, 2 * h - 1));
        }
        for j in 1..g {
            let gam = homology_class(&lickorish_gamma(&m, j).unwrap());
            let a1 = homology_class(&lickorish_alpha(&m, j).unwrap());
            let a2 = homology_class(&lickorish_alpha(&m, j + 1).unwrap());
            let want: Vec<i64> = a2.iter().zip(&a1).map(|(x, y)| x - y).collect();
            assert_eq!(gam, want);
        }
        let expected = |x: &str, y: &str| -> usize {
            let parse = |s: &str| (s.trim_end_matches(char::is_numeric).to_string(), s.trim_start_matches(char::is_alphabetic).parse::<usize>().unwrap());
            let ((kx, ix), (ky, iy)) = (parse(x), parse(y));
            let meets = |k1: &str, i1: usize, k2: &str, i2: usize| match (k1, k2) {
                ("alpha", "beta") => i1 == i2,
                ("gamma", "beta") => i2 == i1 || i2 == i1 + 1,
                _ => false,
            };
            usize::from(meets(&kx, ix, &ky, iy) || meets(&ky, iy, &kx, ix))
        };
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                let n = intersections(&fam[i].1, &fam[j].1).unwrap().len();
                assert_eq!(n, expected(&fam[i].0, &fam[j].0), "g={g} {} x {}", fam[i].0, fam[j].0);
            }
        }
    }
}

#[test]
fn alpha_beta_point_has_degree_one() {
    let m = model(3);
    let x = intersections(&lickorish_alpha(&m, 1).unwrap(), &lickorish_beta(&m, 1).unwrap()).unwrap();
    assert_eq!(x.len(), 1);
    assert_eq!(x[0].degree, 1);
    let a = lickorish_alpha(&m, 1).unwrap();
    assert!(intersections(&a, &lickorish_alpha(&m, 2).unwrap()).unwrap().is_empty());
}

#[test]
fn separating_curves() {
    for g in 2..=4 {
        let m = model(g);
        for gt in 1..g {
            let c = subsurface_boundary(&m, gt).unwrap();
            assert_eq!(c.num_self_intersections(), 0);
            assert!(homology_class(&c).iter().all(|&v| v == 0));
            // the genus-gt side lies on the left
            assert_eq!(common::left_region_chi(&c), Some(1 - 2 * gt as i64));
            assert_eq!(common::left_region_chi(&c.reverse()), Some(1 - 2 * (g - gt) as i64));
        }
        let tb = torus_boundary(&m);
        assert_eq!(tb.num_self_intersections(), 0);
        let comm = w("a1b1A1B1");
        assert!(conjugate_eq(&tb.free_homotopy_word(), &comm.inverse(), &m));
    }
    assert!(subsurface_boundary(&model(3), 3).is_err());
    assert!(lickorish_gamma(&model(3), 3).is_err());
}

#[test]
fn turning_matches_left_region_euler_characteristic() {
    // for separating embedded curves, turning = chi(left region) mod 2g - 2
    let mut checked = 0;
    for g in 2..=4 {
        let m = model(g);
        let mut curves: Vec<CurveDiagram> = lickorish_family(&m).into_iter().map(|x| x.1).collect();
        let link = m.link_word();
        for start in 0..link.len() {
            for len in 1..link.len() {
                let letters: Vec<i32> = (0..len).map(|i| link[(start + i) % link.len()]).collect();
                if let Ok(c) = vertex_run(&m, &letters) {
                    curves.push(c);
                }
            }
        }
        let modulus = m.maslov_modulus();
        for c in curves.iter().flat_map(|c| [c.clone(), c.reverse()]) {
            let chi = common::left_region_chi(&c);
            let separating = homology_class(&c).iter().all(|&v| v == 0);
            assert_eq!(chi.is_some(), separating, "{}", c.raw_word());
            if let Some(chi) = chi {
                assert_eq!(maslov(&c).unwrap(), chi.rem_euclid(modulus), "{}", c.raw_word());
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "{checked}");
}

#[test]
fn figure_eight_and_kink() {
    let m = model(2);
    let f = figure_eight(&m, &w("a1"), &w("b1")).unwrap();
    // the lobes a1 and b1 meet algebraically once, which forces a second point
    assert_eq!(f.num_self_intersections(), 2);
    assert_eq!(turning_number(&f).unwrap(), 0);
    assert_eq!(tighten(&f).num_self_intersections(), 2);
    let g = figure_eight(&m, &w("a1"), &w("a2")).unwrap();
    assert_eq!(g.num_self_intersections(), 1);
    assert_eq!(turning_number(&g).unwrap(), 0);
    let k = kinked(&m, &w("a1")).unwrap();
    assert_eq!(k.num_self_intersections(), 1);
    assert!(conjugate_eq(&k.free_homotopy_word(), &w("a1"), &m));
}

#[test]
fn words_round_trip() {
    for g in 2..=3 {
        let m = model(g);
        assert_eq!(from_word(&m, &GroupWord::empty()).unwrap(), small_circle(&m));
        assert!(small_circle(&m).free_homotopy_word().is_empty());
        assert_eq!(homology_class(&from_word(&m, &w("a1")).unwrap()), basis(g, 0));
        assert!(homology_class(&from_word(&m, &w("a1b1A1B1")).unwrap()).iter().all(|&v| v == 0));
        let raw = raw_layout(&m, &w("a1A1a1")).unwrap();
        assert_eq!(raw.num_crossings(), 3);
        assert_eq!(tighten(&raw).num_crossings(), from_word(&m, &w("a1")).unwrap().num_crossings());
        let mut r = rng(g as u64);
        for _ in 0..60 {
            let x = random_word(&mut r, g, 10);
            let c = from_word(&m, &x).unwrap();
            assert!(c.validate().is_empty());
            assert!(conjugate_eq(&c.free_homotopy_word(), &x, &m), "{x}");
            assert_eq!(homology_class(&c), x.abelianization(g));
            assert_eq!(tighten(&c), c, "tighten is idempotent on {x}");
        }
    }
}

#[test]
fn tighten_never_adds_double_points() {
    let m = model(2);
    let mut r = rng(3);
    for _ in 0..40 {
        let x = random_word(&mut r, 2, 10);
        let raw = raw_layout(&m, &x).unwrap();
        let t = tighten(&raw);
        assert!(t.num_self_intersections() <= raw.num_self_intersections());
        assert!(conjugate_eq(&t.free_homotopy_word(), &raw.free_homotopy_word(), &m));
    }
}

#[test]
fn json_round_trip() {
    let m = model(3);
    let c = figure_eight(&m, &w("a1"), &w("b2")).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    let back: CurveDiagram = serde_json::from_str(&s).unwrap();
    assert_eq!(back, c);
    assert!(s.contains("\"t\":\""));
}

#[test]
fn separation_resolves_collisions() {
    let m = model(2);
    let a = lickorish_alpha(&m, 1).unwrap();
    assert!(intersections(&a, &a.clone()).is_err());
    let b = separate_from(&a, &[&a]).unwrap();
    assert!(intersections(&a, &b).unwrap().is_empty());
    assert_eq!(homology_class(&b), homology_class(&a));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn signed_intersections_equal_pairing(seed in 0u64..100_000) {
        let m = model(2);
        let mut r = rng(seed);
        let c1 = random_diagram(&mut r, &m, 6, 8);
        let c2 = random_diagram(&mut r, &m, 6, 8);
        let c2 = separate_from(&c2, &[&c1]).unwrap();
        // random pairs may share tongue waypoints; those are not generic
        let pts = intersections(&c1, &c2);
        prop_assume!(pts.is_ok());
        let pts = pts.unwrap();
        let signed: i64 = pts.iter().map(|p| if p.degree == 1 { 1 } else { -1 }).sum();
        prop_assert_eq!(signed, m.pairing(&homology_class(&c1), &homology_class(&c2)));
    }

    #[test]
    fn reversal_negates_homology_and_turning(seed in 0u64..100_000) {
        let m = model(3);
        let mut r = rng(seed);
        let c = random_diagram(&mut r, &m, 8, 10);
        let rv = c.reverse();
        prop_assert!(rv.validate().is_empty());
        let h: Vec<i64> = homology_class(&c).iter().map(|v| -v).collect();
        prop_assert_eq!(homology_class(&rv), h);
        prop_assert_eq!(turning_number(&rv).unwrap(), -turning_number(&c).unwrap());
        prop_assert_eq!(rv.reverse(), c);
    }
}

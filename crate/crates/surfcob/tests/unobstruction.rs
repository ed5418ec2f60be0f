use std::sync::Arc;

use proptest::prelude::*;
use surfcob::curve_diagram::*;
use surfcob::sample::{random_word, rng};
use surfcob::unobstruction::*;
use surfcob::{build_surface, GroupWord, SurfaceModel};

fn model(g: usize) -> Arc<SurfaceModel> {
    Arc::new(build_surface(g, 1.0).unwrap())
}

fn w(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap()
}

#[test]
fn null_homotopic_curves_are_not_proper() {
    let m = model(2);
    let c = small_circle(&m);
    assert!(!lift_is_proper(&c));
    assert_eq!(is_unobstructed(&c), Unobstructedness::NotProper);
    assert!(develop_lift(&from_word(&m, &w("a1b1A1B1")).unwrap()).is_ok());
    let raw = raw_layout(&m, &w("a1A1")).unwrap();
    assert!(matches!(develop_lift(&raw), Err(surfcob::Error::TrivialWord)));
    assert_eq!(is_unobstructed(&raw), Unobstructedness::NotProper);
}

#[test]
fn embedded_essential_curves_are_unobstructed() {
    for g in 2..=3 {
        let m = model(g);
        for (name, c) in lickorish_family(&m) {
            assert!(is_unobstructed(&c).is_unobstructed(), "{name}");
            assert!(is_unobstructed(&c.reverse()).is_unobstructed(), "{name}");
        }
        assert!(is_unobstructed(&torus_boundary(&m)).is_unobstructed());
        for gt in 1..g {
            assert!(is_unobstructed(&subsurface_boundary(&m, gt).unwrap()).is_unobstructed());
        }
    }
}

#[test]
fn kink_is_obstructed_in_period_zero() {
    let m = model(2);
    for x in ["a1", "b2", "a1b1"] {
        let k = kinked(&m, &w(x)).unwrap();
        match is_unobstructed(&k) {
            Unobstructedness::Obstructed(wit) => {
                assert_eq!(wit.shift, 0, "{x}");
                assert_eq!(wit.chords.0, wit.chords.1);
            }
            other => panic!("{x}: {other:?}"),
        }
    }
}

#[test]
fn immersed_but_unobstructed() {
    let m = model(2);
    let f = figure_eight(&m, &w("a1"), &w("b1")).unwrap();
    assert!(f.num_self_intersections() > 0);
    assert!(is_unobstructed(&f).is_unobstructed());
    let t = tighten(&from_word(&m, &w("a1b1")).unwrap());
    assert!(is_unobstructed(&t).is_unobstructed());
    let g = figure_eight(&m, &w("a1"), &w("a2")).unwrap();
    assert!(is_unobstructed(&g).is_unobstructed());
}

#[test]
fn widening_the_window_changes_nothing() {
    let m = model(2);
    let mut r = rng(11);
    for _ in 0..40 {
        let x = random_word(&mut r, 2, 8);
        let Ok(c) = raw_layout(&m, &x) else { continue };
        let Ok(win) = develop_lift(&c) else { continue };
        let a = lift_witness_within(&c, &win, win.radius).is_some();
        let b = lift_witness_within(&c, &win, 2 * win.radius).is_some();
        assert_eq!(a, b, "{x}");
    }
}

#[test]
fn lickorish_pairs_are_in_minimal_position() {
    let m = model(3);
    let fam = lickorish_family(&m);
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            let bigons = find_bigons(&fam[i].1, &fam[j].1).unwrap();
            assert!(bigons.is_empty(), "{} {}", fam[i].0, fam[j].0);
        }
    }
}

#[test]
fn witness_serializes() {
    let m = model(2);
    let v = is_unobstructed(&kinked(&m, &w("a1")).unwrap());
    let s = serde_json::to_string(&v).unwrap();
    assert!(s.contains("\"verdict\":\"obstructed\""), "{s}");
    let back: Unobstructedness = serde_json::from_str(&s).unwrap();
    assert_eq!(back, v);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verdict_is_invariant_under_reversal(seed in 0u64..100_000) {
        let m = model(2);
        let mut r = rng(seed);
        let x = random_word(&mut r, 2, 8);
        let c = raw_layout(&m, &x).unwrap();
        let a = is_unobstructed(&c);
        let b = is_unobstructed(&c.reverse());
        prop_assert_eq!(a.is_unobstructed(), b.is_unobstructed(), "{}", x);
        prop_assert_eq!(a == Unobstructedness::NotProper, b == Unobstructedness::NotProper);
    }
}

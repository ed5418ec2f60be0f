mod common;

use proptest::prelude::*;
use rand::Rng;
use surfcob::sample::{random_relator_product, random_word, rng};
use surfcob::surface_group::{conjugate_eq, cyclic_reduce, dehn_reduce, is_trivial, reduced_power_length};
use surfcob::{build_surface, Error, GroupWord, SurfaceModel};

fn w(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap()
}

fn model(g: usize) -> SurfaceModel {
    build_surface(g, 1.0).unwrap()
}

#[test]
fn oracle_is_a_representation() {
    for g in 2..=4 {
        let m = model(g);
        assert!(common::fuchsian_trivial(&m, &GroupWord::new(m.relator())));
        assert!(common::fuchsian_trivial(&m, &GroupWord::new(m.link_word())));
        for l in 1..=2 * g as i32 {
            assert!(common::fuchsian_trivial(&m, &GroupWord::new(vec![l, -l])));
            assert!(!common::fuchsian_trivial(&m, &GroupWord::new(vec![l])));
        }
    }
}

#[test]
fn spot_values() {
    let m = model(2);
    assert!(dehn_reduce(&GroupWord::new(m.relator()), &m).is_empty());
    assert_eq!(dehn_reduce(&w("a1A1b2"), &m), w("b2"));
    let comm = w("a1b1A1B1");
    assert!(!dehn_reduce(&comm, &m).is_empty());
    assert!(!common::fuchsian_trivial(&m, &comm));
    assert!(is_trivial(&GroupWord::empty(), &m));
    assert!(!is_trivial(&w("a1"), &m));
    assert!(conjugate_eq(&w("a1b1"), &w("b1a1"), &m));
    assert!(!conjugate_eq(&w("a1"), &w("a2"), &m));
    let r = GroupWord::new(m.relator());
    assert!(conjugate_eq(&r.concat(&w("a1")).concat(&r.inverse()), &w("a1"), &m));
}

#[test]
fn power_lengths() {
    let m = model(2);
    assert_eq!(reduced_power_length(&w("a1"), 5, &m).unwrap(), 5);
    assert_eq!(reduced_power_length(&w("a1b2"), 0, &m).unwrap(), 0);
    assert_eq!(reduced_power_length(&GroupWord::new(m.relator()), 2, &m), Err(Error::TrivialWord));
    let comm = w("a1b1A1B1");
    let lens: Vec<usize> = (1..=8).map(|k| reduced_power_length(&comm, k, &m).unwrap()).collect();
    assert!(lens.windows(2).all(|p| p[0] <= p[1]), "{lens:?}");
    assert!(lens[7] > lens[0]);
    // the reduced power is a word for the same element
    for k in 1..=2 {
        let p = dehn_reduce(&comm.pow(k), &m);
        assert!(common::fuchsian_trivial(&m, &p.concat(&comm.pow(k).inverse())));
    }
}

#[test]
fn relator_products_reduce_to_empty() {
    for g in 2..=3 {
        let m = model(g);
        let mut r = rng(11 + g as u64);
        for _ in 0..100 {
            let k = r.gen_range(1..=5);
            let p = random_relator_product(&mut r, &m, k, 4);
            assert!(is_trivial(&p, &m), "{p}");
        }
    }
}

#[test]
fn agrees_with_fuchsian_oracle_on_random_words() {
    for g in 2..=3 {
        let m = model(g);
        let mut r = rng(100 + g as u64);
        let (mut trivial_seen, mut decided) = (0, 0);
        for i in 0..400 {
            // half of the samples are short relator products in disguise
            let x = if i % 2 == 0 {
                random_word(&mut r, g, 8)
            } else {
                let u = random_word(&mut r, g, 2);
                let p = random_relator_product(&mut r, &m, 1, 1);
                u.concat(&p).concat(&u.inverse())
            };
            let ours = is_trivial(&x, &m);
            if let Some(v) = common::fuchsian_verdict(&m, &x) {
                assert_eq!(ours, v, "{x}");
                decided += 1;
            }
            trivial_seen += usize::from(ours);
        }
        assert!(trivial_seen >= 100);
        assert!(decided >= 300, "{decided}");
    }
}

#[test]
fn conjugacy_agrees_with_trace_oracle() {
    // conjugate elements have equal displacement traces; reduced forms are conjugate
    let m = model(2);
    let mut r = rng(5);
    for _ in 0..100 {
        let a = random_word(&mut r, 2, 5);
        let u = random_word(&mut r, 2, 2);
        let b = u.concat(&a).concat(&u.inverse());
        assert!(conjugate_eq(&a, &b, &m));
        let ca = common::fuchsian(&m, &a);
        let cb = common::fuchsian(&m, &b);
        let tr = |x: &common::Mat| x[0][0] + x[1][1] + x[2][2];
        assert!((tr(&ca) - tr(&cb)).abs() < 1e-6 * tr(&ca).abs().max(1.0));
        let c = random_word(&mut r, 2, 5);
        if (tr(&ca) - tr(&common::fuchsian(&m, &c))).abs() > 1e-3 * tr(&ca).abs() {
            assert!(!conjugate_eq(&a, &c, &m), "{a} {c}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_idempotent_and_sound(seed in 0u64..10_000, g in 2usize..=3) {
        let m = model(g);
        let mut r = rng(seed);
        let x = random_word(&mut r, g, 12);
        let d = dehn_reduce(&x, &m);
        prop_assert_eq!(dehn_reduce(&d, &m), d.clone());
        prop_assert!(d.len() <= x.len());
        if d.is_empty() {
            prop_assert!(x.abelianization(g).iter().all(|&v| v == 0));
        }
        let c = cyclic_reduce(&x, &m);
        prop_assert!(conjugate_eq(&c, &x, &m));
    }

    #[test]
    fn products_match_element_equality(seed in 0u64..10_000) {
        let m = model(2);
        let mut r = rng(seed);
        let u = random_word(&mut r, 2, 6);
        let p = random_relator_product(&mut r, &m, 1, 3);
        let v = u.concat(&p);
        // u and u*relator-conjugate are the same element
        prop_assert!(is_trivial(&u.concat(&v.inverse()), &m));
        prop_assert!(conjugate_eq(&u, &v, &m));
    }
}

//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use surfcob::curve_diagram::{param_f64, CurveDiagram};
use surfcob::{GroupWord, SurfaceModel};

pub type Mat = [[f64; 3]; 3];

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn rot(phi: f64) -> Mat {
    let (s, c) = phi.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

fn boost(d: f64) -> Mat {
    [[d.cosh(), 0.0, d.sinh()], [0.0, 1.0, 0.0], [d.sinh(), 0.0, d.cosh()]]
}

/// Lorentz matrix carrying side `s` of the regular hyperbolic 4g-gon with
/// angles pi/2g onto side `pair(s)`, the polygon going across `pair(s)`.
pub fn side_pairing(model: &SurfaceModel, s: usize) -> Mat {
    let n = model.num_sides() as f64;
    let p = model.pair(s);
    let phi = |k: usize| 2.0 * PI * (k as f64 + 0.5) / n;
    let h = (1.0 / (PI / n).tan()).acosh();
    mul(&mul(&rot(phi(p)), &boost(2.0 * h)), &mul(&rot(PI), &rot(-phi(s))))
}

/// Image of a word in the Fuchsian group: the letter read when crossing
/// side `s` outward acts as the pairing that brings the polygon across `s`.
pub fn fuchsian(model: &SurfaceModel, w: &GroupWord) -> Mat {
    let mut m = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for &l in &w.letters {
        let s = model.side_of_letter(l);
        m = mul(&m, &side_pairing(model, model.pair(s)));
    }
    m
}

/// `cosh` of the distance the word moves the polygon centre.
pub fn displacement(model: &SurfaceModel, w: &GroupWord) -> f64 {
    fuchsian(model, w)[2][2]
}

/// Triviality by the faithful representation: `Some(verdict)` when the
/// rounding bound (machine epsilon times the largest squared partial
/// displacement) leaves the answer unambiguous.  A nontrivial element moves
/// the centre by at least the systole, far above the `1.5` threshold.
pub fn fuchsian_verdict(model: &SurfaceModel, w: &GroupWord) -> Option<bool> {
    let mut m = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut worst: f64 = 1.0;
    for &l in &w.letters {
        let s = model.side_of_letter(l);
        m = mul(&m, &side_pairing(model, model.pair(s)));
        worst = worst.max(m[2][2]);
    }
    let err = 1e-13 * worst * worst;
    let d = m[2][2];
    if d < 1.0 + 1e-6 + err && err < 0.25 {
        Some(true)
    } else if d > 1.5 + err {
        Some(false)
    } else {
        None
    }
}

pub fn fuchsian_trivial(model: &SurfaceModel, w: &GroupWord) -> bool {
    fuchsian_verdict(model, w).expect("word too deep for the f64 oracle")
}

/// Euler characteristic of the closure of the region to the left of an
/// embedded separating curve made of straight chords, counted cell by cell.
/// `None` when the two sides are connected through the gluing, i.e. the
/// curve does not separate.
pub fn left_region_chi(c: &CurveDiagram) -> Option<i64> {
    let model = c.model();
    let n = c.num_crossings();
    let ns = model.num_sides();
    assert!(n > 0 && c.detours().iter().all(|d| d.is_empty()));
    assert_eq!(c.num_self_intersections(), 0);
    // boundary events as positions on [0, ns): (pos, chord, is_exit)
    let mut ev: Vec<(f64, usize, bool)> = Vec::new();
    for k in 0..n {
        let x = c.crossings()[k];
        ev.push((x.side as f64 + param_f64(x.t), k, true));
        let (es, et) = c.entry_of(k);
        ev.push((es as f64 + param_f64(et), (k + 1) % n, false));
    }
    ev.sort_by(|a, b| a.0.total_cmp(&b.0));
    let m = ev.len();
    // arc i runs from event i to event i+1; on the left iff it starts at an exit
    let left: Vec<bool> = (0..m).map(|i| ev[i].2).collect();
    for i in 0..m {
        let ends_left = !ev[(i + 1) % m].2;
        if left[i] != ends_left {
            return None;
        }
    }
    // face pieces: follow arc end -> chord -> other end -> next arc
    let mut at: HashMap<(usize, bool), usize> = HashMap::new();
    for (i, e) in ev.iter().enumerate() {
        // chord j ends at the exit event of crossing j, starts at an entry event
        at.insert((e.1, e.2), i);
    }
    let mut seen = vec![false; m];
    let mut faces_left = 0;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut a = start;
        loop {
            seen[a] = true;
            if left[a] != left[start] {
                return None;
            }
            let end = &ev[(a + 1) % m];
            let other = at[&(end.1, !end.2)];
            a = other;
            if a == start {
                break;
            }
        }
        if left[start] {
            faces_left += 1;
        }
    }
    // position -> arc index
    let arc_of = |pos: f64| -> usize {
        let mut idx = m - 1;
        for i in 0..m {
            if ev[i].0 <= pos {
                idx = i;
            }
        }
        if pos < ev[0].0 {
            m - 1
        } else {
            idx
        }
    };
    // vertex: every corner must agree
    let corner_labels: Vec<bool> = (0..ns).map(|k| left[arc_of(k as f64)]).collect();
    if corner_labels.iter().any(|&b| b != corner_labels[0]) {
        return None;
    }
    let v_left = i64::from(corner_labels[0]);
    // edge pieces on each side, compared with the paired side
    let mut e_left = 0;
    for s in 0..ns {
        let p = model.pair(s);
        let mut cuts: Vec<f64> = ev.iter().filter(|e| e.0 >= s as f64 && e.0 < (s + 1) as f64).map(|e| e.0).collect();
        cuts.sort_by(f64::total_cmp);
        let mut bounds = vec![s as f64];
        bounds.extend(cuts);
        bounds.push((s + 1) as f64);
        let labels: Vec<bool> = bounds.windows(2).map(|w| left[arc_of(0.5 * (w[0] + w[1]))]).collect();
        if s < p {
            let mut pc: Vec<f64> = ev.iter().filter(|e| e.0 >= p as f64 && e.0 < (p + 1) as f64).map(|e| e.0).collect();
            pc.sort_by(f64::total_cmp);
            let mut pb = vec![p as f64];
            pb.extend(pc);
            pb.push((p + 1) as f64);
            let mut pl: Vec<bool> = pb.windows(2).map(|w| left[arc_of(0.5 * (w[0] + w[1]))]).collect();
            pl.reverse();
            if labels != pl {
                return None;
            }
            e_left += labels.iter().filter(|&&b| b).count() as i64;
        }
    }
    Some(v_left - e_left + faces_left)
}

fn corner(model: &SurfaceModel, k: usize) -> [f64; 2] {
    let n = model.num_sides();
    let a = 2.0 * PI * (k % n) as f64 / n as f64;
    [a.cos(), a.sin()]
}

fn angle_of(v: [f64; 2]) -> f64 {
    v[1].atan2(v[0])
}

fn wrap(a: f64) -> f64 {
    let mut x = a % (2.0 * PI);
    if x <= -PI {
        x += 2.0 * PI;
    }
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}

/// Turning number from the tangent angle, unwrapped step by step.  The
/// gluing across side `s` is the rotation taking the side vector of `s` to
/// the reversed side vector of `pair(s)`, taken in `(-pi, pi]`.
pub fn direct_turning(c: &CurveDiagram) -> i64 {
    let model = c.model();
    let n = c.num_crossings();
    let dir = |a: [f64; 2], b: [f64; 2]| angle_of([b[0] - a[0], b[1] - a[1]]);
    let mut total = 0.0;
    if n == 0 {
        let p = &c.detours()[0];
        let k = p.len();
        for i in 0..k {
            total += wrap(dir(p[i], p[(i + 1) % k]) - dir(p[(i + k - 1) % k], p[i]));
        }
    } else {
        for j in 0..n {
            let p = c.chord_polyline(j);
            for i in 1..p.len() - 1 {
                total += wrap(dir(p[i], p[i + 1]) - dir(p[i - 1], p[i]));
            }
            let s = c.crossings()[j].side;
            let ps = model.pair(s);
            let vs = {
                let (a, b) = (corner(model, s), corner(model, s + 1));
                [b[0] - a[0], b[1] - a[1]]
            };
            let vp = {
                let (a, b) = (corner(model, ps), corner(model, ps + 1));
                [a[0] - b[0], a[1] - b[1]]
            };
            let rho = wrap(angle_of(vp) - angle_of(vs));
            let q = c.chord_polyline((j + 1) % n);
            let din = dir(p[p.len() - 2], p[p.len() - 1]);
            let dout = dir(q[0], q[1]);
            total += rho + wrap(dout - (din + rho));
        }
    }
    let t = total / (2.0 * PI);
    assert!((t - t.round()).abs() < 1e-6, "{t}");
    t.round() as i64
}

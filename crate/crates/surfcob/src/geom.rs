//! Planar primitives shared by the diagram, move and lift code.
//!
//! Incidence predicates go through `robust::orient2d`, so two polylines built
//! from the same `f64` vertices always agree on whether they cross.

use std::f64::consts::PI;

pub type Pt = [f64; 2];

#[inline]
pub fn sub(a: Pt, b: Pt) -> Pt {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn add(a: Pt, b: Pt) -> Pt {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn scale(a: Pt, k: f64) -> Pt {
    [a[0] * k, a[1] * k]
}

#[inline]
pub fn lerp(a: Pt, b: Pt, t: f64) -> Pt {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

#[inline]
pub fn mid(a: Pt, b: Pt) -> Pt {
    lerp(a, b, 0.5)
}

#[inline]
pub fn cross(a: Pt, b: Pt) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn dot(a: Pt, b: Pt) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn norm(a: Pt) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
pub fn dist(a: Pt, b: Pt) -> f64 {
    norm(sub(a, b))
}

pub fn unit(a: Pt) -> Pt {
    let n = norm(a);
    [a[0] / n, a[1] / n]
}

/// Left normal of a direction.
#[inline]
pub fn perp(a: Pt) -> Pt {
    [-a[1], a[0]]
}

pub fn rotate(a: Pt, ang: f64) -> Pt {
    let (s, c) = ang.sin_cos();
    [c * a[0] - s * a[1], s * a[0] + c * a[1]]
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let mut x = a % (2.0 * PI);
    if x <= -PI {
        x += 2.0 * PI;
    } else if x > PI {
        x -= 2.0 * PI;
    }
    x
}

/// Signed turn from direction `u` to direction `v`, in (-pi, pi].
#[inline]
pub fn turn(u: Pt, v: Pt) -> f64 {
    cross(u, v).atan2(dot(u, v))
}

/// Exact sign of the orientation of (a, b, c): +1 ccw, -1 cw, 0 collinear.
pub fn orient(a: Pt, b: Pt, c: Pt) -> i32 {
    let v = robust::orient2d(
        robust::Coord { x: a[0], y: a[1] },
        robust::Coord { x: b[0], y: b[1] },
        robust::Coord { x: c[0], y: c[1] },
    );
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Outcome of an exact segment-segment test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegHit {
    Disjoint,
    Proper,
    /// Touching or collinear overlap; never produced by a generic layout.
    Degenerate,
}

pub fn seg_hit(a: Pt, b: Pt, c: Pt, d: Pt) -> SegHit {
    let bb = |p: Pt, q: Pt, r: Pt, s: Pt| {
        p[0].min(q[0]) <= r[0].max(s[0])
            && r[0].min(s[0]) <= p[0].max(q[0])
            && p[1].min(q[1]) <= r[1].max(s[1])
            && r[1].min(s[1]) <= p[1].max(q[1])
    };
    if !bb(a, b, c, d) {
        return SegHit::Disjoint;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return SegHit::Proper;
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return SegHit::Disjoint;
    }
    if o1 == 0 && o2 == 0 {
        // collinear: overlap test on the bounding boxes already passed
        return SegHit::Degenerate;
    }
    SegHit::Degenerate
}

/// Parameters (lambda on ab, mu on cd) of the crossing of two properly
/// intersecting segments.
pub fn seg_params(a: Pt, b: Pt, c: Pt, d: Pt) -> (f64, f64) {
    let r = sub(b, a);
    let s = sub(d, c);
    let den = cross(r, s);
    let qp = sub(c, a);
    (cross(qp, s) / den, cross(qp, r) / den)
}

/// Shoelace signed area of a closed polygon (ccw positive).
pub fn signed_area(poly: &[Pt]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        s += p[0] * q[1] - p[1] * q[0];
    }
    0.5 * s
}

/// Closed-form integral of x dy along the segment p -> q.
#[inline]
pub fn xdy(p: Pt, q: Pt) -> f64 {
    0.5 * (p[0] + q[0]) * (q[1] - p[1])
}

/// True iff the closed polygon has no two non-adjacent edges meeting and no
/// adjacent edges folding back on each other.
pub fn is_simple_polygon(poly: &[Pt]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if poly[i] == poly[(i + 1) % n] {
            return false;
        }
    }
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        for j in (i + 1)..n {
            let c = poly[j];
            let d = poly[(j + 1) % n];
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // shared vertex; reject a fold-back onto the same line
                let (p, q, r) = if j == i + 1 { (a, b, d) } else { (c, a, b) };
                if orient(p, q, r) == 0 && dot(sub(q, p), sub(r, q)) < 0.0 {
                    return false;
                }
                continue;
            }
            if seg_hit(a, b, c, d) != SegHit::Disjoint {
                return false;
            }
        }
    }
    true
}

/// Does the ray from `o` through `toward` (excluding `o`) meet segment [p, q]?
/// Touching counts as meeting.
pub fn ray_hits_segment(o: Pt, toward: Pt, p: Pt, q: Pt) -> bool {
    let d = sub(toward, o);
    let far = add(o, scale(d, 1e6 / norm(d).max(1e-300)));
    seg_hit(o, far, p, q) != SegHit::Disjoint
}

/// Is direction `d` inside the closed ccw sweep from `u` to `v` (angles in
/// (0, 2pi))?  Boundary directions count as inside.
pub fn in_ccw_wedge(u: Pt, v: Pt, d: Pt) -> bool {
    let tau = 2.0 * PI;
    let au = u[1].atan2(u[0]);
    let span = (v[1].atan2(v[0]) - au).rem_euclid(tau);
    let a = (d[1].atan2(d[0]) - au).rem_euclid(tau);
    let eps = 1e-12;
    a <= span + eps || a >= tau - eps
}

/// Winding number of a closed polygon around `p` (exact crossing rule).
pub fn winding_number(poly: &[Pt], p: Pt) -> i32 {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if a[1] <= p[1] {
            if b[1] > p[1] && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b[1] <= p[1] && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// Distance from `p` to segment [a, b].
pub fn point_seg_dist(p: Pt, a: Pt, b: Pt) -> f64 {
    let ab = sub(b, a);
    let l2 = dot(ab, ab);
    if l2 == 0.0 {
        return dist(p, a);
    }
    let t = (dot(sub(p, a), ab) / l2).clamp(0.0, 1.0);
    dist(p, lerp(a, b, t))
}

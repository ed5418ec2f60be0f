//! Homology class, turning number, Maslov residue and holonomy of a diagram,
//! and the cobordism-class group they assemble into.
//!
//! The trivialization of the tangent bundle is the constant frame of the
//! face, transported across each side by `side_rotation`; it is singular
//! only at the vertex.  Holonomy uses the primitive `x dy` of the rescaled
//! area form on the face, a per-side gluing correction, and the vertex
//! constant `kappa` times the turning number.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::curve_diagram::{param_f64, CurveDiagram};
use crate::geom;
use crate::{Error, SUM_TOL, WINDING_TOL};

/// `M` applied to the signed edge-crossing vector.
pub fn homology_class(c: &CurveDiagram) -> Vec<i64> {
    let m = c.model().homology_matrix();
    let v = c.crossing_vector();
    m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect()
}

/// Total developed tangent angle, in full turns, before rounding.
pub fn turning_angle(c: &CurveDiagram) -> f64 {
    let model = c.model();
    let n = c.num_crossings();
    let mut total = 0.0;
    if n == 0 {
        let p = &c.detours()[0];
        let len = p.len();
        for i in 0..len {
            let d0 = geom::sub(p[i], p[(i + len - 1) % len]);
            let d1 = geom::sub(p[(i + 1) % len], p[i]);
            total += geom::turn(d0, d1);
        }
        return total / (2.0 * PI);
    }
    let polys: Vec<Vec<geom::Pt>> = (0..n).map(|j| c.chord_polyline(j)).collect();
    for p in &polys {
        for i in 1..p.len() - 1 {
            total += geom::turn(geom::sub(p[i], p[i - 1]), geom::sub(p[i + 1], p[i]));
        }
    }
    for k in 0..n {
        let pin = &polys[k];
        let pout = &polys[(k + 1) % n];
        let d_in = geom::sub(pin[pin.len() - 1], pin[pin.len() - 2]);
        let d_out = geom::sub(pout[1], pout[0]);
        let rot = model.side_rotation(c.crossings()[k].side);
        total += rot + geom::turn(geom::rotate(d_in, rot), d_out);
    }
    total / (2.0 * PI)
}

/// Integer winding of the tangent relative to the trivialization.
pub fn turning_number(c: &CurveDiagram) -> Result<i64, Error> {
    let a = turning_angle(c);
    let r = a.round();
    if (a - r).abs() >= WINDING_TOL {
        return Err(Error::WindingResidual(a - r));
    }
    Ok(r as i64)
}

/// Turning number reduced modulo `2g - 2`.
pub fn maslov(c: &CurveDiagram) -> Result<i64, Error> {
    Ok(turning_number(c)?.rem_euclid(c.model().maslov_modulus()))
}

/// Integral of the face primitive along the drawn curve plus the gluing
/// corrections, without the vertex term.
pub fn primitive_integral(c: &CurveDiagram) -> f64 {
    let model = c.model();
    let mut s = 0.0;
    for seg in c.segments() {
        s += geom::xdy(seg.a, seg.b);
    }
    s *= model.area_scale();
    for x in c.crossings() {
        s += model.side_correction(x.side, param_f64(x.t));
    }
    s
}

pub fn holonomy(c: &CurveDiagram) -> Result<f64, Error> {
    Ok(primitive_integral(c) + c.model().kappa() * turning_number(c)? as f64)
}

/// Element of `R + Z^{2g} + Z/(2g-2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CobordismClass {
    pub hol: f64,
    pub h: Vec<i64>,
    pub m: i64,
    pub modulus: i64,
}

impl CobordismClass {
    pub fn new(hol: f64, h: Vec<i64>, m: i64, modulus: i64) -> Self {
        CobordismClass { hol, h, m: m.rem_euclid(modulus), modulus }
    }

    pub fn zero(genus: usize) -> Self {
        CobordismClass::new(0.0, vec![0; 2 * genus], 0, 2 * genus as i64 - 2)
    }

    /// The class `(0, 0, -1)`.
    pub fn t_class(genus: usize) -> Self {
        CobordismClass::new(0.0, vec![0; 2 * genus], -1, 2 * genus as i64 - 2)
    }

    pub fn genus(&self) -> usize {
        self.h.len() / 2
    }

    /// Equal (h, m) parts.
    pub fn same_discrete(&self, other: &Self) -> bool {
        self.h == other.h && self.m == other.m && self.modulus == other.modulus
    }

    /// Equal discrete parts and holonomies within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.same_discrete(other) && (self.hol - other.hol).abs() <= tol
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.approx_eq(&CobordismClass::zero(self.genus()), tol)
    }

    /// Discrete part only (holonomy dropped).
    pub fn discrete(&self) -> Self {
        CobordismClass { hol: 0.0, ..self.clone() }
    }
}

impl Add for &CobordismClass {
    type Output = CobordismClass;
    fn add(self, o: &CobordismClass) -> CobordismClass {
        assert_eq!(self.modulus, o.modulus, "classes on different surfaces");
        CobordismClass::new(
            self.hol + o.hol,
            self.h.iter().zip(&o.h).map(|(a, b)| a + b).collect(),
            self.m + o.m,
            self.modulus,
        )
    }
}

impl Neg for &CobordismClass {
    type Output = CobordismClass;
    fn neg(self) -> CobordismClass {
        CobordismClass::new(-self.hol, self.h.iter().map(|a| -a).collect(), -self.m, self.modulus)
    }
}

impl Sub for &CobordismClass {
    type Output = CobordismClass;
    fn sub(self, o: &CobordismClass) -> CobordismClass {
        self + &(-o)
    }
}

impl Mul<&CobordismClass> for i64 {
    type Output = CobordismClass;
    fn mul(self, c: &CobordismClass) -> CobordismClass {
        CobordismClass::new(self as f64 * c.hol, c.h.iter().map(|a| self * a).collect(), self * c.m, c.modulus)
    }
}

impl fmt::Display for CobordismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hol={:.12e} h={:?} m={} (mod {})", self.hol, self.h, self.m, self.modulus)
    }
}

pub fn class_of(c: &CurveDiagram) -> Result<CobordismClass, Error> {
    let t = turning_number(c)?;
    Ok(CobordismClass::new(
        primitive_integral(c) + c.model().kappa() * t as f64,
        homology_class(c),
        t,
        c.model().maslov_modulus(),
    ))
}

/// Section of the holonomy coordinate: `(x, 0, 0)`.
pub fn i_of_real(x: f64, genus: usize) -> CobordismClass {
    CobordismClass::new(x, vec![0; 2 * genus], 0, 2 * genus as i64 - 2)
}

/// Sum of classes of a multiset of curves.
pub fn class_sum<'a>(curves: impl IntoIterator<Item = &'a CurveDiagram>, genus: usize) -> Result<CobordismClass, Error> {
    let mut acc = CobordismClass::zero(genus);
    for c in curves {
        acc = &acc + &class_of(c)?;
    }
    Ok(acc)
}

/// Default tolerance for holonomy equalities.
pub const HOL_TOL: f64 = SUM_TOL;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_group_laws() {
        let a = CobordismClass::new(1.5, vec![1, 0, 2, -1], 1, 2);
        let b = CobordismClass::new(-0.25, vec![0, 3, 0, 1], 1, 2);
        let s = &a + &b;
        assert_eq!(s.h, vec![1, 3, 2, 0]);
        assert_eq!(s.m, 0);
        assert!((&a - &a).is_zero(0.0));
        assert!((&a + &(-&a)).is_zero(1e-15));
    }

    #[test]
    fn t_class_order() {
        for g in 2..=5usize {
            let t = CobordismClass::t_class(g);
            let ord = 2 * g as i64 - 2;
            assert!((ord * &t).is_zero(0.0));
            for k in 1..ord {
                assert!(!(k * &t).is_zero(0.0));
            }
        }
    }

    #[test]
    fn section_is_additive() {
        let x = i_of_real(0.75, 3);
        let y = i_of_real(-2.0, 3);
        assert!((&x + &y).approx_eq(&i_of_real(-1.25, 3), 1e-15));
        assert!(i_of_real(0.0, 3).is_zero(0.0));
        assert_eq!(x.hol, 0.75);
    }
}

//! The one-vertex, one-face cell structure of the closed genus-g surface.
//!
//! Side `k` of the regular 4g-gon runs from corner `P_k` to `P_{k+1}`, with
//! `P_k` at angle `2 pi k / 4g` on the unit circle.  In block `i` the sides
//! `4i, 4i+1, 4i+2, 4i+3` carry the edge labels `a, b, a^-1, b^-1` of edge
//! pair `i+1`; a point at parameter `t` on side `s` is glued to `1 - t` on
//! `pair(s)`.
//!
//! Letters of the surface group are read from crossings: leaving the face
//! through a side reads one generator of the dual presentation.  With
//! `h = g - i`, sides `4i+3, 4i, 4i+1, 4i+2` read `a_h, b_h, A_h, B_h`.  With
//! this naming the letters read while circling the vertex counterclockwise
//! spell `[a1,b1]...[ag,bg]`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geom::{self, Pt};
use crate::Error;

/// A signed generator: `+k` is generator `k`, `-k` its inverse.  Generator
/// `2h-1` is `a_h` and `2h` is `b_h`.
pub type Letter = i32;

/// Edge label of a side: generator index in `1..=2g` and a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideLabel {
    pub generator: usize,
    pub sign: i8,
}

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    genus: usize,
    total_area: f64,
    corners: Vec<Pt>,
    labels: Vec<SideLabel>,
    vertex_link: Vec<usize>,
    homology_matrix: Vec<Vec<i64>>,
    rho: f64,
    kappa: f64,
    side_xdy: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    genus: usize,
    total_area: f64,
}

impl Serialize for SurfaceModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModelRepr { genus: self.genus, total_area: self.total_area }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurfaceModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ModelRepr::deserialize(d)?;
        build_surface(r.genus, r.total_area).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for SurfaceModel {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus && self.total_area == other.total_area
    }
}

/// Builds the regular one-vertex model.  Genus below 2 is rejected.
pub fn build_surface(genus: usize, total_area: f64) -> Result<SurfaceModel, Error> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if !(total_area.is_finite() && total_area > 0.0) {
        return Err(Error::BadArea(total_area));
    }
    let n = 4 * genus;
    let corners: Vec<Pt> = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            [a.cos(), a.sin()]
        })
        .collect();
    let labels = (0..n)
        .map(|k| {
            let i = k / 4;
            let (gen, sign) = match k % 4 {
                0 => (2 * i + 1, 1),
                1 => (2 * i + 2, 1),
                2 => (2 * i + 1, -1),
                _ => (2 * i + 2, -1),
            };
            SideLabel { generator: gen, sign }
        })
        .collect();
    let side_xdy: Vec<f64> = (0..n).map(|k| geom::xdy(corners[k], corners[(k + 1) % n])).collect();
    let poly_area: f64 = side_xdy.iter().sum();
    let rho = total_area / poly_area;

    let mut m = SurfaceModel {
        genus,
        total_area,
        corners,
        labels,
        vertex_link: Vec::new(),
        homology_matrix: Vec::new(),
        rho,
        kappa: 0.0,
        side_xdy,
    };
    m.vertex_link = m.trace_vertex_link();
    m.homology_matrix = m.compute_homology_matrix();
    // Sum of the gluing corrections over all sides at t = 1, divided by chi.
    let c1: f64 = (0..n).map(|s| m.side_correction(s, 1.0)).sum();
    m.kappa = c1 / m.euler_characteristic() as f64;
    Ok(m)
}

impl SurfaceModel {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn total_area(&self) -> f64 {
        self.total_area
    }

    pub fn num_sides(&self) -> usize {
        4 * self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        // one vertex, 2g edges, one face
        1 - 2 * self.genus as i64 + 1
    }

    /// `2g - 2`, the modulus of the Maslov coordinate.
    pub fn maslov_modulus(&self) -> i64 {
        -self.euler_characteristic()
    }

    pub fn labels(&self) -> &[SideLabel] {
        &self.labels
    }

    pub fn corner(&self, k: usize) -> Pt {
        self.corners[k % self.num_sides()]
    }

    pub fn corners(&self) -> &[Pt] {
        &self.corners
    }

    /// Side endpoints on the unit-circle embedding.
    pub fn side_endpoints(&self, s: usize) -> (Pt, Pt) {
        (self.corner(s), self.corner(s + 1))
    }

    pub fn pair(&self, s: usize) -> usize {
        if s % 4 < 2 {
            s + 2
        } else {
            s - 2
        }
    }

    /// Ratio of the assigned face area to the Euclidean polygon area.
    pub fn area_scale(&self) -> f64 {
        self.rho
    }

    /// Vertex calibration constant of the holonomy.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn vertex_link(&self) -> &[usize] {
        &self.vertex_link
    }

    pub fn homology_matrix(&self) -> &[Vec<i64>] {
        &self.homology_matrix
    }

    pub fn point(&self, s: usize, t: f64) -> Pt {
        let (p, q) = self.side_endpoints(s);
        geom::lerp(p, q, t)
    }

    /// Letter read when leaving the face through side `s`.
    pub fn letter_of_side(&self, s: usize) -> Letter {
        let g = self.genus;
        let h = (g - s / 4) as i32;
        match s % 4 {
            3 => 2 * h - 1,
            0 => 2 * h,
            1 => -(2 * h - 1),
            _ => -(2 * h),
        }
    }

    /// Side whose outward crossing reads `letter`.
    pub fn side_of_letter(&self, letter: Letter) -> usize {
        let gen = letter.unsigned_abs() as usize;
        assert!(gen >= 1 && gen <= 2 * self.genus, "letter out of range");
        let h = gen.div_ceil(2);
        let i = self.genus - h;
        let is_a = gen % 2 == 1;
        let r = match (is_a, letter > 0) {
            (true, true) => 3,
            (false, true) => 0,
            (true, false) => 1,
            (false, false) => 2,
        };
        4 * i + r
    }

    /// Rotation carrying a tangent leaving through `s` to the same tangent
    /// seen from the chart entered through `pair(s)`; a multiple of pi/2g.
    pub fn side_rotation(&self, s: usize) -> f64 {
        let n = self.num_sides() as f64;
        let p = self.pair(s) as f64;
        geom::wrap_angle(PI + (p - s as f64) * 2.0 * PI / n)
    }

    /// Euclidean isometry of the plane taking chart `pair(s)` across side `s`
    /// of chart `s` (it maps `(pair(s), u)` to `(s, 1-u)`).
    pub fn unfold_across(&self, s: usize) -> impl Fn(Pt) -> Pt {
        let p = self.pair(s);
        let (ps0, ps1) = self.side_endpoints(s);
        let (pp0, pp1) = self.side_endpoints(p);
        let ang = {
            let a = geom::sub(ps0, ps1);
            let b = geom::sub(pp1, pp0);
            a[1].atan2(a[0]) - b[1].atan2(b[0])
        };
        let base = geom::sub(ps1, geom::rotate(pp0, ang));
        move |x: Pt| geom::add(geom::rotate(x, ang), base)
    }

    /// Gluing correction for an outward crossing at `(s, t)`: the mismatch of
    /// the face primitive `x dy` across the identification, made odd under
    /// `(s, t) -> (pair(s), 1 - t)`.
    pub fn side_correction(&self, s: usize, t: f64) -> f64 {
        let p = self.pair(s);
        let along = |k: usize, u: f64| {
            // integral of x dy along side k from parameter 0 to u
            let (a, b) = self.side_endpoints(k);
            let dx = b[0] - a[0];
            let dy = b[1] - a[1];
            dy * (a[0] * u + 0.5 * dx * u * u)
        };
        let fwd = along(s, t);
        let back = -(along(p, 1.0) - along(p, 1.0 - t));
        self.rho * (-fwd + back + 0.5 * (self.side_xdy[s] + self.side_xdy[p]))
    }

    /// Corners in the order met while circling the vertex counterclockwise:
    /// leave corner `k` through side `k-1` near its end, arrive at corner
    /// `pair(k-1)`.
    fn trace_vertex_link(&self) -> Vec<usize> {
        let n = self.num_sides();
        let mut link = vec![0usize];
        let mut k = 0usize;
        loop {
            let exit = (k + n - 1) % n;
            k = self.pair(exit);
            if k == 0 {
                break;
            }
            link.push(k);
            assert!(link.len() <= n, "vertex link does not close");
        }
        link
    }

    /// Letters read along the counterclockwise vertex link.
    pub fn link_word(&self) -> Vec<Letter> {
        let n = self.num_sides();
        self.vertex_link.iter().map(|&k| self.letter_of_side((k + n - 1) % n)).collect()
    }

    /// The relator `[a1,b1]...[ag,bg]` as letters.
    pub fn relator(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.num_sides());
        for h in 1..=self.genus as i32 {
            let a = 2 * h - 1;
            let b = 2 * h;
            w.extend_from_slice(&[a, b, -a, -b]);
        }
        w
    }

    /// Matrix taking signed edge-crossing counts (edge `e` counted +1 when
    /// leaving through its positively labelled side) to homology coordinates.
    fn compute_homology_matrix(&self) -> Vec<Vec<i64>> {
        let dim = 2 * self.genus;
        let mut m = vec![vec![0i64; dim]; dim];
        for s in 0..self.num_sides() {
            let lab = self.labels[s];
            let l = self.letter_of_side(s);
            let row = l.unsigned_abs() as usize - 1;
            let col = lab.generator - 1;
            m[row][col] = (l.signum() as i64) * lab.sign as i64;
        }
        m
    }

    /// Homology coordinates of a single letter.
    pub fn letter_vector(&self, l: Letter) -> Vec<i64> {
        let mut v = vec![0i64; 2 * self.genus];
        v[l.unsigned_abs() as usize - 1] = l.signum() as i64;
        v
    }

    /// Symplectic pairing in the basis (a1, b1, ...): `<a_i, b_i> = 1`.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        (0..self.genus).map(|i| u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]).sum()
    }
}

/// Human-readable name of a letter, e.g. `a1`, `B2`.
pub fn letter_name(l: Letter) -> String {
    let gen = l.unsigned_abs();
    let h = gen.div_ceil(2);
    let c = match (gen % 2 == 1, l > 0) {
        (true, true) => 'a',
        (false, true) => 'b',
        (true, false) => 'A',
        (false, false) => 'B',
    };
    format!("{c}{h}")
}

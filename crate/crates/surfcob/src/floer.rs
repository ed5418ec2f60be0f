//! Z/2 Floer complexes of unobstructed curves over the Novikov field, with
//! disks counted in the universal cover.
//!
//! A lift of a curve with crossing word `g = l_0 .. l_{n-1}` and base tile
//! `B` puts chord `j` of period `k` in the tile `B g^k P_j`, `P_j` the first
//! `j` letters of `g`.  A polygon is a cyclic sequence of arcs on lifts,
//! joined at lifted intersection points; consecutive corners are matched by
//! a triviality test on tile words.  Each candidate is then developed tile by
//! tile: it must be simple, counterclockwise, with convex corners.  Its total
//! turning `1 + (2g - 2) V` counts the vertex lifts `V` it encloses, and its
//! area is the flat primitive integral plus `V` times the surface area.
//!
//! Lengths are measured in side crossings: a polygon is searched for when
//! every arc crosses at most `radius` sides.

use serde::{Deserialize, Serialize};

use crate::curve_diagram::{intersections, param_f64, CurveDiagram, CurvePos, IntersectionPoint};
use crate::geom::{self, Pt, SegHit};
use crate::invariants::{class_of, CobordismClass};
use crate::surface_group::{dehn_reduce, is_trivial, GroupWord};
use crate::unobstruction::is_unobstructed;
use crate::{Error, GEOM_TOL, WINDING_TOL};

/// Exponents closer than this are the same power of `T`.
pub const EXP_TOL: f64 = 1e-7;
/// Side parameter at which winding rays cross sides; irrational, so never
/// a curve's crossing.
const RAY_PARAM: f64 = std::f64::consts::FRAC_1_SQRT_2;
/// Offset of winding sample points from the boundary.
const RIGHT_OFFSET: f64 = 1e-7;
/// Largest search radius reached by doubling.
pub const MAX_RADIUS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exp: f64,
    pub coeff: u8,
}

/// Finite sum of powers `T^exp` with coefficients in Z/2, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Novikov(pub Vec<Term>);

impl Novikov {
    pub fn zero() -> Self {
        Novikov(Vec::new())
    }

    pub fn monomial(exp: f64) -> Self {
        Novikov(vec![Term { exp, coeff: 1 }])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> Vec<f64> {
        self.0.iter().map(|t| t.exp).collect()
    }

    /// Adds `T^exp`; a matching exponent cancels.
    pub fn toggle(&mut self, exp: f64) {
        if let Some(i) = self.0.iter().position(|t| (t.exp - exp).abs() < EXP_TOL) {
            self.0.remove(i);
        } else {
            let at = self.0.partition_point(|t| t.exp < exp);
            self.0.insert(at, Term { exp, coeff: 1 });
        }
    }

    pub fn add_assign(&mut self, other: &Novikov) {
        for t in &other.0 {
            self.toggle(t.exp);
        }
    }

    pub fn mul(&self, other: &Novikov) -> Novikov {
        let mut out = Novikov::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.exp + b.exp);
            }
        }
        out
    }

    /// Value at `T = 1`.
    pub fn at_one(&self) -> bool {
        self.0.len() % 2 == 1
    }
}

/// A point on the lift of a curve: period `k`, position in that period.
#[derive(Debug, Clone, Copy)]
struct LPt {
    k: i64,
    pos: CurvePos,
}

struct Lift<'a> {
    c: &'a CurveDiagram,
    base: GroupWord,
    period: GroupWord,
}

struct Piece {
    tile: GroupWord,
    pts: Vec<Pt>,
}

/// Pieces joined by outward crossings `(side, t)`, one between each
/// consecutive pair.
struct Path {
    pieces: Vec<Piece>,
    crossings: Vec<(usize, f64)>,
}

fn prefix(c: &CurveDiagram, j: usize) -> GroupWord {
    GroupWord::new(c.raw_word().letters[..j].to_vec())
}

impl<'a> Lift<'a> {
    /// The lift on which chord `j` of period zero lies in tile `tile`.
    fn through(c: &'a CurveDiagram, j: usize, tile: &GroupWord) -> Self {
        let base = dehn_reduce(&tile.concat(&prefix(c, j).inverse()), c.model());
        Lift { c, base, period: c.raw_word() }
    }

    fn n(&self) -> i64 {
        self.c.num_crossings() as i64
    }

    fn tile(&self, k: i64, j: usize) -> GroupWord {
        let w = self.base.concat(&self.period.pow(k)).concat(&prefix(self.c, j));
        dehn_reduce(&w, self.c.model())
    }

    fn index(&self, p: &LPt) -> i64 {
        p.k * self.n() + p.pos.chord as i64
    }

    fn before(&self, a: &LPt, b: &LPt) -> bool {
        let (ia, ib) = (self.index(a), self.index(b));
        ia < ib || (ia == ib && a.pos.cmp_along(&b.pos) == std::cmp::Ordering::Less)
    }

    /// Periods `k` whose chord `j` is at most `radius` crossings from
    /// global chord index `from`.
    fn periods(&self, j: usize, from: i64, radius: usize) -> impl Iterator<Item = i64> + '_ {
        let n = self.n();
        let r = radius as i64;
        let lo = (from - r - j as i64).div_euclid(n) - 1;
        let hi = (from + r - j as i64).div_euclid(n) + 1;
        (lo..=hi).filter(move |&k| (k * n + j as i64 - from).abs() <= r)
    }

    fn forward(&self, a: &LPt, b: &LPt) -> Path {
        let c = self.c;
        let model = c.model();
        let n = self.n();
        let (ga, gb) = (self.index(a), self.index(b));
        let mut tile = self.tile(a.k, a.pos.chord);
        let mut pieces = Vec::new();
        let mut crossings = Vec::new();
        for gi in ga..=gb {
            let j = gi.rem_euclid(n) as usize;
            let poly = c.chord_polyline(j);
            let mut pts = Vec::new();
            let start = if gi == ga {
                pts.push(c.pos_point(&a.pos));
                a.pos.seg + 1
            } else {
                0
            };
            let stop = if gi == gb { b.pos.seg } else { poly.len() - 1 };
            for v in poly.iter().take(stop + 1).skip(start) {
                pts.push(*v);
            }
            if gi == gb {
                pts.push(c.pos_point(&b.pos));
            }
            pieces.push(Piece { tile: tile.clone(), pts });
            if gi < gb {
                let x = c.crossings()[j];
                crossings.push((x.side, param_f64(x.t)));
                let w = tile.concat(&GroupWord::new(vec![model.letter_of_side(x.side)]));
                tile = dehn_reduce(&w, model);
            }
        }
        Path { pieces, crossings }
    }

    /// The arc of the (embedded) lift from `a` to `b`, in either direction.
    fn arc(&self, a: &LPt, b: &LPt) -> Path {
        if self.before(a, b) {
            return self.forward(a, b);
        }
        let model = self.c.model();
        let mut p = self.forward(b, a);
        p.pieces.reverse();
        for q in &mut p.pieces {
            q.pts.reverse();
        }
        p.crossings.reverse();
        for x in &mut p.crossings {
            *x = (model.pair(x.0), 1.0 - x.1);
        }
        p
    }

    fn span(&self, a: &LPt, b: &LPt) -> usize {
        (self.index(a) - self.index(b)).unsigned_abs() as usize
    }
}

/// Geometry of an accepted polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Shape {
    area: f64,
    vertices: usize,
}

/// Develops the closed loop formed by `arcs` (each starting where the
/// previous one ends) and accepts it when it bounds an immersed polygon with
/// convex corners in the universal cover.
fn develop(arcs: Vec<Path>, c: &CurveDiagram) -> Option<Shape> {
    let model = c.model();
    let m = arcs.len();
    // convex corners: the boundary turns left at each one
    for i in 0..m {
        let a = arcs[i].pieces.last()?;
        let b = &arcs[(i + 1) % m].pieces[0];
        let la = a.pts.len();
        let d_in = geom::sub(a.pts[la - 1], a.pts[la - 2]);
        let d_out = geom::sub(b.pts[1], b.pts[0]);
        if geom::cross(d_in, d_out) <= 0.0 {
            return None;
        }
    }
    // splice the arcs into one cyclic sequence of pieces
    let mut pieces: Vec<Piece> = Vec::new();
    let mut crossings: Vec<(usize, f64)> = Vec::new();
    for arc in arcs {
        let mut it = arc.pieces.into_iter();
        let first = it.next()?;
        match pieces.last_mut() {
            Some(last) => last.pts.extend_from_slice(&first.pts[1..]),
            None => pieces.push(first),
        }
        pieces.extend(it);
        crossings.extend(arc.crossings);
    }
    if pieces.len() > 1 {
        let last = pieces.pop()?;
        let mut pts = last.pts;
        pts.extend_from_slice(&pieces[0].pts[1..]);
        pieces[0].pts = pts;
    } else {
        pieces[0].pts.pop();
    }
    let closed = crossings.is_empty();

    let mut turn = 0.0;
    let mut flat = 0.0;
    let mut glue = 0.0;
    for (i, p) in pieces.iter().enumerate() {
        let v = &p.pts;
        let len = v.len();
        if closed {
            for k in 0..len {
                let d0 = geom::sub(v[k], v[(k + len - 1) % len]);
                let d1 = geom::sub(v[(k + 1) % len], v[k]);
                turn += geom::turn(d0, d1);
                flat += geom::xdy(v[k], v[(k + 1) % len]);
            }
            continue;
        }
        for k in 1..len - 1 {
            turn += geom::turn(geom::sub(v[k], v[k - 1]), geom::sub(v[k + 1], v[k]));
        }
        for k in 0..len - 1 {
            flat += geom::xdy(v[k], v[k + 1]);
        }
        let next = &pieces[(i + 1) % pieces.len()].pts;
        let (side, t) = crossings[i];
        let rot = model.side_rotation(side);
        let d_in = geom::sub(v[len - 1], v[len - 2]);
        let d_out = geom::sub(next[1], next[0]);
        turn += rot + geom::turn(geom::rotate(d_in, rot), d_out);
        glue += model.side_correction(side, t);
    }
    let turning = turn / (2.0 * std::f64::consts::PI);
    let r = turning.round();
    if (turning - r).abs() >= WINDING_TOL || r < 1.0 {
        return None;
    }
    let chi = -model.euler_characteristic();
    let excess = r as i64 - 1;
    if excess % chi != 0 {
        return None;
    }
    let vertices = (excess / chi) as usize;
    let area = flat * model.area_scale() + glue + model.total_area() * vertices as f64;
    if area <= 0.0 || !Boundary::new(&pieces, closed, model).winding_nonnegative(model) {
        return None;
    }
    Some(Shape { area, vertices })
}

/// Boundary segments grouped by tile.
struct Boundary {
    /// Distinct tiles met by the loop.
    tiles: Vec<GroupWord>,
    /// `(tile, position in the loop, start, end)`.
    segs: Vec<(usize, usize, Pt, Pt)>,
}

impl Boundary {
    fn new(pieces: &[Piece], closed: bool, model: &crate::SurfaceModel) -> Self {
        let mut tiles: Vec<GroupWord> = Vec::new();
        let mut segs = Vec::new();
        let mut id = 0;
        for p in pieces {
            let t = match tiles.iter().position(|u| same_tile(u, &p.tile, model)) {
                Some(t) => t,
                None => {
                    tiles.push(p.tile.clone());
                    tiles.len() - 1
                }
            };
            let len = p.pts.len();
            let count = if closed { len } else { len - 1 };
            for k in 0..count {
                segs.push((t, id, p.pts[k], p.pts[(k + 1) % len]));
                id += 1;
            }
        }
        Boundary { tiles, segs }
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        let n = self.segs.len();
        (a + 1) % n == b || (b + 1) % n == a
    }

    /// Crossing parameters along segment `i` of the other segments in its
    /// tile, or `None` if the loop is not in general position there.
    fn cuts(&self, i: usize) -> Option<Vec<f64>> {
        let (ti, _, p, q) = self.segs[i];
        let mut out = Vec::new();
        for (j, &(tj, _, r, s)) in self.segs.iter().enumerate() {
            if tj != ti || j == i || self.adjacent(i, j) {
                continue;
            }
            match geom::seg_hit(p, q, r, s) {
                SegHit::Disjoint => {}
                SegHit::Proper => out.push(geom::seg_params(p, q, r, s).0),
                SegHit::Degenerate => return None,
            }
        }
        Some(out)
    }

    /// Winding number of the loop around `z`, a point of tile `t`: signed
    /// crossings of a ray that leaves through the side of letter `a1` and
    /// keeps crossing that side until it is past every tile of the loop.
    fn winding(&self, t: usize, z: Pt, model: &crate::SurfaceModel) -> i64 {
        let side = model.side_of_letter(1);
        let step = GroupWord::new(vec![1]);
        let exit = model.point(side, RAY_PARAM);
        let entry = model.point(model.pair(side), 1.0 - RAY_PARAM);
        let reach = 2 * self.tiles.iter().map(GroupWord::len).max().unwrap_or(0) + 4;
        let mut tile = self.tiles[t].clone();
        let mut total = self.crossings_in(t, z, exit);
        for _ in 0..reach {
            tile = dehn_reduce(&tile.concat(&step), model);
            if let Some(u) = self.tiles.iter().position(|w| same_tile(w, &tile, model)) {
                total += self.crossings_in(u, entry, exit);
            }
        }
        total
    }

    fn crossings_in(&self, t: usize, a: Pt, b: Pt) -> i64 {
        let d = geom::sub(b, a);
        let mut w = 0;
        for &(u, _, p, q) in &self.segs {
            if u == t && geom::seg_hit(a, b, p, q) == SegHit::Proper {
                w += if geom::cross(d, geom::sub(q, p)) > 0.0 { 1 } else { -1 };
            }
        }
        w
    }

    /// Whether every face of the complement has nonnegative winding number.
    /// The lowest face next to a segment lies on its right.
    fn winding_nonnegative(&self, model: &crate::SurfaceModel) -> bool {
        let mut cuts = Vec::with_capacity(self.segs.len());
        for i in 0..self.segs.len() {
            match self.cuts(i) {
                Some(c) => cuts.push(c),
                None => return false,
            }
        }
        if cuts.iter().all(Vec::is_empty) {
            return true;
        }
        for (i, &(t, _, p, q)) in self.segs.iter().enumerate() {
            let mut ps = cuts[i].clone();
            ps.push(0.0);
            ps.push(1.0);
            ps.sort_by(f64::total_cmp);
            let right = geom::scale(geom::perp(geom::unit(geom::sub(q, p))), -RIGHT_OFFSET);
            for w in ps.windows(2) {
                let z = geom::add(geom::lerp(p, q, 0.5 * (w[0] + w[1])), right);
                if self.winding(t, z, model) < 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn same_tile(a: &GroupWord, b: &GroupWord, model: &crate::SurfaceModel) -> bool {
    a == b || is_trivial(&a.inverse().concat(b), model)
}

fn check_pair(c1: &CurveDiagram, c2: &CurveDiagram) -> Result<Vec<IntersectionPoint>, Error> {
    for c in [c1, c2] {
        if !is_unobstructed(c).is_unobstructed() {
            return Err(Error::Precondition(format!("curve {} is not unobstructed", c.raw_word())));
        }
    }
    if c1.model().genus() != c2.model().genus() {
        return Err(Error::Precondition("curves live on different surfaces".into()));
    }
    let pts = intersections(c1, c2)?;
    let near_vertex = |c: &CurveDiagram, pos: &CurvePos| {
        let poly = c.chord_polyline(pos.chord);
        let p = c.pos_point(pos);
        poly.iter().any(|v| geom::dist(*v, p) < GEOM_TOL)
    };
    if pts.iter().any(|x| near_vertex(c1, &x.first) || near_vertex(c2, &x.second)) {
        return Err(Error::Precondition("an intersection point sits on a corner of a curve".into()));
    }
    Ok(pts)
}

/// A holomorphic strip from `from` to `to`, counted in `d(from)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lune {
    pub from: usize,
    pub to: usize,
    pub area: f64,
    /// Vertex lifts enclosed, counted with multiplicity.
    pub vertices: usize,
    /// Side crossings along the arcs on the first and second curve.
    pub spans: (usize, usize),
}

/// Lunes from generator `from` to generator `to` whose arcs cross at most
/// `radius` sides.  The second component reports whether an accepted lune
/// reaches the edge of the window.
fn lunes_between(
    c1: &CurveDiagram,
    c2: &CurveDiagram,
    pts: &[IntersectionPoint],
    from: usize,
    to: usize,
    radius: usize,
) -> (Vec<Lune>, bool) {
    let model = c1.model();
    let (x, y) = (&pts[from], &pts[to]);
    let id = GroupWord::empty();
    let l1 = Lift::through(c1, y.first.chord, &id);
    let l2 = Lift::through(c2, y.second.chord, &id);
    let y1 = LPt { k: 0, pos: y.first };
    let y2 = LPt { k: 0, pos: y.second };
    let mut out = Vec::new();
    let mut edge = false;
    let tiles2: Vec<(i64, GroupWord)> = l2
        .periods(x.second.chord, l2.index(&y2), radius)
        .map(|l| (l, l2.tile(l, x.second.chord)))
        .collect();
    for k in l1.periods(x.first.chord, l1.index(&y1), radius) {
        let ta = l1.tile(k, x.first.chord);
        for (l, tb) in &tiles2 {
            if from == to && k == 0 && *l == 0 {
                continue;
            }
            if !is_trivial(&ta.inverse().concat(tb), model) {
                continue;
            }
            let x1 = LPt { k, pos: x.first };
            let x2 = LPt { k: *l, pos: x.second };
            let arcs = vec![l1.arc(&y1, &x1), l2.arc(&x2, &y2)];
            if let Some(s) = develop(arcs, c1) {
                let spans = (l1.span(&y1, &x1), l2.span(&x2, &y2));
                edge |= spans.0 >= radius || spans.1 >= radius;
                out.push(Lune { from, to, area: s.area, vertices: s.vertices, spans });
            }
        }
    }
    (out, edge)
}

fn all_lunes(c1: &CurveDiagram, c2: &CurveDiagram, pts: &[IntersectionPoint], radius: usize) -> (Vec<Lune>, bool) {
    let mut out = Vec::new();
    let mut edge = false;
    for from in 0..pts.len() {
        for to in 0..pts.len() {
            let (l, e) = lunes_between(c1, c2, pts, from, to, radius);
            out.extend(l);
            edge |= e;
        }
    }
    (out, edge)
}

/// Lunes from `from` to `to` (indices into `intersections(c1, c2)`) within
/// the given radius.
pub fn find_lunes(c1: &CurveDiagram, c2: &CurveDiagram, from: usize, to: usize, radius: usize) -> Result<Vec<Lune>, Error> {
    let pts = check_pair(c1, c2)?;
    if from >= pts.len() || to >= pts.len() {
        return Err(Error::OutOfRange(format!("generator {} or {} of {}", from, to, pts.len())));
    }
    Ok(lunes_between(c1, c2, &pts, from, to, radius).0)
}

/// Default starting radius: both crossing words plus slack.
pub fn default_radius(c1: &CurveDiagram, c2: &CurveDiagram) -> usize {
    c1.num_crossings() + c2.num_crossings() + 4
}

/// Default starting radius for triangles: all three crossing words plus
/// slack.
pub fn product_radius(c0: &CurveDiagram, c1: &CurveDiagram, c2: &CurveDiagram) -> usize {
    c0.num_crossings() + c1.num_crossings() + c2.num_crossings() + 4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub point: IntersectionPoint,
    pub degree: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloerComplex {
    pub generators: Vec<Generator>,
    /// `differential[i][j]` is the coefficient of generator `j` in `d` of
    /// generator `i`.
    pub differential: Vec<Vec<Novikov>>,
    pub lunes: Vec<Lune>,
    /// Radius at which the count saturated.
    pub radius: usize,
}

/// Builds the complex, doubling the radius from `radius` while some lune
/// reaches the edge of the window.
pub fn build_complex(c1: &CurveDiagram, c2: &CurveDiagram, radius: usize) -> Result<FloerComplex, Error> {
    let pts = check_pair(c1, c2)?;
    let n = pts.len();
    let mut r = radius.max(1);
    let lunes = loop {
        let (lunes, edge) = all_lunes(c1, c2, &pts, r);
        if !edge {
            break lunes;
        }
        if r >= MAX_RADIUS {
            return Err(Error::WindowExhausted(r));
        }
        r = (2 * r).min(MAX_RADIUS);
    };
    let mut differential = vec![vec![Novikov::zero(); n]; n];
    for l in &lunes {
        differential[l.from][l.to].toggle(l.area);
    }
    let generators = pts.into_iter().map(|p| Generator { point: p, degree: p.degree }).collect();
    Ok(FloerComplex { generators, differential, lunes, radius: r })
}

fn compose(a: &[Vec<Novikov>], b: &[Vec<Novikov>]) -> Vec<Vec<Novikov>> {
    let (n, m) = (a.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![Novikov::zero(); m]; n];
    for i in 0..n {
        for (j, row) in b.iter().enumerate() {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                if !row[k].is_zero() {
                    let p = a[i][j].mul(&row[k]);
                    out[i][k].add_assign(&p);
                }
            }
        }
    }
    out
}

/// Rank over the Novikov field by fraction-free elimination: entries stay
/// finite sums of powers of `T`.
fn rank_novikov(rows: &[Vec<Novikov>]) -> usize {
    let mut rows = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                let mut v = x.mul(&pivot[col]);
                v.add_assign(&y.mul(&f));
                *x = v;
            }
        }
        rank += 1;
    }
    rank
}

fn rank_z2(rows: Vec<Vec<bool>>) -> usize {
    let mut rows = rows;
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl FloerComplex {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn d_squared(&self) -> Vec<Vec<Novikov>> {
        compose(&self.differential, &self.differential)
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.d_squared().iter().flatten().all(Novikov::is_zero)
    }

    /// Rank of the differential over the Novikov field.
    pub fn differential_rank(&self) -> usize {
        rank_novikov(&self.differential)
    }

    /// Rank of the differential over Z/2 at `T = 1`.
    pub fn differential_rank_at_one(&self) -> usize {
        rank_z2(self.differential.iter().map(|r| r.iter().map(Novikov::at_one).collect()).collect())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("complex serializes")
    }
}

fn require_d_squared_zero(fc: &FloerComplex) -> Result<(), Error> {
    if fc.d_squared_is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition("the differential does not square to zero".into()))
    }
}

/// Dimension of Floer homology over the Novikov field with Z/2
/// coefficients.
pub fn homology_rank(fc: &FloerComplex) -> Result<usize, Error> {
    require_d_squared_zero(fc)?;
    Ok(fc.len() - 2 * fc.differential_rank())
}

/// Dimension over Z/2 of the homology of the complex specialized at
/// `T = 1`.  Two lunes of different area between the same generators cancel
/// here but not over the Novikov field, so this can exceed
/// [`homology_rank`].
pub fn homology_rank_at_one(fc: &FloerComplex) -> Result<usize, Error> {
    require_d_squared_zero(fc)?;
    Ok(fc.len() - 2 * fc.differential_rank_at_one())
}

/// Holomorphic triangle with inputs `x01` in CF(c0, c1) and `x12` in
/// CF(c1, c2) and output `x02` in CF(c0, c2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub x01: usize,
    pub x12: usize,
    pub x02: usize,
    pub area: f64,
    pub vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Product {
    /// `table[i][j]` lists, for every generator of CF(c0, c2), its
    /// coefficient in the product of `x12_j` and `x01_i`.
    pub table: Vec<Vec<Vec<Novikov>>>,
    pub triangles: Vec<Triangle>,
    pub radius: usize,
}

fn triangles_within(
    c: [&CurveDiagram; 3],
    p01: &[IntersectionPoint],
    p12: &[IntersectionPoint],
    p02: &[IntersectionPoint],
    radius: usize,
) -> (Vec<Triangle>, bool) {
    let model = c[0].model();
    let mut out = Vec::new();
    let mut edge = false;
    let id = GroupWord::empty();
    for (i0, x0) in p02.iter().enumerate() {
        let l0 = Lift::through(c[0], x0.first.chord, &id);
        let l2 = Lift::through(c[2], x0.second.chord, &id);
        let a0 = LPt { k: 0, pos: x0.first };
        let b0 = LPt { k: 0, pos: x0.second };
        for (i1, x1) in p01.iter().enumerate() {
            for k in l0.periods(x1.first.chord, l0.index(&a0), radius) {
                let t1 = l0.tile(k, x1.first.chord);
                let l1 = Lift::through(c[1], x1.second.chord, &t1);
                let a1 = LPt { k, pos: x1.first };
                let b1 = LPt { k: 0, pos: x1.second };
                for (i2, x2) in p12.iter().enumerate() {
                    let tiles1: Vec<(i64, GroupWord)> = l1
                        .periods(x2.first.chord, l1.index(&b1), radius)
                        .map(|m| (m, l1.tile(m, x2.first.chord)))
                        .collect();
                    for l in l2.periods(x2.second.chord, l2.index(&b0), radius) {
                        let t2 = l2.tile(l, x2.second.chord);
                        for (m, tm) in &tiles1 {
                            if !is_trivial(&t2.inverse().concat(tm), model) {
                                continue;
                            }
                            let a2 = LPt { k: *m, pos: x2.first };
                            let b2 = LPt { k: l, pos: x2.second };
                            let arcs = vec![l0.arc(&a0, &a1), l1.arc(&b1, &a2), l2.arc(&b2, &b0)];
                            if let Some(s) = develop(arcs, c[0]) {
                                let spans = [l0.span(&a0, &a1), l1.span(&b1, &a2), l2.span(&b2, &b0)];
                                edge |= spans.iter().any(|&s| s >= radius);
                                out.push(Triangle { x01: i1, x12: i2, x02: i0, area: s.area, vertices: s.vertices });
                            }
                        }
                    }
                }
            }
        }
    }
    (out, edge)
}

/// The product `mu2(x12, x01)` on generators, counting triangles whose
/// boundary runs along `c0`, `c1`, `c2` counterclockwise.
pub fn mu2(c0: &CurveDiagram, c1: &CurveDiagram, c2: &CurveDiagram, radius: usize) -> Result<Product, Error> {
    let p01 = check_pair(c0, c1)?;
    let p12 = check_pair(c1, c2)?;
    let p02 = check_pair(c0, c2)?;
    let mut r = radius.max(1);
    let triangles = loop {
        let (t, edge) = triangles_within([c0, c1, c2], &p01, &p12, &p02, r);
        if !edge {
            break t;
        }
        if r >= MAX_RADIUS {
            return Err(Error::WindowExhausted(r));
        }
        r = (2 * r).min(MAX_RADIUS);
    };
    let mut table = vec![vec![vec![Novikov::zero(); p02.len()]; p12.len()]; p01.len()];
    for t in &triangles {
        table[t.x01][t.x12][t.x02].toggle(t.area);
    }
    Ok(Product { table, triangles, radius: r })
}

/// Sum over the three terms of the Leibniz rule for `mu2`, one vector over
/// CF(c0, c2) per input pair; zero everywhere when the rule holds.
pub fn leibniz_defect(
    d01: &FloerComplex,
    d12: &FloerComplex,
    d02: &FloerComplex,
    prod: &Product,
) -> Vec<Vec<Vec<Novikov>>> {
    let (n01, n12, n02) = (d01.len(), d12.len(), d02.len());
    let mut out = vec![vec![vec![Novikov::zero(); n02]; n12]; n01];
    for i in 0..n01 {
        for j in 0..n12 {
            let acc = &mut out[i][j];
            for c in 0..n02 {
                for e in 0..n02 {
                    acc[e].add_assign(&prod.table[i][j][c].mul(&d02.differential[c][e]));
                }
            }
            for jj in 0..n12 {
                if d12.differential[j][jj].is_zero() {
                    continue;
                }
                for e in 0..n02 {
                    acc[e].add_assign(&d12.differential[j][jj].mul(&prod.table[i][jj][e]));
                }
            }
            for ii in 0..n01 {
                if d01.differential[i][ii].is_zero() {
                    continue;
                }
                for e in 0..n02 {
                    acc[e].add_assign(&d01.differential[i][ii].mul(&prod.table[ii][j][e]));
                }
            }
        }
    }
    out
}

/// A crossing of two lifts among those developed in a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedCrossing {
    /// Indices of the two curves.
    pub curves: (usize, usize),
    /// Index into `intersections` of the two curves.
    pub point: usize,
    /// Periods on the base lifts of the two curves.
    pub periods: (i64, i64),
    /// Tile containing the crossing, Dehn-reduced.
    pub tile: GroupWord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub radius: usize,
    pub crossings: Vec<LiftedCrossing>,
}

/// Crossings between the base lifts (chord 0 of period 0 in the identity
/// tile) of the given curves, in tiles whose reduced word has length at
/// most `radius`.
pub fn develop_window(curves: &[CurveDiagram], radius: usize) -> Result<Window, Error> {
    let id = GroupWord::empty();
    let mut out = Vec::new();
    for a in 0..curves.len() {
        for b in a + 1..curves.len() {
            let (ca, cb) = (&curves[a], &curves[b]);
            let pts = check_pair(ca, cb)?;
            let la = Lift::through(ca, 0, &id);
            let lb = Lift::through(cb, 0, &id);
            let model = ca.model();
            let reach = 2 * radius + ca.num_crossings() + cb.num_crossings();
            for (i, x) in pts.iter().enumerate() {
                let tb: Vec<(i64, GroupWord)> = lb
                    .periods(x.second.chord, 0, reach)
                    .map(|l| (l, lb.tile(l, x.second.chord)))
                    .filter(|(_, t)| t.len() <= radius)
                    .collect();
                for k in la.periods(x.first.chord, 0, reach) {
                    let ta = la.tile(k, x.first.chord);
                    if ta.len() > radius {
                        continue;
                    }
                    for (l, t) in &tb {
                        if is_trivial(&ta.inverse().concat(t), model) {
                            out.push(LiftedCrossing { curves: (a, b), point: i, periods: (k, *l), tile: ta.clone() });
                        }
                    }
                }
            }
        }
    }
    Ok(Window { radius, crossings: out })
}

/// Class in the cobordism group of an unobstructed curve.
pub fn k0_class(c: &CurveDiagram) -> Result<CobordismClass, Error> {
    let u = is_unobstructed(c);
    if !u.is_unobstructed() {
        return Err(Error::Precondition(format!("curve {} is not unobstructed: {:?}", c.raw_word(), u)));
    }
    class_of(c)
}

//! Word and conjugacy problems in the surface group via Dehn's algorithm.
//!
//! Every letter occurs exactly once in the relator `r = [a1,b1]...[ag,bg]`,
//! so a subword of a cyclic conjugate of `r^{+-1}` is determined by its first
//! letter and its length.  Pieces have length one against a relator of length
//! 4g >= 8, which is what makes greedy replacement decide triviality.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::surface_model::{letter_name, Letter, SurfaceModel};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord { letters }
    }

    pub fn empty() -> Self {
        GroupWord { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        GroupWord { letters: v }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.letters);
        }
        GroupWord { letters: v }
    }

    /// Parses `a1b1A1B1`-style strings; uppercase is the inverse.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut letters = Vec::new();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (is_a, sign) = match c {
                'a' => (true, 1),
                'b' => (false, 1),
                'A' => (true, -1),
                'B' => (false, -1),
                _ => return Err(Error::Parse(format!("unexpected character {c:?} in word {s:?}"))),
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::Parse(format!("missing handle index in word {s:?}")));
            }
            let h: i32 = chars[start..i].iter().collect::<String>().parse().map_err(|_| Error::Parse(s.into()))?;
            if h < 1 {
                return Err(Error::Parse(format!("handle index must be positive in {s:?}")));
            }
            let gen = if is_a { 2 * h - 1 } else { 2 * h };
            letters.push(sign * gen);
        }
        Ok(GroupWord { letters })
    }

    /// Largest handle index used.
    pub fn max_handle(&self) -> usize {
        self.letters.iter().map(|l| (l.unsigned_abs() as usize).div_ceil(2)).max().unwrap_or(0)
    }

    pub fn abelianization(&self, genus: usize) -> Vec<i64> {
        let mut v = vec![0i64; 2 * genus];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", letter_name(l))?;
        }
        Ok(())
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GroupWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Free reduction of a linear word.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Positions of each letter in `r` and `r^-1`, for O(1) alignment.
struct RelatorIndex {
    rels: [Vec<Letter>; 2],
    pos: [Vec<usize>; 2],
    len: usize,
}

impl RelatorIndex {
    fn new(model: &SurfaceModel) -> Self {
        let r = model.relator();
        let rinv: Vec<Letter> = r.iter().rev().map(|l| -l).collect();
        let dim = 2 * model.genus() + 1;
        let mut pos = [vec![usize::MAX; 2 * dim], vec![usize::MAX; 2 * dim]];
        let key = |l: Letter| (l + dim as i32) as usize;
        for (k, rel) in [&r, &rinv].iter().enumerate() {
            for (i, &l) in rel.iter().enumerate() {
                pos[k][key(l)] = i;
            }
        }
        RelatorIndex { len: r.len(), rels: [r, rinv], pos }
    }

    fn key(&self, l: Letter) -> usize {
        (l + (self.len / 2 + 1) as i32) as usize
    }

    /// Longest match of `w[i..]` (read cyclically when `cyclic`) against a
    /// cyclic conjugate of `r^{+-1}`; returns (length, which, offset).
    fn longest_at(&self, w: &[Letter], i: usize, cyclic: bool) -> (usize, usize, usize) {
        let n = w.len();
        let cap = if cyclic { n.min(self.len) } else { (n - i).min(self.len) };
        let mut best = (0, 0, 0);
        for k in 0..2 {
            let p = self.pos[k][self.key(w[i])];
            if p == usize::MAX {
                continue;
            }
            let mut l = 0;
            while l < cap && w[(i + l) % n] == self.rels[k][(p + l) % self.len] {
                l += 1;
            }
            if l > best.0 {
                best = (l, k, p);
            }
        }
        best
    }

    /// Inverse of the complement of a matched piece of length `l` starting at
    /// offset `p` in relator `k`: the shorter equal word.
    fn complement_inverse(&self, k: usize, p: usize, l: usize) -> Vec<Letter> {
        let rel = &self.rels[k];
        let rest: Vec<Letter> = (l..self.len).map(|j| rel[(p + j) % self.len]).collect();
        rest.iter().rev().map(|x| -x).collect()
    }
}

/// Greedy Dehn reduction: free-reduce, replace the longest piece longer than
/// half a relator by its shorter complement, repeat.
pub fn dehn_reduce(w: &GroupWord, model: &SurfaceModel) -> GroupWord {
    let idx = RelatorIndex::new(model);
    let half = idx.len / 2;
    let mut cur = free_reduce(&w.letters);
    loop {
        let mut best = (0usize, 0usize, 0usize, 0usize);
        for i in 0..cur.len() {
            let (l, k, p) = idx.longest_at(&cur, i, false);
            if l > best.0 {
                best = (l, i, k, p);
            }
        }
        let (l, i, k, p) = best;
        if l <= half {
            return GroupWord { letters: cur };
        }
        let mut next = cur[..i].to_vec();
        next.extend(idx.complement_inverse(k, p, l));
        next.extend_from_slice(&cur[i + l..]);
        cur = free_reduce(&next);
    }
}

fn cyclic_free_reduce(mut v: Vec<Letter>) -> Vec<Letter> {
    v = free_reduce(&v);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    v
}

/// Cyclic Dehn reduction: the result is conjugate to `w`, cyclically freely
/// reduced, and has no cyclic subword longer than half a relator conjugate.
pub fn cyclic_reduce(w: &GroupWord, model: &SurfaceModel) -> GroupWord {
    let idx = RelatorIndex::new(model);
    let half = idx.len / 2;
    let mut cur = cyclic_free_reduce(dehn_reduce(w, model).letters);
    loop {
        if cur.is_empty() {
            return GroupWord::empty();
        }
        let mut best = (0usize, 0usize, 0usize, 0usize);
        for i in 0..cur.len() {
            let (l, k, p) = idx.longest_at(&cur, i, true);
            if l > best.0 {
                best = (l, i, k, p);
            }
        }
        let (l, i, k, p) = best;
        if l <= half {
            return GroupWord { letters: cur };
        }
        let n = cur.len();
        let rotated: Vec<Letter> = (0..n).map(|j| cur[(i + j) % n]).collect();
        let mut next = idx.complement_inverse(k, p, l);
        next.extend_from_slice(&rotated[l..]);
        cur = cyclic_free_reduce(next);
    }
}

pub fn is_trivial(w: &GroupWord, model: &SurfaceModel) -> bool {
    dehn_reduce(w, model).is_empty()
}

fn min_rotation(v: &[Letter]) -> Vec<Letter> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| v[(i + j) % n]).collect::<Vec<_>>()).min().unwrap_or_default()
}

/// All cyclic words reachable from `v` by swapping a cyclic subword that is
/// exactly half a relator conjugate for the other half (length preserving),
/// in canonical rotation.  Capped to keep the search finite.
fn half_swap_orbit(v: &[Letter], idx: &RelatorIndex, cap: usize) -> HashSet<Vec<Letter>> {
    let half = idx.len / 2;
    let start = min_rotation(v);
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let n = cur.len();
        if n < half {
            continue;
        }
        for i in 0..n {
            let (l, k, p) = idx.longest_at(&cur, i, true);
            if l < half {
                continue;
            }
            // every window of exactly `half` letters inside the match
            for off in 0..=(l - half) {
                let rotated: Vec<Letter> = (0..n).map(|j| cur[(i + off + j) % n]).collect();
                let mut next = idx.complement_inverse(k, (p + off) % idx.len, half);
                next.extend_from_slice(&rotated[half..]);
                let next = cyclic_free_reduce(next);
                if next.len() != n {
                    continue;
                }
                let canon = min_rotation(&next);
                if seen.insert(canon.clone()) {
                    if seen.len() >= cap {
                        return seen;
                    }
                    queue.push_back(canon);
                }
            }
        }
    }
    seen
}

/// Conjugacy test: cyclic reduction of both words, then comparison of the
/// rotation classes reachable by half-relator swaps.
pub fn conjugate_eq(u: &GroupWord, v: &GroupWord, model: &SurfaceModel) -> bool {
    let g = model.genus();
    if u.max_handle() > g || v.max_handle() > g {
        return false;
    }
    if u.abelianization(g) != v.abelianization(g) {
        return false;
    }
    let cu = cyclic_reduce(u, model);
    let cv = cyclic_reduce(v, model);
    if cu.len() != cv.len() {
        return false;
    }
    if cu.is_empty() {
        return true;
    }
    let idx = RelatorIndex::new(model);
    let target = min_rotation(&cv.letters);
    half_swap_orbit(&cu.letters, &idx, 20_000).contains(&target)
}

/// Length of the Dehn-reduced form of `w^k`.
pub fn reduced_power_length(w: &GroupWord, k: i64, model: &SurfaceModel) -> Result<usize, Error> {
    if is_trivial(w, model) {
        return Err(Error::TrivialWord);
    }
    Ok(dehn_reduce(&w.pow(k), model).len())
}

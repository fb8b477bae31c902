//! Torus slopes and the Farey graph.
//!
//! A slope `p/q` is an unoriented essential simple closed curve on the torus,
//! so `(p, q)` and `(-p, -q)` name the same vertex. Two slopes are joined by
//! an edge when the curves meet exactly once, i.e. `|p1 q2 - p2 q1| = 1`.
//!
//! Vertices of the Farey graph can have infinite degree (`0/1` is adjacent to
//! every `±1/q`), so searches run on the subgraph of slopes whose coordinates
//! are bounded by a cap. Distances 0, 1 and 2 are decided in closed form and
//! hold for the full graph; anything longer is exact only for the capped graph.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced, sign-normalized slope. `q >= 1`, or `(p, q) = (1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const ZERO: Slope = Slope { p: 0, q: 1 };
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Slope> {
        canonical(p, q)
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    /// Surface framing of the curve on a standardly embedded torus.
    pub fn framing(self) -> i128 {
        self.p as i128 * self.q as i128
    }

    /// Mirror image `p -> -p`. Fixes `0/1` and `1/0`.
    pub fn reflect(self) -> Slope {
        if self.q == 0 {
            self
        } else {
            Slope { p: -self.p, q: self.q }
        }
    }

    /// Largest absolute coordinate.
    pub fn complexity(self) -> u64 {
        self.p.unsigned_abs().max(self.q.unsigned_abs())
    }

    pub fn is_root(self) -> bool {
        self == Slope::ZERO || self == Slope::INFINITY
    }

    /// Sort key used for every enumeration: nonnegative numerators first,
    /// then by `|p|`, then by `q`.
    pub(crate) fn fan_key(self) -> (bool, u64, i64) {
        (self.p < 0, self.p.unsigned_abs(), self.q)
    }

    pub(crate) fn from_wide(p: i128, q: i128) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidSlope { p, q });
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        let p = i64::try_from(p).map_err(|_| Error::Overflow("slope numerator"))?;
        let q = i64::try_from(q).map_err(|_| Error::Overflow("slope denominator"))?;
        Ok(Slope { p, q })
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let bad = || Error::SlopeSyntax(s.to_string());
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 && p != 1 {
            return Err(bad());
        }
        canonical(p, q)
    }
}

/// Reduced representative of the slope `p/q`; `(p, q)` and `(-p, -q)` agree.
pub fn canonical(p: i64, q: i64) -> Result<Slope> {
    Slope::from_wide(p as i128, q as i128)
}

/// `p_a q_b - p_b q_a`. Adjacent in the Farey graph iff the absolute value is 1.
pub fn farey_det(a: Slope, b: Slope) -> i128 {
    a.p as i128 * b.q as i128 - b.p as i128 * a.q as i128
}

pub fn is_dual(a: Slope, b: Slope) -> bool {
    farey_det(a, b).abs() == 1
}

pub fn is_even_vertex(s: Slope) -> bool {
    s.p % 2 == 0 || s.q % 2 == 0
}

/// The two slopes whose mediant is `s`, for `s` in the nonnegative fan.
///
/// The left parent `a/b` solves `p b - q a = 1` with `1 <= b <= q`; the right
/// parent is `s - (a, b)`. Output is ordered by denominator, then numerator,
/// except the base triangle `1/1 -> (0/1, 1/0)`.
pub fn farey_parents(s: Slope) -> Result<(Slope, Slope)> {
    if s.p < 0 {
        return Err(Error::OutOfDomain {
            slope: s.to_string(),
            operation: "farey_parents",
        });
    }
    if s.is_root() {
        return Err(Error::NoParents(s.to_string()));
    }
    if s == (Slope { p: 1, q: 1 }) {
        return Ok((Slope::ZERO, Slope::INFINITY));
    }
    let (p, q) = (s.p as i128, s.q as i128);
    // b = p^{-1} mod q, taken in [1, q]
    let ext = p.extended_gcd(&q);
    let mut b = ext.x.mod_floor(&q);
    if b == 0 {
        b = q;
    }
    let a = (p * b - 1) / q;
    let left = Slope::from_wide(a, b)?;
    let right = Slope::from_wide(p - a, q - b)?;
    let (x, y) = if (left.q, left.p) <= (right.q, right.p) {
        (left, right)
    } else {
        (right, left)
    };
    Ok((x, y))
}

/// One solution `x` of `farey_det(s, x) = 1`.
fn unit_partner(s: Slope) -> (i128, i128) {
    let (p, q) = (s.p as i128, s.q as i128);
    let ext = p.extended_gcd(&q);
    // p u + q v = g with g = ±1, so p (u g) - q (-v g) = 1
    let g = ext.gcd;
    (-ext.y * g, ext.x * g)
}

/// Range of integers `k` with `|base + k step| <= cap`.
fn bounded_multiples(base: i128, step: i128, cap: i128) -> Option<(i128, i128)> {
    if step == 0 {
        return if base.abs() <= cap {
            None
        } else {
            Some((1, 0))
        };
    }
    let (lo, hi) = if step > 0 {
        (Integer::div_ceil(&(-cap - base), &step), Integer::div_floor(&(cap - base), &step))
    } else {
        (Integer::div_ceil(&(cap - base), &step), Integer::div_floor(&(-cap - base), &step))
    };
    Some((lo, hi))
}

/// All slopes adjacent to `s` with `|p| <= cap` and `q <= cap`, in fan order.
///
/// The neighbours of `s` are exactly `±(x0 + k s)` for one fixed `x0` with
/// `farey_det(s, x0) = 1`; the sign is absorbed by canonicalization.
pub fn neighbors(s: Slope, cap: u64) -> Vec<Slope> {
    let cap = cap as i128;
    let (x0p, x0q) = unit_partner(s);
    let mut range = (i128::MIN, i128::MAX);
    for (base, step) in [(x0p, s.p as i128), (x0q, s.q as i128)] {
        if let Some((lo, hi)) = bounded_multiples(base, step, cap) {
            range = (range.0.max(lo), range.1.min(hi));
        }
    }
    let mut out = Vec::new();
    if range.0 <= range.1 {
        for k in range.0..=range.1 {
            let x = Slope::from_wide(x0p + k * s.p as i128, x0q + k * s.q as i128)
                .expect("unimodular partner is a valid slope");
            out.push(x);
        }
    }
    out.sort_by_key(|x| x.fan_key());
    out.dedup();
    out
}

/// Every slope adjacent to both `a` and `b`, found by solving the two
/// unimodular systems `farey_det(x, a) = 1, farey_det(x, b) = ±1`.
pub fn common_neighbors(a: Slope, b: Slope) -> Result<Vec<Slope>> {
    let d = farey_det(a, b);
    if d == 0 {
        return Err(Error::Degenerate(format!(
            "common_neighbors of a slope with itself ({a})"
        )));
    }
    let mut out = Vec::new();
    for e2 in [1i128, -1] {
        let e1 = 1i128;
        let np = a.p as i128 * e2 - b.p as i128 * e1;
        let nq = a.q as i128 * e2 - b.q as i128 * e1;
        if np % d == 0 && nq % d == 0 {
            out.push(Slope::from_wide(np / d, nq / d)?);
        }
    }
    out.sort_by_key(|x| x.fan_key());
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Farey,
    EvenFarey,
}

/// A walk in the Farey graph (or in its even subgraph).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopePath {
    pub vertices: Vec<Slope>,
    pub kind: PathKind,
}

impl SlopePath {
    pub fn new(vertices: Vec<Slope>, kind: PathKind) -> Result<SlopePath> {
        let path = SlopePath { vertices, kind };
        match path.violations().into_iter().next() {
            None => Ok(path),
            Some(v) => Err(Error::InvalidPath(v)),
        }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Option<Slope> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<Slope> {
        self.vertices.last().copied()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push("path has no vertices".to_string());
        }
        for (i, w) in self.vertices.windows(2).enumerate() {
            if w[0] == w[1] {
                out.push(format!("step {}: repeated vertex {}", i + 1, w[0]));
            } else if !is_dual(w[0], w[1]) {
                out.push(format!(
                    "step {}: {} and {} are not dual (det {})",
                    i + 1,
                    w[0],
                    w[1],
                    farey_det(w[0], w[1])
                ));
            }
        }
        if self.kind == PathKind::EvenFarey {
            for (i, s) in self.vertices.iter().enumerate() {
                if !is_even_vertex(*s) {
                    out.push(format!("vertex {i}: {s} is odd"));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn reversed(&self) -> SlopePath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        SlopePath {
            vertices,
            kind: self.kind,
        }
    }
}

impl fmt::Display for SlopePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Holds in the full graph.
    Certified,
    /// Shortest in the capped subgraph; an upper bound for the full graph.
    WithinCap,
    /// Any valid path, not necessarily shortest.
    UpperBound,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Certified => "certified",
            Exactness::WithinCap => "within_cap",
            Exactness::UpperBound => "upper_bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geodesic {
    pub distance: usize,
    pub path: SlopePath,
    pub exactness: Exactness,
}

/// Default search cap for a set of endpoints: `8 max(|p|, q, 4)`.
pub fn default_cap(endpoints: &[Slope]) -> u64 {
    8 * endpoints
        .iter()
        .map(|s| s.complexity())
        .fold(4, u64::max)
}

struct Side {
    seen: HashMap<Slope, (Option<Slope>, usize)>,
    frontier: Vec<Slope>,
}

impl Side {
    fn rooted_at(s: Slope) -> Side {
        let mut seen = HashMap::new();
        seen.insert(s, (None, 0));
        Side {
            seen,
            frontier: vec![s],
        }
    }

    fn walk_to_root(&self, mut v: Slope) -> Vec<Slope> {
        let mut out = vec![v];
        while let Some((Some(parent), _)) = self.seen.get(&v) {
            v = *parent;
            out.push(v);
        }
        out
    }
}

/// Layered bidirectional BFS in the capped subgraph of admitted vertices.
///
/// The smaller frontier is expanded one full layer at a time; the first
/// shortest meeting found in a layer wins, so the result is deterministic.
pub(crate) fn bidirectional_search(
    a: Slope,
    b: Slope,
    cap: u64,
    admit: impl Fn(Slope) -> bool,
) -> Option<Vec<Slope>> {
    if a == b {
        return Some(vec![a]);
    }
    let mut fwd = Side::rooted_at(a);
    let mut bwd = Side::rooted_at(b);
    loop {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            return None;
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut best: Option<(usize, Slope)> = None;
        for u in std::mem::take(&mut this.frontier) {
            let du = this.seen[&u].1;
            for v in neighbors(u, cap) {
                if !admit(v) || this.seen.contains_key(&v) {
                    continue;
                }
                this.seen.insert(v, (Some(u), du + 1));
                if let Some(&(_, dv)) = other.seen.get(&v) {
                    let total = du + 1 + dv;
                    if best.is_none_or(|(t, _)| total < t) {
                        best = Some((total, v));
                    }
                }
                next.push(v);
            }
        }
        if let Some((_, meet)) = best {
            let mut path = fwd.walk_to_root(meet);
            path.reverse();
            path.extend(bwd.walk_to_root(meet).into_iter().skip(1));
            return Some(path);
        }
        this.frontier = next;
    }
}

/// Drop closed sub-walks so that every vertex appears once.
pub(crate) fn remove_loops(walk: Vec<Slope>) -> Vec<Slope> {
    let mut out: Vec<Slope> = Vec::with_capacity(walk.len());
    let mut index: HashMap<Slope, usize> = HashMap::new();
    for v in walk {
        if let Some(&i) = index.get(&v) {
            for dropped in out.drain(i + 1..) {
                index.remove(&dropped);
            }
        } else {
            index.insert(v, out.len());
            out.push(v);
        }
    }
    out
}

/// Join two walks that both end at `0/1` into one walk from the first start
/// to the second start.
pub(crate) fn join_at_zero(a_to_zero: Vec<Slope>, b_to_zero: Vec<Slope>) -> Vec<Slope> {
    let mut walk = a_to_zero;
    walk.extend(b_to_zero.into_iter().rev().skip(1));
    remove_loops(walk)
}

/// Path from `s` to `0/1` that always steps to the older Farey parent.
pub(crate) fn farey_trace(s: Slope) -> Vec<Slope> {
    if s.p < 0 {
        return farey_trace(s.reflect()).into_iter().map(Slope::reflect).collect();
    }
    let mut out = vec![s];
    let mut cur = s;
    while !cur.is_root() {
        let (x, y) = farey_parents(cur).expect("nonnegative non-root slope has parents");
        cur = if x.p + x.q <= y.p + y.q { x } else { y };
        out.push(cur);
    }
    if cur == Slope::INFINITY {
        out.push(Slope::ZERO);
    }
    out
}

pub(crate) fn search_geodesic(
    a: Slope,
    b: Slope,
    cap: u64,
    kind: PathKind,
    fallback: impl Fn(Slope, Slope) -> Vec<Slope>,
) -> Result<Geodesic> {
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    let admit = |s: Slope| kind == PathKind::Farey || is_even_vertex(s);
    let certified = |vertices: Vec<Slope>| Geodesic {
        distance: vertices.len() - 1,
        path: SlopePath { vertices, kind },
        exactness: Exactness::Certified,
    };
    if a == b {
        return Ok(certified(vec![a]));
    }
    if is_dual(a, b) {
        return Ok(certified(vec![a, b]));
    }
    if let Some(mid) = common_neighbors(a, b)?.into_iter().find(|&x| admit(x)) {
        return Ok(certified(vec![a, mid, b]));
    }
    let found = if a.complexity() <= cap && b.complexity() <= cap {
        bidirectional_search(a, b, cap, admit)
    } else {
        None
    };
    match found {
        Some(vertices) => Ok(Geodesic {
            distance: vertices.len() - 1,
            path: SlopePath { vertices, kind },
            exactness: Exactness::WithinCap,
        }),
        None => {
            let vertices = fallback(a, b);
            Err(Error::CapExhausted {
                cap,
                upper_bound: vertices.len() - 1,
                path: SlopePath { vertices, kind },
            })
        }
    }
}

/// Distance between two slopes in the Farey graph restricted to `cap`.
pub fn farey_distance(a: Slope, b: Slope, cap: u64) -> Result<Geodesic> {
    search_geodesic(a, b, cap, PathKind::Farey, |a, b| {
        join_at_zero(farey_trace(a), farey_trace(b))
    })
}

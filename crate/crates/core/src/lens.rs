//! Lens spaces and the spine-embedding upper bounds.
//!
//! A lens space `L(p, q)` has a genus-1 Heegaard diagram with a meridian
//! `0/1` on one side and a `p/q` curve on the other. A path in the Farey
//! graph from `0/1` to `p/q` passing through `1/0` gives an embedding of
//! `L(p, q)` almost in the spine of a trisection of a connect sum of `n`
//! sphere bundles, with `n` one less than the path length. When every vertex
//! is even, all the summands are `S2xS2`.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evenfarey::even_distance;
use crate::farey::{
    default_cap, farey_distance, is_even_vertex, Exactness, Geodesic, Slope, SlopePath,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    /// The slope `p/q` glued to the meridian.
    pub fn slope(self) -> Slope {
        Slope::new(self.p, self.q).expect("lens parameters are coprime")
    }

    /// `{q, -q, q^-1, -q^-1} mod p`, in that order, without repeats.
    pub fn equivalent_reps(self) -> Vec<LensSpace> {
        let inv = self
            .q
            .extended_gcd(&self.p)
            .x
            .mod_floor(&self.p);
        let mut out: Vec<LensSpace> = Vec::with_capacity(4);
        for q in [self.q, self.p - self.q, inv, self.p - inv] {
            let l = LensSpace { p: self.p, q };
            if !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }

    pub fn is_homeomorphic(self, other: LensSpace) -> bool {
        self.p == other.p && self.equivalent_reps().contains(&other)
    }

    /// Representative with the smallest `q`.
    pub fn class_key(self) -> LensSpace {
        *self.equivalent_reps().iter().min().expect("nonempty")
    }

    pub fn default_cap(self) -> u64 {
        default_cap(&[Slope::ZERO, self.slope()])
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

pub fn normalize(p: i64, q: i64) -> Result<LensSpace> {
    if p < 2 {
        return Err(Error::ExcludedManifold { p, q });
    }
    let r = q.rem_euclid(p);
    if r == 0 || r.gcd(&p) != 1 {
        return Err(Error::NotALensSpace { p, q });
    }
    Ok(LensSpace { p, q: r })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    /// Number of sphere-bundle summands.
    pub n: usize,
    /// Starts `0/1, 1/0` and ends at a slope of `representative`.
    pub path: SlopePath,
    pub representative: LensSpace,
    /// `Certified` or `UpperBound`.
    pub exactness: Exactness,
}

/// Move a path starting at `0/1` by a shear fixing `0/1` (and possibly a
/// reflection) so that it continues through `1/0` and ends at a slope with
/// positive numerator. Neither map changes the lens space at the far end,
/// and an even shear preserves every framing parity.
pub(crate) fn anchor_at_longitude(path: &SlopePath) -> Result<SlopePath> {
    let v = &path.vertices;
    if v.len() < 2 || v[0] != Slope::ZERO {
        return Err(Error::InvalidPath(format!("{path} does not start 0/1, x")));
    }
    // v[1] = ±(1, t)
    let t = match v[1].p() {
        1 => v[1].q() as i128,
        -1 => -(v[1].q() as i128),
        _ => return Err(Error::InvalidPath(format!("{} is not adjacent to 0/1", v[1]))),
    };
    let mut out = Vec::with_capacity(v.len());
    for s in v {
        let (x, y) = (s.p() as i128, s.q() as i128);
        out.push(Slope::from_wide(x, y - t * x)?);
    }
    if out.last().is_some_and(|s| s.p() < 0) {
        out = out.into_iter().map(Slope::reflect).collect();
    }
    Ok(SlopePath {
        vertices: out,
        kind: path.kind,
    })
}

fn to_bound(found: Result<Geodesic>) -> Result<(SlopePath, Exactness)> {
    match found {
        Ok(g) => {
            let exactness = match g.exactness {
                Exactness::Certified => Exactness::Certified,
                _ => Exactness::UpperBound,
            };
            Ok((g.path, exactness))
        }
        Err(Error::CapExhausted { path, .. }) => Ok((path, Exactness::UpperBound)),
        Err(e) => Err(e),
    }
}

fn best_bound(
    candidates: impl IntoIterator<Item = LensSpace>,
    search: impl Fn(Slope) -> Result<Geodesic>,
) -> Result<BoundResult> {
    let mut best: Option<BoundResult> = None;
    for rep in candidates {
        let (path, exactness) = to_bound(search(rep.slope()))?;
        let path = anchor_at_longitude(&path)?;
        let end = path.last().expect("nonempty");
        let result = BoundResult {
            n: path.len() - 1,
            representative: normalize(end.p(), end.q())?,
            path,
            exactness,
        };
        if best.as_ref().is_none_or(|b| result.n < b.n) {
            best = Some(result);
        }
    }
    best.ok_or_else(|| Error::Degenerate("no admissible representative".into()))
}

/// Upper bound for the twisted spine embedding number: the shortest Farey
/// path over all representatives, less one.
pub fn twisted_bound(lens: LensSpace, cap: u64) -> Result<BoundResult> {
    best_bound(lens.equivalent_reps(), |s| farey_distance(Slope::ZERO, s, cap))
}

/// Upper bound for the spine embedding number: the shortest even Farey path
/// over the even representatives, less one. Never exceeds `p - 1`.
pub fn untwisted_bound(lens: LensSpace, cap: u64) -> Result<BoundResult> {
    let even = lens
        .equivalent_reps()
        .into_iter()
        .filter(|l| is_even_vertex(l.slope()));
    best_bound(even, |s| even_distance(Slope::ZERO, s, cap))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub lens: LensSpace,
    pub twisted: BoundResult,
    pub untwisted: BoundResult,
}

/// One row per homeomorphism class with `2 <= p <= p_max`, keyed by the
/// representative with smallest `q`, ordered by `(p, q)`. `cap = None` uses
/// each row's default cap.
pub fn prop_bound_table(p_max: i64, cap: Option<u64>) -> Result<Vec<BoundRow>> {
    let classes: Vec<LensSpace> = (2..=p_max)
        .flat_map(|p| (1..p).filter_map(move |q| normalize(p, q).ok()))
        .filter(|l| l.class_key() == *l)
        .collect();
    classes
        .into_par_iter()
        .map(|lens| {
            let cap = cap.unwrap_or_else(|| lens.default_cap());
            Ok(BoundRow {
                lens,
                twisted: twisted_bound(lens, cap)?,
                untwisted: untwisted_bound(lens, cap)?,
            })
        })
        .collect()
}

//! The even Farey graph: the full subgraph on slopes `p/q` with `pq` even.
//!
//! Every triangle of the Farey tessellation has exactly two even corners, so
//! each even slope other than `0/1` and `1/0` has exactly one even parent in
//! the mediant tree. Following those parents gives a path to a root.

use crate::error::{Error, Result};
use crate::farey::{
    farey_parents, is_even_vertex, join_at_zero, search_geodesic, Geodesic, PathKind, Slope,
    SlopePath,
};

fn require_even_nonnegative(s: Slope, operation: &'static str) -> Result<()> {
    if s.p() < 0 || !is_even_vertex(s) {
        return Err(Error::OutOfDomain {
            slope: s.to_string(),
            operation,
        });
    }
    Ok(())
}

/// The unique even Farey parent of an even, nonnegative, non-root slope.
pub fn even_parent(s: Slope) -> Result<Slope> {
    require_even_nonnegative(s, "even_parent")?;
    let (a, c) = farey_parents(s)?;
    match (is_even_vertex(a), is_even_vertex(c)) {
        (true, false) => Ok(a),
        (false, true) => Ok(c),
        _ => Err(Error::LemmaViolation(format!("{s} has parents {a} and {c}"))),
    }
}

/// Even path from `s` down to `0/1`, through `1/0` when the parent chain
/// lands there first.
pub fn even_trace(s: Slope) -> Result<SlopePath> {
    require_even_nonnegative(s, "even_trace")?;
    let mut vertices = vec![s];
    let mut cur = s;
    while !cur.is_root() {
        cur = even_parent(cur)?;
        vertices.push(cur);
    }
    if cur == Slope::INFINITY {
        vertices.push(Slope::ZERO);
    }
    Ok(SlopePath {
        vertices,
        kind: PathKind::EvenFarey,
    })
}

fn signed_trace(s: Slope) -> Vec<Slope> {
    if s.p() < 0 {
        signed_trace(s.reflect())
            .into_iter()
            .map(Slope::reflect)
            .collect()
    } else {
        even_trace(s).expect("caller checked evenness").vertices
    }
}

/// Distance in the capped even Farey graph.
pub fn even_distance(a: Slope, b: Slope, cap: u64) -> Result<Geodesic> {
    for s in [a, b] {
        if !is_even_vertex(s) {
            return Err(Error::OutOfDomain {
                slope: s.to_string(),
                operation: "even_distance",
            });
        }
    }
    search_geodesic(a, b, cap, PathKind::EvenFarey, |a, b| {
        join_at_zero(signed_trace(a), signed_trace(b))
    })
}

/// Iteration of the mediant construction in which `s` first appears:
/// `0/1` and `1/0` at iteration 0, and one more than the later parent
/// otherwise. Equals the sum of the continued-fraction partial quotients.
pub fn iteration_index(s: Slope) -> Result<u64> {
    if s.p() < 0 {
        return Err(Error::OutOfDomain {
            slope: s.to_string(),
            operation: "iteration_index",
        });
    }
    if s.is_root() {
        return Ok(0);
    }
    let (mut a, mut b) = (s.p() as u128, s.q() as u128);
    let mut total = 0u128;
    while b != 0 {
        total += a / b;
        (a, b) = (b, a % b);
    }
    Ok(total as u64)
}

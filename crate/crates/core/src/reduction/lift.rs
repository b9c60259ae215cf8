use crate::graph::MultiGraph;

use super::ReductionError;

/// Delete one edge `uv` and one edge `uw` and add the edge `vw`.
///
/// Requires `d(u) >= 4`. The lowest-indexed copy of each removed edge is
/// taken; the new edge is appended, so the result has `m − 1` edges.
pub fn lift(graph: &MultiGraph, u: usize, v: usize, w: usize) -> Result<MultiGraph, ReductionError> {
    let fail = |reason: String| ReductionError::Lift { u, reason };
    let n = graph.order();
    if u >= n || v >= n || w >= n {
        return Err(fail(format!("vertex out of range 0..{n}")));
    }
    if u == v || u == w || v == w {
        return Err(fail("u, v, w must be distinct".into()));
    }
    let degree = graph.degree(u);
    if degree < 4 {
        return Err(fail(format!("d(u) = {degree} < 4")));
    }
    let uv = *graph
        .edges_between(u, v)
        .first()
        .ok_or_else(|| fail(format!("no edge {u}-{v}")))?;
    let uw = *graph
        .edges_between(u, w)
        .first()
        .ok_or_else(|| fail(format!("no edge {u}-{w}")))?;
    Ok(graph.without_edges(&[uv, uw]).with_edge(v, w)?)
}

use crate::flow::Oracle;
use crate::graph::MultiGraph;

use super::ReductionError;

/// Grow a Z_3-connected edge set by repeatedly absorbing any outside vertex
/// with at least two edges into the current core, together with those edges.
///
/// The seed is certified with the oracle first. Returns the enlarged edge
/// set, sorted.
pub fn attach_vertex_closure(
    graph: &MultiGraph,
    seed: &[usize],
    oracle: &Oracle,
) -> Result<Vec<usize>, ReductionError> {
    let (sub, vertices) = graph.edge_subgraph(seed)?;
    if seed.is_empty() || !oracle.is_group_connected(&sub, 3)? {
        return Err(ReductionError::UncertifiedSeed);
    }
    let mut in_core = vec![false; graph.order()];
    for &v in &vertices {
        in_core[v] = true;
    }
    let mut edges: Vec<usize> = seed.to_vec();
    loop {
        let absorbed = (0..graph.order()).filter(|&v| !in_core[v]).find_map(|v| {
            let links: Vec<usize> = graph
                .incident_edges(v)
                .into_iter()
                .filter(|&e| {
                    let (a, b) = graph.edge(e);
                    in_core[if a == v { b } else { a }]
                })
                .collect();
            (links.len() >= 2).then_some((v, links))
        });
        let Some((v, links)) = absorbed else { break };
        in_core[v] = true;
        edges.extend(links);
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

use std::collections::HashSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::flow::{FlowError, Oracle};
use crate::graph::MultiGraph;

use super::{Pattern, ReductionError, ReductionStep, ReductionTrace};

pub const DEFAULT_MAX_SEARCH_ORDER: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_order: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_SEARCH_ORDER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    K1,
    K4,
}

impl Target {
    fn matches(self, graph: &MultiGraph) -> bool {
        match self {
            Target::K1 => graph.order() == 1,
            Target::K4 => graph.order() == 4 && graph.size() == 6 && graph.is_simple(),
        }
    }
}

/// Vertex sets `S` (at least two vertices) whose induced subgraph is
/// Z_3-connected, largest first, then lexicographic.
///
/// Contracting any Z_3-connected subgraph `H` has the same effect as
/// contracting `G[V(H)]`, which is Z_3-connected as well, so these sets
/// cover every possible contraction.
pub fn certified_vertex_sets(
    graph: &MultiGraph,
    oracle: &Oracle,
) -> Result<Vec<Vec<usize>>, FlowError> {
    let n = graph.order();
    assert!(n < 32, "vertex-set enumeration needs order < 32");
    let masks = graph.neighbor_masks();
    let mut out = Vec::new();
    for set in 1u32..1 << n {
        let size = set.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let vertices: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        // cheap necessary conditions before the oracle
        if vertices
            .iter()
            .any(|&v| masks[v] as u32 & set == 0)
        {
            continue;
        }
        let (sub, _) = graph.induced(&vertices);
        if sub.min_degree() < 2 || !enough_edges(sub.size(), size) || !sub.is_connected() {
            continue;
        }
        if oracle.is_group_connected(&sub, 3)? {
            out.push(vertices);
        }
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `2^m >= 3^(s-1)` is needed for every zero-sum demand to be reached.
fn enough_edges(edges: usize, vertices: usize) -> bool {
    if edges >= 64 {
        return true;
    }
    (1u128 << edges) >= 3u128.pow(vertices as u32 - 1)
}

/// Search contraction sequences for one ending at `target`, where the final
/// graph has no Z_3-connected subgraph left. States are memoised by
/// canonical form.
pub fn contracts_to(
    graph: &MultiGraph,
    target: Target,
    oracle: &Oracle,
    budget: SearchBudget,
) -> Result<Option<ReductionTrace>, ReductionError> {
    if graph.order() > budget.max_order {
        return Err(ReductionError::SearchBudget {
            order: graph.order(),
            limit: budget.max_order,
        });
    }
    let mut dead = HashSet::new();
    let Some(steps) = explore(graph, target, oracle, &mut dead)? else {
        return Ok(None);
    };
    let mut trace = ReductionTrace::empty(graph.clone());
    for step in steps {
        trace.push(step)?;
    }
    Ok(Some(trace))
}

fn explore(
    graph: &MultiGraph,
    target: Target,
    oracle: &Oracle,
    dead: &mut HashSet<CanonicalForm>,
) -> Result<Option<Vec<ReductionStep>>, ReductionError> {
    let form = canonical_form(graph);
    if dead.contains(&form) {
        return Ok(None);
    }
    let candidates = certified_vertex_sets(graph, oracle)?;
    if candidates.is_empty() {
        if target.matches(graph) {
            return Ok(Some(Vec::new()));
        }
        dead.insert(form);
        return Ok(None);
    }
    for vertices in candidates {
        let (sub, edges) = graph.induced(&vertices);
        let pattern = if sub.order() == 2 && sub.size() == 2 {
            Pattern::TwoCycle
        } else {
            Pattern::OracleVerified
        };
        let next = graph.contract_edges(&edges)?.graph;
        if let Some(mut rest) = explore(&next, target, oracle, dead)? {
            rest.insert(0, ReductionStep::Contract { edges, pattern });
            return Ok(Some(rest));
        }
    }
    dead.insert(form);
    Ok(None)
}

/// Largest order accepted by [`exact_k4_contraction`].
pub const MAX_PARTITION_ORDER: usize = 12;

/// A partition of the vertices into four connected blocks with exactly one
/// edge between every two blocks, so that contracting the blocks yields
/// precisely K4. Returns the block of each vertex.
pub fn exact_k4_contraction(graph: &MultiGraph) -> Result<Option<Vec<usize>>, ReductionError> {
    let n = graph.order();
    if n > MAX_PARTITION_ORDER {
        return Err(ReductionError::SearchBudget {
            order: n,
            limit: MAX_PARTITION_ORDER,
        });
    }
    if n < 4 || graph.size() < 6 {
        return Ok(None);
    }
    let mut blocks = vec![0usize; n];
    Ok(assign(graph, &mut blocks, 0, 0).then_some(blocks))
}

/// Restricted-growth enumeration: vertex `v` joins an existing block or
/// opens block `used`.
fn assign(graph: &MultiGraph, blocks: &mut [usize], v: usize, used: usize) -> bool {
    let n = blocks.len();
    if v == n {
        return used == 4 && is_exact_k4(graph, blocks);
    }
    // each unopened block still needs a vertex
    if 4 - used > n - v {
        return false;
    }
    for b in 0..(used + 1).min(4) {
        blocks[v] = b;
        if assign(graph, blocks, v + 1, used.max(b + 1)) {
            return true;
        }
    }
    false
}

fn is_exact_k4(graph: &MultiGraph, blocks: &[usize]) -> bool {
    let mut between = [[0usize; 4]; 4];
    for &(u, v) in graph.edges() {
        let (a, b) = (blocks[u], blocks[v]);
        if a != b {
            between[a][b] += 1;
            between[b][a] += 1;
        }
    }
    if (0..4).any(|a| (a + 1..4).any(|b| between[a][b] != 1)) {
        return false;
    }
    (0..4).all(|b| {
        let members: Vec<usize> = (0..blocks.len()).filter(|&v| blocks[v] == b).collect();
        graph.induced(&members).0.is_connected()
    })
}

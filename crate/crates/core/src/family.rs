//! Standard graph families and the edge-identifying 2-sum.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter for {family}: {reason}")]
    Parameter { family: &'static str, reason: String },
    #[error("2-sum needs an edge in each operand (edge {index} of a graph with {size} edges)")]
    MissingEdge { index: usize, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    /// K_n on vertices `0..n`.
    Complete(usize),
    /// K_n without the edge `0-1`.
    CompleteMinusEdge(usize),
    /// C_n; C_2 is a doubled edge.
    Cycle(usize),
    /// Hub `0` joined to a k-cycle on `1..=k`. W_1 is a triangle and W_2 a
    /// triangle with a doubled rim edge.
    Wheel(usize),
    /// Parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// Identify edge `left_edge` of `left` with edge `right_edge` of `right`.
    TwoSum {
        left: Box<FamilySpec>,
        right: Box<FamilySpec>,
        left_edge: usize,
        right_edge: usize,
    },
}

impl FamilySpec {
    pub fn two_sum(left: FamilySpec, right: FamilySpec) -> Self {
        FamilySpec::TwoSum {
            left: Box::new(left),
            right: Box::new(right),
            left_edge: 0,
            right_edge: 0,
        }
    }
}

pub fn gen_family(spec: &FamilySpec) -> Result<MultiGraph, FamilyError> {
    let bad = |family, reason: &str| FamilyError::Parameter {
        family,
        reason: reason.to_owned(),
    };
    let graph = match *spec {
        FamilySpec::Complete(n) => {
            if n == 0 {
                return Err(bad("K_n", "n must be at least 1"));
            }
            complete(n)
        }
        FamilySpec::CompleteMinusEdge(n) => {
            if n < 2 {
                return Err(bad("K_n^-", "n must be at least 2"));
            }
            let k = complete(n);
            k.without_edges(&[0])
        }
        FamilySpec::Cycle(n) => {
            if n < 2 {
                return Err(bad("C_n", "n must be at least 2"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            MultiGraph::new(n, &edges).expect("cycle edges are valid")
        }
        FamilySpec::Wheel(k) => {
            if k == 0 {
                return Err(bad("W_k", "k must be at least 1"));
            }
            if k == 1 {
                return Ok(complete(3));
            }
            let mut edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
            edges.extend((0..k).map(|i| (1 + i, 1 + (i + 1) % k)));
            MultiGraph::new(k + 1, &edges).expect("wheel edges are valid")
        }
        FamilySpec::CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return Err(bad("K_{m,n}", "both parts must be non-empty"));
            }
            let mut edges = Vec::with_capacity(a * b);
            for u in 0..a {
                for v in a..a + b {
                    edges.push((u, v));
                }
            }
            MultiGraph::new(a + b, &edges).expect("bipartite edges are valid")
        }
        FamilySpec::TwoSum {
            ref left,
            ref right,
            left_edge,
            right_edge,
        } => two_sum(&gen_family(left)?, left_edge, &gen_family(right)?, right_edge)?,
    };
    Ok(graph)
}

fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, &edges).expect("complete graph edges are valid")
}

/// Glue `right` onto `left` by identifying edge `right_edge = (a, b)` with
/// `left_edge = (x, y)` (a onto x, b onto y). The shared edge appears once;
/// the other vertices of `right` are appended after those of `left`.
pub fn two_sum(
    left: &MultiGraph,
    left_edge: usize,
    right: &MultiGraph,
    right_edge: usize,
) -> Result<MultiGraph, FamilyError> {
    if left_edge >= left.size() {
        return Err(FamilyError::MissingEdge {
            index: left_edge,
            size: left.size(),
        });
    }
    if right_edge >= right.size() {
        return Err(FamilyError::MissingEdge {
            index: right_edge,
            size: right.size(),
        });
    }
    let (x, y) = left.edge(left_edge);
    let (a, b) = right.edge(right_edge);
    let mut map = vec![usize::MAX; right.order()];
    map[a] = x;
    map[b] = y;
    let mut next = left.order();
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut edges = left.edges().to_vec();
    for (i, &(u, v)) in right.edges().iter().enumerate() {
        if i != right_edge {
            edges.push((map[u], map[v]));
        }
    }
    Ok(MultiGraph::new(next, &edges).expect("2-sum edges are valid"))
}

//! Loopless undirected multigraphs with stable edge identities.
//!
//! Vertices are `0..n`, edges are indexed `0..m` in insertion order and
//! stored with their endpoints normalized so that `u < v`. Parallel edges are
//! distinct edges with distinct indices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edge connectivity reported for graphs with fewer than two vertices.
pub const INFINITE_CONNECTIVITY: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("edge {index} has endpoint {vertex} outside 0..{order}")]
    EndpointOutOfRange {
        index: usize,
        vertex: usize,
        order: usize,
    },
    #[error("edge index {index} out of range (m = {size})")]
    EdgeOutOfRange { index: usize, size: usize },
    #[error("cannot parse graph text: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiGraph {
    order: usize,
    edges: Vec<(usize, usize)>,
}

/// Result of [`MultiGraph::contract_edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// Old vertex to new vertex.
    pub vertex_map: Vec<usize>,
    /// Old edge to new edge; `None` for edges that became loops.
    pub edge_map: Vec<Option<usize>>,
}

impl MultiGraph {
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut stored = Vec::with_capacity(edges.len());
        for (index, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= order {
                    return Err(GraphError::EndpointOutOfRange {
                        index,
                        vertex,
                        order,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop { index, vertex: u });
            }
            stored.push((u.min(v), u.max(v)));
        }
        Ok(Self {
            order,
            edges: stored,
        })
    }

    pub fn empty(order: usize) -> Self {
        Self {
            order,
            edges: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Degree counting multiplicities.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Sorted degree sequence.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut deg = self.degrees();
        deg.sort_unstable();
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Symmetric matrix of edge multiplicities.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u32>> {
        let mut mat = vec![vec![0u32; self.order]; self.order];
        for &(u, v) in &self.edges {
            mat[u][v] += 1;
            mat[v][u] += 1;
        }
        mat
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.contains(&key)
    }

    /// Indices of the edges joining `u` and `v`, ascending.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        let key = (u.min(v), u.max(v));
        (0..self.edges.len())
            .filter(|&i| self.edges[i] == key)
            .collect()
    }

    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].0 == v || self.edges[i].1 == v)
            .collect()
    }

    /// Distinct neighbours as a bitmask (requires `order <= 64`).
    pub fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.order <= 64, "neighbour masks need order <= 64");
        let mut masks = vec![0u64; self.order];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = self.edges.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Underlying simple graph: one edge per adjacent pair, in first-seen order.
    pub fn underlying_simple(&self) -> MultiGraph {
        let mut seen = std::collections::HashSet::new();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| seen.insert(*e))
            .collect();
        MultiGraph {
            order: self.order,
            edges,
        }
    }

    /// Complement of the underlying simple graph.
    pub fn complement(&self) -> MultiGraph {
        let mut edges = Vec::new();
        for u in 0..self.order {
            for v in u + 1..self.order {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        MultiGraph {
            order: self.order,
            edges,
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.order <= 1 {
            return true;
        }
        self.components().iter().all(|&c| c == 0)
    }

    /// Component id per vertex, numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut dsu = Dsu::new(self.order);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        dsu.labels()
    }

    /// Contract every edge in `set`, deleting the loops that result.
    ///
    /// New vertices are numbered by the smallest old vertex in each class;
    /// surviving edges keep their relative order.
    pub fn contract_edges(&self, set: &[usize]) -> Result<Contraction, GraphError> {
        let mut dsu = Dsu::new(self.order);
        for &index in set {
            let &(u, v) = self.edges.get(index).ok_or(GraphError::EdgeOutOfRange {
                index,
                size: self.edges.len(),
            })?;
            dsu.union(u, v);
        }
        Ok(self.contract_partition(&dsu.labels()))
    }

    /// Merge each vertex class (given as a label per vertex) to a single vertex.
    /// Labels must be dense and numbered by smallest member, as produced by
    /// [`Dsu::labels`].
    pub(crate) fn contract_partition(&self, vertex_map: &[usize]) -> Contraction {
        let order = vertex_map.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut edges = Vec::new();
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            let (a, b) = (vertex_map[u], vertex_map[v]);
            if a == b {
                edge_map.push(None);
            } else {
                edge_map.push(Some(edges.len()));
                edges.push((a.min(b), a.max(b)));
            }
        }
        Contraction {
            graph: MultiGraph { order, edges },
            vertex_map: vertex_map.to_vec(),
            edge_map,
        }
    }

    /// Merge the vertices of `set` into one vertex.
    pub fn contract_vertices(&self, set: &[usize]) -> Contraction {
        let mut dsu = Dsu::new(self.order);
        for w in set.windows(2) {
            dsu.union(w[0], w[1]);
        }
        self.contract_partition(&dsu.labels())
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    /// Returns the subgraph and the original index of each kept edge.
    pub fn induced(&self, vertices: &[usize]) -> (MultiGraph, Vec<usize>) {
        let mut position = vec![usize::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (index, &(u, v)) in self.edges.iter().enumerate() {
            let (a, b) = (position[u], position[v]);
            if a != usize::MAX && b != usize::MAX {
                edges.push((a.min(b), a.max(b)));
                origin.push(index);
            }
        }
        (
            MultiGraph {
                order: vertices.len(),
                edges,
            },
            origin,
        )
    }

    /// Subgraph formed by an edge set, on the vertices those edges touch
    /// (ascending). Returns the subgraph and its vertex list.
    pub fn edge_subgraph(&self, set: &[usize]) -> Result<(MultiGraph, Vec<usize>), GraphError> {
        let mut vertices = Vec::new();
        for &index in set {
            let &(u, v) = self.edges.get(index).ok_or(GraphError::EdgeOutOfRange {
                index,
                size: self.edges.len(),
            })?;
            vertices.push(u);
            vertices.push(v);
        }
        vertices.sort_unstable();
        vertices.dedup();
        let mut position = vec![usize::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges = set
            .iter()
            .map(|&i| {
                let (u, v) = self.edges[i];
                (position[u], position[v])
            })
            .collect();
        Ok((
            MultiGraph {
                order: vertices.len(),
                edges,
            },
            vertices,
        ))
    }

    /// Apply a vertex relabelling: vertex `v` becomes `perm[v]`. Edge order is kept.
    pub fn relabel(&self, perm: &[usize]) -> MultiGraph {
        assert_eq!(perm.len(), self.order);
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        MultiGraph {
            order: self.order,
            edges,
        }
    }

    /// Graph with the given edges removed; remaining edges keep relative order.
    pub fn without_edges(&self, set: &[usize]) -> MultiGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !set.contains(i))
            .map(|(_, &e)| e)
            .collect();
        MultiGraph {
            order: self.order,
            edges,
        }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<MultiGraph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        MultiGraph::new(self.order, &edges)
    }

    /// Independence number of the underlying simple graph (exact, `order <= 64`).
    pub fn independence_number(&self) -> usize {
        let masks = self.neighbor_masks();
        let all = if self.order == 64 {
            u64::MAX
        } else {
            (1u64 << self.order) - 1
        };
        max_independent(&masks, all)
    }

    /// `true` iff no three vertices are pairwise non-adjacent, i.e. the
    /// complement is triangle-free.
    pub fn alpha_le_2(&self) -> bool {
        let masks = self.neighbor_masks();
        let n = self.order;
        for a in 0..n {
            for b in a + 1..n {
                if masks[a] >> b & 1 == 1 {
                    continue;
                }
                let common_non = !(masks[a] | masks[b]) & !((1u64 << (b + 1)) - 1);
                let in_range = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                if common_non & in_range != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_triangle_free(&self) -> bool {
        let masks = self.neighbor_masks();
        self.edges
            .iter()
            .all(|&(u, v)| masks[u] & masks[v] == 0)
    }

    /// Global minimum edge cut (multiplicities counted), by Stoer-Wagner.
    /// Returns 0 for disconnected graphs and [`INFINITE_CONNECTIVITY`] when
    /// `order <= 1`.
    pub fn edge_connectivity(&self) -> u32 {
        if self.order <= 1 {
            return INFINITE_CONNECTIVITY;
        }
        if !self.is_connected() {
            return 0;
        }
        let mut weight: Vec<Vec<u64>> = self
            .multiplicity_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(u64::from).collect())
            .collect();
        let mut alive: Vec<usize> = (0..self.order).collect();
        let mut best = u64::MAX;
        while alive.len() > 1 {
            // maximum adjacency ordering
            let mut added = vec![false; self.order];
            let mut attach = vec![0u64; self.order];
            let mut prev = alive[0];
            let mut last = alive[0];
            for step in 0..alive.len() {
                let next = *alive
                    .iter()
                    .filter(|&&v| !added[v])
                    .max_by_key(|&&v| (attach[v], std::cmp::Reverse(v)))
                    .expect("unvisited vertex");
                added[next] = true;
                if step == alive.len() - 1 {
                    best = best.min(attach[next]);
                    prev = last;
                    last = next;
                    break;
                }
                prev = last;
                last = next;
                for &v in &alive {
                    if !added[v] {
                        attach[v] += weight[next][v];
                    }
                }
            }
            // merge `last` into `prev`
            for &v in &alive {
                let w = weight[last][v];
                weight[prev][v] += w;
                weight[v][prev] += w;
            }
            weight[prev][prev] = 0;
            alive.retain(|&v| v != last);
        }
        best as u32
    }

    /// `true` iff every pair of non-adjacent vertices has degree sum at least n.
    pub fn satisfies_ore(&self) -> bool {
        let deg = self.degrees();
        let n = self.order;
        (0..n).all(|u| {
            (u + 1..n).all(|v| self.has_edge(u, v) || deg[u] + deg[v] >= n)
        })
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.order {
            out.push_str(&format!("  {v};\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Parse the subset of DOT written by [`MultiGraph::to_dot`]: numeric
    /// vertex statements and `u -- v` edge statements.
    pub fn from_dot(text: &str) -> Result<Self, GraphError> {
        let body = text
            .split_once('{')
            .and_then(|(_, rest)| rest.rsplit_once('}'))
            .map(|(body, _)| body)
            .ok_or_else(|| GraphError::Parse("missing braces".into()))?;
        let mut order = 0usize;
        let mut edges = Vec::new();
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| GraphError::Parse(format!("bad vertex `{}`", s.trim())))
        };
        for stmt in body.split([';', '\n']) {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            if let Some((a, b)) = stmt.split_once("--") {
                let (u, v) = (parse(a)?, parse(b)?);
                order = order.max(u + 1).max(v + 1);
                edges.push((u, v));
            } else {
                order = order.max(parse(stmt)? + 1);
            }
        }
        MultiGraph::new(order, &edges)
    }
}

/// Compact text form `n:u-v,u-v,...`; K1 is `1:`.
impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.order)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| GraphError::Parse(format!("expected `n:edges`, got `{s}`")))?;
        let order = n
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad order `{n}`")))?;
        let mut edges = Vec::new();
        for item in rest.split(',').filter(|t| !t.is_empty()) {
            let (u, v) = item
                .split_once('-')
                .ok_or_else(|| GraphError::Parse(format!("bad edge `{item}`")))?;
            let u = u
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad edge `{item}`")))?;
            let v = v
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad edge `{item}`")))?;
            edges.push((u, v));
        }
        MultiGraph::new(order, &edges)
    }
}

fn max_independent(masks: &[u64], candidates: u64) -> usize {
    if candidates == 0 {
        return 0;
    }
    let v = candidates.trailing_zeros() as usize;
    let rest = candidates & !(1u64 << v);
    // either v is excluded, or included and its neighbours dropped
    let with = 1 + max_independent(masks, rest & !masks[v]);
    if masks[v] & rest == 0 {
        return with;
    }
    with.max(max_independent(masks, rest))
}

/// Union-find over `0..n`.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    /// Dense class label per element, classes numbered by smallest member.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for (x, slot) in out.iter_mut().enumerate() {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *slot = label[r];
        }
        out
    }
}

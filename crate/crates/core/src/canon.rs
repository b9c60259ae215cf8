//! Canonical forms for small multigraphs.
//!
//! The form is the lexicographically smallest upper-triangle multiplicity
//! string (graph6 column order) over all vertex orderings that respect an
//! isomorphism-invariant colour refinement. The search is a plain
//! backtracking over those orderings with prefix pruning.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::MultiGraph;

/// Byte string identifying an isomorphism class: order followed by the
/// canonical upper-triangle multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// Rebuild the canonically labelled graph this form describes.
    pub fn to_graph(&self) -> MultiGraph {
        let n = self.order();
        let mut edges = Vec::new();
        let mut k = 1;
        for v in 1..n {
            for u in 0..v {
                for _ in 0..self.0[k] {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        MultiGraph::new(n, &edges).expect("canonical form is well formed")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

pub fn canonical_form(graph: &MultiGraph) -> CanonicalForm {
    let (form, _) = canonical_labeling(graph);
    form
}

/// Canonical form plus a labelling achieving it: `labeling[p]` is the
/// original vertex placed at canonical position `p`.
pub fn canonical_labeling(graph: &MultiGraph) -> (CanonicalForm, Vec<usize>) {
    let n = graph.order();
    assert!(n < 256, "canonical forms support order < 256");
    let adj: Vec<Vec<u8>> = graph
        .multiplicity_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|m| m.min(255) as u8).collect())
        .collect();
    let colors = refine(&adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (v, &c) in colors.iter().enumerate() {
        if cells.len() <= c {
            cells.resize(c + 1, Vec::new());
        }
        cells[c].push(v);
    }
    // position p draws from cell_of_position[p]
    let cell_of_position: Vec<usize> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, members)| std::iter::repeat_n(c, members.len()))
        .collect();

    let mut search = Search {
        adj: &adj,
        cells: &cells,
        cell_of_position: &cell_of_position,
        current: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
        best_order: Vec::new(),
        scratch: Vec::with_capacity(n * n / 2),
    };
    search.run(0, false);

    let mut bytes = Vec::with_capacity(1 + n * n.saturating_sub(1) / 2);
    bytes.push(n as u8);
    bytes.extend(search.best.unwrap_or_default());
    (CanonicalForm(bytes), search.best_order)
}

pub fn are_isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    a.order() == b.order()
        && a.size() == b.size()
        && a.degree_multiset() == b.degree_multiset()
        && canonical_form(a) == canonical_form(b)
}

/// Iterated colour refinement; returns colours `0..k` numbered by sorted
/// signature so the result depends only on the isomorphism class.
fn refine(adj: &[Vec<u8>]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = vec![0; n];
    let mut classes = if n == 0 { 0 } else { 1 };
    loop {
        let signatures: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut sig: Vec<(usize, u8)> = (0..n)
                    .filter(|&w| adj[v][w] > 0)
                    .map(|w| (colors[w], adj[v][w]))
                    .collect();
                sig.sort_unstable();
                (colors[v], sig)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let count = distinct.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

struct Search<'a> {
    adj: &'a [Vec<u8>],
    cells: &'a [Vec<usize>],
    cell_of_position: &'a [usize],
    current: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<u8>>,
    best_order: Vec<usize>,
    scratch: Vec<u8>,
}

impl Search<'_> {
    /// `below` is true once the current prefix is already strictly smaller
    /// than the best string, in which case no comparison is needed.
    fn run(&mut self, position: usize, below: bool) {
        let n = self.adj.len();
        if position == n {
            if below || self.best.is_none() {
                self.best = Some(self.scratch.clone());
                self.best_order = self.current.clone();
            }
            return;
        }
        let cell = self.cell_of_position[position];
        for i in 0..self.cells[cell].len() {
            let v = self.cells[cell][i];
            if self.used[v] {
                continue;
            }
            let start = self.scratch.len();
            for p in 0..position {
                let u = self.current[p];
                self.scratch.push(self.adj[u][v]);
            }
            let mut next_below = below;
            if !below {
                if let Some(best) = &self.best {
                    match self.scratch[start..].cmp(&best[start..self.scratch.len()]) {
                        Ordering::Greater => {
                            self.scratch.truncate(start);
                            continue;
                        }
                        Ordering::Less => next_below = true,
                        Ordering::Equal => {}
                    }
                } else {
                    next_below = false;
                }
            }
            self.used[v] = true;
            self.current.push(v);
            self.run(position + 1, next_below);
            self.current.pop();
            self.used[v] = false;
            self.scratch.truncate(start);
        }
    }
}

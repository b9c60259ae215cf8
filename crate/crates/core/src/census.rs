//! Exhaustive enumeration of small simple graphs up to isomorphism.
//!
//! Graphs with independence number at most two are produced as complements
//! of triangle-free graphs. Both generators grow graphs one vertex at a time
//! (every graph minus a vertex is a smaller member of the same class) and
//! keep one representative per canonical form.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{MultiGraph, INFINITE_CONNECTIVITY};
use crate::graph6::encode_graph6;

/// Largest order accepted when the independence-number constraint is on.
pub const MAX_CENSUS_ORDER: usize = 10;
/// Largest order accepted for the unrestricted census (all simple graphs).
pub const MAX_UNRESTRICTED_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census order {order} exceeds the budget of {limit}")]
    Budget { order: usize, limit: usize },
    #[error("census order must be at least 1")]
    EmptyOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConstraints {
    pub alpha_le_2: bool,
    pub min_edge_connectivity: u32,
}

impl CensusConstraints {
    /// Simple, 3-edge-connected, independence number at most two.
    pub const CLASSIFIABLE: Self = Self {
        alpha_le_2: true,
        min_edge_connectivity: 3,
    };

    pub const CONNECTED: Self = Self {
        alpha_le_2: false,
        min_edge_connectivity: 1,
    };
}

/// A census representative, canonically labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusGraph {
    pub form: CanonicalForm,
    pub graph: MultiGraph,
}

impl CensusGraph {
    pub fn graph6(&self) -> String {
        encode_graph6(&self.graph).expect("census graphs are simple")
    }

    /// `graph6 <TAB> n <TAB> m <TAB> edge_conn <TAB> alpha`
    pub fn tsv_line(&self) -> String {
        let ec = match self.graph.edge_connectivity() {
            INFINITE_CONNECTIVITY => "inf".to_owned(),
            c => c.to_string(),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.graph6(),
            self.graph.order(),
            self.graph.size(),
            ec,
            self.graph.independence_number()
        )
    }
}

/// One representative per isomorphism class of order `n` meeting the
/// constraints, sorted by canonical form.
pub fn enumerate_census(
    n: usize,
    constraints: CensusConstraints,
) -> Result<Vec<CensusGraph>, CensusError> {
    Ok(census_range(n..=n, constraints)?.remove(0))
}

/// Census for each order in `orders`, one vector per order.
pub fn census_range(
    orders: RangeInclusive<usize>,
    constraints: CensusConstraints,
) -> Result<Vec<Vec<CensusGraph>>, CensusError> {
    let (lo, hi) = (*orders.start(), *orders.end());
    if lo == 0 {
        return Err(CensusError::EmptyOrder);
    }
    let limit = if constraints.alpha_le_2 {
        MAX_CENSUS_ORDER
    } else {
        MAX_UNRESTRICTED_ORDER
    };
    if hi > limit {
        return Err(CensusError::Budget { order: hi, limit });
    }
    let levels = generate_levels(hi, constraints.alpha_le_2);
    Ok((lo..=hi)
        .map(|n| {
            levels[n - 1]
                .par_iter()
                .filter_map(|base| {
                    let graph = if constraints.alpha_le_2 {
                        base.complement()
                    } else {
                        base.clone()
                    };
                    if graph.edge_connectivity() < constraints.min_edge_connectivity {
                        return None;
                    }
                    let form = canonical_form(&graph);
                    Some(CensusGraph {
                        graph: form.to_graph(),
                        form,
                    })
                })
                .collect::<Vec<_>>()
        })
        .map(|mut level| {
            level.sort_by(|a, b| a.form.cmp(&b.form));
            level
        })
        .collect())
}

/// Isomorphism classes of graphs (triangle-free ones when `triangle_free`)
/// of order `1..=max_order`; entry `i` holds order `i + 1`.
fn generate_levels(max_order: usize, triangle_free: bool) -> Vec<Vec<MultiGraph>> {
    let mut levels = vec![vec![MultiGraph::empty(1)]];
    for n in 2..=max_order {
        let parents = levels.last().expect("non-empty");
        let children: BTreeMap<CanonicalForm, ()> = parents
            .par_iter()
            .flat_map_iter(|parent| extensions(parent, triangle_free))
            .map(|child| (canonical_form(&child), ()))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        debug_assert!(children.keys().all(|f| f.order() == n));
        levels.push(children.into_keys().map(|f| f.to_graph()).collect());
    }
    levels
}

fn extensions(parent: &MultiGraph, triangle_free: bool) -> Vec<MultiGraph> {
    let n = parent.order();
    let masks = parent.neighbor_masks();
    (0u64..1 << n)
        .filter(|&set| {
            !triangle_free
                || (0..n).all(|v| set >> v & 1 == 0 || masks[v] & set == 0)
        })
        .map(|set| {
            let mut edges = parent.edges().to_vec();
            edges.extend((0..n).filter(|&v| set >> v & 1 == 1).map(|v| (v, n)));
            MultiGraph::new(n + 1, &edges).expect("extension edges are valid")
        })
        .collect()
}

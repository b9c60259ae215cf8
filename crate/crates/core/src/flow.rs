//! Exact deciders for Z_k group connectivity and nowhere-zero Z_k flows.
//!
//! Everything is computed under the reference orientation in which every
//! edge runs from its lower stored endpoint to its higher one. Reversing an
//! edge is the same as negating its value, so a single enumeration of
//! nowhere-zero values covers every orientation.
//!
//! Two engines compute the set of boundaries of nowhere-zero assignments:
//!
//! * [`Engine::Sumset`] folds edges into the boundary set one at a time. Each
//!   edge contributes `{x·(χ_tail − χ_head) : x ≠ 0}`, so the achievable set is
//!   an iterated sumset over the `k^(n−1)` zero-sum demands. Cost is
//!   `O(m · k^n)`, independent of `(k−1)^m`.
//! * [`Engine::GrayCode`] walks all `(k−1)^m` assignments in reflected Gray
//!   order, touching two vertex accumulators per step.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::MultiGraph;

/// Default edge budget for value enumeration.
pub const DEFAULT_MAX_EDGES: usize = 28;
/// Default edge budget for orientation enumeration.
pub const DEFAULT_MAX_ORIENTATION_EDGES: usize = 30;
/// Default cap on `k^(n−1)` for the sumset engine.
pub const DEFAULT_MAX_STATES: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("modulus {0} is not supported (need k >= 3)")]
    Modulus(u32),
    #[error("{what} has length {found}, graph needs {expected}")]
    Length {
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("demand does not sum to zero mod {0}")]
    NotZeroSum(u32),
    #[error("value {value} is not an element of Z_{modulus}")]
    Value { value: u32, modulus: u32 },
    #[error("graph has {edges} edges, enumeration budget is {budget}; reduce first")]
    EdgeBudget { edges: usize, budget: usize },
    #[error("demand space has {states} states, budget is {budget}")]
    StateBudget { states: u64, budget: u64 },
}

/// Bit `i` set means edge `i` runs from its lower endpoint to its higher one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation(pub Vec<bool>);

impl Orientation {
    /// Every edge from lower to higher endpoint.
    pub fn reference(graph: &MultiGraph) -> Self {
        Orientation(vec![true; graph.size()])
    }

    pub fn tail_head(&self, graph: &MultiGraph, edge: usize) -> (usize, usize) {
        let (u, v) = graph.edge(edge);
        if self.0[edge] {
            (u, v)
        } else {
            (v, u)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlowAssignment {
    modulus: u32,
    values: Vec<u32>,
}

impl FlowAssignment {
    pub fn new(modulus: u32, values: Vec<u32>) -> Result<Self, FlowError> {
        if let Some(&value) = values.iter().find(|&&x| x >= modulus) {
            return Err(FlowError::Value { value, modulus });
        }
        Ok(Self { modulus, values })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|&x| x != 0)
    }
}

/// Vertex demands in Z_k with zero sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryDemand {
    modulus: u32,
    values: Vec<u32>,
}

impl BoundaryDemand {
    pub fn new(modulus: u32, values: Vec<u32>) -> Result<Self, FlowError> {
        if let Some(&value) = values.iter().find(|&&x| x >= modulus) {
            return Err(FlowError::Value { value, modulus });
        }
        let sum: u64 = values.iter().map(|&x| u64::from(x)).sum();
        if !sum.is_multiple_of(u64::from(modulus)) {
            return Err(FlowError::NotZeroSum(modulus));
        }
        Ok(Self { modulus, values })
    }

    pub fn zero(modulus: u32, order: usize) -> Self {
        Self {
            modulus,
            values: vec![0; order],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Every zero-sum demand on `order` vertices, in index order.
    pub fn all(modulus: u32, order: usize) -> impl Iterator<Item = BoundaryDemand> {
        let free = order.saturating_sub(1) as u32;
        let total = u64::from(modulus).pow(free);
        (0..total).map(move |index| decode_demand(modulus, order, index))
    }
}

fn decode_demand(modulus: u32, order: usize, mut index: u64) -> BoundaryDemand {
    let k = u64::from(modulus);
    let mut values = Vec::with_capacity(order);
    let mut sum = 0u64;
    for _ in 0..order.saturating_sub(1) {
        let d = (index % k) as u32;
        index /= k;
        sum += u64::from(d);
        values.push(d);
    }
    if order > 0 {
        values.push(((k - sum % k) % k) as u32);
    }
    BoundaryDemand { modulus, values }
}

/// `∂f(v)`: values on edges leaving `v` minus values on edges entering `v`.
pub fn boundary(
    graph: &MultiGraph,
    orientation: &Orientation,
    flow: &FlowAssignment,
) -> Result<BoundaryDemand, FlowError> {
    let m = graph.size();
    for (what, found) in [("orientation", orientation.0.len()), ("flow", flow.values.len())] {
        if found != m {
            return Err(FlowError::Length {
                what,
                found,
                expected: m,
            });
        }
    }
    let k = flow.modulus;
    let mut values = vec![0u32; graph.order()];
    for e in 0..m {
        let (tail, head) = orientation.tail_head(graph, e);
        let x = flow.values[e];
        values[tail] = (values[tail] + x) % k;
        values[head] = (values[head] + k - x) % k;
    }
    Ok(BoundaryDemand { modulus: k, values })
}

/// Set of zero-sum demands, stored as a bitset over the base-k encoding of
/// the first `n − 1` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AchievableSet {
    modulus: u32,
    order: usize,
    bits: Vec<u64>,
}

impl AchievableSet {
    fn empty(modulus: u32, order: usize) -> Self {
        let states = state_count(modulus, order) as usize;
        Self {
            modulus,
            order,
            bits: vec![0; states.div_ceil(64)],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `k^(n−1)`, the number of zero-sum demands.
    pub fn capacity(&self) -> u64 {
        state_count(self.modulus, self.order)
    }

    pub fn len(&self) -> u64 {
        self.bits.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.capacity()
    }

    pub fn contains(&self, demand: &BoundaryDemand) -> bool {
        if demand.modulus != self.modulus || demand.values.len() != self.order {
            return false;
        }
        self.contains_index(encode(self.modulus, &demand.values))
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_index(0)
    }

    fn contains_index(&self, index: u64) -> bool {
        self.bits[(index / 64) as usize] >> (index % 64) & 1 == 1
    }

    fn insert(&mut self, index: u64) {
        self.bits[(index / 64) as usize] |= 1 << (index % 64);
    }

    fn union_with(&mut self, other: &AchievableSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
        }
    }

    fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as u64;
                word &= word - 1;
                Some(w as u64 * 64 + bit)
            })
        })
    }

    /// Members as demands, in index order.
    pub fn demands(&self) -> impl Iterator<Item = BoundaryDemand> + '_ {
        self.indices()
            .map(|i| decode_demand(self.modulus, self.order, i))
    }
}

fn state_count(modulus: u32, order: usize) -> u64 {
    u64::from(modulus).pow(order.saturating_sub(1) as u32)
}

fn encode(modulus: u32, values: &[u32]) -> u64 {
    let free = values.len().saturating_sub(1);
    values[..free]
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * u64::from(modulus) + u64::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Engine {
    #[default]
    Sumset,
    GrayCode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Edge limit for value enumeration.
    pub max_edges: usize,
    /// Edge limit for orientation enumeration.
    pub max_orientation_edges: usize,
    /// Limit on `k^(n−1)`.
    pub max_states: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_edges: DEFAULT_MAX_EDGES,
            max_orientation_edges: DEFAULT_MAX_ORIENTATION_EDGES,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// Configured flow oracle. A pure function of its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Oracle {
    pub engine: Engine,
    pub budget: Budget,
}

impl Oracle {
    pub fn new(engine: Engine, budget: Budget) -> Self {
        Self { engine, budget }
    }

    pub fn achievable_boundaries(
        &self,
        graph: &MultiGraph,
        modulus: u32,
    ) -> Result<AchievableSet, FlowError> {
        if modulus < 3 {
            return Err(FlowError::Modulus(modulus));
        }
        let states = state_count(modulus, graph.order());
        if states > self.budget.max_states {
            return Err(FlowError::StateBudget {
                states,
                budget: self.budget.max_states,
            });
        }
        match self.engine {
            Engine::Sumset => Ok(sumset(graph, modulus)),
            Engine::GrayCode => {
                if graph.size() > self.budget.max_edges {
                    return Err(FlowError::EdgeBudget {
                        edges: graph.size(),
                        budget: self.budget.max_edges,
                    });
                }
                Ok(gray_enumerate(graph, modulus))
            }
        }
    }

    /// Group connectivity; disconnected graphs on two or more vertices are
    /// never group connected and K1 always is.
    pub fn is_group_connected(&self, graph: &MultiGraph, modulus: u32) -> Result<bool, FlowError> {
        if modulus < 3 {
            return Err(FlowError::Modulus(modulus));
        }
        if graph.order() <= 1 {
            return Ok(true);
        }
        if !graph.is_connected() || graph.min_degree() < 2 {
            // a vertex of degree one cannot absorb demand 0
            return Ok(false);
        }
        Ok(self.achievable_boundaries(graph, modulus)?.is_full())
    }

    pub fn has_nowhere_zero_flow(&self, graph: &MultiGraph, modulus: u32) -> Result<bool, FlowError> {
        if modulus < 3 {
            return Err(FlowError::Modulus(modulus));
        }
        if graph.size() == 0 {
            return Ok(true);
        }
        if graph.degrees().contains(&1) {
            return Ok(false);
        }
        Ok(self.achievable_boundaries(graph, modulus)?.contains_zero())
    }

    /// Whether some orientation has out-degree minus in-degree congruent to
    /// `demand` mod 3 at every vertex. Enumerates orientations directly.
    pub fn orientation_achieves(
        &self,
        graph: &MultiGraph,
        demand: &BoundaryDemand,
    ) -> Result<bool, FlowError> {
        self.check_orientation_input(graph, demand)?;
        let target: Vec<i64> = demand.values.iter().map(|&x| i64::from(x)).collect();
        let mut found = false;
        walk_orientations(graph, |excess| {
            if excess
                .iter()
                .zip(&target)
                .all(|(&e, &t)| (e - t).rem_euclid(3) == 0)
            {
                found = true;
                return false;
            }
            true
        });
        Ok(found)
    }

    /// Every demand mod 3 realised by some orientation.
    pub fn orientation_demands(&self, graph: &MultiGraph) -> Result<AchievableSet, FlowError> {
        self.check_orientation_input(graph, &BoundaryDemand::zero(3, graph.order()))?;
        let mut set = AchievableSet::empty(3, graph.order());
        let mut values = vec![0u32; graph.order()];
        walk_orientations(graph, |excess| {
            for (slot, &e) in values.iter_mut().zip(excess) {
                *slot = e.rem_euclid(3) as u32;
            }
            set.insert(encode(3, &values));
            true
        });
        Ok(set)
    }

    fn check_orientation_input(
        &self,
        graph: &MultiGraph,
        demand: &BoundaryDemand,
    ) -> Result<(), FlowError> {
        if demand.modulus != 3 {
            return Err(FlowError::Modulus(demand.modulus));
        }
        if demand.values.len() != graph.order() {
            return Err(FlowError::Length {
                what: "demand",
                found: demand.values.len(),
                expected: graph.order(),
            });
        }
        if graph.size() > self.budget.max_orientation_edges {
            return Err(FlowError::EdgeBudget {
                edges: graph.size(),
                budget: self.budget.max_orientation_edges,
            });
        }
        Ok(())
    }
}

pub fn achievable_boundaries(graph: &MultiGraph, modulus: u32) -> Result<AchievableSet, FlowError> {
    Oracle::default().achievable_boundaries(graph, modulus)
}

pub fn is_group_connected(graph: &MultiGraph, modulus: u32) -> Result<bool, FlowError> {
    Oracle::default().is_group_connected(graph, modulus)
}

pub fn has_nowhere_zero_flow(graph: &MultiGraph, modulus: u32) -> Result<bool, FlowError> {
    Oracle::default().has_nowhere_zero_flow(graph, modulus)
}

pub fn orientation_achieves(graph: &MultiGraph, demand: &BoundaryDemand) -> Result<bool, FlowError> {
    Oracle::default().orientation_achieves(graph, demand)
}

fn powers(modulus: u32, order: usize) -> Vec<u64> {
    // the last vertex is implied by the zero sum and has no digit
    let mut pow = vec![0u64; order];
    let mut p = 1u64;
    for slot in pow.iter_mut().take(order.saturating_sub(1)) {
        *slot = p;
        p *= u64::from(modulus);
    }
    pow
}

/// Add `delta` (mod k) to the digit of `vertex` inside `index`.
#[inline]
fn shift_digit(index: u64, vertex_pow: u64, modulus: u64, delta: u64) -> u64 {
    if vertex_pow == 0 {
        return index;
    }
    let digit = index / vertex_pow % modulus;
    let moved = (digit + delta) % modulus;
    index - digit * vertex_pow + moved * vertex_pow
}

fn sumset(graph: &MultiGraph, modulus: u32) -> AchievableSet {
    let n = graph.order();
    let k = u64::from(modulus);
    let pow = powers(modulus, n);
    let mut current = AchievableSet::empty(modulus, n);
    current.insert(0);
    let capacity = current.capacity();
    for &(tail, head) in graph.edges() {
        let mut next = AchievableSet::empty(modulus, n);
        for index in current.indices() {
            for x in 1..k {
                let moved = shift_digit(index, pow[tail], k, x);
                next.insert(shift_digit(moved, pow[head], k, k - x));
            }
        }
        current = next;
        if current.len() == capacity {
            // a full set stays full under any further sumset
            break;
        }
    }
    current
}

/// Edges whose values are fixed per parallel chunk.
const SPLIT_THRESHOLD: usize = 16;

fn gray_enumerate(graph: &MultiGraph, modulus: u32) -> AchievableSet {
    let m = graph.size();
    let split = if m >= SPLIT_THRESHOLD { 4.min(m) } else { 0 };
    let radix = (modulus - 1) as u64;
    let chunks = radix.pow(split as u32);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut prefix = Vec::with_capacity(split);
            let mut c = chunk;
            for _ in 0..split {
                prefix.push((c % radix) as u32 + 1);
                c /= radix;
            }
            gray_chunk(graph, modulus, &prefix)
        })
        .reduce(
            || AchievableSet::empty(modulus, graph.order()),
            |mut a, b| {
                a.union_with(&b);
                a
            },
        )
}

/// Enumerate all nowhere-zero values on edges `prefix.len()..m`, with the
/// first edges fixed to `prefix`, in reflected mixed-radix Gray order.
fn gray_chunk(graph: &MultiGraph, modulus: u32, prefix: &[u32]) -> AchievableSet {
    let n = graph.order();
    let k = u64::from(modulus);
    let pow = powers(modulus, n);
    let edges = graph.edges();
    let free = &edges[prefix.len()..];

    let mut index = 0u64;
    let apply = |index: u64, (tail, head): (usize, usize), x: u64| {
        let moved = shift_digit(index, pow[tail], k, x);
        shift_digit(moved, pow[head], k, k - x)
    };
    for (e, &x) in edges.iter().zip(prefix) {
        index = apply(index, *e, u64::from(x));
    }
    // every free edge starts at value 1
    for e in free {
        index = apply(index, *e, 1);
    }

    let mut set = AchievableSet::empty(modulus, n);
    let top = modulus - 2;
    let mut digit = vec![0u32; free.len()];
    let mut rising = vec![true; free.len()];
    loop {
        set.insert(index);
        let mut j = 0;
        while j < free.len()
            && ((rising[j] && digit[j] == top) || (!rising[j] && digit[j] == 0))
        {
            rising[j] = !rising[j];
            j += 1;
        }
        if j == free.len() {
            break;
        }
        let delta = if rising[j] {
            digit[j] += 1;
            1
        } else {
            digit[j] -= 1;
            k - 1
        };
        index = apply(index, free[j], delta);
    }
    set
}

/// Visit the out-minus-in degree vector of every orientation, flipping one
/// edge per step. The visitor returns `false` to stop.
fn walk_orientations(graph: &MultiGraph, mut visit: impl FnMut(&[i64]) -> bool) {
    let m = graph.size();
    let mut excess = vec![0i64; graph.order()];
    let mut forward = vec![true; m];
    for &(u, v) in graph.edges() {
        excess[u] += 1;
        excess[v] -= 1;
    }
    if !visit(&excess) {
        return;
    }
    let total: u64 = 1 << m;
    for step in 1..total {
        let e = step.trailing_zeros() as usize;
        let (u, v) = graph.edge(e);
        let sign = if forward[e] { 2 } else { -2 };
        excess[u] -= sign;
        excess[v] += sign;
        forward[e] = !forward[e];
        if !visit(&excess) {
            return;
        }
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Dsu, MultiGraph};

use super::ReductionError;

/// Largest order accepted by [`odd_wheel_decomposition`].
pub const MAX_DECOMPOSITION_ORDER: usize = 9;

/// Whether every two edges are linked by a chain of cycles of length at most
/// three, consecutive cycles sharing an edge.
///
/// Computed as connectivity of the graph on edges in which two edges are
/// adjacent when they lie on a common 2-cycle or triangle.
pub fn triangularly_connected(graph: &MultiGraph) -> bool {
    let m = graph.size();
    if m <= 1 {
        return true;
    }
    let n = graph.order();
    let mut dsu = Dsu::new(m);
    let mut first: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        match first[u][v] {
            Some(j) => {
                dsu.union(i, j);
            }
            None => {
                first[u][v] = Some(i);
                first[v][u] = Some(i);
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let Some(ab) = first[a][b] else { continue };
            for (bc, ac) in first[b].iter().zip(&first[a]).skip(b + 1) {
                if let (Some(bc), Some(ac)) = (*bc, *ac) {
                    dsu.union(ab, bc);
                    dsu.union(ab, ac);
                }
            }
        }
    }
    dsu.labels().iter().all(|&c| c == 0)
}

/// An odd wheel inside a 2-sum decomposition, in original vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelBlock {
    /// Rim length; 1 denotes a triangle.
    pub rim: usize,
    pub vertices: Vec<usize>,
}

impl fmt::Display for WheelBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}{:?}", self.rim, self.vertices)
    }
}

/// Rim length if `graph` is an odd wheel (a triangle counting as W1).
pub fn is_odd_wheel(graph: &MultiGraph) -> Option<usize> {
    let n = graph.order();
    if !graph.is_simple() || n < 3 {
        return None;
    }
    if n == 3 {
        return (graph.size() == 3).then_some(1);
    }
    let rim = n - 1;
    if rim.is_multiple_of(2) || graph.size() != 2 * rim {
        return None;
    }
    let degrees = graph.degrees();
    let hub = (0..n).find(|&v| degrees[v] == rim)?;
    let rest: Vec<usize> = (0..n).filter(|&v| v != hub).collect();
    let (cycle, _) = graph.induced(&rest);
    let is_cycle = cycle.degrees().iter().all(|&d| d == 2) && cycle.is_connected();
    is_cycle.then_some(rim)
}

/// Decompose a triangularly connected graph as iterated 2-sums of odd
/// wheels, or `None` if no such representation exists.
pub fn odd_wheel_decomposition(graph: &MultiGraph) -> Result<Option<Vec<WheelBlock>>, ReductionError> {
    if graph.order() > MAX_DECOMPOSITION_ORDER {
        return Err(ReductionError::SearchBudget {
            order: graph.order(),
            limit: MAX_DECOMPOSITION_ORDER,
        });
    }
    if !triangularly_connected(graph) {
        return Err(ReductionError::NotTriangularlyConnected);
    }
    let labels: Vec<usize> = (0..graph.order()).collect();
    Ok(decompose(graph, &labels))
}

fn decompose(graph: &MultiGraph, labels: &[usize]) -> Option<Vec<WheelBlock>> {
    if !graph.is_simple() {
        return None;
    }
    if let Some(rim) = is_odd_wheel(graph) {
        let degrees = graph.degrees();
        let hub = (0..graph.order())
            .find(|&v| rim == 1 || degrees[v] == rim)
            .expect("wheel hub");
        let mut vertices = vec![labels[hub]];
        vertices.extend(rim_order(graph, hub).into_iter().map(|v| labels[v]));
        return Some(vec![WheelBlock { rim, vertices }]);
    }
    let n = graph.order();
    for &(x, y) in graph.edges() {
        let others: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
        let (rest, _) = graph.induced(&others);
        let comp = rest.components();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        if count < 2 {
            continue;
        }
        // component 0 always sits on side A
        for mask in (1u32..1 << count).filter(|m| m & 1 == 1 && *m != (1 << count) - 1) {
            let side = |in_a: bool| -> Vec<usize> {
                let mut vs = vec![x, y];
                vs.extend(
                    others
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (mask >> comp[*i] & 1 == 1) == in_a)
                        .map(|(_, &v)| v),
                );
                vs
            };
            let (a, b) = (side(true), side(false));
            let (ga, _) = graph.induced(&a);
            let (gb, _) = graph.induced(&b);
            let la: Vec<usize> = a.iter().map(|&v| labels[v]).collect();
            let lb: Vec<usize> = b.iter().map(|&v| labels[v]).collect();
            if let Some(mut left) = decompose(&ga, &la) {
                if let Some(right) = decompose(&gb, &lb) {
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

fn rim_order(graph: &MultiGraph, hub: usize) -> Vec<usize> {
    let rest: Vec<usize> = (0..graph.order()).filter(|&v| v != hub).collect();
    let mut order = vec![rest[0]];
    while order.len() < rest.len() {
        let last = *order.last().expect("non-empty");
        let next = graph
            .neighbors(last)
            .into_iter()
            .find(|&w| w != hub && !order.contains(&w))
            .expect("rim continues");
        order.push(next);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{gen_family, FamilySpec};

    fn fam(spec: FamilySpec) -> MultiGraph {
        gen_family(&spec).unwrap()
    }

    #[test]
    fn triangular_connectivity_examples() {
        assert!(triangularly_connected(&fam(FamilySpec::Complete(4))));
        assert!(!triangularly_connected(&fam(FamilySpec::Cycle(4))));
        assert!(triangularly_connected(&fam(FamilySpec::Wheel(5))));
        assert!(triangularly_connected(&fam(FamilySpec::Cycle(2))));
        // two triangles sharing a vertex only
        let bowtie = MultiGraph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!triangularly_connected(&bowtie));
    }

    #[test]
    fn decomposition_examples() {
        let k4 = odd_wheel_decomposition(&fam(FamilySpec::Complete(4))).unwrap().unwrap();
        assert_eq!(k4.len(), 1);
        assert_eq!(k4[0].rim, 3);

        let k4m = fam(FamilySpec::two_sum(FamilySpec::Complete(3), FamilySpec::Complete(3)));
        let blocks = odd_wheel_decomposition(&k4m).unwrap().unwrap();
        assert_eq!(blocks.iter().map(|b| b.rim).collect::<Vec<_>>(), vec![1, 1]);

        assert_eq!(odd_wheel_decomposition(&fam(FamilySpec::Wheel(4))).unwrap(), None);

        let w5_w3 = fam(FamilySpec::two_sum(FamilySpec::Wheel(5), FamilySpec::Wheel(3)));
        let blocks = odd_wheel_decomposition(&w5_w3).unwrap().unwrap();
        let mut rims: Vec<usize> = blocks.iter().map(|b| b.rim).collect();
        rims.sort_unstable();
        assert_eq!(rims, vec![3, 5]);
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            odd_wheel_decomposition(&fam(FamilySpec::Cycle(4))),
            Err(ReductionError::NotTriangularlyConnected)
        );
        assert!(matches!(
            odd_wheel_decomposition(&fam(FamilySpec::Complete(10))),
            Err(ReductionError::SearchBudget { .. })
        ));
    }

    #[test]
    fn odd_wheels() {
        assert_eq!(is_odd_wheel(&fam(FamilySpec::Wheel(5))), Some(5));
        assert_eq!(is_odd_wheel(&fam(FamilySpec::Wheel(1))), Some(1));
        assert_eq!(is_odd_wheel(&fam(FamilySpec::Wheel(4))), None);
        assert_eq!(is_odd_wheel(&fam(FamilySpec::CompleteMinusEdge(4))), None);
    }
}

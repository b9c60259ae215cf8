use crate::graph::MultiGraph;

use super::Pattern;

/// Pattern kinds present-able in a graph of this order, by edge count.
fn kinds(order: usize) -> Vec<Pattern> {
    let mut out = vec![Pattern::TwoCycle];
    if order >= 5 {
        out.push(Pattern::K5Minus);
        out.push(Pattern::K5);
    }
    out.extend((2..).map(|t| 2 * t).take_while(|&k| k < order).map(Pattern::EvenWheel));
    out.sort_by_key(|p| p.edge_count());
    out
}

/// Smallest certified pattern subgraph: fewest edges first, then the
/// lexicographically smallest sorted edge-index list.
pub fn find_contractible_subgraph(graph: &MultiGraph) -> Option<(Vec<usize>, Pattern)> {
    kinds(graph.order()).into_iter().find_map(|pattern| {
        pattern_instances(graph, pattern)
            .into_iter()
            .min()
            .map(|edges| (edges, pattern))
    })
}

/// Every occurrence of `pattern` as a subgraph, as sorted edge-index lists.
/// Parallel edges are represented by their lowest index, except in the
/// 2-cycle case.
pub fn pattern_instances(graph: &MultiGraph, pattern: Pattern) -> Vec<Vec<usize>> {
    match pattern {
        Pattern::TwoCycle => two_cycles(graph),
        Pattern::K5 | Pattern::K5Minus => five_cliques(graph, pattern == Pattern::K5Minus),
        Pattern::EvenWheel(k) if k >= 4 && k % 2 == 0 => wheels(graph, k),
        _ => Vec::new(),
    }
}

fn first_edges(graph: &MultiGraph) -> Vec<Vec<Option<usize>>> {
    let n = graph.order();
    let mut first = vec![vec![None; n]; n];
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        if first[u][v].is_none() {
            first[u][v] = Some(i);
            first[v][u] = Some(i);
        }
    }
    first
}

fn two_cycles(graph: &MultiGraph) -> Vec<Vec<usize>> {
    let n = graph.order();
    let mut seen: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        seen[u][v].push(i);
    }
    let mut out = Vec::new();
    for row in seen {
        for list in row {
            if list.len() >= 2 {
                out.push(vec![list[0], list[1]]);
            }
        }
    }
    out
}

fn five_cliques(graph: &MultiGraph, minus: bool) -> Vec<Vec<usize>> {
    let n = graph.order();
    let first = first_edges(graph);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(5);
    fn rec(
        start: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        first: &[Vec<Option<usize>>],
        minus: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == 5 {
            let mut present = Vec::new();
            let mut missing = 0;
            for a in 0..5 {
                for b in a + 1..5 {
                    match first[chosen[a]][chosen[b]] {
                        Some(e) => present.push(e),
                        None => missing += 1,
                    }
                }
            }
            present.sort_unstable();
            match (minus, missing) {
                (false, 0) => out.push(present),
                (true, 1) => out.push(present),
                (true, 0) => {
                    for drop in 0..present.len() {
                        let mut e = present.clone();
                        e.remove(drop);
                        out.push(e);
                    }
                }
                _ => {}
            }
            return;
        }
        for v in start..n {
            // prune: at most one missing pair in the whole set
            let missing: usize = chosen.iter().filter(|&&u| first[u][v].is_none()).count();
            if missing > usize::from(minus) {
                continue;
            }
            chosen.push(v);
            rec(v + 1, n, chosen, first, minus, out);
            chosen.pop();
        }
    }
    rec(0, n, &mut chosen, &first, minus, &mut out);
    out
}

fn wheels(graph: &MultiGraph, rim: usize) -> Vec<Vec<usize>> {
    let n = graph.order();
    let first = first_edges(graph);
    let masks = graph.neighbor_masks();
    let mut out = Vec::new();
    for hub in 0..n {
        let allowed = masks[hub];
        if (allowed.count_ones() as usize) < rim {
            continue;
        }
        for start in 0..n {
            if allowed >> start & 1 == 0 {
                continue;
            }
            // rim vertices other than `start` must exceed it
            let pool = allowed & !((1u64 << (start + 1)) - 1);
            let mut path = vec![start];
            extend_cycles(&masks, pool, rim, &mut path, &mut |cycle| {
                let mut edges: Vec<usize> = cycle
                    .iter()
                    .map(|&r| first[hub][r].expect("spoke"))
                    .collect();
                for i in 0..rim {
                    let (a, b) = (cycle[i], cycle[(i + 1) % rim]);
                    edges.push(first[a][b].expect("rim edge"));
                }
                edges.sort_unstable();
                out.push(edges);
            });
        }
    }
    out
}

fn extend_cycles(
    masks: &[u64],
    pool: u64,
    length: usize,
    path: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let last = *path.last().expect("non-empty path");
    if path.len() == length {
        if masks[last] >> path[0] & 1 == 1 && path[1] < last {
            emit(path);
        }
        return;
    }
    let mut candidates = masks[last] & pool;
    for &p in path.iter() {
        candidates &= !(1u64 << p);
    }
    while candidates != 0 {
        let next = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        path.push(next);
        extend_cycles(masks, pool, length, path, emit);
        path.pop();
    }
}

//! The contraction and lifting calculus for Z_3-connectivity.
//!
//! Contracting a Z_3-connected subgraph preserves Z_3-connectivity in both
//! directions, so a sequence of certified contractions ending at K1 is a
//! certificate of Z_3-connectivity. A [`ReductionTrace`] records such a
//! sequence in replayable form.

mod closure;
mod lift;
mod patterns;
mod search;
mod triangular;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::are_isomorphic;
use crate::family::{gen_family, FamilySpec};
use crate::flow::{FlowError, Oracle};
use crate::graph::{GraphError, MultiGraph};

pub use closure::attach_vertex_closure;
pub use lift::lift;
pub use patterns::{find_contractible_subgraph, pattern_instances};
pub use search::{
    certified_vertex_sets, contracts_to, exact_k4_contraction, SearchBudget, Target,
    DEFAULT_MAX_SEARCH_ORDER, MAX_PARTITION_ORDER,
};
pub use triangular::{odd_wheel_decomposition, is_odd_wheel, triangularly_connected, WheelBlock, MAX_DECOMPOSITION_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("lift at {u}: {reason}")]
    Lift { u: usize, reason: String },
    #[error("contraction step {step} is not certified: {reason}")]
    Uncertified { step: usize, reason: String },
    #[error("seed subgraph is not Z_3-connected")]
    UncertifiedSeed,
    #[error("replay ended at {found}, trace claims {claimed}")]
    ReplayMismatch { found: String, claimed: String },
    #[error("search order {order} exceeds the budget of {limit}")]
    SearchBudget { order: usize, limit: usize },
    #[error("graph is not triangularly connected")]
    NotTriangularlyConnected,
    #[error("cannot parse trace line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// Certified Z_3-connected subgraph shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    TwoCycle,
    /// Even wheel with the given rim length.
    EvenWheel(usize),
    K5,
    K5Minus,
    /// Z_3-connectivity confirmed by the flow oracle.
    OracleVerified,
}

impl Pattern {
    /// Edge count of the pattern; `None` for oracle-verified subgraphs.
    pub fn edge_count(self) -> Option<usize> {
        match self {
            Pattern::TwoCycle => Some(2),
            Pattern::EvenWheel(k) => Some(2 * k),
            Pattern::K5 => Some(10),
            Pattern::K5Minus => Some(9),
            Pattern::OracleVerified => None,
        }
    }

    fn shape(self) -> Option<MultiGraph> {
        let spec = match self {
            Pattern::TwoCycle => FamilySpec::Cycle(2),
            Pattern::EvenWheel(k) => FamilySpec::Wheel(k),
            Pattern::K5 => FamilySpec::Complete(5),
            Pattern::K5Minus => FamilySpec::CompleteMinusEdge(5),
            Pattern::OracleVerified => return None,
        };
        Some(gen_family(&spec).expect("pattern shapes are valid"))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::TwoCycle => f.write_str("2-cycle"),
            Pattern::EvenWheel(k) => write!(f, "even-wheel:{k}"),
            Pattern::K5 => f.write_str("K5"),
            Pattern::K5Minus => f.write_str("K5-"),
            Pattern::OracleVerified => f.write_str("oracle-verified"),
        }
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2-cycle" => Ok(Pattern::TwoCycle),
            "K5" => Ok(Pattern::K5),
            "K5-" => Ok(Pattern::K5Minus),
            "oracle-verified" => Ok(Pattern::OracleVerified),
            _ => s
                .strip_prefix("even-wheel:")
                .and_then(|k| k.parse().ok())
                .filter(|k| k % 2 == 0 && *k >= 2)
                .map(Pattern::EvenWheel)
                .ok_or_else(|| format!("unknown pattern `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionStep {
    /// Contract these edges (indices into the current graph).
    Contract { edges: Vec<usize>, pattern: Pattern },
    /// Replace edges uv and uw by vw.
    Lift { u: usize, v: usize, w: usize },
}

impl ReductionStep {
    pub fn apply(&self, graph: &MultiGraph) -> Result<MultiGraph, ReductionError> {
        match self {
            ReductionStep::Contract { edges, .. } => Ok(graph.contract_edges(edges)?.graph),
            ReductionStep::Lift { u, v, w } => lift(graph, *u, *v, *w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub initial: MultiGraph,
    pub steps: Vec<ReductionStep>,
    pub terminal: MultiGraph,
}

impl ReductionTrace {
    pub fn empty(graph: MultiGraph) -> Self {
        Self {
            initial: graph.clone(),
            steps: Vec::new(),
            terminal: graph,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: ReductionStep) -> Result<(), ReductionError> {
        self.terminal = step.apply(&self.terminal)?;
        self.steps.push(step);
        Ok(())
    }

    /// Append the steps of `tail`, which must start where `self` ends.
    pub fn extend(&mut self, tail: ReductionTrace) {
        assert_eq!(tail.initial, self.terminal, "traces must chain");
        self.steps.extend(tail.steps);
        self.terminal = tail.terminal;
    }

    pub fn ends_at_k1(&self) -> bool {
        self.terminal.order() == 1
    }

    /// Replay the steps from the initial graph.
    pub fn replay(&self) -> Result<MultiGraph, ReductionError> {
        self.steps
            .iter()
            .try_fold(self.initial.clone(), |g, step| step.apply(&g))
    }

    /// Replay and check every contraction is certified: pattern steps must
    /// match their shape, every contracted subgraph must pass the oracle, and
    /// the replay must end at the recorded terminal graph.
    pub fn verify(&self, oracle: &Oracle) -> Result<(), ReductionError> {
        let mut graph = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if let ReductionStep::Contract { edges, pattern } = step {
                let (sub, _) = graph.edge_subgraph(edges)?;
                if let Some(shape) = pattern.shape() {
                    if !are_isomorphic(&sub, &shape) {
                        return Err(ReductionError::Uncertified {
                            step: i,
                            reason: format!("edges do not form {pattern}"),
                        });
                    }
                }
                if !oracle.is_group_connected(&sub, 3)? {
                    return Err(ReductionError::Uncertified {
                        step: i,
                        reason: "oracle rejects the subgraph".into(),
                    });
                }
            }
            graph = step.apply(&graph)?;
        }
        if graph != self.terminal {
            return Err(ReductionError::ReplayMismatch {
                found: graph.to_string(),
                claimed: self.terminal.to_string(),
            });
        }
        Ok(())
    }

    /// TSV form: `initial`, one line per step, `terminal`.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("initial\t{}\n", self.initial);
        for step in &self.steps {
            match step {
                ReductionStep::Contract { edges, pattern } => {
                    let list: Vec<String> = edges.iter().map(usize::to_string).collect();
                    out.push_str(&format!("contract\t{pattern}\t{}\n", list.join(",")));
                }
                ReductionStep::Lift { u, v, w } => {
                    out.push_str(&format!("lift\t{u},{v},{w}\n"));
                }
            }
        }
        out.push_str(&format!("terminal\t{}\n", self.terminal));
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, ReductionError> {
        let mut initial = None;
        let mut terminal = None;
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let line_no = i + 1;
            let err = |reason: String| ReductionError::Parse {
                line: line_no,
                reason,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                ["initial", g] => initial = Some(g.parse::<MultiGraph>()?),
                ["terminal", g] => terminal = Some(g.parse::<MultiGraph>()?),
                ["contract", pattern, list] => {
                    let pattern = pattern.parse::<Pattern>().map_err(err)?;
                    let edges = parse_list(list).map_err(err)?;
                    steps.push(ReductionStep::Contract { edges, pattern });
                }
                ["lift", list] => match parse_list(list).map_err(err)?.as_slice() {
                    &[u, v, w] => steps.push(ReductionStep::Lift { u, v, w }),
                    _ => return Err(err("lift needs three vertices".into())),
                },
                _ => return Err(err(format!("unrecognised line `{line}`"))),
            }
        }
        let missing = |what: &str| ReductionError::Parse {
            line: 0,
            reason: format!("missing {what} line"),
        };
        Ok(Self {
            initial: initial.ok_or_else(|| missing("initial"))?,
            steps,
            terminal: terminal.ok_or_else(|| missing("terminal"))?,
        })
    }

    /// JSON-lines records: one per line, initial first, terminal last.
    pub fn records(&self) -> Vec<TraceRecord> {
        let mut out = vec![TraceRecord::Initial {
            graph: self.initial.to_string(),
        }];
        out.extend(self.steps.iter().map(|step| match step {
            ReductionStep::Contract { edges, pattern } => TraceRecord::Contract {
                pattern: pattern.to_string(),
                edges: edges.clone(),
            },
            ReductionStep::Lift { u, v, w } => TraceRecord::Lift {
                u: *u,
                v: *v,
                w: *w,
            },
        }));
        out.push(TraceRecord::Terminal {
            graph: self.terminal.to_string(),
        });
        out
    }

    pub fn from_records(records: &[TraceRecord]) -> Result<Self, ReductionError> {
        let mut text = String::new();
        for r in records {
            match r {
                TraceRecord::Initial { graph } => text.push_str(&format!("initial\t{graph}\n")),
                TraceRecord::Terminal { graph } => text.push_str(&format!("terminal\t{graph}\n")),
                TraceRecord::Contract { pattern, edges } => {
                    let list: Vec<String> = edges.iter().map(usize::to_string).collect();
                    text.push_str(&format!("contract\t{pattern}\t{}\n", list.join(",")));
                }
                TraceRecord::Lift { u, v, w } => text.push_str(&format!("lift\t{u},{v},{w}\n")),
            }
        }
        Self::from_tsv(&text)
    }
}

/// One line of the JSON-lines trace form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TraceRecord {
    Initial { graph: String },
    Contract { pattern: String, edges: Vec<usize> },
    Lift { u: usize, v: usize, w: usize },
    Terminal { graph: String },
}

fn parse_list(list: &str) -> Result<Vec<usize>, String> {
    list.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad index `{t}`")))
        .collect()
}

/// Contract pattern subgraphs until none remain. Lifts are never applied.
pub fn reduce_greedy(graph: &MultiGraph) -> ReductionTrace {
    let mut trace = ReductionTrace::empty(graph.clone());
    while let Some((edges, pattern)) = find_contractible_subgraph(&trace.terminal) {
        trace
            .push(ReductionStep::Contract { edges, pattern })
            .expect("pattern edges are in range");
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(spec: FamilySpec) -> MultiGraph {
        gen_family(&spec).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let w4 = reduce_greedy(&fam(FamilySpec::Wheel(4)));
        assert!(w4.ends_at_k1());
        assert_eq!(w4.len(), 1);
        w4.verify(&Oracle::default()).unwrap();

        let k4 = reduce_greedy(&fam(FamilySpec::Complete(4)));
        assert!(k4.is_empty());
        assert_eq!(k4.terminal, fam(FamilySpec::Complete(4)));

        let tri = MultiGraph::new(3, &[(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap();
        let t = reduce_greedy(&tri);
        assert_eq!(t.len(), 2);
        assert!(matches!(
            t.steps[0],
            ReductionStep::Contract {
                pattern: Pattern::TwoCycle,
                ..
            }
        ));
        assert!(t.ends_at_k1());
        t.verify(&Oracle::default()).unwrap();
    }

    #[test]
    fn trace_text_round_trip() {
        let mut trace = ReductionTrace::empty(fam(FamilySpec::Complete(6)));
        trace.push(ReductionStep::Lift { u: 0, v: 1, w: 2 }).unwrap();
        trace.extend(reduce_greedy(&trace.terminal.clone()));
        let text = trace.to_tsv();
        assert_eq!(ReductionTrace::from_tsv(&text).unwrap(), trace);
        assert_eq!(ReductionTrace::from_records(&trace.records()).unwrap(), trace);
        let json: Vec<String> = trace
            .records()
            .iter()
            .map(|r| serde_json::to_string(r).unwrap())
            .collect();
        assert!(json[0].starts_with(r#"{"kind":"initial""#));
        let back: Vec<TraceRecord> = json
            .iter()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(ReductionTrace::from_records(&back).unwrap(), trace);
        trace.verify(&Oracle::default()).unwrap();
    }

    #[test]
    fn verify_catches_forgeries() {
        let k4 = fam(FamilySpec::Complete(4));
        let mut forged = ReductionTrace::empty(k4.clone());
        forged
            .push(ReductionStep::Contract {
                edges: (0..6).collect(),
                pattern: Pattern::OracleVerified,
            })
            .unwrap();
        assert!(matches!(
            forged.verify(&Oracle::default()),
            Err(ReductionError::Uncertified { step: 0, .. })
        ));

        let mut mislabeled = ReductionTrace::empty(fam(FamilySpec::Complete(5)));
        mislabeled
            .push(ReductionStep::Contract {
                edges: (0..10).collect(),
                pattern: Pattern::TwoCycle,
            })
            .unwrap();
        assert!(mislabeled.verify(&Oracle::default()).is_err());

        let mut wrong_end = reduce_greedy(&fam(FamilySpec::Wheel(4)));
        wrong_end.terminal = k4;
        assert!(matches!(
            wrong_end.verify(&Oracle::default()),
            Err(ReductionError::ReplayMismatch { .. })
        ));
    }

    #[test]
    fn pattern_names_round_trip() {
        for p in [
            Pattern::TwoCycle,
            Pattern::EvenWheel(6),
            Pattern::K5,
            Pattern::K5Minus,
            Pattern::OracleVerified,
        ] {
            assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
        }
        assert!("even-wheel:3".parse::<Pattern>().is_err());
    }
}

//! Three-way classification of 3-edge-connected simple graphs with
//! independence number at most two, and the nowhere-zero 3-flow predicate
//! for bridgeless graphs of independence number at most two.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Catalog;
use crate::flow::{FlowError, Oracle};
use crate::graph::MultiGraph;
use crate::graph6::encode_graph6;
use crate::reduction::{
    contracts_to, exact_k4_contraction, reduce_greedy, ReductionError, ReductionTrace,
    SearchBudget, Target, TraceRecord,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph is not simple")]
    NotSimple,
    #[error("graph is only {0}-edge-connected")]
    EdgeConnectivity(u32),
    #[error("independence number {0} exceeds two")]
    Independence(usize),
    #[error("graph has a bridge")]
    Bridge,
    #[error("{0} reaches neither K1 nor K4 and is not in the catalog")]
    SoundnessAlarm(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Z3Connected(ReductionTrace),
    ContractsToK4(ReductionTrace),
    Exceptional(String),
}

/// Outcome without its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeClass {
    Z3Connected,
    ContractsToK4,
    Exceptional,
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeClass::Z3Connected => "z3-connected",
            OutcomeClass::ContractsToK4 => "contracts-to-k4",
            OutcomeClass::Exceptional => "exceptional",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Set only for K4, which is both an exceptional graph and a K4 terminal.
    pub k4_special: bool,
}

impl Verdict {
    pub fn class(&self) -> OutcomeClass {
        match self.outcome {
            Outcome::Z3Connected(_) => OutcomeClass::Z3Connected,
            Outcome::ContractsToK4(_) => OutcomeClass::ContractsToK4,
            Outcome::Exceptional(_) => OutcomeClass::Exceptional,
        }
    }

    pub fn trace(&self) -> Option<&ReductionTrace> {
        match &self.outcome {
            Outcome::Z3Connected(t) | Outcome::ContractsToK4(t) => Some(t),
            Outcome::Exceptional(_) => None,
        }
    }

    /// Replay and re-certify the trace, if any.
    pub fn verify(&self, oracle: &Oracle) -> Result<(), ReductionError> {
        match self.trace() {
            Some(t) => t.verify(oracle),
            None => Ok(()),
        }
    }

    /// `graph6 <TAB> outcome <TAB> certificate`
    pub fn tsv_line(&self, graph6: &str) -> String {
        let certificate = match &self.outcome {
            Outcome::Exceptional(name) if self.k4_special => format!("catalog:{name},k4-special"),
            Outcome::Exceptional(name) => format!("catalog:{name}"),
            Outcome::Z3Connected(t) | Outcome::ContractsToK4(t) => {
                format!("trace:{}-steps", t.len())
            }
        };
        format!("{graph6}\t{}\t{certificate}", self.class())
    }

    pub fn record(&self, graph6: &str) -> VerdictRecord {
        VerdictRecord {
            graph6: graph6.to_owned(),
            outcome: self.class(),
            name: match &self.outcome {
                Outcome::Exceptional(name) => Some(name.clone()),
                _ => None,
            },
            k4_special: self.k4_special,
            trace: self.trace().map(ReductionTrace::records),
        }
    }
}

/// JSON-lines form of a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub graph6: String,
    pub outcome: OutcomeClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub k4_special: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRecord>>,
}

/// Check that `graph` is simple, 3-edge-connected and has independence
/// number at most two.
pub fn check_hypothesis(graph: &MultiGraph) -> Result<(), ClassifyError> {
    if !graph.is_simple() {
        return Err(ClassifyError::NotSimple);
    }
    let ec = graph.edge_connectivity();
    if ec < 3 {
        return Err(ClassifyError::EdgeConnectivity(ec));
    }
    if !graph.alpha_le_2() {
        return Err(ClassifyError::Independence(graph.independence_number()));
    }
    Ok(())
}

/// Catalog lookup, then greedy pattern contraction, then exhaustive search
/// from the greedy terminal and, for K4, from the input itself.
pub fn classify(
    graph: &MultiGraph,
    catalog: &Catalog,
    oracle: &Oracle,
    budget: SearchBudget,
) -> Result<Verdict, ClassifyError> {
    check_hypothesis(graph)?;
    if let Some(entry) = catalog.match_exception(graph) {
        return Ok(Verdict {
            outcome: Outcome::Exceptional(entry.name.clone()),
            k4_special: entry.flags.k4_special,
        });
    }
    let verdict = |outcome| Verdict {
        outcome,
        k4_special: false,
    };

    let greedy = reduce_greedy(graph);
    if greedy.ends_at_k1() {
        return Ok(verdict(Outcome::Z3Connected(greedy)));
    }
    let terminal = greedy.terminal.clone();
    if let Some(rest) = contracts_to(&terminal, Target::K1, oracle, budget)? {
        let mut trace = greedy;
        trace.extend(rest);
        return Ok(verdict(Outcome::Z3Connected(trace)));
    }
    if let Some(rest) = contracts_to(&terminal, Target::K4, oracle, budget)? {
        let mut trace = greedy;
        trace.extend(rest);
        return Ok(verdict(Outcome::ContractsToK4(trace)));
    }
    if !greedy.is_empty() {
        if let Some(trace) = contracts_to(graph, Target::K4, oracle, budget)? {
            return Ok(verdict(Outcome::ContractsToK4(trace)));
        }
    }
    Err(ClassifyError::SoundnessAlarm(
        encode_graph6(graph).unwrap_or_else(|_| graph.to_string()),
    ))
}

/// Nowhere-zero 3-flow prediction for bridgeless graphs of independence
/// number at most two: false exactly when the graph contracts to exactly K4
/// along four connected blocks, or is one of the catalog entries flagged as
/// flow exceptions.
pub fn predict_nz3(graph: &MultiGraph, catalog: &Catalog) -> Result<bool, ClassifyError> {
    let ec = graph.edge_connectivity();
    if graph.order() > 1 && ec < 2 {
        return Err(ClassifyError::Bridge);
    }
    if !graph.alpha_le_2() {
        return Err(ClassifyError::Independence(graph.independence_number()));
    }
    if exact_k4_contraction(graph)?.is_some() {
        return Ok(false);
    }
    let exception = catalog
        .match_exception(graph)
        .is_some_and(|e| e.flags.nz3_exception);
    Ok(!exception)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{enumerate_census, CensusConstraints};
    use crate::family::{gen_family, FamilySpec};

    fn fam(spec: FamilySpec) -> MultiGraph {
        gen_family(&spec).unwrap()
    }

    fn run(g: &MultiGraph) -> Verdict {
        classify(
            g,
            &Catalog::builtin_unverified(),
            &Oracle::default(),
            SearchBudget::default(),
        )
        .unwrap()
    }

    #[test]
    fn k4_is_g1_with_flag() {
        let v = run(&fam(FamilySpec::Complete(4)));
        assert_eq!(v.outcome, Outcome::Exceptional("G1".into()));
        assert!(v.k4_special);
        assert_eq!(v.tsv_line("C~"), "C~\texceptional\tcatalog:G1,k4-special");
    }

    #[test]
    fn five_vertex_members_are_z3_connected() {
        let catalog = Catalog::builtin_unverified();
        let members = enumerate_census(5, CensusConstraints::CLASSIFIABLE).unwrap();
        assert!(!members.is_empty());
        for c in members {
            let v = classify(&c.graph, &catalog, &Oracle::default(), SearchBudget::default()).unwrap();
            assert_eq!(v.class(), OutcomeClass::Z3Connected);
            v.verify(&Oracle::default()).unwrap();
        }
    }

    #[test]
    fn k6_is_z3_connected() {
        let v = run(&fam(FamilySpec::Complete(6)));
        assert_eq!(v.class(), OutcomeClass::Z3Connected);
        assert!(v.trace().unwrap().ends_at_k1());
        v.verify(&Oracle::default()).unwrap();
    }

    #[test]
    fn hypothesis_is_enforced() {
        let catalog = Catalog::builtin_unverified();
        let o = Oracle::default();
        let b = SearchBudget::default();
        let doubled = MultiGraph::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(classify(&doubled, &catalog, &o, b), Err(ClassifyError::NotSimple));
        let c5 = fam(FamilySpec::Cycle(5));
        assert_eq!(classify(&c5, &catalog, &o, b), Err(ClassifyError::EdgeConnectivity(2)));
        let k33 = fam(FamilySpec::CompleteBipartite(3, 3));
        assert_eq!(classify(&k33, &catalog, &o, b), Err(ClassifyError::Independence(3)));
    }

    #[test]
    fn flow_predictions() {
        let catalog = Catalog::builtin_unverified();
        assert!(!predict_nz3(&fam(FamilySpec::Complete(4)), &catalog).unwrap());
        assert!(!predict_nz3(&catalog.get("G18").unwrap().graph, &catalog).unwrap());
        assert!(predict_nz3(&fam(FamilySpec::Wheel(4)), &catalog).unwrap());
        let path = fam(FamilySpec::Complete(2));
        assert_eq!(predict_nz3(&path, &catalog), Err(ClassifyError::Bridge));
    }

    #[test]
    fn serialization() {
        let v = run(&fam(FamilySpec::Complete(5)));
        let line = v.tsv_line("D~{");
        assert!(line.starts_with("D~{\tz3-connected\ttrace:"));
        let json = serde_json::to_string(&v.record("D~{")).unwrap();
        let back: VerdictRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.outcome, OutcomeClass::Z3Connected);
        let trace = ReductionTrace::from_records(&back.trace.unwrap()).unwrap();
        assert!(trace.ends_at_k1());
    }
}

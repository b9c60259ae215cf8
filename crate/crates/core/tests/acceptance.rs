//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use zconn_core::catalog::{derive_exception_set, derive_ore_subcatalog, verify_catalog, Catalog};
use zconn_core::census::census_range;
use zconn_core::classifier::OutcomeClass;
use zconn_core::reduction::{attach_vertex_closure, certified_vertex_sets, lift, SearchBudget};
use zconn_core::{
    canonical_form, classify, gen_family, predict_nz3, BoundaryDemand, CensusConstraints,
    FamilySpec, MultiGraph, Oracle,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 small-family verdicts", small_families),
        ("2 orientations match flow values", orientation_equivalence),
        ("3 derived exceptional set", derived_exceptions),
        ("4 census classification", census_classification),
        ("5 nowhere-zero 3-flow prediction", flow_prediction),
        ("6 Ore sub-catalog", ore_subcatalog),
        ("7 reduction calculus properties", reduction_properties),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {name}  ({secs:.1}s)  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}  ({secs:.1}s)  {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn fam(spec: FamilySpec) -> MultiGraph {
    gen_family(&spec).expect("valid family")
}

fn z3(g: &MultiGraph) -> bool {
    Oracle::default().is_group_connected(g, 3).expect("within budget")
}

fn small_families() -> Outcome {
    use FamilySpec::*;
    let mut cases: Vec<(String, MultiGraph, u32, bool)> = vec![
        ("K1".into(), fam(Complete(1)), 3, true),
        ("K5".into(), fam(Complete(5)), 3, true),
        ("K5-".into(), fam(CompleteMinusEdge(5)), 3, true),
        ("K6".into(), fam(Complete(6)), 3, true),
        ("K6-".into(), fam(CompleteMinusEdge(6)), 3, true),
        ("C2".into(), fam(Cycle(2)), 3, true),
        ("C3".into(), fam(Cycle(3)), 3, false),
        ("C4".into(), fam(Cycle(4)), 3, false),
    ];
    for n in 2..=5 {
        for k in 3..=6u32 {
            cases.push((format!("C{n}/Z{k}"), fam(Cycle(n)), k, k as usize > n));
        }
    }
    for r in 2..=7 {
        cases.push((format!("W{r}"), fam(Wheel(r)), 3, r % 2 == 0));
    }
    for (a, b, expect) in [(2, 2, false), (2, 3, false), (3, 3, false), (3, 4, false), (4, 4, true)] {
        cases.push((format!("K{a},{b}"), fam(CompleteBipartite(a, b)), 3, expect));
    }
    let oracle = Oracle::default();
    let wrong: Vec<String> = cases
        .iter()
        .filter(|(_, g, k, expect)| oracle.is_group_connected(g, *k) != Ok(*expect))
        .map(|(name, ..)| name.clone())
        .collect();
    if wrong.is_empty() {
        Ok(format!("{} verdicts exact", cases.len()))
    } else {
        Err(format!("wrong verdicts: {}", wrong.join(", ")))
    }
}

fn orientation_equivalence() -> Outcome {
    let oracle = Oracle::default();
    let graphs: Vec<MultiGraph> = census_range(1..=5, CensusConstraints::CONNECTED)
        .map_err(|e| e.to_string())?
        .into_iter()
        .flatten()
        .map(|c| c.graph)
        .collect();
    let mismatches: usize = graphs
        .par_iter()
        .map(|g| {
            let values = oracle.achievable_boundaries(g, 3).expect("budget");
            BoundaryDemand::all(3, g.order())
                .filter(|b| oracle.orientation_achieves(g, b).expect("budget") != values.contains(b))
                .count()
        })
        .sum();
    let demands: usize = graphs.iter().map(|g| 3usize.pow(g.order() as u32 - 1)).sum();
    if mismatches == 0 {
        Ok(format!("{} graphs, {demands} demands, 0 mismatches", graphs.len()))
    } else {
        Err(format!("{mismatches} mismatches"))
    }
}

fn derived_exceptions() -> Outcome {
    let oracle = Oracle::default();
    let derived = derive_exception_set(4..=8, &oracle, SearchBudget::default())
        .map_err(|e| e.to_string())?;
    let catalog = Catalog::builtin_unverified();
    let mut problems = Vec::new();
    if derived.len() != 18 {
        problems.push(format!("{} classes derived", derived.len()));
    }
    let mut profile = BTreeMap::new();
    for f in &derived {
        *profile.entry(f.order()).or_insert(0usize) += 1;
        if z3(&f.to_graph()) {
            problems.push(format!("{f} is Z3-connected"));
        }
    }
    let expected: BTreeMap<usize, usize> = [(4, 1), (6, 4), (7, 8), (8, 5)].into();
    if profile != expected {
        problems.push(format!("order profile {profile:?}"));
    }
    if derived != catalog.forms() {
        problems.push("derived set differs from the shipped table".into());
    }
    let report = verify_catalog(catalog.entries(), &oracle);
    problems.extend(report.failures());
    if problems.is_empty() {
        Ok(format!(
            "18 classes, profile {profile:?}, {} catalog checks pass",
            report.checks.len()
        ))
    } else {
        Err(problems.join("; "))
    }
}

fn classifiable_graphs() -> Vec<MultiGraph> {
    census_range(4..=8, CensusConstraints::CLASSIFIABLE)
        .expect("within budget")
        .into_iter()
        .flatten()
        .map(|c| c.graph)
        .collect()
}

fn census_classification() -> Outcome {
    let oracle = Oracle::default();
    let catalog = Catalog::load_verified(&oracle).map_err(|e| e.to_string())?;
    let forms = catalog.forms();
    let graphs = classifiable_graphs();
    let results: Vec<Result<OutcomeClass, String>> = graphs
        .par_iter()
        .map(|g| {
            let v = classify(g, &catalog, &oracle, SearchBudget::default()).map_err(|e| e.to_string())?;
            v.verify(&oracle).map_err(|e| format!("{g}: {e}"))?;
            let agrees = match v.class() {
                OutcomeClass::Z3Connected => z3(g),
                OutcomeClass::Exceptional => forms.contains(&canonical_form(g)),
                OutcomeClass::ContractsToK4 => !z3(g) && !forms.contains(&canonical_form(g)),
            };
            if agrees {
                Ok(v.class())
            } else {
                Err(format!("{g}: {} disagrees with the oracle", v.class()))
            }
        })
        .collect();
    let mut counts: BTreeMap<OutcomeClass, usize> = BTreeMap::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(c) => *counts.entry(c).or_insert(0) += 1,
            Err(e) => errors.push(e),
        }
    }
    let summary = format!("{} graphs, {counts:?}", graphs.len());
    if errors.is_empty() && counts.get(&OutcomeClass::Exceptional) == Some(&18) {
        Ok(summary)
    } else {
        errors.truncate(5);
        Err(format!("{summary}; {}", errors.join("; ")))
    }
}

fn flow_prediction() -> Outcome {
    let oracle = Oracle::default();
    let catalog = Catalog::load_verified(&oracle).map_err(|e| e.to_string())?;
    let graphs = classifiable_graphs();
    let wrong: Vec<String> = graphs
        .par_iter()
        .filter(|g| {
            predict_nz3(g, &catalog).ok() != Some(oracle.has_nowhere_zero_flow(g, 3).expect("budget"))
        })
        .map(|g| g.to_string())
        .collect();
    let without: usize = graphs
        .iter()
        .filter(|g| !oracle.has_nowhere_zero_flow(g, 3).expect("budget"))
        .count();
    if wrong.is_empty() {
        Ok(format!("{} graphs, {without} without a nowhere-zero 3-flow", graphs.len()))
    } else {
        Err(format!("{} mispredicted: {}", wrong.len(), wrong.join(", ")))
    }
}

fn ore_subcatalog() -> Outcome {
    let forms = derive_ore_subcatalog(&Oracle::default()).map_err(|e| e.to_string())?;
    let k4 = canonical_form(&fam(FamilySpec::Complete(4)));
    let all_ore = forms.iter().all(|f| f.to_graph().satisfies_ore());
    if forms.len() == 5 && forms.contains(&k4) && all_ore {
        Ok("5 classes including K4".into())
    } else {
        Err(format!("{} classes, K4 present {}", forms.len(), forms.contains(&k4)))
    }
}

fn random_multigraph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> MultiGraph {
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    MultiGraph::new(n, &edges).expect("loopless")
}

fn reduction_properties() -> Outcome {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut problems = Vec::new();

    // lifting: a Z3-connected lift certifies the original
    let (mut lifts, mut positive) = (0, 0);
    while lifts < 200 {
        let n = rng.gen_range(4..=7);
        let m = rng.gen_range(n + 4..=16);
        let g = random_multigraph(&mut rng, n, m);
        let Some(u) = (0..n).find(|&u| g.degree(u) >= 4) else { continue };
        let ends: Vec<usize> = g
            .incident_edges(u)
            .into_iter()
            .map(|e| if g.edge(e).0 == u { g.edge(e).1 } else { g.edge(e).0 })
            .collect();
        let v = ends[rng.gen_range(0..ends.len())];
        let others: Vec<usize> = ends.iter().copied().filter(|&w| w != v).collect();
        if others.is_empty() {
            continue;
        }
        let w = others[rng.gen_range(0..others.len())];
        let lifted = lift(&g, u, v, w).map_err(|e| e.to_string())?;
        lifts += 1;
        if z3(&lifted) {
            positive += 1;
            if !z3(&g) {
                problems.push(format!("lift of {g} at {u},{v},{w}"));
            }
        }
    }

    // contraction equivalence and closure certification
    let (mut contractions, mut closures) = (0, 0);
    for _ in 0..120 {
        let n = rng.gen_range(3..=6);
        let m = rng.gen_range(n..=12);
        let g = random_multigraph(&mut rng, n, m);
        let whole = z3(&g);
        for set in certified_vertex_sets(&g, &oracle).map_err(|e| e.to_string())? {
            contractions += 1;
            let contracted = g.contract_vertices(&set).graph;
            if z3(&contracted) != whole {
                problems.push(format!("contracting {set:?} in {g}"));
            }
            let (_, seed) = g.induced(&set);
            let closure = attach_vertex_closure(&g, &seed, &oracle).map_err(|e| e.to_string())?;
            closures += 1;
            let (sub, _) = g.edge_subgraph(&closure).map_err(|e| e.to_string())?;
            if !z3(&sub) {
                problems.push(format!("closure {closure:?} in {g}"));
            }
        }
    }
    let seen: BTreeSet<&String> = problems.iter().collect();
    if seen.is_empty() {
        Ok(format!(
            "{lifts} lifts ({positive} with Z3-connected lift), {contractions} contractions, {closures} closures, 0 violations"
        ))
    } else {
        Err(format!("{} violations: {:?}", seen.len(), seen.iter().take(5).collect::<Vec<_>>()))
    }
}

//! The exceptional graphs: 3-edge-connected simple graphs of independence
//! number at most two that Z_3-contract to neither K1 nor K4.
//!
//! The shipped table is not trusted on its own. [`verify_catalog`] re-checks
//! every entry and the structural facts used to name them, and
//! [`derive_exception_set`] recomputes the whole set from the census.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{are_isomorphic, canonical_form, CanonicalForm};
use crate::census::{census_range, CensusConstraints, CensusError};
use crate::family::{gen_family, FamilySpec};
use crate::flow::{BoundaryDemand, FlowError, Oracle};
use crate::graph::MultiGraph;
use crate::graph6::{decode_graph6, Graph6Error};
use crate::reduction::{
    contracts_to, exact_k4_contraction, odd_wheel_decomposition, triangularly_connected,
    ReductionError, SearchBudget, Target,
};

const BUILTIN: &str = include_str!("../data/catalog.tsv");

/// Number of exceptional classes.
pub const EXCEPTIONAL_COUNT: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("catalog line {line}: {source}")]
    Graph6 {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("catalog verification failed: {}", .0.join("; "))]
    Verification(Vec<String>),
    #[error("{family} needs m >= {floor}, got {m}")]
    BelowFloor {
        family: FamilyBase,
        floor: usize,
        m: usize,
    },
    #[error("construction data unavailable for {0}")]
    ConstructionDataUnavailable(FamilyBase),
    #[error("{family} instance with m = {m} violates {reason}")]
    FamilyInvariant {
        family: FamilyBase,
        m: usize,
        reason: &'static str,
    },
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alignment {
    /// The name is pinned down by the structural facts checked in
    /// [`verify_catalog`].
    Full,
    /// Another entry satisfies the same facts; the name could be swapped.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFlags {
    pub alignment: Alignment,
    /// Satisfies the Ore condition.
    pub ore: bool,
    /// K4 itself, which is exceptional and a K4 terminal at once.
    pub k4_special: bool,
    /// Has a partition into four connected blocks contracting to exactly K4.
    pub k4_minor: bool,
    /// No nowhere-zero 3-flow although there is no exact K4 contraction.
    pub nz3_exception: bool,
}

impl EntryFlags {
    fn parse(text: &str) -> Result<Self, String> {
        let mut flags = EntryFlags {
            alignment: Alignment::Full,
            ore: false,
            k4_special: false,
            k4_minor: false,
            nz3_exception: false,
        };
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token {
                "align:full" => flags.alignment = Alignment::Full,
                "align:partial" => flags.alignment = Alignment::Partial,
                "ore" => flags.ore = true,
                "k4-special" => flags.k4_special = true,
                "k4-minor" => flags.k4_minor = true,
                "nz3-exception" => flags.nz3_exception = true,
                other => return Err(format!("unknown flag `{other}`")),
            }
        }
        Ok(flags)
    }
}

impl fmt::Display for EntryFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![match self.alignment {
            Alignment::Full => "align:full",
            Alignment::Partial => "align:partial",
        }];
        for (on, name) in [
            (self.ore, "ore"),
            (self.k4_special, "k4-special"),
            (self.k4_minor, "k4-minor"),
            (self.nz3_exception, "nz3-exception"),
        ] {
            if on {
                parts.push(name);
            }
        }
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub graph6: String,
    pub order: usize,
    pub degrees: Vec<usize>,
    pub flags: EntryFlags,
    pub graph: MultiGraph,
}

impl CatalogEntry {
    pub fn tsv_line(&self) -> String {
        let degrees: Vec<String> = self.degrees.iter().map(usize::to_string).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.name,
            self.graph6,
            self.order,
            degrees.join(","),
            self.flags
        )
    }

    /// Index in `1..=18` taken from the name.
    pub fn index(&self) -> Option<usize> {
        self.name.strip_prefix('G')?.parse().ok()
    }
}

/// Parse catalog lines. Blank lines and `#` comments are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let bad = |reason: String| CatalogError::Parse { line, reason };
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() != 5 {
            return Err(bad(format!("expected 5 fields, found {}", fields.len())));
        }
        let graph = decode_graph6(fields[1]).map_err(|source| CatalogError::Graph6 { line, source })?;
        let order = fields[2]
            .parse()
            .map_err(|_| bad(format!("bad order `{}`", fields[2])))?;
        let degrees = fields[3]
            .split(',')
            .map(|d| d.parse().map_err(|_| bad(format!("bad degree `{d}`"))))
            .collect::<Result<Vec<usize>, _>>()?;
        let flags = EntryFlags::parse(fields[4]).map_err(bad)?;
        entries.push(CatalogEntry {
            name: fields[0].to_owned(),
            graph6: fields[1].to_owned(),
            order,
            degrees,
            flags,
            graph,
        });
    }
    Ok(entries)
}

/// A verified catalog with isomorphism lookup.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: HashMap<CanonicalForm, usize>,
}

impl Catalog {
    /// The shipped table, verified against `oracle`.
    pub fn load_verified(oracle: &Oracle) -> Result<Self, CatalogError> {
        Self::from_text_verified(BUILTIN, oracle)
    }

    pub fn from_text_verified(text: &str, oracle: &Oracle) -> Result<Self, CatalogError> {
        let entries = parse_catalog(text)?;
        let report = verify_catalog(&entries, oracle);
        if !report.passed() {
            return Err(CatalogError::Verification(report.failures()));
        }
        Ok(Self::from_entries(entries))
    }

    /// The shipped table without verification.
    pub fn builtin_unverified() -> Self {
        Self::from_entries(parse_catalog(BUILTIN).expect("shipped catalog parses"))
    }

    fn from_entries(entries: Vec<CatalogEntry>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (canonical_form(&e.graph), i))
            .collect();
        Self { entries, index }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn forms(&self) -> BTreeSet<CanonicalForm> {
        self.index.keys().cloned().collect()
    }

    /// The entry isomorphic to `graph`, if any.
    pub fn match_exception(&self, graph: &MultiGraph) -> Option<&CatalogEntry> {
        if !graph.is_simple() || !(4..=8).contains(&graph.order()) {
            return None;
        }
        self.index
            .get(&canonical_form(graph))
            .map(|&i| &self.entries[i])
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# name\tgraph6\torder\tdegree-multiset\tflags\n");
        for e in &self.entries {
            out.push_str(&e.tsv_line());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Entry name, or `catalog` for whole-table checks.
    pub subject: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} {}: {}", c.subject, c.check, c.detail))
            .collect()
    }

    /// `subject <TAB> check <TAB> pass|FAIL <TAB> detail`
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                c.subject,
                c.check,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            ));
        }
        out
    }

    fn record(&mut self, subject: &str, check: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            subject: subject.to_owned(),
            check: check.to_owned(),
            passed,
            detail: detail.into(),
        });
    }
}

fn expected_order(index: usize) -> Option<usize> {
    match index {
        1 => Some(4),
        2..=5 => Some(6),
        6..=13 => Some(7),
        14..=18 => Some(8),
        _ => None,
    }
}

/// Check every entry invariant plus the structural facts behind the names.
pub fn verify_catalog(entries: &[CatalogEntry], oracle: &Oracle) -> VerificationReport {
    let mut report = VerificationReport::default();
    let per_entry: Vec<VerificationReport> =
        entries.par_iter().map(|e| verify_entry(e, oracle)).collect();
    for r in per_entry {
        report.checks.extend(r.checks);
    }

    let forms: BTreeSet<CanonicalForm> = entries.iter().map(|e| canonical_form(&e.graph)).collect();
    report.record(
        "catalog",
        "count",
        entries.len() == EXCEPTIONAL_COUNT,
        format!("{} entries", entries.len()),
    );
    report.record(
        "catalog",
        "pairwise-non-isomorphic",
        forms.len() == entries.len(),
        format!("{} distinct classes", forms.len()),
    );
    let names: BTreeSet<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    let all_named = (1..=EXCEPTIONAL_COUNT).all(|i| names.contains(format!("G{i}").as_str()));
    report.record("catalog", "names", all_named, "G1..G18 present once each");
    if all_named && names.len() == entries.len() {
        structural_checks(entries, oracle, &mut report);
    }
    report
}

fn verify_entry(entry: &CatalogEntry, oracle: &Oracle) -> VerificationReport {
    let mut r = VerificationReport::default();
    let g = &entry.graph;
    let name = entry.name.as_str();
    let simple = g.is_simple();
    r.record(name, "simple", simple, "");
    let expected = entry.index().and_then(expected_order);
    r.record(
        name,
        "order",
        g.order() == entry.order && expected == Some(g.order()),
        format!("{} vertices, expected {:?}", g.order(), expected),
    );
    r.record(
        name,
        "degree-multiset",
        g.degree_multiset() == entry.degrees,
        format!("{:?}", g.degree_multiset()),
    );
    r.record(name, "min-degree", g.min_degree() >= 3, format!("{}", g.min_degree()));
    let ec = g.edge_connectivity();
    r.record(name, "3-edge-connected", ec >= 3, format!("{ec}"));
    r.record(name, "alpha<=2", g.alpha_le_2(), "");
    r.record(name, "ore", g.satisfies_ore() == entry.flags.ore, "");
    if !simple {
        return r;
    }

    match oracle.is_group_connected(g, 3) {
        Ok(z3) => r.record(name, "not-z3-connected", !z3, ""),
        Err(e) => r.record(name, "not-z3-connected", false, e.to_string()),
    }
    let minor = exact_k4_contraction(g).map(|p| p.is_some());
    match &minor {
        Ok(m) => r.record(name, "k4-minor", *m == entry.flags.k4_minor, format!("{m}")),
        Err(e) => r.record(name, "k4-minor", false, e.to_string()),
    }
    if let (Ok(m), Ok(flow)) = (&minor, oracle.has_nowhere_zero_flow(g, 3)) {
        let predicted = !m && !entry.flags.nz3_exception;
        r.record(
            name,
            "nz3-flow",
            flow == predicted,
            format!("flow {flow}, predicted {predicted}"),
        );
    }
    r.record(
        name,
        "k4-special",
        entry.flags.k4_special == (g.order() == 4 && g.size() == 6),
        "",
    );
    match no_contraction(g, entry.flags.k4_special, oracle) {
        Ok(ok) => r.record(name, "no-z3-contraction", ok, ""),
        Err(e) => r.record(name, "no-z3-contraction", false, e.to_string()),
    }
    r
}

/// Neither K1 nor K4 is reachable, except that K4 is its own terminal.
fn no_contraction(g: &MultiGraph, k4_special: bool, oracle: &Oracle) -> Result<bool, CatalogError> {
    let budget = SearchBudget::default();
    if contracts_to(g, Target::K1, oracle, budget)?.is_some() {
        return Ok(false);
    }
    let k4 = contracts_to(g, Target::K4, oracle, budget)?;
    Ok(match k4 {
        None => !k4_special,
        Some(trace) => k4_special && trace.is_empty(),
    })
}

fn structural_checks(entries: &[CatalogEntry], oracle: &Oracle, r: &mut VerificationReport) {
    let g = |i: usize| -> &MultiGraph {
        &entries
            .iter()
            .find(|e| e.index() == Some(i))
            .expect("names checked")
            .graph
    };

    let k4 = gen_family(&FamilySpec::Complete(4)).expect("K4");
    r.record("G1", "is-k4", are_isomorphic(g(1), &k4), "");

    let degrees9: BTreeSet<usize> = g(9).degrees().into_iter().collect();
    r.record(
        "G9",
        "has-3-4-5-vertices",
        [3, 4, 5].iter().all(|d| degrees9.contains(d)),
        format!("{degrees9:?}"),
    );
    r.record(
        "G13",
        "degree-multiset",
        g(13).order() == 7 && g(13).degree_multiset() == vec![3, 3, 3, 3, 4, 4, 4],
        "",
    );
    for i in [9, 13, 14, 17] {
        let detail = degree_rule_unachievable(g(i), oracle);
        r.record(
            &format!("G{i}"),
            "degree-demand-unachievable",
            detail == Ok(true),
            format!("{detail:?}"),
        );
    }
    let g15 = mixed_demand_unachievable(g(15), oracle);
    r.record(
        "G15",
        "mixed-demand-unachievable",
        g(15).order() == 8 && g15 == Ok(true),
        format!("{g15:?}"),
    );

    r.record("G17", "contains-G6", embeds(g(6), g(17)), "");
    r.record("G9", "contains-spanning-G8", spanning(g(8), g(9)), "");
    for i in [7, 11, 12] {
        r.record("G10", &format!("contains-spanning-G{i}"), spanning(g(i), g(10)), "");
    }
    for i in [10, 16, 18] {
        let tc = triangularly_connected(g(i));
        let decomposition = odd_wheel_decomposition(g(i));
        r.record(
            &format!("G{i}"),
            "odd-wheel-2-sum",
            tc && matches!(decomposition, Ok(Some(_))),
            format!("triangularly connected {tc}, decomposition {decomposition:?}"),
        );
    }
    for i in 14..=18 {
        let want = (15..=17).contains(&i);
        let got = two_k4s_joined_by_three(g(i));
        r.record(
            &format!("G{i}"),
            "two-k4s-joined-by-3-edges",
            got == want,
            format!("{got}"),
        );
    }
}

/// Demand 1 on every 4-vertex and 0 elsewhere cannot be met.
fn degree_rule_unachievable(g: &MultiGraph, oracle: &Oracle) -> Result<bool, FlowError> {
    let values: Vec<u32> = g.degrees().iter().map(|&d| u32::from(d == 4)).collect();
    let demand = BoundaryDemand::new(3, values)?;
    Ok(!oracle.achievable_boundaries(g, 3)?.contains(&demand))
}

/// Some demand with four 0s, two 1s and two 2s cannot be met.
fn mixed_demand_unachievable(g: &MultiGraph, oracle: &Oracle) -> Result<bool, FlowError> {
    if g.order() != 8 {
        return Ok(false);
    }
    let achievable = oracle.achievable_boundaries(g, 3)?;
    for ones in 0u32..1 << 8 {
        if ones.count_ones() != 2 {
            continue;
        }
        for twos in 0u32..1 << 8 {
            if twos.count_ones() != 2 || twos & ones != 0 {
                continue;
            }
            let values: Vec<u32> = (0..8)
                .map(|v| (ones >> v & 1) + 2 * (twos >> v & 1))
                .collect();
            if !achievable.contains(&BoundaryDemand::new(3, values)?) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn two_k4s_joined_by_three(g: &MultiGraph) -> bool {
    let n = g.order();
    if n != 8 {
        return false;
    }
    let is_k4 = |vs: &[usize]| vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)));
    (0u32..1 << n)
        .filter(|s| s.count_ones() == 4 && s & 1 == 1)
        .any(|s| {
            let a: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            let b: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 0).collect();
            let crossing = g
                .edges()
                .iter()
                .filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1))
                .count();
            is_k4(&a) && is_k4(&b) && crossing == 3
        })
}

fn spanning(pattern: &MultiGraph, host: &MultiGraph) -> bool {
    pattern.order() == host.order() && embeds(pattern, host)
}

/// Whether `pattern` is isomorphic to a subgraph of `host` (simple graphs).
pub fn embeds(pattern: &MultiGraph, host: &MultiGraph) -> bool {
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return false;
    }
    // place high-degree pattern vertices first
    let mut order: Vec<usize> = (0..pattern.order()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    let mut image = vec![usize::MAX; pattern.order()];
    let mut used = vec![false; host.order()];
    extend_embedding(pattern, host, &order, 0, &mut image, &mut used)
}

fn extend_embedding(
    pattern: &MultiGraph,
    host: &MultiGraph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    for h in 0..host.order() {
        if used[h] || host.degree(h) < pattern.degree(p) {
            continue;
        }
        let fits = order[..depth]
            .iter()
            .all(|&q| !pattern.has_edge(p, q) || host.has_edge(h, image[q]));
        if !fits {
            continue;
        }
        image[p] = h;
        used[h] = true;
        if extend_embedding(pattern, host, order, depth + 1, image, used) {
            return true;
        }
        used[h] = false;
    }
    image[p] = usize::MAX;
    false
}

/// Classes of order in `orders` (simple, 3-edge-connected, independence
/// number at most two) that Z_3-contract to neither K1 nor K4, K4 itself
/// included.
pub fn derive_exception_set(
    orders: RangeInclusive<usize>,
    oracle: &Oracle,
    budget: SearchBudget,
) -> Result<BTreeSet<CanonicalForm>, CatalogError> {
    let graphs: Vec<_> = census_range(orders, CensusConstraints::CLASSIFIABLE)?
        .into_iter()
        .flatten()
        .collect();
    let kept = graphs
        .par_iter()
        .map(|c| -> Result<Option<CanonicalForm>, CatalogError> {
            let g = &c.graph;
            if g.order() < 4 || contracts_to(g, Target::K1, oracle, budget)?.is_some() {
                return Ok(None);
            }
            let is_k4 = g.order() == 4 && g.size() == 6;
            let to_k4 = contracts_to(g, Target::K4, oracle, budget)?.is_some();
            Ok((is_k4 || !to_k4).then(|| c.form.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(kept.into_iter().flatten().collect())
}

/// Classes of order at most 8 in the same class that also satisfy the Ore
/// condition and are not Z_3-connected.
pub fn derive_ore_subcatalog(oracle: &Oracle) -> Result<BTreeSet<CanonicalForm>, CatalogError> {
    let graphs: Vec<_> = census_range(1..=8, CensusConstraints::CLASSIFIABLE)?
        .into_iter()
        .flatten()
        .filter(|c| c.graph.satisfies_ore())
        .collect();
    let kept = graphs
        .par_iter()
        .map(|c| Ok((!oracle.is_group_connected(&c.graph, 3)?).then(|| c.form.clone())))
        .collect::<Result<Vec<_>, FlowError>>()?;
    Ok(kept.into_iter().flatten().collect())
}

/// Base graphs of the multigraph families, where one pair `u, v` carries
/// `m` parallel edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyBase {
    G3,
    G4,
    G10,
    G11,
}

impl FamilyBase {
    pub const ALL: [FamilyBase; 4] = [Self::G3, Self::G4, Self::G10, Self::G11];

    pub fn floor(self) -> usize {
        match self {
            Self::G11 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for FamilyBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::G3 => "G3'",
            Self::G4 => "G4'",
            Self::G10 => "G10'",
            Self::G11 => "G11'",
        };
        f.write_str(name)
    }
}

impl FromStr for FamilyBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim_end_matches(['\'', '′']) {
            "G3" => Ok(Self::G3),
            "G4" => Ok(Self::G4),
            "G10" => Ok(Self::G10),
            "G11" => Ok(Self::G11),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

/// Base adjacency without the `u v` pair; the instance adds `m` copies of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyConstruction {
    pub base: MultiGraph,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub base: FamilyBase,
    pub construction: Option<FamilyConstruction>,
}

impl FamilyEntry {
    /// No construction data ships with the crate.
    pub fn builtin(base: FamilyBase) -> Self {
        Self {
            base,
            construction: None,
        }
    }
}

pub fn gen_family_instance(entry: &FamilyEntry, m: usize) -> Result<MultiGraph, CatalogError> {
    let family = entry.base;
    if m < family.floor() {
        return Err(CatalogError::BelowFloor {
            family,
            floor: family.floor(),
            m,
        });
    }
    let data = entry
        .construction
        .as_ref()
        .ok_or(CatalogError::ConstructionDataUnavailable(family))?;
    let mut graph = data.base.clone();
    for _ in 0..m {
        graph = graph
            .with_edge(data.u, data.v)
            .map_err(|_| CatalogError::FamilyInvariant {
                family,
                m,
                reason: "endpoints in range",
            })?;
    }
    if graph.edge_connectivity() < 3 {
        return Err(CatalogError::FamilyInvariant {
            family,
            m,
            reason: "3-edge-connectivity",
        });
    }
    if !graph.alpha_le_2() {
        return Err(CatalogError::FamilyInvariant {
            family,
            m,
            reason: "independence number at most two",
        });
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table_parses() {
        let catalog = Catalog::builtin_unverified();
        assert_eq!(catalog.entries().len(), EXCEPTIONAL_COUNT);
        assert_eq!(catalog.get("G18").unwrap().graph.size(), 16);
        let reparsed = parse_catalog(&catalog.to_tsv()).unwrap();
        assert_eq!(reparsed, catalog.entries());
    }

    #[test]
    fn shipped_table_verifies() {
        let report = verify_catalog(Catalog::builtin_unverified().entries(), &Oracle::default());
        assert!(report.passed(), "{}", report.to_tsv());
    }

    #[test]
    fn lookup() {
        let catalog = Catalog::builtin_unverified();
        let k4 = gen_family(&FamilySpec::Complete(4)).unwrap();
        assert_eq!(catalog.match_exception(&k4).unwrap().name, "G1");
        let w4 = gen_family(&FamilySpec::Wheel(4)).unwrap();
        assert!(catalog.match_exception(&w4).is_none());
        let g18 = &catalog.get("G18").unwrap().graph;
        let shuffled = g18.relabel(&[5, 2, 7, 0, 3, 6, 1, 4]);
        assert_eq!(catalog.match_exception(&shuffled).unwrap().name, "G18");
    }

    #[test]
    fn bad_entries_fail_verification() {
        let oracle = Oracle::default();
        // K5 is Z_3-connected
        let k5 = "G1\tD~{\t5\t4,4,4,4,4\talign:full";
        let report = verify_catalog(&parse_catalog(k5).unwrap(), &oracle);
        assert!(report.failures().iter().any(|f| f.contains("not-z3-connected")));
        // two triangles joined by two edges have a 2-edge-cut
        let cut = "G2\tE{SW\t6\t2,2,3,3,3,3\talign:full";
        let report = verify_catalog(&parse_catalog(cut).unwrap(), &oracle);
        assert!(report.failures().iter().any(|f| f.contains("3-edge-connected")));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_catalog("G1\tC~\t4"),
            Err(CatalogError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_catalog("G1\tC~\t4\t3,3,3,3\tshiny"),
            Err(CatalogError::Parse { .. })
        ));
        assert!(matches!(
            parse_catalog("G1\t!!\t4\t3,3,3,3\t"),
            Err(CatalogError::Graph6 { .. })
        ));
    }

    #[test]
    fn embedding() {
        let k4 = gen_family(&FamilySpec::Complete(4)).unwrap();
        let k5 = gen_family(&FamilySpec::Complete(5)).unwrap();
        let c5 = gen_family(&FamilySpec::Cycle(5)).unwrap();
        assert!(embeds(&k4, &k5));
        assert!(!embeds(&k5, &k4));
        assert!(embeds(&c5, &k5));
        assert!(!embeds(&k4, &gen_family(&FamilySpec::Wheel(4)).unwrap()));
    }

    #[test]
    fn family_floors_and_data() {
        let g11 = FamilyEntry::builtin(FamilyBase::G11);
        assert!(matches!(
            gen_family_instance(&g11, 2),
            Err(CatalogError::BelowFloor { floor: 3, .. })
        ));
        assert_eq!(
            gen_family_instance(&g11, 3),
            Err(CatalogError::ConstructionDataUnavailable(FamilyBase::G11))
        );
        assert_eq!("G3′".parse::<FamilyBase>(), Ok(FamilyBase::G3));
    }

    #[test]
    fn family_instance_from_supplied_data() {
        // K4 minus an edge, with the missing pair restored m times
        let base = gen_family(&FamilySpec::CompleteMinusEdge(4)).unwrap();
        let entry = FamilyEntry {
            base: FamilyBase::G3,
            construction: Some(FamilyConstruction { base: base.clone(), u: 0, v: 1 }),
        };
        let g = gen_family_instance(&entry, 2).unwrap();
        assert_eq!(g.size(), base.size() + 2);
        assert_eq!(g.multiplicity(0, 1), 2);
        assert!(g.edge_connectivity() >= 3);
    }
}

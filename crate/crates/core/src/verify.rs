//! The full verification run: twelve checks at fixed desk-scale bounds.
//!
//! Shared work (the enumerations and classifications) is computed once per
//! [`Verifier`] and reused by the checks that need it.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classification::{apply_to_system, canonicalize, classify, fingerprint, match_paper_labels, OrbitClass};
use crate::enumeration::{build_graph, maximal_cliques, universe, EnumerationError, DEFAULT_NODE_BUDGET};
use crate::intersection::{intersect, oracle_intersect, Engine};
use crate::pillowcase::{ArcClass, Puncture};
use crate::reference::frozen_reference;
use crate::subsurface::{dn_max_1_system, omega_loopfree_max_systems};
use crate::symmetry::Generator;
use crate::system::{dual_pair_census, extending_arcs, is_perfect_matching, is_k_system, is_saturated, is_separating, ArcSystem, DualPair, PunctureGraph};
use crate::twist::{
    annulus_bounds, embed_omega, max_ad_family_beside_j0, reconcile_tau_star_formulas, tau_intersect, FormulaStatus,
    OmegaArcClass, ReconciliationReport,
};

pub const BOUND: u32 = 6;
pub const CHECK_BOUND: u32 = 12;
pub const TAU_WINDOW: i64 = 4;
pub const CHECK_COUNT: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Reconciled,
}

impl CheckStatus {
    pub fn is_ok(self) -> bool {
        self != CheckStatus::Fail
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub id: u32,
    pub name: String,
    /// The statement being checked.
    pub claim: String,
    pub status: CheckStatus,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub bound: u32,
    pub check_bound: u32,
    pub checks: Vec<CheckEntry>,
    pub overall: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_star_reconciliation: Option<ReconciliationReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Engine compared against the oracle; a corrupted one must be caught.
    pub engine: Engine,
    /// Run only these checks.
    pub only: Option<Vec<u32>>,
}

/// Holds the shared enumerations.
pub struct Verifier {
    engine: Engine,
    u6: OnceLock<Vec<ArcClass>>,
    u12: OnceLock<Vec<ArcClass>>,
    k0_cliques: OnceLock<Vec<ArcSystem>>,
    k1_cliques: OnceLock<Vec<ArcSystem>>,
    k0_classes: OnceLock<Vec<OrbitClass>>,
    k1_classes: OnceLock<Vec<OrbitClass>>,
    reconciliation: OnceLock<ReconciliationReport>,
}

fn histogram(systems: &[ArcSystem]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for s in systems {
        *h.entry(s.len()).or_insert(0) += 1;
    }
    h
}

fn class_summary(classes: &[OrbitClass]) -> Value {
    classes
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "members": c.members,
                "j_size": c.fingerprint.j_size,
                "degrees": c.fingerprint.system_degrees,
                "loops": c.fingerprint.loop_count,
            })
        })
        .collect()
}

impl Verifier {
    pub fn new(engine: Engine) -> Self {
        Verifier {
            engine,
            u6: OnceLock::new(),
            u12: OnceLock::new(),
            k0_cliques: OnceLock::new(),
            k1_cliques: OnceLock::new(),
            k0_classes: OnceLock::new(),
            k1_classes: OnceLock::new(),
            reconciliation: OnceLock::new(),
        }
    }

    fn u6(&self) -> &[ArcClass] {
        self.u6.get_or_init(|| universe(BOUND).expect("positive"))
    }

    fn u12(&self) -> &[ArcClass] {
        self.u12.get_or_init(|| universe(CHECK_BOUND).expect("positive"))
    }

    fn cliques(&self, k: u8) -> Result<&[ArcSystem], EnumerationError> {
        let cell = if k == 0 { &self.k0_cliques } else { &self.k1_cliques };
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let u = self.u6();
        let graph = build_graph(u, k);
        let found: Vec<ArcSystem> = maximal_cliques(&graph, None, Some(DEFAULT_NODE_BUDGET))?
            .into_iter()
            .map(|c| ArcSystem::new(c.into_iter().map(|i| u[i]), k).expect("cliques are systems"))
            .collect();
        Ok(cell.get_or_init(|| found))
    }

    /// Maximal cliques at the bound that stay saturated at the check bound,
    /// restricted to size 12 for `k = 1`.
    fn systems(&self, k: u8) -> Result<Vec<ArcSystem>, EnumerationError> {
        let u12 = self.u12();
        Ok(self
            .cliques(k)?
            .par_iter()
            .filter(|s| k == 0 || s.len() == 12)
            .filter(|s| is_saturated(s, u12))
            .cloned()
            .collect())
    }

    fn classes(&self, k: u8) -> Result<&[OrbitClass], EnumerationError> {
        let cell = if k == 0 { &self.k0_classes } else { &self.k1_classes };
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let mut classes = classify(&self.systems(k)?);
        match_paper_labels(&mut classes);
        Ok(cell.get_or_init(|| classes))
    }

    fn reconciliation(&self) -> Result<&ReconciliationReport, String> {
        if let Some(r) = self.reconciliation.get() {
            return Ok(r);
        }
        let r = reconcile_tau_star_formulas(TAU_WINDOW).map_err(|e| e.to_string())?;
        Ok(self.reconciliation.get_or_init(|| r))
    }

    pub fn run_check(&self, id: u32) -> CheckEntry {
        let (name, claim) = describe(id);
        let outcome = match id {
            1 => self.check_zero_cardinality(),
            2 => self.check_zero_classes(),
            3 => self.check_one_cardinality(),
            4 => self.check_one_classes(),
            5 => Ok(self.check_engine()),
            6 => Ok(check_twist_lemma()),
            7 => Ok(check_annulus()),
            8 => Ok(check_polygons()),
            9 => self.check_structure(),
            10 => Ok(self.check_pairwise_bounds()),
            11 => Ok(self.check_reconciliation()),
            12 => self.check_fixtures(),
            _ => Ok((CheckStatus::Fail, json!({"error": "unknown check"}))),
        };
        let (status, details) = outcome.unwrap_or_else(|e| (CheckStatus::Fail, json!({"error": e.to_string()})));
        CheckEntry {
            id,
            name: name.to_string(),
            claim: claim.to_string(),
            status,
            details,
        }
    }

    fn check_zero_cardinality(&self) -> Result<(CheckStatus, Value), EnumerationError> {
        let cliques = self.cliques(0)?;
        let u12 = self.u12();
        let (saturated, window): (Vec<&ArcSystem>, Vec<&ArcSystem>) = cliques.par_iter().partition(|s| is_saturated(s, u12));
        let bad_saturated = saturated.iter().filter(|s| s.len() != 6).count();
        // families cut short by the bound: extend them greedily at the check bound
        let extended_sizes: Vec<usize> = window
            .par_iter()
            .map(|s| {
                let mut arcs = s.arcs().to_vec();
                while let Some(a) = extending_arcs(&arcs, 0, u12).first() {
                    arcs.push(*a);
                }
                arcs.len()
            })
            .collect();
        let bad_extended = extended_sizes.iter().filter(|&&n| n != 6).count();
        let ok = bad_saturated == 0 && bad_extended == 0 && !saturated.is_empty();
        Ok((
            CheckStatus::from_bool(ok),
            json!({
                "maximal_cliques_by_size": histogram(cliques),
                "saturated_at_check_bound": saturated.len(),
                "saturated_not_of_size_6": bad_saturated,
                "extendable_at_check_bound": window.len(),
                "extensions_not_of_size_6": bad_extended,
            }),
        ))
    }

    fn generator_invariance(&self, k: u8) -> Result<usize, EnumerationError> {
        let systems = self.systems(k)?;
        Ok(systems
            .par_iter()
            .map(|s| {
                let (c, fp) = (canonicalize(s), fingerprint(s));
                Generator::ALL
                    .iter()
                    .filter(|g| {
                        let t = apply_to_system(&g.element(), s);
                        canonicalize(&t) != c || fingerprint(&t) != fp || !is_k_system(t.arcs(), k)
                    })
                    .count()
            })
            .sum())
    }

    fn check_zero_classes(&self) -> Result<(CheckStatus, Value), EnumerationError> {
        let classes = self.classes(0)?;
        let degrees: BTreeSet<_> = classes.iter().map(|c| c.fingerprint.system_degrees).collect();
        let broken = self.generator_invariance(0)?;
        let ok = classes.len() == 6 && degrees.len() == 6 && broken == 0 && classes.iter().all(|c| c.label.is_some());
        Ok((
            CheckStatus::from_bool(ok),
            json!({"class_count": classes.len(), "classes": class_summary(classes), "generator_invariance_failures": broken}),
        ))
    }

    fn check_one_cardinality(&self) -> Result<(CheckStatus, Value), EnumerationError> {
        let cliques = self.cliques(1)?;
        let max = cliques.iter().map(|s| s.len()).max().unwrap_or(0);
        let systems = self.systems(1)?;
        let evidence_failures = systems
            .par_iter()
            .filter(|s| !crate::enumeration::saturation_margin(s, BOUND, CHECK_BOUND).holds())
            .count();
        let ok = max == 12 && !systems.is_empty() && systems.iter().all(|s| s.len() == 12) && evidence_failures == 0;
        Ok((
            CheckStatus::from_bool(ok),
            json!({
                "maximal_cliques_by_size": histogram(cliques),
                "largest_clique": max,
                "saturated_of_maximum_size": systems.len(),
                "shell_evidence_failures": evidence_failures,
            }),
        ))
    }

    fn check_one_classes(&self) -> Result<(CheckStatus, Value), EnumerationError> {
        let classes = self.classes(1)?;
        let mut j_sizes: Vec<usize> = classes.iter().map(|c| c.fingerprint.j_size).collect();
        j_sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut trees: Vec<[u32; 4]> = classes
            .iter()
            .filter(|c| c.fingerprint.j_size == 3)
            .map(|c| c.fingerprint.j_degrees.0)
            .collect();
        trees.sort();
        let acyclic = classes
            .iter()
            .filter(|c| c.fingerprint.j_size == 3)
            .all(|c| !PunctureGraph::from_arcs(&c.representative.disjoint_subset()).has_cycle());
        let has = |d: [u32; 4]| classes.iter().any(|c| c.fingerprint.system_degrees.0 == d);
        let broken = self.generator_invariance(1)?;
        let ok = classes.len() == 9
            && j_sizes == vec![3, 3, 2, 2, 2, 2, 2, 1, 0]
            && trees == vec![[2, 2, 1, 1], [3, 1, 1, 1]]
            && acyclic
            && has([10, 6, 4, 4])
            && has([10, 5, 5, 4])
            && broken == 0;
        Ok((
            CheckStatus::from_bool(ok),
            json!({
                "class_count": classes.len(),
                "j_sizes": j_sizes,
                "tree_degrees": trees,
                "classes": class_summary(classes),
                "generator_invariance_failures": broken,
            }),
        ))
    }

    fn check_engine(&self) -> (CheckStatus, Value) {
        let u = self.u6();
        let engine = self.engine;
        let mismatches: Vec<(usize, usize)> = (0..u.len())
            .into_par_iter()
            .flat_map_iter(|i| (i..u.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| engine.intersect(&u[i], &u[j]) != oracle_intersect(&u[i], &u[j]))
            .collect();
        let pairs = u.len() * (u.len() + 1) / 2;
        let sample: Vec<String> = mismatches.iter().take(5).map(|&(i, j)| format!("{} {}", u[i], u[j])).collect();
        (
            CheckStatus::from_bool(mismatches.is_empty()),
            json!({"universe": u.len(), "pairs": pairs, "mismatches": mismatches.len(), "first_mismatches": sample, "engine": format!("{:?}", engine.mode)}),
        )
    }

    fn check_structure(&self) -> Result<(CheckStatus, Value), EnumerationError> {
        let systems = self.systems(1)?;
        let big_j = systems.iter().filter(|s| s.disjoint_subset().len() > 3).count();
        let cyclic = systems.iter().filter(|s| is_separating(&s.disjoint_subset())).count();
        let loop_free: Vec<&ArcSystem> = systems.iter().filter(|s| s.loop_count() == 0).collect();
        let bad_census = loop_free
            .iter()
            .filter(|s| dual_pair_census(s.arcs()).iter().any(|e| e.between_q != 2 || e.between_q_star != 2))
            .count();
        let bad_matching = loop_free
            .iter()
            .filter(|s| DualPair::all().iter().any(|p| !is_perfect_matching(s.arcs(), *p)))
            .count();
        let ok = big_j == 0 && cyclic == 0 && bad_census == 0 && bad_matching == 0 && !loop_free.is_empty();
        Ok((
            CheckStatus::from_bool(ok),
            json!({
                "systems": systems.len(),
                "j_larger_than_3": big_j,
                "separating_j": cyclic,
                "loop_free_systems": loop_free.len(),
                "census_not_2_2": bad_census,
                "not_perfect_matching": bad_matching,
            }),
        ))
    }

    fn check_pairwise_bounds(&self) -> (CheckStatus, Value) {
        let u = self.u6();
        let mut per_pair = BTreeMap::new();
        for (i, p) in Puncture::ALL.iter().enumerate() {
            for q in &Puncture::ALL[i + 1..] {
                let segs: Vec<ArcClass> = u.iter().filter(|a| !a.is_loop() && a.endpoints() == [*p, *q]).copied().collect();
                let graph = crate::enumeration::CompatibilityGraph::from_predicate(segs.clone(), 1, |x, y| {
                    intersect(&segs[x], &segs[y]) <= 1
                });
                let max = maximal_cliques(&graph, None, None)
                    .expect("no budget")
                    .iter()
                    .map(|c| c.len())
                    .max()
                    .unwrap_or(0);
                per_pair.insert(format!("{}{}", p.label(), q.label()), max);
            }
        }
        let bounds = annulus_bounds(TAU_WINDOW);
        let beside = max_ad_family_beside_j0(BOUND);
        let ok = per_pair.values().all(|&m| m == 3) && bounds.max_family_at_a == 5 && beside <= 2;
        (
            CheckStatus::from_bool(ok),
            json!({
                "max_family_per_pair": per_pair,
                "max_family_at_a": bounds.max_family_at_a,
                "max_twice_delta_tau_at_a": bounds.max_delta2_at_a,
                "max_twice_delta_tau_across_families": bounds.max_cross_delta2,
                "max_ad_family_beside_j0": beside,
            }),
        )
    }

    fn check_reconciliation(&self) -> (CheckStatus, Value) {
        let report = match self.reconciliation() {
            Ok(r) => r,
            Err(e) => return (CheckStatus::Fail, json!({"error": e})),
        };
        let complete = report.checks.len() == 2 && report.checks.iter().all(|c| !c.rows.is_empty());
        let permissible_ok = report.permissible_tau_at_quarter == ["-1/2", "0", "1/2", "1"];
        let statuses: Vec<FormulaStatus> = report.checks.iter().map(|c| c.status).collect();
        let status = if !(complete && permissible_ok) {
            CheckStatus::Fail
        } else if statuses.iter().all(|s| *s == FormulaStatus::Confirmed) {
            CheckStatus::Pass
        } else {
            CheckStatus::Reconciled
        };
        let formulas: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "expression": c.expression,
                    "status": c.status,
                    "rows": c.rows.len(),
                    "disagreeing_rows": c.rows.iter().filter(|r| !r.agrees).count(),
                    "fitted_slope": c.fitted_slope,
                    "fitted_offset": c.fitted_offset,
                })
            })
            .collect();
        (
            status,
            json!({
                "window": report.window,
                "formulas": formulas,
                "permissible_tau_at_quarter": report.permissible_tau_at_quarter,
                "half_twist_disk": report.half_twist_disk,
            }),
        )
    }

    fn check_fixtures(&self) -> Result<(CheckStatus, Value), EnumerationError> {
        let fixtures = match frozen_reference() {
            Ok(f) => f,
            Err(e) => return Ok((CheckStatus::Fail, json!({"error": e.to_string()}))),
        };
        let mut ok = true;
        let mut rows = Vec::new();
        let mut hit: [BTreeSet<ArcSystem>; 2] = Default::default();
        for (label, system) in &fixtures {
            let k = system.k();
            let classes = self.classes(k)?;
            let form = canonicalize(system);
            let class = classes.iter().find(|c| c.representative == form);
            let matched = class.map(|c| c.label.as_deref() == Some(label.as_str())).unwrap_or(false);
            ok &= matched;
            if class.is_some() {
                hit[k as usize].insert(form);
            }
            rows.push(json!({"label": label, "k": k, "found": class.is_some(), "label_agrees": matched}));
        }
        let (n0, n1) = (self.classes(0)?.len(), self.classes(1)?.len());
        ok &= hit[0].len() == n0 && hit[1].len() == n1 && fixtures.len() == 15;
        Ok((
            CheckStatus::from_bool(ok),
            json!({"fixtures": rows, "zero_classes_hit": hit[0].len(), "one_classes_hit": hit[1].len()}),
        ))
    }
}

fn check_twist_lemma() -> (CheckStatus, Value) {
    let window = OmegaArcClass::window(TAU_WINDOW);
    let embedded: Vec<ArcClass> = window.iter().map(|s| embed_omega(s, None).expect("unbounded")).collect();
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for i in 0..window.len() {
        for j in i + 1..window.len() {
            pairs += 1;
            let engine = intersect(&embedded[i], &embedded[j]);
            match tau_intersect(&window[i], &window[j]) {
                Ok(n) if n == engine => {}
                other => mismatches.push(format!("{:?} {:?}: {:?} vs {engine}", window[i], window[j], other)),
            }
        }
    }
    (
        CheckStatus::from_bool(mismatches.is_empty()),
        json!({"arcs": window.len(), "pairs": pairs, "mismatches": mismatches.len(), "first_mismatches": &mismatches[..mismatches.len().min(5)]}),
    )
}

fn check_annulus() -> (CheckStatus, Value) {
    let classes = omega_loopfree_max_systems();
    let degrees: BTreeSet<[u32; 4]> = classes.iter().map(|c| c.degrees).collect();
    let ok = classes.len() == 2 && degrees == BTreeSet::from([[6, 6, 4, 4], [5, 5, 5, 5]]);
    let summary: Vec<Value> = classes
        .iter()
        .map(|c| json!({"degrees": c.degrees, "crossing_arcs": c.representative.arcs.len(), "size_with_cut": c.representative.size_with_cut()}))
        .collect();
    (CheckStatus::from_bool(ok), json!({"classes": summary}))
}

fn check_polygons() -> (CheckStatus, Value) {
    let results: Vec<_> = (1..=4).map(dn_max_1_system).collect();
    let maxima: Vec<usize> = results.iter().map(|r| r.maximum).collect();
    let ok = maxima == vec![1, 3, 6, 10] && results.iter().all(|r| r.witnesses.iter().any(|w| w.len() == r.maximum));
    let rows: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "maximum": r.maximum,
                "witnesses": r.witnesses.len(),
                "loop_free_maximum": r.loop_free_maximum,
                "stable_window": r.stable_window,
            })
        })
        .collect();
    (CheckStatus::from_bool(ok), json!({"maxima": maxima, "polygons": rows}))
}

/// Short name and statement of each check.
pub fn describe(id: u32) -> (&'static str, &'static str) {
    match id {
        1 => ("zero-system cardinality", "every inclusion-maximal disjoint family has exactly 6 arcs"),
        2 => ("zero-system classification", "6 orbit classes with pairwise-distinct degree multisets"),
        3 => ("one-system cardinality", "maximal 1-systems have 12 arcs and no clique exceeds 12"),
        4 => (
            "one-system classification",
            "9 orbit classes, |J| multiset {3,3,2,2,2,2,2,1,0}, path and star trees, degrees (10,6,4,4) and (10,5,5,4)",
        ),
        5 => ("engine and oracle", "closed-form counts equal the polyline oracle on every pair"),
        6 => ("twisting-number counts", "the τ formula equals the engine on embedded annulus arcs"),
        7 => ("annulus systems", "two loop-free maximal annulus systems, degrees (6,6,4,4) and (5,5,5,5)"),
        8 => ("punctured polygons", "largest 1-systems in the punctured n-gon have 1, 3, 6, 10 arcs"),
        9 => (
            "structure of maximal 1-systems",
            "|J| ≤ 3, J nonseparating, loop-free systems split every dual pair 2+2 as a perfect matching",
        ),
        10 => ("pairwise bounds", "at most 3 arcs between two punctures and at most 5 annulus arcs at a"),
        11 => ("τ* reconciliation", "both τ* formulas tabulated; permissible τ at τ* = 1/4 is {-1/2, 0, 1/2, 1}"),
        12 => ("reference coverage", "every reference system lands in a discovered class, covering all classes"),
        _ => ("unknown", "unknown"),
    }
}

/// Runs the selected checks (all by default).
pub fn run(options: &VerifyOptions) -> VerificationReport {
    let verifier = Verifier::new(options.engine);
    let ids: Vec<u32> = options.only.clone().unwrap_or_else(|| (1..=CHECK_COUNT).collect());
    let checks: Vec<CheckEntry> = ids.iter().map(|&id| verifier.run_check(id)).collect();
    let overall = CheckStatus::from_bool(checks.iter().all(|c| c.status.is_ok()));
    VerificationReport {
        schema_version: crate::records::SCHEMA_VERSION,
        bound: BOUND,
        check_bound: CHECK_BOUND,
        checks,
        overall,
        tau_star_reconciliation: verifier.reconciliation.get().cloned(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::EngineMode;

    #[test]
    fn cheap_checks_pass() {
        let report = run(&VerifyOptions {
            engine: Engine::EXACT,
            only: Some(vec![6, 7, 8]),
        });
        assert!(report.passed(), "{report:#?}");
    }

    #[test]
    fn corrupted_engine_is_caught() {
        let v = Verifier::new(Engine {
            mode: EngineMode::Corrupted,
        });
        assert_eq!(v.run_check(5).status, CheckStatus::Fail);
    }

    #[test]
    fn unknown_check_fails() {
        assert_eq!(Verifier::new(Engine::EXACT).run_check(99).status, CheckStatus::Fail);
    }
}

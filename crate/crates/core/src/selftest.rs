//! Randomized cross-checks of every algorithm against exhaustive enumeration.
//!
//! Instance `i` is drawn from stream `i` of the seed, so a report is a pure
//! function of `(size, count, seed)` regardless of thread scheduling.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coupling::{couple_forest, couple_via_flow, subforest_inductive, DEFAULT_INDUCTIVE_CAP};
use crate::error::{Error, Result};
use crate::feasibility::{check_condition_bruteforce, check_condition_flow, minimal_deficiency_with_witness};
use crate::graph::{is_acyclic, to_graph, Side, WeightedBipartiteGraph};
use crate::matching::{
    couple_with_deficiency_blowup, couple_with_deficiency_flow, matching_from_forest, matching_with_deficiency,
    matching_with_deficiency_augmented, DEFAULT_BLOWUP_CAP,
};
use crate::random::{random_feasible_instance, random_graph, random_instance, rng_for, DEFAULT_DENOMINATOR};
use crate::rational::Rational;
use crate::solution::CouplingOutcome;
use crate::subsets::max_excess;

/// Largest side the self-test accepts; every check is backed by enumeration.
pub const MAX_SELFTEST_SIZE: usize = 20;

pub const CHECKS: [&str; 10] = [
    "flow_vs_bruteforce",
    "certificate_soundness",
    "coupling_contract",
    "forest_coupling",
    "inductive_subforest",
    "minimal_deficiency",
    "epsilon_coupling_flow",
    "epsilon_coupling_blowup",
    "perfect_matching",
    "deficient_matching",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub size: usize,
    pub count: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckTally>,
    /// `instance <i>: <check>: <detail>`, in instance order.
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "selftest size={} count={} seed={}: {}\n",
            self.size,
            self.count,
            self.seed,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<24} passed {:>6}  failed {:>6}  skipped {:>6}\n",
                c.name, c.passed, c.failed, c.skipped
            ));
        }
        for f in &self.failures {
            out.push_str(&format!("  {f}\n"));
        }
        out
    }
}

struct Outcomes {
    verdicts: [Verdict; CHECKS.len()],
    failures: Vec<String>,
}

impl Outcomes {
    fn record(&mut self, check: usize, result: std::result::Result<bool, String>) {
        self.verdicts[check] = match result {
            Ok(true) => Verdict::Pass,
            Ok(false) => Verdict::Skip,
            Err(msg) => {
                self.failures.push(format!("{}: {msg}", CHECKS[check]));
                Verdict::Fail
            }
        };
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn worst_excess(graph: &WeightedBipartiteGraph) -> Rational {
    max_excess(graph, Side::A, |_| true)
        .expect("the empty set is scanned")
        .1
}

fn run_one(size: usize, seed: u64, index: u64) -> Outcomes {
    let mut rng = rng_for(seed, index);
    let na = rng.random_range(1..=size);
    let nb = rng.random_range(1..=size);
    let density = rng.random_range(0.2..0.9);
    let instance = if index.is_multiple_of(2) {
        random_instance(&mut rng, na, nb, DEFAULT_DENOMINATOR, density)
    } else {
        random_feasible_instance(&mut rng, na, nb, DEFAULT_DENOMINATOR, density)
    };
    let graph = to_graph(&instance);
    let mut out = Outcomes {
        verdicts: [Verdict::Skip; CHECKS.len()],
        failures: Vec::new(),
    };
    let brute = match check_condition_bruteforce(&graph, MAX_SELFTEST_SIZE) {
        Ok(v) => v,
        Err(e) => {
            out.record(0, Err(err(e)));
            return out;
        }
    };
    let feasible = brute.satisfied;

    out.record(
        0,
        check_condition_flow(&graph).map_err(err).and_then(|v| {
            ensure(v.satisfied == feasible, || {
                format!("flow says {}, enumeration {feasible}", v.satisfied)
            })?;
            ensure(brute.satisfied == brute.certificate(&graph).is_none(), || {
                "enumeration certificate".into()
            })?;
            Ok(true)
        }),
    );

    out.record(
        1,
        check_condition_flow(&graph)
            .map_err(err)
            .and_then(|v| match v.certificate {
                None => Ok(false),
                Some(c) => {
                    ensure(c.recomputes(&graph), || {
                        format!("{:?} does not recompute", c.violating_set)
                    })?;
                    ensure(c.deficiency == brute.worst_excess, || {
                        format!(
                            "cut deficiency {} but worst excess {}",
                            c.deficiency, brute.worst_excess
                        )
                    })?;
                    Ok(true)
                }
            }),
    );

    out.record(
        2,
        couple_via_flow(&instance).map_err(err).and_then(|o| {
            ensure(o.coupling().is_some() == feasible, || {
                "coupling exists iff condition holds".into()
            })?;
            if let Some(c) = o.coupling() {
                c.check_against(&graph, true)?;
            }
            Ok(true)
        }),
    );

    out.record(
        3,
        couple_forest(&instance).map_err(err).and_then(|o| match o {
            CouplingOutcome::Infeasible(_) => {
                ensure(!feasible, || "forest coupling refused a feasible instance".into())?;
                Ok(false)
            }
            CouplingOutcome::Coupled(c) => {
                c.check_against(&graph, true)?;
                let support = c.support();
                ensure(is_acyclic(na, nb, &support), || "support has a cycle".into())?;
                ensure(support.len() < na + nb, || format!("support of size {}", support.len()))?;
                let sub = graph.spanning_subgraph(support).map_err(err)?;
                ensure(!worst_excess(&sub).is_positive(), || {
                    "support violates the condition".into()
                })?;
                Ok(true)
            }
        }),
    );

    out.record(
        4,
        if !feasible || na + nb > DEFAULT_INDUCTIVE_CAP {
            Ok(false)
        } else {
            subforest_inductive(&graph, DEFAULT_INDUCTIVE_CAP)
                .map_err(err)
                .and_then(|f| {
                    ensure(is_acyclic(na, nb, f.edges()), || "inductive result has a cycle".into())?;
                    ensure(!worst_excess(f.graph()).is_positive(), || {
                        "inductive forest violates the condition".into()
                    })?;
                    Ok(true)
                })
        },
    );

    let minimal = brute.worst_excess.positive_part();
    out.record(
        5,
        minimal_deficiency_with_witness(&instance)
            .map_err(err)
            .and_then(|(eps, cert)| {
                ensure(eps == minimal, || format!("flow gives {eps}, enumeration {minimal}"))?;
                ensure(cert.is_some() == minimal.is_positive(), || "witness presence".into())?;
                Ok(true)
            }),
    );

    out.record(
        6,
        couple_with_deficiency_flow(&instance, &minimal)
            .map_err(err)
            .and_then(|o| {
                let c = o.coupling().ok_or("no ε-coupling at ε*")?;
                c.check_against(&graph, false)?;
                let mass = c.relation_mass(|a, b| instance.is_related(a, b));
                ensure(mass == Rational::one() - &minimal, || format!("relation mass {mass}"))?;
                if minimal.is_positive() {
                    let below = &minimal - &Rational::new(1, 1_000_000);
                    let refused = couple_with_deficiency_flow(&instance, &below).map_err(err)?;
                    ensure(refused.coupling().is_none(), || "coupled below ε*".into())?;
                }
                Ok(true)
            }),
    );

    out.record(
        7,
        match couple_with_deficiency_blowup(&instance, &minimal, DEFAULT_BLOWUP_CAP) {
            Err(Error::BlowUpTooLarge { .. }) => Ok(false),
            Err(e) => Err(err(e)),
            Ok(c) => c.check_against(&graph, false).and_then(|()| {
                let mass = c.relation_mass(|a, b| instance.is_related(a, b));
                ensure(mass >= Rational::one() - &minimal, || format!("relation mass {mass}"))?;
                Ok(true)
            }),
        },
    );

    // marriage checks on an n × n graph drawn from the same stream
    let n = na;
    let hall = random_graph(&mut rng, n, n, density);
    let shortage = worst_excess(&hall);
    out.record(
        8,
        matching_with_deficiency(&hall, 0).map_err(err).and_then(|o| {
            let perfect = !shortage.is_positive();
            ensure(o.matching().is_some() == perfect, || {
                "perfect matching iff marriage condition".into()
            })?;
            if let Some(m) = o.matching() {
                m.check_against(&hall)?;
                ensure(m.len() == n, || "matching is not perfect".into())?;
                let via_forest = matching_from_forest(&hall).map_err(err)?;
                via_forest.check_against(&hall)?;
                ensure(via_forest.len() == n, || "forest matching is not perfect".into())?;
            }
            if let Some(v) = o.violator() {
                ensure(v.recomputes(&hall), || "violator does not recompute".into())?;
            }
            Ok(true)
        }),
    );

    out.record(
        9,
        (0..=n)
            .try_for_each(|k| {
                let direct = matching_with_deficiency(&hall, k).map_err(err)?;
                let augmented = matching_with_deficiency_augmented(&hall, k).map_err(err)?;
                let expected = shortage <= Rational::from(k as i64);
                ensure(direct.matching().is_some() == expected, || {
                    format!("direct route at k = {k}")
                })?;
                ensure(augmented.matching().is_some() == expected, || {
                    format!("augmented route at k = {k}")
                })?;
                for o in [&direct, &augmented] {
                    if let Some(m) = o.matching() {
                        m.check_against(&hall)?;
                        ensure(m.len() + k >= n, || format!("matching too small at k = {k}"))?;
                    }
                    if let Some(v) = o.violator() {
                        ensure(v.recomputes(&hall), || format!("violator at k = {k}"))?;
                    }
                }
                Ok(())
            })
            .map(|()| true),
    );

    out
}

/// Runs `count` random instances with sides of at most `size` vertices.
pub fn run_selftest(size: usize, count: usize, seed: u64) -> Result<SelftestReport> {
    if size > MAX_SELFTEST_SIZE {
        return Err(Error::SubsetCapExceeded {
            size,
            cap: MAX_SELFTEST_SIZE,
        });
    }
    if size == 0 {
        return Err(Error::Parse {
            field: "size".into(),
            message: "must be at least 1".into(),
        });
    }
    let results: Vec<Outcomes> = (0..count as u64)
        .into_par_iter()
        .map(|i| run_one(size, seed, i))
        .collect();
    let mut checks: Vec<CheckTally> = CHECKS
        .iter()
        .map(|name| CheckTally {
            name: name.to_string(),
            passed: 0,
            failed: 0,
            skipped: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        for (tally, v) in checks.iter_mut().zip(r.verdicts) {
            match v {
                Verdict::Pass => tally.passed += 1,
                Verdict::Fail => tally.failed += 1,
                Verdict::Skip => tally.skipped += 1,
            }
        }
        failures.extend(r.failures.into_iter().map(|f| format!("instance {i}: {f}")));
    }
    Ok(SelftestReport {
        size,
        count,
        seed,
        passed: failures.is_empty(),
        checks,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run_selftest(5, 60, 7).unwrap();
        assert!(a.passed, "{}", a.to_text());
        assert_eq!(a, run_selftest(5, 60, 7).unwrap());
        assert!(a.checks.iter().all(|c| c.passed > 0), "{}", a.to_text());
    }

    #[test]
    fn size_cap() {
        assert_eq!(run_selftest(21, 1, 0).unwrap_err().kind(), "SubsetCapExceeded");
    }
}

//! Command implementations behind the `couplings` binary.
//!
//! Every command produces a [`ResultDocument`] and an exit code: 0 when a
//! witness (coupling, matching) was produced, 1 when a certificate was
//! produced, 2 on any operational error. Output is re-validated against the
//! instance before it is returned.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coupling::{couple_forest, couple_via_flow};
use crate::error::Error;
use crate::feasibility::{
    check_condition_bruteforce, check_condition_flow, minimal_deficiency_with_witness, DEFAULT_SUBSET_CAP,
};
use crate::graph::{is_acyclic, to_graph, WeightedBipartiteGraph};
use crate::instance::Instance;
use crate::matching::{
    couple_with_deficiency_blowup, couple_with_deficiency_flow, matching_with_deficiency,
    matching_with_deficiency_augmented, DEFAULT_BLOWUP_CAP,
};
use crate::rational::Rational;
use crate::solution::{Certificate, Coupling, CouplingOutcome, HallViolator, Matching, MatchingOutcome};

pub const EXIT_WITNESS: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Flow,
    Bruteforce,
    Blowup,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Flow => "flow",
            Algorithm::Bruteforce => "bruteforce",
            Algorithm::Blowup => "blowup",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Infeasible,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingEntry {
    pub a: String,
    pub b: String,
    pub mass: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub violating_set: Vec<String>,
    pub neighborhood: Vec<String>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub deficiency: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_forest: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_mass: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_used: Option<Rational>,
    pub algorithm: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling: Option<Vec<CouplingEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<MatchedPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_deficiency: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
}

impl ResultDocument {
    fn new(status: Status) -> Self {
        ResultDocument {
            status,
            coupling: None,
            matching: None,
            certificate: None,
            minimal_deficiency: None,
            stats: None,
            error: None,
        }
    }

    pub fn from_error(kind: &str, message: impl Into<String>) -> Self {
        ResultDocument {
            error: Some(ErrorDoc {
                kind: kind.to_string(),
                message: message.into(),
            }),
            ..ResultDocument::new(Status::Error)
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Feasible => EXIT_WITNESS,
            Status::Infeasible => EXIT_CERTIFICATE,
            Status::Error => EXIT_ERROR,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
            Status::Error => "error",
        };
        writeln!(out, "status: {status}").unwrap();
        if let Some(entries) = &self.coupling {
            writeln!(out, "coupling:").unwrap();
            for e in entries {
                writeln!(out, "  {} {} {}", e.a, e.b, e.mass).unwrap();
            }
        }
        if let Some(pairs) = &self.matching {
            writeln!(out, "matching:").unwrap();
            for p in pairs {
                writeln!(out, "  {} {}", p.a, p.b).unwrap();
            }
        }
        if let Some(c) = &self.certificate {
            writeln!(
                out,
                "certificate: U = {{{}}}, N(U) = {{{}}}, lhs = {}, rhs = {}, deficiency = {}",
                c.violating_set.join(", "),
                c.neighborhood.join(", "),
                c.lhs,
                c.rhs,
                c.deficiency
            )
            .unwrap();
        }
        if let Some(eps) = &self.minimal_deficiency {
            writeln!(out, "minimal_deficiency: {eps}").unwrap();
        }
        if let Some(s) = &self.stats {
            let mut parts = vec![format!("algorithm = {}", s.algorithm)];
            if let Some(n) = s.support_size {
                parts.push(format!("support_size = {n}"));
            }
            if let Some(f) = s.is_forest {
                parts.push(format!("is_forest = {f}"));
            }
            if let Some(m) = &s.relation_mass {
                parts.push(format!("relation_mass = {m}"));
            }
            if let Some(e) = &s.epsilon_used {
                parts.push(format!("epsilon_used = {e}"));
            }
            writeln!(out, "stats: {}", parts.join(", ")).unwrap();
        }
        if let Some(e) = &self.error {
            writeln!(out, "error: {}: {}", e.kind, e.message).unwrap();
        }
        out
    }
}

impl From<Error> for ResultDocument {
    fn from(err: Error) -> Self {
        ResultDocument::from_error(err.kind(), err.to_string())
    }
}

fn invalid_arguments(message: &str) -> ResultDocument {
    ResultDocument::from_error("InvalidArguments", message)
}

fn internal(message: String) -> ResultDocument {
    ResultDocument::from_error("InternalCheckFailed", message)
}

/// Reads and validates an instance file.
pub fn load_instance(path: &Path) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        field: path.display().to_string(),
        message: e.to_string(),
    })?;
    Instance::from_json(&text)
}

fn coupling_doc(instance: &Instance, coupling: &Coupling) -> Vec<CouplingEntry> {
    let mut entries: Vec<CouplingEntry> = coupling
        .entries()
        .map(|(&(a, b), m)| CouplingEntry {
            a: instance.a_labels()[a].clone(),
            b: instance.b_labels()[b].clone(),
            mass: m.clone(),
        })
        .collect();
    entries.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    entries
}

fn certificate_doc(graph: &WeightedBipartiteGraph, cert: &Certificate) -> CertificateDoc {
    CertificateDoc {
        violating_set: cert
            .violating_set
            .iter()
            .map(|&i| graph.a_labels()[i].clone())
            .collect(),
        neighborhood: cert.neighborhood.iter().map(|&j| graph.b_labels()[j].clone()).collect(),
        lhs: cert.lhs.clone(),
        rhs: cert.rhs.clone(),
        deficiency: cert.deficiency.clone(),
    }
}

fn infeasible(graph: &WeightedBipartiteGraph, cert: &Certificate, stats: Stats) -> ResultDocument {
    if !cert.recomputes(graph) {
        return internal(format!("certificate {:?} does not recompute", cert.violating_set));
    }
    ResultDocument {
        certificate: Some(certificate_doc(graph, cert)),
        stats: Some(stats),
        ..ResultDocument::new(Status::Infeasible)
    }
}

/// Decide the coupling condition for an instance.
pub fn check_instance(instance: &Instance, algorithm: Algorithm) -> ResultDocument {
    let graph = to_graph(instance);
    let stats = Stats {
        algorithm: algorithm.name().to_string(),
        ..Stats::default()
    };
    let cert = match algorithm {
        Algorithm::Flow => match check_condition_flow(&graph) {
            Ok(v) => v.certificate,
            Err(e) => return e.into(),
        },
        Algorithm::Bruteforce => match check_condition_bruteforce(&graph, DEFAULT_SUBSET_CAP) {
            Ok(v) => v.certificate(&graph),
            Err(e) => return e.into(),
        },
        Algorithm::Blowup => return invalid_arguments("check supports --algorithm flow or bruteforce"),
    };
    match cert {
        Some(cert) => infeasible(&graph, &cert, stats),
        None => ResultDocument {
            stats: Some(stats),
            ..ResultDocument::new(Status::Feasible)
        },
    }
}

/// Build a coupling (optionally forest-supported, optionally with slack `ε`).
pub fn couple_instance(
    instance: &Instance,
    forest: bool,
    epsilon: Option<&Rational>,
    algorithm: Algorithm,
) -> ResultDocument {
    let graph = to_graph(instance);
    if let Some(eps) = epsilon.filter(|e| e.is_negative()) {
        return Error::NegativeEpsilon(eps.clone()).into();
    }
    let (outcome, algo_name) = match (algorithm, epsilon) {
        (Algorithm::Bruteforce, _) => return invalid_arguments("couple supports --algorithm flow or blowup"),
        (Algorithm::Blowup, None) => return invalid_arguments("--algorithm blowup requires --epsilon"),
        (_, Some(_)) if forest => return invalid_arguments("--forest cannot be combined with --epsilon"),
        (Algorithm::Flow, None) if forest => (couple_forest(instance), "flow+cycle-canceling"),
        (Algorithm::Flow, None) => (couple_via_flow(instance), "flow"),
        (Algorithm::Flow, Some(eps)) => (couple_with_deficiency_flow(instance, eps), "flow"),
        (Algorithm::Blowup, Some(eps)) => {
            let outcome = minimal_deficiency_with_witness(instance).and_then(|(minimal, cert)| match cert {
                Some(cert) if *eps < minimal => Ok(CouplingOutcome::Infeasible(cert)),
                _ => couple_with_deficiency_blowup(instance, eps, DEFAULT_BLOWUP_CAP).map(CouplingOutcome::Coupled),
            });
            (outcome, "blowup")
        }
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => return e.into(),
    };
    let eps = epsilon.cloned().unwrap_or_else(Rational::zero);
    match outcome {
        CouplingOutcome::Infeasible(cert) => {
            let stats = Stats {
                epsilon_used: Some(eps),
                algorithm: algo_name.to_string(),
                ..Stats::default()
            };
            infeasible(&graph, &cert, stats)
        }
        CouplingOutcome::Coupled(coupling) => {
            let relation_mass = coupling.relation_mass(|a, b| instance.is_related(a, b));
            if let Err(msg) = coupling.check_against(&graph, epsilon.is_none()) {
                return internal(msg);
            }
            if relation_mass < Rational::one() - &eps {
                return internal(format!("relation mass {relation_mass} is below 1 - {eps}"));
            }
            let support = coupling.support();
            let is_forest = is_acyclic(graph.na(), graph.nb(), &support);
            if forest && !is_forest {
                return internal("forest coupling has a cycle in its support".into());
            }
            ResultDocument {
                coupling: Some(coupling_doc(instance, &coupling)),
                stats: Some(Stats {
                    support_size: Some(support.len()),
                    is_forest: Some(is_forest),
                    relation_mass: Some(relation_mass),
                    epsilon_used: Some(eps),
                    algorithm: algo_name.to_string(),
                }),
                ..ResultDocument::new(Status::Feasible)
            }
        }
    }
}

fn matching_doc(graph: &WeightedBipartiteGraph, m: &Matching) -> Vec<MatchedPair> {
    m.edges()
        .iter()
        .map(|&(a, b)| MatchedPair {
            a: graph.a_labels()[a].clone(),
            b: graph.b_labels()[b].clone(),
        })
        .collect()
}

fn violator_doc(graph: &WeightedBipartiteGraph, v: &HallViolator) -> CertificateDoc {
    let lhs = Rational::from(v.subset.len() as i64);
    let rhs = Rational::from((v.neighborhood.len() + v.k) as i64);
    CertificateDoc {
        violating_set: v.subset.iter().map(|&i| graph.a_labels()[i].clone()).collect(),
        neighborhood: v.neighborhood.iter().map(|&j| graph.b_labels()[j].clone()).collect(),
        deficiency: &lhs - &rhs,
        lhs,
        rhs,
    }
}

/// Perfect matching (or one missing at most `k` edges) on the relation graph;
/// masses are ignored.
pub fn match_instance(instance: &Instance, k: Option<usize>) -> ResultDocument {
    let graph = to_graph(instance).with_unit_weights();
    let slack = k.unwrap_or(0);
    let direct = match matching_with_deficiency(&graph, slack) {
        Ok(o) => o,
        Err(e) => return e.into(),
    };
    let augmented = match matching_with_deficiency_augmented(&graph, slack) {
        Ok(o) => o,
        Err(e) => return e.into(),
    };
    if direct.matching().is_some() != augmented.matching().is_some() {
        return internal("direct and augmented-graph routes disagree".into());
    }
    let stats = |size: Option<usize>| Stats {
        support_size: size,
        epsilon_used: k.map(|k| Rational::from(k as i64)),
        algorithm: "hopcroft-karp".to_string(),
        ..Stats::default()
    };
    match direct {
        MatchingOutcome::Matched(m) => {
            if let Err(msg) = m.check_against(&graph) {
                return internal(msg);
            }
            if m.len() + slack < graph.na() {
                return internal(format!("matching of size {} is too small", m.len()));
            }
            ResultDocument {
                matching: Some(matching_doc(&graph, &m)),
                stats: Some(stats(Some(m.len()))),
                ..ResultDocument::new(Status::Feasible)
            }
        }
        MatchingOutcome::Violated(v) => {
            if !v.recomputes(&graph) {
                return internal("violating set does not recompute".into());
            }
            ResultDocument {
                certificate: Some(violator_doc(&graph, &v)),
                stats: Some(stats(None)),
                ..ResultDocument::new(Status::Infeasible)
            }
        }
    }
}

/// Least slack `ε*` with the set attaining it.
pub fn deficiency_instance(instance: &Instance) -> ResultDocument {
    let graph = to_graph(instance);
    let (eps, cert) = match minimal_deficiency_with_witness(instance) {
        Ok(x) => x,
        Err(e) => return e.into(),
    };
    let stats = Stats {
        algorithm: "flow".to_string(),
        ..Stats::default()
    };
    match cert {
        Some(cert) => {
            if cert.deficiency != eps {
                return internal(format!("cut deficiency {} differs from {eps}", cert.deficiency));
            }
            ResultDocument {
                minimal_deficiency: Some(eps),
                ..infeasible(&graph, &cert, stats)
            }
        }
        None => ResultDocument {
            minimal_deficiency: Some(eps),
            stats: Some(stats),
            ..ResultDocument::new(Status::Feasible)
        },
    }
}

pub fn cmd_check(input: &Path, algorithm: Algorithm) -> ResultDocument {
    load_instance(input).map_or_else(ResultDocument::from, |inst| check_instance(&inst, algorithm))
}

pub fn cmd_couple(input: &Path, forest: bool, epsilon: Option<&Rational>, algorithm: Algorithm) -> ResultDocument {
    load_instance(input).map_or_else(ResultDocument::from, |inst| {
        couple_instance(&inst, forest, epsilon, algorithm)
    })
}

pub fn cmd_match(input: &Path, k: Option<usize>) -> ResultDocument {
    load_instance(input).map_or_else(ResultDocument::from, |inst| match_instance(&inst, k))
}

pub fn cmd_deficiency(input: &Path) -> ResultDocument {
    load_instance(input).map_or_else(ResultDocument::from, |inst| deficiency_instance(&inst))
}

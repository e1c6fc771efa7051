//! Oracles shared by the integration tests. Everything here is written
//! directly from the definitions, without the library's scanners or flows.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use coupling_core::cli::ResultDocument;
use coupling_core::{Instance, Rational, WeightedBipartiteGraph};

/// `max over U ⊆ A of w(U) - w(N(U))`, by plain enumeration; at least 0
/// because of the empty set.
pub fn max_excess(graph: &WeightedBipartiteGraph) -> Rational {
    let na = graph.na();
    assert!(na <= 20);
    let mut best = Rational::zero();
    for mask in 0u32..(1 << na) {
        let mut w_u = Rational::zero();
        let mut nbrs = BTreeSet::new();
        for a in 0..na {
            if mask & (1 << a) != 0 {
                w_u += &graph.a_weights()[a];
                for &(x, b) in graph.edges() {
                    if x == a {
                        nbrs.insert(b);
                    }
                }
            }
        }
        let w_n: Rational = nbrs.iter().map(|&b| graph.b_weights()[b].clone()).sum();
        let excess = w_u - w_n;
        if excess > best {
            best = excess;
        }
    }
    best
}

pub fn condition_holds(graph: &WeightedBipartiteGraph) -> bool {
    !max_excess(graph).is_positive()
}

/// `P(U) - P'(N_R(U))` for one subset.
pub fn excess_of(graph: &WeightedBipartiteGraph, subset: &[usize]) -> Rational {
    let w_u: Rational = subset.iter().map(|&a| graph.a_weights()[a].clone()).sum();
    let nbrs: BTreeSet<usize> = graph
        .edges()
        .iter()
        .filter(|(a, _)| subset.contains(a))
        .map(|&(_, b)| b)
        .collect();
    let w_n: Rational = nbrs.iter().map(|&b| graph.b_weights()[b].clone()).sum();
    w_u - w_n
}

/// Cycle detection by depth-first search over the undirected bipartite graph.
pub fn has_cycle(na: usize, nb: usize, edges: &[(usize, usize)]) -> bool {
    let n = na + nb;
    let mut adj = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((na + b, id));
        adj[na + b].push((a, id));
    }
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, via)) = stack.pop() {
            for &(u, id) in &adj[v] {
                if id == via {
                    continue;
                }
                if seen[u] {
                    return true;
                }
                seen[u] = true;
                stack.push((u, id));
            }
        }
    }
    false
}

pub fn row_sums(na: usize, entries: &[((usize, usize), Rational)]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); na];
    for ((a, _), m) in entries {
        out[*a] += m;
    }
    out
}

pub fn column_sums(nb: usize, entries: &[((usize, usize), Rational)]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); nb];
    for ((_, b), m) in entries {
        out[*b] += m;
    }
    out
}

pub fn relation_mass(instance: &Instance, entries: &[((usize, usize), Rational)]) -> Rational {
    entries
        .iter()
        .filter(|((a, b), _)| instance.relation().contains(&(*a, *b)))
        .map(|(_, m)| m.clone())
        .sum()
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs every case under `tests/golden`: each directory holds
/// `instance.json`, the command line in `args`, the expected stdout in
/// `expected.out` and the exit code in `exit_code`.
pub fn run_golden_corpus() -> Vec<(String, Result<(), String>)> {
    let mut cases: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .expect("golden corpus exists")
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_dir())
        .collect();
    cases.sort();
    cases
        .into_iter()
        .map(|dir| (dir.file_name().unwrap().to_string_lossy().into_owned(), run_case(&dir)))
        .collect()
}

fn run_case(dir: &Path) -> Result<(), String> {
    let read = |name: &str| std::fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"));
    let args = read("args")?;
    let expected = read("expected.out")?;
    let exit: i32 = read("exit_code")?
        .trim()
        .parse()
        .map_err(|e| format!("exit_code: {e}"))?;
    let out = Command::new(env!("CARGO_BIN_EXE_couplings"))
        .args(args.split_whitespace())
        .args(["--input", "instance.json"])
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    if stdout != expected {
        return Err(format!("stdout differs:\n--- expected\n{expected}--- actual\n{stdout}"));
    }
    if out.status.code() != Some(exit) {
        return Err(format!("exit code {:?}, expected {exit}", out.status.code()));
    }
    if !args.contains("text") {
        let doc = ResultDocument::from_json(&stdout).map_err(|e| format!("document does not parse: {e}"))?;
        if doc.to_json() != stdout {
            return Err("document does not re-serialize byte-identically".into());
        }
        if doc.exit_code() != exit {
            return Err("status disagrees with exit code".into());
        }
    }
    Ok(())
}

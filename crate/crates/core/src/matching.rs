//! Bipartite matchings: maximum and perfect matchings, matchings with
//! deficiency, matchings peeled off forests, and couplings with a bounded
//! amount of mass off the relation.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::coupling::{couple_graph, subforest_by_cycle_canceling};
use crate::error::{Error, Result};
use crate::feasibility::minimal_deficiency;
use crate::flow::{max_flow, min_cut_violator, FlowNetwork};
use crate::graph::{to_graph, Side, Vertex, WeightedBipartiteGraph};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::solution::{Coupling, CouplingOutcome, HallViolator, Matching, MatchingOutcome};

pub const DEFAULT_BLOWUP_CAP: usize = 5000;

/// Hopcroft–Karp on adjacency lists `adj[a] = [b, ...]`. Returns the partner
/// of every left vertex. Free left vertices are processed in index order and
/// neighbors in list order, so the result is deterministic.
fn hopcroft_karp(adj: &[Vec<usize>], nb: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let na = adj.len();
    let mut mate_a: Vec<Option<usize>> = vec![None; na];
    let mut mate_b: Vec<Option<usize>> = vec![None; nb];
    let mut dist = vec![INF; na];
    let mut cursor = vec![0usize; na];
    loop {
        // layer the free left vertices and what alternates out of them
        let mut queue = VecDeque::new();
        for a in 0..na {
            if mate_a[a].is_none() {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = INF;
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                match mate_b[b] {
                    None => found = true,
                    Some(a2) if dist[a2] == INF => {
                        dist[a2] = dist[a] + 1;
                        queue.push_back(a2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            return mate_a;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        for root in 0..na {
            if mate_a[root].is_some() {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&a) = stack.last() {
                let Some(&b) = adj[a].get(cursor[a]) else {
                    dist[a] = INF;
                    stack.pop();
                    if let Some(&parent) = stack.last() {
                        cursor[parent] += 1;
                    }
                    continue;
                };
                match mate_b[b] {
                    None => {
                        for &u in &stack {
                            let v = adj[u][cursor[u]];
                            mate_a[u] = Some(v);
                            mate_b[v] = Some(u);
                        }
                        break;
                    }
                    Some(next) if dist[next] == dist[a].wrapping_add(1) => stack.push(next),
                    Some(_) => cursor[a] += 1,
                }
            }
        }
    }
}

fn adjacency(graph: &WeightedBipartiteGraph) -> Vec<Vec<usize>> {
    (0..graph.na())
        .map(|i| graph.neighbors(Vertex::A(i)).to_vec())
        .collect()
}

fn to_matching(mate_a: &[Option<usize>]) -> Matching {
    Matching::new(
        mate_a
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (a, b)))
            .collect(),
    )
    .expect("mates are disjoint")
}

/// Maximum-cardinality matching (weights are ignored).
pub fn max_matching(graph: &WeightedBipartiteGraph) -> Matching {
    to_matching(&hopcroft_karp(&adjacency(graph), graph.nb()))
}

/// `A` vertices reachable from unmatched `A` vertices along alternating
/// paths. With a maximum matching, `|Z| - |N(Z)|` is the number of
/// unmatched `A` vertices.
fn alternating_reach(graph: &WeightedBipartiteGraph, matching: &Matching) -> Vec<usize> {
    let mut mate_b = vec![None; graph.nb()];
    let mut matched_a = vec![false; graph.na()];
    for &(a, b) in matching.edges() {
        mate_b[b] = Some(a);
        matched_a[a] = true;
    }
    let mut seen = vec![false; graph.na()];
    let mut queue: VecDeque<usize> = (0..graph.na()).filter(|&a| !matched_a[a]).collect();
    for &a in &queue {
        seen[a] = true;
    }
    while let Some(a) = queue.pop_front() {
        for &b in graph.neighbors(Vertex::A(a)) {
            if let Some(a2) = mate_b[b] {
                if !seen[a2] {
                    seen[a2] = true;
                    queue.push_back(a2);
                }
            }
        }
    }
    (0..graph.na()).filter(|&a| seen[a]).collect()
}

fn violator(graph: &WeightedBipartiteGraph, matching: &Matching, k: usize) -> HallViolator {
    let subset = alternating_reach(graph, matching);
    let neighborhood = graph.neighborhood_of(Side::A, &subset).into_iter().collect();
    HallViolator {
        subset,
        neighborhood,
        k,
    }
}

fn require_square(graph: &WeightedBipartiteGraph) -> Result<usize> {
    if graph.na() != graph.nb() {
        return Err(Error::UnequalSides {
            a: graph.na(),
            b: graph.nb(),
        });
    }
    Ok(graph.na())
}

/// A perfect matching, or a set `U` with `|U| > |N(U)|`.
pub fn perfect_matching(graph: &WeightedBipartiteGraph) -> Result<MatchingOutcome> {
    matching_with_deficiency(graph, 0)
}

/// A matching of size at least `n - k`, or a set `U` with `|U| > |N(U)| + k`.
/// Decided directly from a maximum matching.
pub fn matching_with_deficiency(graph: &WeightedBipartiteGraph, k: usize) -> Result<MatchingOutcome> {
    let n = require_square(graph)?;
    let m = max_matching(graph);
    if m.len() + k >= n {
        Ok(MatchingOutcome::Matched(m))
    } else {
        Ok(MatchingOutcome::Violated(violator(graph, &m, k)))
    }
}

/// Same contract as [`matching_with_deficiency`], through the augmented
/// graph: add `k` vertices to each side joined to everything on the other
/// side, look for a perfect matching there, and keep only original edges.
pub fn matching_with_deficiency_augmented(graph: &WeightedBipartiteGraph, k: usize) -> Result<MatchingOutcome> {
    let n = require_square(graph)?;
    let size = n + k;
    let mut adj = adjacency(graph);
    for nbrs in &mut adj {
        nbrs.extend(n..size);
    }
    adj.extend((0..k).map(|_| (0..size).collect::<Vec<_>>()));
    let mate_a = hopcroft_karp(&adj, size);
    if mate_a.iter().all(Option::is_some) {
        let kept: Vec<_> = mate_a[..n]
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.filter(|&b| b < n).map(|b| (a, b)))
            .collect();
        return Ok(MatchingOutcome::Matched(
            Matching::new(kept).expect("mates are disjoint"),
        ));
    }
    // alternating reach in the augmented graph; a universal vertex in it would
    // see all of B~, so the set lies inside the original A
    let aug = WeightedBipartiteGraph::unit(
        size,
        size,
        adj.iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.iter().map(move |&b| (a, b))),
    )?;
    let reach = alternating_reach(&aug, &to_matching(&mate_a));
    debug_assert!(reach.iter().all(|&a| a < n));
    let subset: Vec<usize> = reach.into_iter().filter(|&a| a < n).collect();
    let neighborhood = graph.neighborhood_of(Side::A, &subset).into_iter().collect();
    Ok(MatchingOutcome::Violated(HallViolator {
        subset,
        neighborhood,
        k,
    }))
}

/// Perfect matching built by repeatedly taking a forest that satisfies the
/// marriage condition, matching one of its leaves to its neighbor, and
/// recursing on the graph without those two vertices.
pub fn matching_from_forest(graph: &WeightedBipartiteGraph) -> Result<Matching> {
    let n = require_square(graph)?;
    let mut current = graph.with_unit_weights();
    let mut a_orig: Vec<usize> = (0..n).collect();
    let mut b_orig: Vec<usize> = (0..n).collect();
    let mut edges = Vec::with_capacity(n);
    while current.na() > 0 {
        let coupling = match couple_graph(&current)? {
            CouplingOutcome::Coupled(c) => c,
            CouplingOutcome::Infeasible(cert) => {
                let labels: Vec<_> = cert.violating_set.iter().map(|&i| &current.a_labels()[i]).collect();
                return Err(Error::ConditionViolated(format!(
                    "U = {labels:?} has |U| = {} > |N(U)| = {}",
                    cert.lhs, cert.rhs
                )));
            }
        };
        let forest = subforest_by_cycle_canceling(&current, &coupling)?;
        let leaf = (0..current.na())
            .map(Vertex::A)
            .chain((0..current.nb()).map(Vertex::B))
            .find(|&v| forest.graph().neighbors(v).len() == 1)
            .expect("a nonempty forest with no isolated vertex has a leaf");
        let other = forest.graph().neighbors(leaf)[0];
        let (x, y) = match leaf {
            Vertex::A(a) => (a, other),
            Vertex::B(b) => (other, b),
        };
        edges.push((a_orig[x], b_orig[y]));
        a_orig.remove(x);
        b_orig.remove(y);
        let a_keep: Vec<usize> = (0..current.na()).filter(|&i| i != x).collect();
        let b_keep: Vec<usize> = (0..current.nb()).filter(|&j| j != y).collect();
        current = current.induced(&a_keep, &b_keep);
    }
    let m = Matching::new(edges).expect("removed vertices are never reused");
    debug_assert!(m.check_against(graph).is_ok());
    Ok(m)
}

fn check_epsilon(instance: &Instance, epsilon: &Rational) -> Result<()> {
    instance.require_probability()?;
    if epsilon.is_negative() {
        return Err(Error::NegativeEpsilon(epsilon.clone()));
    }
    Ok(())
}

/// ε-coupling through the blow-up: `N w(x)` unit copies of every vertex,
/// copies adjacent when the originals are related. A matching of size
/// `N - k` (`k = εN`) in the blown-up graph, completed by pairing the
/// unmatched copies in sorted order, aggregates to a coupling with
/// `P̂(R) >= 1 - ε`. The blow-up is refused when `N (|A| + |B|)` exceeds `cap`.
pub fn couple_with_deficiency_blowup(instance: &Instance, epsilon: &Rational, cap: usize) -> Result<Coupling> {
    check_epsilon(instance, epsilon)?;
    let minimal = minimal_deficiency(instance)?;
    if *epsilon < minimal {
        return Err(Error::EpsilonTooSmall {
            epsilon: Box::new(epsilon.clone()),
            minimal: Box::new(minimal),
        });
    }
    let eps = epsilon.clone().min(Rational::one());
    let scale = Rational::common_denominator(instance.p().iter().chain(instance.p_prime()).chain([&eps]));
    let copies = &scale * BigInt::from(instance.a_labels().len() + instance.b_labels().len());
    if copies > BigInt::from(cap) {
        return Err(Error::BlowUpTooLarge {
            copies: copies.to_string(),
            cap,
        });
    }
    let count = |r: &Rational| -> usize {
        r.scaled_integer(&scale)
            .and_then(|v| v.to_usize())
            .expect("scale clears every denominator")
    };
    let owner = |masses: &[Rational]| -> Vec<usize> {
        masses
            .iter()
            .enumerate()
            .flat_map(|(x, m)| std::iter::repeat_n(x, count(m)))
            .collect()
    };
    let a_owner = owner(instance.p());
    let b_owner = owner(instance.p_prime());
    let n = count(&Rational::one());
    let k = count(&eps);
    debug_assert_eq!((a_owner.len(), b_owner.len()), (n, n));

    let adj: Vec<Vec<usize>> = a_owner
        .iter()
        .map(|&x| (0..n).filter(|&c| instance.is_related(x, b_owner[c])).collect())
        .collect();
    let mate_a = hopcroft_karp(&adj, n);
    let mut pairs: Vec<(usize, usize)> = mate_a
        .iter()
        .enumerate()
        .filter_map(|(a, b)| b.map(|b| (a, b)))
        .collect();
    assert!(pairs.len() + k >= n, "ε ≥ ε* guarantees a matching of size N - k");
    // keep exactly N - k matched pairs, dropping the largest
    pairs.truncate(n - k);
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    for &(a, b) in &pairs {
        used_a[a] = true;
        used_b[b] = true;
    }
    let free_a = (0..n).filter(|&a| !used_a[a]);
    let free_b = (0..n).filter(|&b| !used_b[b]);
    pairs.extend(free_a.zip(free_b));
    debug_assert_eq!(pairs.len(), n);

    let unit = Rational::new(1, scale);
    let mut coupling = Coupling::new();
    for (a, b) in pairs {
        coupling.add(a_owner[a], b_owner[b], &unit);
    }
    Ok(coupling)
}

/// ε-coupling from a maximum flow on the relation: if the unrouted mass is at
/// most `ε`, the leftovers are paired off by the northwest-corner rule. The
/// leftover pairs are never related (that would be an augmenting path), so
/// the off-relation mass is exactly the minimal deficiency.
pub fn couple_with_deficiency_flow(instance: &Instance, epsilon: &Rational) -> Result<CouplingOutcome> {
    check_epsilon(instance, epsilon)?;
    let graph = to_graph(instance);
    let flow = max_flow(FlowNetwork::from_graph(&graph));
    let shortfall = graph.a_total() - &flow.value;
    if shortfall > *epsilon {
        let cert = min_cut_violator(&graph, &flow).expect("a positive shortfall has a cut");
        return Ok(CouplingOutcome::Infeasible(cert));
    }
    let mut coupling = flow.network.middle_flow();
    let (routed_a, routed_b) = flow.network.routed();
    let mut left_a: Vec<Rational> = instance.p().iter().zip(&routed_a).map(|(p, r)| p - r).collect();
    let mut left_b: Vec<Rational> = instance.p_prime().iter().zip(&routed_b).map(|(p, r)| p - r).collect();
    let (mut i, mut j) = (0, 0);
    while i < left_a.len() && j < left_b.len() {
        if left_a[i].is_zero() {
            i += 1;
            continue;
        }
        if left_b[j].is_zero() {
            j += 1;
            continue;
        }
        let amount = left_a[i].clone().min(left_b[j].clone());
        debug_assert!(!instance.is_related(i, j));
        coupling.add(i, j, &amount);
        left_a[i] -= &amount;
        left_b[j] -= &amount;
    }
    Ok(CouplingOutcome::Coupled(coupling))
}

//! Coupling construction and forest-supported couplings.
//!
//! Two independent routes produce a spanning forest that still satisfies
//! `w(U) <= w(N(U))`:
//!
//! * [`subforest_by_cycle_canceling`] starts from any coupling and shifts
//!   mass around cycles of its support until the support is acyclic.
//! * [`subforest_inductive`] splits on tight sets and otherwise reroutes a
//!   minimum-weight vertex through an auxiliary copy, recursing on smaller
//!   graphs. It enumerates subsets, so it is capped in size.
//!
//! [`edge_weights_from_forest`] then recovers the unique coupling carried by
//! a forest by stripping leaves.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::feasibility::check_condition_bruteforce;
use crate::flow::{max_flow, min_cut_violator, FlowNetwork};
use crate::graph::{to_graph, Forest, Side, Vertex, WeightedBipartiteGraph};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::solution::{Coupling, CouplingOutcome};
use crate::subsets::{indices_to_mask, mask_to_indices, max_excess};

pub const DEFAULT_INDUCTIVE_CAP: usize = 24;

/// Coupling of the graph weights supported on its edges, or a certificate.
/// Requires `w(A) = w(B)`.
pub fn couple_graph(graph: &WeightedBipartiteGraph) -> Result<CouplingOutcome> {
    graph.require_balanced()?;
    let flow = max_flow(FlowNetwork::from_graph(graph));
    Ok(match min_cut_violator(graph, &flow) {
        Some(cert) => CouplingOutcome::Infeasible(cert),
        None => CouplingOutcome::Coupled(flow.network.middle_flow()),
    })
}

/// A coupling of `P` and `P'` with `P̂(R) = 1`, read off a maximum flow, or
/// the min-cut certificate when none exists.
pub fn couple_via_flow(instance: &Instance) -> Result<CouplingOutcome> {
    instance.require_probability()?;
    couple_graph(&to_graph(instance))
}

fn check_coupling_input(graph: &WeightedBipartiteGraph, coupling: &Coupling) -> Result<()> {
    if let Some(&(a, b)) = coupling.support().iter().find(|&&(a, b)| !graph.has_edge(a, b)) {
        let label = |labels: &[String], i: usize| labels.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        return Err(Error::UnsupportedEdge {
            a: label(graph.a_labels(), a),
            b: label(graph.b_labels(), b),
        });
    }
    coupling.check_against(graph, true).map_err(Error::ConditionViolated)
}

/// Finds a cycle in the support by depth-first search, starting from the
/// smallest vertex and visiting neighbors in increasing order. Returns the
/// cycle's edges in traversal order.
fn find_cycle(support: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(a, b) in support {
        adj.entry(Vertex::A(a)).or_default().push(Vertex::B(b));
        adj.entry(Vertex::B(b)).or_default().push(Vertex::A(a));
    }
    for nbrs in adj.values_mut() {
        nbrs.sort_unstable();
    }
    let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
    let roots: Vec<Vertex> = adj.keys().copied().collect();
    for root in roots {
        if parent.contains_key(&root) {
            continue;
        }
        parent.insert(root, None);
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            let nbrs = &adj[&v];
            if next == nbrs.len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let u = nbrs[next];
            if parent[&v] == Some(u) {
                continue;
            }
            if parent.contains_key(&u) {
                // back edge v -> u; u is an ancestor of v
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = parent[&cur].expect("u is an ancestor of v");
                    path.push(cur);
                }
                path.push(v);
                let edges = path
                    .windows(2)
                    .map(|w| match (w[0], w[1]) {
                        (Vertex::A(a), Vertex::B(b)) | (Vertex::B(b), Vertex::A(a)) => (a, b),
                        _ => unreachable!("support edges join opposite sides"),
                    })
                    .collect();
                return Some(edges);
            }
            parent.insert(u, Some(v));
            stack.push((u, 0));
        }
    }
    None
}

/// Iterator over the intermediate couplings of cycle canceling. Each step
/// takes a cycle `C` of the support, puts `ε = min mass on C`, takes the
/// smallest edge `e*` attaining it, and moves `ε` from the alternate class
/// containing `e*` to the other class. Every vertex meets both classes
/// equally often, so marginals are unchanged and `e*` leaves the support.
#[derive(Debug, Clone)]
pub struct CycleCanceling {
    coupling: Coupling,
}

impl CycleCanceling {
    pub fn new(graph: &WeightedBipartiteGraph, coupling: Coupling) -> Result<Self> {
        check_coupling_input(graph, &coupling)?;
        Ok(CycleCanceling { coupling })
    }

    pub fn current(&self) -> &Coupling {
        &self.coupling
    }

    pub fn into_coupling(self) -> Coupling {
        self.coupling
    }
}

impl Iterator for CycleCanceling {
    type Item = Coupling;

    fn next(&mut self) -> Option<Coupling> {
        let cycle = find_cycle(&self.coupling.support())?;
        let masses: Vec<Rational> = cycle.iter().map(|&(a, b)| self.coupling.get(a, b)).collect();
        let eps = masses.iter().min().cloned().expect("cycles have edges");
        let star = (0..cycle.len())
            .filter(|&k| masses[k] == eps)
            .min_by_key(|&k| cycle[k])
            .expect("the minimum is attained");
        let neg_eps = -eps.clone();
        for (k, &(a, b)) in cycle.iter().enumerate() {
            let delta = if k % 2 == star % 2 { &neg_eps } else { &eps };
            self.coupling.add(a, b, delta);
        }
        debug_assert!(self.coupling.get(cycle[star].0, cycle[star].1).is_zero());
        Some(self.coupling.clone())
    }
}

/// Runs cycle canceling to completion and returns the final coupling, whose
/// support is a forest.
pub fn cancel_cycles(graph: &WeightedBipartiteGraph, coupling: Coupling) -> Result<Coupling> {
    let mut steps = CycleCanceling::new(graph, coupling)?;
    steps.by_ref().for_each(drop);
    Ok(steps.into_coupling())
}

/// Spanning forest of `graph` satisfying the condition, obtained as the
/// support of the coupling after cycle canceling.
pub fn subforest_by_cycle_canceling(graph: &WeightedBipartiteGraph, coupling: &Coupling) -> Result<Forest> {
    let canceled = cancel_cycles(graph, coupling.clone())?;
    Forest::from_edges(graph, canceled.support())
}

/// A proper, nonempty subset `U` of one side with `w(U) = w(N(U))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightSet {
    pub side: Side,
    pub vertices: Vec<usize>,
}

/// Lexicographically smallest proper tight subset of `A`, else of `B`.
/// Assumes the condition holds, so every excess is at most zero.
pub fn find_tight_set(graph: &WeightedBipartiteGraph) -> Option<TightSet> {
    [Side::A, Side::B].into_iter().find_map(|side| {
        let n = match side {
            Side::A => graph.na(),
            Side::B => graph.nb(),
        };
        let full = (1u64 << n) - 1;
        max_excess(graph, side, |m| m != 0 && m != full)
            .filter(|(_, excess)| excess.is_zero())
            .map(|(mask, _)| TightSet {
                side,
                vertices: mask_to_indices(mask),
            })
    })
}

fn complement(n: usize, keep: &[usize]) -> Vec<usize> {
    let keep: BTreeSet<_> = keep.iter().copied().collect();
    (0..n).filter(|i| !keep.contains(i)).collect()
}

/// Splits `V` into `U ∪ N(U)` and the rest and recurses on both halves.
fn split_on(graph: &WeightedBipartiteGraph, tight: &TightSet) -> Vec<(usize, usize)> {
    let nbhd: Vec<usize> = graph.neighborhood_of(tight.side, &tight.vertices).into_iter().collect();
    let (a1, b1) = match tight.side {
        Side::A => (tight.vertices.clone(), nbhd),
        Side::B => (nbhd, tight.vertices.clone()),
    };
    let (a2, b2) = (complement(graph.na(), &a1), complement(graph.nb(), &b1));
    let mut edges = Vec::new();
    for (a_keep, b_keep) in [(a1, b1), (a2, b2)] {
        let sub = graph.induced(&a_keep, &b_keep);
        edges.extend(induct(&sub).into_iter().map(|(i, j)| (a_keep[i], b_keep[j])));
    }
    edges.sort_unstable();
    edges
}

fn induct(graph: &WeightedBipartiteGraph) -> Vec<(usize, usize)> {
    // a star or an edgeless graph is already a forest
    if graph.na() <= 1 || graph.nb() <= 1 {
        return graph.edges().to_vec();
    }
    if let Some(tight) = find_tight_set(graph) {
        return split_on(graph, &tight);
    }
    let lightest = graph
        .a_weights()
        .iter()
        .enumerate()
        .map(|(i, w)| (w, Vertex::A(i)))
        .chain(graph.b_weights().iter().enumerate().map(|(j, w)| (w, Vertex::B(j))))
        .min()
        .map(|(_, v)| v)
        .expect("graph has vertices");
    match lightest {
        Vertex::A(x) => reroute_lightest(graph, x),
        Vertex::B(x) => {
            let mut edges: Vec<_> = reroute_lightest(&graph.transpose(), x)
                .into_iter()
                .map(|(b, a)| (a, b))
                .collect();
            edges.sort_unstable();
            edges
        }
    }
}

/// No proper tight set exists and `x ∈ A` has minimum weight `ε`. Take its
/// smallest neighbor `y` and
/// `δ = min { w(N(U)) - w(U) : U ⊆ A, x ∉ U, U ∩ N(y) ≠ ∅ }` with minimizer `D`.
fn reroute_lightest(graph: &WeightedBipartiteGraph, x: usize) -> Vec<(usize, usize)> {
    let y = *graph
        .neighbors(Vertex::A(x))
        .first()
        .expect("a positive-weight vertex has a neighbor");
    let x_bit = 1u64 << x;
    let ny = indices_to_mask(graph.neighbors(Vertex::B(y)).iter().copied());
    let (d_mask, excess) =
        max_excess(graph, Side::A, |m| m & x_bit == 0 && m & ny != 0).expect("N(y) contains a vertex other than x");
    let delta = -excess;
    let others = ((1u64 << graph.na()) - 1) & !x_bit;
    #[cfg(test)]
    tests::BRANCHES.with(|b| b.borrow_mut()[usize::from(d_mask == others)] += 1);

    if d_mask != others {
        // Add x~ adjacent to y only, moving δ of x's weight onto it. Then
        // D + x~ is tight, and splitting on it separates x from y.
        let mut a_weights = graph.a_weights().to_vec();
        a_weights[x] -= &delta;
        let mut aug = graph.with_weights(a_weights, graph.b_weights().to_vec());
        let copy = aug.push_a_vertex(format!("{}~", graph.a_labels()[x]), delta, &[y]);
        let tight = TightSet {
            side: Side::A,
            vertices: mask_to_indices(d_mask | (1u64 << copy)),
        };
        let mut edges: Vec<_> = split_on(&aug, &tight).into_iter().filter(|&e| e != (copy, y)).collect();
        debug_assert!(edges.iter().all(|&(a, _)| a != copy));
        edges.push((x, y));
        edges.sort_unstable();
        edges
    } else {
        // D = A - x forces δ = ε: give all of x to y and drop x.
        let a_keep = complement(graph.na(), &[x]);
        let b_keep: Vec<usize> = (0..graph.nb()).collect();
        let sub = graph.induced(&a_keep, &b_keep);
        let mut b_weights = sub.b_weights().to_vec();
        b_weights[y] -= &delta;
        let sub = sub.with_weights(sub.a_weights().to_vec(), b_weights);
        let mut edges: Vec<_> = induct(&sub).into_iter().map(|(i, j)| (a_keep[i], j)).collect();
        edges.push((x, y));
        edges.sort_unstable();
        edges
    }
}

/// Spanning forest satisfying the condition, built by the tight-set
/// induction. `cap` bounds `|A| + |B|` because tight sets and `δ` are found
/// by enumeration.
pub fn subforest_inductive(graph: &WeightedBipartiteGraph, cap: usize) -> Result<Forest> {
    if graph.vertex_count() > cap {
        return Err(Error::SizeCapExceeded {
            size: graph.vertex_count(),
            cap,
        });
    }
    graph.require_balanced()?;
    let verdict = check_condition_bruteforce(graph, cap)?;
    if !verdict.satisfied {
        return Err(Error::ConditionViolated(format!(
            "U = {:?} has w(U) - w(N(U)) = {}",
            verdict.worst_subset, verdict.worst_excess
        )));
    }
    Forest::from_edges(graph, induct(graph))
}

/// Recovers the edge weights carried by a forest: repeatedly take the
/// smallest leaf `x` with neighbor `y`, put `w(x)` on `{x, y}` and subtract it
/// from `y`. Isolated vertices must have (remaining) weight zero.
pub fn edge_weights_from_forest(forest: &Forest) -> Result<Coupling> {
    let g = forest.graph();
    let mut weight: BTreeMap<Vertex, Rational> = BTreeMap::new();
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for i in 0..g.na() {
        weight.insert(Vertex::A(i), g.a_weights()[i].clone());
        adj.insert(
            Vertex::A(i),
            g.neighbors(Vertex::A(i)).iter().map(|&j| Vertex::B(j)).collect(),
        );
    }
    for j in 0..g.nb() {
        weight.insert(Vertex::B(j), g.b_weights()[j].clone());
        adj.insert(
            Vertex::B(j),
            g.neighbors(Vertex::B(j)).iter().map(|&i| Vertex::A(i)).collect(),
        );
    }
    let stranded = |v: Vertex, w: &Rational| {
        Error::ConditionViolated(format!("{} is left with weight {w} and no edges", g.vertex_name(v)))
    };
    for (v, nbrs) in &adj {
        if nbrs.is_empty() && !weight[v].is_zero() {
            return Err(stranded(*v, &weight[v]));
        }
    }
    let mut leaves: BTreeSet<Vertex> = adj.iter().filter(|(_, n)| n.len() == 1).map(|(v, _)| *v).collect();
    let mut coupling = Coupling::new();
    while let Some(x) = leaves.pop_first() {
        let Some(&y) = adj[&x].first() else { continue };
        let wx = weight.insert(x, Rational::zero()).expect("every vertex has a weight");
        let wy = weight.get_mut(&y).expect("every vertex has a weight");
        if wx > *wy {
            return Err(Error::ConditionViolated(format!(
                "leaf {} needs {wx} but {} only has {wy}",
                g.vertex_name(x),
                g.vertex_name(y)
            )));
        }
        *wy -= &wx;
        match (x, y) {
            (Vertex::A(a), Vertex::B(b)) | (Vertex::B(b), Vertex::A(a)) => coupling.add(a, b, &wx),
            _ => unreachable!("forest edges join opposite sides"),
        }
        adj.get_mut(&x).unwrap().remove(&y);
        let y_nbrs = adj.get_mut(&y).unwrap();
        y_nbrs.remove(&x);
        match y_nbrs.len() {
            0 => {
                leaves.remove(&y);
                if !weight[&y].is_zero() {
                    return Err(stranded(y, &weight[&y]));
                }
            }
            1 => {
                leaves.insert(y);
            }
            _ => {}
        }
    }
    Ok(coupling)
}

/// Forest-supported coupling: flow coupling, then cycle canceling, then
/// leaf stripping on the resulting forest. At most `|A| + |B| - 1` entries
/// are nonzero.
pub fn couple_forest(instance: &Instance) -> Result<CouplingOutcome> {
    instance.require_probability()?;
    let graph = to_graph(instance);
    match couple_graph(&graph)? {
        CouplingOutcome::Coupled(coupling) => {
            let canceled = cancel_cycles(&graph, coupling)?;
            let forest = Forest::from_edges(&graph, canceled.support())?;
            let stripped = edge_weights_from_forest(&forest)?;
            debug_assert_eq!(stripped, canceled, "a forest carries a unique coupling");
            Ok(CouplingOutcome::Coupled(stripped))
        }
        infeasible => Ok(infeasible),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_acyclic;
    use crate::random::{random_feasible_instance, rng_for};
    use crate::rational::q;
    use std::cell::RefCell;

    thread_local! {
        /// Calls of the `D ≠ A - x` and `D = A - x` rerouting branches.
        pub(super) static BRANCHES: RefCell<[usize; 2]> = const { RefCell::new([0, 0]) };
    }

    fn labeled(a: &[Rational], b: &[Rational], edges: &[(usize, usize)]) -> WeightedBipartiteGraph {
        WeightedBipartiteGraph::new(
            (1..=a.len()).map(|i| format!("a{i}")).collect(),
            (1..=b.len()).map(|j| format!("b{j}")).collect(),
            a.to_vec(),
            b.to_vec(),
            edges.iter().copied(),
        )
        .unwrap()
    }

    fn complete(n: usize, m: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect()
    }

    fn satisfies(g: &WeightedBipartiteGraph) -> bool {
        check_condition_bruteforce(g, 20).unwrap().satisfied
    }

    #[test]
    fn flow_coupling_of_one_pair() {
        let inst = Instance::new(
            vec!["a".into()],
            vec!["b".into()],
            vec![q(1, 1)],
            vec![q(1, 1)],
            [(0, 0)],
        )
        .unwrap();
        let c = couple_via_flow(&inst).unwrap();
        assert_eq!(c.coupling().unwrap().get(0, 0), q(1, 1));
        assert_eq!(couple_forest(&inst).unwrap(), c);
    }

    #[test]
    fn flow_coupling_marginals_on_complete_2x2() {
        let inst = Instance::new(
            vec!["a1".into(), "a2".into()],
            vec!["b1".into(), "b2".into()],
            vec![q(1, 2); 2],
            vec![q(1, 2); 2],
            complete(2, 2),
        )
        .unwrap();
        let c = couple_via_flow(&inst).unwrap();
        c.coupling().unwrap().check_against(&to_graph(&inst), true).unwrap();
    }

    #[test]
    fn flow_coupling_reports_certificate() {
        let inst = Instance::new(
            vec!["a1".into(), "a2".into()],
            vec!["b1".into(), "b2".into()],
            vec![q(1, 2); 2],
            vec![q(1, 1), q(0, 1)],
            [(0, 0), (1, 1)],
        )
        .unwrap();
        let cert = couple_via_flow(&inst).unwrap().certificate().cloned().unwrap();
        assert_eq!(cert.violating_set, vec![1]);
        assert_eq!(couple_forest(&inst).unwrap().certificate(), Some(&cert));
    }

    #[test]
    fn forest_supported_coupling_is_left_alone() {
        let g = labeled(&[q(1, 3), q(2, 3)], &[q(1, 1)], &[(0, 0), (1, 0)]);
        let c = Coupling::from_entries([((0, 0), q(1, 3)), ((1, 0), q(2, 3))]);
        let mut steps = CycleCanceling::new(&g, c.clone()).unwrap();
        assert!(steps.next().is_none());
        assert_eq!(subforest_by_cycle_canceling(&g, &c).unwrap().edges(), &[(0, 0), (1, 0)]);
    }

    #[test]
    fn one_cancellation_on_uniform_square() {
        let g = labeled(&vec![q(1, 2); 2], &vec![q(1, 2); 2], &complete(2, 2));
        let uniform = Coupling::from_entries(complete(2, 2).into_iter().map(|e| (e, q(1, 4))));
        let steps: Vec<_> = CycleCanceling::new(&g, uniform).unwrap().collect();
        assert_eq!(steps.len(), 1);
        let last = &steps[0];
        last.check_against(&g, true).unwrap();
        assert!(last.support_size() <= 3);
        assert!(is_acyclic(2, 2, &last.support()));
        // every cycle edge attains ε = 1/4, so the whole class of e* = (a1, b1) empties
        assert_eq!(last.get(0, 0), q(0, 1));
        assert_eq!(last.get(0, 1), q(1, 2));
        assert_eq!(last.get(1, 0), q(1, 2));
        assert_eq!(last.get(1, 1), q(0, 1));
    }

    #[test]
    fn unsupported_edges_are_rejected() {
        let g = labeled(&[q(1, 1)], &[q(1, 1)], &[]);
        let c = Coupling::from_entries([((0, 0), q(1, 1))]);
        assert_eq!(
            subforest_by_cycle_canceling(&g, &c).unwrap_err(),
            Error::UnsupportedEdge {
                a: "a1".into(),
                b: "b1".into()
            }
        );
    }

    #[test]
    fn inductive_base_case() {
        let g = labeled(&[q(1, 1)], &[q(1, 1)], &[(0, 0)]);
        assert_eq!(subforest_inductive(&g, 24).unwrap().edges(), &[(0, 0)]);
    }

    #[test]
    fn inductive_uniform_square() {
        let g = labeled(&vec![q(1, 2); 2], &vec![q(1, 2); 2], &complete(2, 2));
        let f = subforest_inductive(&g, 24).unwrap();
        assert_eq!(f.edges().len(), 3);
        assert!(satisfies(f.graph()));
    }

    #[test]
    fn inductive_on_complete_graphs() {
        // no proper tight set, and on a complete graph D is always A - x
        let g = labeled(
            &[q(1, 10), q(3, 10), q(6, 10)],
            &[q(2, 10), q(3, 10), q(5, 10)],
            &complete(3, 3),
        );
        assert!(find_tight_set(&g).is_none());
        BRANCHES.with(|b| *b.borrow_mut() = [0, 0]);
        let f = subforest_inductive(&g, 24).unwrap();
        assert!(BRANCHES.with(|b| b.borrow()[1]) > 0);
        assert!(satisfies(f.graph()));
        assert_eq!(edge_weights_from_forest(&f).unwrap().total(), q(1, 1));
    }

    #[test]
    fn inductive_takes_both_branches() {
        BRANCHES.with(|b| *b.borrow_mut() = [0, 0]);
        for k in 0..200 {
            let mut rng = rng_for(7, k);
            let inst = random_feasible_instance(&mut rng, 4, 4, 12, 0.6);
            let g = to_graph(&inst);
            let f = subforest_inductive(&g, 24).unwrap();
            assert!(satisfies(f.graph()));
            edge_weights_from_forest(&f).unwrap().check_against(&g, true).unwrap();
        }
        let [split, absorb] = BRANCHES.with(|b| *b.borrow());
        assert!(split > 0 && absorb > 0, "branches hit: {split}, {absorb}");
    }

    #[test]
    fn inductive_errors() {
        let g = labeled(&vec![q(1, 2); 2], &[q(1, 1), q(0, 1)], &[(0, 0), (1, 1)]);
        assert_eq!(subforest_inductive(&g, 24).unwrap_err().kind(), "ConditionViolated");
        assert_eq!(subforest_inductive(&g, 3).unwrap_err().kind(), "SizeCapExceeded");
        let g = labeled(&[q(1, 1)], &[q(1, 2)], &[(0, 0)]);
        assert_eq!(subforest_inductive(&g, 24).unwrap_err().kind(), "UnbalancedTotals");
    }

    #[test]
    fn leaf_stripping_examples() {
        let g = labeled(&[q(1, 1)], &[q(1, 1)], &[(0, 0)]);
        let c = edge_weights_from_forest(&Forest::new(g).unwrap()).unwrap();
        assert_eq!(c.get(0, 0), q(1, 1));

        let g = labeled(&[q(1, 3), q(2, 3)], &[q(1, 1)], &[(0, 0), (1, 0)]);
        let c = edge_weights_from_forest(&Forest::new(g).unwrap()).unwrap();
        assert_eq!(c.get(0, 0), q(1, 3));
        assert_eq!(c.get(1, 0), q(2, 3));
    }

    #[test]
    fn leaf_stripping_rejects_bad_weights() {
        let g = labeled(&[q(1, 1), q(0, 1)], &[q(1, 2), q(1, 2)], &[(0, 0)]);
        let err = edge_weights_from_forest(&Forest::new(g).unwrap()).unwrap_err();
        assert_eq!(err.kind(), "ConditionViolated");
        let g = labeled(&[q(1, 1), q(1, 1)], &[q(2, 1)], &[(0, 0)]);
        let err = edge_weights_from_forest(&Forest::new(g).unwrap()).unwrap_err();
        assert_eq!(err.kind(), "ConditionViolated");
    }
}

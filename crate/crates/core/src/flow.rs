//! Exact max-flow / min-cut on the network `source -> A -> B -> sink`.
//!
//! Source arcs carry `w(a)`, sink arcs `w(b)`, and every edge `{a, b}` becomes
//! an arc `a -> b` whose capacity is `w(A)`. No flow can exceed `w(A)`, so
//! that capacity acts as infinity. Augmentation uses shortest paths found by
//! breadth-first search in arc insertion order, so results are deterministic.

use std::collections::VecDeque;

use crate::graph::WeightedBipartiteGraph;
use crate::rational::Rational;
use crate::solution::{Certificate, Coupling};

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: Rational,
    flow: Rational,
}

impl Arc {
    fn residual(&self) -> Rational {
        &self.cap - &self.flow
    }
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    na: usize,
    nb: usize,
    // arcs come in pairs: 2k forward, 2k + 1 its reverse
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    middle: Vec<((usize, usize), usize)>,
}

impl FlowNetwork {
    pub fn from_graph(graph: &WeightedBipartiteGraph) -> Self {
        let (na, nb) = (graph.na(), graph.nb());
        let mut net = FlowNetwork {
            na,
            nb,
            arcs: Vec::new(),
            out: vec![Vec::new(); na + nb + 2],
            middle: Vec::with_capacity(graph.edges().len()),
        };
        let (s, t) = (net.source(), net.sink());
        for (i, w) in graph.a_weights().iter().enumerate() {
            net.push_arc(s, 1 + i, w.clone());
        }
        let unbounded = graph.a_total();
        for &(i, j) in graph.edges() {
            let id = net.push_arc(1 + i, 1 + na + j, unbounded.clone());
            net.middle.push(((i, j), id));
        }
        for (j, w) in graph.b_weights().iter().enumerate() {
            net.push_arc(1 + na + j, t, w.clone());
        }
        net
    }

    fn push_arc(&mut self, from: usize, to: usize, cap: Rational) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            cap,
            flow: Rational::zero(),
        });
        self.arcs.push(Arc {
            to: from,
            cap: Rational::zero(),
            flow: Rational::zero(),
        });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.na + self.nb + 1
    }

    pub fn node_count(&self) -> usize {
        self.na + self.nb + 2
    }

    /// Total flow leaving the source.
    pub fn value(&self) -> Rational {
        self.out[self.source()].iter().map(|&id| &self.arcs[id].flow).sum()
    }

    /// Flow on the middle arcs as a coupling (zero entries omitted).
    pub fn middle_flow(&self) -> Coupling {
        Coupling::from_entries(self.middle.iter().map(|&(key, id)| (key, self.arcs[id].flow.clone())))
    }

    /// Flow leaving each `A` node and entering each `B` node.
    pub fn routed(&self) -> (Vec<Rational>, Vec<Rational>) {
        let a = (0..self.na).map(|i| self.arcs[2 * i].flow.clone()).collect();
        let first_sink_arc = 2 * (self.na + self.middle.len());
        let b = (0..self.nb)
            .map(|j| self.arcs[first_sink_arc + 2 * j].flow.clone())
            .collect();
        (a, b)
    }

    /// Checks capacity bounds and conservation.
    pub fn check_feasible(&self) -> Result<(), String> {
        for (k, arc) in self.arcs.iter().enumerate().step_by(2) {
            if arc.flow.is_negative() || arc.flow > arc.cap {
                return Err(format!("arc {k} carries {} with capacity {}", arc.flow, arc.cap));
            }
            if self.arcs[k + 1].flow != -arc.flow.clone() {
                return Err(format!("arc {k} and its reverse disagree"));
            }
        }
        for v in 1..self.sink() {
            let net: Rational = self.out[v].iter().map(|&id| &self.arcs[id].flow).sum();
            if !net.is_zero() {
                return Err(format!("node {v} has net outflow {net}"));
            }
        }
        Ok(())
    }

    fn augmenting_path(&self) -> Option<Vec<usize>> {
        let (s, t) = (self.source(), self.sink());
        let mut via = vec![usize::MAX; self.node_count()];
        let mut seen = vec![false; self.node_count()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.out[v] {
                let arc = &self.arcs[id];
                if !seen[arc.to] && arc.residual().is_positive() {
                    seen[arc.to] = true;
                    via[arc.to] = id;
                    if arc.to == t {
                        let mut path = Vec::new();
                        let mut u = t;
                        while u != s {
                            let id = via[u];
                            path.push(id);
                            u = self.arcs[id ^ 1].to;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        None
    }

    /// Nodes that can still reach the sink through arcs with positive residual.
    fn reaches_sink(&self) -> Vec<bool> {
        let t = self.sink();
        let mut reach = vec![false; self.node_count()];
        reach[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            // an arc u -> v is the reverse of some arc v -> u listed at v
            for &id in &self.out[v] {
                let back = id ^ 1;
                let u = self.arcs[id].to;
                if !reach[u] && self.arcs[back].residual().is_positive() {
                    reach[u] = true;
                    queue.push_back(u);
                }
            }
        }
        reach
    }
}

/// A maximum flow and its value.
#[derive(Debug, Clone)]
pub struct MaxFlow {
    pub value: Rational,
    pub network: FlowNetwork,
}

/// Shortest-augmenting-path maximum flow. Exact capacities make every
/// bottleneck a rational, and the breadth-first choice bounds the number of
/// augmentations independently of the capacities.
pub fn max_flow(mut network: FlowNetwork) -> MaxFlow {
    while let Some(path) = network.augmenting_path() {
        let bottleneck = path
            .iter()
            .map(|&id| network.arcs[id].residual())
            .min()
            .expect("paths are nonempty");
        for &id in &path {
            network.arcs[id].flow += &bottleneck;
            network.arcs[id ^ 1].flow -= &bottleneck;
        }
    }
    MaxFlow {
        value: network.value(),
        network,
    }
}

/// When the flow falls short of `w(A)`, the set `U` of `A` nodes that cannot
/// reach the sink in the residual network. This is the `A` part of the
/// largest minimum cut's source side, and `w(U) - w(N(U))` equals the shortfall.
pub fn min_cut_violator(graph: &WeightedBipartiteGraph, flow: &MaxFlow) -> Option<Certificate> {
    let total = graph.a_total();
    if flow.value >= total {
        return None;
    }
    let reach = flow.network.reaches_sink();
    let subset: Vec<usize> = (0..graph.na()).filter(|&i| !reach[1 + i]).collect();
    let cert = Certificate::for_subset(graph, &subset).expect("a short flow leaves a violated cut");
    debug_assert_eq!(cert.deficiency, &total - &flow.value);
    Some(cert)
}

//! Vertex-weighted bipartite graphs and their spanning forests.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

/// A vertex of a bipartite graph. The derived order puts every `A` vertex
/// before every `B` vertex and is the lexicographic order used for tie-breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    A(usize),
    B(usize),
}

impl Vertex {
    pub fn side(self) -> Side {
        match self {
            Vertex::A(_) => Side::A,
            Vertex::B(_) => Side::B,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Vertex::A(i) | Vertex::B(i) => i,
        }
    }
}

/// `G = (V, E, w)` with bipartition `{A, B}`. Edges are `(a_index, b_index)`
/// pairs, kept sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedBipartiteGraph {
    a_labels: Vec<String>,
    b_labels: Vec<String>,
    a_weights: Vec<Rational>,
    b_weights: Vec<Rational>,
    edges: Vec<(usize, usize)>,
    a_adj: Vec<Vec<usize>>,
    b_adj: Vec<Vec<usize>>,
}

impl fmt::Debug for WeightedBipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedBipartiteGraph")
            .field("a", &self.a_labels.iter().zip(&self.a_weights).collect::<Vec<_>>())
            .field("b", &self.b_labels.iter().zip(&self.b_weights).collect::<Vec<_>>())
            .field("edges", &self.edges)
            .finish()
    }
}

impl WeightedBipartiteGraph {
    pub fn new(
        a_labels: Vec<String>,
        b_labels: Vec<String>,
        a_weights: Vec<Rational>,
        b_weights: Vec<Rational>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        for (side, labels) in [('A', &a_labels), ('B', &b_labels)] {
            let mut seen = BTreeSet::new();
            for l in labels {
                if !seen.insert(l) {
                    return Err(Error::DuplicateLabel { side, label: l.clone() });
                }
            }
        }
        assert_eq!(a_labels.len(), a_weights.len(), "one weight per A label");
        assert_eq!(b_labels.len(), b_weights.len(), "one weight per B label");
        for (label, w) in a_labels.iter().zip(&a_weights).chain(b_labels.iter().zip(&b_weights)) {
            if w.is_negative() {
                return Err(Error::NegativeMass {
                    label: label.clone(),
                    mass: w.clone(),
                });
            }
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= a_labels.len() || j >= b_labels.len() {
                return Err(Error::DanglingRelationPair {
                    a: format!("#{i}"),
                    b: format!("#{j}"),
                });
            }
            set.insert((i, j));
        }
        Ok(Self::from_parts(
            a_labels,
            b_labels,
            a_weights,
            b_weights,
            set.into_iter().collect(),
        ))
    }

    /// Assumes `edges` is sorted, deduplicated and in range.
    fn from_parts(
        a_labels: Vec<String>,
        b_labels: Vec<String>,
        a_weights: Vec<Rational>,
        b_weights: Vec<Rational>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        let mut a_adj = vec![Vec::new(); a_labels.len()];
        let mut b_adj = vec![Vec::new(); b_labels.len()];
        for &(i, j) in &edges {
            a_adj[i].push(j);
            b_adj[j].push(i);
        }
        for adj in &mut b_adj {
            adj.sort_unstable();
        }
        WeightedBipartiteGraph {
            a_labels,
            b_labels,
            a_weights,
            b_weights,
            edges,
            a_adj,
            b_adj,
        }
    }

    /// Unweighted graph (all weights 1) with labels `a1..an`, `b1..bm`.
    pub fn unit(na: usize, nb: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(
            (1..=na).map(|i| format!("a{i}")).collect(),
            (1..=nb).map(|j| format!("b{j}")).collect(),
            vec![Rational::one(); na],
            vec![Rational::one(); nb],
            edges,
        )
    }

    pub fn with_unit_weights(&self) -> Self {
        let mut g = self.clone();
        g.a_weights = vec![Rational::one(); self.na()];
        g.b_weights = vec![Rational::one(); self.nb()];
        g
    }

    pub fn na(&self) -> usize {
        self.a_labels.len()
    }

    pub fn nb(&self) -> usize {
        self.b_labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.na() + self.nb()
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a_labels
    }

    pub fn b_labels(&self) -> &[String] {
        &self.b_labels
    }

    pub fn a_weights(&self) -> &[Rational] {
        &self.a_weights
    }

    pub fn b_weights(&self) -> &[Rational] {
        &self.b_weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a, b)).is_ok()
    }

    pub fn weight(&self, v: Vertex) -> &Rational {
        match v {
            Vertex::A(i) => &self.a_weights[i],
            Vertex::B(j) => &self.b_weights[j],
        }
    }

    pub fn label(&self, v: Vertex) -> &str {
        match v {
            Vertex::A(i) => &self.a_labels[i],
            Vertex::B(j) => &self.b_labels[j],
        }
    }

    /// Namespaced vertex name, `A:<label>` or `B:<label>`, so the two sides
    /// never collide even when they share labels.
    pub fn vertex_name(&self, v: Vertex) -> String {
        match v {
            Vertex::A(_) => format!("A:{}", self.label(v)),
            Vertex::B(_) => format!("B:{}", self.label(v)),
        }
    }

    /// Sorted neighbor indices on the opposite side.
    pub fn neighbors(&self, v: Vertex) -> &[usize] {
        match v {
            Vertex::A(i) => &self.a_adj[i],
            Vertex::B(j) => &self.b_adj[j],
        }
    }

    pub fn a_total(&self) -> Rational {
        self.a_weights.iter().sum()
    }

    pub fn b_total(&self) -> Rational {
        self.b_weights.iter().sum()
    }

    pub fn require_balanced(&self) -> Result<()> {
        let (a_total, b_total) = (self.a_total(), self.b_total());
        if a_total != b_total {
            return Err(Error::UnbalancedTotals {
                a_total: Box::new(a_total),
                b_total: Box::new(b_total),
            });
        }
        Ok(())
    }

    /// `w(U)` for a set of indices on one side.
    pub fn weight_of(&self, side: Side, subset: &[usize]) -> Rational {
        let weights = match side {
            Side::A => &self.a_weights,
            Side::B => &self.b_weights,
        };
        subset.iter().map(|&i| &weights[i]).sum()
    }

    /// `N(U)` for `U` a set of indices on `side`; the result lies on the other side.
    pub fn neighborhood_of(&self, side: Side, subset: &[usize]) -> BTreeSet<usize> {
        let adj = match side {
            Side::A => &self.a_adj,
            Side::B => &self.b_adj,
        };
        subset.iter().flat_map(|&i| adj[i].iter().copied()).collect()
    }

    /// The graph with the roles of `A` and `B` exchanged. Edge `(a, b)`
    /// becomes `(b, a)`.
    pub fn transpose(&self) -> Self {
        let mut edges: Vec<_> = self.edges.iter().map(|&(i, j)| (j, i)).collect();
        edges.sort_unstable();
        Self::from_parts(
            self.b_labels.clone(),
            self.a_labels.clone(),
            self.b_weights.clone(),
            self.a_weights.clone(),
            edges,
        )
    }

    /// Induced subgraph on the given (sorted) index sets, keeping their order.
    pub fn induced(&self, a_keep: &[usize], b_keep: &[usize]) -> Self {
        let mut a_pos = vec![usize::MAX; self.na()];
        let mut b_pos = vec![usize::MAX; self.nb()];
        for (k, &i) in a_keep.iter().enumerate() {
            a_pos[i] = k;
        }
        for (k, &j) in b_keep.iter().enumerate() {
            b_pos[j] = k;
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(i, j)| a_pos[i] != usize::MAX && b_pos[j] != usize::MAX)
            .map(|&(i, j)| (a_pos[i], b_pos[j]))
            .collect();
        edges.sort_unstable();
        Self::from_parts(
            a_keep.iter().map(|&i| self.a_labels[i].clone()).collect(),
            b_keep.iter().map(|&j| self.b_labels[j].clone()).collect(),
            a_keep.iter().map(|&i| self.a_weights[i].clone()).collect(),
            b_keep.iter().map(|&j| self.b_weights[j].clone()).collect(),
            edges,
        )
    }

    /// Same vertices and weights, with only the listed edges (each must be an edge).
    pub fn spanning_subgraph(&self, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut kept = BTreeSet::new();
        for (i, j) in edges {
            if !self.has_edge(i, j) {
                return Err(Error::UnsupportedEdge {
                    a: self.a_labels.get(i).cloned().unwrap_or_else(|| format!("#{i}")),
                    b: self.b_labels.get(j).cloned().unwrap_or_else(|| format!("#{j}")),
                });
            }
            kept.insert((i, j));
        }
        Ok(Self::from_parts(
            self.a_labels.clone(),
            self.b_labels.clone(),
            self.a_weights.clone(),
            self.b_weights.clone(),
            kept.into_iter().collect(),
        ))
    }

    pub fn with_weights(&self, a_weights: Vec<Rational>, b_weights: Vec<Rational>) -> Self {
        assert_eq!(a_weights.len(), self.na());
        assert_eq!(b_weights.len(), self.nb());
        let mut g = self.clone();
        g.a_weights = a_weights;
        g.b_weights = b_weights;
        g
    }

    /// Append a new `A` vertex with the given edges; returns its index.
    pub(crate) fn push_a_vertex(&mut self, label: String, weight: Rational, nbrs: &[usize]) -> usize {
        let idx = self.na();
        self.a_labels.push(label);
        self.a_weights.push(weight);
        self.a_adj.push(nbrs.to_vec());
        for &j in nbrs {
            self.edges.push((idx, j));
            self.b_adj[j].push(idx);
        }
        idx
    }
}

/// Translate an instance into its weighted bipartite graph: vertices are the
/// two label sets, edges the related pairs, weights the two measures.
pub fn to_graph(instance: &Instance) -> WeightedBipartiteGraph {
    WeightedBipartiteGraph::from_parts(
        instance.a_labels().to_vec(),
        instance.b_labels().to_vec(),
        instance.p().to_vec(),
        instance.p_prime().to_vec(),
        instance.relation().iter().copied().collect(),
    )
}

/// `N(U)` for a set `U` of `A` vertices.
pub fn neighborhood(graph: &WeightedBipartiteGraph, subset: &[usize]) -> BTreeSet<usize> {
    graph.neighborhood_of(Side::A, subset)
}

/// Whether the edge set on `na + nb` vertices has no cycle.
pub fn is_acyclic(na: usize, nb: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..na + nb).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, na + j));
        if ri == rj {
            return false;
        }
        parent[ri] = rj;
    }
    true
}

/// A spanning subgraph with no cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    graph: WeightedBipartiteGraph,
}

impl Forest {
    pub fn new(graph: WeightedBipartiteGraph) -> Result<Self> {
        if !is_acyclic(graph.na(), graph.nb(), graph.edges()) {
            return Err(Error::NotAForest);
        }
        Ok(Forest { graph })
    }

    /// The spanning subgraph of `host` with the given edges.
    pub fn from_edges(host: &WeightedBipartiteGraph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Forest::new(host.spanning_subgraph(edges)?)
    }

    pub fn graph(&self) -> &WeightedBipartiteGraph {
        &self.graph
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    pub fn into_graph(self) -> WeightedBipartiteGraph {
        self.graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn one_by_one() -> Instance {
        Instance::new(
            vec!["a".into()],
            vec!["b".into()],
            vec![q(1, 1)],
            vec![q(1, 1)],
            [(0, 0)],
        )
        .unwrap()
    }

    #[test]
    fn single_pair_graph() {
        let g = to_graph(&one_by_one());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[(0, 0)]);
        assert_eq!(g.weight(Vertex::A(0)), &q(1, 1));
        assert_eq!(g.weight(Vertex::B(0)), &q(1, 1));
        assert_eq!(g.vertex_name(Vertex::A(0)), "A:a");
        assert_eq!(g.vertex_name(Vertex::B(0)), "B:b");
    }

    #[test]
    fn empty_relation_gives_no_edges() {
        let inst = Instance::new(vec!["a".into()], vec!["b".into()], vec![q(1, 1)], vec![q(1, 1)], []).unwrap();
        assert!(to_graph(&inst).edges().is_empty());
    }

    #[test]
    fn size_bookkeeping() {
        let inst = Instance::new(
            vec!["a1".into(), "a2".into()],
            vec!["b1".into(), "b2".into(), "b3".into()],
            vec![q(1, 2), q(1, 2)],
            vec![q(1, 3), q(1, 3), q(1, 3)],
            [(0, 0), (0, 1), (1, 1), (1, 2)],
        )
        .unwrap();
        let g = to_graph(&inst);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edges().len(), 4);
    }

    #[test]
    fn shared_labels_stay_distinct() {
        let inst = Instance::new(
            vec!["x".into()],
            vec!["x".into()],
            vec![q(1, 1)],
            vec![q(1, 1)],
            [(0, 0)],
        )
        .unwrap();
        let g = to_graph(&inst);
        assert_ne!(g.vertex_name(Vertex::A(0)), g.vertex_name(Vertex::B(0)));
    }

    #[test]
    fn neighborhood_examples() {
        let star = WeightedBipartiteGraph::unit(1, 3, [(0, 0), (0, 1), (0, 2)]).unwrap();
        assert!(neighborhood(&star, &[]).is_empty());
        assert_eq!(neighborhood(&star, &[0]), BTreeSet::from([0, 1, 2]));
        let g = WeightedBipartiteGraph::unit(3, 3, [(0, 0), (1, 0), (2, 1), (2, 2)]).unwrap();
        assert_eq!(neighborhood(&g, &[0, 1, 2]), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn forest_detection() {
        assert!(is_acyclic(2, 2, &[(0, 0), (0, 1), (1, 1)]));
        assert!(!is_acyclic(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]));
        let g = WeightedBipartiteGraph::unit(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(Forest::new(g.clone()).unwrap_err(), Error::NotAForest);
        assert!(Forest::from_edges(&g, [(0, 0), (1, 1)]).is_ok());
    }

    #[test]
    fn transpose_and_induced() {
        let g = WeightedBipartiteGraph::unit(2, 3, [(0, 2), (1, 0), (1, 1)]).unwrap();
        let t = g.transpose();
        assert_eq!(t.na(), 3);
        assert_eq!(t.edges(), &[(0, 1), (1, 1), (2, 0)]);
        assert_eq!(t.transpose(), g);
        let sub = g.induced(&[1], &[0, 2]);
        assert_eq!(sub.edges(), &[(0, 0)]);
        assert_eq!(sub.a_labels(), &["a2".to_string()]);
    }

    fn arb_graph() -> impl Strategy<Value = (WeightedBipartiteGraph, Vec<bool>, Vec<bool>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(na, nb)| {
            (
                proptest::collection::vec(any::<bool>(), na * nb),
                proptest::collection::vec(any::<bool>(), na),
                proptest::collection::vec(any::<bool>(), na),
            )
                .prop_map(move |(mask, u, extra)| {
                    let edges = (0..na * nb).filter(|&k| mask[k]).map(|k| (k / nb, k % nb));
                    (WeightedBipartiteGraph::unit(na, nb, edges).unwrap(), u, extra)
                })
        })
    }

    proptest! {
        #[test]
        fn neighborhood_is_monotone((g, u, extra) in arb_graph()) {
            let small: Vec<usize> = (0..g.na()).filter(|&i| u[i]).collect();
            let big: Vec<usize> = (0..g.na()).filter(|&i| u[i] || extra[i]).collect();
            let ns = neighborhood(&g, &small);
            let nb = neighborhood(&g, &big);
            prop_assert!(ns.is_subset(&nb));
        }

        #[test]
        fn weights_round_trip(ps in proptest::collection::vec(0i64..20, 1..6), qs in proptest::collection::vec(0i64..20, 1..6)) {
            let (sa, sb): (i64, i64) = (ps.iter().sum(), qs.iter().sum());
            prop_assume!(sa > 0 && sb > 0);
            let p: Vec<_> = ps.iter().map(|&x| q(x, sa)).collect();
            let pp: Vec<_> = qs.iter().map(|&x| q(x, sb)).collect();
            let inst = Instance::new(
                (0..p.len()).map(|i| format!("a{i}")).collect(),
                (0..pp.len()).map(|j| format!("b{j}")).collect(),
                p.clone(), pp.clone(), [],
            ).unwrap();
            let g = to_graph(&inst);
            prop_assert_eq!(g.a_weights(), &p[..]);
            prop_assert_eq!(g.b_weights(), &pp[..]);
        }
    }
}

//! Witnesses and certificates returned by the solvers.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Side, WeightedBipartiteGraph};
use crate::rational::Rational;

/// Edge masses `(a_index, b_index) -> mass`. Only positive entries are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coupling {
    mass: BTreeMap<(usize, usize), Rational>,
}

impl Coupling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), Rational)>) -> Self {
        let mut c = Coupling::new();
        for (key, m) in entries {
            c.add(key.0, key.1, &m);
        }
        c
    }

    /// Adds `m` to the entry, dropping it if the result is zero.
    pub fn add(&mut self, a: usize, b: usize, m: &Rational) {
        let entry = self.mass.entry((a, b)).or_insert_with(Rational::zero);
        *entry += m;
        if entry.is_zero() {
            self.mass.remove(&(a, b));
        }
    }

    pub fn get(&self, a: usize, b: usize) -> Rational {
        self.mass.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.mass.iter()
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        self.mass.keys().copied().collect()
    }

    pub fn support_size(&self) -> usize {
        self.mass.len()
    }

    pub fn total(&self) -> Rational {
        self.mass.values().sum()
    }

    pub fn row_sums(&self, na: usize) -> Vec<Rational> {
        let mut rows = vec![Rational::zero(); na];
        for (&(a, _), m) in &self.mass {
            rows[a] += m;
        }
        rows
    }

    pub fn column_sums(&self, nb: usize) -> Vec<Rational> {
        let mut cols = vec![Rational::zero(); nb];
        for (&(_, b), m) in &self.mass {
            cols[b] += m;
        }
        cols
    }

    /// Mass on pairs accepted by `related`.
    pub fn relation_mass(&self, related: impl Fn(usize, usize) -> bool) -> Rational {
        self.mass
            .iter()
            .filter(|(&(a, b), _)| related(a, b))
            .map(|(_, m)| m)
            .sum()
    }

    /// Checks nonnegativity and both marginals against the graph weights.
    /// With `on_edges`, also checks that the support uses only graph edges.
    pub fn check_against(&self, graph: &WeightedBipartiteGraph, on_edges: bool) -> Result<(), String> {
        for (&(a, b), m) in &self.mass {
            if a >= graph.na() || b >= graph.nb() {
                return Err(format!("entry ({a}, {b}) is out of range"));
            }
            if m.is_negative() {
                return Err(format!("negative mass {m} at ({a}, {b})"));
            }
            if on_edges && !graph.has_edge(a, b) {
                return Err(format!(
                    "mass on ({}, {}) which is not related",
                    graph.a_labels()[a],
                    graph.b_labels()[b]
                ));
            }
        }
        for (i, (got, want)) in self.row_sums(graph.na()).iter().zip(graph.a_weights()).enumerate() {
            if got != want {
                return Err(format!("row {} sums to {got}, expected {want}", graph.a_labels()[i]));
            }
        }
        for (j, (got, want)) in self.column_sums(graph.nb()).iter().zip(graph.b_weights()).enumerate() {
            if got != want {
                return Err(format!("column {} sums to {got}, expected {want}", graph.b_labels()[j]));
            }
        }
        Ok(())
    }
}

/// A set `U ⊆ A` with `w(U) > w(N(U))`, which rules out any coupling on the
/// relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub violating_set: Vec<usize>,
    pub neighborhood: Vec<usize>,
    /// `w(U)`
    pub lhs: Rational,
    /// `w(N(U))`
    pub rhs: Rational,
    /// `lhs - rhs`, always positive.
    pub deficiency: Rational,
}

impl Certificate {
    /// Evaluates `U` on the graph. Returns `None` when `U` does not violate
    /// the condition.
    pub fn for_subset(graph: &WeightedBipartiteGraph, subset: &[usize]) -> Option<Self> {
        let subset: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let nbhd: Vec<usize> = graph.neighborhood_of(Side::A, &subset).into_iter().collect();
        let lhs = graph.weight_of(Side::A, &subset);
        let rhs = graph.weight_of(Side::B, &nbhd);
        let deficiency = &lhs - &rhs;
        deficiency.is_positive().then_some(Certificate {
            violating_set: subset,
            neighborhood: nbhd,
            lhs,
            rhs,
            deficiency,
        })
    }

    /// Whether the stored values are what the graph says they are.
    pub fn recomputes(&self, graph: &WeightedBipartiteGraph) -> bool {
        Certificate::for_subset(graph, &self.violating_set).as_ref() == Some(self)
    }

    pub fn labels<'g>(&self, graph: &'g WeightedBipartiteGraph) -> Vec<&'g str> {
        self.violating_set
            .iter()
            .map(|&i| graph.a_labels()[i].as_str())
            .collect()
    }
}

/// Result of the coupling constructions: either a witness or a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum CouplingOutcome {
    Coupled(Coupling),
    Infeasible(Certificate),
}

impl CouplingOutcome {
    pub fn coupling(&self) -> Option<&Coupling> {
        match self {
            CouplingOutcome::Coupled(c) => Some(c),
            CouplingOutcome::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CouplingOutcome::Coupled(_) => None,
            CouplingOutcome::Infeasible(c) => Some(c),
        }
    }
}

/// Edges `(a_index, b_index)` with pairwise disjoint endpoints, sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Result<Self, String> {
        edges.sort_unstable();
        let mut a_seen = BTreeSet::new();
        let mut b_seen = BTreeSet::new();
        for &(a, b) in &edges {
            if !a_seen.insert(a) || !b_seen.insert(b) {
                return Err(format!("edges share an endpoint at ({a}, {b})"));
            }
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect(&self, graph: &WeightedBipartiteGraph) -> bool {
        self.len() == graph.na() && self.len() == graph.nb()
    }

    /// Every edge is a graph edge (disjointness holds by construction).
    pub fn check_against(&self, graph: &WeightedBipartiteGraph) -> Result<(), String> {
        match self.edges.iter().find(|&&(a, b)| !graph.has_edge(a, b)) {
            Some(&(a, b)) => Err(format!("({a}, {b}) is not an edge")),
            None => Ok(()),
        }
    }
}

/// A set `U ⊆ A` with `|U| > |N(U)| + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolator {
    pub subset: Vec<usize>,
    pub neighborhood: Vec<usize>,
    pub k: usize,
}

impl HallViolator {
    /// `|U| - |N(U)| - k`; positive for a genuine violator.
    pub fn excess(&self) -> i64 {
        self.subset.len() as i64 - self.neighborhood.len() as i64 - self.k as i64
    }

    pub fn recomputes(&self, graph: &WeightedBipartiteGraph) -> bool {
        let n: Vec<usize> = graph.neighborhood_of(Side::A, &self.subset).into_iter().collect();
        n == self.neighborhood && self.excess() > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingOutcome {
    Matched(Matching),
    Violated(HallViolator),
}

impl MatchingOutcome {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            MatchingOutcome::Matched(m) => Some(m),
            MatchingOutcome::Violated(_) => None,
        }
    }

    pub fn violator(&self) -> Option<&HallViolator> {
        match self {
            MatchingOutcome::Matched(_) => None,
            MatchingOutcome::Violated(v) => Some(v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn zero_entries_are_dropped() {
        let mut c = Coupling::from_entries([((0, 0), q(1, 2)), ((0, 1), q(0, 1))]);
        assert_eq!(c.support(), vec![(0, 0)]);
        c.add(0, 0, &q(-1, 2));
        assert_eq!(c.support_size(), 0);
    }

    #[test]
    fn certificate_values() {
        let g = WeightedBipartiteGraph::new(
            vec!["a1".into(), "a2".into()],
            vec!["b1".into(), "b2".into()],
            vec![q(1, 2), q(1, 2)],
            vec![q(1, 1), q(0, 1)],
            [(0, 0), (1, 1)],
        )
        .unwrap();
        let c = Certificate::for_subset(&g, &[1]).unwrap();
        assert_eq!(
            (c.lhs.clone(), c.rhs.clone(), c.deficiency.clone()),
            (q(1, 2), q(0, 1), q(1, 2))
        );
        assert!(c.recomputes(&g));
        assert!(Certificate::for_subset(&g, &[0]).is_none());
    }

    #[test]
    fn matching_rejects_shared_endpoints() {
        assert!(Matching::new(vec![(0, 0), (1, 0)]).is_err());
        assert_eq!(Matching::new(vec![(1, 1), (0, 0)]).unwrap().edges(), &[(0, 0), (1, 1)]);
    }
}

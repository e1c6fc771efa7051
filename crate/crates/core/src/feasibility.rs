//! Deciding `w(U) <= w(N(U))` for all `U ⊆ A`, by enumeration or by flow,
//! and the least slack `ε` that makes it hold.

use crate::error::{Error, Result};
use crate::flow::{max_flow, min_cut_violator, FlowNetwork};
use crate::graph::{to_graph, Side, WeightedBipartiteGraph};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::solution::Certificate;
use crate::subsets::{mask_to_indices, max_excess};

pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Outcome of the exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceVerdict {
    pub satisfied: bool,
    /// Subset maximizing `w(U) - w(N(U))`, lexicographically smallest on ties.
    pub worst_subset: Vec<usize>,
    /// `w(U) - w(N(U))` for `worst_subset`; nonpositive iff satisfied.
    pub worst_excess: Rational,
}

impl BruteForceVerdict {
    pub fn certificate(&self, graph: &WeightedBipartiteGraph) -> Option<Certificate> {
        Certificate::for_subset(graph, &self.worst_subset)
    }
}

pub fn check_condition_bruteforce(graph: &WeightedBipartiteGraph, cap: usize) -> Result<BruteForceVerdict> {
    if graph.na() > cap {
        return Err(Error::SubsetCapExceeded { size: graph.na(), cap });
    }
    let (mask, excess) = max_excess(graph, Side::A, |_| true).expect("the empty set is always scanned");
    Ok(BruteForceVerdict {
        satisfied: !excess.is_positive(),
        worst_subset: mask_to_indices(mask),
        worst_excess: excess,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowVerdict {
    pub satisfied: bool,
    pub flow_value: Rational,
    pub certificate: Option<Certificate>,
}

/// Decides the condition via max-flow; requires `w(A) = w(B)`.
pub fn check_condition_flow(graph: &WeightedBipartiteGraph) -> Result<FlowVerdict> {
    graph.require_balanced()?;
    let flow = max_flow(FlowNetwork::from_graph(graph));
    let certificate = min_cut_violator(graph, &flow);
    Ok(FlowVerdict {
        satisfied: certificate.is_none(),
        flow_value: flow.value,
        certificate,
    })
}

/// `ε* = max(0, max_U P(U) - P'(N_R(U)))`, read off as `1 - maxflow`, with
/// the min-cut set achieving it when `ε* > 0`.
pub fn minimal_deficiency_with_witness(instance: &Instance) -> Result<(Rational, Option<Certificate>)> {
    instance.require_probability()?;
    let graph = to_graph(instance);
    let flow = max_flow(FlowNetwork::from_graph(&graph));
    let eps = graph.a_total() - &flow.value;
    Ok((eps, min_cut_violator(&graph, &flow)))
}

/// The least `ε` for which `P(U) <= P'(N_R(U)) + ε` holds for every `U ⊆ A`.
pub fn minimal_deficiency(instance: &Instance) -> Result<Rational> {
    minimal_deficiency_with_witness(instance).map(|(eps, _)| eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn graph(a: &[Rational], b: &[Rational], edges: &[(usize, usize)]) -> WeightedBipartiteGraph {
        WeightedBipartiteGraph::new(
            (1..=a.len()).map(|i| format!("a{i}")).collect(),
            (1..=b.len()).map(|j| format!("b{j}")).collect(),
            a.to_vec(),
            b.to_vec(),
            edges.iter().copied(),
        )
        .unwrap()
    }

    fn stranded() -> WeightedBipartiteGraph {
        graph(&[q(1, 2), q(1, 2)], &[q(1, 1), q(0, 1)], &[(0, 0), (1, 1)])
    }

    #[test]
    fn bruteforce_single_edge() {
        let g = graph(&[q(1, 1)], &[q(1, 1)], &[(0, 0)]);
        let v = check_condition_bruteforce(&g, DEFAULT_SUBSET_CAP).unwrap();
        assert!(v.satisfied);
        assert_eq!(v.worst_subset, Vec::<usize>::new());
        assert_eq!(v.worst_excess, q(0, 1));
    }

    #[test]
    fn bruteforce_stranded_mass() {
        let v = check_condition_bruteforce(&stranded(), DEFAULT_SUBSET_CAP).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.worst_subset, vec![1]);
        assert_eq!(v.worst_excess, q(1, 2));
    }

    #[test]
    fn bruteforce_cap() {
        let g = WeightedBipartiteGraph::unit(5, 5, []).unwrap();
        assert_eq!(
            check_condition_bruteforce(&g, 4).unwrap_err(),
            Error::SubsetCapExceeded { size: 5, cap: 4 }
        );
    }

    #[test]
    fn flow_complete_graph() {
        let edges: Vec<_> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        let g = graph(&vec![q(1, 3); 3], &vec![q(1, 3); 3], &edges);
        let v = check_condition_flow(&g).unwrap();
        assert!(v.satisfied);
        assert_eq!(v.flow_value, q(1, 1));
    }

    #[test]
    fn flow_isolated_vertex() {
        let g = graph(&[q(1, 2), q(1, 2)], &[q(1, 2), q(1, 2)], &[(0, 0), (0, 1)]);
        let v = check_condition_flow(&g).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.certificate.unwrap().violating_set, vec![1]);
    }

    #[test]
    fn flow_requires_balance() {
        let g = graph(&[q(1, 1)], &[q(1, 2)], &[(0, 0)]);
        assert_eq!(check_condition_flow(&g).unwrap_err().kind(), "UnbalancedTotals");
    }

    #[test]
    fn deficiency_examples() {
        let feasible = Instance::new(
            vec!["a".into()],
            vec!["b".into()],
            vec![q(1, 1)],
            vec![q(1, 1)],
            [(0, 0)],
        )
        .unwrap();
        assert_eq!(minimal_deficiency(&feasible).unwrap(), q(0, 1));
        let inst = Instance::new(
            vec!["a1".into(), "a2".into()],
            vec!["b1".into(), "b2".into()],
            vec![q(1, 2), q(1, 2)],
            vec![q(1, 1), q(0, 1)],
            [(0, 0), (1, 1)],
        )
        .unwrap();
        let (eps, cert) = minimal_deficiency_with_witness(&inst).unwrap();
        assert_eq!(eps, q(1, 2));
        assert_eq!(cert.unwrap().violating_set, vec![1]);
    }
}

//! Couplings of finite measures supported on a relation, and the matching
//! machinery around them.
//!
//! Given measures `P` on `A` and `P'` on `B` and a relation `R ⊆ A × B`, a
//! coupling with all of its mass on `R` exists exactly when
//! `P(U) <= P'(N_R(U))` for every `U ⊆ A`. This crate decides that condition
//! (by enumeration and by max-flow), builds couplings and violating sets,
//! extracts forest-supported couplings, and covers the unit-weight case
//! (Hall's theorem) and the versions with a deficiency allowance. All
//! arithmetic is exact.

pub mod cli;
pub mod coupling;
pub mod error;
pub mod feasibility;
pub mod flow;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod random;
pub mod rational;
pub mod selftest;
pub mod solution;
pub mod subsets;

pub use coupling::{
    cancel_cycles, couple_forest, couple_graph, couple_via_flow, edge_weights_from_forest, find_tight_set,
    subforest_by_cycle_canceling, subforest_inductive, CycleCanceling, TightSet, DEFAULT_INDUCTIVE_CAP,
};
pub use error::{Error, Result};
pub use feasibility::{
    check_condition_bruteforce, check_condition_flow, minimal_deficiency, minimal_deficiency_with_witness,
    BruteForceVerdict, FlowVerdict, DEFAULT_SUBSET_CAP,
};
pub use flow::{max_flow, min_cut_violator, FlowNetwork, MaxFlow};
pub use graph::{is_acyclic, neighborhood, to_graph, Forest, Side, Vertex, WeightedBipartiteGraph};
pub use instance::{validate_instance, Instance, RawInstance};
pub use matching::{
    couple_with_deficiency_blowup, couple_with_deficiency_flow, matching_from_forest, matching_with_deficiency,
    matching_with_deficiency_augmented, max_matching, perfect_matching, DEFAULT_BLOWUP_CAP,
};
pub use rational::Rational;
pub use solution::{Certificate, Coupling, CouplingOutcome, HallViolator, Matching, MatchingOutcome};

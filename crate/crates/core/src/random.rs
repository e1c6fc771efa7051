//! Seeded random instances for self-tests and property suites.
//!
//! Masses are multiples of `1/denominator`. Each relation pair is included
//! independently with probability `density`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::WeightedBipartiteGraph;
use crate::instance::Instance;
use crate::rational::Rational;

pub const DEFAULT_DENOMINATOR: i64 = 12;

/// Independent, reproducible stream number `index` under `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn labels(prefix: char, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `n` nonnegative integers summing to `total`: each entry is drawn up to
/// about twice the fair share, and the last one takes the remainder.
fn split_integer(rng: &mut impl Rng, n: usize, total: i64) -> Vec<i64> {
    let share = (2 * total + n as i64 - 1) / n as i64;
    let mut left = total;
    let mut out = Vec::with_capacity(n);
    for _ in 1..n {
        let x = rng.random_range(0..=share.min(left));
        out.push(x);
        left -= x;
    }
    out.push(left);
    out
}

fn random_relation(rng: &mut impl Rng, na: usize, nb: usize, density: f64) -> Vec<(usize, usize)> {
    (0..na)
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(density))
        .collect()
}

/// Probability instance with masses `k / denominator`; may or may not admit a
/// coupling on its relation.
pub fn random_instance(rng: &mut impl Rng, na: usize, nb: usize, denominator: i64, density: f64) -> Instance {
    assert!(na > 0 && nb > 0 && denominator > 0);
    let relation = random_relation(rng, na, nb, density);
    let p = split_integer(rng, na, denominator);
    let p_prime = split_integer(rng, nb, denominator);
    let to_q = |v: Vec<i64>| v.into_iter().map(|k| Rational::new(k, denominator)).collect();
    Instance::new(labels('a', na), labels('b', nb), to_q(p), to_q(p_prime), relation)
        .expect("generated instances are valid")
}

/// Probability instance that admits a coupling on its relation: the masses
/// are the marginals of `denominator` unit masses dropped on random related
/// pairs.
pub fn random_feasible_instance(rng: &mut impl Rng, na: usize, nb: usize, denominator: i64, density: f64) -> Instance {
    assert!(na > 0 && nb > 0 && denominator > 0);
    let mut relation = random_relation(rng, na, nb, density);
    if relation.is_empty() {
        relation.push((rng.random_range(0..na), rng.random_range(0..nb)));
    }
    let mut rows = vec![0i64; na];
    let mut cols = vec![0i64; nb];
    for _ in 0..denominator {
        let (i, j) = relation[rng.random_range(0..relation.len())];
        rows[i] += 1;
        cols[j] += 1;
    }
    let to_q = |v: Vec<i64>| v.into_iter().map(|k| Rational::new(k, denominator)).collect();
    Instance::new(labels('a', na), labels('b', nb), to_q(rows), to_q(cols), relation)
        .expect("generated instances are valid")
}

/// Unit-weight bipartite graph.
pub fn random_graph(rng: &mut impl Rng, na: usize, nb: usize, density: f64) -> WeightedBipartiteGraph {
    WeightedBipartiteGraph::unit(na, nb, random_relation(rng, na, nb, density)).expect("indices are in range")
}

//! Exhaustive scans over the subsets of one side of a bipartite graph.
//!
//! Subsets are `u64` bitmasks over the side's indices. The scan walks all
//! `2^n` subsets in Gray-code order, updating `w(U)` and `w(N(U))`
//! incrementally, on integer weights scaled by a common denominator.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::graph::{Side, Vertex, WeightedBipartiteGraph};
use crate::rational::Rational;

/// Largest side the scanner accepts.
pub const MAX_SCAN_SIDE: usize = 40;

/// Lexicographic order on subsets viewed as increasing index sequences:
/// `{0} < {0, 1} < {0, 2} < {1}`, and the empty set is smallest.
pub fn lex_less(x: u64, y: u64) -> bool {
    let diff = x ^ y;
    if diff == 0 {
        return false;
    }
    let bit = diff.trailing_zeros();
    let above = if bit >= 63 { 0 } else { !0u64 << (bit + 1) };
    if x & (1 << bit) != 0 {
        y & above != 0
    } else {
        x & above == 0
    }
}

pub fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1u64 << i) != 0).collect()
}

pub fn indices_to_mask(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0, |m, i| m | (1u64 << i))
}

fn scan<T, F>(own: &[T], other: &[T], adj: &[Vec<usize>], mut visit: F)
where
    T: Clone + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
    F: FnMut(u64, &T, &T),
{
    let n = own.len();
    assert!(n <= MAX_SCAN_SIDE, "subset scan over {n} vertices");
    let mut count = vec![0u32; other.len()];
    let mut w_u = T::zero();
    let mut w_n = T::zero();
    let mut mask = 0u64;
    visit(mask, &w_u, &w_n);
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if mask & (1 << bit) != 0 {
            w_u += &own[bit];
            for &j in &adj[bit] {
                if count[j] == 0 {
                    w_n += &other[j];
                }
                count[j] += 1;
            }
        } else {
            w_u -= &own[bit];
            for &j in &adj[bit] {
                count[j] -= 1;
                if count[j] == 0 {
                    w_n -= &other[j];
                }
            }
        }
        visit(mask, &w_u, &w_n);
    }
}

fn best<T, P>(own: &[T], other: &[T], adj: &[Vec<usize>], keep: P) -> Option<(u64, T)>
where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
    for<'a> &'a T: std::ops::Sub<&'a T, Output = T>,
    P: Fn(u64) -> bool,
{
    let mut found: Option<(u64, T)> = None;
    scan(own, other, adj, |mask, w_u, w_n| {
        if !keep(mask) {
            return;
        }
        let excess = w_u - w_n;
        let better = match &found {
            None => true,
            Some((m, e)) => excess > *e || (excess == *e && lex_less(mask, *m)),
        };
        if better {
            found = Some((mask, excess));
        }
    });
    found
}

/// Subset of `side` maximizing `w(U) - w(N(U))` among masks accepted by
/// `keep`, ties broken towards the lexicographically smallest subset.
/// Returns the mask and the excess, or `None` when `keep` rejects everything.
pub fn max_excess(graph: &WeightedBipartiteGraph, side: Side, keep: impl Fn(u64) -> bool) -> Option<(u64, Rational)> {
    let (own, other) = match side {
        Side::A => (graph.a_weights(), graph.b_weights()),
        Side::B => (graph.b_weights(), graph.a_weights()),
    };
    let n = own.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let v = match side {
                Side::A => Vertex::A(i),
                Side::B => Vertex::B(i),
            };
            graph.neighbors(v).to_vec()
        })
        .collect();
    let scale = Rational::common_denominator(own.iter().chain(other));
    let to_int = |w: &[Rational]| -> Vec<BigInt> {
        w.iter()
            .map(|r| r.scaled_integer(&scale).expect("scale is a common denominator"))
            .collect()
    };
    let (own_big, other_big) = (to_int(own), to_int(other));
    let unscale = |e: BigInt| Rational::new(e, scale.clone());

    // i128 is plenty unless the summed scaled weights get near its range.
    let bound: BigInt = own_big.iter().chain(&other_big).sum();
    if bound < BigInt::from(i128::MAX >> 2) {
        let small = |v: &[BigInt]| -> Vec<i128> { v.iter().map(|x| x.to_i128().unwrap()).collect() };
        best(&small(&own_big), &small(&other_big), &adj, keep).map(|(m, e)| (m, unscale(BigInt::from(e))))
    } else {
        best(&own_big, &other_big, &adj, keep).map(|(m, e)| (m, unscale(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn lex_key(mask: u64) -> Vec<usize> {
        mask_to_indices(mask)
    }

    #[test]
    fn lex_order_matches_sequence_order() {
        for x in 0u64..64 {
            for y in 0u64..64 {
                assert_eq!(lex_less(x, y), lex_key(x) < lex_key(y), "{x:b} vs {y:b}");
            }
        }
    }

    #[test]
    fn finds_the_worst_subset() {
        let g = WeightedBipartiteGraph::new(
            vec!["a1".into(), "a2".into()],
            vec!["b1".into(), "b2".into()],
            vec![q(1, 2), q(1, 2)],
            vec![q(1, 1), q(0, 1)],
            [(0, 0), (1, 1)],
        )
        .unwrap();
        let (mask, excess) = max_excess(&g, Side::A, |_| true).unwrap();
        assert_eq!((mask, excess), (0b10, q(1, 2)));
        // {b1} carries 1 but only a1 (1/2) feeds it
        let (mask, excess) = max_excess(&g, Side::B, |_| true).unwrap();
        assert_eq!((mask, excess), (0b01, q(1, 2)));
        assert!(max_excess(&g, Side::A, |_| false).is_none());
    }

    #[test]
    fn big_weights_fall_back_to_bigint() {
        let huge = Rational::from_integer(BigInt::from(i128::MAX));
        let g = WeightedBipartiteGraph::new(vec!["a".into()], vec!["b".into()], vec![huge.clone()], vec![huge], [])
            .unwrap();
        let (mask, excess) = max_excess(&g, Side::A, |_| true).unwrap();
        assert_eq!(mask, 1);
        assert_eq!(excess, Rational::from_integer(BigInt::from(i128::MAX)));
    }
}

//! Exhaustive cross-check of the burst dynamic program.
//!
//! For short series every one of the 2^n state sequences can be costed
//! directly; the DP must return the cheapest one, and among equally cheap
//! sequences the one that prefers the baseline state earliest.

use kwlife_core::{optimal_state_sequence, state_costs, transition_cost, BurstParams, Degeneracy};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Total cost of one fixed sequence, accumulated right to left in the same
/// order as the DP's suffix recursion.
fn sequence_cost(states: &[bool], r: &[u32], d: &[u32], p0: f64, p1: f64, tau: f64) -> f64 {
    let n = states.len();
    let mut acc = 0.0;
    for t in (0..n).rev() {
        let (c0, c1) = state_costs(r[t], d[t], p0, p1).unwrap();
        let up = t + 1 < n && !states[t] && states[t + 1];
        let tail = if up { tau + acc } else { acc };
        acc = if states[t] { c1 } else { c0 } + tail;
    }
    if states[0] {
        tau + acc
    } else {
        acc
    }
}

/// Cheapest sequence by brute force, lexicographically smallest on ties
/// with the baseline state ordered before the elevated one.
fn exhaustive_best(r: &[u32], d: &[u32], p0: f64, p1: f64, tau: f64) -> (Vec<bool>, f64) {
    let n = r.len();
    let mut best_states = Vec::new();
    let mut best_cost = f64::INFINITY;
    for mask in 0u32..1 << n {
        // Treat the high bit as t = 0 so ascending masks enumerate
        // sequences in lexicographic order; strict improvement then keeps
        // the lexicographically smallest optimum.
        let states: Vec<bool> = (0..n).map(|t| mask >> (n - 1 - t) & 1 == 1).collect();
        let cost = sequence_cost(&states, r, d, p0, p1, tau);
        if cost < best_cost {
            best_cost = cost;
            best_states = states;
        }
    }
    (best_states, best_cost)
}

#[test]
fn dp_matches_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b045);
    let mut checked = 0;
    while checked < 80 {
        let n = rng.random_range(1..=10);
        let d: Vec<u32> = (0..n).map(|_| rng.random_range(0..=50)).collect();
        let r: Vec<u32> = d.iter().map(|&dt| rng.random_range(0..=dt)).collect();
        if r.iter().sum::<u32>() == 0 {
            continue;
        }
        let params =
            BurstParams::new(rng.random_range(1.5..=4.0), rng.random_range(0.0..=2.0)).unwrap();

        let seq = optimal_state_sequence(&r, &d, &params).unwrap();
        assert_ne!(seq.degeneracy, Some(Degeneracy::NoOccurrences));
        let tau = transition_cost(n, &params);
        let dp_cost = sequence_cost(&seq.states, &r, &d, seq.p0, seq.p1, tau);
        let (best_states, best_cost) = exhaustive_best(&r, &d, seq.p0, seq.p1, tau);

        assert!(
            (dp_cost - best_cost).abs() <= 1e-9,
            "cost gap on r={r:?} d={d:?}: dp={dp_cost} exhaustive={best_cost}"
        );
        assert_eq!(
            seq.states,
            best_states,
            "sequence mismatch on r={r:?} d={d:?} (s={}, gamma={})",
            params.s(),
            params.gamma()
        );
        checked += 1;
    }
}

#[test]
fn dp_handles_saturated_series_like_the_oracle() {
    // A keyword present in every paper: both rates clamp to the same value
    // and the all-baseline sequence is the lexicographic optimum.
    let d = [7, 9, 4];
    let r = d;
    let params = BurstParams::default();
    let seq = optimal_state_sequence(&r, &d, &params).unwrap();
    assert_eq!(seq.degeneracy, Some(Degeneracy::SaturatedRate));
    let tau = transition_cost(3, &params);
    let (best_states, best_cost) = exhaustive_best(&r, &d, seq.p0, seq.p1, tau);
    assert_eq!(seq.states, best_states);
    let dp_cost = sequence_cost(&seq.states, &r, &d, seq.p0, seq.p1, tau);
    assert!((dp_cost - best_cost).abs() <= 1e-9);
}

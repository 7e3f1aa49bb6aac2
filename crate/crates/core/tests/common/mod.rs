#![allow(dead_code)]

use proptest::prelude::*;
use uf_explain::{UfeState, Union, UnionOutcome, UnionPolicy};

/// Element count and a list of candidate unions over it.
pub fn unions_strategy(max_n: usize, max_unions: usize) -> impl Strategy<Value = (usize, Vec<Union>)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_unions)))
}

pub fn policy_strategy() -> impl Strategy<Value = UnionPolicy> {
    prop_oneof![Just(UnionPolicy::Raw), Just(UnionPolicy::BySize)]
}

/// Applies the candidates in order, keeping only the effective ones.
pub fn build(n: usize, policy: UnionPolicy, candidates: &[Union]) -> UfeState {
    let mut st = UfeState::new(n, policy);
    for &(a, b) in candidates {
        st.union(a, b).unwrap();
    }
    st
}

/// Effective candidates only, as the replayed log would contain them.
pub fn effective(n: usize, policy: UnionPolicy, candidates: &[Union]) -> Vec<Union> {
    let mut st = UfeState::new(n, policy);
    candidates
        .iter()
        .copied()
        .filter(|&(a, b)| matches!(st.union(a, b), Ok(UnionOutcome::Effective(_))))
        .collect()
}

//! The inverse problem: given arguments, initial weights and desired
//! degrees, find an attack relation realising them.
//!
//! Each argument's equation constrains only its own attackers, so HC and CB
//! decompose into one (cardinality-constrained) subset-sum per argument over
//! the positive target degrees; MB needs one hash lookup per argument.
//! Every returned attack set satisfies the exact equations.

mod bruteforce;
mod enumerate;
mod mb;
mod sums;
mod transform;

pub use bruteforce::{
    decide_bruteforce, enumerate_bruteforce, BRUTE_FORCE_HARD_LIMIT, DEFAULT_GRAPH_LIMIT,
};
pub use enumerate::{enumerate_solutions, free_arguments};
pub use mb::{decide_mb, solve_mb};
pub use sums::{cb_plan, hc_target, solve_cb, solve_hc, CbPlan, HcTarget};
pub use transform::{
    contract_mb, expand_mb, maximal_contraction, reach_mb, substitute_cb, substitute_hc,
};

use crate::error::InferenceError;
use crate::par::Parallelism;
use crate::subset_sum::Backend;
use crate::waf::{AttackSet, InferenceInstance, SemanticsTag};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub parallelism: Parallelism,
    pub backend: Backend,
}

impl SolveOptions {
    pub fn sequential() -> Self {
        SolveOptions {
            parallelism: Parallelism::Sequential,
            backend: Backend::Search,
        }
    }
}

/// Dispatches on the instance's semantics.
pub fn solve(instance: &InferenceInstance) -> Option<AttackSet> {
    solve_with(instance, &SolveOptions::default())
}

pub fn solve_with(instance: &InferenceInstance, options: &SolveOptions) -> Option<AttackSet> {
    match instance.semantics() {
        SemanticsTag::Mb => mb::solve_mb_unchecked(instance),
        SemanticsTag::Hc => sums::solve_hc_with(instance, options),
        SemanticsTag::Cb => sums::solve_cb_with(instance, options),
    }
}

pub fn decide(instance: &InferenceInstance) -> bool {
    match instance.semantics() {
        SemanticsTag::Mb => mb::decide_mb_unchecked(instance),
        _ => solve(instance).is_some(),
    }
}

fn expect_semantics(
    instance: &InferenceInstance,
    expected: SemanticsTag,
) -> Result<(), InferenceError> {
    if instance.semantics() == expected {
        Ok(())
    } else {
        Err(InferenceError::WrongSemantics {
            expected,
            got: instance.semantics(),
        })
    }
}

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::expect_semantics;
use crate::error::InferenceError;
use crate::rational::Rational;
use crate::waf::{AttackSet, InferenceInstance, SemanticsTag};

/// `1 + S(b)` for every argument, mapped to the first argument (in
/// declaration order) producing it.
fn successor_index(instance: &InferenceInstance) -> HashMap<Rational, usize> {
    let mut index = HashMap::with_capacity(instance.len());
    for b in 0..instance.len() {
        index
            .entry(Rational::one() + instance.target(b))
            .or_insert(b);
    }
    index
}

/// Whether argument `a` needs an attacker, and if so the degree ratio
/// `w(a)/S(a)` its strongest attacker must match as `1 + S(x)`.
fn required_ratio(instance: &InferenceInstance, a: usize) -> Option<Rational> {
    let (w, s) = (instance.weight(a), instance.target(a));
    (!s.is_zero() && s != w).then(|| w / s)
}

pub(crate) fn decide_mb_unchecked(instance: &InferenceInstance) -> bool {
    let index = successor_index(instance);
    (0..instance.len()).all(|a| {
        instance.zero_consistent(a)
            && required_ratio(instance, a).is_none_or(|r| index.contains_key(&r))
    })
}

pub(crate) fn solve_mb_unchecked(instance: &InferenceInstance) -> Option<AttackSet> {
    let index = successor_index(instance);
    let mut attacks = AttackSet::new();
    for a in 0..instance.len() {
        if !instance.zero_consistent(a) {
            return None;
        }
        if let Some(ratio) = required_ratio(instance, a) {
            attacks.insert(*index.get(&ratio)?, a);
        }
    }
    Some(attacks)
}

/// Linear-time decision for the max-based semantics.
pub fn decide_mb(instance: &InferenceInstance) -> Result<bool, InferenceError> {
    expect_semantics(instance, SemanticsTag::Mb)?;
    Ok(decide_mb_unchecked(instance))
}

/// A minimal witness: one attacker for every argument whose degree differs
/// from its weight, chosen as the first argument in declaration order whose
/// degree fits.
pub fn solve_mb(instance: &InferenceInstance) -> Result<Option<AttackSet>, InferenceError> {
    expect_semantics(instance, SemanticsTag::Mb)?;
    Ok(solve_mb_unchecked(instance))
}

//! Listing several solutions of one instance.
//!
//! Attacks from or onto zero-weight arguments never change any degree, so
//! every solution stays a solution under arbitrary such additions. Listed
//! solutions omit them; [`free_arguments`] reports the zero-weight arguments.

use num_traits::{One, Signed, Zero};

use super::sums::{cb_plan, hc_target, HcTarget};
use crate::rational::Rational;
use crate::subset_sum::{enumerate_ssp, SubsetSumInstance};
use crate::waf::{ArgumentId, AttackSet, InferenceInstance, SemanticsTag};

/// Zero-weight arguments: anything may attack them, and their attacks count
/// for nothing.
pub fn free_arguments(instance: &InferenceInstance) -> Vec<&ArgumentId> {
    (0..instance.len())
        .filter(|&a| instance.weight(a).is_zero())
        .map(|a| instance.args().name(a))
        .collect()
}

/// Up to `limit` attacker sets for argument `a`, each sorted ascending, in
/// lexicographic order.
fn attacker_options(
    instance: &InferenceInstance,
    positions: &[usize],
    values: &[Rational],
    a: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    let (w, s) = (instance.weight(a), instance.target(a));
    if !instance.zero_consistent(a) {
        return Vec::new();
    }
    if w.is_zero() || w == s {
        return vec![Vec::new()];
    }
    let lift = |chosen: &[usize]| chosen.iter().map(|&i| positions[i]).collect::<Vec<_>>();
    match instance.semantics() {
        SemanticsTag::Hc => {
            let Ok(Some(HcTarget(target))) = hc_target(w, s) else {
                return Vec::new();
            };
            let problem = SubsetSumInstance::new(values.to_vec(), target).expect("positive degrees");
            enumerate_ssp(&problem, limit)
                .iter()
                .map(|sol| lift(sol.chosen()))
                .collect()
        }
        SemanticsTag::Cb => {
            let mut out = Vec::new();
            for plan in cb_plan(w, s).unwrap_or_default() {
                let problem = SubsetSumInstance::new(values.to_vec(), plan.target)
                    .expect("positive degrees")
                    .with_cardinality(plan.k);
                out.extend(
                    enumerate_ssp(&problem, limit - out.len())
                        .iter()
                        .map(|sol| lift(sol.chosen())),
                );
                if out.len() >= limit {
                    break;
                }
            }
            out.sort();
            out
        }
        SemanticsTag::Mb => {
            let strongest = w / s - Rational::one();
            let candidates: Vec<usize> = (0..values.len())
                .filter(|&i| values[i] <= strongest)
                .collect();
            let mut out = Vec::new();
            mb_subsets(values, &strongest, &candidates, 0, &mut Vec::new(), false, limit, &mut out);
            out.iter().map(|chosen| lift(chosen)).collect()
        }
    }
}

/// Include-first walk over subsets of `candidates` that contain at least
/// one item equal to `strongest`.
#[allow(clippy::too_many_arguments)]
fn mb_subsets(
    values: &[Rational],
    strongest: &Rational,
    candidates: &[usize],
    start: usize,
    stack: &mut Vec<usize>,
    matched: bool,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    if !matched && !candidates[start..].iter().any(|&i| &values[i] == strongest) {
        return;
    }
    if start == candidates.len() {
        out.push(stack.clone());
        return;
    }
    let item = candidates[start];
    stack.push(item);
    let hit = matched || &values[item] == strongest;
    mb_subsets(values, strongest, candidates, start + 1, stack, hit, limit, out);
    stack.pop();
    mb_subsets(values, strongest, candidates, start + 1, stack, matched, limit, out);
}

/// Up to `limit` distinct exact solutions, ordered lexicographically by
/// the per-argument attacker tuples (first argument slowest).
pub fn enumerate_solutions(instance: &InferenceInstance, limit: usize) -> Vec<AttackSet> {
    if limit == 0 {
        return Vec::new();
    }
    let (positions, values): (Vec<usize>, Vec<Rational>) = (0..instance.len())
        .filter(|&b| instance.target(b).is_positive())
        .map(|b| (b, instance.target(b).clone()))
        .unzip();
    let options: Vec<Vec<Vec<usize>>> = (0..instance.len())
        .map(|a| attacker_options(instance, &positions, &values, a, limit))
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut digits = vec![0usize; options.len()];
    let mut out = Vec::new();
    loop {
        let attacks: AttackSet = digits
            .iter()
            .enumerate()
            .flat_map(|(a, &d)| options[a][d].iter().map(move |&b| (b, a)))
            .collect();
        out.push(attacks);
        if out.len() >= limit {
            return out;
        }
        let mut pos = options.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < options[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

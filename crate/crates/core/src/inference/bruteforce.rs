//! Exhaustive search over every attack relation on tiny instances. Used as
//! an independent oracle for the solvers.

use crate::error::InferenceError;
use crate::par::{self, Parallelism};
use crate::semantics::verify_exact;
use crate::waf::{AttackSet, InferenceInstance};

/// 2^(4·4) relations is the most this will enumerate.
pub const BRUTE_FORCE_HARD_LIMIT: usize = 4;

pub const DEFAULT_GRAPH_LIMIT: usize = 3;

fn relation(n: usize, mask: usize) -> AttackSet {
    (0..n * n)
        .filter(|bit| mask >> bit & 1 == 1)
        .map(|bit| (bit / n, bit % n))
        .collect()
}

fn check_size(instance: &InferenceInstance, graph_limit: usize) -> Result<usize, InferenceError> {
    let limit = graph_limit.min(BRUTE_FORCE_HARD_LIMIT);
    let n = instance.len();
    if n > limit {
        return Err(InferenceError::TooManyArguments { n, limit });
    }
    Ok(1usize << (n * n))
}

fn realises(instance: &InferenceInstance, mask: usize) -> bool {
    let framework = instance.framework(relation(instance.len(), mask));
    verify_exact(&framework, instance.semantics(), instance.targets())
}

/// Whether any attack relation realises the targets exactly. A fixed point
/// is unique, so exact equation checks also cover cyclic relations.
pub fn decide_bruteforce(
    instance: &InferenceInstance,
    graph_limit: usize,
    parallelism: Parallelism,
) -> Result<bool, InferenceError> {
    let masks = check_size(instance, graph_limit)?;
    Ok(par::find_first(parallelism, masks, |mask| realises(instance, mask)).is_some())
}

/// Every realising relation, ordered by bitmask.
pub fn enumerate_bruteforce(
    instance: &InferenceInstance,
    graph_limit: usize,
    parallelism: Parallelism,
) -> Result<Vec<AttackSet>, InferenceError> {
    let masks = check_size(instance, graph_limit)?;
    Ok(par::filter_range(parallelism, masks, |mask| realises(instance, mask))
        .into_iter()
        .map(|mask| relation(instance.len(), mask))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio, Rational};
    use crate::waf::{ArgumentSet, DegreeAssignment, SemanticsTag};
    use std::sync::Arc;

    fn instance(w: Vec<Rational>, s: Vec<Rational>, sem: SemanticsTag) -> InferenceInstance {
        let args = Arc::new(ArgumentSet::numbered("a", w.len()));
        InferenceInstance::new(args, w, DegreeAssignment::new(s), sem).unwrap()
    }

    #[test]
    fn unattacked_argument() {
        for sem in SemanticsTag::ALL {
            let inst = instance(vec![ratio(1, 2)], vec![ratio(1, 2)], sem);
            assert!(decide_bruteforce(&inst, 3, Parallelism::Sequential).unwrap());
        }
    }

    #[test]
    fn zero_weight_positive_degree() {
        let inst = instance(vec![int(0)], vec![ratio(1, 2)], SemanticsTag::Mb);
        assert!(!decide_bruteforce(&inst, 3, Parallelism::default()).unwrap());
    }

    #[test]
    fn two_argument_hc() {
        // S(a) = w(a) / (1 + S(b)) with b unattacked
        let inst = instance(vec![ratio(3, 4), ratio(1, 2)], vec![ratio(1, 2), ratio(1, 2)], SemanticsTag::Hc);
        assert!(decide_bruteforce(&inst, 3, Parallelism::Sequential).unwrap());
        let all = enumerate_bruteforce(&inst, 3, Parallelism::Sequential).unwrap();
        // b attacks a, or a attacks itself
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn size_limit() {
        let inst = instance(vec![int(1); 4], vec![int(1); 4], SemanticsTag::Hc);
        assert!(matches!(
            decide_bruteforce(&inst, 3, Parallelism::Sequential),
            Err(InferenceError::TooManyArguments { n: 4, limit: 3 })
        ));
        let inst = instance(vec![int(1); 5], vec![int(1); 5], SemanticsTag::Hc);
        assert!(decide_bruteforce(&inst, 9, Parallelism::Sequential).is_err());
    }

    #[test]
    fn modes_agree() {
        let inst = instance(
            vec![ratio(7, 10), ratio(1, 2), int(1)],
            vec![ratio(7, 15), ratio(1, 2), ratio(2, 3)],
            SemanticsTag::Mb,
        );
        assert_eq!(
            enumerate_bruteforce(&inst, 3, Parallelism::Sequential).unwrap(),
            enumerate_bruteforce(&inst, 3, Parallelism::Parallel).unwrap()
        );
    }
}

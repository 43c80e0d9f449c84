use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{expect_semantics, SolveOptions};
use crate::error::InferenceError;
use crate::par;
use crate::rational::Rational;
use crate::subset_sum::{self, Backend, SubsetSumInstance};
use crate::waf::{AttackSet, InferenceInstance, SemanticsTag};

/// Sum of attacker degrees an argument needs under HC: `(w - S) / S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcTarget(pub Rational);

/// Under CB, `k` positive-weight attackers whose degrees sum to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbPlan {
    pub k: usize,
    pub target: Rational,
}

/// `Ok(None)` when the degree exceeds the weight, which no attack set can
/// produce.
pub fn hc_target(weight: &Rational, degree: &Rational) -> Result<Option<HcTarget>, InferenceError> {
    if degree.is_zero() {
        return Err(InferenceError::ZeroDegree);
    }
    let target = (weight - degree) / degree;
    Ok((!target.is_negative()).then_some(HcTarget(target)))
}

/// Candidate attacker counts for an attacked argument, smallest first.
///
/// With `k` attackers of degrees in `(0, 1]` the count must satisfy
/// `(w - 2S)/S <= k <= (w - S)/S`; each integer in that bracket is kept if
/// its required degree sum `k (w - S(k+1)) / S` lies in `(0, k]`. An empty
/// list means the argument cannot be realised. Callers handle `S = w`
/// (no positive attackers) themselves.
pub fn cb_plan(weight: &Rational, degree: &Rational) -> Result<Vec<CbPlan>, InferenceError> {
    if degree.is_zero() {
        return Err(InferenceError::ZeroDegree);
    }
    let lo = (weight - degree * Rational::from_integer(2.into())) / degree;
    let hi = (weight - degree) / degree;
    let first = lo.ceil().to_integer().max(1.into());
    let last = hi.floor().to_integer();
    let mut plans = Vec::new();
    let mut k = first;
    while k <= last {
        let kr = Rational::from_integer(k.clone());
        let target = &kr * (weight - degree * (&kr + Rational::one())) / degree;
        if target.is_positive() && target <= kr {
            let k = k.to_usize().expect("attacker count fits in usize");
            plans.push(CbPlan { k, target });
        }
        k += 1;
    }
    Ok(plans)
}

/// Positions and values of the strictly positive target degrees.
fn positive_degrees(instance: &InferenceInstance) -> (Vec<usize>, Vec<Rational>) {
    (0..instance.len())
        .filter(|&b| instance.target(b).is_positive())
        .map(|b| (b, instance.target(b).clone()))
        .unzip()
}

fn run_subset_sum(problem: &SubsetSumInstance, backend: Backend) -> Option<Vec<usize>> {
    let answer = match subset_sum::solve_with(problem, backend) {
        Ok(answer) => answer,
        // DP refused an oversized target; search is always applicable.
        Err(_) => subset_sum::solve(problem),
    };
    answer.map(|s| s.chosen().to_vec())
}

/// Runs `per_argument` for every argument needing attackers and unions the
/// results; `None` if any argument fails.
fn assemble<F>(instance: &InferenceInstance, options: &SolveOptions, per_argument: F) -> Option<AttackSet>
where
    F: Fn(usize) -> Option<Vec<usize>> + Sync + Send,
{
    if !(0..instance.len()).all(|a| instance.zero_consistent(a)) {
        return None;
    }
    let per_arg = par::map_range(options.parallelism, instance.len(), 2, |a| {
        let (w, s) = (instance.weight(a), instance.target(a));
        if w.is_zero() || w == s {
            Some(Vec::new())
        } else {
            per_argument(a)
        }
    });
    let mut attacks = AttackSet::new();
    for (a, attackers) in per_arg.into_iter().enumerate() {
        attacks.extend(attackers?.into_iter().map(|b| (b, a)));
    }
    Some(attacks)
}

pub(crate) fn solve_hc_with(instance: &InferenceInstance, options: &SolveOptions) -> Option<AttackSet> {
    let (positions, values) = positive_degrees(instance);
    assemble(instance, options, |a| {
        let HcTarget(target) = hc_target(instance.weight(a), instance.target(a)).ok()??;
        let problem = SubsetSumInstance::new(values.clone(), target).expect("degrees are positive");
        let chosen = run_subset_sum(&problem, options.backend)?;
        Some(chosen.into_iter().map(|i| positions[i]).collect())
    })
}

pub(crate) fn solve_cb_with(instance: &InferenceInstance, options: &SolveOptions) -> Option<AttackSet> {
    let (positions, values) = positive_degrees(instance);
    assemble(instance, options, |a| {
        let plans = cb_plan(instance.weight(a), instance.target(a)).ok()?;
        plans.into_iter().find_map(|plan| {
            let problem = SubsetSumInstance::new(values.clone(), plan.target)
                .expect("degrees are positive")
                .with_cardinality(plan.k);
            let chosen = run_subset_sum(&problem, options.backend)?;
            Some(chosen.into_iter().map(|i| positions[i]).collect())
        })
    })
}

/// One subset-sum per attacked argument over the positive target degrees
/// (the argument's own degree included, so self-attacks may appear).
pub fn solve_hc(instance: &InferenceInstance) -> Result<Option<AttackSet>, InferenceError> {
    expect_semantics(instance, SemanticsTag::Hc)?;
    Ok(solve_hc_with(instance, &SolveOptions::default()))
}

/// As [`solve_hc`] with a cardinality-constrained subset-sum per argument,
/// trying each [`cb_plan`] candidate in increasing `k`.
pub fn solve_cb(instance: &InferenceInstance) -> Result<Option<AttackSet>, InferenceError> {
    expect_semantics(instance, SemanticsTag::Cb)?;
    Ok(solve_cb_with(instance, &SolveOptions::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::semantics::verify_exact;
    use crate::waf::{ArgumentSet, DegreeAssignment};
    use std::sync::Arc;

    fn instance(w: Vec<Rational>, s: Vec<Rational>, sem: SemanticsTag) -> InferenceInstance {
        let args = Arc::new(ArgumentSet::numbered("a", w.len()));
        InferenceInstance::new(args, w, DegreeAssignment::new(s), sem).unwrap()
    }

    #[test]
    fn hc_targets() {
        assert_eq!(
            hc_target(&int(1), &ratio(975, 1015)).unwrap(),
            Some(HcTarget(ratio(40, 975)))
        );
        assert_eq!(hc_target(&ratio(1, 3), &ratio(1, 3)).unwrap(), Some(HcTarget(int(0))));
        assert_eq!(hc_target(&ratio(1, 2), &ratio(3, 4)).unwrap(), None);
        assert!(matches!(
            hc_target(&int(1), &int(0)),
            Err(InferenceError::ZeroDegree)
        ));
    }

    #[test]
    fn ssp_encoded_instance() {
        // weights = degrees = 0.4 m_i / 975 for M = {23, 94, 1, 37, 40}
        let items = [23, 94, 1, 37, 40];
        let mut w = vec![int(1)];
        let mut s = vec![ratio(975, 1015)];
        for m in items {
            w.push(ratio(2 * m, 5 * 975));
            s.push(ratio(2 * m, 5 * 975));
        }
        let inst = instance(w, s, SemanticsTag::Hc);
        let d = solve_hc(&inst).unwrap().unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(1, 0), (4, 0), (5, 0)]);
        assert!(verify_exact(&inst.framework(d), SemanticsTag::Hc, inst.targets()));
    }

    #[test]
    fn hc_degrees_equal_weights() {
        let w = vec![ratio(1, 2), int(0), int(1)];
        let inst = instance(w.clone(), w, SemanticsTag::Hc);
        assert!(solve_hc(&inst).unwrap().unwrap().is_empty());
    }

    #[test]
    fn hc_single_argument_needs_impossible_attacker() {
        let inst = instance(vec![int(1)], vec![ratio(1, 3)], SemanticsTag::Hc);
        assert_eq!(solve_hc(&inst).unwrap(), None);
    }

    #[test]
    fn hc_zero_screen() {
        let inst = instance(vec![int(0), int(1)], vec![ratio(1, 2), int(1)], SemanticsTag::Hc);
        assert_eq!(solve_hc(&inst).unwrap(), None);
    }

    #[test]
    fn cb_plan_for_example_argument() {
        let plans = cb_plan(&ratio(9, 10), &ratio(39, 151)).unwrap();
        assert_eq!(plans, vec![CbPlan { k: 2, target: ratio(63, 65) }]);
    }

    #[test]
    fn cb_plan_boundary_needs_zero_sum() {
        assert!(cb_plan(&int(1), &ratio(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn cb_plan_filters_bracket() {
        // bracket [1, 2]: k=1 needs sum 1, k=2 needs sum 0
        assert_eq!(
            cb_plan(&int(1), &ratio(1, 3)).unwrap(),
            vec![CbPlan { k: 1, target: int(1) }]
        );
    }

    #[test]
    fn cb_example_round_trip() {
        let w = vec![ratio(9, 10), ratio(7, 10), ratio(7, 10), ratio(3, 5)];
        let s = vec![ratio(39, 151), ratio(7, 10), ratio(7, 26), ratio(3, 5)];
        let inst = instance(w, s, SemanticsTag::Cb);
        let d = solve_cb(&inst).unwrap().unwrap();
        assert!(verify_exact(&inst.framework(d.clone()), SemanticsTag::Cb, inst.targets()));
        assert_eq!(d.onto(0).count(), 2);
        assert_eq!(d.onto(2).count(), 1);
    }

    #[test]
    fn cb_needs_attacker_but_bracket_is_empty() {
        // (w - S)/S = 2/3 < 1
        let inst = instance(vec![int(1)], vec![ratio(3, 5)], SemanticsTag::Cb);
        assert_eq!(solve_cb(&inst).unwrap(), None);
    }

    #[test]
    fn cb_degrees_equal_weights() {
        let w = vec![ratio(1, 2), ratio(1, 4)];
        let inst = instance(w.clone(), w, SemanticsTag::Cb);
        assert!(solve_cb(&inst).unwrap().unwrap().is_empty());
    }

    #[test]
    fn degree_above_weight_is_infeasible() {
        for sem in [SemanticsTag::Hc, SemanticsTag::Cb] {
            let inst = instance(vec![ratio(1, 2), int(1)], vec![ratio(3, 4), int(1)], sem);
            assert_eq!(super::super::solve(&inst), None);
        }
    }
}

//! Degree-preserving edits of a known solution: expansion and contraction
//! under MB, attacker substitution under HC and CB.

use num_traits::{Signed, Zero};

use super::sums::cb_plan;
use crate::error::InferenceError;
use crate::rational::Rational;
use crate::semantics::verify_exact;
use crate::waf::{AttackSet, DegreeAssignment, SemanticsTag, WeightedFramework};

fn require_solution(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    degrees: &DegreeAssignment,
) -> Result<(), InferenceError> {
    if verify_exact(framework, semantics, degrees) {
        Ok(())
    } else {
        Err(InferenceError::NotASolution(semantics))
    }
}

fn inadmissible(framework: &WeightedFramework, (s, t): (usize, usize), why: &str) -> InferenceError {
    InferenceError::Inadmissible(
        framework.name(s).to_string(),
        framework.name(t).to_string(),
        why.to_string(),
    )
}

fn rebuild(
    framework: &WeightedFramework,
    attacks: AttackSet,
    semantics: SemanticsTag,
    degrees: &DegreeAssignment,
) -> Result<WeightedFramework, InferenceError> {
    let out = framework.with_attacks(attacks);
    require_solution(&out, semantics, degrees)?;
    Ok(out)
}

/// Adds `extra` to a max-based solution. Each added `(x, y)` must either
/// target a zero-weight argument or be no stronger than some existing
/// attacker of `y`.
pub fn expand_mb(
    framework: &WeightedFramework,
    degrees: &DegreeAssignment,
    extra: &AttackSet,
) -> Result<WeightedFramework, InferenceError> {
    require_solution(framework, SemanticsTag::Mb, degrees)?;
    for (x, y) in extra.iter() {
        let admissible = framework.weight(y).is_zero()
            || framework
                .attackers_of(y)
                .iter()
                .any(|&k| degrees[x] <= degrees[k]);
        if !admissible {
            return Err(inadmissible(
                framework,
                (x, y),
                "target has no existing attacker at least as strong",
            ));
        }
    }
    rebuild(
        framework,
        framework.attacks().union(extra),
        SemanticsTag::Mb,
        degrees,
    )
}

/// Removes `removed` from a max-based solution while `pivot` stays. Every
/// removed attack must share the pivot's target and be no stronger than the
/// pivot, unless that target has zero weight.
pub fn contract_mb(
    framework: &WeightedFramework,
    degrees: &DegreeAssignment,
    pivot: (usize, usize),
    removed: &AttackSet,
) -> Result<WeightedFramework, InferenceError> {
    require_solution(framework, SemanticsTag::Mb, degrees)?;
    let (keeper, target) = pivot;
    if !framework.attacks().contains(keeper, target) {
        return Err(inadmissible(framework, pivot, "pivot is not an attack of the framework"));
    }
    let free = framework.weight(target).is_zero();
    for (x, y) in removed.iter() {
        if y != target {
            return Err(inadmissible(framework, (x, y), "does not share the pivot's target"));
        }
        if free {
            continue;
        }
        if x == keeper {
            return Err(inadmissible(framework, (x, y), "cannot remove the pivot itself"));
        }
        if !framework.attacks().contains(x, y) {
            return Err(inadmissible(framework, (x, y), "not an attack of the framework"));
        }
        if degrees[x] > degrees[keeper] {
            return Err(inadmissible(framework, (x, y), "stronger than the pivot"));
        }
    }
    rebuild(
        framework,
        framework.attacks().difference(removed),
        SemanticsTag::Mb,
        degrees,
    )
}

/// Every attack a contraction on `pivot` may remove (the pivot itself is kept).
pub fn maximal_contraction(
    framework: &WeightedFramework,
    degrees: &DegreeAssignment,
    pivot: (usize, usize),
) -> AttackSet {
    let (keeper, target) = pivot;
    let free = framework.weight(target).is_zero();
    framework
        .attackers_of(target)
        .iter()
        .copied()
        .filter(|&x| x != keeper && (free || degrees[x] <= degrees[keeper]))
        .map(|x| (x, target))
        .collect()
}

/// Walks from one max-based solution to another: a single expansion to the
/// union, then one contraction per argument removing the attacks the goal
/// lacks. Returns every intermediate attack set, ending with `goal`.
pub fn reach_mb(
    framework: &WeightedFramework,
    degrees: &DegreeAssignment,
    goal: &AttackSet,
) -> Result<Vec<AttackSet>, InferenceError> {
    require_solution(&framework.with_attacks(goal.clone()), SemanticsTag::Mb, degrees)?;
    let mut current = expand_mb(framework, degrees, &goal.difference(framework.attacks()))?;
    let mut path = vec![current.attacks().clone()];
    for a in 0..framework.len() {
        let removed: AttackSet = current
            .attacks()
            .onto(a)
            .filter(|&(x, y)| !goal.contains(x, y))
            .collect();
        if removed.is_empty() {
            continue;
        }
        // Strongest surviving attacker; without one, any removed attack
        // (only admissible when the target has zero weight).
        let pivot = goal
            .onto(a)
            .fold(None::<(usize, usize)>, |best, att| match best {
                Some(b) if degrees[b.0] >= degrees[att.0] => Some(b),
                _ => Some(att),
            })
            .or_else(|| removed.iter().next())
            .expect("removed is non-empty");
        current = contract_mb(&current, degrees, pivot, &removed)?;
        path.push(current.attacks().clone());
    }
    debug_assert_eq!(current.attacks(), goal);
    Ok(path)
}

fn check_onto(
    framework: &WeightedFramework,
    x: usize,
    replacement: &AttackSet,
) -> Result<(), InferenceError> {
    match replacement.iter().find(|&(_, t)| t != x) {
        Some(att) => Err(inadmissible(framework, att, "does not target the substituted argument")),
        None => Ok(()),
    }
}

fn replace_onto(framework: &WeightedFramework, x: usize, replacement: &AttackSet) -> AttackSet {
    framework
        .attacks()
        .iter()
        .filter(|&(_, t)| t != x)
        .chain(replacement.iter())
        .collect()
}

/// Replaces all attacks onto `x` in an HC solution by `replacement`, whose
/// attacker degrees must sum to `(w(x) - S(x)) / S(x)`.
pub fn substitute_hc(
    framework: &WeightedFramework,
    degrees: &DegreeAssignment,
    x: usize,
    replacement: &AttackSet,
) -> Result<WeightedFramework, InferenceError> {
    require_solution(framework, SemanticsTag::Hc, degrees)?;
    check_onto(framework, x, replacement)?;
    let (w, s) = (framework.weight(x), &degrees[x]);
    if !w.is_zero() {
        let expected = (w - s) / s;
        let actual = replacement
            .iter()
            .fold(Rational::zero(), |acc, (z, _)| acc + &degrees[z]);
        if actual != expected {
            return Err(InferenceError::SumMismatch {
                argument: framework.name(x).to_string(),
                expected: expected.into(),
                actual: actual.into(),
            });
        }
    }
    rebuild(
        framework,
        replace_onto(framework, x, replacement),
        SemanticsTag::Hc,
        degrees,
    )
}

/// Replaces all attacks onto `x` in a CB solution by `replacement`. Its
/// positive-weight attackers must match an admissible count `k` for `x`
/// and their degrees must sum to that count's required total.
pub fn substitute_cb(
    framework: &WeightedFramework,
    degrees: &DegreeAssignment,
    x: usize,
    replacement: &AttackSet,
) -> Result<WeightedFramework, InferenceError> {
    require_solution(framework, SemanticsTag::Cb, degrees)?;
    check_onto(framework, x, replacement)?;
    let (w, s) = (framework.weight(x), &degrees[x]);
    if !w.is_zero() {
        let positive: Vec<usize> = replacement
            .iter()
            .map(|(z, _)| z)
            .filter(|&z| framework.weight(z).is_positive())
            .collect();
        let actual = positive
            .iter()
            .fold(Rational::zero(), |acc, &z| acc + &degrees[z]);
        let argument = framework.name(x).to_string();
        if w == s {
            if !positive.is_empty() {
                return Err(InferenceError::CardinalityMismatch {
                    argument,
                    expected: vec![0],
                    actual: positive.len(),
                });
            }
        } else {
            let plans = cb_plan(w, s)?;
            let Some(plan) = plans.iter().find(|p| p.k == positive.len()) else {
                return Err(InferenceError::CardinalityMismatch {
                    argument,
                    expected: plans.iter().map(|p| p.k).collect(),
                    actual: positive.len(),
                });
            };
            if plan.target != actual {
                return Err(InferenceError::SumMismatch {
                    argument,
                    expected: plan.target.clone().into(),
                    actual: actual.into(),
                });
            }
        }
    }
    rebuild(
        framework,
        replace_onto(framework, x, replacement),
        SemanticsTag::Cb,
        degrees,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_waf;
    use crate::rational::ratio;
    use crate::semantics::compute_degrees_exact_acyclic;

    /// Four arguments shaped like the contraction example: a2 attacks itself
    /// and is attacked by every other argument.
    fn contraction_example() -> (WeightedFramework, DegreeAssignment) {
        let s = DegreeAssignment::new(vec![ratio(43, 100), ratio(30, 100), ratio(58, 100), ratio(30, 100)]);
        // w = S (1 + strongest attacker degree)
        let w = [
            &s[0] * (ratio(1, 1) + &s[2]),
            &s[1] * (ratio(1, 1) + &s[0]),
            &s[2] * (ratio(1, 1) + &s[2]),
            s[3].clone(),
        ];
        let text = format!(
            "arg a0 {}\narg a1 {}\narg a2 {}\narg a3 {}\n\
             att a2 a0\natt a0 a1\natt a3 a1\natt a0 a2\natt a1 a2\natt a2 a2\natt a3 a2\n",
            w[0], w[1], w[2], w[3]
        );
        let f = parse_waf(&text).unwrap();
        assert!(verify_exact(&f, SemanticsTag::Mb, &s));
        (f, s)
    }

    #[test]
    fn contraction_then_expansion() {
        let (f, s) = contraction_example();
        let pivot = (2, 2);
        let removed = maximal_contraction(&f, &s, pivot);
        assert_eq!(removed.iter().collect::<Vec<_>>(), vec![(0, 2), (1, 2), (3, 2)]);
        let contracted = contract_mb(&f, &s, pivot, &removed).unwrap();
        assert_eq!(contracted.attackers_of(2), &[2]);
        let expanded = expand_mb(&contracted, &s, &[(0, 2)].into_iter().collect()).unwrap();
        assert_eq!(expanded.attackers_of(2), &[0, 2]);
    }

    #[test]
    fn empty_edits_are_identity() {
        let (f, s) = contraction_example();
        assert_eq!(expand_mb(&f, &s, &AttackSet::new()).unwrap(), f);
        assert_eq!(contract_mb(&f, &s, (2, 2), &AttackSet::new()).unwrap(), f);
    }

    #[test]
    fn inadmissible_edits_are_named() {
        let (f, s) = contraction_example();
        // a3 is unattacked with positive weight: no attack may be added onto it.
        let err = expand_mb(&f, &s, &[(1, 3)].into_iter().collect()).unwrap_err();
        assert!(matches!(&err, InferenceError::Inadmissible(a, b, _) if a == "a1" && b == "a3"), "{err}");
        // pivot (a1, a2) is weaker than a0.
        let err = contract_mb(&f, &s, (1, 2), &[(0, 2)].into_iter().collect()).unwrap_err();
        assert!(matches!(err, InferenceError::Inadmissible(..)));
        let err = contract_mb(&f, &s, (1, 3), &AttackSet::new()).unwrap_err();
        assert!(matches!(err, InferenceError::Inadmissible(..)));
        let err = contract_mb(&f, &s, (2, 2), &[(2, 2)].into_iter().collect()).unwrap_err();
        assert!(matches!(err, InferenceError::Inadmissible(..)));
    }

    #[test]
    fn zero_weight_targets_are_free() {
        let f = parse_waf("arg a 0\narg b 1/2\n").unwrap();
        let s = DegreeAssignment::new(vec![ratio(0, 1), ratio(1, 2)]);
        let g = expand_mb(&f, &s, &[(1, 0), (0, 0)].into_iter().collect()).unwrap();
        assert_eq!(g.attacks().len(), 2);
        let h = contract_mb(&g, &s, (1, 0), &[(0, 0), (1, 0)].into_iter().collect()).unwrap();
        assert!(h.attacks().is_empty());
    }

    #[test]
    fn not_a_solution_is_rejected() {
        let (f, mut_s) = contraction_example();
        let mut values = mut_s.into_values();
        values[0] = ratio(1, 2);
        let s = DegreeAssignment::new(values);
        assert_eq!(
            expand_mb(&f, &s, &AttackSet::new()),
            Err(InferenceError::NotASolution(SemanticsTag::Mb))
        );
    }

    #[test]
    fn reach_between_two_solutions() {
        let (f, s) = contraction_example();
        let goal: AttackSet = f
            .attacks()
            .iter()
            .filter(|&(x, y)| y != 2 || x == 2)
            .collect();
        let path = reach_mb(&f, &s, &goal).unwrap();
        assert_eq!(path.last(), Some(&goal));
    }

    fn hc_dup() -> (WeightedFramework, DegreeAssignment) {
        // b and c share degree 1/4 and either can attack a.
        let f = parse_waf("arg a 1/2\narg b 1/4\narg c 1/4\natt b a\n").unwrap();
        let s = compute_degrees_exact_acyclic(&f, SemanticsTag::Hc).unwrap();
        (f, s)
    }

    #[test]
    fn hc_substitution() {
        let (f, s) = hc_dup();
        let same = substitute_hc(&f, &s, 0, &[(1, 0)].into_iter().collect()).unwrap();
        assert_eq!(same, f);
        let swapped = substitute_hc(&f, &s, 0, &[(2, 0)].into_iter().collect()).unwrap();
        assert_eq!(swapped.attackers_of(0), &[2]);
        let err = substitute_hc(&f, &s, 0, &[(1, 0), (2, 0)].into_iter().collect()).unwrap_err();
        assert!(matches!(err, InferenceError::SumMismatch { .. }));
        let err = substitute_hc(&f, &s, 0, &[(2, 1)].into_iter().collect()).unwrap_err();
        assert!(matches!(err, InferenceError::Inadmissible(..)));
    }

    #[test]
    fn cb_substitution() {
        let (f, _) = hc_dup();
        let s = compute_degrees_exact_acyclic(&f, SemanticsTag::Cb).unwrap();
        let same = substitute_cb(&f, &s, 0, &[(1, 0)].into_iter().collect()).unwrap();
        assert_eq!(same, f);
        let swapped = substitute_cb(&f, &s, 0, &[(2, 0)].into_iter().collect()).unwrap();
        assert_eq!(swapped.attackers_of(0), &[2]);
        let err = substitute_cb(&f, &s, 0, &[(1, 0), (2, 0)].into_iter().collect()).unwrap_err();
        assert!(matches!(err, InferenceError::CardinalityMismatch { .. }), "{err}");
        let err = substitute_cb(&f, &s, 0, &AttackSet::new()).unwrap_err();
        assert!(matches!(err, InferenceError::CardinalityMismatch { .. }));
    }
}

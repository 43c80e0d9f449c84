//! Subset-sum instances encoded as attack inference instances, and the
//! reverse mapping from attack sets back to subsets.
//!
//! Argument `a0` is the one to be attacked; item `i` becomes argument
//! `a{i+1}` whose weight and degree are both proportional to the item.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ReductionError;
use crate::inference::cb_plan;
use crate::rational::{pow10, ratio, Rational};
use crate::semantics::verify_exact;
use crate::subset_sum::SubsetSolution;
use crate::waf::{ArgumentId, ArgumentSet, AttackSet, DegreeAssignment, InferenceInstance, SemanticsTag};

#[derive(Clone, Debug)]
pub struct HcReductionArtifacts {
    pub instance: InferenceInstance,
    /// Argument standing for each item.
    pub item_map: Vec<ArgumentId>,
    pub n: usize,
    /// Sum of all items.
    pub m_star: Rational,
    pub items: Vec<Rational>,
    pub target: Rational,
}

#[derive(Clone, Debug)]
pub struct CbReductionArtifacts {
    pub instance: InferenceInstance,
    pub item_map: Vec<ArgumentId>,
    pub k: usize,
    /// Scaling factor, rounded down to `precision_digits` decimals.
    pub u_approx: Rational,
    pub precision_digits: u32,
    /// Largest item.
    pub m_star: Rational,
    pub items: Vec<Rational>,
    pub target: Rational,
    /// `a0`'s degree admits exactly `k` positive attackers.
    pub cardinality_pinned: bool,
    /// `a0`'s own degree exceeds the required attacker sum, so it cannot
    /// attack itself.
    pub self_attack_excluded: bool,
}

impl CbReductionArtifacts {
    /// Both per-instance checks the backward direction relies on.
    pub fn is_faithful(&self) -> bool {
        self.cardinality_pinned && self.self_attack_excluded
    }
}

fn check_items(items: &[Rational], target: &Rational) -> Result<(), ReductionError> {
    if items.is_empty() {
        return Err(ReductionError::EmptyMultiset);
    }
    if let Some(i) = items.iter().position(|m| !m.is_positive()) {
        return Err(ReductionError::NonPositiveItem(i));
    }
    if target.is_negative() {
        return Err(ReductionError::NegativeTarget);
    }
    Ok(())
}

/// `a0` weighted 1 with degree `s0`, then one argument per item with weight
/// and degree both `scale * m_i`.
fn build(
    items: &[Rational],
    scale: &Rational,
    s0: Rational,
    semantics: SemanticsTag,
) -> (InferenceInstance, Vec<ArgumentId>) {
    let args = Arc::new(ArgumentSet::numbered("a", items.len() + 1));
    let mut weights = vec![Rational::one()];
    weights.extend(items.iter().map(|m| scale * m));
    let mut degrees = vec![s0];
    degrees.extend(weights[1..].iter().cloned());
    let item_map = args.names()[1..].to_vec();
    let instance = InferenceInstance::new(args, weights, DegreeAssignment::new(degrees), semantics)
        .expect("reduction values lie in [0,1]");
    (instance, item_map)
}

pub fn ssp_to_hc(items: &[Rational], target: &Rational) -> Result<HcReductionArtifacts, ReductionError> {
    check_items(items, target)?;
    let n = items.len();
    let m_star: Rational = items.iter().sum();
    let n_m = Rational::from_integer(n.into()) * &m_star;
    let two_fifths = ratio(2, 5);
    let scale = &two_fifths / &n_m;
    let s0 = &n_m / (&two_fifths * target + &n_m);
    let (instance, item_map) = build(items, &scale, s0, SemanticsTag::Hc);
    Ok(HcReductionArtifacts {
        instance,
        item_map,
        n,
        m_star,
        items: items.to_vec(),
        target: target.clone(),
    })
}

/// Item indices of the arguments attacking `a0`.
fn attackers_of_a0(attacks: &AttackSet, args: &ArgumentSet) -> Result<Vec<usize>, ReductionError> {
    attacks
        .onto(0)
        .map(|(b, _)| match b {
            0 => Err(ReductionError::SelfAttack(args.name(0).to_string())),
            b => Ok(b - 1),
        })
        .collect()
}

pub fn extract_ssp_solution(
    artifacts: &HcReductionArtifacts,
    attacks: &AttackSet,
) -> Result<SubsetSolution, ReductionError> {
    let instance = &artifacts.instance;
    if !verify_exact(&instance.framework(attacks.clone()), SemanticsTag::Hc, instance.targets()) {
        return Err(ReductionError::NotASolution);
    }
    let chosen = attackers_of_a0(attacks, instance.args())?;
    let unscale = Rational::from_integer(artifacts.n.into()) * &artifacts.m_star / ratio(2, 5);
    let got: Rational = chosen.iter().map(|&i| instance.target(i + 1) * &unscale).sum();
    if got != artifacts.target {
        return Err(ReductionError::WrongSum {
            expected: artifacts.target.clone().into(),
            got: got.into(),
        });
    }
    Ok(SubsetSolution::new(chosen))
}

/// `(sqrt(k^2 + 2k + 4/k + 1) - k - 1) / 3` rounded down to `digits`
/// decimals, computed with integer square roots.
pub fn scaling_factor(k: usize, digits: u32) -> Rational {
    assert!(k >= 1, "k must be positive");
    let k = BigInt::from(k);
    let scale = pow10(digits);
    // k^2 + 2k + 1 + 4/k = ((k+1)^2 k + 4) / k
    let numer = (&k + 1u32).pow(2) * &k + 4u32;
    let radicand = numer * &scale * &scale / &k;
    let root = radicand.sqrt();
    let floored = (root - (&k + 1u32) * &scale) / 3u32;
    Rational::new(floored, scale)
}

pub fn kssp_to_cb(
    items: &[Rational],
    target: &Rational,
    k: usize,
    precision_digits: u32,
) -> Result<CbReductionArtifacts, ReductionError> {
    check_items(items, target)?;
    if k == 0 || k > items.len() {
        return Err(ReductionError::BadCardinality { k, n: items.len() });
    }
    let u = scaling_factor(k, precision_digits);
    if u.is_zero() {
        return Err(ReductionError::PrecisionTooLow(precision_digits));
    }
    let m_star = items.iter().max().expect("non-empty").clone();
    let kr = Rational::from_integer(k.into());
    let required_sum = target * &u / &m_star;
    let s0 = Rational::one() / (Rational::one() + &kr + &required_sum / &kr);
    let cardinality_pinned = cb_plan(&Rational::one(), &s0)
        .map(|plans| plans.len() == 1 && plans[0].k == k)
        .unwrap_or(false);
    let self_attack_excluded = s0 > required_sum;
    let scale = &u / &m_star;
    let (instance, item_map) = build(items, &scale, s0, SemanticsTag::Cb);
    Ok(CbReductionArtifacts {
        instance,
        item_map,
        k,
        u_approx: u,
        precision_digits,
        m_star,
        items: items.to_vec(),
        target: target.clone(),
        cardinality_pinned,
        self_attack_excluded,
    })
}

pub fn extract_kssp_solution(
    artifacts: &CbReductionArtifacts,
    attacks: &AttackSet,
) -> Result<SubsetSolution, ReductionError> {
    let instance = &artifacts.instance;
    if !verify_exact(&instance.framework(attacks.clone()), SemanticsTag::Cb, instance.targets()) {
        return Err(ReductionError::NotASolution);
    }
    let chosen = attackers_of_a0(attacks, instance.args())?;
    if chosen.len() != artifacts.k {
        return Err(ReductionError::WrongCardinality {
            expected: artifacts.k,
            got: chosen.len(),
        });
    }
    let unscale = &artifacts.m_star / &artifacts.u_approx;
    let got: Rational = chosen.iter().map(|&i| instance.target(i + 1) * &unscale).sum();
    if got != artifacts.target {
        return Err(ReductionError::WrongSum {
            expected: artifacts.target.clone().into(),
            got: got.into(),
        });
    }
    Ok(SubsetSolution::new(chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::{solve_cb, solve_hc};
    use crate::rational::{format_decimal, int};

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn ssp_encoding_values() {
        let art = ssp_to_hc(&ints(&[23, 94, 1, 37, 40]), &int(100)).unwrap();
        let w: Vec<String> = art.instance.weights()[1..]
            .iter()
            .map(|v| format_decimal(v, 5))
            .collect();
        assert_eq!(w, ["0.00944", "0.03856", "0.00041", "0.01518", "0.01641"]);
        assert_eq!(art.instance.target(0), &ratio(975, 1015));
        assert_eq!(format_decimal(art.instance.target(0), 5), "0.96059");
        assert_eq!(art.m_star, int(195));
    }

    #[test]
    fn ssp_encoding_extraction() {
        let art = ssp_to_hc(&ints(&[23, 94, 1, 37, 40]), &int(100)).unwrap();
        let d = solve_hc(&art.instance).unwrap().unwrap();
        let names: Vec<_> = d.named(art.instance.args()).iter().map(|(s, _)| s.to_string()).collect();
        assert_eq!(names, ["a1", "a4", "a5"]);
        let sol = extract_ssp_solution(&art, &d).unwrap();
        assert_eq!(sol.chosen(), &[0, 3, 4]);
    }

    #[test]
    fn single_item() {
        let art = ssp_to_hc(&[int(1)], &int(1)).unwrap();
        assert_eq!(art.instance.target(0), &ratio(5, 7));
        assert_eq!(art.instance.len(), 2);
    }

    #[test]
    fn zero_target() {
        let art = ssp_to_hc(&ints(&[3, 4]), &int(0)).unwrap();
        assert_eq!(art.instance.target(0), &int(1));
        let d = solve_hc(&art.instance).unwrap().unwrap();
        assert!(d.is_empty());
        assert!(extract_ssp_solution(&art, &d).unwrap().is_empty());
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(ssp_to_hc(&[], &int(1)).unwrap_err(), ReductionError::EmptyMultiset);
        assert_eq!(ssp_to_hc(&ints(&[1, 0]), &int(1)).unwrap_err(), ReductionError::NonPositiveItem(1));
        assert_eq!(ssp_to_hc(&ints(&[1]), &int(-1)).unwrap_err(), ReductionError::NegativeTarget);
        assert!(matches!(
            kssp_to_cb(&ints(&[1, 2]), &int(1), 3, 6),
            Err(ReductionError::BadCardinality { k: 3, n: 2 })
        ));
        assert_eq!(
            kssp_to_cb(&ints(&[1, 2]), &int(1), 2, 0).unwrap_err(),
            ReductionError::PrecisionTooLow(0)
        );
    }

    #[test]
    fn extraction_rejects_non_solutions() {
        let art = ssp_to_hc(&ints(&[23, 94, 1, 37, 40]), &int(100)).unwrap();
        let empty = AttackSet::new();
        assert_eq!(extract_ssp_solution(&art, &empty).unwrap_err(), ReductionError::NotASolution);
        let cb = kssp_to_cb(&ints(&[2, 3, 5]), &int(5), 2, 6).unwrap();
        assert_eq!(extract_kssp_solution(&cb, &empty).unwrap_err(), ReductionError::NotASolution);
    }

    #[test]
    fn scaling_factors() {
        assert_eq!(scaling_factor(1, 6), ratio(276142, 1_000_000));
        assert_eq!(scaling_factor(2, 6), ratio(105541, 1_000_000));
        assert_eq!(scaling_factor(3, 6), ratio(54443, 1_000_000));
        assert!(scaling_factor(1, 0).is_zero());
    }

    #[test]
    fn cb_round_trip() {
        let items = ints(&[2, 3, 5, 7]);
        let art = kssp_to_cb(&items, &int(10), 2, 6).unwrap();
        assert!(art.is_faithful());
        let d = solve_cb(&art.instance).unwrap().unwrap();
        assert_eq!(d.onto(0).count(), 2);
        let sol = extract_kssp_solution(&art, &d).unwrap();
        assert_eq!(sol.len(), 2);
        assert_eq!(sol.sum(&crate::subset_sum::SubsetSumInstance::new(items, int(10)).unwrap()), int(10));
    }

    #[test]
    fn cb_full_set() {
        let items = ints(&[2, 3, 5]);
        let art = kssp_to_cb(&items, &int(10), 3, 6).unwrap();
        let d = solve_cb(&art.instance).unwrap().unwrap();
        assert_eq!(d.onto(0).map(|(b, _)| b).collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}

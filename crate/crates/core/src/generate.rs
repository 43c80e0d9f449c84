//! Seeded random frameworks and solvable inference instances.

use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenError;
use crate::rational::{ratio, Rational};
use crate::semantics::compute_degrees_exact_acyclic;
use crate::waf::{ArgumentSet, AttackSet, InferenceInstance, SemanticsTag, WeightedFramework};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub attack_probability: Rational,
    /// Only attacks running forward along a random ordering.
    pub acyclic: bool,
    pub weight_denominator: u64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GenConfig {
            n,
            attack_probability: ratio(3, 10),
            acyclic: true,
            weight_denominator: 1000,
            seed,
        }
    }

    pub fn cyclic(mut self) -> Self {
        self.acyclic = false;
        self
    }

    pub fn with_probability(mut self, p: Rational) -> Self {
        self.attack_probability = p;
        self
    }

    pub fn with_denominator(mut self, d: u64) -> Self {
        self.weight_denominator = d;
        self
    }

    fn probability_parts(&self) -> Result<(u64, u64), GenError> {
        let p = &self.attack_probability;
        if p.is_negative() || p > &Rational::from_integer(1.into()) {
            return Err(GenError::BadProbability);
        }
        match (p.numer().to_u64(), p.denom().to_u64()) {
            (Some(num), Some(den)) => Ok((num, den)),
            _ => Err(GenError::BadProbability),
        }
    }
}

/// Weights uniform over `{0, 1/d, ..., 1}`; each ordered pair (self-attacks
/// included in cyclic mode) becomes an attack independently.
pub fn random_waf(config: &GenConfig) -> Result<WeightedFramework, GenError> {
    if config.n == 0 {
        return Err(GenError::Empty);
    }
    if config.weight_denominator == 0 {
        return Err(GenError::BadDenominator);
    }
    let (num, den) = config.probability_parts()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let d = config.weight_denominator;
    let n = config.n;
    let weights: Vec<Rational> = (0..n)
        .map(|_| Rational::new(rng.gen_range(0..=d).into(), d.into()))
        .collect();
    let mut rank: Vec<usize> = (0..n).collect();
    if config.acyclic {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for (r, &a) in order.iter().enumerate() {
            rank[a] = r;
        }
    }
    let mut attacks = AttackSet::new();
    for s in 0..n {
        for t in 0..n {
            if config.acyclic && rank[s] >= rank[t] {
                continue;
            }
            if rng.gen_range(0..den) < num {
                attacks.insert(s, t);
            }
        }
    }
    let args = Arc::new(ArgumentSet::numbered("a", n));
    Ok(WeightedFramework::new(args, weights, attacks).expect("generated values are valid"))
}

/// A random acyclic framework's exact degrees posed as an inverse problem,
/// with the generating attacks as a witness solution.
pub fn forward_instance(
    config: &GenConfig,
    semantics: SemanticsTag,
) -> Result<(InferenceInstance, AttackSet), GenError> {
    if !config.acyclic {
        return Err(GenError::CyclicExact);
    }
    let framework = random_waf(config)?;
    let degrees = compute_degrees_exact_acyclic(&framework, semantics).expect("generated acyclic");
    let instance = InferenceInstance::from_framework(&framework, degrees, semantics)
        .expect("exact degrees lie in [0,1]");
    Ok((instance, framework.attacks().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::verify_exact;

    #[test]
    fn single_argument() {
        let cfg = GenConfig::new(1, 7).with_probability(ratio(0, 1));
        let f = random_waf(&cfg).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.attacks().is_empty());
        let (inst, witness) = forward_instance(&cfg, SemanticsTag::Hc).unwrap();
        assert!(witness.is_empty());
        assert_eq!(inst.target(0), inst.weight(0));
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = GenConfig::new(8, 42).cyclic();
        assert_eq!(random_waf(&cfg).unwrap(), random_waf(&cfg).unwrap());
        let other = GenConfig::new(8, 43).cyclic();
        assert_ne!(random_waf(&cfg).unwrap(), random_waf(&other).unwrap());
    }

    #[test]
    fn acyclic_mode() {
        for seed in 0..50 {
            let f = random_waf(&GenConfig::new(10, seed).with_probability(ratio(1, 2))).unwrap();
            assert!(f.is_acyclic());
        }
    }

    #[test]
    fn witness_verifies() {
        for sem in SemanticsTag::ALL {
            for seed in 0..20 {
                let (inst, witness) = forward_instance(&GenConfig::new(6, seed), sem).unwrap();
                assert!(verify_exact(&inst.framework(witness), sem, inst.targets()));
            }
        }
    }

    #[test]
    fn bad_configs() {
        assert_eq!(random_waf(&GenConfig::new(0, 1)).unwrap_err(), GenError::Empty);
        assert_eq!(
            random_waf(&GenConfig::new(2, 1).with_denominator(0)).unwrap_err(),
            GenError::BadDenominator
        );
        assert_eq!(
            random_waf(&GenConfig::new(2, 1).with_probability(ratio(3, 2))).unwrap_err(),
            GenError::BadProbability
        );
        assert_eq!(
            forward_instance(&GenConfig::new(2, 1).cyclic(), SemanticsTag::Mb).unwrap_err(),
            GenError::CyclicExact
        );
    }
}

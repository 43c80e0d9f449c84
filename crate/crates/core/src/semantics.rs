//! Forward computation of the weighted h-categoriser, max-based and
//! card-based semantics, and the per-argument equation check.
//!
//! All three are fixed points of a synchronous recurrence started from the
//! initial weights. On cyclic graphs the limit is usually irrational, so the
//! iteration keeps every degree on a `1/10^18` grid (values with a finer
//! denominator are floored onto it). Exactness is reserved for [`verify`]
//! and [`compute_degrees_exact_acyclic`].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

use crate::error::SemanticsError;
use crate::par::{self, Parallelism};
use crate::rational::{floor_to_denominator, pow10, ratio, Rational};
use crate::waf::{DegreeAssignment, SemanticsTag, WeightedFramework};

pub const ROUNDING_DIGITS: u32 = 18;

const PARALLEL_THRESHOLD: usize = 512;

fn rounding_grid() -> &'static BigInt {
    static GRID: OnceLock<BigInt> = OnceLock::new();
    GRID.get_or_init(|| pow10(ROUNDING_DIGITS))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationConfig {
    pub tolerance: Rational,
    pub max_iterations: usize,
    pub parallelism: Parallelism,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            tolerance: Rational::new(BigInt::one(), pow10(12)),
            max_iterations: 20_000,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Convergence {
    pub degrees: DegreeAssignment,
    pub iterations: usize,
    /// Largest per-argument change in the final iteration.
    pub last_change: Rational,
}

/// Right-hand side of argument `a`'s equation, evaluated on `current`.
pub fn equation_rhs(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    current: &[Rational],
    a: usize,
) -> Rational {
    let weight = framework.weight(a);
    if weight.is_zero() {
        return Rational::zero();
    }
    let attack = match semantics {
        SemanticsTag::Hc => framework
            .attackers_of(a)
            .iter()
            .fold(Rational::zero(), |acc, &b| acc + &current[b]),
        SemanticsTag::Mb => framework
            .attackers_of(a)
            .iter()
            .map(|&b| &current[b])
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero),
        SemanticsTag::Cb => {
            let (count, sum) = framework
                .positive_attackers_of(a)
                .fold((0i64, Rational::zero()), |(k, s), b| (k + 1, s + &current[b]));
            if count == 0 {
                Rational::zero()
            } else {
                Rational::from_integer(count.into()) + sum / Rational::from_integer(count.into())
            }
        }
    };
    if attack.is_zero() {
        return weight.clone();
    }
    weight / (Rational::one() + attack)
}

fn check_len(framework: &WeightedFramework, degrees: &DegreeAssignment) {
    assert_eq!(
        framework.len(),
        degrees.len(),
        "degree assignment must cover every argument"
    );
}

/// One synchronous application of the recurrence to every argument.
pub fn step(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    current: &DegreeAssignment,
) -> DegreeAssignment {
    step_with(framework, semantics, current, Parallelism::Sequential)
}

pub fn step_with(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    current: &DegreeAssignment,
    parallelism: Parallelism,
) -> DegreeAssignment {
    check_len(framework, current);
    let values = par::map_range(parallelism, framework.len(), PARALLEL_THRESHOLD, |a| {
        equation_rhs(framework, semantics, current.values(), a)
    });
    DegreeAssignment::new(values)
}

/// Iterates from the initial weights until the largest per-argument change
/// drops below the tolerance.
pub fn compute_degrees(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    config: &IterationConfig,
) -> Result<Convergence, SemanticsError> {
    assert!(config.tolerance.is_positive(), "tolerance must be positive");
    assert!(config.max_iterations >= 1, "max_iterations must be at least 1");
    let grid = rounding_grid();
    let mut current = framework.weights().to_vec();
    let mut change = Rational::zero();
    for iteration in 1..=config.max_iterations {
        let next = par::map_range(
            config.parallelism,
            framework.len(),
            PARALLEL_THRESHOLD,
            |a| floor_to_denominator(equation_rhs(framework, semantics, &current, a), grid),
        );
        change = next
            .iter()
            .zip(&current)
            .map(|(n, c)| (n - c).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        current = next;
        if change < config.tolerance {
            return Ok(Convergence {
                degrees: DegreeAssignment::new(current),
                iterations: iteration,
                last_change: change,
            });
        }
    }
    Err(SemanticsError::NonConvergence {
        iterations: config.max_iterations,
        residual: change,
    })
}

/// Exact degrees of an acyclic framework, evaluated in topological order.
pub fn compute_degrees_exact_acyclic(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
) -> Result<DegreeAssignment, SemanticsError> {
    let order = framework
        .topological_order()
        .map_err(|a| SemanticsError::Cyclic(framework.name(a).to_string()))?;
    let mut values = vec![Rational::zero(); framework.len()];
    for a in order {
        values[a] = equation_rhs(framework, semantics, &values, a);
    }
    Ok(DegreeAssignment::new(values))
}

/// Largest `|S(a) - rhs(a)|` over all arguments.
pub fn residual(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    degrees: &DegreeAssignment,
) -> Rational {
    check_len(framework, degrees);
    (0..framework.len())
        .map(|a| (&degrees[a] - equation_rhs(framework, semantics, degrees.values(), a)).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Whether every argument's equation holds within `tolerance`; a zero
/// tolerance demands exact equality.
pub fn verify(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    degrees: &DegreeAssignment,
    tolerance: &Rational,
) -> bool {
    check_len(framework, degrees);
    (0..framework.len()).all(|a| {
        let rhs = equation_rhs(framework, semantics, degrees.values(), a);
        if tolerance.is_zero() {
            rhs == degrees[a]
        } else {
            (&degrees[a] - rhs).abs() <= *tolerance
        }
    })
}

/// `verify` with zero tolerance.
pub fn verify_exact(
    framework: &WeightedFramework,
    semantics: SemanticsTag,
    degrees: &DegreeAssignment,
) -> bool {
    verify(framework, semantics, degrees, &Rational::zero())
}

/// `10^-digits`, for tolerances quoted as decimal places.
pub fn decimal_tolerance(digits: u32) -> Rational {
    Rational::new(BigInt::one(), pow10(digits))
}

/// Half a unit in the last of `digits` decimal places.
pub fn rounding_tolerance(digits: u32) -> Rational {
    decimal_tolerance(digits) * ratio(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_waf;
    use crate::rational::{format_decimal, int};

    const EXAMPLE: &str = "arg a0 0.9\narg a1 0.7\narg a2 0.7\narg a3 0.6\natt a1 a0\natt a2 a0\natt a3 a2\n";

    fn example() -> WeightedFramework {
        parse_waf(EXAMPLE).unwrap()
    }

    fn weights(f: &WeightedFramework) -> DegreeAssignment {
        DegreeAssignment::new(f.weights().to_vec())
    }

    #[test]
    fn hc_step_from_weights() {
        let f = example();
        let next = step(&f, SemanticsTag::Hc, &weights(&f));
        assert_eq!(next[0], ratio(3, 8));
    }

    #[test]
    fn mb_without_attacks_is_immediately_fixed() {
        let f = parse_waf("arg a 0.3\narg b 1\narg c 0\n").unwrap();
        let w = weights(&f);
        assert_eq!(step(&f, SemanticsTag::Mb, &w), w);
    }

    #[test]
    fn cb_single_positive_attacker() {
        let f = parse_waf("arg a 0.7\narg b 0.6\natt b a\n").unwrap();
        let next = step(&f, SemanticsTag::Cb, &weights(&f));
        assert_eq!(next[0], ratio(7, 26));
    }

    #[test]
    fn rounded_degrees_by_iteration() {
        let f = example();
        let expected = [
            (SemanticsTag::Hc, ["0.421", "0.700", "0.438", "0.600"]),
            (SemanticsTag::Mb, ["0.529", "0.700", "0.438", "0.600"]),
            (SemanticsTag::Cb, ["0.258", "0.700", "0.269", "0.600"]),
        ];
        for (sem, column) in expected {
            let out = compute_degrees(&f, sem, &IterationConfig::default()).unwrap();
            let rendered: Vec<_> = out.degrees.values().iter().map(|d| format_decimal(d, 3)).collect();
            assert_eq!(rendered, column, "{sem}");
        }
    }

    #[test]
    fn exact_acyclic_degrees_of_example() {
        let f = example();
        let hc = compute_degrees_exact_acyclic(&f, SemanticsTag::Hc).unwrap();
        assert_eq!(hc.values(), &[ratio(8, 19), ratio(7, 10), ratio(7, 16), ratio(3, 5)]);
        let mb = compute_degrees_exact_acyclic(&f, SemanticsTag::Mb).unwrap();
        assert_eq!(mb[0], ratio(9, 17));
        let cb = compute_degrees_exact_acyclic(&f, SemanticsTag::Cb).unwrap();
        assert_eq!(cb[0], ratio(39, 151));
        assert_eq!(cb[2], ratio(7, 26));
        for sem in SemanticsTag::ALL {
            let exact = compute_degrees_exact_acyclic(&f, sem).unwrap();
            assert!(verify_exact(&f, sem, &exact));
            assert!(residual(&f, sem, &exact).is_zero());
        }
    }

    #[test]
    fn unit_chain() {
        let f = parse_waf("arg a 1\narg b 1\natt b a\n").unwrap();
        let hc = compute_degrees_exact_acyclic(&f, SemanticsTag::Hc).unwrap();
        assert_eq!(hc[0], ratio(1, 2));
        assert_eq!(hc[1], int(1));
    }

    #[test]
    fn cyclic_frameworks_need_iteration() {
        let f = parse_waf("arg a 1\narg b 1\natt a b\natt b a\n").unwrap();
        assert!(matches!(
            compute_degrees_exact_acyclic(&f, SemanticsTag::Hc),
            Err(SemanticsError::Cyclic(_))
        ));
        let out = compute_degrees(&f, SemanticsTag::Hc, &IterationConfig::default()).unwrap();
        // Fixed point of x = 1/(1+x) is the golden ratio conjugate.
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((crate::rational::to_f64(&out.degrees[0]) - golden).abs() < 1e-11);
        assert!(residual(&f, SemanticsTag::Hc, &out.degrees) < decimal_tolerance(10));
    }

    #[test]
    fn rounded_degrees_verify_loosely() {
        let f = example();
        let table = DegreeAssignment::new(vec![ratio(421, 1000), ratio(7, 10), ratio(438, 1000), ratio(6, 10)]);
        assert!(verify(&f, SemanticsTag::Hc, &table, &decimal_tolerance(3)));
        assert!(residual(&f, SemanticsTag::Hc, &table) <= decimal_tolerance(3));
        assert!(!verify_exact(&f, SemanticsTag::Hc, &table));
        let mut perturbed = table.clone().into_values();
        perturbed[0] += ratio(1, 10);
        let perturbed = DegreeAssignment::new(perturbed);
        assert!(!verify(&f, SemanticsTag::Hc, &perturbed, &decimal_tolerance(3)));
    }

    #[test]
    fn non_convergence_is_reported() {
        let f = parse_waf("arg a 1\narg b 1\natt a b\natt b a\n").unwrap();
        let cfg = IterationConfig {
            max_iterations: 3,
            ..IterationConfig::default()
        };
        match compute_degrees(&f, SemanticsTag::Hc, &cfg) {
            Err(SemanticsError::NonConvergence { iterations: 3, residual }) => {
                assert!(residual.is_positive())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_weight_stays_zero() {
        let f = parse_waf("arg a 0\narg b 1/2\natt b a\natt a b\n").unwrap();
        let w = weights(&f);
        for sem in SemanticsTag::ALL {
            assert!(step(&f, sem, &w)[0].is_zero());
            let out = compute_degrees(&f, sem, &IterationConfig::default()).unwrap();
            assert!(out.degrees[0].is_zero());
            assert_eq!(out.degrees[1], ratio(1, 2));
        }
    }
}

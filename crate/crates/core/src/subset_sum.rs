//! Exact subset-sum and cardinality-constrained subset-sum over positive
//! rationals.
//!
//! Items and target are lifted onto their common denominator once, so the
//! search runs on big integers and stays exact. The default backend is a
//! depth-first branch and bound over items sorted by decreasing value; a
//! pseudo-polynomial dynamic programme is available for instances whose
//! scaled target is small.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::SubsetSumError;
use crate::rational::{common_denominator, scale_to_integer, Rational};

/// Indexed multiset of positive rationals with a target and an optional
/// cardinality. Item identity is its index, so equal values stay distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    items: Vec<Rational>,
    target: Rational,
    cardinality: Option<usize>,
}

impl SubsetSumInstance {
    pub fn new(items: Vec<Rational>, target: Rational) -> Result<Self, SubsetSumError> {
        if let Some(index) = items.iter().position(|v| !v.is_positive()) {
            return Err(SubsetSumError::NonPositiveItem { index });
        }
        Ok(SubsetSumInstance {
            items,
            target,
            cardinality: None,
        })
    }

    pub fn with_cardinality(mut self, k: usize) -> Self {
        self.cardinality = Some(k);
        self
    }

    pub fn items(&self) -> &[Rational] {
        &self.items
    }

    pub fn target(&self) -> &Rational {
        &self.target
    }

    pub fn cardinality(&self) -> Option<usize> {
        self.cardinality
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Chosen item indices, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetSolution {
    chosen: Vec<usize>,
}

impl SubsetSolution {
    pub fn new(mut chosen: Vec<usize>) -> Self {
        chosen.sort_unstable();
        chosen.dedup();
        SubsetSolution { chosen }
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    pub fn sum(&self, instance: &SubsetSumInstance) -> Rational {
        self.chosen
            .iter()
            .fold(Rational::zero(), |acc, &i| acc + &instance.items[i])
    }

    /// Exact sum and cardinality check against `instance`.
    pub fn solves(&self, instance: &SubsetSumInstance) -> bool {
        self.chosen.iter().all(|&i| i < instance.len())
            && instance.cardinality.is_none_or(|k| k == self.len())
            && self.sum(instance) == instance.target
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Search,
    /// Dynamic programme over the scaled integer target; refuses targets
    /// above `max_target`.
    ScaledDp { max_target: u64 },
}

/// Common-denominator lift of an instance.
struct Scaled {
    values: Vec<BigInt>,
    target: BigInt,
}

impl Scaled {
    fn new(instance: &SubsetSumInstance) -> Self {
        let denom = common_denominator(instance.items.iter().chain([&instance.target]));
        Scaled {
            values: instance
                .items
                .iter()
                .map(|v| scale_to_integer(v, &denom))
                .collect(),
            target: scale_to_integer(&instance.target, &denom),
        }
    }
}

/// Answers that need no search; `None` means search is required.
fn trivial(instance: &SubsetSumInstance) -> Option<Option<SubsetSolution>> {
    if instance.target.is_negative() {
        return Some(None);
    }
    match instance.cardinality {
        Some(k) if k > instance.len() => Some(None),
        Some(0) => Some(instance.target.is_zero().then(|| SubsetSolution::new(vec![]))),
        // positive items: a non-empty subset never sums to zero
        Some(_) if instance.target.is_zero() => Some(None),
        None if instance.target.is_zero() => Some(Some(SubsetSolution::new(vec![]))),
        _ => None,
    }
}

/// Solves with the default search backend, honouring the instance's cardinality.
pub fn solve(instance: &SubsetSumInstance) -> Option<SubsetSolution> {
    if let Some(answer) = trivial(instance) {
        return answer;
    }
    BranchAndBound::new(instance).run()
}

pub fn solve_with(
    instance: &SubsetSumInstance,
    backend: Backend,
) -> Result<Option<SubsetSolution>, SubsetSumError> {
    match backend {
        Backend::Search => Ok(solve(instance)),
        Backend::ScaledDp { max_target } => {
            if let Some(answer) = trivial(instance) {
                return Ok(answer);
            }
            scaled_dp(instance, max_target)
        }
    }
}

/// Plain subset-sum: ignores any cardinality on `instance`.
pub fn solve_ssp(instance: &SubsetSumInstance) -> Option<SubsetSolution> {
    let unconstrained = SubsetSumInstance {
        cardinality: None,
        ..instance.clone()
    };
    solve(&unconstrained)
}

/// Subset-sum with exactly `k` items.
pub fn solve_kssp(instance: &SubsetSumInstance, k: usize) -> Option<SubsetSolution> {
    solve(&instance.clone().with_cardinality(k))
}

struct BranchAndBound {
    /// Item indices by decreasing value, ties by ascending index.
    order: Vec<usize>,
    /// Values in `order`.
    values: Vec<BigInt>,
    /// `prefix[i]` = sum of `values[..i]`.
    prefix: Vec<BigInt>,
    target: BigInt,
    cardinality: Option<usize>,
    stack: Vec<usize>,
}

impl BranchAndBound {
    fn new(instance: &SubsetSumInstance) -> Self {
        let scaled = Scaled::new(instance);
        let mut order: Vec<usize> = (0..instance.len()).collect();
        order.sort_by(|&a, &b| scaled.values[b].cmp(&scaled.values[a]).then(a.cmp(&b)));
        let values: Vec<BigInt> = order.iter().map(|&i| scaled.values[i].clone()).collect();
        let mut prefix = Vec::with_capacity(values.len() + 1);
        prefix.push(BigInt::zero());
        for v in &values {
            let next = prefix.last().unwrap() + v;
            prefix.push(next);
        }
        BranchAndBound {
            order,
            values,
            prefix,
            target: scaled.target,
            cardinality: instance.cardinality,
            stack: Vec::new(),
        }
    }

    fn run(mut self) -> Option<SubsetSolution> {
        let target = self.target.clone();
        if self.search(0, &target, self.cardinality) {
            let chosen = self.stack.iter().map(|&i| self.order[i]).collect();
            Some(SubsetSolution::new(chosen))
        } else {
            None
        }
    }

    fn search(&mut self, start: usize, remaining: &BigInt, slots: Option<usize>) -> bool {
        let n = self.values.len();
        if remaining.is_zero() {
            return slots.is_none_or(|s| s == 0);
        }
        if start == n {
            return false;
        }
        match slots {
            None => {
                if &(&self.prefix[n] - &self.prefix[start]) < remaining {
                    return false;
                }
            }
            Some(0) => return false,
            Some(s) => {
                if n - start < s {
                    return false;
                }
                // Largest achievable: the next s items; smallest: the last s.
                if &(&self.prefix[start + s] - &self.prefix[start]) < remaining
                    || &(&self.prefix[n] - &self.prefix[n - s]) > remaining
                {
                    return false;
                }
            }
        }
        let mut i = start;
        while i < n {
            if &self.values[i] <= remaining {
                let rest = remaining - &self.values[i];
                self.stack.push(i);
                if self.search(i + 1, &rest, slots.map(|s| s - 1)) {
                    return true;
                }
                self.stack.pop();
            }
            // Excluding item i: equal values after it are interchangeable, skip them.
            let skipped = &self.values[i];
            let mut j = i + 1;
            while j < n && &self.values[j] == skipped {
                j += 1;
            }
            if j == n {
                return false;
            }
            if let Some(s) = slots {
                if n - j < s
                    || &(&self.prefix[j + s] - &self.prefix[j]) < remaining
                {
                    return false;
                }
            } else if &(&self.prefix[n] - &self.prefix[j]) < remaining {
                return false;
            }
            i = j;
        }
        false
    }
}

fn scaled_dp(
    instance: &SubsetSumInstance,
    max_target: u64,
) -> Result<Option<SubsetSolution>, SubsetSumError> {
    let scaled = Scaled::new(instance);
    let too_large = || SubsetSumError::TargetTooLarge {
        target: scaled.target.to_string(),
        limit: max_target,
    };
    let target = scaled
        .target
        .to_u64()
        .filter(|&t| t <= max_target)
        .ok_or_else(too_large)? as usize;
    // Items larger than the target can never be chosen.
    let items: Vec<(usize, usize)> = scaled
        .values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.to_usize().filter(|&v| v <= target).map(|v| (i, v)))
        .collect();
    let chosen = match instance.cardinality {
        None => {
            // from[t] = item that first reached sum t.
            let mut from: Vec<Option<usize>> = vec![None; target + 1];
            let mut reached = vec![false; target + 1];
            reached[0] = true;
            for (slot, &(_, v)) in items.iter().enumerate() {
                for t in (v..=target).rev() {
                    if !reached[t] && reached[t - v] {
                        reached[t] = true;
                        from[t] = Some(slot);
                    }
                }
            }
            if !reached[target] {
                return Ok(None);
            }
            let mut chosen = Vec::new();
            let mut t = target;
            while t > 0 {
                let slot = from[t].expect("reached sums have a predecessor");
                chosen.push(items[slot].0);
                t -= items[slot].1;
            }
            chosen
        }
        Some(k) => {
            let width = target + 1;
            let mut from: Vec<Option<usize>> = vec![None; (k + 1) * width];
            let mut reached = vec![false; (k + 1) * width];
            reached[0] = true;
            for (slot, &(_, v)) in items.iter().enumerate() {
                for c in (1..=k).rev() {
                    for t in (v..=target).rev() {
                        let here = c * width + t;
                        let prev = (c - 1) * width + t - v;
                        if !reached[here] && reached[prev] {
                            reached[here] = true;
                            from[here] = Some(slot);
                        }
                    }
                }
            }
            if !reached[k * width + target] {
                return Ok(None);
            }
            let mut chosen = Vec::new();
            let (mut c, mut t) = (k, target);
            while c > 0 {
                let slot = from[c * width + t].expect("reached states have a predecessor");
                chosen.push(items[slot].0);
                t -= items[slot].1;
                c -= 1;
            }
            chosen
        }
    };
    Ok(Some(SubsetSolution::new(chosen)))
}

/// Up to `limit` distinct solutions in lexicographic order of their sorted
/// index tuples. Honours the instance's cardinality.
pub fn enumerate_ssp(instance: &SubsetSumInstance, limit: usize) -> Vec<SubsetSolution> {
    let mut out = Vec::new();
    if limit == 0 || instance.target.is_negative() {
        return out;
    }
    let scaled = Scaled::new(instance);
    let n = instance.len();
    let mut suffix = vec![BigInt::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] + &scaled.values[i];
    }
    let mut walker = Enumerator {
        values: &scaled.values,
        suffix: &suffix,
        cardinality: instance.cardinality,
        limit,
        stack: Vec::new(),
        out: &mut out,
    };
    walker.walk(0, &scaled.target);
    out
}

struct Enumerator<'a> {
    values: &'a [BigInt],
    suffix: &'a [BigInt],
    cardinality: Option<usize>,
    limit: usize,
    stack: Vec<usize>,
    out: &'a mut Vec<SubsetSolution>,
}

impl Enumerator<'_> {
    /// Returns false once the limit is hit.
    fn walk(&mut self, start: usize, remaining: &BigInt) -> bool {
        if remaining.is_zero() {
            if self.cardinality.is_none_or(|k| k == self.stack.len()) {
                self.out.push(SubsetSolution::new(self.stack.clone()));
                return self.out.len() < self.limit;
            }
            return true;
        }
        let n = self.values.len();
        if start == n || &self.suffix[start] < remaining {
            return true;
        }
        if let Some(k) = self.cardinality {
            if self.stack.len() >= k || n - start < k - self.stack.len() {
                return true;
            }
        }
        if &self.values[start] <= remaining {
            self.stack.push(start);
            let rest = remaining - &self.values[start];
            let go_on = self.walk(start + 1, &rest);
            self.stack.pop();
            if !go_on {
                return false;
            }
        }
        self.walk(start + 1, remaining)
    }
}

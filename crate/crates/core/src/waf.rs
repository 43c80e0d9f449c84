//! Weighted argumentation frameworks, degree assignments and inference
//! instances.
//!
//! Arguments are stored in declaration order and referred to internally by
//! their position. Attack sets are sets of `(attacker, attacked)` position
//! pairs, so iteration order is lexicographic in declaration order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::WafError;
use crate::rational::{in_unit_interval, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArgumentId(String);

impl ArgumentId {
    /// Names are non-empty and contain neither whitespace nor `#`.
    pub fn new(name: impl Into<String>) -> Result<Self, WafError> {
        let name = name.into();
        if name.is_empty() || name.contains('#') || name.chars().any(char::is_whitespace) {
            return Err(WafError::BadName(name));
        }
        Ok(ArgumentId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for ArgumentId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemanticsTag {
    /// Weighted h-categoriser.
    Hc,
    /// Weighted max-based.
    Mb,
    /// Weighted card-based.
    Cb,
}

impl SemanticsTag {
    pub const ALL: [SemanticsTag; 3] = [SemanticsTag::Hc, SemanticsTag::Mb, SemanticsTag::Cb];
}

impl fmt::Display for SemanticsTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsTag::Hc => "HC",
            SemanticsTag::Mb => "MB",
            SemanticsTag::Cb => "CB",
        })
    }
}

impl FromStr for SemanticsTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hc" => Ok(SemanticsTag::Hc),
            "mb" => Ok(SemanticsTag::Mb),
            "cb" => Ok(SemanticsTag::Cb),
            other => Err(format!("unknown semantics `{other}` (expected hc, mb or cb)")),
        }
    }
}

/// Ordered, duplicate-free argument names with a reverse index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgumentSet {
    names: Vec<ArgumentId>,
    index: HashMap<ArgumentId, usize>,
}

impl ArgumentSet {
    pub fn new(names: Vec<ArgumentId>) -> Result<Self, WafError> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                let report = ValidationReport {
                    violations: vec![Violation::DuplicateArgument(name.clone())],
                };
                return Err(WafError::Invalid(report));
            }
        }
        Ok(ArgumentSet { names, index })
    }

    /// `prefix0 .. prefix{n-1}`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        let names = (0..n)
            .map(|i| ArgumentId(format!("{prefix}{i}")))
            .collect();
        ArgumentSet::new(names).expect("numbered names are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[ArgumentId] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &ArgumentId {
        &self.names[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, WafError> {
        self.position(name)
            .ok_or_else(|| WafError::UnknownArgument(name.to_string()))
    }
}

/// A set of attacks `(attacker, attacked)` by argument position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttackSet(BTreeSet<(usize, usize)>);

impl AttackSet {
    pub fn new() -> Self {
        AttackSet::default()
    }

    pub fn insert(&mut self, attacker: usize, attacked: usize) -> bool {
        self.0.insert((attacker, attacked))
    }

    pub fn remove(&mut self, attack: &(usize, usize)) -> bool {
        self.0.remove(attack)
    }

    pub fn contains(&self, attacker: usize, attacked: usize) -> bool {
        self.0.contains(&(attacker, attacked))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    /// Attacks whose target is `attacked`.
    pub fn onto(&self, attacked: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.iter().filter(move |&(_, t)| t == attacked)
    }

    pub fn union(&self, other: &AttackSet) -> AttackSet {
        AttackSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &AttackSet) -> AttackSet {
        AttackSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &AttackSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn max_endpoint(&self) -> Option<usize> {
        self.iter().map(|(s, t)| s.max(t)).max()
    }

    pub fn named<'a>(&'a self, args: &'a ArgumentSet) -> Vec<(&'a ArgumentId, &'a ArgumentId)> {
        self.iter().map(|(s, t)| (args.name(s), args.name(t))).collect()
    }

    /// Resolves `(src, dst)` name pairs against `args`.
    pub fn from_names<S: AsRef<str>>(
        args: &ArgumentSet,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, WafError> {
        let mut set = AttackSet::new();
        for (s, t) in pairs {
            set.insert(args.require(s.as_ref())?, args.require(t.as_ref())?);
        }
        Ok(set)
    }
}

impl FromIterator<(usize, usize)> for AttackSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        AttackSet(iter.into_iter().collect())
    }
}

impl Extend<(usize, usize)> for AttackSet {
    fn extend<I: IntoIterator<Item = (usize, usize)>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WeightOutOfRange { argument: ArgumentId, weight: Rational },
    DanglingEndpoint { source: String, target: String, missing: String },
    DuplicateArgument(ArgumentId),
    DuplicateAttack { source: String, target: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WeightOutOfRange { argument, weight } => {
                write!(f, "weight of `{argument}` out of [0,1]: {weight}")
            }
            Violation::DanglingEndpoint { source, target, missing } => {
                write!(f, "attack ({source}, {target}) has dangling endpoint `{missing}`")
            }
            Violation::DuplicateArgument(name) => write!(f, "duplicate argument `{name}`"),
            Violation::DuplicateAttack { source, target } => {
                write!(f, "duplicate attack ({source}, {target})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Unchecked framework as read from a file, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameworkDraft {
    pub args: Vec<(ArgumentId, Rational)>,
    pub attacks: Vec<(String, String)>,
}

impl FrameworkDraft {
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen = BTreeSet::new();
        for (name, weight) in &self.args {
            if !seen.insert(name.as_str()) {
                violations.push(Violation::DuplicateArgument(name.clone()));
            }
            if !in_unit_interval(weight) {
                violations.push(Violation::WeightOutOfRange {
                    argument: name.clone(),
                    weight: weight.clone(),
                });
            }
        }
        let mut attacks = BTreeSet::new();
        for (s, t) in &self.attacks {
            for end in [s, t] {
                if !seen.contains(end.as_str()) {
                    violations.push(Violation::DanglingEndpoint {
                        source: s.clone(),
                        target: t.clone(),
                        missing: end.clone(),
                    });
                }
            }
            if !attacks.insert((s.as_str(), t.as_str())) {
                violations.push(Violation::DuplicateAttack {
                    source: s.clone(),
                    target: t.clone(),
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn build(self) -> Result<WeightedFramework, WafError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(WafError::Invalid(report));
        }
        let (names, weights): (Vec<_>, Vec<_>) = self.args.into_iter().unzip();
        let args = Arc::new(ArgumentSet::new(names)?);
        let attacks = AttackSet::from_names(&args, self.attacks)?;
        WeightedFramework::new(args, weights, attacks)
    }
}

/// The triple of arguments, attack relation and initial weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFramework {
    args: Arc<ArgumentSet>,
    weights: Vec<Rational>,
    attacks: AttackSet,
    attackers: Vec<Vec<usize>>,
}

impl WeightedFramework {
    pub fn new(
        args: Arc<ArgumentSet>,
        weights: Vec<Rational>,
        attacks: AttackSet,
    ) -> Result<Self, WafError> {
        if weights.len() != args.len() {
            return Err(WafError::MissingValue(
                args.names()
                    .get(weights.len())
                    .map(|n| n.to_string())
                    .unwrap_or_default(),
            ));
        }
        let mut violations = Vec::new();
        for (i, w) in weights.iter().enumerate() {
            if !in_unit_interval(w) {
                violations.push(Violation::WeightOutOfRange {
                    argument: args.name(i).clone(),
                    weight: w.clone(),
                });
            }
        }
        if let Some(m) = attacks.max_endpoint().filter(|&m| m >= args.len()) {
            violations.push(Violation::DanglingEndpoint {
                source: String::new(),
                target: String::new(),
                missing: format!("#{m}"),
            });
        }
        if !violations.is_empty() {
            return Err(WafError::Invalid(ValidationReport { violations }));
        }
        Ok(Self::assemble(args, weights, attacks))
    }

    fn assemble(args: Arc<ArgumentSet>, weights: Vec<Rational>, attacks: AttackSet) -> Self {
        let mut attackers = vec![Vec::new(); args.len()];
        for (s, t) in attacks.iter() {
            attackers[t].push(s);
        }
        WeightedFramework {
            args,
            weights,
            attacks,
            attackers,
        }
    }

    /// Same arguments and weights, different attack relation.
    ///
    /// Panics if an attack refers to a position outside the argument set.
    pub fn with_attacks(&self, attacks: AttackSet) -> Self {
        assert!(
            attacks.max_endpoint().is_none_or(|m| m < self.len()),
            "attack endpoint out of range"
        );
        Self::assemble(self.args.clone(), self.weights.clone(), attacks)
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn args(&self) -> &Arc<ArgumentSet> {
        &self.args
    }

    pub fn name(&self, i: usize) -> &ArgumentId {
        self.args.name(i)
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn attacks(&self) -> &AttackSet {
        &self.attacks
    }

    /// Positions of the attackers of argument `i`, ascending.
    pub fn attackers_of(&self, i: usize) -> &[usize] {
        &self.attackers[i]
    }

    /// Attackers of `i` with strictly positive initial weight.
    pub fn positive_attackers_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.attackers[i]
            .iter()
            .copied()
            .filter(|&b| self.weights[b].is_positive())
    }

    pub fn attackers(&self, name: &str) -> Result<Vec<&ArgumentId>, WafError> {
        let i = self.args.require(name)?;
        Ok(self.attackers[i].iter().map(|&b| self.args.name(b)).collect())
    }

    pub fn positive_attackers(&self, name: &str) -> Result<Vec<&ArgumentId>, WafError> {
        let i = self.args.require(name)?;
        Ok(self
            .positive_attackers_of(i)
            .map(|b| self.args.name(b))
            .collect())
    }

    pub fn is_unattacked(&self, i: usize) -> bool {
        self.attackers[i].is_empty()
    }

    /// Topological order of the attack graph (attackers first), or the
    /// position of an argument on a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>, usize> {
        let n = self.len();
        let mut indegree: Vec<usize> = self.attackers.iter().map(Vec::len).collect();
        let mut targets = vec![Vec::new(); n];
        for (s, t) in self.attacks.iter() {
            targets[s].push(t);
        }
        let mut ready: Vec<usize> = (0..n).rev().filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop() {
            order.push(i);
            for &t in &targets[i] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(t);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err((0..n).find(|&i| indegree[i] > 0).unwrap_or(0))
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }
}

/// Final acceptability degree per argument, in the owning argument set's order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeAssignment(Vec<Rational>);

impl DegreeAssignment {
    pub fn new(values: Vec<Rational>) -> Self {
        DegreeAssignment(values)
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_range(&self, args: &ArgumentSet) -> Result<(), WafError> {
        for (i, v) in self.0.iter().enumerate() {
            if !in_unit_interval(v) {
                return Err(WafError::OutOfRange {
                    name: args.name(i).to_string(),
                    value: v.clone(),
                });
            }
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for DegreeAssignment {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

/// Arguments, initial weights, desired degrees and the semantics to realise
/// them under: the input of the attack inference problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceInstance {
    args: Arc<ArgumentSet>,
    weights: Vec<Rational>,
    targets: DegreeAssignment,
    semantics: SemanticsTag,
}

impl InferenceInstance {
    pub fn new(
        args: Arc<ArgumentSet>,
        weights: Vec<Rational>,
        targets: DegreeAssignment,
        semantics: SemanticsTag,
    ) -> Result<Self, WafError> {
        for (values, what) in [(weights.as_slice(), "weight"), (targets.values(), "degree")] {
            if values.len() != args.len() {
                let missing = args.names().get(values.len()).map(|n| n.to_string());
                return Err(WafError::MissingValue(format!(
                    "{} ({what})",
                    missing.unwrap_or_default()
                )));
            }
        }
        WeightedFramework::new(args.clone(), weights.clone(), AttackSet::new())?;
        targets.check_range(&args)?;
        Ok(InferenceInstance {
            args,
            weights,
            targets,
            semantics,
        })
    }

    /// Poses the inverse problem for a framework's own degrees, dropping its attacks.
    pub fn from_framework(
        framework: &WeightedFramework,
        targets: DegreeAssignment,
        semantics: SemanticsTag,
    ) -> Result<Self, WafError> {
        Self::new(
            framework.args().clone(),
            framework.weights().to_vec(),
            targets,
            semantics,
        )
    }

    pub fn with_semantics(&self, semantics: SemanticsTag) -> Self {
        InferenceInstance {
            semantics,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn args(&self) -> &Arc<ArgumentSet> {
        &self.args
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn target(&self, i: usize) -> &Rational {
        self.targets.get(i)
    }

    pub fn targets(&self) -> &DegreeAssignment {
        &self.targets
    }

    pub fn semantics(&self) -> SemanticsTag {
        self.semantics
    }

    pub fn framework(&self, attacks: AttackSet) -> WeightedFramework {
        assert!(
            attacks.max_endpoint().is_none_or(|m| m < self.len()),
            "attack endpoint out of range"
        );
        WeightedFramework::assemble(self.args.clone(), self.weights.clone(), attacks)
    }

    /// Zero initial weight exactly when zero target degree.
    pub fn zero_consistent(&self, i: usize) -> bool {
        self.weights[i].is_zero() == self.targets[i].is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn id(s: &str) -> ArgumentId {
        ArgumentId::new(s).unwrap()
    }

    fn example() -> WeightedFramework {
        FrameworkDraft {
            args: vec![
                (id("a0"), ratio(9, 10)),
                (id("a1"), ratio(7, 10)),
                (id("a2"), ratio(7, 10)),
                (id("a3"), ratio(6, 10)),
            ],
            attacks: vec![
                ("a1".into(), "a0".into()),
                ("a2".into(), "a0".into()),
                ("a3".into(), "a2".into()),
            ],
        }
        .build()
        .unwrap()
    }

    #[test]
    fn names_are_tokens() {
        assert!(ArgumentId::new("a0").is_ok());
        assert!(ArgumentId::new("").is_err());
        assert!(ArgumentId::new("a b").is_err());
        assert!(ArgumentId::new("a#b").is_err());
    }

    #[test]
    fn example_validates() {
        let f = example();
        assert_eq!(f.len(), 4);
        assert_eq!(f.attacks().len(), 3);
    }

    #[test]
    fn attackers_of_example() {
        let f = example();
        let names = |v: Vec<&ArgumentId>| v.into_iter().map(|a| a.to_string()).collect::<Vec<_>>();
        assert_eq!(names(f.attackers("a0").unwrap()), ["a1", "a2"]);
        assert!(f.attackers("a1").unwrap().is_empty());
        assert_eq!(names(f.positive_attackers("a0").unwrap()), ["a1", "a2"]);
        assert!(matches!(f.attackers("zz"), Err(WafError::UnknownArgument(_))));
    }

    #[test]
    fn self_attack_is_its_own_attacker() {
        let f = FrameworkDraft {
            args: vec![(id("s"), ratio(1, 2))],
            attacks: vec![("s".into(), "s".into())],
        }
        .build()
        .unwrap();
        assert_eq!(f.attackers("s").unwrap(), vec![&id("s")]);
        assert!(!f.is_acyclic());
    }

    #[test]
    fn zero_weight_attacker_is_not_positive() {
        let f = FrameworkDraft {
            args: vec![(id("a"), ratio(1, 2)), (id("b"), ratio(0, 1))],
            attacks: vec![("b".into(), "a".into())],
        }
        .build()
        .unwrap();
        assert_eq!(f.attackers("a").unwrap().len(), 1);
        assert!(f.positive_attackers("a").unwrap().is_empty());
        assert!(f.positive_attackers("b").unwrap().is_empty());
    }

    #[test]
    fn weight_out_of_range_is_reported() {
        let draft = FrameworkDraft {
            args: vec![(id("a"), ratio(3, 2))],
            attacks: vec![],
        };
        let report = draft.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::WeightOutOfRange { .. }));
        assert!(draft.build().is_err());
    }

    #[test]
    fn dangling_endpoint_is_reported() {
        let draft = FrameworkDraft {
            args: vec![(id("x"), ratio(1, 2))],
            attacks: vec![("x".into(), "y".into())],
        };
        let report = draft.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            &report.violations[0],
            Violation::DanglingEndpoint { missing, .. } if missing == "y"
        ));
    }

    #[test]
    fn duplicates_are_reported() {
        let draft = FrameworkDraft {
            args: vec![(id("x"), ratio(1, 2)), (id("x"), ratio(1, 3))],
            attacks: vec![("x".into(), "x".into()), ("x".into(), "x".into())],
        };
        let report = draft.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicateArgument(_))));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicateAttack { .. })));
    }

    #[test]
    fn topological_order_puts_attackers_first() {
        let f = example();
        let order = f.topological_order().unwrap();
        let pos = |i| order.iter().position(|&x| x == i).unwrap();
        assert!(pos(3) < pos(2));
        assert!(pos(2) < pos(0));
        assert!(pos(1) < pos(0));
    }
}

use thiserror::Error;

use crate::rational::Rational;
use crate::waf::{SemanticsTag, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty numeric literal")]
    Empty,
    #[error("invalid numeric literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Debug, Error)]
pub enum WafError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument name `{0}`")]
    BadName(String),
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("argument `{0}` has no value")]
    MissingValue(String),
    #[error("value for `{name}` out of [0,1]: {value}")]
    OutOfRange { name: String, value: Rational },
    #[error("invalid framework: {0}")]
    Invalid(ValidationReport),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad value for `{name}`: {source}")]
    Value {
        name: String,
        #[source]
        source: ParseRationalError,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemanticsError {
    #[error("no convergence after {iterations} iterations (last change {residual})")]
    NonConvergence {
        iterations: usize,
        residual: Rational,
    },
    #[error("attack graph has a cycle through `{0}`; use iterative computation")]
    Cyclic(String),
    #[error("degree assignment has {got} values, framework has {expected} arguments")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubsetSumError {
    #[error("item {index} is not strictly positive")]
    NonPositiveItem { index: usize },
    #[error("scaled target {target} exceeds the dynamic-programming limit {limit}")]
    TargetTooLarge { target: String, limit: u64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InferenceError {
    #[error("instance uses {got} semantics, operation needs {expected}")]
    WrongSemantics {
        expected: SemanticsTag,
        got: SemanticsTag,
    },
    #[error("target degree is zero; route it through the zero-consistency check")]
    ZeroDegree,
    #[error("the given attacks do not realise the degrees under {0}")]
    NotASolution(SemanticsTag),
    #[error("attack ({0}, {1}) is not admissible: {2}")]
    Inadmissible(String, String, String),
    #[error("attacker degrees onto `{argument}` sum to {actual}, need {expected}")]
    SumMismatch {
        argument: String,
        expected: Box<Rational>,
        actual: Box<Rational>,
    },
    #[error("`{argument}` gets {actual} positive attackers, admissible counts are {expected:?}")]
    CardinalityMismatch {
        argument: String,
        expected: Vec<usize>,
        actual: usize,
    },
    #[error("{n} arguments exceeds the brute-force limit {limit}")]
    TooManyArguments { n: usize, limit: usize },
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("reduction needs at least one item")]
    EmptyMultiset,
    #[error("item {0} is not strictly positive")]
    NonPositiveItem(usize),
    #[error("target must be non-negative")]
    NegativeTarget,
    #[error("cardinality {k} outside 1..={n}")]
    BadCardinality { k: usize, n: usize },
    #[error("precision of {0} digits rounds the scaling factor to zero")]
    PrecisionTooLow(u32),
    #[error("attack set does not realise the reduced instance")]
    NotASolution,
    #[error("`{0}` attacks itself, which the construction rules out")]
    SelfAttack(String),
    #[error("extracted subset has {got} items, expected {expected}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("extracted subset sums to {got}, expected {expected}")]
    WrongSum {
        expected: Box<Rational>,
        got: Box<Rational>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("n must be at least 1")]
    Empty,
    #[error("attack probability must lie in [0,1]")]
    BadProbability,
    #[error("weight denominator must be positive")]
    BadDenominator,
    #[error("exact targets need an acyclic framework")]
    CyclicExact,
}

//! Gradual semantics for weighted argumentation frameworks, and the inverse
//! problem of inferring an attack relation that realises given degrees.
//!
//! ```
//! use attack_inference::{compute_degrees, parse_waf, IterationConfig, SemanticsTag};
//!
//! let f = parse_waf("arg a 1\narg b 1/2\natt b a\n").unwrap();
//! let run = compute_degrees(&f, SemanticsTag::Hc, &IterationConfig::default()).unwrap();
//! assert_eq!(run.degrees[0], attack_inference::rational::ratio(2, 3));
//! ```

pub mod error;
pub mod format;
pub mod generate;
pub mod inference;
pub mod par;
pub mod rational;
pub mod reductions;
pub mod semantics;
pub mod subset_sum;
pub mod waf;

pub use error::{
    GenError, InferenceError, ParseRationalError, ReductionError, SemanticsError, SubsetSumError,
    WafError,
};
pub use format::{
    degrees_from_json, degrees_to_json, parse_degrees, parse_waf, parse_waf_draft,
    serialize_degrees, serialize_waf, to_dot, waf_from_json, waf_to_json,
};
pub use generate::{forward_instance, random_waf, GenConfig};
pub use inference::{decide, solve, solve_with, SolveOptions};
pub use par::Parallelism;
pub use rational::Rational;
pub use semantics::{
    compute_degrees, compute_degrees_exact_acyclic, residual, verify, verify_exact, Convergence,
    IterationConfig,
};
pub use waf::{
    ArgumentId, ArgumentSet, AttackSet, DegreeAssignment, FrameworkDraft, InferenceInstance,
    SemanticsTag, WeightedFramework,
};

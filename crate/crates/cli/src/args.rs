use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "attinf", version, about = "Gradual semantics and attack inference for weighted argumentation frameworks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute acceptability degrees of a framework.
    Compute(ComputeArgs),
    /// Decide whether some attack relation realises the target degrees.
    Decide(DecideArgs),
    /// Construct attack relations realising the target degrees.
    Infer(InferArgs),
    /// Check target degrees against a framework.
    Verify(VerifyArgs),
    /// Encode a subset-sum instance as an inference instance.
    Reduce(ReduceArgs),
    /// Generate a random framework or a solvable inference instance.
    Gen(GenArgs),
    /// Degree-preserving edits of a known solution.
    Transform(TransformArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sem {
    Hc,
    Mb,
    Cb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Waf,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Search,
    Dp,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub waf: PathBuf,
    #[arg(long, short, value_enum)]
    pub semantics: Sem,
    /// Stop once no degree moves by more than this (decimal, `p/q` or `1e-12`).
    #[arg(long, default_value = "1e-12")]
    pub tolerance: String,
    #[arg(long, default_value_t = 20_000)]
    pub max_iter: usize,
    /// Exact evaluation in topological order (acyclic frameworks only).
    #[arg(long)]
    pub exact_acyclic: bool,
    #[arg(long)]
    pub json: bool,
    /// Decimal places in the trailing comments of text output.
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    /// Framework file supplying arguments and weights; its attacks are ignored.
    pub args: PathBuf,
    pub targets: PathBuf,
    #[arg(long, short, value_enum)]
    pub semantics: Sem,
    /// Enumerate every relation instead (at most 4 arguments).
    #[arg(long)]
    pub bruteforce: bool,
}

#[derive(Args, Debug)]
pub struct InferArgs {
    pub args: PathBuf,
    pub targets: PathBuf,
    #[arg(long, short, value_enum)]
    pub semantics: Sem,
    /// List up to N distinct solutions.
    #[arg(long, value_name = "N")]
    pub enumerate: Option<usize>,
    #[arg(long, value_enum, default_value = "waf")]
    pub out: OutFormat,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, value_enum, default_value = "search")]
    pub backend: BackendArg,
    /// Largest scaled target the dp backend accepts.
    #[arg(long, default_value_t = 1 << 24)]
    pub dp_limit: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub waf: PathBuf,
    pub targets: PathBuf,
    #[arg(long, short, value_enum)]
    pub semantics: Sem,
    /// Allowed per-argument deviation; 0 demands exact equality.
    #[arg(long, default_value = "0")]
    pub tol: String,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// JSON input: {"items": ["23", ...], "target": "100", "k": null}.
    pub input: PathBuf,
    /// Write PREFIX.waf, PREFIX.deg and PREFIX.map.json; stdout otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Decimal digits of the scaling factor for the cardinality variant.
    #[arg(long, default_value_t = 6)]
    pub precision: u32,
    /// Map the attacks of this framework back to a subset of the items.
    #[arg(long, value_name = "WAF")]
    pub extract: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, short)]
    pub n: usize,
    /// Attack probability (decimal or `p/q`).
    #[arg(long, short, default_value = "0.3")]
    pub p: String,
    /// Allow cycles (and self-attacks).
    #[arg(long)]
    pub cyclic: bool,
    #[arg(long, default_value_t = 1000)]
    pub denominator: u64,
    #[arg(long)]
    pub seed: u64,
    /// Also emit exact target degrees under this semantics, plus the witness.
    #[arg(long, short, value_enum)]
    pub semantics: Option<Sem>,
    /// Output prefix; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[command(subcommand)]
    pub op: TransformOp,
}

#[derive(Args, Debug)]
pub struct Edited {
    pub waf: PathBuf,
    pub degrees: PathBuf,
    #[arg(long, value_enum, default_value = "waf")]
    pub out: OutFormat,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum TransformOp {
    /// Add attacks to a max-based solution.
    Expand {
        #[command(flatten)]
        edited: Edited,
        /// Attack to add, as SOURCE TARGET; repeatable.
        #[arg(long = "attack", num_args = 2, value_names = ["SOURCE", "TARGET"])]
        attacks: Vec<String>,
    },
    /// Remove attacks from a max-based solution, keeping a pivot attack.
    Contract {
        #[command(flatten)]
        edited: Edited,
        #[arg(long, num_args = 2, value_names = ["SOURCE", "TARGET"], required = true)]
        pivot: Vec<String>,
        #[arg(long = "attack", num_args = 2, value_names = ["SOURCE", "TARGET"], conflicts_with = "maximal")]
        attacks: Vec<String>,
        /// Remove every attack the pivot allows.
        #[arg(long)]
        maximal: bool,
    },
    /// Replace all attacks onto one argument (hc or cb).
    Substitute {
        #[command(flatten)]
        edited: Edited,
        #[arg(long, short, value_enum)]
        semantics: Sem,
        #[arg(long)]
        argument: String,
        #[arg(long = "attack", num_args = 2, value_names = ["SOURCE", "TARGET"])]
        attacks: Vec<String>,
    },
}

use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use attack_inference::inference::{
    contract_mb, decide_bruteforce, enumerate_solutions, expand_mb, free_arguments,
    maximal_contraction, substitute_cb, substitute_hc, BRUTE_FORCE_HARD_LIMIT,
};
use attack_inference::rational::{format_decimal, parse_rational, Rational};
use attack_inference::reductions::{
    extract_kssp_solution, extract_ssp_solution, kssp_to_cb, ssp_to_hc,
};
use attack_inference::subset_sum::{Backend, SubsetSolution};
use attack_inference::{
    compute_degrees, compute_degrees_exact_acyclic, forward_instance, parse_degrees, parse_waf,
    random_waf, serialize_degrees, serialize_waf, solve_with, verify, verify_exact, waf_from_json,
    AttackSet, DegreeAssignment, GenConfig, InferenceInstance, IterationConfig, Parallelism,
    SemanticsTag, SolveOptions, WeightedFramework,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::io::*;

impl From<Sem> for SemanticsTag {
    fn from(s: Sem) -> Self {
        match s {
            Sem::Hc => SemanticsTag::Hc,
            Sem::Mb => SemanticsTag::Mb,
            Sem::Cb => SemanticsTag::Cb,
        }
    }
}

fn parallelism(flag: bool) -> Parallelism {
    if flag {
        Parallelism::Parallel
    } else {
        Parallelism::Sequential
    }
}

fn answer(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load_instance(args: &Path, targets: &Path, sem: Sem) -> Result<InferenceInstance> {
    let f = read_waf(args)?;
    let s = read_degrees(targets, f.args())?;
    Ok(InferenceInstance::from_framework(&f, s, sem.into())?)
}

/// Re-parses an emitted framework and checks it realises `degrees`.
fn recheck_framework(
    text: &str,
    format: OutFormat,
    semantics: SemanticsTag,
    degrees: &DegreeAssignment,
) -> Result<()> {
    let f = match format {
        OutFormat::Waf => parse_waf(text)?,
        OutFormat::Json => waf_from_json(text)?,
        OutFormat::Dot => return Ok(()),
    };
    ensure!(verify_exact(&f, semantics, degrees), "framework does not realise the degrees");
    Ok(())
}

pub fn compute(a: &ComputeArgs) -> Result<ExitCode> {
    let f = read_waf(&a.waf)?;
    let sem = a.semantics.into();
    let degrees = if a.exact_acyclic {
        compute_degrees_exact_acyclic(&f, sem)?
    } else {
        let cfg = IterationConfig {
            tolerance: parse_value(&a.tolerance)?,
            max_iterations: a.max_iter,
            parallelism: parallelism(a.parallel),
        };
        ensure!(cfg.tolerance > Rational::from_integer(0.into()), "tolerance must be positive");
        ensure!(cfg.max_iterations >= 1, "--max-iter must be at least 1");
        let run = compute_degrees(&f, sem, &cfg)?;
        eprintln!(
            "converged after {} iterations (last change {})",
            run.iterations,
            format_decimal(&run.last_change, 20)
        );
        run.degrees
    };
    print!("{}", render_degrees(f.args(), &degrees, a.json, Some(a.digits)));
    Ok(ExitCode::SUCCESS)
}

pub fn decide(a: &DecideArgs) -> Result<ExitCode> {
    let inst = load_instance(&a.args, &a.targets, a.semantics)?;
    let yes = if a.bruteforce {
        decide_bruteforce(&inst, BRUTE_FORCE_HARD_LIMIT, Parallelism::default())?
    } else {
        attack_inference::decide(&inst)
    };
    println!("{}", if yes { "yes" } else { "no" });
    Ok(answer(yes))
}

pub fn infer(a: &InferArgs) -> Result<ExitCode> {
    let inst = load_instance(&a.args, &a.targets, a.semantics)?;
    let sem = inst.semantics();
    let solutions = match a.enumerate {
        Some(n) => enumerate_solutions(&inst, n),
        None => {
            let opts = SolveOptions {
                parallelism: parallelism(a.parallel),
                backend: match a.backend {
                    BackendArg::Search => Backend::Search,
                    BackendArg::Dp => Backend::ScaledDp { max_target: a.dp_limit },
                },
            };
            solve_with(&inst, &opts).into_iter().collect()
        }
    };
    if solutions.is_empty() {
        println!("no attack relation realises these degrees under {sem}");
        return Ok(ExitCode::from(1));
    }
    let frameworks: Vec<WeightedFramework> = solutions.into_iter().map(|d| inst.framework(d)).collect();
    for f in &frameworks {
        ensure!(verify_exact(f, sem, inst.targets()), "internal error: solution does not verify");
    }
    let free: Vec<String> = free_arguments(&inst).iter().map(|n| n.to_string()).collect();
    let text = match (a.out, a.enumerate.is_some()) {
        (OutFormat::Json, true) => {
            let list: Vec<Value> = frameworks.iter().map(named_attacks).collect();
            format!("{:#}\n", json!({ "semantics": sem.to_string(), "solutions": list, "free": free }))
        }
        (OutFormat::Json, false) => render_framework(&frameworks[0], Some(inst.targets()), OutFormat::Json),
        (format, _) => {
            let mut out = String::new();
            if !free.is_empty() && format == OutFormat::Waf {
                out.push_str(&format!("# free (zero weight): {}\n", free.join(" ")));
            }
            for (i, f) in frameworks.iter().enumerate() {
                if frameworks.len() > 1 && format == OutFormat::Waf {
                    out.push_str(&format!("# solution {}\n", i + 1));
                }
                out.push_str(&render_framework(f, Some(inst.targets()), format));
            }
            out
        }
    };
    let single = frameworks.len() == 1;
    emit(a.output.as_deref(), &text, |back| {
        if single {
            recheck_framework(back, a.out, sem, inst.targets())
        } else {
            Ok(())
        }
    })?;
    Ok(ExitCode::SUCCESS)
}

fn named_attacks(f: &WeightedFramework) -> Value {
    f.attacks()
        .named(f.args())
        .iter()
        .map(|(s, t)| json!([s.as_str(), t.as_str()]))
        .collect()
}

pub fn verify_cmd(a: &VerifyArgs) -> Result<ExitCode> {
    let f = read_waf(&a.waf)?;
    let s = read_degrees(&a.targets, f.args())?;
    let tol = parse_value(&a.tol)?;
    ensure!(tol >= Rational::from_integer(0.into()), "tolerance must be non-negative");
    let ok = verify(&f, a.semantics.into(), &s, &tol);
    let residual = attack_inference::residual(&f, a.semantics.into(), &s);
    println!(
        "{} (largest residual {})",
        if ok { "holds" } else { "fails" },
        format_decimal(&residual, 12)
    );
    Ok(answer(ok))
}

#[derive(Deserialize)]
struct ReduceInput {
    items: Vec<Value>,
    target: Value,
    #[serde(default)]
    k: Option<usize>,
}

fn json_number(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => Ok(parse_rational(&n.to_string())?),
        other => bail!("expected a number or numeric string, got {other}"),
    }
}

pub fn reduce(a: &ReduceArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let input: ReduceInput = serde_json::from_str(&text).context("parsing reduce input")?;
    let items = input.items.iter().map(json_number).collect::<Result<Vec<_>>>()?;
    let target = json_number(&input.target)?;

    let (inst, item_map, meta) = match input.k {
        None => {
            let art = ssp_to_hc(&items, &target)?;
            let meta = json!({ "n": art.n, "m_star": exact(&art.m_star) });
            (art.instance.clone(), art.item_map.clone(), (meta, Extract::Hc(art)))
        }
        Some(k) => {
            let art = kssp_to_cb(&items, &target, k, a.precision)?;
            if !art.is_faithful() {
                eprintln!("warning: the rounded scaling factor does not pin the attacker count or exclude a self-attack on a0");
            }
            let meta = json!({
                "k": art.k,
                "u_approx": exact(&art.u_approx),
                "precision_digits": art.precision_digits,
                "m_star": exact(&art.m_star),
                "cardinality_pinned": art.cardinality_pinned,
                "self_attack_excluded": art.self_attack_excluded,
            });
            (art.instance.clone(), art.item_map.clone(), (meta, Extract::Cb(art)))
        }
    };
    let (meta, extractor) = meta;

    if let Some(path) = &a.extract {
        let f = read_waf(path)?;
        let attacks = AttackSet::from_names(
            inst.args(),
            f.attacks().named(f.args()).iter().map(|(s, t)| (s.as_str(), t.as_str())),
        )?;
        let sol = extractor.extract(&attacks)?;
        let chosen: Vec<String> = sol.chosen().iter().map(|&i| items[i].to_string()).collect();
        let sum: Rational = sol.chosen().iter().map(|&i| &items[i]).sum();
        println!("items {}", sol.chosen().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
        println!("values {}", chosen.join(" "));
        println!("sum {sum}");
        return Ok(ExitCode::SUCCESS);
    }

    let framework = inst.framework(AttackSet::new());
    let waf = serialize_waf(&framework);
    let deg = serialize_degrees(inst.args(), inst.targets(), Some(5));
    let map = json!({
        "semantics": inst.semantics().to_string(),
        "target": exact(&target),
        "items": items.iter().zip(&item_map).enumerate().map(|(i, (v, arg))| json!({
            "item": i, "value": exact(v), "argument": arg.as_str()
        })).collect::<Vec<_>>(),
        "construction": meta,
    });
    match &a.out {
        None => {
            print!("{waf}{deg}");
        }
        Some(prefix) => {
            let waf_path = with_suffix(prefix, ".waf");
            write_checked(&waf_path, &waf, |back| {
                ensure!(parse_waf(back)? == framework, "framework changed on re-read");
                Ok(())
            })?;
            write_checked(&with_suffix(prefix, ".deg"), &deg, |back| {
                ensure!(&parse_degrees(back, inst.args())? == inst.targets(), "degrees changed on re-read");
                Ok(())
            })?;
            write_checked(&with_suffix(prefix, ".map.json"), &format!("{map:#}\n"), |back| {
                serde_json::from_str::<Value>(back)?;
                Ok(())
            })?;
            eprintln!("wrote {} arguments to {}.{{waf,deg,map.json}}", inst.len(), prefix.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

enum Extract {
    Hc(attack_inference::reductions::HcReductionArtifacts),
    Cb(attack_inference::reductions::CbReductionArtifacts),
}

impl Extract {
    fn extract(&self, attacks: &AttackSet) -> Result<SubsetSolution> {
        Ok(match self {
            Extract::Hc(art) => extract_ssp_solution(art, attacks)?,
            Extract::Cb(art) => extract_kssp_solution(art, attacks)?,
        })
    }
}

fn exact(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn gen(a: &GenArgs) -> Result<ExitCode> {
    let mut cfg = GenConfig::new(a.n, a.seed)
        .with_probability(parse_value(&a.p)?)
        .with_denominator(a.denominator);
    if a.cyclic {
        cfg = cfg.cyclic();
    }
    let Some(sem) = a.semantics else {
        let f = random_waf(&cfg)?;
        let text = serialize_waf(&f);
        let path = a.out.as_ref().map(|p| with_suffix(p, ".waf"));
        emit(path.as_deref(), &text, |back| {
            ensure!(parse_waf(back)? == f, "framework changed on re-read");
            Ok(())
        })?;
        return Ok(ExitCode::SUCCESS);
    };
    let sem: SemanticsTag = sem.into();
    let (inst, witness) = forward_instance(&cfg, sem)?;
    let args_only = serialize_waf(&inst.framework(AttackSet::new()));
    let deg = serialize_degrees(inst.args(), inst.targets(), Some(6));
    let witness_framework = inst.framework(witness);
    let full = serialize_waf(&witness_framework);
    match &a.out {
        None => print!("{full}{deg}"),
        Some(prefix) => {
            write_checked(&with_suffix(prefix, ".args.waf"), &args_only, |back| {
                ensure!(parse_waf(back)?.attacks().is_empty(), "argument file has attacks");
                Ok(())
            })?;
            write_checked(&with_suffix(prefix, ".deg"), &deg, |back| {
                ensure!(&parse_degrees(back, inst.args())? == inst.targets(), "degrees changed on re-read");
                Ok(())
            })?;
            write_checked(&with_suffix(prefix, ".witness.waf"), &full, |back| {
                recheck_framework(back, OutFormat::Waf, sem, inst.targets())
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn transform(a: &TransformArgs) -> Result<ExitCode> {
    let (edited, sem, result) = match &a.op {
        TransformOp::Expand { edited, attacks } => {
            let (f, s) = load_edit(edited)?;
            let extra = attack_pairs(f.args(), attacks)?;
            (edited, SemanticsTag::Mb, expand_mb(&f, &s, &extra).map(|g| (g, s)))
        }
        TransformOp::Contract { edited, pivot, attacks, maximal } => {
            let (f, s) = load_edit(edited)?;
            let pivot = attack_pairs(f.args(), pivot)?.iter().next().expect("one pair");
            let removed = if *maximal {
                maximal_contraction(&f, &s, pivot)
            } else {
                attack_pairs(f.args(), attacks)?
            };
            (edited, SemanticsTag::Mb, contract_mb(&f, &s, pivot, &removed).map(|g| (g, s)))
        }
        TransformOp::Substitute { edited, semantics, argument, attacks } => {
            let (f, s) = load_edit(edited)?;
            let x = f.args().require(argument)?;
            let z = attack_pairs(f.args(), attacks)?;
            let out = match semantics {
                Sem::Hc => substitute_hc(&f, &s, x, &z),
                Sem::Cb => substitute_cb(&f, &s, x, &z),
                Sem::Mb => bail!("substitution applies to hc and cb; use expand/contract for mb"),
            };
            (edited, (*semantics).into(), out.map(|g| (g, s)))
        }
    };
    let (g, s) = match result {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("rejected: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let text = render_framework(&g, Some(&s), edited.out);
    emit(edited.output.as_deref(), &text, |back| recheck_framework(back, edited.out, sem, &s))?;
    Ok(ExitCode::SUCCESS)
}

fn load_edit(e: &Edited) -> Result<(WeightedFramework, DegreeAssignment)> {
    let f = read_waf(&e.waf)?;
    let s = read_degrees(&e.degrees, f.args())?;
    Ok((f, s))
}

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use attack_inference::rational::{pow10, parse_rational, Rational};
use attack_inference::{
    degrees_from_json, degrees_to_json, parse_degrees, parse_waf, serialize_degrees,
    serialize_waf, to_dot, waf_from_json, waf_to_json, ArgumentSet, AttackSet, DegreeAssignment,
    WeightedFramework,
};

use crate::args::OutFormat;

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn read_waf(path: &Path) -> Result<WeightedFramework> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = if is_json(path) { waf_from_json(&text) } else { parse_waf(&text) };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

pub fn read_degrees(path: &Path, args: &ArgumentSet) -> Result<DegreeAssignment> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = if is_json(path) {
        degrees_from_json(&text, args)
    } else {
        parse_degrees(&text, args)
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

/// Accepts `p/q`, decimals and `<mantissa>e<exponent>`.
pub fn parse_value(text: &str) -> Result<Rational> {
    let lower = text.trim().to_ascii_lowercase();
    let (mantissa, exp) = match lower.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().with_context(|| format!("bad exponent in `{text}`"))?),
        None => (lower.as_str(), 0),
    };
    let m = parse_rational(mantissa).with_context(|| format!("bad number `{text}`"))?;
    let scale = Rational::from_integer(pow10(exp.unsigned_abs()));
    Ok(if exp >= 0 { m * scale } else { m / scale })
}

pub fn attack_pairs(args: &ArgumentSet, flat: &[String]) -> Result<AttackSet> {
    if !flat.len().is_multiple_of(2) {
        bail!("attacks come as SOURCE TARGET pairs");
    }
    Ok(AttackSet::from_names(args, flat.chunks(2).map(|c| (c[0].as_str(), c[1].as_str())))?)
}

pub fn render_framework(
    framework: &WeightedFramework,
    degrees: Option<&DegreeAssignment>,
    format: OutFormat,
) -> String {
    match format {
        OutFormat::Waf => serialize_waf(framework),
        OutFormat::Dot => to_dot(framework, degrees),
        OutFormat::Json => waf_to_json(framework) + "\n",
    }
}

pub fn render_degrees(args: &ArgumentSet, degrees: &DegreeAssignment, json: bool, digits: Option<u32>) -> String {
    if json {
        degrees_to_json(args, degrees) + "\n"
    } else {
        serialize_degrees(args, degrees, digits)
    }
}

/// Writes `contents`, reads the file back and hands it to `check`.
pub fn write_checked(path: &Path, contents: &str, check: impl FnOnce(&str) -> Result<()>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    let back = fs::read_to_string(path).with_context(|| format!("re-reading {}", path.display()))?;
    check(&back).with_context(|| format!("{} failed its re-check", path.display()))
}

/// Stdout, or a checked file write.
pub fn emit(output: Option<&Path>, contents: &str, check: impl FnOnce(&str) -> Result<()>) -> Result<()> {
    match output {
        Some(path) => write_checked(path, contents, check),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

pub fn with_suffix(prefix: &Path, suffix: &str) -> std::path::PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(suffix);
    name.into()
}

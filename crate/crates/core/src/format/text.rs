//! ```text
//! # comment
//! arg a0 0.9
//! arg a1 7/10
//! att a1 a0
//! ```
//!
//! Degree files use `deg <name> <value>` lines. A `#` starts a comment
//! anywhere on a line.

use std::fmt::Write;

use crate::error::WafError;
use crate::rational::{format_decimal, parse_rational, Rational};
use crate::waf::{ArgumentId, ArgumentSet, DegreeAssignment, FrameworkDraft, WeightedFramework};

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split_once('#').map_or(line, |(head, _)| head);
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> WafError {
    WafError::Parse {
        line,
        message: message.into(),
    }
}

fn value(line: usize, token: &str) -> Result<Rational, WafError> {
    parse_rational(token).map_err(|e| parse_error(line, e.to_string()))
}

fn name(line: usize, token: &str) -> Result<ArgumentId, WafError> {
    ArgumentId::new(token).map_err(|e| parse_error(line, e.to_string()))
}

/// Parses without semantic validation; see [`FrameworkDraft::validate`].
pub fn parse_waf_draft(text: &str) -> Result<FrameworkDraft, WafError> {
    let mut draft = FrameworkDraft::default();
    for (line, tokens) in significant_lines(text) {
        match tokens.as_slice() {
            ["arg", n, w] => draft.args.push((name(line, n)?, value(line, w)?)),
            ["att", s, t] => {
                name(line, s)?;
                name(line, t)?;
                draft.attacks.push((s.to_string(), t.to_string()));
            }
            [kw @ ("arg" | "att"), ..] => {
                return Err(parse_error(line, format!("`{kw}` takes exactly two fields")))
            }
            [other, ..] => return Err(parse_error(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    Ok(draft)
}

pub fn parse_waf(text: &str) -> Result<WeightedFramework, WafError> {
    parse_waf_draft(text)?.build()
}

/// Canonical text: arguments in declaration order, then attacks ordered by
/// (attacker, attacked) declaration position.
pub fn serialize_waf(framework: &WeightedFramework) -> String {
    let mut out = String::new();
    for (i, name) in framework.args().names().iter().enumerate() {
        writeln!(out, "arg {name} {}", framework.weight(i)).unwrap();
    }
    for (s, t) in framework.attacks().iter() {
        writeln!(out, "att {} {}", framework.name(s), framework.name(t)).unwrap();
    }
    out
}

pub fn parse_degrees(text: &str, args: &ArgumentSet) -> Result<DegreeAssignment, WafError> {
    let mut values: Vec<Option<Rational>> = vec![None; args.len()];
    for (line, tokens) in significant_lines(text) {
        match tokens.as_slice() {
            ["deg", n, v] => {
                let i = args
                    .position(n)
                    .ok_or_else(|| parse_error(line, format!("unknown argument `{n}`")))?;
                if values[i].replace(value(line, v)?).is_some() {
                    return Err(parse_error(line, format!("second degree for `{n}`")));
                }
            }
            ["deg", ..] => return Err(parse_error(line, "`deg` takes exactly two fields")),
            [other, ..] => return Err(parse_error(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| WafError::MissingValue(args.name(i).to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let degrees = DegreeAssignment::new(values);
    degrees.check_range(args)?;
    Ok(degrees)
}

/// One `deg` line per argument; with `decimals`, a trailing comment carries
/// the rounded decimal value.
pub fn serialize_degrees(
    args: &ArgumentSet,
    degrees: &DegreeAssignment,
    decimals: Option<u32>,
) -> String {
    let mut out = String::new();
    for (i, name) in args.names().iter().enumerate() {
        match decimals {
            Some(d) => writeln!(
                out,
                "deg {name} {}  # {}",
                degrees[i],
                format_decimal(&degrees[i], d)
            ),
            None => writeln!(out, "deg {name} {}", degrees[i]),
        }
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use num_bigint::BigInt;

    const EXAMPLE: &str = "\
# four arguments, three attacks
arg a0 0.9
arg a1 0.7
arg a2 0.7
arg a3 0.6
att a3 a2   # trailing comment
att a1 a0
att a2 a0
";

    #[test]
    fn minimal_file() {
        let f = parse_waf("arg a0 0.9\narg a1 0.7\natt a1 a0\n").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.attacks().len(), 1);
        assert!(f.attacks().contains(1, 0));
    }

    #[test]
    fn rational_literal() {
        let f = parse_waf("arg a 9/10").unwrap();
        assert_eq!(f.weight(0).numer(), &BigInt::from(9));
        assert_eq!(f.weight(0).denom(), &BigInt::from(10));
    }

    #[test]
    fn canonical_round_trip_of_example() {
        let f = parse_waf(EXAMPLE).unwrap();
        let text = serialize_waf(&f);
        assert_eq!(
            text,
            "arg a0 9/10\narg a1 7/10\narg a2 7/10\narg a3 3/5\natt a1 a0\natt a2 a0\natt a3 a2\n"
        );
        let again = parse_waf(&text).unwrap();
        assert_eq!(again, f);
        assert_eq!(serialize_waf(&again), text);
    }

    #[test]
    fn malformed_lines_carry_line_numbers() {
        let err = parse_waf("arg a 0.5\narg b\n").unwrap_err();
        assert!(matches!(err, WafError::Parse { line: 2, .. }), "{err}");
        let err = parse_waf("arg a 0.5\n\nfoo a b\n").unwrap_err();
        assert!(matches!(err, WafError::Parse { line: 3, .. }), "{err}");
        let err = parse_waf("arg a zero\n").unwrap_err();
        assert!(matches!(err, WafError::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn invalid_frameworks_are_rejected_after_parsing() {
        assert!(matches!(parse_waf("arg a 3/2"), Err(WafError::Invalid(_))));
        assert!(matches!(
            parse_waf("arg a 1\natt a b"),
            Err(WafError::Invalid(_))
        ));
        let draft = parse_waf_draft("arg a 3/2").unwrap();
        assert_eq!(draft.validate().violations.len(), 1);
    }

    #[test]
    fn degree_files() {
        let f = parse_waf(EXAMPLE).unwrap();
        let d = parse_degrees("deg a1 0.7\ndeg a0 8/19\ndeg a2 7/16\ndeg a3 0.6\n", f.args()).unwrap();
        assert_eq!(d[0], ratio(8, 19));
        let text = serialize_degrees(f.args(), &d, Some(3));
        assert!(text.starts_with("deg a0 8/19  # 0.421\n"), "{text}");
        assert_eq!(parse_degrees(&text, f.args()).unwrap(), d);

        assert!(matches!(
            parse_degrees("deg a0 1\n", f.args()),
            Err(WafError::MissingValue(_))
        ));
        assert!(matches!(
            parse_degrees("deg zz 1\n", f.args()),
            Err(WafError::Parse { line: 1, .. })
        ));
        assert!(parse_degrees("deg a0 1\ndeg a0 1\n", f.args()).is_err());
        assert!(matches!(
            parse_degrees("deg a0 2\ndeg a1 0\ndeg a2 0\ndeg a3 0\n", f.args()),
            Err(WafError::OutOfRange { .. })
        ));
    }
}

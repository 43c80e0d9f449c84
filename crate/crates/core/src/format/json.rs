//! JSON mirrors of the text formats. Rationals travel as `"p/q"` strings.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::WafError;
use crate::rational::{parse_rational, Rational};
use crate::waf::{ArgumentId, ArgumentSet, DegreeAssignment, FrameworkDraft, WeightedFramework};

#[derive(Serialize, Deserialize)]
struct ArgJson {
    name: String,
    weight: String,
}

#[derive(Serialize, Deserialize)]
struct WafJson {
    args: Vec<ArgJson>,
    attacks: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
struct DegreesJson {
    degrees: IndexMap<String, String>,
}

pub(crate) fn exact(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

fn value(name: &str, text: &str) -> Result<Rational, WafError> {
    parse_rational(text).map_err(|source| WafError::Value {
        name: name.to_string(),
        source,
    })
}

pub fn waf_to_json(framework: &WeightedFramework) -> String {
    let doc = WafJson {
        args: framework
            .args()
            .names()
            .iter()
            .zip(framework.weights())
            .map(|(n, w)| ArgJson {
                name: n.to_string(),
                weight: exact(w),
            })
            .collect(),
        attacks: framework
            .attacks()
            .named(framework.args())
            .into_iter()
            .map(|(s, t)| [s.to_string(), t.to_string()])
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn waf_from_json(text: &str) -> Result<WeightedFramework, WafError> {
    let doc: WafJson = serde_json::from_str(text)?;
    let mut draft = FrameworkDraft::default();
    for arg in doc.args {
        let weight = value(&arg.name, &arg.weight)?;
        draft.args.push((ArgumentId::new(arg.name)?, weight));
    }
    draft.attacks = doc.attacks.into_iter().map(|[s, t]| (s, t)).collect();
    draft.build()
}

pub fn degrees_to_json(args: &ArgumentSet, degrees: &DegreeAssignment) -> String {
    let doc = DegreesJson {
        degrees: args
            .names()
            .iter()
            .zip(degrees.values())
            .map(|(n, v)| (n.to_string(), exact(v)))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn degrees_from_json(text: &str, args: &ArgumentSet) -> Result<DegreeAssignment, WafError> {
    let doc: DegreesJson = serde_json::from_str(text)?;
    let mut values: Vec<Option<Rational>> = vec![None; args.len()];
    for (name, text) in &doc.degrees {
        let i = args.require(name)?;
        values[i] = Some(value(name, text)?);
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

use std::fmt::Write;

use crate::waf::{DegreeAssignment, WeightedFramework};

/// Graphviz rendering; node labels carry the name, the initial weight and,
/// when given, the degree.
pub fn to_dot(framework: &WeightedFramework, degrees: Option<&DegreeAssignment>) -> String {
    let mut out = String::from("digraph waf {\n");
    for (i, name) in framework.args().names().iter().enumerate() {
        let mut label = format!("{name}\\nw={}", framework.weight(i));
        if let Some(d) = degrees {
            write!(label, "\\nS={}", d[i]).unwrap();
        }
        writeln!(out, "  \"{name}\" [label=\"{label}\"];").unwrap();
    }
    for (s, t) in framework.attacks().iter() {
        writeln!(out, "  \"{}\" -> \"{}\";", framework.name(s), framework.name(t)).unwrap();
    }
    out.push_str("}\n");
    out
}

//! Line-oriented text, JSON and DOT renderings of frameworks and degree
//! assignments.

mod dot;
mod json;
mod text;

pub use dot::to_dot;
pub use json::{degrees_from_json, degrees_to_json, waf_from_json, waf_to_json};
pub use text::{parse_degrees, parse_waf, parse_waf_draft, serialize_degrees, serialize_waf};

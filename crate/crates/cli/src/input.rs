//! Reading and validating input files.

use std::path::Path;
use std::str::FromStr;

use doublept::circle_maps::PLCircleMap;
use doublept::space_forms::{build_group, Family, FiniteSubgroupS3};
use doublept::Rational;
use serde::Deserialize;
use serde_json::Value;

use crate::report::InputError;

pub fn read_file(path: &Path) -> Result<Vec<u8>, InputError> {
    std::fs::read(path).map_err(|e| InputError::new("io", format!("{}: {e}", path.display())))
}

fn json_of(bytes: &[u8]) -> Result<Value, InputError> {
    serde_json::from_slice(bytes).map_err(|e| InputError::new("json", e))
}

pub fn parse_rational(text: &str) -> Result<Rational, InputError> {
    let t = text.trim();
    if t.contains(['.', 'e', 'E']) {
        return Err(InputError::new(
            "parse",
            format!("'{text}' is not an exact fraction"),
        ));
    }
    Rational::from_str(t).map_err(|e| InputError::new("parse", format!("'{text}': {e}")))
}

/// A fraction given as a string, or an integer literal.
fn rational_value(v: &Value, at: &str) -> Result<Rational, InputError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(InputError::new(
            "parse",
            format!("{at}: expected a fraction string such as \"3/4\", got {v}"),
        )),
    }
}

fn pairs(v: &Value, field: &str) -> Result<Vec<(Rational, Rational)>, InputError> {
    let list = v
        .get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| InputError::new("schema", format!("missing array '{field}'")))?;
    list.iter()
        .enumerate()
        .map(|(i, p)| match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((
                rational_value(a, &format!("{field}[{i}][0]"))?,
                rational_value(b, &format!("{field}[{i}][1]"))?,
            )),
            _ => Err(InputError::new(
                "schema",
                format!("{field}[{i}] is not a pair"),
            )),
        })
        .collect()
}

/// `{"breakpoints": [["x", "y"], ...], "degree": d}`
pub fn parse_map(bytes: &[u8]) -> Result<PLCircleMap<Rational>, InputError> {
    let v = json_of(bytes)?;
    let breakpoints = pairs(&v, "breakpoints")?;
    let degree = v
        .get("degree")
        .and_then(Value::as_i64)
        .ok_or_else(|| InputError::new("schema", "missing integer 'degree'"))?;
    PLCircleMap::new(breakpoints, degree).map_err(|e| InputError::new("validation", e))
}

/// `{"vertices": [["x", "y"], ...]}`
pub fn parse_polygon(bytes: &[u8]) -> Result<Vec<(Rational, Rational)>, InputError> {
    pairs(&json_of(bytes)?, "vertices")
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum GroupSpec {
    Family {
        family: String,
        parameter: Option<i64>,
    },
    Table {
        table: Vec<Vec<usize>>,
    },
}

/// `{"family": F, "parameter": n}` or `{"table": [[...], ...]}`
pub fn parse_group_spec(bytes: &[u8]) -> Result<FiniteSubgroupS3, InputError> {
    let spec: GroupSpec = serde_json::from_slice(bytes).map_err(|_| {
        InputError::new(
            "schema",
            "expected {\"family\": F, \"parameter\": n} or {\"table\": [[...]]}",
        )
    })?;
    match spec {
        GroupSpec::Family { family, parameter } => group_from_family(&family, parameter),
        GroupSpec::Table { table } => {
            FiniteSubgroupS3::from_table(table).map_err(|e| InputError::new("validation", e))
        }
    }
}

pub fn group_from_family(
    name: &str,
    parameter: Option<i64>,
) -> Result<FiniteSubgroupS3, InputError> {
    let family = Family::parse(name, parameter).map_err(|e| InputError::new("validation", e))?;
    build_group(family).map_err(|e| InputError::new("validation", e))
}

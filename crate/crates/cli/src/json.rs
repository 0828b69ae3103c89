//! The instance JSON format.
//!
//! ```json
//! {
//!   "intervals": [{"start": [0, 1], "end": 3}, ...],
//!   "cost": {"kind": "pow2", "params": {}, "class": "super"},
//!   "W": [9, 1]
//! }
//! ```
//!
//! Rationals are `[numerator, denominator]` pairs of integers with a
//! positive denominator; a plain integer is shorthand for denominator 1.
//! Unknown keys are rejected. Parsing goes through `serde_json` with
//! arbitrary precision enabled, so integers of any size round-trip exactly;
//! serialization always writes the `[num, den]` form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{Map, Value};

use iord_core::geometry::Interval;
use iord_core::instance::{CostFunction, CostKind, FunctionClass};
use iord_core::{Instance, Rat};

use crate::CliError;

fn err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

// ---------------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------------

pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let obj = as_object(&value, "instance")?;
    reject_unknown(obj, &["intervals", "cost", "W"], "instance")?;

    let intervals_v = obj
        .get("intervals")
        .ok_or_else(|| err("instance is missing \"intervals\""))?;
    let mut intervals = Vec::new();
    for (i, iv) in as_array(intervals_v, "intervals")?.iter().enumerate() {
        let io = as_object(iv, "interval")?;
        reject_unknown(io, &["start", "end"], "interval")?;
        let start = rat_field(io, "start", &format!("interval {i}"))?;
        let end = rat_field(io, "end", &format!("interval {i}"))?;
        let interval = Interval::new(start, end)
            .map_err(|_| err(format!("interval {i}: start must be less than end")))?;
        intervals.push(interval);
    }

    let cost_v = obj
        .get("cost")
        .ok_or_else(|| err("instance is missing \"cost\""))?;
    let cost = parse_cost(cost_v)?;

    let threshold = obj.get("W").map(|v| parse_rat(v, "W")).transpose()?;

    Ok(Instance::new(intervals, cost, threshold))
}

fn parse_cost(v: &Value) -> Result<CostFunction, CliError> {
    let obj = as_object(v, "cost")?;
    reject_unknown(obj, &["kind", "params", "class"], "cost")?;
    let kind_name = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| err("cost needs a string \"kind\""))?;
    let class = match obj.get("class").and_then(Value::as_str) {
        Some("arbitrary") => FunctionClass::Arbitrary,
        Some("sub") => FunctionClass::SubShifted,
        Some("super") => FunctionClass::SuperShifted,
        Some(other) => {
            return Err(err(format!(
                "cost class must be \"arbitrary\", \"sub\" or \"super\", got \"{other}\""
            )))
        }
        None => return Err(err("cost needs a string \"class\"")),
    };
    let empty = Map::new();
    let params = match obj.get("params") {
        Some(p) => as_object(p, "cost params")?,
        None => &empty,
    };

    let kind = match kind_name {
        "pow2" => {
            reject_unknown(params, &[], "pow2 params")?;
            CostKind::Pow2
        }
        "sqrt" => {
            reject_unknown(params, &[], "sqrt params")?;
            CostKind::Sqrt
        }
        "linear" => {
            reject_unknown(params, &["c", "b"], "linear params")?;
            CostKind::Linear {
                slope: rat_field(params, "c", "linear params")?,
                intercept: rat_field(params, "b", "linear params")?,
            }
        }
        "polynomial" => {
            reject_unknown(params, &["coeffs"], "polynomial params")?;
            let coeffs = params
                .get("coeffs")
                .ok_or_else(|| err("polynomial params need \"coeffs\""))?;
            CostKind::Polynomial {
                coeffs: rat_array(coeffs, "coeffs")?,
            }
        }
        "piecewise_linear" => {
            reject_unknown(params, &["f0", "slopes", "breakpoints"], "piecewise params")?;
            let slopes = params
                .get("slopes")
                .ok_or_else(|| err("piecewise_linear params need \"slopes\""))?;
            let breakpoints = params
                .get("breakpoints")
                .ok_or_else(|| err("piecewise_linear params need \"breakpoints\""))?;
            CostKind::PiecewiseLinear {
                f0: rat_field(params, "f0", "piecewise params")?,
                slopes: rat_array(slopes, "slopes")?,
                breakpoints: rat_array(breakpoints, "breakpoints")?,
            }
        }
        "table" => {
            reject_unknown(params, &["entries"], "table params")?;
            let entries_v = params
                .get("entries")
                .ok_or_else(|| err("table params need \"entries\""))?;
            let mut entries = Vec::new();
            for e in as_array(entries_v, "entries")? {
                let pair = as_array(e, "table entry")?;
                if pair.len() != 2 {
                    return Err(err("table entries are [length, value] pairs"));
                }
                entries.push((parse_rat(&pair[0], "length")?, parse_rat(&pair[1], "value")?));
            }
            CostKind::Table { entries }
        }
        other => {
            return Err(err(format!(
                "unknown cost kind \"{other}\" (expected pow2, linear, polynomial, \
                 piecewise_linear, sqrt or table)"
            )))
        }
    };
    CostFunction::new(kind, class).map_err(|e| err(e.to_string()))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| err(format!("{what} must be a JSON object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| err(format!("{what} must be a JSON array")))
}

fn reject_unknown(
    obj: &Map<String, Value>,
    allowed: &[&str],
    what: &str,
) -> Result<(), CliError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(err(format!("unknown key \"{key}\" in {what}")));
        }
    }
    Ok(())
}

fn rat_field(obj: &Map<String, Value>, key: &str, what: &str) -> Result<Rat, CliError> {
    let v = obj
        .get(key)
        .ok_or_else(|| err(format!("{what} is missing \"{key}\"")))?;
    parse_rat(v, key)
}

fn rat_array(v: &Value, what: &str) -> Result<Vec<Rat>, CliError> {
    as_array(v, what)?
        .iter()
        .map(|x| parse_rat(x, what))
        .collect()
}

fn parse_rat(v: &Value, what: &str) -> Result<Rat, CliError> {
    match v {
        Value::Number(n) => Ok(Rat::from_integer(parse_bigint(n, what)?)),
        Value::Array(pair) if pair.len() == 2 => {
            let num = match &pair[0] {
                Value::Number(n) => parse_bigint(n, what)?,
                _ => return Err(err(format!("{what}: numerator must be an integer"))),
            };
            let den = match &pair[1] {
                Value::Number(n) => parse_bigint(n, what)?,
                _ => return Err(err(format!("{what}: denominator must be an integer"))),
            };
            if !den.is_positive() {
                return Err(err(format!("{what}: denominator must be positive")));
            }
            Ok(Rat::new(num, den))
        }
        _ => Err(err(format!(
            "{what}: expected an integer or a [num, den] pair"
        ))),
    }
}

fn parse_bigint(n: &serde_json::Number, what: &str) -> Result<BigInt, CliError> {
    let repr = n.to_string();
    BigInt::from_str(&repr)
        .map_err(|_| err(format!("{what}: expected an integer, got {repr}")))
}

/// Parses `p` or `p/q` from a command-line flag.
pub fn parse_rat_flag(s: &str) -> Result<Rat, CliError> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| err(format!("invalid rational \"{s}\"")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if !den.is_positive() {
                return Err(err(format!("denominator must be positive in \"{s}\"")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

// ---------------------------------------------------------------------------
// Serialization (hand-rolled for deterministic bytes and big integers).
// ---------------------------------------------------------------------------

pub fn rat_json(r: &Rat) -> String {
    format!("[{}, {}]", r.numer(), r.denom())
}

fn cost_json(f: &CostFunction) -> String {
    let (kind, params) = match f.kind() {
        CostKind::Pow2 => ("pow2", "{}".to_string()),
        CostKind::Sqrt => ("sqrt", "{}".to_string()),
        CostKind::Linear { slope, intercept } => (
            "linear",
            format!("{{\"c\": {}, \"b\": {}}}", rat_json(slope), rat_json(intercept)),
        ),
        CostKind::Polynomial { coeffs } => (
            "polynomial",
            format!("{{\"coeffs\": {}}}", rat_list_json(coeffs)),
        ),
        CostKind::PiecewiseLinear {
            f0,
            slopes,
            breakpoints,
        } => (
            "piecewise_linear",
            format!(
                "{{\"f0\": {}, \"slopes\": {}, \"breakpoints\": {}}}",
                rat_json(f0),
                rat_list_json(slopes),
                rat_list_json(breakpoints)
            ),
        ),
        CostKind::Table { entries } => {
            let items: Vec<String> = entries
                .iter()
                .map(|(x, y)| format!("[{}, {}]", rat_json(x), rat_json(y)))
                .collect();
            ("table", format!("{{\"entries\": [{}]}}", items.join(", ")))
        }
    };
    let class = match f.class() {
        FunctionClass::Arbitrary => "arbitrary",
        FunctionClass::SubShifted => "sub",
        FunctionClass::SuperShifted => "super",
    };
    format!("{{\"kind\": \"{kind}\", \"params\": {params}, \"class\": \"{class}\"}}")
}

fn rat_list_json(rs: &[Rat]) -> String {
    let items: Vec<String> = rs.iter().map(rat_json).collect();
    format!("[{}]", items.join(", "))
}

/// Serializes an instance; output is deterministic and parses back to an
/// identical instance.
pub fn instance_to_json(inst: &Instance) -> String {
    let mut out = String::from("{\n  \"intervals\": [\n");
    for (i, iv) in inst.intervals().iter().enumerate() {
        out.push_str(&format!(
            "    {{\"start\": {}, \"end\": {}}}{}\n",
            rat_json(iv.start()),
            rat_json(iv.end()),
            if i + 1 < inst.intervals().len() { "," } else { "" }
        ));
    }
    out.push_str("  ],\n");
    out.push_str(&format!("  \"cost\": {}", cost_json(inst.cost())));
    if let Some(w) = inst.threshold() {
        out.push_str(&format!(",\n  \"W\": {}", rat_json(w)));
    }
    out.push_str("\n}\n");
    out
}

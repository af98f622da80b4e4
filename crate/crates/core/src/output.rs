//! CSV emitters shared by the labs and the CLI.
//!
//! Floats are written with 17 significant digits in scientific notation
//! (round-trip exact), `.` as decimal mark and `,` as separator.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundResult, Regime};
use crate::stats::TailEstimate;

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row of a deviation curve: an empirical tail next to a proven bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationPoint {
    pub a: f64,
    pub p_hat: f64,
    pub wilson_upper: f64,
    pub bound_raw: f64,
    pub bound_clipped: f64,
    pub regime: Regime,
    /// Not part of the CSV schema; kept for JSON output and checks.
    pub bound_valid: bool,
}

impl DeviationPoint {
    pub fn new(a: f64, tail: TailEstimate, bound: &BoundResult) -> Self {
        DeviationPoint {
            a,
            p_hat: tail.p_hat,
            wilson_upper: tail.wilson_upper,
            bound_raw: bound.raw,
            bound_clipped: bound.clipped,
            regime: bound.regime,
            bound_valid: bound.valid,
        }
    }
}

pub const DEVIATION_HEADER: &str = "a,p_hat,wilson_upper,bound_raw,bound_clipped,regime";

pub fn write_deviation_csv<W: Write>(mut w: W, points: &[DeviationPoint]) -> std::io::Result<()> {
    writeln!(w, "{DEVIATION_HEADER}")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_f64(p.a),
            fmt_f64(p.p_hat),
            fmt_f64(p.wilson_upper),
            fmt_f64(p.bound_raw),
            fmt_f64(p.bound_clipped),
            p.regime.as_str()
        )?;
    }
    Ok(())
}

/// `vertex_index,value` dump of a table indexed by state.
pub fn write_table_csv<W: Write>(mut w: W, values: &[f64]) -> std::io::Result<()> {
    writeln!(w, "vertex_index,value")?;
    for (i, v) in values.iter().enumerate() {
        writeln!(w, "{i},{}", fmt_f64(*v))?;
    }
    Ok(())
}


/// Serialises a JSON value with every non-integer number printed by [`fmt_f64`].
pub fn to_json_string(value: &serde_json::Value) -> String {
    let mut out = String::new();
    write_json(value, 0, &mut out);
    out
}

fn write_json(value: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => out.push_str(&u.to_string()),
            (None, Some(i), _) => out.push_str(&i.to_string()),
            (None, None, Some(f)) if f.is_finite() => out.push_str(&fmt_f64(f)),
            _ => out.push_str("null"),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(v, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

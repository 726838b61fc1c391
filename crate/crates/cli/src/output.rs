//! Serialization of sweep rows and states.
//!
//! CSV uses the fixed header below, floats with 17 significant digits,
//! infinities as `inf`/`-inf` and empty cells for columns a command does not
//! fill. JSON mirrors the same field names, with `null` for empty columns
//! and the same `inf` tokens (as strings) for infinities, so both formats
//! round-trip the extended-real values.

use std::io::{self, Write};

use gadsim_core::{DensityMatrix, SweepRow};
use serde_json::{json, Value};

pub const CSV_HEADER: &str =
    "input_id,alpha,phi,theta,beta_in,beta_out_analytic,n_total,n_h,n_v,beta_hat,beta_err";

/// 17 significant digits for finite values; `inf`/`-inf` otherwise.
pub fn fmt_float(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_opt_float(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn fmt_opt_int(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], w: &mut W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.input_id,
            fmt_float(r.alpha),
            fmt_float(r.phi),
            fmt_float(r.theta),
            fmt_float(r.beta_in),
            fmt_float(r.beta_out_analytic),
            fmt_opt_int(r.n_total),
            fmt_opt_int(r.n_h),
            fmt_opt_int(r.n_v),
            fmt_opt_float(r.beta_hat),
            fmt_opt_float(r.beta_err),
        )?;
    }
    Ok(())
}

/// A float as a JSON value: a number when finite, `"inf"`/`"-inf"` otherwise.
pub fn json_float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(fmt_float(x))
    }
}

fn json_opt_float(x: Option<f64>) -> Value {
    x.map(json_float).unwrap_or(Value::Null)
}

fn json_opt_int(x: Option<u64>) -> Value {
    x.map(|v| json!(v)).unwrap_or(Value::Null)
}

pub fn rows_to_json(rows: &[SweepRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "input_id": r.input_id,
                    "alpha": json_float(r.alpha),
                    "phi": json_float(r.phi),
                    "theta": json_float(r.theta),
                    "beta_in": json_float(r.beta_in),
                    "beta_out_analytic": json_float(r.beta_out_analytic),
                    "n_total": json_opt_int(r.n_total),
                    "n_h": json_opt_int(r.n_h),
                    "n_v": json_opt_int(r.n_v),
                    "beta_hat": json_opt_float(r.beta_hat),
                    "beta_err": json_opt_float(r.beta_err),
                })
            })
            .collect(),
    )
}

pub fn write_json<W: Write>(rows: &[SweepRow], w: &mut W) -> io::Result<()> {
    let text = serde_json::to_string_pretty(&rows_to_json(rows))?;
    writeln!(w, "{text}")
}

/// Parse a state from its JSON form; an object wrapped as `{"state": …}`
/// (the `apply` output) is unwrapped first, so outputs can be fed back in.
pub fn state_from_json(text: &str) -> Result<DensityMatrix, String> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if let Some(inner) = value.get_mut("state") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

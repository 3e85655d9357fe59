//! Text output: locale-independent numbers with 12 significant digits, CSV
//! tables with fixed schemas, and JSON envelopes.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extremal::AreaProfile;
use crate::family::FamilySample;
use crate::invariants::{InvariantReport, Verdict};
use crate::loci::Polyline;
use crate::sequence::SequenceState;

pub const SCHEMA_VERSION: u32 = 1;
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`: shortest of fixed or exponent notation, trailing zeros removed,
/// lowercase `e`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn write_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub const FAMILY_HEADER: [&str; 8] = ["theta", "ax", "ay", "bx", "by", "cx", "cy", "closure_residual"];

pub fn family_csv(samples: &[FamilySample]) -> Result<String> {
    write_csv(
        &FAMILY_HEADER,
        samples.iter().map(|s| {
            let t = &s.triangle;
            [s.theta, t.a.x, t.a.y, t.b.x, t.b.y, t.c.x, t.c.y, s.closure_residual].map(fmt_num).to_vec()
        }),
    )
}

pub const REPORT_HEADER: [&str; 6] = ["name", "n", "mean", "max_abs_dev", "expected", "verdict"];

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Invariant => "Invariant",
        Verdict::NotInvariant => "NotInvariant",
    }
}

pub fn report_csv(reports: &[InvariantReport]) -> Result<String> {
    write_csv(
        &REPORT_HEADER,
        reports.iter().map(|r| {
            vec![
                r.name.clone(),
                r.sample_count.to_string(),
                fmt_num(r.mean),
                fmt_num(r.max_abs_deviation),
                opt(r.expected),
                verdict_str(r.verdict).to_string(),
            ]
        }),
    )
}

pub const ORBIT_HEADER: [&str; 5] = ["step", "c", "R", "x", "beta_sign"];

pub fn orbit_csv(states: &[SequenceState]) -> Result<String> {
    write_csv(
        &ORBIT_HEADER,
        states.iter().map(|s| {
            let sign = if s.beta > 0.0 { 1 } else if s.beta < 0.0 { -1 } else { 0 };
            vec![s.n.to_string(), fmt_num(s.c), fmt_num(s.r), fmt_num(s.x()), sign.to_string()]
        }),
    )
}

pub const AREA_HEADER: [&str; 3] = ["x", "f", "is_critical"];

pub fn area_csv(rows: &[(f64, f64, bool)]) -> Result<String> {
    write_csv(&AREA_HEADER, rows.iter().map(|&(x, f, k)| vec![fmt_num(x), fmt_num(f), k.to_string()]))
}

pub const POLYLINE_HEADER: [&str; 4] = ["piece", "index", "x", "y"];

pub fn polylines_csv(lines: &[Polyline]) -> Result<String> {
    write_csv(
        &POLYLINE_HEADER,
        lines.iter().enumerate().flat_map(|(i, pl)| {
            pl.points.iter().enumerate().map(move |(j, p)| vec![i.to_string(), j.to_string(), fmt_num(p.x), fmt_num(p.y)])
        }),
    )
}

/// `{"schema_version": 1, "command": ..., <payload fields>}`; a non-object
/// payload goes under `"result"`.
pub fn json_envelope(command: &str, payload: impl Serialize) -> Result<Value> {
    let value = serde_json::to_value(payload).map_err(|e| Error::InvalidArgument(format!("json: {e}")))?;
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    match value {
        Value::Object(map) => out.as_object_mut().expect("object").extend(map),
        other => {
            out["result"] = other;
        }
    }
    Ok(out)
}

pub fn extrema_json(profile: &AreaProfile) -> Result<Value> {
    json_envelope("extremal", profile)
}

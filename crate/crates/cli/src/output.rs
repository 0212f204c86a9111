use std::io::Write;

use rydinfo_core::audit::AuditRecord;
use rydinfo_core::report::{ConvergeTable, MeasureReport};
use serde::Serialize;

/// Writers mix csv, json and io errors.
pub type WriteResult = Result<(), Box<dyn std::error::Error + Send + Sync>>;

/// Seventeen significant digits: every double survives a text round trip.
pub fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn opt17(v: Option<f64>) -> String {
    v.map(sig17).unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool_version: &'static str,
    pub tol: f64,
    /// Only stamped on request, so repeated runs stay byte-identical.
    pub timestamp: Option<String>,
}

impl Meta {
    pub fn new(tol: f64, stamp: bool) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH").ok().or_else(|| {
            stamp.then(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs().to_string())
                    .unwrap_or_default()
            })
        });
        Self { tool_version: env!("CARGO_PKG_VERSION"), tol, timestamp }
    }
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    meta: &'a Meta,
    reports: &'a [MeasureReport],
}

#[derive(Serialize)]
struct AuditDoc<'a> {
    meta: &'a Meta,
    audits: &'a [AuditRecord],
}

#[derive(Serialize)]
struct ConvergeDoc<'a> {
    meta: &'a Meta,
    table: &'a ConvergeTable,
}

fn json<W: Write, T: Serialize>(mut out: W, doc: &T) -> WriteResult {
    serde_json::to_writer_pretty(&mut out, doc)?;
    writeln!(out)?;
    Ok(())
}

pub fn reports_csv<W: Write>(out: W, reports: &[MeasureReport]) -> WriteResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "l", "m", "Z", "space", "measure", "value", "abs_err", "method"])?;
    for r in reports {
        for (name, e) in &r.entries {
            w.write_record([
                r.state.n().to_string(),
                r.state.l().to_string(),
                r.state.m().to_string(),
                sig17(r.state.z()),
                r.space.to_string(),
                name.clone(),
                opt17(e.value),
                opt17(e.abs_err),
                e.method.clone(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn reports_json<W: Write>(out: W, meta: &Meta, reports: &[MeasureReport]) -> WriteResult {
    json(out, &ReportDoc { meta, reports })
}

pub fn audits_csv<W: Write>(out: W, audits: &[AuditRecord]) -> WriteResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "relation", "n", "l", "m", "Z", "left", "bound_or_reference", "margin", "tolerance", "pass", "error",
    ])?;
    for a in audits {
        let (n, l, m, z) = match &a.state {
            Some(s) => (s.n().to_string(), s.l().to_string(), s.m().to_string(), sig17(s.z())),
            None => Default::default(),
        };
        w.write_record([
            a.relation.clone(),
            n,
            l,
            m,
            z,
            sig17(a.left),
            sig17(a.bound_or_reference),
            sig17(a.margin),
            sig17(a.tolerance),
            a.pass.to_string(),
            a.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn audits_json<W: Write>(out: W, meta: &Meta, audits: &[AuditRecord]) -> WriteResult {
    json(out, &AuditDoc { meta, audits })
}

pub fn converge_csv<W: Write>(out: W, t: &ConvergeTable) -> WriteResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "quantity",
        "n",
        "exact",
        "abs_err",
        "asymptotic",
        "difference",
        "ratio",
        "scaled_difference",
        "scale_power",
        "first_order",
        "monotone",
    ])?;
    for r in &t.rows {
        w.write_record([
            t.quantity.clone(),
            r.n.to_string(),
            sig17(r.exact),
            sig17(r.abs_err),
            sig17(r.asymptotic),
            sig17(r.difference),
            sig17(r.ratio),
            sig17(r.scaled_difference),
            sig17(t.scale_power),
            sig17(r.first_order),
            t.monotone.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn converge_json<W: Write>(out: W, meta: &Meta, table: &ConvergeTable) -> WriteResult {
    json(out, &ConvergeDoc { meta, table })
}

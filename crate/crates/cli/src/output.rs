//! CSV and JSON emitters.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use crate::eval::Point;

pub const SCHEMA: &str = "qshannon,v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One evaluated point; the report fields are absent when evaluation failed.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<f64>,
    pub x: f64,
    pub h_total: Option<f64>,
    pub h_sub: Option<f64>,
    pub h_comp: Option<f64>,
    pub mi: Option<f64>,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
struct Params<'a> {
    model: &'a str,
    state: &'a str,
    mode: &'a str,
    #[serde(rename = "L")]
    length: usize,
    ell: usize,
    k1: i64,
    k2: i64,
    #[serde(rename = "I1")]
    i1: i64,
    #[serde(rename = "I2")]
    i2: i64,
    #[serde(rename = "I")]
    i: i64,
    r: u32,
    core: String,
    species: &'a [u32],
    stats: String,
    tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<&'a str>,
}

#[derive(Serialize)]
struct Document<'a> {
    params: Params<'a>,
    rows: &'a [Row],
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn optional(v: Option<f64>) -> String {
    v.map(number).unwrap_or_default()
}

/// Integer sweep axes print as integers.
fn sweep_text(v: f64, integer_axis: bool) -> String {
    if integer_axis {
        format!("{}", v as i64)
    } else {
        number(v)
    }
}

pub struct Sweep<'a> {
    pub spec: &'a str,
    pub axis: &'a str,
    pub integer: bool,
}

pub fn write(out: &mut dyn Write, format: Format, base: &Point, sweep: Option<&Sweep>, rows: &[Row]) -> Result<()> {
    match format {
        Format::Csv => write_csv(out, base, sweep, rows),
        Format::Json => {
            let doc = Document {
                params: Params {
                    model: base.model.name(),
                    state: base.state.name(),
                    mode: base.mode.as_str(),
                    length: base.length,
                    ell: base.ell,
                    k1: base.k1,
                    k2: base.k2,
                    i1: base.i1,
                    i2: base.i2,
                    i: base.i,
                    r: base.r,
                    core: base.core.to_string(),
                    species: &base.species,
                    stats: base.stats.to_string(),
                    tol: base.tol,
                    sweep: sweep.map(|s| s.spec),
                },
                rows,
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

fn write_csv(out: &mut dyn Write, base: &Point, sweep: Option<&Sweep>, rows: &[Row]) -> Result<()> {
    writeln!(out, "# {SCHEMA},{},{},{}", base.model.name(), base.state.name(), base.mode)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = Vec::new();
    if let Some(s) = sweep {
        header.push(s.axis);
    }
    header.extend(["x", "h_total", "h_sub", "h_comp", "mi", "mode"]);
    if sweep.is_some() {
        header.push("error");
    }
    w.write_record(&header)?;
    for row in rows {
        let mut record = Vec::new();
        if let Some(s) = sweep {
            record.push(row.sweep.map(|v| sweep_text(v, s.integer)).unwrap_or_default());
        }
        record.extend([
            number(row.x),
            optional(row.h_total),
            optional(row.h_sub),
            optional(row.h_comp),
            optional(row.mi),
            row.mode.clone(),
        ]);
        if sweep.is_some() {
            record.push(row.error.clone().unwrap_or_default());
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// A figure panel: named columns of optional numbers.
pub struct Panel {
    pub file: String,
    pub header: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

pub fn write_panel(out: &mut dyn Write, panel: &Panel) -> Result<()> {
    writeln!(out, "# {SCHEMA},{}", panel.header)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&panel.columns)?;
    for row in &panel.rows {
        w.write_record(row.iter().map(|v| optional(*v)))?;
    }
    w.flush()?;
    Ok(())
}

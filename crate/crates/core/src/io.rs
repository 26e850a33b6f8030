//! CSV interferograms (`tau,ratio` or `a,ratio`, optional `noise`) and the
//! JSON sidecar.

use crate::error::{Error, Result};
use crate::intensity::{DelayAxis, Interferogram};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

/// Decimal rendering with 12 significant digits and no exponent.
pub fn format_value(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("float round trip");
    let exponent = rounded.abs().log10().floor() as i32;
    let decimals = (11 - exponent).clamp(0, 400) as usize;
    let s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn data_err(e: impl std::fmt::Display) -> Error {
    Error::Data(e.to_string())
}

pub fn write_interferogram_csv<W: Write>(
    w: W,
    data: &Interferogram,
    noise: Option<&[f64]>,
) -> Result<()> {
    if let Some(n) = noise {
        if n.len() != data.len() {
            return Err(Error::Data(
                "noise column length differs from the data".into(),
            ));
        }
    }
    let mut out = writer(w);
    let mut header = vec![data.axis.label(), "ratio"];
    if noise.is_some() {
        header.push("noise");
    }
    out.write_record(&header).map_err(data_err)?;
    for (i, s) in data.samples.iter().enumerate() {
        let mut row = vec![format_value(s.delay), format_value(s.ratio)];
        if let Some(n) = noise {
            row.push(format_value(n[i]));
        }
        out.write_record(&row).map_err(data_err)?;
    }
    out.flush().map_err(data_err)?;
    Ok(())
}

/// `axis,ratio_closed,ratio_quadrature`.
pub fn write_dual_csv<W: Write>(
    w: W,
    axis: DelayAxis,
    delays: &[f64],
    closed: &[f64],
    quadrature: &[f64],
) -> Result<()> {
    if delays.len() != closed.len() || delays.len() != quadrature.len() {
        return Err(Error::Data("column lengths differ".into()));
    }
    let mut out = writer(w);
    out.write_record([axis.label(), "ratio_closed", "ratio_quadrature"])
        .map_err(data_err)?;
    for i in 0..delays.len() {
        out.write_record([
            format_value(delays[i]),
            format_value(closed[i]),
            format_value(quadrature[i]),
        ])
        .map_err(data_err)?;
    }
    out.flush().map_err(data_err)?;
    Ok(())
}

/// Parsed interferogram and optional per-sample noise column.
pub fn read_interferogram_csv<R: Read>(r: R) -> Result<(Interferogram, Option<Vec<f64>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(r);
    let header = reader.headers().map_err(data_err)?.clone();
    let names: Vec<&str> = header.iter().collect();
    let axis = match names.first() {
        Some(&"tau") => DelayAxis::Tau,
        Some(&"a") => DelayAxis::A,
        other => {
            return Err(Error::Data(format!(
                "first column must be `tau` or `a`, got {other:?}"
            )))
        }
    };
    let has_noise = match &names[1..] {
        ["ratio"] => false,
        ["ratio", "noise"] => true,
        other => return Err(Error::Data(format!("unexpected columns {other:?}"))),
    };
    let mut pairs = Vec::new();
    let mut noise = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(data_err)?;
        let parse = |k: usize| -> Result<f64> {
            let field = record.get(k).unwrap_or("");
            field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Data(format!("row {}: bad number {field:?}", line + 2)))
        };
        pairs.push((parse(0)?, parse(1)?));
        if has_noise {
            noise.push(parse(2)?);
        }
    }
    if pairs.is_empty() {
        return Err(Error::Data("no data rows".into()));
    }
    Ok((
        Interferogram::from_pairs(axis, pairs),
        has_noise.then_some(noise),
    ))
}

/// Metadata written next to every CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub config: serde_json::Value,
    pub method: String,
    pub seed: Option<u64>,
    pub version: String,
    pub timestamp: String,
}

impl Sidecar {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(data_err)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(data_err)
    }
}

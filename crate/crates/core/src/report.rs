//! Deterministic JSON, CSV and SVG output.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64` exactly. JSON objects built from
//! `serde_json::Value` have sorted keys.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::CrError;

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(fmt_f64(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes `value` as compact JSON with 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    value.serialize(&mut ser).expect("in-memory JSON serialization");
    String::from_utf8(out).expect("JSON is UTF-8")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub name: String,
    pub message: String,
}

/// Top-level document written by every CLI command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub residuals: Value,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn ok(command: &str, inputs: Value, outputs: Value, residuals: Value) -> Self {
        Report { command: command.into(), inputs, outputs, residuals, status: "ok".into(), error: None }
    }

    pub fn failed(command: &str, inputs: Value, err: &CrError) -> Self {
        Report {
            command: command.into(),
            inputs,
            outputs: Value::Null,
            residuals: Value::Null,
            status: "error".into(),
            error: Some(ErrorInfo { name: err.name().into(), message: err.to_string() }),
        }
    }
}

/// CSV with a header row and 17-digit numeric cells.
pub fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt_f64).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub const SVG_WIDTH: f64 = 800.0;
pub const SVG_HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;

/// A data-space polyline with a stroke colour.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub stroke: &'static str,
}

/// Plot content in data coordinates; markers are drawn as small crosses.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Figure {
    pub title: String,
    pub lines: Vec<Polyline>,
    pub markers: Vec<(f64, f64)>,
}

fn bounds(fig: &Figure) -> (f64, f64, f64, f64) {
    let pts = fig.lines.iter().flat_map(|l| l.points.iter()).chain(fig.markers.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts.filter(|(x, y)| x.is_finite() && y.is_finite()) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return (-1.0, 1.0, -1.0, 1.0);
    }
    let pad = |lo: f64, hi: f64| {
        let w = (hi - lo).max(1e-12) * 0.05;
        (lo - w, hi + w)
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    (x0, x1, y0, y1)
}

/// Renders a figure as an 800×600 SVG made only of polylines.
pub fn emit_svg(fig: &Figure) -> String {
    let (x0, x1, y0, y1) = bounds(fig);
    let sx = (SVG_WIDTH - 2.0 * MARGIN) / (x1 - x0);
    let sy = (SVG_HEIGHT - 2.0 * MARGIN) / (y1 - y0);
    let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) * sx, SVG_HEIGHT - MARGIN - (y - y0) * sy);
    let poly = |pts: &[(f64, f64)], stroke: &str, width: f64| {
        let coords: Vec<String> = pts
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&p| {
                let (px, py) = map(p);
                format!("{px:.3},{py:.3}")
            })
            .collect();
        format!(
            "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\" points=\"{}\"/>\n",
            coords.join(" ")
        )
    };

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = SVG_WIDTH,
        h = SVG_HEIGHT
    );
    out.push_str(&format!("<title>{}</title>\n", escape(&fig.title)));
    let frame = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)];
    out.push_str(&poly(&frame, "#999999", 1.0));
    if x0 < 0.0 && x1 > 0.0 {
        out.push_str(&poly(&[(0.0, y0), (0.0, y1)], "#cccccc", 1.0));
    }
    if y0 < 0.0 && y1 > 0.0 {
        out.push_str(&poly(&[(x0, 0.0), (x1, 0.0)], "#cccccc", 1.0));
    }
    for line in &fig.lines {
        out.push_str(&poly(&line.points, line.stroke, 1.5));
    }
    let (dx, dy) = (6.0 / sx, 6.0 / sy);
    for &(x, y) in &fig.markers {
        out.push_str(&poly(&[(x - dx, y - dy), (x + dx, y + dy)], "#d62728", 2.0));
        out.push_str(&poly(&[(x - dx, y + dy), (x + dx, y - dy)], "#d62728", 2.0));
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

//! File emission: atomic writes, CSV tables and SVG polylines.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Writes `bytes` to a temporary file beside `path`, then renames it into
/// place. Nothing is left behind on failure.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    // temp files are created owner-only
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Formats one CSV row of floats with round-trip precision.
pub fn csv_row(values: &[f64]) -> String {
    let cells: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
    cells.join(",")
}

/// A header line followed by rows.
pub fn csv_table(header: &str, rows: &[Vec<f64>]) -> String {
    let mut out = String::with_capacity(rows.len() * 96);
    out.push_str(header);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

/// Parses a table written by [`csv_table`].
pub fn parse_csv(text: &str) -> Result<(String, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Config("empty CSV".into()))?.to_string();
    let width = header.split(',').count();
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|c| c.parse::<f64>().map_err(|_| Error::Config(format!("CSV line {}: bad number `{c}`", n + 2))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != width {
            return Err(Error::Config(format!("CSV line {}: expected {width} columns", n + 2)));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

const PALETTE: [&str; 6] = ["#1f4e99", "#b8321a", "#2b8a3e", "#7a3e9d", "#c77d00", "#333333"];

/// Stroke-only polylines in an equal-aspect frame, each ending in an arrow.
pub fn svg_polylines(curves: &[(String, Vec<(f64, f64)>)]) -> String {
    let pts = curves.iter().flat_map(|(_, c)| c.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = 0.05 * span;
    let size = span + 2.0 * pad;
    let stroke = size / 400.0;
    let mut out = String::new();
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" ";
    // y is flipped so that the mathematical orientation is kept
    out += &format!(
        "viewBox=\"{:.6} {:.6} {:.6} {:.6}\" preserveAspectRatio=\"xMidYMid meet\">\n",
        x0 - pad - 0.5 * (span - (x1 - x0)),
        -y1 - pad - 0.5 * (span - (y1 - y0)),
        size,
        size
    );
    out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">";
    out += "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"context-stroke\"/></marker></defs>\n";
    for (i, (label, c)) in curves.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = c
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| format!("{x:.6},{:.6}", -y))
            .collect();
        out += &format!(
            "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"{stroke:.6}\" marker-end=\"url(#arrow)\" points=\"{}\"><title>{}</title></polyline>\n",
            points.join(" "),
            label
        );
    }
    out += "</svg>\n";
    out
}

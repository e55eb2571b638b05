//! Rendering: JSON at 12 significant digits, CSV at 6, SVG polylines.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const JSON_DIGITS: usize = 12;
pub const CSV_DIGITS: usize = 6;

/// Rounds `x` to `digits` significant digits; non-finite values pass through.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                if let Some(m) = serde_json::Number::from_f64(round_sig(x, JSON_DIGITS)) {
                    *n = m;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn csv_cell(x: f64) -> String {
    format!("{}", round_sig(x, CSV_DIGITS))
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(csv_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Closed polyline through `points`, y axis pointing up.
pub fn svg(points: &[(f64, f64)]) -> String {
    let finite: Vec<(f64, f64)> = points.iter().copied().filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &finite {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if finite.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="512" height="{}">"#,
        csv_cell(x0 - pad),
        csv_cell(-(y1 + pad)),
        csv_cell(w),
        csv_cell(h),
        (512.0 * h / w).round().max(1.0)
    );
    let pts: Vec<String> = finite.iter().map(|&(x, y)| format!("{},{}", round_sig(x, 8), round_sig(-y, 8))).collect();
    let _ = writeln!(
        s,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        pts.join(" "),
        csv_cell(w / 400.0)
    );
    s.push_str("</svg>\n");
    s
}

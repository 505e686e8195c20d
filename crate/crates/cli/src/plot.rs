//! Self-contained SVG line chart for convergence reports: one data
//! polyline over a log-scale n axis plus a dashed reference line at 1.0.

use std::fs;
use std::path::Path;

use crate::CliError;

const W: f64 = 640.0;
const H: f64 = 400.0;
const ML: f64 = 72.0;
const MR: f64 = 24.0;
const MT: f64 = 44.0;
const MB: f64 = 56.0;

struct Series {
    n: Vec<f64>,
    y: Vec<f64>,
}

fn schema_err(msg: String) -> CliError {
    CliError::Runtime(format!("schema error: {msg}"))
}

fn load_series(input: &Path, column: &str) -> Result<Series, CliError> {
    let mut reader = csv::Reader::from_path(input)
        .map_err(|e| CliError::Runtime(format!("reading {}: {e}", input.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Runtime(e.to_string()))?
        .clone();
    let n_idx = headers
        .iter()
        .position(|h| h == "n")
        .ok_or_else(|| schema_err(format!("{} has no n column", input.display())))?;
    let y_idx = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| schema_err(format!("{} has no {column:?} column", input.display())))?;
    let mut n = Vec::new();
    let mut y = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Runtime(e.to_string()))?;
        let cell = |idx: usize, what: &str| -> Result<f64, CliError> {
            record
                .get(idx)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| schema_err(format!("row {}: bad {what} value", i + 2)))
        };
        let nv = cell(n_idx, "n")?;
        if nv <= 0.0 {
            return Err(schema_err(format!(
                "row {}: n must be positive for the log axis",
                i + 2
            )));
        }
        n.push(nv);
        y.push(cell(y_idx, column)?);
    }
    if n.is_empty() {
        return Err(schema_err(format!("{} has no data rows", input.display())));
    }
    Ok(Series { n, y })
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 || (1e-3..1e7).contains(&v.abs()) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s.is_empty() {
            "0".to_string()
        } else {
            s.to_string()
        }
    } else {
        format!("{v:.2e}")
    }
}

fn render(s: &Series, column: &str) -> String {
    let (mut x0, mut x1) = s.n.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &v| {
        (lo.min(v.log10()), hi.max(v.log10()))
    });
    if x1 - x0 < 1e-9 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    // The y window always contains the 1.0 reference.
    let mut y0 = s.y.iter().fold(1.0f64, |lo, &v| lo.min(v));
    let mut y1 = s.y.iter().fold(1.0f64, |hi, &v| hi.max(v));
    let pad = (0.08 * (y1 - y0)).max(0.02);
    y0 -= pad;
    y1 += pad;
    let px = |n: f64| ML + (n.log10() - x0) / (x1 - x0) * (W - ML - MR);
    let py = |y: f64| MT + (y1 - y) / (y1 - y0) * (H - MT - MB);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"#ffffff\"/>\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"{ML}\" y=\"{MT}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" \
         stroke=\"#555555\" stroke-width=\"1\"/>\n",
        W - ML - MR,
        H - MT - MB
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{} vs n</text>\n",
        (ML + W - MR) / 2.0,
        column
    ));

    // Tick marks collected into a single path so the reference <line>
    // stays the only line element.
    let mut ticks = String::new();
    let mut labels = String::new();
    for k in 0..=4 {
        let yv = y0 + (y1 - y0) * f64::from(k) / 4.0;
        let yp = py(yv);
        ticks.push_str(&format!("M{:.2},{yp:.2} h-6 ", ML));
        labels.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
            ML - 9.0,
            yp + 4.0,
            fmt_tick(yv)
        ));
    }
    let mut xt: Vec<f64> = s.n.clone();
    xt.dedup();
    if xt.len() > 8 {
        let step = (xt.len() + 7) / 8;
        xt = xt.iter().copied().step_by(step).collect();
    }
    for &nv in &xt {
        let xp = px(nv);
        ticks.push_str(&format!("M{xp:.2},{:.2} v6 ", H - MB));
        labels.push_str(&format!(
            "  <text x=\"{xp:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n",
            H - MB + 20.0,
            fmt_tick(nv)
        ));
    }
    svg.push_str(&format!(
        "  <path d=\"{}\" stroke=\"#555555\" fill=\"none\" stroke-width=\"1\"/>\n",
        ticks.trim_end()
    ));
    svg.push_str(&labels);
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">n (log scale)</text>\n",
        (ML + W - MR) / 2.0,
        H - 12.0
    ));

    svg.push_str(&format!(
        "  <line x1=\"{ML}\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\" stroke=\"#aa3333\" \
         stroke-width=\"1\" stroke-dasharray=\"5 4\"/>\n",
        py(1.0),
        W - MR
    ));
    let points: Vec<String> = s
        .n
        .iter()
        .zip(&s.y)
        .map(|(&nv, &yv)| format!("{:.2},{:.2}", px(nv), py(yv)))
        .collect();
    svg.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"#20639b\" stroke-width=\"1.8\" points=\"{}\"/>\n",
        points.join(" ")
    ));
    svg.push_str("</svg>\n");
    svg
}

pub fn plot_convergence(input: &Path, out: &Path, column: &str) -> Result<(), CliError> {
    let series = load_series(input, column)?;
    let svg = render(&series, column);
    fs::write(out, svg).map_err(|e| CliError::Runtime(format!("writing {}: {e}", out.display())))
}

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use super::{ExperimentSummary, StatSummary, Statistic};
use crate::error::{Error, Result};
use crate::theory::Estimate;

pub const CSV_HEADER: [&str; 19] = [
    "family",
    "c",
    "a",
    "n",
    "m",
    "trials",
    "seed",
    "statistic",
    "mean",
    "std",
    "stderr",
    "pred_kind",
    "pred_value",
    "pred_low",
    "pred_high",
    "ratio",
    "zero_fraction",
    "zero_ci_low",
    "zero_ci_high",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            _ => Err(Error::InvalidPlan(format!("unknown output format {s:?}"))),
        }
    }
}

pub fn emit(summaries: &[ExperimentSummary], format: OutputFormat, path: &Path) -> Result<()> {
    if summaries.is_empty() {
        return Err(Error::InvalidPlan("nothing to emit".into()));
    }
    let mut w = BufWriter::new(File::create(path)?);
    match format {
        OutputFormat::Csv => write_csv(summaries, &mut w)?,
        OutputFormat::Json => write_json(summaries, &mut w)?,
        OutputFormat::Svg => write_svg(summaries, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_record(s: &ExperimentSummary, st: &StatSummary) -> Vec<String> {
    let (family, c, a) = match &s.spec {
        Some(spec) => (
            spec.family.name().to_string(),
            spec.c.to_string(),
            opt(spec.a),
        ),
        None => ("explicit".to_string(), String::new(), String::new()),
    };
    let (kind, value, low, high) = match st.prediction.map(|p| p.estimate) {
        None => (String::new(), None, None, None),
        Some(e) => {
            let (v, lo, hi) = match e {
                Estimate::Point { value } => (Some(value), None, None),
                Estimate::Interval { low, high } => (None, Some(low), Some(high)),
                Estimate::ZeroWhp | Estimate::NotCovered => (None, None, None),
            };
            (e.kind().to_string(), v, lo, hi)
        }
    };
    vec![
        family,
        c,
        a,
        s.n.to_string(),
        s.m.to_string(),
        s.trials.to_string(),
        s.seed.to_string(),
        st.statistic.name().to_string(),
        st.mean.to_string(),
        st.std.to_string(),
        st.stderr.to_string(),
        kind,
        opt(value),
        opt(low),
        opt(high),
        opt(st.ratio),
        opt(st.zero_fraction),
        opt(st.zero_ci.map(|c| c.0)),
        opt(st.zero_ci.map(|c| c.1)),
    ]
}

/// One row per `(summary, statistic)`, in summary then statistic order.
pub fn write_csv<W: Write>(summaries: &[ExperimentSummary], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for s in summaries {
        for st in &s.stats {
            out.write_record(csv_record(s, st))?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(summaries: &[ExperimentSummary], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, summaries)?;
    writeln!(w)?;
    Ok(())
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// Plots ratio (zero fraction for `min_is_zero`) against `log n`, one
/// polyline per statistic, with a reference line at 1.
pub fn write_svg<W: Write>(summaries: &[ExperimentSummary], mut w: W) -> Result<()> {
    let mut series: Vec<(Statistic, Vec<(f64, f64)>)> = Vec::new();
    for s in summaries {
        let x = (s.n as f64).ln();
        for st in &s.stats {
            let y = if st.statistic == Statistic::MinIsZero {
                st.zero_fraction
            } else {
                st.ratio
            };
            let idx = match series.iter().position(|(k, _)| *k == st.statistic) {
                Some(i) => i,
                None => {
                    series.push((st.statistic, Vec::new()));
                    series.len() - 1
                }
            };
            if let Some(y) = y.filter(|y| y.is_finite()) {
                series[idx].1.push((x, y));
            }
        }
    }

    let xs = summaries.iter().map(|s| (s.n as f64).ln());
    let (mut x0, mut x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
        (a.min(x), b.max(x))
    });
    if x1 - x0 < 1e-9 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    let ys = series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1));
    let (mut y0, mut y1) = ys.fold((0.0f64, 1.0f64), |(a, b), y| (a.min(y), b.max(y)));
    let pad = 0.05 * (y1 - y0).max(1e-9);
    y0 -= pad;
    y1 += pad;

    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6,4"/>"#,
        MARGIN,
        py(1.0),
        WIDTH - MARGIN,
        py(1.0)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">log n</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{}" font-size="14" transform="rotate(-90 15 {})" text-anchor="middle">ratio / zero fraction</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (k, x) in [x0, x1].into_iter().enumerate() {
        let anchor = if k == 0 { "start" } else { "end" };
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="{anchor}" font-size="12">{x:.3}</text>"#,
            px(x),
            HEIGHT - MARGIN + 16.0
        );
    }
    for y in [y0, 1.0, y1] {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="end" font-size="12">{y:.3}</text>"#,
            MARGIN - 4.0,
            py(y) + 4.0
        );
    }
    for (k, (stat, pts)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let points: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline data-statistic="{stat}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">{stat}</text>"#,
            WIDTH - MARGIN - 110.0,
            MARGIN + 18.0 * (k as f64 + 1.0)
        );
    }
    svg.push_str("</svg>\n");
    w.write_all(svg.as_bytes())?;
    Ok(())
}

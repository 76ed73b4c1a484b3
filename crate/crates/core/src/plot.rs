//! Self-contained SVG scatter of per-realization giant fractions against the
//! tolerance, with an optional triangle marker at the analytic threshold.

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::sweep::SweepRecord;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

fn fmt(v: f64) -> String {
    format!("{v:.4}")
        .trim_end_matches('0')
        .trim_end_matches('.')
        .to_string()
}

/// Renders the scatter. `alpha_c` draws a filled triangle on the x-axis.
pub fn render_scatter(records: &[SweepRecord], alpha_c: Option<f64>, title: &str) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    for r in records {
        x_min = x_min.min(r.alpha);
        x_max = x_max.max(r.alpha);
    }
    if let Some(ac) = alpha_c {
        x_min = x_min.min(ac);
        x_max = x_max.max(ac);
    }
    if !x_min.is_finite() || !x_max.is_finite() {
        x_min = 0.0;
        x_max = 1.0;
    }
    if x_max <= x_min {
        x_max = x_min + 1.0;
    }
    let pad = 0.04 * (x_max - x_min);
    x_min -= pad;
    x_max += pad;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |alpha: f64| MARGIN_LEFT + (alpha - x_min) / (x_max - x_min) * plot_w;
    let y_of = |g: f64| MARGIN_TOP + (1.0 - g) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{title}</text>\n",
        WIDTH / 2.0
    ));

    // Axes.
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x1:.1}\" y2=\"{y0:.1}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x0:.1}\" y2=\"{y1:.1}\" stroke=\"black\"/>\n"
    ));

    // Ticks: 6 on x, 5 on y (G from 0 to 1).
    for i in 0..=5 {
        let alpha = x_min + (x_max - x_min) * i as f64 / 5.0;
        let x = x_of(alpha);
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{y0:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            y0 + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>\n",
            y0 + 20.0,
            fmt(alpha)
        ));
    }
    for i in 0..=4 {
        let g = i as f64 / 4.0;
        let y = y_of(g);
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{x0:.1}\" y2=\"{y:.1}\" stroke=\"black\"/>\n",
            x0 - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{}</text>\n",
            x0 - 9.0,
            y + 4.0,
            fmt(g)
        ));
    }

    // Axis titles.
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">tolerance alpha</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 16.0
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\" transform=\"rotate(-90 20 {:.1})\">giant component fraction G</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    ));

    // Scatter points.
    for r in records {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"#4682b4\" fill-opacity=\"0.45\"/>\n",
            x_of(r.alpha),
            y_of(r.giant_fraction)
        ));
    }

    // Threshold marker: solid triangle sitting on the x-axis.
    if let Some(ac) = alpha_c {
        let x = x_of(ac);
        svg.push_str(&format!(
            "<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"#222222\"/>\n",
            x,
            y0 - 10.0,
            x - 6.0,
            y0,
            x + 6.0,
            y0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">alpha_c = {}</text>\n",
            y0 - 16.0,
            fmt(ac)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

pub fn write_svg(
    records: &[SweepRecord],
    alpha_c: Option<f64>,
    title: &str,
    path: impl AsRef<Path>,
) -> Result<()> {
    fs::write(path, render_scatter(records, alpha_c, title))?;
    Ok(())
}

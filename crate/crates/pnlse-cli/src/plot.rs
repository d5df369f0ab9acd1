//! Minimal SVG line plots: every numeric column of a table drawn against
//! the first column, with a legend. Output is a standalone vector file.

use crate::table::{Cell, Table};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const ML: f64 = 64.0;
const MR: f64 = 24.0;
const MT: f64 = 24.0;
const MB: f64 = 44.0;
const COLORS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn numeric(cell: &Cell) -> Option<f64> {
    match cell {
        Cell::Num(v) if v.is_finite() => Some(*v),
        Cell::Int(v) => Some(*v as f64),
        _ => None,
    }
}

pub fn render_svg(table: &Table) -> String {
    let series: Vec<usize> = (1..table.columns.len())
        .filter(|&j| table.rows.iter().any(|r| numeric(&r[j]).is_some()))
        .collect();

    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for row in &table.rows {
        let Some(x) = numeric(&row[0]) else { continue };
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        for &j in &series {
            if let Some(y) = numeric(&row[j]) {
                y_min = y_min.min(y);
                y_max = y_max.max(y);
            }
        }
    }
    if !(x_min < x_max) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if !(y_min < y_max) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let pad = 0.05 * (y_max - y_min);
    let (y_lo, y_hi) = (y_min - pad, y_max + pad);

    let sx = |x: f64| ML + (x - x_min) / (x_max - x_min) * (WIDTH - ML - MR);
    let sy = |y: f64| HEIGHT - MB - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - MT - MB);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<rect x=\"{ML}\" y=\"{MT}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" \
         stroke=\"black\"/>\n",
        WIDTH - ML - MR,
        HEIGHT - MT - MB
    ));
    // axis extent labels
    svg.push_str(&format!(
        "<text x=\"{ML}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{x_min:.4}</text>\n",
        HEIGHT - MB + 16.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{x_max:.4}</text>\n",
        WIDTH - MR,
        HEIGHT - MB + 16.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{y_lo:.4}</text>\n",
        ML - 6.0,
        HEIGHT - MB
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{y_hi:.4}</text>\n",
        ML - 6.0,
        MT + 10.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        0.5 * (ML + WIDTH - MR),
        HEIGHT - 8.0,
        table.columns[0]
    ));

    for (idx, &j) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let mut segment: Vec<String> = Vec::new();
        let mut paths: Vec<String> = Vec::new();
        for row in &table.rows {
            match (numeric(&row[0]), numeric(&row[j])) {
                (Some(x), Some(y)) => {
                    segment.push(format!("{:.2},{:.2}", sx(x), sy(y)));
                }
                _ => {
                    if segment.len() > 1 {
                        paths.push(segment.join(" "));
                    }
                    segment.clear();
                }
            }
        }
        if segment.len() > 1 {
            paths.push(segment.join(" "));
        }
        for points in paths {
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" \
                 points=\"{points}\"/>\n"
            ));
        }
        let ly = MT + 16.0 + 16.0 * idx as f64;
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" \
             stroke-width=\"1.5\"/>\n",
            WIDTH - MR - 120.0,
            WIDTH - MR - 96.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
            WIDTH - MR - 90.0,
            ly + 4.0,
            table.columns[j]
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

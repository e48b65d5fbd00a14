use std::fmt::Write;

use super::{ModelFit, SampleSeries, SeriesKind};

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Self-contained SVG line chart: measured points, fitted curves on a
/// log2 core-count axis, and the ideal `S = m` line for speed-up series.
pub fn render_svg(title: &str, series: &SampleSeries, fits: &[ModelFit]) -> String {
    let xs = series.xs();
    let (x0, x1) = (xs[0].log2(), xs[xs.len() - 1].log2().max(xs[0].log2() + 1.0));
    let samples: Vec<f64> = (0..=200).map(|i| 2f64.powf(x0 + (x1 - x0) * i as f64 / 200.0)).collect();

    let curves: Vec<Vec<(f64, f64)>> = fits
        .iter()
        .map(|f| {
            samples
                .iter()
                .map(|&x| (x, f.family.value(x, &f.params)))
                .filter(|p| p.1.is_finite())
                .collect()
        })
        .collect();
    let ideal = series.kind() == SeriesKind::SpeedUp;
    let mut y_max = series.ys().into_iter().fold(0.0, f64::max);
    if ideal {
        y_max = y_max.max(*xs.last().unwrap_or(&1.0));
    }
    let y_max = y_max * 1.1;

    let px = |x: f64| MARGIN + (x.log2() - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (y.clamp(0.0, y_max) / y_max) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, W / 2.0, escape(title));
    let (bx, by) = (MARGIN, H - MARGIN);
    let _ = writeln!(s, r#"<path d="M{bx} {MARGIN} V{by} H{}" stroke="black" fill="none"/>"#, W - MARGIN);
    for &x in &xs {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{x}</text>"#,
            px(x),
            by + 18.0
        );
    }
    for i in 0..=4 {
        let y = y_max * i as f64 / 4.0;
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{y:.2}</text>"#, bx - 6.0, py(y) + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">cores</text>"#, W / 2.0, H - 12.0);
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        series.kind()
    );

    let polyline = |pts: &[(f64, f64)]| {
        pts.iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut legend = Vec::new();
    if ideal {
        let pts: Vec<(f64, f64)> = samples.iter().map(|&x| (x, x)).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" stroke="gray" stroke-dasharray="5,4" fill="none"/>"#,
            polyline(&pts)
        );
        legend.push(("gray", "ideal".to_string()));
    }
    for (i, (fit, pts)) in fits.iter().zip(&curves).enumerate() {
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(
            s,
            r#"<polyline points="{}" stroke="{color}" stroke-width="1.5" fill="none"/>"#,
            polyline(pts)
        );
        legend.push((color, format!("{} (MAE {:.3})", fit.family, fit.mae)));
    }
    for &(x, y) in series.points() {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="black"/>"#, px(x), py(y));
    }
    for (i, (color, label)) in legend.iter().enumerate() {
        let y = MARGIN + 8.0 + 16.0 * i as f64;
        let lx = MARGIN + 12.0;
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/>"#, lx + 18.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 24.0, y + 4.0, escape(label));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

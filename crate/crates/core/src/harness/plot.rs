use std::fmt::Write as _;
use std::path::Path;

use crate::harness::config::ModelKind;
use crate::harness::tails::{parse_tail_csv, TailCell};
use crate::{LabError, Result};

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Horizontal coordinate: eta, or eps = eta sqrt n for the Gaussian baseline.
fn x_of(c: &TailCell) -> f64 {
    match c.model {
        ModelKind::GaussianBaseline => c.reference,
        _ => c.eta,
    }
}

struct LogAxis {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl LogAxis {
    fn new(lo: f64, hi: f64, from: f64, to: f64) -> Self {
        let (lo, mut hi) = (lo.log10().floor(), hi.log10().ceil());
        if hi <= lo {
            hi = lo + 1.0;
        }
        Self { lo, hi, from, to }
    }

    fn map(&self, v: f64) -> f64 {
        self.from + (v.log10() - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }
}

/// Render a tail-curve CSV as a log-log SVG with the reference curves.
pub fn emit_plot(csv: &str) -> Result<String> {
    let cells = parse_tail_csv(csv)?;
    if cells.is_empty() {
        return Err(LabError::Schema("empty grid: nothing to plot".into()));
    }
    let mut groups: Vec<((ModelKind, usize), Vec<&TailCell>)> = Vec::new();
    for c in &cells {
        match groups.iter_mut().find(|(k, _)| *k == (c.model, c.n)) {
            Some((_, v)) => v.push(c),
            None => groups.push(((c.model, c.n), vec![c])),
        }
    }
    let xs: Vec<f64> = cells.iter().map(x_of).filter(|&x| x > 0.0).collect();
    let ys: Vec<f64> = cells.iter().map(|c| c.p_hat).filter(|&y| y > 0.0).collect();
    if xs.is_empty() || ys.is_empty() {
        return Err(LabError::Schema("no positive (x, p_hat) points for a log-log plot".into()));
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init| v.iter().copied().fold(init, f);
    let ax = LogAxis::new(fold(&xs, f64::min, f64::INFINITY), fold(&xs, f64::max, 0.0), MARGIN, W - MARGIN);
    let ay = LogAxis::new(fold(&ys, f64::min, f64::INFINITY), 1.0, H - MARGIN, MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    );
    for d in ax.lo as i32..=ax.hi as i32 {
        let x = ax.map(10f64.powi(d));
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{MARGIN}" x2="{x:.2}" y2="{}" stroke="#ddd"/><text x="{x:.2}" y="{}" text-anchor="middle">1e{d}</text>"##,
            H - MARGIN,
            H - MARGIN + 16.0
        );
    }
    for d in ay.lo as i32..=ay.hi as i32 {
        let y = ay.map(10f64.powi(d));
        let _ = writeln!(
            svg,
            r##"<line x1="{MARGIN}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ddd"/><text x="{}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
            W - MARGIN,
            MARGIN - 6.0,
            y + 4.0
        );
    }
    let xlabel = if cells.iter().all(|c| c.model == ModelKind::GaussianBaseline) {
        "eps = eta sqrt(n)"
    } else {
        "eta"
    };
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#, W / 2.0, H - 16.0);
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">P(s_n &lt;= eta)</text>"#,
        H / 2.0,
        H / 2.0
    );
    let in_box = |x: f64, y: f64| x > 0.0 && y > 0.0 && y <= 10f64.powf(ay.hi) && y >= 10f64.powf(ay.lo);
    for (g, ((model, n), pts)) in groups.iter().enumerate() {
        let color = COLORS[g % COLORS.len()];
        let reference: Vec<String> = pts
            .iter()
            .filter(|c| in_box(x_of(c), c.reference))
            .map(|c| format!("{:.2},{:.2}", ax.map(x_of(c)), ay.map(c.reference)))
            .collect();
        if reference.len() >= 2 {
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-dasharray="5,4"/>"#,
                reference.join(" ")
            );
        }
        let empirical: Vec<(f64, f64)> = pts
            .iter()
            .filter(|c| in_box(x_of(c), c.p_hat))
            .map(|c| (ax.map(x_of(c)), ay.map(c.p_hat)))
            .collect();
        if empirical.len() >= 2 {
            let path: Vec<String> = empirical.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(svg, r#"<polyline points="{}" fill="none" stroke="{color}"/>"#, path.join(" "));
        }
        for (x, y) in &empirical {
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="{color}"/>"#);
        }
        let ly = MARGIN + 14.0 + 14.0 * g as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{ly:.2}" fill="{color}">{} n={n}</text>"#,
            MARGIN + 8.0,
            model.as_str()
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_plot_file(csv_path: &Path, svg_path: &Path) -> Result<()> {
    let svg = emit_plot(&std::fs::read_to_string(csv_path)?)?;
    std::fs::write(svg_path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::tails::CSV_HEADER;

    #[test]
    fn deterministic_and_rejects_empty() {
        let csv = format!(
            "{CSV_HEADER}\ngaussian-baseline,4,0.05,100,6,0.06,0.02,0.1\ngaussian-baseline,4,0.1,100,19,0.19,0.04,0.2\n"
        );
        let a = emit_plot(&csv).unwrap();
        assert_eq!(a, emit_plot(&csv).unwrap());
        assert!(a.starts_with("<svg"));
        assert!(emit_plot(&format!("{CSV_HEADER}\n")).is_err());
        assert!(emit_plot("x,y\n1,2\n").is_err());
    }
}

//! Hand-written SVG 1.1 charts: the density-reciprocity quadrant scatter and
//! the per-area flux chart.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{AreaFlux, FlowFluxRow, ReportBundle, ReportError};
use crate::flow::FlowThresholds;
use crate::flux::FluxVerdict;

/// Fixed 800x600 viewport with 60px margins on every side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotFrame {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
}

impl Default for PlotFrame {
    fn default() -> Self {
        Self { width: 800.0, height: 600.0, margin: 60.0 }
    }
}

impl PlotFrame {
    pub fn left(&self) -> f64 {
        self.margin
    }
    pub fn right(&self) -> f64 {
        self.width - self.margin
    }
    pub fn top(&self) -> f64 {
        self.margin
    }
    pub fn bottom(&self) -> f64 {
        self.height - self.margin
    }

    /// Map `v` in `[lo, hi]` onto the horizontal plot range.
    pub fn x(&self, v: f64, lo: f64, hi: f64) -> f64 {
        self.left() + (v - lo) / (hi - lo) * (self.right() - self.left())
    }

    /// Map `v` in `[lo, hi]` onto the vertical plot range (upwards).
    pub fn y(&self, v: f64, lo: f64, hi: f64) -> f64 {
        self.bottom() - (v - lo) / (hi - lo) * (self.bottom() - self.top())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String, f: &PlotFrame, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = f.width,
        h = f.height
    );
    let _ = writeln!(out, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, f.width, f.height);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        f.width / 2.0,
        f.margin / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, f: &PlotFrame, x_label: &str, y_label: &str) {
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{l}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#,
        l = f.left(),
        r = f.right(),
        b = f.bottom()
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{l}" y1="{b}" x2="{l}" y2="{t}" stroke="black"/>"#,
        l = f.left(),
        t = f.top(),
        b = f.bottom()
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        (f.left() + f.right()) / 2.0,
        f.height - f.margin / 3.0,
        escape(x_label)
    );
    let cy = (f.top() + f.bottom()) / 2.0;
    let _ = writeln!(
        out,
        r#"<text x="{x}" y="{cy}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 {x} {cy})">{}</text>"#,
        escape(y_label),
        x = f.margin / 3.0,
    );
}

/// Density (x, 0..1) against reciprocity (y, 0..100%) with one point per
/// area that has both measures, threshold lines and quadrant labels.
pub fn density_reciprocity_svg(rows: &[FlowFluxRow], t: &FlowThresholds) -> String {
    let f = PlotFrame::default();
    let mut out = String::new();
    header(&mut out, &f, "Density - Reciprocity Analysis");
    axes(&mut out, &f, "Density", "Reciprocity (%)");

    for tick in 0..=4 {
        let v = f64::from(tick) * 0.25;
        let _ = writeln!(
            out,
            r#"<text class="tick" x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="10">{v:.2}</text>"#,
            f.x(v, 0.0, 1.0),
            f.bottom() + 14.0
        );
        let _ = writeln!(
            out,
            r#"<text class="tick" x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="10">{:.0}</text>"#,
            f.left() - 4.0,
            f.y(v * 100.0, 0.0, 100.0) + 3.0,
            v * 100.0
        );
    }

    let tx = f.x(t.density_hi, 0.0, 1.0);
    let ty = f.y(t.reciprocity_hi, 0.0, 100.0);
    let _ = writeln!(
        out,
        r#"<line class="threshold" x1="{tx}" y1="{}" x2="{tx}" y2="{}" stroke="grey" stroke-dasharray="6,4"/>"#,
        f.top(),
        f.bottom()
    );
    let _ = writeln!(
        out,
        r#"<line class="threshold" x1="{}" y1="{ty}" x2="{}" y2="{ty}" stroke="grey" stroke-dasharray="6,4"/>"#,
        f.left(),
        f.right()
    );

    let quadrant_labels = [
        ((tx + f.right()) / 2.0, (f.top() + ty) / 2.0, "Community of practice ready"),
        ((tx + f.right()) / 2.0, (ty + f.bottom()) / 2.0, "Quick win: improve reciprocity"),
        ((f.left() + tx) / 2.0, (f.top() + ty) / 2.0, "Expand the network"),
        ((f.left() + tx) / 2.0, (ty + f.bottom()) / 2.0, "Foundational"),
    ];
    for (x, y, label) in quadrant_labels {
        let _ = writeln!(
            out,
            r#"<text class="quadrant" x="{x}" y="{y}" text-anchor="middle" font-family="sans-serif" font-size="12" fill="grey">{label}</text>"#
        );
    }

    for r in rows {
        let (Some(d), Some(rec)) = (r.density, r.reciprocity) else { continue };
        let (x, y) = (f.x(d, 0.0, 1.0), f.y(rec, 0.0, 100.0));
        let _ = writeln!(out, r#"<circle class="point" cx="{x}" cy="{y}" r="6" fill="steelblue"/>"#);
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            x + 8.0,
            y - 8.0,
            escape(&r.name)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Bar per area with a flux value, favorable-rate annotations, and an
/// upward arrow on areas whose flux needs enhancing.
pub fn flux_svg(flux: &[AreaFlux]) -> String {
    let f = PlotFrame::default();
    let mut out = String::new();
    header(&mut out, &f, "Knowledge Flux Analysis");
    let _ = writeln!(
        out,
        r#"<defs><marker id="arrow" markerWidth="10" markerHeight="10" refX="5" refY="5" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="firebrick"/></marker></defs>"#
    );
    axes(&mut out, &f, "Knowledge area", "Knowledge flux (ties per decision)");

    let bars: Vec<_> = flux.iter().filter_map(|a| a.assessment.as_ref()).collect();
    let y_max = bars.iter().map(|a| a.flux).fold(1.0_f64, f64::max) * 1.1;
    let slot = if bars.is_empty() { 0.0 } else { (f.right() - f.left()) / bars.len() as f64 };
    for (i, a) in bars.iter().enumerate() {
        let x = f.left() + slot * i as f64 + slot * 0.2;
        let w = slot * 0.6;
        let top = f.y(a.flux, 0.0, y_max);
        let colour = match a.verdict {
            FluxVerdict::Optimal => "seagreen",
            FluxVerdict::EnhanceFlux => "firebrick",
            FluxVerdict::InsufficientData => "grey",
        };
        let _ = writeln!(
            out,
            r#"<rect class="bar" x="{x}" y="{top}" width="{w}" height="{}" fill="{colour}"/>"#,
            f.bottom() - top
        );
        let cx = x + w / 2.0;
        let _ = writeln!(
            out,
            r#"<text class="value" x="{cx}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{:.2}</text>"#,
            top - 4.0,
            a.flux
        );
        let note = a.favorable_rate.map_or_else(|| "no outcomes".to_string(), |r| format!("{:.0}% favorable", r * 100.0));
        let _ = writeln!(
            out,
            r#"<text class="favorable" x="{cx}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="10">{note}</text>"#,
            top - 18.0
        );
        let _ = writeln!(
            out,
            r#"<text class="label" x="{cx}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
            f.bottom() + 14.0,
            escape(&a.area)
        );
        if a.verdict == FluxVerdict::EnhanceFlux {
            let _ = writeln!(
                out,
                r#"<line class="arrow" x1="{cx}" y1="{}" x2="{cx}" y2="{}" stroke="firebrick" stroke-width="2" marker-end="url(#arrow)"/>"#,
                top - 24.0,
                (top - 64.0).max(f.top())
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Write `density_reciprocity.svg` and `knowledge_flux.svg` into `out_dir`.
/// Sections missing from the bundle plot as empty charts.
pub fn emit_svg_plots(b: &ReportBundle, out_dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    std::fs::create_dir_all(out_dir).map_err(|source| ReportError::Io { path: out_dir.to_path_buf(), source })?;
    let scatter = density_reciprocity_svg(b.flow_flux.as_deref().unwrap_or_default(), &b.config.flow());
    let flux = flux_svg(b.flux.as_deref().unwrap_or_default());
    let mut paths = Vec::new();
    for (name, body) in [("density_reciprocity.svg", scatter), ("knowledge_flux.svg", flux)] {
        let path = out_dir.join(name);
        std::fs::write(&path, body).map_err(|source| ReportError::Io { path: path.clone(), source })?;
        paths.push(path);
    }
    Ok(paths)
}

//! SVG figures drawn from report data only.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{GroupSummary, PairReport, Report};
use crate::canon::format_float as num;
use crate::context::PairClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FigureKind {
    Density,
    Radar,
    PairedBars,
}

impl FigureKind {
    pub const ALL: [FigureKind; 3] = [FigureKind::Density, FigureKind::Radar, FigureKind::PairedBars];

    pub fn file_name(self) -> &'static str {
        match self {
            FigureKind::Density => "density.svg",
            FigureKind::Radar => "radar.svg",
            FigureKind::PairedBars => "paired_bars.svg",
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;

fn color(c: PairClass) -> &'static str {
    match c {
        PairClass::Etymological => "#1f77b4",
        PairClass::Control => "#d62728",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Pixel coordinates are layout, not data, so they use a short fixed format.
fn px(x: f64) -> String {
    format!("{x:.2}")
}

fn open(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    s
}

/// Writes the requested figures to `out_dir` and returns their paths with
/// any warnings about degenerate input.
pub fn render_figures(report: &Report, kinds: &[FigureKind], out_dir: &Path) -> Result<(Vec<PathBuf>, Vec<String>)> {
    if report.pairs.is_empty() {
        return Err(Error::EmptyInput("report has no pairs"));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    let mut paths = Vec::new();
    let mut warnings = Vec::new();
    for kind in kinds {
        let svg = match kind {
            FigureKind::Density => density(report, &mut warnings),
            FigureKind::Radar => radar(report, &mut warnings),
            FigureKind::PairedBars => paired_bars(report),
        };
        let path = out_dir.join(kind.file_name());
        std::fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
        paths.push(path);
    }
    Ok((paths, warnings))
}

struct Panel {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    lo: f64,
    hi: f64,
}

impl Panel {
    fn x(&self, v: f64) -> f64 {
        self.x0 + (v - self.lo) / (self.hi - self.lo) * self.w
    }
}

fn gaussian_density(values: &[f64], bandwidth: f64, x: f64) -> f64 {
    let norm = 1.0 / (values.len() as f64 * bandwidth * (2.0 * std::f64::consts::PI).sqrt());
    values.iter().map(|v| (-0.5 * ((x - v) / bandwidth).powi(2)).exp()).sum::<f64>() * norm
}

fn density_panel(s: &mut String, panel: &Panel, title: &str, series: &[(&GroupSummary, Vec<f64>)]) {
    let _ = writeln!(s, r#"<g class="panel" data-title="{}">"#, escape(title));
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-weight="bold">{}</text>"#,
        px(panel.x0),
        px(panel.y0 - 8.0),
        escape(title)
    );
    let base = panel.y0 + panel.h;
    let _ = writeln!(
        s,
        r##"<line x1="{}" y1="{b}" x2="{}" y2="{b}" stroke="#000"/>"##,
        px(panel.x0),
        px(panel.x0 + panel.w),
        b = px(base)
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, px(panel.x0), px(base + 14.0), num(panel.lo));
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        px(panel.x0 + panel.w),
        px(base + 14.0),
        num(panel.hi)
    );

    let steps = 200;
    let curves: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|(g, values)| {
            let spread = if g.std > 0.0 { g.std } else { (panel.hi - panel.lo) / 100.0 };
            let bw = 1.06 * spread * (values.len() as f64).powf(-0.2);
            (0..=steps)
                .map(|i| {
                    let x = panel.lo + (panel.hi - panel.lo) * i as f64 / steps as f64;
                    (x, gaussian_density(values, bw, x))
                })
                .collect()
        })
        .collect();
    let peak = curves.iter().flatten().map(|p| p.1).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    for ((g, _), curve) in series.iter().zip(&curves) {
        let c = color(g.class);
        let (band_lo, band_hi) = (panel.x(g.mean - g.std), panel.x(g.mean + g.std));
        let _ = writeln!(
            s,
            r#"<rect class="sigma-band" data-class="{}" data-mean="{}" data-std="{}" x="{}" y="{}" width="{}" height="{}" fill="{c}" fill-opacity="0.12"/>"#,
            g.class.as_str(),
            num(g.mean),
            num(g.std),
            px(band_lo),
            px(panel.y0),
            px((band_hi - band_lo).max(0.5)),
            px(panel.h)
        );
        let points: Vec<String> =
            curve.iter().map(|(x, y)| format!("{},{}", px(panel.x(*x)), px(base - y / peak * panel.h))).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="density" data-class="{}" fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#,
            g.class.as_str(),
            points.join(" ")
        );
        let mx = px(panel.x(g.mean));
        let _ = writeln!(
            s,
            r#"<line class="mean" data-class="{}" data-mean="{}" x1="{mx}" y1="{}" x2="{mx}" y2="{}" stroke="{c}" stroke-dasharray="4 3"/>"#,
            g.class.as_str(),
            num(g.mean),
            px(panel.y0),
            px(base)
        );
    }
    for (i, (g, _)) in series.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{}">{} (n={}): mean {} ± {}</text>"#,
            px(panel.x0 + 4.0),
            px(panel.y0 + 12.0 + 13.0 * i as f64),
            color(g.class),
            g.class.as_str(),
            g.n,
            num(g.mean),
            num(g.std)
        );
    }
    s.push_str("</g>\n");
}

fn series<'a>(
    groups: &'a [GroupSummary],
    pairs: &[PairReport],
    f: impl Fn(&PairReport) -> Vec<f64>,
) -> Vec<(&'a GroupSummary, Vec<f64>)> {
    groups.iter().map(|g| (g, pairs.iter().filter(|p| p.class == g.class).flat_map(&f).collect())).collect()
}

fn range(groups: &[GroupSummary]) -> (f64, f64) {
    let lo = groups.iter().map(|g| g.min.min(g.mean - g.std)).fold(f64::INFINITY, f64::min);
    let hi = groups.iter().map(|g| g.max.max(g.mean + g.std)).fold(f64::NEG_INFINITY, f64::max);
    let pad = ((hi - lo) * 0.15).max(1e-3);
    (lo - pad, hi + pad)
}

fn density(r: &Report, warnings: &mut Vec<String>) -> String {
    if r.groups.len() < 2 {
        warnings.push("density figure: only one pair class present; drawing a single curve".into());
    }
    let mut s = open("Similarity distributions by pair class");
    let (lo, hi) = range(&r.groups);
    let top = Panel { x0: 40.0, y0: 30.0, w: WIDTH - 80.0, h: 140.0, lo, hi };
    density_panel(&mut s, &top, "Pair scores", &series(&r.groups, &r.pairs, |p| vec![p.score]));
    let (lo, hi) = range(&r.context_groups);
    let bottom = Panel { x0: 40.0, y0: 225.0, w: WIDTH - 80.0, h: 140.0, lo, hi };
    density_panel(
        &mut s,
        &bottom,
        "Per-context scores (pooled)",
        &series(&r.context_groups, &r.pairs, |p| p.per_context_scores.clone()),
    );
    s.push_str("</svg>\n");
    s
}

fn radar(r: &Report, warnings: &mut Vec<String>) -> String {
    let n = r.pairs.len();
    if n < 3 {
        warnings.push(format!("radar figure: {n} pair(s) give a degenerate polygon; at least 3 are needed"));
    }
    let mut s = open("Radial view of pair similarity");
    let (cx, cy, radius) = (WIDTH / 2.0, HEIGHT / 2.0 + 10.0, 140.0);
    let lo = r.pairs.iter().map(|p| p.score).fold(0.0, f64::min);
    let hi = r.pairs.iter().map(|p| p.score).fold(lo, f64::max).max(lo + 1e-9);
    let scale = |v: f64| (v - lo) / (hi - lo) * radius;
    let angle = |i: usize| -std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * i as f64 / n as f64;
    for ring in [0.25, 0.5, 0.75, 1.0] {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#ccc"/>"##,
            px(cx),
            px(cy),
            px(radius * ring)
        );
    }
    let _ = writeln!(s, r#"<text x="{}" y="20">radius: {} (centre) to {} (rim)</text>"#, px(10.0), num(lo), num(hi));
    let mut points = Vec::with_capacity(n);
    for (i, p) in r.pairs.iter().enumerate() {
        let a = angle(i);
        let (ex, ey) = (cx + radius * a.cos(), cy + radius * a.sin());
        let _ =
            writeln!(s, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999"/>"##, px(cx), px(cy), px(ex), px(ey));
        let (lx, ly) = (cx + (radius + 18.0) * a.cos(), cy + (radius + 18.0) * a.sin());
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" fill="{}">{}-{} ({})</text>"#,
            px(lx),
            px(ly),
            color(p.class),
            escape(&p.greek),
            escape(&p.latin),
            num(p.score)
        );
        let d = scale(p.score);
        let (vx, vy) = (cx + d * a.cos(), cy + d * a.sin());
        let _ = writeln!(
            s,
            r#"<circle class="vertex" data-pair="{}-{}" data-score="{}" cx="{}" cy="{}" r="3" fill="{}"/>"#,
            escape(&p.greek),
            escape(&p.latin),
            num(p.score),
            px(vx),
            px(vy),
            color(p.class)
        );
        points.push(format!("{},{}", px(vx), px(vy)));
    }
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#1f77b4" fill-opacity="0.15" stroke="#1f77b4"/>"##,
        points.join(" ")
    );
    s.push_str("</svg>\n");
    s
}

fn paired_bars(r: &Report) -> String {
    let mut s = open("Per-pair context means with bootstrap intervals");
    let mut ordered: Vec<&PairReport> = r.pairs.iter().collect();
    ordered.sort_by_key(|p| p.class);
    let lo = ordered.iter().map(|p| p.ci.lo.min(0.0)).fold(0.0, f64::min);
    let hi = ordered.iter().map(|p| p.ci.hi.max(0.0)).fold(0.0, f64::max).max(lo + 1e-9);
    let (x0, y0, w, h) = (60.0, 30.0, WIDTH - 90.0, HEIGHT - 110.0);
    let y = |v: f64| y0 + (hi - v) / (hi - lo) * h;
    let _ = writeln!(
        s,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000"/>"##,
        px(x0),
        px(y(0.0)),
        px(x0 + w),
        px(y(0.0))
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, px(x0 - 4.0), px(y(hi) + 4.0), num(hi));
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, px(x0 - 4.0), px(y(lo) + 4.0), num(lo));
    let slot = w / ordered.len() as f64;
    for (i, p) in ordered.iter().enumerate() {
        let cx = x0 + slot * (i as f64 + 0.5);
        let bw = slot * 0.6;
        let (top, bottom) = (y(p.context_mean.max(0.0)), y(p.context_mean.min(0.0)));
        let _ = writeln!(
            s,
            r#"<rect class="bar" data-pair="{}-{}" data-class="{}" data-value="{}" x="{}" y="{}" width="{}" height="{}" fill="{}" fill-opacity="0.7"/>"#,
            escape(&p.greek),
            escape(&p.latin),
            p.class.as_str(),
            num(p.context_mean),
            px(cx - bw / 2.0),
            px(top),
            px(bw),
            px((bottom - top).max(0.5)),
            color(p.class)
        );
        let _ = writeln!(
            s,
            r##"<line class="whisker" data-pair="{}-{}" data-lo="{}" data-hi="{}" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#000"/>"##,
            escape(&p.greek),
            escape(&p.latin),
            num(p.ci.lo),
            num(p.ci.hi),
            px(y(p.ci.lo)),
            px(y(p.ci.hi)),
            x = px(cx)
        );
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" text-anchor="end" transform="rotate(-40 {x} {})">{}-{}</text>"#,
            px(y0 + h + 14.0),
            px(y0 + h + 14.0),
            escape(&p.greek),
            escape(&p.latin),
            x = px(cx)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">bars: mean per-context score; whiskers: {}% bootstrap interval</text>"#,
        px(x0),
        px(HEIGHT - 8.0),
        num(r.pairs[0].ci.level * 100.0)
    );
    s.push_str("</svg>\n");
    s
}

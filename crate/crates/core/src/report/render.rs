use std::fmt::Write as _;

use super::Report;
use crate::canon::format_float as num;
use crate::context::PairClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

pub fn render_report(report: &Report, format: ReportFormat) -> Result<Vec<u8>> {
    if report.pairs.is_empty() {
        return Err(Error::EmptyInput("report has no pairs"));
    }
    Ok(match format {
        ReportFormat::Json => report.to_json()?.into_bytes(),
        ReportFormat::Markdown => markdown(report).into_bytes(),
    })
}

fn class_title(c: PairClass) -> &'static str {
    match c {
        PairClass::Etymological => "Etymological",
        PairClass::Control => "Control",
    }
}

fn signed(x: f64) -> String {
    if x > 0.0 {
        format!("+{}", num(x))
    } else {
        num(x)
    }
}

fn markdown(r: &Report) -> String {
    let mut s = String::new();
    let b = &r.config.backend;
    let _ = writeln!(s, "# Cross-lingual similarity report\n");
    let _ = writeln!(
        s,
        "{} {} · backend `{}` ({}, dim {}) · metric `{}` · window {} · min contexts {} · seed {}\n",
        r.tool.name,
        r.tool.version,
        b.backend_id,
        match b.kind {
            crate::embedding::BackendKind::Mock => "mock",
            crate::embedding::BackendKind::Transformer => "transformer",
        },
        b.dim,
        r.config.metric.as_str(),
        r.config.window_size,
        r.config.min_contexts,
        r.config.seed,
    );

    let _ = writeln!(s, "## Model Performance Comparison\n");
    let delta = r.comparison.is_some();
    let mut header = String::from("| Metric |");
    let mut rule = String::from("|---|");
    for g in &r.groups {
        let _ = write!(header, " {} (n={}) |", class_title(g.class), g.n);
        rule.push_str("---:|");
    }
    if delta {
        header.push_str(" Δ |");
        rule.push_str("---:|");
    }
    let _ = writeln!(s, "{header}\n{rule}");
    type Pick = fn(&super::GroupSummary) -> f64;
    type PickDelta = fn(&super::Comparison) -> f64;
    let rows: [(&str, Pick, PickDelta); 4] = [
        ("Mean Similarity", |g| g.mean, |c| c.mean),
        ("Standard Deviation", |g| g.std, |c| c.std),
        ("Max Similarity", |g| g.max, |c| c.max),
        ("Min Similarity", |g| g.min, |c| c.min),
    ];
    for (label, pick, pick_delta) in rows {
        let _ = write!(s, "| {label} |");
        for g in &r.groups {
            let _ = write!(s, " {} |", num(pick(g)));
        }
        if let Some(c) = &r.comparison {
            let _ = write!(s, " {} |", signed(pick_delta(c)));
        }
        s.push('\n');
    }
    s.push('\n');

    if let Some(t) = &r.t_test {
        let _ = writeln!(
            s,
            "Student t-test (pooled): t = {}, df = {}, p = {}",
            num(t.student.t),
            num(t.student.df),
            num(t.student.p)
        );
        if let Some(w) = &t.welch {
            let _ = writeln!(s, "\nWelch t-test: t = {}, df = {}, p = {}", num(w.t), num(w.df), num(w.p));
        }
        s.push('\n');
    }
    if let Some(v) = &r.variance {
        let _ = writeln!(
            s,
            "Genre ANOVA over per-context scores: F = {}, p = {}, σ²_genre = {}, σ²_residual = {}, α = {}\n",
            num(v.f),
            num(v.p),
            num(v.sigma2_genre),
            num(v.sigma2_residual),
            num(v.alpha)
        );
    }

    let _ = writeln!(s, "## Top Performing Term Pairs\n");
    let _ = writeln!(s, "| Pair | Class | Similarity | Context mean | {}% CI |", num(r.pairs[0].ci.level * 100.0));
    let _ = writeln!(s, "|---|---|---:|---:|---|");
    let mut ranked: Vec<_> = r.pairs.iter().collect();
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| (&a.greek, &a.latin).cmp(&(&b.greek, &b.latin))));
    for p in ranked {
        let _ = writeln!(
            s,
            "| {}-{} | {} | {} | {} | [{}, {}] |",
            p.greek,
            p.latin,
            p.class.as_str(),
            num(p.score),
            num(p.context_mean),
            num(p.ci.lo),
            num(p.ci.hi)
        );
    }

    if !r.warnings.is_empty() {
        let _ = writeln!(s, "\n## Warnings\n");
        for w in &r.warnings {
            let _ = writeln!(s, "- {w}");
        }
    }
    s
}

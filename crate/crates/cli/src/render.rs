//! Plain-text tables for terminal output.

use std::fmt::Write;

use zfuse_core::{DecisionReport, Frame, MassFunction, SourceReport, WeightVector};

fn fmt_vec(values: &[f64], precision: usize) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.precision$}")).collect();
    format!("({})", parts.join(", "))
}

fn universe_label(frame: &Frame) -> String {
    format!("({})", frame.labels().join(","))
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn mass_row(label: &str, m: &MassFunction, precision: usize) -> Vec<String> {
    std::iter::once(label.to_string())
        .chain(
            m.singleton_masses()
                .iter()
                .map(|v| format!("{v:.precision$}")),
        )
        .chain(std::iter::once(format!(
            "{:.precision$}",
            m.universe_mass()
        )))
        .collect()
}

fn mass_header(frame: &Frame, first: &str) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(frame.labels().iter().cloned())
        .chain(std::iter::once(universe_label(frame)))
        .collect()
}

/// Extra rows for any focal set that is neither a singleton nor the frame.
fn other_focal_sets(label: &str, m: &MassFunction, precision: usize) -> Vec<String> {
    let frame = m.frame();
    m.focal()
        .filter(|(s, _)| s.len() > 1 && *s != frame.universe())
        .map(|(s, v)| {
            format!(
                "  {label} {{{}}}: {v:.precision$}",
                frame.labels_of(s).join(",")
            )
        })
        .collect()
}

pub fn bpa_table(sources: &[SourceReport], frame: &Frame, precision: usize) -> String {
    let mut rows = vec![mass_header(frame, "source")];
    let mut notes = Vec::new();
    for s in sources {
        rows.push(mass_row(&s.name, &s.bpa, precision));
        notes.extend(other_focal_sets(&s.name, &s.bpa, precision));
    }
    let mut out = table(&rows);
    for n in notes {
        out.push_str(&n);
        out.push('\n');
    }
    out
}

pub fn config_lines(alpha: f64, criteria: &[f64], components: &[f64], precision: usize) -> String {
    format!(
        "alpha              {alpha}\ncriteria weights   {}\ncomponent weights  {}\n",
        fmt_vec(criteria, precision),
        fmt_vec(components, precision)
    )
}

pub fn decision(report: &DecisionReport, precision: usize) -> String {
    let frame = report.fused.frame();
    let mut out = config_lines(
        report.config.alpha,
        &report.config.criteria_weights,
        &report.config.component_weights,
        precision,
    );
    out.push('\n');

    let mut rows = vec![mass_header(frame, "source")];
    for s in &report.sources {
        rows.push(mass_row(&s.name, &s.bpa, precision));
    }
    rows.push(mass_row("fused", &report.fused, precision));
    out.push_str(&table(&rows));
    for n in other_focal_sets("fused", &report.fused, precision) {
        out.push_str(&n);
        out.push('\n');
    }
    out.push('\n');

    let names: Vec<&str> = report.sources.iter().map(|s| s.name.as_str()).collect();
    let steps: Vec<String> = report
        .conflict_trace
        .iter()
        .enumerate()
        .map(|(i, k)| {
            format!(
                "{} + {}: {k:.precision$}",
                names[..=i].join("⊕"),
                names[i + 1]
            )
        })
        .collect();
    let _ = writeln!(
        out,
        "conflict  {}",
        if steps.is_empty() {
            "none (single source)".to_string()
        } else {
            steps.join("; ")
        }
    );
    let ranking: Vec<String> = report
        .ranking
        .iter()
        .map(|r| format!("{} ({:.precision$})", r.hypothesis, r.mass))
        .collect();
    let _ = writeln!(out, "ranking   {}", ranking.join(" > "));
    let _ = writeln!(out, "decision  {}", report.decision);
    out
}

pub fn weights(w: &WeightVector, precision: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n           {}", w.len());
    let _ = writeln!(out, "alpha       {}", w.alpha());
    let _ = writeln!(out, "weights     {}", fmt_vec(w.weights(), precision));
    let _ = writeln!(out, "orness      {:.precision$}", w.orness());
    let _ = writeln!(out, "dispersion  {:.precision$}", w.dispersion());
    out
}

pub struct FuzzyRow<'a> {
    pub name: &'a str,
    pub score: f64,
    pub centroid: f64,
    pub height: f64,
    pub spread: f64,
}

pub fn fuzzy_ranking(rows: &[FuzzyRow<'_>], precision: usize) -> String {
    let mut t = vec![["rank", "name", "H", "centroid", "height", "spread"]
        .map(String::from)
        .to_vec()];
    for (i, r) in rows.iter().enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            r.name.to_string(),
            format!("{:.precision$}", r.score),
            format!("{:.precision$}", r.centroid),
            format!("{:.precision$}", r.height),
            format!("{:.precision$}", r.spread),
        ]);
    }
    table(&t)
}

pub struct ZRow<'a> {
    pub name: &'a str,
    pub h_a: f64,
    pub h_b: f64,
    pub deviation: f64,
    pub similarity: f64,
    pub clamped: bool,
}

pub fn z_ranking(rows: &[ZRow<'_>], precision: usize) -> String {
    let mut t = vec![["rank", "name", "H(A)", "H(B)", "D", "S"]
        .map(String::from)
        .to_vec()];
    for (i, r) in rows.iter().enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            r.name.to_string(),
            format!("{:.precision$}", r.h_a),
            format!("{:.precision$}", r.h_b),
            format!(
                "{:.precision$}{}",
                r.deviation,
                if r.clamped { "*" } else { "" }
            ),
            format!("{:.precision$}", r.similarity),
        ]);
    }
    let mut out = table(&t);
    if rows.iter().any(|r| r.clamped) {
        out.push_str("* deviation clamped to 1\n");
    }
    out
}

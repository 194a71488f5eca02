//! Evaluation outputs.
//!
//! Every report exists twice: a JSON file with full-precision numbers for
//! downstream tooling, and a fixed-width text table with display rounding
//! for humans. Numbers are percentages.

use std::path::Path;

use serde::{Deserialize, Serialize};

use emoscope_core::eval::{display_1dp, ClassReport, DeltaTable, EvalReport, PrfScores};
use emoscope_core::scope::ScopeEvalReport;

use crate::error::CliResult;
use crate::formats::{read_json, write_json};

#[derive(Serialize, Deserialize)]
pub struct PrfFile {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl From<PrfScores> for PrfFile {
    fn from(s: PrfScores) -> Self {
        PrfFile { precision: s.precision, recall: s.recall, f1: s.f1 }
    }
}

#[derive(Serialize, Deserialize)]
pub struct ClassFile {
    pub name: String,
    pub support: u64,
    #[serde(flatten)]
    pub scores: PrfFile,
}

#[derive(Serialize, Deserialize)]
pub struct ReportFile {
    pub subset: String,
    pub total: u64,
    pub empty: bool,
    pub classes: Vec<ClassFile>,
    pub macro_avg: PrfFile,
}

impl From<&EvalReport> for ReportFile {
    fn from(r: &EvalReport) -> Self {
        ReportFile {
            subset: r.subset.clone(),
            total: r.total,
            empty: r.empty,
            classes: r
                .classes
                .iter()
                .map(|c: &ClassReport| ClassFile {
                    name: c.name.clone(),
                    support: c.support,
                    scores: c.scores.into(),
                })
                .collect(),
            macro_avg: r.macro_avg.into(),
        }
    }
}

pub fn write_report(path: &Path, report: &EvalReport) -> CliResult<()> {
    write_json(path, &ReportFile::from(report))
}

pub fn read_report(path: &Path) -> CliResult<ReportFile> {
    read_json(path)
}

const CLASS_WIDTH: usize = 10;
const CELL: usize = 7;

fn cell(s: &str) -> String {
    format!("{s:>CELL$}")
}

fn prf_cells(s: &PrfScores) -> String {
    format!(
        "{}{}{}",
        cell(&display_1dp(s.precision)),
        cell(&display_1dp(s.recall)),
        cell(&display_1dp(s.f1))
    )
}

/// Renders one evaluation as a text table.
pub fn render_report(report: &EvalReport) -> String {
    let mut out = format!(
        "subset: {} ({} documents{})\n",
        report.subset,
        report.total,
        if report.empty { ", empty" } else { "" }
    );
    out.push_str(&format!(
        "{:<CLASS_WIDTH$}{}{}{}{}\n",
        "class",
        cell("support"),
        cell("prec"),
        cell("rec"),
        cell("f1")
    ));
    for class in &report.classes {
        out.push_str(&format!(
            "{:<CLASS_WIDTH$}{}{}\n",
            class.name,
            cell(&class.support.to_string()),
            prf_cells(&class.scores)
        ));
    }
    out.push_str(&format!(
        "{:<CLASS_WIDTH$}{}{}\n",
        "macro",
        cell("-"),
        prf_cells(&report.macro_avg)
    ));
    out
}

#[derive(Serialize, Deserialize)]
pub struct DeltaFile {
    pub classes: Vec<ClassFile>,
    pub macro_avg: PrfFile,
}

pub fn write_delta(path: &Path, delta: &DeltaTable) -> CliResult<()> {
    write_json(
        path,
        &DeltaFile {
            classes: delta
                .classes
                .iter()
                .map(|(name, scores)| ClassFile {
                    name: name.clone(),
                    support: 0,
                    scores: (*scores).into(),
                })
                .collect(),
            macro_avg: delta.macro_avg.into(),
        },
    )
}

fn signed_1dp(x: f64) -> String {
    let rendered = display_1dp(x);
    if x > 0.0 && !rendered.starts_with('-') {
        format!("+{rendered}")
    } else {
        rendered
    }
}

/// Renders a score difference table (positive means the second run wins).
pub fn render_delta(delta: &DeltaTable) -> String {
    let mut out = format!(
        "{:<CLASS_WIDTH$}{}{}{}\n",
        "class",
        cell("prec"),
        cell("rec"),
        cell("f1")
    );
    let mut row = |name: &str, s: &PrfScores| {
        out.push_str(&format!(
            "{:<CLASS_WIDTH$}{}{}{}\n",
            name,
            cell(&signed_1dp(s.precision)),
            cell(&signed_1dp(s.recall)),
            cell(&signed_1dp(s.f1))
        ));
    };
    for (name, scores) in &delta.classes {
        row(name, scores);
    }
    row("macro", &delta.macro_avg);
    out
}

#[derive(Serialize, Deserialize)]
pub struct KindScoresFile {
    pub kind: String,
    pub pairs: u64,
    #[serde(flatten)]
    pub scores: PrfFile,
}

#[derive(Serialize, Deserialize)]
pub struct ScopeMethodFile {
    pub method: String,
    pub per_kind: Vec<KindScoresFile>,
    pub macro_avg: PrfFile,
}

pub fn scope_method_file(method: &str, report: &ScopeEvalReport) -> ScopeMethodFile {
    ScopeMethodFile {
        method: method.to_string(),
        per_kind: report
            .per_kind
            .iter()
            .map(|k| KindScoresFile {
                kind: k.kind.name().to_string(),
                pairs: k.pairs,
                scores: k.scores.into(),
            })
            .collect(),
        macro_avg: report.macro_avg.into(),
    }
}

#[derive(Serialize, Deserialize)]
pub struct ScopeEvalFile {
    pub methods: Vec<ScopeMethodFile>,
}

pub fn write_scope_eval(path: &Path, methods: &[(String, ScopeEvalReport)]) -> CliResult<()> {
    write_json(
        path,
        &ScopeEvalFile {
            methods: methods
                .iter()
                .map(|(name, report)| scope_method_file(name, report))
                .collect(),
        },
    )
}

/// Side-by-side text table, one column group per method.
pub fn render_scope_eval(methods: &[(String, ScopeEvalReport)]) -> String {
    let group = 3 * CELL;
    let mut out = format!("{:<CLASS_WIDTH$}", "");
    for (name, _) in methods {
        out.push_str(&format!("  {name:<group$}"));
    }
    out.push('\n');
    out.push_str(&format!("{:<CLASS_WIDTH$}", "kind"));
    for _ in methods {
        out.push_str(&format!("  {}{}{}", cell("prec"), cell("rec"), cell("f1")));
    }
    out.push('\n');
    for slot in 0..3 {
        let kind_name = methods
            .first()
            .map(|(_, r)| r.per_kind[slot].kind.name())
            .unwrap_or("");
        out.push_str(&format!("{kind_name:<CLASS_WIDTH$}"));
        for (_, report) in methods {
            out.push_str(&format!("  {}", prf_cells(&report.per_kind[slot].scores)));
        }
        out.push('\n');
    }
    out.push_str(&format!("{:<CLASS_WIDTH$}", "macro"));
    for (_, report) in methods {
        out.push_str(&format!("  {}", prf_cells(&report.macro_avg)));
    }
    out.push('\n');
    out
}

/// Window-size sweep as TSV, full precision, one row per n.
pub fn render_sweep_tsv(rows: &[(usize, ScopeEvalReport)]) -> String {
    let mut out = String::from("n");
    for kind in ["negation", "amplifier", "downtoner", "macro"] {
        for metric in ["prec", "rec", "f1"] {
            out.push_str(&format!("\t{kind}_{metric}"));
        }
    }
    out.push('\n');
    for (n, report) in rows {
        out.push_str(&n.to_string());
        for scores in report
            .per_kind
            .iter()
            .map(|k| &k.scores)
            .chain(std::iter::once(&report.macro_avg))
        {
            out.push_str(&format!("\t{}\t{}\t{}", scores.precision, scores.recall, scores.f1));
        }
        out.push('\n');
    }
    out
}

/// Compact sweep table for the terminal: macro scores per window size.
pub fn render_sweep_table(rows: &[(usize, ScopeEvalReport)]) -> String {
    let mut out = format!(
        "{:<6}{}{}{}\n",
        "n",
        cell("prec"),
        cell("rec"),
        cell("f1")
    );
    for (n, report) in rows {
        out.push_str(&format!("{:<6}{}\n", n, prf_cells(&report.macro_avg)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use emoscope_core::emotion::Emotion;
    use emoscope_core::eval::report;

    fn toy_report() -> EvalReport {
        let golds = [Emotion::Joy, Emotion::Joy, Emotion::Anger, Emotion::Fear];
        let preds = [Emotion::Joy, Emotion::Anger, Emotion::Anger, Emotion::Fear];
        report(&golds, &preds, "all").unwrap()
    }

    #[test]
    fn report_roundtrips_through_json() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let r = toy_report();
        write_report(&path, &r).unwrap();
        let back = read_report(&path).unwrap();
        assert_eq!(back.total, 4);
        assert_eq!(back.classes.len(), 6);
        assert_eq!(back.classes[0].name, "joy");
        assert_eq!(back.classes[0].scores.f1, r.classes[0].scores.f1);
        assert_eq!(back.macro_avg.f1, r.macro_avg.f1);
    }

    #[test]
    fn rendered_table_uses_display_rounding() {
        let r = toy_report();
        let text = render_report(&r);
        // Joy: precision 100, recall 50, f1 66.66… shown as 66.7.
        assert!(text.contains("66.7"), "{text}");
        assert!(text.lines().count() >= 8);
        assert!(text.starts_with("subset: all (4 documents)"));
    }

    #[test]
    fn delta_rendering_signs_positive_changes() {
        let a = toy_report();
        let golds = [Emotion::Joy, Emotion::Joy, Emotion::Anger, Emotion::Fear];
        let b = report(&golds, &golds, "all").unwrap();
        let delta = emoscope_core::eval::compare_reports(&a, &b).unwrap();
        let text = render_delta(&delta);
        assert!(text.contains('+'), "{text}");
    }

    #[test]
    fn sweep_tsv_shape() {
        let text = render_sweep_tsv(&[]);
        let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
        assert_eq!(header.len(), 1 + 4 * 3);
        assert_eq!(header[1], "negation_prec");
        assert_eq!(header[12], "macro_f1");
    }
}

//! Confusion matrices, precision/recall/F1 reports, and report diffs.
//!
//! All scores are percentages. Computation keeps full precision; only
//! rendering rounds, via [`display_1dp`].

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::emotion::Emotion;
use crate::lexicon::ModifierKind;
use crate::scope::ScopeLabel;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PrfScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Percent precision/recall/F1 with the zero-denominator convention:
/// any undefined score is 0.
pub fn prf_from_counts(tp: u64, fp: u64, fn_: u64) -> PrfScores {
    let precision = if tp + fp > 0 { 100.0 * tp as f64 / (tp + fp) as f64 } else { 0.0 };
    let recall = if tp + fn_ > 0 { 100.0 * tp as f64 / (tp + fn_) as f64 } else { 0.0 };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    PrfScores { precision, recall, f1 }
}

/// Rounds half away from zero to one decimal. Display only.
pub fn round_1dp(x: f64) -> f64 {
    let shifted = x * 10.0 + if x >= 0.0 { 0.5 } else { -0.5 };
    (shifted as i64) as f64 / 10.0
}

pub fn display_1dp(x: f64) -> String {
    format!("{:.1}", round_1dp(x))
}

/// Square count matrix, rows gold and columns predicted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<u64>,
}

impl ConfusionMatrix {
    pub fn new(labels: Vec<String>) -> ConfusionMatrix {
        let n = labels.len();
        ConfusionMatrix { labels, counts: alloc::vec![0; n * n] }
    }

    pub fn for_emotions() -> ConfusionMatrix {
        ConfusionMatrix::new(Emotion::ALL.iter().map(|e| e.name().to_string()).collect())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add(&mut self, gold: usize, pred: usize, count: u64) {
        let n = self.n();
        assert!(gold < n && pred < n, "class index out of range");
        self.counts[gold * n + pred] += count;
    }

    pub fn record(&mut self, gold: usize, pred: usize) {
        self.add(gold, pred, 1);
    }

    pub fn get(&self, gold: usize, pred: usize) -> u64 {
        self.counts[gold * self.n() + pred]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Gold count of a class.
    pub fn support(&self, class: usize) -> u64 {
        (0..self.n()).map(|p| self.get(class, p)).sum()
    }

    pub fn predicted_total(&self, class: usize) -> u64 {
        (0..self.n()).map(|g| self.get(g, class)).sum()
    }

    pub fn class_prf(&self, class: usize) -> PrfScores {
        let tp = self.get(class, class);
        let fp = self.predicted_total(class) - tp;
        let fn_ = self.support(class) - tp;
        prf_from_counts(tp, fp, fn_)
    }

    pub fn merge(&self, other: &ConfusionMatrix) -> Result<ConfusionMatrix> {
        if self.labels != other.labels {
            return Err(Error::SchemaMismatch("confusion matrices label different classes".into()));
        }
        let mut out = self.clone();
        for (slot, v) in out.counts.iter_mut().zip(&other.counts) {
            *slot += v;
        }
        Ok(out)
    }
}

/// Counts gold/predicted emotion pairs.
pub fn confusion(golds: &[Emotion], preds: &[Emotion]) -> Result<ConfusionMatrix> {
    if golds.len() != preds.len() {
        return Err(Error::LengthMismatch { left: golds.len(), right: preds.len() });
    }
    if golds.is_empty() {
        return Err(Error::EmptyEvaluation);
    }
    let mut cm = ConfusionMatrix::for_emotions();
    for (g, p) in golds.iter().zip(preds) {
        cm.record(g.index(), p.index());
    }
    Ok(cm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub name: String,
    pub support: u64,
    pub scores: PrfScores,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// What was evaluated: "all", a modifier kind, a method name.
    pub subset: String,
    pub classes: Vec<ClassReport>,
    /// Unweighted means over all classes, zero-support ones included.
    pub macro_avg: PrfScores,
    pub total: u64,
    /// Set when the subset selected nothing; scores are all zero then.
    pub empty: bool,
}

fn macro_average(classes: &[ClassReport]) -> PrfScores {
    let n = classes.len() as f64;
    let mut sum = PrfScores::default();
    for c in classes {
        sum.precision += c.scores.precision;
        sum.recall += c.scores.recall;
        sum.f1 += c.scores.f1;
    }
    PrfScores { precision: sum.precision / n, recall: sum.recall / n, f1: sum.f1 / n }
}

impl EvalReport {
    pub fn from_confusion(cm: &ConfusionMatrix, subset: &str) -> EvalReport {
        let classes: Vec<ClassReport> = (0..cm.n())
            .map(|i| ClassReport {
                name: cm.labels()[i].clone(),
                support: cm.support(i),
                scores: cm.class_prf(i),
            })
            .collect();
        let macro_avg = macro_average(&classes);
        let total = cm.total();
        EvalReport { subset: subset.to_string(), classes, macro_avg, total, empty: total == 0 }
    }

    pub fn class(&self, name: &str) -> Option<&ClassReport> {
        self.classes.iter().find(|c| c.name == name)
    }
}

/// Scores an emotion prediction run.
pub fn report(golds: &[Emotion], preds: &[Emotion], subset: &str) -> Result<EvalReport> {
    Ok(EvalReport::from_confusion(&confusion(golds, preds)?, subset))
}

/// Restricts evaluation to documents whose detected scopes contain the
/// given modifier kind. An empty subset is reported, not an error.
pub fn subset_eval(
    scopes: &[ScopeLabel],
    golds: &[Emotion],
    preds: &[Emotion],
    kind: ModifierKind,
) -> Result<EvalReport> {
    if scopes.len() != golds.len() {
        return Err(Error::LengthMismatch { left: scopes.len(), right: golds.len() });
    }
    if golds.len() != preds.len() {
        return Err(Error::LengthMismatch { left: golds.len(), right: preds.len() });
    }
    let mut cm = ConfusionMatrix::for_emotions();
    for ((scope, g), p) in scopes.iter().zip(golds).zip(preds) {
        if scope.contains_kind(kind) {
            cm.record(g.index(), p.index());
        }
    }
    Ok(EvalReport::from_confusion(&cm, kind.name()))
}

/// Per-class and macro score differences, `b - a`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTable {
    pub classes: Vec<(String, PrfScores)>,
    pub macro_avg: PrfScores,
}

fn delta(a: PrfScores, b: PrfScores) -> PrfScores {
    PrfScores {
        precision: b.precision - a.precision,
        recall: b.recall - a.recall,
        f1: b.f1 - a.f1,
    }
}

pub fn compare_reports(a: &EvalReport, b: &EvalReport) -> Result<DeltaTable> {
    let names_a: Vec<&str> = a.classes.iter().map(|c| c.name.as_str()).collect();
    let names_b: Vec<&str> = b.classes.iter().map(|c| c.name.as_str()).collect();
    if names_a != names_b {
        return Err(Error::SchemaMismatch(format!(
            "reports class different labels: {names_a:?} vs {names_b:?}"
        )));
    }
    let classes = a
        .classes
        .iter()
        .zip(&b.classes)
        .map(|(ca, cb)| (ca.name.clone(), delta(ca.scores, cb.scores)))
        .collect();
    Ok(DeltaTable { classes, macro_avg: delta(a.macro_avg, b.macro_avg) })
}

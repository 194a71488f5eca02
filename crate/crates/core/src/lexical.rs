//! Interpretable weighted-lexicon classifier.
//!
//! A document is reduced to four count vectors over the six emotions,
//! one per modification context (unmodified, negated, amplified,
//! downtoned): entry `x[m][i]` counts tokens carrying lexicon emotion
//! `i` under modification `m`. The model is a 4-slice stack of 6x6
//! weight matrices; slice `m` maps prior emotion counts to emotion
//! scores, the slices are summed, and argmax predicts.
//!
//! Training is random-restart hill climbing on macro-F1, one slice at a
//! time. Finished slices are frozen; slices not yet scheduled stay
//! zero, so each restart only re-randomizes the active slice.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::document::Document;
use crate::emotion::{Emotion, EMOTION_COUNT};
use crate::lexicon::{EmotionLexicon, ModifierKind};
use crate::scope::ScopeLabel;
use crate::{Error, Result};

/// Modification contexts, in tensor slice order. This is also the
/// optimization schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Modification {
    None = 0,
    Negated = 1,
    Amplified = 2,
    Downtoned = 3,
}

pub const MODIFICATION_COUNT: usize = 4;

impl Modification {
    pub const ALL: [Modification; MODIFICATION_COUNT] = [
        Modification::None,
        Modification::Negated,
        Modification::Amplified,
        Modification::Downtoned,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Modification::None => "no_mod",
            Modification::Negated => "neg",
            Modification::Amplified => "amp",
            Modification::Downtoned => "down",
        }
    }

    pub fn parse(name: &str) -> Option<Modification> {
        Modification::ALL.iter().copied().find(|m| m.name() == name)
    }

    pub fn from_scope(kind: Option<ModifierKind>) -> Modification {
        match kind {
            None => Modification::None,
            Some(ModifierKind::Negation) => Modification::Negated,
            Some(ModifierKind::Amplifier) => Modification::Amplified,
            Some(ModifierKind::Downtoner) => Modification::Downtoned,
        }
    }
}

type Slice = [[f64; EMOTION_COUNT]; EMOTION_COUNT];

/// Emotion counts per modification context. Entries are whole numbers
/// kept as f64 for the score arithmetic.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CountVectors {
    pub x: [[f64; EMOTION_COUNT]; MODIFICATION_COUNT],
}

impl CountVectors {
    pub fn zeros() -> CountVectors {
        CountVectors::default()
    }

    pub fn get(&self, m: Modification, emotion: Emotion) -> f64 {
        self.x[m.index()][emotion.index()]
    }

    pub fn total(&self) -> f64 {
        self.x.iter().flatten().sum()
    }
}

/// Counts emotion-lexicon tokens by modification context. A token with
/// several lexicon emotions counts once per emotion.
pub fn count_vectors(doc: &Document, scope: &ScopeLabel, emotions: &EmotionLexicon) -> CountVectors {
    let mut counts = CountVectors::zeros();
    for (pos, token) in doc.tokens.iter().enumerate() {
        let Some(token_emotions) = emotions.emotions_of(&token.normalized) else {
            continue;
        };
        let m = Modification::from_scope(scope.get(pos)).index();
        for &emotion in token_emotions {
            counts.x[m][emotion.index()] += 1.0;
        }
    }
    counts
}

/// The 4x6x6 weight stack: `slices[m][i][j]` weighs prior emotion `i`
/// under modification `m` toward predicted emotion `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightTensor {
    pub slices: [Slice; MODIFICATION_COUNT],
}

impl WeightTensor {
    pub fn zeros() -> WeightTensor {
        WeightTensor { slices: [[[0.0; EMOTION_COUNT]; EMOTION_COUNT]; MODIFICATION_COUNT] }
    }

    pub fn slice(&self, m: Modification) -> &Slice {
        &self.slices[m.index()]
    }

    pub fn get(&self, m: Modification, prior: Emotion, predicted: Emotion) -> f64 {
        self.slices[m.index()][prior.index()][predicted.index()]
    }

    /// Per-emotion scores: the sum over contexts of the slice-transposed
    /// count products.
    pub fn score(&self, counts: &CountVectors) -> [f64; EMOTION_COUNT] {
        let mut scores = [0.0; EMOTION_COUNT];
        for m in 0..MODIFICATION_COUNT {
            for i in 0..EMOTION_COUNT {
                let c = counts.x[m][i];
                if c == 0.0 {
                    continue;
                }
                for (j, slot) in scores.iter_mut().enumerate() {
                    *slot += self.slices[m][i][j] * c;
                }
            }
        }
        scores
    }

    pub fn predict(&self, counts: &CountVectors) -> Emotion {
        Emotion::argmax(&self.score(counts))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillClimbConfig {
    pub restarts: usize,
    pub patience: usize,
    pub epoch_cap: usize,
    pub seed: u64,
}

impl Default for HillClimbConfig {
    fn default() -> HillClimbConfig {
        HillClimbConfig { restarts: 8, patience: 500, epoch_cap: 5000, seed: 42 }
    }
}

impl HillClimbConfig {
    fn validate(&self) -> Result<()> {
        for (name, v) in
            [("restarts", self.restarts), ("patience", self.patience), ("epoch_cap", self.epoch_cap)]
        {
            if v == 0 {
                return Err(Error::InvalidHyper(alloc::format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}

/// One candidate step in the optimization log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationTrace {
    pub slice: Modification,
    pub restart: usize,
    /// 1-based step within the restart.
    pub epoch: usize,
    /// Objective of the candidate tensor, accepted or not.
    pub objective: f64,
    pub accepted: bool,
    /// Steps since the last accepted improvement, after this one.
    pub since_improvement: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HillClimbOutcome {
    pub tensor: WeightTensor,
    /// Training macro-F1 of the returned tensor.
    pub objective: f64,
    pub trace: Vec<OptimizationTrace>,
    /// Emotions with no training document; their F1 stays 0.
    pub missing_classes: Vec<Emotion>,
}

/// Incremental evaluation state: per-document scores and predictions
/// plus the running confusion tallies the macro-F1 needs.
struct Evaluator<'a> {
    data: &'a [(CountVectors, Emotion)],
    /// Documents with a nonzero count in cell `[m][i]`, with the count.
    touched: Vec<Vec<Vec<(usize, f64)>>>,
    scores: Vec<[f64; EMOTION_COUNT]>,
    preds: Vec<usize>,
    support: [u64; EMOTION_COUNT],
    predicted: [u64; EMOTION_COUNT],
    correct: [u64; EMOTION_COUNT],
}

fn argmax(scores: &[f64; EMOTION_COUNT]) -> usize {
    Emotion::argmax(scores).index()
}

impl<'a> Evaluator<'a> {
    fn new(data: &'a [(CountVectors, Emotion)]) -> Evaluator<'a> {
        let mut touched =
            alloc::vec![alloc::vec![Vec::new(); EMOTION_COUNT]; MODIFICATION_COUNT];
        let mut support = [0u64; EMOTION_COUNT];
        for (d, (counts, label)) in data.iter().enumerate() {
            support[label.index()] += 1;
            for (m, row) in counts.x.iter().enumerate() {
                for (i, &value) in row.iter().enumerate() {
                    if value != 0.0 {
                        touched[m][i].push((d, value));
                    }
                }
            }
        }
        let mut eval = Evaluator {
            data,
            touched,
            scores: alloc::vec![[0.0; EMOTION_COUNT]; data.len()],
            preds: alloc::vec![0; data.len()],
            support,
            predicted: [0; EMOTION_COUNT],
            correct: [0; EMOTION_COUNT],
        };
        eval.recompute(&WeightTensor::zeros());
        eval
    }

    /// Full refresh from a tensor; the baseline between slices.
    fn recompute(&mut self, tensor: &WeightTensor) {
        self.predicted = [0; EMOTION_COUNT];
        self.correct = [0; EMOTION_COUNT];
        for (d, (counts, label)) in self.data.iter().enumerate() {
            self.scores[d] = tensor.score(counts);
            let p = argmax(&self.scores[d]);
            self.preds[d] = p;
            self.predicted[p] += 1;
            if p == label.index() {
                self.correct[p] += 1;
            }
        }
    }

    fn macro_f1(&self) -> f64 {
        let mut sum = 0.0;
        for c in 0..EMOTION_COUNT {
            let tp = self.correct[c];
            let fp = self.predicted[c] - tp;
            let fn_ = self.support[c] - tp;
            sum += crate::eval::prf_from_counts(tp, fp, fn_).f1;
        }
        sum / EMOTION_COUNT as f64
    }

    fn move_pred(&mut self, d: usize, to: usize) {
        let from = self.preds[d];
        if from == to {
            return;
        }
        let label = self.data[d].1.index();
        self.predicted[from] -= 1;
        self.predicted[to] += 1;
        if from == label {
            self.correct[label] -= 1;
        }
        if to == label {
            self.correct[label] += 1;
        }
        self.preds[d] = to;
    }

    /// Applies `delta` at cell `[m][i][j]` to the affected documents and
    /// returns what `revert` needs: `(doc, old score_j, old pred)`.
    fn apply(&mut self, m: usize, i: usize, j: usize, delta: f64) -> Vec<(usize, f64, usize)> {
        let docs = core::mem::take(&mut self.touched[m][i]);
        let mut undo = Vec::with_capacity(docs.len());
        for &(d, count) in &docs {
            undo.push((d, self.scores[d][j], self.preds[d]));
            self.scores[d][j] += delta * count;
            let p = argmax(&self.scores[d]);
            self.move_pred(d, p);
        }
        self.touched[m][i] = docs;
        undo
    }

    /// Exact rollback of an [`apply`]: scores are restored bitwise.
    fn revert(&mut self, j: usize, undo: &[(usize, f64, usize)]) {
        for &(d, old_score, old_pred) in undo {
            self.scores[d][j] = old_score;
            self.move_pred(d, old_pred);
        }
    }
}

const CELLS: usize = EMOTION_COUNT * EMOTION_COUNT;

/// Random-restart hill climbing over the tensor, slice by slice in
/// [`Modification::ALL`] order. Each restart re-randomizes the active
/// slice from the standard normal, then perturbs one uniformly chosen
/// cell per epoch by a standard normal step, keeping strict macro-F1
/// improvements. A restart stops after `patience` consecutive
/// rejections or `epoch_cap` epochs; the best restart wins the slice.
pub fn hill_climb(
    data: &[(CountVectors, Emotion)],
    cfg: &HillClimbConfig,
) -> Result<HillClimbOutcome> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::EmptyTrainingData);
    }
    let mut eval = Evaluator::new(data);
    let missing_classes: Vec<Emotion> =
        Emotion::ALL.into_iter().filter(|e| eval.support[e.index()] == 0).collect();

    let mut tensor = WeightTensor::zeros();
    let mut trace = Vec::new();
    for (slice_idx, slice) in Modification::ALL.into_iter().enumerate() {
        let s = slice.index();
        let mut best: Option<(Slice, f64)> = None;
        for restart in 0..cfg.restarts {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(((slice_idx as u64) << 32) | restart as u64);
            for i in 0..EMOTION_COUNT {
                for j in 0..EMOTION_COUNT {
                    tensor.slices[s][i][j] = StandardNormal.sample(&mut rng);
                }
            }
            eval.recompute(&tensor);
            let mut objective = eval.macro_f1();
            let mut since = 0;
            let mut epoch = 0;
            while epoch < cfg.epoch_cap && since < cfg.patience {
                epoch += 1;
                let cell = rng.random_range(0..CELLS);
                let (i, j) = (cell / EMOTION_COUNT, cell % EMOTION_COUNT);
                let delta: f64 = StandardNormal.sample(&mut rng);
                let old_weight = tensor.slices[s][i][j];
                tensor.slices[s][i][j] += delta;
                let undo = eval.apply(s, i, j, delta);
                let candidate = eval.macro_f1();
                let accepted = candidate > objective;
                if accepted {
                    objective = candidate;
                    since = 0;
                } else {
                    tensor.slices[s][i][j] = old_weight;
                    eval.revert(j, &undo);
                    since += 1;
                }
                trace.push(OptimizationTrace {
                    slice,
                    restart,
                    epoch,
                    objective: candidate,
                    accepted,
                    since_improvement: since,
                });
            }
            if best.is_none() || objective > best.as_ref().unwrap().1 {
                best = Some((tensor.slices[s], objective));
            }
        }
        tensor.slices[s] = best.unwrap().0;
        eval.recompute(&tensor);
    }
    let objective = eval.macro_f1();
    Ok(HillClimbOutcome { tensor, objective, trace, missing_classes })
}

/// Structural readout of a trained tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct InspectionReport {
    /// Rows of the unmodified slice whose diagonal entry strictly
    /// dominates the row.
    pub diagonal_dominant_rows: usize,
    pub mean_abs_no_mod: f64,
    pub mean_abs_neg: f64,
    /// Diagonal ratios `amp[i][i] / no_mod[i][i]`; `None` where the
    /// unmodified diagonal entry is within 1e-9 of zero.
    pub amp_diag_ratio: [Option<f64>; EMOTION_COUNT],
    pub down_diag_ratio: [Option<f64>; EMOTION_COUNT],
}

fn mean_abs(slice: &Slice) -> f64 {
    slice.iter().flatten().map(|w| w.abs()).sum::<f64>() / CELLS as f64
}

fn diag_ratios(num: &Slice, den: &Slice) -> [Option<f64>; EMOTION_COUNT] {
    let mut out = [None; EMOTION_COUNT];
    for (i, slot) in out.iter_mut().enumerate() {
        if den[i][i].abs() > 1e-9 {
            *slot = Some(num[i][i] / den[i][i]);
        }
    }
    out
}

pub fn inspect(tensor: &WeightTensor) -> InspectionReport {
    let no_mod = tensor.slice(Modification::None);
    let dominant = (0..EMOTION_COUNT)
        .filter(|&i| (0..EMOTION_COUNT).all(|j| j == i || no_mod[i][i] > no_mod[i][j]))
        .count();
    InspectionReport {
        diagonal_dominant_rows: dominant,
        mean_abs_no_mod: mean_abs(no_mod),
        mean_abs_neg: mean_abs(tensor.slice(Modification::Negated)),
        amp_diag_ratio: diag_ratios(tensor.slice(Modification::Amplified), no_mod),
        down_diag_ratio: diag_ratios(tensor.slice(Modification::Downtoned), no_mod),
    }
}

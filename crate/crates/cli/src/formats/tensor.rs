//! Weight tensor files: the trained model itself, a flat heatmap TSV for
//! eyeballing the learned structure, the optimization trace, and the
//! inspection summary.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use emoscope_core::emotion::{Emotion, EMOTION_COUNT};
use emoscope_core::lexical::{
    HillClimbConfig, InspectionReport, Modification, OptimizationTrace, WeightTensor,
};

use crate::error::{CliError, CliResult};
use crate::formats::{read_json, write_json, write_text};

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct TensorMeta {
    pub seed: u64,
    pub restarts: usize,
    pub patience: usize,
    pub epoch_cap: usize,
    /// Final training objective (macro F1 on the training set).
    pub objective: f64,
    /// Scope method used to build count vectors.
    pub scopes: String,
    /// Emotions absent from the training data; their columns stay zero.
    pub missing_classes: Vec<String>,
}

impl TensorMeta {
    pub fn new(
        cfg: &HillClimbConfig,
        objective: f64,
        scopes: String,
        missing: &[Emotion],
    ) -> TensorMeta {
        TensorMeta {
            seed: cfg.seed,
            restarts: cfg.restarts,
            patience: cfg.patience,
            epoch_cap: cfg.epoch_cap,
            objective,
            scopes,
            missing_classes: missing.iter().map(|e| e.name().to_string()).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    kind: String,
    emotion_order: Vec<String>,
    slices: BTreeMap<String, Vec<Vec<f64>>>,
    metadata: TensorMeta,
}

const TENSOR_KIND: &str = "weight-tensor";

pub fn write_tensor(path: &Path, tensor: &WeightTensor, meta: &TensorMeta) -> CliResult<()> {
    let mut slices = BTreeMap::new();
    for m in Modification::ALL {
        let grid: Vec<Vec<f64>> = tensor.slices[m.index()].iter().map(|row| row.to_vec()).collect();
        slices.insert(m.name().to_string(), grid);
    }
    write_json(
        path,
        &TensorFile {
            kind: TENSOR_KIND.to_string(),
            emotion_order: Emotion::ALL.iter().map(|e| e.name().to_string()).collect(),
            slices,
            metadata: meta.clone(),
        },
    )
}

pub fn read_tensor(path: &Path) -> CliResult<(WeightTensor, TensorMeta)> {
    let file: TensorFile = read_json(path)?;
    if file.kind != TENSOR_KIND {
        return Err(CliError::Input(format!(
            "{}: expected a `{TENSOR_KIND}` file, found `{}`",
            path.display(),
            file.kind
        )));
    }
    let expected: Vec<String> = Emotion::ALL.iter().map(|e| e.name().to_string()).collect();
    if file.emotion_order != expected {
        return Err(CliError::Input(format!(
            "{}: unexpected emotion order {:?}",
            path.display(),
            file.emotion_order
        )));
    }
    let mut tensor = WeightTensor::zeros();
    for m in Modification::ALL {
        let grid = file.slices.get(m.name()).ok_or_else(|| {
            CliError::Input(format!("{}: missing slice `{}`", path.display(), m.name()))
        })?;
        if grid.len() != EMOTION_COUNT || grid.iter().any(|row| row.len() != EMOTION_COUNT) {
            return Err(CliError::Input(format!(
                "{}: slice `{}` is not {EMOTION_COUNT}x{EMOTION_COUNT}",
                path.display(),
                m.name()
            )));
        }
        for (i, row) in grid.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                tensor.slices[m.index()][i][j] = w;
            }
        }
    }
    Ok((tensor, file.metadata))
}

/// Flat table of all 24 rows: `slice<TAB>prior<TAB>` then one column per
/// predicted emotion, full precision.
pub fn write_heatmap(path: &Path, tensor: &WeightTensor) -> CliResult<()> {
    let mut body = String::from("slice\tprior");
    for e in Emotion::ALL {
        body.push('\t');
        body.push_str(e.name());
    }
    body.push('\n');
    for m in Modification::ALL {
        for prior in Emotion::ALL {
            body.push_str(m.name());
            body.push('\t');
            body.push_str(prior.name());
            for predicted in Emotion::ALL {
                body.push('\t');
                body.push_str(&format!("{}", tensor.get(m, prior, predicted)));
            }
            body.push('\n');
        }
    }
    write_text(path, &body)
}

pub fn write_trace(path: &Path, trace: &[OptimizationTrace]) -> CliResult<()> {
    let mut body = String::from("slice\trestart\tepoch\tobjective\taccepted\tsince_improvement\n");
    for row in trace {
        body.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            row.slice.name(),
            row.restart,
            row.epoch,
            row.objective,
            row.accepted as u8,
            row.since_improvement
        ));
    }
    write_text(path, &body)
}

#[derive(Serialize)]
pub struct InspectionFile {
    pub diagonal_dominant_rows: usize,
    pub diagonal_rows_total: usize,
    pub mean_abs_no_mod: f64,
    pub mean_abs_neg: f64,
    pub amp_diag_ratio: Vec<Option<f64>>,
    pub down_diag_ratio: Vec<Option<f64>>,
}

pub fn write_inspection(path: &Path, report: &InspectionReport) -> CliResult<()> {
    write_json(
        path,
        &InspectionFile {
            diagonal_dominant_rows: report.diagonal_dominant_rows,
            diagonal_rows_total: EMOTION_COUNT,
            mean_abs_no_mod: report.mean_abs_no_mod,
            mean_abs_neg: report.mean_abs_neg,
            amp_diag_ratio: report.amp_diag_ratio.to_vec(),
            down_diag_ratio: report.down_diag_ratio.to_vec(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_tensor() -> WeightTensor {
        let mut t = WeightTensor::zeros();
        for m in 0..4 {
            for i in 0..EMOTION_COUNT {
                for j in 0..EMOTION_COUNT {
                    t.slices[m][i][j] = (m * 100 + i * 10 + j) as f64 * 0.125;
                }
            }
        }
        t
    }

    fn sample_meta() -> TensorMeta {
        TensorMeta::new(&HillClimbConfig::default(), 0.75, "next_n(2)".into(), &[])
    }

    #[test]
    fn tensor_roundtrip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tensor.json");
        let tensor = sample_tensor();
        write_tensor(&path, &tensor, &sample_meta()).unwrap();
        let (back, meta) = read_tensor(&path).unwrap();
        assert_eq!(back, tensor);
        assert_eq!(meta.objective, 0.75);
        assert_eq!(meta.scopes, "next_n(2)");
    }

    #[test]
    fn missing_slice_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tensor.json");
        write_tensor(&path, &sample_tensor(), &sample_meta()).unwrap();
        let body = std::fs::read_to_string(&path).unwrap().replace("\"amp\"", "\"oops\"");
        std::fs::write(&path, body).unwrap();
        let err = read_tensor(&path).unwrap_err();
        assert!(err.to_string().contains("missing slice `amp`"));
    }

    #[test]
    fn heatmap_has_a_row_per_slice_and_prior() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("heatmap.tsv");
        write_heatmap(&path, &sample_tensor()).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = body.lines().collect();
        assert_eq!(lines.len(), 1 + 4 * EMOTION_COUNT);
        assert!(lines[0].starts_with("slice\tprior\tjoy\t"));
        // no_mod slice, joy row, joy column holds W[0][0][0].
        assert!(lines[1].starts_with("no_mod\tjoy\t0\t0.125\t"));
    }
}

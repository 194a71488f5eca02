//! Renders a trained weight tensor for inspection: the flat heatmap
//! table, plus summary statistics on the learned structure.

use emoscope_core::emotion::{Emotion, EMOTION_COUNT};
use emoscope_core::lexical::inspect;

use crate::config::Settings;
use crate::error::CliResult;
use crate::formats::tensor::{read_tensor, write_heatmap, write_inspection};
use crate::runs::RunDir;

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let (tensor, meta) = read_tensor(&settings.require_path("tensor")?)?;
    let report = inspect(&tensor);

    write_heatmap(&run.file("heatmap.tsv"), &tensor)?;
    write_inspection(&run.file("inspection.json"), &report)?;

    println!("tensor trained with seed {} (objective {:.4})", meta.seed, meta.objective);
    println!(
        "diagonal-dominant no_mod rows: {}/{EMOTION_COUNT}",
        report.diagonal_dominant_rows
    );
    println!(
        "mean |weight|: no_mod {:.4}, neg {:.4}",
        report.mean_abs_no_mod, report.mean_abs_neg
    );
    let ratio_line = |name: &str, ratios: &[Option<f64>; EMOTION_COUNT]| {
        let cells: Vec<String> = Emotion::ALL
            .iter()
            .zip(ratios)
            .map(|(e, r)| match r {
                Some(v) => format!("{e}={v:.2}"),
                None => format!("{e}=n/a"),
            })
            .collect();
        println!("{name} diagonal ratio vs no_mod: {}", cells.join(" "));
    };
    ratio_line("amp", &report.amp_diag_ratio);
    ratio_line("down", &report.down_diag_ratio);
    Ok(())
}

use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eval::{evaluate, EvalOptions};
use super::parse_corpus;
use super::train::{fit_pca, train_with_pca, TrainOptions};
use crate::error::Result;
use crate::features::FeatureModel;
use crate::treebank::{is_projective, Sentence, SupertagInventory};

/// Feature models and PCA dimensions to compare. Models without the SD
/// block ignore `k_values` and produce a single row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblationGrid {
    pub configs: Vec<FeatureModel>,
    pub k_values: Vec<usize>,
}

impl AblationGrid {
    pub fn new(configs: &[&str], k_values: &[usize]) -> Result<Self> {
        Ok(AblationGrid {
            configs: configs
                .iter()
                .map(|c| FeatureModel::parse(c))
                .collect::<Result<_>>()?,
            k_values: k_values.to_vec(),
        })
    }

    /// Restricted models over the two top stack words.
    pub fn restricted(k: usize) -> Self {
        Self::new(&["FORM", "POS", "SUPERTAG", "SD"], &[k]).expect("valid preset")
    }

    /// Baseline and its supertag extensions.
    pub fn combined(k: usize) -> Self {
        Self::new(&["BL", "BL+BS", "BL+SD", "BL+BS+SD"], &[k]).expect("valid preset")
    }

    /// SD-only models over several PCA dimensions.
    pub fn ksweep(k_values: &[usize]) -> Self {
        Self::new(&["SD"], k_values).expect("valid preset")
    }

    /// Jobs in output order.
    fn jobs(&self) -> Vec<(FeatureModel, usize)> {
        let mut jobs = Vec::new();
        for config in &self.configs {
            if config.sd {
                jobs.extend(self.k_values.iter().map(|&k| (config.clone(), k)));
            } else {
                jobs.push((config.clone(), 0));
            }
        }
        jobs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub config: String,
    /// 0 for models without the SD block.
    pub k: usize,
    pub uas: f64,
    pub las: f64,
    pub tokens: usize,
    pub exclude_punct: bool,
    pub seed: u64,
    pub captured_variance: Option<f64>,
}

/// Trains and evaluates every grid cell. PCA is fitted once at the largest
/// k and truncated for smaller ones, so all SD rows share components.
pub fn ablation_run(
    train: &[Sentence],
    dev: &[Sentence],
    inventory: Option<&SupertagInventory>,
    grid: &AblationGrid,
    base: &TrainOptions,
    eval: &EvalOptions,
) -> Result<Vec<ResultRow>> {
    let jobs = grid.jobs();
    let max_k = jobs.iter().filter(|(c, _)| c.sd).map(|&(_, k)| k).max();
    let pca = match max_k {
        Some(k) => {
            let projective: Vec<Sentence> =
                train.iter().filter(|s| is_projective(s)).cloned().collect();
            Some(fit_pca(&projective, inventory, base, k)?)
        }
        None => None,
    };
    jobs.into_par_iter()
        .map(|(features, k)| {
            let options = TrainOptions {
                features: features.clone(),
                k,
                ..base.clone()
            };
            let (model, summary) = train_with_pca(train, inventory, &options, pca.as_ref())?;
            let predicted = parse_corpus(&model, dev)?;
            let report = evaluate(dev, &predicted, eval)?;
            log::info!(
                "{} k={}: UAS {:.2} LAS {:.2}",
                features.name(),
                k,
                report.uas,
                report.las
            );
            Ok(ResultRow {
                config: features.name(),
                k,
                uas: report.uas,
                las: report.las,
                tokens: report.tokens,
                exclude_punct: report.exclude_punct,
                seed: base.seed,
                captured_variance: summary.captured_variance,
            })
        })
        .collect()
}

/// Tab-separated results table with a header line.
pub fn format_results(rows: &[ResultRow]) -> String {
    let mut out = String::from("config\tk\tUAS\tLAS\ttokens\tpunct\tseed\tcaptured_variance\n");
    for r in rows {
        let captured = r
            .captured_variance
            .map_or_else(|| "-".to_string(), |c| format!("{c:.6}"));
        writeln!(
            out,
            "{}\t{}\t{:.4}\t{:.4}\t{}\t{}\t{}\t{}",
            r.config,
            r.k,
            r.uas,
            r.las,
            r.tokens,
            if r.exclude_punct {
                "excluded"
            } else {
                "included"
            },
            r.seed,
            captured
        )
        .expect("writing to a String");
    }
    out
}

use serde::{Deserialize, Serialize};

use super::ParserModel;
use crate::classifier::{self, ActionSpace, Hyperparameters, Instance, TrainingReport};
use crate::error::{Error, Result};
use crate::features::{project_sentence, FeatureDictionary, FeatureExtractor, FeatureModel};
use crate::pca::{self, EigenSolver, PcaModel, PcaOptions, PcaSampling};
use crate::seed::derive_seed;
use crate::transition::derive_sequence;
use crate::treebank::{is_projective, Sentence, SupertagInventory};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainOptions {
    pub features: FeatureModel,
    /// PCA dimension for the SD block.
    pub k: usize,
    pub center: bool,
    pub solver: EigenSolver,
    pub pca_sampling: PcaSampling,
    /// Fraction of PCA training vectors to keep.
    pub pca_fraction: f64,
    /// Classifier settings; its seed is derived from `seed`.
    pub hyper: Hyperparameters,
    pub seed: u64,
}

impl TrainOptions {
    pub fn new(features: FeatureModel) -> Self {
        TrainOptions {
            features,
            k: 64,
            center: true,
            solver: EigenSolver::Dense,
            pca_sampling: PcaSampling::Tokens,
            pca_fraction: 1.0,
            hyper: Hyperparameters::default(),
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrainSummary {
    pub sentences: usize,
    /// 1-based numbers of non-projective sentences left out of training.
    pub filtered: Vec<usize>,
    pub instances: usize,
    pub features: usize,
    pub actions: usize,
    pub report: TrainingReport,
    pub captured_variance: Option<f64>,
}

fn check_annotations(sentences: &[Sentence], features: &FeatureModel) -> Result<()> {
    let needs_best = features.template_sets.iter().any(|s| s.uses_supertags());
    for (i, s) in sentences.iter().enumerate() {
        for (j, t) in s.tokens().iter().enumerate() {
            if (needs_best && t.best_supertag.is_none())
                || (features.sd && t.supertag_dist.is_none())
            {
                return Err(Error::Config(format!(
                    "feature model {} needs supertag annotations, but token {} of sentence {} has none",
                    features.name(),
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// Fits the PCA model used by the SD block on the supertag vectors of
/// `sentences`.
pub fn fit_pca(
    sentences: &[Sentence],
    inventory: Option<&SupertagInventory>,
    options: &TrainOptions,
    k: usize,
) -> Result<PcaModel> {
    let n = match inventory {
        Some(inv) => inv.len(),
        None => sentences
            .iter()
            .flat_map(|s| s.tokens())
            .find_map(|t| t.supertag_dist.as_ref().map(|d| d.dim()))
            .ok_or_else(|| Error::Config("no supertag distributions to fit PCA on".into()))?,
    };
    let vectors = pca::training_vectors(
        sentences,
        options.pca_sampling,
        options.pca_fraction,
        derive_seed(options.seed, "pca-sample"),
    );
    let pca_options = PcaOptions {
        k,
        center: options.center,
        seed: derive_seed(options.seed, "pca"),
        solver: options.solver,
    };
    pca::fit(vectors.iter().map(Vec::as_slice), n, &pca_options)
}

/// Trains a parser: filters non-projective sentences, fits PCA when the SD
/// block is enabled, generates oracle instances, builds the feature
/// dictionary and trains the classifier.
pub fn train_pipeline(
    sentences: &[Sentence],
    inventory: Option<&SupertagInventory>,
    options: &TrainOptions,
) -> Result<(ParserModel, TrainSummary)> {
    train_with_pca(sentences, inventory, options, None)
}

/// As [`train_pipeline`], reusing `pca` (truncated to `options.k`) instead
/// of fitting a new one. A `pca` with fewer than `options.k` components is
/// an error.
pub fn train_with_pca(
    sentences: &[Sentence],
    inventory: Option<&SupertagInventory>,
    options: &TrainOptions,
    pca: Option<&PcaModel>,
) -> Result<(ParserModel, TrainSummary)> {
    let features = &options.features;
    check_annotations(sentences, features)?;

    let mut summary = TrainSummary {
        sentences: sentences.len(),
        ..TrainSummary::default()
    };
    let mut kept = Vec::with_capacity(sentences.len());
    for (i, s) in sentences.iter().enumerate() {
        if !s.has_gold_tree() {
            return Err(Error::Tree {
                sentence: i + 1,
                message: "training sentence has no gold tree".into(),
            });
        }
        if is_projective(s) {
            kept.push(s);
        } else {
            log::warn!(
                "sentence {} is non-projective; excluded from training",
                i + 1
            );
            summary.filtered.push(i + 1);
        }
    }
    log::info!(
        "{} of {} training sentences filtered as non-projective",
        summary.filtered.len(),
        sentences.len()
    );
    if kept.is_empty() {
        return Err(Error::Training(
            "every training sentence was filtered".into(),
        ));
    }
    let kept_owned: Vec<Sentence>;
    let kept_slice: &[Sentence] = if summary.filtered.is_empty() {
        sentences
    } else {
        kept_owned = kept.iter().map(|s| (*s).clone()).collect();
        &kept_owned
    };

    let pca = if features.sd {
        let model = match pca {
            Some(p) if p.k() == options.k => p.clone(),
            Some(p) if p.k() > options.k => p.truncate(options.k)?,
            Some(p) => {
                return Err(Error::Config(format!(
                    "PCA model has {} components but k = {}",
                    p.k(),
                    options.k
                )))
            }
            None => fit_pca(kept_slice, inventory, options, options.k)?,
        };
        if let Some(inv) = inventory {
            if model.n() != inv.len() {
                return Err(Error::Dimension {
                    expected: inv.len(),
                    actual: model.n(),
                });
            }
        }
        summary.captured_variance = Some(model.captured_variance());
        Some(model)
    } else {
        None
    };

    let extractor = FeatureExtractor::new(features.clone(), pca.as_ref().map_or(0, |p| p.k()))?;
    let mut dictionary = FeatureDictionary::new();
    let mut vectors = Vec::new();
    let mut golds = Vec::new();
    for sentence in kept_slice {
        let projections = match &pca {
            Some(p) => project_sentence(sentence, p)?,
            None => Vec::new(),
        };
        for (config, transition) in derive_sequence(sentence)? {
            vectors.push(extractor.vectorize_mut(&config, sentence, &projections, &mut dictionary));
            golds.push(transition);
        }
    }
    dictionary.freeze();

    let actions = ActionSpace::from_transitions(&golds);
    let instances: Vec<Instance> = vectors
        .into_iter()
        .zip(&golds)
        .map(|(features, t)| Instance {
            features,
            gold: actions
                .id(t)
                .expect("action space built from these transitions"),
        })
        .collect();

    let hyper = Hyperparameters {
        seed: derive_seed(options.seed, "classifier"),
        ..options.hyper
    };
    let (classifier, report) = classifier::train(
        &instances,
        actions,
        dictionary.len(),
        extractor.dense_len(),
        &hyper,
    )?;

    summary.instances = instances.len();
    summary.features = dictionary.len();
    summary.actions = classifier.actions().len();
    summary.report = report;

    let model = ParserModel::new(
        features.clone(),
        inventory.cloned(),
        pca,
        dictionary,
        classifier,
    )?;
    Ok((model, summary))
}

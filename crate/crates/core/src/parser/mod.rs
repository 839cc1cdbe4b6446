//! Training driver, greedy parser, attachment scoring and ablations.

mod ablation;
mod eval;
mod model;
mod train;

pub use ablation::{ablation_run, format_results, AblationGrid, ResultRow};
pub use eval::{evaluate, evaluate_sentences, EvalOptions, EvalReport, DEFAULT_PUNCT_TAGS};
pub use model::{ParserModel, MODEL_VERSION};
pub use train::{fit_pca, train_pipeline, train_with_pca, TrainOptions, TrainSummary};

use rayon::prelude::*;

use crate::classifier::predict_masked;
use crate::error::{Error, Result};
use crate::features::project_sentence;
use crate::transition::{Configuration, Transition};
use crate::treebank::{Arc, Sentence};

/// Predicted arcs plus the transition sequence that built them.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseTrace {
    pub arcs: Vec<Arc>,
    pub transitions: Vec<Transition>,
}

/// Greedily parses one sentence, returning its transition trace.
pub fn parse_sentence_traced(model: &ParserModel, sentence: &Sentence) -> Result<ParseTrace> {
    let extractor = model.extractor();
    let projections = match model.pca() {
        Some(pca) if extractor.model().sd => project_sentence(sentence, pca)?,
        _ => Vec::new(),
    };
    let classifier = model.classifier();
    let mut config = Configuration::initial(sentence)?;
    let mut transitions = Vec::with_capacity(2 * sentence.len());
    while !config.is_terminal() {
        let fv = extractor.vectorize(&config, sentence, &projections, model.dictionary());
        let scores = classifier.score(&fv)?;
        let action =
            predict_masked(classifier.actions(), &scores, config.legal()).ok_or_else(|| {
                Error::Model(format!(
                    "no legal action in the model's action space at stack {:?}",
                    config.stack()
                ))
            })?;
        let t = classifier.actions().get(action);
        config.apply_in_place(t)?;
        transitions.push(t.clone());
    }
    Ok(ParseTrace {
        arcs: config.arcs(),
        transitions,
    })
}

/// Greedily parses one sentence.
pub fn parse_sentence(model: &ParserModel, sentence: &Sentence) -> Result<Vec<Arc>> {
    parse_sentence_traced(model, sentence).map(|trace| trace.arcs)
}

/// Parses sentences in parallel; output order matches input order.
pub fn parse_corpus(model: &ParserModel, sentences: &[Sentence]) -> Result<Vec<Vec<Arc>>> {
    sentences
        .par_iter()
        .map(|s| parse_sentence(model, s))
        .collect()
}

//! Multiclass linear classifier over labeled transitions.
//!
//! Weights form a table with one row per sparse feature id followed by one
//! row per dense position, and one column per action. Dense values enter
//! the score multiplied by a single global scale factor.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::transition::{KindSet, Transition};

/// Ordered set of labeled transitions. Shift always has id 0, followed by
/// LeftArc and then RightArc transitions sorted by label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Transition>", into = "Vec<Transition>")]
pub struct ActionSpace {
    actions: Vec<Transition>,
    ids: HashMap<Transition, u32>,
}

impl ActionSpace {
    pub fn from_transitions<'a>(transitions: impl IntoIterator<Item = &'a Transition>) -> Self {
        let mut set: BTreeSet<Transition> = transitions.into_iter().cloned().collect();
        set.insert(Transition::Shift);
        set.into_iter().collect::<Vec<_>>().into()
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn id(&self, t: &Transition) -> Option<u32> {
        self.ids.get(t).copied()
    }

    pub fn get(&self, id: u32) -> &Transition {
        &self.actions[id as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Transition> {
        self.actions.iter()
    }
}

impl From<Vec<Transition>> for ActionSpace {
    fn from(actions: Vec<Transition>) -> Self {
        let ids = actions
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        ActionSpace { actions, ids }
    }
}

impl From<ActionSpace> for Vec<Transition> {
    fn from(space: ActionSpace) -> Self {
        space.actions
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trainer {
    /// Averaged multiclass perceptron.
    #[default]
    Perceptron,
    /// Multiclass hinge loss with L2 regularization, Pegasos-style SGD.
    HingeSgd,
}

impl std::str::FromStr for Trainer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perceptron" => Ok(Trainer::Perceptron),
            "hinge-sgd" | "svm" => Ok(Trainer::HingeSgd),
            _ => Err(Error::Config(format!(
                "unknown trainer '{s}' (expected perceptron or hinge-sgd)"
            ))),
        }
    }
}

impl std::fmt::Display for Trainer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Trainer::Perceptron => "perceptron",
            Trainer::HingeSgd => "hinge-sgd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    pub trainer: Trainer,
    pub epochs: usize,
    /// L2 strength for the hinge trainer; unused by the perceptron.
    pub regularization: f64,
    pub seed: u64,
    pub dense_scale: f64,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            trainer: Trainer::Perceptron,
            epochs: 10,
            regularization: 1e-4,
            seed: 1,
            dense_scale: 1.0,
        }
    }
}

/// A training example: feature vector plus gold action id.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub features: FeatureVector,
    pub gold: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainingReport {
    /// Online accuracy per epoch.
    pub epoch_accuracy: Vec<f64>,
    /// Accuracy of the final model on the training instances.
    pub final_accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    actions: ActionSpace,
    sparse_rows: usize,
    dense_rows: usize,
    weights: Vec<f32>,
    dense_scale: f64,
    hyper: Hyperparameters,
}

impl LinearModel {
    /// Model with all-zero weights.
    pub fn zeros(
        actions: ActionSpace,
        sparse_rows: usize,
        dense_rows: usize,
        dense_scale: f64,
    ) -> Self {
        let width = actions.len();
        LinearModel {
            weights: vec![0.0; (sparse_rows + dense_rows) * width],
            actions,
            sparse_rows,
            dense_rows,
            dense_scale,
            hyper: Hyperparameters {
                dense_scale,
                ..Hyperparameters::default()
            },
        }
    }

    pub fn actions(&self) -> &ActionSpace {
        &self.actions
    }

    pub fn sparse_rows(&self) -> usize {
        self.sparse_rows
    }

    pub fn dense_rows(&self) -> usize {
        self.dense_rows
    }

    pub fn dense_scale(&self) -> f64 {
        self.dense_scale
    }

    pub fn set_dense_scale(&mut self, scale: f64) {
        self.dense_scale = scale;
    }

    pub fn hyperparameters(&self) -> &Hyperparameters {
        &self.hyper
    }

    pub fn weights(&self) -> &[f32] {
        &self.weights
    }

    /// Sets the weight of `(row, action)`; dense rows follow the sparse rows.
    pub fn set_weight(&mut self, row: usize, action: u32, value: f32) {
        let width = self.actions.len();
        self.weights[row * width + action as usize] = value;
    }

    fn row(&self, row: usize) -> &[f32] {
        let width = self.actions.len();
        &self.weights[row * width..(row + 1) * width]
    }

    /// Per-action scores: sum of active sparse rows plus the scaled dense
    /// contribution. There is no implicit bias.
    pub fn score(&self, fv: &FeatureVector) -> Result<Vec<f64>> {
        if fv.dense.len() != self.dense_rows {
            return Err(Error::Dimension {
                expected: self.dense_rows,
                actual: fv.dense.len(),
            });
        }
        let mut scores = vec![0.0; self.actions.len()];
        for &id in &fv.sparse {
            if (id as usize) < self.sparse_rows {
                for (s, &w) in scores.iter_mut().zip(self.row(id as usize)) {
                    *s += w as f64;
                }
            }
        }
        for (j, &x) in fv.dense.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let x = self.dense_scale * x;
            for (s, &w) in scores.iter_mut().zip(self.row(self.sparse_rows + j)) {
                *s += x * w as f64;
            }
        }
        Ok(scores)
    }

    /// Highest-scoring action whose kind is legal; ties go to the lowest id.
    pub fn predict_legal(&self, scores: &[f64], legal: KindSet) -> Option<u32> {
        predict_masked(&self.actions, scores, legal)
    }
}

pub fn predict_masked(actions: &ActionSpace, scores: &[f64], legal: KindSet) -> Option<u32> {
    let mut best: Option<(u32, f64)> = None;
    for (id, t) in actions.iter().enumerate() {
        if !legal.contains(t.kind()) {
            continue;
        }
        let s = scores[id];
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((id as u32, s));
        }
    }
    best.map(|(id, _)| id)
}

fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Dense-accumulation weight table used during training.
struct Table {
    width: usize,
    sparse_rows: usize,
    dense_scale: f64,
    w: Vec<f64>,
}

impl Table {
    fn scores(&self, fv: &FeatureVector, scale: f64, out: &mut [f64]) {
        out.iter_mut().for_each(|s| *s = 0.0);
        for &id in &fv.sparse {
            let row = &self.w[id as usize * self.width..(id as usize + 1) * self.width];
            for (s, w) in out.iter_mut().zip(row) {
                *s += w;
            }
        }
        for (j, &x) in fv.dense.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let x = self.dense_scale * x;
            let r = self.sparse_rows + j;
            let row = &self.w[r * self.width..(r + 1) * self.width];
            for (s, w) in out.iter_mut().zip(row) {
                *s += x * w;
            }
        }
        if scale != 1.0 {
            out.iter_mut().for_each(|s| *s *= scale);
        }
    }

    /// Adds `delta * x` to column `action` of every active row of `fv`,
    /// mirroring the change into `shadow` scaled by `shadow_factor`.
    fn update(
        &mut self,
        fv: &FeatureVector,
        action: usize,
        delta: f64,
        shadow: Option<(&mut [f64], f64)>,
    ) {
        let width = self.width;
        let (shadow, factor) = match shadow {
            Some((s, f)) => (Some(s), f),
            None => (None, 0.0),
        };
        let mut shadow = shadow;
        for &id in &fv.sparse {
            let idx = id as usize * width + action;
            self.w[idx] += delta;
            if let Some(s) = shadow.as_deref_mut() {
                s[idx] += factor * delta;
            }
        }
        for (j, &x) in fv.dense.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let v = delta * self.dense_scale * x;
            let idx = (self.sparse_rows + j) * width + action;
            self.w[idx] += v;
            if let Some(s) = shadow.as_deref_mut() {
                s[idx] += factor * v;
            }
        }
    }
}

/// Trains a linear model on `instances`. `sparse_rows` is the feature
/// dictionary size and `dense_rows` the dense block length.
pub fn train(
    instances: &[Instance],
    actions: ActionSpace,
    sparse_rows: usize,
    dense_rows: usize,
    hyper: &Hyperparameters,
) -> Result<(LinearModel, TrainingReport)> {
    if instances.is_empty() {
        return Err(Error::Training("no training instances".into()));
    }
    for (i, inst) in instances.iter().enumerate() {
        if inst.gold as usize >= actions.len() {
            return Err(Error::Training(format!(
                "instance {i}: unknown gold action {}",
                inst.gold
            )));
        }
        if inst.features.dense.len() != dense_rows {
            return Err(Error::Dimension {
                expected: dense_rows,
                actual: inst.features.dense.len(),
            });
        }
        if let Some(&id) = inst.features.sparse.last() {
            if id as usize >= sparse_rows {
                return Err(Error::Training(format!(
                    "instance {i}: feature id {id} outside dictionary"
                )));
            }
        }
    }

    let width = actions.len();
    let rows = sparse_rows + dense_rows;
    let mut table = Table {
        width,
        sparse_rows,
        dense_scale: hyper.dense_scale,
        w: vec![0.0; rows * width],
    };
    let mut order: Vec<usize> = (0..instances.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(hyper.seed);
    let mut scores = vec![0.0; width];
    let mut report = TrainingReport::default();

    let final_weights = match hyper.trainer {
        Trainer::Perceptron => {
            // Averaging via the accumulated-update trick: avg = w - u / c.
            let mut accumulated = vec![0.0; rows * width];
            let mut step = 1.0;
            for epoch in 0..hyper.epochs {
                order.shuffle(&mut rng);
                let mut correct = 0;
                for &i in &order {
                    let inst = &instances[i];
                    table.scores(&inst.features, 1.0, &mut scores);
                    let predicted = argmax(&scores);
                    if predicted == inst.gold as usize {
                        correct += 1;
                    } else {
                        table.update(
                            &inst.features,
                            inst.gold as usize,
                            1.0,
                            Some((&mut accumulated, step)),
                        );
                        table.update(
                            &inst.features,
                            predicted,
                            -1.0,
                            Some((&mut accumulated, step)),
                        );
                    }
                    step += 1.0;
                }
                let accuracy = correct as f64 / instances.len() as f64;
                log::info!("epoch {}: training accuracy {:.4}", epoch + 1, accuracy);
                report.epoch_accuracy.push(accuracy);
            }
            table
                .w
                .iter()
                .zip(&accumulated)
                .map(|(w, u)| w - u / step)
                .collect::<Vec<f64>>()
        }
        Trainer::HingeSgd => {
            // Weights are kept as scale * w so that the L2 shrinkage is O(1).
            let lambda = hyper.regularization.max(1e-12);
            let mut scale = 1.0;
            let mut t = 0.0;
            for epoch in 0..hyper.epochs {
                order.shuffle(&mut rng);
                let mut correct = 0;
                for &i in &order {
                    let inst = &instances[i];
                    t += 1.0;
                    let eta = 1.0 / (lambda * (t + 1.0 / lambda));
                    table.scores(&inst.features, scale, &mut scores);
                    let gold = inst.gold as usize;
                    if argmax(&scores) == gold {
                        correct += 1;
                    }
                    let rival = (0..width).filter(|&a| a != gold).max_by(|&a, &b| {
                        scores[a].partial_cmp(&scores[b]).unwrap().then(b.cmp(&a))
                    });
                    scale *= 1.0 - eta * lambda;
                    if let Some(rival) = rival {
                        if scores[gold] - scores[rival] < 1.0 {
                            table.update(&inst.features, gold, eta / scale, None);
                            table.update(&inst.features, rival, -eta / scale, None);
                        }
                    }
                    if scale < 1e-9 {
                        table.w.iter_mut().for_each(|w| *w *= scale);
                        scale = 1.0;
                    }
                }
                let accuracy = correct as f64 / instances.len() as f64;
                log::info!("epoch {}: training accuracy {:.4}", epoch + 1, accuracy);
                report.epoch_accuracy.push(accuracy);
            }
            table.w.iter().map(|w| w * scale).collect()
        }
    };

    let model = LinearModel {
        actions,
        sparse_rows,
        dense_rows,
        weights: final_weights.into_iter().map(|w| w as f32).collect(),
        dense_scale: hyper.dense_scale,
        hyper: *hyper,
    };

    let correct = instances
        .iter()
        .filter(|inst| {
            let scores = model.score(&inst.features).expect("dimensions checked");
            argmax(&scores) == inst.gold as usize
        })
        .count();
    report.final_accuracy = correct as f64 / instances.len() as f64;
    Ok((model, report))
}

//! Greedy arc-standard dependency parsing with supertag features.
//!
//! The crate covers CoNLL treebank I/O, the transition system and its static
//! oracle, symbolic and supertag feature templates, PCA over supertag
//! distributions, a linear multiclass classifier, and the training, parsing
//! and evaluation pipeline.

pub mod classifier;
pub mod corpus;
pub mod error;
pub mod features;
pub mod parser;
pub mod pca;
pub mod seed;
pub mod transition;
pub mod treebank;

pub use error::{Error, Result};

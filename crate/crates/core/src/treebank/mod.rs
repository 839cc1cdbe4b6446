//! Sentences, gold dependency trees and supertag annotations.
//!
//! Tokens are addressed with 1-based indices; index 0 is the artificial
//! root. A sentence either carries a complete gold tree (every token has a
//! head) or no gold annotation at all (raw parser input).

mod conll;
mod projectivity;
mod supertags;
mod synth;

pub use conll::{emit_conll, parse_conll};
pub use projectivity::is_projective;
pub use supertags::{
    attach_supertags, emit_supertag_file, parse_supertag_file, SupertagAnnotation,
    SupertagDistribution, SupertagInventory,
};
pub use synth::{signature_tag_name, synth_supertags, SynthSupertags};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single token with its CoNLL-X columns and optional annotations.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub form: String,
    pub lemma: String,
    pub cpos: String,
    pub pos: String,
    pub feats: String,
    /// Gold head, 0 is the artificial root.
    pub head: Option<usize>,
    pub deprel: Option<String>,
    pub phead: String,
    pub pdeprel: String,
    pub pred_head: Option<usize>,
    pub pred_deprel: Option<String>,
    pub best_supertag: Option<String>,
    pub supertag_dist: Option<SupertagDistribution>,
}

impl Token {
    /// Token with form and POS; the remaining columns are `_`.
    pub fn new(form: impl Into<String>, pos: impl Into<String>) -> Self {
        let pos = pos.into();
        Token {
            form: form.into(),
            lemma: "_".into(),
            cpos: pos.clone(),
            pos,
            feats: "_".into(),
            head: None,
            deprel: None,
            phead: "_".into(),
            pdeprel: "_".into(),
            pred_head: None,
            pred_deprel: None,
            best_supertag: None,
            supertag_dist: None,
        }
    }

    pub fn with_head(mut self, head: usize, deprel: impl Into<String>) -> Self {
        self.head = Some(head);
        self.deprel = Some(deprel.into());
        self
    }
}

/// Dependency arc between two token indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub head: usize,
    pub dependent: usize,
    pub label: String,
}

impl Arc {
    pub fn new(head: usize, dependent: usize, label: impl Into<String>) -> Self {
        Arc {
            head,
            dependent,
            label: label.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    tokens: Vec<Token>,
}

impl Sentence {
    /// Builds a sentence, validating the gold tree when one is present.
    pub fn new(tokens: Vec<Token>) -> Result<Self> {
        let sentence = Sentence { tokens };
        sentence.validate_tree().map_err(|message| Error::Tree {
            sentence: 1,
            message,
        })?;
        Ok(sentence)
    }

    pub(crate) fn new_numbered(tokens: Vec<Token>, number: usize) -> Result<Self> {
        let sentence = Sentence { tokens };
        sentence.validate_tree().map_err(|message| Error::Tree {
            sentence: number,
            message,
        })?;
        Ok(sentence)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<Token> {
        self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token at a 1-based index. Index 0 (the root) has no token.
    pub fn token(&self, index: usize) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn has_gold_tree(&self) -> bool {
        !self.tokens.is_empty() && self.tokens.iter().all(|t| t.head.is_some())
    }

    /// Gold arcs in dependent order. Empty for unannotated sentences.
    pub fn gold_arcs(&self) -> Vec<Arc> {
        self.tokens
            .iter()
            .enumerate()
            .filter_map(|(i, t)| {
                t.head
                    .map(|h| Arc::new(h, i + 1, t.deprel.clone().unwrap_or_else(|| "_".into())))
            })
            .collect()
    }

    /// Gold heads indexed by token position; entry 0 is unused.
    pub(crate) fn gold_heads(&self) -> Option<Vec<usize>> {
        let mut heads = vec![0; self.tokens.len() + 1];
        for (i, t) in self.tokens.iter().enumerate() {
            heads[i + 1] = t.head?;
        }
        Some(heads)
    }

    /// Replaces the predicted head and relation of every token.
    pub fn set_predicted(&mut self, arcs: &[Arc]) -> Result<()> {
        for token in &mut self.tokens {
            token.pred_head = None;
            token.pred_deprel = None;
        }
        for arc in arcs {
            let n = self.tokens.len();
            if arc.dependent == 0 || arc.dependent > n || arc.head > n {
                return Err(Error::Alignment {
                    sentence: 1,
                    message: format!("arc {}->{} out of range", arc.head, arc.dependent),
                });
            }
            let token = &mut self.tokens[arc.dependent - 1];
            token.pred_head = Some(arc.head);
            token.pred_deprel = Some(arc.label.clone());
        }
        Ok(())
    }

    pub(crate) fn tokens_mut(&mut self) -> &mut [Token] {
        &mut self.tokens
    }

    fn validate_tree(&self) -> std::result::Result<(), String> {
        let n = self.tokens.len();
        let annotated = self.tokens.iter().filter(|t| t.head.is_some()).count();
        if annotated == 0 {
            return Ok(());
        }
        if annotated != n {
            return Err(format!("{} of {} tokens lack a head", n - annotated, n));
        }
        let heads = self.gold_heads().expect("all heads present");
        for d in 1..=n {
            let h = heads[d];
            if h > n {
                return Err(format!("token {d}: head {h} out of range 0..={n}"));
            }
            if h == d {
                return Err(format!("token {d}: self-loop"));
            }
        }
        let roots = (1..=n).filter(|&d| heads[d] == 0).count();
        if roots != 1 {
            return Err(format!(
                "expected exactly one root dependent, found {roots}"
            ));
        }
        // Every token must reach the root within n steps.
        for d in 1..=n {
            let mut current = d;
            let mut steps = 0;
            while current != 0 {
                current = heads[current];
                steps += 1;
                if steps > n {
                    return Err(format!("cycle through token {d}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(heads: &[usize]) -> Result<Sentence> {
        Sentence::new(
            heads
                .iter()
                .enumerate()
                .map(|(i, &h)| Token::new(format!("w{}", i + 1), "X").with_head(h, "dep"))
                .collect(),
        )
    }

    #[test]
    fn accepts_valid_tree() {
        let s = sentence(&[2, 0, 2]).unwrap();
        assert!(s.has_gold_tree());
        assert_eq!(s.gold_arcs()[0], Arc::new(2, 1, "dep"));
    }

    #[test]
    fn rejects_self_loop_cycle_and_range() {
        assert!(sentence(&[1, 0]).is_err());
        assert!(sentence(&[2, 1, 0]).is_err());
        assert!(sentence(&[0, 5]).is_err());
    }

    #[test]
    fn rejects_multiple_roots() {
        assert!(sentence(&[0, 0]).is_err());
    }

    #[test]
    fn rejects_partial_annotation() {
        let tokens = vec![
            Token::new("a", "X").with_head(0, "root"),
            Token::new("b", "X"),
        ];
        assert!(Sentence::new(tokens).is_err());
    }

    #[test]
    fn unannotated_sentence_is_valid() {
        let s = Sentence::new(vec![Token::new("a", "X"), Token::new("b", "Y")]).unwrap();
        assert!(!s.has_gold_tree());
        assert!(s.gold_arcs().is_empty());
    }
}

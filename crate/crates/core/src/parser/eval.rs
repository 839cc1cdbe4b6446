use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::treebank::{Arc, Sentence};

/// Penn Treebank punctuation tags.
pub const DEFAULT_PUNCT_TAGS: &[&str] = &[".", ",", ":", "``", "''", "-LRB-", "-RRB-", "#", "$"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub exclude_punct: bool,
    /// Gold POS tags treated as punctuation when `exclude_punct` is set.
    pub punct_tags: Vec<String>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            exclude_punct: false,
            punct_tags: DEFAULT_PUNCT_TAGS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl EvalOptions {
    pub fn excluding_punct() -> Self {
        EvalOptions {
            exclude_punct: true,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    /// Percentages in [0, 100].
    pub uas: f64,
    pub las: f64,
    pub tokens: usize,
    pub sentences: usize,
    pub exclude_punct: bool,
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "UAS\t{:.2}", self.uas)?;
        writeln!(f, "LAS\t{:.2}", self.las)?;
        writeln!(f, "tokens\t{}", self.tokens)?;
        writeln!(f, "sentences\t{}", self.sentences)?;
        write!(
            f,
            "punctuation\t{}",
            if self.exclude_punct {
                "excluded"
            } else {
                "included"
            }
        )
    }
}

/// Scores predicted arcs against the gold trees of `gold`. `predicted[i]`
/// holds the arcs for sentence `i`; tokens without a predicted head count
/// as wrong.
pub fn evaluate(
    gold: &[Sentence],
    predicted: &[Vec<Arc>],
    opts: &EvalOptions,
) -> Result<EvalReport> {
    if gold.len() != predicted.len() {
        return Err(Error::Alignment {
            sentence: gold.len().min(predicted.len()) + 1,
            message: format!(
                "{} gold sentences but {} parsed",
                gold.len(),
                predicted.len()
            ),
        });
    }
    let punct: HashSet<&str> = opts.punct_tags.iter().map(String::as_str).collect();
    let mut total = 0usize;
    let mut unlabeled = 0usize;
    let mut labeled = 0usize;
    for (i, (sentence, arcs)) in gold.iter().zip(predicted).enumerate() {
        if !sentence.has_gold_tree() {
            return Err(Error::Tree {
                sentence: i + 1,
                message: "gold sentence has no tree".into(),
            });
        }
        let mut system: Vec<Option<&Arc>> = vec![None; sentence.len() + 1];
        for arc in arcs {
            if arc.dependent == 0 || arc.dependent > sentence.len() {
                return Err(Error::Alignment {
                    sentence: i + 1,
                    message: format!("arc dependent {} is out of range", arc.dependent),
                });
            }
            system[arc.dependent] = Some(arc);
        }
        for (j, token) in sentence.tokens().iter().enumerate() {
            if opts.exclude_punct && punct.contains(token.pos.as_str()) {
                continue;
            }
            total += 1;
            if let Some(arc) = system[j + 1] {
                if Some(arc.head) == token.head {
                    unlabeled += 1;
                    if token.deprel.as_deref() == Some(arc.label.as_str()) {
                        labeled += 1;
                    }
                }
            }
        }
    }
    let pct = |c: usize| {
        if total == 0 {
            0.0
        } else {
            100.0 * c as f64 / total as f64
        }
    };
    Ok(EvalReport {
        uas: pct(unlabeled),
        las: pct(labeled),
        tokens: total,
        sentences: gold.len(),
        exclude_punct: opts.exclude_punct,
    })
}

/// Scores a system-annotated corpus against a gold one. Both must have the
/// same sentences and tokens; the system's HEAD and DEPREL columns are used.
pub fn evaluate_sentences(
    gold: &[Sentence],
    system: &[Sentence],
    opts: &EvalOptions,
) -> Result<EvalReport> {
    if gold.len() != system.len() {
        return Err(Error::Alignment {
            sentence: gold.len().min(system.len()) + 1,
            message: format!(
                "{} gold sentences but {} system sentences",
                gold.len(),
                system.len()
            ),
        });
    }
    let mut predicted = Vec::with_capacity(system.len());
    for (i, (g, s)) in gold.iter().zip(system).enumerate() {
        if g.len() != s.len() {
            return Err(Error::Alignment {
                sentence: i + 1,
                message: format!("gold has {} tokens, system has {}", g.len(), s.len()),
            });
        }
        for (j, (gt, st)) in g.tokens().iter().zip(s.tokens()).enumerate() {
            if gt.form != st.form {
                return Err(Error::Alignment {
                    sentence: i + 1,
                    message: format!(
                        "token {} is '{}' in gold but '{}' in system",
                        j + 1,
                        gt.form,
                        st.form
                    ),
                });
            }
        }
        predicted.push(s.gold_arcs());
    }
    evaluate(gold, &predicted, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::Token;

    fn sentence(heads: &[(usize, &str, &str)]) -> Sentence {
        Sentence::new(
            heads
                .iter()
                .enumerate()
                .map(|(i, &(h, l, pos))| Token::new(format!("w{i}"), pos).with_head(h, l))
                .collect(),
        )
        .unwrap()
    }

    fn arc(head: usize, dependent: usize, label: &str) -> Arc {
        Arc {
            head,
            dependent,
            label: label.to_string(),
        }
    }

    #[test]
    fn counts_heads_and_labels() {
        let gold = vec![sentence(&[
            (2, "nsubj", "NN"),
            (0, "root", "VB"),
            (2, "dobj", "NN"),
            (2, "punct", "."),
        ])];
        let predicted = vec![vec![
            arc(2, 1, "nsubj"),
            arc(0, 2, "root"),
            arc(2, 3, "iobj"),
            arc(3, 4, "punct"),
        ]];
        let r = evaluate(&gold, &predicted, &EvalOptions::default()).unwrap();
        assert_eq!(r.tokens, 4);
        assert!((r.uas - 75.0).abs() < 1e-12);
        assert!((r.las - 50.0).abs() < 1e-12);

        let r = evaluate(&gold, &predicted, &EvalOptions::excluding_punct()).unwrap();
        assert_eq!(r.tokens, 3);
        assert!((r.uas - 100.0).abs() < 1e-12);
        assert!((r.las - 200.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn missing_arcs_are_wrong() {
        let gold = vec![sentence(&[(0, "root", "VB"), (1, "dobj", "NN")])];
        let r = evaluate(&gold, &[vec![arc(0, 1, "root")]], &EvalOptions::default()).unwrap();
        assert!((r.uas - 50.0).abs() < 1e-12);
    }

    #[test]
    fn misaligned_input_is_rejected() {
        let gold = vec![sentence(&[(0, "root", "VB")])];
        assert!(matches!(
            evaluate(&gold, &[], &EvalOptions::default()),
            Err(Error::Alignment { .. })
        ));
        let other = vec![sentence(&[(0, "root", "VB"), (1, "dobj", "NN")])];
        assert!(matches!(
            evaluate_sentences(&gold, &other, &EvalOptions::default()),
            Err(Error::Alignment { sentence: 1, .. })
        ));
    }

    #[test]
    fn identical_corpora_score_perfectly() {
        let gold = vec![sentence(&[(2, "nsubj", "NN"), (0, "root", "VB")])];
        let r = evaluate_sentences(&gold, &gold, &EvalOptions::default()).unwrap();
        assert_eq!((r.uas, r.las), (100.0, 100.0));
        assert!(r.to_string().contains("punctuation\tincluded"));
    }
}

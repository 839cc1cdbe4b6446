//! CoNLL-X style ten-column treebank files.

use std::fmt::Write;

use super::{Sentence, Token};
use crate::error::{Error, Result};

const COLUMNS: usize = 10;

fn optional(field: &str) -> Option<String> {
    if field == "_" {
        None
    } else {
        Some(field.to_owned())
    }
}

/// Parses tab-separated CoNLL-X text. Blank lines separate sentences.
pub fn parse_conll(text: &str) -> Result<Vec<Sentence>> {
    let mut sentences = Vec::new();
    let mut tokens: Vec<Token> = Vec::new();

    let flush = |tokens: &mut Vec<Token>, sentences: &mut Vec<Sentence>| -> Result<()> {
        if !tokens.is_empty() {
            let number = sentences.len() + 1;
            sentences.push(Sentence::new_numbered(std::mem::take(tokens), number)?);
        }
        Ok(())
    };

    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            flush(&mut tokens, &mut sentences)?;
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != COLUMNS {
            return Err(Error::Format {
                line: line_no,
                message: format!(
                    "expected {COLUMNS} tab-separated columns, found {}",
                    fields.len()
                ),
            });
        }

        let id: usize = fields[0].parse().map_err(|_| Error::Format {
            line: line_no,
            message: format!(
                "token id '{}' is not a plain integer (multi-word and empty tokens are not supported)",
                fields[0]
            ),
        })?;
        if id != tokens.len() + 1 {
            return Err(Error::Format {
                line: line_no,
                message: format!("expected token id {}, found {id}", tokens.len() + 1),
            });
        }

        let head = match fields[6] {
            "_" => None,
            h => Some(h.parse::<usize>().map_err(|_| Error::Format {
                line: line_no,
                message: format!("invalid head '{h}'"),
            })?),
        };

        tokens.push(Token {
            form: fields[1].to_owned(),
            lemma: fields[2].to_owned(),
            cpos: fields[3].to_owned(),
            pos: fields[4].to_owned(),
            feats: fields[5].to_owned(),
            head,
            deprel: optional(fields[7]),
            phead: fields[8].to_owned(),
            pdeprel: fields[9].to_owned(),
            pred_head: None,
            pred_deprel: None,
            best_supertag: None,
            supertag_dist: None,
        });
    }
    flush(&mut tokens, &mut sentences)?;

    Ok(sentences)
}

/// Writes sentences as CoNLL-X text, each followed by a blank line. With
/// `use_predicted` the HEAD and DEPREL columns hold the predicted values.
pub fn emit_conll(sentences: &[Sentence], use_predicted: bool) -> Result<String> {
    let mut out = String::new();
    for (s_idx, sentence) in sentences.iter().enumerate() {
        for (i, token) in sentence.tokens().iter().enumerate() {
            let (head, deprel) = if use_predicted {
                match (token.pred_head, token.pred_deprel.as_deref()) {
                    (Some(h), Some(r)) => (Some(h), Some(r)),
                    _ => {
                        return Err(Error::Alignment {
                            sentence: s_idx + 1,
                            message: format!("token {} has no predicted head", i + 1),
                        })
                    }
                }
            } else {
                (token.head, token.deprel.as_deref())
            };
            let head = head.map_or_else(|| "_".to_owned(), |h| h.to_string());
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                i + 1,
                token.form,
                token.lemma,
                token.cpos,
                token.pos,
                token.feats,
                head,
                deprel.unwrap_or("_"),
                token.phead,
                token.pdeprel
            )
            .expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::Arc;

    const ECONOMIC_NEWS: &str = "1\tEconomic\t_\tJJ\tJJ\t_\t2\tamod\t_\t_\n\
                                 2\tnews\t_\tNN\tNN\t_\t0\troot\t_\t_\n\n";

    #[test]
    fn parses_two_token_block() {
        let sentences = parse_conll(ECONOMIC_NEWS).unwrap();
        assert_eq!(sentences.len(), 1);
        let mut arcs = sentences[0].gold_arcs();
        arcs.sort();
        assert_eq!(arcs, vec![Arc::new(0, 2, "root"), Arc::new(2, 1, "amod")]);
        assert_eq!(sentences[0].tokens()[0].pos, "JJ");
    }

    #[test]
    fn empty_input_gives_no_sentences() {
        assert!(parse_conll("").unwrap().is_empty());
        assert!(parse_conll("\n\n").unwrap().is_empty());
    }

    #[test]
    fn self_loop_is_rejected() {
        let text = "1\ta\t_\tX\tX\t_\t1\tdep\t_\t_\n";
        let err = parse_conll(text).unwrap_err();
        assert!(err.to_string().contains("self-loop"), "{err}");
    }

    #[test]
    fn head_out_of_range_is_rejected() {
        let text = "1\ta\t_\tX\tX\t_\t7\tdep\t_\t_\n";
        assert!(parse_conll(text).is_err());
    }

    #[test]
    fn cycle_names_sentence() {
        let text = format!(
            "{ECONOMIC_NEWS}1\ta\t_\tX\tX\t_\t2\tdep\t_\t_\n2\tb\t_\tX\tX\t_\t1\tdep\t_\t_\n"
        );
        let err = parse_conll(&text).unwrap_err();
        assert!(err.to_string().starts_with("sentence 2"), "{err}");
    }

    #[test]
    fn malformed_line_names_line_number() {
        let text = "1\ta\t_\tX\tX\t_\t0\troot\t_\t_\n2\tb\tX\n";
        match parse_conll(text).unwrap_err() {
            Error::Format { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn multiword_tokens_are_rejected() {
        let text = "1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n";
        assert!(parse_conll(text).is_err());
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let text = "1\tThe\tthe\tDT\tDT\tf=1\t2\tdet\t_\t_\n\
                    2\tdog\tdog\tNN\tNN\t_\t3\tnsubj\t_\t_\n\
                    3\tbarks\tbark\tVB\tVBZ\t_\t0\troot\t_\t_\n\n\
                    1\tHi\t_\tUH\tUH\t_\t0\troot\t0\troot\n\n";
        let sentences = parse_conll(text).unwrap();
        assert_eq!(emit_conll(&sentences, false).unwrap(), text);
    }

    #[test]
    fn empty_list_emits_empty_string() {
        assert_eq!(emit_conll(&[], false).unwrap(), "");
    }

    #[test]
    fn predicted_columns_are_selected() {
        let mut sentences = parse_conll(ECONOMIC_NEWS).unwrap();
        sentences[0]
            .set_predicted(&[Arc::new(0, 1, "root"), Arc::new(1, 2, "dep")])
            .unwrap();
        let out = emit_conll(&sentences, true).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "1\tEconomic\t_\tJJ\tJJ\t_\t0\troot\t_\t_");
        assert_eq!(lines[1], "2\tnews\t_\tNN\tNN\t_\t1\tdep\t_\t_");
        // gold columns untouched
        assert_eq!(emit_conll(&sentences, false).unwrap(), ECONOMIC_NEWS);
    }

    #[test]
    fn missing_predictions_are_an_error() {
        let sentences = parse_conll(ECONOMIC_NEWS).unwrap();
        assert!(emit_conll(&sentences, true).is_err());
    }
}

//! Synthetic English-like treebank generator.
//!
//! Sentences follow a small clause grammar (optional fronted adverb,
//! subject, verb, optional object, prepositional phrases, trailing adverb,
//! final punctuation). Prepositional phrases attach either to the verb or to
//! the most recent noun on the right frontier of the tree. The choice is
//! biased by the noun and the preposition but remains ambiguous, so lexical
//! and POS features cannot recover every attachment. All trees are
//! projective.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::treebank::{Sentence, Token};

const DETERMINERS: &[&str] = &["the", "a", "this", "that", "every", "some"];
const ADJECTIVES: &[&str] = &[
    "big", "small", "old", "new", "red", "green", "happy", "quiet", "strange", "bright", "cold",
    "warm", "young", "dark", "heavy", "famous",
];
/// Nouns that attract prepositional phrases.
const RELATIONAL_NOUNS: &[&str] = &[
    "book", "picture", "letter", "story", "report", "photo", "map", "box", "bag", "cup", "key",
    "copy",
];
const PLAIN_NOUNS: &[&str] = &[
    "man", "woman", "dog", "cat", "child", "teacher", "friend", "park", "city", "house", "table",
    "street", "garden", "market", "river", "car", "train", "office",
];
const PLURAL_NOUNS: &[&str] = &[
    "books", "dogs", "people", "children", "cars", "letters", "friends",
];
const PRONOUNS: &[&str] = &["he", "she", "they", "we"];
const TRANSITIVE_VERBS: &[&str] = &[
    "saw", "found", "bought", "liked", "took", "carried", "painted", "read", "wrote", "sold",
    "showed", "kept",
];
const INTRANSITIVE_VERBS: &[&str] = &[
    "slept", "ran", "walked", "arrived", "laughed", "waited", "stayed",
];
const PREPOSITIONS: &[&str] = &[
    "in", "on", "with", "near", "under", "from", "at", "behind", "of",
];
const ADVERBS: &[&str] = &["quickly", "slowly", "yesterday", "today", "again", "often"];

struct Builder {
    tokens: Vec<Token>,
    heads: Vec<usize>,
    labels: Vec<&'static str>,
}

impl Builder {
    fn push(&mut self, form: &str, pos: &str) -> usize {
        self.tokens.push(Token::new(form, pos));
        self.heads.push(usize::MAX);
        self.labels.push("");
        self.tokens.len()
    }

    fn attach(&mut self, dependent: usize, head: usize, label: &'static str) {
        self.heads[dependent - 1] = head;
        self.labels[dependent - 1] = label;
    }

    fn finish(self) -> Sentence {
        let tokens = self
            .tokens
            .into_iter()
            .zip(self.heads.into_iter().zip(self.labels))
            .map(|(t, (h, l))| t.with_head(h, l))
            .collect();
        Sentence::new(tokens).expect("generated trees are valid")
    }
}

/// Noun phrase; returns the head index and whether it is relational.
fn noun_phrase(b: &mut Builder, rng: &mut ChaCha8Rng, allow_pronoun: bool) -> (usize, bool) {
    if allow_pronoun && rng.gen_bool(0.25) {
        return (b.push(PRONOUNS.choose(rng).unwrap(), "PRP"), false);
    }
    let mut modifiers = Vec::new();
    if rng.gen_bool(0.8) {
        modifiers.push((b.push(DETERMINERS.choose(rng).unwrap(), "DT"), "det"));
    }
    for _ in 0..2 {
        if rng.gen_bool(0.35) {
            modifiers.push((b.push(ADJECTIVES.choose(rng).unwrap(), "JJ"), "amod"));
        }
    }
    if rng.gen_bool(0.1) {
        modifiers.push((b.push(PLAIN_NOUNS.choose(rng).unwrap(), "NN"), "nn"));
    }
    let (head, relational) = match rng.gen_range(0..10) {
        0..=3 => (b.push(RELATIONAL_NOUNS.choose(rng).unwrap(), "NN"), true),
        4..=8 => (b.push(PLAIN_NOUNS.choose(rng).unwrap(), "NN"), false),
        _ => (b.push(PLURAL_NOUNS.choose(rng).unwrap(), "NNS"), false),
    };
    for (m, label) in modifiers {
        b.attach(m, head, label);
    }
    (head, relational)
}

/// Generates one sentence.
pub fn generate_sentence(rng: &mut ChaCha8Rng) -> Sentence {
    let mut b = Builder {
        tokens: Vec::new(),
        heads: Vec::new(),
        labels: Vec::new(),
    };

    let fronted = rng
        .gen_bool(0.15)
        .then(|| b.push(ADVERBS.choose(rng).unwrap(), "RB"));
    let (subject, _) = noun_phrase(&mut b, rng, true);
    let transitive = rng.gen_bool(0.7);
    let verb_form = if transitive {
        TRANSITIVE_VERBS.choose(rng).unwrap()
    } else {
        INTRANSITIVE_VERBS.choose(rng).unwrap()
    };
    let verb = b.push(verb_form, "VBD");
    b.attach(verb, 0, "root");
    b.attach(subject, verb, "nsubj");
    if let Some(adv) = fronted {
        b.attach(adv, verb, "advmod");
    }

    // Most recent noun on the right frontier, with its attraction flag.
    let mut frontier_noun = None;
    if transitive {
        let (object, relational) = noun_phrase(&mut b, rng, false);
        b.attach(object, verb, "dobj");
        frontier_noun = Some((object, relational));
        if rng.gen_bool(0.1) {
            let cc = b.push("and", "CC");
            let (conj, relational) = noun_phrase(&mut b, rng, false);
            b.attach(cc, object, "cc");
            b.attach(conj, object, "conj");
            frontier_noun = Some((conj, relational));
        }
    }

    let pps = match rng.gen_range(0..20) {
        0..=6 => 0,
        7..=14 => 1,
        _ => 2,
    };
    for _ in 0..pps {
        let prep_form = *PREPOSITIONS.choose(rng).unwrap();
        let head = match frontier_noun {
            Some((noun, relational)) => {
                let low = if prep_form == "of" {
                    0.95
                } else if relational {
                    0.75
                } else {
                    0.3
                };
                if rng.gen_bool(low) {
                    noun
                } else {
                    verb
                }
            }
            None => verb,
        };
        let prep = b.push(prep_form, "IN");
        b.attach(prep, head, "prep");
        let (object, relational) = noun_phrase(&mut b, rng, false);
        b.attach(object, prep, "pobj");
        frontier_noun = Some((object, relational));
    }

    if rng.gen_bool(0.2) {
        let adv = b.push(ADVERBS.choose(rng).unwrap(), "RB");
        b.attach(adv, verb, "advmod");
    }
    if rng.gen_bool(0.9) {
        let punct = b.push(".", ".");
        b.attach(punct, verb, "punct");
    }
    b.finish()
}

/// Generates `count` sentences deterministically from `seed`.
pub fn generate_treebank(count: usize, seed: u64) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| generate_sentence(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::is_projective;

    #[test]
    fn trees_are_valid_and_projective() {
        for s in generate_treebank(500, 3) {
            assert!(s.has_gold_tree());
            assert!(is_projective(&s));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(generate_treebank(20, 9), generate_treebank(20, 9));
        assert_ne!(generate_treebank(20, 9), generate_treebank(20, 10));
    }
}

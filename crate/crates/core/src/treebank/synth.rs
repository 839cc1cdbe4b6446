//! Synthetic supertag annotations derived from gold trees.
//!
//! Each token's tag encodes its local syntactic environment: POS, the
//! direction of its head, and whether it has left and right dependents.
//! The distribution puts `1 - noise` on that tag and spreads `noise` evenly
//! over a few other uniformly sampled tags.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Sentence, SupertagAnnotation, SupertagDistribution, SupertagInventory};
use crate::error::{Error, Result};

const NOISE_TAGS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    pos: String,
    head_direction: u8,
    left_dependent: bool,
    right_dependent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthSupertags {
    pub inventory: SupertagInventory,
    pub annotations: Vec<Vec<SupertagAnnotation>>,
}

/// Name of the `id`-th tag in a synthetic inventory.
pub fn signature_tag_name(id: usize) -> String {
    format!("t{id}")
}

fn signatures(sentence: &Sentence, number: usize) -> Result<Vec<Signature>> {
    let heads = sentence.gold_heads().ok_or_else(|| Error::Tree {
        sentence: number,
        message: "synthetic supertags need a gold tree".into(),
    })?;
    let n = sentence.len();
    let mut left = vec![false; n + 1];
    let mut right = vec![false; n + 1];
    for dep in 1..=n {
        let head = heads[dep];
        if dep < head {
            left[head] = true;
        } else {
            right[head] = true;
        }
    }
    Ok((1..=n)
        .map(|i| Signature {
            pos: sentence.tokens()[i - 1].pos.clone(),
            head_direction: match heads[i] {
                0 => 0,
                h if h < i => 1,
                _ => 2,
            },
            left_dependent: left[i],
            right_dependent: right[i],
        })
        .collect())
}

/// Generates annotations for `sentences` over an inventory of
/// `inventory_size` tags. Signature tags get the lowest ids, in sorted
/// signature order; the output is a pure function of the arguments.
pub fn synth_supertags(
    sentences: &[Sentence],
    inventory_size: usize,
    noise: f64,
    seed: u64,
) -> Result<SynthSupertags> {
    if !(0.0..=1.0).contains(&noise) {
        return Err(Error::Config(format!("noise {noise} outside [0, 1]")));
    }

    let per_sentence = sentences
        .iter()
        .enumerate()
        .map(|(i, s)| signatures(s, i + 1))
        .collect::<Result<Vec<_>>>()?;

    let distinct: BTreeSet<&Signature> = per_sentence.iter().flatten().collect();
    if distinct.len() > inventory_size {
        return Err(Error::Config(format!(
            "inventory of {inventory_size} tags is too small for {} distinct signatures",
            distinct.len()
        )));
    }
    let ids: BTreeMap<&Signature, u32> = distinct
        .into_iter()
        .enumerate()
        .map(|(i, sig)| (sig, i as u32))
        .collect();

    let inventory = SupertagInventory::new((0..inventory_size).map(signature_tag_name).collect())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let others = NOISE_TAGS.min(inventory_size.saturating_sub(1));

    let mut annotations = Vec::with_capacity(sentences.len());
    for sigs in &per_sentence {
        let mut sentence_anns = Vec::with_capacity(sigs.len());
        for sig in sigs {
            let true_tag = ids[sig];
            let mut entries = vec![(true_tag, 1.0 - noise)];
            if noise > 0.0 && others > 0 {
                let share = noise / others as f64;
                for pick in index::sample(&mut rng, inventory_size - 1, others) {
                    let tag = if pick as u32 >= true_tag {
                        pick + 1
                    } else {
                        pick
                    };
                    entries.push((tag as u32, share));
                }
            }
            let dist = SupertagDistribution::new(inventory_size, entries)?;
            sentence_anns.push(SupertagAnnotation::from_distribution(dist, &inventory)?);
        }
        annotations.push(sentence_anns);
    }

    Ok(SynthSupertags {
        inventory,
        annotations,
    })
}

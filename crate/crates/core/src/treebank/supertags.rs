//! Supertag inventories, per-token supertag distributions and the sparse
//! annotation file format (`index TAB best_tag TAB tag:prob,tag:prob,...`).

use std::collections::HashMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Sentence;
use crate::error::{Error, Result};

/// Accepted total mass before renormalization.
const MASS_LOWER: f64 = 0.9;
const MASS_UPPER: f64 = 1.1;

/// Ordered list of supertag names; a tag's id is its position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct SupertagInventory {
    tags: Vec<String>,
    #[serde(skip)]
    ids: HashMap<String, u32>,
}

impl SupertagInventory {
    pub fn new(tags: Vec<String>) -> Result<Self> {
        let mut ids = HashMap::with_capacity(tags.len());
        for (i, tag) in tags.iter().enumerate() {
            if tag.is_empty() || tag.contains(['\t', ',', ':', '\n']) {
                return Err(Error::Format {
                    line: i + 1,
                    message: format!("invalid supertag name '{tag}'"),
                });
            }
            if ids.insert(tag.clone(), i as u32).is_some() {
                return Err(Error::Format {
                    line: i + 1,
                    message: format!("duplicate supertag name '{tag}'"),
                });
            }
        }
        Ok(SupertagInventory { tags, ids })
    }

    /// Parses an inventory file: one tag name per line, line number - 1 is the id.
    pub fn parse(text: &str) -> Result<Self> {
        let tags = text
            .lines()
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .filter(|l| !l.is_empty())
            .map(str::to_owned)
            .collect();
        Self::new(tags)
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for tag in &self.tags {
            out.push_str(tag);
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<u32> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: u32) -> Option<&str> {
        self.tags.get(id as usize).map(String::as_str)
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }
}

impl TryFrom<Vec<String>> for SupertagInventory {
    type Error = Error;

    fn try_from(tags: Vec<String>) -> Result<Self> {
        Self::new(tags)
    }
}

impl From<SupertagInventory> for Vec<String> {
    fn from(inv: SupertagInventory) -> Self {
        inv.tags
    }
}

/// Sparse probability vector over an inventory of `dim` supertags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupertagDistribution {
    dim: usize,
    entries: Vec<(u32, f64)>,
}

impl SupertagDistribution {
    /// Validates and normalizes `(tag id, probability)` pairs. Zero entries
    /// are dropped; total mass within [0.9, 1.1] is renormalized to one.
    pub fn new(dim: usize, mut entries: Vec<(u32, f64)>) -> Result<Self> {
        for &(tag, p) in &entries {
            if tag as usize >= dim {
                return Err(Error::Distribution(format!(
                    "tag id {tag} outside inventory of size {dim}"
                )));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Distribution(format!(
                    "probability {p} of tag {tag} outside [0, 1]"
                )));
            }
        }
        entries.retain(|&(_, p)| p > 0.0);
        entries.sort_by_key(|&(tag, _)| tag);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Distribution("duplicate tag id".into()));
        }

        let mass: f64 = entries.iter().map(|&(_, p)| p).sum();
        if !(MASS_LOWER..=MASS_UPPER).contains(&mass) {
            return Err(Error::Distribution(format!(
                "total probability {mass} outside [{MASS_LOWER}, {MASS_UPPER}]"
            )));
        }
        for entry in &mut entries {
            entry.1 /= mass;
        }

        Ok(SupertagDistribution { dim, entries })
    }

    pub fn one_hot(dim: usize, tag: u32) -> Result<Self> {
        Self::new(dim, vec![(tag, 1.0)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Non-zero entries with strictly increasing tag ids.
    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    /// Most probable tag; ties go to the lowest id.
    pub fn argmax(&self) -> u32 {
        let mut best = self.entries[0];
        for &entry in &self.entries[1..] {
            if entry.1 > best.1 {
                best = entry;
            }
        }
        best.0
    }

    pub fn prob(&self, tag: u32) -> f64 {
        self.entries
            .binary_search_by_key(&tag, |&(t, _)| t)
            .map_or(0.0, |i| self.entries[i].1)
    }
}

/// Supertag annotation of one token.
#[derive(Clone, Debug, PartialEq)]
pub struct SupertagAnnotation {
    pub best: String,
    pub dist: SupertagDistribution,
}

impl SupertagAnnotation {
    /// Annotation whose best tag is the distribution's argmax.
    pub fn from_distribution(dist: SupertagDistribution, inv: &SupertagInventory) -> Result<Self> {
        if dist.dim() != inv.len() {
            return Err(Error::Dimension {
                expected: inv.len(),
                actual: dist.dim(),
            });
        }
        let best = inv
            .name(dist.argmax())
            .expect("argmax within inventory")
            .to_owned();
        Ok(SupertagAnnotation { best, dist })
    }
}

/// Parses a supertag annotation file against an inventory.
///
/// The best tag column must name a tag of maximal probability; the stored
/// best tag is the canonical argmax (lowest id among ties).
pub fn parse_supertag_file(
    text: &str,
    inv: &SupertagInventory,
) -> Result<Vec<Vec<SupertagAnnotation>>> {
    let mut sentences = Vec::new();
    let mut current: Vec<SupertagAnnotation> = Vec::new();

    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let err = |message: String| Error::Format {
            line: line_no,
            message,
        };

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(err(format!(
                "expected 3 tab-separated columns, found {}",
                fields.len()
            )));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("invalid token index '{}'", fields[0])))?;
        if index != current.len() + 1 {
            return Err(err(format!(
                "expected token index {}, found {index}",
                current.len() + 1
            )));
        }

        let lookup = |name: &str| {
            inv.id(name)
                .ok_or_else(|| err(format!("unknown supertag '{name}'")))
        };
        let best_id = lookup(fields[1])?;

        let mut entries = Vec::new();
        for item in fields[2].split(',') {
            let (name, prob) = item
                .rsplit_once(':')
                .ok_or_else(|| err(format!("expected tag:prob, found '{item}'")))?;
            let prob: f64 = prob
                .parse()
                .map_err(|_| err(format!("invalid probability '{prob}'")))?;
            entries.push((lookup(name)?, prob));
        }

        let dist = SupertagDistribution::new(inv.len(), entries).map_err(|e| err(e.to_string()))?;
        let annotation = SupertagAnnotation::from_distribution(dist, inv)?;
        let best_prob = annotation.dist.prob(best_id);
        let max_prob = annotation.dist.prob(annotation.dist.argmax());
        if best_prob < max_prob {
            return Err(err(format!(
                "best tag '{}' is not the most probable tag '{}'",
                fields[1], annotation.best
            )));
        }
        current.push(annotation);
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

/// Writes annotations in the format read by [`parse_supertag_file`].
pub fn emit_supertag_file(
    annotations: &[Vec<SupertagAnnotation>],
    inv: &SupertagInventory,
) -> String {
    let mut out = String::new();
    for sentence in annotations {
        for (i, ann) in sentence.iter().enumerate() {
            write!(out, "{}\t{}\t", i + 1, ann.best).unwrap();
            for (j, &(tag, p)) in ann.dist.entries().iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{}:{}", inv.name(tag).expect("tag in inventory"), p).unwrap();
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Attaches best supertags and distributions to the tokens of each sentence.
pub fn attach_supertags(
    mut sentences: Vec<Sentence>,
    annotations: Vec<Vec<SupertagAnnotation>>,
) -> Result<Vec<Sentence>> {
    if sentences.len() != annotations.len() {
        return Err(Error::Alignment {
            sentence: sentences.len().min(annotations.len()) + 1,
            message: format!(
                "{} sentences but {} annotated sentences",
                sentences.len(),
                annotations.len()
            ),
        });
    }
    for (i, (sentence, anns)) in sentences.iter_mut().zip(annotations).enumerate() {
        if sentence.len() != anns.len() {
            return Err(Error::Alignment {
                sentence: i + 1,
                message: format!(
                    "{} tokens but {} supertag annotations",
                    sentence.len(),
                    anns.len()
                ),
            });
        }
        for (token, ann) in sentence.tokens_mut().iter_mut().zip(anns) {
            token.best_supertag = Some(ann.best);
            token.supertag_dist = Some(ann.dist);
        }
    }
    Ok(sentences)
}

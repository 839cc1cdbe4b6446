//! Feature models over parser configurations.
//!
//! Symbolic templates address tokens relative to the stack (`S0` is the
//! top) and buffer (`B0` is the front), optionally following the leftmost
//! dependent (`ld`), rightmost dependent (`rd`) or head (`h`), and read one
//! attribute: form (`w`), POS (`t`), dependency relation (`r`) or best
//! supertag (`bs`). Conjoined templates join their parts with `:`.
//!
//! The continuous supertag-distribution block is the PCA projection of the
//! supertag vectors of two addressed words, concatenated.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pca::PcaModel;
use crate::transition::Configuration;
use crate::treebank::Sentence;

/// Value of an unresolvable address.
pub const NULL_VALUE: &str = "NULL";
/// Word, POS and supertag value of the dummy root.
pub const ROOT_VALUE: &str = "ROOT";
/// Separator between the parts of a conjoined feature value.
const PART_SEPARATOR: char = '\u{1f}';

const BASELINE: [&str; 33] = [
    // single word
    "S0.w",
    "S1.w",
    "S2.w",
    "B0.w",
    "B1.w",
    "S0.ld.w",
    "S0.ld.t",
    "S0.rd.t",
    "S1.ld.t",
    "S1.rd.t",
    "S0.ld.r",
    "S0.rd.r",
    "S0.rd.w",
    "S0.t",
    "S1.t",
    "S2.t",
    "S3.t",
    "B0.t",
    "B1.t",
    "B2.t",
    // two words
    "S0.t:S1.t",
    "S0.w:B0.w",
    "S0.t:S0.w",
    "S1.t:S1.w",
    "B0.t:B0.w",
    "S1.rd.r:S0.ld.r",
    // three words
    "S0.t:S1.t:B0.t",
    "S0.t:S1.t:S2.t",
    "S0.t:B0.t:B1.t",
    "B0.t:B1.t:B2.t",
    "B1.t:B2.t:B3.t",
    "S1.rd.t:S1.ld.t:S1.t",
    "S1.t:S1.ld.r:S1.rd.r",
];

const BEST_SUPERTAG: [&str; 16] = [
    // single word
    "S0.bs",
    "S1.bs",
    "S2.bs",
    "S3.bs",
    "B0.bs",
    "B1.bs",
    "B2.bs",
    "B3.bs",
    // two words
    "S0.bs:S1.bs",
    "S0.bs:S0.w",
    "S1.bs:S1.w",
    "B0.bs:B0.w",
    // three words
    "S0.bs:S1.bs:B0.bs",
    "S0.bs:S1.bs:S2.bs",
    "S0.bs:B0.bs:B1.bs",
    "B1.bs:B2.bs:B3.bs",
];

const FORM: [&str; 2] = ["S0.w", "S1.w"];
const POS: [&str; 2] = ["S0.t", "S1.t"];
const SUPERTAG: [&str; 2] = ["S0.bs", "S1.bs"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Attribute {
    Word,
    Pos,
    Relation,
    Supertag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    Stack(usize),
    Buffer(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    LeftmostDependent,
    RightmostDependent,
    Head,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Address {
    pub base: Base,
    pub path: Vec<Step>,
}

impl Address {
    pub fn stack(i: usize) -> Self {
        Address {
            base: Base::Stack(i),
            path: Vec::new(),
        }
    }

    pub fn buffer(i: usize) -> Self {
        Address {
            base: Base::Buffer(i),
            path: Vec::new(),
        }
    }

    /// Token index the address points to, 0 for the root.
    pub fn resolve(&self, config: &Configuration) -> Option<usize> {
        let mut token = match self.base {
            Base::Stack(i) => config.stack_top(i)?,
            Base::Buffer(i) => config.buffer_at(i)?,
        };
        for step in &self.path {
            token = match step {
                Step::LeftmostDependent => config.leftmost_dependent(token)?,
                Step::RightmostDependent => config.rightmost_dependent(token)?,
                Step::Head => config.head(token)?.0,
            };
        }
        Some(token)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub address: Address,
    pub attribute: Attribute,
}

impl Component {
    fn value<'a>(&self, config: &'a Configuration, sentence: &'a Sentence) -> Option<&'a str> {
        let token = self.address.resolve(config)?;
        if token == 0 {
            return match self.attribute {
                Attribute::Relation => None,
                _ => Some(ROOT_VALUE),
            };
        }
        match self.attribute {
            Attribute::Relation => config.head(token).map(|(_, label)| label),
            attr => {
                let t = sentence.token(token)?;
                match attr {
                    Attribute::Word => Some(t.form.as_str()),
                    Attribute::Pos => Some(t.pos.as_str()),
                    Attribute::Supertag => t.best_supertag.as_deref(),
                    Attribute::Relation => unreachable!(),
                }
            }
        }
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid feature address '{s}'"));
        let mut parts = s.split('.');
        let base = parts.next().ok_or_else(bad)?;
        let position = || base[1..].parse::<usize>().map_err(|_| bad());
        let base = match base.chars().next() {
            Some('S') => Base::Stack(position()?),
            Some('B') => Base::Buffer(position()?),
            _ => return Err(bad()),
        };
        let rest: Vec<&str> = parts.collect();
        let (attribute, steps) = rest.split_last().ok_or_else(bad)?;
        let path = steps
            .iter()
            .map(|step| match *step {
                "ld" => Ok(Step::LeftmostDependent),
                "rd" => Ok(Step::RightmostDependent),
                "h" => Ok(Step::Head),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        let attribute = match *attribute {
            "w" => Attribute::Word,
            "t" => Attribute::Pos,
            "r" => Attribute::Relation,
            "bs" => Attribute::Supertag,
            _ => return Err(bad()),
        };
        Ok(Component {
            address: Address { base, path },
            attribute,
        })
    }
}

/// A (possibly conjoined) symbolic feature template.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Template {
    pub id: u16,
    pub name: &'static str,
    pub components: Vec<Component>,
}

fn catalog() -> &'static [Template] {
    static CATALOG: OnceLock<Vec<Template>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        BASELINE
            .iter()
            .chain(BEST_SUPERTAG.iter())
            .enumerate()
            .map(|(id, &name)| Template {
                id: id as u16,
                name,
                components: name
                    .split(':')
                    .map(|c| c.parse().expect("catalog templates are well-formed"))
                    .collect(),
            })
            .collect()
    })
}

fn template(name: &str) -> &'static Template {
    catalog()
        .iter()
        .find(|t| t.name == name)
        .expect("template in catalog")
}

/// A named group of symbolic templates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TemplateSet {
    /// Baseline MaltParser model.
    Baseline,
    /// Best-supertag model.
    BestSupertag,
    /// Form of the two top stack words.
    Form,
    /// POS of the two top stack words.
    Pos,
    /// Best supertag of the two top stack words.
    Supertag,
}

impl TemplateSet {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            TemplateSet::Baseline => &BASELINE,
            TemplateSet::BestSupertag => &BEST_SUPERTAG,
            TemplateSet::Form => &FORM,
            TemplateSet::Pos => &POS,
            TemplateSet::Supertag => &SUPERTAG,
        }
    }

    pub fn templates(self) -> Vec<&'static Template> {
        self.names().iter().map(|n| template(n)).collect()
    }

    pub fn code(self) -> &'static str {
        match self {
            TemplateSet::Baseline => "BL",
            TemplateSet::BestSupertag => "BS",
            TemplateSet::Form => "FORM",
            TemplateSet::Pos => "POS",
            TemplateSet::Supertag => "SUPERTAG",
        }
    }

    pub fn uses_supertags(self) -> bool {
        matches!(self, TemplateSet::BestSupertag | TemplateSet::Supertag)
    }
}

/// Which two words contribute supertag-distribution blocks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SdAddresses {
    /// Two top stack words.
    #[default]
    S0S1,
    /// Stack top and buffer front.
    S0B0,
}

impl SdAddresses {
    pub fn addresses(self) -> [Address; 2] {
        match self {
            SdAddresses::S0S1 => [Address::stack(0), Address::stack(1)],
            SdAddresses::S0B0 => [Address::stack(0), Address::buffer(0)],
        }
    }
}

impl FromStr for SdAddresses {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s0s1" => Ok(SdAddresses::S0S1),
            "s0b0" => Ok(SdAddresses::S0B0),
            _ => Err(Error::Config(format!(
                "unknown sd-addresses '{s}' (expected s0s1 or s0b0)"
            ))),
        }
    }
}

impl fmt::Display for SdAddresses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SdAddresses::S0S1 => "s0s1",
            SdAddresses::S0B0 => "s0b0",
        })
    }
}

/// Feature-model flags: symbolic template groups plus optional SD block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureModel {
    pub template_sets: Vec<TemplateSet>,
    pub sd: bool,
    pub sd_addresses: SdAddresses,
    pub bias: bool,
}

impl FeatureModel {
    /// Parses a `+`-separated model name such as `BL+BS+SD`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut model = FeatureModel {
            template_sets: Vec::new(),
            sd: false,
            sd_addresses: SdAddresses::default(),
            bias: false,
        };
        for part in spec.split('+').map(str::trim) {
            let set = match part.to_ascii_uppercase().as_str() {
                "BL" => TemplateSet::Baseline,
                "BS" => TemplateSet::BestSupertag,
                "FORM" => TemplateSet::Form,
                "POS" => TemplateSet::Pos,
                "SUPERTAG" => TemplateSet::Supertag,
                "SD" => {
                    model.sd = true;
                    continue;
                }
                _ => {
                    return Err(Error::Config(format!(
                        "unknown feature model '{part}' in '{spec}'"
                    )))
                }
            };
            if !model.template_sets.contains(&set) {
                model.template_sets.push(set);
            }
        }
        if model.template_sets.is_empty() && !model.sd {
            return Err(Error::Config(format!("feature model '{spec}' is empty")));
        }
        Ok(model)
    }

    pub fn name(&self) -> String {
        let mut parts: Vec<&str> = self.template_sets.iter().map(|s| s.code()).collect();
        if self.sd {
            parts.push("SD");
        }
        parts.join("+")
    }

    pub fn uses_supertags(&self) -> bool {
        self.sd || self.template_sets.iter().any(|s| s.uses_supertags())
    }

    /// Distinct templates of all enabled sets, in order of first appearance.
    pub fn templates(&self) -> Vec<&'static Template> {
        let mut seen = Vec::new();
        for set in &self.template_sets {
            for t in set.templates() {
                if !seen.iter().any(|s: &&Template| s.id == t.id) {
                    seen.push(t);
                }
            }
        }
        seen
    }
}

/// One template instantiated on a configuration. `None` parts are NULL.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddressedValue<'a> {
    pub template: &'static Template,
    pub values: Vec<Option<&'a str>>,
}

impl AddressedValue<'_> {
    /// Human-readable value with `:` between conjoined parts.
    pub fn display(&self) -> String {
        self.join(':')
    }

    pub fn is_null(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }

    fn key(&self) -> String {
        self.join(PART_SEPARATOR)
    }

    fn join(&self, sep: char) -> String {
        let mut out = String::new();
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                out.push(sep);
            }
            out.push_str(v.unwrap_or(NULL_VALUE));
        }
        out
    }
}

/// Instantiates `templates` on a configuration.
pub fn instantiate<'a>(
    templates: &[&'static Template],
    config: &'a Configuration,
    sentence: &'a Sentence,
) -> Vec<AddressedValue<'a>> {
    templates
        .iter()
        .map(|&template| AddressedValue {
            template,
            values: template
                .components
                .iter()
                .map(|c| c.value(config, sentence))
                .collect(),
        })
        .collect()
}

/// Baseline templates (33 instantiations).
pub fn extract_baseline<'a>(
    config: &'a Configuration,
    sentence: &'a Sentence,
) -> Vec<AddressedValue<'a>> {
    instantiate(&TemplateSet::Baseline.templates(), config, sentence)
}

/// Best-supertag templates (16 instantiations).
pub fn extract_bs<'a>(
    config: &'a Configuration,
    sentence: &'a Sentence,
) -> Vec<AddressedValue<'a>> {
    instantiate(&TemplateSet::BestSupertag.templates(), config, sentence)
}

/// PCA projections of every token's supertag vector, `None` where a token
/// has no distribution.
pub fn project_sentence(sentence: &Sentence, pca: &PcaModel) -> Result<Vec<Option<Vec<f64>>>> {
    sentence
        .tokens()
        .iter()
        .map(|t| {
            t.supertag_dist
                .as_ref()
                .map(|d| pca.project(d.dim(), d.entries()))
                .transpose()
        })
        .collect()
}

/// Concatenated projection blocks of the two addressed words; unresolvable
/// addresses, the root and tokens without a distribution give zero blocks.
pub fn sd_block(
    config: &Configuration,
    projections: &[Option<Vec<f64>>],
    addresses: SdAddresses,
    k: usize,
    out: &mut Vec<f64>,
) {
    for address in addresses.addresses() {
        let start = out.len();
        out.resize(start + k, 0.0);
        if let Some(token) = address.resolve(config).filter(|&t| t > 0) {
            if let Some(Some(y)) = projections.get(token - 1) {
                out[start..].copy_from_slice(y);
            }
        }
    }
}

/// Dense supertag-distribution features, length `2k`.
pub fn extract_sd(
    config: &Configuration,
    sentence: &Sentence,
    pca: &PcaModel,
    addresses: SdAddresses,
) -> Result<Vec<f64>> {
    let projections = project_sentence(sentence, pca)?;
    let mut out = Vec::with_capacity(2 * pca.k());
    sd_block(config, &projections, addresses, pca.k(), &mut out);
    Ok(out)
}

const BIAS_TEMPLATE: u16 = u16::MAX;

/// Serialized form: keys listed in id order, so output is independent of
/// hash iteration order.
#[derive(Serialize, Deserialize)]
struct DictionaryRepr {
    keys: Vec<(u16, String)>,
    frozen: bool,
}

impl From<FeatureDictionary> for DictionaryRepr {
    fn from(dict: FeatureDictionary) -> Self {
        let mut keys: Vec<((u16, String), u32)> = dict.ids.into_iter().collect();
        keys.sort_by_key(|&(_, id)| id);
        DictionaryRepr {
            keys: keys.into_iter().map(|(k, _)| k).collect(),
            frozen: dict.frozen,
        }
    }
}

impl From<DictionaryRepr> for FeatureDictionary {
    fn from(repr: DictionaryRepr) -> Self {
        FeatureDictionary {
            ids: repr
                .keys
                .into_iter()
                .enumerate()
                .map(|(id, k)| (k, id as u32))
                .collect(),
            frozen: repr.frozen,
        }
    }
}

/// Mapping from (template id, value) pairs to feature ids.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "DictionaryRepr", into = "DictionaryRepr")]
pub struct FeatureDictionary {
    ids: HashMap<(u16, String), u32>,
    frozen: bool,
}

impl FeatureDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn get(&self, template: u16, value: &str) -> Option<u32> {
        // Key construction allocates; acceptable at the sizes involved.
        self.ids.get(&(template, value.to_owned())).copied()
    }

    /// Looks up a pair, allocating a fresh id when the dictionary is not frozen.
    pub fn get_or_insert(&mut self, template: u16, value: &str) -> Option<u32> {
        if let Some(id) = self.get(template, value) {
            return Some(id);
        }
        if self.frozen {
            return None;
        }
        let id = self.ids.len() as u32;
        self.ids.insert((template, value.to_owned()), id);
        Some(id)
    }
}

/// Sparse boolean ids plus the dense block.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub sparse: Vec<u32>,
    pub dense: Vec<f64>,
}

fn finish(mut sparse: Vec<u32>, dense: Vec<f64>) -> FeatureVector {
    sparse.sort_unstable();
    sparse.dedup();
    FeatureVector { sparse, dense }
}

/// Maps instantiations through the dictionary, allocating ids for unseen
/// pairs unless it is frozen.
pub fn assemble(
    values: &[AddressedValue<'_>],
    dict: &mut FeatureDictionary,
    dense: Vec<f64>,
) -> FeatureVector {
    let sparse = values
        .iter()
        .filter_map(|v| dict.get_or_insert(v.template.id, &v.key()))
        .collect();
    finish(sparse, dense)
}

/// Read-only variant of [`assemble`]: unseen pairs are dropped.
pub fn assemble_frozen(
    values: &[AddressedValue<'_>],
    dict: &FeatureDictionary,
    dense: Vec<f64>,
) -> FeatureVector {
    let sparse = values
        .iter()
        .filter_map(|v| dict.get(v.template.id, &v.key()))
        .collect();
    finish(sparse, dense)
}

/// Extraction pipeline for one feature model.
#[derive(Clone, Debug)]
pub struct FeatureExtractor {
    model: FeatureModel,
    templates: Vec<&'static Template>,
    k: usize,
}

impl FeatureExtractor {
    /// `k` is the PCA dimension when the model has an SD block.
    pub fn new(model: FeatureModel, k: usize) -> Result<Self> {
        if model.sd && k == 0 {
            return Err(Error::Config("the SD feature block needs k >= 1".into()));
        }
        let templates = model.templates();
        Ok(FeatureExtractor {
            k: if model.sd { k } else { 0 },
            model,
            templates,
        })
    }

    pub fn model(&self) -> &FeatureModel {
        &self.model
    }

    pub fn dense_len(&self) -> usize {
        2 * self.k
    }

    pub fn instantiate<'a>(
        &self,
        config: &'a Configuration,
        sentence: &'a Sentence,
    ) -> Vec<AddressedValue<'a>> {
        instantiate(&self.templates, config, sentence)
    }

    fn dense(&self, config: &Configuration, projections: &[Option<Vec<f64>>]) -> Vec<f64> {
        let mut dense = Vec::with_capacity(self.dense_len());
        if self.model.sd {
            sd_block(
                config,
                projections,
                self.model.sd_addresses,
                self.k,
                &mut dense,
            );
        }
        dense
    }

    /// Feature vector with id allocation (training).
    pub fn vectorize_mut(
        &self,
        config: &Configuration,
        sentence: &Sentence,
        projections: &[Option<Vec<f64>>],
        dict: &mut FeatureDictionary,
    ) -> FeatureVector {
        let values = self.instantiate(config, sentence);
        let mut fv = assemble(&values, dict, self.dense(config, projections));
        if self.model.bias {
            if let Some(id) = dict.get_or_insert(BIAS_TEMPLATE, "") {
                insert_sorted(&mut fv.sparse, id);
            }
        }
        fv
    }

    /// Feature vector against a frozen dictionary (parsing).
    pub fn vectorize(
        &self,
        config: &Configuration,
        sentence: &Sentence,
        projections: &[Option<Vec<f64>>],
        dict: &FeatureDictionary,
    ) -> FeatureVector {
        let values = self.instantiate(config, sentence);
        let mut fv = assemble_frozen(&values, dict, self.dense(config, projections));
        if self.model.bias {
            if let Some(id) = dict.get(BIAS_TEMPLATE, "") {
                insert_sorted(&mut fv.sparse, id);
            }
        }
        fv
    }
}

fn insert_sorted(ids: &mut Vec<u32>, id: u32) {
    if let Err(pos) = ids.binary_search(&id) {
        ids.insert(pos, id);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transition::Transition;
    use crate::treebank::{SupertagDistribution, Token};

    fn the_cat_sat() -> Sentence {
        Sentence::new(vec![
            Token::new("the", "DT").with_head(2, "det"),
            Token::new("cat", "NN").with_head(3, "nsubj"),
            Token::new("sat", "VBD").with_head(0, "root"),
        ])
        .unwrap()
    }

    fn value<'a>(values: &'a [AddressedValue<'a>], name: &str) -> &'a AddressedValue<'a> {
        values.iter().find(|v| v.template.name == name).unwrap()
    }

    #[test]
    fn template_counts() {
        assert_eq!(TemplateSet::Baseline.templates().len(), 33);
        assert_eq!(TemplateSet::BestSupertag.templates().len(), 16);
        let s = the_cat_sat();
        let c = Configuration::initial(&s).unwrap();
        assert_eq!(extract_baseline(&c, &s).len(), 33);
        assert_eq!(extract_bs(&c, &s).len(), 16);
    }

    #[test]
    fn initial_config_addresses() {
        let s = the_cat_sat();
        let c = Configuration::initial(&s).unwrap();
        let values = extract_baseline(&c, &s);
        assert_eq!(value(&values, "S0.w").values, vec![Some(ROOT_VALUE)]);
        assert_eq!(value(&values, "B0.w").values, vec![Some("the")]);
        assert_eq!(value(&values, "S1.t").values, vec![None]);
        assert_eq!(value(&values, "S0.ld.r").values, vec![None]);
    }

    #[test]
    fn conjoined_value() {
        let s = the_cat_sat();
        let c = Configuration::from_parts(3, vec![0, 1, 2], 3);
        let values = extract_baseline(&c, &s);
        assert_eq!(value(&values, "S0.t:S1.t").display(), "NN:DT");
        assert_eq!(value(&values, "S0.t:S1.t:S2.t").display(), "NN:DT:ROOT");
        assert_eq!(value(&values, "B1.t:B2.t:B3.t").display(), "NULL:NULL:NULL");
    }

    #[test]
    fn dependents_are_visible_after_arcs() {
        let s = the_cat_sat();
        let c = Configuration::from_parts(3, vec![0, 1, 2], 3)
            .apply(&Transition::LeftArc("det".into()))
            .unwrap();
        let values = extract_baseline(&c, &s);
        assert_eq!(value(&values, "S0.ld.w").values, vec![Some("the")]);
        assert_eq!(value(&values, "S0.ld.r").values, vec![Some("det")]);
        assert_eq!(value(&values, "S0.rd.t").values, vec![None]);
    }

    #[test]
    fn best_supertag_values() {
        let mut tokens = the_cat_sat().into_tokens();
        tokens[0].best_supertag = Some("t3".into());
        tokens[1].best_supertag = Some("t27".into());
        tokens[2].best_supertag = Some("t5".into());
        let cat = Sentence::new(tokens).unwrap();
        let c = Configuration::from_parts(3, vec![0, 1], 2);
        let values = extract_bs(&c, &cat);
        assert_eq!(value(&values, "S0.bs").values, vec![Some("t3")]);
        assert_eq!(value(&values, "B0.bs").values, vec![Some("t27")]);
        assert_eq!(value(&values, "S2.bs").values, vec![None]);

        let c = Configuration::from_parts(3, vec![0, 2], 3);
        let values = extract_bs(&c, &cat);
        assert_eq!(value(&values, "S0.bs:S0.w").display(), "t27:cat");
    }

    #[test]
    fn unannotated_sentence_gives_null_supertags() {
        let s = the_cat_sat();
        for config in [
            Configuration::from_parts(3, vec![0], 1),
            Configuration::from_parts(3, vec![0, 1, 2], 3),
        ] {
            let values = extract_bs(&config, &s);
            assert_eq!(values.len(), 16);
            for v in &values {
                for (c, p) in v.template.components.iter().zip(&v.values) {
                    if c.attribute == Attribute::Supertag {
                        assert!(p.is_none() || *p == Some(ROOT_VALUE), "{}", v.template.name);
                    }
                }
            }
        }
    }

    #[test]
    fn dictionary_allocation_and_freezing() {
        let s = the_cat_sat();
        let c = Configuration::from_parts(3, vec![0, 1, 2], 3);
        let pos = TemplateSet::Pos.templates();
        let values = instantiate(&pos, &c, &s);

        let mut dict = FeatureDictionary::new();
        let fv = assemble(&values, &mut dict, vec![]);
        assert_eq!(fv.sparse, vec![0, 1]);

        dict.freeze();
        let c2 = Configuration::from_parts(3, vec![0, 3], 4);
        let values2 = instantiate(&pos, &c2, &s);
        let fv2 = assemble(&values2, &mut dict, vec![0.5]);
        assert!(fv2.sparse.is_empty());
        assert_eq!(fv2.dense, vec![0.5]);
        assert_eq!(dict.len(), 2);
    }

    #[test]
    fn template_id_keeps_values_apart() {
        let mut dict = FeatureDictionary::new();
        let a = dict.get_or_insert(0, "NN").unwrap();
        let b = dict.get_or_insert(1, "NN").unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn model_names_round_trip() {
        for name in [
            "BL", "BL+BS", "BL+SD", "BL+BS+SD", "FORM", "POS", "SUPERTAG", "SD",
        ] {
            assert_eq!(FeatureModel::parse(name).unwrap().name(), name);
        }
        assert!(FeatureModel::parse("BL+XY").is_err());
        assert!(!FeatureModel::parse("BL").unwrap().uses_supertags());
        assert!(FeatureModel::parse("SUPERTAG").unwrap().uses_supertags());
    }

    #[test]
    fn restricted_models_share_catalog_ids() {
        let form = TemplateSet::Form.templates();
        let bl = TemplateSet::Baseline.templates();
        assert_eq!(form[0].id, bl[0].id);
        let model = FeatureModel::parse("BL+FORM").unwrap();
        assert_eq!(model.templates().len(), 33);
    }

    #[test]
    fn sd_block_selects_projection() {
        // k = 2 selector onto coordinates {3, 7}, zero mean
        let n = 10;
        let mut components = vec![0.0; n * 2];
        components[3 * 2] = 1.0;
        components[7 * 2 + 1] = 1.0;
        let pca = PcaModel::from_parts(n, 2, false, vec![0.0; n], components, vec![1.0, 1.0], 2.0)
            .unwrap();

        let mut tokens = the_cat_sat().into_tokens();
        tokens[0].supertag_dist = Some(SupertagDistribution::one_hot(n, 3).unwrap());
        let s = Sentence::new(tokens).unwrap();

        let c = Configuration::from_parts(3, vec![0, 1], 2);
        let y = extract_sd(&c, &s, &pca, SdAddresses::S0S1).unwrap();
        assert_eq!(y, vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(extract_sd(&c, &s, &pca, SdAddresses::S0S1).unwrap(), y);

        let root_only = Configuration::initial(&s).unwrap();
        assert_eq!(
            extract_sd(&root_only, &s, &pca, SdAddresses::S0S1).unwrap(),
            vec![0.0; 4]
        );

        let mut tokens = s.into_tokens();
        tokens[0].supertag_dist = Some(SupertagDistribution::one_hot(5, 3).unwrap());
        let wrong = Sentence::new(tokens).unwrap();
        assert!(extract_sd(&c, &wrong, &pca, SdAddresses::S0S1).is_err());
    }

    #[test]
    fn component_parsing() {
        let c: Component = "S1.rd.r".parse().unwrap();
        assert_eq!(c.address.base, Base::Stack(1));
        assert_eq!(c.address.path, vec![Step::RightmostDependent]);
        assert_eq!(c.attribute, Attribute::Relation);
        assert!("X0.w".parse::<Component>().is_err());
        assert!("S0".parse::<Component>().is_err());
        assert!("S0.zz.w".parse::<Component>().is_err());
    }
}

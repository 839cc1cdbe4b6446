//! Versioned model container.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classifier::LinearModel;
use crate::error::{Error, Result};
use crate::features::{FeatureDictionary, FeatureExtractor, FeatureModel};
use crate::pca::PcaModel;
use crate::treebank::SupertagInventory;

const MAGIC: &[u8; 8] = b"STAGPRSR";
pub const MODEL_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ModelData {
    features: FeatureModel,
    k: usize,
    inventory: Option<SupertagInventory>,
    pca: Option<PcaModel>,
    dictionary: FeatureDictionary,
    classifier: LinearModel,
}

/// Everything needed to parse: feature flags, PCA model, supertag
/// inventory, feature dictionary and classifier weights.
#[derive(Clone, Debug)]
pub struct ParserModel {
    data: ModelData,
    extractor: FeatureExtractor,
}

impl PartialEq for ParserModel {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl ParserModel {
    pub fn new(
        features: FeatureModel,
        inventory: Option<SupertagInventory>,
        pca: Option<PcaModel>,
        dictionary: FeatureDictionary,
        classifier: LinearModel,
    ) -> Result<Self> {
        let k = match (&pca, features.sd) {
            (Some(p), true) => p.k(),
            (None, true) => return Err(Error::Model("SD features require a PCA model".into())),
            _ => 0,
        };
        Self::from_data(ModelData {
            features,
            k,
            inventory,
            pca,
            dictionary,
            classifier,
        })
    }

    fn from_data(data: ModelData) -> Result<Self> {
        let extractor = FeatureExtractor::new(data.features.clone(), data.k)?;
        if extractor.dense_len() != data.classifier.dense_rows() {
            return Err(Error::Model(format!(
                "classifier expects {} dense values but the feature model yields {}",
                data.classifier.dense_rows(),
                extractor.dense_len()
            )));
        }
        Ok(ParserModel { data, extractor })
    }

    pub fn features(&self) -> &FeatureModel {
        &self.data.features
    }

    pub fn k(&self) -> usize {
        self.data.k
    }

    pub fn inventory(&self) -> Option<&SupertagInventory> {
        self.data.inventory.as_ref()
    }

    pub fn pca(&self) -> Option<&PcaModel> {
        self.data.pca.as_ref()
    }

    pub fn dictionary(&self) -> &FeatureDictionary {
        &self.data.dictionary
    }

    pub fn classifier(&self) -> &LinearModel {
        &self.data.classifier
    }

    pub fn classifier_mut(&mut self) -> &mut LinearModel {
        &mut self.data.classifier
    }

    pub(crate) fn extractor(&self) -> &FeatureExtractor {
        &self.extractor
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = MAGIC.to_vec();
        out.extend_from_slice(&MODEL_VERSION.to_le_bytes());
        bincode::serialize_into(&mut out, &self.data)?;
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 12 || &bytes[..8] != MAGIC {
            return Err(Error::Model("not a parser model file".into()));
        }
        let version = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
        if version != MODEL_VERSION {
            return Err(Error::Model(format!(
                "model version {version} is not supported (expected {MODEL_VERSION})"
            )));
        }
        Self::from_data(bincode::deserialize(&bytes[12..])?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

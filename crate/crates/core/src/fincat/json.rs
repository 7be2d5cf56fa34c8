use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{CatError, FinCat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Wire format: `compose` lists `[f, g, h]` triples meaning `g ∘ f = h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

impl FinCat {
    pub fn from_json_value(doc: FinCatJson) -> Result<FinCat, CatError> {
        let morphisms = doc.morphisms.into_iter().map(|m| (m.id, m.src, m.tgt)).collect();
        let identities: HashMap<String, String> = doc.identities.into_iter().collect();
        let triples: Vec<(String, String, String)> =
            doc.compose.into_iter().map(|[f, g, h]| (f, g, h)).collect();
        FinCat::new(doc.objects, morphisms, &identities, &triples)
    }

    pub fn from_json_str(s: &str) -> Result<FinCat, CatError> {
        let doc: FinCatJson = serde_json::from_str(s).map_err(|e| CatError::Json(e.to_string()))?;
        Self::from_json_value(doc)
    }

    /// Exhaustive table of recorded composites, in index order.
    pub fn to_json_value(&self) -> FinCatJson {
        let n = self.morphism_count();
        let name = |f: usize| self.morphism(f).id.clone();
        let mut compose = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if let Some(h) = self.compose(f, g) {
                    compose.push([name(f), name(g), name(h)]);
                }
            }
        }
        FinCatJson {
            objects: self.objects().to_vec(),
            morphisms: self
                .morphisms()
                .iter()
                .map(|m| MorphismJson {
                    id: m.id.clone(),
                    src: self.objects()[m.src].clone(),
                    tgt: self.objects()[m.tgt].clone(),
                })
                .collect(),
            identities: (0..self.object_count())
                .map(|x| (self.objects()[x].clone(), name(self.identity(x))))
                .collect(),
            compose,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_full_document() {
        let doc = r#"{
            "objects": ["a", "b"],
            "morphisms": [{"id":"1a","src":"a","tgt":"a"},{"id":"1b","src":"b","tgt":"b"},
                          {"id":"f","src":"a","tgt":"b"}],
            "identities": {"a":"1a","b":"1b"},
            "compose": [["1a","1a","1a"],["1b","1b","1b"],["1a","f","f"],["f","1b","f"]]
        }"#;
        let c = FinCat::from_json_str(doc).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.comp(0, 2), 2);
    }

    #[test]
    fn round_trip() {
        for c in [FinCat::proper_subset_poset(3), FinCat::symmetric_group_3(), FinCat::parallel_arrows()] {
            let s = c.to_json_string();
            assert_eq!(FinCat::from_json_str(&s).unwrap(), c);
        }
    }

    #[test]
    fn unknown_ids_are_errors() {
        let doc = r#"{"objects":["a"],"morphisms":[{"id":"1","src":"a","tgt":"z"}],
                      "identities":{"a":"1"},"compose":[]}"#;
        assert!(matches!(FinCat::from_json_str(doc), Err(CatError::Unknown { .. })));
        assert!(matches!(FinCat::from_json_str("{"), Err(CatError::Json(_))));
    }
}

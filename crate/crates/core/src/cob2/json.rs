use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CircleRef, Cob2Error, Side, SurfaceCobordism, SurfaceComponent};

/// Wire format of a component. Non-orientable components give `crosscaps`; for
/// them a bare `genus` is read as the crosscap number. `eps` keys are circle ids,
/// prefixed `in:` or `out:` when an id names circles on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponentJson {
    pub orientable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crosscaps: Option<u64>,
    #[serde(rename = "in", default)]
    pub in_circles: Vec<String>,
    #[serde(rename = "out", default)]
    pub out_circles: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub eps: BTreeMap<String, i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCobordismJson {
    pub src: Vec<String>,
    pub tgt: Vec<String>,
    pub components: Vec<SurfaceComponentJson>,
}

impl SurfaceCobordism {
    pub fn from_json_value(doc: &SurfaceCobordismJson) -> Result<Self, Cob2Error> {
        let lookup = |ids: &[String], id: &str, side: Side| -> Result<CircleRef, Cob2Error> {
            ids.iter()
                .position(|x| x == id)
                .map(|pos| CircleRef { side, pos })
                .ok_or_else(|| Cob2Error::Invalid(format!("unknown circle id {id:?}")))
        };
        let mut components = Vec::with_capacity(doc.components.len());
        for c in &doc.components {
            let mut refs = Vec::new();
            for id in &c.in_circles {
                refs.push((id.clone(), lookup(&doc.src, id, Side::In)?));
            }
            for id in &c.out_circles {
                refs.push((id.clone(), lookup(&doc.tgt, id, Side::Out)?));
            }
            if c.orientable {
                let genus = c.genus.unwrap_or(0);
                let mut boundary = Vec::with_capacity(refs.len());
                for (id, r) in &refs {
                    let ambiguous = refs.iter().filter(|(other, _)| other == id).count() > 1;
                    let prefixed = match r.side {
                        Side::In => format!("in:{id}"),
                        Side::Out => format!("out:{id}"),
                    };
                    let e = c
                        .eps
                        .get(&prefixed)
                        .or(if ambiguous { None } else { c.eps.get(id) })
                        .ok_or_else(|| Cob2Error::Invalid(format!("missing eps for circle {id:?}")))?;
                    boundary.push((*r, *e));
                }
                components.push(SurfaceComponent::orientable(genus, &boundary)?);
            } else {
                let h = c
                    .crosscaps
                    .or(c.genus)
                    .ok_or_else(|| Cob2Error::Invalid("non-orientable component without crosscaps".into()))?;
                let circles: Vec<CircleRef> = refs.iter().map(|(_, r)| *r).collect();
                components.push(SurfaceComponent::non_orientable(h, &circles)?);
            }
        }
        SurfaceCobordism::new(doc.src.clone(), doc.tgt.clone(), components)
    }

    pub fn from_json_str(s: &str) -> Result<Self, Cob2Error> {
        let doc: SurfaceCobordismJson = serde_json::from_str(s).map_err(|e| Cob2Error::Json(e.to_string()))?;
        Self::from_json_value(&doc)
    }

    pub fn to_json_value(&self) -> SurfaceCobordismJson {
        let name = |r: &CircleRef| match r.side {
            Side::In => self.src()[r.pos].clone(),
            Side::Out => self.tgt()[r.pos].clone(),
        };
        let components = self
            .components()
            .iter()
            .map(|c| {
                let in_circles: Vec<String> = c.circles().iter().filter(|r| r.side == Side::In).map(name).collect();
                let out_circles: Vec<String> = c.circles().iter().filter(|r| r.side == Side::Out).map(name).collect();
                let mut eps = BTreeMap::new();
                for (r, &e) in c.circles().iter().zip(c.eps()) {
                    let id = name(r);
                    let clash = match r.side {
                        Side::In => out_circles.contains(&id),
                        Side::Out => in_circles.contains(&id),
                    };
                    let key = match (clash, r.side) {
                        (false, _) => id,
                        (true, Side::In) => format!("in:{id}"),
                        (true, Side::Out) => format!("out:{id}"),
                    };
                    eps.insert(key, e);
                }
                SurfaceComponentJson {
                    orientable: c.is_orientable(),
                    genus: c.genus(),
                    crosscaps: c.crosscaps(),
                    in_circles,
                    out_circles,
                    eps,
                }
            })
            .collect();
        SurfaceCobordismJson { src: self.src().to_vec(), tgt: self.tgt().to_vec(), components }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cob2::ConnectedSurface;

    #[test]
    fn parses_documented_shape() {
        let w = SurfaceCobordism::from_json_str(
            r#"{"src":["c0","c1"],"tgt":[],"components":[{"orientable":true,"genus":0,"in":["c0","c1"],"out":[],"eps":{"c0":1,"c1":1}}]}"#,
        )
        .unwrap();
        assert_eq!(w, SurfaceCobordism::annulus_in([1, 1]));
    }

    #[test]
    fn round_trips() {
        let samples = [
            SurfaceCobordism::identity(&["a".to_string(), "b".to_string()]),
            SurfaceCobordism::pants(),
            SurfaceCobordism::closed(ConnectedSurface::KLEIN_BOTTLE),
            SurfaceCobordism::connected_non_orientable(3, 1, 2).unwrap(),
            SurfaceCobordism::annulus_out([1, -1]).disjoint_union(&SurfaceCobordism::disc_in()),
        ];
        for w in samples {
            assert_eq!(SurfaceCobordism::from_json_str(&w.to_json_string()).unwrap(), w);
        }
    }

    #[test]
    fn identity_uses_prefixed_keys() {
        let id = SurfaceCobordism::identity(&["x".to_string()]);
        let doc = id.to_json_value();
        assert_eq!(doc.components[0].eps.keys().collect::<Vec<_>>(), ["in:x", "out:x"]);
    }

    #[test]
    fn errors() {
        assert!(SurfaceCobordism::from_json_str("[]").is_err());
        let missing = r#"{"src":["a"],"tgt":[],"components":[{"orientable":true,"in":["a"],"out":[]}]}"#;
        assert!(SurfaceCobordism::from_json_str(missing).is_err());
        let unknown = r#"{"src":["a"],"tgt":[],"components":[{"orientable":false,"crosscaps":1,"in":["b"]}]}"#;
        assert!(SurfaceCobordism::from_json_str(unknown).is_err());
    }
}

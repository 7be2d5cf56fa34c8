use super::{CircleRef, Cob2Error, SurfaceCobordism, SurfaceComponent};

/// An orientable connected surface together with a chosen orientation, recorded by
/// the induced sign on each boundary circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedComponent {
    pub genus: u64,
    pub boundary: Vec<(CircleRef, i8)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSurfaceCobordism {
    pub src: Vec<String>,
    pub tgt: Vec<String>,
    pub components: Vec<OrientedComponent>,
}

impl OrientedSurfaceCobordism {
    pub fn new(src: Vec<String>, tgt: Vec<String>, components: Vec<OrientedComponent>) -> Result<Self, Cob2Error> {
        let w = Self { src, tgt, components };
        w.forget_orientation()?;
        Ok(w)
    }

    /// Closed oriented surface of genus `g`.
    pub fn closed(genus: u64) -> Self {
        Self { src: Vec::new(), tgt: Vec::new(), components: vec![OrientedComponent { genus, boundary: Vec::new() }] }
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (m, n) = (self.src.len(), self.tgt.len());
        let mut components = self.components.clone();
        components.extend(other.components.iter().map(|c| OrientedComponent {
            genus: c.genus,
            boundary: c
                .boundary
                .iter()
                .map(|&(r, e)| {
                    let shifted = match r.side {
                        super::Side::In => CircleRef::incoming(r.pos + m),
                        super::Side::Out => CircleRef::outgoing(r.pos + n),
                    };
                    (shifted, e)
                })
                .collect(),
        }));
        let ids = |a: &[String], b: &[String]| {
            if b.iter().any(|id| a.contains(id)) {
                super::default_ids(a.len() + b.len())
            } else {
                a.iter().chain(b).cloned().collect()
            }
        };
        Self { src: ids(&self.src, &other.src), tgt: ids(&self.tgt, &other.tgt), components }
    }

    /// The underlying unoriented cobordism: signs are kept only up to a global flip.
    pub fn forget_orientation(&self) -> Result<SurfaceCobordism, Cob2Error> {
        let comps = self
            .components
            .iter()
            .map(|c| SurfaceComponent::orientable(c.genus, &c.boundary))
            .collect::<Result<Vec<_>, _>>()?;
        SurfaceCobordism::new(self.src.clone(), self.tgt.clone(), comps)
    }
}

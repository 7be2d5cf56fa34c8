//! Finite categories as explicit object/morphism/composition tables.
//!
//! Morphisms are dense indices; `compose(f, g)` is `g ∘ f`, i.e. `f` first.

mod builders;
mod functor;
mod json;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use functor::{check_functor, check_nat_trans, Functor, NatTrans};
pub use json::{FinCatJson, MorphismJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("duplicate {kind} id `{id}`")]
    Duplicate { kind: &'static str, id: String },
    #[error("unknown {kind} `{id}`")]
    Unknown { kind: &'static str, id: String },
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("conflicting composites for ({f}, {g}): `{h1}` and `{h2}`")]
    ConflictingComposite { f: String, g: String, h1: String, h2: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `compose[f * n + g] = Some(h)` records `g ∘ f = h`.
    compose: Vec<Option<usize>>,
}

/// One failed law in a category, functor or natural transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingComposite { f: String, g: String },
    NonComposableEntry { f: String, g: String },
    CompositeEndpoints { f: String, g: String, h: String },
    IdentityEndpoints { object: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { f: String, g: String, h: String },
    FunctorEndpoints { morphism: String },
    FunctorIdentity { object: String },
    FunctorComposition { f: String, g: String },
    ComponentEndpoints { object: String },
    Naturality { morphism: String },
    MapSize { what: &'static str, expected: usize, found: usize },
    MapRange { what: &'static str, index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            MissingComposite { f, g } => write!(fm, "composable pair ({f}, {g}) has no composite"),
            NonComposableEntry { f, g } => write!(fm, "composite listed for non-composable pair ({f}, {g})"),
            CompositeEndpoints { f, g, h } => write!(fm, "{g}∘{f} = {h} has wrong source or target"),
            IdentityEndpoints { object } => write!(fm, "identity of {object} is not an endomorphism of it"),
            LeftIdentity { f } => write!(fm, "id∘{f} ≠ {f}"),
            RightIdentity { f } => write!(fm, "{f}∘id ≠ {f}"),
            Associativity { f, g, h } => write!(fm, "{h}∘({g}∘{f}) ≠ ({h}∘{g})∘{f}"),
            FunctorEndpoints { morphism } => write!(fm, "image of {morphism} has wrong endpoints"),
            FunctorIdentity { object } => write!(fm, "identity of {object} not sent to an identity"),
            FunctorComposition { f, g } => write!(fm, "F({g}∘{f}) ≠ F({g})∘F({f})"),
            ComponentEndpoints { object } => write!(fm, "component at {object} has wrong endpoints"),
            Naturality { morphism } => write!(fm, "naturality square for {morphism} does not commute"),
            MapSize { what, expected, found } => write!(fm, "{what} map has {found} entries, expected {expected}"),
            MapRange { what, index } => write!(fm, "{what} map entry {index} is out of range"),
        }
    }
}

/// Empty iff every checked law holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FinCat {
    /// Assembles a category from name-level tables.
    ///
    /// `compose` lists triples `(f, g, h)` meaning `g ∘ f = h`. Structural problems
    /// (unknown or duplicate ids, conflicting entries) are errors; law failures are
    /// left for [`FinCat::validate`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: &HashMap<String, String>,
        compose: &[(String, String, String)],
    ) -> Result<Self, CatError> {
        let obj_index = index_names(&objects, "object")?;
        let mor_names: Vec<String> = morphisms.iter().map(|m| m.0.clone()).collect();
        let mor_index = index_names(&mor_names, "morphism")?;
        let lookup = |map: &HashMap<String, usize>, kind: &'static str, id: &str| {
            map.get(id).copied().ok_or_else(|| CatError::Unknown { kind, id: id.to_string() })
        };
        let mut mors: Vec<Morphism> = Vec::with_capacity(morphisms.len());
        for (id, s, t) in morphisms {
            let src = lookup(&obj_index, "object", &s)?;
            let tgt = lookup(&obj_index, "object", &t)?;
            mors.push(Morphism { id, src, tgt });
        }
        for key in identities.keys() {
            lookup(&obj_index, "object", key)?;
        }
        let mut ids = Vec::with_capacity(objects.len());
        for o in &objects {
            let m = identities.get(o).ok_or_else(|| CatError::MissingIdentity(o.clone()))?;
            ids.push(lookup(&mor_index, "morphism", m)?);
        }
        let n = mors.len();
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for (f, g, h) in compose {
            let fi = lookup(&mor_index, "morphism", f)?;
            let gi = lookup(&mor_index, "morphism", g)?;
            let hi = lookup(&mor_index, "morphism", h)?;
            match table[fi * n + gi] {
                Some(prev) if prev != hi => {
                    return Err(CatError::ConflictingComposite {
                        f: f.clone(),
                        g: g.clone(),
                        h1: mors[prev].id.clone(),
                        h2: h.clone(),
                    })
                }
                _ => table[fi * n + gi] = Some(hi),
            }
        }
        Ok(Self { objects, morphisms: mors, identities: ids, compose: table })
    }

    /// Builds a category from index-level data and a composition function,
    /// called only on composable pairs.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = morphisms.len();
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if morphisms[f].tgt == morphisms[g].src {
                    table[f * n + g] = Some(compose(f, g));
                }
            }
        }
        Self { objects, morphisms, identities, compose: table }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    /// `g ∘ f`, if recorded.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f * self.morphisms.len() + g]
    }

    /// `g ∘ f` for a composable pair of a validated category.
    pub fn comp(&self, f: usize, g: usize) -> usize {
        self.compose(f, g).expect("composite of a composable pair")
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| self.morphisms[f].src == x && self.morphisms[f].tgt == y)
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| !self.is_identity(f))
    }

    fn mor_name(&self, f: usize) -> String {
        self.morphisms[f].id.clone()
    }

    /// Exhaustive check of identity laws, composite endpoints and associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let n = self.morphisms.len();
        for (x, &id) in self.identities.iter().enumerate() {
            if self.morphisms[id].src != x || self.morphisms[id].tgt != x {
                v.push(Violation::IdentityEndpoints { object: self.objects[x].clone() });
            }
        }
        for f in 0..n {
            for g in 0..n {
                let composable = self.tgt(f) == self.src(g);
                match (composable, self.compose(f, g)) {
                    (true, None) => v.push(Violation::MissingComposite { f: self.mor_name(f), g: self.mor_name(g) }),
                    (false, Some(_)) => {
                        v.push(Violation::NonComposableEntry { f: self.mor_name(f), g: self.mor_name(g) })
                    }
                    (true, Some(h)) if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) => {
                        v.push(Violation::CompositeEndpoints {
                            f: self.mor_name(f),
                            g: self.mor_name(g),
                            h: self.mor_name(h),
                        })
                    }
                    _ => {}
                }
            }
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }
        for f in 0..n {
            if self.comp(f, self.identities[self.tgt(f)]) != f {
                v.push(Violation::LeftIdentity { f: self.mor_name(f) });
            }
            if self.comp(self.identities[self.src(f)], f) != f {
                v.push(Violation::RightIdentity { f: self.mor_name(f) });
            }
        }
        for f in 0..n {
            for g in (0..n).filter(|&g| self.src(g) == self.tgt(f)) {
                let gf = self.comp(f, g);
                for h in (0..n).filter(|&h| self.src(h) == self.tgt(g)) {
                    if self.comp(gf, h) != self.comp(f, self.comp(g, h)) {
                        v.push(Violation::Associativity {
                            f: self.mor_name(f),
                            g: self.mor_name(g),
                            h: self.mor_name(h),
                        });
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// Inverse table when every morphism is invertible.
    pub fn is_groupoid(&self) -> Option<Vec<usize>> {
        self.morphisms
            .iter()
            .enumerate()
            .map(|(f, m)| {
                self.hom(m.tgt, m.src).find(|&g| {
                    self.comp(f, g) == self.identities[m.src] && self.comp(g, f) == self.identities[m.tgt]
                })
            })
            .collect()
    }

    /// Cartesian product; the pair `(c, d)` sits at index `c * |D| + d`.
    pub fn product(&self, other: &FinCat) -> FinCat {
        let (no, mo) = (other.objects.len(), other.morphisms.len());
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .flat_map(|f| {
                other.morphisms.iter().map(move |g| Morphism {
                    id: format!("({},{})", f.id, g.id),
                    src: f.src * no + g.src,
                    tgt: f.tgt * no + g.tgt,
                })
            })
            .collect();
        let identities = (0..self.objects.len())
            .flat_map(|x| (0..no).map(move |y| (x, y)))
            .map(|(x, y)| self.identities[x] * mo + other.identities[y])
            .collect();
        FinCat::from_fn(objects, morphisms, identities, |p, q| {
            let (f1, g1) = (p / mo, p % mo);
            let (f2, g2) = (q / mo, q % mo);
            self.comp(f1, f2) * mo + other.comp(g1, g2)
        })
    }

    /// Coproduct; objects and morphisms of `other` are suffixed to keep ids distinct.
    pub fn disjoint_union(&self, other: &FinCat) -> FinCat {
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        let mut objects: Vec<String> = self.objects.iter().map(|o| format!("{o}.0")).collect();
        objects.extend(other.objects.iter().map(|o| format!("{o}.1")));
        let mut morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism { id: format!("{}.0", m.id), src: m.src, tgt: m.tgt })
            .collect();
        morphisms.extend(
            other
                .morphisms
                .iter()
                .map(|m| Morphism { id: format!("{}.1", m.id), src: m.src + no, tgt: m.tgt + no }),
        );
        let mut identities = self.identities.clone();
        identities.extend(other.identities.iter().map(|i| i + nm));
        FinCat::from_fn(objects, morphisms, identities, |f, g| {
            if f < nm {
                self.comp(f, g)
            } else {
                other.comp(f - nm, g - nm) + nm
            }
        })
    }

    /// Relabels: object `x` moves to position `obj_perm[x]`, morphism `f` to `mor_perm[f]`.
    pub fn permuted(&self, obj_perm: &[usize], mor_perm: &[usize]) -> FinCat {
        let mut objects = vec![String::new(); self.objects.len()];
        for (x, &p) in obj_perm.iter().enumerate() {
            objects[p] = self.objects[x].clone();
        }
        let mut morphisms = vec![Morphism { id: String::new(), src: 0, tgt: 0 }; self.morphisms.len()];
        for (f, &p) in mor_perm.iter().enumerate() {
            let m = &self.morphisms[f];
            morphisms[p] = Morphism { id: m.id.clone(), src: obj_perm[m.src], tgt: obj_perm[m.tgt] };
        }
        let mut identities = vec![0; self.objects.len()];
        for (x, &p) in obj_perm.iter().enumerate() {
            identities[p] = mor_perm[self.identities[x]];
        }
        let mut inv = vec![0; mor_perm.len()];
        for (f, &p) in mor_perm.iter().enumerate() {
            inv[p] = f;
        }
        FinCat::from_fn(objects, morphisms, identities, |f, g| mor_perm[self.comp(inv[f], inv[g])])
    }
}

fn index_names(names: &[String], kind: &'static str) -> Result<HashMap<String, usize>, CatError> {
    let mut map = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(CatError::Duplicate { kind, id: n.clone() });
        }
    }
    Ok(map)
}

//! The groupoid obtained by inverting every morphism of a category, read off
//! through edge paths in the nerve.

mod planar;
mod surfaces;

use thiserror::Error;

use crate::exactmath::{inverse_word, AbelianInvariants, GroupPresentation, Letter, Word};
use crate::fincat::{FinCat, Functor};
use crate::nerve::{nerve_two_complex, pi0, EdgePathGroup, TwoComplex};

pub use planar::{planar_cob1_localization, PlanarCob1Localization};
pub use surfaces::{surface_relation_word, surface_localization_group, SurfaceLocalization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizeError {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("morphism {0} is not an endomorphism of the chosen object")]
    NotEndomorphism(String),
    #[error("target category is not a groupoid")]
    NotGroupoid,
    #[error("functor does not respect relator {0}")]
    RelatorNotPreserved(usize),
    #[error("unknown object {0}")]
    UnknownObject(String),
}

/// Per-object automorphism groups of the localization of a finite category.
pub struct LocalizationPresentation<'a> {
    base: &'a FinCat,
    components: Vec<Vec<usize>>,
    groups: Vec<EdgePathGroup>,
    complex: TwoComplex,
    edge_of: Vec<usize>,
    morphism_of_edge: Vec<usize>,
}

pub fn localize(c: &FinCat) -> LocalizationPresentation<'_> {
    let (complex, edge_of) = nerve_two_complex(c);
    let groups = (0..c.object_count()).map(|x| complex.fundamental_group(x)).collect();
    let morphism_of_edge = c.non_identity_morphisms().collect();
    LocalizationPresentation { base: c, components: pi0(c), groups, complex, edge_of, morphism_of_edge }
}

/// Four morphisms `w1, w2: y → x` and `w3, w4: x → y` of one category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance<M> {
    pub w1: M,
    pub w2: M,
    pub w3: M,
    pub w4: M,
}

impl<'a> LocalizationPresentation<'a> {
    pub fn base(&self) -> &'a FinCat {
        self.base
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn aut(&self, x: usize) -> &GroupPresentation {
        &self.groups[x].presentation
    }

    pub fn aut_invariants(&self, x: usize) -> AbelianInvariants {
        self.aut(x).abelianize()
    }

    /// The image of morphism `f: s → t` as a loop at `x`: out along the spanning
    /// forest to `s`, across `f`, and back from `t`. Requires `s`, `t` in the
    /// component of `x`.
    pub fn gamma_loop(&self, x: usize, f: usize) -> Option<Word> {
        let c = self.base;
        let group = &self.groups[x];
        if group.paths.component[c.src(f)] != group.paths.component[x] {
            return None;
        }
        if c.is_identity(f) {
            return Some(Vec::new());
        }
        group.loop_of_edge(&self.complex, self.edge_of[f])
    }

    /// `γ(f)` for an endomorphism `f` of `x`.
    pub fn gamma(&self, x: usize, f: usize) -> Result<Word, LocalizeError> {
        let c = self.base;
        if c.src(f) != x || c.tgt(f) != x {
            return Err(LocalizeError::NotEndomorphism(c.morphism(f).id.clone()));
        }
        Ok(self.gamma_loop(x, f).expect("endomorphisms of x lie in its component"))
    }

    /// `γ(a) · γ(b)⁻¹ · γ(d) · γ(c)⁻¹` with `a = w1∘w3`, `b = w2∘w3`, `c = w1∘w4`,
    /// `d = w2∘w4`; trivial in the localization.
    pub fn relation_word(&self, r: &RelationInstance<usize>) -> Result<Word, LocalizeError> {
        let c = self.base;
        let (y, x) = (c.src(r.w1), c.tgt(r.w1));
        let name = |f: usize| c.morphism(f).id.clone();
        for (label, f, s, t) in [("w1", r.w1, y, x), ("w2", r.w2, y, x), ("w3", r.w3, x, y), ("w4", r.w4, x, y)] {
            if c.src(f) != s || c.tgt(f) != t {
                return Err(LocalizeError::TypeMismatch(format!("{label} = {} has the wrong source or target", name(f))));
            }
        }
        let a = c.comp(r.w3, r.w1);
        let b = c.comp(r.w3, r.w2);
        let cc = c.comp(r.w4, r.w1);
        let d = c.comp(r.w4, r.w2);
        let mut w = self.gamma(x, a)?;
        w.extend(inverse_word(&self.gamma(x, b)?));
        w.extend(self.gamma(x, d)?);
        w.extend(inverse_word(&self.gamma(x, cc)?));
        Ok(w)
    }

    /// All well-typed instances with target object `x`.
    pub fn relation_instances(&self, x: usize) -> Vec<RelationInstance<usize>> {
        let c = self.base;
        let mut out = Vec::new();
        for y in 0..c.object_count() {
            let down: Vec<usize> = c.hom(y, x).collect();
            let up: Vec<usize> = c.hom(x, y).collect();
            for &w1 in &down {
                for &w2 in &down {
                    for &w3 in &up {
                        for &w4 in &up {
                            out.push(RelationInstance { w1, w2, w3, w4 });
                        }
                    }
                }
            }
        }
        out
    }

    /// The homomorphism `aut(x) → Aut_D(F(x))` induced by a functor into a finite
    /// groupoid, as the image of each generator. Every relator is checked to map to
    /// the identity.
    pub fn induced_homomorphism(&self, x: usize, f: &Functor<'_>) -> Result<Vec<usize>, LocalizeError> {
        let d = f.target;
        let inverse = d.is_groupoid().ok_or(LocalizeError::NotGroupoid)?;
        let c = self.base;
        let group = &self.groups[x];
        let fx = f.object_map[x];
        // image of the forest path from x to each vertex of its component
        let mut path_image = vec![usize::MAX; c.object_count()];
        for v in 0..c.object_count() {
            if group.paths.component[v] != group.paths.component[x] {
                continue;
            }
            let mut acc = d.identity(fx);
            for l in group.paths.path_from_base(v).iter().rev() {
                let mor = self.complex_morphism(l.generator);
                let m = if l.inverse { inverse[f.morphism_map[mor]] } else { f.morphism_map[mor] };
                acc = d.comp(acc, m);
            }
            path_image[v] = acc;
        }
        let gens = group.presentation.generators().len();
        let mut images = vec![usize::MAX; gens];
        for (e, g) in group.generator_of_edge.iter().enumerate() {
            if let Some(g) = *g {
                let mor = self.complex_morphism(e);
                let (s, t) = (c.src(mor), c.tgt(mor));
                let there = d.comp(path_image[s], f.morphism_map[mor]);
                images[g] = d.comp(there, inverse[path_image[t]]);
            }
        }
        for (i, rel) in group.presentation.relators().iter().enumerate() {
            if evaluate_in_groupoid(d, &inverse, &images, fx, rel) != d.identity(fx) {
                return Err(LocalizeError::RelatorNotPreserved(i));
            }
        }
        Ok(images)
    }

    fn complex_morphism(&self, e: usize) -> usize {
        self.morphism_of_edge[e]
    }
}

/// Value of a word (composition order) over automorphisms of `obj` in a groupoid.
pub fn evaluate_in_groupoid(d: &FinCat, inverse: &[usize], images: &[usize], obj: usize, w: &[Letter]) -> usize {
    let mut acc = d.identity(obj);
    for l in w.iter().rev() {
        let m = if l.inverse { inverse[images[l.generator]] } else { images[l.generator] };
        acc = d.comp(acc, m);
    }
    acc
}

/// Looks up an object by name for [`LocalizationPresentation::aut`].
pub fn object_by_name(c: &FinCat, name: &str) -> Result<usize, LocalizeError> {
    c.object_index(name).ok_or_else(|| LocalizeError::UnknownObject(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::free_reduce;

    #[test]
    fn groupoid_aut_is_the_automorphism_group() {
        let s3 = FinCat::symmetric_group_3();
        let loc = localize(&s3);
        assert_eq!(loc.aut_invariants(0), AbelianInvariants::cyclic(2));
        let z4 = FinCat::cyclic_group(4);
        assert_eq!(localize(&z4).aut_invariants(0), AbelianInvariants::cyclic(4));
    }

    #[test]
    fn parallel_arrows_and_terminal_objects() {
        let c = FinCat::parallel_arrows();
        let loc = localize(&c);
        for x in 0..2 {
            assert_eq!(loc.aut_invariants(x), AbelianInvariants::free(1));
        }
        let t = FinCat::proper_subset_poset(3).with_terminal_object();
        let loc = localize(&t);
        for x in 0..t.object_count() {
            assert!(loc.aut_invariants(x).is_trivial());
        }
    }

    #[test]
    fn degenerate_instance_reduces_freely() {
        let c = FinCat::cyclic_group(3);
        let loc = localize(&c);
        let g = c.morphism_index("g1").unwrap();
        let w = loc.relation_word(&RelationInstance { w1: g, w2: g, w3: g, w4: g }).unwrap();
        assert!(free_reduce(&w).is_empty());
    }

    #[test]
    fn relation_words_vanish_after_abelianizing() {
        for c in [FinCat::symmetric_group_3(), FinCat::parallel_arrows(), FinCat::proper_subset_poset(3)] {
            let loc = localize(&c);
            for x in 0..c.object_count() {
                let q = crate::exactmath::AbelianQuotient::new(&loc.aut(x).exponent_matrix());
                for r in loc.relation_instances(x) {
                    let w = loc.relation_word(&r).unwrap();
                    assert!(q.is_trivial(&loc.aut(x).exponent_vector(&w)));
                }
            }
        }
    }

    #[test]
    fn ill_typed_instances_are_rejected() {
        let c = FinCat::parallel_arrows();
        let loc = localize(&c);
        let f = c.morphism_index("f").unwrap();
        let err = loc.relation_word(&RelationInstance { w1: f, w2: f, w3: f, w4: f });
        assert!(matches!(err, Err(LocalizeError::TypeMismatch(_))));
    }

    #[test]
    fn functors_into_groupoids_factor() {
        let c = FinCat::parallel_arrows();
        let z3 = FinCat::cyclic_group(3);
        let loc = localize(&c);
        let functors = Functor::enumerate(&c, &z3);
        assert_eq!(functors.len(), 9);
        for f in &functors {
            let images = loc.induced_homomorphism(0, f).unwrap();
            assert_eq!(images.len(), loc.aut(0).generators().len());
        }
    }
}

use cobcat::cob2::{ClosedSurfaceClass, ConnectedSurface};
use cobcat::exactmath::{AbelianInvariants, AbelianQuotient};
use cobcat::fincat::{FinCat, Functor};
use cobcat::localize::*;
use num_bigint::BigInt;

fn sources() -> Vec<FinCat> {
    let flip = FinCat::one_object_monoid(&["1", "e"], |a, b| if a == 1 && b == 1 { 1 } else { a + b });
    vec![
        FinCat::parallel_arrows(),
        FinCat::interval(),
        FinCat::cyclic_group(4),
        FinCat::symmetric_group_3(),
        FinCat::proper_subset_poset(3),
        flip,
    ]
}

#[test]
fn every_functor_to_a_groupoid_factors_through_the_localization() {
    let targets = [FinCat::cyclic_group(2), FinCat::cyclic_group(3), FinCat::symmetric_group_3()];
    for c in sources() {
        let loc = localize(&c);
        for d in &targets {
            let inverse = d.is_groupoid().unwrap();
            for f in Functor::enumerate(&c, d) {
                for x in 0..c.object_count() {
                    let images = loc.induced_homomorphism(x, &f).unwrap();
                    let fx = f.object_map[x];
                    for e in c.hom(x, x) {
                        let w = loc.gamma(x, e).unwrap();
                        assert_eq!(evaluate_in_groupoid(d, &inverse, &images, fx, &w), f.morphism_map[e]);
                    }
                    for r in loc.relation_instances(x) {
                        let w = loc.relation_word(&r).unwrap();
                        assert_eq!(evaluate_in_groupoid(d, &inverse, &images, fx, &w), d.identity(fx));
                    }
                }
            }
        }
    }
}

#[test]
fn idempotent_monoid_localizes_to_the_trivial_group() {
    let c = FinCat::one_object_monoid(&["1", "e"], |a, b| if a == 1 && b == 1 { 1 } else { a + b });
    assert!(localize(&c).aut_invariants(0).is_trivial());
}

#[test]
fn relation_words_are_trivial_for_all_sources() {
    for c in sources() {
        let loc = localize(&c);
        for x in 0..c.object_count() {
            let q = AbelianQuotient::new(&loc.aut(x).exponent_matrix());
            for r in loc.relation_instances(x) {
                let w = loc.relation_word(&r).unwrap();
                assert!(q.is_trivial(&loc.aut(x).exponent_vector(&w)));
            }
        }
    }
}

#[test]
fn planar_model_stabilizes() {
    for n in [2, 4, 6] {
        let m = planar_cob1_localization(n);
        assert_eq!(m.components.len(), 2);
        assert_eq!(m.invariants, AbelianInvariants::free(1));
        assert_eq!(m.circle_class.len(), 1);
        assert_eq!(m.circle_class[0].magnitude(), BigInt::from(1).magnitude());
    }
}

#[test]
fn surface_classes_are_euler_characteristics_at_small_complexity() {
    for max in [2, 4] {
        let s = surface_localization_group(max);
        assert_eq!(s.invariants, AbelianInvariants::free(1));
        for (g, class) in s.classes() {
            assert_eq!(class, vec![BigInt::from(g.chi())], "{g}");
        }
        let torus = ClosedSurfaceClass::connected(ConnectedSurface::TORUS);
        let klein = ClosedSurfaceClass::connected(ConnectedSurface::KLEIN_BOTTLE);
        assert_eq!(s.integer_class(&torus), Some(BigInt::from(0)));
        assert_eq!(s.integer_class(&klein), Some(BigInt::from(0)));
        assert_eq!(s.integer_class(&ClosedSurfaceClass::empty()), Some(BigInt::from(0)));
    }
}

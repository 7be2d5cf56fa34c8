use std::thread;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{LocalizeError, RelationInstance};
use crate::cob2::{compose_surface, CircleRef, ClosedSurfaceClass, ConnectedSurface, SurfaceCobordism, SurfaceComponent};
use crate::exactmath::{AbelianInvariants, AbelianQuotient, HermiteLattice, Letter, Word};

/// The abelian group generated by closed connected surfaces subject to every
/// enumerated relation instance through `∅`, `S¹` and `S¹ ⊔ S¹`.
#[derive(Clone, Debug)]
pub struct SurfaceLocalization {
    pub max_complexity: usize,
    pub generators: Vec<ConnectedSurface>,
    pub instance_count: usize,
    pub invariants: AbelianInvariants,
    relations: HermiteLattice,
    quotient: AbelianQuotient,
    free_signs: Vec<BigInt>,
}

impl SurfaceLocalization {
    pub fn relation_lattice(&self) -> &HermiteLattice {
        &self.relations
    }

    /// Coordinates of a closed surface: torsion coordinates first, then free ones,
    /// with free coordinates signed so that the sphere is non-negative. `None` when
    /// some component lies outside the generator range.
    pub fn class_of(&self, s: &ClosedSurfaceClass) -> Option<Vec<BigInt>> {
        let v = exponent_vector(&self.generators, s)?;
        Some(self.class_of_vector(&v))
    }

    pub fn class_of_generator(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![0i64; self.generators.len()];
        v[i] = 1;
        self.class_of_vector(&v)
    }

    fn class_of_vector(&self, v: &[i64]) -> Vec<BigInt> {
        let mut c = self.quotient.class_of_i64(v);
        let t = self.invariants.torsion.len();
        for (x, sign) in c[t..].iter_mut().zip(&self.free_signs) {
            *x *= sign;
        }
        c
    }

    /// The single coordinate when the group is infinite cyclic.
    pub fn integer_class(&self, s: &ClosedSurfaceClass) -> Option<BigInt> {
        if self.invariants != AbelianInvariants::free(1) {
            return None;
        }
        self.class_of(s).map(|c| c[0].clone())
    }

    pub fn classes(&self) -> Vec<(ConnectedSurface, Vec<BigInt>)> {
        (0..self.generators.len()).map(|i| (self.generators[i], self.class_of_generator(i))).collect()
    }
}

fn exponent_vector(generators: &[ConnectedSurface], s: &ClosedSurfaceClass) -> Option<Vec<i64>> {
    let mut v = vec![0i64; generators.len()];
    for p in s.parts() {
        v[generators.iter().position(|g| g == p)?] += 1;
    }
    Some(v)
}

/// Connected pieces with boundary on `circles` and Euler characteristic at least `−m`.
fn connected_pieces(circles: &[CircleRef], m: i64) -> Vec<SurfaceComponent> {
    let b = circles.len() as i64;
    let mut out = Vec::new();
    let mut g = 0u64;
    while 2 - 2 * g as i64 - b >= -m {
        let mut sign_patterns: Vec<Vec<i8>> = vec![vec![1]];
        for _ in 1..circles.len() {
            sign_patterns = sign_patterns.into_iter().flat_map(|p| [1, -1].map(|e| [p.clone(), vec![e]].concat())).collect();
        }
        if circles.is_empty() {
            sign_patterns = vec![Vec::new()];
        }
        for eps in sign_patterns {
            let boundary: Vec<(CircleRef, i8)> = circles.iter().copied().zip(eps).collect();
            out.push(SurfaceComponent::orientable(g, &boundary).expect("in range"));
        }
        g += 1;
    }
    let mut h = 1u64;
    while 2 - h as i64 - b >= -m {
        out.push(SurfaceComponent::non_orientable(h, circles).expect("in range"));
        h += 1;
    }
    out
}

/// All cobordisms `∅ → y` (`outgoing`) or `y → ∅` without closed components,
/// for `y` a disjoint union of one or two circles.
fn boundary_pieces(circles: usize, outgoing: bool, m: i64) -> Vec<SurfaceCobordism> {
    let at = |pos| if outgoing { CircleRef::outgoing(pos) } else { CircleRef::incoming(pos) };
    let ids = crate::cob2::default_ids(circles);
    let (src, tgt) = if outgoing { (Vec::new(), ids) } else { (ids, Vec::new()) };
    let mut out = Vec::new();
    let all: Vec<CircleRef> = (0..circles).map(at).collect();
    for c in connected_pieces(&all, m) {
        out.push(SurfaceCobordism::new(src.clone(), tgt.clone(), vec![c]).expect("valid piece"));
    }
    if circles == 2 {
        for p in connected_pieces(&[at(0)], m) {
            for q in connected_pieces(&[at(1)], m) {
                out.push(SurfaceCobordism::new(src.clone(), tgt.clone(), vec![p.clone(), q]).expect("valid piece"));
            }
        }
    }
    out
}

fn is_simple(w: &SurfaceCobordism) -> bool {
    w.components().iter().all(|c| c.chi() >= 0)
}

/// Exponent vectors of `cap ∘ cup` for every pair, `None` when a component falls
/// outside the generator range.
fn composite_table(
    cups: &[SurfaceCobordism],
    caps: &[SurfaceCobordism],
    generators: &[ConnectedSurface],
) -> Vec<Vec<Option<Vec<i64>>>> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(cups.len().max(1));
    let chunk = cups.len().div_ceil(workers.max(1)).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = cups
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|cup| {
                            caps.iter()
                                .map(|cap| {
                                    let closed = compose_surface(cup, cap).expect("interfaces agree");
                                    let class = ClosedSurfaceClass::from_cobordism(&closed).expect("closed");
                                    exponent_vector(generators, &class)
                                })
                                .collect()
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker finished")).collect()
    })
}

/// Adds `a − b − c + d` for every instance with `w1` from `caps`, `w2` from
/// `caps_ref`, `w3` from `cups`, `w4` from `cups_ref`, skipping instances that
/// leave the generator range. Returns the number of instances used.
fn accumulate(
    lattice: &mut HermiteLattice,
    table: &[Vec<Option<Vec<i64>>>],
    cap_refs: &[usize],
    cup_refs: &[usize],
) -> usize {
    let dim = lattice.dim();
    let rows: Vec<(HermiteLattice, usize)> = thread::scope(|scope| {
        let workers = thread::available_parallelism().map_or(1, |n| n.get()).max(1);
        let chunk = table.len().div_ceil(workers).max(1);
        let handles: Vec<_> = table
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut local = HermiteLattice::new(dim);
                    let mut used = 0;
                    let mut v = vec![0i64; dim];
                    for row3 in part {
                        for &w4 in cup_refs {
                            let row4 = &table[w4];
                            for w1 in 0..row3.len() {
                                for &w2 in cap_refs {
                                    let (Some(a), Some(b), Some(c), Some(d)) = (&row3[w1], &row3[w2], &row4[w1], &row4[w2])
                                    else {
                                        continue;
                                    };
                                    used += 1;
                                    for k in 0..dim {
                                        v[k] = a[k] - b[k] - c[k] + d[k];
                                    }
                                    if v.iter().any(|&x| x != 0) {
                                        local.insert_i64(&v);
                                    }
                                }
                            }
                        }
                    }
                    (local, used)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker finished")).collect()
    });
    let mut used = 0;
    for (local, n) in rows {
        lattice.merge(&local);
        used += n;
    }
    used
}

/// Presents the automorphism group of `∅` in the localized surface category by
/// closed connected surfaces with `χ ≥ −max_complexity` and the relation words of
/// enumerated instances. Through `S¹` all four morphisms range over connected
/// pieces; through `S¹ ⊔ S¹`, `w1` and `w3` range over all pieces (connected or
/// not) while `w2` and `w4` range over pieces whose components have `χ ≥ 0`.
pub fn surface_localization_group(max_complexity: usize) -> SurfaceLocalization {
    let m = max_complexity as i64;
    let generators = ConnectedSurface::all_with_chi_at_least(-m);
    let dim = generators.len();
    let mut lattice = HermiteLattice::new(dim);
    let mut instance_count = 0;
    for circles in [1usize, 2] {
        let cups = boundary_pieces(circles, true, m);
        let caps = boundary_pieces(circles, false, m);
        let table = composite_table(&cups, &caps, &generators);
        let (cap_refs, cup_refs): (Vec<usize>, Vec<usize>) = if circles == 1 {
            ((0..caps.len()).collect(), (0..cups.len()).collect())
        } else {
            (
                (0..caps.len()).filter(|&i| is_simple(&caps[i])).collect(),
                (0..cups.len()).filter(|&i| is_simple(&cups[i])).collect(),
            )
        };
        instance_count += accumulate(&mut lattice, &table, &cap_refs, &cup_refs);
    }
    // y = ∅ contributes only the empty relator
    instance_count += 1;
    let quotient = AbelianQuotient::new(&lattice.basis());
    let invariants = quotient.invariants().clone();
    let mut result = SurfaceLocalization {
        max_complexity,
        generators,
        instance_count,
        invariants,
        relations: lattice,
        quotient,
        free_signs: Vec::new(),
    };
    let t = result.invariants.torsion.len();
    let free = result.invariants.rank;
    result.free_signs = vec![BigInt::from(1); free];
    let raw: Vec<Vec<BigInt>> = (0..dim).map(|i| result.class_of_generator(i)).collect();
    for k in 0..free {
        let first = raw.iter().map(|c| &c[t + k]).find(|x| !x.is_zero());
        if first.is_some_and(|x| x.is_negative()) {
            result.free_signs[k] = BigInt::from(-1);
        }
    }
    result
}

/// `a · b⁻¹ · d · c⁻¹` for an instance through `y` ending at `∅`, with each closed
/// composite written as the product of its connected components.
pub fn surface_relation_word(
    r: &RelationInstance<SurfaceCobordism>,
    generators: &[ConnectedSurface],
) -> Result<Word, LocalizeError> {
    let y = r.w1.src().len();
    for (label, w, down) in [("w1", &r.w1, true), ("w2", &r.w2, true), ("w3", &r.w3, false), ("w4", &r.w4, false)] {
        let (from, to) = (w.src().len(), w.tgt().len());
        let ok = if down { from == y && to == 0 } else { from == 0 && to == y };
        if !ok {
            return Err(LocalizeError::TypeMismatch(format!("{label} is {from} -> {to}, expected a map through {y} circles")));
        }
    }
    let word_of = |cup: &SurfaceCobordism, cap: &SurfaceCobordism| -> Result<Word, LocalizeError> {
        let closed = compose_surface(cup, cap).map_err(|e| LocalizeError::TypeMismatch(e.to_string()))?;
        let class = ClosedSurfaceClass::from_cobordism(&closed).expect("closed composite");
        class
            .parts()
            .iter()
            .map(|p| {
                generators
                    .iter()
                    .position(|g| g == p)
                    .map(Letter::new)
                    .ok_or_else(|| LocalizeError::TypeMismatch(format!("{p} is not among the generators")))
            })
            .collect()
    };
    let inv = |w: Word| crate::exactmath::inverse_word(&w);
    let mut word = word_of(&r.w3, &r.w1)?;
    word.extend(inv(word_of(&r.w3, &r.w2)?));
    word.extend(word_of(&r.w4, &r.w2)?);
    word.extend(inv(word_of(&r.w4, &r.w1)?));
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::GroupPresentation;

    #[test]
    fn disc_and_mobius_instance() {
        let gens = ConnectedSurface::all_with_chi_at_least(-2);
        let disc_in = SurfaceCobordism::disc_in();
        let mobius_in = SurfaceCobordism::connected_non_orientable(1, 1, 0).unwrap();
        let disc_out = SurfaceCobordism::disc_out();
        let mobius_out = SurfaceCobordism::connected_non_orientable(1, 0, 1).unwrap();
        let r = RelationInstance { w1: disc_in, w2: mobius_in, w3: disc_out, w4: mobius_out };
        let w = surface_relation_word(&r, &gens).unwrap();
        let names: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        let p = GroupPresentation::free(names);
        assert_eq!(p.format_word(&w), "S2 RP2^-1 K RP2^-1");
        let v = p.exponent_vector(&w);
        let idx = |s: ConnectedSurface| gens.iter().position(|&g| g == s).unwrap();
        assert_eq!(v[idx(ConnectedSurface::SPHERE)], BigInt::from(1));
        assert_eq!(v[idx(ConnectedSurface::KLEIN_BOTTLE)], BigInt::from(1));
        assert_eq!(v[idx(ConnectedSurface::PROJECTIVE_PLANE)], BigInt::from(-2));
    }

    #[test]
    fn mistyped_instance() {
        let gens = ConnectedSurface::all_with_chi_at_least(-2);
        let d = SurfaceCobordism::disc_in();
        let r = RelationInstance { w1: d.clone(), w2: d.clone(), w3: d.clone(), w4: d };
        assert!(surface_relation_word(&r, &gens).is_err());
    }

    #[test]
    fn small_complexity_gives_euler_characteristic() {
        let loc = surface_localization_group(4);
        assert_eq!(loc.invariants, AbelianInvariants::free(1));
        for (s, class) in loc.classes() {
            assert_eq!(class, vec![BigInt::from(s.chi())], "{s}");
        }
    }

    #[test]
    fn piece_counts() {
        assert_eq!(boundary_pieces(1, true, 2).len(), 2 + 3);
        // connected: genus 0, 1 with two sign patterns each, crosscaps 1, 2; plus 5 × 5 split pairs
        assert_eq!(boundary_pieces(2, false, 2).len(), 4 + 2 + 25);
    }
}

use super::{FinCat, ValidationReport, Violation};

#[derive(Clone, Debug)]
pub struct Functor<'a> {
    pub source: &'a FinCat,
    pub target: &'a FinCat,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl<'a> Functor<'a> {
    pub fn identity(c: &'a FinCat) -> Self {
        Self {
            source: c,
            target: c,
            object_map: (0..c.object_count()).collect(),
            morphism_map: (0..c.morphism_count()).collect(),
        }
    }

    /// Everything to object `x` of `target` and its identity.
    pub fn constant(source: &'a FinCat, target: &'a FinCat, x: usize) -> Self {
        Self {
            source,
            target,
            object_map: vec![x; source.object_count()],
            morphism_map: vec![target.identity(x); source.morphism_count()],
        }
    }

    /// All functors `source → target`, by brute force over morphism assignments.
    ///
    /// Intended for tiny categories; the search is pruned on endpoints and composition.
    pub fn enumerate(source: &'a FinCat, target: &'a FinCat) -> Vec<Functor<'a>> {
        let mut out = Vec::new();
        let mut obj = vec![usize::MAX; source.object_count()];
        let mut mor = vec![usize::MAX; source.morphism_count()];
        enumerate_rec(source, target, 0, &mut obj, &mut mor, &mut out);
        out
    }
}

fn enumerate_rec<'a>(
    source: &'a FinCat,
    target: &'a FinCat,
    f: usize,
    obj: &mut Vec<usize>,
    mor: &mut Vec<usize>,
    out: &mut Vec<Functor<'a>>,
) {
    if f == source.morphism_count() {
        // isolated objects have only their identity, which fixed their image already
        let candidate = Functor { source, target, object_map: obj.clone(), morphism_map: mor.clone() };
        if check_functor(&candidate).is_ok() {
            out.push(candidate);
        }
        return;
    }
    let (s, t) = (source.src(f), source.tgt(f));
    let identity = source.is_identity(f);
    for img in 0..target.morphism_count() {
        let (ts, tt) = (target.src(img), target.tgt(img));
        if identity && !target.is_identity(img) {
            continue;
        }
        if (obj[s] != usize::MAX && obj[s] != ts) || (obj[t] != usize::MAX && obj[t] != tt) {
            continue;
        }
        let saved = (obj[s], obj[t]);
        obj[s] = ts;
        obj[t] = tt;
        mor[f] = img;
        let consistent = (0..f).all(|g| {
            let chk = |a: usize, b: usize| match source.compose(a, b) {
                Some(h) if h <= f && mor[h] != usize::MAX => target.compose(mor[a], mor[b]) == Some(mor[h]),
                _ => true,
            };
            chk(g, f) && chk(f, g)
        });
        if consistent {
            enumerate_rec(source, target, f + 1, obj, mor, out);
        }
        obj[s] = saved.0;
        obj[t] = saved.1;
        mor[f] = usize::MAX;
    }
}

/// Exhaustive functor-law check.
pub fn check_functor(func: &Functor<'_>) -> ValidationReport {
    let (c, d) = (func.source, func.target);
    let mut v = Vec::new();
    if func.object_map.len() != c.object_count() {
        v.push(Violation::MapSize { what: "object", expected: c.object_count(), found: func.object_map.len() });
    }
    if func.morphism_map.len() != c.morphism_count() {
        v.push(Violation::MapSize {
            what: "morphism",
            expected: c.morphism_count(),
            found: func.morphism_map.len(),
        });
    }
    for (i, &x) in func.object_map.iter().enumerate() {
        if x >= d.object_count() {
            v.push(Violation::MapRange { what: "object", index: i });
        }
    }
    for (i, &x) in func.morphism_map.iter().enumerate() {
        if x >= d.morphism_count() {
            v.push(Violation::MapRange { what: "morphism", index: i });
        }
    }
    if !v.is_empty() {
        return ValidationReport { violations: v };
    }
    let (om, mm) = (&func.object_map, &func.morphism_map);
    for f in 0..c.morphism_count() {
        if d.src(mm[f]) != om[c.src(f)] || d.tgt(mm[f]) != om[c.tgt(f)] {
            v.push(Violation::FunctorEndpoints { morphism: c.morphism(f).id.clone() });
        }
    }
    for x in 0..c.object_count() {
        if mm[c.identity(x)] != d.identity(om[x]) {
            v.push(Violation::FunctorIdentity { object: c.objects()[x].clone() });
        }
    }
    if !v.is_empty() {
        return ValidationReport { violations: v };
    }
    for f in 0..c.morphism_count() {
        for g in (0..c.morphism_count()).filter(|&g| c.src(g) == c.tgt(f)) {
            if d.compose(mm[f], mm[g]) != Some(mm[c.comp(f, g)]) {
                v.push(Violation::FunctorComposition {
                    f: c.morphism(f).id.clone(),
                    g: c.morphism(g).id.clone(),
                });
            }
        }
    }
    ValidationReport { violations: v }
}

#[derive(Clone, Debug)]
pub struct NatTrans<'a> {
    pub from: &'a Functor<'a>,
    pub to: &'a Functor<'a>,
    pub components: Vec<usize>,
}

/// Checks component endpoints and every naturality square `G(f) ∘ T_x = T_y ∘ F(f)`.
pub fn check_nat_trans(t: &NatTrans<'_>) -> ValidationReport {
    let (f_, g_) = (t.from, t.to);
    let (c, d) = (f_.source, f_.target);
    let mut v = Vec::new();
    if t.components.len() != c.object_count() {
        v.push(Violation::MapSize { what: "component", expected: c.object_count(), found: t.components.len() });
        return ValidationReport { violations: v };
    }
    for (x, &m) in t.components.iter().enumerate() {
        if m >= d.morphism_count() || d.src(m) != f_.object_map[x] || d.tgt(m) != g_.object_map[x] {
            v.push(Violation::ComponentEndpoints { object: c.objects()[x].clone() });
        }
    }
    if !v.is_empty() {
        return ValidationReport { violations: v };
    }
    for f in 0..c.morphism_count() {
        let (x, y) = (c.src(f), c.tgt(f));
        let lhs = d.compose(t.components[x], g_.morphism_map[f]);
        let rhs = d.compose(f_.morphism_map[f], t.components[y]);
        if lhs.is_none() || lhs != rhs {
            v.push(Violation::Naturality { morphism: c.morphism(f).id.clone() });
        }
    }
    ValidationReport { violations: v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_constant_functors() {
        let c = FinCat::parallel_arrows();
        assert!(check_functor(&Functor::identity(&c)).is_ok());
        let t = FinCat::terminal();
        assert!(check_functor(&Functor::constant(&c, &t, 0)).is_ok());
    }

    #[test]
    fn composition_violation_names_pair() {
        let z2 = FinCat::cyclic_group(2);
        let z3 = FinCat::cyclic_group(3);
        // g1 ↦ g1 in Z/3 breaks g1∘g1 = g0
        let f = Functor { source: &z2, target: &z3, object_map: vec![0], morphism_map: vec![0, 1] };
        let r = check_functor(&f);
        assert_eq!(r.violations, vec![Violation::FunctorComposition { f: "g1".into(), g: "g1".into() }]);
    }

    #[test]
    fn enumeration_counts_homomorphisms() {
        // homomorphisms Z/6 → Z/3: 3; Z/3 → Z/2: 1; S3 → Z/2: 2
        let z6 = FinCat::cyclic_group(6);
        let z3 = FinCat::cyclic_group(3);
        let z2 = FinCat::cyclic_group(2);
        assert_eq!(Functor::enumerate(&z6, &z3).len(), 3);
        assert_eq!(Functor::enumerate(&z3, &z2).len(), 1);
        assert_eq!(Functor::enumerate(&FinCat::symmetric_group_3(), &z2).len(), 2);
        // functors interval → parallel arrows: 2 constants + f + g
        assert_eq!(Functor::enumerate(&FinCat::interval(), &FinCat::parallel_arrows()).len(), 4);
    }

    #[test]
    fn naturality() {
        let i = FinCat::interval();
        let c = FinCat::parallel_arrows();
        let funcs = Functor::enumerate(&i, &c);
        let by_image = |m: &str| {
            let idx = c.morphism_index(m).unwrap();
            funcs.iter().find(|f| f.morphism_map.contains(&idx) && !c.is_identity(idx)).unwrap()
        };
        let (ff, fg) = (by_image("f"), by_image("g"));
        let a = c.object_index("a").unwrap();
        let b = c.object_index("b").unwrap();
        let same = NatTrans { from: ff, to: ff, components: vec![c.identity(a), c.identity(b)] };
        assert!(check_nat_trans(&same).is_ok());
        let bad = NatTrans { from: ff, to: fg, components: vec![c.identity(a), c.identity(b)] };
        let r = check_nat_trans(&bad);
        assert_eq!(r.violations, vec![Violation::Naturality { morphism: "0<1".into() }]);
    }
}

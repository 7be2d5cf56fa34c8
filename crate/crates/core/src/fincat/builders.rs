use super::{FinCat, Morphism};

impl FinCat {
    /// One object, one morphism.
    pub fn terminal() -> FinCat {
        Self::one_object_monoid(&["id"], |_, _| 0)
    }

    /// The poset `{0 < 1}`.
    pub fn interval() -> FinCat {
        Self::poset(&["0", "1"], |a, b| a <= b)
    }

    /// Objects `a`, `b` and two parallel arrows `f, g: a → b`.
    pub fn parallel_arrows() -> FinCat {
        let objects = vec!["a".to_string(), "b".to_string()];
        let morphisms = vec![
            Morphism { id: "id_a".into(), src: 0, tgt: 0 },
            Morphism { id: "id_b".into(), src: 1, tgt: 1 },
            Morphism { id: "f".into(), src: 0, tgt: 1 },
            Morphism { id: "g".into(), src: 0, tgt: 1 },
        ];
        FinCat::from_fn(objects, morphisms, vec![0, 1], |f, g| match (f, g) {
            (0, x) | (x, 1) => x,
            _ => unreachable!("no composable pair of non-identities"),
        })
    }

    /// A monoid viewed as a category with one object `*`. Element 0 must be the unit;
    /// `mul(f, g)` is the composite `g ∘ f`.
    pub fn one_object_monoid(names: &[&str], mul: impl Fn(usize, usize) -> usize) -> FinCat {
        let morphisms = names.iter().map(|n| Morphism { id: n.to_string(), src: 0, tgt: 0 }).collect();
        FinCat::from_fn(vec!["*".into()], morphisms, vec![0], mul)
    }

    /// The cyclic group of order `n` as a one-object category, elements `g0 .. g{n-1}`.
    pub fn cyclic_group(n: usize) -> FinCat {
        assert!(n >= 1);
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::one_object_monoid(&refs, |a, b| (a + b) % n)
    }

    /// The symmetric group on three letters; element `i` is the `i`-th permutation
    /// of `[0, 1, 2]` in lexicographic order, composed as functions.
    pub fn symmetric_group_3() -> FinCat {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let names: Vec<String> = perms.iter().map(|p| format!("s{}{}{}", p[0], p[1], p[2])).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let perms2 = perms.clone();
        Self::one_object_monoid(&refs, move |f, g| {
            let (pf, pg) = (perms2[f], perms2[g]);
            let composite = [pg[pf[0]], pg[pf[1]], pg[pf[2]]];
            perms2.iter().position(|p| *p == composite).expect("closed under composition")
        })
    }

    /// A finite poset as a category; `leq(a, b)` must be a partial order.
    pub fn poset(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> FinCat {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        let mut identities = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index[a * n + b] = morphisms.len();
                    let id = if a == b { format!("id_{}", names[a]) } else { format!("{}<{}", names[a], names[b]) };
                    if a == b {
                        identities[a] = morphisms.len();
                    }
                    morphisms.push(Morphism { id, src: a, tgt: b });
                }
            }
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
        let objects = names.iter().map(|s| s.to_string()).collect();
        FinCat::from_fn(objects, morphisms, identities, |f, g| index[ends[f].0 * n + ends[g].1])
    }

    /// The poset of non-empty proper subsets of `{0, .., n-1}` under inclusion.
    pub fn proper_subset_poset(n: usize) -> FinCat {
        let full = (1usize << n) - 1;
        let masks: Vec<usize> = (1..full).collect();
        let names: Vec<String> = masks
            .iter()
            .map(|m| {
                let elems: Vec<String> = (0..n).filter(|i| m & (1 << i) != 0).map(|i| i.to_string()).collect();
                format!("{{{}}}", elems.join(","))
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::poset(&refs, |a, b| masks[a] & !masks[b] == 0)
    }

    /// `self` with a new terminal object `top` adjoined.
    pub fn with_terminal_object(&self) -> FinCat {
        let n = self.object_count();
        let m = self.morphism_count();
        let mut objects = self.objects().to_vec();
        objects.push("top".into());
        let mut morphisms = self.morphisms().to_vec();
        // to_top[x] is the unique arrow x → top; id_top is to_top[n]
        for (x, name) in self.objects().iter().enumerate() {
            morphisms.push(Morphism { id: format!("{name}->top"), src: x, tgt: n });
        }
        morphisms.push(Morphism { id: "id_top".into(), src: n, tgt: n });
        let mut identities: Vec<usize> = (0..n).map(|x| self.identity(x)).collect();
        identities.push(m + n);
        let srcs: Vec<usize> = morphisms.iter().map(|mm| mm.src).collect();
        FinCat::from_fn(objects, morphisms, identities, |f, g| {
            if g < m {
                self.comp(f, g)
            } else {
                // anything followed by an arrow into top is the arrow from its source
                m + srcs[f]
            }
        })
    }
}

use super::matching::Matching1D;
use super::Cob1Error;

/// A morphism of the subcategory where every component meets the outgoing
/// boundary: an injection `M₀ ↪ M₁` and a matching of the points of `M₁` outside
/// its image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RestrictedMorphism {
    tgt: usize,
    injection: Vec<usize>,
    matching: Vec<(usize, usize)>,
}

impl RestrictedMorphism {
    pub fn new(tgt: usize, injection: Vec<usize>, matching: &[(usize, usize)]) -> Result<Self, Cob1Error> {
        let mut used = vec![false; tgt];
        let mut claim = |p: usize, what: &str| -> Result<(), Cob1Error> {
            if p >= tgt || std::mem::replace(&mut used[p], true) {
                return Err(Cob1Error::BadMatching(format!("{what} point {p} out of range or reused")));
            }
            Ok(())
        };
        for &p in &injection {
            claim(p, "image")?;
        }
        let mut pairs = Vec::with_capacity(matching.len());
        for &(a, b) in matching {
            claim(a, "matched")?;
            claim(b, "matched")?;
            pairs.push((a.min(b), a.max(b)));
        }
        if let Some(p) = used.iter().position(|u| !u) {
            return Err(Cob1Error::BadMatching(format!("target point {p} is neither hit nor matched")));
        }
        pairs.sort_unstable();
        Ok(Self { tgt, injection, matching: pairs })
    }

    pub fn identity(n: usize) -> Self {
        Self { tgt: n, injection: (0..n).collect(), matching: Vec::new() }
    }

    pub fn src(&self) -> usize {
        self.injection.len()
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn injection(&self) -> &[usize] {
        &self.injection
    }

    pub fn matching(&self) -> &[(usize, usize)] {
        &self.matching
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &RestrictedMorphism) -> Result<RestrictedMorphism, Cob1Error> {
        if self.tgt != next.src() {
            return Err(Cob1Error::InterfaceMismatch { left: self.tgt, right: next.src() });
        }
        let injection = self.injection.iter().map(|&p| next.injection[p]).collect();
        let mut matching = next.matching.clone();
        matching.extend(self.matching.iter().map(|&(a, b)| (next.injection[a], next.injection[b])));
        RestrictedMorphism::new(next.tgt, injection, &matching)
    }

    /// Side-by-side union, `self` in the lower positions.
    pub fn tensor(&self, other: &RestrictedMorphism) -> RestrictedMorphism {
        let shift = self.tgt;
        let mut injection = self.injection.clone();
        injection.extend(other.injection.iter().map(|&p| p + shift));
        let mut matching = self.matching.clone();
        matching.extend(other.matching.iter().map(|&(a, b)| (a + shift, b + shift)));
        RestrictedMorphism::new(self.tgt + other.tgt, injection, &matching).expect("disjoint union stays valid")
    }

    pub fn to_matching(&self) -> Matching1D {
        let m = self.src();
        let mut pairs: Vec<(usize, usize)> = self.injection.iter().enumerate().map(|(s, &t)| (s, m + t)).collect();
        pairs.extend(self.matching.iter().map(|&(a, b)| (m + a, m + b)));
        Matching1D::new(m, self.tgt, &pairs, 0).expect("restricted morphisms are perfect matchings")
    }

    /// The inverse of [`to_matching`](Self::to_matching) on matchings with every
    /// component reaching the outgoing side.
    pub fn from_matching(w: &Matching1D) -> Option<Self> {
        if w.circle_count() > 0 || w.has_incoming_turnback() {
            return None;
        }
        let m = w.src();
        let injection = (0..m).map(|s| w.partner(s) - m).collect();
        let matching: Vec<(usize, usize)> = w
            .pairs()
            .into_iter()
            .filter(|&(a, _)| a >= m)
            .map(|(a, b)| (a - m, b - m))
            .collect();
        RestrictedMorphism::new(w.tgt(), injection, &matching).ok()
    }
}

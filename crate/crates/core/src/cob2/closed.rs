use std::fmt;

use super::{Cob2Error, SurfaceCobordism};

/// A connected closed surface: `#g T²` (with `g = 0` the sphere) or `#h ℝP²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnectedSurface {
    Orientable(u64),
    NonOrientable(u64),
}

impl ConnectedSurface {
    pub const SPHERE: Self = Self::Orientable(0);
    pub const TORUS: Self = Self::Orientable(1);
    pub const PROJECTIVE_PLANE: Self = Self::NonOrientable(1);
    pub const KLEIN_BOTTLE: Self = Self::NonOrientable(2);

    pub fn chi(self) -> i64 {
        match self {
            Self::Orientable(g) => 2 - 2 * g as i64,
            Self::NonOrientable(h) => 2 - h as i64,
        }
    }

    pub fn is_orientable(self) -> bool {
        matches!(self, Self::Orientable(_))
    }

    /// Every connected closed surface with Euler characteristic at least `min_chi`.
    pub fn all_with_chi_at_least(min_chi: i64) -> Vec<Self> {
        let mut out = Vec::new();
        let mut g = 0;
        while 2 - 2 * g as i64 >= min_chi {
            out.push(Self::Orientable(g));
            g += 1;
        }
        let mut h = 1;
        while 2 - h as i64 >= min_chi {
            out.push(Self::NonOrientable(h));
            h += 1;
        }
        out
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "S2" | "sphere" => Some(Self::SPHERE),
            "T2" | "torus" => Some(Self::TORUS),
            "RP2" | "projective_plane" => Some(Self::PROJECTIVE_PLANE),
            "K" | "klein" | "klein_bottle" => Some(Self::KLEIN_BOTTLE),
            other => {
                if let Some(g) = other.strip_prefix("Sigma_") {
                    g.parse().ok().map(Self::Orientable)
                } else if let Some(h) = other.strip_prefix("N_") {
                    h.parse().ok().filter(|&h| h >= 1).map(Self::NonOrientable)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for ConnectedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Orientable(0) => write!(f, "S2"),
            Self::Orientable(1) => write!(f, "T2"),
            Self::Orientable(g) => write!(f, "Sigma_{g}"),
            Self::NonOrientable(1) => write!(f, "RP2"),
            Self::NonOrientable(2) => write!(f, "K"),
            Self::NonOrientable(h) => write!(f, "N_{h}"),
        }
    }
}

/// Connected sum, tracked through `χ(a # b) = χ(a) + χ(b) − 2`. A torus summand
/// counts as two crosscaps next to a non-orientable one.
pub fn connected_sum(a: ConnectedSurface, b: ConnectedSurface) -> ConnectedSurface {
    use ConnectedSurface::*;
    match (a, b) {
        (Orientable(g), Orientable(k)) => Orientable(g + k),
        _ => NonOrientable((2 - (a.chi() + b.chi() - 2)) as u64),
    }
}

/// A closed surface as the sorted multiset of its connected components.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedSurfaceClass {
    parts: Vec<ConnectedSurface>,
}

impl ClosedSurfaceClass {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut parts: Vec<ConnectedSurface>) -> Self {
        parts.sort();
        Self { parts }
    }

    pub fn connected(s: ConnectedSurface) -> Self {
        Self { parts: vec![s] }
    }

    pub fn parts(&self) -> &[ConnectedSurface] {
        &self.parts
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        Self::new(self.parts.iter().chain(&other.parts).copied().collect())
    }

    pub fn chi(&self) -> i64 {
        self.parts.iter().map(|s| s.chi()).sum()
    }

    /// Class in the unoriented bordism group, detected by `χ mod 2`.
    pub fn unoriented_class(&self) -> u8 {
        self.chi().rem_euclid(2) as u8
    }

    pub fn is_nullbordant(&self) -> bool {
        self.unoriented_class() == 0
    }

    /// Class in the oriented bordism group, which is trivial in this dimension.
    pub fn oriented_class(&self) -> Result<i64, Cob2Error> {
        if self.parts.iter().all(|s| s.is_orientable()) {
            Ok(0)
        } else {
            Err(Cob2Error::NonOrientable)
        }
    }

    pub fn from_cobordism(w: &SurfaceCobordism) -> Result<Self, Cob2Error> {
        if !w.is_endomorphism_of_empty() {
            return Err(Cob2Error::NotClosed);
        }
        Ok(Self::new(
            w.components()
                .iter()
                .map(|c| match (c.genus(), c.crosscaps()) {
                    (Some(g), _) => ConnectedSurface::Orientable(g),
                    (_, Some(h)) => ConnectedSurface::NonOrientable(h),
                    _ => unreachable!(),
                })
                .collect(),
        ))
    }

    pub fn to_cobordism(&self) -> SurfaceCobordism {
        self.parts
            .iter()
            .map(|&s| SurfaceCobordism::closed(s))
            .fold(SurfaceCobordism::identity_n(0), |acc, w| acc.disjoint_union(&w))
    }
}

impl fmt::Display for ClosedSurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "empty");
        }
        for (i, s) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Class of a closed oriented 0-manifold in the oriented bordism group.
pub fn signed_point_count(signs: &[i8]) -> i64 {
    signs.iter().map(|&s| s.signum() as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConnectedSurface::*;

    #[test]
    fn connected_sums() {
        assert_eq!(connected_sum(Orientable(1), Orientable(1)), Orientable(2));
        assert_eq!(connected_sum(NonOrientable(1), NonOrientable(1)), NonOrientable(2));
        assert_eq!(connected_sum(Orientable(1), NonOrientable(1)), NonOrientable(3));
        assert_eq!(connected_sum(Orientable(0), NonOrientable(4)), NonOrientable(4));
    }

    #[test]
    fn bordism_classes() {
        let k = ClosedSurfaceClass::connected(ConnectedSurface::KLEIN_BOTTLE);
        assert_eq!(k.unoriented_class(), 0);
        assert!(k.is_nullbordant());
        let rp2 = ClosedSurfaceClass::connected(ConnectedSurface::PROJECTIVE_PLANE);
        assert_eq!(rp2.unoriented_class(), 1);
        assert!(!rp2.is_nullbordant());
        let s = ClosedSurfaceClass::new(vec![Orientable(0), NonOrientable(1)]);
        assert_eq!(s.unoriented_class(), 1);
        assert_eq!(ClosedSurfaceClass::connected(Orientable(2)).oriented_class(), Ok(0));
        assert_eq!(ClosedSurfaceClass::empty().oriented_class(), Ok(0));
        assert!(rp2.oriented_class().is_err());
        assert_eq!(signed_point_count(&[1, 1, -1]), 1);
    }

    #[test]
    fn cobordism_round_trip() {
        let s = ClosedSurfaceClass::new(vec![NonOrientable(3), Orientable(0), Orientable(0), Orientable(2)]);
        assert_eq!(ClosedSurfaceClass::from_cobordism(&s.to_cobordism()).unwrap(), s);
        assert_eq!(s.to_string(), "S2 + S2 + Sigma_2 + N_3");
        assert!(ClosedSurfaceClass::from_cobordism(&SurfaceCobordism::pants()).is_err());
    }

    #[test]
    fn enumeration_and_names() {
        let all = ConnectedSurface::all_with_chi_at_least(0);
        assert_eq!(all, vec![Orientable(0), Orientable(1), NonOrientable(1), NonOrientable(2)]);
        for s in ConnectedSurface::all_with_chi_at_least(-6) {
            assert_eq!(ConnectedSurface::parse(&s.to_string()), Some(s));
        }
    }
}

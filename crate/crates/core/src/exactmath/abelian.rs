use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::snf::{smith_diagonal, smith_diagonal_with_right};
use super::IntMatrix;

/// Isomorphism type of a finitely generated abelian group, `Z^rank + Z/d1 + ... + Z/dk`
/// with `d1 | d2 | ... | dk` and every `di >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => Self { rank: 0, torsion: vec![BigInt::from(n)] },
        }
    }

    /// Invariants of `Z^cols / rowspace(relations)`.
    pub fn from_relation_matrix(relations: &IntMatrix) -> Self {
        let diag = smith_diagonal(relations);
        Self::from_diagonal(relations.cols(), &diag)
    }

    fn from_diagonal(generators: usize, diag: &[BigInt]) -> Self {
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        Self { rank: generators - nonzero, torsion }
    }

    /// Invariants of a direct sum of cyclic groups with the given orders (0 means Z).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &o) in orders.iter().enumerate() {
            m[(i, i)] = BigInt::from(o);
        }
        Self::from_relation_matrix(&m)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.insert(0, "Z".into()),
            r => parts.insert(0, format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The quotient `Z^n / L` of a lattice of relations, with coordinates for its elements.
///
/// Elements are written in the Smith basis: the first `torsion.len()` coordinates
/// are residues modulo the torsion factors, the remaining `rank` are free.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    generators: usize,
    diagonal: Vec<BigInt>,
    right: IntMatrix,
    invariants: AbelianInvariants,
}

impl AbelianQuotient {
    pub fn new(relations: &IntMatrix) -> Self {
        let generators = relations.cols();
        let (mut diagonal, right) = smith_diagonal_with_right(relations);
        diagonal.resize(generators, BigInt::zero());
        let invariants = AbelianInvariants::from_diagonal(generators, &diagonal);
        Self { generators, diagonal, right, invariants }
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Coordinates of the class of `v` (an exponent vector over the generators).
    ///
    /// Unit factors are dropped; torsion coordinates are reduced into `[0, d)`.
    pub fn class_of(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.generators, "vector length must match generator count");
        let w = self.right.left_apply(v);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (d, x) in self.diagonal.iter().zip(w) {
            if d.is_zero() {
                free.push(x);
            } else if *d > BigInt::one() {
                torsion.push(x.mod_floor(d));
            }
        }
        torsion.extend(free);
        torsion
    }

    /// Whether `v` lies in the relation lattice.
    pub fn is_trivial(&self, v: &[BigInt]) -> bool {
        self.class_of(v).iter().all(Zero::is_zero)
    }

    pub fn class_of_i64(&self, v: &[i64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.class_of(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_orders_combine() {
        let inv = AbelianInvariants::from_cyclic_orders(&[2, 3, 0]);
        assert_eq!(inv.rank, 1);
        assert_eq!(inv.torsion, vec![BigInt::from(6)]);
        assert_eq!(inv.to_string(), "Z + Z/6");
        let inv = AbelianInvariants::from_cyclic_orders(&[2, 4]);
        assert_eq!(inv.torsion, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(inv.order(), Some(BigInt::from(8)));
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }

    #[test]
    fn quotient_membership_and_classes() {
        // <a, b | 2a, a + 3b>: Z/6, generated by b with a = -3b
        let q = AbelianQuotient::new(&IntMatrix::from_i64_rows(&[vec![2, 0], vec![1, 3]]));
        assert_eq!(q.invariants(), &AbelianInvariants::cyclic(6));
        assert!(q.is_trivial(&[BigInt::from(2), BigInt::from(0)]));
        assert!(q.is_trivial(&[BigInt::from(0), BigInt::from(6)]));
        assert!(!q.is_trivial(&[BigInt::from(1), BigInt::from(0)]));
        assert!(q.is_trivial(&[BigInt::from(1), BigInt::from(3)]));
        let b = q.class_of_i64(&[0, 1]);
        let a = q.class_of_i64(&[1, 0]);
        // a = -3b = 3b in Z/6
        let three_b: Vec<BigInt> = b.iter().map(|x| (x * BigInt::from(3)).mod_floor(&BigInt::from(6))).collect();
        assert_eq!(a, three_b);
    }

    #[test]
    fn quotient_without_relations_is_free() {
        let q = AbelianQuotient::new(&IntMatrix::zeros(0, 3));
        assert_eq!(q.invariants(), &AbelianInvariants::free(3));
        assert_eq!(q.class_of_i64(&[1, -2, 5]).len(), 3);
    }
}

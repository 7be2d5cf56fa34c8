use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// A sublattice of `Z^n` kept in reduced Hermite normal form while vectors are
/// added one at a time. The form is unique, so the result does not depend on
/// insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteLattice {
    dim: usize,
    /// `rows[c]` is the basis row whose leading entry sits in column `c`.
    rows: Vec<Option<Vec<BigInt>>>,
}

impl HermiteLattice {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: vec![None; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert_i64(&mut self, v: &[i64]) -> bool {
        self.insert(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Adds `v`; returns whether the stored basis changed.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length must match the lattice dimension");
        for col in 0..self.dim {
            if v[col].is_zero() {
                continue;
            }
            match self.rows[col].take() {
                None => {
                    if v[col].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[col] = Some(v);
                    self.reduce_above(col);
                    return true;
                }
                Some(r) => {
                    let ext = r[col].extended_gcd(&v[col]);
                    let (g, s, t) = (ext.gcd, ext.x, ext.y);
                    let (rq, vq) = (&r[col] / &g, &v[col] / &g);
                    let new_r: Vec<BigInt> = r.iter().zip(&v).map(|(a, b)| &s * a + &t * b).collect();
                    let new_v: Vec<BigInt> = r.iter().zip(&v).map(|(a, b)| &rq * b - &vq * a).collect();
                    let changed = new_r != r;
                    self.rows[col] = Some(new_r);
                    v = new_v;
                    if changed {
                        self.reduce_below(col);
                        self.reduce_above(col);
                        self.insert(v);
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Reduces entries in column `col` of earlier rows modulo the pivot there.
    fn reduce_above(&mut self, col: usize) {
        let pivot_row = self.rows[col].clone().expect("pivot row");
        let p = &pivot_row[col];
        for c in 0..col {
            if let Some(r) = self.rows[c].as_mut() {
                let q = r[col].div_floor(p);
                if !q.is_zero() {
                    for (x, y) in r.iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    /// Re-reduces later columns of the row at `col` against the rows below it.
    fn reduce_below(&mut self, col: usize) {
        for c in col + 1..self.dim {
            if self.rows[c].is_some() {
                self.reduce_above(c);
            }
        }
    }

    pub fn merge(&mut self, other: &HermiteLattice) {
        for r in other.rows.iter().flatten() {
            self.insert(r.clone());
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        for col in 0..self.dim {
            if w[col].is_zero() {
                continue;
            }
            let Some(r) = &self.rows[col] else { return false };
            let (q, rem) = w[col].div_rem(&r[col]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in w.iter_mut().zip(r) {
                *x -= &q * y;
            }
        }
        true
    }

    pub fn basis(&self) -> IntMatrix {
        let rows: Vec<&Vec<BigInt>> = self.rows.iter().flatten().collect();
        let entries = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        IntMatrix::from_vec(rows.len(), self.dim, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::AbelianInvariants;

    #[test]
    fn spans_and_order_independence() {
        let vs = [vec![4, 6, 0], vec![6, 9, 3], vec![2, 3, 1], vec![0, 0, 5]];
        let mut a = HermiteLattice::new(3);
        for v in &vs {
            a.insert_i64(v);
        }
        let mut b = HermiteLattice::new(3);
        for v in vs.iter().rev() {
            b.insert_i64(v);
        }
        assert_eq!(a, b);
        let direct = AbelianInvariants::from_relation_matrix(&IntMatrix::from_i64_rows(&vs.map(|v| v.to_vec())));
        assert_eq!(AbelianInvariants::from_relation_matrix(&a.basis()), direct);
        assert!(a.contains(&[BigInt::from(2), BigInt::from(3), BigInt::from(1)]));
        assert!(!a.contains(&[BigInt::from(1), BigInt::from(0), BigInt::from(0)]));
        assert!(!a.insert_i64(&[8, 12, 0]));
    }
}

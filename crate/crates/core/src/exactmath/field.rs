use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MathError;

/// An exact field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Checks that a prime field really has prime characteristic.
    pub fn prime(p: u64) -> Result<Self, MathError> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(MathError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Canonical representative: lowest terms over Q, a residue in `[0, p)` over F_p.
    ///
    /// Panics when a rational with denominator divisible by `p` is pushed into F_p.
    pub fn reduce(&self, x: &BigRational) -> BigRational {
        match self {
            Field::Rationals => x.clone(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator vanishes modulo {p}");
                let inv = mod_inverse(&den, &p);
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_int(&self, x: i64) -> BigRational {
        self.reduce(&BigRational::from_integer(BigInt::from(x)))
    }

    pub fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    pub fn one(&self) -> BigRational {
        BigRational::one()
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(&(a * b))
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.reduce(&-a)
    }

    /// `None` for zero.
    pub fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        Some(match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(&a.to_integer().mod_floor(&p), &p))
            }
        })
    }

    /// Parses `"3"`, `"-1/2"` into the field.
    pub fn parse(&self, s: &str) -> Result<BigRational, MathError> {
        let s = s.trim();
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| MathError::Parse(s.to_string()))?;
                let d: BigInt = d.trim().parse().map_err(|_| MathError::Parse(s.to_string()))?;
                if d.is_zero() {
                    return Err(MathError::Parse(s.to_string()));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| MathError::Parse(s.to_string()))?),
        };
        if let Field::Prime(p) = self {
            if value.denom().is_multiple_of(&BigInt::from(*p)) {
                return Err(MathError::Parse(format!("{s} is not defined modulo {p}")));
            }
        }
        Ok(self.reduce(&value))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "{a} is not invertible modulo {p}");
    e.x.mod_floor(p)
}

/// Dense matrix over an exact [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<BigRational>>) -> Result<Self, MathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MathError::Shape(format!("ragged row of length {} (expected {c})", row.len())));
            }
            entries.extend(row.iter().map(|x| field.reduce(x)));
        }
        Ok(Self { field, rows: r, cols: c, entries })
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular input")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = self.field.reduce(&v);
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, MathError> {
        if self.cols != rhs.rows {
            return Err(MathError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = &out.entries[idx] + a * b;
                }
            }
        }
        for e in &mut out.entries {
            *e = self.field.reduce(e);
        }
        Ok(out)
    }

    /// Kronecker product; the left factor indexes the more significant digit.
    pub fn kron(&self, rhs: &FieldMatrix) -> FieldMatrix {
        let mut out = Self::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let v = self.field.mul(a, rhs.get(k, l));
                        out.entries[(i * rhs.rows + k) * out.cols + j * rhs.cols + l] = v;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> FieldMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = self.field.mul(e, k);
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        let mut t = BigRational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        self.field.reduce(&t)
    }

    /// Row echelon form by Gaussian elimination; returns (reduced matrix, rank, determinant sign/scale).
    fn eliminate(&self) -> (FieldMatrix, usize, BigRational) {
        let f = self.field;
        let mut a = self.clone();
        let mut det = BigRational::one();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(piv) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                det = BigRational::zero();
                continue;
            };
            if piv != rank {
                for j in 0..a.cols {
                    a.entries.swap(piv * a.cols + j, rank * a.cols + j);
                }
                det = f.neg(&det);
            }
            let p = a.get(rank, col).clone();
            det = f.mul(&det, &p);
            let p_inv = f.inv(&p).expect("nonzero pivot");
            for r in rank + 1..a.rows {
                let factor = f.mul(a.get(r, col), &p_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = f.sub(a.get(r, j), &f.mul(&factor, a.get(rank, j)));
                    a.entries[r * a.cols + j] = v;
                }
            }
            rank += 1;
        }
        (a, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn determinant(&self) -> Result<BigRational, MathError> {
        if !self.is_square() {
            return Err(MathError::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let (_, rank, det) = self.eliminate();
        Ok(if rank == self.rows { det } else { BigRational::zero() })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse, `None` when singular or non-square.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        if !self.is_square() {
            return None;
        }
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.entries.swap(piv * n + j, col * n + j);
                inv.entries.swap(piv * n + j, col * n + j);
            }
            let p_inv = f.inv(a.get(col, col)).expect("nonzero pivot");
            for j in 0..n {
                a.entries[col * n + j] = f.mul(&a.entries[col * n + j], &p_inv);
                inv.entries[col * n + j] = f.mul(&inv.entries[col * n + j], &p_inv);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = f.sub(&a.entries[r * n + j], &f.mul(&factor, &a.entries[col * n + j]));
                    a.entries[r * n + j] = v;
                    let w = f.sub(&inv.entries[r * n + j], &f.mul(&factor, &inv.entries[col * n + j]));
                    inv.entries[r * n + j] = w;
                }
            }
        }
        Some(inv)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Entries rendered as strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| render(self.get(i, j))).collect()).collect()
    }
}

fn render(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

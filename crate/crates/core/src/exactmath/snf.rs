use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of diagonalizing `m` as `left * m * right = diag(diagonal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` non-negative entries, each dividing the next; zeros trail.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

/// Smith normal form with both change-of-basis matrices.
///
/// Pivots are chosen as the entry of least nonzero absolute value, ties broken
/// by row-major position, which makes the output a deterministic function of
/// the input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut work = Reduction::new(m.clone(), true, true);
    work.run();
    work.finish()
}

/// Diagonal of the Smith normal form together with the right transform only.
///
/// The left transform is the expensive one for tall relation matrices, and
/// reading off group elements only needs `right`.
pub fn smith_diagonal_with_right(m: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let mut work = Reduction::new(m.clone(), false, true);
    work.run();
    let form = work.finish();
    (form.diagonal, form.right)
}

/// Invariant factors only.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut work = Reduction::new(m.clone(), false, false);
    work.run();
    work.finish().diagonal
}

struct Reduction {
    a: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reduction {
    fn new(a: IntMatrix, track_left: bool, track_right: bool) -> Self {
        let left = track_left.then(|| IntMatrix::identity(a.rows()));
        let right = track_right.then(|| IntMatrix::identity(a.cols()));
        Self { a, left, right }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(l) = &mut self.left {
            l.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(r) = &mut self.right {
            r.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        if let Some(l) = &mut self.left {
            l.add_row_multiple(dst, src, k);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(r) = &mut self.right {
            r.add_col_multiple(dst, src, k);
        }
    }

    /// Least nonzero |entry| in the block `[t.., t..]`, row-major tie-break.
    fn block_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.a[b].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Least nonzero |entry| on row t or column t (from t onwards).
    fn cross_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[(t, t)].abs();
        let mut consider = |pos: (usize, usize), v: &BigInt| {
            if !v.is_zero() && (best_abs.is_zero() || v.abs() < best_abs) {
                best = pos;
                best_abs = v.abs();
            }
        };
        for j in t..self.a.cols() {
            consider((t, j), &self.a[(t, j)]);
        }
        for i in t + 1..self.a.rows() {
            consider((i, t), &self.a[(i, t)]);
        }
        best
    }

    fn run(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            let Some((pi, pj)) = self.block_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_cross(t);
                // divisibility: pull an offending row into row t and retry
                let p = self.a[(t, t)].clone();
                let offending = (t + 1..self.a.rows())
                    .find(|&i| (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
                match offending {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                if let Some(l) = &mut self.left {
                    l.negate_row(t);
                }
            }
        }
    }

    /// Eliminates row t and column t outside the pivot.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let (pi, pj) = self.cross_pivot(t);
            if pi != t {
                self.swap_rows(t, pi);
            }
            if pj != t {
                self.swap_cols(t, pj);
            }
            let p = self.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..self.a.rows() {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&p);
                self.add_row(i, t, &-q);
                clean &= self.a[(i, t)].is_zero();
            }
            for j in t + 1..self.a.cols() {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&p);
                self.add_col(j, t, &-q);
                clean &= self.a[(t, j)].is_zero();
            }
            if clean {
                return;
            }
        }
    }

    fn finish(self) -> SmithForm {
        let n = self.a.rows().min(self.a.cols());
        let diagonal = (0..n).map(|i| self.a[(i, i)].clone()).collect();
        let left = self.left.unwrap_or_else(|| IntMatrix::zeros(0, 0));
        let right = self.right.unwrap_or_else(|| IntMatrix::zeros(0, 0));
        SmithForm { diagonal, left, right }
    }
}

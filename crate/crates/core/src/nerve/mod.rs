//! Normalized nerve of a finite category: cells, boundary matrices, homology of the
//! classifying space, components, and the edge-path fundamental group.

mod edge_path;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{smith_diagonal, AbelianInvariants, GroupPresentation, IntMatrix, Letter, UnionFind};
use crate::fincat::FinCat;

pub use edge_path::{EdgePathData, EdgePathGroup, TwoComplex};

pub const DEFAULT_CAP: usize = 3;
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("nerve exceeds the cell ceiling of {limit} cells")]
    CellCeiling { limit: usize },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
}

/// Cells and boundary matrices of the normalized nerve up to dimension `cap`.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    cap: usize,
    /// `cells[0][i] = [object]`; `cells[p]` holds composable p-tuples `(f1, .., fp)`
    /// of non-identity morphisms with `tgt(fi) = src(fi+1)`.
    cells: Vec<Vec<Vec<usize>>>,
    /// `boundary[p]` maps p-chains to (p-1)-chains; `boundary[0]` is the zero map.
    boundary: Vec<IntMatrix>,
}

impl NerveComplex {
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn cells(&self, p: usize) -> &[Vec<usize>] {
        &self.cells[p]
    }

    pub fn cell_count(&self, p: usize) -> usize {
        self.cells[p].len()
    }

    pub fn boundary(&self, p: usize) -> &IntMatrix {
        &self.boundary[p]
    }
}

/// Builds the normalized nerve through dimension `cap`.
///
/// Fails once more than `max_cells` cells would be produced. Panics if the
/// boundary does not square to zero, which can only happen for an invalid category.
pub fn build_nerve(c: &FinCat, cap: usize, max_cells: usize) -> Result<NerveComplex, NerveError> {
    let mut cells: Vec<Vec<Vec<usize>>> = vec![(0..c.object_count()).map(|x| vec![x]).collect()];
    let mut total = cells[0].len();
    if total > max_cells {
        return Err(NerveError::CellCeiling { limit: max_cells });
    }
    let non_id: Vec<usize> = c.non_identity_morphisms().collect();
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); c.object_count()];
    for &f in &non_id {
        by_source[c.src(f)].push(f);
    }
    for p in 1..=cap {
        let next: Vec<Vec<usize>> = if p == 1 {
            non_id.iter().map(|&f| vec![f]).collect()
        } else {
            let mut out = Vec::new();
            for cell in &cells[p - 1] {
                let last = *cell.last().expect("positive-dimensional cell");
                for &g in &by_source[c.tgt(last)] {
                    let mut ext = cell.clone();
                    ext.push(g);
                    out.push(ext);
                    if total + out.len() > max_cells {
                        return Err(NerveError::CellCeiling { limit: max_cells });
                    }
                }
            }
            out
        };
        total += next.len();
        if total > max_cells {
            return Err(NerveError::CellCeiling { limit: max_cells });
        }
        cells.push(next);
    }

    let mut sparse: Vec<Vec<Vec<(usize, i64)>>> = vec![vec![Vec::new(); cells[0].len()]];
    for p in 1..=cap {
        let index: HashMap<&[usize], usize> =
            cells[p - 1].iter().enumerate().map(|(i, cell)| (cell.as_slice(), i)).collect();
        let cols = cells[p].iter().map(|cell| faces(c, cell, &index)).collect();
        sparse.push(cols);
    }
    for p in 2..=cap {
        assert_boundary_squares_to_zero(&sparse[p - 1], &sparse[p]);
    }
    let boundary = (0..=cap)
        .map(|p| {
            let rows = if p == 0 { 0 } else { cells[p - 1].len() };
            let mut m = IntMatrix::zeros(rows, cells[p].len());
            for (j, col) in sparse[p].iter().enumerate() {
                for &(i, coeff) in col {
                    m[(i, j)] += coeff;
                }
            }
            m
        })
        .collect();
    Ok(NerveComplex { cap, cells, boundary })
}

/// Alternating sum of non-degenerate faces, as sparse (row, coefficient) pairs.
fn faces(c: &FinCat, cell: &[usize], index: &HashMap<&[usize], usize>) -> Vec<(usize, i64)> {
    let p = cell.len();
    let mut col: HashMap<usize, i64> = HashMap::new();
    let mut add = |face: Vec<usize>, sign: i64| {
        if let Some(&row) = index.get(face.as_slice()) {
            *col.entry(row).or_insert(0) += sign;
        }
    };
    if p == 1 {
        let f = cell[0];
        add(vec![c.tgt(f)], 1);
        add(vec![c.src(f)], -1);
    } else {
        for i in 0..=p {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let face: Vec<usize> = if i == 0 {
                cell[1..].to_vec()
            } else if i == p {
                cell[..p - 1].to_vec()
            } else {
                let composite = c.comp(cell[i - 1], cell[i]);
                if c.is_identity(composite) {
                    continue;
                }
                let mut face = cell[..i - 1].to_vec();
                face.push(composite);
                face.extend_from_slice(&cell[i + 1..]);
                face
            };
            add(face, sign);
        }
    }
    let mut out: Vec<(usize, i64)> = col.into_iter().filter(|&(_, v)| v != 0).collect();
    out.sort_unstable();
    out
}

fn assert_boundary_squares_to_zero(lower: &[Vec<(usize, i64)>], upper: &[Vec<(usize, i64)>]) {
    for (j, col) in upper.iter().enumerate() {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(mid, a) in col {
            for &(row, b) in &lower[mid] {
                *acc.entry(row).or_insert(0) += a * b;
            }
        }
        assert!(acc.values().all(|&v| v == 0), "boundary of boundary is nonzero on cell {j}");
    }
}

/// `H_0 .. H_{cap-1}` of the classifying space.
///
/// Degrees are independent once the boundary matrices exist, so each rank/torsion
/// computation runs on its own thread; results do not depend on scheduling.
pub fn homology(n: &NerveComplex) -> Vec<AbelianInvariants> {
    let diagonals: Vec<Vec<BigInt>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..=n.cap).map(|p| s.spawn(move || smith_diagonal(&n.boundary[p]))).collect();
        handles.into_iter().map(|h| h.join().expect("SNF thread")).collect()
    });
    let rank = |p: usize| diagonals[p].iter().filter(|d| !d.is_zero()).count();
    (0..n.cap)
        .map(|p| {
            let cycles = n.cell_count(p) - rank(p);
            let torsion: Vec<BigInt> = diagonals[p + 1].iter().filter(|d| **d > BigInt::one()).cloned().collect();
            AbelianInvariants { rank: cycles - rank(p + 1), torsion }
        })
        .collect()
}

/// Objects grouped by zig-zag connectivity, classes ordered by least member.
pub fn pi0(c: &FinCat) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(c.object_count());
    for m in c.morphisms() {
        uf.union(m.src, m.tgt);
    }
    uf.classes()
}

/// The 1-skeleton of the nerve with one 2-cell per composable pair of non-identity
/// morphisms. Edge `i` is the `i`-th non-identity morphism.
pub fn nerve_two_complex(c: &FinCat) -> (TwoComplex, Vec<usize>) {
    let non_id: Vec<usize> = c.non_identity_morphisms().collect();
    let mut edge_of = vec![usize::MAX; c.morphism_count()];
    for (e, &f) in non_id.iter().enumerate() {
        edge_of[f] = e;
    }
    let edges = non_id.iter().map(|&f| (c.src(f), c.tgt(f))).collect();
    let edge_names = non_id.iter().map(|&f| c.morphism(f).id.clone()).collect();
    let mut cells = Vec::new();
    for &f in &non_id {
        for &g in non_id.iter().filter(|&&g| c.src(g) == c.tgt(f)) {
            // g ∘ f = h  contributes  g · f · h⁻¹
            let h = c.comp(f, g);
            let mut w = vec![Letter::new(edge_of[g]), Letter::new(edge_of[f])];
            if !c.is_identity(h) {
                w.push(Letter { generator: edge_of[h], inverse: true });
            }
            cells.push(w);
        }
    }
    (TwoComplex { vertices: c.object_count(), edges, edge_names, cells }, edge_of)
}

/// Edge-path presentation of π₁(BC, base).
///
/// Generators are the non-identity morphisms in the component of `base`; relators
/// are the spanning-forest edges and `g · f · h⁻¹` for each composable pair with
/// `g ∘ f = h` (identity composites contribute `g · f`).
pub fn fundamental_group(c: &FinCat, base: usize) -> Result<GroupPresentation, NerveError> {
    Ok(fundamental_group_data(c, base)?.0.presentation)
}

/// [`fundamental_group`] together with the edge-path bookkeeping and the map from
/// morphism index to edge index (`usize::MAX` for identities).
pub fn fundamental_group_data(
    c: &FinCat,
    base: usize,
) -> Result<(EdgePathGroup, TwoComplex, Vec<usize>), NerveError> {
    if base >= c.object_count() {
        return Err(NerveError::UnknownObject(base.to_string()));
    }
    let (complex, edge_of) = nerve_two_complex(c);
    let group = complex.fundamental_group(base);
    Ok((group, complex, edge_of))
}

pub fn fundamental_group_by_name(c: &FinCat, base: &str) -> Result<GroupPresentation, NerveError> {
    let x = c.object_index(base).ok_or_else(|| NerveError::UnknownObject(base.to_string()))?;
    fundamental_group(c, x)
}

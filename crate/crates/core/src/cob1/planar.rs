use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matching::Matching1D;
use super::Cob1Error;
use crate::exactmath::UnionFind;

/// One horizontal slice event. `Cup(i)` inserts two new adjacent strands at
/// positions `i, i + 1`; `Cap(i)` joins strands `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slice {
    Cup(usize),
    Cap(usize),
}

impl Slice {
    pub fn index(self) -> usize {
        match self {
            Slice::Cup(i) | Slice::Cap(i) => i,
        }
    }

    fn shifted(self, by: usize) -> Slice {
        match self {
            Slice::Cup(i) => Slice::Cup(i + by),
            Slice::Cap(i) => Slice::Cap(i + by),
        }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slice::Cup(i) => write!(f, "cup({i})"),
            Slice::Cap(i) => write!(f, "cap({i})"),
        }
    }
}

/// A planar 1-dimensional cobordism in `[0, t] × ℝ`, stored as its word of slice
/// events read left to right. Strand position 0 is the `−∞` side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    m: usize,
    n: usize,
    slices: Vec<Slice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagramJson {
    pub m: usize,
    pub slices: Vec<(String, usize)>,
}

/// Bookkeeping from the region sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub initial_red: usize,
    pub births: usize,
    pub cross_merges: usize,
    pub same_merges: usize,
}

impl SweepReport {
    /// Euler characteristic of the red region.
    pub fn chi_red(&self) -> i64 {
        (self.initial_red + self.births) as i64 - (self.cross_merges + self.same_merges) as i64
    }

    pub fn f_value(&self) -> i64 {
        self.chi_red() - self.initial_red as i64
    }
}

/// Number of red gaps among the `m + 1` gaps of `m` strands.
pub fn red_gap_count(m: usize) -> usize {
    (m + 1) / 2
}

pub fn is_red_gap(k: usize) -> bool {
    k % 2 == 1
}

impl PlanarDiagram {
    pub fn new(m: usize, slices: Vec<Slice>) -> Result<Self, Cob1Error> {
        let mut r = m;
        for (pos, s) in slices.iter().enumerate() {
            match *s {
                Slice::Cup(i) if i <= r => r += 2,
                Slice::Cap(i) if i + 1 < r => r -= 2,
                _ => return Err(Cob1Error::BadSlice { position: pos, slice: s.to_string(), strands: r }),
            }
        }
        Ok(Self { m, n: r, slices })
    }

    pub fn identity(m: usize) -> Self {
        Self { m, n: m, slices: Vec::new() }
    }

    pub fn circle() -> Self {
        Self::new(0, vec![Slice::Cup(0), Slice::Cap(0)]).expect("circle")
    }

    /// A circle inside another circle.
    pub fn nested_circles() -> Self {
        Self::new(0, vec![Slice::Cup(0), Slice::Cup(1), Slice::Cap(1), Slice::Cap(0)]).expect("nested circles")
    }

    /// `k` circles side by side.
    pub fn circles(k: usize) -> Self {
        let slices = (0..k).flat_map(|_| [Slice::Cup(0), Slice::Cap(0)]).collect();
        Self::new(0, slices).expect("circles")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Strand count before each event, followed by the final count.
    pub fn strand_counts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut r = self.m;
        out.push(r);
        for s in &self.slices {
            r = match s {
                Slice::Cup(_) => r + 2,
                Slice::Cap(_) => r - 2,
            };
            out.push(r);
        }
        out
    }

    /// Side by side with `other` placed on the `+∞` side.
    pub fn tensor(&self, other: &PlanarDiagram) -> PlanarDiagram {
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().map(|s| s.shifted(self.n)));
        PlanarDiagram { m: self.m + other.m, n: self.n + other.n, slices }
    }

    /// Forgets the embedding.
    pub fn to_matching(&self) -> Matching1D {
        #[derive(Clone, Copy, PartialEq)]
        enum End {
            Source(usize),
            Strand(usize),
        }
        let mut far: HashMap<usize, End> = HashMap::new();
        let mut live: Vec<usize> = (0..self.m).collect();
        for (s, &id) in live.iter().enumerate() {
            far.insert(id, End::Source(s));
        }
        let mut next_id = self.m;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut circles = 0;
        for s in &self.slices {
            match *s {
                Slice::Cup(i) => {
                    let (a, b) = (next_id, next_id + 1);
                    next_id += 2;
                    far.insert(a, End::Strand(b));
                    far.insert(b, End::Strand(a));
                    live.splice(i..i, [a, b]);
                }
                Slice::Cap(i) => {
                    let (x, y) = (live[i], live[i + 1]);
                    live.drain(i..i + 2);
                    let fx = far.remove(&x).expect("live strand");
                    let fy = far.remove(&y).expect("live strand");
                    if fx == End::Strand(y) {
                        circles += 1;
                        continue;
                    }
                    match (fx, fy) {
                        (End::Source(a), End::Source(b)) => pairs.push((a, b)),
                        (End::Source(a), End::Strand(z)) | (End::Strand(z), End::Source(a)) => {
                            far.insert(z, End::Source(a));
                        }
                        (End::Strand(z1), End::Strand(z2)) => {
                            far.insert(z1, End::Strand(z2));
                            far.insert(z2, End::Strand(z1));
                        }
                    }
                }
            }
        }
        let position: HashMap<usize, usize> = live.iter().enumerate().map(|(t, &id)| (id, t)).collect();
        for (t, id) in live.iter().enumerate() {
            match far[id] {
                End::Source(a) => pairs.push((a, self.m + t)),
                End::Strand(z) => {
                    let u = position[&z];
                    if t < u {
                        pairs.push((self.m + t, self.m + u));
                    }
                }
            }
        }
        Matching1D::new(self.m, self.n, &pairs, circles).expect("planar diagrams give perfect matchings")
    }

    /// Sweeps left to right tracking which gaps between strands belong to the same
    /// component of the red region.
    pub fn sweep(&self) -> SweepReport {
        let mut report = SweepReport { initial_red: red_gap_count(self.m), ..SweepReport::default() };
        let cups = self.slices.iter().filter(|s| matches!(s, Slice::Cup(_))).count();
        let mut uf = UnionFind::new(self.m + 1 + cups);
        let mut gaps: Vec<usize> = (0..=self.m).collect();
        let mut next = self.m + 1;
        for s in &self.slices {
            match *s {
                Slice::Cup(i) => {
                    let outer = gaps[i];
                    let inner = next;
                    next += 1;
                    if is_red_gap(i + 1) {
                        report.births += 1;
                    }
                    gaps.splice(i + 1..i + 1, [inner, outer]);
                }
                Slice::Cap(i) => {
                    let (below, above) = (gaps[i], gaps[i + 2]);
                    gaps.drain(i + 1..i + 3);
                    if is_red_gap(i) {
                        if uf.same(below, above) {
                            report.same_merges += 1;
                        } else {
                            report.cross_merges += 1;
                        }
                    }
                    uf.union(below, above);
                }
            }
        }
        report
    }

    /// `χ(X) − χ(X ∩ incoming boundary)` for the red region `X`.
    pub fn f_invariant(&self) -> i64 {
        self.sweep().f_value()
    }

    pub fn to_json_value(&self) -> PlanarDiagramJson {
        PlanarDiagramJson {
            m: self.m,
            slices: self
                .slices
                .iter()
                .map(|s| match *s {
                    Slice::Cup(i) => ("cup".to_string(), i),
                    Slice::Cap(i) => ("cap".to_string(), i),
                })
                .collect(),
        }
    }

    pub fn from_json_value(doc: &PlanarDiagramJson) -> Result<Self, Cob1Error> {
        let slices = doc
            .slices
            .iter()
            .map(|(kind, i)| match kind.as_str() {
                "cup" => Ok(Slice::Cup(*i)),
                "cap" => Ok(Slice::Cap(*i)),
                other => Err(Cob1Error::Json(format!("unknown slice kind {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(doc.m, slices)
    }

    pub fn from_json_str(s: &str) -> Result<Self, Cob1Error> {
        let doc: PlanarDiagramJson = serde_json::from_str(s).map_err(|e| Cob1Error::Json(e.to_string()))?;
        Self::from_json_value(&doc)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.m, self.n)?;
        for (k, s) in self.slices.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// Word concatenation: `w` first, then `w2`.
pub fn compose_planar(w: &PlanarDiagram, w2: &PlanarDiagram) -> Result<PlanarDiagram, Cob1Error> {
    if w.n != w2.m {
        return Err(Cob1Error::InterfaceMismatch { left: w.n, right: w2.m });
    }
    let mut slices = w.slices.clone();
    slices.extend_from_slice(&w2.slices);
    Ok(PlanarDiagram { m: w.m, n: w2.n, slices })
}

pub fn f_invariant(w: &PlanarDiagram) -> i64 {
    w.f_invariant()
}

/// Image in the discrete category on `ℤ/2` objects with `ℤ` morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DImage {
    pub src_class: u8,
    pub tgt_class: u8,
    pub value: i64,
}

pub fn functor_to_d(w: &PlanarDiagram) -> Result<DImage, Cob1Error> {
    let (a, b) = ((w.m % 2) as u8, (w.n % 2) as u8);
    if a != b {
        return Err(Cob1Error::OddBoundary(w.m + w.n));
    }
    Ok(DImage { src_class: a, tgt_class: b, value: w.f_invariant() })
}

/// Class of an endomorphism of `∅` in the localization, as a signed count of circles.
pub fn reduce_endomorphism(w: &PlanarDiagram) -> Result<i64, Cob1Error> {
    if w.m != 0 || w.n != 0 {
        return Err(Cob1Error::NonEmptyBoundary { m: w.m, n: w.n });
    }
    Ok(w.f_invariant())
}

/// Exchanges events `k` and `k + 1` when they touch disjoint strands, adjusting
/// indices. Returns `None` when the pair does not commute.
pub fn commute_events(w: &PlanarDiagram, k: usize) -> Option<PlanarDiagram> {
    use Slice::*;
    let (e1, e2) = (*w.slices.get(k)?, *w.slices.get(k + 1)?);
    let swapped = match (e1, e2) {
        (Cup(i), Cup(j)) if j <= i => [Cup(j), Cup(i + 2)],
        (Cup(i), Cup(j)) if j >= i + 2 => [Cup(j - 2), Cup(i)],
        (Cup(i), Cap(j)) if j + 2 <= i => [Cap(j), Cup(i - 2)],
        (Cup(i), Cap(j)) if j >= i + 2 => [Cap(j - 2), Cup(i)],
        (Cap(i), Cup(j)) if j < i => [Cup(j), Cap(i + 2)],
        (Cap(i), Cup(j)) if j > i => [Cup(j + 2), Cap(i)],
        (Cap(i), Cap(j)) if j + 2 <= i => [Cap(j), Cap(i - 2)],
        (Cap(i), Cap(j)) if j >= i => [Cap(j + 2), Cap(i)],
        _ => return None,
    };
    let mut slices = w.slices.clone();
    slices[k] = swapped[0];
    slices[k + 1] = swapped[1];
    Some(PlanarDiagram::new(w.m, slices).expect("commuted word stays valid"))
}

/// Removes a zig-zag `Cup(i), Cap(i ± 1)` at position `k`, if there is one.
pub fn cancel_zigzag(w: &PlanarDiagram, k: usize) -> Option<PlanarDiagram> {
    let (e1, e2) = (*w.slices.get(k)?, *w.slices.get(k + 1)?);
    let is_zigzag = match (e1, e2) {
        (Slice::Cup(i), Slice::Cap(j)) => j == i + 1 || i == j + 1,
        _ => false,
    };
    if !is_zigzag {
        return None;
    }
    let mut slices = w.slices.clone();
    slices.drain(k..k + 2);
    Some(PlanarDiagram::new(w.m, slices).expect("cancelled word stays valid"))
}

/// Inserts a zig-zag on strand `strand` before event `k`. `upward` chooses
/// `Cup(s), Cap(s + 1)` over `Cup(s + 1), Cap(s)`.
pub fn insert_zigzag(w: &PlanarDiagram, k: usize, strand: usize, upward: bool) -> Option<PlanarDiagram> {
    let counts = w.strand_counts();
    if k > w.slices.len() || strand >= counts[k] {
        return None;
    }
    let pair = if upward {
        [Slice::Cup(strand), Slice::Cap(strand + 1)]
    } else {
        [Slice::Cup(strand + 1), Slice::Cap(strand)]
    };
    let mut slices = w.slices.clone();
    slices.splice(k..k, pair);
    Some(PlanarDiagram::new(w.m, slices).expect("zig-zag insertion stays valid"))
}

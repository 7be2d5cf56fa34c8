use std::thread;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::MonoidalError;
use crate::cob1::{euler_functor_1d, Matching1D, RestrictedMorphism};
use crate::exactmath::{Field, FieldMatrix};

/// A finite-dimensional vector space with a symmetric element `ω ∈ X ⊗ X`, stored
/// as its coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusDatum {
    pairing: FieldMatrix,
}

impl FrobeniusDatum {
    pub fn new(pairing: FieldMatrix) -> Result<Self, MonoidalError> {
        if !pairing.is_symmetric() {
            return Err(MonoidalError::NotSymmetric);
        }
        Ok(Self { pairing })
    }

    pub fn standard(field: Field, dim: usize) -> Self {
        Self { pairing: FieldMatrix::identity(field, dim) }
    }

    pub fn field(&self) -> Field {
        self.pairing.field()
    }

    pub fn dim(&self) -> usize {
        self.pairing.rows()
    }

    pub fn pairing(&self) -> &FieldMatrix {
        &self.pairing
    }

    /// `{"field": "Q" | "F<p>", "pairing": [[..], ..]}` with integer or `"a/b"` entries.
    pub fn from_json_value(doc: &Value) -> Result<Self, MonoidalError> {
        let bad = |m: &str| MonoidalError::Json(m.to_string());
        let field = match doc.get("field").and_then(Value::as_str).ok_or_else(|| bad("missing field"))? {
            "Q" => Field::Rationals,
            f => {
                let p = f.strip_prefix('F').and_then(|p| p.parse().ok()).ok_or_else(|| bad("field must be Q or F<p>"))?;
                Field::prime(p)?
            }
        };
        let rows = doc.get("pairing").and_then(Value::as_array).ok_or_else(|| bad("missing pairing"))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("pairing rows must be arrays"))?;
            let parsed = row
                .iter()
                .map(|x| match x {
                    Value::String(s) => field.parse(s).map_err(MonoidalError::from),
                    Value::Number(n) => field.parse(&n.to_string()).map_err(MonoidalError::from),
                    _ => Err(bad("pairing entries must be numbers or strings")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            out.push(parsed);
        }
        Self::new(FieldMatrix::from_rows(field, out)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self, MonoidalError> {
        let doc: Value = serde_json::from_str(s).map_err(|e| MonoidalError::Json(e.to_string()))?;
        Self::from_json_value(&doc)
    }

    pub fn to_json_value(&self) -> Value {
        json!({ "field": self.field().to_string(), "pairing": self.pairing.to_string_rows() })
    }
}

/// One way of filling the two ends of a matched pair with basis indices.
type Filling = (usize, usize, BigRational);

fn fillings(dim: usize, weight: Option<&FieldMatrix>) -> Vec<Filling> {
    match weight {
        None => (0..dim).map(|i| (i, i, BigRational::one())).collect(),
        Some(w) => (0..dim)
            .cartesian_product(0..dim)
            .filter(|&(i, j)| !w.get(i, j).is_zero())
            .map(|(i, j)| (i, j, w.get(i, j).clone()))
            .collect(),
    }
}

/// Matrix `X^{⊗m} → X^{⊗n}` of a matching: through-strands are identities,
/// outgoing pairs insert `outgoing`, incoming pairs evaluate `incoming`, and each
/// circle multiplies by `circle`.
#[allow(clippy::too_many_arguments)]
fn contract(
    field: Field,
    dim: usize,
    m: usize,
    n: usize,
    pairs: &[(usize, usize)],
    circles: usize,
    outgoing: &FieldMatrix,
    incoming: Option<&FieldMatrix>,
    circle: &BigRational,
) -> FieldMatrix {
    let rows = dim.pow(n as u32);
    let cols = dim.pow(m as u32);
    let mut out = FieldMatrix::zeros(field, rows, cols);
    let mut scalar = BigRational::one();
    for _ in 0..circles {
        scalar = field.mul(&scalar, circle);
    }
    if scalar.is_zero() {
        return out;
    }
    let choices: Vec<Vec<Filling>> = pairs
        .iter()
        .map(|&(a, b)| match (a < m, b < m) {
            (true, true) => fillings(dim, Some(incoming.expect("incoming pairs need a copairing"))),
            (false, false) => fillings(dim, Some(outgoing)),
            _ => fillings(dim, None),
        })
        .collect();
    let mut digits = vec![0usize; m + n];
    let mut visit = |assignment: &[&Filling]| {
        let mut value = scalar.clone();
        for (&(a, b), &(i, j, ref w)) in pairs.iter().zip(assignment) {
            digits[a] = *i;
            digits[b] = *j;
            value = field.mul(&value, w);
        }
        let col = digits[..m].iter().fold(0, |acc, &d| acc * dim + d);
        let row = digits[m..].iter().fold(0, |acc, &d| acc * dim + d);
        out.set(row, col, value);
    };
    if choices.is_empty() {
        visit(&[]);
    } else {
        for assignment in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            visit(&assignment);
        }
    }
    out
}

/// Evaluates a morphism of the subcategory where every component reaches the
/// outgoing boundary: through-strands route identities and matched outgoing pairs
/// insert `ω`.
pub fn evaluate_restricted(theory: &FrobeniusDatum, w: &RestrictedMorphism) -> FieldMatrix {
    let m = w.src();
    let mut pairs: Vec<(usize, usize)> = w.injection().iter().enumerate().map(|(i, &p)| (i, m + p)).collect();
    pairs.extend(w.matching().iter().map(|&(a, b)| (m + a, m + b)));
    let one = BigRational::one();
    contract(theory.field(), theory.dim(), m, w.tgt(), &pairs, 0, &theory.pairing, None, &one)
}

/// Evaluator on all of the 1-dimensional cobordism category, using the inverse
/// pairing for incoming pairs.
#[derive(Clone, Debug)]
pub struct FullEvaluator {
    theory: FrobeniusDatum,
    copairing: FieldMatrix,
    circle: BigRational,
}

#[derive(Clone, Debug)]
pub enum Extension {
    Full(FullEvaluator),
    Obstructed,
}

impl Extension {
    pub fn extends(&self) -> bool {
        matches!(self, Extension::Full(_))
    }

    pub fn evaluator(&self) -> Option<&FullEvaluator> {
        match self {
            Extension::Full(e) => Some(e),
            Extension::Obstructed => None,
        }
    }
}

/// Extends to the full category exactly when `ω` is a nondegenerate pairing.
pub fn extend_to_full(theory: &FrobeniusDatum) -> Extension {
    let Some(copairing) = theory.pairing.inverse() else {
        return Extension::Obstructed;
    };
    let field = theory.field();
    let mut circle = BigRational::zero();
    for i in 0..theory.dim() {
        for j in 0..theory.dim() {
            circle = field.add(&circle, &field.mul(theory.pairing.get(i, j), copairing.get(i, j)));
        }
    }
    Extension::Full(FullEvaluator { theory: theory.clone(), copairing, circle })
}

impl FullEvaluator {
    pub fn theory(&self) -> &FrobeniusDatum {
        &self.theory
    }

    pub fn copairing(&self) -> &FieldMatrix {
        &self.copairing
    }

    pub fn circle_value(&self) -> &BigRational {
        &self.circle
    }

    pub fn evaluate_matching(&self, w: &Matching1D) -> FieldMatrix {
        let t = &self.theory;
        contract(
            t.field(),
            t.dim(),
            w.src(),
            w.tgt(),
            &w.pairs(),
            w.circle_count(),
            &t.pairing,
            Some(&self.copairing),
            &self.circle,
        )
    }

    /// Evaluates independent morphisms on worker threads, preserving order.
    pub fn evaluate_all(&self, ws: &[Matching1D]) -> Vec<FieldMatrix> {
        let workers = thread::available_parallelism().map_or(1, |n| n.get());
        let chunk = ws.len().div_ceil(workers).max(1);
        thread::scope(|scope| {
            let handles: Vec<_> = ws
                .chunks(chunk)
                .map(|part| scope.spawn(move || part.iter().map(|w| self.evaluate_matching(w)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("evaluation finished")).collect()
        })
    }
}

/// A field theory on the 1-dimensional cobordism category, with the test for
/// landing in invertible objects and isomorphisms.
pub trait TheoryEvaluator {
    type Value;

    fn evaluate(&self, w: &Matching1D) -> Self::Value;

    fn is_invertible_value(&self, v: &Self::Value) -> bool;

    fn is_invertible_object(&self, points: usize) -> bool;

    fn invertibility_check(&self, samples: &[Matching1D]) -> bool {
        samples.iter().all(|w| {
            self.is_invertible_object(w.src())
                && self.is_invertible_object(w.tgt())
                && self.is_invertible_value(&self.evaluate(w))
        })
    }
}

impl TheoryEvaluator for FullEvaluator {
    type Value = FieldMatrix;

    fn evaluate(&self, w: &Matching1D) -> FieldMatrix {
        self.evaluate_matching(w)
    }

    fn is_invertible_value(&self, v: &FieldMatrix) -> bool {
        v.is_square() && v.is_invertible()
    }

    fn is_invertible_object(&self, points: usize) -> bool {
        points == 0 || self.theory.dim() == 1
    }
}

/// The Euler characteristic theory, valued in the integers viewed as a Picard
/// groupoid with one object per integer.
#[derive(Clone, Copy, Debug, Default)]
pub struct EulerTheory;

impl TheoryEvaluator for EulerTheory {
    type Value = i64;

    fn evaluate(&self, w: &Matching1D) -> i64 {
        euler_functor_1d(w)
    }

    fn is_invertible_value(&self, _: &i64) -> bool {
        true
    }

    fn is_invertible_object(&self, _: usize) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> FrobeniusDatum {
        FrobeniusDatum::new(FieldMatrix::from_i64_rows(Field::Rationals, rows)).unwrap()
    }

    #[test]
    fn restricted_identity_and_cup() {
        let t = q(&[vec![1, 2], vec![2, 5]]);
        assert_eq!(evaluate_restricted(&t, &RestrictedMorphism::identity(2)), FieldMatrix::identity(Field::Rationals, 4));
        let cup = RestrictedMorphism::new(2, Vec::new(), &[(0, 1)]).unwrap();
        let v = evaluate_restricted(&t, &cup);
        assert_eq!(v, FieldMatrix::from_i64_rows(Field::Rationals, &[vec![1], vec![2], vec![2], vec![5]]));
    }

    #[test]
    fn circle_value_is_the_dimension() {
        let e = extend_to_full(&q(&[vec![1, 0], vec![0, 1]]));
        let z = e.evaluator().unwrap().evaluate_matching(&Matching1D::circles(1));
        assert_eq!(z.get(0, 0), &BigRational::from_integer(2.into()));
        let f3 = FrobeniusDatum::new(FieldMatrix::from_i64_rows(Field::Prime(3), &[vec![0, 1], vec![1, 0]])).unwrap();
        let z = extend_to_full(&f3).evaluator().unwrap().evaluate_matching(&Matching1D::circles(1));
        assert_eq!(z.get(0, 0), &BigRational::from_integer(2.into()));
    }

    #[test]
    fn degenerate_pairings_do_not_extend() {
        assert!(!extend_to_full(&q(&[vec![0, 0], vec![0, 1]])).extends());
        assert!(extend_to_full(&q(&[vec![0, 3], vec![3, 1]])).extends());
    }

    #[test]
    fn zigzag_is_the_identity() {
        let e = extend_to_full(&q(&[vec![2, 1], vec![1, 3]]));
        let e = e.evaluator().unwrap();
        let id = Matching1D::identity(1);
        let left = Matching1D::cup().tensor(&id).then(&id.tensor(&Matching1D::cap())).unwrap();
        assert_eq!(left, id);
        let a = e.evaluate(&Matching1D::cup().tensor(&id));
        let b = e.evaluate(&id.tensor(&Matching1D::cap()));
        assert_eq!(b.mul(&a).unwrap(), FieldMatrix::identity(Field::Rationals, 2));
    }

    #[test]
    fn invertibility() {
        let samples = [Matching1D::cup(), Matching1D::cap(), Matching1D::swap(), Matching1D::circles(2)];
        let line = extend_to_full(&q(&[vec![1]]));
        assert!(line.evaluator().unwrap().invertibility_check(&samples));
        let plane = extend_to_full(&q(&[vec![1, 0], vec![0, 1]]));
        let plane = plane.evaluator().unwrap();
        assert!(!plane.invertibility_check(&[Matching1D::cap()]));
        assert_eq!(plane.evaluate(&Matching1D::cap()).cols(), 4);
        assert!(EulerTheory.invertibility_check(&samples));
    }

    #[test]
    fn json_round_trip() {
        let t = FrobeniusDatum::new(FieldMatrix::from_i64_rows(Field::Prime(5), &[vec![1, 2], vec![2, 4]])).unwrap();
        assert_eq!(FrobeniusDatum::from_json_value(&t.to_json_value()).unwrap(), t);
        assert!(FrobeniusDatum::from_json_str(r#"{"field":"Q","pairing":[[1,2],[3,4]]}"#).is_err());
    }
}

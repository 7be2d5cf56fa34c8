use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::MonoidalError;
use crate::cob1::Matching1D;
use crate::exactmath::{AbelianInvariants, Field, IntMatrix};
use crate::localize::planar_cob1_localization;

/// A direct sum of named cyclic groups; order 0 stands for `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSum {
    pub generators: Vec<String>,
    pub orders: Vec<u64>,
}

impl CyclicSum {
    pub fn new(orders: &[u64]) -> Self {
        let generators = (0..orders.len()).map(|i| format!("g{i}")).collect();
        Self { generators, orders: orders.to_vec() }
    }

    pub fn named(generators: &[&str], orders: &[u64]) -> Self {
        assert_eq!(generators.len(), orders.len());
        Self { generators: generators.iter().map(|s| s.to_string()).collect(), orders: orders.to_vec() }
    }

    pub fn from_invariants(inv: &AbelianInvariants) -> Self {
        let mut orders: Vec<u64> = inv.torsion.iter().map(|d| d.to_u64().expect("torsion fits in u64")).collect();
        orders.extend(std::iter::repeat(0).take(inv.rank));
        Self::new(&orders)
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_orders(&self.orders)
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.len()]
    }

    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[i] = 1;
        self.reduce(&v)
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.orders).map(|(&x, &o)| if o == 0 { x } else { x.rem_euclid(o as i64) }).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.scale(-1, a)
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().map(|x| k * x).collect::<Vec<_>>())
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        self.reduce(a).iter().all(|&x| x == 0)
    }

    /// All elements, when the group is finite.
    pub fn elements(&self) -> Option<Vec<Vec<i64>>> {
        if self.orders.contains(&0) {
            return None;
        }
        if self.is_empty() {
            return Some(vec![Vec::new()]);
        }
        Some(self.orders.iter().map(|&o| 0..o as i64).multi_cartesian_product().collect())
    }

    /// Parses a generator name or comma-separated coordinates.
    pub fn parse_element(&self, s: &str) -> Option<Vec<i64>> {
        if let Some(i) = self.generators.iter().position(|g| g == s.trim()) {
            return Some(self.generator(i));
        }
        let coords: Vec<i64> = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?
        };
        (coords.len() == self.len()).then(|| self.reduce(&coords))
    }
}

impl fmt::Display for CyclicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariants())
    }
}

/// A skeletal Picard groupoid: `π₀`, `π₁`, the bilinear antisymmetric symmetry
/// form `c` given on generator pairs, and a normalized associator cocycle `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardData {
    pi0: CyclicSum,
    pi1: CyclicSum,
    c: Vec<Vec<Vec<i64>>>,
    h: BTreeMap<[Vec<i64>; 3], Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymmetryEntry {
    pub x: String,
    pub y: String,
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssociatorEntry {
    pub args: [Vec<i64>; 3],
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PicardJson {
    pub pi0: CyclicSum,
    pub pi1: CyclicSum,
    #[serde(default)]
    pub c: Vec<SymmetryEntry>,
    #[serde(default)]
    pub h: Vec<AssociatorEntry>,
}

const COCYCLE_CHECK_LIMIT: usize = 16;

impl PicardData {
    pub fn new(pi0: CyclicSum, pi1: CyclicSum, c: Vec<Vec<Vec<i64>>>) -> Result<Self, MonoidalError> {
        let n = pi0.len();
        let bad = |msg: String| Err(MonoidalError::InvalidPicard(msg));
        if c.len() != n || c.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != pi1.len())) {
            return bad(format!("symmetry table must be {n} x {n} with values in a group of rank {}", pi1.len()));
        }
        let c: Vec<Vec<Vec<i64>>> = c.iter().map(|row| row.iter().map(|v| pi1.reduce(v)).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                if !pi1.is_zero(&pi1.add(&c[i][j], &c[j][i])) {
                    return bad(format!("c({0},{1}) + c({1},{0}) is not zero", pi0.generators[i], pi0.generators[j]));
                }
                for k in [i, j] {
                    let o = pi0.orders[k];
                    if o != 0 && !pi1.is_zero(&pi1.scale(o as i64, &c[i][j])) {
                        return bad(format!(
                            "c({},{}) is not killed by the order {o} of {}",
                            pi0.generators[i], pi0.generators[j], pi0.generators[k]
                        ));
                    }
                }
            }
        }
        Ok(Self { pi0, pi1, c, h: BTreeMap::new() })
    }

    /// Installs the associator. Arguments with a zero entry must map to zero, and
    /// on finite `π₀` of order at most 16 the cocycle identity is checked.
    pub fn with_associator(mut self, entries: &[([Vec<i64>; 3], Vec<i64>)]) -> Result<Self, MonoidalError> {
        let mut h = BTreeMap::new();
        for (args, value) in entries {
            if args.iter().any(|a| a.len() != self.pi0.len()) || value.len() != self.pi1.len() {
                return Err(MonoidalError::InvalidPicard("associator entry has the wrong shape".into()));
            }
            let args = [self.pi0.reduce(&args[0]), self.pi0.reduce(&args[1]), self.pi0.reduce(&args[2])];
            let value = self.pi1.reduce(value);
            if args.iter().any(|a| self.pi0.is_zero(a)) && !self.pi1.is_zero(&value) {
                return Err(MonoidalError::InvalidPicard("associator is not normalized".into()));
            }
            if !self.pi1.is_zero(&value) {
                h.insert(args, value);
            }
        }
        self.h = h;
        if let Some(elements) = self.pi0.elements().filter(|e| e.len() <= COCYCLE_CHECK_LIMIT) {
            for (a, b, c, d) in itertools::iproduct!(&elements, &elements, &elements, &elements) {
                let g = &self.pi0;
                let terms = [
                    self.h(b, c, d),
                    self.pi1.neg(&self.h(&g.add(a, b), c, d)),
                    self.h(a, &g.add(b, c), d),
                    self.pi1.neg(&self.h(a, b, &g.add(c, d))),
                    self.h(a, b, c),
                ];
                let total = terms.iter().fold(self.pi1.zero(), |acc, t| self.pi1.add(&acc, t));
                if !self.pi1.is_zero(&total) {
                    return Err(MonoidalError::InvalidPicard("associator is not a 3-cocycle".into()));
                }
            }
        }
        Ok(self)
    }

    pub fn pi0(&self) -> &CyclicSum {
        &self.pi0
    }

    pub fn pi1(&self) -> &CyclicSum {
        &self.pi1
    }

    pub fn h(&self, a: &[i64], b: &[i64], c: &[i64]) -> Vec<i64> {
        let key = [self.pi0.reduce(a), self.pi0.reduce(b), self.pi0.reduce(c)];
        self.h.get(&key).cloned().unwrap_or_else(|| self.pi1.zero())
    }

    /// The symmetry form extended bilinearly.
    pub fn c(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut acc = self.pi1.zero();
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                acc = self.pi1.add(&acc, &self.pi1.scale(xi * yj, &self.c[i][j]));
            }
        }
        acc
    }

    pub fn k_invariant(&self, x: &[i64]) -> Vec<i64> {
        self.c(x, x)
    }

    /// Images of the `π₀` generators under `k`, which is additive and kills `2π₀`.
    pub fn k_on_generators(&self) -> Vec<Vec<i64>> {
        (0..self.pi0.len()).map(|i| self.k_invariant(&self.pi0.generator(i))).collect()
    }

    /// `F^∼` for vector spaces over `field`: one class of lines.
    pub fn vect(field: Field) -> Self {
        let (units, _) = field_units(field);
        Self::new(CyclicSum::new(&[]), units, Vec::new()).expect("trivial data is valid")
    }

    /// Super lines over `field`: even and odd, with the Koszul sign on odd ⊗ odd.
    pub fn svect(field: Field) -> Self {
        let (units, minus_one) = field_units(field);
        Self::new(CyclicSum::named(&["odd"], &[2]), units, vec![vec![minus_one]]).expect("Koszul data is valid")
    }

    pub fn from_json_value(doc: &PicardJson) -> Result<Self, MonoidalError> {
        let n = doc.pi0.len();
        let mut c = vec![vec![doc.pi1.zero(); n]; n];
        let index = |name: &str| {
            doc.pi0
                .generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| MonoidalError::InvalidPicard(format!("unknown generator {name}")))
        };
        for e in &doc.c {
            c[index(&e.x)?][index(&e.y)?] = e.value.clone();
        }
        let h: Vec<_> = doc.h.iter().map(|e| (e.args.clone(), e.value.clone())).collect();
        Self::new(doc.pi0.clone(), doc.pi1.clone(), c)?.with_associator(&h)
    }

    pub fn to_json_value(&self) -> PicardJson {
        let mut c = Vec::new();
        for (i, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !self.pi1.is_zero(v) {
                    c.push(SymmetryEntry {
                        x: self.pi0.generators[i].clone(),
                        y: self.pi0.generators[j].clone(),
                        value: v.clone(),
                    });
                }
            }
        }
        let h = self.h.iter().map(|(args, value)| AssociatorEntry { args: args.clone(), value: value.clone() }).collect();
        PicardJson { pi0: self.pi0.clone(), pi1: self.pi1.clone(), c, h }
    }

    pub fn from_json_str(s: &str) -> Result<Self, MonoidalError> {
        let doc: PicardJson = serde_json::from_str(s).map_err(|e| MonoidalError::Json(e.to_string()))?;
        Self::from_json_value(&doc)
    }
}

/// The unit group of `field` as a cyclic sum, with the coordinates of `-1`.
///
/// Over `Q` only the sign subgroup `{±1}` is modelled; over `F_p` the group is
/// cyclic of order `p - 1`, written in terms of the least primitive root.
pub fn field_units(field: Field) -> (CyclicSum, Vec<i64>) {
    match field {
        Field::Rationals => (CyclicSum::named(&["-1"], &[2]), vec![1]),
        Field::Prime(2) => (CyclicSum::named(&["1"], &[1]), vec![0]),
        Field::Prime(p) => {
            let root = primitive_root(p);
            (CyclicSum { generators: vec![root.to_string()], orders: vec![p - 1] }, vec![((p - 1) / 2) as i64])
        }
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, n / q, p) != 1)).unwrap_or(1)
}

/// Generator images of candidate isomorphisms `a → b`; free coordinates range over
/// `-1..=1`.
fn isomorphisms(a: &CyclicSum, b: &CyclicSum, bound: u128, spent: &mut u128) -> Result<Vec<Vec<Vec<i64>>>, MonoidalError> {
    let ranges: Vec<Vec<i64>> =
        b.orders.iter().map(|&o| if o == 0 { vec![-1, 0, 1] } else { (0..o as i64).collect() }).collect();
    let box_elements: Vec<Vec<i64>> = if b.is_empty() {
        vec![Vec::new()]
    } else {
        ranges.into_iter().multi_cartesian_product().collect()
    };
    let per_generator: Vec<Vec<Vec<i64>>> = a
        .orders
        .iter()
        .map(|&o| box_elements.iter().filter(|v| o == 0 || b.is_zero(&b.scale(o as i64, v))).cloned().collect())
        .collect();
    let count = per_generator.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    *spent = spent.saturating_add(count);
    if *spent > bound {
        return Err(MonoidalError::SearchBound(*spent, bound));
    }
    if a.is_empty() {
        return Ok(if b.invariants().is_trivial() { vec![Vec::new()] } else { Vec::new() });
    }
    let surjective = |images: &Vec<Vec<i64>>| {
        let mut rows: Vec<Vec<i64>> = b
            .orders
            .iter()
            .enumerate()
            .map(|(i, &o)| (0..b.len()).map(|j| if i == j { o as i64 } else { 0 }).collect())
            .collect();
        rows.extend(images.iter().cloned());
        let m = IntMatrix::from_i64_rows(&rows);
        AbelianInvariants::from_relation_matrix(&m).is_trivial()
    };
    Ok(per_generator.into_iter().multi_cartesian_product().filter(surjective).collect())
}

fn apply(images: &[Vec<i64>], target: &CyclicSum, x: &[i64]) -> Vec<i64> {
    x.iter().zip(images).fold(target.zero(), |acc, (&xi, img)| target.add(&acc, &target.scale(xi, img)))
}

/// Whether isomorphisms `π₀(p) ≅ π₀(q)` and `π₁(p) ≅ π₁(q)` intertwining the
/// k-invariants exist. `bound` caps the number of candidate maps examined.
pub fn picard_equivalent(p: &PicardData, q: &PicardData, bound: u128) -> Result<bool, MonoidalError> {
    if p.pi0.invariants() != q.pi0.invariants() || p.pi1.invariants() != q.pi1.invariants() {
        return Ok(false);
    }
    let mut spent = 0;
    let phi0s = isomorphisms(&p.pi0, &q.pi0, bound, &mut spent)?;
    let phi1s = isomorphisms(&p.pi1, &q.pi1, bound, &mut spent)?;
    let kp = p.k_on_generators();
    Ok(phi0s.iter().any(|phi0| {
        let target: Vec<Vec<i64>> = phi0.iter().map(|img| q.k_invariant(img)).collect();
        phi1s.iter().any(|phi1| kp.iter().zip(&target).all(|(k, t)| &apply(phi1, &q.pi1, k) == t))
    }))
}

/// The `π₀`, `π₁` and k-invariant of the localized unoriented 1-dimensional
/// cobordism category, read off the truncated planar model.
#[derive(Clone, Debug)]
pub struct Cob1PicardDerivation {
    pub data: PicardData,
    pub k: Vec<i64>,
    pub trace: Vec<String>,
}

pub fn cob1_picard_data(max_strands: usize) -> Result<Cob1PicardDerivation, MonoidalError> {
    let model = planar_cob1_localization(max_strands.max(2));
    let mut trace = Vec::new();
    let pi0 = CyclicSum::named(&["pt"], &[model.components.len() as u64]);
    trace.push(format!("strand-count components: {}", model.components.len()));
    let pi1 = CyclicSum::from_invariants(&model.invariants);
    trace.push(format!("loops at the empty object abelianize to {}", model.invariants));
    let circle: Vec<i64> = model.circle_class.iter().map(|x| x.to_i64().expect("small class")).collect();
    trace.push(format!("circle class {circle:?}"));
    let closed_class = |w: &Matching1D| -> Vec<i64> { pi1.scale(w.circle_count() as i64, &circle) };
    let cup = Matching1D::cup();
    let swapped = cup.then(&Matching1D::swap()).expect("cup lands in two points");
    trace.push(format!("swap after cup {} cup", if swapped == cup { "equals" } else { "differs from" }));
    let twisted = swapped.then(&Matching1D::cap()).expect("closes up");
    let plain = cup.then(&Matching1D::cap()).expect("closes up");
    trace.push(format!(
        "cap.swap.cup has {} circle(s), cap.cup has {}",
        twisted.circle_count(),
        plain.circle_count()
    ));
    let k = pi1.add(&closed_class(&twisted), &pi1.neg(&closed_class(&plain)));
    trace.push(format!("k(pt) = class(cap.swap.cup) - class(cap.cup) = {k:?}"));
    let data = PicardData::new(pi0, pi1, vec![vec![k.clone()]])?;
    Ok(Cob1PicardDerivation { data, k, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_sign_is_the_k_invariant() {
        let s = PicardData::svect(Field::Rationals);
        assert_eq!(s.k_invariant(&[1]), vec![1]);
        assert_eq!(s.k_invariant(&[0]), vec![0]);
        let s5 = PicardData::svect(Field::Prime(5));
        assert_eq!(s5.pi1().orders, vec![4]);
        assert_eq!(s5.k_invariant(&[1]), vec![2]);
        assert_eq!(PicardData::vect(Field::Prime(5)).k_on_generators(), Vec::<Vec<i64>>::new());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(3), 2);
    }

    #[test]
    fn antisymmetry_is_enforced() {
        let err = PicardData::new(CyclicSum::new(&[0, 0]), CyclicSum::new(&[0]), vec![
            vec![vec![0], vec![1]],
            vec![vec![1], vec![0]],
        ]);
        assert!(matches!(err, Err(MonoidalError::InvalidPicard(_))));
        let ok = PicardData::new(CyclicSum::new(&[0, 0]), CyclicSum::new(&[0]), vec![
            vec![vec![0], vec![1]],
            vec![vec![-1], vec![0]],
        ]);
        assert!(ok.is_ok());
    }

    #[test]
    fn equivalence_sees_the_sign() {
        let bound = 1_000_000;
        let s5 = PicardData::svect(Field::Prime(5));
        assert!(picard_equivalent(&s5, &s5, bound).unwrap());
        assert!(!picard_equivalent(&PicardData::vect(Field::Prime(5)), &s5, bound).unwrap());
        let split = PicardData::new(CyclicSum::new(&[2]), CyclicSum::new(&[4]), vec![vec![vec![0]]]).unwrap();
        assert!(!picard_equivalent(&split, &s5, bound).unwrap());
        let s2 = PicardData::svect(Field::Prime(2));
        let split2 = PicardData::new(CyclicSum::new(&[2]), CyclicSum::new(&[1]), vec![vec![vec![0]]]).unwrap();
        assert!(picard_equivalent(&s2, &split2, bound).unwrap());
        assert!(!picard_equivalent(&s2, &PicardData::vect(Field::Prime(2)), bound).unwrap());
    }

    #[test]
    fn search_bound_is_reported() {
        let big = PicardData::new(CyclicSum::new(&[0, 0, 0, 0]), CyclicSum::new(&[0, 0, 0, 0]), vec![vec![vec![0; 4]; 4]; 4])
            .unwrap();
        assert!(matches!(picard_equivalent(&big, &big, 1000), Err(MonoidalError::SearchBound(_, 1000))));
    }

    #[test]
    fn associator_validation() {
        let p = PicardData::new(CyclicSum::new(&[2]), CyclicSum::new(&[2]), vec![vec![vec![1]]]).unwrap();
        assert!(p.clone().with_associator(&[([vec![0], vec![1], vec![1]], vec![1])]).is_err());
        let cocycle = p.clone().with_associator(&[([vec![1], vec![1], vec![1]], vec![1])]);
        assert!(cocycle.is_ok());
        assert_eq!(cocycle.unwrap().h(&[1], &[1], &[1]), vec![1]);
    }

    #[test]
    fn json_round_trip() {
        let s = PicardData::svect(Field::Prime(7));
        let doc = serde_json::to_string(&s.to_json_value()).unwrap();
        assert_eq!(PicardData::from_json_str(&doc).unwrap(), s);
    }

    #[test]
    fn cob1_data_from_the_planar_model() {
        let d = cob1_picard_data(4).unwrap();
        assert_eq!(d.data.pi0().invariants(), AbelianInvariants::cyclic(2));
        assert_eq!(d.data.pi1().invariants(), AbelianInvariants::free(1));
        assert_eq!(d.k, vec![0]);
        assert!(d.trace.iter().any(|l| l.contains("equals")));
    }
}

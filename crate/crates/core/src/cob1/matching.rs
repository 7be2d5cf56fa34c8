use serde::{Deserialize, Serialize};

use super::Cob1Error;

/// An abstract 1-dimensional cobordism up to diffeomorphism rel boundary: a perfect
/// matching of the boundary points plus a count of closed circles.
///
/// Points `0..src` are incoming, `src..src + tgt` outgoing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching1D {
    src: usize,
    tgt: usize,
    partner: Vec<usize>,
    circles: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching1DJson {
    pub m: usize,
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub circles: usize,
}

impl Matching1D {
    pub fn new(src: usize, tgt: usize, pairs: &[(usize, usize)], circles: usize) -> Result<Self, Cob1Error> {
        let total = src + tgt;
        if total % 2 != 0 {
            return Err(Cob1Error::OddBoundary(total));
        }
        let mut partner = vec![usize::MAX; total];
        for &(a, b) in pairs {
            if a >= total || b >= total || a == b {
                return Err(Cob1Error::BadMatching(format!("pair ({a}, {b})")));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Cob1Error::BadMatching(format!("point reused in ({a}, {b})")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(p) = partner.iter().position(|&q| q == usize::MAX) {
            return Err(Cob1Error::BadMatching(format!("point {p} is unmatched")));
        }
        Ok(Self { src, tgt, partner, circles })
    }

    pub(crate) fn from_partner(src: usize, tgt: usize, partner: Vec<usize>, circles: usize) -> Self {
        debug_assert_eq!(partner.len(), src + tgt);
        debug_assert!(partner.iter().enumerate().all(|(i, &p)| p != i && partner[p] == i));
        Self { src, tgt, partner, circles }
    }

    pub fn identity(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
        Self::new(n, n, &pairs, 0).expect("identity matching")
    }

    /// The arc `∅ → 2 points`.
    pub fn cup() -> Self {
        Self::new(0, 2, &[(0, 1)], 0).expect("cup")
    }

    /// The arc `2 points → ∅`.
    pub fn cap() -> Self {
        Self::new(2, 0, &[(0, 1)], 0).expect("cap")
    }

    /// The crossing `2 → 2` exchanging the two points.
    pub fn swap() -> Self {
        Self::new(2, 2, &[(0, 3), (1, 2)], 0).expect("swap")
    }

    /// `k` circles as an endomorphism of the empty set.
    pub fn circles(k: usize) -> Self {
        Self { src: 0, tgt: 0, partner: Vec::new(), circles: k }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn circle_count(&self) -> usize {
        self.circles
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    /// Matched pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len()).filter(|&a| a < self.partner[a]).map(|a| (a, self.partner[a])).collect()
    }

    pub fn arc_count(&self) -> usize {
        self.partner.len() / 2
    }

    /// Composite "`self` then `next`", gluing `self`'s outgoing points to `next`'s incoming ones.
    pub fn then(&self, next: &Matching1D) -> Result<Matching1D, Cob1Error> {
        compose_abstract(self, next)
    }

    /// Side by side: `self` below `other` on both ends.
    pub fn tensor(&self, other: &Matching1D) -> Matching1D {
        let (m1, n1, m2, n2) = (self.src, self.tgt, other.src, other.tgt);
        let relabel_self = |p: usize| if p < m1 { p } else { p - m1 + m1 + m2 };
        let relabel_other = |p: usize| if p < m2 { m1 + p } else { m1 + m2 + n1 + (p - m2) };
        let mut partner = vec![0; m1 + m2 + n1 + n2];
        for p in 0..m1 + n1 {
            partner[relabel_self(p)] = relabel_self(self.partner[p]);
        }
        for p in 0..m2 + n2 {
            partner[relabel_other(p)] = relabel_other(other.partner[p]);
        }
        Matching1D::from_partner(m1 + m2, n1 + n2, partner, self.circles + other.circles)
    }

    /// Arcs with both ends outgoing or both incoming, or closed circles, are exactly
    /// what the connectivity condition forbids on the incoming side.
    pub fn has_incoming_turnback(&self) -> bool {
        (0..self.src).any(|p| self.partner[p] < self.src)
    }

    pub fn to_json_value(&self) -> Matching1DJson {
        Matching1DJson {
            m: self.src,
            n: self.tgt,
            pairs: self.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            circles: self.circles,
        }
    }

    pub fn from_json_value(doc: &Matching1DJson) -> Result<Self, Cob1Error> {
        let pairs: Vec<(usize, usize)> = doc.pairs.iter().map(|p| (p[0], p[1])).collect();
        Self::new(doc.m, doc.n, &pairs, doc.circles)
    }
}

/// Splices `w` (m → k) and `w2` (k → n) through the middle boundary. Every loop
/// closed up in the middle adds a circle.
pub fn compose_abstract(w: &Matching1D, w2: &Matching1D) -> Result<Matching1D, Cob1Error> {
    if w.tgt != w2.src {
        return Err(Cob1Error::InterfaceMismatch { left: w.tgt, right: w2.src });
    }
    let (m, k, n) = (w.src, w.tgt, w2.tgt);
    let mut visited = vec![false; k];
    // Endpoint kinds in the composite: incoming p < m, outgoing m + t.
    enum End {
        Source(usize),
        Target(usize),
    }
    // Follow a path entering the middle at point j from w's side (true) or w2's side.
    let walk = |mut j: usize, mut from_w: bool, visited: &mut Vec<bool>| -> End {
        loop {
            visited[j] = true;
            if from_w {
                // arrived at middle j through w, continue inside w2
                let q = w2.partner[j];
                if q >= k {
                    return End::Target(q - k);
                }
                j = q;
                from_w = false;
            } else {
                let p = w.partner[m + j];
                if p < m {
                    return End::Source(p);
                }
                j = p - m;
                from_w = true;
            }
        }
    };
    let mut partner = vec![usize::MAX; m + n];
    let index = |e: &End| match *e {
        End::Source(p) => p,
        End::Target(t) => m + t,
    };
    for s in 0..m {
        if partner[s] != usize::MAX {
            continue;
        }
        let p = w.partner[s];
        let end = if p < m { End::Source(p) } else { walk(p - m, true, &mut visited) };
        let e = index(&end);
        partner[s] = e;
        partner[e] = s;
    }
    for t in 0..n {
        if partner[m + t] != usize::MAX {
            continue;
        }
        let q = w2.partner[k + t];
        let end = if q >= k { End::Target(q - k) } else { walk(q, false, &mut visited) };
        let e = index(&end);
        partner[m + t] = e;
        partner[e] = m + t;
    }
    let mut circles = w.circles + w2.circles;
    for j in 0..k {
        if visited[j] {
            continue;
        }
        // closed loop through the middle
        let mut cur = j;
        loop {
            visited[cur] = true;
            let a = w2.partner[cur];
            debug_assert!(a < k);
            visited[a] = true;
            let b = w.partner[m + a];
            debug_assert!(b >= m);
            cur = b - m;
            if cur == j {
                break;
            }
        }
        circles += 1;
    }
    Ok(Matching1D::from_partner(m, n, partner, circles))
}

/// `χ(W) − χ(M₀)`: arcs count 1, circles 0, so the value is `(n − m) / 2`.
pub fn euler_functor_1d(w: &Matching1D) -> i64 {
    w.arc_count() as i64 - w.src as i64
}

/// Witness `η(M) = (|M| − (|M| mod 2)) / 2` with `E(w) = η(tgt) − η(src)`.
pub fn triviality_witness(points: usize) -> i64 {
    ((points - points % 2) / 2) as i64
}

/// Reparametrizes the incoming boundary: incoming point `p` is renamed `perm[p]`.
pub fn act_boundary(w: &Matching1D, perm: &[usize]) -> Result<Matching1D, Cob1Error> {
    if perm.len() != w.src {
        return Err(Cob1Error::InterfaceMismatch { left: perm.len(), right: w.src });
    }
    let mut seen = vec![false; w.src];
    for &p in perm {
        if p >= w.src || std::mem::replace(&mut seen[p], true) {
            return Err(Cob1Error::BadPermutation);
        }
    }
    let relabel = |p: usize| if p < w.src { perm[p] } else { p };
    let mut partner = vec![0; w.partner.len()];
    for (p, &q) in w.partner.iter().enumerate() {
        partner[relabel(p)] = relabel(q);
    }
    Ok(Matching1D::from_partner(w.src, w.tgt, partner, w.circles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn cap_after_cup_is_a_circle() {
        let c = compose_abstract(&Matching1D::cup(), &Matching1D::cap()).unwrap();
        assert_eq!(c, Matching1D::circles(1));
    }

    #[test]
    fn identity_is_a_unit() {
        let w = Matching1D::new(3, 1, &[(0, 2), (1, 3)], 2).unwrap();
        assert_eq!(Matching1D::identity(3).then(&w).unwrap(), w);
        assert_eq!(w.then(&Matching1D::identity(1)).unwrap(), w);
    }

    #[test]
    fn zig_zag_straightens() {
        // (cup ⊗ id) then (id ⊗ cap): 1 → 3 → 1
        let left = Matching1D::cup().tensor(&Matching1D::identity(1));
        let right = Matching1D::identity(1).tensor(&Matching1D::cap());
        assert_eq!(left.then(&right).unwrap(), Matching1D::identity(1));
        let left = Matching1D::identity(1).tensor(&Matching1D::cup());
        let right = Matching1D::cap().tensor(&Matching1D::identity(1));
        assert_eq!(left.then(&right).unwrap(), Matching1D::identity(1));
    }

    #[test]
    fn mismatched_interfaces_fail() {
        assert!(compose_abstract(&Matching1D::cup(), &Matching1D::identity(1)).is_err());
        assert!(Matching1D::new(1, 0, &[], 0).is_err());
        assert!(Matching1D::new(2, 0, &[(0, 0)], 0).is_err());
        assert!(Matching1D::new(2, 2, &[(0, 1)], 0).is_err());
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_functor_1d(&Matching1D::cup()), 1);
        assert_eq!(euler_functor_1d(&Matching1D::cap()), -1);
        assert_eq!(euler_functor_1d(&Matching1D::circles(3)), 0);
        assert_eq!(triviality_witness(2) - triviality_witness(0), 1);
    }

    #[test]
    fn boundary_action() {
        let w = Matching1D::identity(2);
        assert_eq!(act_boundary(&w, &[0, 1]).unwrap(), w);
        assert_eq!(act_boundary(&Matching1D::cap(), &[1, 0]).unwrap(), Matching1D::cap());
        assert_eq!(act_boundary(&w, &[1, 0]).unwrap(), Matching1D::swap());
        assert!(act_boundary(&w, &[0, 0]).is_err());
        assert!(act_boundary(&w, &[0]).is_err());
    }

    #[test]
    fn orbits_are_diffeomorphism_classes() {
        // For cobordisms 4 points → ∅, the orbit of a matching under relabeling is
        // everything with the same number of arcs and circles.
        let all: Vec<Matching1D> = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
            .iter()
            .map(|&(a, b, c, d)| Matching1D::new(4, 0, &[(a, b), (c, d)], 1).unwrap())
            .collect();
        let orbit: Vec<Matching1D> = (0..4)
            .permutations(4)
            .map(|p| act_boundary(&all[0], &p).unwrap())
            .unique()
            .sorted_by_key(|m| m.pairs())
            .collect();
        assert_eq!(orbit, all);
        let other = Matching1D::new(4, 0, &[(0, 1), (2, 3)], 0).unwrap();
        assert!(!orbit.contains(&other));
    }

    #[test]
    fn json_round_trip() {
        let w = Matching1D::new(3, 1, &[(0, 2), (1, 3)], 2).unwrap();
        assert_eq!(Matching1D::from_json_value(&w.to_json_value()).unwrap(), w);
    }
}

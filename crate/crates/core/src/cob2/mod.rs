//! Two-dimensional cobordisms through the classification of surfaces.

mod closed;
mod json;
mod oriented;

use std::collections::VecDeque;

use thiserror::Error;

use crate::exactmath::UnionFind;

pub use closed::{connected_sum, signed_point_count, ClosedSurfaceClass, ConnectedSurface};
pub use json::{SurfaceCobordismJson, SurfaceComponentJson};
pub use oriented::{OrientedComponent, OrientedSurfaceCobordism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Cob2Error {
    #[error("interface mismatch: {left} outgoing circles vs {right} incoming")]
    InterfaceMismatch { left: usize, right: usize },
    #[error("invalid surface: {0}")]
    Invalid(String),
    #[error("non-integral genus or crosscap number (chi {chi}, {boundary} boundary circles)")]
    Integrality { chi: i64, boundary: usize },
    #[error("expected a closed surface")]
    NotClosed,
    #[error("expected orientable input")]
    NonOrientable,
    #[error("json: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    In,
    Out,
}

/// A boundary circle, addressed by side and position in the source or target list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleRef {
    pub side: Side,
    pub pos: usize,
}

impl CircleRef {
    pub fn incoming(pos: usize) -> Self {
        Self { side: Side::In, pos }
    }

    pub fn outgoing(pos: usize) -> Self {
        Self { side: Side::Out, pos }
    }
}

/// A connected surface with boundary, stored by Euler characteristic.
///
/// For orientable components `eps` holds the boundary orientation signs modulo a
/// global flip, normalized so the least circle carries `+1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceComponent {
    circles: Vec<CircleRef>,
    orientable: bool,
    chi: i64,
    eps: Vec<i8>,
}

impl SurfaceComponent {
    pub fn orientable(genus: u64, boundary: &[(CircleRef, i8)]) -> Result<Self, Cob2Error> {
        let b = boundary.len() as i64;
        Self::build(true, 2 - 2 * genus as i64 - b, boundary.to_vec())
    }

    pub fn non_orientable(crosscaps: u64, circles: &[CircleRef]) -> Result<Self, Cob2Error> {
        if crosscaps == 0 {
            return Err(Cob2Error::Invalid("non-orientable component needs at least one crosscap".into()));
        }
        let b = circles.len() as i64;
        Self::build(false, 2 - crosscaps as i64 - b, circles.iter().map(|&c| (c, 1)).collect())
    }

    fn build(orientable: bool, chi: i64, mut boundary: Vec<(CircleRef, i8)>) -> Result<Self, Cob2Error> {
        boundary.sort();
        if boundary.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Cob2Error::Invalid("circle listed twice in one component".into()));
        }
        if orientable && boundary.iter().any(|&(_, e)| e != 1 && e != -1) {
            return Err(Cob2Error::Invalid("eps must be +1 or -1".into()));
        }
        let circles = boundary.iter().map(|&(c, _)| c).collect();
        let mut eps: Vec<i8> = if orientable { boundary.iter().map(|&(_, e)| e).collect() } else { Vec::new() };
        if eps.first() == Some(&-1) {
            eps.iter_mut().for_each(|e| *e = -*e);
        }
        let comp = Self { circles, orientable, chi, eps };
        comp.check_integral()?;
        Ok(comp)
    }

    fn check_integral(&self) -> Result<(), Cob2Error> {
        let rest = 2 - self.chi - self.circles.len() as i64;
        let ok = if self.orientable { rest >= 0 && rest % 2 == 0 } else { rest >= 1 };
        if ok {
            Ok(())
        } else {
            Err(Cob2Error::Integrality { chi: self.chi, boundary: self.circles.len() })
        }
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn boundary_count(&self) -> usize {
        self.circles.len()
    }

    pub fn genus(&self) -> Option<u64> {
        self.orientable.then(|| ((2 - self.chi - self.circles.len() as i64) / 2) as u64)
    }

    pub fn crosscaps(&self) -> Option<u64> {
        (!self.orientable).then(|| (2 - self.chi - self.circles.len() as i64) as u64)
    }

    pub fn circles(&self) -> &[CircleRef] {
        &self.circles
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn eps_of(&self, c: CircleRef) -> Option<i8> {
        let i = self.circles.iter().position(|&d| d == c)?;
        self.eps.get(i).copied()
    }

    pub fn in_circles(&self) -> impl Iterator<Item = usize> + '_ {
        self.circles.iter().filter(|c| c.side == Side::In).map(|c| c.pos)
    }

    pub fn out_circles(&self) -> impl Iterator<Item = usize> + '_ {
        self.circles.iter().filter(|c| c.side == Side::Out).map(|c| c.pos)
    }

    pub fn is_closed(&self) -> bool {
        self.circles.is_empty()
    }

    fn boundary_with_eps(&self) -> Vec<(CircleRef, i8)> {
        self.circles
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, self.eps.get(i).copied().unwrap_or(1)))
            .collect()
    }

    fn relabeled(&self, f: impl Fn(CircleRef) -> CircleRef, flip: impl Fn(CircleRef) -> bool) -> Self {
        let boundary = self
            .boundary_with_eps()
            .into_iter()
            .map(|(c, e)| (f(c), if flip(c) { -e } else { e }))
            .collect();
        Self::build(self.orientable, self.chi, boundary).expect("relabeling keeps the component valid")
    }
}

/// A morphism of the 2-dimensional cobordism category up to diffeomorphism rel
/// boundary: connected components partitioning the incoming and outgoing circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceCobordism {
    src: Vec<String>,
    tgt: Vec<String>,
    components: Vec<SurfaceComponent>,
}

impl SurfaceCobordism {
    pub fn new(src: Vec<String>, tgt: Vec<String>, mut components: Vec<SurfaceComponent>) -> Result<Self, Cob2Error> {
        for (name, ids) in [("source", &src), ("target", &tgt)] {
            let mut sorted: Vec<&String> = ids.iter().collect();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Cob2Error::Invalid(format!("repeated circle id in {name}")));
            }
        }
        let mut seen_in = vec![false; src.len()];
        let mut seen_out = vec![false; tgt.len()];
        for comp in &components {
            for c in &comp.circles {
                let slot = match c.side {
                    Side::In => seen_in.get_mut(c.pos),
                    Side::Out => seen_out.get_mut(c.pos),
                };
                match slot {
                    Some(s) if !*s => *s = true,
                    _ => return Err(Cob2Error::Invalid(format!("circle {:?} {} missing or reused", c.side, c.pos))),
                }
            }
        }
        if seen_in.iter().chain(&seen_out).any(|s| !s) {
            return Err(Cob2Error::Invalid("some boundary circle belongs to no component".into()));
        }
        components.sort();
        Ok(Self { src, tgt, components })
    }

    fn from_parts(src: Vec<String>, tgt: Vec<String>, mut components: Vec<SurfaceComponent>) -> Self {
        components.sort();
        Self { src, tgt, components }
    }

    pub fn src(&self) -> &[String] {
        &self.src
    }

    pub fn tgt(&self) -> &[String] {
        &self.tgt
    }

    pub fn components(&self) -> &[SurfaceComponent] {
        &self.components
    }

    /// Identity cylinders, each with signs (in: +1, out: −1).
    pub fn identity(ids: &[String]) -> Self {
        let comps = (0..ids.len())
            .map(|i| SurfaceComponent::orientable(0, &[(CircleRef::incoming(i), 1), (CircleRef::outgoing(i), -1)]).unwrap())
            .collect();
        Self::from_parts(ids.to_vec(), ids.to_vec(), comps)
    }

    pub fn identity_n(n: usize) -> Self {
        Self::identity(&default_ids(n))
    }

    /// Connected closed surface as an endomorphism of the empty manifold.
    pub fn closed(surface: ConnectedSurface) -> Self {
        let comp = match surface {
            ConnectedSurface::Orientable(g) => SurfaceComponent::orientable(g, &[]),
            ConnectedSurface::NonOrientable(h) => SurfaceComponent::non_orientable(h, &[]),
        }
        .expect("closed surface");
        Self::from_parts(Vec::new(), Vec::new(), vec![comp])
    }

    /// Connected orientable genus-`g` surface with the given in/out signs.
    pub fn connected_orientable(genus: u64, in_eps: &[i8], out_eps: &[i8]) -> Result<Self, Cob2Error> {
        let boundary: Vec<(CircleRef, i8)> = in_eps
            .iter()
            .enumerate()
            .map(|(i, &e)| (CircleRef::incoming(i), e))
            .chain(out_eps.iter().enumerate().map(|(i, &e)| (CircleRef::outgoing(i), e)))
            .collect();
        let comp = SurfaceComponent::orientable(genus, &boundary)?;
        Ok(Self::from_parts(default_ids(in_eps.len()), default_ids(out_eps.len()), vec![comp]))
    }

    pub fn connected_non_orientable(crosscaps: u64, m: usize, n: usize) -> Result<Self, Cob2Error> {
        let circles: Vec<CircleRef> =
            (0..m).map(CircleRef::incoming).chain((0..n).map(CircleRef::outgoing)).collect();
        let comp = SurfaceComponent::non_orientable(crosscaps, &circles)?;
        Ok(Self::from_parts(default_ids(m), default_ids(n), vec![comp]))
    }

    /// Disc `∅ → S¹`.
    pub fn disc_out() -> Self {
        Self::connected_orientable(0, &[], &[1]).unwrap()
    }

    /// Disc `S¹ → ∅`.
    pub fn disc_in() -> Self {
        Self::connected_orientable(0, &[1], &[]).unwrap()
    }

    /// Pair of pants `S¹ → S¹ ⊔ S¹`.
    pub fn pants() -> Self {
        Self::connected_orientable(0, &[1], &[-1, -1]).unwrap()
    }

    /// Pair of pants `S¹ ⊔ S¹ → S¹`.
    pub fn copants() -> Self {
        Self::connected_orientable(0, &[1, 1], &[-1]).unwrap()
    }

    /// Annulus `∅ → S¹ ⊔ S¹` with the given outgoing signs.
    pub fn annulus_out(eps: [i8; 2]) -> Self {
        Self::connected_orientable(0, &[], &eps).unwrap()
    }

    /// Annulus `S¹ ⊔ S¹ → ∅` with the given incoming signs.
    pub fn annulus_in(eps: [i8; 2]) -> Self {
        Self::connected_orientable(0, &eps, &[]).unwrap()
    }

    /// `self` on the lower positions, `other` above, on both ends.
    pub fn disjoint_union(&self, other: &SurfaceCobordism) -> SurfaceCobordism {
        let (m, n) = (self.src.len(), self.tgt.len());
        let shift = |c: CircleRef| match c.side {
            Side::In => CircleRef::incoming(c.pos + m),
            Side::Out => CircleRef::outgoing(c.pos + n),
        };
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().map(|c| c.relabeled(shift, |_| false)));
        let join = |a: &[String], b: &[String]| -> Vec<String> {
            if b.iter().any(|id| a.contains(id)) {
                default_ids(a.len() + b.len())
            } else {
                a.iter().chain(b).cloned().collect()
            }
        };
        Self::from_parts(join(&self.src, &other.src), join(&self.tgt, &other.tgt), comps)
    }

    pub fn is_endomorphism_of_empty(&self) -> bool {
        self.src.is_empty() && self.tgt.is_empty()
    }

    /// Every component has outgoing boundary when `k = 0`; `k = −1` imposes nothing.
    /// `None` for `k ≥ 1`, which needs relative homotopy data this model lacks.
    pub fn is_k_connected(&self, k: i32) -> Option<bool> {
        match k {
            i32::MIN..=-1 => Some(true),
            0 => Some(self.components.iter().all(|c| c.out_circles().next().is_some())),
            _ => None,
        }
    }

    /// Sum of component Euler characteristics.
    pub fn chi(&self) -> i64 {
        self.components.iter().map(|c| c.chi).sum()
    }
}

/// `c0, c1, …`
pub fn default_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("c{i}")).collect()
}

/// Glues `w`'s outgoing circles to `w2`'s incoming ones, position by position.
pub fn compose_surface(w: &SurfaceCobordism, w2: &SurfaceCobordism) -> Result<SurfaceCobordism, Cob2Error> {
    if w.tgt.len() != w2.src.len() {
        return Err(Cob2Error::InterfaceMismatch { left: w.tgt.len(), right: w2.src.len() });
    }
    let p = w.components.len();
    let total = p + w2.components.len();
    let comp = |i: usize| if i < p { &w.components[i] } else { &w2.components[i - p] };
    let k = w.tgt.len();
    let mut out_owner = vec![usize::MAX; k];
    let mut in_owner = vec![usize::MAX; k];
    for (i, c) in w.components.iter().enumerate() {
        for j in c.out_circles() {
            out_owner[j] = i;
        }
    }
    for (i, c) in w2.components.iter().enumerate() {
        for j in c.in_circles() {
            in_owner[j] = p + i;
        }
    }
    let mut uf = UnionFind::new(total);
    // o_v = sign · o_u along each glued circle
    let mut adjacency: Vec<Vec<(usize, i8)>> = vec![Vec::new(); total];
    for j in 0..k {
        let (a, b) = (out_owner[j], in_owner[j]);
        uf.union(a, b);
        if let (Some(ea), Some(eb)) = (comp(a).eps_of(CircleRef::outgoing(j)), comp(b).eps_of(CircleRef::incoming(j))) {
            let sign = -ea * eb;
            adjacency[a].push((b, sign));
            adjacency[b].push((a, sign));
        }
    }
    let mut components = Vec::new();
    for class in uf.classes() {
        let mut orientable = class.iter().all(|&i| comp(i).orientable);
        let mut flip = vec![0i8; total];
        if orientable {
            flip[class[0]] = 1;
            let mut queue = VecDeque::from([class[0]]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &(v, sign) in &adjacency[u] {
                    let want = sign * flip[u];
                    if flip[v] == 0 {
                        flip[v] = want;
                        queue.push_back(v);
                    } else if flip[v] != want {
                        orientable = false;
                        break 'bfs;
                    }
                }
            }
        }
        let chi: i64 = class.iter().map(|&i| comp(i).chi).sum();
        let mut boundary = Vec::new();
        for &i in &class {
            let c = comp(i);
            let keep = if i < p { Side::In } else { Side::Out };
            for (r, e) in c.boundary_with_eps() {
                if r.side == keep {
                    boundary.push((r, if orientable { e * flip[i] } else { 1 }));
                }
            }
        }
        components.push(SurfaceComponent::build(orientable, chi, boundary)?);
    }
    Ok(SurfaceCobordism::from_parts(w.src.clone(), w2.tgt.clone(), components))
}

/// `χ(W) − χ(M₀)`; circles have Euler characteristic zero.
pub fn euler_tqft(w: &SurfaceCobordism) -> i64 {
    w.chi()
}

/// Boundary reparametrization of the incoming circles: circle `p` moves to
/// position `perm[p]`, and is reflected when `reflect[p]` is set.
pub fn act_boundary(w: &SurfaceCobordism, perm: &[usize], reflect: &[bool]) -> Result<SurfaceCobordism, Cob2Error> {
    let m = w.src.len();
    if perm.len() != m || reflect.len() != m {
        return Err(Cob2Error::InterfaceMismatch { left: perm.len(), right: m });
    }
    let mut seen = vec![false; m];
    for &q in perm {
        if q >= m || std::mem::replace(&mut seen[q], true) {
            return Err(Cob2Error::Invalid("not a permutation of the incoming circles".into()));
        }
    }
    let map = |c: CircleRef| match c.side {
        Side::In => CircleRef::incoming(perm[c.pos]),
        Side::Out => c,
    };
    let flip = |c: CircleRef| c.side == Side::In && reflect[c.pos];
    let comps = w.components.iter().map(|c| c.relabeled(map, flip)).collect();
    let mut src = vec![String::new(); m];
    for (p, id) in w.src.iter().enumerate() {
        src[perm[p]] = id.clone();
    }
    Ok(SurfaceCobordism::from_parts(src, w.tgt.clone(), comps))
}

/// A zig-zag `src → X ← tgt` of morphisms whose components all reach the outgoing
/// boundary, showing both ends of `w` lie in one path component of the `k = 0`
/// subcategory. Components of `w` without outgoing boundary are replaced by
/// cylinders on their incoming circles, matched on the other leg by discs.
pub fn connectivity_zigzag(w: &SurfaceCobordism) -> (SurfaceCobordism, SurfaceCobordism) {
    let n = w.tgt.len();
    let stranded: Vec<usize> = w
        .components
        .iter()
        .filter(|c| c.out_circles().next().is_none())
        .flat_map(|c| c.in_circles().collect::<Vec<_>>())
        .collect();
    let extra = stranded.len();
    let mut forward = Vec::new();
    for c in &w.components {
        if c.out_circles().next().is_some() {
            forward.push(c.clone());
        }
    }
    for (k, &p) in stranded.iter().enumerate() {
        forward.push(
            SurfaceComponent::orientable(0, &[(CircleRef::incoming(p), 1), (CircleRef::outgoing(n + k), -1)]).unwrap(),
        );
    }
    let mut tgt_ids = w.tgt.clone();
    tgt_ids.extend((0..extra).map(|k| format!("x{k}")));
    let mut backward: Vec<SurfaceComponent> = (0..n)
        .map(|i| SurfaceComponent::orientable(0, &[(CircleRef::incoming(i), 1), (CircleRef::outgoing(i), -1)]).unwrap())
        .collect();
    for k in 0..extra {
        backward.push(SurfaceComponent::orientable(0, &[(CircleRef::outgoing(n + k), 1)]).unwrap());
    }
    (
        SurfaceCobordism::from_parts(w.src.clone(), tgt_ids.clone(), forward),
        SurfaceCobordism::from_parts(w.tgt.clone(), tgt_ids, backward),
    )
}

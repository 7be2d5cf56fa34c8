use cobcat::cob1::{Matching1D, PlanarDiagram, RestrictedMorphism, Slice};
use cobcat::cob2::{CircleRef, ConnectedSurface, SurfaceCobordism, SurfaceComponent};
use cobcat::exactmath::{Field, FieldMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random valid slice word from `m` strands with at most `len` events. Caps are
/// favoured once many strands are open so words do not grow too wide.
pub fn diagram<R: Rng>(rng: &mut R, m: usize, len: usize) -> PlanarDiagram {
    let mut r = m;
    let mut slices = Vec::with_capacity(len);
    for _ in 0..len {
        let cap = r >= 2 && rng.gen_bool(if r > 6 { 0.75 } else { 0.45 });
        if cap {
            slices.push(Slice::Cap(rng.gen_range(0..r - 1)));
            r -= 2;
        } else {
            slices.push(Slice::Cup(rng.gen_range(0..=r)));
            r += 2;
        }
    }
    PlanarDiagram::new(m, slices).expect("generated word is valid")
}

/// All valid words from `m` strands with length at most `max_len` whose strand
/// count never exceeds `max_width`.
pub fn all_diagrams(m: usize, max_len: usize, max_width: usize) -> Vec<PlanarDiagram> {
    fn go(m: usize, r: usize, word: &mut Vec<Slice>, max_len: usize, max_width: usize, out: &mut Vec<PlanarDiagram>) {
        out.push(PlanarDiagram::new(m, word.clone()).unwrap());
        if word.len() == max_len {
            return;
        }
        if r + 2 <= max_width {
            for i in 0..=r {
                word.push(Slice::Cup(i));
                go(m, r + 2, word, max_len, max_width, out);
                word.pop();
            }
        }
        for i in 0..r.saturating_sub(1) {
            word.push(Slice::Cap(i));
            go(m, r - 2, word, max_len, max_width, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), max_len, max_width, &mut out);
    out
}

/// A uniformly shuffled perfect matching on `m + n` points plus some circles.
pub fn matching<R: Rng>(rng: &mut R, m: usize, n: usize, max_circles: usize) -> Matching1D {
    assert_eq!((m + n) % 2, 0);
    let mut points: Vec<usize> = (0..m + n).collect();
    points.shuffle(rng);
    let pairs: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
    Matching1D::new(m, n, &pairs, rng.gen_range(0..=max_circles)).unwrap()
}

/// A random cobordism `m → n` with every piece of Euler characteristic at least
/// `−max_abs_chi`, plus possibly some closed pieces.
pub fn surface<R: Rng>(rng: &mut R, m: usize, n: usize, max_abs_chi: i64, max_closed: usize) -> SurfaceCobordism {
    let circles: Vec<CircleRef> = (0..m).map(CircleRef::incoming).chain((0..n).map(CircleRef::outgoing)).collect();
    let slots = rng.gen_range(1..=circles.len().max(1));
    let mut groups: Vec<Vec<CircleRef>> = vec![Vec::new(); slots];
    for &c in &circles {
        groups[rng.gen_range(0..slots)].push(c);
    }
    groups.retain(|g| !g.is_empty());
    for _ in 0..rng.gen_range(0..=max_closed) {
        groups.push(Vec::new());
    }
    let comps = groups.into_iter().map(|g| piece(rng, &g, max_abs_chi)).collect();
    SurfaceCobordism::new(cobcat::cob2::default_ids(m), cobcat::cob2::default_ids(n), comps).unwrap()
}

fn piece<R: Rng>(rng: &mut R, circles: &[CircleRef], max_abs_chi: i64) -> SurfaceComponent {
    let b = circles.len() as i64;
    let room = (2 - b + max_abs_chi).max(0);
    if room >= 1 && rng.gen_bool(0.4) {
        let h = rng.gen_range(1..=room) as u64;
        SurfaceComponent::non_orientable(h, circles).unwrap()
    } else {
        let g = rng.gen_range(0..=room / 2) as u64;
        let boundary: Vec<(CircleRef, i8)> =
            circles.iter().map(|&c| (c, if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
        SurfaceComponent::orientable(g, &boundary).unwrap()
    }
}

/// A morphism whose every piece reaches the outgoing boundary.
pub fn connected_surface<R: Rng>(rng: &mut R, m: usize, n: usize, max_abs_chi: i64) -> SurfaceCobordism {
    assert!(n > 0 || m == 0);
    loop {
        let w = surface(rng, m, n, max_abs_chi, 0);
        if w.is_k_connected(0).unwrap() {
            return w;
        }
    }
}

pub fn connected_closed<R: Rng>(rng: &mut R, max_abs_chi: i64) -> ConnectedSurface {
    let all = ConnectedSurface::all_with_chi_at_least(-max_abs_chi);
    all[rng.gen_range(0..all.len())]
}

/// A random injection `m ↪ n` with the remaining points paired up; needs `n - m` even.
pub fn restricted<R: Rng>(rng: &mut R, m: usize, n: usize) -> RestrictedMorphism {
    assert!(n >= m && (n - m) % 2 == 0);
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let injection = points[..m].to_vec();
    let pairs: Vec<(usize, usize)> = points[m..].chunks(2).map(|c| (c[0], c[1])).collect();
    RestrictedMorphism::new(n, injection, &pairs).unwrap()
}

/// A random symmetric matrix with small integer entries, reduced into `field`.
pub fn symmetric<R: Rng>(rng: &mut R, field: Field, dim: usize) -> FieldMatrix {
    let mut rows = vec![vec![0i64; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let x = rng.gen_range(-2..=2);
            rows[i][j] = x;
            rows[j][i] = x;
        }
    }
    FieldMatrix::from_i64_rows(field, &rows)
}

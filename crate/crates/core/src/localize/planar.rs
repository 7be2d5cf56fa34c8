use num_bigint::BigInt;

use crate::cob1::{commute_events, PlanarDiagram, Slice};
use crate::exactmath::{AbelianInvariants, AbelianQuotient, Letter, Word};
use crate::nerve::{EdgePathGroup, TwoComplex};

/// Presented groupoid of planar 1-dimensional cobordisms truncated at
/// `max_strands`: vertices are strand counts, edges single cup or cap slices, and
/// 2-cells the zig-zag and interchange relations among them.
#[derive(Clone, Debug)]
pub struct PlanarCob1Localization {
    pub max_strands: usize,
    pub complex: TwoComplex,
    pub slices: Vec<(usize, Slice)>,
    pub group: EdgePathGroup,
    pub components: Vec<Vec<usize>>,
    pub invariants: AbelianInvariants,
    /// Abelianized class of the circle `cap₀ ∘ cup₀` at the empty object.
    pub circle_class: Vec<BigInt>,
    /// Value of the region-coloring invariant on each presentation generator.
    pub f_on_generators: Vec<i64>,
}

impl PlanarCob1Localization {
    /// The loop at `∅` traced by a diagram starting and ending at the empty object.
    pub fn loop_of_diagram(&self, w: &PlanarDiagram) -> Option<Word> {
        if w.m() != 0 || w.n() != 0 {
            return None;
        }
        let counts = w.strand_counts();
        let mut word = Vec::new();
        for (k, s) in w.slices().iter().enumerate() {
            let e = self.slices.iter().position(|&(n, t)| n == counts[k] && t == *s)?;
            let l = self.group.loop_of_edge(&self.complex, e)?;
            word = [l, word].concat();
        }
        Some(word)
    }
}

fn events_at(n: usize) -> Vec<Slice> {
    let mut out: Vec<Slice> = (0..=n).map(Slice::Cup).collect();
    out.extend((0..n.saturating_sub(1)).map(Slice::Cap));
    out
}

fn after(n: usize, s: Slice) -> usize {
    match s {
        Slice::Cup(_) => n + 2,
        Slice::Cap(_) => n - 2,
    }
}

pub fn planar_cob1_localization(max_strands: usize) -> PlanarCob1Localization {
    let mut slices: Vec<(usize, Slice)> = Vec::new();
    for n in 0..=max_strands {
        for s in events_at(n) {
            if after(n, s) <= max_strands {
                slices.push((n, s));
            }
        }
    }
    let edge = |n: usize, s: Slice| slices.iter().position(|&(m, t)| m == n && t == s);
    let edges: Vec<(usize, usize)> = slices.iter().map(|&(n, s)| (n, after(n, s))).collect();
    let edge_names: Vec<String> = slices.iter().map(|&(n, s)| format!("{s}@{n}")).collect();
    let path = |n: usize, word: &[Slice]| -> Option<Word> {
        let mut out = Vec::new();
        let mut r = n;
        for &s in word {
            let e = edge(r, s)?;
            out.insert(0, Letter::new(e));
            r = after(r, s);
        }
        Some(out)
    };
    let mut cells: Vec<Word> = Vec::new();
    let mut relate = |lhs: Option<Word>, rhs: Option<Word>| {
        if let (Some(l), Some(r)) = (lhs, rhs) {
            let mut w = l;
            w.extend(crate::exactmath::inverse_word(&r));
            cells.push(w);
        }
    };
    for n in 0..=max_strands {
        for i in 0..n {
            relate(path(n, &[Slice::Cup(i), Slice::Cap(i + 1)]), Some(Vec::new()));
            relate(path(n, &[Slice::Cup(i + 1), Slice::Cap(i)]), Some(Vec::new()));
        }
        for e1 in events_at(n) {
            let n1 = after(n, e1);
            if n1 > max_strands {
                continue;
            }
            for e2 in events_at(n1) {
                let d = PlanarDiagram::new(n, vec![e1, e2]).expect("valid pair");
                if let Some(swapped) = commute_events(&d, 0) {
                    relate(path(n, &[e1, e2]), path(n, swapped.slices()));
                }
                if let (Slice::Cap(i), Slice::Cup(j)) = (e1, e2) {
                    if i == j {
                        relate(path(n, &[e1, e2]), path(n, &[Slice::Cup(i), Slice::Cap(i + 2)]));
                        relate(path(n, &[e1, e2]), path(n, &[Slice::Cup(i + 2), Slice::Cap(i)]));
                    }
                }
            }
        }
    }
    let complex = TwoComplex { vertices: max_strands + 1, edges, edge_names, cells };
    let group = complex.fundamental_group(0);
    let components = complex.components();
    let quotient = AbelianQuotient::new(&group.presentation.exponent_matrix());
    let invariants = quotient.invariants().clone();
    let edge_f: Vec<i64> =
        slices.iter().map(|&(n, s)| PlanarDiagram::new(n, vec![s]).expect("valid slice").f_invariant()).collect();
    let potential = |v: usize| -> i64 {
        group.paths.path_from_base(v).iter().map(|l| if l.inverse { -edge_f[l.generator] } else { edge_f[l.generator] }).sum()
    };
    let mut f_on_generators = vec![0i64; group.presentation.generators().len()];
    for (e, g) in group.generator_of_edge.iter().enumerate() {
        if let Some(g) = *g {
            let (s, t) = complex.edges[e];
            f_on_generators[g] = edge_f[e] + potential(s) - potential(t);
        }
    }
    let mut model = PlanarCob1Localization {
        max_strands,
        complex,
        slices,
        group,
        components,
        invariants,
        circle_class: Vec::new(),
        f_on_generators,
    };
    if let Some(w) = model.loop_of_diagram(&PlanarDiagram::circle()) {
        model.circle_class = quotient.class_of(&model.group.presentation.exponent_vector(&w));
    }
    model
}

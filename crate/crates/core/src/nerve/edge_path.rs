use std::collections::VecDeque;

use crate::exactmath::{GroupPresentation, Letter, UnionFind, Word};

/// A 2-dimensional cell complex given by its 1-skeleton and attaching words.
///
/// Edges are directed `(src, tgt)` pairs; each 2-cell is a word over edge indices
/// in composition order (`x y` means `x ∘ y`, so `y` is traversed first).
#[derive(Clone, Debug, Default)]
pub struct TwoComplex {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub edge_names: Vec<String>,
    pub cells: Vec<Word>,
}

/// Spanning forest of a [`TwoComplex`] with a base point per component.
#[derive(Clone, Debug)]
pub struct EdgePathData {
    /// Edges of the forest, in discovery order.
    pub forest: Vec<usize>,
    /// Component label of each vertex.
    pub component: Vec<usize>,
    /// Base point of each component.
    pub basepoints: Vec<usize>,
    /// For each vertex, the forest edge through which it was reached and whether
    /// it was traversed forwards; `None` at base points.
    parent: Vec<Option<(usize, bool)>>,
    parent_vertex: Vec<usize>,
}

impl EdgePathData {
    /// Breadth-first spanning forest; `preferred` seeds its own component first,
    /// other components start at their least vertex. Edges are scanned in index order.
    pub fn build(vertices: usize, edges: &[(usize, usize)], preferred: Option<usize>) -> Self {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices];
        for (e, &(s, t)) in edges.iter().enumerate() {
            incident[s].push(e);
            if t != s {
                incident[t].push(e);
            }
        }
        let mut component = vec![usize::MAX; vertices];
        let mut parent = vec![None; vertices];
        let mut parent_vertex = vec![usize::MAX; vertices];
        let mut forest = Vec::new();
        let mut basepoints = Vec::new();
        let order = preferred.into_iter().chain(0..vertices);
        for root in order {
            if component[root] != usize::MAX {
                continue;
            }
            let label = basepoints.len();
            basepoints.push(root);
            component[root] = label;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    let (s, t) = edges[e];
                    let (w, forward) = if s == v { (t, true) } else { (s, false) };
                    if component[w] == usize::MAX {
                        component[w] = label;
                        parent[w] = Some((e, forward));
                        parent_vertex[w] = v;
                        forest.push(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        Self { forest, component, basepoints, parent, parent_vertex }
    }

    pub fn basepoint_of(&self, v: usize) -> usize {
        self.basepoints[self.component[v]]
    }

    pub fn is_forest_edge(&self, e: usize) -> bool {
        self.forest.contains(&e)
    }

    /// The forest path from the base point of `v`'s component to `v`, as a word in
    /// composition order over edge indices.
    pub fn path_from_base(&self, v: usize) -> Word {
        let mut word = Vec::new();
        let mut cur = v;
        while let Some((e, forward)) = self.parent[cur] {
            word.push(Letter { generator: e, inverse: !forward });
            cur = self.parent_vertex[cur];
        }
        word
    }
}

/// Result of reading off π₁ of a [`TwoComplex`] at a base point.
#[derive(Clone, Debug)]
pub struct EdgePathGroup {
    pub presentation: GroupPresentation,
    pub paths: EdgePathData,
    /// Generator index of each edge in the presentation, `None` outside the component.
    pub generator_of_edge: Vec<Option<usize>>,
    pub base: usize,
}

impl EdgePathGroup {
    /// The loop at the base point running out along the forest to the source of
    /// edge `e`, across `e`, and back. Words are over presentation generators.
    pub fn loop_of_edge(&self, complex: &TwoComplex, e: usize) -> Option<Word> {
        let g = self.generator_of_edge[e]?;
        let (s, t) = complex.edges[e];
        let to_src = self.translate(&self.paths.path_from_base(s))?;
        let to_tgt = self.translate(&self.paths.path_from_base(t))?;
        let mut w = crate::exactmath::inverse_word(&to_tgt);
        w.push(Letter::new(g));
        w.extend(to_src);
        Some(w)
    }

    fn translate(&self, w: &[Letter]) -> Option<Word> {
        w.iter()
            .map(|l| self.generator_of_edge[l.generator].map(|g| Letter { generator: g, inverse: l.inverse }))
            .collect()
    }
}

impl TwoComplex {
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices);
        for &(s, t) in &self.edges {
            uf.union(s, t);
        }
        uf.classes()
    }

    /// Edge-path presentation of π₁ at `base`: one generator per edge of the base
    /// component, one relator per forest edge and one per 2-cell in the component.
    pub fn fundamental_group(&self, base: usize) -> EdgePathGroup {
        let paths = EdgePathData::build(self.vertices, &self.edges, Some(base));
        let comp = paths.component[base];
        let mut generator_of_edge = vec![None; self.edges.len()];
        let mut names = Vec::new();
        for (e, &(s, _)) in self.edges.iter().enumerate() {
            if paths.component[s] == comp {
                generator_of_edge[e] = Some(names.len());
                names.push(self.edge_names[e].clone());
            }
        }
        let mut relators: Vec<Word> = Vec::new();
        for &e in &paths.forest {
            if let Some(g) = generator_of_edge[e] {
                relators.push(vec![Letter::new(g)]);
            }
        }
        for cell in &self.cells {
            let translated: Option<Word> = cell
                .iter()
                .map(|l| generator_of_edge[l.generator].map(|g| Letter { generator: g, inverse: l.inverse }))
                .collect();
            if let Some(w) = translated {
                relators.push(w);
            }
        }
        let presentation = GroupPresentation::new(names, relators).expect("letters index known generators");
        EdgePathGroup { presentation, paths, generator_of_edge, base }
    }
}

use petgraph::unionfind::UnionFind as Forest;

/// Disjoint-set forest over `0..n` with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    forest: Forest<usize>,
    len: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { forest: Forest::new(n), len: n }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn find(&mut self, x: usize) -> usize {
        self.forest.find_mut(x)
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        self.forest.union(a, b)
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Dense class labels `0..k`, numbered by first occurrence.
    pub fn labels(&mut self) -> Vec<usize> {
        let mut label_of_root = vec![usize::MAX; self.len];
        let mut next = 0;
        (0..self.len)
            .map(|x| {
                let r = self.find(x);
                if label_of_root[r] == usize::MAX {
                    label_of_root[r] = next;
                    next += 1;
                }
                label_of_root[r]
            })
            .collect()
    }

    /// Classes as sorted member lists, ordered by least member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let labels = self.labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (x, l) in labels.into_iter().enumerate() {
            out[l].push(x);
        }
        out
    }
}

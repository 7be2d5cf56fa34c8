use std::collections::VecDeque;

use cobcat::cob1::{PlanarDiagram, Slice};

/// Pixel picture of a planar diagram. Row 0 is the `−∞` side; strand `j` of a
/// slab sits on row `2j + 1`. Every event or strand shift gets its own column
/// followed by a blank spacer column.
pub struct Raster {
    pub width: usize,
    pub height: usize,
    curve: Vec<bool>,
}

impl Raster {
    pub fn draw(w: &PlanarDiagram) -> Raster {
        let max_r = *w.strand_counts().iter().max().unwrap();
        let height = 2 * max_r + 3;
        let mut columns: Vec<Vec<bool>> = Vec::new();
        let mut rows: Vec<usize> = (0..w.m()).map(|j| 2 * j + 1).collect();
        let plain = |rows: &[usize]| {
            let mut col = vec![false; height];
            for &r in rows {
                col[r] = true;
            }
            col
        };
        let with_segment = |rows: &[usize], lo: usize, hi: usize| {
            let mut col = plain(rows);
            for c in col.iter_mut().take(hi + 1).skip(lo) {
                *c = true;
            }
            col
        };
        columns.push(plain(&rows));
        columns.push(plain(&rows));
        for s in w.slices() {
            match *s {
                Slice::Cup(i) => {
                    for j in (i..rows.len()).rev() {
                        columns.push(with_segment(&rows, rows[j], rows[j] + 4));
                        rows[j] += 4;
                        columns.push(plain(&rows));
                    }
                    rows.splice(i..i, [2 * i + 1, 2 * i + 3]);
                    columns.push(with_segment(&rows, 2 * i + 1, 2 * i + 3));
                    columns.push(plain(&rows));
                }
                Slice::Cap(i) => {
                    columns.push(with_segment(&rows, rows[i], rows[i + 1]));
                    rows.drain(i..i + 2);
                    columns.push(plain(&rows));
                    for j in i..rows.len() {
                        columns.push(with_segment(&rows, rows[j] - 4, rows[j]));
                        rows[j] -= 4;
                        columns.push(plain(&rows));
                    }
                }
            }
            debug_assert!(rows.iter().enumerate().all(|(j, &r)| r == 2 * j + 1));
        }
        columns.push(plain(&rows));
        let width = columns.len();
        let mut curve = vec![false; width * height];
        for (x, col) in columns.iter().enumerate() {
            for (y, &c) in col.iter().enumerate() {
                curve[y * width + x] = c;
            }
        }
        Raster { width, height, curve }
    }

    fn idx(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    fn neighbors4(&self, x: usize, y: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (w, h) = (self.width as isize, self.height as isize);
        [(-1, 0), (1, 0), (0, -1), (0, 1)].into_iter().filter_map(move |(dx, dy)| {
            let (nx, ny) = (x as isize + dx, y as isize + dy);
            (nx >= 0 && ny >= 0 && nx < w && ny < h).then_some((nx as usize, ny as usize))
        })
    }

    fn neighbors8(&self, x: usize, y: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (w, h) = (self.width as isize, self.height as isize);
        (-1..=1)
            .flat_map(|dx| (-1..=1).map(move |dy| (dx, dy)))
            .filter(|&(dx, dy)| (dx, dy) != (0, 0))
            .filter_map(move |(dx, dy)| {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                (nx >= 0 && ny >= 0 && nx < w && ny < h).then_some((nx as usize, ny as usize))
            })
    }

    /// Labels 4-connected regions of the complement of the curves.
    fn regions(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.width * self.height];
        let mut count = 0;
        for y in 0..self.height {
            for x in 0..self.width {
                let i = self.idx(x, y);
                if self.curve[i] || label[i] != usize::MAX {
                    continue;
                }
                label[i] = count;
                let mut queue = VecDeque::from([(x, y)]);
                while let Some((cx, cy)) = queue.pop_front() {
                    for (nx, ny) in self.neighbors4(cx, cy) {
                        let j = self.idx(nx, ny);
                        if !self.curve[j] && label[j] == usize::MAX {
                            label[j] = count;
                            queue.push_back((nx, ny));
                        }
                    }
                }
                count += 1;
            }
        }
        (label, count)
    }

    /// Colors regions by crossing parity, starting from the bottom region as green.
    fn colors(&self, label: &[usize], count: usize) -> Vec<bool> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); count];
        for y in 0..self.height {
            for x in 0..self.width {
                if !self.curve[self.idx(x, y)] {
                    continue;
                }
                let pairs = [
                    (x.checked_sub(1).map(|a| (a, y)), (x + 1 < self.width).then(|| (x + 1, y))),
                    (y.checked_sub(1).map(|b| (x, b)), (y + 1 < self.height).then(|| (x, y + 1))),
                ];
                for (a, b) in pairs {
                    if let (Some(a), Some(b)) = (a, b) {
                        let (ia, ib) = (self.idx(a.0, a.1), self.idx(b.0, b.1));
                        if !self.curve[ia] && !self.curve[ib] {
                            adj[label[ia]].push(label[ib]);
                            adj[label[ib]].push(label[ia]);
                        }
                    }
                }
            }
        }
        let mut red: Vec<Option<bool>> = vec![None; count];
        let start = label[self.idx(0, 0)];
        red[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(r) = queue.pop_front() {
            let c = red[r].unwrap();
            for &s in &adj[r] {
                match red[s] {
                    None => {
                        red[s] = Some(!c);
                        queue.push_back(s);
                    }
                    Some(d) => assert_ne!(c, d, "inconsistent two-coloring"),
                }
            }
        }
        red.into_iter().map(|c| c.expect("every region is reachable")).collect()
    }

    /// Bounded 8-connected components of the complement of region `r`.
    fn holes(&self, label: &[usize], r: usize) -> usize {
        let outside = |i: usize| self.curve[i] || label[i] != r;
        let mut seen = vec![false; self.width * self.height];
        let mut holes = 0;
        for y in 0..self.height {
            for x in 0..self.width {
                let i = self.idx(x, y);
                if !outside(i) || seen[i] {
                    continue;
                }
                seen[i] = true;
                let mut touches_border = false;
                let mut queue = VecDeque::from([(x, y)]);
                while let Some((cx, cy)) = queue.pop_front() {
                    if cx == 0 || cy == 0 || cx + 1 == self.width || cy + 1 == self.height {
                        touches_border = true;
                    }
                    for (nx, ny) in self.neighbors8(cx, cy) {
                        let j = self.idx(nx, ny);
                        if outside(j) && !seen[j] {
                            seen[j] = true;
                            queue.push_back((nx, ny));
                        }
                    }
                }
                if !touches_border {
                    holes += 1;
                }
            }
        }
        holes
    }

    /// `χ(red) − χ(red ∩ left edge)` read off the picture.
    pub fn f_value(&self) -> i64 {
        let (label, count) = self.regions();
        let red = self.colors(&label, count);
        let mut chi = 0i64;
        for r in (0..count).filter(|&r| red[r]) {
            chi += 1 - self.holes(&label, r) as i64;
        }
        let mut runs = 0i64;
        let mut inside = false;
        for y in 0..self.height {
            let i = self.idx(0, y);
            let now = !self.curve[i] && red[label[i]];
            if now && !inside {
                runs += 1;
            }
            inside = now;
        }
        chi - runs
    }
}

pub fn raster_f(w: &PlanarDiagram) -> i64 {
    Raster::draw(w).f_value()
}

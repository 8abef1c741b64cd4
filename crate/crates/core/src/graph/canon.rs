//! Canonical forms for small multigraphs up to isomorphism.

use super::MultiGraph;

/// A key equal for two graphs exactly when they are isomorphic (edge ids ignored).
///
/// Vertices are first split by iterated colour refinement; the key is the
/// lexicographically least column-major upper triangle of the multiplicity
/// matrix over all orderings that respect the colour classes.
pub fn canonical_key(g: &MultiGraph) -> Vec<u32> {
    let n = g.n();
    let mut mult = vec![vec![0u32; n]; n];
    for e in g.edges() {
        if e.is_loop() {
            mult[e.u][e.u] += 1;
        } else {
            mult[e.u][e.v] += 1;
            mult[e.v][e.u] += 1;
        }
    }
    let colors = refine(&mult);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| colors[x]);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &x in &order {
        match cells.last_mut() {
            Some(c) if colors[c[0]] == colors[x] => c.push(x),
            _ => cells.push(vec![x]),
        }
    }
    let slots: Vec<usize> = cells
        .iter()
        .enumerate()
        .flat_map(|(i, c)| std::iter::repeat_n(i, c.len()))
        .collect();
    let mut st = Canon {
        mult: &mult,
        cells,
        slots,
        placed: Vec::with_capacity(n),
        key: Vec::new(),
        best: None,
    };
    st.extend();
    let mut out = vec![n as u32];
    out.extend(st.best.unwrap_or_default());
    out
}

/// Own color, loop count, degree, and the sorted neighbour colors with multiplicities.
type Signature = (usize, u32, u32, Vec<(usize, u32)>);

fn refine(mult: &[Vec<u32>]) -> Vec<usize> {
    let n = mult.len();
    let mut colors: Vec<usize> = vec![0; n];
    let mut classes = 0;
    let mut first = true;
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|x| {
                let mut nb: Vec<(usize, u32)> = (0..n)
                    .filter(|&y| y != x && mult[x][y] > 0)
                    .map(|y| (colors[y], mult[x][y]))
                    .collect();
                nb.sort();
                let deg: u32 = (0..n).filter(|&y| y != x).map(|y| mult[x][y]).sum();
                (colors[x], mult[x][x], deg, nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        if !first && distinct.len() == classes {
            return next;
        }
        first = false;
        classes = distinct.len();
        colors = next;
    }
}

struct Canon<'a> {
    mult: &'a [Vec<u32>],
    cells: Vec<Vec<usize>>,
    slots: Vec<usize>,
    placed: Vec<usize>,
    key: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl Canon<'_> {
    fn extend(&mut self) {
        let j = self.placed.len();
        if j == self.slots.len() {
            if self.best.as_ref().is_none_or(|b| self.key < *b) {
                self.best = Some(self.key.clone());
            }
            return;
        }
        let cell = self.slots[j];
        for k in 0..self.cells[cell].len() {
            let x = self.cells[cell][k];
            if self.placed.contains(&x) {
                continue;
            }
            let before = self.key.len();
            for &p in &self.placed {
                self.key.push(self.mult[p][x]);
            }
            self.key.push(self.mult[x][x]);
            let prune = self
                .best
                .as_ref()
                .is_some_and(|b| self.key[..] > b[..self.key.len()]);
            if !prune {
                self.placed.push(x);
                self.extend();
                self.placed.pop();
            }
            self.key.truncate(before);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_relabellings_share_a_key() {
        let a = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 1)]).unwrap();
        let b = MultiGraph::from_edges(4, &[(2, 3), (3, 0), (0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let c = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)]).unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }

    #[test]
    fn loops_are_distinguished() {
        let a = MultiGraph::from_edges(2, &[(0, 1), (0, 0)]).unwrap();
        let b = MultiGraph::from_edges(2, &[(0, 1), (1, 1)]).unwrap();
        let c = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }
}

//! Block decomposition.

use serde::{Deserialize, Serialize};

use super::{EdgeId, MultiGraph};

/// A maximal non-separable subgraph. Loops form their own one-vertex blocks
/// and an isolated vertex is a one-vertex block with no edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
}

impl Block {
    /// Trivial blocks have exactly one vertex.
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub n: usize,
    pub components: usize,
}

impl BlockDecomposition {
    pub fn nontrivial_count(&self) -> usize {
        self.blocks.iter().filter(|b| !b.is_trivial()).count()
    }

    /// `(n, c, b)`: vertices, components, nontrivial blocks.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.n, self.components, self.nontrivial_count())
    }
}

struct Search<'a> {
    g: &'a MultiGraph,
    adj: Vec<Vec<(usize, usize)>>,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
    blocks: Vec<Block>,
}

impl Search<'_> {
    fn visit(&mut self, x: usize, parent_edge: usize) {
        self.disc[x] = self.time;
        self.low[x] = self.time;
        self.time += 1;
        for k in 0..self.adj[x].len() {
            let (y, ei) = self.adj[x][k];
            if ei == parent_edge {
                continue;
            }
            if self.disc[y] == usize::MAX {
                self.stack.push(ei);
                self.visit(y, ei);
                self.low[x] = self.low[x].min(self.low[y]);
                if self.low[y] >= self.disc[x] {
                    self.emit(ei);
                }
            } else if self.disc[y] < self.disc[x] {
                self.stack.push(ei);
                self.low[x] = self.low[x].min(self.disc[y]);
            }
        }
    }

    fn emit(&mut self, until: usize) {
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        while let Some(ei) = self.stack.pop() {
            let e = self.g.edges[ei];
            edges.push(e.id);
            vertices.push(e.u);
            vertices.push(e.v);
            if ei == until {
                break;
            }
        }
        edges.sort();
        vertices.sort();
        vertices.dedup();
        self.blocks.push(Block { vertices, edges });
    }
}

impl MultiGraph {
    pub fn blocks(&self) -> BlockDecomposition {
        let mut s = Search {
            g: self,
            adj: self.adjacency(),
            disc: vec![usize::MAX; self.n],
            low: vec![0; self.n],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
        };
        for x in 0..self.n {
            if s.disc[x] == usize::MAX {
                s.visit(x, usize::MAX);
            }
        }
        let mut blocks = s.blocks;
        let mut touched = vec![false; self.n];
        for e in &self.edges {
            touched[e.u] = true;
            touched[e.v] = true;
            if e.is_loop() {
                blocks.push(Block {
                    vertices: vec![e.u],
                    edges: vec![e.id],
                });
            }
        }
        for (x, t) in touched.iter().enumerate() {
            if !t {
                blocks.push(Block {
                    vertices: vec![x],
                    edges: Vec::new(),
                });
            }
        }
        blocks.sort_by(|a, b| (&a.vertices, &a.edges).cmp(&(&b.vertices, &b.edges)));
        BlockDecomposition {
            blocks,
            n: self.n,
            components: self.components(),
        }
    }

    /// The block as a graph on its own vertices, keeping edge ids.
    pub fn block_subgraph(&self, b: &Block) -> MultiGraph {
        let index = |x: usize| b.vertices.binary_search(&x).expect("vertex of block");
        let mut h = MultiGraph::empty(b.vertices.len());
        for &id in &b.edges {
            let e = self.edge(id).expect("edge of block");
            h.add_edge_with_id(id, index(e.u), index(e.v)).expect("fresh id");
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_of_a_bowtie_with_pendant_loop_and_isolated_vertex() {
        let mut g = MultiGraph::cycle(3).glue(0, &MultiGraph::cycle(3), 0).unwrap();
        let x = g.add_vertex();
        g.add_edge(x, x).unwrap();
        g.add_vertex();
        let d = g.blocks();
        assert_eq!(d.counts(), (7, 3, 2));
        assert_eq!(d.blocks.len(), 4);
        assert_eq!(d.blocks.iter().filter(|b| b.is_trivial()).count(), 2);
    }

    #[test]
    fn parallel_edges_stay_in_one_block() {
        let g = MultiGraph::k2_multi(3);
        let d = g.blocks();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].edges.len(), 3);
        let p = MultiGraph::path(3);
        assert_eq!(p.blocks().nontrivial_count(), 3);
    }
}

//! Finite multigraphs with stable edge ids, minors, and block structure.

mod canon;
mod enumerate;
mod structure;

pub use canon::canonical_key;
pub use enumerate::{
    block_graphs, connected_multigraphs, enumerate_nonseparable, nonseparable_multigraphs, simple_graphs,
};
pub use structure::{Block, BlockDecomposition};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Stable identifier of an edge (or matroid element); survives deletion and contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Loop,
    Bridge,
    Normal,
}

/// Vertices `0..n`; edges kept sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn empty(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new() }
    }

    /// Edges get ids `0, 1, ...` in the order given.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = MultiGraph::empty(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.position(id).map(|i| &self.edges[i])
    }

    fn position(&self, id: EdgeId) -> Result<usize> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map_err(|_| Error::UnknownEdge(id.0))
    }

    pub fn next_id(&self) -> EdgeId {
        EdgeId(self.edges.last().map_or(0, |e| e.id.0 + 1))
    }

    /// Adds an edge with the next free id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<EdgeId> {
        let id = self.next_id();
        self.add_edge_with_id(id, u, v)?;
        Ok(id)
    }

    pub fn add_edge_with_id(&mut self, id: EdgeId, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        match self.edges.binary_search_by_key(&id, |e| e.id) {
            Ok(_) => Err(Error::DuplicateEdge(id.0)),
            Err(pos) => {
                self.edges.insert(pos, Edge { id, u, v });
                Ok(())
            }
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, x: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == x) as usize + (e.v == x) as usize)
            .sum()
    }

    pub fn loops(&self) -> Vec<EdgeId> {
        self.edges.iter().filter(|e| e.is_loop()).map(|e| e.id).collect()
    }

    pub fn is_loopless(&self) -> bool {
        self.edges.iter().all(|e| !e.is_loop())
    }

    /// Number of components of the spanning subgraph `(V, A)` and a component label per vertex.
    pub fn components_of(&self, a: &[EdgeId]) -> Result<(usize, Vec<usize>)> {
        let mut uf = UnionFind::new(self.n);
        for &id in a {
            let e = self.edge(id)?;
            uf.union(e.u, e.v);
        }
        Ok(uf.labels())
    }

    /// `k(A)`.
    pub fn k(&self, a: &[EdgeId]) -> Result<usize> {
        Ok(self.components_of(a)?.0)
    }

    /// Components of the whole graph.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// `|A| - |V| + k(A)`.
    pub fn cyclomatic(&self, a: &[EdgeId]) -> Result<usize> {
        Ok(a.len() + self.k(a)? - self.n)
    }

    pub fn rank(&self, a: &[EdgeId]) -> Result<usize> {
        Ok(self.n - self.k(a)?)
    }

    pub fn classify_edge(&self, id: EdgeId) -> Result<EdgeKind> {
        let e = self.edge(id)?;
        if e.is_loop() {
            return Ok(EdgeKind::Loop);
        }
        Ok(if self.bridges().contains(&id) {
            EdgeKind::Bridge
        } else {
            EdgeKind::Normal
        })
    }

    /// Bridges by lowpoint search, aware of parallel edges.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut out = BTreeSet::new();
        let mut time = 0;
        for s in 0..self.n {
            if disc[s] != usize::MAX {
                continue;
            }
            // Iterative DFS frames: (vertex, parent edge index, next adjacency slot).
            let mut stack: Vec<(usize, usize, usize)> = vec![(s, usize::MAX, 0)];
            disc[s] = time;
            low[s] = time;
            time += 1;
            while let Some(&mut (x, pe, ref mut slot)) = stack.last_mut() {
                if *slot < adj[x].len() {
                    let (y, ei) = adj[x][*slot];
                    *slot += 1;
                    if ei == pe {
                        continue;
                    }
                    if disc[y] == usize::MAX {
                        disc[y] = time;
                        low[y] = time;
                        time += 1;
                        stack.push((y, ei, 0));
                    } else {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[x]);
                        if low[x] > disc[p] {
                            out.insert(self.edges[pe].id);
                        }
                    }
                }
            }
        }
        out
    }

    /// Non-loop adjacency: `adj[x]` lists `(neighbour, edge index)`.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.u].push((e.v, i));
                adj[e.v].push((e.u, i));
            }
        }
        adj
    }

    pub fn delete(&self, id: EdgeId) -> Result<MultiGraph> {
        let pos = self.position(id)?;
        let mut g = self.clone();
        g.edges.remove(pos);
        Ok(g)
    }

    /// Identifies the endpoints onto the lower-numbered vertex and compacts labels.
    pub fn contract(&self, id: EdgeId) -> Result<MultiGraph> {
        let e = *self.edge(id)?;
        if e.is_loop() {
            return Err(Error::ContractLoop(id.0));
        }
        let keep = e.u.min(e.v);
        let gone = e.u.max(e.v);
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|f| f.id != id)
            .map(|f| Edge {
                id: f.id,
                u: relabel(f.u),
                v: relabel(f.v),
            })
            .collect();
        Ok(MultiGraph { n: self.n - 1, edges })
    }

    /// Matroid contraction: a loop is deleted instead.
    pub fn contract_or_delete(&self, id: EdgeId) -> Result<MultiGraph> {
        if self.edge(id)?.is_loop() {
            self.delete(id)
        } else {
            self.contract(id)
        }
    }

    /// The parallel pair with the lexicographically smallest ids.
    pub fn find_parallel_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let mut seen: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
        let mut best: Option<(EdgeId, EdgeId)> = None;
        for e in &self.edges {
            if e.is_loop() {
                continue;
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            match seen.get(&key) {
                Some(&first) => {
                    let cand = (first, e.id);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
                None => {
                    seen.insert(key, e.id);
                }
            }
        }
        best
    }

    /// A pair `(e1, e2)` with `e1` not a bridge and `e2` a bridge of `G - e1` but not of `G`.
    pub fn find_series_pair_wide(&self) -> Option<(EdgeId, EdgeId)> {
        let base = self.bridges();
        for e1 in &self.edges {
            if e1.is_loop() || base.contains(&e1.id) {
                continue;
            }
            let h = self.delete(e1.id).expect("edge exists");
            if let Some(&e2) = h.bridges().iter().find(|f| !base.contains(f)) {
                return Some((e1.id, e2));
            }
        }
        None
    }

    /// The simple graph with the same adjacencies; loops dropped, parallel classes merged.
    pub fn underlying_simple(&self) -> MultiGraph {
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for e in &self.edges {
            if !e.is_loop() {
                pairs.insert((e.u.min(e.v), e.u.max(e.v)));
            }
        }
        let pairs: Vec<_> = pairs.into_iter().collect();
        MultiGraph::from_edges(self.n, &pairs).expect("vertices in range")
    }

    pub fn is_simple(&self) -> bool {
        self.is_loopless() && self.find_parallel_pair().is_none()
    }

    /// At least three vertices, connected, and no cut vertex in the underlying simple graph.
    pub fn is_2connected(&self) -> bool {
        if self.n < 3 {
            return false;
        }
        let s = self.underlying_simple();
        let d = s.blocks();
        d.nontrivial_count() == 1 && d.blocks.iter().any(|b| b.vertices.len() == self.n)
    }

    /// Connected with a single block.
    pub fn is_nonseparable(&self) -> bool {
        self.is_connected() && self.blocks().blocks.len() == 1
    }

    /// The lowest-id edge `e` with both `G - e` and `G / e` 2-connected.
    pub fn splitting_edge(&self) -> Option<EdgeId> {
        self.edges.iter().map(|e| e.id).find(|&id| {
            let e = self.edge(id).expect("edge exists");
            !e.is_loop()
                && self.delete(id).expect("edge exists").is_2connected()
                && self.contract(id).expect("non-loop").is_2connected()
        })
    }

    /// Loopless, non-separable, and reducible to a single edge by parallel and series reductions.
    pub fn is_series_parallel(&self) -> bool {
        if !self.is_loopless() || !self.is_nonseparable() || self.m() == 0 {
            return false;
        }
        let mut g = self.clone();
        while g.m() > 1 {
            if let Some((_, b)) = g.find_parallel_pair() {
                g = g.delete(b).expect("edge exists");
                continue;
            }
            let Some(x) = (0..g.n).find(|&x| g.degree(x) == 2) else {
                return false;
            };
            let e = g.edges.iter().find(|e| e.u == x || e.v == x).expect("degree two").id;
            g = g.contract(e).expect("loopless");
        }
        true
    }

    /// Replaces every edge `uv` by two internally disjoint paths `u-x-v`, `u-y-v`.
    pub fn diamond_expand(&self) -> MultiGraph {
        let mut g = MultiGraph::empty(self.n + 2 * self.m());
        for (i, e) in self.edges.iter().enumerate() {
            let x = self.n + 2 * i;
            let y = x + 1;
            for (a, b) in [(e.u, x), (x, e.v), (e.u, y), (y, e.v)] {
                g.add_edge(a, b).expect("vertices in range");
            }
        }
        g
    }

    /// Every edge doubled; originals keep their ids.
    pub fn double_edges(&self) -> MultiGraph {
        let shift = self.next_id().0;
        let mut g = self.clone();
        for e in &self.edges {
            g.add_edge_with_id(EdgeId(e.id.0 + shift), e.u, e.v)
                .expect("fresh id");
        }
        g
    }

    /// Disjoint union; the second graph's vertices and ids are shifted.
    pub fn disjoint_union(&self, o: &MultiGraph) -> MultiGraph {
        let shift = self.next_id().0;
        let mut g = self.clone();
        g.n += o.n;
        for e in &o.edges {
            g.edges.push(Edge {
                id: EdgeId(e.id.0 + shift),
                u: e.u + self.n,
                v: e.v + self.n,
            });
        }
        g
    }

    /// Identifies vertex `a` of `self` with vertex `b` of `o` (a one-point join).
    pub fn glue(&self, a: usize, o: &MultiGraph, b: usize) -> Result<MultiGraph> {
        if a >= self.n {
            return Err(Error::VertexOutOfRange { vertex: a, n: self.n });
        }
        if b >= o.n {
            return Err(Error::VertexOutOfRange { vertex: b, n: o.n });
        }
        let shift = self.next_id().0;
        let mut g = self.clone();
        let map = |x: usize| match x.cmp(&b) {
            std::cmp::Ordering::Equal => a,
            std::cmp::Ordering::Less => self.n + x,
            std::cmp::Ordering::Greater => self.n + x - 1,
        };
        g.n += o.n - 1;
        for e in &o.edges {
            g.edges.push(Edge {
                id: EdgeId(e.id.0 + shift),
                u: map(e.u),
                v: map(e.v),
            });
        }
        Ok(g)
    }

    /// Renumbers edge ids to `0..m` in the current order.
    pub fn relabel_edges(&self) -> MultiGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| Edge { id: EdgeId(i), ..*e })
            .collect();
        MultiGraph { n: self.n, edges }
    }

    // Named families used across tests and suites.

    /// `m` parallel edges between two vertices.
    pub fn k2_multi(m: usize) -> MultiGraph {
        MultiGraph::from_edges(2, &vec![(0, 1); m]).expect("in range")
    }

    /// Cycle on `m` vertices; `m = 1` is a loop, `m = 2` a double edge.
    pub fn cycle(m: usize) -> MultiGraph {
        let pairs: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        MultiGraph::from_edges(m, &pairs).expect("in range")
    }

    pub fn path(m: usize) -> MultiGraph {
        let pairs: Vec<_> = (0..m).map(|i| (i, i + 1)).collect();
        MultiGraph::from_edges(m + 1, &pairs).expect("in range")
    }

    pub fn complete(n: usize) -> MultiGraph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        MultiGraph::from_edges(n, &pairs).expect("in range")
    }
}

/// Weights keyed by edge or element id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightAssignment(BTreeMap<EdgeId, Rational>);

impl WeightAssignment {
    pub fn new() -> Self {
        WeightAssignment(BTreeMap::new())
    }

    pub fn uniform(ids: impl IntoIterator<Item = EdgeId>, v: &Rational) -> Self {
        WeightAssignment(ids.into_iter().map(|id| (id, v.clone())).collect())
    }

    pub fn for_graph(g: &MultiGraph, v: &Rational) -> Self {
        Self::uniform(g.edge_ids(), v)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (EdgeId, Rational)>) -> Self {
        WeightAssignment(pairs.into_iter().collect())
    }

    pub fn get(&self, id: EdgeId) -> Result<&Rational> {
        self.0.get(&id).ok_or(Error::MissingWeight(id.0))
    }

    pub fn set(&mut self, id: EdgeId, v: Rational) {
        self.0.insert(id, v);
    }

    pub fn remove(&mut self, id: EdgeId) -> Option<Rational> {
        self.0.remove(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weights aligned with `ids`.
    pub fn aligned(&self, ids: &[EdgeId]) -> Result<Vec<Rational>> {
        ids.iter().map(|&id| self.get(id).cloned()).collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            count: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.count -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for (x, slot) in out.iter_mut().enumerate() {
            let r = self.find(x);
            if map[r] == usize::MAX {
                map[r] = next;
                next += 1;
            }
            *slot = map[r];
        }
        (next, out)
    }
}

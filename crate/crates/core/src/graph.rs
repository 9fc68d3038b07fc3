//! Simple undirected graphs on `0..n` with bitset adjacency, plus the named
//! generators: complete bipartite graphs, `G(n, a)` (complete bipartite minus
//! a maximal matching), perfect matchings, paths and cycles.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Bitset::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.adj[u] = Bitset::full(n);
            g.adj[u].remove(u);
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(
        n: usize,
        edges: I,
    ) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if u < self.n && v < self.n {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &Bitset {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n;
        self.m() == n * n.saturating_sub(1) / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_edge_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a.is_subset(b))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: self.adj.iter().map(Bitset::complement).collect(),
        };
        for v in 0..self.n {
            g.adj[v].remove(v);
        }
        g
    }

    /// Subgraph induced on `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].iter() {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Every vertex has degree exactly one, i.e. the graph is isomorphic to `M(n)`.
    pub fn is_perfect_matching(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 1)
    }
}

/// Ordered pair of disjoint vertex sets covering the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

impl Bipartition {
    pub fn new(mut left: Vec<Vertex>, mut right: Vec<Vertex>) -> Self {
        left.sort_unstable();
        right.sort_unstable();
        Bipartition { left, right }
    }

    pub fn n(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Side membership: `Some(true)` for left, `Some(false)` for right.
    pub fn side_map(&self, n: usize) -> Vec<Option<bool>> {
        let mut side = vec![None; n];
        for &v in &self.left {
            if v < n {
                side[v] = Some(true);
            }
        }
        for &v in &self.right {
            if v < n {
                side[v] = Some(false);
            }
        }
        side
    }

    /// Checks disjointness, coverage of `0..n` and that every edge crosses.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut seen = vec![false; n];
        for &v in self.left.iter().chain(&self.right) {
            if v >= n {
                return Err(Error::InvalidBipartition(format!(
                    "vertex {v} is not in the graph"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidBipartition(format!(
                    "vertex {v} is listed twice"
                )));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidBipartition(format!(
                "vertex {v} is on neither side"
            )));
        }
        let side = self.side_map(n);
        if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
            return Err(Error::InvalidBipartition(format!(
                "edge ({u}, {v}) does not cross"
            )));
        }
        Ok(())
    }
}

/// Named graph families with their canonical labellings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    CompleteBipartite(usize, usize),
    /// `K_{a, n-a}` minus the matching pairing left `i` with right `i`.
    Gna(usize, usize),
    Matching(usize),
    Path(usize),
    Cycle(usize),
}

pub fn complete_bipartite(a: usize, b: usize) -> (Graph, Bipartition) {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
    }
    (g, Bipartition::new((0..a).collect(), (a..a + b).collect()))
}

pub fn gna(n: usize, a: usize) -> Result<(Graph, Bipartition)> {
    if a > n {
        return Err(Error::SideTooLarge { n, a });
    }
    let (mut g, part) = complete_bipartite(a, n - a);
    for i in 0..a.min(n - a) {
        g.remove_edge(i, a + i);
    }
    Ok((g, part))
}

pub fn matching(n: usize) -> Result<Graph> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddMatching(n));
    }
    Graph::from_edges(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1)))
}

/// Natural bipartition of `M(n)`: even vertices left, odd vertices right.
pub fn matching_bipartition(n: usize) -> Bipartition {
    Bipartition::new((0..n).step_by(2).collect(), (1..n).step_by(2).collect())
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are in range")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::CycleTooSmall(n));
    }
    let mut g = path(n);
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

pub fn gen_graph(kind: GraphKind) -> Result<(Graph, Option<Bipartition>)> {
    Ok(match kind {
        GraphKind::CompleteBipartite(a, b) => {
            let (g, p) = complete_bipartite(a, b);
            (g, Some(p))
        }
        GraphKind::Gna(n, a) => {
            let (g, p) = gna(n, a)?;
            (g, Some(p))
        }
        GraphKind::Matching(n) => (matching(n)?, Some(matching_bipartition(n))),
        GraphKind::Path(n) => {
            let g = path(n);
            let p = find_bipartition(&g)?;
            (g, Some(p))
        }
        GraphKind::Cycle(n) => {
            let g = cycle(n)?;
            let p = find_bipartition(&g).ok();
            (g, p)
        }
    })
}

pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.n();
    let mut g = Graph::empty(shift + g2.n());
    for (u, v) in g1.edges() {
        g.add_edge(u, v).expect("in range");
    }
    for (u, v) in g2.edges() {
        g.add_edge(u + shift, v + shift).expect("in range");
    }
    g
}

/// Cross-partition non-edges of `g`, together with their maximum degree.
pub fn bipartite_complement(g: &Graph, part: &Bipartition) -> Result<(Graph, usize)> {
    part.validate(g)?;
    let mut h = Graph::empty(g.n());
    for &u in &part.left {
        for &v in &part.right {
            if !g.has_edge(u, v) {
                h.add_edge(u, v)?;
            }
        }
    }
    let delta = h.max_degree();
    Ok((h, delta))
}

/// BFS 2-colouring. Components are coloured with their least vertex on the
/// left; isolated vertices then go to whichever side is currently smaller.
pub fn find_bipartition(g: &Graph) -> Result<Bipartition> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut isolated = Vec::new();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        if g.degree(s) == 0 {
            isolated.push(s);
            continue;
        }
        side[s] = Some(true);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are coloured");
            for v in g.neighbors(u).iter() {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => return Err(Error::OddCycle(odd_cycle(&parent, u, v))),
                    Some(_) => {}
                }
            }
        }
    }
    let mut left: Vec<Vertex> = (0..n).filter(|&v| side[v] == Some(true)).collect();
    let mut right: Vec<Vertex> = (0..n).filter(|&v| side[v] == Some(false)).collect();
    for v in isolated {
        if left.len() <= right.len() {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    Ok(Bipartition::new(left, right))
}

/// Cycle closed by the same-side edge `(u, v)` in the BFS tree given by `parent`.
fn odd_cycle(parent: &[usize], u: Vertex, v: Vertex) -> Vec<Vertex> {
    let ancestors = |mut x: Vertex| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = ancestors(u);
    let pv = ancestors(v);
    let lca = *pu.iter().find(|x| pv.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<Vertex> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let tail: Vec<Vertex> = pv.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}

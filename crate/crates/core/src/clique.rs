//! Exact maximum clique by branch and bound over bitset candidate sets.
//!
//! Vertices are relabelled into a smallest-last (degeneracy) order. Each node
//! greedily colours its candidate set, and a vertex is only branched on while
//! `|C| + colour(v)` can still beat the incumbent. The root branches may run in
//! parallel, sharing the incumbent size through an atomic.
//!
//! Witnesses are reproducible: once the clique number `ω` is known, the
//! witness is the first `ω`-clique met by a sequential search whose bound
//! starts at `ω - 1`. It depends only on the graph, never on thread timing.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bitset::Bitset;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    pub size: usize,
    /// Sorted original vertex ids.
    pub vertices: Vec<Vertex>,
}

struct Relabelled {
    /// new index -> original vertex
    order: Vec<Vertex>,
    adj: Vec<Bitset>,
}

impl Relabelled {
    fn new(g: &Graph) -> Self {
        let order = degeneracy_order(g);
        let n = g.n();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| Bitset::from_iter_with_len(n, g.neighbors(v).iter().map(|u| pos[u])))
            .collect();
        Relabelled { order, adj }
    }

    fn n(&self) -> usize {
        self.order.len()
    }

    fn to_original(&self, clique: &[usize]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = clique.iter().map(|&i| self.order[i]).collect();
        out.sort_unstable();
        out
    }

    /// Greedy sequential colouring of `p`; returns `(vertex, colour)` for
    /// every vertex whose colour is at least `min_colour`, in colour order.
    fn colour(&self, p: &Bitset, min_colour: usize, out: &mut Vec<(usize, usize)>) {
        out.clear();
        let mut uncoloured = p.clone();
        let mut class = Bitset::new(p.capacity());
        let mut colour = 1;
        while !uncoloured.is_empty() {
            class.words_mut().copy_from_slice(uncoloured.words());
            while let Some(v) = class.first() {
                uncoloured.remove(v);
                class.remove(v);
                class.difference_with(&self.adj[v]);
                if colour >= min_colour {
                    out.push((v, colour));
                }
            }
            colour += 1;
        }
    }
}

/// Smallest-last order, reversed: the densest core comes first.
fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        seq.push(v);
        for u in g.neighbors(v).iter() {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    seq.reverse();
    seq
}

struct Search<'a> {
    graph: &'a Relabelled,
    current: Vec<usize>,
    best: Vec<usize>,
    /// Size any new incumbent must beat; may exceed `best.len()` when seeded.
    floor: usize,
    stop_at: usize,
    shared: Option<&'a AtomicUsize>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(
        graph: &'a Relabelled,
        floor: usize,
        stop_at: usize,
        shared: Option<&'a AtomicUsize>,
    ) -> Self {
        Search {
            graph,
            current: Vec::new(),
            best: Vec::new(),
            floor,
            stop_at,
            shared,
            nodes: 0,
        }
    }

    fn bound(&self) -> usize {
        let own = self.floor.max(self.best.len());
        match self.shared {
            Some(s) => own.max(s.load(Ordering::Relaxed)),
            None => own,
        }
    }

    fn record(&mut self) -> bool {
        if self.current.len() > self.bound() {
            self.best = self.current.clone();
            if let Some(s) = self.shared {
                s.fetch_max(self.best.len(), Ordering::Relaxed);
            }
        }
        self.best.len() >= self.stop_at
    }

    /// Returns true once a clique of size `stop_at` has been recorded.
    fn expand(&mut self, mut p: Bitset) -> bool {
        self.nodes += 1;
        let min_colour = (self.bound() + 1).saturating_sub(self.current.len()).max(1);
        let mut coloured = Vec::new();
        self.graph.colour(&p, min_colour, &mut coloured);
        for &(v, colour) in coloured.iter().rev() {
            if self.current.len() + colour <= self.bound() {
                return false;
            }
            self.current.push(v);
            let next = p.intersection(&self.graph.adj[v]);
            let done = if next.is_empty() {
                self.record()
            } else {
                self.expand(next)
            };
            self.current.pop();
            if done {
                return true;
            }
            p.remove(v);
        }
        false
    }
}

/// First clique of size at least `k` in branching order, if any.
pub fn clique_at_least(g: &Graph, k: usize) -> Option<Vec<Vertex>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let r = Relabelled::new(g);
    let mut s = Search::new(&r, k - 1, k, None);
    s.expand(Bitset::full(r.n()));
    (s.best.len() >= k).then(|| r.to_original(&s.best))
}

/// Clique number with a reproducible witness.
pub fn max_clique(g: &Graph) -> Clique {
    let omega = clique_number(g);
    let vertices = clique_at_least(g, omega).expect("a clique of the computed size exists");
    Clique {
        size: omega,
        vertices,
    }
}

/// Independence number with a reproducible witness, via the complement.
pub fn max_independent_set(g: &Graph) -> Clique {
    max_clique(&g.complement())
}

/// Clique number alone; root branches are explored in parallel.
pub fn clique_number(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let r = Relabelled::new(g);
    let all = Bitset::full(n);
    let mut root = Vec::new();
    r.colour(&all, 1, &mut root);
    let shared = AtomicUsize::new(1);
    // Branch t sees the root set minus every vertex listed after it.
    let branches: Vec<usize> = (0..root.len()).rev().collect();
    branches.par_iter().for_each(|&t| {
        let (v, colour) = root[t];
        if colour <= shared.load(Ordering::Relaxed) {
            return;
        }
        let mut p = all.clone();
        for &(u, _) in &root[t + 1..] {
            p.remove(u);
        }
        p.intersect_with(&r.adj[v]);
        let mut s = Search::new(&r, 0, usize::MAX, Some(&shared));
        s.current.push(v);
        if p.is_empty() {
            s.record();
        } else {
            s.expand(p);
        }
    });
    shared.load(Ordering::Relaxed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, matching, path};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force_omega(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|mask| {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                vs.iter()
                    .enumerate()
                    .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn is_clique(g: &Graph, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    #[test]
    fn small_cases() {
        assert_eq!(max_clique(&Graph::empty(0)).size, 0);
        assert_eq!(max_clique(&Graph::empty(5)).size, 1);
        assert_eq!(max_clique(&Graph::complete(7)).size, 7);
        assert_eq!(max_clique(&cycle(5).unwrap()).size, 2);
        assert_eq!(max_clique(&cycle(3).unwrap()).size, 3);
        assert_eq!(max_independent_set(&cycle(5).unwrap()).size, 2);
        assert_eq!(max_independent_set(&path(5)).size, 3);
        assert_eq!(max_independent_set(&matching(6).unwrap()).size, 3);
        assert_eq!(max_independent_set(&Graph::complete(4)).size, 1);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=14);
            let density: f64 = rng.gen_range(0.1..0.95);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let c = max_clique(&g);
            assert_eq!(c.size, brute_force_omega(&g), "{g:?}");
            assert_eq!(c.vertices.len(), c.size);
            assert!(is_clique(&g, &c.vertices));
            assert_eq!(max_clique(&g), c, "witness must be reproducible");
            assert_eq!(clique_at_least(&g, c.size + 1), None);
        }
    }

    #[test]
    fn clique_at_least_stops_early() {
        let g = Graph::complete(30);
        let c = clique_at_least(&g, 4).unwrap();
        assert!(c.len() >= 4);
        assert_eq!(clique_at_least(&g, 0), Some(vec![]));
    }

    #[test]
    fn witness_independent_of_thread_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 60;
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.7) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| max_clique(&g));
        let b = four.install(|| max_clique(&g));
        assert_eq!(a, b);
        assert!(is_clique(&g, &a.vertices));
    }
}

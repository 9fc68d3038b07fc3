//! Collision graphs: one vertex per family member, an edge wherever two
//! members are `G`-different. A family is pairwise `G`-different exactly when
//! its collision graph is complete.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::clique::{self, Clique};
use crate::error::Result;
use crate::graph::Graph;
use crate::perm::{first_collision, Family};

#[derive(Debug)]
pub struct CollisionGraph {
    graph: Graph,
    complement: OnceLock<Graph>,
    family_ref: Option<String>,
    origins: Option<BTreeMap<(usize, usize), usize>>,
}

impl CollisionGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Materialised on first use and kept.
    pub fn complement(&self) -> &Graph {
        self.complement.get_or_init(|| self.graph.complement())
    }

    /// Number of members.
    pub fn size(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.m()
    }

    pub fn is_complete(&self) -> bool {
        self.graph.is_complete()
    }

    pub fn family_ref(&self) -> Option<&str> {
        self.family_ref.as_deref()
    }

    pub fn with_family_ref(mut self, name: impl Into<String>) -> Self {
        self.family_ref = Some(name.into());
        self
    }

    /// Least colliding position for edge `(i, j)`, when built with
    /// [`build_collision_traced`].
    pub fn origin(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.origins.as_ref()?.get(&key).copied()
    }

    pub fn clique_number(&self) -> Clique {
        clique::max_clique(&self.graph)
    }

    pub fn independence_number(&self) -> Clique {
        clique::max_clique(self.complement())
    }
}

fn rows(f: &Family, g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let m = f.members();
    (0..m.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..m.len())
                .filter_map(|j| first_collision(&m[i], &m[j], g).map(|pos| (j, pos)))
                .collect()
        })
        .collect()
}

pub fn build_collision(f: &Family, g: &Graph) -> Result<CollisionGraph> {
    f.check_support_in(g)?;
    let mut h = Graph::empty(f.size());
    for (i, row) in rows(f, g).into_iter().enumerate() {
        for (j, _) in row {
            h.add_edge(i, j)?;
        }
    }
    Ok(CollisionGraph {
        graph: h,
        complement: OnceLock::new(),
        family_ref: None,
        origins: None,
    })
}

/// Like [`build_collision`], also recording the witness position of every edge.
pub fn build_collision_traced(f: &Family, g: &Graph) -> Result<CollisionGraph> {
    f.check_support_in(g)?;
    let mut h = Graph::empty(f.size());
    let mut origins = BTreeMap::new();
    for (i, row) in rows(f, g).into_iter().enumerate() {
        for (j, pos) in row {
            h.add_edge(i, j)?;
            origins.insert((i, j), pos);
        }
    }
    Ok(CollisionGraph {
        graph: h,
        complement: OnceLock::new(),
        family_ref: None,
        origins: Some(origins),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{edge_placements, m2_triple};
    use crate::graph::matching;
    use crate::perm::{verify_pairwise, BlankedPermutation};

    fn brute_alpha(h: &Graph) -> usize {
        let n = h.n();
        (0u32..1 << n)
            .filter(|mask| {
                (0..n).all(|u| {
                    (u + 1..n)
                        .all(|v| mask >> u & 1 == 0 || mask >> v & 1 == 0 || !h.has_edge(u, v))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn all_placements_of_length_three() {
        let m2 = matching(2).unwrap();
        let a3 = edge_placements(3).unwrap();
        let h = build_collision(&a3, &m2).unwrap();
        assert_eq!((h.size(), h.edge_count()), (6, 9));
        assert_eq!(h.clique_number().size, 3);
        assert_eq!(h.independence_number().size, 2);
        assert_eq!(brute_alpha(h.graph()), 2);
    }

    #[test]
    fn all_placements_of_length_four() {
        let h = build_collision(&edge_placements(4).unwrap(), &matching(2).unwrap()).unwrap();
        assert_eq!(h.independence_number().size, 4);
        assert_eq!(brute_alpha(h.graph()), 4);
    }

    #[test]
    fn triple_is_complete() {
        let h = build_collision(&m2_triple(), &matching(2).unwrap()).unwrap();
        assert!(h.is_complete());
        assert_eq!(h.independence_number().size, 1);
        assert_eq!(h.clique_number().size, 3);
    }

    #[test]
    fn single_member() {
        let f = Family::new(vec![BlankedPermutation::from_vertices(&[0, 1]).unwrap()]).unwrap();
        let h = build_collision(&f, &matching(2).unwrap()).unwrap();
        assert_eq!((h.size(), h.edge_count()), (1, 0));
        assert_eq!(h.clique_number().size, 1);
    }

    #[test]
    fn traced_origins_match_predicate() {
        let a4 = edge_placements(4).unwrap();
        let m2 = matching(2).unwrap();
        let h = build_collision_traced(&a4, &m2).unwrap();
        for (i, j) in h.graph().edges() {
            let pos = h.origin(i, j).unwrap();
            let (p, q) = (&a4.members()[i], &a4.members()[j]);
            let (u, v) = (p.entries()[pos].unwrap(), q.entries()[pos].unwrap());
            assert!(m2.has_edge(u, v));
        }
        assert_eq!(h.origin(0, 0), None);
        assert!(!verify_pairwise(&a4, &m2).unwrap().is_ok());
    }
}

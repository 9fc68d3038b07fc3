//! Explicit constructions of pairwise graph-different families.
//!
//! The bipartite constructions share one recursion ("peel"): pick the
//! least-index edge `(x, y)` among the remaining vertices, build a family on
//! the vertices without `x` and one without `y`, prepend `x` and `y`
//! respectively, and take the union. Rows of the two halves differ at
//! position 0, so the union stays pairwise different.

use num_rational::Ratio;

use crate::collision::build_collision;
use crate::error::{Error, Result};
use crate::graph::{self, bipartite_complement, Bipartition, Graph, Vertex};
use crate::perm::{concat_families, BlankedPermutation, Family};

/// State of one peel call: the vertices still in play.
struct Peel<'a> {
    g: &'a Graph,
    side: Vec<Option<bool>>,
}

/// Rows for a sub-problem the recursion should not split further.
type BaseCase<'a> = dyn Fn(&Peel, &[Vertex]) -> Option<Vec<BlankedPermutation>> + 'a;

impl Peel<'_> {
    fn left_count(&self, alive: &[Vertex]) -> usize {
        alive
            .iter()
            .filter(|&&v| self.side[v] == Some(true))
            .count()
    }

    /// Least edge `(x, y)` among `alive`, oriented left-to-right.
    fn least_edge(&self, alive: &[Vertex]) -> Option<(Vertex, Vertex)> {
        for (i, &u) in alive.iter().enumerate() {
            for &v in &alive[i + 1..] {
                if self.g.has_edge(u, v) {
                    return Some(if self.side[u] == Some(true) {
                        (u, v)
                    } else {
                        (v, u)
                    });
                }
            }
        }
        None
    }

    fn run(&self, alive: &[Vertex], base: &BaseCase) -> Vec<BlankedPermutation> {
        if let Some(rows) = base(self, alive) {
            return rows;
        }
        let Some((x, y)) = self.least_edge(alive) else {
            return vec![identity(alive)];
        };
        let without =
            |w: Vertex| -> Vec<Vertex> { alive.iter().copied().filter(|&v| v != w).collect() };
        let mut out: Vec<BlankedPermutation> = self
            .run(&without(x), base)
            .iter()
            .map(|r| r.prepend(x))
            .collect();
        out.extend(self.run(&without(y), base).iter().map(|r| r.prepend(y)));
        out
    }
}

fn identity(alive: &[Vertex]) -> BlankedPermutation {
    BlankedPermutation::from_vertices(alive).expect("distinct vertices")
}

fn peel_family(g: &Graph, part: &Bipartition, base: &BaseCase) -> Result<Family> {
    let peel = Peel {
        g,
        side: part.side_map(g.n()),
    };
    let alive: Vec<Vertex> = (0..g.n()).collect();
    Family::new(peel.run(&alive, base))
}

/// `C(a + b, a)` pairwise `K_{a,b}`-different permutations.
pub fn family_complete_bipartite(a: usize, b: usize) -> Family {
    let (g, part) = graph::complete_bipartite(a, b);
    peel_family(&g, &part, &|peel, alive| {
        let left = peel.left_count(alive);
        (left == 0 || left == alive.len()).then(|| vec![identity(alive)])
    })
    .expect("peel rows are distinct")
}

/// Pairwise `G(n, a)`-different family of size `C(n, a)` (`n >= 3`), or a
/// single permutation when `n < 3`.
pub fn family_gna(n: usize, a: usize) -> Result<Family> {
    let (g, part) = graph::gna(n, a)?;
    if n < 3 {
        return Family::new(vec![identity(&(0..n).collect::<Vec<_>>())]);
    }
    peel_family(&g, &part, &|peel, alive| {
        let left = peel.left_count(alive);
        if left == 0 || left == alive.len() || alive.len() < 3 {
            return Some(vec![identity(alive)]);
        }
        if alive.len() == 3 {
            // rows 123, 312, 231 with {1, 2} the least edge and 3 the other vertex
            let (x, y) = peel.least_edge(alive)?;
            let (u, v) = (x.min(y), x.max(y));
            let w = *alive.iter().find(|&&t| t != u && t != v)?;
            let rows = [[u, v, w], [w, u, v], [v, w, u]];
            return Some(rows.iter().map(|r| identity(r)).collect());
        }
        None
    })
}

/// Family of size at least `C(n - 2Δ, a - Δ)` for a bipartite graph whose
/// bipartite complement has maximum degree `Δ`.
pub fn family_delta_peel(g: &Graph, part: &Bipartition) -> Result<Family> {
    let (_, delta) = bipartite_complement(g, part)?;
    let n = g.n();
    let a = part.left.len();
    if n < 2 * delta {
        return Err(Error::Precondition(format!(
            "need n >= 2Δ, got n = {n}, Δ = {delta}"
        )));
    }
    if a < delta || a > n - delta {
        return Err(Error::Precondition(format!(
            "need Δ <= a <= n - Δ, got a = {a}, n = {n}, Δ = {delta}"
        )));
    }
    peel_family(g, part, &|peel, alive| {
        let left = peel.left_count(alive);
        (left <= delta || left + delta >= alive.len()).then(|| vec![identity(alive)])
    })
}

/// Block sizes of `B(n, k)`: `k` parts of size `⌈n/k⌉` then `⌊n/k⌋`.
pub fn block_sizes(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 || 2 * k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n/2 so every block has at least 2 vertices, got n = {n}, k = {k}"
        )));
    }
    Ok((0..k).map(|i| n / k + usize::from(i < n % k)).collect())
}

/// `B(n, k)`: disjoint balanced complete bipartite blocks on consecutive ids.
pub fn blocks_graph(n: usize, k: usize) -> Result<(Graph, Bipartition)> {
    let sizes = block_sizes(n, k)?;
    let mut g = Graph::empty(0);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for s in sizes {
        let offset = g.n();
        let (block, part) = graph::complete_bipartite(s / 2, s - s / 2);
        left.extend(part.left.iter().map(|v| v + offset));
        right.extend(part.right.iter().map(|v| v + offset));
        g = graph::disjoint_union(&g, &block);
    }
    Ok((g, Bipartition::new(left, right)))
}

/// Product of the per-block complete bipartite families over `B(n, k)`.
pub fn family_blocks(n: usize, k: usize) -> Result<Family> {
    let sizes = block_sizes(n, k)?;
    let mut acc: Option<Family> = None;
    let mut offset = 0;
    for s in sizes {
        let block = family_complete_bipartite(s / 2, s - s / 2).shift(offset)?;
        offset += s;
        acc = Some(match acc {
            None => block,
            Some(f) => concat_families(&f, &block)?,
        });
    }
    Ok(acc.expect("k >= 1"))
}

fn rows(table: &[&[Option<Vertex>]]) -> Family {
    Family::new(
        table.iter()
            .map(|r| BlankedPermutation::new(r.to_vec()).expect("valid row"))
            .collect(),
    )
    .expect("distinct rows")
}

/// The three rows `1 2 *`, `* 1 2`, `2 * 1` over the edge `{1, 2}`.
pub fn m2_triple() -> Family {
    let (x, y) = (Some(0), Some(1));
    rows(&[&[x, y, None], &[None, x, y], &[y, None, x]])
}

/// Every length-`c` row over the edge `{1, 2}`: `c(c - 1)` members, ordered by
/// (position of 1, position of 2).
pub fn edge_placements(c: usize) -> Result<Family> {
    if c < 2 {
        return Err(Error::Precondition(format!("need c >= 2, got {c}")));
    }
    let mut members = Vec::with_capacity(c * (c - 1));
    for i in 0..c {
        for j in (0..c).filter(|&j| j != i) {
            let mut e = vec![None; c];
            e[i] = Some(0);
            e[j] = Some(1);
            members.push(BlankedPermutation::new(e)?);
        }
    }
    Family::new(members)
}

/// Nine pairwise `M(4)`-different rows: the triple on `{1,2}` times the triple on `{3,4}`.
pub fn m4_nine() -> Family {
    let t = m2_triple();
    concat_families(&t, &t.shift(2).expect("shift")).expect("disjoint supports")
}

/// Schedule for the layered construction over `M(l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPlan {
    /// Seed size `q`.
    pub seed_size: usize,
    pub target: usize,
    /// Least power of `q` that is at least `target`.
    pub total: usize,
    /// Even length `l = 2 * ceil(log_q target)`; the family lives on `M(l)`.
    pub pattern_length: usize,
    /// `α(H_seed) / q`.
    pub ratio: Ratio<u64>,
    /// `schedules[i]` is the seed index sequence of layer `k = 2(i + 1)`.
    pub schedules: Vec<Vec<usize>>,
}

impl LayerPlan {
    pub fn new(seed_size: usize, target: usize, seed_alpha: usize) -> Result<Self> {
        if target == 0 {
            return Err(Error::Precondition("target must be at least 1".into()));
        }
        if seed_size == 0 || (seed_size == 1 && target > 1) {
            return Err(Error::Precondition(format!(
                "a seed of size {seed_size} cannot reach {target} members"
            )));
        }
        let (mut total, mut exponent) = (1usize, 0usize);
        while total < target {
            total *= seed_size;
            exponent += 1;
        }
        let schedules = (1..=exponent)
            .map(|half| {
                let run = seed_size.pow(half as u32 - 1);
                (0..total).map(|j| (j / run) % seed_size).collect()
            })
            .collect();
        Ok(LayerPlan {
            seed_size,
            target,
            total,
            pattern_length: 2 * exponent,
            ratio: Ratio::new(seed_alpha as u64, seed_size as u64),
            schedules,
        })
    }

    /// Predicted `α(H_{F_k, M(k)}) = total · ratio^{k/2}` for even `k`.
    pub fn predicted_alpha(&self, k: usize) -> Ratio<u64> {
        let mut r = Ratio::from_integer(self.total as u64);
        for _ in 0..k / 2 {
            r *= self.ratio;
        }
        r
    }
}

#[derive(Clone, Debug)]
pub struct Layered {
    pub plan: LayerPlan,
    /// Seed copies placed on edge `(k-1, k)`, indexed per the schedule; `k = 2, 4, ..`.
    pub blocks: Vec<Family>,
    /// Row-wise concatenations of the first `i + 1` blocks; the last one is the result.
    pub prefixes: Vec<Family>,
}

impl Layered {
    /// The family on `M(pattern_length)`.
    pub fn family(&self) -> Family {
        match self.prefixes.last() {
            Some(f) => f.clone(),
            None => Family::indexed(vec![BlankedPermutation::blank(0); self.plan.total])
                .expect("nonempty"),
        }
    }

    /// `F_k` for even `k <= pattern_length`; `k = 0` gives empty rows.
    pub fn prefix(&self, k: usize) -> Option<Family> {
        if k == 0 {
            return Family::indexed(vec![BlankedPermutation::blank(0); self.plan.total]).ok();
        }
        self.prefixes.get(k / 2 - 1).cloned()
    }
}

/// Stacks relabelled seed copies so that the independence number of the
/// collision graph shrinks by the seed ratio with every extra edge.
pub fn layered_family(seed: &Family, target: usize) -> Result<Layered> {
    if seed.support() != [0, 1] {
        return Err(Error::NotSingleEdgeFamily(seed.support().to_vec()));
    }
    let m2 = graph::matching(2)?;
    let alpha = build_collision(seed, &m2)?.independence_number().size;
    let plan = LayerPlan::new(seed.size(), target, alpha)?;
    let mut blocks = Vec::new();
    let mut prefixes: Vec<Family> = Vec::new();
    for (i, schedule) in plan.schedules.iter().enumerate() {
        let shifted = seed.shift(2 * i)?;
        let block = Family::indexed(
            schedule
                .iter()
                .map(|&s| shifted.members()[s].clone())
                .collect(),
        )?;
        let prefix = match prefixes.last() {
            None => block.clone(),
            Some(prev) => {
                let rows = prev
                    .members()
                    .iter()
                    .zip(block.members())
                    .map(|(p, q)| p.concat(q))
                    .collect::<Result<Vec<_>>>()?;
                Family::indexed(rows)?
            }
        };
        blocks.push(block);
        prefixes.push(prefix);
    }
    if let Some(last) = prefixes.last_mut() {
        if !last.has_duplicates() {
            *last = Family::new(last.members().to_vec())?;
        }
    }
    Ok(Layered {
        plan,
        blocks,
        prefixes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, gna, matching, matching_bipartition};
    use crate::perm::{verify_pairwise, BlankedPermutation};

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn ok_on(f: &Family, g: &Graph) -> bool {
        verify_pairwise(f, g).unwrap().is_ok()
    }

    #[test]
    fn complete_bipartite_sizes() {
        let f = family_complete_bipartite(2, 2);
        assert_eq!(f.size(), 6);
        assert!(ok_on(&f, &complete_bipartite(2, 2).0));
        assert_eq!(family_complete_bipartite(0, 4).size(), 1);
        let f = family_complete_bipartite(2, 3);
        assert_eq!(f.size(), 10);
        assert!(ok_on(&f, &complete_bipartite(2, 3).0));
        for a in 0..5 {
            for b in 0..5 {
                let f = family_complete_bipartite(a, b);
                assert_eq!(f.size(), binom(a + b, a));
                assert!(ok_on(&f, &complete_bipartite(a, b).0));
                assert_eq!(f.blanks(), 0);
            }
        }
    }

    #[test]
    fn gna_base_and_small_cases() {
        assert_eq!(family_gna(3, 1).unwrap().size(), 3);
        assert_eq!(family_gna(3, 2).unwrap().size(), 3);
        let f = family_gna(4, 2).unwrap();
        assert_eq!(f.size(), 6);
        assert!(ok_on(&f, &gna(4, 2).unwrap().0));
        for n in 0..3 {
            for a in 0..=n {
                assert_eq!(family_gna(n, a).unwrap().size(), 1);
            }
        }
        assert_eq!(family_gna(5, 0).unwrap().size(), 1);
        assert!(family_gna(2, 3).is_err());
    }

    #[test]
    fn gna_ten_five() {
        let f = family_gna(10, 5).unwrap();
        assert_eq!(f.size(), 252);
        assert!(ok_on(&f, &gna(10, 5).unwrap().0));
    }

    #[test]
    fn gna_pascal_recursion() {
        for n in 4..=9 {
            for a in 1..n {
                let here = family_gna(n, a).unwrap().size();
                let below =
                    family_gna(n - 1, a - 1).unwrap().size() + family_gna(n - 1, a).unwrap().size();
                assert_eq!(here, below, "({n},{a})");
            }
        }
    }

    #[test]
    fn delta_peel_cases() {
        let (g, part) = gna(6, 3).unwrap();
        let f = family_delta_peel(&g, &part).unwrap();
        assert!(f.size() >= 6);
        assert!(ok_on(&f, &g));

        // a = Δ: K_{2,3} minus everything from one left vertex's view
        let (mut g, part) = complete_bipartite(2, 3);
        g.remove_edge(0, 2);
        g.remove_edge(1, 3);
        g.remove_edge(0, 4);
        g.remove_edge(1, 4);
        let (_, delta) = bipartite_complement(&g, &part).unwrap();
        assert_eq!(delta, 2);
        assert_eq!(family_delta_peel(&g, &part).unwrap().size(), 1);

        let m8 = matching(8).unwrap();
        let f = family_delta_peel(&m8, &matching_bipartition(8)).unwrap();
        assert!(f.size() >= 2);
        assert!(ok_on(&f, &m8));
    }

    #[test]
    fn delta_peel_rejects_bad_parameters() {
        let (g, _) = complete_bipartite(1, 4);
        let mut g2 = g.clone();
        g2.remove_edge(0, 1);
        g2.remove_edge(0, 2);
        let part = Bipartition::new(vec![0], vec![1, 2, 3, 4]);
        // Δ = 2 > a = 1
        assert!(matches!(
            family_delta_peel(&g2, &part),
            Err(Error::Precondition(_))
        ));
        let bad = Bipartition::new(vec![0, 1], vec![2, 3, 4]);
        assert!(matches!(
            family_delta_peel(&g, &bad),
            Err(Error::InvalidBipartition(_))
        ));
    }

    #[test]
    fn blocks_products() {
        let f = family_blocks(8, 2).unwrap();
        assert_eq!(f.size(), 36);
        assert!(ok_on(&f, &blocks_graph(8, 2).unwrap().0));
        let f = family_blocks(6, 3).unwrap();
        assert_eq!(f.size(), 8);
        assert!(ok_on(&f, &blocks_graph(6, 3).unwrap().0));
        for n in 2..9 {
            assert_eq!(
                family_blocks(n, 1).unwrap(),
                family_complete_bipartite(n / 2, n - n / 2)
            );
        }
        assert!(family_blocks(5, 3).is_err());
        assert!(family_blocks(5, 0).is_err());
        assert_eq!(block_sizes(10, 4).unwrap(), vec![3, 3, 2, 2]);
    }

    #[test]
    fn triple_and_placements() {
        let t = m2_triple();
        assert_eq!(t.size(), 3);
        assert!(t.members().iter().all(|m| m.blanks() == 1));
        assert!(ok_on(&t, &matching(2).unwrap()));

        let a2 = edge_placements(2).unwrap();
        assert_eq!(
            a2.members(),
            &[
                BlankedPermutation::from_vertices(&[0, 1]).unwrap(),
                BlankedPermutation::from_vertices(&[1, 0]).unwrap()
            ]
        );
        assert_eq!(edge_placements(3).unwrap().size(), 6);
        assert_eq!(edge_placements(5).unwrap().size(), 20);
        assert!(edge_placements(1).is_err());
    }

    #[test]
    fn m4_nine_matches_layered_construction() {
        let nine = m4_nine();
        assert_eq!((nine.size(), nine.length()), (9, 6));
        assert!(nine.members().iter().all(|m| m.blanks() == 2));
        assert!(ok_on(&nine, &matching(4).unwrap()));
        let layered = layered_family(&m2_triple(), 9).unwrap();
        assert_eq!(layered.family().canonical(), nine.canonical());
    }

    #[test]
    fn layer_plan_schedules() {
        let plan = LayerPlan::new(3, 9, 1).unwrap();
        assert_eq!((plan.total, plan.pattern_length), (9, 4));
        assert_eq!(plan.schedules[0], vec![0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert_eq!(plan.schedules[1], vec![0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(plan.predicted_alpha(4), Ratio::from_integer(1));

        let plan = LayerPlan::new(3, 3, 1).unwrap();
        assert_eq!((plan.total, plan.pattern_length), (3, 2));
        let plan = LayerPlan::new(3, 10, 1).unwrap();
        assert_eq!((plan.total, plan.pattern_length), (27, 6));
        let plan = LayerPlan::new(5, 1, 2).unwrap();
        assert_eq!((plan.total, plan.pattern_length), (1, 0));
        assert!(LayerPlan::new(1, 2, 1).is_err());
        assert!(LayerPlan::new(3, 0, 1).is_err());
    }

    #[test]
    fn layered_single_block_is_the_seed() {
        let l = layered_family(&m2_triple(), 3).unwrap();
        assert_eq!(l.plan.pattern_length, 2);
        assert_eq!(l.family(), m2_triple());
        let a4 = edge_placements(4).unwrap();
        let l = layered_family(&a4, 12).unwrap();
        assert_eq!(l.plan.ratio, Ratio::new(1, 3));
        assert_eq!(l.family().members(), a4.members());
    }

    #[test]
    fn layered_rejects_foreign_support() {
        let f = m2_triple().shift(1).unwrap();
        assert!(matches!(
            layered_family(&f, 3),
            Err(Error::NotSingleEdgeFamily(_))
        ));
    }
}

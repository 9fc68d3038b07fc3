//! Seeded random instances and the invariant suites that run over them.
//! Every suite is a pure function of its seed.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clique;
use crate::collision::build_collision;
use crate::construct::{edge_placements, family_delta_peel};
use crate::error::Result;
use crate::graph::{
    bipartite_complement, complete_bipartite, disjoint_union, matching, Bipartition, Graph,
};
use crate::perm::{concat_families, verify_pairwise, BlankedPermutation, Family};
use crate::search::{
    binomial, count_blanked, exact_f, exact_f_b, m2_independence_bound, merge_columns_step,
};
use crate::search::{MergeOutcome, SearchConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each possible edge present with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// `(g, h)` with `g` an edge-subgraph of `h`, on `2..=max_n` vertices.
pub fn random_subgraph_pair(rng: &mut impl Rng, max_n: usize) -> (Graph, Graph) {
    let n = rng.gen_range(2..=max_n);
    let h = random_graph(rng, n, 0.6);
    let mut g = h.clone();
    for (u, v) in h.edges() {
        if rng.gen_bool(0.4) {
            g.remove_edge(u, v);
        }
    }
    (g, h)
}

/// Distinct random members of the single-edge universe at length `c`.
pub fn random_single_edge_family(rng: &mut impl Rng, c: usize, max_size: usize) -> Result<Family> {
    let universe = edge_placements(c)?;
    let size = rng.gen_range(1..=max_size.min(universe.size()));
    let picked = universe
        .members()
        .iter()
        .cloned()
        .choose_multiple(rng, size);
    Family::new(picked)
}

/// Distinct random rows over `0..n` of length `n + blanks`.
pub fn random_family(rng: &mut impl Rng, n: usize, blanks: usize, size: usize) -> Result<Family> {
    let len = n + blanks;
    let mut rows = std::collections::BTreeSet::new();
    let room = count_blanked(n, len).min(size as u128) as usize;
    while rows.len() < room.max(1) {
        let mut slots: Vec<usize> = (0..len).collect();
        slots.shuffle(rng);
        let mut e = vec![None; len];
        for (v, &s) in slots.iter().take(n).enumerate() {
            e[s] = Some(v);
        }
        rows.insert(BlankedPermutation::new(e)?);
    }
    let mut rows: Vec<_> = rows.into_iter().collect();
    rows.shuffle(rng);
    Family::new(rows)
}

/// Bipartite graph on `n ≤ max_n` vertices whose bipartite complement has
/// maximum degree at most `max_delta`, with a bipartition meeting the peel
/// preconditions; vertex labels are shuffled.
pub fn random_peelable(
    rng: &mut impl Rng,
    max_n: usize,
    max_delta: usize,
) -> Result<(Graph, Bipartition, usize)> {
    loop {
        let n = rng.gen_range(2..=max_n);
        let a = rng.gen_range(0..=n);
        let (mut g, _) = complete_bipartite(a, n - a);
        let cap = rng.gen_range(0..=max_delta);
        let mut missing = vec![0usize; n];
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.shuffle(rng);
        for (u, v) in edges {
            if missing[u] < cap && missing[v] < cap && rng.gen_bool(0.5) {
                g.remove_edge(u, v);
                missing[u] += 1;
                missing[v] += 1;
            }
        }
        let mut label: Vec<usize> = (0..n).collect();
        label.shuffle(rng);
        let g = Graph::from_edges(n, g.edges().map(|(u, v)| (label[u], label[v])))?;
        let part = Bipartition::new(
            (0..a).map(|v| label[v]).collect(),
            (a..n).map(|v| label[v]).collect(),
        );
        let (_, delta) = bipartite_complement(&g, &part)?;
        if n >= 2 * delta && delta <= a && a + delta <= n {
            return Ok((g, part, delta));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            cases: 0,
            violations: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            self.first_violation.get_or_insert_with(describe);
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// `F(g) ≤ F(h)` whenever `g` is an edge-subgraph of `h`.
pub fn subgraph_monotonicity(seed: u64, count: usize, max_n: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let cfg = SearchConfig::default();
    let mut out = SuiteOutcome::new("subgraph monotonicity");
    for _ in 0..count {
        let (g, h) = random_subgraph_pair(&mut rng, max_n);
        let (fg, fh) = (exact_f(&g, &cfg)?.value, exact_f(&h, &cfg)?.value);
        out.record(g.is_edge_subgraph_of(&h) && fg <= fh, || {
            format!("F(g)={fg} > F(h)={fh} for g={g:?}, h={h:?}")
        });
    }
    Ok(out)
}

fn random_verified_family(rng: &mut impl Rng, cfg: &SearchConfig) -> Result<(Graph, Family)> {
    loop {
        let n = rng.gen_range(2..=4);
        let blanks = rng.gen_range(0..=1);
        if count_blanked(n, n + blanks) > cfg.cap_perms {
            continue;
        }
        let g = random_graph(rng, n, 0.6);
        let witness = exact_f_b(&g, blanks, cfg)?.witness;
        let size = rng.gen_range(1..=witness.size());
        let rows = witness.members().iter().cloned().choose_multiple(rng, size);
        return Ok((g, Family::new(rows)?));
    }
}

/// Row-wise concatenation of verified families on disjoint graphs is a
/// verified family on their union, of the product size.
pub fn product_property(seed: u64, count: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let cfg = SearchConfig::default();
    let mut out = SuiteOutcome::new("product property");
    for _ in 0..count {
        let (g1, f1) = random_verified_family(&mut rng, &cfg)?;
        let (g2, f2) = random_verified_family(&mut rng, &cfg)?;
        let union = disjoint_union(&g1, &g2);
        let prod = concat_families(&f1, &f2.shift(g1.n())?)?;
        let ok = verify_pairwise(&f1, &g1)?.is_ok()
            && verify_pairwise(&f2, &g2)?.is_ok()
            && prod.size() == f1.size() * f2.size()
            && verify_pairwise(&prod, &union)?.is_ok();
        out.record(ok, || format!("product of {f1:?} and {f2:?} fails"));
    }
    Ok(out)
}

/// Every collision edge survives a column merge. Counts only families that
/// admit a merge.
pub fn merge_containment(seed: u64, count: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let mut out = SuiteOutcome::new("merge containment");
    while out.cases < count {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.6);
        let blanks = rng.gen_range(1..=3);
        let size = rng.gen_range(2..=10);
        let f = random_family(&mut rng, n, blanks, size)?;
        let MergeOutcome::Reduced { family, .. } = merge_columns_step(&f)? else {
            continue;
        };
        let before = build_collision(&f, &g)?;
        let after = build_collision(&family, &g)?;
        out.record(before.graph().is_edge_subgraph_of(after.graph()), || {
            format!("merge of {f:?} on {g:?} lost an edge")
        });
    }
    Ok(out)
}

/// Exact `α` of random single-edge families against the averaging bound.
pub fn independence_bound(
    seed: u64,
    count: usize,
    max_c: usize,
    max_size: usize,
) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let m2 = matching(2)?;
    let mut out = SuiteOutcome::new("single-edge independence bound");
    for _ in 0..count {
        let c = rng.gen_range(2..=max_c);
        let f = random_single_edge_family(&mut rng, c, max_size)?;
        let h = build_collision(&f, &m2)?;
        let alpha = clique::max_clique(h.complement()).size;
        let bound = m2_independence_bound(&f)?;
        let ok = num_bigint::BigInt::from(alpha) >= bound.implied;
        out.record(ok, || {
            format!("alpha {alpha} < {} for {f:?}", bound.implied)
        });
    }
    Ok(out)
}

/// The peel construction meets its size guarantee and verifies.
pub fn delta_peel(seed: u64, count: usize, max_n: usize, max_delta: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let mut out = SuiteOutcome::new("delta peel");
    for _ in 0..count {
        let (g, part, delta) = random_peelable(&mut rng, max_n, max_delta)?;
        let f = family_delta_peel(&g, &part)?;
        let need = binomial(g.n() - 2 * delta, part.left.len() - delta);
        let ok = verify_pairwise(&f, &g)?.is_ok() && num_bigint::BigInt::from(f.size()) >= need;
        out.record(ok, || format!("peel on {g:?} gave {} < {need}", f.size()));
    }
    Ok(out)
}

//! Exact values of `F(G)` and `F_b(G)` by enumeration plus clique search, the
//! column-merge reduction, and the independence bound for single-edge families.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::clique;
use crate::collision::build_collision;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::perm::{BlankedPermutation, Entry, Family};

/// Enumeration limits. Exceeding one is an error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Most rows `exact_f_b` may enumerate.
    pub cap_perms: u128,
    /// Most subsets a single exhaustive certificate case may sweep.
    pub cap_subsets: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cap_perms: 720,
            cap_subsets: 1_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExactValue {
    pub value: usize,
    pub witness: Family,
    /// Rows enumerated.
    pub candidates: usize,
}

/// Number of length-`len` rows over `n` vertices: `len! / (len - n)!`.
pub fn count_blanked(n: usize, len: usize) -> u128 {
    if n > len {
        return 0;
    }
    ((len - n + 1)..=len).fold(1u128, |acc, k| acc.saturating_mul(k as u128))
}

/// All rows of length `len` over `support`, lexicographic with blanks first.
pub fn enumerate_blanked(support: &[Vertex], len: usize) -> Vec<BlankedPermutation> {
    fn fill(
        support: &[Vertex],
        used: &mut Vec<bool>,
        blanks_left: usize,
        row: &mut Vec<Entry>,
        len: usize,
        out: &mut Vec<BlankedPermutation>,
    ) {
        if row.len() == len {
            out.push(BlankedPermutation::new(row.clone()).expect("distinct entries"));
            return;
        }
        if blanks_left > 0 {
            row.push(None);
            fill(support, used, blanks_left - 1, row, len, out);
            row.pop();
        }
        for i in 0..support.len() {
            if !used[i] {
                used[i] = true;
                row.push(Some(support[i]));
                fill(support, used, blanks_left, row, len, out);
                row.pop();
                used[i] = false;
            }
        }
    }
    if support.len() > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used = vec![false; support.len()];
    fill(
        support,
        &mut used,
        len - support.len(),
        &mut Vec::with_capacity(len),
        len,
        &mut out,
    );
    out
}

/// `F(g)`: the largest pairwise `g`-different family of blank-free permutations.
pub fn exact_f(g: &Graph, cfg: &SearchConfig) -> Result<ExactValue> {
    exact_f_b(g, 0, cfg)
}

/// `F_b(g)`: as [`exact_f`] with `blanks` blank spaces per row.
///
/// Permuting positions is an automorphism of the collision graph and acts
/// transitively on the rows, so some maximum clique contains row 0; the search
/// runs on row 0's neighbourhood only.
pub fn exact_f_b(g: &Graph, blanks: usize, cfg: &SearchConfig) -> Result<ExactValue> {
    let n = g.n();
    let len = n + blanks;
    let needed = count_blanked(n, len);
    if needed > cfg.cap_perms {
        return Err(Error::CapExceeded {
            what: "rows to enumerate",
            needed,
            cap: cfg.cap_perms,
        });
    }
    let support: Vec<Vertex> = (0..n).collect();
    let rows = enumerate_blanked(&support, len);
    let candidates = rows.len();
    let family = Family::new(rows)?;
    let h = build_collision(&family, g)?;
    let hood: Vec<usize> = h.graph().neighbors(0).iter().collect();
    let sub = h.graph().induced(&hood);
    let inner = clique::max_clique(&sub);
    let mut chosen = vec![0];
    chosen.extend(inner.vertices.iter().map(|&i| hood[i]));
    chosen.sort_unstable();
    let witness = Family::new(
        chosen
            .iter()
            .map(|&i| family.members()[i].clone())
            .collect(),
    )?;
    Ok(ExactValue {
        value: inner.size + 1,
        witness,
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeOutcome {
    Reduced {
        family: Family,
        /// 0-indexed positions; `j2` was merged into `j1`.
        pair: (usize, usize),
    },
    Irreducible,
}

/// Least position pair `(j1, j2)` at which every member is blank in at least one place.
pub fn mergeable_pair(f: &Family) -> Option<(usize, usize)> {
    let c = f.length();
    (0..c)
        .flat_map(|j1| (j1 + 1..c).map(move |j2| (j1, j2)))
        .find(|&(j1, j2)| {
            f.members()
                .iter()
                .all(|m| m.entries()[j1].is_none() || m.entries()[j2].is_none())
        })
}

/// Merges position `j2` into `j1` for the least mergeable pair. The collision
/// graph of the input is an edge-subgraph of the output's.
pub fn merge_columns_step(f: &Family) -> Result<MergeOutcome> {
    let Some((j1, j2)) = mergeable_pair(f) else {
        return Ok(MergeOutcome::Irreducible);
    };
    let members = f
        .members()
        .iter()
        .map(|m| {
            let e = m.entries();
            let mut out: Vec<Entry> = Vec::with_capacity(e.len() - 1);
            for (j, &x) in e.iter().enumerate() {
                if j == j1 {
                    out.push(e[j1].or(e[j2]));
                } else if j != j2 {
                    out.push(x);
                }
            }
            BlankedPermutation::new(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MergeOutcome::Reduced {
        family: Family::indexed(members)?,
        pair: (j1, j2),
    })
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub family: Family,
    /// Merged pairs in application order.
    pub steps: Vec<(usize, usize)>,
}

/// Applies [`merge_columns_step`] until no pair is mergeable. The result has
/// `|f| >= C(c, 2)` or no blanks left.
pub fn reduce_family(f: &Family) -> Result<Reduction> {
    let mut family = f.clone();
    let mut steps = Vec::new();
    while let MergeOutcome::Reduced { family: next, pair } = merge_columns_step(&family)? {
        family = next;
        steps.push(pair);
    }
    Ok(Reduction { family, steps })
}

/// Lower bounds on `α` of a single-edge family's collision graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleEdgeBound {
    /// `2^{c-2} / (2^c - 2) · |f|`.
    pub bound: BigRational,
    /// `⌈bound⌉`.
    pub implied: BigInt,
    /// `|f| / 4`, which `α` strictly exceeds.
    pub quarter: BigRational,
}

/// Averaging over the `2^c - 2` two-colourings of the positions: each member
/// survives in `2^{c-2}` of them, and each colouring class is independent.
pub fn m2_independence_bound(f: &Family) -> Result<SingleEdgeBound> {
    if f.support() != [0, 1] {
        return Err(Error::NotSingleEdgeFamily(f.support().to_vec()));
    }
    let c = f.length();
    let two = BigInt::from(2);
    let numer = two.pow((c - 2) as u32) * BigInt::from(f.size());
    let denom = two.pow(c as u32) - &two;
    let bound = BigRational::new(numer, denom);
    let implied = bound.ceil().to_integer();
    let quarter = BigRational::new(BigInt::from(f.size()), BigInt::from(4));
    Ok(SingleEdgeBound {
        bound,
        implied,
        quarter,
    })
}

/// `C(n, k)` as a big integer (zero when `k > n`).
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collision::build_collision;
    use crate::construct::{edge_placements, m2_triple};
    use crate::graph::{complete_bipartite, matching, path};

    fn row(s: &str) -> BlankedPermutation {
        BlankedPermutation::new(
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize - 1))
                .collect(),
        )
        .unwrap()
    }

    fn family(rows: &[&str]) -> Family {
        Family::new(rows.iter().map(|r| row(r)).collect()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(count_blanked(4, 6), 360);
        assert_eq!(count_blanked(3, 3), 6);
        assert_eq!(count_blanked(0, 3), 1);
        assert_eq!(enumerate_blanked(&[0, 1, 2, 3], 6).len(), 360);
        assert_eq!(enumerate_blanked(&[0, 1], 3).len(), 6);
        let rows = enumerate_blanked(&[0, 1], 2);
        assert_eq!(rows, vec![row("12"), row("21")]);
    }

    #[test]
    fn small_exact_values() {
        let cfg = SearchConfig::default();
        assert_eq!(exact_f(&matching(2).unwrap(), &cfg).unwrap().value, 2);
        assert_eq!(exact_f(&path(3), &cfg).unwrap().value, 3);
        assert_eq!(exact_f(&complete_bipartite(2, 2).0, &cfg).unwrap().value, 6);
        assert_eq!(exact_f_b(&matching(2).unwrap(), 1, &cfg).unwrap().value, 3);
        assert_eq!(exact_f_b(&matching(2).unwrap(), 0, &cfg).unwrap().value, 2);
        assert_eq!(exact_f(&Graph::empty(0), &cfg).unwrap().value, 1);
        assert_eq!(exact_f(&Graph::empty(3), &cfg).unwrap().value, 1);
    }

    #[test]
    fn exact_witness_verifies() {
        let cfg = SearchConfig::default();
        let g = path(4);
        let r = exact_f(&g, &cfg).unwrap();
        assert_eq!(r.witness.size(), r.value);
        assert!(crate::perm::verify_pairwise(&r.witness, &g)
            .unwrap()
            .is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = SearchConfig {
            cap_perms: 100,
            ..Default::default()
        };
        assert!(matches!(
            exact_f(&path(5), &cfg),
            Err(Error::CapExceeded {
                needed: 120,
                cap: 100,
                ..
            })
        ));
    }

    #[test]
    fn merge_example() {
        let f = family(&["12**", "*12*", "**12"]);
        let MergeOutcome::Reduced { family: out, pair } = merge_columns_step(&f).unwrap() else {
            panic!("expected a merge");
        };
        assert_eq!(pair, (0, 2));
        assert_eq!(out.members(), &[row("12*"), row("21*"), row("1*2")]);
        let g = matching(2).unwrap();
        let before = build_collision(&f, &g).unwrap();
        let after = build_collision(&out, &g).unwrap();
        assert!(before.graph().is_edge_subgraph_of(after.graph()));
    }

    #[test]
    fn reduce_runs_to_a_fixed_point() {
        let f = family(&["12**", "*12*", "**12"]);
        let r = reduce_family(&f).unwrap();
        // the one-step result still has positions 2 and 3 mergeable
        assert_eq!(r.steps, vec![(0, 2), (1, 2)]);
        assert_eq!(r.family.members(), &[row("12"), row("21"), row("12")]);
        assert_eq!(
            merge_columns_step(&r.family).unwrap(),
            MergeOutcome::Irreducible
        );

        let t = m2_triple();
        let r = reduce_family(&t).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.family, t);

        let plain = family(&["12", "21"]);
        assert_eq!(
            merge_columns_step(&plain).unwrap(),
            MergeOutcome::Irreducible
        );
    }

    #[test]
    fn covering_all_position_pairs_is_irreducible() {
        // one member per position pair of length 4
        let f = Family::new(
            (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let mut e = vec![None; 4];
                    e[i] = Some(0);
                    e[j] = Some(1);
                    BlankedPermutation::new(e).unwrap()
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(f.size(), 6);
        assert_eq!(merge_columns_step(&f).unwrap(), MergeOutcome::Irreducible);
    }

    #[test]
    fn single_edge_bound_values() {
        let ten = Family::indexed(vec![row("12*"); 10]).unwrap();
        let b = m2_independence_bound(&ten).unwrap();
        assert_eq!(b.bound, BigRational::new(10.into(), 3.into()));
        assert_eq!(b.implied, BigInt::from(4));

        let a4 = edge_placements(4).unwrap();
        let b = m2_independence_bound(&a4).unwrap();
        assert_eq!(b.bound, BigRational::new(24.into(), 7.into()));
        assert_eq!(b.implied, BigInt::from(4));
        let alpha = build_collision(&a4, &matching(2).unwrap())
            .unwrap()
            .independence_number()
            .size;
        assert_eq!(alpha, 4);

        let b = m2_independence_bound(&family(&["12", "21"])).unwrap();
        assert_eq!(b.bound, BigRational::one());
        assert_eq!(b.quarter, BigRational::new(1.into(), 2.into()));

        assert!(matches!(
            m2_independence_bound(&family(&["13", "31"])),
            Err(Error::NotSingleEdgeFamily(_))
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(20, 10), BigInt::from(184_756));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}

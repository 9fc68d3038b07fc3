//! Certificates for the unlimited-blank values on one edge (3) and on two
//! disjoint edges (9).
//!
//! A certificate carries a verified witness family for the lower bound and a
//! list of case records closing the upper bound. Every record states its
//! inputs and the counts it observed, so it can be regenerated and compared.
//!
//! The two-edge argument: project a hypothetical 10-member family onto each
//! edge. An independent set in one projection's collision graph must be a
//! clique in the other's, cliques there have at most 3 members, and one of the
//! two graphs carries at least 23 of the 45 edges. So it suffices that no
//! 10-member single-edge family has independence number at most 3 and at
//! least 23 collision edges. Column merging only adds edges, so families can
//! be taken irreducible, which caps their length at 5.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::clique;
use crate::collision::build_collision;
use crate::combinatorics::{choose, sweep_multisets, sweep_subsets, Chunk};
use crate::construct::{edge_placements, m2_triple, m4_nine};
use crate::error::{Error, Result};
use crate::graph::{matching, Graph};
use crate::io::format_family;
use crate::perm::{verify_pairwise, BlankedPermutation, Family};
use crate::search::{m2_independence_bound, SearchConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Analytic,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub quantity: String,
    pub graph: String,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub method: Method,
    pub predicate: String,
    pub inputs: BTreeMap<String, u64>,
    /// Items enumerated (exhaustive) or quantities evaluated (analytic).
    pub total: u64,
    /// Per-worker visit counts; they sum to `total`.
    pub per_worker: Vec<u64>,
    pub facts: BTreeMap<String, u64>,
    pub closed: bool,
}

impl CaseRecord {
    fn analytic(id: &str, predicate: &str) -> Self {
        CaseRecord {
            id: id.into(),
            method: Method::Analytic,
            predicate: predicate.into(),
            inputs: BTreeMap::new(),
            total: 0,
            per_worker: Vec::new(),
            facts: BTreeMap::new(),
            closed: false,
        }
    }

    fn exhaustive(id: &str, predicate: &str) -> Self {
        CaseRecord {
            method: Method::Exhaustive,
            ..Self::analytic(id, predicate)
        }
    }

    fn input(mut self, key: &str, v: u64) -> Self {
        self.inputs.insert(key.into(), v);
        self
    }

    fn fact(&mut self, key: &str, v: u64) {
        self.facts.insert(key.into(), v);
    }

    fn single(&mut self, total: u64) {
        self.total = total;
        self.per_worker = vec![total];
    }

    fn visits<T>(&mut self, chunks: &[Chunk<T>]) {
        self.per_worker = chunks.iter().map(|c| c.visited).collect();
        self.total = self.per_worker.iter().sum();
    }

    /// Same verdict and counts; `per_worker` may differ with the worker count.
    pub fn same_outcome(&self, other: &CaseRecord) -> bool {
        self.id == other.id
            && self.method == other.method
            && self.inputs == other.inputs
            && self.total == other.total
            && self.facts == other.facts
            && self.closed == other.closed
            && self.per_worker.iter().sum::<u64>() == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    /// Witness in family-file format.
    pub lower: String,
    pub lower_size: usize,
    pub lower_verified: bool,
    pub cases: Vec<CaseRecord>,
    pub elapsed_ms: u64,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.lower_verified
            && self.lower_size == self.claim.value
            && self.cases.iter().all(|c| c.closed)
    }

    pub fn case(&self, id: &str) -> Option<&CaseRecord> {
        self.cases.iter().find(|c| c.id == id)
    }
}

/// All single-edge rows of length `c` with their collision graph.
struct Universe {
    family: Family,
    collisions: Graph,
}

impl Universe {
    fn new(c: usize) -> Result<Self> {
        let family = edge_placements(c)?;
        let collisions = build_collision(&family, &matching(2)?)?.graph().clone();
        Ok(Universe { family, collisions })
    }

    fn size(&self) -> usize {
        self.family.size()
    }

    /// Collision graph of the sub-family picked by `idx`; repeated indices
    /// give repeated members, which never collide.
    fn induced(&self, idx: &[usize]) -> Graph {
        self.collisions.induced(idx)
    }
}

fn check_cap(needed: u128, cfg: &SearchConfig) -> Result<()> {
    if needed > cfg.cap_subsets {
        return Err(Error::CapExceeded {
            what: "subsets in one exhaustive case",
            needed,
            cap: cfg.cap_subsets,
        });
    }
    Ok(())
}

fn workers() -> usize {
    rayon::current_num_threads()
}

fn lower_witness(f: &Family, g: &Graph) -> Result<(String, usize, bool)> {
    let ok = verify_pairwise(f, g)?.is_ok();
    Ok((format_family(f, &[]), f.size(), ok))
}

/// `F_∞(M(2)) = 3`.
pub fn certify_m2_infinity(cfg: &SearchConfig) -> Result<Certificate> {
    let start = Instant::now();
    let m2 = matching(2)?;
    let (lower, lower_size, lower_verified) = lower_witness(&m2_triple(), &m2)?;
    let members = 4usize;
    let mut cases = Vec::new();

    let mut reduce = CaseRecord::analytic(
        "reduce",
        "a 4-member family with fewer than C(c,2) members is mergeable, so irreducible ones have length c <= 3",
    )
    .input("members", members as u64);
    let pairs_at_4 = choose(4, 2) as u64;
    reduce.fact("pairs_at_length_4", pairs_at_4);
    reduce.single(1);
    reduce.closed = (members as u64) < pairs_at_4;
    cases.push(reduce);

    let u2 = Universe::new(2)?;
    let mut c2 = CaseRecord::exhaustive("c=2", "fewer than 4 distinct rows exist at length 2")
        .input("length", 2)
        .input("members", members as u64);
    c2.single(u2.size() as u64);
    c2.fact("distinct_rows", u2.size() as u64);
    c2.closed = u2.size() < members;
    cases.push(c2);

    let u3 = Universe::new(3)?;
    check_cap(choose(u3.size(), members), cfg)?;
    let mut c3 = CaseRecord::exhaustive(
        "c=3",
        "no 4 distinct rows of length 3 are pairwise different",
    )
    .input("length", 3)
    .input("members", members as u64);
    let chunks = sweep_subsets(
        u3.size(),
        members,
        workers(),
        || 0u64,
        |complete, s| {
            if u3.induced(s).is_complete() {
                *complete += 1;
            }
        },
    );
    c3.visits(&chunks);
    let complete: u64 = chunks.iter().map(|c| c.value).sum();
    c3.fact("universe", u3.size() as u64);
    c3.fact("complete_families", complete);
    c3.closed = complete == 0;
    cases.push(c3);

    Ok(Certificate {
        claim: Claim {
            quantity: "F_inf".into(),
            graph: "M(2)".into(),
            value: 3,
        },
        lower,
        lower_size,
        lower_verified,
        cases,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Copy, Default)]
struct SweepStats {
    min_alpha: Option<usize>,
    alpha_below_4: u64,
    edges_at_least_23: u64,
    both: u64,
}

/// `F_∞(M(4)) = 9`.
pub fn certify_m4_infinity(cfg: &SearchConfig) -> Result<Certificate> {
    let start = Instant::now();
    let m4 = matching(4)?;
    let (lower, lower_size, lower_verified) = lower_witness(&m4_nine(), &m4)?;
    let members = 10usize;
    let max_alpha = 3usize;
    let pair_count = choose(members, 2) as u64;
    let edge_need = pair_count / 2 + 1;
    let mut cases = Vec::new();

    let m2_cert = certify_m2_infinity(cfg)?;
    let mut cap = CaseRecord::analytic(
        "clique-cap",
        "cliques in either projection are pairwise M(2)-different, so have at most F_inf(M(2)) members; \
         an independent set of one projection is a clique of the other, so both independence numbers are at most 3",
    );
    cap.fact("single_edge_value", m2_cert.claim.value as u64);
    cap.fact("single_edge_certificate_holds", u64::from(m2_cert.holds()));
    cap.single(1);
    cap.closed = m2_cert.holds() && m2_cert.claim.value == max_alpha;
    cases.push(cap);

    let mut split = CaseRecord::analytic(
        "edge-split",
        "the 45 member pairs are covered by the two projections, so one carries at least 23 collision edges",
    )
    .input("members", members as u64);
    split.fact("member_pairs", pair_count);
    split.fact("edges_required", edge_need);
    split.single(1);
    split.closed = 2 * (edge_need - 1) < pair_count;
    cases.push(split);

    let mut reduce = CaseRecord::analytic(
        "reduce",
        "10 < C(c,2) for every c >= 6, so an irreducible 10-member family has at most 3 blanks",
    )
    .input("members", members as u64);
    let pairs_at_6 = choose(6, 2) as u64;
    reduce.fact("pairs_at_length_6", pairs_at_6);
    reduce.single(1);
    reduce.closed = (members as u64) < pairs_at_6;
    cases.push(reduce);

    let u2 = Universe::new(2)?;
    let mut b0 = CaseRecord::exhaustive(
        "b=0",
        "only 2 distinct rows exist without blanks; a 10-row multiset repeats one row at least 5 times, \
         and repeated rows are pairwise independent",
    )
    .input("members", members as u64);
    b0.single(u2.size() as u64);
    b0.fact("distinct_rows", u2.size() as u64);
    let repeated = members.div_ceil(u2.size()) as u64;
    b0.fact("forced_alpha", repeated);
    b0.closed = u2.size() < members && repeated > max_alpha as u64;
    cases.push(b0);

    let mut b1 = CaseRecord::analytic(
        "b=1",
        "averaging over position colourings gives alpha >= 2^(c-2)/(2^c-2) * 10 = 10/3 > 3 at c = 3",
    )
    .input("members", members as u64)
    .input("length", 3);
    let probe = Family::indexed(vec![
        BlankedPermutation::new(vec![Some(0), Some(1), None])?;
        members
    ])?;
    let bound = m2_independence_bound(&probe)?;
    let implied = bound.implied.to_u64().unwrap_or(0);
    b1.fact("bound_numerator", bound.bound.numer().to_u64().unwrap_or(0));
    b1.fact(
        "bound_denominator",
        bound.bound.denom().to_u64().unwrap_or(0),
    );
    b1.fact("implied_alpha", implied);
    b1.single(1);
    b1.closed = implied > max_alpha as u64;
    cases.push(b1);

    let u4 = Universe::new(4)?;
    check_cap(choose(u4.size(), members), cfg)?;
    let mut b2 = CaseRecord::exhaustive(
        "b=2",
        "every 10 distinct rows of length 4 have independence number at least 4",
    )
    .input("members", members as u64)
    .input("length", 4);
    let chunks = sweep_subsets(
        u4.size(),
        members,
        workers(),
        SweepStats::default,
        |st, s| {
            let alpha = clique::max_clique(&u4.induced(s).complement()).size;
            st.min_alpha = Some(st.min_alpha.map_or(alpha, |m| m.min(alpha)));
            if alpha <= max_alpha {
                st.alpha_below_4 += 1;
            }
        },
    );
    b2.visits(&chunks);
    let min_alpha = chunks
        .iter()
        .filter_map(|c| c.value.min_alpha)
        .min()
        .unwrap_or(0);
    let below: u64 = chunks.iter().map(|c| c.value.alpha_below_4).sum();
    b2.fact("universe", u4.size() as u64);
    b2.fact("min_alpha", min_alpha as u64);
    b2.fact("alpha_at_most_3", below);
    b2.closed = below == 0 && b2.total as u128 == choose(u4.size(), members);
    cases.push(b2);

    check_cap(choose(u4.size() + members - 1, members), cfg)?;
    let mut b2m = CaseRecord::exhaustive(
        "b=2-repeats",
        "every 10-row multiset of length-4 rows has independence number at least 4",
    )
    .input("members", members as u64)
    .input("length", 4);
    let chunks = sweep_multisets(
        u4.size(),
        members,
        workers(),
        || 0u64,
        |below, s| {
            if clique::clique_at_least(&u4.induced(s).complement(), max_alpha + 1).is_none() {
                *below += 1;
            }
        },
    );
    b2m.visits(&chunks);
    let below: u64 = chunks.iter().map(|c| c.value).sum();
    b2m.fact("alpha_at_most_3", below);
    b2m.closed = below == 0 && b2m.total as u128 == choose(u4.size() + members - 1, members);
    cases.push(b2m);

    cases.push(b3_analytic(members, edge_need)?);

    let u5 = Universe::new(5)?;
    check_cap(choose(u5.size(), members), cfg)?;
    let mut b3 = CaseRecord::exhaustive(
        "b=3-exhaustive",
        "no 10 distinct rows of length 5 have independence number at most 3 and at least 23 collision edges",
    )
    .input("members", members as u64)
    .input("length", 5);
    let chunks = sweep_subsets(
        u5.size(),
        members,
        workers(),
        SweepStats::default,
        |st, s| {
            let h = u5.induced(s);
            let dense = h.m() as u64 >= edge_need;
            let small_alpha = clique::clique_at_least(&h.complement(), max_alpha + 1).is_none();
            st.edges_at_least_23 += u64::from(dense);
            st.alpha_below_4 += u64::from(small_alpha);
            st.both += u64::from(dense && small_alpha);
        },
    );
    b3.visits(&chunks);
    let sum = |f: fn(&SweepStats) -> u64| chunks.iter().map(|c| f(&c.value)).sum::<u64>();
    let both = sum(|s| s.both);
    b3.fact("universe", u5.size() as u64);
    b3.fact("edges_at_least_23", sum(|s| s.edges_at_least_23));
    b3.fact("alpha_at_most_3", sum(|s| s.alpha_below_4));
    b3.fact("violations", both);
    b3.closed = both == 0 && b3.total as u128 == choose(u5.size(), members);
    cases.push(b3);

    Ok(Certificate {
        claim: Claim {
            quantity: "F_inf".into(),
            graph: "M(4)".into(),
            value: 9,
        },
        lower,
        lower_size,
        lower_verified,
        cases,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Length 5 with 10 members: irreducibility forces each of the 10 position
/// pairs to hold the two vertices of exactly one member, so every position is
/// non-blank in exactly 4 members. Four rows at one position give at most
/// 2·2 colliding pairs, hence at most 5·4 = 20 edges. The 2^10 irreducible
/// families (one orientation per pair) are also enumerated to confirm it.
fn b3_analytic(members: usize, edge_need: u64) -> Result<CaseRecord> {
    let length = 5usize;
    let mut rec = CaseRecord::analytic(
        "b=3-analytic",
        "an irreducible 10-member length-5 family has at most 5 * 4 = 20 < 23 collision edges",
    )
    .input("members", members as u64)
    .input("length", length as u64);
    let pairs: Vec<(usize, usize)> = (0..length)
        .flat_map(|i| (i + 1..length).map(move |j| (i, j)))
        .collect();
    let per_position = pairs.iter().filter(|&&(i, j)| i == 0 || j == 0).count();
    let best_split = (0..=per_position)
        .map(|x| x * (per_position - x))
        .max()
        .unwrap_or(0);
    let bound = (length * best_split) as u64;
    rec.fact("position_pairs", pairs.len() as u64);
    rec.fact("nonblank_per_position", per_position as u64);
    rec.fact("max_edges_per_position", best_split as u64);
    rec.fact("edge_bound", bound);

    let m2 = matching(2)?;
    let mut max_seen = 0usize;
    let mut irreducible = 0u64;
    for mask in 0u32..1 << pairs.len() {
        let rows = pairs
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| {
                let (one, two) = if mask >> k & 1 == 0 { (i, j) } else { (j, i) };
                let mut e = vec![None; length];
                e[one] = Some(0);
                e[two] = Some(1);
                BlankedPermutation::new(e)
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Family::new(rows)?;
        if crate::search::mergeable_pair(&f).is_none() {
            irreducible += 1;
        }
        max_seen = max_seen.max(build_collision(&f, &m2)?.edge_count());
    }
    rec.single(1 << pairs.len());
    rec.fact("irreducible_families", irreducible);
    rec.fact("max_edges_observed", max_seen as u64);
    rec.closed = pairs.len() == members
        && bound < edge_need
        && (max_seen as u64) <= bound
        && irreducible == rec.total;
    Ok(rec)
}

/// Outcome of regenerating a certificate and comparing it case by case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recheck {
    pub lower_ok: bool,
    pub cases: Vec<(String, bool)>,
}

impl Recheck {
    pub fn ok(&self) -> bool {
        self.lower_ok && self.cases.iter().all(|(_, ok)| *ok)
    }
}

/// Re-verifies the witness and regenerates every case record.
pub fn recheck(cert: &Certificate, cfg: &SearchConfig) -> Result<Recheck> {
    let (fresh, graph) = match cert.claim.graph.as_str() {
        "M(2)" => (certify_m2_infinity(cfg)?, matching(2)?),
        "M(4)" => (certify_m4_infinity(cfg)?, matching(4)?),
        other => {
            return Err(Error::Precondition(format!(
                "no certificate pipeline for graph {other}"
            )));
        }
    };
    let witness = crate::io::parse_family(&cert.lower)?;
    let lower_ok = witness.size() == cert.claim.value
        && cert.lower_size == cert.claim.value
        && !witness.has_duplicates()
        && verify_pairwise(&witness, &graph)?.is_ok()
        && fresh.claim == cert.claim;
    let cases = fresh
        .cases
        .iter()
        .map(|f| {
            let ok = cert
                .case(&f.id)
                .is_some_and(|c| c.same_outcome(f) && c.closed);
            (f.id.clone(), ok)
        })
        .chain(
            cert.cases
                .iter()
                .filter(|c| fresh.case(&c.id).is_none())
                .map(|c| (c.id.clone(), false)),
        )
        .collect();
    Ok(Recheck { lower_ok, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_certificate() {
        let cert = certify_m2_infinity(&SearchConfig::default()).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.claim.value, 3);
        let c3 = cert.case("c=3").unwrap();
        assert_eq!(c3.total, 15);
        assert_eq!(c3.facts["complete_families"], 0);
        assert_eq!(cert.case("c=2").unwrap().facts["distinct_rows"], 2);
    }

    #[test]
    fn length_five_analytic_case() {
        let rec = b3_analytic(10, 23).unwrap();
        assert!(rec.closed);
        assert_eq!(rec.facts["edge_bound"], 20);
        assert_eq!(rec.facts["nonblank_per_position"], 4);
        assert!(rec.facts["max_edges_observed"] <= 20);
        assert_eq!(rec.facts["irreducible_families"], 1024);
    }

    #[test]
    fn subset_cap_is_enforced() {
        let cfg = SearchConfig {
            cap_subsets: 10,
            ..Default::default()
        };
        assert!(matches!(
            certify_m2_infinity(&cfg),
            Err(Error::CapExceeded { needed: 15, .. })
        ));
    }

    #[test]
    fn tampered_certificate_fails_recheck() {
        let cfg = SearchConfig::default();
        let mut cert = certify_m2_infinity(&cfg).unwrap();
        let fresh = recheck(&cert, &cfg).unwrap();
        assert!(fresh.ok(), "{fresh:?}");
        cert.cases[2].facts.insert("complete_families".into(), 1);
        let r = recheck(&cert, &cfg).unwrap();
        assert!(!r.ok());
        assert_eq!(r.cases.iter().filter(|(_, ok)| !ok).count(), 1);
    }
}

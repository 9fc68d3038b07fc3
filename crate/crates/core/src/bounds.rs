//! Closed-form bounds on `F_b(G)` and `F_∞(G)`, kept as exact integers or
//! rationals, and the consistency report that sets them against computed
//! values.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::construct::{block_sizes, family_delta_peel, layered_family, m2_triple};
use crate::error::{Error, Result};
use crate::graph::{bipartite_complement, find_bipartition, matching, Bipartition, Graph};
use crate::perm::verify_pairwise;
use crate::search::binomial;

/// Largest graph `chromatic_number` accepts.
pub const CHROMATIC_MAX_N: usize = 16;
/// Largest graph for which `bound_report` runs constructions.
pub const CONSTRUCT_MAX_N: usize = 16;

/// Exact chromatic number by backtracking colouring.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > CHROMATIC_MAX_N {
        return Err(Error::CapExceeded {
            what: "vertices for chromatic number",
            needed: n as u128,
            cap: CHROMATIC_MAX_N as u128,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    if g.m() == 0 {
        return Ok(1);
    }
    if find_bipartition(g).is_ok() {
        return Ok(2);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut colour = vec![usize::MAX; n];
    (3..=n)
        .find(|&k| colourable(g, &order, 0, k, &mut colour))
        .ok_or_else(|| Error::Precondition("colouring search exhausted".into()))
}

fn colourable(g: &Graph, order: &[usize], i: usize, k: usize, colour: &mut [usize]) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    let used_max = order[..i]
        .iter()
        .map(|&u| colour[u])
        .max()
        .map_or(0, |c| c + 1);
    for c in 0..k.min(used_max + 1) {
        if g.neighbors(v).iter().all(|u| colour[u] != c) {
            colour[v] = c;
            if colourable(g, order, i + 1, k, colour) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `F_b`: exactly `b` blanks.
    Blanks(usize),
    /// `F_∞`.
    Unlimited,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Blanks(b) => write!(f, "F_{b}"),
            Quantity::Unlimited => f.write_str("F_inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub label: String,
    pub direction: Direction,
    pub quantity: Quantity,
    #[serde(with = "ratio_text")]
    pub value: BigRational,
}

impl BoundEntry {
    fn new(
        label: &str,
        direction: Direction,
        quantity: Quantity,
        value: impl Into<BigRational>,
    ) -> Self {
        BoundEntry {
            label: label.into(),
            direction,
            quantity,
            value: value.into(),
        }
    }

    fn int(label: &str, direction: Direction, quantity: Quantity, value: BigInt) -> Self {
        Self::new(label, direction, quantity, BigRational::from_integer(value))
    }

    /// `F_b` is nondecreasing in `b` and bounded by `F_∞`, so a lower bound
    /// transfers upward and an upper bound downward.
    fn bounds_below(&self, q: Quantity) -> bool {
        self.direction != Direction::Upper && self.quantity <= q
    }

    fn bounds_above(&self, q: Quantity) -> bool {
        self.direction != Direction::Lower && q <= self.quantity
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omitted {
    pub label: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph: String,
    pub entries: Vec<BoundEntry>,
    pub omitted: Vec<Omitted>,
}

impl BoundReport {
    pub fn entry(&self, label: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn max_lower(&self, q: Quantity) -> Option<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.bounds_below(q))
            .max_by(|a, b| a.value.cmp(&b.value))
    }

    pub fn min_upper(&self, q: Quantity) -> Option<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.bounds_above(q))
            .min_by(|a, b| a.value.cmp(&b.value))
    }

    /// Whether `value` for `q` lies within every applicable bound.
    pub fn admits(&self, q: Quantity, value: usize) -> bool {
        let v = BigRational::from_integer(BigInt::from(value));
        self.max_lower(q).is_none_or(|e| e.value <= v)
            && self.min_upper(q).is_none_or(|e| v <= e.value)
    }

    /// Pairs `(lower, upper)` that contradict each other.
    pub fn conflicts(&self) -> Vec<(String, String)> {
        let qs: BTreeSet<Quantity> = self.entries.iter().map(|e| e.quantity).collect();
        let mut out = Vec::new();
        for q in qs {
            if let (Some(lo), Some(hi)) = (self.max_lower(q), self.min_upper(q)) {
                if lo.value > hi.value {
                    out.push((lo.label.clone(), hi.label.clone()));
                }
            }
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.conflicts().is_empty()
    }

    pub fn add_exact(&mut self, q: Quantity, value: usize) {
        self.entries.push(BoundEntry::int(
            "exact",
            Direction::Exact,
            q,
            BigInt::from(value),
        ));
    }

    pub fn add_constructed(&mut self, blanks: usize, size: usize) {
        self.entries.push(BoundEntry::int(
            "constructed_lower",
            Direction::Lower,
            Quantity::Blanks(blanks),
            BigInt::from(size),
        ));
    }

    /// Adds a certified `F_∞` value when the certificate holds.
    pub fn add_certified(&mut self, cert: &Certificate) {
        if cert.holds() {
            self.entries.push(BoundEntry::int(
                "certified_inf",
                Direction::Exact,
                Quantity::Unlimited,
                BigInt::from(cert.claim.value),
            ));
        } else {
            self.omit("certified_inf", "certificate does not hold");
        }
    }

    fn omit(&mut self, label: &str, reason: impl Into<String>) {
        self.omitted.push(Omitted {
            label: label.into(),
            reason: reason.into(),
        });
    }

    /// Plain-text table.
    pub fn table(&self) -> String {
        let mut out = format!("bounds for {}\n", self.graph);
        for e in &self.entries {
            let dir = match e.direction {
                Direction::Lower => ">=",
                Direction::Upper => "<=",
                Direction::Exact => "==",
            };
            out.push_str(&format!(
                "  {:<22} {:>6} {} {}\n",
                e.label,
                e.quantity.to_string(),
                dir,
                e.value
            ));
        }
        for o in &self.omitted {
            out.push_str(&format!("  {:<22} omitted: {}\n", o.label, o.reason));
        }
        out
    }
}

mod ratio_text {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Every closed-form bound that applies to `g`, plus constructions that are
/// cheap at this size. `part` defaults to any valid bipartition.
pub fn bound_report(g: &Graph, part: Option<&Bipartition>) -> BoundReport {
    let n = g.n();
    let mut r = BoundReport {
        graph: format!("n={} m={}", n, g.m()),
        entries: Vec::new(),
        omitted: Vec::new(),
    };
    let zero = Quantity::Blanks(0);

    match chromatic_number(g) {
        Ok(chi) => r.entries.push(BoundEntry::int(
            "chromatic_upper_inf",
            Direction::Upper,
            Quantity::Unlimited,
            BigInt::from(chi).pow(n as u32),
        )),
        Err(e) => r.omit("chromatic_upper_inf", e.to_string()),
    }

    if g.is_perfect_matching() && n > 4 {
        r.entries.push(BoundEntry::int(
            "m4_chain_upper",
            Direction::Upper,
            Quantity::Unlimited,
            BigInt::from(9) * pow2(n - 4),
        ));
    } else {
        r.omit(
            "m4_chain_upper",
            "needs a perfect matching on more than 4 vertices",
        );
    }

    let part = match part {
        Some(p) => p.validate(g).map(|_| p.clone()),
        None => find_bipartition(g),
    };
    let part = match part {
        Ok(p) => p,
        Err(e) => {
            for label in [
                "binomial_upper",
                "delta_lower",
                "delta_lower_weak",
                "blocks_lower",
            ] {
                r.omit(label, e.to_string());
            }
            return r;
        }
    };
    let a = part.left.len();
    r.entries.push(BoundEntry::int(
        "binomial_upper",
        Direction::Upper,
        zero,
        binomial(n, a),
    ));

    let delta = bipartite_complement(g, &part)
        .map(|(_, d)| d)
        .unwrap_or(usize::MAX);
    if n >= 2 * delta && delta <= a && a + delta <= n {
        r.entries.push(BoundEntry::int(
            "delta_lower",
            Direction::Lower,
            zero,
            binomial(n - 2 * delta, a - delta),
        ));
        if a == n / 2 || a == n.div_ceil(2) {
            r.entries.push(BoundEntry::new(
                "delta_lower_weak",
                Direction::Lower,
                zero,
                BigRational::new(binomial(n, n / 2), pow2(2 * delta)),
            ));
        } else {
            r.omit("delta_lower_weak", "needs a balanced bipartition");
        }
        if n <= CONSTRUCT_MAX_N {
            if let Ok(f) = family_delta_peel(g, &part) {
                if verify_pairwise(&f, g).is_ok_and(|v| v.is_ok()) {
                    r.add_constructed(0, f.size());
                }
            }
        }
    } else {
        r.omit(
            "delta_lower",
            format!("needs n >= 2D and D <= a <= n - D; n={n}, a={a}, D={delta}"),
        );
        r.omit("delta_lower_weak", "delta_lower does not apply");
    }

    match blocks_lower(g) {
        Some(v) => r
            .entries
            .push(BoundEntry::int("blocks_lower", Direction::Lower, zero, v)),
        None => r.omit("blocks_lower", "some component is not complete bipartite"),
    }

    if g.is_perfect_matching() && (2..=12).contains(&n) {
        let target = 3usize.pow((n / 2) as u32);
        if let Ok(lay) = layered_family(&m2_triple(), target) {
            let f = lay.family();
            if matching(n).is_ok_and(|m| verify_pairwise(&f, &m).is_ok_and(|v| v.is_ok())) {
                r.add_constructed(f.blanks(), f.size());
            }
        }
    }
    r
}

/// `∏ C(s+t, s)` over components when each is complete bipartite `K_{s,t}`.
fn blocks_lower(g: &Graph) -> Option<BigInt> {
    let mut prod = BigInt::one();
    for comp in g.components() {
        let h = g.induced(&comp);
        let p = find_bipartition(&h).ok()?;
        let (s, t) = (p.left.len(), p.right.len());
        if h.m() != s * t {
            return None;
        }
        prod *= binomial(s + t, s);
    }
    Some(prod)
}

/// `∏ C(n_i, ⌊n_i/2⌋)` over the balanced split of `n` into `k` blocks.
pub fn block_product(n: usize, k: usize) -> Result<BigInt> {
    Ok(block_sizes(n, k)?
        .into_iter()
        .map(|s| binomial(s, s / 2))
        .product())
}

/// Least `k` with `k ≥ n / log₂ n`, i.e. `n^k ≥ 2^n`.
pub fn block_count(n: usize) -> usize {
    let target = pow2(n);
    (1..=n)
        .find(|&k| BigInt::from(n).pow(k as u32) >= target)
        .unwrap_or(n)
}

/// `min_x C(x, ⌊x/2⌋)² · x / 4^x` over the given block sizes: the square of
/// the per-block constant in `C(x, ⌊x/2⌋) ≥ l' · 2^x / √x`.
pub fn block_constant_sq(sizes: &[usize]) -> BigRational {
    sizes
        .iter()
        .map(|&x| BigRational::new(binomial(x, x / 2).pow(2) * BigInt::from(x), pow2(2 * x)))
        .min()
        .unwrap_or_else(BigRational::zero)
}

/// Checks `log₂ P / n ≥ 1 − (k/2n)·log₂(n/k) − |log₂ l'|·k/n` for the block
/// product `P`, squared into integers: `P² (n/k)^k ≥ 4^n (l'²)^k`.
pub fn block_product_inequality(n: usize) -> Result<bool> {
    let k = block_count(n);
    let sizes = block_sizes(n, k)?;
    let p = block_product(n, k)?;
    let l2 = block_constant_sq(&sizes);
    let ratio = BigRational::new(BigInt::from(n), BigInt::from(k));
    let lhs = BigRational::from_integer(p.pow(2)) * ratio.pow(k as i32);
    let rhs = BigRational::from_integer(pow2(2 * n)) * l2.pow(k as i32);
    Ok(lhs >= rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, gna, path};

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&matching(6).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&cycle(3).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(4)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::complete(6)).unwrap(), 6);
        assert!(chromatic_number(&Graph::empty(17)).is_err());
    }

    #[test]
    fn chromatic_matches_brute_force_on_small_graphs() {
        fn brute(g: &Graph) -> usize {
            let n = g.n();
            (1..=n)
                .find(|&k| {
                    (0..k.pow(n as u32)).any(|mut code| {
                        let mut c = vec![0; n];
                        for x in c.iter_mut() {
                            *x = code % k;
                            code /= k;
                        }
                        g.edges().all(|(u, v)| c[u] != c[v])
                    })
                })
                .unwrap_or(0)
        }
        let mut seed = 7u64;
        for _ in 0..60 {
            let mut g = Graph::empty(6);
            for u in 0..6 {
                for v in u + 1..6 {
                    seed = seed
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if seed >> 62 >= 2 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(chromatic_number(&g).unwrap(), brute(&g), "{g:?}");
        }
    }

    #[test]
    fn report_for_gna_with_one_missing_edge() {
        let (g, p) = gna(10, 5).unwrap();
        let r = bound_report(&g, Some(&p));
        assert_eq!(
            r.entry("binomial_upper").unwrap().value,
            BigRational::from_integer(252.into())
        );
        assert_eq!(
            r.entry("delta_lower").unwrap().value,
            BigRational::from_integer(70.into())
        );
        assert!(r.is_consistent());
    }

    #[test]
    fn report_for_delta_two() {
        let (mut g, p) = complete_bipartite(5, 5);
        for i in 0..5 {
            g.remove_edge(i, 5 + i);
            g.remove_edge(i, 5 + (i + 1) % 5);
        }
        let r = bound_report(&g, Some(&p));
        assert_eq!(
            r.entry("delta_lower").unwrap().value,
            BigRational::from_integer(20.into())
        );
        assert_eq!(
            r.entry("binomial_upper").unwrap().value,
            BigRational::from_integer(252.into())
        );
        assert_eq!(
            r.entry("delta_lower_weak").unwrap().value,
            BigRational::new(252.into(), 16.into())
        );
        assert!(r.is_consistent());
    }

    #[test]
    fn report_for_matchings() {
        let r = bound_report(&matching(6).unwrap(), None);
        assert_eq!(
            r.entry("m4_chain_upper").unwrap().value,
            BigRational::from_integer(36.into())
        );
        assert_eq!(
            r.entry("blocks_lower").unwrap().value,
            BigRational::from_integer(8.into())
        );
        let best = r.max_lower(Quantity::Unlimited).unwrap();
        assert_eq!(best.value, BigRational::from_integer(27.into()));
        let r2 = bound_report(&matching(2).unwrap(), None);
        assert_eq!(
            r2.entry("chromatic_upper_inf").unwrap().value,
            BigRational::from_integer(4.into())
        );
        assert!(r2.entry("m4_chain_upper").is_none());
    }

    #[test]
    fn transfer_rules() {
        let mut r = bound_report(&path(3), None);
        assert!(r.admits(Quantity::Blanks(0), 3));
        assert!(!r.admits(Quantity::Blanks(0), 4));
        r.add_exact(Quantity::Blanks(0), 3);
        assert!(r.admits(Quantity::Blanks(2), 5));
        assert!(!r.admits(Quantity::Blanks(2), 2));
        assert!(r.is_consistent());
        r.add_constructed(0, 4);
        assert!(!r.is_consistent());
    }

    #[test]
    fn odd_cycle_omits_bipartite_bounds() {
        let r = bound_report(&cycle(5).unwrap(), None);
        assert!(r.entry("binomial_upper").is_none());
        assert!(r.omitted.iter().any(|o| o.label == "binomial_upper"));
        assert_eq!(
            r.entry("chromatic_upper_inf").unwrap().value,
            BigRational::from_integer(243.into())
        );
    }

    #[test]
    fn weak_delta_bound_never_beats_the_strong_one() {
        for n in 2..=40usize {
            for d in 0..=5usize {
                let a = n / 2;
                if n < 2 * d || a < d {
                    continue;
                }
                let strong = BigRational::from_integer(binomial(n - 2 * d, a - d));
                let weak = BigRational::new(binomial(n, n / 2), pow2(2 * d));
                assert!(strong >= weak, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn block_product_inequality_holds_on_the_tested_range() {
        for n in 8..=24 {
            assert!(block_product_inequality(n).unwrap(), "n={n}");
        }
        assert_eq!(block_count(16), 4);
        assert_eq!(block_product(8, 2).unwrap(), BigInt::from(36));
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = bound_report(&matching(4).unwrap(), None);
        let back: BoundReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}

//! Permutations with blank spaces, families of them, and the graph-different
//! predicate.
//!
//! A [`BlankedPermutation`] is a fixed-length row whose entries are either a
//! vertex or a blank; each vertex of its support appears exactly once. Two rows
//! are `G`-different when some position holds two adjacent vertices. Ordinary
//! permutations are the blank-free case.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// One row entry; `None` is a blank.
pub type Entry = Option<Vertex>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankedPermutation {
    entries: Vec<Entry>,
}

impl BlankedPermutation {
    pub fn new(entries: Vec<Entry>) -> Result<Self> {
        let mut seen: Vec<Vertex> = entries.iter().flatten().copied().collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(w[0]));
        }
        Ok(BlankedPermutation { entries })
    }

    /// Blank-free permutation listing `vertices` in order.
    pub fn from_vertices(vertices: &[Vertex]) -> Result<Self> {
        Self::new(vertices.iter().map(|&v| Some(v)).collect())
    }

    /// All-blank row of the given length.
    pub fn blank(len: usize) -> Self {
        BlankedPermutation {
            entries: vec![None; len],
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn blanks(&self) -> usize {
        self.entries.iter().filter(|e| e.is_none()).count()
    }

    /// Sorted vertex set.
    pub fn support(&self) -> Vec<Vertex> {
        let mut s: Vec<Vertex> = self.entries.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    }

    /// Position of `v`, if present.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.entries.iter().position(|&e| e == Some(v))
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        Self::new(self.entries.iter().map(|e| e.map(&f)).collect())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BlankedPermutation) -> Result<Self> {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(entries)
    }

    /// `v` followed by `self`.
    pub(crate) fn prepend(&self, v: Vertex) -> Self {
        let mut entries = Vec::with_capacity(self.len() + 1);
        entries.push(Some(v));
        entries.extend_from_slice(&self.entries);
        BlankedPermutation { entries }
    }
}

impl fmt::Display for BlankedPermutation {
    /// Family-file row: 1-indexed vertices, `*` for blanks.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match e {
                Some(v) => write!(f, "{}", v + 1)?,
                None => f.write_str("*")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BlankedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Least position at which `p` and `q` hold adjacent vertices of `g`.
pub fn is_g_different(
    p: &BlankedPermutation,
    q: &BlankedPermutation,
    g: &Graph,
) -> Result<Option<usize>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    Ok(first_collision(p, q, g))
}

#[inline]
pub(crate) fn first_collision(
    p: &BlankedPermutation,
    q: &BlankedPermutation,
    g: &Graph,
) -> Option<usize> {
    p.entries
        .iter()
        .zip(&q.entries)
        .position(|(a, b)| matches!((a, b), (Some(u), Some(v)) if g.has_edge(*u, *v)))
}

/// Ordered list of equal-length rows over a common support.
///
/// Members are distinct unless the family was built with
/// [`Family::indexed`], which keeps index alignment with a source family
/// (projections, column merges, repeated seed patterns).
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    members: Vec<BlankedPermutation>,
    support: Vec<Vertex>,
    length: usize,
    duplicates_allowed: bool,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.members).finish()
    }
}

impl Family {
    /// Family of pairwise distinct members.
    pub fn new(members: Vec<BlankedPermutation>) -> Result<Self> {
        let fam = Self::build(members, false)?;
        let mut order: Vec<usize> = (0..fam.members.len()).collect();
        order.sort_by(|&a, &b| fam.members[a].cmp(&fam.members[b]).then(a.cmp(&b)));
        if let Some(w) = order
            .windows(2)
            .find(|w| fam.members[w[0]] == fam.members[w[1]])
        {
            return Err(Error::DuplicateMember(w[0].min(w[1]), w[0].max(w[1])));
        }
        Ok(fam)
    }

    /// Family whose members may repeat.
    pub fn indexed(members: Vec<BlankedPermutation>) -> Result<Self> {
        Self::build(members, true)
    }

    fn build(members: Vec<BlankedPermutation>, duplicates_allowed: bool) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        let support = first.support();
        let length = first.len();
        for (index, m) in members.iter().enumerate().skip(1) {
            if m.len() != length || m.support() != support {
                return Err(Error::SupportMismatch { index });
            }
        }
        Ok(Family {
            members,
            support,
            length,
            duplicates_allowed,
        })
    }

    pub fn members(&self) -> &[BlankedPermutation] {
        &self.members
    }

    pub fn into_members(self) -> Vec<BlankedPermutation> {
        self.members
    }

    /// Member count.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Common row length.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn support(&self) -> &[Vertex] {
        &self.support
    }

    pub fn blanks(&self) -> usize {
        self.length - self.support.len()
    }

    pub fn allows_duplicates(&self) -> bool {
        self.duplicates_allowed
    }

    pub fn has_duplicates(&self) -> bool {
        let mut sorted: Vec<&BlankedPermutation> = self.members.iter().collect();
        sorted.sort();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// Renames support vertices through `f`, which must be injective on the support.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| m.map_vertices(&f))
            .collect::<Result<Vec<_>>>()?;
        Self::build(members, self.duplicates_allowed)
    }

    /// Adds `offset` to every vertex id.
    pub fn shift(&self, offset: usize) -> Result<Self> {
        self.relabel(|v| v + offset)
    }

    /// Members sorted lexicographically; used to compare families up to order.
    pub fn canonical(&self) -> Vec<BlankedPermutation> {
        let mut m = self.members.clone();
        m.sort();
        m
    }

    pub(crate) fn check_support_in(&self, g: &Graph) -> Result<()> {
        match self.support.iter().find(|&&v| v >= g.n()) {
            Some(&v) => Err(Error::SupportOutsideGraph(v)),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// Lexicographically least pair of member indices that are not `G`-different.
    Fails(usize, usize),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

/// Checks that every pair of members is `g`-different.
pub fn verify_pairwise(f: &Family, g: &Graph) -> Result<Verdict> {
    f.check_support_in(g)?;
    let m = f.members();
    let fail = (0..m.len()).into_par_iter().find_map_first(|i| {
        (i + 1..m.len())
            .find(|&j| first_collision(&m[i], &m[j], g).is_none())
            .map(|j| (i, j))
    });
    Ok(match fail {
        Some((i, j)) => Verdict::Fails(i, j),
        None => Verdict::Ok,
    })
}

/// Replaces every entry outside `keep` by a blank, preserving member order.
pub fn project_family(f: &Family, keep: &[Vertex]) -> Result<Family> {
    if let Some(&v) = keep.iter().find(|v| !f.support().contains(v)) {
        return Err(Error::Precondition(format!(
            "projection keeps vertex {} outside the support",
            v + 1
        )));
    }
    let members = f
        .members()
        .iter()
        .map(|m| BlankedPermutation {
            entries: m
                .entries
                .iter()
                .map(|e| e.filter(|v| keep.contains(v)))
                .collect(),
        })
        .collect();
    Family::indexed(members)
}

/// Product family: member `(i, j)` is `f1[i]` followed by `f2[j]`, row-major.
pub fn concat_families(f1: &Family, f2: &Family) -> Result<Family> {
    let overlap: Vec<Vertex> = f1
        .support()
        .iter()
        .filter(|v| f2.support().contains(v))
        .copied()
        .collect();
    if !overlap.is_empty() {
        return Err(Error::OverlappingSupports(overlap));
    }
    let mut members = Vec::with_capacity(f1.size() * f2.size());
    for p in f1.members() {
        for q in f2.members() {
            members.push(p.concat(q)?);
        }
    }
    if f1.allows_duplicates() || f2.allows_duplicates() {
        Family::indexed(members)
    } else {
        Family::new(members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{matching, Graph};

    /// Parses a compact row like "12*" with 1-indexed single-digit vertices.
    pub(crate) fn row(s: &str) -> BlankedPermutation {
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
    fn single_edge_swap_collides_at_first_position() {
        let g = matching(2).unwrap();
        assert_eq!(is_g_different(&row("12"), &row("21"), &g).unwrap(), Some(0));
    }

    #[test]
    fn three_vertex_graph_collision_position() {
        // vertices 1,2,3 with edge {1,2}
        let h = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            is_g_different(&row("123"), &row("312"), &h).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn a_row_never_differs_from_itself() {
        let g = Graph::complete(4);
        for r in ["1234", "4*31*2", "****"] {
            assert_eq!(is_g_different(&row(r), &row(r), &g).unwrap(), None);
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let g = matching(2).unwrap();
        assert!(matches!(
            is_g_different(&row("12"), &row("12*"), &g),
            Err(Error::LengthMismatch(2, 3))
        ));
    }

    #[test]
    fn repeated_vertex_rejected() {
        assert!(matches!(
            BlankedPermutation::new(vec![Some(0), None, Some(0)]),
            Err(Error::RepeatedVertex(0))
        ));
    }

    #[test]
    fn family_invariants() {
        assert!(matches!(Family::new(vec![]), Err(Error::EmptyFamily)));
        assert!(matches!(
            Family::new(vec![row("12"), row("21"), row("12")]),
            Err(Error::DuplicateMember(0, 2))
        ));
        assert!(matches!(
            Family::new(vec![row("12"), row("12*")]),
            Err(Error::SupportMismatch { index: 1 })
        ));
        assert!(matches!(
            Family::new(vec![row("12"), row("13")]),
            Err(Error::SupportMismatch { index: 1 })
        ));
        let f = Family::indexed(vec![row("12"), row("12")]).unwrap();
        assert!(f.has_duplicates());
    }

    #[test]
    fn verify_triple_on_single_edge() {
        let g = matching(2).unwrap();
        let f = family(&["12*", "*12", "2*1"]);
        assert_eq!(verify_pairwise(&f, &g).unwrap(), Verdict::Ok);
        assert_eq!(f.blanks(), 1);
    }

    #[test]
    fn verify_reports_least_failing_pair() {
        let f = family(&["12", "21"]);
        assert_eq!(
            verify_pairwise(&f, &Graph::empty(2)).unwrap(),
            Verdict::Fails(0, 1)
        );
        let g = matching(2).unwrap();
        let f = family(&["12**", "*12*", "**12", "21**"]);
        assert_eq!(verify_pairwise(&f, &g).unwrap(), Verdict::Fails(0, 2));
        let f = family(&["12*", "2*1", "*12", "21*"]);
        assert_eq!(verify_pairwise(&f, &g).unwrap(), Verdict::Fails(1, 3));
    }

    #[test]
    fn verify_rejects_support_outside_graph() {
        let f = family(&["13", "31"]);
        assert!(matches!(
            verify_pairwise(&f, &matching(2).unwrap()),
            Err(Error::SupportOutsideGraph(2))
        ));
    }

    #[test]
    fn projection_cases() {
        let f = family(&["12*34", "3412*"]);
        let p = project_family(&f, &[0, 1]).unwrap();
        assert_eq!(p.members(), &[row("12***"), row("**12*")]);
        assert_eq!(p.support(), &[0, 1]);
        assert_eq!(
            project_family(&f, f.support()).unwrap().members(),
            f.members()
        );
        let empty = project_family(&f, &[]).unwrap();
        assert!(empty.members().iter().all(|m| m.blanks() == 5));
        assert_eq!(empty.size(), 2);
        assert!(project_family(&f, &[7]).is_err());
    }

    #[test]
    fn concat_sizes_and_order() {
        let f1 = family(&["12*", "*12", "2*1"]);
        let f2 = f1.shift(2).unwrap();
        let p = concat_families(&f1, &f2).unwrap();
        assert_eq!((p.size(), p.length()), (9, 6));
        assert_eq!(p.members()[1], row("12**34"));
        assert_eq!(p.members()[3], row("*1234*"));
        assert!(verify_pairwise(&p, &matching(4).unwrap()).unwrap().is_ok());

        let single = family(&["3"]);
        let q = concat_families(&family(&["12", "21"]), &single).unwrap();
        assert_eq!(q.members(), &[row("123"), row("213")]);

        let five = Family::new(
            (0..5)
                .map(|k| {
                    let mut e = vec![None; 5];
                    e[k] = Some(2);
                    BlankedPermutation::new(e).unwrap()
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(
            concat_families(&family(&["12", "21"]), &five)
                .unwrap()
                .size(),
            10
        );
        assert!(matches!(
            concat_families(&f1, &f1),
            Err(Error::OverlappingSupports(_))
        ));
    }
}

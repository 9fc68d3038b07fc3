//! The report object shared by the command-line tool and the examples, named
//! constructions, and the reproduction tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::BoundReport;
use crate::certificate::{certify_m2_infinity, certify_m4_infinity, Certificate};
use crate::clique;
use crate::collision::build_collision;
use crate::construct::{
    blocks_graph, edge_placements, family_blocks, family_complete_bipartite, family_delta_peel,
    family_gna, layered_family, m2_triple, m4_nine,
};
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite, find_bipartition, gna, matching, Graph};
use crate::io::{format_dimacs, format_family};
use crate::perm::{verify_pairwise, Family, Verdict};
use crate::search::{binomial, SearchConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn cell(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, v) in widths.iter_mut().zip(row) {
                *w = (*w).max(Self::cell(v).len());
            }
        }
        let line = |cells: Vec<String>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(f, "{}", line(self.columns.clone()))?;
        for row in &self.rows {
            writeln!(f, "{}", line(row.iter().map(Self::cell).collect()))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    /// Whether every claim the command checks held.
    pub ok: bool,
    pub value: Option<usize>,
    /// Family-file payload.
    pub family: Option<String>,
    /// DIMACS payload of the graph the family was checked against.
    pub graph: Option<String>,
    pub certificate: Option<Certificate>,
    pub bounds: Option<BoundReport>,
    pub table: Option<Table>,
    pub message: Option<String>,
    pub elapsed_ms: u64,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            ok: true,
            value: None,
            family: None,
            graph: None,
            certificate: None,
            bounds: None,
            table: None,
            message: None,
            elapsed_ms: 0,
            version: VERSION.into(),
        }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.inputs.insert(key.into(), json!(v));
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Human-readable rendering.
    pub fn text(&self) -> String {
        let mut out = format!(
            "{}: {}\n",
            self.command,
            if self.ok { "ok" } else { "FAILED" }
        );
        if let Some(v) = self.value {
            out.push_str(&format!("value: {v}\n"));
        }
        if let Some(m) = &self.message {
            out.push_str(m);
            out.push('\n');
        }
        if let Some(c) = &self.certificate {
            out.push_str(&format!(
                "certificate: {} of {} = {} ({} ms), witness of size {} verified: {}\n",
                c.claim.quantity,
                c.claim.graph,
                c.claim.value,
                c.elapsed_ms,
                c.lower_size,
                c.lower_verified
            ));
            let mut t = Table::new(&["case", "method", "total", "closed", "facts"]);
            for case in &c.cases {
                let facts: Vec<String> =
                    case.facts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                t.rows.push(vec![
                    json!(case.id),
                    json!(format!("{:?}", case.method).to_lowercase()),
                    json!(case.total),
                    json!(case.closed),
                    json!(facts.join(" ")),
                ]);
            }
            out.push_str(&t.to_string());
        }
        if let Some(t) = &self.table {
            out.push_str(&t.to_string());
        }
        if let Some(b) = &self.bounds {
            out.push_str(&b.table());
        }
        out
    }
}

/// Single-edge seeds for the layered construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    Triple,
    /// All rows of length `c` over one edge.
    Ac(usize),
}

impl FromStr for Seed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "triple" {
            return Ok(Seed::Triple);
        }
        s.strip_prefix("ac")
            .and_then(|c| c.parse().ok())
            .map(Seed::Ac)
            .ok_or_else(|| {
                Error::Precondition(format!("unknown seed `{s}` (use `triple` or `ac<c>`)"))
            })
    }
}

impl Seed {
    pub fn family(self) -> Result<Family> {
        match self {
            Seed::Triple => Ok(m2_triple()),
            Seed::Ac(c) => edge_placements(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Gna {
        n: usize,
        a: usize,
    },
    /// Needs a graph from the caller.
    DeltaPeel,
    Blocks {
        n: usize,
        k: usize,
    },
    M2Triple,
    Ac {
        c: usize,
    },
    Layered {
        seed: Seed,
        target: usize,
    },
    M4Nine,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::CompleteBipartite { a, b } => write!(f, "complete-bipartite a={a} b={b}"),
            Construction::Gna { n, a } => write!(f, "gna n={n} a={a}"),
            Construction::DeltaPeel => f.write_str("delta-peel"),
            Construction::Blocks { n, k } => write!(f, "blocks n={n} k={k}"),
            Construction::M2Triple => f.write_str("m2-triple"),
            Construction::Ac { c } => write!(f, "ac c={c}"),
            Construction::Layered { seed, target } => write!(f, "layered seed={seed:?} p={target}"),
            Construction::M4Nine => f.write_str("m4-nine"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Built {
    pub family: Family,
    pub graph: Graph,
    pub verdict: Verdict,
    pub header: Vec<String>,
}

impl Built {
    pub fn family_text(&self) -> String {
        format_family(&self.family, &self.header)
    }
}

/// Builds a construction and verifies it against its canonical graph, or
/// against `graph` for the peel construction.
pub fn build_construction(c: &Construction, graph: Option<&Graph>) -> Result<Built> {
    let (family, g) = match *c {
        Construction::CompleteBipartite { a, b } => {
            (family_complete_bipartite(a, b), complete_bipartite(a, b).0)
        }
        Construction::Gna { n, a } => (family_gna(n, a)?, gna(n, a)?.0),
        Construction::DeltaPeel => {
            let g = graph
                .ok_or_else(|| Error::Precondition("delta-peel needs a graph".into()))?
                .clone();
            let part = find_bipartition(&g)?;
            (family_delta_peel(&g, &part)?, g)
        }
        Construction::Blocks { n, k } => (family_blocks(n, k)?, blocks_graph(n, k)?.0),
        Construction::M2Triple => (m2_triple(), matching(2)?),
        Construction::Ac { c } => (edge_placements(c)?, matching(2)?),
        Construction::Layered { seed, target } => {
            let lay = layered_family(&seed.family()?, target)?;
            let l = lay.plan.pattern_length;
            (lay.family(), matching(l)?)
        }
        Construction::M4Nine => (m4_nine(), matching(4)?),
    };
    let verdict = verify_pairwise(&family, &g)?;
    let header = vec![
        format!("construction {c}"),
        format!(
            "members {} length {} blanks {}",
            family.size(),
            family.length(),
            family.blanks()
        ),
    ];
    Ok(Built {
        family,
        graph: g,
        verdict,
        header,
    })
}

/// `|family_gna(n, a)|` against `C(n, a)` for `3 ≤ n ≤ max_n`, `0 < a < n`.
pub fn gna_table(max_n: usize) -> Result<(Table, bool)> {
    let mut t = Table::new(&["n", "a", "members", "binomial", "verified"]);
    let mut ok = true;
    for n in 3..=max_n {
        for a in 1..n {
            let f = family_gna(n, a)?;
            let verified = verify_pairwise(&f, &gna(n, a)?.0)?.is_ok();
            let expect = binomial(n, a);
            ok &= verified && num_bigint::BigInt::from(f.size()) == expect;
            t.rows.push(vec![
                json!(n),
                json!(a),
                json!(f.size()),
                json!(expect.to_string()),
                json!(verified),
            ]);
        }
    }
    Ok((t, ok))
}

/// Exact `α` of the single-edge universe at length `c` against `⌊c/2⌋⌈c/2⌉`.
pub fn ac_table(max_c: usize) -> Result<(Table, bool)> {
    let m2 = matching(2)?;
    let mut t = Table::new(&["c", "members", "alpha", "floor*ceil", "ratio"]);
    let mut ok = true;
    for c in 2..=max_c {
        let f = edge_placements(c)?;
        let h = build_collision(&f, &m2)?;
        let alpha = clique::max_clique(h.complement()).size;
        let formula = (c / 2) * c.div_ceil(2);
        ok &= alpha == formula;
        t.rows.push(vec![
            json!(c),
            json!(f.size()),
            json!(alpha),
            json!(formula),
            json!(format!("{alpha}/{}", f.size())),
        ]);
    }
    Ok((t, ok))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    M2Inf,
    M4Inf,
    GnaTable,
    AcTable,
    All,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "m2-inf" => Target::M2Inf,
            "m4-inf" => Target::M4Inf,
            "gna-table" => Target::GnaTable,
            "ac-table" => Target::AcTable,
            "all" => Target::All,
            _ => return Err(Error::Precondition(format!("unknown target `{s}`"))),
        })
    }
}

fn certificate_report(name: &str, cert: Certificate) -> Report {
    let mut r = Report::new("reproduce").input("target", name);
    r.ok = cert.holds();
    r.value = Some(cert.claim.value);
    r.family = Some(cert.lower.clone());
    let g = if cert.claim.graph == "M(2)" {
        matching(2)
    } else {
        matching(4)
    };
    r.graph = g
        .ok()
        .map(|g| format_dimacs(&g, std::slice::from_ref(&cert.claim.graph)));
    r.certificate = Some(cert);
    r
}

/// Regenerates one result, or all of them.
pub fn reproduce(target: Target, cfg: &SearchConfig) -> Result<Vec<Report>> {
    let start = Instant::now();
    Ok(match target {
        Target::M2Inf => vec![certificate_report("m2-inf", certify_m2_infinity(cfg)?).timed(start)],
        Target::M4Inf => vec![certificate_report("m4-inf", certify_m4_infinity(cfg)?).timed(start)],
        Target::GnaTable => {
            let (t, ok) = gna_table(10)?;
            let mut r = Report::new("reproduce").input("target", "gna-table");
            r.ok = ok;
            r.table = Some(t);
            vec![r.timed(start)]
        }
        Target::AcTable => {
            let (t, ok) = ac_table(8)?;
            let mut r = Report::new("reproduce").input("target", "ac-table");
            r.ok = ok;
            r.table = Some(t);
            vec![r.timed(start)]
        }
        Target::All => {
            let mut all = Vec::new();
            for t in [
                Target::M2Inf,
                Target::M4Inf,
                Target::GnaTable,
                Target::AcTable,
            ] {
                all.extend(reproduce(t, cfg)?);
            }
            all
        }
    })
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use permdiff::bounds::{bound_report, Quantity};
use permdiff::certificate::recheck;
use permdiff::collision::build_collision;
use permdiff::graph::{gen_graph, GraphKind};
use permdiff::io::{
    format_collision, format_dimacs, format_family, read_family, read_graph, write_text,
};
use permdiff::report::{build_construction, reproduce, Construction, Report, Seed, Target};
use permdiff::search::{exact_f_b, SearchConfig};
use permdiff::{construct, sample, Error, Verdict};

#[derive(Parser)]
#[command(
    name = "permdiff",
    version,
    about = "Pairwise G-different permutation families"
)]
struct Cli {
    /// Print the report object as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "PERMDIFF_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 720)]
    cap_perms: u128,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_subsets: u128,
    /// Output file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as DIMACS.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Build a named family, verify it, and write it.
    Construct {
        #[command(subcommand)]
        name: ConstructName,
    },
    /// Check that a family is pairwise different on a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Export the collision graph of a family as DIMACS.
    Collision {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Exact value of F (or F_b with --blanks).
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        blanks: usize,
    },
    /// Regenerate a published value or table.
    Reproduce {
        /// m2-inf, m4-inf, gna-table, ac-table or all.
        target: String,
    },
    /// Closed-form bounds for a graph.
    Bounds {
        #[arg(long)]
        graph: PathBuf,
        /// Also compute the exact blank-free value when within the caps.
        #[arg(long)]
        exact: bool,
    },
    /// Re-verify the certificate inside a JSON report.
    CheckCertificate {
        #[arg(long)]
        report: PathBuf,
    },
    /// Run the seeded random invariant suites.
    Props {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Divide every suite's case count by this factor.
        #[arg(long, default_value_t = 1)]
        scale_down: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    CompleteBipartite { a: usize, b: usize },
    Gna { n: usize, a: usize },
    Matching { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Blocks { n: usize, k: usize },
}

#[derive(Subcommand)]
enum ConstructName {
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Gna {
        n: usize,
        a: usize,
    },
    DeltaPeel {
        #[arg(long)]
        graph: PathBuf,
    },
    Blocks {
        n: usize,
        k: usize,
    },
    M2Triple,
    Ac {
        c: usize,
    },
    Layered {
        /// `triple` or `ac<c>`.
        seed: String,
        p: usize,
    },
    M4Nine,
}

enum Failure {
    Claim(Box<Report>),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::Io(_) | Error::Parse { .. } | Error::Json(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool configured once");
    }
    match run(&cli) {
        Ok(reports) => {
            emit(&cli, &reports);
            ExitCode::SUCCESS
        }
        Err(Failure::Claim(report)) => {
            emit(&cli, std::slice::from_ref(&*report));
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(cli: &Cli, reports: &[Report]) {
    if cli.json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(reports)
        };
        println!("{}", text.expect("reports serialize"));
    } else {
        for r in reports {
            print!("{}", r.text());
        }
    }
}

fn finish(report: Report, start: Instant) -> Result<Vec<Report>, Failure> {
    let report = report.timed(start);
    if report.ok {
        Ok(vec![report])
    } else {
        Err(Failure::Claim(Box::new(report)))
    }
}

fn write_out(cli: &Cli, text: &str) -> Result<(), Failure> {
    if let Some(path) = &cli.out {
        write_text(path, text)?;
    }
    Ok(())
}

fn name_of(path: &Path) -> String {
    path.display().to_string()
}

fn run(cli: &Cli) -> Result<Vec<Report>, Failure> {
    let start = Instant::now();
    let cfg = SearchConfig {
        cap_perms: cli.cap_perms,
        cap_subsets: cli.cap_subsets,
    };
    match &cli.command {
        Command::Gen { kind } => {
            let (label, g) = match *kind {
                GenKind::CompleteBipartite { a, b } => (
                    format!("complete-bipartite {a} {b}"),
                    gen_graph(GraphKind::CompleteBipartite(a, b))?.0,
                ),
                GenKind::Gna { n, a } => {
                    (format!("gna {n} {a}"), gen_graph(GraphKind::Gna(n, a))?.0)
                }
                GenKind::Matching { n } => (
                    format!("matching {n}"),
                    gen_graph(GraphKind::Matching(n))?.0,
                ),
                GenKind::Path { n } => (format!("path {n}"), gen_graph(GraphKind::Path(n))?.0),
                GenKind::Cycle { n } => (format!("cycle {n}"), gen_graph(GraphKind::Cycle(n))?.0),
                GenKind::Blocks { n, k } => {
                    (format!("blocks {n} {k}"), construct::blocks_graph(n, k)?.0)
                }
            };
            let text = format_dimacs(&g, std::slice::from_ref(&label));
            write_out(cli, &text)?;
            let mut r = Report::new("gen").input("kind", &label);
            r.graph = Some(text.clone());
            r.message = Some(format!("{label}: {} vertices, {} edges", g.n(), g.m()));
            if cli.out.is_none() && !cli.json {
                print!("{text}");
                return Ok(Vec::new());
            }
            finish(r, start)
        }
        Command::Construct { name } => {
            let mut graph = None;
            let c = match name {
                ConstructName::CompleteBipartite { a, b } => {
                    Construction::CompleteBipartite { a: *a, b: *b }
                }
                ConstructName::Gna { n, a } => Construction::Gna { n: *n, a: *a },
                ConstructName::DeltaPeel { graph: path } => {
                    graph = Some(read_graph(path)?);
                    Construction::DeltaPeel
                }
                ConstructName::Blocks { n, k } => Construction::Blocks { n: *n, k: *k },
                ConstructName::M2Triple => Construction::M2Triple,
                ConstructName::Ac { c } => Construction::Ac { c: *c },
                ConstructName::Layered { seed, p } => Construction::Layered {
                    seed: seed.parse::<Seed>()?,
                    target: *p,
                },
                ConstructName::M4Nine => Construction::M4Nine,
            };
            let built = build_construction(&c, graph.as_ref())?;
            let text = built.family_text();
            write_out(cli, &text)?;
            let mut r = Report::new("construct").input("construction", c.to_string());
            r.value = Some(built.family.size());
            r.graph = Some(format_dimacs(&built.graph, &[]));
            r.family = Some(text.clone());
            // single-edge universes are not meant to be pairwise different
            let expect_ok = !matches!(c, Construction::Ac { .. });
            r.ok = built.verdict.is_ok() == expect_ok;
            r.message = Some(format!(
                "{c}: {} members, verdict {}",
                built.family.size(),
                verdict_text(&built.verdict)
            ));
            if cli.out.is_none() && !cli.json && r.ok {
                print!("{text}");
                eprintln!("{}", r.message.as_deref().unwrap_or_default());
                return Ok(Vec::new());
            }
            finish(r, start)
        }
        Command::Verify { graph, family } => {
            let g = read_graph(graph)?;
            let f = read_family(family)?;
            let verdict = permdiff::perm::verify_pairwise(&f, &g)?;
            let mut r = Report::new("verify")
                .input("graph", name_of(graph))
                .input("family", name_of(family));
            r.ok = verdict.is_ok();
            r.value = Some(f.size());
            r.message = Some(verdict_text(&verdict));
            finish(r, start)
        }
        Command::Collision { graph, family } => {
            let g = read_graph(graph)?;
            let f = read_family(family)?;
            let h = build_collision(&f, &g)?.with_family_ref(name_of(family));
            let text = format_collision(&h);
            write_out(cli, &text)?;
            let mut r = Report::new("collision")
                .input("graph", name_of(graph))
                .input("family", name_of(family));
            r.value = Some(h.edge_count());
            r.message = Some(format!(
                "{} members, {} collision edges, clique number {}, independence number {}",
                h.size(),
                h.edge_count(),
                h.clique_number().size,
                h.independence_number().size
            ));
            r.graph = Some(text);
            finish(r, start)
        }
        Command::Search { graph, blanks } => {
            let g = read_graph(graph)?;
            let ev = exact_f_b(&g, *blanks, &cfg)?;
            let text = format_family(&ev.witness, &[format!("exact witness blanks={blanks}")]);
            write_out(cli, &text)?;
            let mut r = Report::new("search")
                .input("graph", name_of(graph))
                .input("blanks", blanks);
            r.value = Some(ev.value);
            r.family = Some(text);
            r.message = Some(format!("{} rows enumerated", ev.candidates));
            finish(r, start)
        }
        Command::Reproduce { target } => {
            let reports = reproduce(target.parse::<Target>()?, &cfg)?;
            if let Some(bad) = reports.iter().find(|r| !r.ok) {
                return Err(Failure::Claim(Box::new(bad.clone())));
            }
            Ok(reports)
        }
        Command::Bounds { graph, exact } => {
            let g = read_graph(graph)?;
            let mut b = bound_report(&g, None);
            b.graph = name_of(graph);
            let mut r = Report::new("bounds").input("graph", name_of(graph));
            if *exact {
                let ev = exact_f_b(&g, 0, &cfg)?;
                b.add_exact(Quantity::Blanks(0), ev.value);
                r.value = Some(ev.value);
            }
            r.ok = b.is_consistent();
            r.bounds = Some(b);
            finish(r, start)
        }
        Command::CheckCertificate { report } => {
            let text = std::fs::read_to_string(report).map_err(Error::from)?;
            let parsed: Report = serde_json::from_str(&text).map_err(Error::from)?;
            let cert = parsed
                .certificate
                .ok_or_else(|| Error::Precondition("report carries no certificate".into()))?;
            let check = recheck(&cert, &cfg)?;
            let mut r = Report::new("check-certificate").input("report", name_of(report));
            r.ok = check.ok() && cert.holds();
            r.value = Some(cert.claim.value);
            let bad: Vec<&str> = check
                .cases
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(id, _)| id.as_str())
                .collect();
            r.message = Some(if bad.is_empty() && check.lower_ok {
                format!("{} cases reproduced", check.cases.len())
            } else {
                format!(
                    "witness ok: {}; mismatched cases: {}",
                    check.lower_ok,
                    bad.join(", ")
                )
            });
            finish(r, start)
        }
        Command::Props { seed, scale_down } => {
            let d = (*scale_down).max(1);
            let suites = [
                sample::independence_bound(*seed, 1000 / d, 10, 40)?,
                sample::subgraph_monotonicity(*seed, 200 / d, 5)?,
                sample::product_property(*seed, 100 / d)?,
                sample::merge_containment(*seed, 500 / d)?,
                sample::delta_peel(*seed, 100 / d, 12, 2)?,
            ];
            let mut t = permdiff::report::Table::new(&["suite", "cases", "violations"]);
            for s in &suites {
                t.rows
                    .push(vec![s.name.into(), s.cases.into(), s.violations.into()]);
            }
            let mut r = Report::new("props").input("seed", seed);
            r.ok = suites.iter().all(|s| s.passed());
            r.message = suites.iter().find_map(|s| s.first_violation.clone());
            r.table = Some(t);
            finish(r, start)
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Ok => "ok".into(),
        Verdict::Fails(i, j) => format!("fails: members {} and {} are not different", i + 1, j + 1),
    }
}

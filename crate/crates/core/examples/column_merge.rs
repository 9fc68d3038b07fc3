//! Column merging and full reduction of single-edge families, with the
//! averaging lower bound on the independence number.

use permdiff::collision::build_collision;
use permdiff::graph::matching;
use permdiff::io::parse_family;
use permdiff::search::{m2_independence_bound, merge_columns_step, reduce_family, MergeOutcome};

fn main() -> permdiff::Result<()> {
    let m2 = matching(2)?;
    let f = parse_family("1 2 * *\n2 1 * *\n1 * * 2\n")?;
    if let MergeOutcome::Reduced { family, pair } = merge_columns_step(&f)? {
        println!("merged positions {pair:?}: {family:?}");
    }
    let r = reduce_family(&f)?;
    println!("fully reduced after {:?}: {:?}", r.steps, r.family);
    let (before, after) = (build_collision(&f, &m2)?, build_collision(&r.family, &m2)?);
    println!(
        "collision edges {} -> {}",
        before.edge_count(),
        after.edge_count()
    );

    let b = m2_independence_bound(&f)?;
    println!(
        "alpha >= {} (bound {}), exact {}",
        b.implied,
        b.bound,
        before.independence_number().size
    );
    Ok(())
}

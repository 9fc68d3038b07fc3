//! Checks families for pairwise difference and reports the first failing pair.

use permdiff::graph::matching;
use permdiff::io::parse_family;
use permdiff::perm::{is_g_different, verify_pairwise};

fn main() -> permdiff::Result<()> {
    let m2 = matching(2)?;
    let good = parse_family("1 2 *\n* 1 2\n2 * 1\n")?;
    println!("triple: {:?}", verify_pairwise(&good, &m2)?);

    let bad = parse_family("1 2 * *\n* 1 2 *\n* * 1 2\n2 1 * *\n")?;
    println!("staircase: {:?}", verify_pairwise(&bad, &m2)?);

    let (p, q) = (&bad.members()[0], &bad.members()[3]);
    println!(
        "{p} vs {q}: differ at position {:?}",
        is_g_different(p, q, &m2)?
    );
    Ok(())
}

//! Runs the seeded invariant suites at a small scale.

use permdiff::sample;

fn main() -> permdiff::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    for s in [
        sample::independence_bound(seed, 100, 10, 40)?,
        sample::subgraph_monotonicity(seed, 20, 5)?,
        sample::product_property(seed, 10)?,
        sample::merge_containment(seed, 50)?,
        sample::delta_peel(seed, 10, 12, 2)?,
    ] {
        println!(
            "{:<32} cases {:>4}  violations {}",
            s.name, s.cases, s.violations
        );
    }
    Ok(())
}

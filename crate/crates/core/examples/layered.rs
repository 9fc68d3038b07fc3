//! The layered construction: independence numbers shrink by the seed ratio
//! with every added edge until the family is pairwise different.

use permdiff::collision::build_collision;
use permdiff::construct::{edge_placements, layered_family, m2_triple};
use permdiff::graph::matching;

fn main() -> permdiff::Result<()> {
    for (name, seed, p) in [
        ("triple", m2_triple(), 27),
        ("A_4", edge_placements(4)?, 12),
    ] {
        let lay = layered_family(&seed, p)?;
        println!(
            "seed {name}, p={p}: P={} l={} ratio {}",
            lay.plan.total, lay.plan.pattern_length, lay.plan.ratio
        );
        for k in (2..=lay.plan.pattern_length).step_by(2) {
            let f = lay.prefix(k).expect("even k");
            let alpha = build_collision(&f, &matching(k)?)?
                .independence_number()
                .size;
            println!(
                "  k={k}: alpha {alpha}, predicted {}",
                lay.plan.predicted_alpha(k)
            );
        }
    }
    Ok(())
}

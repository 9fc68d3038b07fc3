//! Bound reports for a few graphs, checked against exact values.

use permdiff::bounds::{block_product_inequality, bound_report, chromatic_number, Quantity};
use permdiff::graph::{cycle, gna, matching};
use permdiff::search::{exact_f, SearchConfig};

fn main() -> permdiff::Result<()> {
    let (g, part) = gna(10, 5)?;
    print!("{}", bound_report(&g, Some(&part)).table());

    let m4 = matching(4)?;
    let mut r = bound_report(&m4, None);
    r.add_exact(
        Quantity::Blanks(0),
        exact_f(&m4, &SearchConfig::default())?.value,
    );
    println!("M(4) consistent: {}", r.is_consistent());

    let r6 = bound_report(&matching(6)?, None);
    println!(
        "M(6): best lower {} vs chain upper {}",
        r6.max_lower(Quantity::Unlimited)
            .map(|e| e.value.to_string())
            .unwrap_or_default(),
        r6.entry("m4_chain_upper")
            .map(|e| e.value.to_string())
            .unwrap_or_default()
    );
    println!("chi(C5) = {}", chromatic_number(&cycle(5)?)?);
    for n in [8, 16, 24] {
        println!(
            "block product inequality at n={n}: {}",
            block_product_inequality(n)?
        );
    }
    Ok(())
}

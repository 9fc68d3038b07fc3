//! The blank-free constructions: complete bipartite, one missing matching,
//! bounded missing degree, and disjoint balanced blocks.

use permdiff::construct::{
    blocks_graph, family_blocks, family_complete_bipartite, family_delta_peel, family_gna,
};
use permdiff::graph::{complete_bipartite, gna, matching, matching_bipartition};
use permdiff::perm::verify_pairwise;
use permdiff::search::binomial;

fn main() -> permdiff::Result<()> {
    let f = family_complete_bipartite(2, 3);
    println!(
        "K(2,3): {} members, {:?}",
        f.size(),
        verify_pairwise(&f, &complete_bipartite(2, 3).0)?
    );

    for n in 3..=8 {
        let sizes: Vec<String> = (1..n)
            .map(|a| Ok(format!("{}", family_gna(n, a)?.size())))
            .collect::<permdiff::Result<_>>()?;
        println!("G({n}, a) for a=1..{}: {}", n - 1, sizes.join(" "));
    }
    let (g, _) = gna(7, 3)?;
    println!(
        "G(7,3) verified: {:?}",
        verify_pairwise(&family_gna(7, 3)?, &g)?
    );

    let m8 = matching(8)?;
    let peel = family_delta_peel(&m8, &matching_bipartition(8))?;
    println!(
        "peel on M(8): {} members (guarantee {})",
        peel.size(),
        binomial(2, 1)
    );

    let (b, _) = blocks_graph(8, 2)?;
    let fb = family_blocks(8, 2)?;
    println!(
        "two K(2,2) blocks: {} members, {:?}",
        fb.size(),
        verify_pairwise(&fb, &b)?
    );
    Ok(())
}

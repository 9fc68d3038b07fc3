//! Collision graphs of the single-edge universes and their clique and
//! independence numbers.

use permdiff::collision::build_collision_traced;
use permdiff::construct::edge_placements;
use permdiff::graph::matching;
use permdiff::io::format_collision;

fn main() -> permdiff::Result<()> {
    let m2 = matching(2)?;
    for c in 2..=6 {
        let f = edge_placements(c)?;
        let h = build_collision_traced(&f, &m2)?;
        let alpha = h.independence_number();
        println!(
            "c={c}: {} members, {} edges, omega {}, alpha {} (witness {:?})",
            h.size(),
            h.edge_count(),
            h.clique_number().size,
            alpha.size,
            alpha.vertices
        );
    }
    let h = build_collision_traced(&edge_placements(3)?, &m2)?.with_family_ref("a3.fam");
    println!("edge (1,3) collides at position {:?}", h.origin(0, 2));
    print!("{}", format_collision(&h));
    Ok(())
}

//! Generates the standard graph families, finds bipartitions, and prints
//! DIMACS text.

use permdiff::graph::{bipartite_complement, cycle, find_bipartition, gna, matching, path};
use permdiff::io::{format_dimacs, parse_dimacs};

fn main() -> permdiff::Result<()> {
    let (g, part) = gna(6, 3)?;
    let (_, delta) = bipartite_complement(&g, &part)?;
    println!(
        "G(6,3): {} edges, left {:?}, complement max degree {delta}",
        g.m(),
        part.left
    );

    let m4 = matching(4)?;
    let (g42, _) = gna(4, 2)?;
    println!("G(4,2) has {} edges, M(4) has {}", g42.m(), m4.m());

    let text = format_dimacs(&path(4), &["path on 4 vertices".into()]);
    print!("{text}");
    assert_eq!(parse_dimacs(&text)?, path(4));

    match find_bipartition(&cycle(5)?) {
        Ok(_) => println!("C5 is bipartite?"),
        Err(e) => println!("C5: {e}"),
    }
    Ok(())
}

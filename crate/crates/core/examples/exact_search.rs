//! Exact values by enumeration and maximum clique search.

use permdiff::graph::{complete_bipartite, matching, path};
use permdiff::search::{exact_f, exact_f_b, SearchConfig};

fn main() -> permdiff::Result<()> {
    let cfg = SearchConfig::default();
    println!(
        "F(K22) = {}",
        exact_f(&complete_bipartite(2, 2).0, &cfg)?.value
    );
    println!(
        "F(K23) = {}",
        exact_f(&complete_bipartite(2, 3).0, &cfg)?.value
    );
    println!("F(P3)  = {}", exact_f(&path(3), &cfg)?.value);
    println!("F(M4)  = {}", exact_f(&matching(4)?, &cfg)?.value);
    let m2 = exact_f_b(&matching(2)?, 1, &cfg)?;
    println!("F_1(M2) = {}, witness {:?}", m2.value, m2.witness);
    let m4 = exact_f_b(&matching(4)?, 2, &cfg)?;
    println!("F_2(M4) = {} over {} rows", m4.value, m4.candidates);
    match exact_f_b(&matching(4)?, 3, &cfg) {
        Err(e) => println!("F_3(M4): {e}"),
        Ok(v) => println!("F_3(M4) = {}", v.value),
    }
    Ok(())
}

//! Builds both unlimited-blank certificates and prints their case records.

use permdiff::certificate::{certify_m2_infinity, certify_m4_infinity, recheck};
use permdiff::search::SearchConfig;

fn main() -> permdiff::Result<()> {
    let cfg = SearchConfig::default();
    for cert in [certify_m2_infinity(&cfg)?, certify_m4_infinity(&cfg)?] {
        println!(
            "{} of {} = {}  holds={}  ({} ms)",
            cert.claim.quantity,
            cert.claim.graph,
            cert.claim.value,
            cert.holds(),
            cert.elapsed_ms
        );
        for case in &cert.cases {
            println!(
                "  {:<16} {:?} closed={} total={} facts={:?}",
                case.id, case.method, case.closed, case.total, case.facts
            );
        }
        println!("  recheck ok: {}", recheck(&cert, &cfg)?.ok());
    }
    Ok(())
}

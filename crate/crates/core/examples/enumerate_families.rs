//! Exhaustive enumeration of every family over small prime fields.
//!
//! Run with `cargo run --release --example enumerate_families`.

use std::time::Instant;

use ulrich::classify::{enumerate_family, family_catalog, EnumerationOptions};
use ulrich::Field;

fn main() -> ulrich::Result<()> {
    for fam in family_catalog() {
        for p in [2, 3, 5] {
            let field = Field::prime(p)?;
            if !fam.characteristic.admits(field) {
                continue;
            }
            let start = Instant::now();
            let cert = match enumerate_family(&fam, field, EnumerationOptions { budget: 5_000, workers: None }) {
                Ok(c) => c,
                Err(e) => {
                    println!("{} over {field}: {e}", fam.id);
                    continue;
                }
            };
            println!(
                "{} over {field}: {} tuples, {} Ulrich, agree={}, distinct={} ({:.2?})",
                fam.id,
                cert.total_candidates,
                cert.ulrich_tuples.len(),
                cert.agree,
                cert.distinct_ideals,
                start.elapsed()
            );
        }
        println!("  {}", fam.citation);
    }
    Ok(())
}

//! Writes an enumeration certificate as JSON and CSV, the same files the
//! `ulrich enumerate` command produces.
//!
//! `cargo run --example certificate_export -- /tmp/out`

use std::fs::File;
use std::path::PathBuf;

use ulrich::classify::{enumerate_family, family, EnumerationOptions, FamilyId};
use ulrich::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let cert = enumerate_family(&family(FamilyId::F4), Field::prime(2)?, EnumerationOptions::default())?;
    let json = dir.join("f4-f2.json");
    serde_json::to_writer_pretty(File::create(&json)?, &cert)?;
    let csv = dir.join("f4-f2.csv");
    cert.write_csv(File::create(&csv)?)?;
    println!("{} Ulrich of {} tuples", cert.ulrich_tuples.len(), cert.total_candidates);
    for t in &cert.ulrich_tuples {
        let shown: Vec<String> = t.iter().map(ToString::to_string).collect();
        println!("  ({})", shown.join(", "));
    }
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(())
}

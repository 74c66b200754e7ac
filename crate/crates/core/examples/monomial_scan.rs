//! Candidate pairs (a, b) and the monomial ideals (t^a, t^b) among them that
//! are Ulrich.

use ulrich::classify::monomial_scan;
use ulrich::ulrich::candidate_pairs;
use ulrich::{Field, NumericalSemigroup};

fn main() -> ulrich::Result<()> {
    for lit in ["<5,11>", "<5,6,9>", "<3,5>", "<4,6,9>"] {
        let h: NumericalSemigroup = lit.parse()?;
        let pairs: Vec<(usize, usize)> = candidate_pairs(&h).iter().map(|p| (p.a, p.b)).collect();
        println!("{h}: candidate pairs {pairs:?}");
        for field in [Field::prime(2)?, Field::prime(3)?, Field::Rationals] {
            println!("  monomial Ulrich over {field}: {:?}", monomial_scan(&h, field)?);
        }
    }
    Ok(())
}

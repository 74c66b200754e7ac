//! Exact truncated power series over Q and F_p.

use ulrich::{Field, TruncatedSeries};

fn main() -> ulrich::Result<()> {
    for field in [Field::Rationals, Field::prime(2)?, Field::prime(3)?] {
        let n = 60;
        let f = TruncatedSeries::from_int_terms(field, n, &[(20, 1), (21, 1), (22, 1), (27, 1)])?;
        let g = TruncatedSeries::monomial(field, n, 26);
        let xi = g.divide(&f)?;
        let q = g.mul(&g)?.divide(&f)?;
        println!("over {field}:");
        println!("  g/f   = {}", xi.truncate(16));
        println!("  g^2/f = {}", q.truncate(45));
        println!("  o(g^2/f) = {:?}, precision {}", q.order(), q.precision());
    }
    Ok(())
}

//! The blow-up A + A g/f of an Ulrich ideal of type (20, 26) over <5,11>.

use ulrich::ulrich::blowup_analyze;
use ulrich::{Field, NumericalSemigroup, RingContext};

fn main() -> ulrich::Result<()> {
    let h = NumericalSemigroup::new(&[5, 11])?;
    let ctx = RingContext::new(h.clone(), Field::prime(3)?, RingContext::default_precision(&h, 26))?;
    let f = ctx.poly(&[(20, 1), (22, 1)])?;
    let g = ctx.poly(&[(26, 1), (27, 1), (33, 1)])?;
    let b = blowup_analyze(&ctx, &f, &g)?;
    println!("xi = g/f = {}", b.xi.truncate(20));
    println!("v(B) = {} (symmetric: {})", b.value_semigroup, b.value_semigroup.is_symmetric());
    for (s, m) in &b.monomial_membership {
        println!("  t^{s} in B: {m}");
    }
    println!("B is a semigroup ring: {}", b.is_semigroup_ring);

    let h569 = NumericalSemigroup::new(&[5, 6, 9])?;
    let ctx = RingContext::new(h569.clone(), Field::prime(5)?, RingContext::default_precision(&h569, 9))?;
    let b = blowup_analyze(&ctx, &ctx.monomial(6), &ctx.monomial(9))?;
    println!("blow-up of (t^6, t^9) in k[[{h569}]]: v(B) = {}", b.value_semigroup);
    Ok(())
}

//! Canonical bases, value sets and colengths of ideals of k[[H]].

use ulrich::{Field, IdealBasis, NumericalSemigroup, RingContext};

fn main() -> ulrich::Result<()> {
    let h = NumericalSemigroup::new(&[5, 11])?;
    let ctx = RingContext::new(h.clone(), Field::prime(3)?, RingContext::default_precision(&h, 27))?;

    // Redundant generators are absorbed; the basis only depends on the ideal.
    let f = ctx.poly(&[(10, 1), (11, 1), (16, 2), (22, 1)])?;
    let g = ctx.poly(&[(27, 1), (32, 1)])?;
    let i = IdealBasis::from_generators(&ctx, &[f.clone(), g])?;
    println!("I = {i}");
    println!("v(I) below {}: {:?}", i.stable_from(), i.value_set().range(..i.stable_from()).collect::<Vec<_>>());
    println!("colength {}", i.colength());
    let (fs, gs) = i.canonical_generators()?;
    println!("canonical generators: f* = {fs}, g* = {gs}");

    let sq = i.product(&i)?;
    println!("I^2 = f I: {}", sq == i.scale(&f)?);
    println!("(f):g* = I: {}", IdealBasis::colon_principal(&ctx, &fs, &gs)? == i);
    Ok(())
}

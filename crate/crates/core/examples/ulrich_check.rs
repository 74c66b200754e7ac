//! The ideal (t^20 + t^21 + t^22 + t^27, t^26) of k[[t^5, t^11]] is Ulrich
//! exactly in characteristic 2.

use ulrich::ulrich::ulrich_check;
use ulrich::{Field, NumericalSemigroup, RingContext};

fn main() -> ulrich::Result<()> {
    let h = NumericalSemigroup::new(&[5, 11])?;
    for field in [Field::prime(2)?, Field::prime(3)?, Field::prime(5)?, Field::Rationals] {
        let ctx = RingContext::new(h.clone(), field, RingContext::default_precision(&h, 26))?;
        let f = ctx.poly(&[(20, 1), (21, 1), (22, 1), (27, 1)])?;
        let g = ctx.monomial(26);
        let r = ulrich_check(&ctx, &f, &g)?;
        print!("{field}: verdict {}, a = {}, b = {:?}, colength {}", r.verdict, r.a, r.b, r.colength);
        if let Some(o) = &r.square_obstruction {
            print!(", fails {:?}: {} at t^{}", r.checks.failing(), o.coefficient, o.exponent);
        }
        println!();
    }
    Ok(())
}

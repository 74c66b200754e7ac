//! Basic invariants of numerical semigroups.

use ulrich::NumericalSemigroup;

fn main() -> ulrich::Result<()> {
    for lit in ["<5,11>", "<5,6,9>", "<5,6>", "<5,6,13>", "<5,6,14>", "<5,6,19>", "<5,6,13,14>"] {
        let h: NumericalSemigroup = lit.parse()?;
        println!(
            "{h}: multiplicity {}, conductor {}, Frobenius {}, genus {}, symmetric {}",
            h.multiplicity(),
            h.conductor(),
            h.frobenius(),
            h.genus(),
            h.is_symmetric()
        );
    }
    let h = NumericalSemigroup::new(&[5, 11])?;
    println!("gaps of {h}: {:?}", h.gaps());
    println!("Apery set of {h} w.r.t. 5: {:?}", h.apery(5)?);
    Ok(())
}

//! Explicit certificates `g^2 = f^2 φ + f g ψ` for the `(20, 26)` families
//! over `<5,11>`, checked modulo `t^{a+c}`.

use rand::rngs::StdRng;
use rand::SeedableRng;
use ulrich::classify::{family, FamilyId};
use ulrich::ulrich::{witness_check, witness_construct, witness_residual, Params2026};
use ulrich::{Field, RingContext};

fn params(p: &[ulrich::Scalar]) -> Params2026 {
    Params2026 {
        alpha: p[0].clone(),
        beta: p[1].clone(),
        gamma: p[2].clone(),
        delta: p[3].clone(),
        epsilon: p[4].clone(),
        tau: p[5].clone(),
    }
}

fn main() -> ulrich::Result<()> {
    let mut rng = StdRng::seed_from_u64(2026);
    for (id, field) in [
        (FamilyId::F4, Field::prime(2)?),
        (FamilyId::F5, Field::prime(3)?),
        (FamilyId::F5, Field::prime(7)?),
        (FamilyId::F5, Field::Rationals),
    ] {
        let fam = family(id);
        let ctx = RingContext::new(fam.ring.clone(), field, fam.precision())?;
        for _ in 0..3 {
            let p = params(&fam.sample_member(field, &mut rng)?);
            let (f, g) = p.generators(&ctx)?;
            let (phi, psi) = witness_construct(&ctx, &p)?;
            let r = witness_residual(&ctx, &f, &g, &phi, &psi)?;
            println!("{id} over {field}");
            println!("  f   = {f}\n  g   = {g}");
            println!("  phi = {phi}\n  psi = {psi}");
            println!(
                "  residual order {:?}, holds mod t^{}: {}",
                r.order(),
                20 + ctx.conductor(),
                witness_check(&ctx, &f, &g, &phi, &psi)?
            );
        }
    }
    Ok(())
}

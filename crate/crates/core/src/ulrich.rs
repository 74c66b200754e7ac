//! Verification of two-generated Ulrich ideals in dimension one.
//!
//! For `I = (f, g)` with `o(f) < o(g)` the ideal is Ulrich iff `I != (f)`,
//! `I^2 = f I` and `I/(f)` is free over `A/I`; since `I/(f)` is cyclic on `g`
//! the last condition reads `(f) : g = I`, or equivalently
//! `o(f) = 2 l_A(A/I)`. All four conditions are evaluated independently and
//! reported; the verdict is their conjunction.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::echelon::Echelon;
use crate::error::{Error, Result};
use crate::numsgp::NumericalSemigroup;
use crate::scalar::{Field, Scalar};
use crate::series::{Order, TruncatedSeries};
use crate::sgring::{IdealBasis, RingContext};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UlrichChecks {
    pub not_principal: bool,
    #[serde(rename = "square_equals_fI")]
    pub square_equals_f_i: bool,
    #[serde(rename = "colon_equals_I")]
    pub colon_equals_i: bool,
    pub length_consistent: bool,
}

impl UlrichChecks {
    pub fn all(&self) -> bool {
        self.not_principal && self.square_equals_f_i && self.colon_equals_i && self.length_consistent
    }

    /// Names of the checks that failed, in evaluation order.
    pub fn failing(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.not_principal {
            out.push("not_principal");
        }
        if !self.square_equals_f_i {
            out.push("square_equals_fI");
        }
        if !self.colon_equals_i {
            out.push("colon_equals_I");
        }
        if !self.length_consistent {
            out.push("length_consistent");
        }
        out
    }
}

/// Where `g^2 / f` first leaves `I`: either at a gap of `H` (the quotient is
/// not even in `A`) or at a value missing from `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub exponent: usize,
    pub coefficient: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    NotInRing,
    NotInIdeal,
}

#[derive(Clone, Debug, Serialize)]
pub struct UlrichReport {
    pub verdict: bool,
    /// Order of the reduction `f`.
    pub a: usize,
    /// Least value of `I` not in `a + H`; absent for principal ideals.
    pub b: Option<usize>,
    pub colength: usize,
    pub checks: UlrichChecks,
    pub canonical_generators: Option<(TruncatedSeries, TruncatedSeries)>,
    pub square_obstruction: Option<Obstruction>,
    pub precision: usize,
    #[serde(skip)]
    pub ideal: IdealBasis,
}

fn order_of(s: &TruncatedSeries) -> Result<usize> {
    match s.order() {
        Order::Finite(a) => Ok(a),
        Order::AtLeast(n) => Err(Error::ZeroSeries(n)),
    }
}

/// Puts the generators in the shape `o(f) < o(g)`, eliminating the leading
/// term of `g` when both orders agree. `g` comes back zero if it was a
/// scalar multiple of `f` to leading order and vanished after elimination.
pub fn normalize_pair(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let a = order_of(f)?;
    let b = order_of(g)?;
    let (f, g) = if b < a { (g.clone(), f.clone()) } else { (f.clone(), g.clone()) };
    let (a, b) = (a.min(b), a.max(b));
    if a != b {
        return Ok((f, g));
    }
    let c = g.coeff(b) / f.coeff(a);
    let g = g.sub(&f.scale(&c)?)?;
    Ok((f, g))
}

fn square_obstruction(ideal: &IdealBasis, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Option<Obstruction>> {
    let ctx = ideal.context();
    let q = g.mul(g)?.divide(f)?;
    let h = ctx.semigroup();
    if let Some((e, c)) = q.terms().find(|(e, _)| !h.contains_usize(*e)) {
        return Ok(Some(Obstruction {
            kind: ObstructionKind::NotInRing,
            exponent: e,
            coefficient: c.clone(),
        }));
    }
    if q.precision() < ideal.stable_from() {
        return Ok(None);
    }
    let r = ideal.reduce(&q)?;
    let first = r.terms().next().map(|(e, c)| Obstruction {
        kind: ObstructionKind::NotInIdeal,
        exponent: e,
        coefficient: c.clone(),
    });
    Ok(first)
}

/// Runs the Ulrich verifier on `I = (f, g)`.
pub fn ulrich_check(ctx: &RingContext, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<UlrichReport> {
    let (f, g) = normalize_pair(f, g)?;
    let gens: Vec<TruncatedSeries> = if g.is_zero() { vec![f.clone()] } else { vec![f.clone(), g.clone()] };
    let ideal = IdealBasis::from_generators(ctx, &gens)?;
    let a = ideal.min_value();
    let f_star = ideal.element_at(a).expect("least value");
    let principal = IdealBasis::from_generators(ctx, std::slice::from_ref(&f_star))?;
    let colength = ideal.colength();

    let not_principal = principal != ideal;
    let square_equals_f_i = ideal.product(&ideal)? == ideal.scale(&f_star)?;
    let colon_equals_i = !g.is_zero() && IdealBasis::colon_principal(ctx, &f_star, &g)? == ideal;
    let length_consistent = a == 2 * colength;
    let checks = UlrichChecks {
        not_principal,
        square_equals_f_i,
        colon_equals_i,
        length_consistent,
    };

    let h = ctx.semigroup();
    let b = ideal
        .value_set()
        .into_iter()
        .find(|&v| v > a && !h.contains((v - a) as i64));
    let canonical_generators = ideal.canonical_generators().ok();
    let square_obstruction = if square_equals_f_i || g.is_zero() {
        None
    } else {
        square_obstruction(&ideal, &f, &g)?
    };
    Ok(UlrichReport {
        verdict: checks.all(),
        a,
        b,
        colength,
        checks,
        canonical_generators,
        square_obstruction,
        precision: ctx.precision(),
        ideal,
    })
}

/// A pair `(a, b)` surviving the necessary conditions on the orders of the
/// distinguished generators of a two-generated Ulrich ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidatePair {
    pub a: usize,
    pub b: usize,
    /// `|H ∩ [0, a)|`, a lower bound for `l_A(A/I)`.
    pub lower_bound: usize,
    /// Members of `H` outside `(a+H) ∪ (b+H) ∪ (2b-a+H) ∪ {h >= c-(b-a)}`,
    /// the only places where `A/I` can have basis monomials.
    pub free_members: Vec<usize>,
    /// Whether `a/2 <= |free_members|`.
    pub counting_feasible: bool,
}

/// Pairs `(a, b)` with `a, b ∈ H`, `a` even, `0 < a < b < a + c`,
/// `b - a ∉ H`, `2b - a ∈ H`, `a < c` unless the multiplicity is 2 (then
/// `a <= c`), and `|H ∩ [0, a)| <= a/2`. Every pair realized by a
/// two-generated Ulrich ideal is in the output; the converse is not claimed.
pub fn candidate_pairs(h: &NumericalSemigroup) -> Vec<CandidatePair> {
    let c = h.conductor() as usize;
    let max_a = if h.multiplicity() == 2 { c } else { c.saturating_sub(1) };
    let mut out = Vec::new();
    for a in (1..=max_a).filter(|&a| a % 2 == 0 && h.contains_usize(a)) {
        let lower_bound = h.members_below(a).count();
        if lower_bound > a / 2 {
            continue;
        }
        for b in (a + 1..a + c).filter(|&b| h.contains_usize(b)) {
            if h.contains_usize(b - a) || !h.contains_usize(2 * b - a) {
                continue;
            }
            let tail = c - (b - a);
            let shifted = |base: usize, x: usize| x >= base && h.contains_usize(x - base);
            let free_members: Vec<usize> = h
                .members_below(tail)
                .filter(|&x| !shifted(a, x) && !shifted(b, x) && !shifted(2 * b - a, x))
                .collect();
            out.push(CandidatePair {
                a,
                b,
                lower_bound,
                counting_feasible: a / 2 <= free_members.len(),
                free_members,
            });
        }
    }
    out
}

/// The pairs of [`candidate_pairs`] that also pass the counting bound
/// `a/2 <= |H \ forced values|`.
pub fn refined_candidate_pairs(h: &NumericalSemigroup) -> Vec<CandidatePair> {
    candidate_pairs(h).into_iter().filter(|p| p.counting_feasible).collect()
}

/// The blow-up `B = A + A ξ`, `ξ = g/f`, of a two-generated Ulrich ideal.
#[derive(Clone, Debug, Serialize)]
pub struct BlowupAnalysis {
    pub xi: TruncatedSeries,
    pub value_semigroup: NumericalSemigroup,
    /// For each member `s` of `v(B)` below its conductor: is `t^s ∈ B`?
    pub monomial_membership: Vec<(usize, bool)>,
    pub is_semigroup_ring: bool,
}

impl BlowupAnalysis {
    pub fn contains_monomial(&self, s: usize) -> Option<bool> {
        if s as u64 >= self.value_semigroup.conductor() {
            return Some(self.value_semigroup.contains(s as i64));
        }
        self.monomial_membership.iter().find(|(e, _)| *e == s).map(|(_, m)| *m)
    }
}

pub fn blowup_analyze(ctx: &RingContext, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<BlowupAnalysis> {
    let (f, g) = normalize_pair(f, g)?;
    let xi = g.divide(&f)?;
    let c = ctx.conductor();
    if xi.precision() < c {
        return Err(Error::PrecisionMismatch(c, xi.precision()));
    }
    let d = order_of(&xi)?;
    // B contains A, hence t^c V; work modulo t^c.
    let mut ech = Echelon::new(ctx.field(), c);
    for h in ctx.members_below(c) {
        let mut v = ech.zero_vec();
        v[h] = ctx.field().one();
        ech.insert(v);
    }
    for h in ctx.members_below(c.saturating_sub(d)) {
        ech.insert(xi.shift(h).coeffs()[..c].to_vec());
    }
    ech.fully_reduce();

    let in_b = |s: &TruncatedSeries| {
        let mut v = s.coeffs()[..c].to_vec();
        ech.reduce(&mut v);
        v.iter().all(Scalar::is_zero)
    };
    if !in_b(&xi.mul(&xi)?) {
        return Err(Error::BlowupNotClosed);
    }
    let values: BTreeSet<usize> = ech.pivots().collect();
    let value_semigroup = NumericalSemigroup::from_members(c as u64, |n| values.contains(&(n as usize)))?;
    let cb = value_semigroup.conductor() as usize;
    let monomial_membership: Vec<(usize, bool)> = value_semigroup
        .members_below(cb)
        .map(|s| (s, in_b(&TruncatedSeries::monomial(ctx.field(), xi.precision(), s))))
        .collect();
    let is_semigroup_ring = monomial_membership.iter().all(|(_, m)| *m);
    Ok(BlowupAnalysis {
        xi,
        value_semigroup,
        monomial_membership,
        is_semigroup_ring,
    })
}

/// Order of `g^2 - f^2 φ - f g ψ`.
pub fn witness_residual(
    ctx: &RingContext,
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    phi: &TruncatedSeries,
    psi: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    for s in [f, g, phi, psi] {
        if !ctx.is_element(s) {
            let e = s
                .terms()
                .map(|(e, _)| e)
                .find(|&e| !ctx.semigroup().contains_usize(e))
                .unwrap_or(0);
            return Err(Error::NotInRing(e));
        }
    }
    let lhs = g.mul(g)?;
    let rhs = f.mul(f)?.mul(phi)?.add(&f.mul(g)?.mul(psi)?)?;
    lhs.sub(&rhs)
}

/// True iff `g^2 ≡ f^2 φ + f g ψ` modulo `t^{o(f) + c}`, which puts `g^2` in
/// `f I` as soon as the conductor ideal lies in `I`.
pub fn witness_check(
    ctx: &RingContext,
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    phi: &TruncatedSeries,
    psi: &TruncatedSeries,
) -> Result<bool> {
    let a = order_of(f)?;
    let bound = a + ctx.conductor();
    let r = witness_residual(ctx, f, g, phi, psi)?;
    if r.precision() < bound {
        return Err(Error::PrecisionMismatch(bound, r.precision()));
    }
    Ok(match r.order() {
        Order::Finite(o) => o >= bound,
        Order::AtLeast(_) => true,
    })
}

/// Coefficients of the `(20, 26)` normal form over `<5, 11>`:
/// `f = t^20 + α t^21 + β t^22 + γ t^27 + δ t^33`,
/// `g = t^26 + ε t^27 + τ t^33`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params2026 {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
    pub epsilon: Scalar,
    pub tau: Scalar,
}

impl Params2026 {
    pub fn field(&self) -> Field {
        self.alpha.field()
    }

    pub fn generators(&self, ctx: &RingContext) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let one = ctx.field().one();
        let f = ctx.poly_scalar(&[
            (20, one.clone()),
            (21, self.alpha.clone()),
            (22, self.beta.clone()),
            (27, self.gamma.clone()),
            (33, self.delta.clone()),
        ])?;
        let g = ctx.poly_scalar(&[(26, one), (27, self.epsilon.clone()), (33, self.tau.clone())])?;
        Ok((f, g))
    }
}

/// The explicit `(φ, ψ)` with `g^2 ≡ f^2 φ + f g ψ` for a member of the
/// `(20, 26)` family. In characteristic 2 the family is
/// `ε = 0, α ≠ 0, β = α², γ = α⁷`; otherwise `ε ≠ α, 3ε = 2α,
/// β = α² − 2ε², γ = 2τ − (55/128) ε⁷`.
pub fn witness_construct(ctx: &RingContext, p: &Params2026) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let k = ctx.field();
    let r = |n: i64, d: i64| k.from_ratio(n, d);
    let outside = |why: &str| Error::OutsideFamily(why.to_string());
    let (alpha, beta, gamma, eps, tau) = (&p.alpha, &p.beta, &p.gamma, &p.epsilon, &p.tau);
    if k.characteristic() == 2 {
        if !eps.is_zero() {
            return Err(outside("epsilon must vanish in characteristic 2"));
        }
        if alpha.is_zero() {
            return Err(outside("alpha must be nonzero"));
        }
        if *beta != alpha.pow(2) || *gamma != alpha.pow(7) {
            return Err(outside("need beta = alpha^2 and gamma = alpha^7"));
        }
        let inv = alpha.inv()?;
        let tau_a3 = tau / &alpha.pow(3);
        let phi = ctx.poly_scalar(&[(11, inv.clone()), (15, alpha.pow(3)), (16, tau_a3.clone())])?;
        let psi_11 = &(tau + &alpha.pow(7)) / &alpha.pow(2);
        let psi = ctx.poly_scalar(&[(5, inv), (10, tau_a3), (11, psi_11)])?;
        return Ok((phi, psi));
    }
    if eps == alpha {
        return Err(outside("need epsilon != alpha"));
    }
    if &k.from_i64(3) * eps != &k.from_i64(2) * alpha {
        return Err(outside("need 3 epsilon = 2 alpha"));
    }
    if *beta != &alpha.pow(2) - &(&k.from_i64(2) * &eps.pow(2)) {
        return Err(outside("need beta = alpha^2 - 2 epsilon^2"));
    }
    if *gamma != &(&k.from_i64(2) * tau) - &(&r(55, 128)? * &eps.pow(7)) {
        return Err(outside("need gamma = 2 tau - 55/128 epsilon^7"));
    }
    let e = eps;
    let tau_e3 = &(&k.from_i64(8) * tau) / &e.pow(3);
    let phi = ctx.poly_scalar(&[
        (11, &k.from_i64(2) / e),
        (15, -&(&r(1, 8)? * &e.pow(3))),
        (16, &tau_e3 - &(&r(57, 8)? * &e.pow(4))),
        (20, &(e * tau) + &(&r(17, 128)? * &e.pow(8))),
    ])?;
    let psi = ctx.poly_scalar(&[
        (5, -&(&k.from_i64(2) / e)),
        (10, &(&r(15, 2)? * &e.pow(4)) - &tau_e3),
        (11, &(&r(95, 32)? * &e.pow(5)) - &(&(&k.from_i64(4) * tau) / &e.pow(2))),
    ])?;
    Ok((phi, psi))
}

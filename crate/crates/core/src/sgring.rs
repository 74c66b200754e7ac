//! The semigroup ring `A = k[[H]]` inside `V = k[[t]]`, and its ideals.
//!
//! An ideal is stored through its image modulo `t^N`. Because `A` contains
//! `t^c V` (`c` the conductor), an ideal containing an element of order `m`
//! contains `t^{m+c} V`; once `m + c <= N` the image modulo `t^N` determines
//! the ideal exactly. The image is kept as a fully reduced echelon basis whose
//! pivots are the value set `v(I)`. Beyond `stable_from` every member of `H`
//! is a pivot and the corresponding basis elements are plain monomials, so
//! only the rows below `stable_from` are stored.

use std::collections::BTreeSet;
use std::fmt;

use crate::echelon::Echelon;
use crate::error::{Error, Result};
use crate::numsgp::NumericalSemigroup;
use crate::scalar::{Field, Scalar};
use crate::series::{Order, TruncatedSeries};

/// The ring `k[[H]]` modulo `t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    semigroup: NumericalSemigroup,
    field: Field,
    precision: usize,
}

impl RingContext {
    pub fn new(semigroup: NumericalSemigroup, field: Field, precision: usize) -> Result<Self> {
        let conductor = semigroup.conductor() as usize;
        if precision <= 2 * conductor {
            return Err(Error::PrecisionTooSmall {
                precision,
                conductor,
            });
        }
        Ok(RingContext {
            semigroup,
            field,
            precision,
        })
    }

    /// Precision `2 (c + b) + 1` for generators of order up to `b`.
    pub fn default_precision(semigroup: &NumericalSemigroup, max_order: usize) -> usize {
        2 * (semigroup.conductor() as usize + max_order) + 1
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn conductor(&self) -> usize {
        self.semigroup.conductor() as usize
    }

    pub fn with_precision(&self, precision: usize) -> Result<Self> {
        RingContext::new(self.semigroup.clone(), self.field, precision)
    }

    pub fn monomial(&self, exp: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(self.field, self.precision, exp)
    }

    /// A polynomial with integer coefficients, at the context precision.
    pub fn poly(&self, terms: &[(usize, i64)]) -> Result<TruncatedSeries> {
        TruncatedSeries::from_int_terms(self.field, self.precision, terms)
    }

    /// A polynomial with scalar coefficients, at the context precision.
    pub fn poly_scalar(&self, terms: &[(usize, Scalar)]) -> Result<TruncatedSeries> {
        TruncatedSeries::from_terms(self.field, self.precision, terms)
    }

    /// True iff every exponent carrying a nonzero coefficient lies in `H`.
    pub fn is_element(&self, s: &TruncatedSeries) -> bool {
        s.terms().all(|(i, _)| self.semigroup.contains_usize(i))
    }

    fn check_element(&self, s: &TruncatedSeries) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field, s.field()));
        }
        if s.precision() != self.precision {
            return Err(Error::PrecisionMismatch(self.precision, s.precision()));
        }
        if let Some((i, _)) = s.terms().find(|(i, _)| !self.semigroup.contains_usize(*i)) {
            return Err(Error::NotInRing(i));
        }
        Ok(())
    }

    pub(crate) fn members_below(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        self.semigroup.members_below(bound)
    }
}

/// Canonical k-basis of an ideal of `A` modulo `t^N`.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    ctx: RingContext,
    /// Monic, fully reduced basis elements with pivot below `stable_from`,
    /// in increasing pivot order. Coefficients at and beyond `stable_from`
    /// vanish.
    rows: Vec<TruncatedSeries>,
    pivots: Vec<usize>,
    stable_from: usize,
    /// A generating set of the ideal as an `A`-module.
    generators: Vec<TruncatedSeries>,
}

impl PartialEq for IdealBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.stable_from == other.stable_from && self.rows == other.rows
    }
}

impl Eq for IdealBasis {}

fn order_of(s: &TruncatedSeries) -> Result<usize> {
    match s.order() {
        Order::Finite(a) => Ok(a),
        Order::AtLeast(n) => Err(Error::ZeroSeries(n)),
    }
}

impl IdealBasis {
    /// The ideal generated by `gens`.
    pub fn from_generators(ctx: &RingContext, gens: &[TruncatedSeries]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::ZeroSeries(ctx.precision));
        }
        let mut orders = Vec::with_capacity(gens.len());
        for g in gens {
            ctx.check_element(g)?;
            orders.push(order_of(g)?);
        }
        let tail = orders.iter().min().copied().expect("nonempty") + ctx.conductor();
        if tail > ctx.precision {
            return Err(Error::Stabilization {
                stable_from: tail,
                limit: ctx.precision - ctx.conductor(),
            });
        }
        let mut ech = Echelon::new(ctx.field, tail);
        for (g, &ord) in gens.iter().zip(&orders) {
            for h in ctx.members_below(tail.saturating_sub(ord)) {
                ech.insert(g.shift(h).coeffs()[..tail].to_vec());
            }
        }
        Self::from_echelon(ctx, ech, gens.to_vec())
    }

    /// Canonicalizes an echelon whose span, together with every `t^h` for
    /// `h` in `H` at or beyond its width, is the ideal.
    fn from_echelon(ctx: &RingContext, mut ech: Echelon, generators: Vec<TruncatedSeries>) -> Result<Self> {
        ech.fully_reduce();
        let h = ctx.semigroup();
        let mut stable_from = ech.width();
        while stable_from > 0 {
            let x = stable_from - 1;
            if h.contains_usize(x) && !ech.is_pivot(x) {
                break;
            }
            stable_from -= 1;
        }
        let limit = ctx.precision - ctx.conductor();
        if stable_from > limit {
            return Err(Error::Stabilization { stable_from, limit });
        }
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for p in ech.pivots().filter(|&p| p < stable_from) {
            let row = ech.row(p).expect("pivot");
            let mut coeffs = vec![ctx.field.zero(); ctx.precision];
            coeffs[..stable_from].clone_from_slice(&row[..stable_from]);
            rows.push(TruncatedSeries::from_coeffs(ctx.field, coeffs));
            pivots.push(p);
        }
        Ok(IdealBasis {
            ctx: ctx.clone(),
            rows,
            pivots,
            stable_from,
            generators,
        })
    }

    pub fn context(&self) -> &RingContext {
        &self.ctx
    }

    pub fn stable_from(&self) -> usize {
        self.stable_from
    }

    pub fn generators(&self) -> &[TruncatedSeries] {
        &self.generators
    }

    /// Basis elements with pivot below `stable_from`.
    pub fn rows(&self) -> &[TruncatedSeries] {
        &self.rows
    }

    /// `v(I)` below the precision.
    pub fn value_set(&self) -> BTreeSet<usize> {
        let mut v: BTreeSet<usize> = self.pivots.iter().copied().collect();
        v.extend(self.ctx.members_below(self.ctx.precision).filter(|&h| h >= self.stable_from));
        v
    }

    pub fn has_value(&self, h: usize) -> bool {
        if h >= self.stable_from {
            self.ctx.semigroup.contains_usize(h)
        } else {
            self.pivots.binary_search(&h).is_ok()
        }
    }

    /// Smallest order of a nonzero element.
    pub fn min_value(&self) -> usize {
        self.pivots.first().copied().unwrap_or_else(|| {
            (self.stable_from..)
                .find(|&h| self.ctx.semigroup.contains_usize(h))
                .expect("members exist")
        })
    }

    /// The basis element with pivot `h`, if `h` is a value.
    pub fn element_at(&self, h: usize) -> Option<TruncatedSeries> {
        if h >= self.stable_from {
            return self
                .ctx
                .semigroup
                .contains_usize(h)
                .then(|| self.ctx.monomial(h));
        }
        self.pivots.binary_search(&h).ok().map(|i| self.rows[i].clone())
    }

    /// `l_A(A/I)`: members of `H` that are not values of `I`.
    pub fn colength(&self) -> usize {
        self.ctx.members_below(self.stable_from).count() - self.pivots.len()
    }

    /// Remainder of `s` after clearing every pivot below `stable_from`;
    /// coefficients from `stable_from` on are dropped (those monomials lie
    /// in the ideal whenever their exponent is in `H`).
    pub fn reduce(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        if s.field() != self.ctx.field {
            return Err(Error::FieldMismatch(self.ctx.field, s.field()));
        }
        if s.precision() < self.stable_from {
            return Err(Error::PrecisionMismatch(self.stable_from, s.precision()));
        }
        let m = self.stable_from;
        let mut v: Vec<Scalar> = s.coeffs()[..m].to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = -&v[p];
            for (j, x) in v.iter_mut().enumerate().take(m).skip(p) {
                let r = row.coeff(j);
                if !r.is_zero() {
                    *x = x.add_mul(&c, r);
                }
            }
        }
        Ok(TruncatedSeries::from_coeffs(self.ctx.field, v))
    }

    /// Membership of `s` in the ideal. A series with a coefficient outside
    /// `H` is not in `A`, hence not in `I`.
    pub fn contains(&self, s: &TruncatedSeries) -> Result<bool> {
        if !self.ctx.is_element(s) {
            return Ok(false);
        }
        Ok(self.reduce(s)?.is_zero())
    }

    /// Product of two ideals, generated by pairwise products of generators.
    pub fn product(&self, other: &IdealBasis) -> Result<IdealBasis> {
        self.same_context(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for x in &self.generators {
            for y in &other.generators {
                gens.push(x.mul(y)?);
            }
        }
        IdealBasis::from_generators(&self.ctx, &gens)
    }

    /// The ideal `f I`.
    pub fn scale(&self, f: &TruncatedSeries) -> Result<IdealBasis> {
        let gens = self
            .generators
            .iter()
            .map(|g| f.mul(g))
            .collect::<Result<Vec<_>>>()?;
        IdealBasis::from_generators(&self.ctx, &gens)
    }

    fn same_context(&self, other: &IdealBasis) -> Result<()> {
        if self.ctx.field != other.ctx.field {
            return Err(Error::FieldMismatch(self.ctx.field, other.ctx.field));
        }
        if self.ctx.precision != other.ctx.precision {
            return Err(Error::PrecisionMismatch(self.ctx.precision, other.ctx.precision));
        }
        Ok(())
    }

    /// The normal-form generators `(f*, g*)`: `f*` is the basis element of
    /// least order `a`, `g*` the basis element of least order `b` with
    /// `b - a` outside `H`. Fails unless the two regenerate the ideal.
    pub fn canonical_generators(&self) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let a = self.min_value();
        let h = &self.ctx.semigroup;
        let b = self
            .value_set()
            .into_iter()
            .find(|&v| v > a && !h.contains((v - a) as i64))
            .ok_or_else(|| Error::NotTwoGenerated(vec![a]))?;
        let f = self.element_at(a).expect("value");
        let g = self.element_at(b).expect("value");
        let regenerated = IdealBasis::from_generators(&self.ctx, &[f.clone(), g.clone()])?;
        if regenerated != *self {
            return Err(Error::NotTwoGenerated(vec![a, b]));
        }
        Ok((f, g))
    }

    /// `(f) : g = { x in A : x g in (f) }`.
    pub fn colon_principal(ctx: &RingContext, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<IdealBasis> {
        ctx.check_element(g)?;
        let principal = IdealBasis::from_generators(ctx, std::slice::from_ref(f))?;
        let m = principal.stable_from;
        let b = order_of(g)?;
        // t^h g lies in (f) as soon as h + b >= m
        let k = m.saturating_sub(b);
        let unknowns: Vec<usize> = ctx.members_below(k).collect();
        let mut ech = Echelon::new(ctx.field, m);
        let mut tracked = vec![None; m];
        let mut kernel = Vec::new();
        for (idx, &h) in unknowns.iter().enumerate() {
            let residual = principal.reduce(&g.shift(h))?;
            let mut combo = vec![ctx.field.zero(); unknowns.len()];
            combo[idx] = ctx.field.one();
            if let Some(x) = ech.insert_tracked(&mut tracked, residual.coeffs().to_vec(), combo) {
                let mut coeffs = vec![ctx.field.zero(); k];
                for (c, &h) in x.into_iter().zip(&unknowns) {
                    coeffs[h] = c;
                }
                kernel.push(coeffs);
            }
        }
        let mut span = Echelon::new(ctx.field, k);
        let mut generators = Vec::new();
        for v in kernel {
            let mut full = v.clone();
            full.resize(ctx.precision, ctx.field.zero());
            generators.push(TruncatedSeries::from_coeffs(ctx.field, full));
            span.insert(v);
        }
        let top = k.max(ctx.conductor()) + ctx.semigroup.multiplicity() as usize;
        generators.extend(
            ctx.members_below(top.min(ctx.precision))
                .filter(|&h| h >= k)
                .map(|h| ctx.monomial(h)),
        );
        IdealBasis::from_echelon(ctx, span, generators)
    }
}

impl fmt::Display for IdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "] + t^{}V", self.stable_from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(gens: &[u64], k: Field, n: usize) -> RingContext {
        RingContext::new(NumericalSemigroup::new(gens).unwrap(), k, n).unwrap()
    }

    #[test]
    fn context_needs_room_for_products() {
        let h = NumericalSemigroup::new(&[5, 11]).unwrap();
        assert!(RingContext::new(h.clone(), Field::Rationals, 80).is_err());
        assert!(RingContext::new(h, Field::Rationals, 81).is_ok());
    }

    #[test]
    fn ring_elements() {
        let c = ctx(&[5, 11], Field::Rationals, 100);
        assert!(!c.is_element(&c.monomial(6)));
        assert!(c.is_element(&c.poly(&[(20, 1), (21, 3), (22, 1)]).unwrap()));
        assert!(c.is_element(&TruncatedSeries::zero(Field::Rationals, 100)));
    }

    #[test]
    fn value_set_of_10_27_ideal() {
        let c = ctx(&[5, 11], Field::Rationals, 100);
        let f = c.poly(&[(10, 1), (11, 1)]).unwrap();
        let g = c.monomial(27);
        let i = IdealBasis::from_generators(&c, &[f, g]).unwrap();
        let below: Vec<usize> = i.value_set().into_iter().filter(|&v| v < 40).collect();
        assert_eq!(below, vec![10, 15, 20, 21, 25, 26, 27, 30, 31, 32, 33, 35, 36, 37, 38]);
        assert_eq!(i.colength(), 5);
        assert!(i.contains(&c.monomial(33)).unwrap());
        assert!(!i.contains(&c.monomial(5)).unwrap());
        assert!(!i.contains(&c.monomial(6)).unwrap());
    }

    #[test]
    fn principal_colength_is_order() {
        let c = ctx(&[5, 11], Field::Prime(3), 120);
        for (terms, ord) in [
            (vec![(10, 1), (11, 1)], 10),
            (vec![(20, 1), (21, 2), (22, 1)], 20),
            (vec![(26, 1), (27, 2)], 26),
            (vec![(27, 1)], 27),
        ] {
            let i = IdealBasis::from_generators(&c, &[c.poly(&terms).unwrap()]).unwrap();
            assert_eq!(i.colength(), ord);
        }
        let c = ctx(&[5, 6, 9], Field::Rationals, 40);
        let i = IdealBasis::from_generators(&c, &[c.poly(&[(6, 1), (10, 3)]).unwrap()]).unwrap();
        assert_eq!(i.colength(), 6);
    }

    #[test]
    fn canonical_generators_drop_redundant_tail() {
        let c = ctx(&[5, 11], Field::Rationals, 100);
        let f = c.poly(&[(10, 1), (11, 1)]).unwrap();
        let noisy = f.add(&c.monomial(15).mul(&f).unwrap()).unwrap();
        let i = IdealBasis::from_generators(&c, &[noisy, c.monomial(27)]).unwrap();
        let (fs, gs) = i.canonical_generators().unwrap();
        assert_eq!(fs, f);
        assert_eq!(gs, c.monomial(27));
        let again = IdealBasis::from_generators(&c, &[fs, gs]).unwrap();
        assert_eq!(again, i);
    }

    #[test]
    fn principal_ideal_has_no_second_generator() {
        let c = ctx(&[5, 11], Field::Rationals, 100);
        let i = IdealBasis::from_generators(&c, &[c.monomial(10)]).unwrap();
        assert_eq!(i.canonical_generators(), Err(Error::NotTwoGenerated(vec![10])));
    }

    #[test]
    fn colon_by_itself_is_whole_ring() {
        let c = ctx(&[5, 11], Field::Prime(5), 100);
        let f = c.poly(&[(20, 1), (21, 1)]).unwrap();
        let col = IdealBasis::colon_principal(&c, &f, &f).unwrap();
        assert_eq!(col.colength(), 0);
        assert!(col.contains(&c.monomial(0)).unwrap());
    }

    #[test]
    fn colon_for_ulrich_10_27() {
        let c = ctx(&[5, 11], Field::Rationals, 100);
        let f = c.poly(&[(10, 1), (11, 1)]).unwrap();
        let g = c.monomial(27);
        let i = IdealBasis::from_generators(&c, &[f.clone(), g.clone()]).unwrap();
        assert_eq!(IdealBasis::colon_principal(&c, &f, &g).unwrap(), i);
    }

    #[test]
    fn rejects_non_elements_and_zero() {
        let c = ctx(&[5, 11], Field::Rationals, 100);
        assert_eq!(
            IdealBasis::from_generators(&c, &[c.monomial(6)]),
            Err(Error::NotInRing(6))
        );
        assert!(matches!(
            IdealBasis::from_generators(&c, &[TruncatedSeries::zero(Field::Rationals, 100)]),
            Err(Error::ZeroSeries(_))
        ));
        let wrong = TruncatedSeries::monomial(Field::Prime(2), 100, 10);
        assert!(matches!(
            IdealBasis::from_generators(&c, &[wrong]),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn stabilization_failure_when_precision_is_short() {
        let c = ctx(&[5, 11], Field::Rationals, 81);
        // order 45 + conductor 40 > 81
        assert!(matches!(
            IdealBasis::from_generators(&c, &[c.monomial(45)]),
            Err(Error::Stabilization { .. })
        ));
    }
}

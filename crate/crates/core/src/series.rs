//! Truncated power series `k[[t]] / (t^N)` over an exact field.
//!
//! Precision is explicit: a series of precision `N` knows its coefficients of
//! `t^0 .. t^{N-1}` and nothing beyond. Binary operations return the smaller
//! of the two precisions and division lowers it further, so no coefficient is
//! ever reported that the inputs did not determine.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Order of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    /// All stored coefficients vanish: the series is zero or its order is at
    /// least the precision.
    AtLeast(usize),
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(n) => Some(n),
            Order::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    pub fn zero(field: Field, precision: usize) -> Self {
        TruncatedSeries {
            field,
            coeffs: vec![field.zero(); precision],
        }
    }

    pub fn one(field: Field, precision: usize) -> Self {
        Self::monomial(field, precision, 0)
    }

    /// `t^exp`, which is zero when `exp >= precision`.
    pub fn monomial(field: Field, precision: usize, exp: usize) -> Self {
        let mut s = Self::zero(field, precision);
        if exp < precision {
            s.coeffs[exp] = field.one();
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms(field: Field, precision: usize, terms: &[(usize, Scalar)]) -> Result<Self> {
        let mut s = Self::zero(field, precision);
        for (e, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            if *e >= precision {
                return Err(Error::ExponentTooLarge {
                    exponent: *e,
                    precision,
                });
            }
            s.coeffs[*e] = &s.coeffs[*e] + c;
        }
        Ok(s)
    }

    /// Like [`from_terms`](Self::from_terms) with integer coefficients.
    pub fn from_int_terms(field: Field, precision: usize, terms: &[(usize, i64)]) -> Result<Self> {
        let terms: Vec<(usize, Scalar)> = terms.iter().map(|&(e, c)| (e, field.from_i64(c))).collect();
        Self::from_terms(field, precision, &terms)
    }

    pub(crate) fn from_coeffs(field: Field, coeffs: Vec<Scalar>) -> Self {
        TruncatedSeries { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms().map(|(i, _)| i).collect()
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Order::Finite(i),
            None => Order::AtLeast(self.precision()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Reduces to a lower precision. Raising precision is refused: it would
    /// invent coefficients.
    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        TruncatedSeries {
            field: self.field,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Pads with zeros up to `precision`, treating `self` as a polynomial.
    /// Only sound when the caller knows the tail really vanishes.
    pub fn pad_as_polynomial(&self, precision: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(precision.max(coeffs.len()), self.field.zero());
        TruncatedSeries {
            field: self.field,
            coeffs,
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.precision().min(other.precision());
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(Self::from_coeffs(self.field, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.precision().min(other.precision());
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Ok(Self::from_coeffs(self.field, coeffs))
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        Ok(Self::from_coeffs(self.field, self.coeffs.iter().map(|x| x * c).collect()))
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|x| -x).collect())
    }

    /// Cauchy product truncated at the smaller precision.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.precision().min(other.precision());
        let mut out = vec![self.field.zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_mul(a, b);
                }
            }
        }
        Ok(Self::from_coeffs(self.field, out))
    }

    /// Multiplication by `t^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.precision();
        let mut coeffs = vec![self.field.zero(); n];
        if k < n {
            coeffs[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.precision());
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Inverse of a unit (order 0) to the same precision.
    pub fn invert(&self) -> Result<Self> {
        match self.order() {
            Order::Finite(0) => {}
            Order::Finite(k) => return Err(Error::NotAUnit(k)),
            Order::AtLeast(n) => return Err(Error::ZeroSeries(n)),
        }
        let n = self.precision();
        let inv0 = self.coeffs[0].inv()?;
        let mut out: Vec<Scalar> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            // sum_{j=1..k} u_j * out_{k-j}
            let mut acc = self.field.zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add_mul(&self.coeffs[j], &out[k - j]);
                }
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(Self::from_coeffs(self.field, out))
    }

    /// `self / divisor`, valid when `order(divisor) <= order(self)`. If the
    /// inputs have precision `N` and the divisor has order `a`, the quotient
    /// is known to precision `N - a`.
    pub fn divide(&self, divisor: &Self) -> Result<Self> {
        self.check_field(divisor)?;
        let n = self.precision().min(divisor.precision());
        let a = match divisor.truncate(n).order() {
            Order::Finite(a) => a,
            Order::AtLeast(p) => return Err(Error::ZeroSeries(p)),
        };
        match self.truncate(n).order() {
            Order::Finite(b) if b < a => {
                return Err(Error::NotDivisible {
                    dividend: b,
                    divisor: a,
                })
            }
            _ => {}
        }
        let m = n - a;
        let num = Self::from_coeffs(self.field, self.coeffs[a..n].to_vec());
        let den = Self::from_coeffs(self.field, divisor.coeffs[a..n].to_vec());
        num.mul(&den.invert()?).map(|q| q.truncate(m))
    }

    /// Coefficients of `t^lo .. t^{hi-1}`.
    pub fn coeff_window(&self, lo: usize, hi: usize) -> Result<Vec<Scalar>> {
        if lo > hi || hi > self.precision() {
            return Err(Error::WindowOutOfRange {
                lo,
                hi,
                precision: self.precision(),
            });
        }
        Ok(self.coeffs[lo..hi].to_vec())
    }
}

impl fmt::Display for TruncatedSeries {
    /// Prints in the input grammar, e.g. `t^20 + 3*t^21 - 1/2*t^27`; the zero
    /// series prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "t^{e}")?;
            } else {
                write!(f, "{mag}*t^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl serde::Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn ser(k: Field, n: usize, terms: &[(usize, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_int_terms(k, n, terms).unwrap()
    }

    #[test]
    fn monomial_products() {
        let k = q();
        let p = ser(k, 40, &[(5, 1)]).mul(&ser(k, 40, &[(6, 1)])).unwrap();
        assert_eq!(p, ser(k, 40, &[(11, 1)]));

        let alpha = k.parse_scalar("7/3").unwrap();
        let f = TruncatedSeries::from_terms(k, 40, &[(6, k.one()), (10, alpha.clone())]).unwrap();
        let got = f.mul(&ser(k, 40, &[(16, 1)])).unwrap();
        let want = TruncatedSeries::from_terms(k, 40, &[(22, k.one()), (26, alpha)]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn t22_times_f_of_the_10_27_family() {
        let k = q();
        let (a1, a2, a3) = (k.from_i64(2), k.from_i64(-3), k.parse_scalar("5/7").unwrap());
        let f = TruncatedSeries::from_terms(
            k,
            60,
            &[(10, k.one()), (11, a1.clone()), (16, a2.clone()), (22, a3.clone())],
        )
        .unwrap();
        let got = ser(k, 60, &[(22, 1)]).mul(&f).unwrap();
        let want =
            TruncatedSeries::from_terms(k, 60, &[(32, k.one()), (33, a1), (38, a2), (44, a3)]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn orders() {
        let k = q();
        assert_eq!(ser(k, 30, &[(20, 1), (21, 3)]).order(), Order::Finite(20));
        assert_eq!(TruncatedSeries::zero(k, 30).order(), Order::AtLeast(30));
    }

    #[test]
    fn order_of_g_squared_over_f_in_10_27_family() {
        let k = q();
        let f = ser(k, 120, &[(10, 1), (11, 2), (16, -1), (22, 4)]);
        let g = ser(k, 120, &[(27, 1)]);
        let quotient = g.mul(&g).unwrap().divide(&f).unwrap();
        assert_eq!(quotient.order(), Order::Finite(44));
        assert_eq!(quotient.precision(), 110);
    }

    #[test]
    fn inverses() {
        let k = q();
        assert_eq!(ser(k, 10, &[(0, 1)]).invert().unwrap(), ser(k, 10, &[(0, 1)]));
        let geo = ser(k, 8, &[(0, 1), (1, 1)]).invert().unwrap();
        let want: Vec<(usize, i64)> = (0..8).map(|i| (i, if i % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(geo, ser(k, 8, &want));
        let u = ser(k, 30, &[(0, 1), (1, 1), (2, 1), (7, 1)]);
        assert_eq!(u.invert().unwrap().mul(&u).unwrap(), TruncatedSeries::one(k, 30));
        assert_eq!(ser(k, 10, &[(2, 1)]).invert(), Err(Error::NotAUnit(2)));
    }

    #[test]
    fn xi_for_the_characteristic_two_example() {
        let k = q();
        let f = ser(k, 34, &[(20, 1), (21, 1), (22, 1), (27, 1)]);
        let g = ser(k, 34, &[(26, 1)]);
        let xi = g.divide(&f).unwrap();
        assert_eq!(xi.precision(), 14);
        assert_eq!(xi, ser(k, 14, &[(6, 1), (7, -1), (9, 1), (10, -1), (12, 1), (13, -2)]));
    }

    #[test]
    fn xi_for_the_569_family() {
        let k = q();
        let alpha = k.parse_scalar("2/5").unwrap();
        let beta = k.parse_scalar("-3").unwrap();
        let f = TruncatedSeries::from_terms(k, 30, &[(6, k.one()), (10, alpha.clone())]).unwrap();
        let g = TruncatedSeries::from_terms(k, 30, &[(9, k.one()), (10, beta.clone())]).unwrap();
        let xi = g.divide(&f).unwrap();
        assert!(xi.coeff(0).is_zero() && xi.coeff(1).is_zero() && xi.coeff(2).is_zero());
        assert!(xi.coeff(3).is_one());
        assert_eq!(xi.coeff(4), &beta);
        assert_eq!(xi.coeff(7), &-&alpha);
        assert_eq!(xi.coeff(8), &-&(&alpha * &beta));
        assert_eq!(xi.coeff(11), &(&alpha * &alpha));
        assert_eq!(f.divide(&f).unwrap(), TruncatedSeries::one(k, 24));
        assert!(matches!(f.divide(&g), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn windows() {
        let k = Field::prime(2).unwrap();
        let t5 = ser(k, 20, &[(5, 1)]);
        assert!(t5.coeff_window(0, 5).unwrap().iter().all(Scalar::is_zero));
        assert!(t5.coeff_window(3, 21).is_err());
        let g = ser(k, 80, &[(26, 1), (33, 1)]);
        let sq = g.mul(&g).unwrap();
        assert_eq!(sq.coeff_window(52, 53).unwrap(), vec![k.one()]);
    }

    #[test]
    fn display() {
        let k = q();
        let s = TruncatedSeries::from_terms(
            k,
            30,
            &[(20, k.one()), (21, k.from_i64(3)), (27, k.parse_scalar("-55/128").unwrap())],
        )
        .unwrap();
        assert_eq!(s.to_string(), "t^20 + 3*t^21 - 55/128*t^27");
        assert_eq!(TruncatedSeries::zero(k, 3).to_string(), "0");
        assert_eq!(ser(k, 3, &[(1, -1)]).to_string(), "-t^1");
    }

    fn arb_series(k: Field, n: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(-3i64..4, n).prop_map(move |cs| {
            let terms: Vec<(usize, i64)> = cs.into_iter().enumerate().collect();
            TruncatedSeries::from_int_terms(k, n, &terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_series(Field::Prime(3), 40), y in arb_series(Field::Prime(3), 40),
                       z in arb_series(Field::Prime(3), 40)) {
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(),
                            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        }

        #[test]
        fn order_is_additive(x in arb_series(Field::Rationals, 60), y in arb_series(Field::Rationals, 60),
                             sx in 0usize..25, sy in 0usize..25) {
            let (x, y) = (x.shift(sx), y.shift(sy));
            if let (Some(a), Some(b)) = (x.order().finite(), y.order().finite()) {
                if a + b < 60 {
                    prop_assert_eq!(x.mul(&y).unwrap().order(), Order::Finite(a + b));
                }
            }
        }

        #[test]
        fn divide_undoes_multiply(f in arb_series(Field::Prime(5), 50), xi in arb_series(Field::Prime(5), 50),
                                  s in 0usize..20) {
            let f = f.shift(s);
            if let Some(a) = f.order().finite() {
                let prod = f.mul(&xi).unwrap();
                let back = prod.divide(&f).unwrap();
                prop_assert_eq!(back.precision(), 50 - a);
                prop_assert_eq!(back, xi.truncate(50 - a));
            }
        }
    }
}

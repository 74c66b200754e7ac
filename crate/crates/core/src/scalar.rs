//! Exact coefficient fields: prime fields `F_p` and the rationals.
//!
//! A [`Scalar`] remembers the field it lives in, so mixing elements of
//! different fields is detected instead of silently producing garbage. The
//! `checked_*` methods report the mismatch as an [`Error`]; the operator
//! impls panic on it and are meant for code paths where the field has already
//! been validated once at the boundary (series and echelon kernels).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u64),
    Rationals,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field `F_p`. Moduli are kept below `2^32` so that products
    /// of residues fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Prime(p) => p,
            Field::Rationals => 0,
        }
    }

    /// Number of elements, `None` for an infinite field.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::Prime(p) => Some(p),
            Field::Rationals => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar(Repr::Mod { value: 0, p }),
            Field::Rationals => Scalar(Repr::Rat(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar(Repr::Mod {
                value: n.rem_euclid(p as i64) as u64,
                p,
            }),
            Field::Rationals => Scalar(Repr::Rat(BigRational::from_integer(n.into()))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Prime(p) => {
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar(Repr::Mod {
                    value: r.to_u64().expect("residue fits"),
                    p,
                })
            }
            Field::Rationals => Scalar(Repr::Rat(BigRational::from_integer(n.clone()))),
        }
    }

    /// The image of `num/den` in this field; fails if `den` vanishes here.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// All elements in a fixed order (`0, 1, ..., p-1`), `None` over `Q`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Field::Prime(p) => Some((0..p).map(|v| Scalar(Repr::Mod { value: v, p })).collect()),
            Field::Rationals => None,
        }
    }

    /// Parses a scalar literal: optional sign, integer, optional `/` integer.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(text.to_string());
        let s = text.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, s.strip_prefix('+').map(str::trim_start).unwrap_or(s)),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (body, None),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(num) || den.is_some_and(|d| !digits(d)) {
            return Err(bad());
        }
        let mut n: BigInt = num.parse().map_err(|_| bad())?;
        if neg {
            n = -n;
        }
        let value = self.from_bigint(&n);
        match den {
            None => Ok(value),
            Some(d) => {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                value.checked_div(&self.from_bigint(&d))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let p = t
            .strip_prefix('F')
            .and_then(|d| d.parse::<u64>().ok())
            .or_else(|| t.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidFieldSpec(s.to_string()))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Mod { value: u64, p: u64 },
    Rat(BigRational),
}

/// An element of a [`Field`] in canonical form: a residue in `[0, p)` or a
/// reduced fraction with positive denominator. Equality is representation
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Mod { p, .. } => Field::Prime(*p),
            Repr::Rat(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Mod { value, .. } => *value == 0,
            Repr::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Mod { value, .. } => *value == 1,
            Repr::Rat(r) => r.is_one(),
        }
    }

    /// The residue, for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { value, .. } => Some(*value),
            Repr::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Mod { .. } => None,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        match (&self.0, &other.0) {
            (Repr::Mod { p, .. }, Repr::Mod { p: q, .. }) if p == q => Ok(()),
            (Repr::Rat(_), Repr::Rat(_)) => Ok(()),
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Mod { value: a, p }, Repr::Mod { value: b, .. }) => {
                Scalar(Repr::Mod { value: (a + b) % p, p: *p })
            }
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a + b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Mod { value: a, p }, Repr::Mod { value: b, .. }) => {
                Scalar(Repr::Mod { value: (a + p - b) % p, p: *p })
            }
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a - b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Mod { value: a, p }, Repr::Mod { value: b, .. }) => {
                Scalar(Repr::Mod { value: a * b % p, p: *p })
            }
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a * b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Mod { value, p } => Scalar(Repr::Mod {
                value: mod_pow(*value, p - 2, *p),
                p: *p,
            }),
            Repr::Rat(r) => Scalar(Repr::Rat(r.recip())),
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match &self.0 {
            Repr::Mod { value, p } => Scalar(Repr::Mod {
                value: mod_pow(*value, exp as u64, *p),
                p: *p,
            }),
            Repr::Rat(r) => Scalar(Repr::Rat(num_traits::pow(r.clone(), exp as usize))),
        }
    }

    /// `self + a * b`, the inner step of every elimination.
    pub(crate) fn add_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0, &a.0, &b.0) {
            (Repr::Mod { value: s, p }, Repr::Mod { value: x, .. }, Repr::Mod { value: y, .. }) => {
                Scalar(Repr::Mod { value: (s + x * y) % p, p: *p })
            }
            _ => self + &(a * b),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod { value, .. } => write!(f, "{value}"),
            Repr::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Scalar {
    /// True for rationals with negative sign; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_negative())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("scalar ", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Mod { value, p } => Scalar(Repr::Mod {
                value: (p - value) % p,
                p: *p,
            }),
            Repr::Rat(r) => Scalar(Repr::Rat(-r)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_make() {
        assert_eq!(Field::prime(2).unwrap().characteristic(), 2);
        assert_eq!("Q".parse::<Field>().unwrap().characteristic(), 0);
        assert_eq!(Field::prime(4), Err(Error::NotPrime(4)));
        assert_eq!("F101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("F1".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn constant_55_over_128_in_f3() {
        let k = Field::prime(3).unwrap();
        let c = k.from_ratio(55, 128).unwrap();
        assert_eq!(c, k.from_i64(2));
        assert_eq!(c, k.from_ratio(1, 2).unwrap());
    }

    #[test]
    fn doubling_vanishes_in_f2() {
        let k = Field::prime(2).unwrap();
        for b in k.elements().unwrap() {
            assert!((&k.from_i64(2) * &b).is_zero());
        }
    }

    #[test]
    fn gamma_expression_is_exact_over_q() {
        let q = Field::Rationals;
        let eps = q.parse_scalar("3/7").unwrap();
        let tau = q.parse_scalar("-5").unwrap();
        let gamma = &(&q.from_i64(2) * &tau) - &(&q.from_ratio(55, 128).unwrap() * &eps.pow(7));
        // 2*(-5) - 55/128 * 3^7/7^7, by hand with integers
        let num = BigInt::from(-10) * BigInt::from(128) * BigInt::from(823543) - BigInt::from(55) * BigInt::from(2187);
        let den = BigInt::from(128) * BigInt::from(823543);
        assert_eq!(gamma.as_rational().unwrap(), &BigRational::new(num, den));
    }

    #[test]
    fn mismatch_and_zero_division() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            f2.one().checked_add(&f3.one()),
            Err(Error::FieldMismatch(f2, f3))
        );
        assert!(f2.one().checked_mul(&Field::Rationals.one()).is_err());
        assert_eq!(f3.one().checked_div(&f3.zero()), Err(Error::DivisionByZero));
        assert_eq!(Field::Rationals.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn fermat_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let k = Field::prime(p).unwrap();
            for x in k.elements().unwrap() {
                assert_eq!(x.pow(p as u32), x);
            }
        }
    }

    #[test]
    fn literals() {
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("6/4").unwrap(), q.parse_scalar("3/2").unwrap());
        assert_eq!(q.parse_scalar("-6/-4").ok(), None);
        assert_eq!(q.parse_scalar("-3/6").unwrap().to_string(), "-1/2");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("").is_err());
        assert!(q.parse_scalar("1.5").is_err());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(f5.parse_scalar("1/2").unwrap().to_string(), "3");
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Prime(2)),
            Just(Field::Prime(3)),
            Just(Field::Prime(101)),
            Just(Field::Rationals),
        ]
    }

    fn elem(k: Field, n: i64, d: i64) -> Scalar {
        match k {
            Field::Rationals => k.from_ratio(n, d).unwrap(),
            _ => k.from_i64(n),
        }
    }

    proptest! {
        #[test]
        fn field_axioms(k in field_strategy(), a in -50i64..50, b in -50i64..50, c in -50i64..50,
                        da in 1i64..9, db in 1i64..9, dc in 1i64..9) {
            let (x, y, z) = (elem(k, a, da), elem(k, b, db), elem(k, c, dc));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &(-&x), k.zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), k.one());
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
        }

        #[test]
        fn rational_canonical_form(a in -40i64..40, b in 1i64..40, m in 1i64..20) {
            let q = Field::Rationals;
            let x = q.from_ratio(a, b).unwrap();
            let y = q.from_ratio(a * m, b * m).unwrap();
            prop_assert_eq!(x.to_string(), y.to_string());
            prop_assert_eq!(x, y);
        }
    }
}

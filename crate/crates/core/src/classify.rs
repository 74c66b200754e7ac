//! The known families of two-generated Ulrich ideals over `<5,6,9>` and
//! `<5,11>`, and exhaustive enumerators that compare the verifier against
//! each family's membership predicate over small prime fields.
//!
//! A family fixes the leading exponents `(a, b)` and the free coefficient
//! positions of
//!
//! ```text
//! f = t^a + Σ x_i t^{e_i},   g = t^b + Σ y_j t^{e_j}
//! ```
//!
//! Parameter tuples list the `f` coefficients first, then the `g`
//! coefficients, each in increasing exponent order. Enumeration visits tuples
//! lexicographically with field elements ordered `0, 1, …, p-1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numsgp::NumericalSemigroup;
use crate::scalar::{Field, Scalar};
use crate::series::TruncatedSeries;
use crate::sgring::{IdealBasis, RingContext};
use crate::ulrich::{candidate_pairs, ulrich_check, UlrichReport};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyId {
    F1,
    F2,
    F3,
    F4,
    F5,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [FamilyId::F1, FamilyId::F2, FamilyId::F3, FamilyId::F4, FamilyId::F5];
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "F1" => Ok(FamilyId::F1),
            "F2" => Ok(FamilyId::F2),
            "F3" => Ok(FamilyId::F3),
            "F4" => Ok(FamilyId::F4),
            "F5" => Ok(FamilyId::F5),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Which characteristics a family's normal form is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharRestriction {
    Any,
    Two,
    NotTwo,
}

impl CharRestriction {
    pub fn admits(self, field: Field) -> bool {
        match self {
            CharRestriction::Any => true,
            CharRestriction::Two => field.characteristic() == 2,
            CharRestriction::NotTwo => field.characteristic() != 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub ring: NumericalSemigroup,
    pub pair: (usize, usize),
    pub f_support: Vec<usize>,
    pub g_support: Vec<usize>,
    pub parameters: Vec<&'static str>,
    pub characteristic: CharRestriction,
    pub predicate: &'static str,
    pub citation: &'static str,
}

fn sg(gens: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::new(gens).expect("literal semigroup")
}

/// The five families, in order `F1..F5`.
pub fn family_catalog() -> Vec<FamilySpec> {
    FamilyId::ALL.iter().map(|&id| family(id)).collect()
}

pub fn family(id: FamilyId) -> FamilySpec {
    match id {
        FamilyId::F1 => FamilySpec {
            id,
            ring: sg(&[5, 6, 9]),
            pair: (6, 9),
            f_support: vec![10],
            g_support: vec![10],
            parameters: vec!["alpha", "beta"],
            characteristic: CharRestriction::Any,
            predicate: "2*beta = 0",
            citation: "<5,6,9>, (6,9): (t^6 + alpha t^10, t^9 + beta t^10) is Ulrich iff 2 beta = 0",
        },
        FamilyId::F2 => FamilySpec {
            id,
            ring: sg(&[5, 11]),
            pair: (10, 16),
            f_support: vec![11, 22, 33],
            g_support: vec![22, 33],
            parameters: vec!["alpha1", "alpha2", "alpha3", "beta1", "beta2"],
            characteristic: CharRestriction::Any,
            predicate: "false",
            citation: "<5,11>: no Ulrich ideal has (a,b) = (10,16)",
        },
        FamilyId::F3 => FamilySpec {
            id,
            ring: sg(&[5, 11]),
            pair: (10, 27),
            f_support: vec![11, 16, 22],
            g_support: vec![],
            parameters: vec!["alpha1", "alpha2", "alpha3"],
            characteristic: CharRestriction::Any,
            predicate: "alpha1 != 0",
            citation: "<5,11>, (10,27): (t^10 + a1 t^11 + a2 t^16 + a3 t^22, t^27) is Ulrich iff a1 != 0",
        },
        FamilyId::F4 => FamilySpec {
            id,
            ring: sg(&[5, 11]),
            pair: (20, 26),
            f_support: vec![21, 22, 27, 33],
            g_support: vec![27, 33],
            parameters: vec!["alpha", "beta", "gamma", "delta", "epsilon", "tau"],
            characteristic: CharRestriction::Two,
            predicate: "epsilon = 0, alpha != 0, beta = alpha^2, gamma = alpha^7",
            citation: "<5,11>, (20,26), ch = 2: epsilon = 0, alpha != 0, beta = alpha^2, gamma = alpha^7",
        },
        FamilyId::F5 => FamilySpec {
            id,
            ring: sg(&[5, 11]),
            pair: (20, 26),
            f_support: vec![21, 22, 27, 33],
            g_support: vec![27, 33],
            parameters: vec!["alpha", "beta", "gamma", "delta", "epsilon", "tau"],
            characteristic: CharRestriction::NotTwo,
            predicate: "epsilon != alpha, 3 epsilon = 2 alpha, beta = alpha^2 - 2 epsilon^2, gamma = 2 tau - 55/128 epsilon^7",
            citation: "<5,11>, (20,26), ch != 2: epsilon != alpha, 3 epsilon = 2 alpha, \
                       beta = alpha^2 - 2 epsilon^2, gamma = 2 tau - (55/128) epsilon^7",
        },
    }
}

impl FamilySpec {
    pub fn arity(&self) -> usize {
        self.f_support.len() + self.g_support.len()
    }

    /// Precision `2 (c + b) + 1`.
    pub fn precision(&self) -> usize {
        RingContext::default_precision(&self.ring, self.pair.1)
    }

    pub fn context(&self, field: Field) -> Result<RingContext> {
        RingContext::new(self.ring.clone(), field, self.precision())
    }

    fn check_field(&self, field: Field) -> Result<()> {
        if self.characteristic.admits(field) {
            Ok(())
        } else {
            Err(Error::OutsideFamily(format!("{} is not stated over {field}", self.id)))
        }
    }

    fn check_arity(&self, params: &[Scalar]) -> Result<()> {
        if params.len() != self.arity() {
            return Err(Error::OutsideFamily(format!(
                "{} takes {} parameters, got {}",
                self.id,
                self.arity(),
                params.len()
            )));
        }
        Ok(())
    }

    pub fn generators(&self, ctx: &RingContext, params: &[Scalar]) -> Result<(TruncatedSeries, TruncatedSeries)> {
        self.check_arity(params)?;
        let one = ctx.field().one();
        let (fp, gp) = params.split_at(self.f_support.len());
        let mut ft = vec![(self.pair.0, one.clone())];
        ft.extend(self.f_support.iter().copied().zip(fp.iter().cloned()));
        let mut gt = vec![(self.pair.1, one)];
        gt.extend(self.g_support.iter().copied().zip(gp.iter().cloned()));
        Ok((ctx.poly_scalar(&ft)?, ctx.poly_scalar(&gt)?))
    }

    /// The family's membership predicate, evaluated exactly.
    pub fn predicate_holds(&self, params: &[Scalar]) -> Result<bool> {
        self.check_arity(params)?;
        let k = params.first().map(Scalar::field).unwrap_or(Field::Rationals);
        self.check_field(k)?;
        let n = |v: i64| k.from_i64(v);
        Ok(match self.id {
            FamilyId::F1 => (&n(2) * &params[1]).is_zero(),
            FamilyId::F2 => false,
            FamilyId::F3 => !params[0].is_zero(),
            FamilyId::F4 => {
                let [alpha, beta, gamma, _delta, eps, _tau] = six(params);
                eps.is_zero() && !alpha.is_zero() && *beta == alpha.pow(2) && *gamma == alpha.pow(7)
            }
            FamilyId::F5 => {
                let [alpha, beta, gamma, _delta, eps, tau] = six(params);
                let c55 = k.from_ratio(55, 128)?;
                eps != alpha
                    && &n(3) * eps == &n(2) * alpha
                    && *beta == &alpha.pow(2) - &(&n(2) * &eps.pow(2))
                    && *gamma == &(&n(2) * tau) - &(&c55 * &eps.pow(7))
            }
        })
    }

    /// A random tuple satisfying the predicate. `F2` has none.
    pub fn sample_member(&self, field: Field, rng: &mut impl Rng) -> Result<Vec<Scalar>> {
        self.check_field(field)?;
        let k = field;
        let n = |v: i64| k.from_i64(v);
        let out = match self.id {
            FamilyId::F1 => {
                let beta = if k.characteristic() == 2 { random_scalar(k, rng) } else { k.zero() };
                vec![random_scalar(k, rng), beta]
            }
            FamilyId::F2 => return Err(Error::OutsideFamily("F2 has no members".into())),
            FamilyId::F3 => vec![random_nonzero(k, rng), random_scalar(k, rng), random_scalar(k, rng)],
            FamilyId::F4 => {
                let alpha = random_nonzero(k, rng);
                let (beta, gamma) = (alpha.pow(2), alpha.pow(7));
                vec![alpha, beta, gamma, random_scalar(k, rng), k.zero(), random_scalar(k, rng)]
            }
            FamilyId::F5 => {
                let eps = random_nonzero(k, rng);
                let tau = random_scalar(k, rng);
                let alpha = &(&n(3) * &eps) / &n(2);
                let beta = &alpha.pow(2) - &(&n(2) * &eps.pow(2));
                let gamma = &(&n(2) * &tau) - &(&k.from_ratio(55, 128)? * &eps.pow(7));
                vec![alpha, beta, gamma, random_scalar(k, rng), eps, tau]
            }
        };
        Ok(out)
    }
}

fn six(p: &[Scalar]) -> [&Scalar; 6] {
    [&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]]
}

/// Uniform over a finite field; over `Q` a fraction `n/d` with
/// `|n| <= 9`, `1 <= d <= 5`.
pub fn random_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field.order() {
        Some(q) => field.from_i64(rng.gen_range(0..q) as i64),
        None => field
            .from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
            .expect("nonzero denominator"),
    }
}

pub fn random_nonzero(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// One enumerated parameter tuple and the verifier's summary of it.
#[derive(Clone, Debug, Serialize)]
pub struct TupleRecord {
    pub params: Vec<Scalar>,
    pub verdict: bool,
    pub predicate: bool,
    pub a: usize,
    pub b: Option<usize>,
    pub colength: usize,
    pub failing: Vec<&'static str>,
    #[serde(skip)]
    pub ideal: IdealBasis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerationCertificate {
    pub family: FamilySpec,
    pub field: Field,
    pub mode: EnumerationMode,
    pub precision: usize,
    pub total_candidates: usize,
    pub ulrich_tuples: Vec<Vec<Scalar>>,
    pub predicate_tuples: Vec<Vec<Scalar>>,
    pub agree: bool,
    pub distinct_ideals: usize,
    pub records: Vec<TupleRecord>,
}

impl EnumerationCertificate {
    fn assemble(family: FamilySpec, field: Field, mode: EnumerationMode, precision: usize, records: Vec<TupleRecord>) -> Self {
        let ulrich_tuples: Vec<Vec<Scalar>> = records.iter().filter(|r| r.verdict).map(|r| r.params.clone()).collect();
        let predicate_tuples: Vec<Vec<Scalar>> =
            records.iter().filter(|r| r.predicate).map(|r| r.params.clone()).collect();
        let agree = records.iter().all(|r| r.verdict == r.predicate);
        let distinct: BTreeSet<String> = records.iter().filter(|r| r.verdict).map(|r| r.ideal.to_string()).collect();
        EnumerationCertificate {
            family,
            field,
            mode,
            precision,
            total_candidates: records.len(),
            ulrich_tuples,
            predicate_tuples,
            agree,
            distinct_ideals: distinct.len(),
            records,
        }
    }

    pub fn ulrich_records(&self) -> impl Iterator<Item = &TupleRecord> {
        self.records.iter().filter(|r| r.verdict)
    }

    /// Header plus one row per tuple.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = self.family.parameters.clone();
        header.extend(["verdict", "predicate", "a", "b", "colength"]);
        w.write_record(&header)?;
        for r in &self.records {
            let mut row: Vec<String> = r.params.iter().map(Scalar::to_string).collect();
            row.push(r.verdict.to_string());
            row.push(r.predicate.to_string());
            row.push(r.a.to_string());
            row.push(r.b.map(|b| b.to_string()).unwrap_or_default());
            row.push(r.colength.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub budget: u128,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: DEFAULT_BUDGET,
            workers: None,
        }
    }
}

fn evaluate(fam: &FamilySpec, ctx: &RingContext, params: Vec<Scalar>) -> Result<TupleRecord> {
    let (f, g) = fam.generators(ctx, &params)?;
    let report: UlrichReport = ulrich_check(ctx, &f, &g)?;
    let predicate = fam.predicate_holds(&params)?;
    Ok(TupleRecord {
        params,
        verdict: report.verdict,
        predicate,
        a: report.a,
        b: report.b,
        colength: report.colength,
        failing: report.checks.failing(),
        ideal: report.ideal,
    })
}

fn tuple_at(elements: &[Scalar], arity: usize, mut index: usize) -> Vec<Scalar> {
    let q = elements.len();
    let mut out = vec![elements[0].clone(); arity];
    for slot in out.iter_mut().rev() {
        *slot = elements[index % q].clone();
        index /= q;
    }
    out
}

fn run_parallel<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(job),
        None => job(),
    }
}

/// Runs the verifier on every parameter tuple of `fam` over the finite
/// field `field`.
pub fn enumerate_family(fam: &FamilySpec, field: Field, opts: EnumerationOptions) -> Result<EnumerationCertificate> {
    fam.check_field(field)?;
    let elements = field.elements().ok_or(Error::InfiniteField)?;
    let needed = (elements.len() as u128).pow(fam.arity() as u32);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }
    let ctx = fam.context(field)?;
    let total = needed as usize;
    let records = run_parallel(opts.workers, || {
        (0..total)
            .into_par_iter()
            .map(|i| evaluate(fam, &ctx, tuple_at(&elements, fam.arity(), i)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(EnumerationCertificate::assemble(
        fam.clone(),
        field,
        EnumerationMode::Exhaustive,
        ctx.precision(),
        records,
    ))
}

/// Random-sampling counterpart of [`enumerate_family`] for fields too large
/// to enumerate, including `Q`. Every other sample is drawn from the family
/// itself, the rest uniformly.
pub fn sample_family(
    fam: &FamilySpec,
    field: Field,
    samples: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<EnumerationCertificate> {
    fam.check_field(field)?;
    let ctx = fam.context(field)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut tuples = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = if i % 2 == 0 && fam.id != FamilyId::F2 {
            fam.sample_member(field, &mut rng)?
        } else {
            (0..fam.arity()).map(|_| random_scalar(field, &mut rng)).collect()
        };
        tuples.push(t);
    }
    let records = run_parallel(workers, || {
        tuples
            .into_par_iter()
            .map(|t| evaluate(fam, &ctx, t))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(EnumerationCertificate::assemble(
        fam.clone(),
        field,
        EnumerationMode::Sampled { samples, seed },
        ctx.precision(),
        records,
    ))
}

/// The sieve pairs `(a, b)` of `h` for which `(t^a, t^b)` is Ulrich.
pub fn monomial_scan(h: &NumericalSemigroup, field: Field) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for p in candidate_pairs(h) {
        let ctx = RingContext::new(h.clone(), field, RingContext::default_precision(h, p.b))?;
        if ulrich_check(&ctx, &ctx.monomial(p.a), &ctx.monomial(p.b))?.verdict {
            out.push((p.a, p.b));
        }
    }
    Ok(out)
}

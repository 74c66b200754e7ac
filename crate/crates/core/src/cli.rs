//! Command-line front end shared by the `ulrich` binary and the tests.
//!
//! Every verb produces a JSON report of the shape described by
//! `schemas/report-v1.json`, or a CSV table / plain text rendering of it.
//! Exit codes: `0` completed (the verdict itself may be false), `2` input
//! error, `3` the ideal did not stabilize within the precision, even after a
//! retry at twice the precision.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{self, family, EnumerationOptions, FamilyId, FamilySpec};
use crate::error::Error;
use crate::numsgp::NumericalSemigroup;
use crate::scalar::{Field, Scalar};
use crate::series::TruncatedSeries;
use crate::sgring::{IdealBasis, RingContext};
use crate::ulrich::{self, Params2026};

pub const SCHEMA_ID: &str = "ulrich-report/1";

/// The JSON schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schemas/report-v1.json");

const CRITERION: &str = "two-generated Ulrich criterion: I != (f), I^2 = f I, (f):g = I, o(f) = 2 l(A/I)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at column {}", self.message, self.position + 1)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{flag}: {source}")]
    Parse { flag: &'static str, source: ParseError },
    #[error("{0}")]
    Input(Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Stabilization(Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Stabilization { .. } => CliError::Stabilization(e),
            e => CliError::Input(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Stabilization(_) => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Parse { .. } => "parse",
            CliError::Input(_) => "input",
            CliError::Usage(_) => "usage",
            CliError::Stabilization(_) => "stabilization",
            CliError::Io(_) => "io",
        };
        let mut e = json!({ "kind": kind, "message": self.to_string(), "exitCode": self.exit_code() });
        if let CliError::Parse { flag, source } = self {
            e["flag"] = json!(flag);
            e["position"] = json!(source.position);
        }
        json!({ "error": e })
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

type Terms = Vec<(usize, Scalar)>;

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: at,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &self.text[start..start + len]))
    }
}

/// Parses `[coeff *] t ^ exp` terms joined by `+`/`-` into `(exp, coeff)`
/// pairs, in input order. A bare `t` is `t^1`, a bare coefficient is a
/// constant term.
pub fn parse_terms(text: &str, field: Field) -> Result<Vec<(usize, Scalar)>, ParseError> {
    Ok(lex_terms(text, field)?.into_iter().map(|(e, c, _)| (e, c)).collect())
}

/// As [`parse_terms`], with the byte offset of each exponent.
fn lex_terms(text: &str, field: Field) -> Result<Vec<(usize, Scalar, usize)>, ParseError> {
    let mut lx = Lexer { text, pos: 0 };
    let mut out = Vec::new();
    if lx.peek().is_none() {
        return lx.err(0, "empty expression");
    }
    let mut first = true;
    loop {
        let sign_at = {
            lx.skip_ws();
            lx.pos
        };
        let negative = lx.eat('-');
        if !negative && !lx.eat('+') && !first {
            return lx.err(sign_at, "expected '+' or '-'");
        }
        first = false;

        let coeff_at = {
            lx.skip_ws();
            lx.pos
        };
        let coeff = match lx.digits() {
            Some((_, num)) => {
                let mut lit = num.to_string();
                if lx.eat('/') {
                    match lx.digits() {
                        Some((_, den)) => {
                            lit.push('/');
                            lit.push_str(den);
                        }
                        None => return lx.err(lx.pos, "expected denominator"),
                    }
                }
                match field.parse_scalar(&lit) {
                    Ok(c) => Some(c),
                    Err(e) => return lx.err(coeff_at, format!("malformed scalar {lit:?}: {e}")),
                }
            }
            None => None,
        };

        let mut exp_at = coeff_at;
        let exp = if coeff.is_some() && !lx.eat('*') {
            match lx.peek() {
                None | Some('+') | Some('-') => 0,
                _ => return lx.err(lx.pos, "expected '*'"),
            }
        } else {
            if !lx.eat('t') {
                return lx.err(lx.pos, "expected 't'");
            }
            if lx.eat('^') {
                match lx.digits() {
                    Some((at, d)) => match d.parse::<usize>() {
                        Ok(e) => {
                            exp_at = at;
                            e
                        }
                        Err(_) => return lx.err(at, "exponent out of range"),
                    },
                    None => return lx.err(lx.pos, "expected exponent"),
                }
            } else {
                1
            }
        };
        let c = coeff.unwrap_or_else(|| field.one());
        out.push((exp, if negative { -&c } else { c }, exp_at));
        if lx.peek().is_none() {
            return Ok(out);
        }
    }
}

/// Parses a series expression at precision `precision`. Repeated exponents
/// are summed; an exponent at or beyond the precision is an error.
pub fn parse_series(text: &str, field: Field, precision: usize) -> Result<TruncatedSeries, ParseError> {
    let lexed = lex_terms(text, field)?;
    if let Some((e, _, at)) = lexed.iter().find(|(e, _, _)| *e >= precision) {
        return Err(ParseError {
            position: *at,
            message: format!("exponent {e} is not below precision {precision}"),
        });
    }
    let terms: Vec<(usize, Scalar)> = lexed.into_iter().map(|(e, c, _)| (e, c)).collect();
    Ok(TruncatedSeries::from_terms(field, precision, &terms).expect("exponents checked"))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    /// Run the Ulrich verifier on (f, g).
    Check,
    /// Enumerate a family over a finite field (or sample it with --samples).
    Enumerate,
    /// List the candidate pairs (a, b) of a semigroup.
    Pairs,
    /// Analyse the blow-up A + A g/f.
    Blowup,
    /// Build and check the explicit witness for a (20,26) ideal over <5,11>.
    Witness,
    /// Print the canonical basis and generators of (f, g).
    Normalform,
    /// Check every monomial candidate pair (t^a, t^b).
    ScanMonomials,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Check => "check",
            Verb::Enumerate => "enumerate",
            Verb::Pairs => "pairs",
            Verb::Blowup => "blowup",
            Verb::Witness => "witness",
            Verb::Normalform => "normalform",
            Verb::ScanMonomials => "scan-monomials",
        }
    }
}

#[derive(Parser, Debug, Clone)]
#[command(name = "ulrich", version, about = "Two-generated Ulrich ideals in numerical semigroup rings")]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,
    /// Semigroup, e.g. "<5,11>".
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// "Q" or "F<p>".
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// F1 .. F5.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// "name=value,..." or positional "v1,v2,...", in family parameter order.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, default_value_t = classify::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Sample this many tuples instead of enumerating exhaustively.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

/// A finished command: the JSON report plus its CSV table, if the verb has one.
#[derive(Debug, Clone)]
pub struct Output {
    pub report: Value,
    pub csv: Option<String>,
    pub text: String,
}

struct Outcome {
    ring: Option<NumericalSemigroup>,
    precision: Option<usize>,
    citation: String,
    result: Value,
    text: String,
    csv: Option<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

impl Command {
    fn field(&self) -> CliResult<Field> {
        Ok(Field::from_str(&self.field)?)
    }

    fn ring(&self) -> CliResult<NumericalSemigroup> {
        match &self.ring {
            Some(r) => Ok(r.parse()?),
            None => Err(CliError::Usage("--ring is required".into())),
        }
    }

    fn family(&self) -> CliResult<Option<FamilySpec>> {
        match &self.family {
            Some(id) => {
                let fam = family(id.parse::<FamilyId>()?);
                if let Some(r) = &self.ring {
                    let r: NumericalSemigroup = r.parse()?;
                    if r != fam.ring {
                        return Err(CliError::Usage(format!("{} lives over {}, not {r}", fam.id, fam.ring)));
                    }
                }
                Ok(Some(fam))
            }
            None => Ok(None),
        }
    }

    fn params(&self, fam: &FamilySpec, field: Field) -> CliResult<Vec<Scalar>> {
        let mut values = vec![field.zero(); fam.arity()];
        let Some(text) = &self.params else {
            return Ok(values);
        };
        for (i, item) in text.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
            let (slot, lit) = match item.split_once('=') {
                Some((name, lit)) => {
                    let name = name.trim();
                    let slot = fam
                        .parameters
                        .iter()
                        .position(|p| *p == name)
                        .ok_or_else(|| CliError::Usage(format!("{} has no parameter {name:?}", fam.id)))?;
                    (slot, lit)
                }
                None => (i, item),
            };
            if slot >= values.len() {
                return Err(CliError::Usage(format!("{} takes {} parameters", fam.id, fam.arity())));
            }
            values[slot] = field.parse_scalar(lit)?;
        }
        Ok(values)
    }

    fn pair_terms(&self, field: Field) -> CliResult<(Terms, Terms)> {
        let get = |flag: &'static str, v: &Option<String>| -> CliResult<Terms> {
            let text = v.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))?;
            parse_terms(text, field).map_err(|source| CliError::Parse { flag, source })
        };
        Ok((get("f", &self.f)?, get("g", &self.g)?))
    }

    /// Builds (f, g) either from --f/--g or from --family/--params.
    fn generators(&self, precision_scale: usize) -> CliResult<Generators> {
        let field = self.field()?;
        if let Some(fam) = self.family()? {
            let params = self.params(&fam, field)?;
            let n = self.precision.unwrap_or_else(|| fam.precision()) * precision_scale;
            let ctx = RingContext::new(fam.ring.clone(), field, n)?;
            let (f, g) = fam.generators(&ctx, &params)?;
            return Ok(Generators {
                ctx,
                f,
                g,
                family: Some(fam),
            });
        }
        let ring = self.ring()?;
        let (ft, gt) = self.pair_terms(field)?;
        let n = match self.precision {
            Some(n) => n,
            None => {
                let top = max_exp(&ft).max(max_exp(&gt));
                let order = |t: &[(usize, Scalar)]| {
                    TruncatedSeries::from_terms(field, top + 1, t).ok().and_then(|s| s.order().finite())
                };
                let max_order = order(&ft).into_iter().chain(order(&gt)).max().unwrap_or(0);
                RingContext::default_precision(&ring, max_order).max(top + 1)
            }
        };
        let parse = |flag: &'static str, text: &Option<String>| {
            parse_series(text.as_deref().unwrap_or(""), field, n)
                .map(|s| s.pad_as_polynomial(n * precision_scale))
                .map_err(|source| CliError::Parse { flag, source })
        };
        let f = parse("f", &self.f)?;
        let g = parse("g", &self.g)?;
        let ctx = RingContext::new(ring, field, n * precision_scale)?;
        Ok(Generators { ctx, f, g, family: None })
    }

    fn citation_for(&self, ctx: &RingContext, a: usize, b: Option<usize>) -> String {
        classify::family_catalog()
            .into_iter()
            .find(|fam| {
                fam.ring == *ctx.semigroup() && Some(fam.pair) == b.map(|b| (a, b)) && fam.characteristic.admits(ctx.field())
            })
            .map(|fam| format!("{} ({})", fam.citation, fam.id))
            .unwrap_or_else(|| CRITERION.to_string())
    }
}

fn max_exp(t: &[(usize, Scalar)]) -> usize {
    t.iter().map(|(e, _)| *e).max().unwrap_or(0)
}

struct Generators {
    ctx: RingContext,
    f: TruncatedSeries,
    g: TruncatedSeries,
    family: Option<FamilySpec>,
}

fn check(cmd: &Command, scale: usize) -> CliResult<Outcome> {
    let Generators { ctx, f, g, family } = cmd.generators(scale)?;
    let report = ulrich::ulrich_check(&ctx, &f, &g)?;
    let citation = match family {
        Some(fam) => format!("{} ({})", fam.citation, fam.id),
        None => cmd.citation_for(&ctx, report.a, report.b),
    };
    let mut result = to_value(&report);
    result["failing"] = to_value(&report.checks.failing());
    result["f"] = to_value(&f);
    result["g"] = to_value(&g);
    let mut text = format!("verdict: {}\n", report.verdict);
    let _ = writeln!(
        text,
        "a = {}, b = {}, colength = {}",
        report.a,
        report.b.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
        report.colength
    );
    let failing = report.checks.failing();
    if !failing.is_empty() {
        let _ = writeln!(text, "failing: {}", failing.join(", "));
    }
    if let Some(o) = &report.square_obstruction {
        let _ = writeln!(text, "obstruction: coefficient {} at t^{} ({:?})", o.coefficient, o.exponent, o.kind);
    }
    Ok(Outcome {
        ring: Some(ctx.semigroup().clone()),
        precision: Some(ctx.precision()),
        citation,
        result,
        text,
        csv: None,
    })
}

fn normalform(cmd: &Command, scale: usize) -> CliResult<Outcome> {
    let Generators { ctx, f, g, .. } = cmd.generators(scale)?;
    let (f, g) = ulrich::normalize_pair(&f, &g)?;
    let gens: Vec<TruncatedSeries> = if g.is_zero() { vec![f] } else { vec![f, g] };
    let ideal = IdealBasis::from_generators(&ctx, &gens)?;
    let canonical = ideal.canonical_generators().ok();
    let values: Vec<usize> = ideal.value_set().into_iter().filter(|&v| v < ideal.stable_from()).collect();
    let result = json!({
        "valueSet": values,
        "stableFrom": ideal.stable_from(),
        "colength": ideal.colength(),
        "basis": to_value(&ideal.rows()),
        "canonicalGenerators": to_value(&canonical),
    });
    let mut text = format!("{ideal}\n");
    let _ = writeln!(text, "values below {}: {values:?}", ideal.stable_from());
    let _ = writeln!(text, "colength: {}", ideal.colength());
    if let Some((a, b)) = &canonical {
        let _ = writeln!(text, "f* = {a}\ng* = {b}");
    }
    Ok(Outcome {
        ring: Some(ctx.semigroup().clone()),
        precision: Some(ctx.precision()),
        citation: "canonical echelon basis of the ideal modulo t^N".into(),
        result,
        text,
        csv: None,
    })
}

fn blowup(cmd: &Command, scale: usize) -> CliResult<Outcome> {
    let Generators { ctx, f, g, .. } = cmd.generators(scale)?;
    let report = ulrich::ulrich_check(&ctx, &f, &g)?;
    let b = ulrich::blowup_analyze(&ctx, &f, &g)?;
    let result = json!({
        "ulrich": report.verdict,
        "xi": to_value(&b.xi),
        "valueSemigroup": to_value(&b.value_semigroup),
        "valueSemigroupSymmetric": b.value_semigroup.is_symmetric(),
        "monomialMembership": b.monomial_membership.iter().map(|(s, m)| json!({"exponent": s, "member": m})).collect::<Vec<_>>(),
        "isSemigroupRing": b.is_semigroup_ring,
    });
    let mut text = format!("xi = {}\nv(B) = {} (symmetric: {})\n", b.xi, b.value_semigroup, b.value_semigroup.is_symmetric());
    for (s, m) in &b.monomial_membership {
        let _ = writeln!(text, "t^{s} in B: {m}");
    }
    let _ = writeln!(text, "semigroup ring: {}", b.is_semigroup_ring);
    Ok(Outcome {
        ring: Some(ctx.semigroup().clone()),
        precision: Some(ctx.precision()),
        citation: cmd.citation_for(&ctx, report.a, report.b),
        result,
        text,
        csv: None,
    })
}

fn witness(cmd: &Command, scale: usize) -> CliResult<Outcome> {
    let field = cmd.field()?;
    let fam = match cmd.family()? {
        Some(f) if matches!(f.id, FamilyId::F4 | FamilyId::F5) => f,
        Some(f) => return Err(CliError::Usage(format!("no witness construction for {}", f.id))),
        None => family(if field.characteristic() == 2 { FamilyId::F4 } else { FamilyId::F5 }),
    };
    let p = cmd.params(&fam, field)?;
    let params = Params2026 {
        alpha: p[0].clone(),
        beta: p[1].clone(),
        gamma: p[2].clone(),
        delta: p[3].clone(),
        epsilon: p[4].clone(),
        tau: p[5].clone(),
    };
    let ctx = RingContext::new(fam.ring.clone(), field, cmd.precision.unwrap_or_else(|| fam.precision()) * scale)?;
    let (f, g) = params.generators(&ctx)?;
    let (phi, psi) = ulrich::witness_construct(&ctx, &params)?;
    let residual = ulrich::witness_residual(&ctx, &f, &g, &phi, &psi)?;
    let holds = ulrich::witness_check(&ctx, &f, &g, &phi, &psi)?;
    let bound = 20 + ctx.conductor();
    let result = json!({
        "f": to_value(&f), "g": to_value(&g), "phi": to_value(&phi), "psi": to_value(&psi),
        "residualOrder": residual.order().finite(),
        "modulus": bound,
        "holds": holds,
    });
    let text = format!(
        "f = {f}\ng = {g}\nphi = {phi}\npsi = {psi}\ng^2 - f^2 phi - f g psi = O(t^{})\nholds mod t^{bound}: {holds}\n",
        residual.order().finite().unwrap_or(ctx.precision())
    );
    Ok(Outcome {
        ring: Some(ctx.semigroup().clone()),
        precision: Some(ctx.precision()),
        citation: format!("{} ({})", fam.citation, fam.id),
        result,
        text,
        csv: None,
    })
}

fn pairs(cmd: &Command) -> CliResult<Outcome> {
    let ring = cmd.ring()?;
    let pairs = ulrich::candidate_pairs(&ring);
    let mut text = String::new();
    let mut csv = String::from("a,b,lower_bound,counting_feasible\n");
    for p in &pairs {
        let _ = writeln!(text, "({}, {})  lower bound {}  counting feasible {}", p.a, p.b, p.lower_bound, p.counting_feasible);
        let _ = writeln!(csv, "{},{},{},{}", p.a, p.b, p.lower_bound, p.counting_feasible);
    }
    Ok(Outcome {
        ring: Some(ring),
        precision: None,
        citation: "necessary conditions on the orders (a, b) of a two-generated Ulrich ideal".into(),
        result: json!({ "pairs": to_value(&pairs) }),
        text,
        csv: Some(csv),
    })
}

fn scan_monomials(cmd: &Command) -> CliResult<Outcome> {
    let ring = cmd.ring()?;
    let field = cmd.field()?;
    let found = classify::monomial_scan(&ring, field)?;
    let mut text = String::new();
    let mut csv = String::from("a,b\n");
    for (a, b) in &found {
        let _ = writeln!(text, "(t^{a}, t^{b})");
        let _ = writeln!(csv, "{a},{b}");
    }
    if found.is_empty() {
        text.push_str("no monomial Ulrich ideals\n");
    }
    Ok(Outcome {
        ring: Some(ring),
        precision: None,
        citation: "monomial pairs (t^a, t^b) over every candidate pair".into(),
        result: json!({ "ulrichPairs": found }),
        text,
        csv: Some(csv),
    })
}

fn enumerate(cmd: &Command) -> CliResult<Outcome> {
    let fam = cmd
        .family()?
        .ok_or_else(|| CliError::Usage("--family is required".into()))?;
    let field = cmd.field()?;
    let cert = match cmd.samples {
        Some(n) => classify::sample_family(&fam, field, n, cmd.seed, cmd.workers)?,
        None => classify::enumerate_family(
            &fam,
            field,
            EnumerationOptions {
                budget: cmd.budget,
                workers: cmd.workers,
            },
        )?,
    };
    let mut buf = Vec::new();
    cert.write_csv(&mut buf).map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    let text = format!(
        "{} over {}: {} tuples, {} Ulrich, {} satisfy the predicate, agree = {}, distinct ideals = {}\n",
        fam.id,
        field,
        cert.total_candidates,
        cert.ulrich_tuples.len(),
        cert.predicate_tuples.len(),
        cert.agree,
        cert.distinct_ideals
    );
    Ok(Outcome {
        ring: Some(fam.ring.clone()),
        precision: Some(cert.precision),
        citation: format!("{} ({})", fam.citation, fam.id),
        result: to_value(&cert),
        text,
        csv: Some(String::from_utf8(buf).expect("utf-8")),
    })
}

fn dispatch(cmd: &Command, scale: usize) -> CliResult<Outcome> {
    match cmd.verb {
        Verb::Check => check(cmd, scale),
        Verb::Enumerate => enumerate(cmd),
        Verb::Pairs => pairs(cmd),
        Verb::Blowup => blowup(cmd, scale),
        Verb::Witness => witness(cmd, scale),
        Verb::Normalform => normalform(cmd, scale),
        Verb::ScanMonomials => scan_monomials(cmd),
    }
}

/// Runs a parsed command. A stabilization failure is retried once at twice
/// the precision.
pub fn run(cmd: &Command) -> CliResult<Output> {
    let outcome = match dispatch(cmd, 1) {
        Err(CliError::Stabilization(_)) => dispatch(cmd, 2)?,
        other => other?,
    };
    let mut report = json!({
        "schema": SCHEMA_ID,
        "command": cmd.verb.name(),
        "field": cmd.field()?.to_string(),
        "ring": outcome.ring.as_ref().map(|r| r.to_string()),
        "precision": outcome.precision,
        "citation": outcome.citation,
        "result": outcome.result,
    });
    if !cmd.no_timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        report["timestamp"] = json!(secs);
    }
    Ok(Output {
        report,
        csv: outcome.csv,
        text: outcome.text,
    })
}

/// Renders an output in the requested format.
pub fn render(cmd: &Command, out: &Output) -> CliResult<String> {
    match cmd.format {
        Format::Json => Ok(serde_json::to_string_pretty(&out.report).expect("json") + "\n"),
        Format::Text => Ok(out.text.clone()),
        Format::Csv => out
            .csv
            .clone()
            .ok_or_else(|| CliError::Usage(format!("{} has no CSV output", cmd.verb.name()))),
    }
}

/// Parses arguments, runs, writes the rendering to `--out` or `stdout` and
/// errors to `stderr`. Returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cmd = match Command::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{}", e.render());
            } else {
                let _ = write!(stderr, "{}", e.render());
            }
            return code;
        }
    };
    let result = run(&cmd).and_then(|out| render(&cmd, &out)).and_then(|text| match &cmd.out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => Ok(stdout.write_all(text.as_bytes())?),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", serde_json::to_string_pretty(&e.to_json()).expect("json"));
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &TruncatedSeries) -> Vec<(usize, String)> {
        s.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    #[test]
    fn parses_examples() {
        let s = parse_series("t^26 + 2*t^27 + t^33", Field::Rationals, 40).unwrap();
        assert_eq!(coeffs(&s), [(26, "1".into()), (27, "2".into()), (33, "1".into())]);
        let f2 = Field::prime(2).unwrap();
        let s = parse_series("t^6 - t^7 + t^9", f2, 20).unwrap();
        assert_eq!(coeffs(&s), [(6, "1".into()), (7, "1".into()), (9, "1".into())]);
        assert!(parse_series("t^5 + t^5", f2, 10).unwrap().is_zero());
        let s = parse_series("t^5+t^5", Field::Rationals, 10).unwrap();
        assert_eq!(coeffs(&s), [(5, "2".into())]);
    }

    #[test]
    fn whitespace_and_signs() {
        let s = parse_series("  - 55 / 128 * t ^ 27 +t^20 ", Field::Rationals, 40).unwrap();
        assert_eq!(s.to_string(), "t^20 - 55/128*t^27");
        assert_eq!(parse_series("0", Field::Rationals, 5).unwrap().to_string(), "0");
        assert_eq!(parse_series("3 + t", Field::Rationals, 5).unwrap().to_string(), "3*t^0 + t^1");
    }

    #[test]
    fn errors_carry_positions() {
        let q = Field::Rationals;
        let e = parse_series("t^2 + x", q, 10).unwrap_err();
        assert_eq!(e.position, 6);
        let e = parse_series("t^2 t^3", q, 10).unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_series("t^12", q, 10).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(e.message.contains("precision"));
        let e = parse_series("1/0*t^2", q, 10).unwrap_err();
        assert_eq!(e.position, 0);
        assert!(e.message.contains("malformed scalar"));
        assert!(parse_series("", q, 10).is_err());
        assert!(parse_series("t^", q, 10).is_err());
        assert!(parse_series("2 t^3", q, 10).is_err());
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with(std::iter::once("ulrich").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_example_over_f2_and_q() {
        let base = ["check", "--ring", "<5,11>", "--f", "t^20+t^21+t^22+t^27", "--g", "t^26", "--no-timestamp"];
        let (code, out, _) = run_args(&[&base[..], &["--field", "F2"]].concat());
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["verdict"], true);
        assert_eq!(v["precision"], 133);

        let (code, out, _) = run_args(&[&base[..], &["--field", "Q"]].concat());
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["verdict"], false);
        assert_eq!(v["result"]["failing"][0], "square_equals_fI");
        assert_eq!(v["result"]["square_obstruction"]["exponent"], 39);
        assert_eq!(v["result"]["square_obstruction"]["coefficient"], "-2");
        assert!(v["citation"].as_str().unwrap().contains("(20,26)"));
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = run_args(&["check", "--ring", "<5,11>", "--f", "t^20+", "--g", "t^26"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"position\""));
        let (code, _, _) = run_args(&["check", "--ring", "<5,11>", "--f", "t^3", "--g", "t^26"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["check", "--ring", "<4,6>", "--f", "t^4", "--g", "t^6"]);
        assert_eq!(code, 2);
        let (code, _, err) = run_args(&[
            "check", "--ring", "<5,11>", "--precision", "81", "--f", "t^60", "--g", "t^66",
        ]);
        assert_eq!(code, 3, "{err}");
        let (code, _, _) = run_args(&["enumerate", "--family", "F5", "--field", "F101"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn stabilization_retry_at_double_precision() {
        // 81 is too small for order 26 (needs 106); 162 suffices.
        let (code, out, err) = run_args(&[
            "check", "--ring", "<5,11>", "--field", "F3", "--precision", "81", "--f", "t^20+t^22", "--g",
            "t^26+t^27+t^33", "--no-timestamp",
        ]);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["precision"], 162);
        assert_eq!(v["result"]["verdict"], true);
    }

    #[test]
    fn params_by_name_and_position() {
        let (code, out, _) = run_args(&[
            "check", "--family", "F3", "--field", "F3", "--params", "alpha1=2", "--format", "text",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("verdict: true"), "{out}");
        let (_, out, _) = run_args(&["check", "--family", "F3", "--field", "F3", "--params", "0,1,1", "--format", "text"]);
        assert!(out.starts_with("verdict: false"), "{out}");
        let (code, _, _) = run_args(&["check", "--family", "F3", "--params", "zeta=1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn enumerate_csv_rows() {
        let (code, out, _) = run_args(&["enumerate", "--family", "F4", "--field", "F2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 65);
    }

    #[test]
    fn witness_verb() {
        let (code, out, _) = run_args(&[
            "witness", "--field", "F2", "--params", "alpha=1,beta=1,gamma=1", "--no-timestamp",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["holds"], true);
        let (code, _, _) = run_args(&["witness", "--field", "F2", "--params", "alpha=0"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn deterministic_without_timestamp() {
        let args = ["enumerate", "--family", "F1", "--field", "F5", "--no-timestamp"];
        let (_, a, _) = run_args(&args);
        let (_, b, _) = run_args(&[&args[..], &["--workers", "3"]].concat());
        assert_eq!(a, b);
    }
}

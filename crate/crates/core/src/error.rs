use thiserror::Error;

use crate::scalar::Field;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field spec {0:?}, expected \"Q\" or \"F<p>\"")]
    InvalidFieldSpec(String),
    #[error("invalid scalar literal {0:?}")]
    InvalidScalar(String),

    #[error("a numerical semigroup needs at least one positive generator")]
    EmptyGenerators,
    #[error("generators have gcd {0}, not 1")]
    GcdNotOne(u64),
    #[error("{0} is not an element of the semigroup")]
    NotAMember(i64),
    #[error("invalid semigroup literal {0:?}, expected e.g. \"<5,11>\"")]
    InvalidSemigroup(String),

    #[error("series is not a unit (order {0})")]
    NotAUnit(usize),
    #[error("cannot divide: order of divisor ({divisor}) exceeds order of dividend ({dividend})")]
    NotDivisible { dividend: usize, divisor: usize },
    #[error("series vanishes to precision {0}")]
    ZeroSeries(usize),
    #[error("coefficient window [{lo}, {hi}) outside precision {precision}")]
    WindowOutOfRange { lo: usize, hi: usize, precision: usize },
    #[error("exponent {exponent} is not below precision {precision}")]
    ExponentTooLarge { exponent: usize, precision: usize },

    #[error("precision {precision} must exceed twice the conductor {conductor}")]
    PrecisionTooSmall { precision: usize, conductor: usize },
    #[error("series is not an element of the semigroup ring (exponent {0} is a gap)")]
    NotInRing(usize),
    #[error("ideal does not stabilize: values reach every member only from {stable_from}, limit is {limit}")]
    Stabilization { stable_from: usize, limit: usize },
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),
    #[error("ideal is not generated by its canonical elements of orders {0:?}")]
    NotTwoGenerated(Vec<usize>),
    #[error("blow-up is not closed under multiplication: xi^2 is not in A + A*xi")]
    BlowupNotClosed,
    #[error("observed value set is not a numerical semigroup")]
    NotASemigroup,

    #[error("parameters outside the family: {0}")]
    OutsideFamily(String),
    #[error("enumeration needs a finite field")]
    InfiniteField,
    #[error("enumeration of {needed} tuples exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

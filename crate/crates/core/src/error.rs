use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by constructions in this crate.
///
/// Validation errors carry the first violating tuple of element indices so
/// callers can point at the offending entry.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("not a Latin square: {line} {index} repeats element {element}")]
    NotLatinSquare {
        line: &'static str,
        index: usize,
        element: usize,
    },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("group of order {order} exceeds the limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },
    #[error("invalid invariant factors {0:?}")]
    InvalidInvariantFactors(Vec<u32>),
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("not additive: {0}")]
    NotAdditive(String),
    #[error("not a homomorphism at ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("source mismatch: {0}")]
    SourceMismatch(String),
    #[error("cochain degree {0} is out of range")]
    DegreeTooHigh(usize),
    #[error("cochain is not normalized at tuple {0:?}")]
    NotNormalized(Vec<usize>),
    #[error("cochain is not a cocycle (coboundary nonzero at {0:?})")]
    NotACocycle(Vec<usize>),
    #[error("brute-force enumeration of {count} cochains exceeds bound {bound}")]
    BruteForceTooLarge { count: u128, bound: u128 },
    #[error("not a groupoid: {0}")]
    NotAGroupoid(String),
    #[error("automorphisms of the unit object do not commute")]
    UnitEndomorphismsNotAbelian,
    #[error("object {0} has no tensor inverse")]
    NonInvertibleObject(usize),
    #[error("not a strict monoidal category: {0}")]
    NotStrict(String),
    #[error("value at {0:?} is not central")]
    CentralityViolation(Vec<usize>),
    #[error("invalid functor data: {0}")]
    InvalidPair(String),
    #[error("functors do not share (phi, f, source, target)")]
    SignatureMismatch,
    #[error("kernel obstruction cochain is nonzero at {0:?}")]
    ObstructionNonzero(Vec<usize>),
    #[error("category with {arrows} arrows exceeds the limit {limit}")]
    CategoryTooLarge { arrows: usize, limit: usize },
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("linear system with {entries} entries exceeds the limit {limit}")]
    SystemTooLarge { entries: u128, limit: u128 },
    #[error("invalid factor set: {0}")]
    InvalidFactorSet(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

//! Exact arithmetic and simulation for the q-weighted Robinson-Schensted
//! column-insertion correspondence.
//!
//! The crate provides, in dependency order:
//!
//! - [`qarith`] — integer-coefficient polynomials in `q`, reduced rational
//!   functions, and a three-mode weight scalar (symbolic, exact at a rational
//!   q-point, floating point) used by everything else.
//! - [`shapes`] — integer partitions, interlacing, the box-adding operator
//!   `L` and the normalizing products `delta`.
//! - [`tableaux`] — semistandard tableaux as interlacing shape chains
//!   (Gelfand-Tsetlin patterns), standard tableaux as saturated chains, and
//!   the weight functions `kappa` and `rho`.
//! - [`insertion`] — classic column insertion, the q-weighted insertion
//!   kernel with its exact outcome distribution, sampling, and the
//!   word-weight recursion `phi`.
//! - [`whittaker`] — q-Whittaker functions, q-deformed standard-tableau and
//!   Kostka counts, and the kernel operators `K`, `M` and their recursive
//!   two-level variants.
//! - [`verify`] — executable identity checks (stochasticity, intertwining,
//!   the word-sum identity, eigenrelation, combinatorial corollaries) with
//!   negative-control mutations.
//! - [`qtasep`] — the q-TASEP particle system: exact rates, event-driven
//!   simulation, the coupling to the tableau chain, and the analytic
//!   last-particle law with certified truncation.
//! - [`permutations`] — permutation-input statistics: the polynomials
//!   `zeta`, `F_sigma`, `theta` and the induced shape measure.
//! - [`cli`] — the `qrs` command-line surface.
//!
//! Run `cargo run --example <name>` for worked demonstrations of each
//! capability; see the crate README for the list.

pub mod cli;
pub mod insertion;
pub mod permutations;
pub mod qarith;
pub mod qtasep;
pub mod rng;
pub mod shapes;
pub mod tableaux;
pub mod verify;
pub mod whittaker;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two scalars from different weight modes (or q-points) were combined.
    ModeMismatch(String),
    /// Division by a zero scalar or zero polynomial.
    DivisionByZero,
    /// A q-point rejected at construction (`1`, `-1`, or out of sampling range).
    InvalidQPoint(String),
    /// Text that does not match the polynomial / rational grammar.
    Parse(String),
    /// Adding a box in this row does not produce a partition.
    InvalidRow { row: usize },
    /// A partition has more parts than the ambient bound allows.
    TooManyParts { parts: usize, limit: usize },
    /// Row/column conditions violated at the given cell (1-based).
    MalformedTableau { row: usize, col: usize, reason: String },
    /// Standardization requires pairwise distinct entries.
    RepeatedEntry { letter: usize },
    /// A letter outside the alphabet `1..=l`.
    LetterOutOfRange { letter: usize, alphabet: usize },
    /// Operation requires a different weight mode (e.g. sampling needs float).
    InvalidWeightMode(String),
    /// Weights are negative or do not sum to one.
    InvalidProbabilityVector(String),
    /// Tableau pair with different shapes where equal shapes are required.
    ShapeMismatch,
    /// |lambda| and |mu| differ where equal sizes are required.
    SizeMismatch,
    /// Two shapes that must interlace do not.
    InterlacingViolation,
    /// The guarded denominator of the bump weight vanished at a site that
    /// should be unreachable; reported instead of guessing.
    BumpDenominatorVanished { level: usize, row: usize },
    /// A quantity proved to be a polynomial failed to reduce to one.
    NotAPolynomial(String),
    /// The last-particle law requires the insertion rates to sum to one.
    NonUnitTotalRate,
    /// Command-line usage error.
    Usage(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ModeMismatch(msg) => write!(f, "weight mode mismatch: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InvalidQPoint(msg) => write!(f, "invalid q-point: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidRow { row } => {
                write!(f, "adding a box in row {row} does not give a partition")
            }
            Error::TooManyParts { parts, limit } => {
                write!(f, "partition has {parts} parts, limit is {limit}")
            }
            Error::MalformedTableau { row, col, reason } => {
                write!(f, "malformed tableau at row {row}, column {col}: {reason}")
            }
            Error::RepeatedEntry { letter } => {
                write!(f, "entry {letter} occurs more than once")
            }
            Error::LetterOutOfRange { letter, alphabet } => {
                write!(f, "letter {letter} outside alphabet 1..={alphabet}")
            }
            Error::InvalidWeightMode(msg) => write!(f, "invalid weight mode: {msg}"),
            Error::InvalidProbabilityVector(msg) => {
                write!(f, "invalid probability vector: {msg}")
            }
            Error::ShapeMismatch => write!(f, "tableau shapes differ"),
            Error::SizeMismatch => write!(f, "partition sizes differ"),
            Error::InterlacingViolation => write!(f, "shapes do not interlace"),
            Error::BumpDenominatorVanished { level, row } => write!(
                f,
                "bump-weight denominator vanished at level {level}, row {row} \
                 (invariant violation)"
            ),
            Error::NotAPolynomial(msg) => {
                write!(f, "expected exact polynomial, got remainder: {msg}")
            }
            Error::NonUnitTotalRate => {
                write!(f, "insertion rates must sum to one for the particle law")
            }
            Error::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

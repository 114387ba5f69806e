//! Exact counting and enumeration of λ-quiddities over finite coefficient rings.
//!
//! A λ-quiddity of size `n` over a commutative ring `R` is a tuple
//! `(a_1, ..., a_n)` whose continuant product
//!
//! ```text
//! M_n(a_1, ..., a_n) = [a_n -1; 1 0] [a_{n-1} -1; 1 0] ... [a_1 -1; 1 0]
//! ```
//!
//! equals `+Id` or `-Id`. Tuples solving the `-Id` case are exactly the
//! second rows of tame Coxeter friezes.
//!
//! The crate provides, over `Z/NZ` and `F_q`:
//!
//! * exact ring arithmetic with a canonical element order ([`ring`]);
//! * the continuant product and its elementary identities ([`mat2`]);
//! * tuple-level structure: the gluing sum `⊕`, dihedral canonical forms,
//!   reducibility tests and small-size solution inventories ([`quiddity`]);
//! * closed-form, recurrence, CRT and transfer-matrix counts of solutions,
//!   all in arbitrary precision ([`counting`]);
//! * enumeration of irreducible solution classes by column propagation with
//!   a definitional brute-force oracle ([`irreducible`]).
//!
//! Everything is exact: counts are big integers, never floats.

pub mod counting;
pub mod irreducible;
pub mod mat2;
pub mod quiddity;
pub mod ring;

pub use counting::{dp_count_all, naive_count, CountVector, Sl2};
pub use irreducible::{enumerate_irreducible, oracle_irreducible_classes, ClassSet};
pub use mat2::{classify, product, Mat2, MatClass};
pub use quiddity::{small_solutions, Quiddity};
pub use ring::{crt_split, CrtSplit, Elem, Ring, RingSpec};

/// Which scalar target of the matrix equation a count refers to.
///
/// Over a ring of characteristic 2 the two targets are the same matrix, so
/// counts for `Plus` and `Minus` coincide there.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// The target matrix `+Id` or `-Id` over `ring`.
    pub fn target(self, ring: &Ring) -> Mat2 {
        match self {
            Sign::Plus => Mat2::identity(ring),
            Sign::Minus => Mat2::minus_identity(ring),
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "plus"),
            Sign::Minus => write!(f, "minus"),
        }
    }
}

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A ring specification that does not describe a finite commutative ring
    /// in scope (modulus < 2, composite characteristic, reducible polynomial).
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    /// Two operands living over different rings.
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    /// Argument outside an operation's stated domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A regime for which no closed form is in scope. Callers should fall
    /// back to `dp` or `naive` explicitly rather than have it happen silently.
    #[error("unsupported regime: {0}")]
    Unsupported(String),

    /// An exhaustive computation that would exceed the documented guard.
    #[error("resource guard exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

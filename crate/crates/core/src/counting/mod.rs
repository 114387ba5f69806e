//! Exact counting of λ-quiddities: closed forms, recurrences, CRT products,
//! and two independent exhaustive counters.
//!
//! Counting functions return arbitrary-precision integers; solution counts
//! grow like `|R|^{n-2}` and overflow machine words quickly. The
//! transfer-matrix counter [`dp_count_all`] and the literal enumerator
//! [`naive_count`] are mutually independent oracles that double-check every
//! formula in the module.

mod dp;
mod formulas;
mod qint;
mod recurrence;

pub use dp::{dp_count_all, dp_count_with, naive_count, CountVector, Sl2};
pub use formulas::{
    crt_count, parity_count, prime_power, st_formula, u_formula, w4_formula, StTarget,
};
pub use qint::{q_binom2, q_binom2_identity_holds, q_int};
pub use recurrence::{recurrence_step, recurrence_u, z4_recurrence};

//! Recurrences relating counts at consecutive sizes.
//!
//! Over `F_q`, for any `B` in `SL_2(F_q)` and `n > 4`:
//!
//! ```text
//! u_n^B = (q-1)(u_{n-1}^B - q u_{n-3}^{-B}) + q u_{n-2}^{-B} + q(u_{n-2}^B - q u_{n-4}^{-B})
//! ```
//!
//! Over `Z/4Z`, for any `B` in `SL_2(Z/4Z)` and `n >= 4`:
//!
//! ```text
//! w_n^B = w_{n-1}^B + w_{n-1}^{-B} + 6 w_{n-2}^{-B} + 2 w_{n-2}^B
//! ```
//!
//! Both recurrences pair a target with its negation, so drivers iterate the
//! two sequences together. Base values at sizes 1..4 come from the explicit
//! small-solution inventories (for `±Id`) or from literal enumeration (for
//! general `B`); the closed forms only start at larger sizes.

use super::dp::naive_count;
use crate::mat2::Mat2;
use crate::quiddity::small_solutions;
use crate::ring::Ring;
use crate::{Error, Result, Sign};
use num_bigint::{BigInt, BigUint};

/// One step of the field recurrence. `prior_b[i]` and `prior_neg_b[i]` hold
/// the counts for targets `B` and `-B` at size `n - 1 - i`, `i = 0..4`.
pub fn recurrence_step(
    prior_b: &[BigUint; 4],
    prior_neg_b: &[BigUint; 4],
    q: u64,
) -> Result<BigUint> {
    let b: Vec<BigInt> = prior_b.iter().map(|v| BigInt::from(v.clone())).collect();
    let nb: Vec<BigInt> = prior_neg_b.iter().map(|v| BigInt::from(v.clone())).collect();
    let q = BigInt::from(q);
    let value: BigInt =
        (&q - 1) * (&b[0] - &q * &nb[2]) + &q * &nb[1] + &q * (&b[1] - &q * &nb[3]);
    value.to_biguint().ok_or_else(|| {
        Error::InvalidArgument("prior values do not come from a count sequence".into())
    })
}

/// Count of size-`n` solutions of `M_n = sign·Id` over a field, driven by
/// the recurrence from the size-1..4 inventories. Independent of the closed
/// forms: only the small-size solution lists enter.
pub fn recurrence_u(ring: &Ring, n: u32, sign: Sign) -> Result<BigUint> {
    if !ring.is_field() {
        return Err(Error::Unsupported(format!(
            "the size recurrence applies over fields, not {ring}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("size must be >= 1".into()));
    }
    let q = ring.size() as u64;
    // hist[i] = (u^+, u^-) at size n0 - 3 + i for the last four sizes.
    let mut hist: Vec<(BigUint, BigUint)> = Vec::with_capacity(4);
    for size in 1..=4u32 {
        let plus = BigUint::from(small_solutions(ring, size, Some(Sign::Plus))?.len());
        let minus = BigUint::from(small_solutions(ring, size, Some(Sign::Minus))?.len());
        if size == n {
            return Ok(match sign {
                Sign::Plus => plus,
                Sign::Minus => minus,
            });
        }
        hist.push((plus, minus));
    }
    for _ in 5..=n {
        let plus_prior: [BigUint; 4] =
            std::array::from_fn(|i| hist[3 - i].0.clone());
        let minus_prior: [BigUint; 4] =
            std::array::from_fn(|i| hist[3 - i].1.clone());
        let next_plus = recurrence_step(&plus_prior, &minus_prior, q)?;
        let next_minus = recurrence_step(&minus_prior, &plus_prior, q)?;
        hist.remove(0);
        hist.push((next_plus, next_minus));
    }
    let (plus, minus) = hist.pop().expect("history is nonempty");
    Ok(match sign {
        Sign::Plus => plus,
        Sign::Minus => minus,
    })
}

/// Count of size-`n` tuples over `Z/4Z` with product `target`, for any
/// `target` in `SL_2(Z/4Z)` and `n >= 2`, by iterating the order-2
/// recurrence from enumerated base values at sizes 2 and 3.
pub fn z4_recurrence(target: &Mat2, n: u32) -> Result<BigUint> {
    let ring = Ring::zmod(4)?;
    for e in [target.a, target.b, target.c, target.d] {
        if e.index() >= 4 {
            return Err(Error::InvalidArgument(
                "target matrix is not over Z/4Z".into(),
            ));
        }
    }
    if target.det(&ring) != ring.one() {
        return Err(Error::InvalidArgument(
            "target matrix must have determinant 1".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the Z/4Z recurrence starts at n = 2, got {n}"
        )));
    }
    let neg = target.neg(&ring);
    let mut prev = (naive_count(&ring, 2, target)?, naive_count(&ring, 2, &neg)?);
    let mut cur = (naive_count(&ring, 3, target)?, naive_count(&ring, 3, &neg)?);
    if n == 2 {
        return Ok(prev.0);
    }
    for _ in 4..=n {
        let next_b = &cur.0 + &cur.1 + 6u32 * &prev.1 + 2u32 * &prev.0;
        let next_neg = &cur.0 + &cur.1 + 6u32 * &prev.0 + 2u32 * &prev.1;
        prev = cur;
        cur = (next_b, next_neg);
    }
    Ok(cur.0)
}

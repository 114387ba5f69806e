//! q-integers and the Gaussian binomial `binom(m, 2)_q`.

use num_bigint::BigUint;
use num_traits::Zero;

fn pow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// The q-integer `[m]_q = (q^m - 1) / (q - 1) = 1 + q + ... + q^{m-1}`.
pub fn q_int(m: u32, q: u64) -> BigUint {
    assert!(q >= 2, "q-integers need q >= 2");
    (pow(q, m) - 1u32) / (q - 1)
}

/// The Gaussian binomial
/// `binom(m, 2)_q = (q^m - 1)(q^{m-1} - 1) / ((q - 1)(q^2 - 1))`.
pub fn q_binom2(m: u32, q: u64) -> BigUint {
    assert!(q >= 2, "Gaussian binomials need q >= 2");
    if m < 2 {
        return BigUint::zero();
    }
    let num = (pow(q, m) - 1u32) * (pow(q, m - 1) - 1u32);
    let den = BigUint::from(q - 1) * (pow(q, 2) - 1u32);
    num / den
}

/// The reduction `(q^{2m-2} - 1) / (q^2 - 1) + q * binom(m-1, 2)_q
/// = binom(m, 2)_q`, used whenever an even-size count is unrolled one step.
pub fn q_binom2_identity_holds(m: u32, q: u64) -> bool {
    if m < 1 {
        return true;
    }
    let lead = (pow(q, 2 * m - 2) - 1u32) / (pow(q, 2) - 1u32);
    lead + q * q_binom2(m - 1, q) == q_binom2(m, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(2, 25), BigUint::from(26u32));
        assert_eq!(q_int(1, 7), BigUint::one());
        assert_eq!(q_int(3, 4), BigUint::from(21u32)); // 1 + 4 + 16
    }

    #[test]
    fn q_binom2_values() {
        for q in 2..10u64 {
            assert_eq!(q_binom2(2, q), BigUint::one());
        }
        // (5^3 - 1)(5^2 - 1) / ((5 - 1)(5^2 - 1)) = 124 / 4
        assert_eq!(q_binom2(3, 5), BigUint::from(31u32));
        assert_eq!(q_binom2(3, 2), BigUint::from(7u32));
        assert_eq!(q_binom2(4, 3), BigUint::from(130u32));
        assert_eq!(q_binom2(1, 3), BigUint::zero());
    }

    #[test]
    fn q_binom2_quotient_is_exact() {
        // The defining quotient must divide exactly; recompute with an
        // explicit remainder check.
        for q in [2u64, 3, 4, 5, 7, 9, 11] {
            for m in 2..=8u32 {
                let num = (BigUint::from(q).pow(m) - 1u32)
                    * (BigUint::from(q).pow(m - 1) - 1u32);
                let den = BigUint::from(q - 1) * (BigUint::from(q).pow(2) - 1u32);
                assert!((&num % &den).is_zero());
                assert_eq!(num / den, q_binom2(m, q));
            }
        }
    }

    #[test]
    fn identity_holds_across_grid() {
        for q in [2u64, 3, 4, 5, 7, 9, 11, 25] {
            for m in 1..=10u32 {
                assert!(q_binom2_identity_holds(m, q), "m={m} q={q}");
            }
        }
    }
}

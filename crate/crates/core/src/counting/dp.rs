//! Exhaustive counters: a transfer-matrix dynamic program over the finite
//! group `SL_2(R)` that counts tuples of every target simultaneously, and an
//! independent literal enumerator used to cross-check it.

use crate::mat2::Mat2;
use crate::ring::Ring;
use crate::{Error, Result, Sign};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;

/// Largest ring size for which the dense `SL_2(R)` index is materialized.
/// The enumeration scans `|R|^4` entry combinations and stores about
/// `|R|^3` matrices.
pub const MAX_DP_RING: u32 = 32;

/// Guard for the literal tuple enumerator: `|R|^n` may not exceed this.
pub const NAIVE_GUARD: u128 = 1_000_000_000;

/// `SL_2(R)` materialized once and densely indexed, with `O(1)` lookup of a
/// matrix's index.
#[derive(Debug)]
pub struct Sl2 {
    ring: Ring,
    mats: Vec<Mat2>,
    index: HashMap<Mat2, u32>,
    id: u32,
    minus_id: u32,
}

impl Sl2 {
    /// Enumerate all matrices of determinant 1 by scanning entry
    /// combinations in canonical order.
    pub fn enumerate(ring: &Ring) -> Result<Sl2> {
        let size = ring.size();
        if size > MAX_DP_RING {
            return Err(Error::Resource(format!(
                "dense SL2 index over {ring} needs a scan of |R|^4 = {} entry \
                 combinations and about |R|^3 = {} matrices; the supported \
                 bound is |R| <= {MAX_DP_RING}",
                (size as u128).pow(4),
                (size as u128).pow(3),
            )));
        }
        let one = ring.one();
        let mut mats = Vec::new();
        for a in ring.elems() {
            for b in ring.elems() {
                for c in ring.elems() {
                    for d in ring.elems() {
                        let m = Mat2::new(a, b, c, d);
                        if m.det(ring) == one {
                            mats.push(m);
                        }
                    }
                }
            }
        }
        let index: HashMap<Mat2, u32> = mats
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        let id = index[&Mat2::identity(ring)];
        let minus_id = index[&Mat2::minus_identity(ring)];
        Ok(Sl2 {
            ring: ring.clone(),
            mats,
            index,
            id,
            minus_id,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the identity is always present
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.mats
    }

    pub fn index_of(&self, m: &Mat2) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn identity_index(&self) -> u32 {
        self.id
    }

    pub fn minus_identity_index(&self) -> u32 {
        self.minus_id
    }
}

/// Exact counts of all `n`-tuples over a ring, indexed by the `SL_2` element
/// their continuant product reaches. The counts sum to `|R|^n`.
#[derive(Debug)]
pub struct CountVector {
    sl2: Arc<Sl2>,
    n: u32,
    counts: Vec<BigUint>,
}

impl CountVector {
    pub fn ring(&self) -> &Ring {
        self.sl2.ring()
    }

    pub fn sl2(&self) -> &Arc<Sl2> {
        &self.sl2
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Count for an explicit target matrix; `None` if it is not in `SL_2(R)`.
    pub fn get(&self, target: &Mat2) -> Option<&BigUint> {
        self.sl2
            .index_of(target)
            .map(|i| &self.counts[i as usize])
    }

    /// Count for the scalar target `±Id`. In characteristic 2 both signs
    /// resolve to the same matrix and hence the same count.
    pub fn sign_count(&self, sign: Sign) -> &BigUint {
        let idx = match sign {
            Sign::Plus => self.sl2.id,
            Sign::Minus => self.sl2.minus_id,
        };
        &self.counts[idx as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mat2, &BigUint)> {
        self.sl2.mats.iter().zip(self.counts.iter())
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Count all `n`-tuples by their product, for every target at once.
///
/// State vector over `SL_2(R)`: `v_k[M]` is the number of `k`-tuples whose
/// product is `M`; appending an entry `a` sends `M` to `M_1(a)·M`, so one
/// step redistributes each state along the precomputed transition table.
pub fn dp_count_all(ring: &Ring, n: u32) -> Result<CountVector> {
    dp_count_with(Arc::new(Sl2::enumerate(ring)?), n)
}

/// [`dp_count_all`] against a shared, already-enumerated `SL_2` index.
pub fn dp_count_with(sl2: Arc<Sl2>, n: u32) -> Result<CountVector> {
    if n < 1 {
        return Err(Error::InvalidArgument("tuple size must be >= 1".into()));
    }
    let ring = sl2.ring().clone();
    let m = sl2.len();
    let size = ring.size() as usize;

    // trans[j * size + a] = index of M_1(a) · mats[j]
    let mut trans = vec![0u32; m * size];
    for (j, mat) in sl2.matrices().iter().enumerate() {
        for a in ring.elems() {
            let next = Mat2::mul(&ring, &Mat2::m1(&ring, a), mat);
            trans[j * size + a.index() as usize] =
                sl2.index_of(&next).expect("SL2 is closed under products");
        }
    }

    let mut counts = vec![BigUint::zero(); m];
    counts[sl2.identity_index() as usize] = BigUint::from(1u32);
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); m];
        for (j, count) in counts.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for a in 0..size {
                let t = trans[j * size + a] as usize;
                next[t] += count;
            }
        }
        counts = next;
    }
    Ok(CountVector { sl2, n, counts })
}

/// Literal enumeration of all `|R|^n` tuples, counting those whose product
/// is `target`. Independent of the transfer-matrix path: no shared state
/// beyond ring arithmetic.
pub fn naive_count(ring: &Ring, n: u32, target: &Mat2) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::InvalidArgument("tuple size must be >= 1".into()));
    }
    let work = (ring.size() as u128)
        .checked_pow(n)
        .filter(|&w| w <= NAIVE_GUARD);
    let Some(_) = work else {
        return Err(Error::Resource(format!(
            "literal enumeration of {}^{} tuples exceeds the guard of {NAIVE_GUARD}",
            ring.size(),
            n
        )));
    };
    let factors: Vec<Mat2> = ring.elems().map(|a| Mat2::m1(ring, a)).collect();

    fn rec(ring: &Ring, factors: &[Mat2], acc: &Mat2, depth: u32, target: &Mat2) -> u64 {
        if depth == 0 {
            return u64::from(acc == target);
        }
        let mut sum = 0u64;
        for f in factors {
            let next = Mat2::mul(ring, f, acc);
            sum += rec(ring, factors, &next, depth - 1, target);
        }
        sum
    }

    let id = Mat2::identity(ring);
    Ok(BigUint::from(rec(ring, &factors, &id, n, target)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::u_formula;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn sl2_sizes() {
        // |SL_2(F_q)| = q^3 - q; |SL_2(Z/NZ)| = N^3 prod (1 - 1/p^2).
        assert_eq!(Sl2::enumerate(&Ring::zmod(5).unwrap()).unwrap().len(), 120);
        assert_eq!(Sl2::enumerate(&Ring::gf(2, 2).unwrap()).unwrap().len(), 60);
        assert_eq!(Sl2::enumerate(&Ring::zmod(4).unwrap()).unwrap().len(), 48);
        assert_eq!(
            Sl2::enumerate(&Ring::zmod(16).unwrap()).unwrap().len(),
            3072
        );
        assert_eq!(
            Sl2::enumerate(&Ring::zmod(12).unwrap()).unwrap().len(),
            1152
        );
    }

    #[test]
    fn sl2_resource_guard() {
        let r = Ring::zmod(100).unwrap();
        assert!(matches!(Sl2::enumerate(&r), Err(Error::Resource(_))));
    }

    #[test]
    fn dp_examples() {
        let z4 = Ring::zmod(4).unwrap();
        let v = dp_count_all(&z4, 4).unwrap();
        assert_eq!(*v.sign_count(Sign::Plus), big(8));
        assert_eq!(*v.sign_count(Sign::Minus), big(4));
        assert_eq!(v.total(), big(256));

        let f2 = Ring::zmod(2).unwrap();
        assert_eq!(*dp_count_all(&f2, 6).unwrap().sign_count(Sign::Plus), big(11));

        let z11 = Ring::zmod(11).unwrap();
        assert_eq!(
            *dp_count_all(&z11, 8).unwrap().sign_count(Sign::Minus),
            big(162_260)
        );
    }

    #[test]
    fn mass_is_preserved() {
        for spec in ["zmod:2", "zmod:6", "gf:2^3", "gf:3^2", "zmod:12"] {
            let r = Ring::parse(spec).unwrap();
            for n in 1..=5u32 {
                let v = dp_count_all(&r, n).unwrap();
                assert_eq!(v.total(), BigUint::from(r.size()).pow(n), "{spec} n={n}");
            }
        }
    }

    #[test]
    fn naive_examples() {
        let z3 = Ring::zmod(3).unwrap();
        assert_eq!(
            naive_count(&z3, 5, &Mat2::minus_identity(&z3)).unwrap(),
            big(10)
        );
        let z2 = Ring::zmod(2).unwrap();
        assert_eq!(naive_count(&z2, 7, &Mat2::identity(&z2)).unwrap(), big(21));
        for spec in ["zmod:5", "gf:2^2"] {
            let r = Ring::parse(spec).unwrap();
            assert_eq!(naive_count(&r, 1, &Mat2::identity(&r)).unwrap(), big(0));
            assert_eq!(
                naive_count(&r, 1, &Mat2::minus_identity(&r)).unwrap(),
                big(0)
            );
        }
    }

    #[test]
    fn naive_guard() {
        let r = Ring::zmod(1000).unwrap();
        let id = Mat2::identity(&r);
        assert!(matches!(naive_count(&r, 4, &id), Err(Error::Resource(_))));
    }

    #[test]
    fn naive_agrees_with_dp() {
        for spec in ["zmod:2", "zmod:3", "zmod:4", "zmod:6", "gf:2^2", "gf:3^2"] {
            let r = Ring::parse(spec).unwrap();
            for n in 1..=4u32 {
                let v = dp_count_all(&r, n).unwrap();
                for (mat, count) in v.iter() {
                    assert_eq!(
                        naive_count(&r, n, mat).unwrap(),
                        *count,
                        "{spec} n={n} {mat:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn odd_size_counts_are_sign_symmetric() {
        // Entrywise negation gives dp[Id] = dp[-Id] in odd size over any
        // field of odd characteristic.
        for spec in ["zmod:3", "zmod:5", "zmod:7", "gf:3^2"] {
            let r = Ring::parse(spec).unwrap();
            for n in [3u32, 5, 7] {
                let v = dp_count_all(&r, n).unwrap();
                assert_eq!(v.sign_count(Sign::Plus), v.sign_count(Sign::Minus));
            }
        }
    }

    #[test]
    fn field_and_ring_of_size_four_differ() {
        let f4 = Ring::gf(2, 2).unwrap();
        let z4 = Ring::zmod(4).unwrap();
        let f4_count = dp_count_all(&f4, 6).unwrap().sign_count(Sign::Minus).clone();
        let z4_count = dp_count_all(&z4, 6).unwrap().sign_count(Sign::Minus).clone();
        assert_eq!(f4_count, big(79));
        assert_eq!(z4_count, big(96));
        assert_ne!(f4_count, z4_count);
    }

    #[test]
    fn counts_do_not_depend_on_the_reduction_polynomial() {
        // Two distinct irreducible quadratics over F_3 present the same F_9.
        let a = Ring::parse("gf:3^2:poly=1,0,1").unwrap();
        let b = Ring::parse("gf:3^2:poly=2,1,1").unwrap();
        assert_ne!(a, b);
        for n in 1..=7u32 {
            let va = dp_count_all(&a, n).unwrap();
            let vb = dp_count_all(&b, n).unwrap();
            assert_eq!(va.sign_count(Sign::Plus), vb.sign_count(Sign::Plus));
            assert_eq!(va.sign_count(Sign::Minus), vb.sign_count(Sign::Minus));
        }
    }

    #[test]
    fn dp_agrees_with_closed_forms_spot_checks() {
        let f4 = Ring::gf(2, 2).unwrap();
        assert_eq!(
            *dp_count_all(&f4, 6).unwrap().sign_count(Sign::Minus),
            u_formula(6, 4, Sign::Minus).unwrap()
        );
        let f9 = Ring::gf(3, 2).unwrap();
        assert_eq!(
            *dp_count_all(&f9, 7).unwrap().sign_count(Sign::Plus),
            u_formula(7, 9, Sign::Plus).unwrap()
        );
    }

    #[test]
    fn shared_index_reuse() {
        let r = Ring::zmod(3).unwrap();
        let sl2 = Arc::new(Sl2::enumerate(&r).unwrap());
        let v5 = dp_count_with(Arc::clone(&sl2), 5).unwrap();
        let v6 = dp_count_with(Arc::clone(&sl2), 6).unwrap();
        assert_eq!(*v5.sign_count(Sign::Minus), big(10));
        assert_eq!(*v6.sign_count(Sign::Plus), big(26));
    }
}

//! Finite commutative coefficient rings: `Z/NZ` and `F_{p^k}`.
//!
//! Every ring fixes a canonical enumeration of its elements by an index in
//! `[0, |R|)`: residues for `Z/NZ`, base-`p` digit encodings of the
//! polynomial representative for `F_{p^k}`. All tuple orderings elsewhere in
//! the crate (canonical dihedral representatives, search pruning) compare
//! these indices, so the enumeration is part of the contract.
//!
//! Rings are immutable after construction and all operations are pure.

use crate::{Error, Result};
use std::fmt;

/// Largest modulus accepted for `Z/NZ`. Arithmetic uses `u64` intermediates,
/// which stay exact up to `N < 2^31`.
pub const MAX_ZMOD: u32 = 1 << 31;

/// Largest field size for which construction performs the exhaustive
/// irreducibility check of the reduction polynomial.
pub const MAX_FIELD: u32 = 1 << 16;

/// A ring element, identified by its canonical index in `[0, |R|)`.
///
/// Elements carry no ring pointer; all arithmetic goes through the [`Ring`]
/// that produced them.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Specification of a finite coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// The ring `Z/NZ`, `N >= 2`.
    Zmod { modulus: u32 },
    /// The field `F_{p^k}` presented as `F_p[x]` modulo a monic irreducible
    /// polynomial `poly = c_0 + c_1 x + ... + c_k x^k` (so `poly.len() == k+1`
    /// and `poly[k] == 1`).
    FiniteField { p: u32, k: u32, poly: Vec<u32> },
}

impl RingSpec {
    /// Parse a CLI ring string: `zmod:N` or `gf:p^k[:poly=c0,c1,...,ck]`.
    pub fn parse(s: &str) -> Result<RingSpec> {
        let bad = |msg: &str| Error::InvalidRing(format!("{msg} (in `{s}`)"));
        let mut parts = s.split(':');
        match parts.next() {
            Some("zmod") => {
                let n: u32 = parts
                    .next()
                    .ok_or_else(|| bad("missing modulus"))?
                    .parse()
                    .map_err(|_| bad("modulus is not an integer"))?;
                if parts.next().is_some() {
                    return Err(bad("trailing components"));
                }
                Ok(RingSpec::Zmod { modulus: n })
            }
            Some("gf") => {
                let pk = parts.next().ok_or_else(|| bad("missing p^k"))?;
                let (p, k) = match pk.split_once('^') {
                    Some((p, k)) => (
                        p.parse().map_err(|_| bad("p is not an integer"))?,
                        k.parse().map_err(|_| bad("k is not an integer"))?,
                    ),
                    None => (pk.parse().map_err(|_| bad("p is not an integer"))?, 1),
                };
                let poly = match parts.next() {
                    None => default_poly(p, k)?,
                    Some(rest) => {
                        let coeffs = rest
                            .strip_prefix("poly=")
                            .ok_or_else(|| bad("expected `poly=c0,c1,...`"))?;
                        coeffs
                            .split(',')
                            .map(|c| c.parse().map_err(|_| bad("bad coefficient")))
                            .collect::<Result<Vec<u32>>>()?
                    }
                };
                if parts.next().is_some() {
                    return Err(bad("trailing components"));
                }
                Ok(RingSpec::FiniteField { p, k, poly })
            }
            _ => Err(bad("expected `zmod:...` or `gf:...`")),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod { modulus } => write!(f, "zmod:{modulus}"),
            RingSpec::FiniteField { p, k, poly } => {
                write!(f, "gf:{p}^{k}:poly=")?;
                for (i, c) in poly.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Built-in monic irreducible polynomials for the field sizes used by the
/// counting tables. Counts do not depend on the choice; tests assert that.
fn default_poly(p: u32, k: u32) -> Result<Vec<u32>> {
    if k == 1 {
        // F_p[x]/(x) is F_p itself.
        return Ok(vec![0, 1]);
    }
    let poly: &[u32] = match (p, k) {
        (2, 2) => &[1, 1, 1],          // x^2 + x + 1
        (2, 3) => &[1, 1, 0, 1],       // x^3 + x + 1
        (2, 4) => &[1, 1, 0, 0, 1],    // x^4 + x + 1
        (3, 2) => &[1, 0, 1],          // x^2 + 1
        (3, 3) => &[1, 2, 0, 1],       // x^3 + 2x + 1
        (5, 2) => &[2, 0, 1],          // x^2 + 2
        _ => {
            return Err(Error::InvalidRing(format!(
                "no built-in reduction polynomial for gf:{p}^{k}; pass poly=c0,...,ck"
            )))
        }
    };
    Ok(poly.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Zmod {
        n: u32,
    },
    Field {
        p: u32,
        k: u32,
        size: u32,
        /// Monic reduction polynomial, `k + 1` coefficients mod `p`.
        poly: Vec<u32>,
    },
}

/// A finite commutative ring with exact arithmetic on canonically indexed
/// elements. Cheap to clone, safe to share across threads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    spec: RingSpec,
    kind: Kind,
}

impl Ring {
    /// Construct a ring from its specification, validating the invariants:
    /// `N >= 2` for `Z/NZ`; `p` prime, the polynomial monic of degree `k` and
    /// irreducible over `F_p` (checked exhaustively) for `F_{p^k}`.
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let kind = match &spec {
            RingSpec::Zmod { modulus } => {
                if *modulus < 2 {
                    return Err(Error::InvalidRing(format!(
                        "modulus must be >= 2, got {modulus}"
                    )));
                }
                if *modulus >= MAX_ZMOD {
                    return Err(Error::InvalidRing(format!(
                        "modulus {modulus} exceeds the supported bound {MAX_ZMOD}"
                    )));
                }
                Kind::Zmod { n: *modulus }
            }
            RingSpec::FiniteField { p, k, poly } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidRing(format!("{p} is not prime")));
                }
                if *k < 1 {
                    return Err(Error::InvalidRing("degree k must be >= 1".into()));
                }
                let size = (*p as u64).checked_pow(*k).filter(|&s| s <= MAX_FIELD as u64);
                let size = size.ok_or_else(|| {
                    Error::InvalidRing(format!("field size {p}^{k} exceeds {MAX_FIELD}"))
                })? as u32;
                let poly: Vec<u32> = poly.iter().map(|c| c % p).collect();
                if poly.len() != *k as usize + 1 || poly[*k as usize] != 1 {
                    return Err(Error::InvalidRing(format!(
                        "reduction polynomial must be monic of degree {k}"
                    )));
                }
                if !poly_is_irreducible(&poly, *p) {
                    return Err(Error::InvalidRing(format!(
                        "reduction polynomial is reducible over F_{p}"
                    )));
                }
                Kind::Field {
                    p: *p,
                    k: *k,
                    size,
                    poly,
                }
            }
        };
        Ok(Ring { spec, kind })
    }

    /// Convenience constructor for `Z/NZ`.
    pub fn zmod(n: u32) -> Result<Ring> {
        Ring::new(RingSpec::Zmod { modulus: n })
    }

    /// Convenience constructor for `F_{p^k}` with the built-in polynomial.
    pub fn gf(p: u32, k: u32) -> Result<Ring> {
        Ring::new(RingSpec::FiniteField {
            p,
            k,
            poly: default_poly(p, k)?,
        })
    }

    pub fn parse(s: &str) -> Result<Ring> {
        Ring::new(RingSpec::parse(s)?)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Number of elements `|R|`.
    pub fn size(&self) -> u32 {
        match &self.kind {
            Kind::Zmod { n } => *n,
            Kind::Field { size, .. } => *size,
        }
    }

    /// The characteristic of the ring (`N` for `Z/NZ`, `p` for `F_{p^k}`).
    pub fn characteristic(&self) -> u32 {
        match &self.kind {
            Kind::Zmod { n } => *n,
            Kind::Field { p, .. } => *p,
        }
    }

    pub fn is_zmod(&self) -> bool {
        matches!(self.kind, Kind::Zmod { .. })
    }

    pub fn is_field(&self) -> bool {
        match &self.kind {
            Kind::Zmod { n } => is_prime(*n),
            Kind::Field { .. } => true,
        }
    }

    /// Whether `1 = -1`, i.e. the ring has characteristic 2. The two scalar
    /// targets `+Id` and `-Id` coincide exactly in this case.
    pub fn one_equals_minus_one(&self) -> bool {
        self.characteristic() == 2
    }

    /// The element with canonical index `i`.
    pub fn elem(&self, i: u32) -> Result<Elem> {
        if i < self.size() {
            Ok(Elem(i))
        } else {
            Err(Error::InvalidArgument(format!(
                "index {i} out of range for {} of size {}",
                self.spec,
                self.size()
            )))
        }
    }

    /// All elements in canonical order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.size()).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        // |R| >= 2 always; for fields, index 1 encodes the constant 1.
        Elem(1)
    }

    pub fn minus_one(&self) -> Elem {
        self.neg(self.one())
    }

    /// The image of an integer under the canonical map `Z -> R`.
    pub fn from_int(&self, v: i64) -> Elem {
        let c = self.characteristic() as i64;
        let r = v.rem_euclid(c) as u32;
        Elem(r) // constant digit encoding for fields, residue for Z/NZ
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            Kind::Zmod { n } => Elem(((a.0 as u64 + b.0 as u64) % *n as u64) as u32),
            Kind::Field { p, k, .. } => {
                let (mut x, y) = (a.0, b.0);
                let mut out = 0u32;
                let mut mult = 1u32;
                let mut yy = y;
                for _ in 0..*k {
                    let da = x % p;
                    let db = yy % p;
                    out += ((da + db) % p) * mult;
                    mult *= p;
                    x /= p;
                    yy /= p;
                }
                Elem(out)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.kind {
            Kind::Zmod { n } => Elem(if a.0 == 0 { 0 } else { n - a.0 }),
            Kind::Field { p, k, .. } => {
                let mut x = a.0;
                let mut out = 0u32;
                let mut mult = 1u32;
                for _ in 0..*k {
                    let d = x % p;
                    out += (if d == 0 { 0 } else { p - d }) * mult;
                    mult *= p;
                    x /= p;
                }
                Elem(out)
            }
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            Kind::Zmod { n } => Elem(((a.0 as u64 * b.0 as u64) % *n as u64) as u32),
            Kind::Field { p, k, poly, .. } => {
                let k = *k as usize;
                let da = digits(a.0, *p, k);
                let db = digits(b.0, *p, k);
                // Convolution product, degree <= 2k - 2.
                let mut prod = vec![0u64; 2 * k - 1];
                for (i, &ca) in da.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for (j, &cb) in db.iter().enumerate() {
                        prod[i + j] += ca as u64 * cb as u64;
                    }
                }
                let mut prod: Vec<u32> = prod.iter().map(|&c| (c % *p as u64) as u32).collect();
                // Reduce by the monic polynomial, eliminating top coefficients.
                for i in (k..prod.len()).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for j in 0..k {
                        let sub = (c as u64 * poly[j] as u64) % *p as u64;
                        let cur = prod[i - k + j] as u64;
                        prod[i - k + j] = ((cur + *p as u64 - sub) % *p as u64) as u32;
                    }
                }
                Elem(encode(&prod[..k], *p))
            }
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match &self.kind {
            Kind::Zmod { n } => gcd(a.0 as u64, *n as u64) == 1,
            Kind::Field { .. } => a.0 != 0,
        }
    }

    /// Multiplicative inverse, defined exactly on units.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        match &self.kind {
            Kind::Zmod { n } => mod_inverse(a.0 as i64, *n as i64).map(|v| Elem(v as u32)),
            Kind::Field { size, .. } => {
                if a.0 == 0 {
                    None
                } else {
                    Some(self.pow(a, *size as u64 - 2))
                }
            }
        }
    }

    /// Whether `a` is `1` or `-1`. In characteristic 2 there is a single such
    /// element.
    pub fn is_pm_one(&self, a: Elem) -> bool {
        a == self.one() || a == self.minus_one()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

fn digits(mut x: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn encode(digits: &[u32], p: u32) -> u32 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * p as u64 + d as u64;
    }
    out as u32
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-power factorization of `n >= 2` as `(p, alpha)` pairs, increasing `p`.
pub fn prime_power_factorization(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n % p == 0 {
            let mut alpha = 0;
            while n % p == 0 {
                n /= p;
                alpha += 1;
            }
            out.push((p, alpha));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// Polynomial helpers over F_p, used only for the construction-time
// irreducibility check. Coefficients are little-endian mod p.

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1; // b is monic, b.last() == 1
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for j in 0..=db {
                let sub = (lead as u64 * b[j] as u64) % p as u64;
                let cur = r[shift + j] as u64;
                r[shift + j] = ((cur + p as u64 - sub) % p as u64) as u32;
            }
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Exhaustive irreducibility check: no monic divisor of degree `1..=k/2`.
fn poly_is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    if k == 1 {
        return true;
    }
    // p^(k/2) <= sqrt(MAX_FIELD), so the scan stays small.
    for d in 1..=(k / 2) {
        let count = p.pow(d as u32);
        for idx in 0..count {
            // Monic candidate of degree d, low coefficients encoding idx.
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem(poly, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A CRT decomposition of `Z/NZ` into `Z/f_i Z` for pairwise coprime factors
/// with product `N`, with componentwise tuple splitting and recombination.
#[derive(Clone, Debug)]
pub struct CrtSplit {
    ring: Ring,
    factors: Vec<Ring>,
}

/// Build the splitting map for `Z/NZ` from an explicit factor list. The
/// factors must be pairwise coprime with product exactly `N`.
pub fn crt_split(n: u32, factors: &[u32]) -> Result<CrtSplit> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("empty factor list".into()));
    }
    let mut product = 1u64;
    for &f in factors {
        if f < 2 {
            return Err(Error::InvalidArgument(format!("factor {f} < 2")));
        }
        product = product.saturating_mul(f as u64);
    }
    if product != n as u64 {
        return Err(Error::InvalidArgument(format!(
            "factor product {product} != modulus {n}"
        )));
    }
    for (i, &a) in factors.iter().enumerate() {
        for &b in &factors[i + 1..] {
            if gcd(a as u64, b as u64) != 1 {
                return Err(Error::InvalidArgument(format!(
                    "factors {a} and {b} are not coprime"
                )));
            }
        }
    }
    Ok(CrtSplit {
        ring: Ring::zmod(n)?,
        factors: factors
            .iter()
            .map(|&f| Ring::zmod(f))
            .collect::<Result<_>>()?,
    })
}

impl CrtSplit {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn factors(&self) -> &[Ring] {
        &self.factors
    }

    /// Componentwise reduction of a tuple over `Z/NZ` into one tuple per factor.
    pub fn split(&self, tuple: &[Elem]) -> Vec<Vec<Elem>> {
        self.factors
            .iter()
            .map(|f| {
                tuple
                    .iter()
                    .map(|e| Elem(e.0 % f.size()))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Inverse of [`CrtSplit::split`].
    pub fn recombine(&self, parts: &[Vec<Elem>]) -> Result<Vec<Elem>> {
        if parts.len() != self.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} component tuples, got {}",
                self.factors.len(),
                parts.len()
            )));
        }
        let len = parts.first().map_or(0, |t| t.len());
        if parts.iter().any(|t| t.len() != len) {
            return Err(Error::InvalidArgument(
                "component tuples have different lengths".into(),
            ));
        }
        let mut out = Vec::with_capacity(len);
        for pos in 0..len {
            let mut x = 0i128; // running solution modulo `m`
            let mut m = 1i128;
            for (part, factor) in parts.iter().zip(&self.factors) {
                let f = factor.size() as i128;
                let r = part[pos].0 as i128;
                // Solve x + m*t ≡ r (mod f).
                let minv = mod_inverse((m % f) as i64, f as i64).ok_or_else(|| {
                    Error::InvalidArgument("factors are not coprime".into())
                })?;
                let t = ((r - x).rem_euclid(f) * minv as i128).rem_euclid(f);
                x += m * t;
                m *= f;
            }
            out.push(Elem(x as u32));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let r = Ring::zmod(5).unwrap();
        assert_eq!(r.size(), 5);
        assert_eq!(r.one(), Elem(1));
        assert_eq!(r.neg(r.one()), Elem(4));
        assert_eq!(r.add(Elem(3), Elem(4)), Elem(2));
        assert_eq!(r.mul(Elem(3), Elem(4)), Elem(2));
    }

    #[test]
    fn zmod_units() {
        let r = Ring::zmod(12).unwrap();
        assert!(!r.is_unit(Elem(4)));
        assert_eq!(r.inv(Elem(4)), None);
        assert_eq!(r.inv(Elem(5)), Some(Elem(5))); // 5 * 5 = 25 ≡ 1 (mod 12)
    }

    #[test]
    fn gf4_reduction_relation() {
        // In F_4 = F_2[x]/(x^2+x+1), with t the class of x: t*t = t + 1.
        let r = Ring::gf(2, 2).unwrap();
        let t = Elem(2); // digits (0,1)
        let t_plus_1 = Elem(3); // digits (1,1)
        assert_eq!(r.mul(t, t), t_plus_1);
        assert_eq!(r.size(), 4);
    }

    #[test]
    fn construction_errors() {
        assert!(Ring::zmod(1).is_err());
        assert!(Ring::new(RingSpec::FiniteField {
            p: 4,
            k: 2,
            poly: vec![1, 1, 1]
        })
        .is_err());
        // x^2 + 1 is reducible over F_2 ((x+1)^2).
        assert!(Ring::new(RingSpec::FiniteField {
            p: 2,
            k: 2,
            poly: vec![1, 0, 1]
        })
        .is_err());
        // Non-monic.
        assert!(Ring::new(RingSpec::FiniteField {
            p: 3,
            k: 2,
            poly: vec![1, 0, 2]
        })
        .is_err());
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        let rings = [
            Ring::zmod(2).unwrap(),
            Ring::zmod(6).unwrap(),
            Ring::zmod(12).unwrap(),
            Ring::zmod(16).unwrap(),
            Ring::gf(2, 2).unwrap(),
            Ring::gf(2, 3).unwrap(),
            Ring::gf(3, 2).unwrap(),
            Ring::gf(2, 4).unwrap(),
        ];
        for r in &rings {
            for a in r.elems() {
                assert_eq!(r.add(a, r.zero()), a);
                assert_eq!(r.mul(a, r.one()), a);
                assert_eq!(r.add(a, r.neg(a)), r.zero());
                // is_unit(a) ⇔ ∃b: ab = 1
                let has_inverse = r.elems().any(|b| r.mul(a, b) == r.one());
                assert_eq!(r.is_unit(a), has_inverse, "{} unit {:?}", r, a);
                if let Some(inv) = r.inv(a) {
                    assert_eq!(r.mul(a, inv), r.one());
                } else {
                    assert!(!r.is_unit(a));
                }
                for b in r.elems() {
                    assert_eq!(r.add(a, b), r.add(b, a));
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for c in r.elems() {
                        assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                        assert_eq!(
                            r.mul(a, r.add(b, c)),
                            r.add(r.mul(a, b), r.mul(a, c)),
                            "distributivity in {}",
                            r
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_f25_f27_sampled() {
        for r in [Ring::gf(5, 2).unwrap(), Ring::gf(3, 3).unwrap()] {
            let probe: Vec<Elem> = (0..r.size()).step_by(3).map(Elem).collect();
            for &a in &probe {
                for &b in &probe {
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for &c in &probe {
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                    }
                }
                if a.0 != 0 {
                    assert_eq!(r.mul(a, r.inv(a).unwrap()), r.one());
                }
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["zmod:12", "gf:2^2", "gf:3^2:poly=2,2,1", "gf:5"] {
            let r = Ring::parse(s).unwrap();
            let reparsed = Ring::parse(&r.spec().to_string()).unwrap();
            assert_eq!(r, reparsed);
        }
        assert!(Ring::parse("zmod:1").is_err());
        assert!(Ring::parse("gf:6^2").is_err());
        assert!(Ring::parse("field:5").is_err());
    }

    #[test]
    fn crt_split_example() {
        let split = crt_split(12, &[4, 3]).unwrap();
        let tuple = [Elem(7), Elem(10)];
        let parts = split.split(&tuple);
        assert_eq!(parts[0], vec![Elem(3), Elem(2)]); // mod 4
        assert_eq!(parts[1], vec![Elem(1), Elem(1)]); // mod 3
        assert_eq!(split.recombine(&parts).unwrap(), tuple.to_vec());
    }

    #[test]
    fn crt_errors() {
        assert!(crt_split(12, &[6, 2]).is_err()); // not coprime
        assert!(crt_split(12, &[4, 2]).is_err()); // wrong product
    }

    #[test]
    fn crt_bijection_exhaustive() {
        // Round-trip on all length-2 tuples for every composite N <= 16.
        for n in 2u32..=16 {
            let factors: Vec<u32> = prime_power_factorization(n)
                .iter()
                .map(|&(p, a)| p.pow(a))
                .collect();
            let split = crt_split(n, &factors).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in 0..n {
                for b in 0..n {
                    let tuple = vec![Elem(a), Elem(b)];
                    let parts = split.split(&tuple);
                    assert!(seen.insert(parts.clone()), "splitting not injective");
                    assert_eq!(split.recombine(&parts).unwrap(), tuple);
                }
            }
            assert_eq!(seen.len(), (n * n) as usize);
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(prime_power_factorization(12), vec![(2, 2), (3, 1)]);
        assert_eq!(prime_power_factorization(30), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(prime_power_factorization(16), vec![(2, 4)]);
        assert_eq!(prime_power_factorization(7), vec![(7, 1)]);
    }

    #[test]
    fn canonical_order_is_index_order() {
        let r = Ring::gf(3, 2).unwrap();
        let elems: Vec<Elem> = r.elems().collect();
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
    }
}

//! 2×2 matrices over a ring and the continuant product `M_n`.
//!
//! The elementary factor is `M_1(a) = [a -1; 1 0]` and
//! `M_n(a_1, ..., a_n) = M_1(a_n) · M_1(a_{n-1}) · ... · M_1(a_1)`; the
//! leftmost factor belongs to the *last* tuple entry. Appending an entry to a
//! tuple therefore multiplies its product matrix on the left. All downstream
//! counting and reducibility bookkeeping depends on this factor order.

use crate::ring::{Elem, Ring};
use crate::{Error, Result};

/// A 2×2 matrix `[[a, b], [c, d]]` over some ring, row-major.
///
/// The matrix does not carry its ring; pair it with the `Ring` that produced
/// its entries. Everything built from [`Mat2::m1`] by products has
/// determinant 1.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Mat2 {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(ring: &Ring) -> Mat2 {
        Mat2::new(ring.one(), ring.zero(), ring.zero(), ring.one())
    }

    pub fn minus_identity(ring: &Ring) -> Mat2 {
        Mat2::new(ring.minus_one(), ring.zero(), ring.zero(), ring.minus_one())
    }

    /// The elementary factor `[a -1; 1 0]`.
    pub fn m1(ring: &Ring, a: Elem) -> Mat2 {
        Mat2::new(a, ring.minus_one(), ring.one(), ring.zero())
    }

    /// The modular-group generator `S = [0 -1; 1 0] = M_1(0)`.
    pub fn s(ring: &Ring) -> Mat2 {
        Mat2::m1(ring, ring.zero())
    }

    /// The modular-group generator `T = [1 1; 0 1]`.
    pub fn t(ring: &Ring) -> Mat2 {
        Mat2::new(ring.one(), ring.one(), ring.zero(), ring.one())
    }

    pub fn mul(ring: &Ring, x: &Mat2, y: &Mat2) -> Mat2 {
        let dot = |u: Elem, v: Elem, s: Elem, t: Elem| {
            ring.add(ring.mul(u, v), ring.mul(s, t))
        };
        Mat2::new(
            dot(x.a, y.a, x.b, y.c),
            dot(x.a, y.b, x.b, y.d),
            dot(x.c, y.a, x.d, y.c),
            dot(x.c, y.b, x.d, y.d),
        )
    }

    pub fn neg(&self, ring: &Ring) -> Mat2 {
        Mat2::new(
            ring.neg(self.a),
            ring.neg(self.b),
            ring.neg(self.c),
            ring.neg(self.d),
        )
    }

    pub fn det(&self, ring: &Ring) -> Elem {
        ring.sub(ring.mul(self.a, self.d), ring.mul(self.b, self.c))
    }
}

/// Result of comparing a matrix against the two scalar targets.
///
/// In characteristic 2, `Id = -Id`; [`classify`] returns `PlusId` there, and
/// callers must treat the two targets as a single one.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum MatClass {
    PlusId,
    MinusId,
    Other,
}

pub fn classify(ring: &Ring, m: &Mat2) -> MatClass {
    if *m == Mat2::identity(ring) {
        MatClass::PlusId
    } else if *m == Mat2::minus_identity(ring) {
        MatClass::MinusId
    } else {
        MatClass::Other
    }
}

/// The continuant product `M_n(a_1, ..., a_n)` of a nonempty tuple.
pub fn product(ring: &Ring, entries: &[Elem]) -> Result<Mat2> {
    if entries.is_empty() {
        return Err(Error::InvalidArgument(
            "the continuant product of an empty tuple is not defined".into(),
        ));
    }
    let mut acc = Mat2::m1(ring, entries[0]);
    for &a in &entries[1..] {
        acc = Mat2::mul(ring, &Mat2::m1(ring, a), &acc);
    }
    Ok(acc)
}

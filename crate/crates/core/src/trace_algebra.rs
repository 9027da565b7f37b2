//! Matrix-level ground truth for the polynomial formulas.
//!
//! Everything on the cubic surfaces is a shadow of `SL2` representations:
//! Fricke coordinates are traces, boundary traces are traces of boundary
//! loops, and Dehn twists lift to explicit substitutions on matrix tuples.
//! These functions let the polynomial layer be checked against direct matrix
//! arithmetic.

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::moves::{Curve11, Direction, Index04};
use crate::surfaces::{Coord, Cubic04, Point3};

/// A 2x2 matrix `[[m11, m12], [m21, m22]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

impl<T: Coord> Mat2<T> {
    pub fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Mat2::new(T::from_i64(1), T::from_i64(0), T::from_i64(0), T::from_i64(1))
    }

    pub fn trace(&self) -> T {
        self.m11.clone() + self.m22.clone()
    }

    pub fn det(&self) -> T {
        self.m11.clone() * self.m22.clone() - self.m12.clone() * self.m21.clone()
    }

    /// Adjugate; equals the inverse for determinant-one matrices.
    pub fn adj(&self) -> Self {
        Mat2::new(self.m22.clone(), -self.m12.clone(), -self.m21.clone(), self.m11.clone())
    }

    pub fn inv(&self) -> Self {
        self.adj()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.m11.clone() * o.m11.clone() + self.m12.clone() * o.m21.clone(),
            self.m11.clone() * o.m12.clone() + self.m12.clone() * o.m22.clone(),
            self.m21.clone() * o.m11.clone() + self.m22.clone() * o.m21.clone(),
            self.m21.clone() * o.m12.clone() + self.m22.clone() * o.m22.clone(),
        )
    }

    /// `self * g * self^-1`.
    pub fn conj(&self, g: &Self) -> Self {
        self.mul(g).mul(&self.inv())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

/// Product of a slice of matrices, left to right.
pub fn product<T: Coord>(ms: &[&Mat2<T>]) -> Mat2<T> {
    ms.iter().fold(Mat2::identity(), |acc, m| acc.mul(m))
}

/// Representation of `pi_1` of the one-holed torus (free on two generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepPair<T> {
    pub a: Mat2<T>,
    pub b: Mat2<T>,
}

/// Representation of `pi_1` of the four-holed sphere: boundary monodromies
/// with `C1 C2 C3 C4 = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepQuad<T> {
    c: [Mat2<T>; 4],
}

impl<T: Coord> RepQuad<T> {
    pub fn new(c1: Mat2<T>, c2: Mat2<T>, c3: Mat2<T>, c4: Mat2<T>) -> Result<Self> {
        let q = RepQuad { c: [c1, c2, c3, c4] };
        if T::EXACT && !product(&[&q.c[0], &q.c[1], &q.c[2], &q.c[3]]).is_identity() {
            return Err(Error::ProductRelation);
        }
        Ok(q)
    }

    /// Completes `(C1, C2, C3)` with `C4 = (C1 C2 C3)^-1`.
    pub fn from_three(c1: Mat2<T>, c2: Mat2<T>, c3: Mat2<T>) -> Self {
        let c4 = product(&[&c1, &c2, &c3]).inv();
        RepQuad { c: [c1, c2, c3, c4] }
    }

    pub fn matrices(&self) -> &[Mat2<T>; 4] {
        &self.c
    }

    pub fn boundary_product(&self) -> Mat2<T> {
        product(&[&self.c[0], &self.c[1], &self.c[2], &self.c[3]])
    }
}

/// `tr(A) tr(B) - tr(AB) - tr(AB^-1)`; identically zero on `SL2`.
pub fn trace_product_identity<T: Coord>(a: &Mat2<T>, b: &Mat2<T>) -> T {
    a.trace() * b.trace() - a.mul(b).trace() - a.mul(&b.inv()).trace()
}

/// `(tr A, tr B, tr AB)`.
pub fn fricke_coords<T: Coord>(a: &Mat2<T>, b: &Mat2<T>) -> Point3<T> {
    Point3::new(a.trace(), b.trace(), a.mul(b).trace())
}

/// `tr(A B A^-1 B^-1)`.
pub fn commutator_trace<T: Coord>(a: &Mat2<T>, b: &Mat2<T>) -> T {
    product(&[a, b, &a.inv(), &b.inv()]).trace()
}

/// The eight trace coordinates of a rank-3 free group representation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceCoords3<T> {
    pub t1: T,
    pub t2: T,
    pub t3: T,
    pub t12: T,
    pub t23: T,
    pub t13: T,
    pub t123: T,
    pub t132: T,
}

impl<T: Coord> TraceCoords3<T> {
    pub fn of(a1: &Mat2<T>, a2: &Mat2<T>, a3: &Mat2<T>) -> Self {
        TraceCoords3 {
            t1: a1.trace(),
            t2: a2.trace(),
            t3: a3.trace(),
            t12: a1.mul(a2).trace(),
            t23: a2.mul(a3).trace(),
            t13: a1.mul(a3).trace(),
            t123: product(&[a1, a2, a3]).trace(),
            t132: product(&[a1, a3, a2]).trace(),
        }
    }
}

/// Residuals of the two relations cutting out the rank-3 character variety:
/// the sum `t123 + t132` and the product `t123 * t132`, each expressed in the
/// six lower traces. Both vanish on every `SL2` triple.
pub fn f3_relations<T: Coord>(a1: &Mat2<T>, a2: &Mat2<T>, a3: &Mat2<T>) -> (T, T) {
    f3_relations_from(&TraceCoords3::of(a1, a2, a3))
}

pub fn f3_relations_from<T: Coord>(t: &TraceCoords3<T>) -> (T, T) {
    let TraceCoords3 {
        t1,
        t2,
        t3,
        t12,
        t23,
        t13,
        t123,
        t132,
    } = t.clone();
    let sq = |v: &T| v.clone() * v.clone();
    let sum = t123.clone() + t132.clone()
        - (t12.clone() * t3.clone() + t13.clone() * t2.clone() + t23.clone() * t1.clone()
            - t1.clone() * t2.clone() * t3.clone());
    let bracket = (sq(&t1) + sq(&t2) + sq(&t3)) + (sq(&t12) + sq(&t23) + sq(&t13))
        - (t1.clone() * t2.clone() * t12.clone() + t2.clone() * t3.clone() * t23.clone() + t1 * t3 * t13.clone())
        + t12 * t23 * t13
        - T::from_i64(4);
    let prod = t123 * t132 - bracket;
    (sum, prod)
}

/// The (0,4) surface with `k_i = tr C_i` and the point
/// `(tr C1C2, tr C2C3, tr C1C3)` on it.
pub fn quad_to_04_point<T: Coord>(q: &RepQuad<T>) -> Result<(Cubic04<T>, Point3<T>)> {
    if T::EXACT && !q.boundary_product().is_identity() {
        return Err(Error::ProductRelation);
    }
    let [c1, c2, c3, c4] = &q.c;
    let surface = Cubic04::new(c1.trace(), c2.trace(), c3.trace(), c4.trace());
    let point = Point3::new(c1.mul(c2).trace(), c2.mul(c3).trace(), c1.mul(c3).trace());
    Ok((surface, point))
}

/// Matrix-level lift of a Dehn twist on the one-holed torus. The image's
/// Fricke coordinates are `dehn_twist_11(which, dir, fricke_coords(pair))`.
///
/// | curve | `Plus`              | `Minus`              |
/// |-------|---------------------|----------------------|
/// | a     | `(A, AB)`           | `(A, A^-1 B)`        |
/// | b     | `(A B^-1, B)`       | `(AB, B)`            |
/// | ab    | `(B^-1, B A B)`     | `(A B A, A^-1)`      |
pub fn lift_twist_11<T: Coord>(which: Curve11, dir: Direction, pair: &RepPair<T>) -> RepPair<T> {
    let RepPair { a, b } = pair;
    let (a2, b2) = match (which, dir) {
        (Curve11::A, Direction::Plus) => (a.clone(), a.mul(b)),
        (Curve11::A, Direction::Minus) => (a.clone(), a.inv().mul(b)),
        (Curve11::B, Direction::Plus) => (a.mul(&b.inv()), b.clone()),
        (Curve11::B, Direction::Minus) => (a.mul(b), b.clone()),
        (Curve11::AB, Direction::Plus) => (b.inv(), product(&[b, a, b])),
        (Curve11::AB, Direction::Minus) => (product(&[a, b, a]), a.inv()),
    };
    RepPair { a: a2, b: b2 }
}

/// Matrix-level lift of a Dehn twist on the four-holed sphere.
///
/// The separating curve cuts off a pair of boundary components whose
/// monodromies are conjugated by the curve's monodromy `D`:
/// index 1 takes `D = C1 C2` and conjugates `(C1, C2)`; index 2 takes
/// `D = C2 C3` and conjugates `(C2, C3)`; index 3 takes `D = C1 C3`,
/// conjugates `(C1, C3)` and fixes `C3^-1 C2 C3` and `C4`.
///
/// Orientation: conjugating by `D` induces `dehn_twist_04(index, Plus)` on
/// the point for all three indices, so `Plus` uses `D` and `Minus` uses
/// `D^-1`. This was fixed by the randomized commuting-square test.
pub fn lift_twist_04<T: Coord>(index: Index04, dir: Direction, q: &RepQuad<T>) -> Result<RepQuad<T>> {
    if T::EXACT && !q.boundary_product().is_identity() {
        return Err(Error::ProductRelation);
    }
    let [c1, c2, c3, c4] = &q.c;
    let monodromy = |d: Mat2<T>| match dir {
        Direction::Plus => d,
        Direction::Minus => d.inv(),
    };
    let c = match index {
        Index04::One => {
            let d = monodromy(c1.mul(c2));
            [d.conj(c1), d.conj(c2), c3.clone(), c4.clone()]
        }
        Index04::Two => {
            let d = monodromy(c2.mul(c3));
            [c1.clone(), d.conj(c2), d.conj(c3), c4.clone()]
        }
        Index04::Three => {
            let d = monodromy(c1.mul(c3));
            let fixed = c3.inv().conj(c2);
            let c1n = d.conj(c1);
            let c3n = d.conj(c3);
            let c2n = c3n.conj(&fixed);
            [c1n, c2n, c3n, c4.clone()]
        }
    };
    Ok(RepQuad { c })
}

/// The unipotent generators `[[1,1],[0,1]]` and `[[1,0],[1,1]]`.
pub fn unipotents() -> [Mat2<BigInt>; 2] {
    let one = || BigInt::from(1);
    let zero = || BigInt::from(0);
    [
        Mat2::new(one(), one(), zero(), one()),
        Mat2::new(one(), zero(), one(), one()),
    ]
}

/// A random element of `SL2(Z)` as a word of length `len` in the two
/// unipotents and their inverses. Determinant one holds by construction.
pub fn random_sl2z<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Mat2<BigInt> {
    let [u, l] = unipotents();
    let gens = [u.clone(), u.inv(), l.clone(), l.inv()];
    (0..len).fold(Mat2::identity(), |acc, _| acc.mul(&gens[rng.gen_range(0..4)]))
}

//! The two cubic surface models and the scalar domains they are evaluated in.
//!
//! A one-holed torus (type (1,1)) has relative character variety
//! `x^2 + y^2 + z^2 - xyz - 2 = k`; a four-holed sphere (type (0,4)) has
//! `x^2 + y^2 + z^2 + xyz = ax + by + cz + d` with coefficients determined by
//! the four boundary traces. Both are generic over a [`Coord`] scalar so the
//! same formulas serve exact integer and approximate complex arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Scalar domain for coordinates and surface parameters.
pub trait Coord:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Absolute value (exact) or modulus (approximate).
    type Norm: PartialOrd + Clone + fmt::Debug + fmt::Display;

    const DOMAIN: &'static str;
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn norm(&self) -> Self::Norm;
    fn norm_f64(&self) -> f64;
    fn norm_to_f64(n: &Self::Norm) -> f64;
    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;
}

impl Coord for BigInt {
    type Norm = BigInt;

    const DOMAIN: &'static str = "exact integer";
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn norm(&self) -> BigInt {
        self.abs()
    }

    fn norm_f64(&self) -> f64 {
        Self::norm_to_f64(&self.abs())
    }

    fn norm_to_f64(n: &BigInt) -> f64 {
        num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::INFINITY)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Coord for Complex64 {
    type Norm = f64;

    const DOMAIN: &'static str = "approximate complex";
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }

    fn norm_f64(&self) -> f64 {
        Complex64::norm(*self)
    }

    fn norm_to_f64(n: &f64) -> f64 {
        *n
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// One of the three Fricke coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    pub fn letter(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A point `(x, y, z)` in Fricke coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn get(&self, axis: Axis) -> &T {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }

    pub fn set(&mut self, axis: Axis, v: T) {
        match axis {
            Axis::X => self.x = v,
            Axis::Y => self.y = v,
            Axis::Z => self.z = v,
        }
    }

    pub fn coords(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn into_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array([x, y, z]: [T; 3]) -> Self {
        Point3 { x, y, z }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Point3<U> {
        Point3::new(f(self.x), f(self.y), f(self.z))
    }
}

impl Point3<BigInt> {
    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        Point3::new(x.into(), y.into(), z.into())
    }
}

impl<T: fmt::Display> fmt::Display for Point3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Relative character variety of the one-holed torus with boundary trace `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Markoff11<T> {
    pub k: T,
}

impl<T: Coord> Markoff11<T> {
    pub fn new(k: T) -> Self {
        Markoff11 { k }
    }
}

/// Relative character variety of the four-holed sphere with boundary traces
/// `k1..k4`. The equation coefficients are derived once, here.
#[derive(Debug, Clone, PartialEq)]
pub struct Cubic04<T> {
    k: [T; 4],
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Coord> Cubic04<T> {
    pub fn new(k1: T, k2: T, k3: T, k4: T) -> Self {
        let (a, b, c, d) = Self::coefficients(&k1, &k2, &k3, &k4);
        Cubic04 {
            k: [k1, k2, k3, k4],
            a,
            b,
            c,
            d,
        }
    }

    fn coefficients(k1: &T, k2: &T, k3: &T, k4: &T) -> (T, T, T, T) {
        let (k1, k2, k3, k4) = (k1.clone(), k2.clone(), k3.clone(), k4.clone());
        let a = k1.clone() * k2.clone() + k3.clone() * k4.clone();
        let b = k1.clone() * k4.clone() + k2.clone() * k3.clone();
        let c = k1.clone() * k3.clone() + k2.clone() * k4.clone();
        let squares =
            k1.clone() * k1.clone() + k2.clone() * k2.clone() + k3.clone() * k3.clone() + k4.clone() * k4.clone();
        let d = T::from_i64(4) - squares - k1 * k2 * k3 * k4;
        (a, b, c, d)
    }

    /// Recomputes `(a, b, c, d)` from the stored boundary traces.
    pub fn recompute(&self) -> (T, T, T, T) {
        let [k1, k2, k3, k4] = &self.k;
        Self::coefficients(k1, k2, k3, k4)
    }

    pub fn k(&self) -> &[T; 4] {
        &self.k
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    /// Linear coefficient attached to `axis` (`a`, `b` or `c`).
    pub fn linear(&self, axis: Axis) -> &T {
        match axis {
            Axis::X => &self.a,
            Axis::Y => &self.b,
            Axis::Z => &self.c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Markoff11,
    Cubic04,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Markoff11 => f.write_str("(1,1)"),
            SurfaceKind::Cubic04 => f.write_str("(0,4)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Surface<T> {
    Markoff11(Markoff11<T>),
    Cubic04(Cubic04<T>),
}

impl<T: Coord> Surface<T> {
    pub fn markoff(k: T) -> Self {
        Surface::Markoff11(Markoff11::new(k))
    }

    pub fn cubic04(k1: T, k2: T, k3: T, k4: T) -> Self {
        Surface::Cubic04(Cubic04::new(k1, k2, k3, k4))
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            Surface::Markoff11(_) => SurfaceKind::Markoff11,
            Surface::Cubic04(_) => SurfaceKind::Cubic04,
        }
    }

    /// `Height(k) = max{1, |k_1|, ..., |k_n|}`.
    pub fn height(&self) -> f64 {
        match self {
            Surface::Markoff11(s) => height(std::slice::from_ref(&s.k)),
            Surface::Cubic04(s) => height(&s.k),
        }
    }

    /// Left-hand side minus right-hand side of the defining equation.
    pub fn residual(&self, p: &Point3<T>) -> T {
        match self {
            Surface::Markoff11(s) => boundary_trace_11(p) - s.k.clone(),
            Surface::Cubic04(s) => {
                let Point3 { x, y, z } = p.clone();
                let lhs = x.clone() * x.clone()
                    + y.clone() * y.clone()
                    + z.clone() * z.clone()
                    + x.clone() * y.clone() * z.clone();
                let rhs = s.a.clone() * x + s.b.clone() * y + s.c.clone() * z + s.d.clone();
                lhs - rhs
            }
        }
    }

    /// Exact: residual is zero. Approximate: `|residual| <= 1e-9 (1 + Height(k))`.
    pub fn contains(&self, p: &Point3<T>) -> bool {
        let r = self.residual(p);
        if T::EXACT {
            r.is_zero()
        } else {
            r.norm_f64() <= APPROX_TOLERANCE * (1.0 + self.height())
        }
    }
}

pub(crate) const APPROX_TOLERANCE: f64 = 1e-9;

pub fn make_cubic04<T: Coord>(k1: T, k2: T, k3: T, k4: T) -> Cubic04<T> {
    Cubic04::new(k1, k2, k3, k4)
}

pub fn residual<T: Coord>(surface: &Surface<T>, p: &Point3<T>) -> T {
    surface.residual(p)
}

/// Trace of the boundary commutator: `x^2 + y^2 + z^2 - xyz - 2`.
pub fn boundary_trace_11<T: Coord>(p: &Point3<T>) -> T {
    let Point3 { x, y, z } = p.clone();
    x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone() - x * y * z - T::from_i64(2)
}

/// `max(|x|, |y|, |z|)`.
pub fn linf_height<T: Coord>(p: &Point3<T>) -> T::Norm {
    let mut best = p.x.norm();
    for c in [&p.y, &p.z] {
        let n = c.norm();
        if n > best {
            best = n;
        }
    }
    best
}

pub fn min_norm<T: Coord>(p: &Point3<T>) -> f64 {
    p.coords().iter().map(|c| c.norm_f64()).fold(f64::INFINITY, f64::min)
}

/// `max{1, |k_1|, ..., |k_n|}`.
pub fn height<T: Coord>(ks: &[T]) -> f64 {
    ks.iter().map(|k| k.norm_f64()).fold(1.0, f64::max)
}

/// A scalar whose domain is only known at runtime (parsed input, mixed
/// arguments). Library code is generic over [`Coord`]; this type is the bridge.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigInt),
    Approx(Complex64),
}

impl Scalar {
    pub fn approx(re: f64, im: f64) -> Result<Self> {
        let c = Complex64::new(re, im);
        if c.is_finite() {
            Ok(Scalar::Approx(c))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn domain(&self) -> &'static str {
        match self {
            Scalar::Exact(_) => BigInt::DOMAIN,
            Scalar::Approx(_) => Complex64::DOMAIN,
        }
    }

    fn exact(&self) -> Result<BigInt> {
        match self {
            Scalar::Exact(v) => Ok(v.clone()),
            other => Err(Error::DomainMismatch {
                expected: BigInt::DOMAIN,
                found: other.domain(),
            }),
        }
    }

    fn complex(&self) -> Result<Complex64> {
        match self {
            Scalar::Approx(v) => Ok(*v),
            other => Err(Error::DomainMismatch {
                expected: Complex64::DOMAIN,
                found: other.domain(),
            }),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Exact(v.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnySurface {
    Exact(Surface<BigInt>),
    Approx(Surface<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoint {
    Exact(Point3<BigInt>),
    Approx(Point3<Complex64>),
}

impl AnySurface {
    pub fn markoff(k: Scalar) -> Self {
        match k {
            Scalar::Exact(k) => AnySurface::Exact(Surface::markoff(k)),
            Scalar::Approx(k) => AnySurface::Approx(Surface::markoff(k)),
        }
    }

    /// Builds a (0,4) surface; all four traces must share a domain.
    pub fn cubic04(ks: [Scalar; 4]) -> Result<Self> {
        match &ks[0] {
            Scalar::Exact(_) => {
                let [a, b, c, d] = [&ks[0], &ks[1], &ks[2], &ks[3]].map(Scalar::exact);
                Ok(AnySurface::Exact(Surface::cubic04(a?, b?, c?, d?)))
            }
            Scalar::Approx(_) => {
                let [a, b, c, d] = [&ks[0], &ks[1], &ks[2], &ks[3]].map(Scalar::complex);
                Ok(AnySurface::Approx(Surface::cubic04(a?, b?, c?, d?)))
            }
        }
    }

    pub fn residual(&self, p: &AnyPoint) -> Result<Scalar> {
        match (self, p) {
            (AnySurface::Exact(s), AnyPoint::Exact(p)) => Ok(Scalar::Exact(s.residual(p))),
            (AnySurface::Approx(s), AnyPoint::Approx(p)) => Ok(Scalar::Approx(s.residual(p))),
            (AnySurface::Exact(_), AnyPoint::Approx(_)) => Err(Error::DomainMismatch {
                expected: BigInt::DOMAIN,
                found: Complex64::DOMAIN,
            }),
            (AnySurface::Approx(_), AnyPoint::Exact(_)) => Err(Error::DomainMismatch {
                expected: Complex64::DOMAIN,
                found: BigInt::DOMAIN,
            }),
        }
    }
}

impl AnyPoint {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Result<Self> {
        match &x {
            Scalar::Exact(_) => Ok(AnyPoint::Exact(Point3::new(x.exact()?, y.exact()?, z.exact()?))),
            Scalar::Approx(_) => Ok(AnyPoint::Approx(Point3::new(x.complex()?, y.complex()?, z.complex()?))),
        }
    }
}

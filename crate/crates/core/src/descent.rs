//! Reduction algorithms: complex descent that shrinks the smallest coordinate,
//! greedy `l_inf` reduction toward a compact set, and the real ellipse bound
//! for (0,4) slices.
//!
//! Every reduction returns a [`DescentResult`] whose word replays the input
//! onto the reduced point.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moves::{self, normalize_11, Move, MoveWord};
use crate::surfaces::{linf_height, min_norm, Axis, Coord, Cubic04, Markoff11, Point3, Surface};

pub const DEFAULT_STEP_CAP: usize = 10_000;

/// Constant used for all five terminal conditions of the (0,4) complex
/// descent. Every branch of the case analysis closes with a factor of at most
/// 48 (the worst being `|xyz| <= 24 * 2|y|^2`, giving `|x| <= 48`).
pub const CUBIC04_CONSTANT: f64 = 48.0;

/// Threshold on the smallest coordinate modulus reached by the (1,1) complex
/// descent: `max(8, (8(2+|k|))^(1/4), (4(2+|k|))^(1/3))`.
pub fn markoff_min_bound(k_norm: f64) -> f64 {
    let t = 2.0 + k_norm;
    8f64.max((8.0 * t).powf(0.25)).max((4.0 * t).cbrt())
}

/// Which trace set the compact reduction is modelled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AMode {
    /// Real traces at distance at least `delta` from `{-2, 2}`.
    RealAway2,
    /// Complex traces at distance at least `delta` from `[-2, 2]`.
    ComplexAwayInterval,
    /// Integers other than `+-2`.
    IntegerStar,
}

impl AMode {
    pub fn name(self) -> &'static str {
        match self {
            AMode::RealAway2 => "real-away-2",
            AMode::ComplexAwayInterval => "complex-away-interval",
            AMode::IntegerStar => "integer-star",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AConfig {
    mode: AMode,
    delta: f64,
}

impl AConfig {
    pub fn real_away_2(delta: f64) -> Option<Self> {
        (delta > 0.0 && delta.is_finite()).then_some(AConfig {
            mode: AMode::RealAway2,
            delta,
        })
    }

    pub fn complex_away_interval(delta: f64) -> Option<Self> {
        (delta > 0.0 && delta.is_finite()).then_some(AConfig {
            mode: AMode::ComplexAwayInterval,
            delta,
        })
    }

    pub fn integer_star() -> Self {
        AConfig {
            mode: AMode::IntegerStar,
            delta: 1.0,
        }
    }

    pub fn mode(&self) -> AMode {
        self.mode
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Terminal conditions of the (0,4) complex descent, in the order
/// `min <= C`, `|yz| <= C H(a)`, `|xz| <= C H(b)`, `|xy| <= C H(c)`,
/// `|xyz| <= C H(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalCondition {
    MinCoordinate,
    YZ,
    XZ,
    XY,
    XYZ,
}

impl TerminalCondition {
    pub fn number(self) -> u8 {
        match self {
            TerminalCondition::MinCoordinate => 1,
            TerminalCondition::YZ => 2,
            TerminalCondition::XZ => 3,
            TerminalCondition::XY => 4,
            TerminalCondition::XYZ => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DescentStatus<T> {
    Reduced,
    /// The step cap was reached, or no move made progress.
    CapHit,
    /// A coordinate landed in the excluded trace set.
    ExceptionalHit {
        axis: Axis,
        value: T,
    },
}

impl<T> DescentStatus<T> {
    pub fn name(&self) -> &'static str {
        match self {
            DescentStatus::Reduced => "Reduced",
            DescentStatus::CapHit => "CapHit",
            DescentStatus::ExceptionalHit { .. } => "ExceptionalHit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentResult<T> {
    pub reduced: Point3<T>,
    pub word: MoveWord,
    pub steps: usize,
    pub status: DescentStatus<T>,
    /// Set by the (0,4) complex descent when it terminates.
    pub condition: Option<TerminalCondition>,
}

fn ensure_finite(p: &Point3<Complex64>) -> Result<()> {
    if p.coords().iter().all(|c| Coord::is_finite(*c)) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Potential used to pick descent moves: `l_inf` first, then the sum of
/// moduli to break exact ties.
fn potential(p: &Point3<Complex64>) -> (f64, f64) {
    let n = p.coords().map(|c| c.norm());
    (n[0].max(n[1]).max(n[2]), n[0] + n[1] + n[2])
}

/// One greedy Vieta step; axis order Z, Y, X on ties.
fn best_vieta_step(surface: &Surface<Complex64>, p: &Point3<Complex64>) -> Option<(Axis, Point3<Complex64>)> {
    let current = potential(p);
    let mut best: Option<(Axis, Point3<Complex64>, (f64, f64))> = None;
    for axis in [Axis::Z, Axis::Y, Axis::X] {
        let q = moves::vieta(surface, axis, p);
        let pot = potential(&q);
        if pot < current && best.as_ref().is_none_or(|(_, _, b)| pot < *b) {
            best = Some((axis, q, pot));
        }
    }
    best.map(|(a, q, _)| (a, q))
}

fn complex_descent(
    surface: &Surface<Complex64>,
    p: &Point3<Complex64>,
    step_cap: usize,
    terminal: impl Fn(&Point3<Complex64>) -> Option<TerminalCondition>,
) -> Result<DescentResult<Complex64>> {
    ensure_finite(p)?;
    let mut word = MoveWord::new(surface.kind());
    let mut cur = p.clone();
    let mut steps = 0;
    loop {
        if let Some(cond) = terminal(&cur) {
            return Ok(DescentResult {
                reduced: cur,
                word,
                steps,
                status: DescentStatus::Reduced,
                condition: Some(cond),
            });
        }
        let next = if steps < step_cap {
            best_vieta_step(surface, &cur)
        } else {
            None
        };
        let Some((axis, q)) = next else {
            return Ok(DescentResult {
                reduced: cur,
                word,
                steps,
                status: DescentStatus::CapHit,
                condition: None,
            });
        };
        ensure_finite(&q)?;
        word.push(Move::Vieta(axis));
        cur = q;
        steps += 1;
    }
}

/// Complex descent on the (1,1) surface: apply Vieta involutions that shrink
/// the largest coordinate until `min |coordinate| <= markoff_min_bound(|k|)`.
///
/// When no involution shrinks the point, the sorted point satisfies
/// `|x| <= |y| <= |z| <= |xy - z|`, which already forces the bound; a stall
/// above the bound can only come from rounding and is reported as `CapHit`.
pub fn reduce_min_complex_11(
    s: &Markoff11<Complex64>,
    p: &Point3<Complex64>,
    step_cap: usize,
) -> Result<DescentResult<Complex64>> {
    if !Coord::is_finite(&s.k) {
        return Err(Error::NonFinite);
    }
    let bound = markoff_min_bound(s.k.norm());
    let surface = Surface::Markoff11(s.clone());
    let mut r = complex_descent(&surface, p, step_cap, |q| {
        (min_norm(q) <= bound).then_some(TerminalCondition::MinCoordinate)
    })?;
    r.condition = None;
    Ok(r)
}

/// Which (0,4) terminal condition holds at `p`, if any, with constant `c`.
pub fn terminal_condition_04(s: &Cubic04<Complex64>, p: &Point3<Complex64>, c: f64) -> Option<TerminalCondition> {
    let h = |v: &Complex64| v.norm().max(1.0);
    let (x, y, z) = (p.x.norm(), p.y.norm(), p.z.norm());
    if x.min(y).min(z) <= c {
        Some(TerminalCondition::MinCoordinate)
    } else if y * z <= c * h(s.a()) {
        Some(TerminalCondition::YZ)
    } else if x * z <= c * h(s.b()) {
        Some(TerminalCondition::XZ)
    } else if x * y <= c * h(s.c()) {
        Some(TerminalCondition::XY)
    } else if x * y * z <= c * h(s.d()) {
        Some(TerminalCondition::XYZ)
    } else {
        None
    }
}

/// Complex descent on the (0,4) surface with the Vieta involutions
/// `tau_x, tau_y, tau_z`, stopping as soon as one of the five terminal
/// conditions holds with `C = 48`.
pub fn reduce_min_complex_04(
    s: &Cubic04<Complex64>,
    p: &Point3<Complex64>,
    step_cap: usize,
) -> Result<DescentResult<Complex64>> {
    if !s.k().iter().all(Coord::is_finite) {
        return Err(Error::NonFinite);
    }
    let surface = Surface::Cubic04(s.clone());
    complex_descent(&surface, p, step_cap, |q| terminal_condition_04(s, q, CUBIC04_CONSTANT))
}

/// Scalar domains the compact reduction can run in.
pub trait CompactDomain: Coord {
    fn check_config(cfg: &AConfig, surface: &Surface<Self>, p: &Point3<Self>) -> Result<()>;
    /// Whether `v` lies in the excluded trace set of `cfg`.
    fn excluded(v: &Self, cfg: &AConfig) -> bool;
    fn strictly_below(new: &Self::Norm, old: &Self::Norm) -> bool;
    /// Optional final symmetry normalization.
    fn finish(surface: &Surface<Self>, p: &Point3<Self>) -> Option<(Point3<Self>, MoveWord)>;
}

impl CompactDomain for BigInt {
    fn check_config(cfg: &AConfig, _: &Surface<Self>, _: &Point3<Self>) -> Result<()> {
        match cfg.mode {
            AMode::IntegerStar | AMode::RealAway2 => Ok(()),
            AMode::ComplexAwayInterval => Err(Error::ConfigMismatch {
                mode: cfg.mode.name(),
                domain: BigInt::DOMAIN,
            }),
        }
    }

    fn excluded(v: &BigInt, cfg: &AConfig) -> bool {
        match cfg.mode {
            AMode::IntegerStar => *v == BigInt::from(2) || *v == BigInt::from(-2),
            _ => {
                let f = num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::INFINITY);
                (f - 2.0).abs() < cfg.delta || (f + 2.0).abs() < cfg.delta
            }
        }
    }

    fn strictly_below(new: &BigInt, old: &BigInt) -> bool {
        new < old
    }

    fn finish(surface: &Surface<Self>, p: &Point3<Self>) -> Option<(Point3<Self>, MoveWord)> {
        matches!(surface, Surface::Markoff11(_)).then(|| normalize_11(p))
    }
}

impl CompactDomain for Complex64 {
    fn check_config(cfg: &AConfig, surface: &Surface<Self>, p: &Point3<Self>) -> Result<()> {
        ensure_finite(p)?;
        match cfg.mode {
            AMode::IntegerStar => Err(Error::ConfigMismatch {
                mode: cfg.mode.name(),
                domain: Complex64::DOMAIN,
            }),
            AMode::RealAway2 => {
                let params: Vec<&Complex64> = match surface {
                    Surface::Markoff11(s) => vec![&s.k],
                    Surface::Cubic04(s) => s.k().iter().collect(),
                };
                if p.coords().iter().chain(params.iter()).any(|c| c.im != 0.0) {
                    Err(Error::NotReal)
                } else {
                    Ok(())
                }
            }
            AMode::ComplexAwayInterval => Ok(()),
        }
    }

    fn excluded(v: &Complex64, cfg: &AConfig) -> bool {
        match cfg.mode {
            AMode::RealAway2 => (v - 2.0).norm() < cfg.delta || (v + 2.0).norm() < cfg.delta,
            _ => {
                let nearest = Complex64::new(v.re.clamp(-2.0, 2.0), 0.0);
                (v - nearest).norm() < cfg.delta
            }
        }
    }

    fn strictly_below(new: &f64, old: &f64) -> bool {
        *new < *old * (1.0 - 1e-6)
    }

    fn finish(_: &Surface<Self>, _: &Point3<Self>) -> Option<(Point3<Self>, MoveWord)> {
        None
    }
}

fn first_excluded<T: CompactDomain>(p: &Point3<T>, cfg: &AConfig) -> Option<(Axis, T)> {
    Axis::ALL
        .into_iter()
        .find(|&a| T::excluded(p.get(a), cfg))
        .map(|a| (a, p.get(a).clone()))
}

/// Greedy `l_inf` reduction with the step cap used in the approximate domain.
pub fn reduce_compact<T: CompactDomain>(
    surface: &Surface<T>,
    cfg: &AConfig,
    p: &Point3<T>,
) -> Result<DescentResult<T>> {
    reduce_compact_with_cap(surface, cfg, p, DEFAULT_STEP_CAP)
}

/// Greedy `l_inf` reduction: repeatedly apply the Vieta involution that
/// lowers `l_inf` the most (ties Z, Y, X) until none does, then normalize
/// under permutations and even sign changes on (1,1) integer points.
///
/// Stops with `ExceptionalHit` as soon as a coordinate enters the excluded
/// set of `cfg`. In the exact domain `l_inf` is a strictly decreasing
/// nonnegative integer, so the cap is never needed there.
pub fn reduce_compact_with_cap<T: CompactDomain>(
    surface: &Surface<T>,
    cfg: &AConfig,
    p: &Point3<T>,
    step_cap: usize,
) -> Result<DescentResult<T>> {
    T::check_config(cfg, surface, p)?;
    let mut word = MoveWord::new(surface.kind());
    let mut cur = p.clone();
    let mut steps = 0;
    loop {
        if let Some((axis, value)) = first_excluded(&cur, cfg) {
            return Ok(DescentResult {
                reduced: cur,
                word,
                steps,
                status: DescentStatus::ExceptionalHit { axis, value },
                condition: None,
            });
        }
        if !T::EXACT && steps >= step_cap {
            return Ok(DescentResult {
                reduced: cur,
                word,
                steps,
                status: DescentStatus::CapHit,
                condition: None,
            });
        }
        let height = linf_height(&cur);
        let mut best: Option<(Axis, Point3<T>, T::Norm)> = None;
        for axis in [Axis::Z, Axis::Y, Axis::X] {
            let q = moves::vieta(surface, axis, &cur);
            let h = linf_height(&q);
            if T::strictly_below(&h, &height) && best.as_ref().is_none_or(|(_, _, b)| h < *b) {
                best = Some((axis, q, h));
            }
        }
        match best {
            Some((axis, q, _)) => {
                word.push(Move::Vieta(axis));
                cur = q;
                steps += 1;
            }
            None => break,
        }
    }
    if let Some((normal, w)) = T::finish(surface, &cur) {
        word.extend(&w);
        cur = normal;
    }
    Ok(DescentResult {
        reduced: cur,
        word,
        steps,
        status: DescentStatus::Reduced,
        condition: None,
    })
}

/// Bound on `max(|x|, |y|)` over the real slice `z = z0` of a real (0,4)
/// surface, for `|z0| < 2`.
///
/// The slice is the conic `x^2 + y^2 + z0 xy = ax + by + (c z0 + d - z0^2)`,
/// whose quadratic part is positive definite. Completing the square around
/// the center gives `|x - x_c| <= sqrt(4R / (4 - z0^2))` and likewise for
/// `y`. The result is rounded outward by a few ulps, and is 0 when the slice
/// is empty.
pub fn ellipse_bound_04(s: &Cubic04<Complex64>, z0: f64) -> Result<f64> {
    if z0.is_nan() || z0.abs() >= 2.0 {
        return Err(Error::SliceOutOfRange(z0));
    }
    let re = |v: &Complex64| if v.im == 0.0 { Ok(v.re) } else { Err(Error::NotReal) };
    let (a, b, c, d) = (re(s.a())?, re(s.b())?, re(s.c())?, re(s.d())?);
    let e = c * z0 + d - z0 * z0;
    let det = 4.0 - z0 * z0;
    let xc = (2.0 * a - z0 * b) / det;
    let yc = (2.0 * b - z0 * a) / det;
    let r = e + (a * xc + b * yc) / 2.0;
    if r < 0.0 {
        return Ok(0.0);
    }
    let m = xc.abs().max(yc.abs()) + (4.0 * r / det).sqrt();
    Ok(m * (1.0 + 16.0 * f64::EPSILON))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{apply_word, Curve11, Direction};
    use crate::surfaces::boundary_trace_11;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(x: i64, y: i64, z: i64) -> Point3<BigInt> {
        Point3::from_i64(x, y, z)
    }

    fn cpt(x: (f64, f64), y: (f64, f64), z: (f64, f64)) -> Point3<Complex64> {
        Point3::new(
            Complex64::new(x.0, x.1),
            Complex64::new(y.0, y.1),
            Complex64::new(z.0, z.1),
        )
    }

    #[test]
    fn bound_constants() {
        assert_eq!(markoff_min_bound(0.0), 8.0);
        // (8 * 1002)^(1/4) ~ 9.46, (4 * 1002)^(1/3) ~ 15.88
        assert!((markoff_min_bound(1000.0) - (4008f64).cbrt()).abs() < 1e-12);
    }

    #[test]
    fn complex_11_examples() {
        let s = Markoff11::new(Complex64::new(-2.0, 0.0));
        let zero = cpt((0.0, 0.0), (0.0, 0.0), (0.0, 0.0));
        let r = reduce_min_complex_11(&s, &zero, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(r.status, DescentStatus::Reduced);
        assert_eq!(r.reduced, zero);
        assert!(r.word.is_empty());

        let small = cpt((7.5, 0.0), (40.0, 1.0), (300.0, 0.0));
        let r = reduce_min_complex_11(&s, &small, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(r.steps, 0);
    }

    #[test]
    fn complex_11_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let start = cpt((3.0, 0.0), (3.0, 0.0), (3.0, 0.1));
        let k = boundary_trace_11(&start);
        let s = Markoff11::new(k);
        let surface = Surface::Markoff11(s.clone());
        let mut p = start;
        for _ in 0..50 {
            let c = Curve11::ALL[rng.gen_range(0..3)];
            p = crate::moves::dehn_twist_11(c, Direction::Plus, &p);
        }
        assert!(min_norm(&p) > 8.0);
        let r = reduce_min_complex_11(&s, &p, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(r.status, DescentStatus::Reduced);
        assert!(min_norm(&r.reduced) <= markoff_min_bound(k.norm()));
        assert_eq!(apply_word(&surface, &r.word, &p).unwrap(), r.reduced);
    }

    #[test]
    fn complex_04_examples() {
        let zero = Complex64::new(0.0, 0.0);
        let s = Cubic04::new(zero, zero, zero, zero);
        let r = reduce_min_complex_04(&s, &cpt((2.0, 0.0), (0.0, 0.0), (0.0, 0.0)), 100).unwrap();
        assert_eq!(r.condition, Some(TerminalCondition::MinCoordinate));
        assert_eq!(r.steps, 0);

        let p = cpt((60.0, 0.0), (60.0, 0.0), (1.0, 0.0));
        assert_eq!(
            terminal_condition_04(&s, &p, 48.0),
            Some(TerminalCondition::MinCoordinate)
        );
        // Only condition (5) holds: a = b = c = 0 and d = 4 - 100^2.
        let s = Cubic04::new(Complex64::new(100.0, 0.0), zero, zero, zero);
        let p = cpt((70.0, 0.0), (70.0, 0.0), (70.0, 0.0));
        assert_eq!(terminal_condition_04(&s, &p, 48.0), Some(TerminalCondition::XYZ));
        let r = reduce_min_complex_04(&s, &p, 100).unwrap();
        assert_eq!((r.steps, r.condition), (0, Some(TerminalCondition::XYZ)));
    }

    #[test]
    fn non_finite_rejected() {
        let s = Markoff11::new(Complex64::new(0.0, 0.0));
        let p = cpt((f64::NAN, 0.0), (0.0, 0.0), (0.0, 0.0));
        assert_eq!(reduce_min_complex_11(&s, &p, 10), Err(Error::NonFinite));
    }

    #[test]
    fn compact_examples() {
        let s = Surface::markoff(BigInt::from(-2));
        let cfg = AConfig::integer_star();
        let r = reduce_compact(&s, &cfg, &pt(3, 6, 15)).unwrap();
        assert_eq!(r.reduced, pt(3, 3, 3));
        assert_eq!(r.word.to_string(), "Vz Vy");
        assert_eq!(r.status, DescentStatus::Reduced);

        let r = reduce_compact(&s, &cfg, &pt(3, 3, 3)).unwrap();
        assert_eq!((r.reduced, r.steps), (pt(3, 3, 3), 0));

        let s6 = Surface::markoff(BigInt::from(6));
        let r = reduce_compact(&s6, &cfg, &pt(2, 3, 1)).unwrap();
        assert_eq!(
            r.status,
            DescentStatus::ExceptionalHit {
                axis: Axis::X,
                value: BigInt::from(2)
            }
        );
    }

    #[test]
    fn compact_config_mismatch() {
        let s = Surface::markoff(BigInt::from(-2));
        let cfg = AConfig::complex_away_interval(0.5).unwrap();
        assert!(matches!(
            reduce_compact(&s, &cfg, &pt(3, 3, 3)),
            Err(Error::ConfigMismatch { .. })
        ));
        let sc = Surface::markoff(Complex64::new(-2.0, 0.0));
        let p = cpt((3.0, 0.0), (3.0, 0.0), (3.0, 0.0));
        assert!(matches!(
            reduce_compact(&sc, &AConfig::integer_star(), &p),
            Err(Error::ConfigMismatch { .. })
        ));
        let q = cpt((3.0, 0.1), (3.0, 0.0), (3.0, 0.0));
        assert_eq!(
            reduce_compact(&sc, &AConfig::real_away_2(0.5).unwrap(), &q),
            Err(Error::NotReal)
        );
        assert!(AConfig::real_away_2(0.0).is_none());
    }

    #[test]
    fn compact_approx() {
        let sc = Surface::markoff(Complex64::new(-2.0, 0.0));
        let p = cpt((3.0, 0.0), (6.0, 0.0), (15.0, 0.0));
        let r = reduce_compact(&sc, &AConfig::real_away_2(0.5).unwrap(), &p).unwrap();
        assert_eq!(r.reduced, cpt((3.0, 0.0), (3.0, 0.0), (3.0, 0.0)));
        let q = cpt((3.0, 0.0), (6.0, 0.0), (1.9, 0.0));
        let r = reduce_compact(&sc, &AConfig::complex_away_interval(0.5).unwrap(), &q).unwrap();
        assert!(matches!(r.status, DescentStatus::ExceptionalHit { axis: Axis::Z, .. }));
    }

    #[test]
    fn ellipse_examples() {
        let c = |v: f64| Complex64::new(v, 0.0);
        let s = Cubic04::new(c(0.0), c(0.0), c(0.0), c(0.0));
        let m = ellipse_bound_04(&s, 0.0).unwrap();
        assert!((2.0..2.0 + 1e-12).contains(&m));
        // a = b = 0 with k = (0, 0, 0, k4): d = 4 - k4^2.
        let s = Cubic04::new(c(0.0), c(0.0), c(0.0), c(1.5));
        let m = ellipse_bound_04(&s, 0.0).unwrap();
        assert!((m - (4.0f64 - 2.25).sqrt()).abs() < 1e-12);
        let s = Cubic04::new(c(0.0), c(0.0), c(0.0), c(3.0));
        assert_eq!(ellipse_bound_04(&s, 0.0).unwrap(), 0.0);
        assert_eq!(ellipse_bound_04(&s, 2.0), Err(Error::SliceOutOfRange(2.0)));
        let s = Cubic04::new(Complex64::new(1.0, 1.0), c(0.0), c(0.0), c(0.0));
        assert_eq!(ellipse_bound_04(&s, 0.0), Err(Error::NotReal));
    }
}

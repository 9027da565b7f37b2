//! Seeded identity suites behind `markoff verify`.

use markoff_core::moves::{AxisPair, Perm};
use markoff_core::trace_algebra::{
    commutator_trace, f3_relations, fricke_coords, lift_twist_04, lift_twist_11, quad_to_04_point, random_sl2z,
    trace_product_identity,
};
use markoff_core::{
    apply, boundary_trace_11, dehn_twist_04, dehn_twist_11, Axis, BigInt, Curve11, Direction, Index04, Move, Point3,
    RepPair, RepQuad, Surface,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

const DIRS: [Direction; 2] = [Direction::Plus, Direction::Minus];

fn random_pair(rng: &mut ChaCha8Rng) -> RepPair<BigInt> {
    RepPair {
        a: random_sl2z(rng, 8),
        b: random_sl2z(rng, 8),
    }
}

fn random_quad(rng: &mut ChaCha8Rng) -> RepQuad<BigInt> {
    RepQuad::from_three(random_sl2z(rng, 6), random_sl2z(rng, 6), random_sl2z(rng, 6))
}

fn random_point(rng: &mut ChaCha8Rng) -> Point3<BigInt> {
    let mut c = || rng.gen_range(-1000i64..=1000);
    Point3::from_i64(c(), c(), c())
}

type Suite = fn(&mut ChaCha8Rng, bool) -> bool;

fn trace_identity(rng: &mut ChaCha8Rng, fault: bool) -> bool {
    let p = random_pair(rng);
    let mut v = trace_product_identity(&p.a, &p.b);
    if fault {
        v += BigInt::one();
    }
    v.is_zero()
}

fn rank3_relations(rng: &mut ChaCha8Rng, _: bool) -> bool {
    let (a, b, c) = (random_sl2z(rng, 8), random_sl2z(rng, 8), random_sl2z(rng, 8));
    let (s, p) = f3_relations(&a, &b, &c);
    s.is_zero() && p.is_zero()
}

fn boundary_trace(rng: &mut ChaCha8Rng, _: bool) -> bool {
    let p = random_pair(rng);
    commutator_trace(&p.a, &p.b) == boundary_trace_11(&fricke_coords(&p.a, &p.b))
}

fn quad_point(rng: &mut ChaCha8Rng, _: bool) -> bool {
    match quad_to_04_point(&random_quad(rng)) {
        Ok((s, p)) => Surface::Cubic04(s).residual(&p).is_zero(),
        Err(_) => false,
    }
}

fn lift_square_11(rng: &mut ChaCha8Rng, _: bool) -> bool {
    let pair = random_pair(rng);
    let p = fricke_coords(&pair.a, &pair.b);
    Curve11::ALL.iter().all(|&c| {
        DIRS.iter().all(|&d| {
            let l = lift_twist_11(c, d, &pair);
            fricke_coords(&l.a, &l.b) == dehn_twist_11(c, d, &p)
        })
    })
}

fn lift_square_04(rng: &mut ChaCha8Rng, _: bool) -> bool {
    let q = random_quad(rng);
    let Ok((s, p)) = quad_to_04_point(&q) else {
        return false;
    };
    Index04::ALL.iter().all(|&i| {
        DIRS.iter()
            .all(|&d| match lift_twist_04(i, d, &q).and_then(|l| quad_to_04_point(&l)) {
                Ok((s2, p2)) => s2.k() == s.k() && p2 == dehn_twist_04(&s, i, d, &p),
                Err(_) => false,
            })
    })
}

fn decomposition(rng: &mut ChaCha8Rng, _: bool) -> bool {
    let p = random_point(rng);
    let s = Surface::markoff(boundary_trace_11(&p));
    let pairs = [
        (Curve11::A, Axis::Z, Perm::SWAP_YZ),
        (Curve11::B, Axis::X, Perm::SWAP_XZ),
        (Curve11::AB, Axis::Y, Perm::SWAP_XY),
    ];
    pairs.iter().all(|&(c, axis, perm)| {
        let via = apply(&s, &Move::Permute(perm), &p).and_then(|q| apply(&s, &Move::Vieta(axis), &q));
        via.as_ref() == Ok(&dehn_twist_11(c, Direction::Plus, &p))
    })
}

fn surface_invariance(rng: &mut ChaCha8Rng, _: bool) -> bool {
    let p = random_point(rng);
    let s11 = Surface::markoff(boundary_trace_11(&p));
    let moves11 = [
        Move::Vieta(Axis::ALL[rng.gen_range(0..3)]),
        Move::Permute(Perm::ALL[rng.gen_range(0..6)]),
        Move::EvenSign(AxisPair::ALL[rng.gen_range(0..3)]),
        Move::twist11(Curve11::ALL[rng.gen_range(0..3)], DIRS[rng.gen_range(0..2)]),
    ];
    let ok11 = moves11
        .iter()
        .all(|m| apply(&s11, m, &p).is_ok_and(|q| s11.residual(&q).is_zero()));
    let Ok((c, q)) = quad_to_04_point(&random_quad(rng)) else {
        return false;
    };
    let s04 = Surface::Cubic04(c);
    let moves04 = [
        Move::Vieta(Axis::ALL[rng.gen_range(0..3)]),
        Move::twist04(Index04::ALL[rng.gen_range(0..3)], DIRS[rng.gen_range(0..2)]),
    ];
    let ok04 = moves04
        .iter()
        .all(|m| apply(&s04, m, &q).is_ok_and(|r| s04.residual(&r).is_zero()));
    ok11 && ok04
}

const SUITES: [(&str, Suite); 8] = [
    ("trace_identity", trace_identity),
    ("rank3_relations", rank3_relations),
    ("boundary_trace", boundary_trace),
    ("quad_point", quad_point),
    ("lift_square_11", lift_square_11),
    ("lift_square_04", lift_square_04),
    ("twist_decomposition", decomposition),
    ("surface_invariance", surface_invariance),
];

/// Runs every suite for `trials` random inputs. Each suite has its own RNG
/// stream derived from `seed`, so results do not depend on suite order.
pub fn run(seed: u64, trials: usize, fault: bool) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .map(|(i, &(name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let passed = (0..trials).filter(|_| suite(&mut rng, fault)).count();
            SuiteResult {
                name,
                passed,
                total: trials,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        assert!(run(0, 20, false).iter().all(SuiteResult::ok));
    }

    #[test]
    fn fault_is_detected() {
        assert!(!run(0, 5, true).iter().all(SuiteResult::ok));
    }
}

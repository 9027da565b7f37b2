//! The move group acting on points: Vieta involutions, coordinate
//! permutations, even sign changes and the Dehn-twist polynomial maps.
//!
//! Every move is invertible and every sequence of moves is recorded as a
//! [`MoveWord`], which doubles as a replayable certificate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::surfaces::{Axis, Coord, Cubic04, Point3, Surface, SurfaceKind};

/// A permutation of the coordinates: the new coordinate `i` is the old
/// coordinate `source[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm([u8; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);
    pub const SWAP_XY: Perm = Perm([1, 0, 2]);
    pub const SWAP_YZ: Perm = Perm([0, 2, 1]);
    pub const SWAP_XZ: Perm = Perm([2, 1, 0]);

    pub const ALL: [Perm; 6] = [
        Perm([0, 1, 2]),
        Perm([0, 2, 1]),
        Perm([1, 0, 2]),
        Perm([1, 2, 0]),
        Perm([2, 0, 1]),
        Perm([2, 1, 0]),
    ];

    pub fn new(source: [u8; 3]) -> Option<Perm> {
        let mut seen = [false; 3];
        for &s in &source {
            if s > 2 || seen[s as usize] {
                return None;
            }
            seen[s as usize] = true;
        }
        Some(Perm(source))
    }

    pub fn source(&self) -> [u8; 3] {
        self.0
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0u8; 3];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn apply<T: Clone>(&self, p: &Point3<T>) -> Point3<T> {
        let c = p.coords();
        Point3::new(
            c[self.0[0] as usize].clone(),
            c[self.0[1] as usize].clone(),
            c[self.0[2] as usize].clone(),
        )
    }

    fn transposition(&self) -> Option<(Axis, Axis)> {
        let moved: Vec<usize> = (0..3).filter(|&i| self.0[i] as usize != i).collect();
        match moved.as_slice() {
            [i, j] => Some((Axis::from_index(*i), Axis::from_index(*j))),
            _ => None,
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("P")?;
        match self.transposition() {
            Some((a, b)) => write!(f, "{a}{b}"),
            None => {
                for s in self.0 {
                    write!(f, "{}", Axis::from_index(s as usize))?;
                }
                Ok(())
            }
        }
    }
}

/// The pair of coordinates negated by an even sign change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisPair {
    XY,
    YZ,
    XZ,
}

impl AxisPair {
    pub const ALL: [AxisPair; 3] = [AxisPair::XY, AxisPair::YZ, AxisPair::XZ];

    pub fn axes(self) -> (Axis, Axis) {
        match self {
            AxisPair::XY => (Axis::X, Axis::Y),
            AxisPair::YZ => (Axis::Y, Axis::Z),
            AxisPair::XZ => (Axis::X, Axis::Z),
        }
    }
}

/// Essential curves on the one-holed torus with a twist action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve11 {
    A,
    B,
    AB,
}

impl Curve11 {
    pub const ALL: [Curve11; 3] = [Curve11::A, Curve11::B, Curve11::AB];

    fn label(self) -> &'static str {
        match self {
            Curve11::A => "a",
            Curve11::B => "b",
            Curve11::AB => "ab",
        }
    }
}

/// Separating curve on the four-holed sphere: 1 fixes `x`, 2 fixes `y`,
/// 3 fixes `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Index04 {
    One,
    Two,
    Three,
}

impl Index04 {
    pub const ALL: [Index04; 3] = [Index04::One, Index04::Two, Index04::Three];

    pub fn number(self) -> u8 {
        match self {
            Index04::One => 1,
            Index04::Two => 2,
            Index04::Three => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Index04> {
        match n {
            1 => Some(Index04::One),
            2 => Some(Index04::Two),
            3 => Some(Index04::Three),
            _ => None,
        }
    }

    /// `(first, second)` Vieta involutions whose composite is the positive twist.
    pub fn vieta_pair(self) -> (Axis, Axis) {
        match self {
            Index04::One => (Axis::Y, Axis::Z),
            Index04::Two => (Axis::Z, Axis::X),
            Index04::Three => (Axis::X, Axis::Y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn from_power(power: i32) -> Direction {
        if power >= 0 {
            Direction::Plus
        } else {
            Direction::Minus
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }
}

/// One generator of the move group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Vieta(Axis),
    Permute(Perm),
    EvenSign(AxisPair),
    Twist11 { curve: Curve11, power: i32 },
    Twist04 { index: Index04, power: i32 },
}

impl Move {
    pub fn twist11(curve: Curve11, dir: Direction) -> Move {
        let power = if dir == Direction::Plus { 1 } else { -1 };
        Move::Twist11 { curve, power }
    }

    pub fn twist04(index: Index04, dir: Direction) -> Move {
        let power = if dir == Direction::Plus { 1 } else { -1 };
        Move::Twist04 { index, power }
    }

    pub fn inverse(&self) -> Move {
        match *self {
            Move::Vieta(a) => Move::Vieta(a),
            Move::Permute(p) => Move::Permute(p.inverse()),
            Move::EvenSign(s) => Move::EvenSign(s),
            Move::Twist11 { curve, power } => Move::Twist11 { curve, power: -power },
            Move::Twist04 { index, power } => Move::Twist04 { index, power: -power },
        }
    }

    pub fn valid_on(&self, kind: SurfaceKind) -> bool {
        match self {
            Move::Vieta(_) => true,
            Move::Permute(_) | Move::EvenSign(_) | Move::Twist11 { .. } => kind == SurfaceKind::Markoff11,
            Move::Twist04 { .. } => kind == SurfaceKind::Cubic04,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn signed(f: &mut fmt::Formatter<'_>, power: i32) -> fmt::Result {
            let sign = if power < 0 { '-' } else { '+' };
            match power.unsigned_abs() {
                1 => write!(f, "{sign}"),
                n => write!(f, "{sign}{n}"),
            }
        }
        match self {
            Move::Vieta(a) => write!(f, "V{a}"),
            Move::Permute(p) => write!(f, "{p}"),
            Move::EvenSign(s) => {
                let (a, b) = s.axes();
                write!(f, "S{a}{b}")
            }
            Move::Twist11 { curve, power } => {
                write!(f, "T{}", curve.label())?;
                signed(f, *power)
            }
            Move::Twist04 { index, power } => {
                write!(f, "T{}", index.number())?;
                signed(f, *power)
            }
        }
    }
}

fn parse_axis(c: char) -> Option<Axis> {
    match c {
        'x' => Some(Axis::X),
        'y' => Some(Axis::Y),
        'z' => Some(Axis::Z),
        _ => None,
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Move> {
        let bad = || Error::Parse(format!("unrecognized move token {tok:?}"));
        let mut chars = tok.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        match head {
            'V' => {
                let mut cs = rest.chars();
                match (cs.next().and_then(parse_axis), cs.next()) {
                    (Some(a), None) => Ok(Move::Vieta(a)),
                    _ => Err(bad()),
                }
            }
            'P' => {
                let axes: Option<Vec<Axis>> = rest.chars().map(parse_axis).collect();
                let axes = axes.ok_or_else(bad)?;
                match axes.as_slice() {
                    [a, b] if a < b => {
                        let mut src = [0u8, 1, 2];
                        src.swap(a.index(), b.index());
                        Ok(Move::Permute(Perm(src)))
                    }
                    [a, b, c] => Perm::new([a.index() as u8, b.index() as u8, c.index() as u8])
                        .map(Move::Permute)
                        .ok_or_else(bad),
                    _ => Err(bad()),
                }
            }
            'S' => match rest {
                "xy" => Ok(Move::EvenSign(AxisPair::XY)),
                "yz" => Ok(Move::EvenSign(AxisPair::YZ)),
                "xz" => Ok(Move::EvenSign(AxisPair::XZ)),
                _ => Err(bad()),
            },
            'T' => {
                let split = rest.find(['+', '-']).ok_or_else(bad)?;
                let (label, signed) = rest.split_at(split);
                let sign = if signed.starts_with('-') { -1 } else { 1 };
                let digits = &signed[1..];
                let magnitude: i32 = if digits.is_empty() {
                    1
                } else {
                    digits.parse().map_err(|_| bad())?
                };
                if magnitude == 0 || !digits.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let power = sign * magnitude;
                match label {
                    "a" => Ok(Move::Twist11 {
                        curve: Curve11::A,
                        power,
                    }),
                    "b" => Ok(Move::Twist11 {
                        curve: Curve11::B,
                        power,
                    }),
                    "ab" => Ok(Move::Twist11 {
                        curve: Curve11::AB,
                        power,
                    }),
                    "1" | "2" | "3" => Ok(Move::Twist04 {
                        index: Index04::from_number(label.as_bytes()[0] - b'0').ok_or_else(bad)?,
                        power,
                    }),
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }
}

/// A recorded sequence of moves, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveWord {
    kind: SurfaceKind,
    moves: Vec<Move>,
}

impl MoveWord {
    pub fn new(kind: SurfaceKind) -> Self {
        MoveWord {
            kind,
            moves: Vec::new(),
        }
    }

    pub fn from_moves(kind: SurfaceKind, moves: Vec<Move>) -> Result<Self> {
        if let Some(m) = moves.iter().find(|m| !m.valid_on(kind)) {
            return Err(Error::MoveSurfaceMismatch { mv: *m, kind });
        }
        Ok(MoveWord { kind, moves })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        debug_assert!(m.valid_on(self.kind));
        self.moves.push(m);
    }

    pub fn extend(&mut self, other: &MoveWord) {
        debug_assert_eq!(self.kind, other.kind);
        self.moves.extend_from_slice(&other.moves);
    }

    /// Formal inverse: reversed order, each move inverted.
    pub fn inverse(&self) -> MoveWord {
        MoveWord {
            kind: self.kind,
            moves: self.moves.iter().rev().map(Move::inverse).collect(),
        }
    }

    /// Merges adjacent twists along the same curve and cancels adjacent
    /// inverse pairs. The action on points is unchanged.
    pub fn simplify(&self) -> MoveWord {
        let mut out: Vec<Move> = Vec::with_capacity(self.moves.len());
        for &m in &self.moves {
            let merged = match (out.last().copied(), m) {
                (Some(Move::Twist11 { curve: c1, power: p1 }), Move::Twist11 { curve: c2, power: p2 }) if c1 == c2 => {
                    Some((p1 + p2 != 0).then_some(Move::Twist11 {
                        curve: c1,
                        power: p1 + p2,
                    }))
                }
                (Some(Move::Twist04 { index: i1, power: p1 }), Move::Twist04 { index: i2, power: p2 }) if i1 == i2 => {
                    Some((p1 + p2 != 0).then_some(Move::Twist04 {
                        index: i1,
                        power: p1 + p2,
                    }))
                }
                (Some(prev), m) if prev.inverse() == m => Some(None),
                _ => None,
            };
            match merged {
                Some(replacement) => {
                    out.pop();
                    out.extend(replacement);
                }
                None => out.push(m),
            }
        }
        MoveWord {
            kind: self.kind,
            moves: out,
        }
    }

    pub fn parse(kind: SurfaceKind, text: &str) -> Result<MoveWord> {
        let moves = text.split_whitespace().map(str::parse).collect::<Result<Vec<Move>>>()?;
        MoveWord::from_moves(kind, moves)
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Which generating set an orbit computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorSet {
    /// The Dehn-twist maps and their inverses (image of the mapping class group).
    GammaPoly,
    /// Vieta involutions, plus transpositions and even sign changes on (1,1).
    GammaPrime,
}

impl GeneratorSet {
    pub fn generators(self, kind: SurfaceKind) -> Vec<Move> {
        match (self, kind) {
            (GeneratorSet::GammaPoly, SurfaceKind::Markoff11) => Curve11::ALL
                .iter()
                .flat_map(|&c| [Move::twist11(c, Direction::Plus), Move::twist11(c, Direction::Minus)])
                .collect(),
            (GeneratorSet::GammaPoly, SurfaceKind::Cubic04) => Index04::ALL
                .iter()
                .flat_map(|&i| [Move::twist04(i, Direction::Plus), Move::twist04(i, Direction::Minus)])
                .collect(),
            (GeneratorSet::GammaPrime, SurfaceKind::Markoff11) => {
                let mut g: Vec<Move> = Axis::ALL.iter().map(|&a| Move::Vieta(a)).collect();
                g.extend([Perm::SWAP_XY, Perm::SWAP_YZ, Perm::SWAP_XZ].map(Move::Permute));
                g.extend(AxisPair::ALL.map(Move::EvenSign));
                g
            }
            (GeneratorSet::GammaPrime, SurfaceKind::Cubic04) => Axis::ALL.iter().map(|&a| Move::Vieta(a)).collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorSet::GammaPoly => "gamma_poly",
            GeneratorSet::GammaPrime => "gamma_prime",
        }
    }
}

fn other_axes(axis: Axis) -> (Axis, Axis) {
    match axis {
        Axis::X => (Axis::Y, Axis::Z),
        Axis::Y => (Axis::X, Axis::Z),
        Axis::Z => (Axis::X, Axis::Y),
    }
}

/// Vieta involution along `axis`: on (1,1) `z -> xy - z`; on (0,4)
/// `z -> c - xy - z` (and likewise for the other axes).
pub fn vieta<T: Coord>(surface: &Surface<T>, axis: Axis, p: &Point3<T>) -> Point3<T> {
    let (u, v) = other_axes(axis);
    let prod = p.get(u).clone() * p.get(v).clone();
    let old = p.get(axis).clone();
    let new = match surface {
        Surface::Markoff11(_) => prod - old,
        Surface::Cubic04(s) => s.linear(axis).clone() - prod - old,
    };
    let mut out = p.clone();
    out.set(axis, new);
    out
}

fn vieta04<T: Coord>(s: &Cubic04<T>, axis: Axis, p: &Point3<T>) -> Point3<T> {
    let (u, v) = other_axes(axis);
    let new = s.linear(axis).clone() - p.get(u).clone() * p.get(v).clone() - p.get(axis).clone();
    let mut out = p.clone();
    out.set(axis, new);
    out
}

pub fn even_sign<T: Coord>(pair: AxisPair, p: &Point3<T>) -> Point3<T> {
    let (a, b) = pair.axes();
    let mut out = p.clone();
    out.set(a, -p.get(a).clone());
    out.set(b, -p.get(b).clone());
    out
}

/// Dehn twist maps on the one-holed torus:
/// `tau_a: (x,y,z) -> (x, z, xz - y)`, `tau_b: (x,y,z) -> (xy - z, y, x)`,
/// `tau_ab: (x,y,z) -> (y, yz - x, z)`; `Minus` applies the inverse map.
pub fn dehn_twist_11<T: Coord>(which: Curve11, dir: Direction, p: &Point3<T>) -> Point3<T> {
    let Point3 { x, y, z } = p.clone();
    match (which, dir) {
        (Curve11::A, Direction::Plus) => Point3::new(x.clone(), z.clone(), x * z - y),
        (Curve11::A, Direction::Minus) => Point3::new(x.clone(), x * y.clone() - z, y),
        (Curve11::B, Direction::Plus) => Point3::new(x.clone() * y.clone() - z, y, x),
        (Curve11::B, Direction::Minus) => Point3::new(z.clone(), y.clone(), y * z - x),
        (Curve11::AB, Direction::Plus) => Point3::new(y.clone(), y * z.clone() - x, z),
        (Curve11::AB, Direction::Minus) => Point3::new(x.clone() * z.clone() - y, x, z),
    }
}

/// Dehn twists on the four-holed sphere, each a composite of two Vieta
/// involutions: index 1 is `tau_z . tau_y`, 2 is `tau_x . tau_z`, 3 is
/// `tau_y . tau_x` (right factor applied first). `Minus` applies the inverse.
pub fn dehn_twist_04<T: Coord>(surface: &Cubic04<T>, index: Index04, dir: Direction, p: &Point3<T>) -> Point3<T> {
    let (first, second) = index.vieta_pair();
    let (first, second) = match dir {
        Direction::Plus => (first, second),
        Direction::Minus => (second, first),
    };
    vieta04(surface, second, &vieta04(surface, first, p))
}

/// Applies a single move, checking that it is defined on the surface type.
pub fn apply<T: Coord>(surface: &Surface<T>, m: &Move, p: &Point3<T>) -> Result<Point3<T>> {
    if !m.valid_on(surface.kind()) {
        return Err(Error::MoveSurfaceMismatch {
            mv: *m,
            kind: surface.kind(),
        });
    }
    Ok(apply_unchecked(surface, m, p))
}

pub(crate) fn apply_unchecked<T: Coord>(surface: &Surface<T>, m: &Move, p: &Point3<T>) -> Point3<T> {
    match *m {
        Move::Vieta(axis) => vieta(surface, axis, p),
        Move::Permute(perm) => perm.apply(p),
        Move::EvenSign(pair) => even_sign(pair, p),
        Move::Twist11 { curve, power } => {
            let dir = Direction::from_power(power);
            (0..power.unsigned_abs()).fold(p.clone(), |q, _| dehn_twist_11(curve, dir, &q))
        }
        Move::Twist04 { index, power } => {
            let Surface::Cubic04(s) = surface else {
                unreachable!("validated by caller")
            };
            let dir = Direction::from_power(power);
            (0..power.unsigned_abs()).fold(p.clone(), |q, _| dehn_twist_04(s, index, dir, &q))
        }
    }
}

pub fn apply_word<T: Coord>(surface: &Surface<T>, w: &MoveWord, p: &Point3<T>) -> Result<Point3<T>> {
    if w.kind() != surface.kind() {
        return Err(Error::WordSurfaceMismatch {
            word: w.kind(),
            surface: surface.kind(),
        });
    }
    Ok(w.moves().iter().fold(p.clone(), |q, m| apply_unchecked(surface, m, &q)))
}

/// Canonical representative of `p` under the 24-element group generated by
/// coordinate permutations and even sign changes, together with the word
/// reaching it.
///
/// The representative minimizes `(|x|, |y|, |z|)` lexicographically and,
/// among those, maximizes the signed triple `(x, y, z)`. So coordinates are
/// sorted by absolute value, at most one is negative, and a negative entry
/// sits as far right as ties allow.
pub fn normalize_11(p: &Point3<BigInt>) -> (Point3<BigInt>, MoveWord) {
    let signs: [Option<AxisPair>; 4] = [None, Some(AxisPair::XY), Some(AxisPair::YZ), Some(AxisPair::XZ)];
    let key = |q: &Point3<BigInt>| {
        (
            [q.x.abs(), q.y.abs(), q.z.abs()],
            std::cmp::Reverse([q.x.clone(), q.y.clone(), q.z.clone()]),
        )
    };
    let mut best: Option<(Point3<BigInt>, Perm, Option<AxisPair>)> = None;
    for perm in Perm::ALL {
        let permuted = perm.apply(p);
        for sign in signs {
            let q = match sign {
                Some(pair) => even_sign(pair, &permuted),
                None => permuted.clone(),
            };
            if best.as_ref().is_none_or(|(b, _, _)| key(&q) < key(b)) {
                best = Some((q, perm, sign));
            }
        }
    }
    let (q, perm, sign) = best.expect("group is nonempty");
    let mut word = MoveWord::new(SurfaceKind::Markoff11);
    if perm != Perm::IDENTITY {
        word.push(Move::Permute(perm));
    }
    if let Some(pair) = sign {
        word.push(Move::EvenSign(pair));
    }
    (q, word)
}

//! Integer points, orbit search and class numbers.
//!
//! All orbit questions here are answered inside a finite search region (a
//! height cap and a count cap). A negative answer is therefore always "not
//! within caps", and every result carries a flag saying whether a cap cut
//! the search short.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::descent::{reduce_compact, AConfig, DescentStatus};
use crate::moves::{apply_unchecked, apply_word, GeneratorSet, Move, MoveWord};
use crate::surfaces::{linf_height, Axis, Point3, Surface, SurfaceKind};

/// Search limits for orbit exploration: points with `l_inf > height` are not
/// visited, and at most `count` points are stored per search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Caps {
    pub height: u64,
    pub count: usize,
}

impl Caps {
    pub fn new(height: u64, count: usize) -> Self {
        Caps { height, count }
    }
}

fn within_height(p: &Point3<BigInt>, height: u64) -> bool {
    linf_height(p).to_u64().is_some_and(|h| h <= height)
}

fn has_pm2(p: &Point3<BigInt>) -> Option<Axis> {
    Axis::ALL.into_iter().find(|&a| {
        let v = p.get(a);
        v.abs() == BigInt::from(2)
    })
}

fn params(surface: &Surface<BigInt>) -> Vec<BigInt> {
    match surface {
        Surface::Markoff11(s) => vec![s.k.clone()],
        Surface::Cubic04(s) => s.k().to_vec(),
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// The defining equation as a monic quadratic in `z`: `z^2 + P z + Q = 0`.
#[derive(Clone, Copy)]
enum Quadratic<T> {
    /// `P = -xy`, `Q = x^2 + y^2 - 2 - k`.
    Markoff { k: T },
    /// `P = xy - c`, `Q = x^2 + y^2 - ax - by - d`.
    Cubic { a: T, b: T, c: T, d: T },
}

const SMALL_BOUND: u64 = 1 << 28;
const SMALL_PARAM: i128 = 1 << 56;

fn small_quadratic(surface: &Surface<BigInt>) -> Option<Quadratic<i128>> {
    let f = |v: &BigInt| v.to_i128().filter(|v| v.abs() <= SMALL_PARAM);
    match surface {
        Surface::Markoff11(s) => Some(Quadratic::Markoff { k: f(&s.k)? }),
        Surface::Cubic04(s) => Some(Quadratic::Cubic {
            a: f(s.a())?,
            b: f(s.b())?,
            c: f(s.c())?,
            d: f(s.d())?,
        }),
    }
}

fn roots_small(q: &Quadratic<i128>, x: i128, y: i128, bound: i128, out: &mut Vec<[i128; 3]>) {
    let (p, c) = match *q {
        Quadratic::Markoff { k } => (-x * y, x * x + y * y - 2 - k),
        Quadratic::Cubic { a, b, c, d } => (x * y - c, x * x + y * y - a * x - b * y - d),
    };
    let disc = p * p - 4 * c;
    if disc < 0 {
        return;
    }
    let s = disc.sqrt();
    if s * s != disc {
        return;
    }
    for num in [-p - s, -p + s] {
        if num % 2 == 0 && (num / 2).abs() <= bound {
            out.push([x, y, num / 2]);
        }
        if s == 0 {
            break;
        }
    }
}

fn roots_big(surface: &Surface<BigInt>, x: &BigInt, y: &BigInt, bound: &BigInt, out: &mut Vec<Point3<BigInt>>) {
    let (p, c) = match surface {
        Surface::Markoff11(s) => (-(x * y), x * x + y * y - BigInt::from(2) - &s.k),
        Surface::Cubic04(s) => (x * y - s.c(), x * x + y * y - s.a() * x - s.b() * y - s.d()),
    };
    let disc: BigInt = &p * &p - &c * BigInt::from(4);
    if disc.is_negative() {
        return;
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return;
    }
    let two = BigInt::from(2);
    for num in [-&p - &s, -&p + &s] {
        if (&num % &two).is_zero() {
            let z = num / &two;
            if z.abs() <= *bound {
                out.push(Point3::new(x.clone(), y.clone(), z));
            }
        }
        if s.is_zero() {
            break;
        }
    }
}

/// All integer points with `l_inf <= bound`, sorted and duplicate free.
///
/// Iterates over `(x, y)` and solves the quadratic in `z` with an exact
/// integer square root. Small inputs run in `i128`, in parallel over `x`.
pub fn enumerate_points(surface: &Surface<BigInt>, bound: u64) -> Vec<Point3<BigInt>> {
    let mut points: Vec<Point3<BigInt>> = match small_quadratic(surface).filter(|_| bound <= SMALL_BOUND) {
        Some(q) => {
            let b = bound as i128;
            (-b..=b)
                .into_par_iter()
                .flat_map_iter(|x| {
                    let mut out = Vec::new();
                    for y in -b..=b {
                        roots_small(&q, x, y, b, &mut out);
                    }
                    out
                })
                .map(|[x, y, z]| Point3::new(BigInt::from(x), BigInt::from(y), BigInt::from(z)))
                .collect()
        }
        None => {
            let b = BigInt::from(bound);
            let range: Vec<BigInt> = (0..=2 * bound).map(|i| BigInt::from(i) - &b).collect();
            range
                .par_iter()
                .flat_map_iter(|x| {
                    let mut out = Vec::new();
                    for y in &range {
                        roots_big(surface, x, y, &b, &mut out);
                    }
                    out
                })
                .collect()
        }
    };
    points.sort();
    points.dedup();
    points
}

// ---------------------------------------------------------------------------
// Breadth-first exploration

/// Breadth-first search tree rooted at one point.
#[derive(Debug, Clone)]
struct Explorer {
    points: Vec<Point3<BigInt>>,
    parent: Vec<Option<(usize, Move)>>,
    index: HashMap<Point3<BigInt>, usize>,
    frontier: Vec<usize>,
    pruned_height: bool,
    hit_count: bool,
}

impl Explorer {
    /// A start above the height cap is kept but never expanded.
    fn new(start: &Point3<BigInt>, caps: &Caps) -> Self {
        let admissible = within_height(start, caps.height);
        Explorer {
            points: vec![start.clone()],
            parent: vec![None],
            index: HashMap::from([(start.clone(), 0)]),
            frontier: if admissible { vec![0] } else { Vec::new() },
            pruned_height: !admissible,
            hit_count: false,
        }
    }

    fn done(&self) -> bool {
        self.frontier.is_empty()
    }

    /// Expands one BFS layer, returning the indices added.
    fn expand(&mut self, surface: &Surface<BigInt>, gens: &[Move], caps: &Caps) -> Vec<usize> {
        let mut added = Vec::new();
        let frontier = std::mem::take(&mut self.frontier);
        for (pos, &i) in frontier.iter().enumerate() {
            for m in gens {
                let q = apply_unchecked(surface, m, &self.points[i]);
                if self.index.contains_key(&q) {
                    continue;
                }
                if !within_height(&q, caps.height) {
                    self.pruned_height = true;
                    continue;
                }
                if self.points.len() >= caps.count {
                    self.hit_count = true;
                    // Keep the unexpanded rest so `done` stays false.
                    self.frontier = frontier[pos..].to_vec();
                    return added;
                }
                let j = self.points.len();
                self.index.insert(q.clone(), j);
                self.points.push(q);
                self.parent.push(Some((i, *m)));
                added.push(j);
            }
        }
        self.frontier = added.clone();
        added
    }

    fn run(
        &mut self,
        surface: &Surface<BigInt>,
        gens: &[Move],
        caps: &Caps,
        mut stop: impl FnMut(usize) -> bool,
    ) -> Option<usize> {
        if stop(0) {
            return Some(0);
        }
        while !self.done() && !self.hit_count {
            for j in self.expand(surface, gens, caps) {
                if stop(j) {
                    return Some(j);
                }
            }
        }
        None
    }

    fn truncated(&self) -> bool {
        self.pruned_height || self.hit_count
    }

    /// Word mapping the root to point `i`.
    fn word_to(&self, kind: SurfaceKind, mut i: usize) -> MoveWord {
        let mut moves = Vec::new();
        while let Some((j, m)) = self.parent[i] {
            moves.push(m);
            i = j;
        }
        moves.reverse();
        MoveWord::from_moves(kind, moves).expect("generators are valid on the surface")
    }
}

/// Result of [`orbit_bfs`]: the visited points, in BFS order, with a word
/// from the start point to each.
#[derive(Debug, Clone)]
pub struct OrbitBfs {
    kind: SurfaceKind,
    explorer: Explorer,
    pub caps_hit: bool,
}

impl OrbitBfs {
    pub fn points(&self) -> &[Point3<BigInt>] {
        &self.explorer.points
    }

    pub fn len(&self) -> usize {
        self.explorer.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.explorer.points.is_empty()
    }

    pub fn contains(&self, p: &Point3<BigInt>) -> bool {
        self.explorer.index.contains_key(p)
    }

    /// Certificate word from the start point to `p`, if visited.
    pub fn word(&self, p: &Point3<BigInt>) -> Option<MoveWord> {
        self.explorer.index.get(p).map(|&i| self.explorer.word_to(self.kind, i))
    }
}

/// Breadth-first closure of `start` under `gens`, skipping points above the
/// height cap and stopping once `caps.count` points are stored. `caps_hit`
/// records whether either limit cut the search short.
pub fn orbit_bfs(surface: &Surface<BigInt>, gens: GeneratorSet, start: &Point3<BigInt>, caps: &Caps) -> OrbitBfs {
    let moves = gens.generators(surface.kind());
    let mut explorer = Explorer::new(start, caps);
    explorer.run(surface, &moves, caps, |_| false);
    OrbitBfs {
        kind: surface.kind(),
        caps_hit: explorer.truncated(),
        explorer,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Equivalence {
    /// Certified: the word maps `p` to `q`.
    Yes(MoveWord),
    /// No connection found. `caps_hit` is false when one side's orbit was
    /// exhausted without touching either cap, which proves inequivalence.
    NoWithinCaps { caps_hit: bool },
}

/// Bidirectional breadth-first search from `p` and `q`, always growing the
/// smaller frontier. The count cap applies to each side. Every generator set
/// is closed under inverses, so the backward tree reads as forward moves
/// after inversion.
pub fn equivalent(
    surface: &Surface<BigInt>,
    gens: GeneratorSet,
    p: &Point3<BigInt>,
    q: &Point3<BigInt>,
    caps: &Caps,
) -> Equivalence {
    let kind = surface.kind();
    let moves = gens.generators(kind);
    let mut fwd = Explorer::new(p, caps);
    let mut bwd = Explorer::new(q, caps);
    let certify = |fwd: &Explorer, bwd: &Explorer, i: usize, j: usize| {
        let mut w = fwd.word_to(kind, i);
        w.extend(&bwd.word_to(kind, j).inverse());
        debug_assert_eq!(apply_word(surface, &w, p).as_ref(), Ok(q));
        assert_eq!(
            apply_word(surface, &w, p).ok().as_ref(),
            Some(q),
            "equivalence certificate failed replay"
        );
        Equivalence::Yes(w)
    };
    if p == q {
        return Equivalence::Yes(MoveWord::new(kind));
    }
    loop {
        // A finished side holds the whole component of its root below the
        // height cap; the other side cannot meet it anymore.
        if fwd.done() || bwd.done() {
            break;
        }
        let fwd_open = !fwd.hit_count;
        let bwd_open = !bwd.hit_count;
        if !fwd_open && !bwd_open {
            break;
        }
        let grow_fwd = fwd_open && (!bwd_open || fwd.frontier.len() <= bwd.frontier.len());
        if grow_fwd {
            for i in fwd.expand(surface, &moves, caps) {
                if let Some(&j) = bwd.index.get(&fwd.points[i]) {
                    return certify(&fwd, &bwd, i, j);
                }
            }
        } else {
            for j in bwd.expand(surface, &moves, caps) {
                if let Some(&i) = fwd.index.get(&bwd.points[j]) {
                    return certify(&fwd, &bwd, i, j);
                }
            }
        }
    }
    let capped = |e: &Explorer| !e.done() || e.pruned_height;
    Equivalence::NoWithinCaps {
        caps_hit: capped(&fwd) && capped(&bwd),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Exceptional {
    /// The word maps the point to one with a coordinate `+-2`.
    Yes(MoveWord),
    NoWithinCaps {
        caps_hit: bool,
    },
}

/// Searches the `GammaPrime` orbit of `p` (within caps) for a point with a
/// coordinate equal to `+-2`.
pub fn is_exceptional(surface: &Surface<BigInt>, p: &Point3<BigInt>, caps: &Caps) -> Exceptional {
    let moves = GeneratorSet::GammaPrime.generators(surface.kind());
    let mut explorer = Explorer::new(p, caps);
    let hit = {
        let mut found = None;
        explorer.run(surface, &moves, caps, |_| false);
        for (i, q) in explorer.points.iter().enumerate() {
            if has_pm2(q).is_some() {
                found = Some(i);
                break;
            }
        }
        found
    };
    match hit {
        Some(i) => Exceptional::Yes(explorer.word_to(surface.kind(), i)),
        None => Exceptional::NoWithinCaps {
            caps_hit: explorer.truncated(),
        },
    }
}

// ---------------------------------------------------------------------------
// Class numbers

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, i: usize, j: usize) -> bool {
        let (a, b) = (self.find(i), self.find(j));
        if a == b {
            return false;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub kind: SurfaceKind,
    pub params: Vec<BigInt>,
    pub gens: GeneratorSet,
    pub box_bound: u64,
    /// One point per class with the number of box points in its orbit.
    pub representatives: Vec<(Point3<BigInt>, usize)>,
    /// Exceptional box points with a word reaching a `+-2` coordinate.
    pub exceptional: Vec<(Point3<BigInt>, MoveWord)>,
    pub class_number_star: usize,
    pub caps_hit: bool,
}

/// Greedy `l_inf` descent using only the moves in `gens` (first listed wins
/// ties).
fn reduce_by_moves(surface: &Surface<BigInt>, gens: &[Move], p: &Point3<BigInt>) -> (Point3<BigInt>, MoveWord) {
    let mut word = MoveWord::new(surface.kind());
    let mut cur = p.clone();
    loop {
        let h = linf_height(&cur);
        let best = gens
            .iter()
            .map(|m| (m, apply_unchecked(surface, m, &cur)))
            .map(|(m, q)| (linf_height(&q), m, q))
            .filter(|(hq, _, _)| *hq < h)
            .min_by(|a, b| a.0.cmp(&b.0));
        match best {
            Some((_, m, q)) => {
                word.push(*m);
                cur = q;
            }
            None => return (cur, word),
        }
    }
}

/// Merges representatives whose search trees meet. Returns, per class root,
/// the number of box points seen, and whether a count cap was hit.
struct Merge {
    uf: UnionFind,
    /// Per representative: (closure id, index of the representative in it).
    seen_in: Vec<Option<(usize, usize)>>,
    closures: Vec<Explorer>,
    count_capped: bool,
}

fn merge_representatives(surface: &Surface<BigInt>, gens: &[Move], reps: &[Point3<BigInt>], caps: &Caps) -> Merge {
    let lookup: HashMap<&Point3<BigInt>, usize> = reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut merge = Merge {
        uf: UnionFind::new(reps.len()),
        seen_in: vec![None; reps.len()],
        closures: Vec::new(),
        count_capped: false,
    };
    for (i, rep) in reps.iter().enumerate() {
        if merge.seen_in[i].is_some() {
            continue;
        }
        let mut explorer = Explorer::new(rep, caps);
        explorer.run(surface, gens, caps, |_| false);
        merge.count_capped |= explorer.hit_count;
        let id = merge.closures.len();
        for (j, q) in explorer.points.iter().enumerate() {
            if let Some(&r) = lookup.get(q) {
                merge.uf.union(i, r);
                if merge.seen_in[r].is_none() {
                    merge.seen_in[r] = Some((id, j));
                }
            }
        }
        merge.closures.push(explorer);
    }
    merge
}

/// Counts classes of non-exceptional integer points in the box
/// `l_inf <= bound` under `gens`.
///
/// Pipeline: enumerate; reduce every point (by `reduce_compact` for
/// `GammaPrime`, by greedy twist descent for `GammaPoly`, so each reduction
/// word is a word in the chosen generators); merge reduced points whose
/// search trees (height cap `caps.height`) meet; drop classes whose
/// `GammaPrime` tree contains a coordinate `+-2`.
///
/// With `caps.height == bound` each class is exactly a connected component
/// of the box graph whose edges are the generators. `caps_hit` is set when a
/// count cap truncated a tree, or when two distinct classes have
/// representatives at the same height (a possible over-count).
pub fn class_number(surface: &Surface<BigInt>, gens: GeneratorSet, bound: u64, caps: &Caps) -> OrbitReport {
    let kind = surface.kind();
    let points = enumerate_points(surface, bound);
    let cfg = AConfig::integer_star();

    // Exceptional classification always uses GammaPrime.
    let descents: Vec<_> = points
        .par_iter()
        .map(|p| reduce_compact(surface, &cfg, p).expect("exact integer configuration"))
        .collect();
    let mut exceptional: Vec<(Point3<BigInt>, MoveWord)> = Vec::new();
    let mut prime_reps: Vec<Point3<BigInt>> = Vec::new();
    let mut prime_rep_of: Vec<Option<usize>> = vec![None; points.len()];
    {
        let mut lookup: HashMap<Point3<BigInt>, usize> = HashMap::new();
        for (i, d) in descents.iter().enumerate() {
            if let DescentStatus::ExceptionalHit { .. } = d.status {
                exceptional.push((points[i].clone(), d.word.clone()));
                continue;
            }
            let next = lookup.len();
            let r = *lookup.entry(d.reduced.clone()).or_insert_with(|| {
                prime_reps.push(d.reduced.clone());
                next
            });
            prime_rep_of[i] = Some(r);
        }
    }
    let prime_moves = GeneratorSet::GammaPrime.generators(kind);
    let mut prime = merge_representatives(surface, &prime_moves, &prime_reps, caps);
    let mut count_capped = prime.count_capped;

    // Word from each prime representative to a +-2 point, where found.
    let pm2_in_closure: Vec<Option<usize>> = prime
        .closures
        .iter()
        .map(|c| c.points.iter().position(|q| has_pm2(q).is_some()))
        .collect();
    let to_pm2: Vec<Option<MoveWord>> = (0..prime_reps.len())
        .map(|r| {
            let (id, j) = prime.seen_in[r]?;
            let closure = &prime.closures[id];
            let target = pm2_in_closure[id]?;
            let mut w = closure.word_to(kind, j).inverse();
            w.extend(&closure.word_to(kind, target));
            Some(w)
        })
        .collect();
    let exceptional_root: HashSet<usize> = (0..prime_reps.len())
        .filter(|&r| to_pm2[r].is_some())
        .map(|r| prime.uf.find(r))
        .collect();

    let mut regular: Vec<usize> = Vec::new();
    for (i, rep) in prime_rep_of.iter().enumerate() {
        let Some(r) = *rep else { continue };
        if !exceptional_root.contains(&prime.uf.find(r)) {
            regular.push(i);
        } else if let Some(w) = &to_pm2[r] {
            let mut word = descents[i].word.clone();
            word.extend(w);
            exceptional.push((points[i].clone(), word));
        }
        // A representative in an exceptional class without its own witness
        // only occurs when a count cap truncated its tree.
    }
    exceptional.sort_by(|a, b| a.0.cmp(&b.0));

    let (reps, merge) = match gens {
        GeneratorSet::GammaPrime => (prime_reps, prime),
        GeneratorSet::GammaPoly => {
            let moves = GeneratorSet::GammaPoly.generators(kind);
            let reduced: Vec<Point3<BigInt>> = regular
                .par_iter()
                .map(|&i| reduce_by_moves(surface, &moves, &points[i]).0)
                .collect();
            let mut uniq: Vec<Point3<BigInt>> = reduced.into_iter().collect::<HashSet<_>>().into_iter().collect();
            uniq.sort();
            let merge = merge_representatives(surface, &moves, &uniq, caps);
            count_capped |= merge.count_capped;
            (uniq, merge)
        }
    };
    let mut merge = merge;
    let excluded: HashSet<usize> = match gens {
        GeneratorSet::GammaPrime => exceptional_root,
        GeneratorSet::GammaPoly => HashSet::new(),
    };

    // Pick the lowest (height, point) representative of each class.
    let bound_big = BigInt::from(bound);
    let mut best: HashMap<usize, usize> = HashMap::new();
    for r in 0..reps.len() {
        let root = merge.uf.find(r);
        if excluded.contains(&root) {
            continue;
        }
        let key = |i: usize| (linf_height(&reps[i]), reps[i].clone());
        best.entry(root)
            .and_modify(|b| {
                if key(r) < key(*b) {
                    *b = r;
                }
            })
            .or_insert(r);
    }
    let mut representatives: Vec<(Point3<BigInt>, usize)> = best
        .values()
        .map(|&r| {
            let size = match merge.seen_in[r] {
                Some((id, _)) => merge.closures[id]
                    .points
                    .iter()
                    .filter(|q| linf_height(*q) <= bound_big)
                    .count(),
                None => 0,
            };
            (reps[r].clone(), size)
        })
        .collect();
    representatives.sort_by(|a, b| (linf_height(&a.0), &a.0).cmp(&(linf_height(&b.0), &b.0)));

    let mut heights: Vec<BigInt> = representatives.iter().map(|(p, _)| linf_height(p)).collect();
    let n = heights.len();
    heights.dedup();
    let caps_hit = count_capped || heights.len() != n;

    OrbitReport {
        kind,
        params: params(surface),
        gens,
        box_bound: bound,
        class_number_star: representatives.len(),
        representatives,
        exceptional,
        caps_hit,
    }
}

// ---------------------------------------------------------------------------
// Parabolic lines

/// An affine line `t -> base + t * direction` on a (1,1) surface whose
/// `axis` coordinate is constantly `value = +-2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicLine {
    pub axis: Axis,
    pub value: BigInt,
    pub base: Point3<BigInt>,
    pub direction: Point3<BigInt>,
    pub integral: bool,
}

impl ParabolicLine {
    pub fn at(&self, t: &BigInt) -> Point3<BigInt> {
        Point3::new(
            &self.base.x + t * &self.direction.x,
            &self.base.y + t * &self.direction.y,
            &self.base.z + t * &self.direction.z,
        )
    }

    /// The parameter `t` with `at(t) == p`, if any.
    pub fn parameter_of(&self, p: &Point3<BigInt>) -> Option<BigInt> {
        let i = Axis::ALL.into_iter().find(|&a| !self.direction.get(a).is_zero())?;
        let diff = p.get(i) - self.base.get(i);
        let dir = self.direction.get(i);
        if !(&diff % dir).is_zero() {
            return None;
        }
        let t = diff / dir;
        (self.at(&t) == *p).then_some(t)
    }

    pub fn contains(&self, p: &Point3<BigInt>) -> bool {
        self.parameter_of(p).is_some()
    }
}

/// Lines on the (1,1) surface with `x = +-2`.
///
/// At `x = 2` the equation collapses to `(y - z)^2 = k - 2` and at `x = -2`
/// to `(y + z)^2 = k - 2`. When `k - 2 = s^2` with `s >= 0` an integer, the
/// lines `(2, t, t -+ s)` and `(-2, t, -t +- s)` are returned (two lines
/// when `s = 0`). Otherwise there is no integral line and the list is empty;
/// complex lines still exist with irrational or imaginary `s`.
///
/// Points with `y` or `z` equal to `+-2` lie on the images of these lines
/// under coordinate permutations, which are surface symmetries.
pub fn parabolic_lines_11(k: &BigInt) -> Vec<ParabolicLine> {
    let m: BigInt = k - BigInt::from(2);
    if m.is_negative() {
        return Vec::new();
    }
    let s = m.sqrt();
    if &s * &s != m {
        return Vec::new();
    }
    let line = |value: i64, base_z: BigInt, dz: i64| ParabolicLine {
        axis: Axis::X,
        value: BigInt::from(value),
        base: Point3::new(BigInt::from(value), BigInt::zero(), base_z),
        direction: Point3::from_i64(0, 1, dz),
        integral: true,
    };
    let mut lines = vec![
        line(2, -s.clone(), 1),
        line(2, s.clone(), 1),
        line(-2, s.clone(), -1),
        line(-2, -s.clone(), -1),
    ];
    lines.dedup();
    lines
}

/// Whether `p` lies on one of `lines` after some coordinate permutation.
pub fn on_lines_up_to_permutation(lines: &[ParabolicLine], p: &Point3<BigInt>) -> bool {
    crate::moves::Perm::ALL
        .iter()
        .any(|perm| lines.iter().any(|l| l.contains(&perm.apply(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: i64, y: i64, z: i64) -> Point3<BigInt> {
        Point3::from_i64(x, y, z)
    }

    fn markoff(k: i64) -> Surface<BigInt> {
        Surface::markoff(BigInt::from(k))
    }

    fn naive(surface: &Surface<BigInt>, b: i64) -> Vec<Point3<BigInt>> {
        let mut out = Vec::new();
        for x in -b..=b {
            for y in -b..=b {
                for z in -b..=b {
                    let p = pt(x, y, z);
                    if surface.residual(&p).is_zero() {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn enumerate_examples() {
        let pts = enumerate_points(&markoff(-2), 3);
        assert_eq!(
            pts,
            vec![pt(-3, -3, 3), pt(-3, 3, -3), pt(0, 0, 0), pt(3, -3, -3), pt(3, 3, 3)]
        );
        assert!(enumerate_points(&markoff(1_000_001), 0).is_empty());
        let z = BigInt::zero();
        let s = Surface::cubic04(z.clone(), z.clone(), z.clone(), z);
        let pts = enumerate_points(&s, 2);
        for p in [
            pt(2, 0, 0),
            pt(-2, 0, 0),
            pt(0, 2, 0),
            pt(0, -2, 0),
            pt(0, 0, 2),
            pt(0, 0, -2),
        ] {
            assert!(pts.contains(&p));
        }
    }

    #[test]
    fn enumerate_matches_naive() {
        for k in [-2, 0, 3, 6, 11, 27] {
            assert_eq!(enumerate_points(&markoff(k), 12), naive(&markoff(k), 12), "k={k}");
        }
        let ks = [[0, 0, 0, 0], [1, 2, -1, 3], [2, 2, 2, 2], [-3, 0, 1, 5]];
        for [a, b, c, d] in ks {
            let s = Surface::cubic04(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
            assert_eq!(enumerate_points(&s, 10), naive(&s, 10));
        }
    }

    #[test]
    fn enumerate_big_path_matches() {
        // k beyond the i128 fast path; compare against a shifted small run.
        let k = BigInt::from(1) << 70;
        let s = Surface::markoff(k);
        let pts = enumerate_points(&s, 4);
        assert_eq!(pts, naive(&s, 4));
    }

    #[test]
    fn orbit_examples() {
        let s = markoff(-2);
        let caps = Caps::new(100, 100_000);
        let o = orbit_bfs(&s, GeneratorSet::GammaPoly, &pt(0, 0, 0), &caps);
        assert_eq!(o.points(), &[pt(0, 0, 0)]);
        assert!(!o.caps_hit);

        let o = orbit_bfs(&s, GeneratorSet::GammaPoly, &pt(3, 3, 3), &caps);
        for p in o.points() {
            let w = o.word(p).unwrap();
            assert_eq!(apply_word(&s, &w, &pt(3, 3, 3)).unwrap(), *p);
        }
        for p in [pt(3, 3, 6), pt(3, 6, 15), pt(6, 15, 87)] {
            assert!(o.contains(&p), "{p}");
        }
        let prime = orbit_bfs(&s, GeneratorSet::GammaPrime, &pt(3, 3, 3), &caps);
        assert!(prime.contains(&pt(6, 15, 87)));

        let o = orbit_bfs(&s, GeneratorSet::GammaPoly, &pt(3, 6, 15), &Caps::new(10, 100));
        assert_eq!(o.len(), 1);
        assert!(o.caps_hit);
    }

    #[test]
    fn equivalence_examples() {
        let s = markoff(-2);
        let caps = Caps::new(1_000, 100_000);
        match equivalent(&s, GeneratorSet::GammaPrime, &pt(3, 3, 3), &pt(3, 6, 15), &caps) {
            Equivalence::Yes(w) => assert_eq!(apply_word(&s, &w, &pt(3, 3, 3)).unwrap(), pt(3, 6, 15)),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            equivalent(&s, GeneratorSet::GammaPrime, &pt(0, 0, 0), &pt(3, 3, 3), &caps),
            Equivalence::NoWithinCaps { caps_hit: false }
        );
        assert_eq!(
            equivalent(&s, GeneratorSet::GammaPoly, &pt(3, 3, 3), &pt(3, 3, 3), &caps),
            Equivalence::Yes(MoveWord::new(SurfaceKind::Markoff11))
        );
        let a = pt(3, 3, 3);
        let b = pt(3, -3, -3);
        match equivalent(&s, GeneratorSet::GammaPoly, &a, &b, &Caps::new(200, 10_000)) {
            Equivalence::Yes(w) => assert_eq!(apply_word(&s, &w, &a).unwrap(), b),
            Equivalence::NoWithinCaps { caps_hit } => assert!(caps_hit),
        }
    }

    #[test]
    fn exceptional_examples() {
        let caps = Caps::new(10_000, 100_000);
        assert_eq!(
            is_exceptional(&markoff(6), &pt(2, 3, 1), &caps),
            Exceptional::Yes(MoveWord::new(SurfaceKind::Markoff11))
        );
        assert!(matches!(
            is_exceptional(&markoff(-2), &pt(3, 3, 3), &caps),
            Exceptional::NoWithinCaps { caps_hit: true }
        ));
        assert_eq!(
            is_exceptional(&markoff(-2), &pt(0, 0, 0), &caps),
            Exceptional::NoWithinCaps { caps_hit: false }
        );
        let s = markoff(6);
        if let Exceptional::Yes(w) = is_exceptional(&s, &pt(3, 3, 6), &caps) {
            let q = apply_word(&s, &w, &pt(3, 3, 6)).unwrap();
            assert!(has_pm2(&q).is_some());
        }
    }

    /// Connected components of the box graph, by brute force.
    fn box_components(surface: &Surface<BigInt>, gens: GeneratorSet, b: u64) -> (usize, usize) {
        let pts = enumerate_points(surface, b);
        let idx: HashMap<_, _> = pts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut uf = UnionFind::new(pts.len());
        for (i, p) in pts.iter().enumerate() {
            for m in gens.generators(surface.kind()) {
                if let Some(&j) = idx.get(&apply_unchecked(surface, &m, p)) {
                    uf.union(i, j);
                }
            }
        }
        let mut exc = HashSet::new();
        for (i, p) in pts.iter().enumerate() {
            if has_pm2(p).is_some() {
                exc.insert(uf.find(i));
            }
        }
        let roots: HashSet<usize> = (0..pts.len()).map(|i| uf.find(i)).collect();
        (roots.len() - exc.len(), exc.len())
    }

    #[test]
    fn class_number_matches_components() {
        for k in [-2, 0, 1, 3, 6, 11, 18] {
            let s = markoff(k);
            let caps = Caps::new(60, 1_000_000);
            let (prime_classes, _) = box_components(&s, GeneratorSet::GammaPrime, 60);
            let r = class_number(&s, GeneratorSet::GammaPrime, 60, &caps);
            assert_eq!(r.class_number_star, prime_classes, "k={k}");
            for (p, w) in &r.exceptional {
                let q = apply_word(&s, w, p).unwrap();
                assert!(has_pm2(&q).is_some());
            }
        }
    }

    #[test]
    fn class_number_gamma_poly_is_at_least_prime() {
        // GammaPoly orbits refine GammaPrime orbits.
        for k in [-2, 3, 7] {
            let s = markoff(k);
            let caps = Caps::new(60, 1_000_000);
            let prime = class_number(&s, GeneratorSet::GammaPrime, 60, &caps);
            let poly = class_number(&s, GeneratorSet::GammaPoly, 60, &caps);
            assert!(poly.class_number_star >= prime.class_number_star);
            assert_eq!(poly.exceptional, prime.exceptional);
        }
    }

    #[test]
    fn class_number_examples() {
        let s = markoff(-2);
        let r = class_number(&s, GeneratorSet::GammaPrime, 1000, &Caps::new(1000, 1_000_000));
        let reps: Vec<_> = r.representatives.iter().map(|(p, _)| p.clone()).collect();
        assert!(reps.contains(&pt(0, 0, 0)));
        assert!(reps.contains(&pt(3, 3, 3)));
        assert!(r.exceptional.is_empty());

        let empty = class_number(&markoff(1_000_001), GeneratorSet::GammaPrime, 0, &Caps::new(0, 10));
        assert_eq!(empty.class_number_star, 0);
        assert!(empty.representatives.is_empty() && empty.exceptional.is_empty());
    }

    #[test]
    fn cubic04_class_number_matches_components() {
        let s = Surface::cubic04(BigInt::from(1), BigInt::from(0), BigInt::from(2), BigInt::from(-1));
        let (classes, _) = box_components(&s, GeneratorSet::GammaPrime, 25);
        let r = class_number(&s, GeneratorSet::GammaPrime, 25, &Caps::new(25, 1_000_000));
        assert_eq!(r.class_number_star, classes);
    }

    #[test]
    fn lines_examples() {
        let lines = parabolic_lines_11(&BigInt::from(6));
        assert_eq!(lines.len(), 4);
        let l = lines.iter().find(|l| l.base == pt(2, 0, -2)).unwrap();
        assert_eq!(l.at(&BigInt::from(3)), pt(2, 3, 1));
        assert_eq!(l.parameter_of(&pt(2, 3, 1)), Some(BigInt::from(3)));
        assert_eq!(parabolic_lines_11(&BigInt::from(2)).len(), 2);
        assert!(parabolic_lines_11(&BigInt::from(1)).is_empty());
        assert!(parabolic_lines_11(&BigInt::from(5)).is_empty());
    }

    #[test]
    fn lines_lie_on_surface() {
        for s in 0..12i64 {
            let k = BigInt::from(s * s + 2);
            let surface = Surface::markoff(k.clone());
            for l in parabolic_lines_11(&k) {
                for t in [-7, -1, 0, 2, 13] {
                    assert!(surface.residual(&l.at(&BigInt::from(t))).is_zero());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn enumeration_complete_small(k in -5i64..40, b in 0u64..9) {
            let s = markoff(k);
            prop_assert_eq!(enumerate_points(&s, b), naive(&s, b as i64));
        }

        #[test]
        fn exceptional_points_on_lines(s in 0i64..8, b in 5u64..40) {
            let k = BigInt::from(s * s + 2);
            let lines = parabolic_lines_11(&k);
            for p in enumerate_points(&Surface::markoff(k.clone()), b) {
                if has_pm2(&p).is_some() {
                    prop_assert!(on_lines_up_to_permutation(&lines, &p));
                }
            }
        }
    }
}

//! Monodromy of the roots of `(x+1)^n - lambda x^p` and the permutation
//! group generated by the loops around `0` and `lambda_c`.

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::One;

use crate::continuation::{self, match_nearest, TrackOptions};
use crate::error::{invalid, Error, Result};
use crate::poly::{self, LABEL_EPS};

/// Largest degree for which the group is closed by breadth-first search.
pub const BFS_DEGREE_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return invalid(format!("{images:?} is not a permutation"));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The cycle `(c_0 c_1 ... c_k)` on `n` points.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &c) in cycle.iter().enumerate() {
            if c >= n {
                return invalid(format!("point {c} outside 0..{n}"));
            }
            images[c] = cycle[(i + 1) % cycle.len()];
        }
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                c.push(i);
                i = self.images[i];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().iter().fold(1u64, |acc, &l| acc.lcm(&(l as u64)))
    }

    pub fn is_n_cycle(&self) -> bool {
        self.cycle_type() == [self.len()]
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.images[i] != i).collect()
    }

    pub fn is_transposition(&self) -> bool {
        self.moved_points().len() == 2
    }

    pub fn power(&self, k: usize) -> Permutation {
        (0..k).fold(Permutation::identity(self.len()), |acc, _| acc.then(self))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// One piece of a loop in the `lambda` plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    /// Straight segment.
    Segment { from: Complex64, to: Complex64 },
    /// Along the positive real axis, uniform in `log lambda`.
    LogSegment { from: f64, to: f64 },
    /// `center + radius * exp(i(start + 2 pi turns t))`; negative turns run
    /// clockwise.
    Circle {
        center: Complex64,
        radius: f64,
        start: f64,
        turns: f64,
    },
}

impl Piece {
    pub fn at(&self, t: f64) -> Complex64 {
        match *self {
            Piece::Segment { from, to } => from + (to - from) * t,
            Piece::LogSegment { from, to } => {
                Complex64::new((from.ln() + t * (to.ln() - from.ln())).exp(), 0.0)
            }
            Piece::Circle {
                center,
                radius,
                start,
                turns,
            } => center + Complex64::from_polar(radius, start + 2.0 * PI * turns * t),
        }
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { from, to } => Piece::Segment { from: to, to: from },
            Piece::LogSegment { from, to } => Piece::LogSegment { from: to, to: from },
            Piece::Circle {
                center,
                radius,
                start,
                turns,
            } => Piece::Circle {
                center,
                radius,
                start: start + 2.0 * PI * turns,
                turns: -turns,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopPath {
    pub base: Complex64,
    pub pieces: Vec<Piece>,
    /// Initial uniform samples per piece.
    pub samples: usize,
    /// Refinement cap per piece.
    pub max_samples: usize,
}

impl LoopPath {
    pub fn new(base: Complex64, pieces: Vec<Piece>) -> Result<Self> {
        let path = LoopPath {
            base,
            pieces,
            samples: TrackOptions::default().samples,
            max_samples: TrackOptions::default().max_samples,
        };
        path.validate()?;
        Ok(path)
    }

    fn validate(&self) -> Result<()> {
        let mut at = self.base;
        for piece in &self.pieces {
            let start = piece.at(0.0);
            if (start - at).norm() > 1e-12 * (1.0 + at.norm()) {
                return invalid(format!("path is not continuous at {at}"));
            }
            at = piece.at(1.0);
        }
        if (at - self.base).norm() > 1e-12 * (1.0 + at.norm()) {
            return invalid("path does not return to its base point");
        }
        Ok(())
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> LoopPath {
        LoopPath {
            base: self.base,
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
            samples: self.samples,
            max_samples: self.max_samples,
        }
    }

    /// `self` followed by `other`; both must share the base point.
    pub fn concat(&self, other: &LoopPath) -> Result<LoopPath> {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().copied());
        let mut path = LoopPath::new(self.base, pieces)?;
        path.samples = self.samples;
        path.max_samples = self.max_samples;
        Ok(path)
    }
}

/// The labeling base point `LABEL_EPS^n`.
pub fn base_point(n: u32) -> f64 {
    LABEL_EPS.powi(n as i32)
}

/// Continues labeled roots at `from` (positive real) to `to` along the path
/// `from -> |to|` on the real axis, then along the arc of radius `|to|`.
fn transport_labels(n: u32, p: u32, xs: &[Complex64], from: f64, to: Complex64) -> Result<Vec<Complex64>> {
    let opts = TrackOptions::default();
    let radial = Piece::LogSegment { from, to: to.norm() };
    let mut xs = continuation::track(n, p, |t| radial.at(t), xs, opts)?.roots;
    let arg = to.arg();
    if arg != 0.0 {
        let arc = Piece::Circle {
            center: Complex64::new(0.0, 0.0),
            radius: to.norm(),
            start: 0.0,
            turns: arg / (2.0 * PI),
        };
        xs = continuation::track(n, p, |t| arc.at(t), &xs, opts)?.roots;
    }
    Ok(xs)
}

/// Labeled roots at an arbitrary base point, reached from the labeling
/// configuration without winding around `0`.
pub fn labeled_roots_at(n: u32, p: u32, base: Complex64) -> Result<Vec<Complex64>> {
    let (lambda0, xs) = poly::base_configuration(n, p)?;
    if base == Complex64::new(lambda0, 0.0) {
        return Ok(xs);
    }
    let crit = poly::critical_data(n, p)?.lambda_crit;
    if base.norm() >= crit && base.arg().abs() < 1e-12 {
        return invalid("base point must not lie on [lambda_c, inf)");
    }
    if base.norm() == 0.0 {
        return invalid("base point must not be 0");
    }
    transport_labels(n, p, &xs, lambda0, base)
}

/// Permutation of root labels after continuing around `path`: label `i`
/// ends where label `image[i]` started.
pub fn track_roots(n: u32, p: u32, path: &LoopPath) -> Result<Permutation> {
    let start = labeled_roots_at(n, p, path.base)?;
    let opts = TrackOptions {
        samples: path.samples,
        max_samples: path.max_samples,
    };
    let mut xs = start.clone();
    for piece in &path.pieces {
        xs = continuation::track(n, p, |t| piece.at(t), &xs, opts)?.roots;
    }
    let images = match_nearest(&xs, &start).ok_or_else(|| {
        Error::IllConditioned("continued roots do not match the starting roots".into())
    })?;
    Permutation::new(images)
}

/// Counterclockwise circle `|lambda| = eps^n` through the labeling base point.
pub fn zero_loop(n: u32) -> Result<LoopPath> {
    let lambda0 = base_point(n);
    LoopPath::new(
        Complex64::new(lambda0, 0.0),
        vec![Piece::Circle {
            center: Complex64::new(0.0, 0.0),
            radius: lambda0,
            start: 0.0,
            turns: 1.0,
        }],
    )
}

/// From the base point along the real axis to `lambda_c - delta`, once
/// around `lambda_c` at radius `delta = lambda_c / 4`, and back.
pub fn critical_loop(n: u32, p: u32) -> Result<LoopPath> {
    let crit = poly::critical_data(n, p)?.lambda_crit;
    let lambda0 = base_point(n);
    let delta = crit / 4.0;
    let near = crit - delta;
    LoopPath::new(
        Complex64::new(lambda0, 0.0),
        vec![
            Piece::LogSegment { from: lambda0, to: near },
            Piece::Circle {
                center: Complex64::new(crit, 0.0),
                radius: delta,
                start: PI,
                turns: 1.0,
            },
            Piece::LogSegment { from: near, to: lambda0 },
        ],
    )
}

pub fn loop_around_zero(n: u32, p: u32) -> Result<Permutation> {
    track_roots(n, p, &zero_loop(n)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalLoopReport {
    pub permutation: Permutation,
    /// The two labels exchanged, if the result is a transposition.
    pub observed_pair: Option<(usize, usize)>,
    /// `(p/2, -p/2)` for even `p`, `((p-1)/2, -(p-1)/2 - 1)` for odd `p`, mod `n`.
    pub predicted_pair: (usize, usize),
    pub matches_prediction: bool,
}

pub fn predicted_colliding_pair(n: u32, p: u32) -> (usize, usize) {
    let (n, p) = (n as i64, p as i64);
    let (a, b) = if p % 2 == 0 {
        (p / 2, -p / 2)
    } else {
        ((p - 1) / 2, -(p - 1) / 2 - 1)
    };
    let (a, b) = (a.rem_euclid(n) as usize, b.rem_euclid(n) as usize);
    (a.min(b), a.max(b))
}

pub fn loop_around_critical(n: u32, p: u32) -> Result<CriticalLoopReport> {
    let permutation = track_roots(n, p, &critical_loop(n, p)?)?;
    let observed_pair = match permutation.moved_points()[..] {
        [a, b] => Some((a, b)),
        _ => None,
    };
    let predicted_pair = predicted_colliding_pair(n, p);
    Ok(CriticalLoopReport {
        matches_prediction: observed_pair == Some(predicted_pair),
        permutation,
        observed_pair,
        predicted_pair,
    })
}

/// Whether the permutation of `path` survives doubling the sample count.
pub fn stable_under_refinement(n: u32, p: u32, path: &LoopPath) -> Result<bool> {
    let coarse = track_roots(n, p, path)?;
    let fine = track_roots(n, p, &path.clone().with_samples(path.samples * 2))?;
    Ok(coarse == fine)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupReport {
    pub degree: usize,
    pub order: BigUint,
    pub is_symmetric: bool,
    pub transitive: bool,
    /// The finest nontrivial block system, if the group is imprimitive.
    pub block_structure: Option<Vec<Vec<usize>>>,
    /// Order of the action on `block_structure`.
    pub quotient_order: Option<usize>,
    pub quotient_cyclic: Option<bool>,
    /// Elements fixing every block of `block_structure`.
    pub kernel_order: Option<BigUint>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// All elements of the group generated by `gens`, by breadth-first closure.
pub fn closure(gens: &[Permutation], n: usize) -> Result<Vec<Permutation>> {
    if n > BFS_DEGREE_CAP {
        return Err(Error::SizeCap {
            what: "permutation degree for BFS closure",
            limit: BFS_DEGREE_CAP,
            got: n,
        });
    }
    if gens.iter().any(|g| g.len() != n) {
        return invalid(format!("generators must act on {n} points"));
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut all = vec![id];
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                all.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(all)
}

/// The block system generated by joining `a` and `b`: the finest partition
/// invariant under `gens` with `a` and `b` in one block.
pub fn minimal_block_system(gens: &[Permutation], n: usize, a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[ry] = rx;
        for g in gens {
            pending.push((g.apply(x), g.apply(y)));
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for x in 0..n {
        let root = find(&mut parent, x);
        if index[root] == usize::MAX {
            index[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[root]].push(x);
    }
    blocks
}

/// A block system whose blocks have the given size, found by testing every
/// subset containing `0` of that size.
pub fn block_system_of_size(gens: &[Permutation], n: usize, size: usize) -> Option<Vec<Vec<usize>>> {
    if size == 0 || !n.is_multiple_of(size) {
        return None;
    }
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 || mask.count_ones() as usize != size {
            continue;
        }
        let mut orbit: Vec<u32> = vec![mask];
        let mut i = 0;
        let mut ok = true;
        while i < orbit.len() && ok {
            let s = orbit[i];
            for g in gens {
                let img = (0..n).filter(|&x| s >> x & 1 == 1).fold(0u32, |m, x| m | 1 << g.apply(x));
                if orbit.contains(&img) {
                    continue;
                }
                if orbit.iter().any(|&o| o & img != 0) {
                    ok = false;
                    break;
                }
                orbit.push(img);
            }
            i += 1;
        }
        let covered = orbit.iter().fold(0u32, |m, &o| m | o);
        if ok && covered == (1u32 << n) - 1 {
            let mut blocks: Vec<Vec<usize>> = orbit
                .iter()
                .map(|&o| (0..n).filter(|&x| o >> x & 1 == 1).collect())
                .collect();
            blocks.sort();
            return Some(blocks);
        }
    }
    None
}

/// Action of each generator on the blocks, as permutations of block indices.
fn block_action(gens: &[Permutation], blocks: &[Vec<usize>], n: usize) -> Vec<Permutation> {
    let mut block_of = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = i;
        }
    }
    gens.iter()
        .map(|g| Permutation {
            images: blocks.iter().map(|b| block_of[g.apply(b[0])]).collect(),
        })
        .collect()
}

fn quotient_data(
    gens: &[Permutation],
    elements: &[Permutation],
    blocks: &[Vec<usize>],
    n: usize,
) -> Result<(usize, bool, BigUint)> {
    let induced = block_action(gens, blocks, n);
    let quotient = closure(&induced, blocks.len())?;
    let q = quotient.len();
    let cyclic = quotient.iter().any(|g| g.order() as usize == q);
    let kernel = elements
        .iter()
        .filter(|g| blocks.iter().all(|b| b.contains(&g.apply(b[0])) && {
            b.iter().all(|&x| b.contains(&g.apply(x)))
        }))
        .count();
    Ok((q, cyclic, BigUint::from(kernel)))
}

pub fn generated_group(gens: &[Permutation], n: usize) -> Result<GroupReport> {
    let elements = closure(gens, n)?;
    let order = BigUint::from(elements.len());
    let transitive = n <= 1 || {
        let mut reach = vec![false; n];
        reach[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        reach.iter().all(|&r| r)
    };
    let mut finest: Option<Vec<Vec<usize>>> = None;
    if transitive {
        for b in 1..n {
            let sys = minimal_block_system(gens, n, 0, b);
            if sys.len() > 1 && finest.as_ref().is_none_or(|f| sys.len() > f.len()) {
                finest = Some(sys);
            }
        }
    }
    let (quotient_order, quotient_cyclic, kernel_order) = match &finest {
        Some(blocks) => {
            let (q, c, k) = quotient_data(gens, &elements, blocks, n)?;
            (Some(q), Some(c), Some(k))
        }
        None => (None, None, None),
    };
    Ok(GroupReport {
        degree: n,
        is_symmetric: order == factorial(n),
        order,
        transitive,
        block_structure: finest,
        quotient_order,
        quotient_cyclic,
        kernel_order,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaloisReport {
    pub n: u32,
    pub p: u32,
    /// `gcd(n, p)`.
    pub t: u32,
    pub zero_loop: Permutation,
    pub critical_loop: CriticalLoopReport,
    pub group: GroupReport,
    /// `n!` when `t = 1`, else `t ((n/t)!)^t`.
    pub expected_order: BigUint,
    /// Blocks of size `n/t` when `t > 1`.
    pub t_blocks: Option<Vec<Vec<usize>>>,
    pub quotient_order: Option<usize>,
    pub quotient_cyclic: Option<bool>,
    pub kernel_order: Option<BigUint>,
    pub passed: bool,
    pub failures: Vec<String>,
}

pub fn expected_galois_order(n: u32, p: u32) -> BigUint {
    let t = n.gcd(&p) as usize;
    let n = n as usize;
    if t == 1 {
        factorial(n)
    } else {
        BigUint::from(t) * factorial(n / t).pow(t as u32)
    }
}

pub fn galois_classify(n: u32, p: u32) -> Result<GaloisReport> {
    if p == 0 || p >= n {
        return invalid(format!("need 0 < p < n, got n={n}, p={p}"));
    }
    if n as usize > BFS_DEGREE_CAP {
        return Err(Error::SizeCap {
            what: "degree for exact group closure",
            limit: BFS_DEGREE_CAP,
            got: n as usize,
        });
    }
    let zero = loop_around_zero(n, p)?;
    let crit = loop_around_critical(n, p)?;
    let gens = [zero.clone(), crit.permutation.clone()];
    let deg = n as usize;
    let group = generated_group(&gens, deg)?;
    let t = n.gcd(&p);
    let expected_order = expected_galois_order(n, p);
    let mut failures = Vec::new();
    if !zero.is_n_cycle() {
        failures.push(format!("loop around 0 gave {zero}, not an n-cycle"));
    }
    if !crit.permutation.is_transposition() {
        failures.push(format!("loop around lambda_c gave {}, not a transposition", crit.permutation));
    }
    if group.order != expected_order {
        failures.push(format!("group order {} != {}", group.order, expected_order));
    }
    let (mut t_blocks, mut quotient_order, mut quotient_cyclic, mut kernel_order) = (None, None, None, None);
    if t == 1 {
        if !group.is_symmetric {
            failures.push("group is not the full symmetric group".into());
        }
    } else {
        let size = deg / t as usize;
        match block_system_of_size(&gens, deg, size) {
            Some(blocks) => {
                let elements = closure(&gens, deg)?;
                let (q, c, k) = quotient_data(&gens, &elements, &blocks, deg)?;
                if q != t as usize || !c {
                    failures.push(format!("block action has order {q} (cyclic: {c}), expected C_{t}"));
                }
                let want = factorial(size).pow(t);
                if k != want {
                    failures.push(format!("kernel order {k} != {want}"));
                }
                t_blocks = Some(blocks);
                quotient_order = Some(q);
                quotient_cyclic = Some(c);
                kernel_order = Some(k);
            }
            None => failures.push(format!("no block system with {t} blocks of size {size}")),
        }
    }
    Ok(GaloisReport {
        n,
        p,
        t,
        zero_loop: zero,
        critical_loop: crit,
        group,
        expected_order,
        t_blocks,
        quotient_order,
        quotient_cyclic,
        kernel_order,
        passed: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let c = Permutation::cycle(4, &[0, 1, 2, 3]).unwrap();
        assert!(c.is_n_cycle());
        assert_eq!(c.order(), 4);
        assert!(c.power(4).is_identity());
        assert!(c.then(&c.inverse()).is_identity());
        let t = Permutation::cycle(4, &[0, 2]).unwrap();
        assert!(t.is_transposition());
        assert_eq!(t.to_string(), "(0 2)");
        assert_eq!(c.then(&t).apply(1), 0);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(perm(&[1, 0, 3, 4, 2]).cycle_type(), vec![3, 2]);
    }

    #[test]
    fn group_examples() {
        let g = generated_group(&[perm(&[1, 2, 0]), perm(&[1, 0, 2])], 3).unwrap();
        assert_eq!(g.order, BigUint::from(6u32));
        assert!(g.is_symmetric && g.block_structure.is_none());

        let c = Permutation::cycle(4, &[0, 1, 2, 3]).unwrap();
        let t = Permutation::cycle(4, &[0, 2]).unwrap();
        let g = generated_group(&[c.clone(), t], 4).unwrap();
        assert_eq!(g.order, BigUint::from(8u32));
        assert_eq!(g.block_structure, Some(vec![vec![0, 2], vec![1, 3]]));
        assert_eq!(g.quotient_order, Some(2));
        assert_eq!(g.kernel_order, Some(BigUint::from(4u32)));

        let g = generated_group(&[c], 4).unwrap();
        assert_eq!(g.order, BigUint::from(4u32));
        assert!(generated_group(&[Permutation::identity(9)], 9).is_err());
    }

    #[test]
    fn zero_loop_is_shift() {
        for &(n, p) in &[(3, 1), (4, 1), (6, 2)] {
            let g = loop_around_zero(n, p).unwrap();
            let shift: Vec<usize> = (0..n as usize).map(|j| (j + 1) % n as usize).collect();
            assert_eq!(g.images(), &shift[..], "n={n} p={p}");
        }
    }

    #[test]
    fn reversed_loop_inverts() {
        let path = zero_loop(4).unwrap();
        let fwd = track_roots(4, 1, &path).unwrap();
        let back = track_roots(4, 1, &path.reversed()).unwrap();
        assert_eq!(fwd.inverse(), back);
        let twice = track_roots(4, 1, &path.concat(&path).unwrap()).unwrap();
        assert_eq!(twice, fwd.then(&fwd));
    }

    #[test]
    fn trivial_loop_is_identity() {
        let base = Complex64::new(0.5, 0.0);
        let path = LoopPath::new(
            base,
            vec![Piece::Circle {
                center: Complex64::new(0.4, 0.0),
                radius: 0.1,
                start: 0.0,
                turns: 1.0,
            }],
        )
        .unwrap();
        assert!(track_roots(3, 1, &path).unwrap().is_identity());
    }

    #[test]
    fn critical_loop_is_transposition() {
        let rep = loop_around_critical(3, 1).unwrap();
        assert!(rep.permutation.is_transposition());
        assert!(rep.permutation.then(&rep.permutation).is_identity());
    }

    #[test]
    fn classify_small() {
        let rep = galois_classify(4, 2).unwrap();
        assert_eq!(rep.group.order, BigUint::from(8u32));
        assert!(rep.passed, "{:?}", rep.failures);
        assert!(galois_classify(3, 3).is_err());
    }
}

//! Balance-constrained paths on a finite graph with two edge colors.
//!
//! Traversing a zero-colored edge counts as writing the letter 0, a
//! one-colored edge as writing 1. `zero_edges[u][v]` and `one_edges[u][v]`
//! hold edge multiplicities `u -> v`. State index is `dev * V + vertex`,
//! with `dev` the 0-based deviation state as in [`crate::words`].
//!
//! Text format: blank lines and `#` comments are ignored; the first line is
//! the vertex count `V`; every further line is `u v color multiplicity` with
//! `0 <= u, v < V` and `color` in `{0, 1}`. Repeated lines add up.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::transfer::{eigenvalues, floor_schedule, IntMatrix, StepKind, SPECTRUM_DIM_CAP};
use crate::util::big_ln;
use crate::words::BalanceSpec;

/// Largest path length for brute-force enumeration.
pub const PATH_ENUMERATION_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColoredGraph {
    pub vertices: usize,
    /// Edges read as the letter 0 (they raise the deviation).
    pub zero_edges: Vec<Vec<u64>>,
    /// Edges read as the letter 1.
    pub one_edges: Vec<Vec<u64>>,
}

impl TwoColoredGraph {
    pub fn new(zero_edges: Vec<Vec<u64>>, one_edges: Vec<Vec<u64>>) -> Result<Self> {
        let v = zero_edges.len();
        if v == 0 {
            return invalid("graph needs at least one vertex");
        }
        let square = |m: &Vec<Vec<u64>>| m.len() == v && m.iter().all(|row| row.len() == v);
        if !square(&zero_edges) || !square(&one_edges) {
            return invalid("incidence matrices must both be V x V");
        }
        Ok(TwoColoredGraph {
            vertices: v,
            zero_edges,
            one_edges,
        })
    }

    /// One vertex with one loop of each color: paths are binary words.
    pub fn words() -> Self {
        TwoColoredGraph::new(vec![vec![1]], vec![vec![1]]).expect("valid")
    }

    /// Two vertices joined by a zero edge `0 -> 1` and a one edge `1 -> 0`.
    pub fn two_cycle() -> Self {
        TwoColoredGraph::new(vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]).expect("valid")
    }

    fn edges(&self, color: u8) -> &Vec<Vec<u64>> {
        if color == 0 {
            &self.zero_edges
        } else {
            &self.one_edges
        }
    }
}

impl FromStr for TwoColoredGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let v: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("line 1: bad vertex count {first:?}")))?;
        if v == 0 {
            return Err(Error::Parse("vertex count must be positive".into()));
        }
        let mut zero = vec![vec![0u64; v]; v];
        let mut one = vec![vec![0u64; v]; v];
        for (no, line) in lines {
            let fields: Vec<u64> = line
                .split_whitespace()
                .map(|f| f.parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("line {no}: expected four integers")))?;
            let [u, w, color, mult] = fields[..] else {
                return Err(Error::Parse(format!("line {no}: expected `u v color multiplicity`")));
            };
            let (u, w) = (u as usize, w as usize);
            if u >= v || w >= v {
                return Err(Error::Parse(format!("line {no}: vertex out of range")));
            }
            match color {
                0 => zero[u][w] += mult,
                1 => one[u][w] += mult,
                _ => return Err(Error::Parse(format!("line {no}: color must be 0 or 1"))),
            }
        }
        TwoColoredGraph::new(zero, one)
    }
}

impl fmt::Display for TwoColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.vertices)?;
        for color in 0..2u8 {
            for (u, row) in self.edges(color).iter().enumerate() {
                for (w, &m) in row.iter().enumerate() {
                    if m > 0 {
                        writeln!(f, "{u} {w} {color} {m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCountTable {
    /// Indexed by `dev * V + vertex`.
    pub counts: Vec<BigUint>,
    pub vertices: usize,
    pub len: usize,
}

impl PathCountTable {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn at(&self, dev_state: usize, vertex: usize) -> &BigUint {
        &self.counts[dev_state * self.vertices + vertex]
    }

    /// Counts summed over vertices, one entry per deviation state.
    pub fn by_deviation(&self) -> Vec<BigUint> {
        self.counts.chunks(self.vertices).map(|c| c.iter().sum()).collect()
    }
}

fn check_start(g: &TwoColoredGraph, start: &[usize]) -> Result<()> {
    if start.iter().any(|&s| s >= g.vertices) {
        return invalid("start vertex out of range");
    }
    Ok(())
}

fn initial_table(g: &TwoColoredGraph, spec: &BalanceSpec, start: &[usize]) -> PathCountTable {
    let v = g.vertices;
    let mut counts = vec![BigUint::zero(); spec.states() * v];
    for &s in start {
        counts[spec.state_of(0) * v + s] += 1u32;
    }
    PathCountTable { counts, vertices: v, len: 0 }
}

fn dp_step(g: &TwoColoredGraph, spec: &BalanceSpec, table: &PathCountTable) -> PathCountTable {
    let v = g.vertices;
    let m = spec.states();
    let k = table.len as u64 + 1;
    let drop = spec.increments_at(k) as usize;
    let mut next = vec![BigUint::zero(); m * v];
    for dev in 0..m {
        for u in 0..v {
            let c = &table.counts[dev * v + u];
            if c.is_zero() {
                continue;
            }
            for color in 0..2u8 {
                let raise = (color == 0) as usize;
                let target = dev + raise;
                if target < drop || target - drop >= m {
                    continue;
                }
                let target = target - drop;
                for (w, &mult) in g.edges(color)[u].iter().enumerate() {
                    if mult > 0 {
                        next[target * v + w] += c * mult;
                    }
                }
            }
        }
    }
    PathCountTable {
        counts: next,
        vertices: v,
        len: table.len + 1,
    }
}

/// Balanced paths of length `n` starting in `start`, by vertex and deviation.
pub fn count_balanced_paths(
    g: &TwoColoredGraph,
    n: usize,
    spec: &BalanceSpec,
    start: &[usize],
) -> Result<PathCountTable> {
    check_start(g, start)?;
    let mut t = initial_table(g, spec, start);
    for _ in 0..n {
        t = dp_step(g, spec, &t);
    }
    Ok(t)
}

/// `N_+ (x) A0^T + E (x) A1^T` for `NoIncrement`, `E (x) A0^T + N_- (x) A1^T`
/// for `Increment`, where `A0` holds the zero edges.
pub fn kron_transfer(g: &TwoColoredGraph, r: u32, kind: StepKind) -> IntMatrix {
    let v = g.vertices;
    let m = 2 * r as usize;
    let mut out = IntMatrix::zeros(m * v);
    let (zero_shift, one_shift): (i64, i64) = match kind {
        StepKind::NoIncrement => (1, 0),
        StepKind::Increment => (0, -1),
    };
    for dev in 0..m {
        for (color, shift) in [(0u8, zero_shift), (1u8, one_shift)] {
            let target = dev as i64 + shift;
            if target < 0 || target >= m as i64 {
                continue;
            }
            let target = target as usize;
            for u in 0..v {
                for w in 0..v {
                    let mult = g.edges(color)[u][w];
                    if mult > 0 {
                        let (i, j) = (target * v + w, dev * v + u);
                        let cur = out.get(i, j) + BigUint::from(mult);
                        out.set(i, j, cur);
                    }
                }
            }
        }
    }
    out
}

/// Ordered product of the Kronecker steps over one period.
pub fn period_product(g: &TwoColoredGraph, spec: &BalanceSpec) -> Result<IntMatrix> {
    let mut m = IntMatrix::identity(spec.states() * g.vertices);
    for kind in floor_schedule(spec.p(), spec.period())? {
        m = kron_transfer(g, spec.r(), kind).mul(&m);
    }
    Ok(m)
}

/// Strong connectivity of the support of `m`.
pub fn is_irreducible(m: &IntMatrix) -> bool {
    let d = m.dim();
    let reach = |forward: bool| {
        let mut seen = vec![false; d];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..d {
                let e = if forward { m.get(j, i) } else { m.get(i, j) };
                if !seen[j] && !e.is_zero() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    d > 0 && reach(true) && reach(false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphGrowth {
    /// Spectral radius of the period product.
    pub spectral_radius: f64,
    /// `spectral_radius^(1/period)`.
    pub growth: f64,
    /// When false the spectral radius need not be a simple Perron root.
    pub irreducible: bool,
}

pub fn graph_growth(g: &TwoColoredGraph, spec: &BalanceSpec) -> Result<GraphGrowth> {
    let m = period_product(g, spec)?;
    if m.dim() > SPECTRUM_DIM_CAP {
        return Err(Error::SizeCap {
            what: "graph transfer dimension",
            limit: SPECTRUM_DIM_CAP,
            got: m.dim(),
        });
    }
    let irreducible = is_irreducible(&m);
    let (dense, _) = m.to_f64();
    let spectral_radius = eigenvalues(&dense)?.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(GraphGrowth {
        spectral_radius,
        growth: spectral_radius.powf(1.0 / spec.period() as f64),
        irreducible,
    })
}

/// Paths of length `len` from `start` with exactly `zeros` zero edges, no
/// prefix constraint.
pub fn count_paths_with_zeros(g: &TwoColoredGraph, len: usize, zeros: usize, start: &[usize]) -> Result<BigUint> {
    check_start(g, start)?;
    let v = g.vertices;
    // table[z * v + u]
    let mut table = vec![BigUint::zero(); (zeros + 1) * v];
    for &s in start {
        table[s] += 1u32;
    }
    for _ in 0..len {
        let mut next = vec![BigUint::zero(); (zeros + 1) * v];
        for z in 0..=zeros {
            for u in 0..v {
                let c = &table[z * v + u];
                if c.is_zero() {
                    continue;
                }
                for w in 0..v {
                    let m1 = g.one_edges[u][w];
                    if m1 > 0 {
                        next[z * v + w] += c * m1;
                    }
                    let m0 = g.zero_edges[u][w];
                    if m0 > 0 && z < zeros {
                        next[(z + 1) * v + w] += c * m0;
                    }
                }
            }
        }
        table = next;
    }
    Ok(table[zeros * v..].iter().sum())
}

/// Unconstrained analog of `e~_alpha`: with `c(N)` the number of paths of
/// length `N` with exactly `alpha N` zero edges, fits
/// `ln c(N) = N ln e + a ln N + b` through `N, 2N, 4N` with `N = 40 * period`.
pub fn unconstrained_growth(g: &TwoColoredGraph, p: u64, period: u64, start: &[usize]) -> Result<f64> {
    let base = 40 * period as usize;
    let ln_c = |len: usize| -> Result<f64> {
        let zeros = (p as usize * len) / period as usize;
        Ok(big_ln(&count_paths_with_zeros(g, len, zeros, start)?))
    };
    let (l1, l2, l4) = (ln_c(base)?, ln_c(2 * base)?, ln_c(4 * base)?);
    if !(l1.is_finite() && l2.is_finite() && l4.is_finite()) {
        return Ok(0.0);
    }
    Ok(((l4 - 2.0 * l2 + l1) / base as f64).exp())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub r: u32,
    pub growth: f64,
    pub irreducible: bool,
    pub tilde: f64,
    pub gap: f64,
}

/// Table of `e_{alpha,r}` for each `r` next to the unconstrained analog.
/// Data for inspection only; nothing here is asserted.
pub fn conjecture_scan(
    g: &TwoColoredGraph,
    p: u64,
    period: u64,
    r_list: &[u32],
    start: &[usize],
) -> Result<Vec<ScanRow>> {
    let tilde = unconstrained_growth(g, p, period, start)?;
    r_list
        .iter()
        .map(|&r| {
            let spec = BalanceSpec::new(p, period, r)?;
            let gr = graph_growth(g, &spec)?;
            Ok(ScanRow {
                r,
                growth: gr.growth,
                irreducible: gr.irreducible,
                tilde,
                gap: tilde - gr.growth,
            })
        })
        .collect()
}

/// Balanced paths of length `n` from `start`, by depth-first enumeration of
/// every edge sequence. Oracle for [`count_balanced_paths`].
pub fn enumerate_paths(g: &TwoColoredGraph, n: usize, spec: &BalanceSpec, start: &[usize]) -> Result<BigUint> {
    if n > PATH_ENUMERATION_CAP {
        return Err(Error::SizeCap {
            what: "path length for enumeration",
            limit: PATH_ENUMERATION_CAP,
            got: n,
        });
    }
    check_start(g, start)?;
    fn walk(g: &TwoColoredGraph, spec: &BalanceSpec, u: usize, len: usize, zeros: u64, left: usize) -> BigUint {
        if left == 0 {
            return BigUint::from(1u32);
        }
        let mut total = BigUint::zero();
        for color in 0..2u8 {
            let z = zeros + (color == 0) as u64;
            let dev = z as i64 - spec.floor_at(len as u64 + 1) as i64;
            if !spec.in_window(dev) {
                continue;
            }
            for w in 0..g.vertices {
                let mult = g.edges(color)[u][w];
                // Parallel edges are distinct paths.
                for _ in 0..mult {
                    total += walk(g, spec, w, len + 1, z, left - 1);
                }
            }
        }
        total
    }
    Ok(start.iter().map(|&s| walk(g, spec, s, 0, 0, n)).sum())
}

/// Dense `f64` copy of a Kronecker step, for inspection.
pub fn kron_transfer_f64(g: &TwoColoredGraph, r: u32, kind: StepKind) -> DMatrix<f64> {
    let m = kron_transfer(g, r, kind);
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| m.get(i, j).to_f64().unwrap_or(f64::INFINITY))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::{build_m, growth_exponent, step_matrix};
    use crate::words::count_balanced_dp;

    fn spec(p: u64, n: u64, r: u32) -> BalanceSpec {
        BalanceSpec::new(p, n, r).unwrap()
    }

    #[test]
    fn words_reduction() {
        let g = TwoColoredGraph::words();
        for n in 0..=16 {
            let s = spec(2, 5, 2);
            let t = count_balanced_paths(&g, n, &s, &[0]).unwrap();
            assert_eq!(t.counts, count_balanced_dp(n, &s).b);
        }
        for kind in [StepKind::NoIncrement, StepKind::Increment] {
            assert_eq!(kron_transfer(&g, 3, kind), step_matrix(kind, 3));
        }
        assert_eq!(period_product(&g, &spec(1, 3, 2)).unwrap(), build_m(1, 3, 2).unwrap().entries);
        let gg = graph_growth(&g, &spec(1, 2, 4)).unwrap();
        let ge = growth_exponent(1, 2, 4).unwrap();
        assert!((gg.growth - ge.e_alpha_r).abs() < 1e-9);
    }

    #[test]
    fn no_zero_edges() {
        let g = TwoColoredGraph::new(vec![vec![0]], vec![vec![1]]).unwrap();
        let s = spec(1, 2, 1);
        assert_eq!(count_balanced_paths(&g, 1, &s, &[0]).unwrap().total(), BigUint::from(1u32));
        assert!(count_balanced_paths(&g, 2, &s, &[0]).unwrap().total().is_zero());
    }

    #[test]
    fn two_cycle_alternates() {
        let g = TwoColoredGraph::two_cycle();
        let s = spec(1, 2, 1);
        for n in 0..=12 {
            let dp = count_balanced_paths(&g, n, &s, &[0, 1]).unwrap().total();
            assert_eq!(dp, enumerate_paths(&g, n, &s, &[0, 1]).unwrap());
        }
        // From vertex 0 the only path reads 0101..., which stays balanced.
        assert_eq!(count_balanced_paths(&g, 9, &s, &[0]).unwrap().total(), BigUint::from(1u32));
    }

    #[test]
    fn dp_equals_kron() {
        let g = TwoColoredGraph::two_cycle();
        let s = spec(1, 3, 2);
        let m = period_product(&g, &s).unwrap();
        let mut b = initial_table(&g, &s, &[0, 1]).counts;
        for k in 1..=3 {
            b = m.mul_vec(&b);
            assert_eq!(b, count_balanced_paths(&g, 3 * k, &s, &[0, 1]).unwrap().counts);
        }
        assert_eq!(kron_transfer(&g, 2, StepKind::Increment).dim(), 8);
    }

    #[test]
    fn parse_round() {
        let g: TwoColoredGraph = "# demo\n2\n0 1 0 1\n1 0 1 1\n".parse().unwrap();
        assert_eq!(g, TwoColoredGraph::two_cycle());
        assert_eq!(g.to_string().parse::<TwoColoredGraph>().unwrap(), g);
        assert!("2\n0 2 0 1".parse::<TwoColoredGraph>().is_err());
        assert!("2\n0 1 3 1".parse::<TwoColoredGraph>().is_err());
        assert!("".parse::<TwoColoredGraph>().is_err());
    }

    #[test]
    fn unconstrained_words_case() {
        let e = unconstrained_growth(&TwoColoredGraph::words(), 1, 2, &[0]).unwrap();
        assert!((e - 2.0).abs() < 1e-3, "{e}");
    }
}

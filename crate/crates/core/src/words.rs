//! Balanced binary words: deviations, exact counting, and the
//! reprojection map between nearby slopes.
//!
//! A word `w` over `{0,1}` is `(alpha, r)`-balanced when every prefix of
//! length `k` has its zero count inside `(alpha*k - r, alpha*k + r]`, or
//! equivalently when the deviation `|w[:k]|_0 - floor(alpha*k)` stays in
//! `{-r+1, ..., r}`. Slopes are exact fractions so floors never drift.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::util::binomial;

/// Exact slope in `(0, 1)`.
pub type Alpha = Ratio<u64>;

/// Largest length accepted by the brute-force enumerator.
pub const ENUMERATION_CAP: usize = 24;

/// A finite word over `{0,1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from letters, rejecting anything other than 0 and 1.
    pub fn from_letters(letters: &[u8]) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&c| c > 1) {
            return Err(Error::Parse(format!("letter {bad} is not binary")));
        }
        Ok(Word(letters.to_vec()))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&c| c == 0).count()
    }

    pub fn ones(&self) -> usize {
        self.len() - self.zeros()
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn push(&mut self, letter: u8) {
        debug_assert!(letter <= 1);
        self.0.push(letter);
    }

    /// True when `self` is obtained from `other` by inserting only zeros.
    pub fn is_zero_insertion_of(&self, other: &Word) -> bool {
        let mut it = other.0.iter().peekable();
        for &c in &self.0 {
            match it.peek() {
                Some(&&d) if d == c => {
                    it.next();
                }
                _ if c == 0 => {}
                _ => return false,
            }
        }
        it.next().is_none()
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("unexpected character {other:?} in word"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            f.write_str(if c == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

/// Slope `p/period` in lowest terms together with the radius `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BalanceSpec {
    p: u64,
    period: u64,
    r: u32,
}

impl BalanceSpec {
    pub fn new(p: u64, period: u64, r: u32) -> Result<Self> {
        if p == 0 || p >= period {
            return invalid(format!("need 0 < p < n, got p={p}, n={period}"));
        }
        if p.gcd(&period) != 1 {
            return invalid(format!("{p}/{period} is not in lowest terms"));
        }
        if r == 0 {
            return invalid("radius r must be at least 1");
        }
        Ok(BalanceSpec { p, period, r })
    }

    pub fn from_alpha(alpha: Alpha, r: u32) -> Result<Self> {
        Self::new(*alpha.numer(), *alpha.denom(), r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn alpha(&self) -> Alpha {
        Ratio::new(self.p, self.period)
    }

    /// Number of deviation states, `2r`.
    pub fn states(&self) -> usize {
        2 * self.r as usize
    }

    /// `floor(alpha * k)` in exact integer arithmetic.
    pub fn floor_at(&self, k: u64) -> u64 {
        (self.p as u128 * k as u128 / self.period as u128) as u64
    }

    /// Whether `floor(alpha * k)` jumps between `k - 1` and `k` (k >= 1).
    pub fn increments_at(&self, k: u64) -> bool {
        self.floor_at(k) > self.floor_at(k - 1)
    }

    pub fn in_window(&self, deviation: i64) -> bool {
        deviation > -(self.r as i64) && deviation <= self.r as i64
    }

    /// The slope `1 - alpha` with the same radius.
    pub fn complement(&self) -> BalanceSpec {
        BalanceSpec {
            p: self.period - self.p,
            period: self.period,
            r: self.r,
        }
    }

    /// State index `j` in `1..=2r` for a deviation, as a 0-based offset.
    pub(crate) fn state_of(&self, deviation: i64) -> usize {
        (deviation + self.r as i64 - 1) as usize
    }
}

/// Prefix deviations `d_k = |w[:k]|_0 - floor(alpha*k)` for `k = 1..=|w|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationProfile(pub Vec<i64>);

impl DeviationProfile {
    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

pub fn deviation(w: &Word, spec: &BalanceSpec) -> DeviationProfile {
    let mut zeros = 0i64;
    let values = w
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if c == 0 {
                zeros += 1;
            }
            zeros - spec.floor_at(i as u64 + 1) as i64
        })
        .collect();
    DeviationProfile(values)
}

pub fn is_balanced(w: &Word, spec: &BalanceSpec) -> bool {
    balanced_from(w.letters(), 0, 0, spec)
}

/// Checks the prefix condition for `letters` appended to a prefix of length
/// `start` that has `zeros` zeros.
fn balanced_from(letters: &[u8], start: usize, zeros: usize, spec: &BalanceSpec) -> bool {
    let mut z = zeros as i64;
    for (i, &c) in letters.iter().enumerate() {
        if c == 0 {
            z += 1;
        }
        if !spec.in_window(z - spec.floor_at((start + i + 1) as u64) as i64) {
            return false;
        }
    }
    true
}

/// All members of `B_{n,alpha,r}` in lexicographic order, by exhaustive
/// search over `{0,1}^n`. Serves as the oracle for the counting routines.
pub fn enumerate_balanced(n: usize, spec: &BalanceSpec) -> Result<Vec<Word>> {
    if n > ENUMERATION_CAP {
        return Err(Error::SizeCap {
            what: "enumeration length",
            limit: ENUMERATION_CAP,
            got: n,
        });
    }
    let mut out = Vec::new();
    let mut letters = vec![0u8; n];
    for mask in 0u64..(1u64 << n) {
        for (i, slot) in letters.iter_mut().enumerate() {
            *slot = ((mask >> (n - 1 - i)) & 1) as u8;
        }
        if balanced_from(&letters, 0, 0, spec) {
            out.push(Word(letters.clone()));
        }
    }
    Ok(out)
}

/// `b(n)`: counts of balanced words of length `n` by final deviation.
/// Entry `j` (0-based) holds the words ending at deviation `j + 1 - r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    pub b: Vec<BigUint>,
    pub len: usize,
}

impl CountVector {
    /// `b(0)`: the empty word sits at deviation 0 (state `r`).
    pub fn initial(spec: &BalanceSpec) -> Self {
        let mut b = vec![BigUint::zero(); spec.states()];
        b[spec.state_of(0)] = BigUint::one();
        CountVector { b, len: 0 }
    }

    pub fn total(&self) -> BigUint {
        self.b.iter().sum()
    }

    /// Advances by one letter. Without a floor increment, appending 0 raises
    /// the state and appending 1 keeps it; with an increment, 0 keeps it and
    /// 1 lowers it.
    pub fn step(&mut self, spec: &BalanceSpec) {
        let k = self.len as u64 + 1;
        let m = self.b.len();
        let mut next = self.b.clone();
        if spec.increments_at(k) {
            for j in 0..m - 1 {
                next[j] += &self.b[j + 1];
            }
        } else {
            for j in 1..m {
                next[j] += &self.b[j - 1];
            }
        }
        self.b = next;
        self.len += 1;
    }
}

/// Exact `b(n)` by the one-letter recurrence; `O(n r)` big-integer additions.
pub fn count_balanced_dp(n: usize, spec: &BalanceSpec) -> CountVector {
    let mut cv = CountVector::initial(spec);
    for _ in 0..n {
        cv.step(spec);
    }
    cv
}

/// `|B~_{n,alpha,r}|`: words constrained only at the end,
/// `alpha*n - r < |w|_0 <= alpha*n + r`.
pub fn count_unconstrained(n: usize, spec: &BalanceSpec) -> BigUint {
    let (p, d, r) = (spec.p as i128, spec.period as i128, spec.r as i128);
    let n_i = n as i128;
    (0..=n as u64)
        .filter(|&k| {
            let kd = k as i128 * d;
            p * n_i - r * d < kd && kd <= p * n_i + r * d
        })
        .map(|k| binomial(n as u64, k))
        .sum()
}

/// Swaps 0 and 1.
pub fn complement(w: &Word) -> Word {
    Word(w.letters().iter().map(|&c| 1 - c).collect())
}

/// A letter `c` with `wc` still balanced, preferring 0.
pub fn prolong(w: &Word, spec: &BalanceSpec) -> Result<u8> {
    if !is_balanced(w, spec) {
        return Err(Error::Contract(format!("{w} is not balanced for the given slope")));
    }
    let zeros = w.zeros();
    for c in [0u8, 1] {
        if balanced_from(&[c], w.len(), zeros, spec) {
            return Ok(c);
        }
    }
    // The window has 2r >= 2 states and the two letters land on adjacent ones.
    unreachable!("prolongation property failed for {w}")
}

fn check_order(alpha: Alpha, alpha_prime: Alpha) -> Result<()> {
    let zero = Alpha::zero();
    let one = Alpha::one();
    if !(zero < alpha && alpha < alpha_prime && alpha_prime < one) {
        return invalid(format!("need 0 < alpha < alpha' < 1, got {alpha} and {alpha_prime}"));
    }
    Ok(())
}

/// Bound on the zeros inserted by [`reproject`]:
/// `floor((alpha'*n - floor(alpha*n)) / (1 - alpha'))`.
pub fn jmax(n: usize, alpha: Alpha, alpha_prime: Alpha) -> Result<u64> {
    check_order(alpha, alpha_prime)?;
    let n = n as u64;
    let floor_an = (alpha * n).to_integer();
    let numer = alpha_prime * n - Alpha::from_integer(floor_an);
    Ok((numer / (Alpha::one() - alpha_prime)).to_integer())
}

/// Deviation of a whole word for an arbitrary rational slope.
fn end_deviation(zeros: usize, len: usize, alpha: Alpha) -> i64 {
    zeros as i64 - (alpha * len as u64).to_integer() as i64
}

/// Rewrites an `(alpha, r)`-balanced word into an `(alpha', r)`-balanced one
/// by inserting zeros: each letter of `w` is emitted after the fewest zeros
/// that keep the growing word balanced for `alpha'`.
pub fn reproject(w: &Word, alpha: Alpha, alpha_prime: Alpha, r: u32) -> Result<Word> {
    check_order(alpha, alpha_prime)?;
    let src = BalanceSpec::from_alpha(alpha, r)?;
    let dst = BalanceSpec::from_alpha(alpha_prime, r)?;
    if !is_balanced(w, &src) {
        return Err(Error::Contract(format!("{w} is not balanced for slope {alpha}")));
    }

    let mut out = Word::empty();
    let mut out_zeros = 0usize;
    let mut src_zeros = 0usize;
    let mut candidate = Vec::new();
    for (s, &letter) in w.letters().iter().enumerate() {
        let mut k = 0usize;
        loop {
            candidate.clear();
            candidate.resize(k, 0);
            candidate.push(letter);
            if balanced_from(&candidate, out.len(), out_zeros, &dst) {
                break;
            }
            k += 1;
            if k > out.len() + w.len() + 2 * r as usize + 1 {
                return Err(Error::Contract(format!(
                    "no zero padding rebalances letter {s} of {w}"
                )));
            }
        }
        for &c in &candidate {
            out.push(c);
        }
        out_zeros += k + usize::from(letter == 0);
        if letter == 0 {
            src_zeros += 1;
        }
        debug_assert!(
            end_deviation(src_zeros, s + 1, alpha) >= end_deviation(out_zeros, out.len(), alpha_prime),
            "deviation domination failed at step {}",
            s + 1
        );
    }
    Ok(out)
}

/// The map `B_{n,alpha,r} -> B_{n',alpha',r}` with `n' = n + jmax`: the
/// reprojected word completed by the lexicographically least balanced suffix.
pub fn psi(w: &Word, alpha: Alpha, alpha_prime: Alpha, r: u32) -> Result<Word> {
    let target = w.len() + jmax(w.len(), alpha, alpha_prime)? as usize;
    let dst = BalanceSpec::from_alpha(alpha_prime, r)?;
    let mut out = reproject(w, alpha, alpha_prime, r)?;
    if out.len() > target {
        return Err(Error::Contract(format!(
            "reprojection of {w} has length {} > n' = {target}",
            out.len()
        )));
    }
    while out.len() < target {
        let c = prolong(&out, &dst)?;
        out.push(c);
    }
    Ok(out)
}

/// `K_n(alpha, alpha')` bounding `|B_{n,alpha,r}|` against `|B_{n,alpha',r}|`
/// from both sides. Each direction gives
/// `2^jmax * sum_{j<=jmax} C(floor(alpha' n') + r, j)` with `n' = n + jmax`;
/// the reverse direction runs on the complementary slopes and the larger of
/// the two is returned.
pub fn continuity_bound(n: usize, alpha: Alpha, alpha_prime: Alpha, r: u32) -> Result<BigUint> {
    check_order(alpha, alpha_prime)?;
    let one = Alpha::one();
    let forward = one_sided_bound(n, alpha, alpha_prime, r)?;
    let backward = one_sided_bound(n, one - alpha_prime, one - alpha, r)?;
    Ok(forward.max(backward))
}

fn one_sided_bound(n: usize, alpha: Alpha, alpha_prime: Alpha, r: u32) -> Result<BigUint> {
    let j_max = jmax(n, alpha, alpha_prime)?;
    let n_prime = n as u64 + j_max;
    let top = (alpha_prime * n_prime).to_integer() + r as u64;
    let sum: BigUint = (0..=j_max).map(|j| binomial(top, j)).sum();
    Ok(sum << j_max as usize)
}

/// Draws a word uniformly from `B_{n,alpha,r}` using suffix-completion counts.
pub fn sample_balanced<R: Rng + ?Sized>(n: usize, spec: &BalanceSpec, rng: &mut R) -> Word {
    let m = spec.states();
    // completions[k][j]: balanced suffixes of length n - k from state j at length k.
    let mut completions = vec![vec![BigUint::zero(); m]; n + 1];
    completions[n] = vec![BigUint::one(); m];
    for k in (0..n).rev() {
        let inc = spec.increments_at(k as u64 + 1);
        for j in 0..m {
            let mut acc = BigUint::zero();
            for c in [0u8, 1] {
                if let Some(next) = next_state(j, c, inc, m) {
                    acc += &completions[k + 1][next];
                }
            }
            completions[k][j] = acc;
        }
    }

    let mut state = spec.state_of(0);
    let mut w = Word::empty();
    for k in 0..n {
        let inc = spec.increments_at(k as u64 + 1);
        let total = &completions[k][state];
        let via_zero = next_state(state, 0, inc, m)
            .map(|s| completions[k + 1][s].clone())
            .unwrap_or_default();
        let pick = uniform_below(total, rng);
        let letter = if pick < via_zero { 0 } else { 1 };
        state = next_state(state, letter, inc, m).expect("sampled letter leaves the window");
        w.push(letter);
    }
    w
}

fn next_state(j: usize, letter: u8, increments: bool, states: usize) -> Option<usize> {
    let shift: i64 = match (letter, increments) {
        (0, false) => 1,
        (0, true) | (1, false) => 0,
        _ => -1,
    };
    let next = j as i64 + shift;
    (next >= 0 && (next as usize) < states).then_some(next as usize)
}

fn uniform_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    // Rejection sampling on the bit length of `bound`.
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
        let excess = (words as u64 * 32 - bits) as u32;
        if let Some(top) = digits.last_mut() {
            if excess > 0 {
                *top >>= excess;
            }
        }
        let candidate = BigUint::new(digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(p: u64, n: u64, r: u32) -> BalanceSpec {
        BalanceSpec::new(p, n, r).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn deviation_examples() {
        assert_eq!(deviation(&w("01"), &spec(1, 2, 1)).0, vec![1, 0]);
        assert!(deviation(&Word::empty(), &spec(1, 2, 1)).0.is_empty());
        assert_eq!(deviation(&w("0000"), &spec(1, 3, 1)).0, vec![1, 2, 2, 3]);
    }

    #[test]
    fn balance_examples() {
        assert!(is_balanced(&w("01"), &spec(1, 2, 1)));
        assert!(!is_balanced(&w("11"), &spec(1, 2, 1)));
        assert!(is_balanced(&Word::empty(), &spec(1, 3, 1)));
        let s = spec(2, 5, 3);
        for word in enumerate_all(3) {
            assert!(is_balanced(&word, &s), "{word}");
        }
    }

    fn enumerate_all(n: usize) -> Vec<Word> {
        (0u32..1 << n)
            .map(|m| Word((0..n).map(|i| ((m >> (n - 1 - i)) & 1) as u8).collect()))
            .collect()
    }

    #[test]
    fn spec_validation() {
        assert!(BalanceSpec::new(2, 4, 1).is_err());
        assert!(BalanceSpec::new(0, 3, 1).is_err());
        assert!(BalanceSpec::new(3, 3, 1).is_err());
        assert!(BalanceSpec::new(1, 3, 0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let got: Vec<String> = enumerate_balanced(2, &spec(1, 2, 1))
            .unwrap()
            .iter()
            .map(Word::to_string)
            .collect();
        assert_eq!(got, ["00", "01", "10"]);
        assert_eq!(enumerate_balanced(0, &spec(1, 2, 1)).unwrap(), vec![Word::empty()]);
        assert_eq!(enumerate_balanced(3, &spec(1, 2, 3)).unwrap().len(), 8);
        assert!(matches!(
            enumerate_balanced(25, &spec(1, 2, 1)),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn dp_examples() {
        assert_eq!(count_balanced_dp(2, &spec(1, 2, 1)).total(), BigUint::from(3u32));
        assert_eq!(count_balanced_dp(10, &spec(1, 2, 10)).total(), BigUint::from(1024u32));
        assert_eq!(count_balanced_dp(1, &spec(1, 3, 1)).total(), BigUint::from(2u32));
        assert_eq!(count_balanced_dp(0, &spec(1, 3, 1)).total(), BigUint::one());
    }

    #[test]
    fn unconstrained_examples() {
        assert_eq!(count_unconstrained(2, &spec(1, 2, 1)), BigUint::from(3u32));
        assert_eq!(count_unconstrained(7, &spec(2, 5, 7)), BigUint::from(128u32));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&w("0110")), w("1001"));
        assert_eq!(complement(&complement(&w("00101"))), w("00101"));
    }

    #[test]
    fn prolong_examples() {
        assert!(matches!(prolong(&w("11"), &spec(1, 2, 1)), Err(Error::Contract(_))));
        let c = prolong(&w("01"), &spec(1, 2, 1)).unwrap();
        let mut ext = w("01");
        ext.push(c);
        assert!(is_balanced(&ext, &spec(1, 2, 1)));
    }

    #[test]
    fn jmax_examples() {
        let half = Alpha::new(1, 2);
        assert_eq!(jmax(6, half, Alpha::new(2, 3)).unwrap(), 3);
        assert!(jmax(6, half, half).is_err());
        assert!(jmax(6, Alpha::new(2, 3), half).is_err());
        // alpha' just above alpha with alpha*n integral: tiny numerator.
        assert_eq!(jmax(10, half, Alpha::new(51, 100)).unwrap(), 0);
    }

    #[test]
    fn reproject_keeps_dominated_words() {
        let a = Alpha::new(1, 2);
        let ap = Alpha::new(3, 5);
        let word = w("0101");
        let out = reproject(&word, a, ap, 2).unwrap();
        assert!(is_balanced(&out, &BalanceSpec::from_alpha(ap, 2).unwrap()));
        assert!(out.is_zero_insertion_of(&word));
        let already = w("010");
        assert_eq!(reproject(&already, a, ap, 1).unwrap(), already);
    }

    #[test]
    fn reproject_rejects_bad_input() {
        let a = Alpha::new(1, 2);
        assert!(reproject(&w("11"), a, Alpha::new(3, 5), 1).is_err());
        assert!(reproject(&w("01"), a, a, 1).is_err());
    }

    #[test]
    fn psi_has_target_length() {
        let a = Alpha::new(1, 2);
        let ap = Alpha::new(3, 5);
        let word = w("01101001");
        let out = psi(&word, a, ap, 2).unwrap();
        assert_eq!(out.len(), word.len() + jmax(word.len(), a, ap).unwrap() as usize);
        assert!(is_balanced(&out, &BalanceSpec::from_alpha(ap, 2).unwrap()));
    }

    #[test]
    fn continuity_bound_examples() {
        let a = Alpha::new(1, 2);
        let ap = Alpha::new(3, 5);
        assert!(continuity_bound(12, a, a, 2).is_err());
        let k = continuity_bound(12, a, ap, 2).unwrap();
        assert!(k >= BigUint::one());
        let lo = count_balanced_dp(12, &spec(1, 2, 2)).total();
        let hi = count_balanced_dp(12, &spec(3, 5, 2)).total();
        assert!(lo <= &k * &hi);
        assert!(hi <= &k * &lo);
    }

    #[test]
    fn zero_insertion_relation() {
        assert!(w("00101").is_zero_insertion_of(&w("011")));
        assert!(!w("0111").is_zero_insertion_of(&w("011")));
        assert!(!w("01").is_zero_insertion_of(&w("011")));
    }

    #[test]
    fn sampler_hits_every_member() {
        let s = spec(1, 2, 1);
        let members = enumerate_balanced(6, &s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..400 {
            let word = sample_balanced(6, &s, &mut rng);
            assert!(is_balanced(&word, &s));
            seen.insert(word);
        }
        assert_eq!(seen.len(), members.len());
    }
}

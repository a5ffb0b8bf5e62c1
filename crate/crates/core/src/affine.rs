//! Finite patterns, affine permutations, Coxeter length and containment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest pattern size accepted by default at input boundaries.
pub const DEFAULT_PATTERN_GUARD: usize = 12;

/// A finite permutation in one-line notation on `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    /// Normalize any sequence of distinct integers to its rank sequence.
    pub fn new(values: &[i64]) -> Result<Self> {
        normalize_pattern(values)
    }

    /// Accept `values` only if it already is a permutation of `1..=k`.
    pub fn from_permutation(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let k = values.len();
        let mut seen = vec![false; k + 1];
        for &v in &values {
            if v == 0 || v > k {
                return Err(Error::Parse(format!("{values:?} is not a permutation of 1..={k}")));
            }
            if seen[v] {
                return Err(Error::DuplicatePatternEntry(v as i64));
            }
            seen[v] = true;
        }
        Ok(Pattern(values))
    }

    pub fn identity(k: usize) -> Self {
        Pattern((1..=k).collect())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Pattern {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Pattern(inv)
    }

    pub fn inversions(&self) -> u64 {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Length of the longest decreasing subsequence: the fewest strands
    /// any placement of this pattern can use.
    pub fn strand_count(&self) -> usize {
        let k = self.len();
        let mut best = vec![1usize; k];
        for j in 0..k {
            for i in 0..j {
                if self.0[i] > self.0[j] {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn check_guard(&self, guard: usize) -> Result<()> {
        if self.len() > guard {
            return Err(Error::PatternTooLarge {
                size: self.len(),
                guard,
            });
        }
        Ok(())
    }

    /// All permutations of `1..=k` in lexicographic order.
    pub fn all(k: usize) -> Vec<Pattern> {
        let mut cur: Vec<usize> = (1..=k).collect();
        let mut out = vec![Pattern(cur.clone())];
        loop {
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Pattern(cur.clone()));
        }
        out
    }
}

/// Replace each entry by its rank among the entries.
pub fn normalize_pattern(values: &[i64]) -> Result<Pattern> {
    if values.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let mut sorted: Vec<i64> = values.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePatternEntry(w[0]));
    }
    Ok(Pattern(
        values.iter().map(|v| sorted.binary_search(v).unwrap() + 1).collect(),
    ))
}

impl fmt::Display for Pattern {
    /// Digit string when every entry is a single digit, otherwise comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Accepts `2431`, `2,4,3,1` or `[7,1,0,4]`; arbitrary distinct integers
    /// are normalized to ranks.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let values: Vec<i64> = if trimmed.contains(',') || trimmed.contains(' ') {
            trimmed
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad pattern entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            trimmed
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(i64::from)
                        .ok_or_else(|| Error::Parse(format!("bad pattern digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        normalize_pattern(&values)
    }
}

/// Parse a comma-separated list of integers such as `-9,4,11`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

/// An element of the affine symmetric group, stored by its base window
/// `[w(1), ..., w(n)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n < 2 {
            return Err(Error::SizeTooSmall(n));
        }
        let ni = n as i64;
        let expected = ni * (ni + 1) / 2;
        let got: i64 = window.iter().sum();
        if got != expected {
            return Err(Error::WindowSum { expected, got });
        }
        let mut owner: Vec<Option<i64>> = vec![None; n];
        for &v in &window {
            let r = v.rem_euclid(ni) as usize;
            if let Some(prev) = owner[r] {
                return Err(Error::ResidueClash(prev, v));
            }
            owner[r] = Some(v);
        }
        Ok(AffinePermutation { window })
    }

    /// Construct with an explicit `n`, checking the window length.
    pub fn with_size(window: Vec<i64>, n: usize) -> Result<Self> {
        if window.len() != n {
            return Err(Error::WindowLength {
                expected: n,
                got: window.len(),
            });
        }
        Self::new(window)
    }

    pub(crate) fn from_window_unchecked(window: Vec<i64>) -> Self {
        debug_assert!(Self::new(window.clone()).is_ok(), "invalid window {window:?}");
        AffinePermutation { window }
    }

    pub fn identity(n: usize) -> Self {
        AffinePermutation {
            window: (1..=n as i64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn value_at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        let q = (i - 1).div_euclid(n);
        self.window[r as usize] + q * n
    }

    /// `max(w(i) - i) - min(w(i) - i)` over the window; no inversion spans
    /// more positions than this.
    pub fn spread(&self) -> i64 {
        let shifts = self.window.iter().zip(1i64..).map(|(w, i)| w - i);
        let max = shifts.clone().max().unwrap();
        let min = shifts.min().unwrap();
        max - min
    }

    /// Number of inversions `(i, j)` with `1 <= i <= n` and `i < j`.
    pub fn coxeter_length(&self) -> u64 {
        let s = self.spread();
        let mut count = 0;
        for i in 1..=self.n() as i64 {
            let wi = self.value_at(i);
            for j in i + 1..=i + s {
                if wi > self.value_at(j) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_sorted(&self) -> bool {
        self.window.windows(2).all(|w| w[0] < w[1])
    }

    /// Rank sequence of the base window.
    pub fn flattening(&self) -> Pattern {
        normalize_pattern(&self.window).expect("window entries are distinct")
    }

    /// `w = u v` with `u` the sorted window and `v` the flattening.
    pub fn parabolic_decompose(&self) -> (AffinePermutation, Pattern) {
        let mut sorted = self.window.clone();
        sorted.sort_unstable();
        (AffinePermutation { window: sorted }, self.flattening())
    }

    /// Inverse of [`parabolic_decompose`](Self::parabolic_decompose):
    /// `w(i) = u(v(i))`.
    pub fn compose_parabolic(u: &AffinePermutation, v: &Pattern) -> Result<AffinePermutation> {
        if !u.is_sorted() {
            return Err(Error::UnsortedWindow);
        }
        if v.len() != u.n() {
            return Err(Error::DimensionMismatch {
                what: "flattening",
                expected: u.n(),
                got: v.len(),
            });
        }
        Ok(AffinePermutation {
            window: v.values().iter().map(|&j| u.window[j - 1]).collect(),
        })
    }

    /// Right multiplication by the simple reflection `s_i`, `0 <= i < n`,
    /// which swaps the values in positions `i` and `i + 1`.
    pub fn times_simple(&self, i: usize) -> AffinePermutation {
        let n = self.n();
        assert!(i < n, "simple reflection index {i} out of range for n = {n}");
        let mut window = self.window.clone();
        if i == 0 {
            let first = window[0];
            window[0] = window[n - 1] - n as i64;
            window[n - 1] = first + n as i64;
        } else {
            window.swap(i - 1, i);
        }
        AffinePermutation { window }
    }

    /// Strand (1-based rank of the base residue class) through position `pos`.
    pub fn strand_of(&self, pos: i64) -> usize {
        let n = self.n() as i64;
        let r = (pos - 1).rem_euclid(n) as usize;
        let base = self.window[r];
        self.window.iter().filter(|&&x| x <= base).count()
    }

    /// Window index of position `pos`: `floor((pos - 1) / n)`.
    pub fn window_of(&self, pos: i64) -> i64 {
        (pos - 1).div_euclid(self.n() as i64)
    }

    /// Some occurrence of `p`, or `None` if `self` avoids it.
    pub fn contains_pattern(&self, p: &Pattern) -> Option<PatternInstance> {
        self.search(p, None)
    }

    pub fn avoids(&self, p: &Pattern) -> bool {
        self.contains_pattern(p).is_none()
    }

    /// An occurrence of `p` whose `i`-th entry lies on strand `strands[i]`.
    pub fn find_instance_with_strands(&self, p: &Pattern, strands: &[usize]) -> Option<PatternInstance> {
        if strands.len() != p.len() {
            return None;
        }
        self.search(p, Some(strands))
    }

    /// Every occurrence whose first position lies in `1..=n`.
    pub fn normalized_instances(&self, p: &Pattern) -> Vec<PatternInstance> {
        let mut out = Vec::new();
        self.walk(p, None, &mut |inst| {
            out.push(inst);
            false
        });
        out
    }

    fn search(&self, p: &Pattern, strands: Option<&[usize]>) -> Option<PatternInstance> {
        let mut found = None;
        self.walk(p, strands, &mut |inst| {
            found = Some(inst);
            true
        });
        found
    }

    /// Depth-first search over occurrences normalized to start in the base
    /// window. Consecutive positions never need to be more than `s + n`
    /// apart: a longer gap can be shrunk by `n` without changing the order
    /// type. The visitor returns `true` to stop.
    fn walk(&self, p: &Pattern, strands: Option<&[usize]>, visit: &mut dyn FnMut(PatternInstance) -> bool) {
        let n = self.n() as i64;
        let reach = self.spread() + n;
        let strand_residue: Vec<i64> = {
            let inv = self.flattening().inverse();
            (1..=self.n()).map(|j| inv.at(j) as i64).collect()
        };
        let mut positions = Vec::with_capacity(p.len());
        let mut values = Vec::with_capacity(p.len());

        struct Ctx<'a> {
            w: &'a AffinePermutation,
            p: &'a Pattern,
            strands: Option<&'a [usize]>,
            strand_residue: &'a [i64],
            reach: i64,
            n: i64,
        }

        fn rec(
            ctx: &Ctx<'_>,
            positions: &mut Vec<i64>,
            values: &mut Vec<i64>,
            visit: &mut dyn FnMut(PatternInstance) -> bool,
        ) -> bool {
            let m = positions.len();
            if m == ctx.p.len() {
                return visit(PatternInstance {
                    positions: positions.clone(),
                    values: values.clone(),
                });
            }
            let (lo, hi) = match positions.last() {
                None => (1, ctx.n),
                Some(&q) => (q + 1, q + ctx.reach),
            };
            let pm = ctx.p.values()[m];
            for pos in lo..=hi {
                if let Some(st) = ctx.strands {
                    let residue = (pos - 1).rem_euclid(ctx.n) + 1;
                    if residue != ctx.strand_residue[st[m] - 1] {
                        continue;
                    }
                }
                let val = ctx.w.value_at(pos);
                let consistent = values
                    .iter()
                    .zip(ctx.p.values())
                    .all(|(&v, &pa)| (v < val) == (pa < pm));
                if !consistent {
                    continue;
                }
                positions.push(pos);
                values.push(val);
                let stop = rec(ctx, positions, values, visit);
                positions.pop();
                values.pop();
                if stop {
                    return true;
                }
            }
            false
        }

        let ctx = Ctx {
            w: self,
            p,
            strands,
            strand_residue: &strand_residue,
            reach,
            n,
        };
        rec(&ctx, &mut positions, &mut values, visit);
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Positions `i_1 < ... < i_k` and the values `w(i_j)` found there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternInstance {
    pub positions: Vec<i64>,
    pub values: Vec<i64>,
}

impl PatternInstance {
    /// Check that this really is an occurrence of `p` in `w`.
    pub fn is_instance_of(&self, w: &AffinePermutation, p: &Pattern) -> bool {
        let k = p.len();
        if self.positions.len() != k || self.values.len() != k {
            return false;
        }
        if self.positions.windows(2).any(|q| q[0] >= q[1]) {
            return false;
        }
        if self
            .positions
            .iter()
            .zip(&self.values)
            .any(|(&i, &v)| w.value_at(i) != v)
        {
            return false;
        }
        normalize_pattern(&self.values).map(|q| &q == p).unwrap_or(false)
    }

    /// Strand of each entry.
    pub fn strands(&self, w: &AffinePermutation) -> Vec<usize> {
        self.positions.iter().map(|&i| w.strand_of(i)).collect()
    }

    /// Window index of each entry.
    pub fn windows(&self, w: &AffinePermutation) -> Vec<i64> {
        self.positions.iter().map(|&i| w.window_of(i)).collect()
    }

    /// Shift every position by `m * n`; values shift by the same amount.
    pub fn translated(&self, m: i64, n: usize) -> PatternInstance {
        let d = m * n as i64;
        PatternInstance {
            positions: self.positions.iter().map(|i| i + d).collect(),
            values: self.values.iter().map(|v| v + d).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn aff(w: &[i64]) -> AffinePermutation {
        AffinePermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn normalize_example() {
        let p = normalize_pattern(&[7, 1, 0, 4, 5, 2, 8, 10, 6, 9, 3]).unwrap();
        assert_eq!(p.values(), &[8, 2, 1, 5, 6, 3, 9, 11, 7, 10, 4]);
        assert_eq!(p.to_string(), "8,2,1,5,6,3,9,11,7,10,4");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(pat("2431").values(), &[2, 4, 3, 1]);
        assert_eq!(pat("[2,4,3,1]"), pat("2431"));
        assert_eq!(pat("-5, 10, 0"), pat("132"));
        assert!("2241".parse::<Pattern>().is_err());
        assert!("".parse::<Pattern>().is_err());
        assert!("2a".parse::<Pattern>().is_err());
    }

    #[test]
    fn window_validation() {
        assert!(AffinePermutation::new(vec![-9, 4, 11]).is_ok());
        assert_eq!(
            AffinePermutation::new(vec![1, 2, 4]),
            Err(Error::WindowSum { expected: 6, got: 7 })
        );
        assert_eq!(AffinePermutation::new(vec![0, 3, 3]), Err(Error::ResidueClash(0, 3)));
        assert_eq!(AffinePermutation::new(vec![1]), Err(Error::SizeTooSmall(1)));
    }

    #[test]
    fn values_outside_window() {
        let w = aff(&[-9, 4, 11]);
        assert_eq!(w.value_at(0), 8);
        assert_eq!(w.value_at(4), -6);
        assert_eq!(w.value_at(-4), -2);
    }

    #[test]
    fn lengths() {
        assert_eq!(aff(&[-12, -8, 2, 9, 13, 17]).coxeter_length(), 28);
        assert_eq!(AffinePermutation::identity(4).coxeter_length(), 0);
        assert_eq!(aff(&[2, 1, 3]).coxeter_length(), 1);
        assert_eq!(aff(&[0, 2, 4]).coxeter_length(), 1);
    }

    #[test]
    fn parabolic_parts() {
        let w = aff(&[9, 4, -7]);
        let (u, v) = w.parabolic_decompose();
        assert_eq!(u.window(), &[-7, 4, 9]);
        assert_eq!(v.values(), &[3, 2, 1]);
        assert_eq!(AffinePermutation::compose_parabolic(&u, &v).unwrap(), w);
        assert_eq!(w.coxeter_length(), u.coxeter_length() + v.inversions());
    }

    #[test]
    fn strand_counts() {
        assert_eq!(pat("24351").strand_count(), 3);
        assert_eq!(pat("4321").strand_count(), 4);
        assert_eq!(pat("12").strand_count(), 1);
        assert_eq!(pat("8,2,1,5,6,3,9,11,7,10,4").strand_count(), 3);
    }

    #[test]
    fn simple_reflections_are_involutions() {
        let w = aff(&[-9, 4, 11]);
        for i in 0..3 {
            assert_eq!(w.times_simple(i).times_simple(i), w);
        }
        assert_eq!(AffinePermutation::identity(3).times_simple(0).window(), &[0, 2, 4]);
    }

    #[test]
    fn worked_instance_is_valid() {
        let w = aff(&[-9, 4, 11]);
        let p = pat("24351");
        let inst = PatternInstance {
            positions: vec![-4, -3, -1, 5, 7],
            values: vec![-2, 5, 1, 7, -3],
        };
        assert!(inst.is_instance_of(&w, &p));
        let norm = inst.translated(2, 3);
        assert_eq!(norm.positions, vec![2, 3, 5, 11, 13]);
        assert!(norm.is_instance_of(&w, &p));
        assert!(w.normalized_instances(&p).contains(&norm));
        assert_eq!(inst.strands(&w), vec![2, 3, 2, 2, 1]);
        let found = w.contains_pattern(&p).unwrap();
        assert!(found.is_instance_of(&w, &p));
    }

    #[test]
    fn identity_avoids_descents() {
        assert!(AffinePermutation::identity(3).avoids(&pat("21")));
        assert!(!AffinePermutation::identity(3).avoids(&pat("123")));
    }

    #[test]
    fn all_permutations() {
        let all = Pattern::all(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], pat("1234"));
        assert_eq!(all[23], pat("4321"));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}

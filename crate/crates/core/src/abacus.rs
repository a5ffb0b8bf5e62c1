//! Abacus coordinates on sorted base windows: gap vectors, biases and the
//! cone coordinates `(b, t)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::{AffinePermutation, Pattern};
use crate::error::{Error, Result};
use crate::series::{CyclotomicProduct, Polynomial, RationalFunction};

fn balance(mut window: Vec<i64>) -> Vec<i64> {
    let n = window.len() as i64;
    let target = n * (n + 1) / 2;
    let sum: i64 = window.iter().sum();
    let diff = target - sum;
    assert_eq!(diff.rem_euclid(n), 0, "distinct residues always balance");
    let shift = diff / n;
    for x in &mut window {
        *x += shift;
    }
    window
}

fn require_sorted(u: &AffinePermutation) -> Result<()> {
    if u.is_sorted() {
        Ok(())
    } else {
        Err(Error::UnsortedWindow)
    }
}

/// `gaps[i-1]` counts the integers strictly between `u_i` and `u_{i+1}`
/// whose residue is one of `u_1, ..., u_i` mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GapVector {
    gaps: Vec<u64>,
}

impl GapVector {
    pub fn new(gaps: Vec<u64>) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::SizeTooSmall(1));
        }
        Ok(GapVector { gaps })
    }

    pub fn zeros(n: usize) -> Self {
        GapVector { gaps: vec![0; n - 1] }
    }

    pub fn n(&self) -> usize {
        self.gaps.len() + 1
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// `sum (n - i) gaps_i`
    pub fn coxeter_length(&self) -> u64 {
        let n = self.n() as u64;
        self.gaps.iter().zip(1u64..).map(|(g, i)| (n - i) * g).sum()
    }

    /// The unique sorted window with these gaps.
    pub fn to_affine(&self) -> AffinePermutation {
        let n = self.n();
        let ni = n as i64;
        let mut window = vec![0i64; n];
        let mut taken = vec![false; n];
        taken[0] = true;
        for i in (0..n - 1).rev() {
            let mut x = window[i + 1];
            let mut seen = 0;
            loop {
                x -= 1;
                if !taken[x.rem_euclid(ni) as usize] {
                    if seen == self.gaps[i] {
                        break;
                    }
                    seen += 1;
                }
            }
            window[i] = x;
            taken[x.rem_euclid(ni) as usize] = true;
        }
        AffinePermutation::from_window_unchecked(balance(window))
    }
}

impl fmt::Display for GapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gaps.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn gap_vector(u: &AffinePermutation) -> Result<GapVector> {
    require_sorted(u)?;
    let n = u.n() as i64;
    let w = u.window();
    let mut gaps = Vec::with_capacity(w.len() - 1);
    for i in 0..w.len() - 1 {
        let below: Vec<i64> = w[..=i].iter().map(|x| x.rem_euclid(n)).collect();
        let count = (w[i] + 1..w[i + 1])
            .filter(|x| below.contains(&x.rem_euclid(n)))
            .count();
        gaps.push(count as u64);
    }
    Ok(GapVector { gaps })
}

pub fn from_gap_vector(g: &GapVector) -> AffinePermutation {
    g.to_affine()
}

pub fn length_from_gaps(g: &GapVector) -> u64 {
    g.coxeter_length()
}

/// Consecutive differences `u_{i+1} - u_i` of a sorted window.
pub fn delta_vector(u: &AffinePermutation) -> Result<Vec<i64>> {
    require_sorted(u)?;
    Ok(u.window().windows(2).map(|w| w[1] - w[0]).collect())
}

/// A bias: the residues of consecutive differences of a sorted window.
/// Biases index the cones into which the sorted windows split.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bias {
    delta: Vec<i64>,
    offset: Vec<u64>,
}

impl Bias {
    pub fn from_delta(delta: Vec<i64>) -> Result<Self> {
        let n = delta.len() as i64 + 1;
        if n < 2 {
            return Err(Error::SizeTooSmall(n as usize));
        }
        if delta.iter().any(|&d| d < 1 || d >= n) {
            return Err(Error::InvalidBias(delta));
        }
        let mut seen = vec![false; n as usize];
        seen[0] = true;
        let mut acc = 0;
        for &d in &delta {
            acc = (acc + d) % n;
            if seen[acc as usize] {
                return Err(Error::InvalidBias(delta));
            }
            seen[acc as usize] = true;
        }
        let minimal = Self::window_from(&delta);
        let offset = gap_vector(&minimal).expect("sorted by construction").gaps;
        Ok(Bias { delta, offset })
    }

    /// Every difference equal to 1; the minimal window is the identity.
    pub fn trivial(n: usize) -> Self {
        Self::from_delta(vec![1; n - 1]).expect("all-ones bias is valid")
    }

    fn window_from(delta: &[i64]) -> AffinePermutation {
        let mut w = vec![0i64];
        for &d in delta {
            w.push(w.last().unwrap() + d);
        }
        AffinePermutation::from_window_unchecked(balance(w))
    }

    pub fn n(&self) -> usize {
        self.delta.len() + 1
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    /// Gap vector of the minimal window in this cone.
    pub fn offset(&self) -> &[u64] {
        &self.offset
    }

    pub fn minimal_window(&self) -> AffinePermutation {
        Self::window_from(&self.delta)
    }

    /// Length of the minimal window, `sum (n - i) offset_i`.
    pub fn length_offset(&self) -> u64 {
        let n = self.n() as u64;
        self.offset.iter().zip(1u64..).map(|(g, i)| (n - i) * g).sum()
    }

    /// `floor((delta_i + ... + delta_{j-1}) / n)` for strands `i < j`.
    pub fn floor_sum(&self, i: usize, j: usize) -> i64 {
        assert!(1 <= i && i < j && j <= self.n());
        let s: i64 = self.delta[i - 1..j - 1].iter().sum();
        s.div_euclid(self.n() as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.delta.iter().all(|&d| d == 1)
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.delta.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All `(n-1)!` biases, ordered lexicographically by their delta vectors.
pub fn enumerate_biases(n: usize) -> Vec<Bias> {
    fn rec(n: i64, delta: &mut Vec<i64>, seen: &mut Vec<bool>, acc: i64, out: &mut Vec<Bias>) {
        if delta.len() as i64 == n - 1 {
            out.push(Bias::from_delta(delta.clone()).expect("valid by construction"));
            return;
        }
        for d in 1..n {
            let r = (acc + d) % n;
            if seen[r as usize] {
                continue;
            }
            seen[r as usize] = true;
            delta.push(d);
            rec(n, delta, seen, r, out);
            delta.pop();
            seen[r as usize] = false;
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; n];
    seen[0] = true;
    rec(n as i64, &mut Vec::new(), &mut seen, 0, &mut out);
    out
}

pub fn bias_of(u: &AffinePermutation) -> Result<Bias> {
    let n = u.n() as i64;
    Bias::from_delta(delta_vector(u)?.into_iter().map(|d| d.rem_euclid(n)).collect())
}

/// A point of a bias cone: `u_{i+1} - u_i = n t_i + delta_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbacusCoords {
    pub bias: Bias,
    pub t: Vec<u64>,
}

impl AbacusCoords {
    pub fn new(bias: Bias, t: Vec<u64>) -> Result<Self> {
        if t.len() != bias.n() - 1 {
            return Err(Error::DimensionMismatch {
                what: "cone coordinates",
                expected: bias.n() - 1,
                got: t.len(),
            });
        }
        Ok(AbacusCoords { bias, t })
    }

    pub fn n(&self) -> usize {
        self.bias.n()
    }

    /// `gaps_i = i t_i + offset_i`
    pub fn gap_vector(&self) -> GapVector {
        let gaps = self
            .t
            .iter()
            .zip(self.bias.offset())
            .zip(1u64..)
            .map(|((t, o), i)| i * t + o)
            .collect();
        GapVector { gaps }
    }

    pub fn coxeter_length(&self) -> u64 {
        let w = cone_weights(self.n());
        self.bias.length_offset() + self.t.iter().zip(&w).map(|(t, w)| t * w).sum::<u64>()
    }

    pub fn to_affine(&self) -> AffinePermutation {
        from_cone_coords(self)
    }
}

pub fn cone_coords(u: &AffinePermutation) -> Result<AbacusCoords> {
    let bias = bias_of(u)?;
    let n = u.n() as i64;
    let t = u
        .window()
        .windows(2)
        .map(|w| (w[1] - w[0]).div_euclid(n) as u64)
        .collect();
    Ok(AbacusCoords { bias, t })
}

pub fn from_cone_coords(c: &AbacusCoords) -> AffinePermutation {
    let n = c.n() as i64;
    let mut w = vec![0i64];
    for (d, t) in c.bias.delta().iter().zip(&c.t) {
        w.push(w.last().unwrap() + d + n * *t as i64);
    }
    AffinePermutation::from_window_unchecked(balance(w))
}

/// Grading weights of the cone coordinates: `i (n - i)` for `i = 1..n-1`.
pub fn cone_weights(n: usize) -> Vec<u64> {
    (1..n as u64).map(|i| i * (n as u64 - i)).collect()
}

/// Key of one cell `(b, v)` of the decomposition of the affine group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub bias: Bias,
    pub flattening: Pattern,
}

impl CellKey {
    pub fn n(&self) -> usize {
        self.bias.n()
    }

    /// Constant term of the length grading on this cell.
    pub fn length_constant(&self) -> u64 {
        self.bias.length_offset() + self.flattening.inversions()
    }

    pub fn element(&self, t: &[u64]) -> Result<AffinePermutation> {
        let u = AbacusCoords::new(self.bias.clone(), t.to_vec())?.to_affine();
        AffinePermutation::compose_parabolic(&u, &self.flattening)
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bias {} flattening {}", self.bias, self.flattening)
    }
}

/// Every cell for a given `n`: biases outer, flattenings inner, both in
/// lexicographic order.
pub fn cells(n: usize) -> Vec<CellKey> {
    let flats = Pattern::all(n);
    enumerate_biases(n)
        .into_iter()
        .flat_map(|bias| {
            flats.iter().map(move |v| CellKey {
                bias: bias.clone(),
                flattening: v.clone(),
            })
        })
        .collect()
}

/// Denominator `prod_i (1 - x^{i(n-i)})` shared by every cell series.
pub fn cell_denominator(n: usize) -> CyclotomicProduct {
    let mut out = CyclotomicProduct::new();
    for w in cone_weights(n) {
        out.multiply(&CyclotomicProduct::one_minus_x_pow(w));
    }
    out
}

/// Length generating function of a single cell.
pub fn cell_series(key: &CellKey) -> RationalFunction {
    let num = Polynomial::monomial(1.into(), key.length_constant() as usize);
    RationalFunction::from_cyclotomic_denominator(num, &cell_denominator(key.n()))
        .expect("cyclotomic denominators have unit constant term")
}

/// Length generating function of the whole group (`coset_only = false`) or
/// of the sorted windows only.
pub fn bott_series(n: usize, coset_only: bool) -> RationalFunction {
    if coset_only {
        let mut den = CyclotomicProduct::new();
        for j in 1..n as u64 {
            den.multiply(&CyclotomicProduct::one_minus_x_pow(j));
        }
        RationalFunction::from_cyclotomic_denominator(Polynomial::one(), &den).expect("unit constant term")
    } else {
        let den = CyclotomicProduct::one_minus_x_pow(1).pow(n as u32);
        RationalFunction::from_cyclotomic_denominator(Polynomial::one_minus_x_pow(n), &den).expect("unit constant term")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(w: &[i64]) -> AffinePermutation {
        AffinePermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn delta_is_raw_difference() {
        assert_eq!(
            delta_vector(&aff(&[-12, -8, 2, 9, 13, 17])).unwrap(),
            vec![4, 10, 7, 4, 4]
        );
        assert_eq!(delta_vector(&aff(&[-9, 4, 11])).unwrap(), vec![13, 7]);
        assert_eq!(bias_of(&aff(&[-9, 4, 11])).unwrap().delta(), &[1, 1]);
    }

    #[test]
    fn gap_round_trip_example() {
        let u = aff(&[-9, 4, 11]);
        let g = gap_vector(&u).unwrap();
        assert_eq!(from_gap_vector(&g), u);
        assert_eq!(g.coxeter_length(), u.coxeter_length());
    }

    #[test]
    fn worked_cone_coordinates() {
        let u = aff(&[-9, 4, 11]);
        let c = cone_coords(&u).unwrap();
        assert_eq!(c.bias.delta(), &[1, 1]);
        assert_eq!(c.t, vec![4, 2]);
        assert_eq!(from_cone_coords(&c), u);
        assert_eq!(c.coxeter_length(), u.coxeter_length());
    }

    #[test]
    fn bias_offsets() {
        let b = Bias::from_delta(vec![2, 2]).unwrap();
        assert_eq!(b.minimal_window().window(), &[0, 2, 4]);
        assert_eq!(b.offset(), &[0, 1]);
        assert_eq!(Bias::trivial(3).minimal_window(), AffinePermutation::identity(3));
        assert!(Bias::from_delta(vec![1, 2]).is_err());
        assert!(Bias::from_delta(vec![0, 1]).is_err());
    }

    #[test]
    fn bias_count_and_order() {
        for n in 2..=6 {
            let all = enumerate_biases(n);
            let fact: usize = (1..n).product();
            assert_eq!(all.len(), fact);
            assert!(all.windows(2).all(|w| w[0].delta() < w[1].delta()));
        }
    }

    #[test]
    fn floor_sums() {
        let b = Bias::from_delta(vec![2, 2]).unwrap();
        assert_eq!(b.floor_sum(1, 2), 0);
        assert_eq!(b.floor_sum(1, 3), 1);
        assert_eq!(Bias::trivial(3).floor_sum(1, 3), 0);
    }

    #[test]
    fn gap_from_cone() {
        for bias in enumerate_biases(4) {
            let c = AbacusCoords::new(bias, vec![1, 0, 2]).unwrap();
            let u = c.to_affine();
            assert_eq!(gap_vector(&u).unwrap(), c.gap_vector());
            assert_eq!(cone_coords(&u).unwrap(), c);
        }
    }

    #[test]
    fn bott_closed_forms() {
        let full3 = bott_series(3, false);
        assert_eq!(full3.numerator(), &Polynomial::from_i64(&[1, 1, 1]));
        assert_eq!(full3.denominator(), &Polynomial::from_i64(&[1, -2, 1]));
        let coset3 = bott_series(3, true);
        assert_eq!(coset3.denominator(), &Polynomial::from_i64(&[1, -1, -1, 1]));
    }

    #[test]
    fn cells_sum_to_bott() {
        for n in 2..=4 {
            let mut total = RationalFunction::zero();
            for key in cells(n) {
                total = total.add(&cell_series(&key));
            }
            assert_eq!(total, bott_series(n, false));
        }
    }

    #[test]
    fn unsorted_windows_rejected() {
        assert_eq!(gap_vector(&aff(&[2, 1, 3])), Err(Error::UnsortedWindow));
    }
}

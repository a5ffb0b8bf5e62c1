//! Exact univariate polynomials and rational functions over the integers.
//!
//! Every generating series in the crate is carried as a [`RationalFunction`]
//! normalized so that the denominator has constant term 1 and shares no
//! factor with the numerator. Expansion into power-series coefficients is
//! exact; nothing here touches floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// Serialize integers as JSON numbers when they fit in 64 bits, otherwise
/// as decimal strings.
pub fn serialize_bigints<S: Serializer>(values: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        match i64::try_from(v) {
            Ok(x) => seq.serialize_element(&x)?,
            Err(_) => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

/// Dense integer polynomial; index = degree, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Polynomial {
    #[serde(serialize_with = "serialize_bigints")]
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `1 - x^d`
    pub fn one_minus_x_pow(d: usize) -> Self {
        if d == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[0] = BigInt::one();
        coeffs[d] = -BigInt::one();
        Self::new(coeffs)
    }

    /// `1 + x + ... + x^(d-1)`
    pub fn geometric_sum(d: usize) -> Self {
        Self::new(vec![BigInt::one(); d])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Coefficients of degree `< len`.
    pub fn truncate(&self, len: usize) -> Self {
        Self::new(self.coeffs.iter().take(len).cloned().collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Quotient and remainder, provided every step divides exactly over the
    /// integers (always the case for a monic or anti-monic divisor).
    pub fn div_rem_exact(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// `self / divisor` when the division is exact in `Z[x]`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        match self.div_rem_exact(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    fn pseudo_rem(&self, divisor: &Polynomial) -> Polynomial {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let lr = rem.leading();
            let shifted = Polynomial::monomial(lr, dr - dd);
            rem = &rem.scale(&lead) - &(&shifted * divisor);
        }
        rem
    }

    /// Greatest common divisor in `Z[x]` via the primitive remainder
    /// sequence; the result is primitive with positive leading coefficient.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut a = a.primitive_part();
        let mut b = b.primitive_part();
        if a.degree_or_zero() < b.degree_or_zero() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_negative() {
            a = -a;
        }
        a
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// The `d`-th cyclotomic polynomial, computed as
    /// `prod_{e | d} (x^e - 1)^{mu(d/e)}`.
    pub fn cyclotomic(d: u64) -> Polynomial {
        assert!(d > 0, "cyclotomic index must be positive");
        let mut num = Polynomial::one();
        let mut den = Polynomial::one();
        for e in 1..=d {
            if d % e != 0 {
                continue;
            }
            let x_e_minus_1 = -Polynomial::one_minus_x_pow(e as usize);
            match mobius(d / e) {
                1 => num = &num * &x_e_minus_1,
                -1 => den = &den * &x_e_minus_1,
                _ => {}
            }
        }
        num.exact_div(&den).expect("cyclotomic quotient is exact")
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

fn mobius(mut m: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub(crate) fn euler_phi(mut m: u64) -> u64 {
    let mut out = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Product of cyclotomic polynomials `prod Phi_d^{m_d}`, kept in factored
/// form. Denominator bounds are assembled this way so that fitted series
/// can be reduced by trial division against known factors only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclotomicProduct {
    factors: BTreeMap<u64, u32>,
}

impl CyclotomicProduct {
    pub fn new() -> Self {
        Self::default()
    }

    /// Factorization of `1 - x^a` (up to sign): every `Phi_d` with `d | a`.
    pub fn one_minus_x_pow(a: u64) -> Self {
        let mut out = Self::new();
        for d in 1..=a {
            if a % d == 0 {
                out.factors.insert(d, 1);
            }
        }
        out
    }

    /// Set the multiplicity of `Phi_d`; zero removes the factor.
    pub fn set(&mut self, d: u64, m: u32) {
        if m == 0 {
            self.factors.remove(&d);
        } else {
            self.factors.insert(d, m);
        }
    }

    pub fn multiplicity(&self, d: u64) -> u32 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn multiply(&mut self, other: &CyclotomicProduct) {
        for (&d, &m) in &other.factors {
            *self.factors.entry(d).or_insert(0) += m;
        }
    }

    pub fn lcm_with(&mut self, other: &CyclotomicProduct) {
        for (&d, &m) in &other.factors {
            let e = self.factors.entry(d).or_insert(0);
            *e = (*e).max(m);
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        CyclotomicProduct {
            factors: self.factors.iter().map(|(&d, &m)| (d, m * e)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(&d, &m)| euler_phi(d) as usize * m as usize)
            .sum()
    }

    /// Expanded product, signed so the constant term is 1.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut out = Polynomial::one();
        for (&d, &m) in &self.factors {
            let mut phi = Polynomial::cyclotomic(d);
            if d == 1 {
                phi = -phi;
            }
            out = &out * &phi.pow(m);
        }
        out
    }
}

/// Normalized `numerator / denominator` with `denominator(0) = 1` and
/// `gcd(numerator, denominator) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let g = Polynomial::gcd(&numerator, &denominator);
        let (num, den) = if g.degree_or_zero() > 0 || !g.coeff(0).is_one() {
            (
                numerator.exact_div(&g).expect("gcd divides numerator"),
                denominator.exact_div(&g).expect("gcd divides denominator"),
            )
        } else {
            (numerator, denominator)
        };
        Self::with_unit_constant(num, den)
    }

    fn with_unit_constant(num: Polynomial, den: Polynomial) -> Result<Self> {
        let c0 = den.coeff(0);
        if c0.is_one() {
            return Ok(RationalFunction {
                numerator: num,
                denominator: den,
            });
        }
        if (-&c0).is_one() {
            return Ok(RationalFunction {
                numerator: -num,
                denominator: -den,
            });
        }
        // Rescale only if the constant term divides everything.
        let all = num.coeffs.iter().chain(den.coeffs.iter());
        if all.clone().all(|c| c.is_multiple_of(&c0)) {
            let inv = |p: &Polynomial| Polynomial::new(p.coeffs.iter().map(|c| c / &c0).collect());
            return Ok(RationalFunction {
                numerator: inv(&num),
                denominator: inv(&den),
            });
        }
        Err(Error::NonUnitConstant(c0.to_string()))
    }

    /// Reduce `numerator / prod Phi_d^{m_d}` by cancelling only the known
    /// cyclotomic factors. Since every factor of the denominator is listed,
    /// the result is fully reduced.
    pub fn from_cyclotomic_denominator(numerator: Polynomial, denominator: &CyclotomicProduct) -> Result<Self> {
        let mut num = numerator;
        let mut remaining = CyclotomicProduct::new();
        for (&d, &m) in denominator.factors() {
            let phi = Polynomial::cyclotomic(d);
            let mut left = m;
            while left > 0 && !num.is_zero() {
                match num.exact_div(&phi) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if num.is_zero() {
                left = 0;
            }
            if left > 0 {
                remaining.factors.insert(d, left);
            }
            // Phi_1 = x - 1 = -(1 - x): each cancelled copy flips the sign.
            if d == 1 && (m - left) % 2 == 1 {
                num = -num;
            }
        }
        Self::with_unit_constant(num, remaining.to_polynomial())
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree_or_zero() == 0
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let den = &self.denominator * &other.denominator;
        Self::new(num, den).expect("product of unit-constant denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = &(&self.numerator * &other.denominator) - &(&other.numerator * &self.denominator);
        let den = &self.denominator * &other.denominator;
        Self::new(num, den).expect("product of unit-constant denominators")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = &self.numerator * &other.numerator;
        let den = &self.denominator * &other.denominator;
        Self::new(num, den).expect("product of unit-constant denominators")
    }

    /// The first `max_index + 1` power-series coefficients.
    pub fn expand(&self, max_index: usize) -> Vec<BigInt> {
        expand_quotient(&self.numerator, &self.denominator, max_index)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// Power-series coefficients of `num / den`; `den(0)` must be 1.
fn expand_quotient(num: &Polynomial, den: &Polynomial, max_index: usize) -> Vec<BigInt> {
    debug_assert!(den.coeff(0).is_one());
    let mut out: Vec<BigInt> = Vec::with_capacity(max_index + 1);
    for i in 0..=max_index {
        let mut a = num.coeff(i);
        for (j, d) in den.coeffs.iter().enumerate().skip(1) {
            if j > i {
                break;
            }
            if !d.is_zero() {
                a -= d * &out[i - j];
            }
        }
        out.push(a);
    }
    out
}

/// Recover `N / D` from coefficients, where `D` is the supplied denominator
/// bound. The last `margin` coefficients are held out and only verified.
pub fn fit_rational(coeffs: &[BigInt], bound: &Polynomial, margin: usize) -> Result<RationalFunction> {
    let (num, den) = fit_numerator(coeffs, bound, margin)?;
    RationalFunction::new(num, den)
}

/// [`fit_rational`] for a bound given in cyclotomic-factored form.
pub fn fit_rational_factored(coeffs: &[BigInt], bound: &CyclotomicProduct, margin: usize) -> Result<RationalFunction> {
    let den = bound.to_polynomial();
    let (num, _) = fit_numerator(coeffs, &den, margin)?;
    RationalFunction::from_cyclotomic_denominator(num, bound)
}

fn fit_numerator(coeffs: &[BigInt], bound: &Polynomial, margin: usize) -> Result<(Polynomial, Polynomial)> {
    let c0 = bound.coeff(0);
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let den = if c0.is_negative() {
        -bound.clone()
    } else {
        bound.clone()
    };
    if !den.coeff(0).is_one() {
        return Err(Error::NonUnitConstant(c0.to_string()));
    }
    let needed = den.degree_or_zero() + margin + 1;
    if coeffs.len() < needed {
        return Err(Error::NotEnoughCoefficients {
            needed,
            got: coeffs.len(),
        });
    }
    let cap = coeffs.len() - margin;
    let data = Polynomial::new(coeffs.to_vec());
    let num = (&data * &den).truncate(cap);
    let fitted = expand_quotient(&num, &den, coeffs.len() - 1);
    if let Some(index) = (0..coeffs.len()).find(|&i| fitted[i] != coeffs[i]) {
        return Err(Error::FitVerification {
            index,
            expected: coeffs[index].to_string(),
            fitted: fitted[index].to_string(),
        });
    }
    Ok((num, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BehaviorKind {
    EventuallyZero,
    EventuallyPeriodic,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BehaviorReport {
    pub kind: BehaviorKind,
    pub period: Option<u64>,
    pub preperiod: u64,
    #[serde(serialize_with = "serialize_bigints")]
    pub repeating_values: Vec<BigInt>,
}

/// Long-run behavior of the coefficient sequence of `r`.
///
/// Polynomials are eventually zero. Otherwise the coefficients are
/// eventually periodic exactly when the reduced denominator is a product of
/// distinct cyclotomic polynomials; the period is the lcm of their orders.
pub fn classify_behavior(r: &RationalFunction) -> BehaviorReport {
    if r.is_polynomial() {
        return BehaviorReport {
            kind: BehaviorKind::EventuallyZero,
            period: None,
            preperiod: r.numerator().degree().map_or(0, |d| d as u64 + 1),
            repeating_values: Vec::new(),
        };
    }
    let Some(orders) = distinct_cyclotomic_orders(r.denominator()) else {
        return BehaviorReport {
            kind: BehaviorKind::Unbounded,
            period: None,
            preperiod: 0,
            repeating_values: Vec::new(),
        };
    };
    let period = orders.iter().fold(1u64, |acc, &d| acc.lcm(&d));
    let p = period as usize;
    // a_i = a_{i-p} holds for all i > deg N + p - deg D.
    let settle = r.numerator().degree_or_zero() + p;
    let len = settle + 5 * p + 1;
    let a = r.expand(len);
    let mut pre = len - 4 * p;
    while pre > 0 && a[pre - 1 + p] == a[pre - 1] {
        pre -= 1;
    }
    BehaviorReport {
        kind: BehaviorKind::EventuallyPeriodic,
        period: Some(period),
        preperiod: pre as u64,
        repeating_values: a[pre..pre + p].to_vec(),
    }
}

/// Orders `d` such that `den = +-prod Phi_d` with every `d` distinct, or
/// `None` if `den` has a repeated or non-cyclotomic factor.
fn distinct_cyclotomic_orders(den: &Polynomial) -> Option<Vec<u64>> {
    let mut rest = den.clone();
    let mut orders = Vec::new();
    let deg = den.degree_or_zero() as u64;
    // phi(d) >= sqrt(d / 2), so no order beyond 2 deg^2 can divide.
    let limit = 2 * deg * deg + 2;
    let mut d = 1;
    while rest.degree_or_zero() > 0 && d <= limit {
        if euler_phi(d) as usize <= rest.degree_or_zero() {
            let phi = Polynomial::cyclotomic(d);
            if let Some(q) = rest.exact_div(&phi) {
                if q.exact_div(&phi).is_some() {
                    return None;
                }
                orders.push(d);
                rest = q;
            }
        }
        d += 1;
    }
    if rest.degree_or_zero() > 0 {
        return None;
    }
    Some(orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(Polynomial::cyclotomic(1), p(&[-1, 1]));
        assert_eq!(Polynomial::cyclotomic(2), p(&[1, 1]));
        assert_eq!(Polynomial::cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(Polynomial::cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(Polynomial::cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(Polynomial::cyclotomic(12).degree(), Some(4));
    }

    #[test]
    fn one_over_one_minus_x_minus_one() {
        let a = rf(&[1], &[1, -1]);
        let got = a.sub(&RationalFunction::polynomial(Polynomial::one()));
        assert_eq!(got, rf(&[0, 1], &[1, -1]));
    }

    #[test]
    fn reduces_common_factor() {
        // (1+x)/(1-x^2) = 1/(1-x)
        let r = rf(&[1, 1], &[1, 0, -1]);
        assert_eq!(r.numerator(), &p(&[1]));
        assert_eq!(r.denominator(), &p(&[1, -1]));
    }

    #[test]
    fn expand_examples() {
        let bott3 = rf(&[1], &[1, -1, -1, 1]);
        assert_eq!(bott3.expand(6), ints(&[1, 1, 2, 2, 3, 3, 4]));
        assert_eq!(rf(&[1, 2], &[1]).expand(4), ints(&[1, 2, 0, 0, 0]));
        assert_eq!(rf(&[1, 1], &[1, -1]).expand(4), ints(&[1, 2, 2, 2, 2]));
    }

    #[test]
    fn fit_examples() {
        let bound = &p(&[1, -1]) * &p(&[1, 0, -1]);
        let got = fit_rational(&ints(&[1, 1, 2, 2, 3, 3, 4, 4, 5, 5]), &bound, 4).unwrap();
        assert_eq!(got, rf(&[1], &[1, -1, -1, 1]));

        let got = fit_rational(&ints(&[1, 2, 2, 2, 2, 2]), &p(&[1, -1]), 3).unwrap();
        assert_eq!(got, rf(&[1, 1], &[1, -1]));

        let err = fit_rational(&ints(&[1, 2, 4, 8]), &p(&[1, -1]), 2).unwrap_err();
        assert!(matches!(err, Error::FitVerification { index: 2, .. }));
    }

    #[test]
    fn fit_needs_enough_terms() {
        let err = fit_rational(&ints(&[1, 2]), &p(&[1, -1]), 2).unwrap_err();
        assert_eq!(err, Error::NotEnoughCoefficients { needed: 4, got: 2 });
    }

    #[test]
    fn factored_fit_matches_plain_fit() {
        let mut bound = CyclotomicProduct::one_minus_x_pow(2);
        bound.multiply(&CyclotomicProduct::one_minus_x_pow(3));
        let data = rf(&[1, 0, 3], &[1, -1, 0, -1, 1]).expand(20);
        let a = fit_rational_factored(&data, &bound, 6).unwrap();
        let b = fit_rational(&data, &bound.to_polynomial(), 6).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.expand(20), data);
    }

    #[test]
    fn cyclotomic_product_polynomial() {
        let c = CyclotomicProduct::one_minus_x_pow(6);
        assert_eq!(c.to_polynomial(), Polynomial::one_minus_x_pow(6));
        assert_eq!(c.degree(), 6);
        let mut l = CyclotomicProduct::one_minus_x_pow(2);
        l.lcm_with(&CyclotomicProduct::one_minus_x_pow(4));
        assert_eq!(l.to_polynomial(), Polynomial::one_minus_x_pow(4));
    }

    #[test]
    fn behavior_examples() {
        let zero = classify_behavior(&rf(&[0, 1, 0, 1], &[1]));
        assert_eq!(zero.kind, BehaviorKind::EventuallyZero);
        assert_eq!(zero.preperiod, 4);

        let per = classify_behavior(&rf(&[1, 1], &[1, -1]));
        assert_eq!(per.kind, BehaviorKind::EventuallyPeriodic);
        assert_eq!(per.period, Some(1));
        assert_eq!(per.preperiod, 1);
        assert_eq!(per.repeating_values, ints(&[2]));

        let unb = classify_behavior(&rf(&[1], &[1, -1, -1, 1]));
        assert_eq!(unb.kind, BehaviorKind::Unbounded);
    }

    #[test]
    fn behavior_period_is_lcm_of_orders() {
        // 1/((1-x^2)(1+x+x^2)) has denominator Phi_1 Phi_2 Phi_3.
        let den = &p(&[1, 0, -1]) * &p(&[1, 1, 1]);
        let r = RationalFunction::new(p(&[1]), den).unwrap();
        let rep = classify_behavior(&r);
        assert_eq!(rep.kind, BehaviorKind::EventuallyPeriodic);
        assert_eq!(rep.period, Some(6));
    }

    #[test]
    fn non_cyclotomic_denominator_is_unbounded() {
        let r = rf(&[1], &[1, -2]);
        assert_eq!(classify_behavior(&r).kind, BehaviorKind::Unbounded);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "1 - 2*x + 3*x^3");
        assert_eq!(rf(&[1, 1], &[1, -1]).to_string(), "(1 + x) / (1 - x)");
    }
}

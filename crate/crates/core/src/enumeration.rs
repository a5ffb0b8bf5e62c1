//! Container and avoider series, and the two classifiers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::abacus::{bott_series, cells, cone_weights, Bias, CellKey};
use crate::affine::{Pattern, DEFAULT_PATTERN_GUARD};
use crate::error::{Error, Result};
use crate::geometry::{build_system, homogeneous_system, strand_assignments, StrandAssignment, WindowConstraints};
use crate::polyhedra::Polyhedron;
use crate::series::{
    classify_behavior, fit_rational_factored, BehaviorKind, BehaviorReport, CyclotomicProduct, RationalFunction,
};

/// Call `f(t, weight)` for every `t >= 0` with `weights . t <= budget`, in
/// lexicographic order.
pub fn for_each_graded_point(weights: &[u64], budget: u64, f: &mut dyn FnMut(&[u64], u64)) {
    fn rec(weights: &[u64], budget: u64, used: u64, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64], u64)) {
        let j = cur.len();
        if j == weights.len() {
            f(cur, used);
            return;
        }
        let mut x = 0;
        while used + x * weights[j] <= budget {
            cur.push(x);
            rec(weights, budget, used + x * weights[j], cur, f);
            cur.pop();
            x += 1;
        }
    }
    rec(weights, budget, 0, &mut Vec::new(), f);
}

fn compile_cell(p: &Pattern, assignments: &[StrandAssignment], cell: &CellKey) -> Vec<WindowConstraints> {
    assignments
        .iter()
        .map(|pi| WindowConstraints::new(p, pi, &cell.bias, &cell.flattening).expect("assignment built for this n"))
        .collect()
}

/// Containers of `p` in one cell, by length up to `max_len`.
pub fn cell_container_counts(p: &Pattern, cell: &CellKey, max_len: usize) -> Vec<u64> {
    let n = cell.n();
    let assignments = strand_assignments(p, n);
    let mut counts = vec![0u64; max_len + 1];
    let base = cell.length_constant();
    if assignments.is_empty() || base > max_len as u64 {
        return counts;
    }
    let compiled = compile_cell(p, &assignments, cell);
    let weights = cone_weights(n);
    for_each_graded_point(&weights, max_len as u64 - base, &mut |t, w| {
        if compiled.iter().any(|wc| wc.contains(t)) {
            counts[(base + w) as usize] += 1;
        }
    });
    counts
}

/// Number of elements of each length `<= max_len` containing `p`, summed
/// over all cells.
pub fn container_counts(p: &Pattern, n: usize, max_len: usize) -> Vec<u64> {
    cells(n)
        .par_iter()
        .map(|cell| cell_container_counts(p, cell, max_len))
        .reduce(
            || vec![0u64; max_len + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Strand assignments whose system has a rational point in at least one cell.
pub fn feasible_assignments(p: &Pattern, n: usize) -> Vec<StrandAssignment> {
    let all_cells = cells(n);
    strand_assignments(p, n)
        .into_par_iter()
        .filter(|pi| {
            all_cells.iter().any(|cell| {
                build_system(p, pi, &cell.bias, &cell.flattening)
                    .map(|s| s.polyhedron.is_rationally_feasible())
                    .unwrap_or(false)
            })
        })
        .collect()
}

/// Denominator bound for the container series, with the rays it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorBound {
    /// Extreme rays of every intersection of projected recession cones.
    pub rays: Vec<Vec<i64>>,
    /// Length weight `sum i (n - i) r_i` of each ray.
    pub weights: Vec<u64>,
    pub factors: CyclotomicProduct,
}

impl DenominatorBound {
    pub fn degree(&self) -> usize {
        self.factors.degree()
    }
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != BigInt::from(0)) else {
            return BigInt::from(0);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Direction orthogonal to `d - 1` vectors in `Z^d` (zero if dependent).
fn null_direction(vs: &[Vec<i64>], d: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<i64>> = vs
            .iter()
            .map(|v| v.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let m = if minor.is_empty() { BigInt::from(1) } else { det(&minor) };
        let m = i64::try_from(m).expect("small normals");
        out.push(if j % 2 == 0 { m } else { -m });
    }
    let g = out.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g > 1 {
        for x in &mut out {
            *x /= g;
        }
    }
    out
}

fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
    Polyhedron::matrix_rank(&big)
}

fn combinations(m: usize, r: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, r, cur, f);
            cur.pop();
        }
    }
    rec(0, m, r, &mut Vec::new(), f);
}

/// Facet normals of the recession cone of `(p, pi)` projected to `t`.
fn projected_cone(p: &Pattern, pi: &StrandAssignment, n: usize) -> Vec<Vec<i64>> {
    let sys = homogeneous_system(p, pi, n).expect("valid assignment");
    sys.project_t()
        .constraints()
        .iter()
        .map(|c| {
            c.coeffs()
                .iter()
                .map(|x| i64::try_from(x).expect("small coefficients"))
                .collect()
        })
        .collect()
}

/// The bound `prod_d Phi_d^{m_d}`, where `m_d` is the rank of the rays whose
/// weight is divisible by `d`, together with Bott's `(1 - x)^{n-1}`.
///
/// Every intersection of the projected polyhedra has its recession rays
/// among `rays`, and its lattice-point series has a denominator dividing
/// `prod (1 - x^{w(r)})` over linearly independent subsets of them.
pub fn denominator_bound(p: &Pattern, n: usize) -> DenominatorBound {
    let d = n - 1;
    let cones: Vec<Vec<Vec<i64>>> = feasible_assignments(p, n)
        .iter()
        .map(|pi| projected_cone(p, pi, n))
        .collect();
    let normals: Vec<Vec<i64>> = cones
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
    combinations(normals.len(), d - 1, &mut |idx| {
        let vs: Vec<Vec<i64>> = idx.iter().map(|&i| normals[i].clone()).collect();
        let r = null_direction(&vs, d);
        if r.iter().any(|&x| x != 0) {
            candidates.insert(r.iter().map(|x| -x).collect());
            candidates.insert(r);
        }
    });
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let mut rays = Vec::new();
    for r in candidates {
        let containing: Vec<&Vec<Vec<i64>>> = cones.iter().filter(|c| c.iter().all(|a| dot(a, &r) >= 0)).collect();
        if containing.is_empty() {
            continue;
        }
        let tight: Vec<Vec<i64>> = containing
            .iter()
            .flat_map(|c| c.iter())
            .filter(|a| dot(a, &r) == 0)
            .cloned()
            .collect();
        if rank_i64(&tight) == d - 1 {
            rays.push(r);
        }
    }
    let w = cone_weights(n);
    let weights: Vec<u64> = rays
        .iter()
        .map(|r| r.iter().zip(&w).map(|(&x, &y)| x as u64 * y).sum())
        .collect();
    let mut factors = CyclotomicProduct::new();
    let max_w = weights.iter().copied().max().unwrap_or(1);
    for e in 1..=max_w {
        let sub: Vec<Vec<i64>> = rays
            .iter()
            .zip(&weights)
            .filter(|(_, &a)| a % e == 0)
            .map(|(r, _)| r.clone())
            .collect();
        if !sub.is_empty() {
            factors.set(e, rank_i64(&sub) as u32);
        }
    }
    factors.set(1, factors.multiplicity(1).max(d as u32));
    DenominatorBound { rays, weights, factors }
}

/// Tuning knobs for [`pattern_series_with`].
#[derive(Clone, Debug)]
pub struct SeriesOptions {
    /// Held-out verification coefficients; defaults to `deg(bound) + 8`.
    pub margin: Option<usize>,
    /// Coefficients available to the numerator; defaults to
    /// `2 deg(bound) + 8`.
    pub head: Option<usize>,
    /// Count at least up to this length even if the fit needs fewer terms.
    pub min_length: usize,
    /// How many times to double the numerator allowance after a failed
    /// verification.
    pub retries: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            margin: None,
            head: None,
            min_length: 0,
            retries: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PatternSeries {
    pub containers: RationalFunction,
    pub avoiders: RationalFunction,
    /// Largest length at which the fitted series was checked against counts.
    pub verified_to: usize,
    pub bound: DenominatorBound,
    pub container_counts: Vec<u64>,
}

pub fn pattern_series(p: &Pattern, n: usize) -> Result<PatternSeries> {
    pattern_series_with(p, n, &SeriesOptions::default())
}

/// Count containers far enough to fit them over the denominator bound, and
/// check the fit on `margin` further coefficients.
pub fn pattern_series_with(p: &Pattern, n: usize, opts: &SeriesOptions) -> Result<PatternSeries> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let bound = denominator_bound(p, n);
    let deg = bound.degree();
    let margin = opts.margin.unwrap_or(deg + 8).max(1);
    let mut head = opts.head.unwrap_or(2 * deg + 8).max(deg + 1);
    let mut attempt = 0;
    loop {
        let max_len = (head + margin - 1).max(opts.min_length);
        let counts = container_counts(p, n, max_len);
        let coeffs: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        match fit_rational_factored(&coeffs, &bound.factors, margin) {
            Ok(containers) => {
                let avoiders = bott_series(n, false).sub(&containers);
                return Ok(PatternSeries {
                    containers,
                    avoiders,
                    verified_to: max_len,
                    bound,
                    container_counts: counts,
                });
            }
            Err(e @ Error::FitVerification { .. }) if attempt >= opts.retries => return Err(e),
            Err(Error::FitVerification { .. }) => {
                attempt += 1;
                head *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassKind {
    FinitelyEnumerated,
    Periodic,
    Unbounded,
}

impl ClassKind {
    pub fn from_behavior(kind: BehaviorKind) -> Self {
        match kind {
            BehaviorKind::EventuallyZero => ClassKind::FinitelyEnumerated,
            BehaviorKind::EventuallyPeriodic => ClassKind::Periodic,
            BehaviorKind::Unbounded => ClassKind::Unbounded,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Below,
    Above,
}

/// Which enclosed entries may complete a corner.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CornerRule {
    /// A chain below needs an enclosed third-strand entry, a chain above an
    /// enclosed first-strand entry.
    #[default]
    TypeMatched,
    /// Any enclosed first- or third-strand entry completes either chain.
    AnyWitness,
}

/// A tight corner: strand-2 entries at `pair` (1-based positions) enclose
/// `witness`, and every consecutive strand-2 pair between them is linked
/// in direction `chain_kind` by the matching entry of `links`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerReport {
    pub pair: (usize, usize),
    pub witness: usize,
    pub chain_kind: ChainKind,
    pub chain: Vec<usize>,
    pub links: Vec<usize>,
}

pub fn tight_corner_exists(p: &Pattern, pi: &StrandAssignment) -> Option<CornerReport> {
    tight_corner_with_rule(p, pi, CornerRule::default())
}

pub fn tight_corner_with_rule(p: &Pattern, pi: &StrandAssignment, rule: CornerRule) -> Option<CornerReport> {
    let v = p.values();
    let s = pi.strands();
    let k = v.len();
    let middle: Vec<usize> = (0..k).filter(|&i| s[i] == 2).collect();
    let link = |kind: ChainKind, a: usize, b: usize| -> Option<usize> {
        match kind {
            ChainKind::Below => (b + 1..k).find(|&q| s[q] == 1 && v[q] < v[a] && v[q] < v[b]),
            ChainKind::Above => (0..a).find(|&q| s[q] == 3 && v[q] > v[a] && v[q] > v[b]),
        }
    };
    for ia in 0..middle.len() {
        for ib in ia + 1..middle.len() {
            let (a, b) = (middle[ia], middle[ib]);
            let inside: Vec<usize> = (a + 1..b)
                .filter(|&q| s[q] != 2 && v[a] < v[q] && v[q] < v[b])
                .collect();
            if inside.is_empty() {
                continue;
            }
            for kind in [ChainKind::Below, ChainKind::Above] {
                let wanted = match (rule, kind) {
                    (CornerRule::AnyWitness, _) => None,
                    (CornerRule::TypeMatched, ChainKind::Below) => Some(3),
                    (CornerRule::TypeMatched, ChainKind::Above) => Some(1),
                };
                let Some(&witness) = inside.iter().find(|&&q| wanted.is_none_or(|w| s[q] == w)) else {
                    continue;
                };
                let links: Option<Vec<usize>> = (ia..ib).map(|m| link(kind, middle[m], middle[m + 1])).collect();
                if let Some(links) = links {
                    return Some(CornerReport {
                        pair: (a + 1, b + 1),
                        witness: witness + 1,
                        chain_kind: kind,
                        chain: middle[ia..=ib].iter().map(|x| x + 1).collect(),
                        links: links.iter().map(|x| x + 1).collect(),
                    });
                }
            }
        }
    }
    None
}

/// Feasibility of one strand assignment at `n = 3`, with its tight corner.
#[derive(Clone, Debug, Serialize)]
pub struct AssignmentVerdict {
    pub pi: StrandAssignment,
    pub feasible: bool,
    pub corner: Option<CornerReport>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    StrandCount {
        strands: usize,
    },
    Assignments {
        witness: Option<StrandAssignment>,
        verdicts: Vec<AssignmentVerdict>,
    },
    Series {
        avoiders: RationalFunction,
        behavior: BehaviorReport,
        verified_to: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub kind: ClassKind,
    /// The `n` at which the deciding computation ran.
    pub evaluated_at: usize,
    pub evidence: Evidence,
}

fn guard(p: &Pattern) -> Result<()> {
    p.check_guard(DEFAULT_PATTERN_GUARD)
}

/// Classify from the fitted avoider series.
pub fn classify_series(p: &Pattern, n: usize) -> Result<Classification> {
    classify_series_with(p, n, &SeriesOptions::default())
}

pub fn classify_series_with(p: &Pattern, n: usize, opts: &SeriesOptions) -> Result<Classification> {
    guard(p)?;
    let s = pattern_series_with(p, n, opts)?;
    let behavior = classify_behavior(&s.avoiders);
    Ok(Classification {
        kind: ClassKind::from_behavior(behavior.kind),
        evaluated_at: n,
        evidence: Evidence::Series {
            avoiders: s.avoiders,
            behavior,
            verified_to: s.verified_to,
        },
    })
}

/// Per-assignment feasibility at the trivial cell and tight corners, `n = 3`.
pub fn assignment_verdicts(p: &Pattern) -> Vec<AssignmentVerdict> {
    let bias = Bias::trivial(3);
    let v0 = Pattern::identity(3);
    strand_assignments(p, 3)
        .into_iter()
        .map(|pi| {
            let feasible = build_system(p, &pi, &bias, &v0)
                .map(|s| s.project_t().integer_point_exists())
                .unwrap_or(false);
            let corner = tight_corner_exists(p, &pi);
            AssignmentVerdict { pi, feasible, corner }
        })
        .collect()
}

/// Classify from strand counts, feasibility and tight corners alone.
pub fn classify_combinatorial(p: &Pattern, n: usize) -> Result<Classification> {
    guard(p)?;
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    if n == 2 {
        return classify_series(p, n);
    }
    let strands = p.strand_count();
    if strands != 3 {
        let kind = if strands < 3 {
            ClassKind::FinitelyEnumerated
        } else {
            ClassKind::Unbounded
        };
        return Ok(Classification {
            kind,
            evaluated_at: n,
            evidence: Evidence::StrandCount { strands },
        });
    }
    let verdicts = assignment_verdicts(p);
    let witness = verdicts
        .iter()
        .find(|v| v.feasible && v.corner.is_none())
        .map(|v| v.pi.clone());
    let kind = if witness.is_some() {
        ClassKind::Periodic
    } else {
        ClassKind::Unbounded
    };
    Ok(Classification {
        kind,
        evaluated_at: 3,
        evidence: Evidence::Assignments { witness, verdicts },
    })
}

/// Convexity scan of the container region of one cell.
#[derive(Clone, Debug, Serialize)]
pub struct CellConvexity {
    pub cell: String,
    pub members: usize,
    /// Non-member lattice points lying in the convex hull of members.
    pub violations: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub method: &'static str,
    pub box_size: u64,
    pub cells: Vec<CellConvexity>,
}

impl ConvexityReport {
    pub fn is_convex(&self) -> bool {
        self.cells.iter().all(|c| c.violations.is_empty())
    }
}

fn cross(o: &[i64; 2], a: &[i64; 2], b: &[i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hull_2d(mut pts: Vec<[i64; 2]>) -> Vec<[i64; 2]> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn in_hull(h: &[[i64; 2]], q: &[i64; 2]) -> bool {
    match h.len() {
        0 => false,
        1 => h[0] == *q,
        2 => {
            cross(&h[0], &h[1], q) == 0
                && (h[0][0].min(h[1][0])..=h[0][0].max(h[1][0])).contains(&q[0])
                && (h[0][1].min(h[1][1])..=h[0][1].max(h[1][1])).contains(&q[1])
        }
        m => (0..m).all(|i| cross(&h[i], &h[(i + 1) % m], q) >= 0),
    }
}

/// Scan `{0..box}^{n-1}` in every cell for points outside the container
/// region that lie between points inside it. At `n = 3` the test is exact
/// against the convex hull; for larger `n` only lattice points on segments
/// between members are checked.
pub fn probe_union_convexity(p: &Pattern, n: usize, box_size: u64) -> ConvexityReport {
    let assignments = strand_assignments(p, n);
    let cells_out: Vec<CellConvexity> = cells(n)
        .par_iter()
        .map(|cell| {
            let compiled = compile_cell(p, &assignments, cell);
            let mut members: Vec<Vec<u64>> = Vec::new();
            let mut others: Vec<Vec<u64>> = Vec::new();
            let ones = vec![1u64; n - 1];
            for_each_graded_point(&ones, box_size * (n as u64 - 1), &mut |t, _| {
                if t.iter().all(|&x| x <= box_size) {
                    if compiled.iter().any(|wc| wc.contains(t)) {
                        members.push(t.to_vec());
                    } else {
                        others.push(t.to_vec());
                    }
                }
            });
            let violations = if n == 3 {
                let hull = hull_2d(members.iter().map(|m| [m[0] as i64, m[1] as i64]).collect());
                others
                    .into_iter()
                    .filter(|q| in_hull(&hull, &[q[0] as i64, q[1] as i64]))
                    .collect()
            } else {
                segment_violations(&members)
            };
            CellConvexity {
                cell: cell.to_string(),
                members: members.len(),
                violations,
            }
        })
        .collect();
    ConvexityReport {
        method: if n == 3 { "hull" } else { "segments" },
        box_size,
        cells: cells_out,
    }
}

fn segment_violations(members: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let set: BTreeSet<&Vec<u64>> = members.iter().collect();
    let mut out = BTreeSet::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| y as i64 - x as i64).collect();
            let g = diff.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            for s in 1..g {
                let q: Vec<u64> = a
                    .iter()
                    .zip(&diff)
                    .map(|(&x, &d)| (x as i64 + d / g * s) as u64)
                    .collect();
                if !set.contains(&q) {
                    out.insert(q);
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::avoidance_counts;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn graded_points() {
        let mut seen = Vec::new();
        for_each_graded_point(&[2, 2], 4, &mut |t, w| seen.push((t.to_vec(), w)));
        assert_eq!(seen.len(), 6);
        assert!(seen.contains(&(vec![1, 1], 4)));
    }

    #[test]
    fn descent_containers() {
        assert_eq!(container_counts(&pat("21"), 3, 1), vec![0, 3]);
        assert_eq!(container_counts(&pat("321"), 3, 0), vec![0]);
    }

    #[test]
    fn matches_brute_force_small() {
        for s in ["21", "321", "2431", "24351", "3412", "4321", "12"] {
            let p = pat(s);
            let oracle = avoidance_counts(&p, 3, 9);
            assert_eq!(container_counts(&p, 3, 9), oracle.containers, "{s}");
        }
    }

    #[test]
    fn numerator_may_exceed_bound_degree() {
        let s = pattern_series(&pat("321"), 3).unwrap();
        let oracle = avoidance_counts(&pat("321"), 3, 12);
        let got: Vec<BigInt> = oracle.avoiders.iter().map(|&a| BigInt::from(a)).collect();
        assert_eq!(s.avoiders.expand(12), got);
    }

    #[test]
    fn worked_corner() {
        let p = pat("24351");
        let pi = StrandAssignment::new(&p, 3, vec![2, 3, 2, 2, 1]).unwrap();
        let c = tight_corner_exists(&p, &pi).unwrap();
        assert_eq!(c.pair, (1, 4));
        assert_eq!(c.witness, 2);
        assert_eq!(c.chain_kind, ChainKind::Below);
        assert_eq!(c.chain, vec![1, 3, 4]);
        assert_eq!(c.links, vec![5, 5]);
        let q = pat("321");
        let pi = StrandAssignment::new(&q, 3, vec![3, 2, 1]).unwrap();
        assert!(tight_corner_exists(&q, &pi).is_none());
    }

    #[test]
    fn hull_membership() {
        let h = hull_2d(vec![[0, 0], [2, 0], [0, 2]]);
        assert!(in_hull(&h, &[1, 1]));
        assert!(!in_hull(&h, &[2, 1]));
    }
}

//! Strand assignments, shifts, and the polyhedra cut out by pattern
//! containment inside a single cell.
//!
//! Inside cell `(b, v)` an element is a point `t` of the nonnegative orthant.
//! Fix a pattern `p` of size `k` and a strand assignment `pi`; an occurrence
//! is pinned down by the window differences `c_i` between consecutive
//! entries. The occurrences form the integer points of a polyhedron in the
//! variables `t_1..t_{n-1}, c_1..c_{k-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abacus::{AbacusCoords, Bias, CellKey};
use crate::affine::Pattern;
use crate::error::{Error, Result};
use crate::polyhedra::{Constraint, Polyhedron};

/// Strand (1-based) of each pattern entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrandAssignment(Vec<usize>);

impl StrandAssignment {
    /// Accepts `strands` if it has one entry in `1..=n` per pattern entry and
    /// every inversion of `p` moves to a strictly lower strand.
    pub fn new(p: &Pattern, n: usize, strands: Vec<usize>) -> Result<Self> {
        if strands.len() != p.len() {
            return Err(Error::DimensionMismatch {
                what: "strand assignment",
                expected: p.len(),
                got: strands.len(),
            });
        }
        if strands.iter().any(|&s| s == 0 || s > n) {
            return Err(Error::InvalidStrandAssignment(strands));
        }
        let v = p.values();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] && strands[i] <= strands[j] {
                    return Err(Error::InvalidStrandAssignment(strands));
                }
            }
        }
        Ok(StrandAssignment(strands))
    }

    pub fn strands(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Strand of the 1-based entry `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn max_strand(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for StrandAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Every valid strand assignment of `p` into `n` strands, in lexicographic
/// order.
pub fn strand_assignments(p: &Pattern, n: usize) -> Vec<StrandAssignment> {
    fn rec(v: &[usize], n: usize, cur: &mut Vec<usize>, out: &mut Vec<StrandAssignment>) {
        let m = cur.len();
        if m == v.len() {
            out.push(StrandAssignment(cur.clone()));
            return;
        }
        for s in 1..=n {
            let ok = (0..m).all(|i| v[i] < v[m] || cur[i] > s);
            if ok {
                cur.push(s);
                rec(v, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p.values(), n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftKind {
    Up,
    Down,
}

/// A pair of consecutive values that forces a change of strand. Positions
/// are 1-based with `earlier < later`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shift {
    pub kind: ShiftKind,
    pub earlier: usize,
    pub later: usize,
}

impl Shift {
    /// `(lower, higher)` strand of the pair; the earlier entry always sits
    /// on the higher strand.
    fn strands(&self, pi: &StrandAssignment) -> (usize, usize) {
        (pi.at(self.later), pi.at(self.earlier))
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ShiftKind::Up => "upshift",
            ShiftKind::Down => "downshift",
        };
        write!(f, "{name} ({}<{})", self.earlier, self.later)
    }
}

/// Upshifts and downshifts of `(p, pi)`, ordered by the smaller value.
pub fn shifts(p: &Pattern, pi: &StrandAssignment) -> Vec<Shift> {
    let inv = p.inverse();
    let k = p.len();
    let mut out = Vec::new();
    for value in 1..k {
        let lo = inv.at(value);
        let hi = inv.at(value + 1);
        if hi < lo {
            // larger value earlier
            if pi.at(hi) > pi.at(lo) {
                out.push(Shift {
                    kind: ShiftKind::Up,
                    earlier: hi,
                    later: lo,
                });
            }
        } else if pi.at(lo) > pi.at(hi) {
            out.push(Shift {
                kind: ShiftKind::Down,
                earlier: lo,
                later: hi,
            });
        }
    }
    out
}

/// Minimal window difference between entries `i` and `i + 1` (1-based).
fn step_minimum(pi: &StrandAssignment, v: &Pattern, i: usize) -> i64 {
    let inv = v.inverse();
    if inv.at(pi.at(i)) < inv.at(pi.at(i + 1)) {
        0
    } else {
        1
    }
}

/// Variable names `t1..t{n-1}, c1..c{k-1}`.
pub fn variable_names(n: usize, k: usize) -> Vec<String> {
    (1..n)
        .map(|i| format!("t{i}"))
        .chain((1..k).map(|i| format!("c{i}")))
        .collect()
}

/// The `(t, c)` system of one `(p, pi)` in one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    pub n: usize,
    pub k: usize,
    pub polyhedron: Polyhedron,
}

impl InequalitySystem {
    /// Eliminate the `c` variables and drop redundant constraints.
    pub fn project_t(&self) -> Polyhedron {
        self.polyhedron.project_onto_prefix(self.n - 1).remove_redundant()
    }

    pub fn to_text(&self) -> String {
        self.polyhedron.to_text()
    }
}

fn check_inputs(p: &Pattern, pi: &StrandAssignment, n: usize, v: &Pattern) -> Result<()> {
    StrandAssignment::new(p, n, pi.0.clone())?;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            what: "flattening",
            expected: n,
            got: v.len(),
        });
    }
    Ok(())
}

/// Build the system of `(p, pi)` in cell `(bias, v)`. With `homogeneous`
/// every right-hand side is zero, which leaves the recession cone.
fn assemble(
    p: &Pattern,
    pi: &StrandAssignment,
    bias: &Bias,
    v: &Pattern,
    homogeneous: bool,
) -> Result<InequalitySystem> {
    let n = bias.n();
    check_inputs(p, pi, n, v)?;
    let k = p.len();
    let dim = (n - 1) + (k - 1);
    let mut poly = Polyhedron::universe(variable_names(n, k));
    let t_col = |s: usize| s - 1;
    let c_col = |i: usize| n - 1 + i - 1;
    let scale = |b: i64| if homogeneous { 0 } else { b };

    for s in shifts(p, pi) {
        let (lo, hi) = s.strands(pi);
        let floor = bias.floor_sum(lo, hi);
        let mut a = vec![0i64; dim];
        match s.kind {
            ShiftKind::Up => {
                // t_lo + .. + t_{hi-1} + floor >= c_e + .. + c_{l-1}
                for st in lo..hi {
                    a[t_col(st)] += 1;
                }
                for i in s.earlier..s.later {
                    a[c_col(i)] -= 1;
                }
                poly.push(Constraint::ge(&a, scale(-floor)))?;
            }
            ShiftKind::Down => {
                // t_lo + .. + t_{hi-1} + floor <= c_e + .. + c_{l-1} - 1
                for st in lo..hi {
                    a[t_col(st)] -= 1;
                }
                for i in s.earlier..s.later {
                    a[c_col(i)] += 1;
                }
                poly.push(Constraint::ge(&a, scale(floor + 1)))?;
            }
        }
    }
    for i in 1..k {
        let mut a = vec![0i64; dim];
        a[c_col(i)] = 1;
        poly.push(Constraint::ge(&a, scale(step_minimum(pi, v, i))))?;
    }
    for s in 1..n {
        let mut a = vec![0i64; dim];
        a[t_col(s)] = 1;
        poly.push(Constraint::ge(&a, 0))?;
    }
    Ok(InequalitySystem { n, k, polyhedron: poly })
}

pub fn build_system(p: &Pattern, pi: &StrandAssignment, bias: &Bias, v: &Pattern) -> Result<InequalitySystem> {
    assemble(p, pi, bias, v, false)
}

/// Same coefficients with zero right-hand sides: the recession cone, which
/// does not depend on the cell.
pub fn homogeneous_system(p: &Pattern, pi: &StrandAssignment, n: usize) -> Result<InequalitySystem> {
    assemble(p, pi, &Bias::trivial(n), &Pattern::identity(n), true)
}

/// `(p, pi)` compiled for fast membership tests at many `t` in one cell.
///
/// For fixed `t` the system is a set of difference constraints on the
/// partial sums `S_i = c_1 + ... + c_i`, so feasibility is the absence of a
/// positive cycle and the least solution is a longest-path computation.
#[derive(Clone, Debug)]
pub struct WindowConstraints {
    k: usize,
    step_min: Vec<i64>,
    /// `(earlier, later, strand lo, strand hi, floor)`, 0-based entries.
    ups: Vec<(usize, usize, usize, usize, i64)>,
    downs: Vec<(usize, usize, usize, usize, i64)>,
}

impl WindowConstraints {
    pub fn new(p: &Pattern, pi: &StrandAssignment, bias: &Bias, v: &Pattern) -> Result<Self> {
        check_inputs(p, pi, bias.n(), v)?;
        let k = p.len();
        let step_min = (1..k).map(|i| step_minimum(pi, v, i)).collect();
        let mut ups = Vec::new();
        let mut downs = Vec::new();
        for s in shifts(p, pi) {
            let (lo, hi) = s.strands(pi);
            let entry = (s.earlier - 1, s.later - 1, lo, hi, bias.floor_sum(lo, hi));
            match s.kind {
                ShiftKind::Up => ups.push(entry),
                ShiftKind::Down => downs.push(entry),
            }
        }
        Ok(WindowConstraints {
            k,
            step_min,
            ups,
            downs,
        })
    }

    /// Least window differences `c` realizing an occurrence at `t`, if any.
    pub fn minimal_windows(&self, t: &[u64]) -> Option<Vec<i64>> {
        let k = self.k;
        // prefix[s] = t_1 + ... + t_s
        let mut prefix = vec![0i64; t.len() + 1];
        for (s, &x) in t.iter().enumerate() {
            prefix[s + 1] = prefix[s] + x as i64;
        }
        let tsum = |lo: usize, hi: usize| prefix[hi - 1] - prefix[lo - 1];
        // edges (from, to, weight): S_to >= S_from + weight
        let mut edges: Vec<(usize, usize, i64)> = Vec::with_capacity(k + self.ups.len() + self.downs.len());
        for (i, &m) in self.step_min.iter().enumerate() {
            edges.push((i, i + 1, m));
        }
        for &(e, l, lo, hi, fl) in &self.downs {
            edges.push((e, l, tsum(lo, hi) + fl + 1));
        }
        for &(e, l, lo, hi, fl) in &self.ups {
            edges.push((l, e, -(tsum(lo, hi) + fl)));
        }
        let mut dist = vec![i64::MIN; k];
        dist[0] = 0;
        for round in 0..=k {
            let mut changed = false;
            for &(a, b, w) in &edges {
                if dist[a] != i64::MIN && dist[a] + w > dist[b] {
                    dist[b] = dist[a] + w;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            if round == k || dist[0] > 0 {
                return None;
            }
        }
        Some(dist.windows(2).map(|w| w[1] - w[0]).collect())
    }

    pub fn contains(&self, t: &[u64]) -> bool {
        self.minimal_windows(t).is_some()
    }
}

/// Whether the element with abacus coordinates `coords` and flattening `v`
/// contains `p` along strand assignment `pi`.
pub fn member(coords: &AbacusCoords, p: &Pattern, pi: &StrandAssignment, v: &Pattern) -> Result<bool> {
    Ok(WindowConstraints::new(p, pi, &coords.bias, v)?.contains(&coords.t))
}

/// Everything about one `(p, pi)` in one cell, for display.
#[derive(Clone, Debug)]
pub struct CellReport {
    pub cell: CellKey,
    pub pi: StrandAssignment,
    pub shifts: Vec<Shift>,
    pub system: InequalitySystem,
    pub projected: Polyhedron,
    pub integer_feasible: bool,
}

pub fn cell_report(p: &Pattern, pi: &StrandAssignment, cell: &CellKey) -> Result<CellReport> {
    let system = build_system(p, pi, &cell.bias, &cell.flattening)?;
    let projected = system.project_t();
    let integer_feasible = projected.integer_point_exists();
    Ok(CellReport {
        cell: cell.clone(),
        pi: pi.clone(),
        shifts: shifts(p, pi),
        system,
        projected,
        integer_feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::cone_coords;
    use crate::affine::AffinePermutation;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn pi(p: &Pattern, n: usize, s: &[usize]) -> StrandAssignment {
        StrandAssignment::new(p, n, s.to_vec()).unwrap()
    }

    #[test]
    fn worked_shifts() {
        let p = pat("24351");
        let a = pi(&p, 3, &[2, 3, 2, 2, 1]);
        let got: Vec<String> = shifts(&p, &a).iter().map(ToString::to_string).collect();
        assert_eq!(got, vec!["upshift (1<5)", "upshift (2<3)", "downshift (2<4)"]);
    }

    #[test]
    fn worked_system() {
        let p = pat("24351");
        let a = pi(&p, 3, &[2, 3, 2, 2, 1]);
        let sys = build_system(&p, &a, &Bias::trivial(3), &Pattern::identity(3)).unwrap();
        let expected = Polyhedron::parse(
            variable_names(3, 5),
            "1*t1 + -1*c1 + -1*c2 + -1*c3 + -1*c4 >= 0
             1*t2 + -1*c2 >= 0
             -1*t2 + 1*c2 + 1*c3 >= 1
             1*c1 >= 0
             1*c2 >= 1
             1*c3 >= 1
             1*c4 >= 1
             1*t1 >= 0
             1*t2 >= 0",
        )
        .unwrap();
        assert_eq!(sys.to_text(), expected.to_text());
    }

    #[test]
    fn witness_for_worked_instance() {
        let p = pat("24351");
        let a = pi(&p, 3, &[2, 3, 2, 2, 1]);
        let w = AffinePermutation::new(vec![-9, 4, 11]).unwrap();
        let coords = cone_coords(&w).unwrap();
        let wc = WindowConstraints::new(&p, &a, &coords.bias, &Pattern::identity(3)).unwrap();
        assert_eq!(wc.minimal_windows(&coords.t), Some(vec![0, 1, 2, 1]));
        assert!(member(&coords, &p, &a, &Pattern::identity(3)).unwrap());
    }

    #[test]
    fn assignments_respect_inversions() {
        let p = pat("321");
        let all = strand_assignments(&p, 3);
        assert_eq!(all, vec![pi(&p, 3, &[3, 2, 1])]);
        assert!(strand_assignments(&p, 2).is_empty());
        assert!(StrandAssignment::new(&p, 3, vec![3, 3, 1]).is_err());
        assert_eq!(strand_assignments(&pat("12"), 2).len(), 4);
    }

    #[test]
    fn warning_pattern_has_one_assignment() {
        let p = pat("8,2,1,5,6,3,9,11,7,10,4");
        assert_eq!(strand_assignments(&p, 3).len(), 1);
    }

    #[test]
    fn homogeneous_bounds_are_zero() {
        let p = pat("24351");
        let a = pi(&p, 3, &[2, 3, 2, 2, 1]);
        let sys = homogeneous_system(&p, &a, 3).unwrap();
        assert!(sys.polyhedron.constraints().iter().all(|c| c.bound() == &0.into()));
    }
}

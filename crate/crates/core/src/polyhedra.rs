//! Exact rational polyhedra in H-representation.
//!
//! Constraints are stored as `a . x >= b` with integer data. Projection is
//! Fourier-Motzkin elimination with history-based pruning, generators come
//! from the double description method, and integer questions are answered
//! by a bounded search along a chain of projections.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
}

/// `coeffs . x >= bound`, scaled so that the gcd of all entries is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    coeffs: Vec<BigInt>,
    bound: BigInt,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigInt>, relation: Relation, bound: BigInt) -> Self {
        let (coeffs, bound) = match relation {
            Relation::Ge => (coeffs, bound),
            Relation::Le => (coeffs.into_iter().map(|c| -c).collect(), -bound),
        };
        Constraint { coeffs, bound }.normalized()
    }

    pub fn ge(coeffs: &[i64], bound: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect(), Relation::Ge, bound.into())
    }

    pub fn le(coeffs: &[i64], bound: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect(), Relation::Le, bound.into())
    }

    fn contradiction(dim: usize) -> Self {
        Constraint {
            coeffs: vec![BigInt::zero(); dim],
            bound: BigInt::one(),
        }
    }

    fn normalized(mut self) -> Self {
        if self.coeffs.iter().all(Zero::is_zero) {
            self.bound = if self.bound.is_positive() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            return self;
        }
        let g = self.coeffs.iter().fold(self.bound.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.bound /= &g;
        }
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.bound.is_positive()
    }

    pub fn is_contradiction(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && self.bound.is_positive()
    }

    fn dot(&self, x: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn satisfied_by(&self, x: &[BigInt]) -> bool {
        self.dot(x) >= self.bound
    }

    pub fn satisfied_by_rational(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self
            .coeffs
            .iter()
            .zip(x)
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .sum();
        lhs >= BigRational::from_integer(self.bound.clone())
    }

    /// Primitive direction and the matching rational threshold.
    fn direction(&self) -> (Vec<BigInt>, BigInt, BigInt) {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let dir = self.coeffs.iter().map(|c| c / &g).collect();
        (dir, self.bound.clone(), g)
    }

    /// Same halfspace over the integers, with the bound rounded up.
    fn tightened(&self) -> Constraint {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Constraint {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
            bound: Integer::div_ceil(&self.bound, &g),
        }
    }

    fn without(&self, j: usize) -> Constraint {
        let mut coeffs = self.coeffs.clone();
        coeffs.remove(j);
        Constraint {
            coeffs,
            bound: self.bound.clone(),
        }
        .normalized()
    }

    fn extended(&self, extra: usize) -> Constraint {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(std::iter::repeat(BigInt::zero()).take(extra));
        Constraint {
            coeffs,
            bound: self.bound.clone(),
        }
    }

    /// Render as `1*t1 + -1*c2 >= 0`, omitting zero terms.
    pub fn render(&self, names: &[String]) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| format!("{c}*{v}"))
            .collect();
        let lhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        format!("{lhs} >= {}", self.bound)
    }
}

#[derive(Clone, Debug, Default)]
struct Bits(Vec<u64>);

impl Bits {
    fn single(i: usize) -> Self {
        let mut v = vec![0u64; i / 64 + 1];
        v[i / 64] |= 1 << (i % 64);
        Bits(v)
    }

    fn union(&self, other: &Bits) -> Bits {
        let len = self.0.len().max(other.0.len());
        Bits(
            (0..len)
                .map(|i| self.0.get(i).copied().unwrap_or(0) | other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone, Debug)]
struct Row {
    c: Constraint,
    hist: Bits,
}

/// Drop trivial rows and keep only the tightest of parallel rows. Returns
/// `None` if a contradiction appears.
fn simplify(rows: Vec<Row>) -> Option<Vec<Row>> {
    dedupe(rows, true)
}

/// With `strict`, a contradiction collapses the whole system; otherwise
/// contradictions are kept as ordinary rows so the recession cone survives.
fn dedupe(rows: Vec<Row>, strict: bool) -> Option<Vec<Row>> {
    let mut out: Vec<Row> = Vec::with_capacity(rows.len());
    let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
    for row in rows {
        if row.c.is_contradiction() {
            if strict {
                return None;
            }
            if !out.iter().any(|r| r.c.is_contradiction()) {
                out.push(row);
            }
            continue;
        }
        if row.c.is_trivial() {
            continue;
        }
        let (dir, b, g) = row.c.direction();
        match index.get(&dir) {
            None => {
                index.insert(dir, out.len());
                out.push(row);
            }
            Some(&k) => {
                let (_, b0, g0) = out[k].c.direction();
                // compare b / g against b0 / g0
                let lhs = &b * &g0;
                let rhs = &b0 * &g;
                if lhs > rhs || (lhs == rhs && row.hist.count() < out[k].hist.count()) {
                    out[k] = row;
                }
            }
        }
    }
    if !strict {
        return Some(out);
    }
    // Opposite directions can collide into a contradiction: a.x >= b and
    // -a.x >= b' with b + b' > 0 (after scaling).
    for i in 0..out.len() {
        let (dir, b, g) = out[i].c.direction();
        let neg: Vec<BigInt> = dir.iter().map(|c| -c).collect();
        if let Some(&k) = index.get(&neg) {
            let (_, b2, g2) = out[k].c.direction();
            if (&b * &g2 + &b2 * &g).is_positive() {
                return None;
            }
        }
    }
    Some(out)
}

/// One Fourier-Motzkin step removing column `j`. `eliminated` is the number
/// of columns removed before this step; rows built from more than
/// `eliminated + 2` originals are redundant and skipped.
fn fm_step(rows: Vec<Row>, j: usize, eliminated: usize) -> Option<Vec<Row>> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for r in rows {
        match r.c.coeffs[j].sign() {
            num_bigint::Sign::Plus => pos.push(r),
            num_bigint::Sign::Minus => neg.push(r),
            num_bigint::Sign::NoSign => out.push(Row {
                c: r.c.without(j),
                hist: r.hist,
            }),
        }
    }
    let limit = eliminated + 2;
    for p in &pos {
        for q in &neg {
            let hist = p.hist.union(&q.hist);
            if hist.count() > limit {
                continue;
            }
            let ap = &p.c.coeffs[j];
            let aq = -&q.c.coeffs[j];
            let coeffs: Vec<BigInt> =
                p.c.coeffs
                    .iter()
                    .zip(&q.c.coeffs)
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, (x, y))| x * &aq + y * ap)
                    .collect();
            let bound = &p.c.bound * &aq + &q.c.bound * ap;
            out.push(Row {
                c: Constraint { coeffs, bound }.normalized(),
                hist,
            });
        }
    }
    simplify(out)
}

fn rows_of(constraints: &[Constraint]) -> Vec<Row> {
    constraints
        .iter()
        .enumerate()
        .map(|(i, c)| Row {
            c: c.clone(),
            hist: Bits::single(i),
        })
        .collect()
}

/// Vertices and extreme rays of a pointed polyhedron.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Generators {
    pub vertices: Vec<Vec<BigRational>>,
    pub rays: Vec<Vec<BigInt>>,
}

/// Linear grading `weights . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub weights: Vec<i64>,
    pub constant: i64,
}

/// A polyhedron `{x : a_i . x >= b_i}` over named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    names: Vec<String>,
    constraints: Vec<Constraint>,
}

impl Polyhedron {
    /// The whole space over the given variables.
    pub fn universe(names: Vec<String>) -> Self {
        Polyhedron {
            names,
            constraints: Vec::new(),
        }
    }

    /// Variables named `x1, ..., xd`.
    pub fn with_dim(d: usize) -> Self {
        Self::universe((1..=d).map(|i| format!("x{i}")).collect())
    }

    pub fn from_constraints(names: Vec<String>, constraints: Vec<Constraint>) -> Result<Self> {
        let mut p = Self::universe(names);
        for c in constraints {
            p.push(c)?;
        }
        Ok(p)
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        if c.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "constraint",
                expected: self.dim(),
                got: c.dim(),
            });
        }
        let mut rows = rows_of(&self.constraints);
        rows.push(Row {
            c,
            hist: Bits::default(),
        });
        self.set_rows(dedupe(rows, false));
        Ok(())
    }

    fn set_rows(&mut self, rows: Option<Vec<Row>>) {
        self.constraints = match rows {
            Some(rows) => rows.into_iter().map(|r| r.c).collect(),
            None => vec![Constraint::contradiction(self.dim())],
        };
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Whether the system contains the explicit contradiction `0 >= 1`.
    pub fn is_marked_infeasible(&self) -> bool {
        self.constraints.iter().any(Constraint::is_contradiction)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    pub fn contains_i64(&self, x: &[i64]) -> bool {
        let x: Vec<BigInt> = x.iter().map(|&v| v.into()).collect();
        self.contains(&x)
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by_rational(x))
    }

    /// Eliminate the listed columns, choosing at each step the column that
    /// creates the fewest new rows.
    pub fn eliminate(&self, vars: &[usize]) -> Polyhedron {
        let mut names = self.names.clone();
        let mut live: Vec<usize> = (0..self.dim()).collect();
        let mut pending: Vec<usize> = vars.to_vec();
        pending.sort_unstable();
        pending.dedup();
        let mut rows = Some(rows_of(&self.constraints));
        let mut step = 0;
        while !pending.is_empty() {
            let Some(current) = rows.as_ref() else {
                for v in pending.drain(..) {
                    let col = live.iter().position(|&x| x == v).unwrap();
                    live.remove(col);
                    names.remove(col);
                }
                break;
            };
            let (pick, _) = pending
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let col = live.iter().position(|&x| x == v).unwrap();
                    let pos = current.iter().filter(|r| r.c.coeffs[col].is_positive()).count();
                    let neg = current.iter().filter(|r| r.c.coeffs[col].is_negative()).count();
                    (k, pos * neg)
                })
                .min_by_key(|&(_, cost)| cost)
                .unwrap();
            let v = pending.remove(pick);
            let col = live.iter().position(|&x| x == v).unwrap();
            rows = fm_step(rows.unwrap(), col, step);
            live.remove(col);
            names.remove(col);
            step += 1;
        }
        let mut out = Polyhedron::universe(names);
        out.set_rows(rows);
        out
    }

    /// Keep the first `keep` variables.
    pub fn project_onto_prefix(&self, keep: usize) -> Polyhedron {
        let vars: Vec<usize> = (keep..self.dim()).collect();
        self.eliminate(&vars)
    }

    pub fn is_rationally_feasible(&self) -> bool {
        if self.is_marked_infeasible() {
            return false;
        }
        let all: Vec<usize> = (0..self.dim()).collect();
        !self.eliminate(&all).is_marked_infeasible()
    }

    /// Infimum of `a . x` over the polyhedron: `None` if the polyhedron is
    /// empty, `Some(None)` if unbounded below.
    pub fn minimize(&self, a: &[BigInt]) -> Option<Option<BigRational>> {
        let d = self.dim();
        let mut names = self.names.clone();
        names.push("_z".into());
        let mut rows: Vec<Constraint> = self.constraints.iter().map(|c| c.extended(1)).collect();
        let mut up: Vec<BigInt> = a.iter().map(|c| -c).collect();
        up.push(BigInt::one());
        let mut down: Vec<BigInt> = a.to_vec();
        down.push(-BigInt::one());
        rows.push(Constraint::new(up, Relation::Ge, BigInt::zero()));
        rows.push(Constraint::new(down, Relation::Ge, BigInt::zero()));
        let lifted = Polyhedron {
            names,
            constraints: rows,
        };
        let all: Vec<usize> = (0..d).collect();
        let z = lifted.eliminate(&all);
        if z.is_marked_infeasible() {
            return None;
        }
        let mut best: Option<BigRational> = None;
        for c in &z.constraints {
            let a = &c.coeffs[0];
            if a.is_positive() {
                let lb = BigRational::new(c.bound.clone(), a.clone());
                if best.as_ref().is_none_or(|b| &lb > b) {
                    best = Some(lb);
                }
            }
        }
        Some(best)
    }

    /// Drop every constraint implied by the others.
    pub fn remove_redundant(&self) -> Polyhedron {
        if self.is_marked_infeasible() {
            return self.clone();
        }
        let mut kept = self.constraints.clone();
        let mut i = 0;
        while i < kept.len() {
            let mut others = kept.clone();
            let c = others.remove(i);
            let rest = Polyhedron {
                names: self.names.clone(),
                constraints: others.clone(),
            };
            match rest.minimize(&c.coeffs) {
                None => {
                    let mut out = Polyhedron::universe(self.names.clone());
                    out.set_rows(None);
                    return out;
                }
                Some(Some(m)) if m >= BigRational::from_integer(c.bound.clone()) => {
                    kept = others;
                }
                _ => i += 1,
            }
        }
        let mut out = Polyhedron {
            names: self.names.clone(),
            constraints: kept,
        };
        out.sort_canonical();
        out
    }

    /// Descending lexicographic order by coefficient vector, then bound.
    pub fn sort_canonical(&mut self) {
        self.constraints
            .sort_by(|a, b| b.coeffs.cmp(&a.coeffs).then_with(|| b.bound.cmp(&a.bound)));
    }

    pub(crate) fn matrix_rank(rows: &[Vec<BigInt>]) -> usize {
        let mut m: Vec<Vec<BigInt>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank].clone();
            for r in 0..m.len() {
                if r == rank || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                let row: Vec<BigInt> = m[r].iter().zip(&pivot).map(|(x, y)| x * &pivot[col] - y * &f).collect();
                let g = row.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
                m[r] = if g.is_zero() || g.is_one() {
                    row
                } else {
                    row.into_iter().map(|c| c / &g).collect()
                };
            }
            rank += 1;
        }
        rank
    }

    pub fn is_pointed(&self) -> bool {
        let a: Vec<Vec<BigInt>> = self.constraints.iter().map(|c| c.coeffs.clone()).collect();
        self.dim() == 0 || Self::matrix_rank(&a) == self.dim()
    }

    /// Extreme rays of the homogenized cone `{(x, l) : a.x - b l >= 0, l >= 0}`.
    fn homogenized_rays(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        let d = self.dim() + 1;
        let mut rows: Vec<Vec<BigInt>> = self
            .constraints
            .iter()
            .map(|c| {
                let mut r = c.coeffs.clone();
                r.push(-&c.bound);
                r
            })
            .collect();
        let mut lambda = vec![BigInt::zero(); d];
        lambda[d - 1] = BigInt::one();
        rows.insert(0, lambda);

        // Greedy basis.
        let mut basis: Vec<usize> = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let mut trial: Vec<Vec<BigInt>> = basis.iter().map(|&k| rows[k].clone()).collect();
            trial.push(r.clone());
            if Self::matrix_rank(&trial) == trial.len() {
                basis.push(i);
                if basis.len() == d {
                    break;
                }
            }
        }
        debug_assert_eq!(basis.len(), d);
        let b: Vec<Vec<BigInt>> = basis.iter().map(|&k| rows[k].clone()).collect();
        let inv = invert(&b);
        let mut rays: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                let col: Vec<BigRational> = (0..d).map(|i| inv[i][j].clone()).collect();
                let l = col.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                primitive(
                    col.iter()
                        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                        .collect(),
                )
            })
            .collect();
        let mut processed: Vec<usize> = basis.clone();

        for (i, row) in rows.iter().enumerate() {
            if basis.contains(&i) {
                continue;
            }
            let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, r)).collect();
            let mut next: Vec<Vec<BigInt>> = Vec::new();
            let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
            for (k, r) in rays.iter().enumerate() {
                if !vals[k].is_negative() {
                    next.push(r.clone());
                }
            }
            let zero_sets: Vec<Vec<usize>> = rays
                .iter()
                .map(|r| {
                    processed
                        .iter()
                        .copied()
                        .filter(|&q| dot(&rows[q], r).is_zero())
                        .collect()
                })
                .collect();
            for &p in &pos {
                for &q in &neg {
                    let common: Vec<usize> = zero_sets[p]
                        .iter()
                        .copied()
                        .filter(|x| zero_sets[q].contains(x))
                        .collect();
                    if common.len() + 2 < d {
                        continue;
                    }
                    let m: Vec<Vec<BigInt>> = common.iter().map(|&c| rows[c].clone()).collect();
                    if Self::matrix_rank(&m) != d - 2 {
                        continue;
                    }
                    let a = &vals[p];
                    let b = -&vals[q];
                    let new: Vec<BigInt> = rays[p].iter().zip(&rays[q]).map(|(x, y)| x * &b + y * a).collect();
                    next.push(primitive(new));
                }
            }
            next.sort();
            next.dedup();
            rays = next;
            processed.push(i);
        }
        Ok(rays)
    }

    /// Vertices and extreme rays; an empty polyhedron has no generators.
    pub fn vertices_and_rays(&self) -> Result<Generators> {
        if self.dim() == 0 {
            let feasible = !self.is_marked_infeasible();
            return Ok(Generators {
                vertices: if feasible { vec![Vec::new()] } else { Vec::new() },
                rays: Vec::new(),
            });
        }
        let rays = self.homogenized_rays()?;
        let d = self.dim();
        let mut out = Generators::default();
        for r in &rays {
            let l = &r[d];
            if l.is_positive() {
                out.vertices
                    .push(r[..d].iter().map(|x| BigRational::new(x.clone(), l.clone())).collect());
            }
        }
        if out.vertices.is_empty() {
            return Ok(Generators::default());
        }
        out.rays = rays
            .into_iter()
            .filter(|r| r[d].is_zero())
            .map(|mut r| {
                r.pop();
                r
            })
            .collect();
        out.vertices.sort();
        out.rays.sort();
        Ok(out)
    }

    /// Extreme rays of the recession cone `{x : a_i . x >= 0}`; defined even
    /// when the polyhedron itself is empty.
    pub fn recession_rays(&self) -> Result<Vec<Vec<BigInt>>> {
        if self.dim() == 0 {
            return Ok(Vec::new());
        }
        let d = self.dim();
        let mut rays: Vec<Vec<BigInt>> = self
            .homogenized_rays()?
            .into_iter()
            .filter(|r| r[d].is_zero())
            .map(|mut r| {
                r.pop();
                r
            })
            .collect();
        rays.sort();
        Ok(rays)
    }

    /// Whether `e_i` is a ray of the polyhedron: it has an integer point and
    /// every constraint is nondecreasing along coordinate `i`.
    pub fn has_ray_direction(&self, i: usize) -> bool {
        self.constraints.iter().all(|c| !c.coeffs[i].is_negative()) && self.integer_point_exists()
    }

    pub fn integer_point_exists(&self) -> bool {
        self.find_integer_point().is_some()
    }

    pub fn find_integer_point(&self) -> Option<Vec<BigInt>> {
        if !self.is_rationally_feasible() {
            return None;
        }
        let d = self.dim();
        if d == 0 {
            return Some(Vec::new());
        }
        if !self.is_pointed() {
            // x = y - z with y, z >= 0
            let mut names: Vec<String> = self.names.iter().map(|n| format!("{n}+")).collect();
            names.extend(self.names.iter().map(|n| format!("{n}-")));
            let mut lifted = Polyhedron::universe(names);
            for c in &self.constraints {
                let mut coeffs = c.coeffs.clone();
                coeffs.extend(c.coeffs.iter().map(|a| -a));
                lifted.constraints.push(Constraint {
                    coeffs,
                    bound: c.bound.clone(),
                });
            }
            for i in 0..2 * d {
                let mut e = vec![0i64; 2 * d];
                e[i] = 1;
                lifted.constraints.push(Constraint::ge(&e, 0));
            }
            let y = lifted.find_integer_point()?;
            return Some((0..d).map(|i| &y[i] - &y[d + i]).collect());
        }
        let gens = self.vertices_and_rays().ok()?;
        let mut boxed = self.clone();
        for i in 0..d {
            let ray_lo: BigInt = gens.rays.iter().map(|r| r[i].clone().min(BigInt::zero())).sum();
            let ray_hi: BigInt = gens.rays.iter().map(|r| r[i].clone().max(BigInt::zero())).sum();
            let lo = gens.vertices.iter().map(|v| v[i].floor().to_integer()).min()? + ray_lo;
            let hi = gens.vertices.iter().map(|v| v[i].ceil().to_integer()).max()? + ray_hi;
            let mut e = vec![BigInt::zero(); d];
            e[i] = BigInt::one();
            boxed.constraints.push(Constraint::new(e.clone(), Relation::Ge, lo));
            boxed.constraints.push(Constraint::new(e, Relation::Le, hi));
        }
        let chain = boxed.projection_chain();
        let mut found = None;
        let _ = search_chain(&chain, &mut Vec::new(), &mut |x| {
            found = Some(x.to_vec());
            true
        });
        found
    }

    /// `chain[j]` involves only the first `j + 1` variables, with integer
    /// tightened bounds.
    fn projection_chain(&self) -> Vec<Vec<Constraint>> {
        let d = self.dim();
        let mut chain = vec![Vec::new(); d];
        let mut rows = Some(rows_of(&self.constraints));
        for j in (0..d).rev() {
            let current = match rows {
                Some(r) => r,
                None => vec![Row {
                    c: Constraint::contradiction(j + 1),
                    hist: Bits::default(),
                }],
            };
            chain[j] = current.iter().map(|r| r.c.tightened()).collect();
            rows = fm_step(current, j, d - 1 - j);
        }
        chain
    }

    /// Integer points with `weights . x + constant = l` for each `l <= max_len`.
    pub fn count_by_weight(&self, grading: &Grading, max_len: usize) -> Result<Vec<u64>> {
        if grading.weights.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "grading",
                expected: self.dim(),
                got: grading.weights.len(),
            });
        }
        if let Some(&w) = grading.weights.iter().find(|&&w| w <= 0) {
            return Err(Error::NonPositiveWeight(w));
        }
        let mut counts = vec![0u64; max_len + 1];
        if self.dim() == 0 {
            if !self.is_marked_infeasible() && grading.constant >= 0 && grading.constant as usize <= max_len {
                counts[grading.constant as usize] = 1;
            }
            return Ok(counts);
        }
        let mut capped = self.clone();
        capped
            .constraints
            .push(Constraint::le(&grading.weights, max_len as i64 - grading.constant));
        let chain = capped.projection_chain();
        let status = search_chain(&chain, &mut Vec::new(), &mut |x| {
            let l: BigInt = x
                .iter()
                .zip(&grading.weights)
                .map(|(v, &w)| v * BigInt::from(w))
                .sum::<BigInt>()
                + grading.constant;
            if let Ok(l) = usize::try_from(&l) {
                if l <= max_len {
                    counts[l] += 1;
                }
            }
            false
        });
        if let Err(j) = status {
            return Err(Error::Unbounded(j + 1));
        }
        Ok(counts)
    }

    pub fn to_text(&self) -> String {
        let mut sorted = self.clone();
        sorted.sort_canonical();
        sorted
            .constraints
            .iter()
            .map(|c| c.render(&self.names))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Parse lines of the form `2*x1 + -1*x2 >= 3` (or `<=`).
    pub fn parse(names: Vec<String>, text: &str) -> Result<Polyhedron> {
        let mut out = Polyhedron::universe(names);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (lhs, rel, rhs) = if let Some((l, r)) = line.split_once(">=") {
                (l, Relation::Ge, r)
            } else if let Some((l, r)) = line.split_once("<=") {
                (l, Relation::Le, r)
            } else {
                return Err(Error::Parse(format!("no relation in {line:?}")));
            };
            let bound: BigInt = rhs
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad bound in {line:?}")))?;
            let mut coeffs = vec![BigInt::zero(); out.dim()];
            let lhs = lhs.trim();
            if lhs != "0" {
                for term in lhs.split(" + ") {
                    let (c, v) = term
                        .trim()
                        .split_once('*')
                        .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
                    let c: BigInt = c
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
                    let k = out
                        .names
                        .iter()
                        .position(|n| n == v.trim())
                        .ok_or_else(|| Error::Parse(format!("unknown variable {v:?}")))?;
                    coeffs[k] += c;
                }
            }
            out.push(Constraint::new(coeffs, rel, bound))?;
        }
        Ok(out)
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|c| c / &g).collect()
    }
}

/// Inverse of a nonsingular square integer matrix over the rationals.
fn invert(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("nonsingular");
        a.swap(col, p);
        let piv = a[col][col].clone();
        for x in &mut a[col] {
            *x = &*x / &piv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Depth-first walk over integer points described by a projection chain.
/// The visitor returns `true` to stop. `Err(j)` reports an unbounded
/// coordinate.
fn search_chain(
    chain: &[Vec<Constraint>],
    prefix: &mut Vec<BigInt>,
    visit: &mut dyn FnMut(&[BigInt]) -> bool,
) -> std::result::Result<bool, usize> {
    let j = prefix.len();
    if j == chain.len() {
        return Ok(visit(prefix));
    }
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for c in &chain[j] {
        let partial: BigInt = c.coeffs[..j].iter().zip(prefix.iter()).map(|(a, x)| a * x).sum();
        let rest = &c.bound - partial;
        let a = &c.coeffs[j];
        if a.is_zero() {
            if rest.is_positive() {
                return Ok(false);
            }
        } else if a.is_positive() {
            let v = Integer::div_ceil(&rest, a);
            if lo.as_ref().is_none_or(|l| &v > l) {
                lo = Some(v);
            }
        } else {
            let v = Integer::div_floor(&rest, a);
            if hi.as_ref().is_none_or(|h| &v < h) {
                hi = Some(v);
            }
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(j);
    };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        let r = search_chain(chain, prefix, visit);
        prefix.pop();
        if r? {
            return Ok(true);
        }
        x += 1;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("x{i}")).collect()
    }

    fn poly(d: usize, rows: &[(&[i64], i64)]) -> Polyhedron {
        Polyhedron::from_constraints(names(d), rows.iter().map(|(a, b)| Constraint::ge(a, *b)).collect()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_divides_common_factor() {
        let c = Constraint::ge(&[2, 4], 6);
        assert_eq!(c.coeffs(), &[BigInt::from(1), BigInt::from(2)]);
        assert_eq!(c.bound(), &BigInt::from(3));
        let c = Constraint::le(&[1, 0], 2);
        assert_eq!(c.render(&names(2)), "-1*x1 >= -2");
    }

    #[test]
    fn fm_projection_of_triangle() {
        // x >= 0, y >= 0, x + y <= 4, eliminate y -> 0 <= x <= 4
        let p = poly(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, -1], -4)]);
        let proj = p.eliminate(&[1]).remove_redundant();
        assert_eq!(proj.to_text(), "1*x1 >= 0\n-1*x1 >= -4");
    }

    #[test]
    fn infeasible_marker() {
        let p = poly(1, &[(&[1], 3), (&[-1], -2)]);
        assert!(!p.is_rationally_feasible());
        assert!(!p.is_marked_infeasible());
        let proj = p.eliminate(&[0]);
        assert!(proj.is_marked_infeasible());
        assert_eq!(proj.to_text(), "0 >= 1");
    }

    #[test]
    fn rational_but_not_integer() {
        // 2x >= 1, 2x <= 1
        let p = poly(1, &[(&[2], 1), (&[-2], -1)]);
        assert!(p.is_rationally_feasible());
        assert!(!p.integer_point_exists());
        // 3 <= 2x + 4y <= 3 has no integer point, 1 <= 2x+3y <= 1 does
        let p = poly(2, &[(&[2, 4], 3), (&[-2, -4], -3)]);
        assert!(!p.integer_point_exists());
        let p = poly(2, &[(&[2, 3], 1), (&[-2, -3], -1)]);
        let x = p.find_integer_point().unwrap();
        assert!(p.contains(&x));
    }

    #[test]
    fn generators_of_quadrant() {
        let p = poly(2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        let g = p.vertices_and_rays().unwrap();
        assert_eq!(g.vertices, vec![vec![q(1, 1), q(2, 1)]]);
        assert_eq!(
            g.rays,
            vec![
                vec![BigInt::from(0), BigInt::from(1)],
                vec![BigInt::from(1), BigInt::from(0)]
            ]
        );
    }

    #[test]
    fn generators_of_square() {
        let p = poly(2, &[(&[2, 0], 1), (&[0, 1], 0), (&[-1, 0], -1), (&[0, -1], -1)]);
        let g = p.vertices_and_rays().unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert!(g.rays.is_empty());
        assert!(g.vertices.contains(&vec![q(1, 2), q(0, 1)]));
    }

    #[test]
    fn not_pointed() {
        let p = poly(2, &[(&[1, 0], 0)]);
        assert_eq!(p.vertices_and_rays(), Err(Error::NotPointed));
        assert!(p.integer_point_exists());
    }

    #[test]
    fn recession_rays_of_empty() {
        let p = poly(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, 0], 1)]);
        assert!(p.vertices_and_rays().unwrap().vertices.is_empty());
        let rays = p.recession_rays().unwrap();
        assert_eq!(rays, vec![vec![BigInt::from(0), BigInt::from(1)]]);
    }

    #[test]
    fn ray_directions() {
        let p = poly(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, -1], 0)]);
        assert!(p.has_ray_direction(0));
        assert!(!p.has_ray_direction(1));
    }

    #[test]
    fn count_simplex_points() {
        let p = poly(2, &[(&[1, 0], 0), (&[0, 1], 0)]);
        let g = Grading {
            weights: vec![1, 2],
            constant: 1,
        };
        // number of (a, b) with a + 2b = l - 1
        assert_eq!(p.count_by_weight(&g, 6).unwrap(), vec![0, 1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn count_rejects_bad_weights() {
        let p = poly(1, &[(&[1], 0)]);
        let g = Grading {
            weights: vec![0],
            constant: 0,
        };
        assert_eq!(p.count_by_weight(&g, 3), Err(Error::NonPositiveWeight(0)));
        let free = Polyhedron::with_dim(1);
        let g = Grading {
            weights: vec![1],
            constant: 0,
        };
        assert!(matches!(free.count_by_weight(&g, 3), Err(Error::Unbounded(_))));
    }

    #[test]
    fn parse_round_trip() {
        let p = poly(2, &[(&[1, -1], 0), (&[0, 1], 2)]);
        let back = Polyhedron::parse(names(2), &p.to_text()).unwrap();
        assert_eq!(back.to_text(), p.to_text());
        let le = Polyhedron::parse(names(2), "1*x1 + 1*x2 <= 3").unwrap();
        assert_eq!(le.to_text(), "-1*x1 + -1*x2 >= -3");
        assert!(Polyhedron::parse(names(2), "1*y >= 0").is_err());
    }

    #[test]
    fn minimize_linear_form() {
        let p = poly(2, &[(&[1, 0], 1), (&[0, 1], 0), (&[1, 1], 3)]);
        assert_eq!(p.minimize(&[BigInt::from(2), BigInt::from(1)]), Some(Some(q(4, 1))));
        assert_eq!(p.minimize(&[BigInt::from(-1), BigInt::from(0)]), Some(None));
    }
}

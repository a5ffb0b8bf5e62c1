//! The acceptance criteria as runnable checks.
//!
//! Every check compares exact integers or exact rational functions. A check
//! with a time limit fails when it overruns. [`Config::depth`] can only
//! lengthen the comparisons, never shorten them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abacus::{
    bias_of, bott_series, cells, cone_coords, cone_weights, delta_vector, enumerate_biases, gap_vector, CellKey,
};
use crate::affine::{AffinePermutation, Pattern, PatternInstance};
use crate::enumeration::{
    classify_combinatorial, classify_series, classify_series_with, for_each_graded_point, pattern_series_with,
    ClassKind, SeriesOptions,
};
use crate::geometry::{build_system, member, strand_assignments, variable_names, StrandAssignment};
use crate::oracle::{elements_by_length, length_counts};
use crate::polyhedra::Polyhedron;
use crate::series::classify_behavior;

type Check = fn(&Config) -> std::result::Result<String, String>;

/// Knobs for a run of the suite.
#[derive(Clone, Debug, Default)]
pub struct Config {
    /// Verify series and Bott counts up to this length where it exceeds the
    /// default of each criterion.
    pub depth: Option<usize>,
}

impl Config {
    fn length(&self, default: usize) -> usize {
        self.depth.map_or(default, |d| d.max(default))
    }
}

/// One acceptance criterion.
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Option<Duration>,
    check: Check,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    /// `PASS  7 classification table (1.2s): ...`
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.2?}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.detail
        )
    }
}

impl Criterion {
    /// Whether `filter` is this criterion's number or a word of its name.
    pub fn matches(&self, filter: &str) -> bool {
        let filter = filter.trim();
        filter.parse::<u8>().map_or(false, |id| id == self.id)
            || self.name.split_whitespace().any(|w| w.eq_ignore_ascii_case(filter))
    }

    pub fn run(&self, cfg: &Config) -> Outcome {
        let start = Instant::now();
        let result = (self.check)(cfg);
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(limit) = self.limit {
            if elapsed > limit {
                passed = false;
                detail = format!("over time limit {limit:?}; {detail}");
            }
        }
        Outcome {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed,
        }
    }
}

const MINUTE: Duration = Duration::from_secs(60);

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, limit, check| Criterion { id, name, limit, check };
    vec![
        c(1, "bott full group", Some(MINUTE), bott_full),
        c(2, "bott coset", Some(MINUTE), bott_coset),
        c(3, "abacus worked data", None, abacus_data),
        c(4, "worked instance", None, worked_instance),
        c(5, "inequality golden", None, inequality_golden),
        c(6, "empty polyhedron warning", None, warning_pattern),
        c(7, "classification table", Some(2 * MINUTE), classification_table),
        c(8, "classifier agreement sweep", Some(3 * MINUTE), agreement_sweep),
        c(9, "oracle equivalence", None, oracle_equivalence),
        c(10, "complementation identity", None, complementation),
        c(11, "ray invariance", None, ray_invariance),
        c(12, "transfer to n = 4", None, transfer),
    ]
}

/// Run the criteria matching any of `filters` (all when empty), in order.
pub fn run(filters: &[String], cfg: &Config) -> Vec<Outcome> {
    criteria()
        .iter()
        .filter(|c| filters.is_empty() || filters.iter().any(|f| c.matches(f)))
        .map(|c| c.run(cfg))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pat(s: &str) -> Pattern {
    s.parse().expect("literal pattern")
}

fn ints(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|x| u64::try_from(x).expect("nonnegative count")).collect()
}

fn bott_full(cfg: &Config) -> std::result::Result<String, String> {
    let len = cfg.length(20);
    for n in 2..=5 {
        let series = ints(&bott_series(n, false).expand(len));
        let oracle = length_counts(n, len);
        ensure(series == oracle, || {
            format!("n = {n}: series {series:?} vs oracle {oracle:?}")
        })?;
    }
    let prefix = ints(&bott_series(3, false).expand(4));
    ensure(prefix == [1, 3, 6, 9, 12], || format!("n = 3 prefix {prefix:?}"))?;
    Ok(format!("n = 2..5 match breadth-first counts to length {len}"))
}

fn bott_coset(cfg: &Config) -> std::result::Result<String, String> {
    let len = cfg.length(20);
    for n in 2..=5 {
        let mut counts = vec![0u64; len + 1];
        let weights = cone_weights(n);
        for bias in enumerate_biases(n) {
            let base = bias.length_offset();
            if base > len as u64 {
                continue;
            }
            for_each_graded_point(&weights, len as u64 - base, &mut |_, w| {
                counts[(base + w) as usize] += 1
            });
        }
        let series = ints(&bott_series(n, true).expand(len));
        ensure(counts == series, || {
            format!("n = {n}: cells {counts:?} vs series {series:?}")
        })?;
    }
    Ok(format!("n = 2..5 match to length {len}"))
}

fn abacus_data(_: &Config) -> std::result::Result<String, String> {
    let w = AffinePermutation::new(vec![-12, -8, 2, 9, 13, 17]).map_err(|e| e.to_string())?;
    let delta = delta_vector(&w).map_err(|e| e.to_string())?;
    let gaps = gap_vector(&w).map_err(|e| e.to_string())?;
    let bias = bias_of(&w).map_err(|e| e.to_string())?;
    ensure(delta == [4, 10, 7, 4, 4], || format!("delta {delta:?}"))?;
    ensure(gaps.gaps() == [0, 3, 3, 2, 3], || format!("gaps {:?}", gaps.gaps()))?;
    ensure(bias.delta() == [4, 4, 1, 4, 4], || format!("bias {:?}", bias.delta()))?;
    Ok("delta 4,10,7,4,4; gaps 0,3,3,2,3; bias 4,4,1,4,4".into())
}

fn worked_instance(_: &Config) -> std::result::Result<String, String> {
    let p = pat("24351");
    let w = AffinePermutation::new(vec![-9, 4, 11]).map_err(|e| e.to_string())?;
    let pi = StrandAssignment::new(&p, 3, vec![2, 3, 2, 2, 1]).map_err(|e| e.to_string())?;
    let inst = PatternInstance {
        positions: vec![-4, -3, -1, 5, 7],
        values: vec![-2, 5, 1, 7, -3],
    };
    ensure(inst.is_instance_of(&w, &p), || "highlighted instance rejected".into())?;
    ensure(inst.strands(&w) == pi.strands(), || {
        format!("strands {:?}", inst.strands(&w))
    })?;
    let c: Vec<i64> = inst.windows(&w).windows(2).map(|x| x[1] - x[0]).collect();
    ensure(c == [0, 1, 2, 1], || format!("window steps {c:?}"))?;
    ensure(w.find_instance_with_strands(&p, pi.strands()).is_some(), || {
        "search finds no instance on these strands".into()
    })?;
    let coords = cone_coords(&w).map_err(|e| e.to_string())?;
    ensure(coords.t == [4, 2], || format!("t = {:?}", coords.t))?;
    let (_, v) = w.parabolic_decompose();
    ensure(member(&coords, &p, &pi, &v).map_err(|e| e.to_string())?, || {
        "t outside the projected system".into()
    })?;
    Ok("c = 0,1,2,1 and t = 4,2".into())
}

const GOLDEN_SYSTEM: &str = "1*t1 + -1*c1 + -1*c2 + -1*c3 + -1*c4 >= 0
1*t2 + -1*c2 >= 0
-1*t2 + 1*c2 + 1*c3 >= 1
1*c1 >= 0
1*c2 >= 1
1*c3 >= 1
1*c4 >= 1
1*t1 >= 0
1*t2 >= 0";

fn inequality_golden(_: &Config) -> std::result::Result<String, String> {
    let p = pat("24351");
    let pi = StrandAssignment::new(&p, 3, vec![2, 3, 2, 2, 1]).map_err(|e| e.to_string())?;
    let cell = CellKey {
        bias: crate::abacus::Bias::trivial(3),
        flattening: Pattern::identity(3),
    };
    let sys = build_system(&p, &pi, &cell.bias, &cell.flattening).map_err(|e| e.to_string())?;
    let expected = Polyhedron::parse(variable_names(3, 5), GOLDEN_SYSTEM).map_err(|e| e.to_string())?;
    ensure(sys.to_text() == expected.to_text(), || {
        format!("got\n{}", sys.to_text())
    })?;
    Ok("nine inequalities match".into())
}

fn warning_pattern(_: &Config) -> std::result::Result<String, String> {
    let p = pat("8,2,1,5,6,3,9,11,7,10,4");
    let all = strand_assignments(&p, 3);
    ensure(all.len() == 1, || format!("{} assignments", all.len()))?;
    let pi = &all[0];
    for cell in cells(3) {
        let sys = build_system(&p, pi, &cell.bias, &cell.flattening).map_err(|e| e.to_string())?;
        ensure(!sys.project_t().integer_point_exists(), || {
            format!("integer point in {cell}")
        })?;
    }
    Ok(format!("single assignment {pi}, no integer point in any cell"))
}

fn classification_table(cfg: &Config) -> std::result::Result<String, String> {
    let len = cfg.length(40);
    let opts = SeriesOptions {
        min_length: len,
        ..SeriesOptions::default()
    };
    let table = [
        ("12", ClassKind::FinitelyEnumerated),
        ("321", ClassKind::Periodic),
        ("2431", ClassKind::Periodic),
        ("24351", ClassKind::Periodic),
        ("4321", ClassKind::Unbounded),
    ];
    let bott = ints(&bott_series(3, false).expand(len));
    let mut notes = Vec::new();
    for (s, want) in table {
        let p = pat(s);
        let series = pattern_series_with(&p, 3, &opts).map_err(|e| format!("{s}: {e}"))?;
        ensure(series.verified_to >= len, || {
            format!("{s}: verified to {}", series.verified_to)
        })?;
        let counts: Vec<u64> = bott.iter().zip(&series.container_counts).map(|(a, b)| a - b).collect();
        let fitted = ints(&series.avoiders.expand(len));
        ensure(fitted == counts, || {
            format!("{s}: fitted avoiders {fitted:?} vs counts {counts:?}")
        })?;
        let by_series = classify_series_with(&p, 3, &opts).map_err(|e| format!("{s}: {e}"))?;
        let by_geometry = classify_combinatorial(&p, 3).map_err(|e| format!("{s}: {e}"))?;
        ensure(by_series.kind == want, || {
            format!("{s}: series says {:?}", by_series.kind)
        })?;
        ensure(by_geometry.kind == want, || {
            format!("{s}: geometry says {:?}", by_geometry.kind)
        })?;
        if s == "2431" {
            let behavior = classify_behavior(&series.avoiders);
            let pre = behavior.preperiod as usize;
            ensure(behavior.period.is_some_and(|d| 2 % d == 0), || {
                format!("2431: period {:?} does not divide 2", behavior.period)
            })?;
            ensure((pre + 2..=len).all(|i| fitted[i] == fitted[i - 2]), || {
                format!("2431: a_i = a_(i-2) fails after {pre}")
            })?;
            notes.push(format!("2431 satisfies a_i = a_(i-2) from index {pre}"));
        }
    }
    Ok(format!("five patterns match to length {len}; {}", notes.join("; ")))
}

fn all_small_patterns() -> Vec<Pattern> {
    Pattern::all(3).into_iter().chain(Pattern::all(4)).collect()
}

fn agreement_sweep(_: &Config) -> std::result::Result<String, String> {
    let rows: Vec<std::result::Result<(), String>> = all_small_patterns()
        .par_iter()
        .map(|p| {
            let a = classify_series(p, 3).map_err(|e| format!("{p}: {e}"))?;
            let b = classify_combinatorial(p, 3).map_err(|e| format!("{p}: {e}"))?;
            ensure(a.kind == b.kind, || {
                format!("{p}: series {:?}, geometry {:?}", a.kind, b.kind)
            })
        })
        .collect();
    let failures: Vec<String> = rows.into_iter().filter_map(|r| r.err()).collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("all 30 patterns agree".into())
}

fn oracle_equivalence(_: &Config) -> std::result::Result<String, String> {
    let layers = elements_by_length(3, 10);
    let mut checked = 0usize;
    for s in ["321", "2431", "24351", "3412"] {
        let p = pat(s);
        let assignments = strand_assignments(&p, 3);
        for w in layers.iter().flatten() {
            let direct = w.contains_pattern(&p).is_some();
            let (u, v) = w.parabolic_decompose();
            let coords = cone_coords(&u).map_err(|e| e.to_string())?;
            let mut via_cells = false;
            for pi in &assignments {
                if member(&coords, &p, pi, &v).map_err(|e| e.to_string())? {
                    via_cells = true;
                    break;
                }
            }
            ensure(direct == via_cells, || {
                format!("{s} in {w}: direct {direct}, cells {via_cells}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (element, pattern) pairs agree"))
}

fn complementation(_: &Config) -> std::result::Result<String, String> {
    let bott = bott_series(3, false);
    for s in ["12", "321", "2431", "24351", "4321"] {
        let series = pattern_series_with(&pat(s), 3, &SeriesOptions::default()).map_err(|e| format!("{s}: {e}"))?;
        let total = series.containers.add(&series.avoiders);
        ensure(total == bott, || format!("{s}: sum is {total}"))?;
    }
    Ok("containers + avoiders = bott for all five".into())
}

fn ray_invariance(_: &Config) -> std::result::Result<String, String> {
    let mut notes = Vec::new();
    for (s, strands) in [("321", vec![3, 2, 1]), ("24351", vec![2, 3, 2, 2, 1])] {
        let p = pat(s);
        for n in [3, 4] {
            let pi = StrandAssignment::new(&p, n, strands.clone()).map_err(|e| e.to_string())?;
            let mut seen: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
            for cell in cells(n) {
                let sys = build_system(&p, &pi, &cell.bias, &cell.flattening).map_err(|e| e.to_string())?;
                let mut rays = sys
                    .project_t()
                    .recession_rays()
                    .map_err(|e| format!("{s}, {cell}: {e}"))?;
                rays.sort();
                seen.insert(rays);
            }
            ensure(seen.len() == 1, || {
                format!("{s} at n = {n}: {} distinct ray sets", seen.len())
            })?;
            notes.push(format!("{s}/n={n}: {} rays", seen.first().map_or(0, Vec::len)));
        }
    }
    Ok(notes.join(", "))
}

fn transfer(_: &Config) -> std::result::Result<String, String> {
    let mut notes = Vec::new();
    for s in ["321", "2431", "4321"] {
        let p = pat(s);
        let at3 = classify_series(&p, 3).map_err(|e| format!("{s}: {e}"))?;
        let at4 = classify_series(&p, 4).map_err(|e| format!("{s}: {e}"))?;
        ensure(at3.kind == at4.kind, || {
            format!("{s}: {:?} at 3, {:?} at 4", at3.kind, at4.kind)
        })?;
        notes.push(format!("{s} {:?}", at4.kind));
    }
    Ok(notes.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters_by_number_or_word() {
        let all = criteria();
        let bott: Vec<u8> = all.iter().filter(|c| c.matches("bott")).map(|c| c.id).collect();
        assert_eq!(bott, vec![1, 2]);
        assert!(all[6].matches("7"));
        assert!(!all[6].matches("17"));
    }

    #[test]
    fn depth_never_shortens() {
        let cfg = Config { depth: Some(10) };
        assert_eq!(cfg.length(20), 20);
        assert_eq!(Config { depth: Some(30) }.length(20), 30);
    }
}

//! Command-line front end for the affine pattern-avoidance library.

use std::fmt::Write as _;
use std::process::ExitCode;

use affine_avoid_core::abacus::{bott_series, cells, Bias, CellKey};
use affine_avoid_core::acceptance;
use affine_avoid_core::affine::parse_int_list;
use affine_avoid_core::enumeration::{
    classify_combinatorial, classify_series_with, pattern_series_with, probe_union_convexity, Classification, Evidence,
    SeriesOptions,
};
use affine_avoid_core::geometry::{cell_report, strand_assignments, CellReport, StrandAssignment};
use affine_avoid_core::oracle::avoidance_counts;
use affine_avoid_core::series::{classify_behavior, BehaviorReport, RationalFunction};
use affine_avoid_core::{Error, Pattern, DEFAULT_PATTERN_GUARD};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

const EXIT_INVALID: u8 = 1;
const EXIT_FIT: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(
    name = "affine-avoid",
    version,
    about = "Length generating series of pattern-avoiding affine permutations"
)]
struct Cli {
    /// Worker threads; AFFINE_AVOID_THREADS takes precedence when set.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format (default: csv for enumerate, text otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the container and avoider series.
    Series(SeriesArgs),
    /// Classify a pattern with both classifiers and compare them.
    Classify(SeriesArgs),
    /// Brute-force counts by length.
    Enumerate(EnumerateArgs),
    /// Show strand assignments, shifts and inequality systems.
    Inspect(InspectArgs),
    /// Run the acceptance suite.
    Check(CheckArgs),
    /// Experimental convexity scan of the container region.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct Target {
    /// Pattern as digits (`2431`) or a comma-separated list.
    #[arg(short = 'p', long)]
    pattern: String,
    /// Size of the affine permutations.
    #[arg(short = 'n', long, default_value_t = 3)]
    n: usize,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    target: Target,
    /// Count at least up to this length.
    #[arg(short = 'L', long = "max-length", default_value_t = 0)]
    max_length: usize,
    /// Held-out verification coefficients (default: bound degree + 8).
    #[arg(long)]
    margin: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    target: Target,
    #[arg(short = 'L', long = "max-length", default_value_t = 10)]
    max_length: usize,
}

#[derive(Args)]
struct InspectArgs {
    #[command(flatten)]
    target: Target,
    /// Strand assignment, e.g. `2,3,2,2,1` (default: all of them).
    #[arg(long)]
    pi: Option<String>,
    /// Bias delta vector (default: all ones).
    #[arg(long)]
    bias: Option<String>,
    /// Flattening permutation (default: identity).
    #[arg(long)]
    flattening: Option<String>,
    /// Show every cell instead of a single one.
    #[arg(long, conflicts_with_all = ["bias", "flattening"])]
    all_cells: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Criterion numbers or name words, e.g. `bott` or `7`.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Verify series to at least this length.
    #[arg(short = 'L', long = "L", alias = "max-length")]
    depth: Option<usize>,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    target: Target,
    /// Scan `{0..box}^(n-1)` in every cell.
    #[arg(long = "box", default_value_t = 6)]
    box_size: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::FitVerification { .. } | Error::NotEnoughCoefficients { .. } | Error::NonUnitConstant(_)) => {
            EXIT_FIT
        }
        _ => EXIT_INVALID,
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var("AFFINE_AVOID_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("AFFINE_AVOID_THREADS={v:?}"))?;
            Ok(Some(n))
        }
        _ => Ok(flag),
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(threads) = thread_count(cli.threads)? {
        if threads == 0 {
            bail!("thread count must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("starting worker pool")?;
    }
    let (out, code) = match &cli.command {
        Command::Series(a) => (cmd_series(a, cli.format.unwrap_or(Format::Text))?, 0),
        Command::Classify(a) => cmd_classify(a, cli.format.unwrap_or(Format::Text))?,
        Command::Enumerate(a) => (cmd_enumerate(a, cli.format.unwrap_or(Format::Csv))?, 0),
        Command::Inspect(a) => (cmd_inspect(a, cli.format.unwrap_or(Format::Text))?, 0),
        Command::Check(a) => cmd_check(a, cli.format.unwrap_or(Format::Text))?,
        Command::Probe(a) => (cmd_probe(a, cli.format.unwrap_or(Format::Text))?, 0),
    };
    print!("{out}");
    Ok(code)
}

fn target(t: &Target) -> Result<Pattern> {
    let p: Pattern = t.pattern.parse().with_context(|| format!("pattern {:?}", t.pattern))?;
    p.check_guard(DEFAULT_PATTERN_GUARD)?;
    if t.n < 2 {
        return Err(Error::SizeTooSmall(t.n).into());
    }
    Ok(p)
}

fn options(a: &SeriesArgs) -> SeriesOptions {
    SeriesOptions {
        margin: a.margin,
        min_length: a.max_length,
        ..SeriesOptions::default()
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, f: Format) -> anyhow::Error {
    let name = match f {
        Format::Json => "json",
        Format::Text => "text",
        Format::Csv => "csv",
    };
    anyhow!("{cmd} has no {name} output")
}

fn behavior_text(b: &BehaviorReport) -> String {
    let mut s = format!("{:?}", b.kind);
    if let Some(d) = b.period {
        let vals: Vec<String> = b.repeating_values.iter().map(ToString::to_string).collect();
        write!(
            s,
            ", period {d}, preperiod {}, repeating {}",
            b.preperiod,
            vals.join(",")
        )
        .unwrap();
    }
    s
}

fn counts_csv(rows: &[(usize, BigInt, BigInt, BigInt)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["length", "avoiders", "containers", "bott"])?;
    for (l, a, c, b) in rows {
        w.write_record([l.to_string(), a.to_string(), c.to_string(), b.to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn rational_json(r: &RationalFunction) -> Value {
    json!({ "text": r.to_string(), "terms": r })
}

fn cmd_series(a: &SeriesArgs, f: Format) -> Result<String> {
    let p = target(&a.target)?;
    let n = a.target.n;
    let s = pattern_series_with(&p, n, &options(a))?;
    let behavior = classify_behavior(&s.avoiders);
    let bott = bott_series(n, false).expand(s.verified_to);
    Ok(match f {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "command": "series",
            "pattern": p.to_string(),
            "n": n,
            "containers": rational_json(&s.containers),
            "avoiders": rational_json(&s.avoiders),
            "verified_to": s.verified_to,
            "bound": {
                "factors": s.bound.factors.factors().iter().map(|(d, m)| (d.to_string(), json!(m))).collect::<serde_json::Map<_, _>>(),
                "rays": s.bound.rays,
                "weights": s.bound.weights,
            },
            "behavior": behavior,
        })),
        Format::Text => {
            let factors: Vec<String> = s
                .bound
                .factors
                .factors()
                .iter()
                .map(|(d, m)| format!("Phi_{d}^{m}"))
                .collect();
            format!(
                "pattern {p}, n = {n}\ncontainers: {}\navoiders: {}\nbehavior: {}\nbound: {}\nverified to length {}\n",
                s.containers,
                s.avoiders,
                behavior_text(&behavior),
                factors.join(" "),
                s.verified_to
            )
        }
        Format::Csv => {
            let rows: Vec<_> = (0..=s.verified_to)
                .map(|l| {
                    let c = BigInt::from(s.container_counts[l]);
                    (l, &bott[l] - &c, c, bott[l].clone())
                })
                .collect();
            counts_csv(&rows)?
        }
    })
}

fn kind_name(c: &Classification) -> String {
    format!("{:?}", c.kind)
}

fn evidence_text(c: &Classification) -> String {
    match &c.evidence {
        Evidence::StrandCount { strands } => format!("{strands} strands"),
        Evidence::Assignments { witness, verdicts } => match witness {
            Some(w) => format!("feasible assignment {w} without a tight corner"),
            None => {
                let feasible = verdicts.iter().filter(|v| v.feasible).count();
                format!("{feasible} feasible assignments, each with a tight corner")
            }
        },
        Evidence::Series {
            avoiders,
            behavior,
            verified_to,
        } => {
            format!(
                "avoiders {avoiders}, {}, verified to {verified_to}",
                behavior_text(behavior)
            )
        }
    }
}

fn cmd_classify(a: &SeriesArgs, f: Format) -> Result<(String, u8)> {
    let p = target(&a.target)?;
    let n = a.target.n;
    let by_series = classify_series_with(&p, n, &options(a))?;
    let by_geometry = classify_combinatorial(&p, n)?;
    let agree = by_series.kind == by_geometry.kind;
    let out = match f {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "command": "classify",
            "pattern": p.to_string(),
            "n": n,
            "kind": if agree { json!(by_series.kind) } else { Value::Null },
            "agreement": agree,
            "series": by_series,
            "combinatorial": by_geometry,
        })),
        Format::Text => format!(
            "pattern {p}, n = {n}\nseries: {} ({})\ncombinatorial: {} at n = {} ({})\nagreement: {agree}\n",
            kind_name(&by_series),
            evidence_text(&by_series),
            kind_name(&by_geometry),
            by_geometry.evaluated_at,
            evidence_text(&by_geometry)
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["pattern", "n", "series", "combinatorial", "agreement"])?;
            w.write_record([
                p.to_string(),
                n.to_string(),
                kind_name(&by_series),
                kind_name(&by_geometry),
                agree.to_string(),
            ])?;
            String::from_utf8(w.into_inner()?)?
        }
    };
    if !agree {
        eprintln!("classifiers disagree on {p} at n = {n}");
    }
    Ok((out, if agree { 0 } else { EXIT_DISAGREE }))
}

fn cmd_enumerate(a: &EnumerateArgs, f: Format) -> Result<String> {
    let p = target(&a.target)?;
    let n = a.target.n;
    let counts = avoidance_counts(&p, n, a.max_length);
    let bott = bott_series(n, false).expand(a.max_length);
    let rows: Vec<_> = (0..=a.max_length)
        .map(|l| {
            (
                l,
                BigInt::from(counts.avoiders[l]),
                BigInt::from(counts.containers[l]),
                bott[l].clone(),
            )
        })
        .collect();
    Ok(match f {
        Format::Csv => counts_csv(&rows)?,
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "command": "enumerate",
            "pattern": p.to_string(),
            "n": n,
            "avoiders": counts.avoiders,
            "containers": counts.containers,
            "bott": bott.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("pattern {p}, n = {n}\nlength avoiders containers bott\n");
            for (l, av, c, b) in &rows {
                writeln!(s, "{l:>6} {av:>8} {c:>10} {b:>4}").unwrap();
            }
            s
        }
    })
}

fn inspect_cells(a: &InspectArgs, n: usize) -> Result<Vec<CellKey>> {
    if a.all_cells {
        return Ok(cells(n));
    }
    let bias = match &a.bias {
        Some(b) => Bias::from_delta(parse_int_list(b)?)?,
        None => Bias::trivial(n),
    };
    let flattening = match &a.flattening {
        Some(v) => {
            let v: Pattern = v.parse()?;
            if v.len() != n {
                bail!("flattening {v} has {} entries, expected {n}", v.len());
            }
            v
        }
        None => Pattern::identity(n),
    };
    if bias.n() != n {
        bail!("bias {bias} is for n = {}, expected {n}", bias.n());
    }
    Ok(vec![CellKey { bias, flattening }])
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn generators_text(r: &CellReport) -> String {
    if !r.integer_feasible && !r.projected.is_rationally_feasible() {
        return "  none (empty)\n".into();
    }
    match r.projected.vertices_and_rays() {
        Ok(g) => {
            let vs: Vec<String> = g
                .vertices
                .iter()
                .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            let rs: Vec<String> = g
                .rays
                .iter()
                .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            format!("  vertices {}\n  rays {}\n", vs.join(" "), rs.join(" "))
        }
        Err(e) => format!("  unavailable: {e}\n"),
    }
}

fn report_json(r: &CellReport) -> Value {
    let generators = r.projected.vertices_and_rays().ok().map(|g| {
        json!({
            "vertices": g.vertices.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "rays": g.rays.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    });
    json!({
        "bias": r.cell.bias.delta(),
        "flattening": r.cell.flattening.to_string(),
        "pi": r.pi.to_string(),
        "shifts": r.shifts.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "system": r.system.to_text().lines().collect::<Vec<_>>(),
        "projected": r.projected.to_text().lines().collect::<Vec<_>>(),
        "integer_feasible": r.integer_feasible,
        "generators": generators,
    })
}

fn cmd_inspect(a: &InspectArgs, f: Format) -> Result<String> {
    let p = target(&a.target)?;
    let n = a.target.n;
    let assignments = match &a.pi {
        Some(s) => {
            let strands: Vec<usize> = parse_int_list(s)?
                .into_iter()
                .map(|x| usize::try_from(x).map_err(|_| anyhow!("strand {x} is negative")))
                .collect::<Result<_>>()?;
            vec![StrandAssignment::new(&p, n, strands)?]
        }
        None => strand_assignments(&p, n),
    };
    let cell_keys = inspect_cells(a, n)?;
    let mut reports = Vec::new();
    for cell in &cell_keys {
        for pi in &assignments {
            reports.push(cell_report(&p, pi, cell)?);
        }
    }
    Ok(match f {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "command": "inspect",
            "pattern": p.to_string(),
            "n": n,
            "assignments": assignments.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("pattern {p}, n = {n}\n");
            if assignments.is_empty() {
                writeln!(s, "no strand assignments into {n} strands").unwrap();
            }
            for r in &reports {
                let shifts: Vec<String> = r.shifts.iter().map(ToString::to_string).collect();
                writeln!(s, "\ncell {}\nassignment {}", r.cell, r.pi).unwrap();
                writeln!(
                    s,
                    "shifts: {}",
                    if shifts.is_empty() {
                        "none".into()
                    } else {
                        shifts.join(", ")
                    }
                )
                .unwrap();
                write!(s, "system:\n{}", indent(&r.system.to_text())).unwrap();
                write!(s, "projected:\n{}", indent(&r.projected.to_text())).unwrap();
                writeln!(s, "integer feasible: {}", if r.integer_feasible { "yes" } else { "no" }).unwrap();
                write!(s, "generators:\n{}", generators_text(r)).unwrap();
            }
            s
        }
        Format::Csv => return Err(unsupported("inspect", f)),
    })
}

fn cmd_check(a: &CheckArgs, f: Format) -> Result<(String, u8)> {
    let cfg = acceptance::Config { depth: a.depth };
    for filter in &a.only {
        if !acceptance::criteria().iter().any(|c| c.matches(filter)) {
            bail!("no criterion matches {filter:?}");
        }
    }
    let outcomes = acceptance::run(&a.only, &cfg);
    let failed: Vec<&acceptance::Outcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let out = match f {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "command": "check",
            "passed": failed.is_empty(),
            "criteria": outcomes.iter().map(|o| json!({
                "id": o.id,
                "name": o.name,
                "passed": o.passed,
                "detail": o.detail,
                "seconds": o.elapsed.as_secs_f64(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            writeln!(
                s,
                "{} of {} criteria passed",
                outcomes.len() - failed.len(),
                outcomes.len()
            )
            .unwrap();
            s
        }
        Format::Csv => return Err(unsupported("check", f)),
    };
    for o in &failed {
        eprintln!("criterion {} ({}) failed", o.id, o.name);
    }
    Ok((out, if failed.is_empty() { 0 } else { EXIT_CHECK }))
}

fn cmd_probe(a: &ProbeArgs, f: Format) -> Result<String> {
    let p = target(&a.target)?;
    let n = a.target.n;
    let report = probe_union_convexity(&p, n, a.box_size);
    Ok(match f {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "command": "probe",
            "pattern": p.to_string(),
            "n": n,
            "convex": report.is_convex(),
            "report": report,
        })),
        Format::Text => {
            let mut s = format!("pattern {p}, n = {n}, box {}, method {}\n", a.box_size, report.method);
            for c in &report.cells {
                writeln!(
                    s,
                    "{}: {} members, {} violations",
                    c.cell,
                    c.members,
                    c.violations.len()
                )
                .unwrap();
                for v in c.violations.iter().take(5) {
                    writeln!(s, "  {v:?}").unwrap();
                }
            }
            writeln!(s, "convex: {}", if report.is_convex() { "yes" } else { "no" }).unwrap();
            s
        }
        Format::Csv => return Err(unsupported("probe", f)),
    })
}

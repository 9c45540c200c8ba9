//! Command line front end for the gyrolab library.
//!
//! Every subcommand prints one JSON report to stdout (and, with `--out`,
//! writes the identical bytes to a file). Reports carry the tool version
//! and a digest of each input, and never include timings or timestamps,
//! so a rerun with the same arguments produces byte-identical output.
//!
//! Exit codes: 0 the check passed, 1 a law or domain check failed,
//! 2 an input could not be read or parsed, 64 bad usage.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use gyrolab::einstein::EinsteinGyrogroup;
use gyrolab::finite::{
    coset_partition, enumerate_subgyrogroups, left_translate, product_gyrogroup, search_gyrogroups,
    set_oplus, star_of_point, translate_cover, verify_gyrogroup, CayleyTable, FiniteGyrogroup,
    SearchOptions, Subset,
};
use gyrolab::mobius::MobiusGyrogroup;
use gyrolab::model::BallGyroModel;
use gyrolab::topo::{admissible_chain_check, RadiusChain, Verdict};
use gyrolab::{check_axioms_sampled, parse_gyro, write_gyro, AxiomReport};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "gyrolab", version, about = "Gyrogroup checks, search, and reports")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Debug, ValueEnum)]
enum ModelKind {
    Mobius,
    Einstein,
}

impl ModelKind {
    fn name(self) -> &'static str {
        match self {
            ModelKind::Mobius => "mobius",
            ModelKind::Einstein => "einstein",
        }
    }
}

/// Comma-separated list of element indices, e.g. `0,2,5`.
#[derive(Clone, Debug)]
struct SubsetArg(Vec<usize>);

fn parse_subset_arg(s: &str) -> Result<SubsetArg, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty entry in subset list".into());
        }
        out.push(part.parse::<usize>().map_err(|e| format!("bad element {part:?}: {e}"))?);
    }
    Ok(SubsetArg(out))
}

/// Comma-separated decreasing radii, e.g. `0.5,0.125,0.03125`.
#[derive(Clone, Debug)]
struct RadiiArg(Vec<f64>);

fn parse_radii_arg(s: &str) -> Result<RadiiArg, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty entry in radius list".into());
        }
        out.push(part.parse::<f64>().map_err(|e| format!("bad radius {part:?}: {e}"))?);
    }
    Ok(RadiiArg(out))
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every gyrogroup law exhaustively on a Cayley table.
    Verify {
        /// Table in .gyro format.
        table: PathBuf,
    },

    /// Enumerate the subgyrogroups of a table and flag the L ones.
    Subs {
        table: PathBuf,
    },

    /// Partition a gyrogroup by the left translates of a subgyrogroup.
    Cosets {
        table: PathBuf,
        /// Subgyrogroup elements, comma separated.
        #[arg(long, value_parser = parse_subset_arg)]
        subset: SubsetArg,
        /// Report the translate family of a subgyrogroup that is not an
        /// L-subgyrogroup instead of refusing it.
        #[arg(long)]
        allow_non_l: bool,
    },

    /// Direct product of two gyrogroup tables, verified.
    Product {
        left: PathBuf,
        right: PathBuf,
        /// Also write the product table itself in .gyro format.
        #[arg(long, value_name = "FILE")]
        emit_table: Option<PathBuf>,
    },

    /// Exhaustively search for gyrogroups of one order, up to relabeling.
    Search {
        #[arg(long)]
        order: usize,
        /// Worker threads; results are identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Node budget; the search reports incomplete when it runs out.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Allow orders 7 and 8 (minutes of work) instead of capping at 6.
        #[arg(long)]
        allow_large_order: bool,
    },

    /// Sample a continuous model and check every law statistically.
    Axioms {
        #[arg(long, value_enum, default_value_t = ModelKind::Mobius)]
        model: ModelKind,
        #[arg(long, default_value_t = 100_000)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Speed parameter of the Einstein model.
        #[arg(long)]
        c: Option<f64>,
        /// Sample norms up to this fraction of the ball radius.
        #[arg(long, default_value_t = 0.95)]
        max_norm: f64,
    },

    /// Check that each ball of a decreasing chain absorbs a double step
    /// from the next one.
    Chain {
        #[arg(long, value_enum, default_value_t = ModelKind::Mobius)]
        model: ModelKind,
        /// Strictly decreasing radii, comma separated.
        #[arg(long, value_parser = parse_radii_arg)]
        radii: RadiiArg,
        #[arg(long, default_value_t = 20_000)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        c: Option<f64>,
    },

    /// Star of a point in the left-translate cover of a subset.
    Star {
        table: PathBuf,
        /// Subset elements, comma separated; must contain the identity.
        #[arg(long, value_parser = parse_subset_arg)]
        subset: SubsetArg,
        /// The point whose star is computed.
        #[arg(long)]
        point: usize,
    },
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn file_input(path: &Path, bytes: &[u8]) -> Value {
    json!({ "source": path.display().to_string(), "sha256": sha256_hex(bytes) })
}

fn args_input(canonical: &str) -> Value {
    json!({ "source": format!("args:{canonical}"), "sha256": sha256_hex(canonical.as_bytes()) })
}

/// Assembles the envelope common to every report.
fn envelope(command: &str, inputs: Vec<Value>, status: &str, body: Map<String, Value>) -> Value {
    let mut map = Map::new();
    map.insert("tool".into(), json!("gyrolab"));
    map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    map.insert("command".into(), json!(command));
    map.insert("inputs".into(), Value::Array(inputs));
    map.insert("status".into(), json!(status));
    for (k, v) in body {
        map.insert(k, v);
    }
    Value::Object(map)
}

/// Prints the report to stdout and, when requested, to `--out`.
fn emit(report: &Value, out: Option<&Path>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    print!("{text}");
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

/// A failure before any report can be produced: bad file, bad table, bad
/// argument values. Carries the exit code to use.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn parse(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_PARSE, message: msg.into() }
    }

    fn fail(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_FAIL, message: msg.into() }
    }

    fn usage(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: msg.into() }
    }
}

fn read_table(path: &Path) -> Result<(CayleyTable, Value), CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::parse(format!("{}: not valid UTF-8", path.display())))?;
    let table = parse_gyro(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    Ok((table, file_input(path, &bytes)))
}

/// Verifies the table and wraps it, mapping failures to exit code 1.
fn load_gyrogroup(path: &Path) -> Result<(FiniteGyrogroup, Value), CliError> {
    let (table, input) = read_table(path)?;
    let g = FiniteGyrogroup::verify(table)
        .map_err(|e| CliError::fail(format!("{}: {e}", path.display())))?;
    Ok((g, input))
}

fn subset_from_arg(arg: &SubsetArg, order: usize) -> Result<Subset, CliError> {
    for &x in &arg.0 {
        if x >= order {
            return Err(CliError::fail(format!(
                "subset element {x} is outside the carrier 0..{order}"
            )));
        }
    }
    Subset::from_elements(arg.0.iter().copied()).map_err(|e| CliError::fail(e.to_string()))
}

fn law_summary(report: &AxiomReport) -> Value {
    serde_json::to_value(report).expect("axiom report serializes")
}

fn run_verify(table: &Path) -> Result<(Value, u8), CliError> {
    let (t, input) = read_table(table)?;
    let report = verify_gyrogroup(&t);
    let passed = report.all_passed();
    let mut body = Map::new();
    body.insert("order".into(), json!(t.order()));
    body.insert("report".into(), law_summary(&report));
    let status = if passed { "pass" } else { "fail" };
    let code = if passed { EXIT_PASS } else { EXIT_FAIL };
    Ok((envelope("verify", vec![input], status, body), code))
}

fn run_subs(table: &Path) -> Result<(Value, u8), CliError> {
    let (g, input) = load_gyrogroup(table)?;
    let infos = enumerate_subgyrogroups(&g).map_err(|e| CliError::fail(e.to_string()))?;
    let mut body = Map::new();
    body.insert("order".into(), json!(g.order()));
    body.insert("count".into(), json!(infos.len()));
    body.insert(
        "subgyrogroups".into(),
        json!(infos
            .iter()
            .map(|i| json!({
                "elements": i.elements.elements(),
                "card": i.elements.card(),
                "is_l": i.is_l,
            }))
            .collect::<Vec<_>>()),
    );
    Ok((envelope("subs", vec![input], "pass", body), EXIT_PASS))
}

fn run_cosets(table: &Path, subset: &SubsetArg, allow_non_l: bool) -> Result<(Value, u8), CliError> {
    let (g, input) = load_gyrogroup(table)?;
    let h = subset_from_arg(subset, g.order())?;
    let part = coset_partition(&g, h, allow_non_l).map_err(|e| CliError::fail(e.to_string()))?;
    let ok = part.validation.all();
    let mut body = Map::new();
    body.insert("order".into(), json!(g.order()));
    body.insert("subgyrogroup".into(), json!(h.elements()));
    body.insert(
        "cosets".into(),
        json!(part.cosets.iter().map(|c| c.elements()).collect::<Vec<_>>()),
    );
    body.insert("representatives".into(), json!(part.representatives));
    body.insert("cell_of".into(), json!(part.cell_of));
    body.insert(
        "validation".into(),
        serde_json::to_value(part.validation).expect("validation serializes"),
    );
    let status = if ok { "pass" } else { "fail" };
    let code = if ok { EXIT_PASS } else { EXIT_FAIL };
    Ok((envelope("cosets", vec![input], status, body), code))
}

fn run_product(left: &Path, right: &Path, emit_table: Option<&Path>) -> Result<(Value, u8), CliError> {
    let (a, input_a) = load_gyrogroup(left)?;
    let (b, input_b) = load_gyrogroup(right)?;
    let t = product_gyrogroup(&a, &b).map_err(|e| CliError::fail(e.to_string()))?;
    let g = FiniteGyrogroup::verify(t).map_err(|e| CliError::fail(e.to_string()))?;
    if let Some(path) = emit_table {
        fs::write(path, write_gyro(g.table()))
            .map_err(|e| CliError::fail(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut body = Map::new();
    body.insert("orders".into(), json!([a.order(), b.order()]));
    body.insert("order".into(), json!(g.order()));
    body.insert("is_group".into(), json!(g.is_group()));
    body.insert("table".into(), json!(g.table().rows()));
    Ok((envelope("product", vec![input_a, input_b], "pass", body), EXIT_PASS))
}

fn run_search(
    order: usize,
    jobs: usize,
    max_nodes: Option<u64>,
    allow_large_order: bool,
) -> Result<(Value, u8), CliError> {
    if jobs == 0 {
        return Err(CliError::usage("--jobs must be at least 1"));
    }
    let opts = SearchOptions {
        max_nodes: max_nodes.unwrap_or(u64::MAX),
        jobs,
        allow_large: allow_large_order,
    };
    let outcome = search_gyrogroups(order, opts).map_err(|e| CliError::fail(e.to_string()))?;
    let canonical = format!(
        "search:order={order},max_nodes={}",
        max_nodes.map_or("none".to_string(), |n| n.to_string())
    );
    let mut body = Map::new();
    body.insert("order".into(), json!(outcome.order));
    body.insert("complete".into(), json!(outcome.complete));
    body.insert("nodes".into(), json!(outcome.nodes));
    body.insert("count".into(), json!(outcome.tables.len()));
    body.insert(
        "tables".into(),
        json!(outcome.tables.iter().map(|t| t.rows()).collect::<Vec<_>>()),
    );
    let status = if outcome.complete { "pass" } else { "incomplete" };
    let code = if outcome.complete { EXIT_PASS } else { EXIT_FAIL };
    Ok((envelope("search", vec![args_input(&canonical)], status, body), code))
}

fn run_axioms(
    model: ModelKind,
    samples: u32,
    seed: u64,
    tol: f64,
    c: Option<f64>,
    max_norm: f64,
) -> Result<(Value, u8), CliError> {
    if model == ModelKind::Mobius && c.is_some() {
        return Err(CliError::usage("--c only applies to the einstein model"));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::usage("--tol must be positive and finite"));
    }
    if !(max_norm > 0.0 && max_norm < 1.0) {
        return Err(CliError::usage("--max-norm must lie strictly between 0 and 1"));
    }
    let report = match model {
        ModelKind::Mobius => {
            let m = MobiusGyrogroup::new();
            let cap = max_norm * m.ball_radius();
            check_axioms_sampled(&m, |rng| m.sample_in(rng, cap), u64::from(samples), seed, tol)
        }
        ModelKind::Einstein => {
            let g = EinsteinGyrogroup::with_c(c.unwrap_or(1.0))
                .map_err(|e| CliError::usage(e.to_string()))?;
            let cap = max_norm * g.ball_radius();
            check_axioms_sampled(&g, |rng| g.sample_in(rng, cap), u64::from(samples), seed, tol)
        }
    };
    let passed = report.all_passed();
    let canonical = format!(
        "axioms:model={},samples={samples},seed={seed},tol={tol},c={},max_norm={max_norm}",
        model.name(),
        c.unwrap_or(1.0),
    );
    let mut body = Map::new();
    body.insert("model".into(), json!(model.name()));
    if model == ModelKind::Einstein {
        body.insert("c".into(), json!(c.unwrap_or(1.0)));
    }
    body.insert("max_norm".into(), json!(max_norm));
    body.insert("report".into(), law_summary(&report));
    let status = if passed { "pass" } else { "fail" };
    let code = if passed { EXIT_PASS } else { EXIT_FAIL };
    Ok((envelope("axioms", vec![args_input(&canonical)], status, body), code))
}

fn run_chain(
    model: ModelKind,
    radii: &RadiiArg,
    samples: u32,
    seed: u64,
    tol: f64,
    c: Option<f64>,
) -> Result<(Value, u8), CliError> {
    if model == ModelKind::Mobius && c.is_some() {
        return Err(CliError::usage("--c only applies to the einstein model"));
    }
    let chain = RadiusChain::new(radii.0.clone()).map_err(|e| CliError::fail(e.to_string()))?;
    let report = match model {
        ModelKind::Mobius => {
            let m = MobiusGyrogroup::new();
            admissible_chain_check(&m, &chain, u64::from(samples), seed, tol)
        }
        ModelKind::Einstein => {
            let g = EinsteinGyrogroup::with_c(c.unwrap_or(1.0))
                .map_err(|e| CliError::usage(e.to_string()))?;
            admissible_chain_check(&g, &chain, u64::from(samples), seed, tol)
        }
    }
    .map_err(|e| CliError::fail(e.to_string()))?;
    let verdict = report.verdict();
    let canonical = format!(
        "chain:model={},radii={:?},samples={samples},seed={seed},tol={tol},c={}",
        model.name(),
        radii.0,
        c.unwrap_or(1.0),
    );
    let mut body = Map::new();
    body.insert("model".into(), json!(model.name()));
    if model == ModelKind::Einstein {
        body.insert("c".into(), json!(c.unwrap_or(1.0)));
    }
    body.insert("radii".into(), json!(radii.0));
    body.insert("report".into(), serde_json::to_value(&report).expect("chain report serializes"));
    let (status, code) = match verdict {
        Verdict::Pass => ("pass", EXIT_PASS),
        Verdict::Fail => ("fail", EXIT_FAIL),
        Verdict::Inconclusive => ("inconclusive", EXIT_FAIL),
    };
    Ok((envelope("chain", vec![args_input(&canonical)], status, body), code))
}

fn run_star(table: &Path, subset: &SubsetArg, point: usize) -> Result<(Value, u8), CliError> {
    let (g, input) = load_gyrogroup(table)?;
    let n = g.order();
    if point >= n {
        return Err(CliError::fail(format!("point {point} is outside the carrier 0..{n}")));
    }
    let u = subset_from_arg(subset, n)?;
    let symmetric = u.iter().all(|x| u.contains(g.inverse(x)));
    let cover = translate_cover(&g, u).map_err(|e| CliError::fail(e.to_string()))?;
    let star = star_of_point(&cover, point).map_err(|e| CliError::fail(e.to_string()))?;
    let double = set_oplus(&g, u, u).map_err(|e| CliError::fail(e.to_string()))?;
    let reach = left_translate(&g, point, double).map_err(|e| CliError::fail(e.to_string()))?;
    let contained = star.is_subset_of(reach);
    let mut body = Map::new();
    body.insert("order".into(), json!(n));
    body.insert("subset".into(), json!(u.elements()));
    body.insert("symmetric".into(), json!(symmetric));
    body.insert("point".into(), json!(point));
    body.insert(
        "cover".into(),
        json!(cover.iter().map(|s| s.elements()).collect::<Vec<_>>()),
    );
    body.insert("star".into(), json!(star.elements()));
    body.insert("double_step".into(), json!(double.elements()));
    body.insert("reach".into(), json!(reach.elements()));
    body.insert("star_within_reach".into(), json!(contained));
    let status = if contained { "pass" } else { "fail" };
    let code = if contained { EXIT_PASS } else { EXIT_FAIL };
    Ok((envelope("star", vec![input], status, body), code))
}

fn run(cli: &Cli) -> Result<(Value, u8), CliError> {
    match &cli.cmd {
        Cmd::Verify { table } => run_verify(table),
        Cmd::Subs { table } => run_subs(table),
        Cmd::Cosets { table, subset, allow_non_l } => run_cosets(table, subset, *allow_non_l),
        Cmd::Product { left, right, emit_table } => {
            run_product(left, right, emit_table.as_deref())
        }
        Cmd::Search { order, jobs, max_nodes, allow_large_order } => {
            run_search(*order, *jobs, *max_nodes, *allow_large_order)
        }
        Cmd::Axioms { model, samples, seed, tol, c, max_norm } => {
            run_axioms(*model, *samples, *seed, *tol, *c, *max_norm)
        }
        Cmd::Chain { model, radii, samples, seed, tol, c } => {
            run_chain(*model, radii, *samples, *seed, *tol, *c)
        }
        Cmd::Star { table, subset, point } => run_star(table, subset, *point),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            // clap routes help to stdout and errors to stderr.
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((report, code)) => {
            if let Err(e) = emit(&report, cli.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_FAIL);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

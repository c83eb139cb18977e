//! Command-line front end: `erasure-lab <subcommand>`.
//!
//! Subcommands: `ghw` (weight hierarchy and erasure radii of a code file),
//! `decode` (answer a decode-request file), `trial` (seeded random-code
//! decodability trials), `ag-build` (construct Hermitian or Reed-Solomon
//! codes with a bound sidecar), `bounds-table` (CSV sweep of the rate
//! bounds), and `check` (cross-method agreement audit on a code file).
//!
//! Conventions shared by all subcommands: output goes to stdout unless an
//! output path is given; file writes go to a temporary file first and are
//! renamed into place on success, so failed runs leave no partial
//! artifacts. Identical invocations produce byte-identical output. The
//! trial seed resolves as `--seed` flag, then the ERASURE_LAB_SEED
//! environment variable, then 0.
//!
//! Exit status: 0 on success, 1 when `check` finds a method disagreement,
//! 2 on usage, parse, I/O, or budget errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::agcode::{hermitian_code, hermitian_curve, hermitian_sidecar, rs_code, AgError};
use crate::bounds::{bounds_table, BoundsError, BOUNDS_CSV_HEADER};
use crate::code::{
    floor_log, CodeError, DecodabilityMethod, LinearCode, DEFAULT_ENUM_BUDGET,
};
use crate::erasure::{list_decode, DecodeRequest, ErasureError};
use crate::gf::field_make;
use crate::randcode::{decodability_trial, RandError, TrialParams};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    /// A cross-method disagreement; maps to exit status 1.
    #[error("{0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Erasure(#[from] ErasureError),
    #[error(transparent)]
    Ag(#[from] AgError),
    #[error(transparent)]
    Rand(#[from] RandError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser)]
#[command(
    name = "erasure-lab",
    version,
    about = "Exact laboratory for erasure list decoding of linear codes"
)]
struct Cli {
    /// Seed for randomized subcommands; overrides ERASURE_LAB_SEED.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker cap. Present for interface stability; all computations are
    /// currently single-threaded, so any value >= 1 behaves the same.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weight hierarchy d_1..d_k, subcode witnesses, and erasure radii.
    Ghw {
        /// Code file: line "q n k", then k generator rows.
        #[arg(long)]
        input: PathBuf,
        /// List sizes for the radius table (default: 1, q, q^2).
        #[arg(long = "l", value_delimiter = ',')]
        l: Option<Vec<u64>>,
        /// Cap on enumerated subspaces per rank.
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        ghw_budget: u128,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List-decode one erasure query from a decode-request file.
    Decode {
        /// Request file: code file lines, then "kept: ..." and "values: ...".
        #[arg(long)]
        input: PathBuf,
        /// Truncate the emitted list at this many codewords.
        #[arg(long, default_value_t = 10_000)]
        list_cap: u128,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample random codes and count rank-certificate violations.
    Trial {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Derive the erasure count and list exponent from this slack.
        #[arg(long, conflicts_with_all = ["s", "ell"])]
        epsilon: Option<f64>,
        /// Explicit erasure count (pairs with --ell).
        #[arg(long, requires = "ell")]
        s: Option<i64>,
        /// Explicit list exponent: list size q^ell (pairs with --s).
        #[arg(long, requires = "s")]
        ell: Option<u64>,
        /// Number of random codes to sample.
        #[arg(long, default_value_t = 10)]
        codes: u64,
        /// Number of erasure patterns per code.
        #[arg(long, default_value_t = 1000)]
        patterns: u64,
        /// Also write one CSV row per sampled code.
        #[arg(long)]
        per_code_csv: Option<PathBuf>,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Construct an evaluation code and write its code file.
    #[command(subcommand)]
    AgBuild(AgBuild),
    /// CSV sweep of rate bounds over an erasure-fraction grid.
    BoundsTable {
        /// Field size; must be a square prime power for the AG columns.
        #[arg(long)]
        q: u32,
        /// List exponent for the random-coding rate column.
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Grid tau = i/steps for i in 1..steps.
        #[arg(long, default_value_t = 100)]
        grid_steps: u32,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Audit that all decodability methods agree on a code file.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// List sizes to audit (default: 1, q, q^2).
        #[arg(long = "l", value_delimiter = ',')]
        l: Option<Vec<u64>>,
        /// Audit erasure counts 1..=max_s (default: n).
        #[arg(long)]
        max_s: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        ghw_budget: u128,
        /// Budget for the brute-force definition method; kept-set count
        /// times codeword count must stay under this.
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        pattern_budget: u128,
    },
}

#[derive(Subcommand)]
enum AgBuild {
    /// Evaluation code on the Hermitian curve over GF(q0^2).
    Hermitian {
        #[arg(long)]
        q0: u32,
        /// Pole-order cap; the code is [q0^3, ~m] for m >= 1.
        #[arg(long)]
        m: u64,
        /// Largest list exponent t in the sidecar bound tables.
        #[arg(long, default_value_t = 2)]
        t_max: u32,
        /// Where to write the code file.
        #[arg(long)]
        code_out: PathBuf,
        /// Where to write the JSON bound sidecar.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Reed-Solomon code evaluating polynomials of degree < k.
    Rs {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Where to write the code file.
        #[arg(long)]
        code_out: PathBuf,
    },
}

/// Entry point for the `erasure-lab` binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Invariant(msg)) => {
            eprintln!("{msg}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    if cli.threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    let seed = resolve_seed(cli.seed)?;
    match cli.cmd {
        Cmd::Ghw { input, l, ghw_budget, output } => cmd_ghw(&input, l, ghw_budget, output.as_deref()),
        Cmd::Decode { input, list_cap, output } => cmd_decode(&input, list_cap, output.as_deref()),
        Cmd::Trial {
            q,
            n,
            k,
            epsilon,
            s,
            ell,
            codes,
            patterns,
            per_code_csv,
            output,
        } => cmd_trial(
            q,
            n,
            k,
            epsilon,
            s,
            ell,
            codes,
            patterns,
            seed,
            per_code_csv.as_deref(),
            output.as_deref(),
        ),
        Cmd::AgBuild(build) => cmd_ag_build(build),
        Cmd::BoundsTable { q, r, epsilon, grid_steps, output } => {
            cmd_bounds_table(q, r, epsilon, grid_steps, output.as_deref())
        }
        Cmd::Check { input, l, max_s, ghw_budget, pattern_budget } => {
            cmd_check(&input, l, max_s, ghw_budget, pattern_budget)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("ERASURE_LAB_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("ERASURE_LAB_SEED must be an unsigned integer, got {v:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(usage("ERASURE_LAB_SEED is not valid unicode"))
        }
    }
}

/// Writes to stdout, or atomically to `path`: the content lands in a
/// temporary file in the destination directory and is renamed over the
/// target only once fully written.
fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        print!("{content}");
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

fn load_code(path: &Path) -> Result<LinearCode, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(LinearCode::from_code_file(&text)?)
}

fn default_list_sizes(q: u32) -> Vec<u64> {
    vec![1, q as u64, (q as u64).pow(2)]
}

fn validated_list_sizes(l: Option<Vec<u64>>, q: u32) -> Result<Vec<u64>, CliError> {
    let ls = l.unwrap_or_else(|| default_list_sizes(q));
    if ls.is_empty() {
        return Err(usage("--l needs at least one list size"));
    }
    if ls.iter().any(|&v| v == 0) {
        return Err(usage("list sizes must be at least 1"));
    }
    Ok(ls)
}

#[derive(Serialize)]
struct GhwOutput {
    q: u32,
    n: usize,
    k: usize,
    /// d[r-1] is the smallest support of an r-dimensional subcode.
    d: Vec<usize>,
    /// List size -> largest decodable erasure count.
    rad: BTreeMap<u64, usize>,
    /// Per rank: generator rows (element indices) of a minimal-support
    /// subcode witnessing d_r.
    witnesses: Vec<Vec<Vec<usize>>>,
}

fn cmd_ghw(
    input: &Path,
    l: Option<Vec<u64>>,
    ghw_budget: u128,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let code = load_code(input)?;
    let ls = validated_list_sizes(l, code.q())?;
    let mut d = Vec::with_capacity(code.k());
    let mut witnesses = Vec::with_capacity(code.k());
    for r in 1..=code.k() {
        let res = code.ghw_with_budget(r, ghw_budget)?;
        d.push(res.d_r);
        witnesses.push(
            res.witness
                .row_iter()
                .map(|row| row.iter().map(|e| e.idx()).collect())
                .collect(),
        );
    }
    let mut rad = BTreeMap::new();
    for &l in &ls {
        let r = floor_log(code.q(), l as u128) + 1;
        // Radius comes straight off the hierarchy: d_r - 1, or n when an
        // r-dimensional subcode cannot exist.
        let radius = if (r as usize) > code.k() { code.n() } else { d[r as usize - 1] - 1 };
        rad.insert(l, radius);
    }
    let out = GhwOutput { q: code.q(), n: code.n(), k: code.k(), d, rad, witnesses };
    write_output(output, &(serde_json::to_string_pretty(&out)? + "\n"))
}

fn cmd_decode(input: &Path, list_cap: u128, output: Option<&Path>) -> Result<(), CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?;
    let request = DecodeRequest::from_text(&text)?;
    let query = request.query(list_cap)?;
    let list = list_decode(&request.code, &query)?;
    write_output(output, &(serde_json::to_string_pretty(&list)? + "\n"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_trial(
    q: u32,
    n: usize,
    k: usize,
    epsilon: Option<f64>,
    s: Option<i64>,
    ell: Option<u64>,
    codes: u64,
    patterns: u64,
    seed: u64,
    per_code_csv: Option<&Path>,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let params = match (epsilon, s, ell) {
        (Some(eps), None, None) => TrialParams::derive(q, n, k, eps)?,
        (None, Some(s), Some(ell)) => TrialParams::explicit(q, n, k, s, ell)?,
        _ => return Err(usage("give either --epsilon or both --s and --ell")),
    };
    let params = params.with_codes(codes).with_patterns_per_code(patterns).with_seed(seed);
    if params.is_degenerate() {
        return Err(usage(format!(
            "derived erasure count s = {} is not positive (ell = {}); \
             nothing to test, pick a smaller epsilon",
            params.s, params.ell
        )));
    }
    let report = decodability_trial(&params)?;
    let mut json = serde_json::to_value(&report)?;
    let obj = json.as_object_mut().expect("report serializes to an object");
    obj.insert("vacuous".into(), serde_json::Value::Bool(params.is_vacuous()));
    obj.insert("degenerate".into(), serde_json::Value::Bool(params.is_degenerate()));
    if let Some(csv_path) = per_code_csv {
        let mut csv = String::from("code_index,rejections,violations\n");
        for row in &report.per_code {
            csv.push_str(&format!("{},{},{}\n", row.code_index, row.rejections, row.violations));
        }
        write_output(Some(csv_path), &csv)?;
    }
    write_output(output, &(serde_json::to_string_pretty(&json)? + "\n"))
}

fn cmd_ag_build(build: AgBuild) -> Result<(), CliError> {
    match build {
        AgBuild::Hermitian { q0, m, t_max, code_out, sidecar } => {
            let curve = hermitian_curve(q0)?;
            let (spec, code) = hermitian_code(&curve, m)?;
            if let Some(side_path) = sidecar {
                let side = hermitian_sidecar(&spec, t_max)?;
                write_output(Some(&side_path), &(serde_json::to_string_pretty(&side)? + "\n"))?;
            }
            write_output(Some(&code_out), &code.to_code_file())
        }
        AgBuild::Rs { q, n, k, code_out } => {
            let field = field_make(q).map_err(CodeError::from)?;
            let code = rs_code(&field, n, k, None)?;
            write_output(Some(&code_out), &code.to_code_file())
        }
    }
}

fn cmd_bounds_table(
    q: u32,
    r: u32,
    epsilon: f64,
    grid_steps: u32,
    output: Option<&Path>,
) -> Result<(), CliError> {
    if grid_steps < 2 {
        return Err(usage("--grid-steps must be at least 2"));
    }
    let taus: Vec<f64> = (1..grid_steps).map(|i| i as f64 / grid_steps as f64).collect();
    let rows = bounds_table(q, r, epsilon, &taus)?;
    let mut csv = String::from(BOUNDS_CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.csv_row());
        csv.push('\n');
    }
    write_output(output, &csv)
}

fn cmd_check(
    input: &Path,
    l: Option<Vec<u64>>,
    max_s: Option<usize>,
    ghw_budget: u128,
    pattern_budget: u128,
) -> Result<(), CliError> {
    let code = load_code(input)?;
    let ls = validated_list_sizes(l, code.q())?;
    let s_hi = max_s.unwrap_or(code.n()).min(code.n());
    let mut checked = 0u64;
    let mut brute_skipped = 0u64;
    for s in 1..=s_hi {
        for &l in &ls {
            let by_rank = code.is_erasure_list_decodable_with_budget(
                s,
                l as u128,
                DecodabilityMethod::Rank,
                pattern_budget,
            )?;
            let by_ghw = code.is_erasure_list_decodable_with_budget(
                s,
                l as u128,
                DecodabilityMethod::Ghw,
                ghw_budget,
            )?;
            let mut verdicts = vec![("rank", by_rank), ("ghw", by_ghw)];
            match code.is_erasure_list_decodable_with_budget(
                s,
                l as u128,
                DecodabilityMethod::Definition,
                pattern_budget,
            ) {
                Ok(v) => verdicts.push(("definition", v)),
                Err(CodeError::BudgetExceeded { .. }) => brute_skipped += 1,
                Err(e) => return Err(e.into()),
            }
            if verdicts.iter().any(|&(_, v)| v != verdicts[0].1) {
                let detail: Vec<String> =
                    verdicts.iter().map(|(name, v)| format!("{name}={v}")).collect();
                return Err(CliError::Invariant(format!(
                    "methods disagree at s={s} L={l}: {}",
                    detail.join(" ")
                )));
            }
            checked += 1;
        }
    }
    println!(
        "ok: {} (s, L) pairs agree across methods ({} brute-force checks over budget)",
        checked, brute_skipped
    );
    Ok(())
}

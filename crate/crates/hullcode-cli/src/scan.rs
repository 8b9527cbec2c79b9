//! Grid sweeps: one construction per (q, m, k, t, d, seed) point, with the
//! bound verdict and verified parameters per row.
//!
//! Rows run in parallel up to `--jobs` (`HULLCODE_JOBS` supplies the
//! default), each row owning its seeded generator, and the output is ordered
//! by grid index, so identical specs produce byte-identical output
//! regardless of the job count. Invalid grid points are skipped with a
//! reason; failing rows are reported in place and never abort the sweep.

use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use hullcode::bounds;
use hullcode::construct::{construct, ConstructError, ConstructionParams, SearchLimits};

use crate::{fail, EXIT_INVALID, EXIT_OK};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// A sweep description; ranges are inclusive `[lo, hi]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanSpec {
    pub q: Vec<u64>,
    pub m: (usize, usize),
    pub k: (usize, usize),
    pub t: (usize, usize),
    pub d: (usize, usize),
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default = "ScanSpec::default_max_attempts")]
    pub max_attempts_per_vector: u64,
    #[serde(default = "ScanSpec::default_max_restarts")]
    pub max_restarts: u64,
}

impl ScanSpec {
    fn default_max_attempts() -> u64 {
        SearchLimits::default().max_attempts_per_vector
    }

    fn default_max_restarts() -> u64 {
        SearchLimits::default().max_restarts
    }
}

#[derive(Args)]
pub struct ScanArgs {
    /// Read the whole sweep description from a JSON spec file.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["q", "m", "k", "t", "d"])]
    spec: Option<PathBuf>,
    /// Field sizes to sweep, comma separated prime powers.
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// Inclusive range "lo..hi" (or a single value).
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Seeds, comma separated; every grid point runs once per seed.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parallel rows; 0 means one per core.
    #[arg(long, env = "HULLCODE_JOBS", default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 10_000)]
    max_attempts: u64,
    #[arg(long, default_value_t = 100)]
    max_restarts: u64,
}

const CSV_HEADER: &str = "index,q,m,k,t,d,seed,gv_holds,outcome,n,hull_dim,min_distance,\
                          guaranteed_distance,attempts,restarts,reason";

#[derive(Debug, Clone, Serialize)]
struct ScanRow {
    index: usize,
    q: u64,
    m: usize,
    k: usize,
    t: usize,
    d: usize,
    seed: u64,
    gv_holds: Option<bool>,
    outcome: Outcome,
    n: Option<usize>,
    hull_dim: Option<usize>,
    min_distance: Option<usize>,
    guaranteed_distance: Option<usize>,
    attempts: Option<u64>,
    restarts: Option<u64>,
    reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Outcome {
    Ok,
    Exhausted,
    Skipped,
    Failed,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Outcome::Ok => "ok",
            Outcome::Exhausted => "exhausted",
            Outcome::Skipped => "skipped",
            Outcome::Failed => "failed",
        };
        f.write_str(s)
    }
}

fn parse_range(label: &str, text: Option<&String>) -> Result<(usize, usize), String> {
    let Some(text) = text else {
        return Err(format!("missing --{label} (or use --spec FILE)"));
    };
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo.trim().parse().map_err(|e| format!("--{label}: {e}"))?;
        let hi = hi.trim().parse().map_err(|e| format!("--{label}: {e}"))?;
        Ok((lo, hi))
    } else {
        let v = text.trim().parse().map_err(|e| format!("--{label}: {e}"))?;
        Ok((v, v))
    }
}

fn resolve_spec(args: &ScanArgs) -> Result<ScanSpec, String> {
    if let Some(path) = &args.spec {
        let raw = fs::read_to_string(path).map_err(|e| format!("cannot read spec: {e}"))?;
        return serde_json::from_str(&raw).map_err(|e| format!("bad spec file: {e}"));
    }
    Ok(ScanSpec {
        q: args.q.clone(),
        m: parse_range("m", args.m.as_ref())?,
        k: parse_range("k", args.k.as_ref())?,
        t: parse_range("t", args.t.as_ref())?,
        d: parse_range("d", args.d.as_ref())?,
        seeds: args.seeds.clone(),
        format: args.format,
        max_attempts_per_vector: args.max_attempts,
        max_restarts: args.max_restarts,
    })
}

fn grid(spec: &ScanSpec) -> Vec<ConstructionParams> {
    let mut points = Vec::new();
    for &q in &spec.q {
        for m in spec.m.0..=spec.m.1 {
            for k in spec.k.0..=spec.k.1 {
                for t in spec.t.0..=spec.t.1 {
                    for d in spec.d.0..=spec.d.1 {
                        for &seed in &spec.seeds {
                            let mut p = ConstructionParams::new(q, m, k, t, d, seed);
                            p.max_attempts_per_vector = spec.max_attempts_per_vector;
                            p.max_restarts = spec.max_restarts;
                            points.push(p);
                        }
                    }
                }
            }
        }
    }
    points
}

/// Reason a grid point cannot even be attempted, if any.
fn skip_reason(p: &ConstructionParams) -> Option<String> {
    if hullcode::gf::as_prime_power(p.q).is_none() {
        return Some(format!("q = {} is not a prime power", p.q));
    }
    if p.k < 1 {
        return Some("k must be at least 1".into());
    }
    if p.m < p.k {
        return Some(format!("k = {} exceeds m = {}", p.k, p.m));
    }
    if p.t > p.k {
        return Some(format!("t = {} exceeds k = {}", p.t, p.k));
    }
    if p.d < 1 || p.d > p.m {
        return Some(format!("d = {} outside 1..={}", p.d, p.m));
    }
    None
}

fn run_row(index: usize, params: &ConstructionParams) -> ScanRow {
    let mut row = ScanRow {
        index,
        q: params.q,
        m: params.m,
        k: params.k,
        t: params.t,
        d: params.d,
        seed: params.seed,
        gv_holds: None,
        outcome: Outcome::Skipped,
        n: None,
        hull_dim: None,
        min_distance: None,
        guaranteed_distance: None,
        attempts: None,
        restarts: None,
        reason: String::new(),
    };
    if let Some(reason) = skip_reason(params) {
        row.reason = reason;
        return row;
    }
    row.gv_holds =
        bounds::gv_condition(params.q, params.m as u64, params.k as u64, params.d as u64)
            .map(|r| r.holds)
            .ok();
    match construct(params) {
        Ok(res) => {
            row.outcome = Outcome::Ok;
            row.n = Some(res.code.length());
            row.hull_dim = Some(res.report.hull_dim_gram);
            row.min_distance = Some(res.report.min_distance);
            row.guaranteed_distance = Some(res.guaranteed_distance);
            row.attempts = Some(res.attempts);
            row.restarts = Some(res.restarts);
        }
        Err(ConstructError::SearchExhausted {
            attempts, restarts, ..
        }) => {
            row.outcome = Outcome::Exhausted;
            row.attempts = Some(attempts);
            row.restarts = Some(restarts);
            row.reason = "search exhausted".into();
        }
        Err(e) => {
            row.outcome = Outcome::Failed;
            row.reason = e.to_string();
        }
    }
    row
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let line = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\"\n",
            r.index,
            r.q,
            r.m,
            r.k,
            r.t,
            r.d,
            r.seed,
            opt(&r.gv_holds),
            r.outcome,
            opt(&r.n),
            opt(&r.hull_dim),
            opt(&r.min_distance),
            opt(&r.guaranteed_distance),
            opt(&r.attempts),
            opt(&r.restarts),
            r.reason.replace('"', "\"\""),
        );
        out.push_str(&line);
    }
    out
}

pub fn cmd_scan(args: ScanArgs) -> u8 {
    let spec = match resolve_spec(&args) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let points = grid(&spec);
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
    {
        Ok(p) => p,
        Err(e) => return fail(EXIT_INVALID, format!("cannot build thread pool: {e}")),
    };
    let rows: Vec<ScanRow> = pool.install(|| {
        use rayon::prelude::*;
        points
            .par_iter()
            .enumerate()
            .map(|(i, p)| run_row(i, p))
            .collect()
    });
    let payload = match spec.format {
        OutputFormat::Csv => to_csv(&rows),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({ "rows": rows }))
                .expect("serializable");
            s.push('\n');
            s
        }
    };
    let write_result = match &args.out {
        Some(path) => fs::write(path, &payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    };
    if let Err(e) = write_result {
        return fail(EXIT_INVALID, format!("cannot write output: {e}"));
    }
    EXIT_OK
}

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use f2hit::hitspace::{build_hit_matrix_with, decide_hit_with, HitConfig};
use f2hit::{
    alpha, basis_dimension, gf2, kameko_reduces, mu, weight_vector, wood_vanishes, Decomposition,
    Error,
};

use crate::parse::parse_poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_HIT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "f2hit",
    version,
    about = "Hit problem computations for F2[x1..xk] under the Steenrod squares"
)]
pub struct Cli {
    #[command(flatten)]
    pub engine: EngineArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Worker threads for column assembly (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Assemble serially below this many generator tasks
    #[arg(long, global = true, default_value_t = f2hit::hitspace::DEFAULT_TASK_THRESHOLD)]
    pub task_threshold: usize,

    /// Cap on projected elimination memory, e.g. 2G, 512M or a byte count
    #[arg(long, global = true, value_parser = parse_bytes, default_value = "2G")]
    pub memory_cap: u64,

    /// Skip generator degrees d' with alpha(d' + k) > k. Faster, but not exact
    /// for every (k, d): at k = 1, d = 6 it reports rank 0 instead of 1
    #[arg(long, global = true)]
    pub alpha_filter: bool,

    /// Cap on the number of monomials in a degree basis
    #[arg(long, global = true, default_value_t = f2hit::basis::DEFAULT_BASIS_CAP)]
    pub basis_cap: u64,
}

impl EngineArgs {
    fn config(&self) -> HitConfig {
        HitConfig {
            threads: self.threads,
            task_threshold: self.task_threshold,
            basis_cap: self.basis_cap,
            memory_cap: self.memory_cap,
            apply_filter: self.alpha_filter,
            ..HitConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a polynomial is hit and print a decomposition
    HitCheck {
        #[arg(long = "vars", short = 'k')]
        k: usize,
        #[arg(long)]
        poly: String,
        /// Also print a second, different decomposition when one exists
        #[arg(long)]
        alt: bool,
        #[arg(long)]
        json: bool,
    },
    /// Dimension of the hit space and of QP_k in one degree
    HitDim {
        #[arg(long = "vars", short = 'k')]
        k: usize,
        #[arg(long, short = 'd')]
        degree: u64,
        #[arg(long)]
        json: bool,
        /// Write the hit matrix in SMS triple format
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// hit-dim for a list or range of degrees, e.g. "2,4,8,16" or "1..6"
    Table {
        #[arg(long = "vars", short = 'k')]
        k: usize,
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        json: bool,
    },
    /// alpha, mu, Wood and Kameko data for a degree, or weight vectors of a polynomial
    Info {
        #[arg(long = "vars", short = 'k')]
        k: usize,
        #[arg(
            long,
            short = 'd',
            conflicts_with = "poly",
            required_unless_present = "poly"
        )]
        degree: Option<u64>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Result of one invocation: exit status and the text for each stream.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }

    fn from_error(e: &Error) -> Self {
        Outcome::fail(exit_code(e), format!("error: {e}\n"))
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::CertificateFailed(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

pub fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, mult) = match s.char_indices().last() {
        Some((i, 'K' | 'k')) => (&s[..i], 1u64 << 10),
        Some((i, 'M' | 'm')) => (&s[..i], 1 << 20),
        Some((i, 'G' | 'g')) => (&s[..i], 1 << 30),
        Some((i, 'T' | 't')) => (&s[..i], 1 << 40),
        _ => (s, 1),
    };
    digits
        .parse::<u64>()
        .ok()
        .and_then(|n| n.checked_mul(mult))
        .ok_or_else(|| format!("invalid byte count {s:?}"))
}

/// Expands "2,4,8" and "1..6" (inclusive), or a mix of both.
pub fn parse_degrees(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a
                .trim()
                .parse()
                .map_err(|_| format!("bad range start in {part:?}"))?;
            let b: u64 = b
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| format!("bad range end in {part:?}"))?;
            if a > b {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad degree {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("no degrees given".into());
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let cfg = cli.engine.config();
    match &cli.command {
        Command::HitCheck { k, poly, alt, json } => hit_check(*k, poly, *alt, *json, &cfg),
        Command::HitDim {
            k,
            degree,
            json,
            dump_matrix,
        } => hit_dim(*k, *degree, *json, dump_matrix.as_ref(), &cfg),
        Command::Table { k, degrees, json } => table(*k, degrees, *json, &cfg),
        Command::Info {
            k,
            degree,
            poly,
            json,
        } => info(*k, *degree, poly.as_deref(), *json),
    }
}

#[derive(Debug, Serialize)]
pub struct PartJson {
    pub j: u32,
    pub operator: u64,
    pub terms: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct HitCheckJson {
    pub hit: bool,
    pub degree: u64,
    pub k: usize,
    pub poly: String,
    pub decomposition: Option<Vec<PartJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<Option<Vec<PartJson>>>,
}

fn parts_json(d: &Decomposition) -> Vec<PartJson> {
    d.parts()
        .iter()
        .map(|(j, h)| PartJson {
            j: *j,
            operator: 1u64 << j,
            terms: h.terms().iter().map(ToString::to_string).collect(),
        })
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn hit_check(k: usize, expr: &str, alt: bool, json: bool, cfg: &HitConfig) -> Outcome {
    let f = match parse_poly(expr, k) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: {}\n", e.annotate(expr))),
    };
    let r = match decide_hit_with(&f, k, cfg, alt) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let code = if r.hit { EXIT_OK } else { EXIT_NOT_HIT };

    let stdout = if json {
        to_json(&HitCheckJson {
            hit: r.hit,
            degree: r.degree,
            k,
            poly: f.to_string(),
            decomposition: r.decomposition.as_ref().map(parts_json),
            alternative: (alt && r.hit).then(|| r.alternative.as_ref().map(parts_json)),
        })
    } else {
        let mut s = String::new();
        if let Some(dec) = &r.decomposition {
            let _ = writeln!(s, "hit: {f} (degree {}, k = {k})", r.degree);
            let _ = writeln!(s, "f = {dec}");
            if alt {
                match &r.alternative {
                    Some(a) => {
                        let _ = writeln!(s, "alternative:");
                        let _ = writeln!(s, "f = {a}");
                    }
                    None => {
                        let _ = writeln!(
                            s,
                            "alternative: none (the generator images are linearly independent)"
                        );
                    }
                }
            }
        } else {
            let _ = writeln!(s, "not hit: {f} (degree {}, k = {k})", r.degree);
        }
        s
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct HitDimJson {
    pub k: usize,
    pub d: u64,
    pub n_monomials: u64,
    pub n_tasks: u64,
    pub n_columns: u64,
    pub rank: u64,
    pub q_dim: u64,
}

fn compute_dim(
    k: usize,
    d: u64,
    cfg: &HitConfig,
    dump: Option<&PathBuf>,
) -> Result<HitDimJson, Error> {
    let hm = build_hit_matrix_with(k, d, cfg)?;
    if let Some(path) = dump {
        let file = std::fs::File::create(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot create {}: {e}", path.display()))
        })?;
        hm.matrix
            .write_sms(std::io::BufWriter::new(file))
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    let n = basis_dimension(k, d)?;
    let rank = if d == 0 {
        0
    } else {
        gf2::rank_with_limit(&hm.matrix, cfg.memory_cap)?.rank as u64
    };
    Ok(HitDimJson {
        k,
        d,
        n_monomials: n,
        n_tasks: hm.total_tasks() as u64,
        n_columns: hm.matrix.n_cols() as u64,
        rank,
        q_dim: n - rank,
    })
}

fn hit_dim(k: usize, d: u64, json: bool, dump: Option<&PathBuf>, cfg: &HitConfig) -> Outcome {
    let r = match compute_dim(k, d, cfg, dump) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    if json {
        return Outcome::ok(to_json(&r));
    }
    let mut s = String::new();
    let _ = writeln!(s, "k = {}, d = {}", r.k, r.d);
    let _ = writeln!(s, "monomials (N): {}", r.n_monomials);
    let _ = writeln!(s, "generator tasks: {}", r.n_tasks);
    let _ = writeln!(s, "non-zero columns: {}", r.n_columns);
    let _ = writeln!(s, "rank (hit dimension): {}", r.rank);
    let _ = writeln!(s, "dim (QP_k)_d: {}", r.q_dim);
    Outcome::ok(s)
}

#[derive(Debug, Serialize)]
pub struct TableRowJson {
    pub d: u64,
    #[serde(flatten)]
    pub result: Option<HitDimJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub seconds: f64,
}

fn table(k: usize, degrees: &str, json: bool, cfg: &HitConfig) -> Outcome {
    let degrees = match parse_degrees(degrees) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: {e}\n")),
    };
    let mut rows = Vec::new();
    let mut worst = EXIT_OK;
    for d in degrees {
        let start = Instant::now();
        let r = compute_dim(k, d, cfg, None);
        let seconds = start.elapsed().as_secs_f64();
        match r {
            Ok(r) => rows.push(TableRowJson {
                d,
                result: Some(r),
                error: None,
                seconds,
            }),
            Err(e) => {
                worst = worst.max(exit_code(&e));
                rows.push(TableRowJson {
                    d,
                    result: None,
                    error: Some(e.to_string()),
                    seconds,
                })
            }
        }
    }

    let stdout = if json {
        to_json(&rows)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "k = {k}");
        let _ = writeln!(
            s,
            "{:>6} {:>12} {:>12} {:>8} {:>10}",
            "d", "N", "rank", "q_dim", "seconds"
        );
        for row in &rows {
            match (&row.result, &row.error) {
                (Some(r), _) => {
                    let _ = writeln!(
                        s,
                        "{:>6} {:>12} {:>12} {:>8} {:>10.3}",
                        r.d, r.n_monomials, r.rank, r.q_dim, row.seconds
                    );
                }
                (None, Some(e)) => {
                    let _ = writeln!(s, "{:>6} error: {e}", row.d);
                }
                (None, None) => unreachable!("row without result or error"),
            }
        }
        s
    };
    Outcome {
        code: worst,
        stdout,
        stderr: String::new(),
    }
}

#[derive(Debug, Serialize)]
pub struct WeightJson {
    pub monomial: String,
    pub weight_vector: Vec<u32>,
    pub weight_degree: u64,
}

#[derive(Debug, Serialize)]
pub struct InfoJson {
    pub k: usize,
    pub d: u64,
    pub alpha_d_plus_k: u32,
    pub mu: Option<u64>,
    pub wood_vanishes: bool,
    pub kameko_target: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightJson>>,
}

fn info(k: usize, degree: Option<u64>, poly: Option<&str>, json: bool) -> Outcome {
    if k == 0 {
        return Outcome::fail(
            EXIT_INPUT,
            "error: the variable count must be at least 1\n".into(),
        );
    }
    let (d, weights) = match (degree, poly) {
        (Some(d), _) => (d, None),
        (None, Some(expr)) => {
            let f = match parse_poly(expr, k) {
                Ok(f) => f,
                Err(e) => {
                    return Outcome::fail(EXIT_INPUT, format!("error: {}\n", e.annotate(expr)))
                }
            };
            let Some(d) = f.degree() else {
                return Outcome::fail(EXIT_INPUT, "error: the polynomial is zero\n".into());
            };
            let w = f
                .terms()
                .iter()
                .map(|m| {
                    let w = weight_vector(m);
                    WeightJson {
                        monomial: m.to_string(),
                        weight_degree: w.degree(),
                        weight_vector: w.0,
                    }
                })
                .collect();
            (d, Some(w))
        }
        (None, None) => {
            return Outcome::fail(EXIT_INPUT, "error: give --degree or --poly\n".into())
        }
    };
    let Some(sum) = d.checked_add(k as u64) else {
        return Outcome::fail(EXIT_INPUT, "error: degree too large\n".into());
    };
    let r = InfoJson {
        k,
        d,
        alpha_d_plus_k: alpha(sum),
        mu: mu(d).ok(),
        wood_vanishes: d > 0 && wood_vanishes(k, d),
        kameko_target: if d > 0 { kameko_reduces(k, d) } else { None },
        weights,
    };
    if json {
        return Outcome::ok(to_json(&r));
    }
    let mut s = String::new();
    let _ = writeln!(s, "k = {k}, d = {d}");
    let _ = writeln!(s, "alpha(d + k) = alpha({sum}) = {}", r.alpha_d_plus_k);
    match r.mu {
        Some(m) => {
            let _ = writeln!(s, "mu(d) = {m}");
        }
        None => {
            let _ = writeln!(s, "mu(d) = undefined");
        }
    }
    let _ = writeln!(s, "Wood vanishes: {}", r.wood_vanishes);
    match r.kameko_target {
        Some(t) => {
            let _ = writeln!(s, "Kameko target: {t} ((QP_{k})_{d} ~ (QP_{k})_{t})");
        }
        None => {
            let _ = writeln!(s, "Kameko target: none");
        }
    }
    if let Some(ws) = &r.weights {
        for w in ws {
            let _ = writeln!(
                s,
                "weight vector of {}: {}",
                w.monomial,
                f2hit::WeightVector(w.weight_vector.clone())
            );
        }
    }
    Outcome::ok(s)
}

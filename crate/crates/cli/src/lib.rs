//! `unicomplex` command-line front end.
//!
//! Every command writes one artifact (stdout or --output). Artifacts of the
//! expensive commands are cached by content key; see [`cache`].

pub mod cache;
pub mod tables;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use unicomplex::buchstaber::{self, SearchOptions, DEFAULT_BUDGET};
use unicomplex::products::cup_length_report;
use unicomplex::tor::{
    betti_recursion, betti_via_cohomology, betti_via_hochster_euler, betti_via_morse,
    torsion_check, BettiTable, Method, COHOMOLOGY_ORACLE_CAP,
};
use unicomplex::universal::{
    f_vector_closed, link_f_vector_closed, BuildOptions, Family, UniversalComplex,
};
use unicomplex::{FVector, SimplicialComplex};

use cache::Cache;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] unicomplex::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    /// The artifact was written but only carries bounds.
    #[error("search budget exhausted; bounds reported")]
    Partial,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use unicomplex::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Verification(_) => 1,
            CliError::Partial => 3,
            CliError::Core(e) => match e {
                E::ResourceLimit(_) | E::BudgetExhausted { .. } => 3,
                E::Internal(_) => 1,
                _ => 2,
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "unicomplex",
    version,
    about = "Universal complexes over finite fields"
)]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, env = cache::CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Source {
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    /// A complex in JSON form, instead of --family/--p/--n.
    #[arg(long)]
    pub complex: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Morse,
    Recursion,
    EulerOracle,
    CohomologyOracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Morse => Method::Morse,
            MethodArg::Recursion => Method::Recursion,
            MethodArg::EulerOracle => Method::EulerOracle,
            MethodArg::CohomologyOracle => Method::CohomologyOracle,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build X(F_p^n) or K(F_p^n) and write it as JSON.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        max_vertices: usize,
    },
    /// f-vector, closed form for universal complexes.
    Fvector {
        #[command(flatten)]
        source: Source,
        /// f-vector of the link of a simplex of this dimension instead.
        #[arg(long)]
        link: Option<usize>,
        /// Count faces of the built complex instead of using the closed form.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Bigraded Betti numbers.
    Betti {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "recursion")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Integral cohomology of every full subcomplex.
    Torsion {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        cap: usize,
    },
    /// Cup-length bounds of the moment-angle complex.
    CupLength {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
    },
    /// Mod-p Buchstaber invariant of a complex.
    Buchstaber {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long, conflicts_with = "bounds_only")]
        exact: bool,
        #[arg(long)]
        bounds_only: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// ω_{p,q}(n) and the θ_p(n) bracket.
    Omega {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run every module's invariant suite.
    Verify,
    /// Recompute the Betti tables of X(F_2^3) and X(F_2^4) and
    /// compare them with the expected values.
    ReproduceTables {
        #[arg(long, value_enum, default_value = "recursion")]
        method: MethodArg,
        /// Also write tableN.json and tableN.csv here.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

enum Input {
    Universal(Family, u32, usize),
    File(PathBuf, Vec<u8>),
}

impl Source {
    fn resolve(&self) -> CliResult<Input> {
        match (&self.complex, self.family, self.p, self.n) {
            (Some(path), None, None, None) => {
                let bytes = fs::read(path)?;
                Ok(Input::File(path.clone(), bytes))
            }
            (None, Some(f), Some(p), Some(n)) => Ok(Input::Universal(f, p, n)),
            _ => Err(CliError::Usage(
                "give either --complex FILE or all of --family, --p, --n".into(),
            )),
        }
    }
}

impl Input {
    fn key_parts(&self) -> Vec<String> {
        match self {
            Input::Universal(f, p, n) => vec![f.to_string(), p.to_string(), n.to_string()],
            Input::File(_, bytes) => vec!["file".into(), cache::content_hash(bytes)],
        }
    }

    fn complex(&self) -> CliResult<SimplicialComplex> {
        match self {
            Input::Universal(f, p, n) => {
                let u = UniversalComplex::build(*f, *p, *n, &BuildOptions::default())?;
                Ok(u.base()?.clone())
            }
            Input::File(path, bytes) => {
                let text = std::str::from_utf8(bytes)
                    .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
                Ok(SimplicialComplex::from_json(text)?)
            }
        }
    }
}

fn read_complex(path: &Path) -> CliResult<(SimplicialComplex, Vec<u8>)> {
    let bytes = fs::read(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    Ok((SimplicialComplex::from_json(text)?, bytes))
}

fn fvector_json(f: &FVector) -> String {
    let entries: Vec<String> = f.entries().iter().map(|x| x.to_string()).collect();
    serde_json::to_string_pretty(&json!({ "f_vector": entries })).expect("serializable") + "\n"
}

fn fvector_csv(f: &FVector) -> String {
    let mut out = String::from("i,f\n");
    for (i, x) in f.entries().iter().enumerate() {
        out.push_str(&format!("{},{x}\n", i as isize - 1));
    }
    out
}

fn compute_betti(input: &Input, method: Method) -> CliResult<BettiTable> {
    match (input, method) {
        (Input::Universal(f, p, n), Method::Recursion) => Ok(betti_recursion(*f, *p, *n)?),
        (Input::File(..), Method::Recursion) => Err(CliError::Usage(
            "the recursion needs --family/--p/--n".into(),
        )),
        (_, Method::Morse) => Ok(betti_via_morse(&input.complex()?)?),
        (_, Method::EulerOracle) => Ok(betti_via_hochster_euler(&input.complex()?)?),
        (_, Method::CohomologyOracle) => Ok(betti_via_cohomology(
            &input.complex()?,
            COHOMOLOGY_ORACLE_CAP,
        )?),
    }
}

fn render_betti(t: &BettiTable, format: Format) -> String {
    match format {
        Format::Json => t.to_json() + "\n",
        Format::Csv => t.to_csv(),
        Format::Table => t.to_string(),
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Table => "table",
    }
}

fn pretty(v: &impl serde::Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

struct Runner {
    cache: Option<Cache>,
}

impl Runner {
    fn cached(
        &self,
        parts: Vec<String>,
        compute: impl FnOnce() -> CliResult<Vec<u8>>,
    ) -> CliResult<Vec<u8>> {
        match &self.cache {
            Some(c) => {
                let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
                c.get_or_compute(&c.key(&refs), compute)
            }
            None => compute(),
        }
    }
}

/// Runs one command and returns the artifact bytes. Errors carry the exit
/// code; `Partial` means `out` holds a bounds-only artifact.
pub fn execute(cli: &Cli, out: &mut Vec<u8>, log: &mut dyn Write) -> CliResult<()> {
    let runner = Runner {
        cache: if cli.no_cache {
            None
        } else {
            Cache::locate(cli.cache_dir.as_deref())
        },
    };
    match &cli.command {
        Command::Generate {
            family,
            p,
            n,
            max_vertices,
        } => {
            let opts = BuildOptions {
                max_vertices: *max_vertices,
                ..Default::default()
            };
            let u = UniversalComplex::build(*family, *p, *n, &opts)?;
            out.extend(u.to_json()?.into_bytes());
            out.push(b'\n');
        }
        Command::Fvector {
            source,
            link,
            enumerate,
            format,
        } => {
            let input = source.resolve()?;
            let mut parts = vec!["fvector".to_string()];
            parts.extend(input.key_parts());
            parts.extend([
                format!("{link:?}"),
                enumerate.to_string(),
                format_name(*format).into(),
            ]);
            let bytes = runner.cached(parts, || {
                let f = match (&input, link, enumerate) {
                    (Input::Universal(fam, p, n), None, false) => f_vector_closed(*fam, *p, *n)?,
                    (Input::Universal(fam, p, n), Some(m), false) => {
                        link_f_vector_closed(*fam, *p, *n, *m)?
                    }
                    (_, None, _) => input.complex()?.f_vector(),
                    (_, Some(m), _) => {
                        let k = input.complex()?;
                        let sigma = k
                            .faces_by_size()
                            .get(*m + 1)
                            .and_then(|b| b.first())
                            .copied()
                            .ok_or_else(|| CliError::Usage(format!("no {m}-simplex")))?;
                        k.link(&sigma)?.complex.f_vector()
                    }
                };
                Ok(match format {
                    Format::Json => fvector_json(&f),
                    Format::Csv => fvector_csv(&f),
                    Format::Table => format!("{f}\n"),
                }
                .into_bytes())
            })?;
            out.extend(bytes);
        }
        Command::Betti {
            source,
            method,
            format,
        } => {
            let input = source.resolve()?;
            let method: Method = (*method).into();
            let mut parts = vec!["betti".to_string()];
            parts.extend(input.key_parts());
            parts.extend([method.to_string(), format_name(*format).into()]);
            let bytes = runner.cached(parts, || {
                Ok(render_betti(&compute_betti(&input, method)?, *format).into_bytes())
            })?;
            out.extend(bytes);
        }
        Command::Torsion { source, cap } => {
            let input = source.resolve()?;
            let mut parts = vec!["torsion".to_string()];
            parts.extend(input.key_parts());
            let bytes = runner.cached(parts, || {
                let report = torsion_check(&input.complex()?, *cap)?;
                Ok(pretty(&json!({
                    "torsion_free": report.is_torsion_free(),
                    "report": report,
                })))
            })?;
            out.extend(bytes);
        }
        Command::CupLength { family, p, n } => {
            let parts = vec![
                "cup-length".into(),
                family.to_string(),
                p.to_string(),
                n.to_string(),
            ];
            let bytes = runner.cached(parts, || {
                let u = UniversalComplex::unmaterialized(*family, *p, *n)?;
                Ok(pretty(&cup_length_report(&u)?))
            })?;
            out.extend(bytes);
        }
        Command::Buchstaber {
            complex,
            p,
            exact: _,
            bounds_only,
            budget,
        } => {
            let (k, bytes) = read_complex(complex)?;
            let mode = if *bounds_only { "bounds" } else { "exact" };
            let parts = vec![
                "buchstaber".into(),
                cache::content_hash(&bytes),
                p.to_string(),
                mode.into(),
                budget.to_string(),
            ];
            let mut partial = false;
            let body = runner.cached(parts, || {
                let report = if *bounds_only {
                    buchstaber::bounds_report(&k, *p)?
                } else {
                    let opts = SearchOptions {
                        budget: *budget,
                        use_lower_bounds: true,
                    };
                    buchstaber::s_p(&k, *p, &opts)?
                };
                Ok(pretty(&report))
            })?;
            if !*bounds_only {
                let v: serde_json::Value = serde_json::from_slice(&body)
                    .map_err(|e| CliError::Verification(e.to_string()))?;
                partial = v["budget_exhausted"].as_bool().unwrap_or(false);
            }
            out.extend(body);
            if partial {
                return Err(CliError::Partial);
            }
        }
        Command::Omega { p, q, n, budget } => {
            let parts = vec![
                "omega".into(),
                p.to_string(),
                q.to_string(),
                n.to_string(),
                budget.to_string(),
            ];
            let bytes = runner.cached(parts, || {
                let w = buchstaber::omega(*p, *q, *n, *budget)?;
                let theta = buchstaber::theta_bounds(*p, *n)?;
                Ok(pretty(&json!({ "omega": w, "theta": theta })))
            })?;
            out.extend(bytes);
        }
        Command::Verify => {
            let mut failed = Vec::new();
            for check in verify::SUITE {
                let result = (check.run)();
                let ok = matches!(result, Ok(true));
                let line = match &result {
                    Ok(_) => format!(
                        "{} {}: {}\n",
                        if ok { "PASS" } else { "FAIL" },
                        check.module,
                        check.name
                    ),
                    Err(e) => format!("FAIL {}: {} ({e})\n", check.module, check.name),
                };
                out.extend(line.into_bytes());
                if !ok {
                    failed.push(check.name);
                }
            }
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join(", ")));
            }
        }
        Command::ReproduceTables { method, output_dir } => {
            let method: Method = (*method).into();
            let mut mismatches = 0;
            for expected in [&tables::X2_3, &tables::X2_4] {
                let t = compute_betti(&Input::Universal(Family::X, 2, expected.n), method)?;
                let cols = (1 << expected.n) - 1;
                let diff = tables::diff(&t, expected);
                let mut text = format!("beta^(l-i,2i) of X(F_2^{}) [{method}]\n", expected.n);
                text.push_str(&tables::render(&t, expected.n, cols));
                if diff.is_empty() {
                    text.push_str("matches the expected values\n\n");
                } else {
                    for (l, i, want, got) in &diff {
                        text.push_str(&format!(
                            "mismatch at l={l} i={i}: expected {want}, got {got}\n"
                        ));
                    }
                    text.push('\n');
                    mismatches += diff.len();
                }
                out.extend(text.into_bytes());
                if let Some(dir) = output_dir {
                    fs::create_dir_all(dir)?;
                    fs::write(
                        dir.join(format!("betti_x2_{}.json", expected.n)),
                        t.to_json() + "\n",
                    )?;
                    fs::write(dir.join(format!("betti_x2_{}.csv", expected.n)), t.to_csv())?;
                }
            }
            if mismatches > 0 {
                writeln!(log, "{mismatches} cells differ")?;
                return Err(CliError::Verification(format!(
                    "{mismatches} table cells differ"
                )));
            }
        }
    }
    Ok(())
}

/// Parses arguments, runs, writes the artifact, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    let mut out = Vec::new();
    let result = execute(&cli, &mut out, &mut std::io::stderr());
    let written = match &cli.output {
        Some(path) if !out.is_empty() => fs::write(path, &out),
        _ => std::io::stdout().write_all(&out),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

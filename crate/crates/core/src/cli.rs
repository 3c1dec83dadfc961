//! The `ppgf` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::algebra::{RationalFunction, RationalJson, URat};
use crate::engine::{Engine, Strategy};
use crate::families::Family;
use crate::oracle;
use crate::poset::{parse_poset_file, Poset};
use crate::recurrence::RecurrenceSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ppgf", version, about = "Generating functions of P-partitions")]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multivariate generating function f_P(x).
    Gfun {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = StrategyArg::Default)]
        strategy: StrategyArg,
        #[arg(long)]
        json: bool,
    },
    /// q-generating function f_P(q).
    Qgfun {
        #[command(flatten)]
        input: Input,
        /// Also print the series up to q^B.
        #[arg(long, value_name = "B")]
        series: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Discover and print the recurrence system of a block family.
    Recurrence {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a family member through its recurrence.
    Eval {
        #[command(flatten)]
        input: Input,
        /// Keep every variable instead of setting them all to q.
        #[arg(long)]
        multivariate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a generating function against brute-force enumeration.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Degree up to which the series are compared.
        #[arg(long, default_value_t = 8)]
        bound: u32,
        /// Check this rational function (text or JSON) instead of the
        /// engine's result.
        #[arg(long, value_name = "FILE")]
        against: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Poset file; with `--family rpower`, the block and its `rel:` lines.
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum StrategyArg {
    Default,
    Reversed,
    PleFirst,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Default => Strategy::Default,
            StrategyArg::Reversed => Strategy::Reversed,
            StrategyArg::PleFirst => Strategy::PleFirst,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Invalid(e.to_string())
            }
        }
    )*};
}

invalid_from!(
    crate::poset::PosetError,
    crate::recurrence::RecurrenceError,
    crate::algebra::AlgebraError
);

enum Resolved {
    File(Poset),
    Family(Family, usize),
}

impl Resolved {
    fn poset(&self) -> Result<Poset, CliError> {
        match self {
            Resolved::File(p) => Ok(p.clone()),
            Resolved::Family(f, n) => Ok(f.poset(*n)?),
        }
    }

    fn cache_key(&self) -> Option<String> {
        match self {
            Resolved::Family(f, n) if !matches!(f, Family::RPower { .. }) => {
                Some(format!("{}-{}", f.name(), n))
            }
            _ => None,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn resolve(input: &Input) -> Result<Resolved, CliError> {
    if input.n == 0 {
        return Err(CliError::Invalid("--n must be at least 1".into()));
    }
    match (&input.family, &input.file) {
        (Some(name), file) if name == "rpower" => {
            let path = file.as_ref().ok_or_else(|| {
                CliError::Invalid("--family rpower needs a block poset file".into())
            })?;
            let parsed = parse_poset_file(&read(path)?)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            for (a, b) in parsed.rel.pairs() {
                if !parsed.poset.contains(a) || !parsed.poset.contains(b) {
                    return Err(CliError::Invalid(format!(
                        "rel {a} {b} is outside the block"
                    )));
                }
            }
            Ok(Resolved::Family(
                Family::RPower {
                    block: parsed.poset,
                    glue: parsed.rel,
                },
                input.n,
            ))
        }
        (Some(name), None) => Ok(Resolved::Family(
            name.parse::<Family>().map_err(CliError::Invalid)?,
            input.n,
        )),
        (Some(_), Some(_)) => Err(CliError::Invalid(
            "give either a poset file or --family, not both".into(),
        )),
        (None, Some(path)) => {
            let parsed = parse_poset_file(&read(path)?)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            Ok(Resolved::File(parsed.poset))
        }
        (None, None) => Err(CliError::Invalid(
            "no input: give a poset file or --family".into(),
        )),
    }
}

/// On-disk JSON cache keyed by command, family and `n`, under
/// `$PPGF_CACHE_DIR`. Entries from another crate version are ignored.
#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    key: String,
    result: RationalJson,
}

fn cache_path(kind: &str, key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("PPGF_CACHE_DIR")?;
    Some(PathBuf::from(dir).join(format!("{kind}-{key}.json")))
}

fn cached<F>(kind: &str, key: Option<String>, compute: F) -> Result<RationalFunction, CliError>
where
    F: FnOnce() -> Result<RationalFunction, CliError>,
{
    let Some(path) = key.as_deref().and_then(|k| cache_path(kind, k)) else {
        return compute();
    };
    let key = key.unwrap();
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(entry) = serde_json::from_str::<CacheEntry>(&text) {
            if entry.version == env!("CARGO_PKG_VERSION") && entry.key == key {
                if let Ok(f) = RationalFunction::from_json(&entry.result) {
                    return Ok(f);
                }
            }
        }
    }
    let f = compute()?;
    let entry = CacheEntry {
        version: env!("CARGO_PKG_VERSION").into(),
        key,
        result: f.to_json(),
    };
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    let _ = std::fs::write(
        &path,
        serde_json::to_string(&entry).expect("cache entries serialize"),
    );
    Ok(f)
}

fn recurrence_of(family: &Family) -> Result<RecurrenceSpec, CliError> {
    family
        .recurrence()
        .ok_or_else(|| CliError::Invalid(format!("family {family} has no block decomposition")))
}

fn print_rf(out: &mut dyn Write, f: &RationalFunction, json: bool) -> std::io::Result<()> {
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&f.to_json()).expect("serializable")
        )
    } else {
        writeln!(out, "{f}")
    }
}

fn run_command(cmd: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Gfun {
            input,
            strategy,
            json,
        } => {
            let src = resolve(input)?;
            let p = src.poset()?;
            let f = Engine::new((*strategy).into()).gfun(&p);
            print_rf(out, &f, *json)?;
        }
        Command::Qgfun {
            input,
            series,
            json,
        } => {
            let src = resolve(input)?;
            let p = src.poset()?;
            let f = cached("qgfun", src.cache_key(), || {
                Ok(Engine::new(Strategy::Default).gfun_q(&p))
            })?;
            let coeffs = series.map(|b| URat::from_weighted(&f, |_| 1).series(b as usize));
            if *json {
                let mut v = serde_json::json!({ "result": f.to_json() });
                if let Some(c) = &coeffs {
                    v["series"] =
                        serde_json::json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                }
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{f}")?;
                if let Some(c) = coeffs {
                    let terms: Vec<String> = c
                        .iter()
                        .enumerate()
                        .map(|(k, x)| format!("{x}*q^{k}"))
                        .collect();
                    writeln!(out, "series: {}", terms.join(" + "))?;
                }
            }
        }
        Command::Recurrence { input, json } => {
            let Resolved::Family(family, _) = resolve(input)? else {
                return Err(CliError::Invalid(
                    "recurrence needs --family (use rpower with a block file)".into(),
                ));
            };
            let sys = recurrence_of(&family)?.discover()?;
            if *json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&sys.to_json()).expect("serializable")
                )?;
            } else {
                write!(out, "{}", sys.render())?;
            }
        }
        Command::Eval {
            input,
            multivariate,
            json,
        } => {
            let src = resolve(input)?;
            let Resolved::Family(family, n) = &src else {
                return Err(CliError::Invalid("eval needs --family".into()));
            };
            let spec = recurrence_of(family)?;
            let copies = family.copies(*n);
            let kind = if *multivariate { "eval-x" } else { "eval-q" };
            let f = cached(kind, src.cache_key(), || {
                if copies == 0 {
                    let p = family.poset(*n)?;
                    let mut e = Engine::new(Strategy::Default);
                    return Ok(if *multivariate {
                        e.gfun(&p)
                    } else {
                        e.gfun_q(&p)
                    });
                }
                let sys = spec.discover()?;
                Ok(if *multivariate {
                    sys.evaluate(copies)?
                } else {
                    sys.evaluate_q(copies)?.to_rational()
                })
            })?;
            print_rf(out, &f, *json)?;
        }
        Command::Verify {
            input,
            bound,
            against,
        } => {
            let src = resolve(input)?;
            let p = src.poset()?;
            let f = match against {
                Some(path) => {
                    let text = read(path)?;
                    match serde_json::from_str::<RationalJson>(&text) {
                        Ok(j) => RationalFunction::from_json(&j)?,
                        Err(_) => RationalFunction::parse(text.trim())?,
                    }
                }
                None => Engine::new(Strategy::Default).gfun(&p),
            };
            let report = oracle::verify(&p, &f, *bound);
            writeln!(out, "{report}")?;
            return Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL });
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    if let Some(t) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }
    match run_command(&cli.command, out) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(CliError::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

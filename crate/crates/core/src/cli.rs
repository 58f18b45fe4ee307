//! Command-line front end. Exit codes: 0 success, 1 a refuted claim or a
//! failed identity, 2 a usage or input error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::addstruct::{Catalog, ParityPolicy};
use crate::characters::{
    defect_and_cg, kw_denominator_check, typical_character, KwReport, SignConvention,
};
use crate::error::{Error, Result};
use crate::rootsys::{build, Root, RootSystem, RootSystemSpec};
use crate::splints::{
    enumerate_splints, parse_fixtures, verify_all, RankPolicy, Splint, SplintConfig, Stem,
    VerdictKind, DEFAULT_MAX_POSITIVE, SHIPPED_FIXTURES,
};
use crate::weight::Weight;

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "SUPER_SPLINT_THREADS";

const DEFAULT_FIXTURES: &str = "fixtures/paper_claims.json";

#[derive(Parser, Debug)]
#[command(
    name = "super-splint",
    version,
    about = "Root systems, splints and formal characters of Lie superalgebras"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show simple and positive roots.
    Roots { spec: String },
    /// Enumerate all splints.
    Splints {
        spec: String,
        /// Use the even part of the system.
        #[arg(long)]
        even_part: bool,
        /// Print every splint with its root sets.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check the claimed splints in a fixture file.
    VerifyPaper {
        /// Fixture file (defaults to the shipped claims).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Exit 0 even when claims are refuted.
        #[arg(long)]
        allow_refuted: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Recognize a set of roots as a stem.
    Recognize {
        spec: String,
        /// Roots of the system, e.g. `e1-e2`.
        #[arg(required = true)]
        roots: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Typical character of a highest weight.
    Char {
        spec: String,
        /// Highest weight, e.g. `2e1+e2` or `d1`.
        weight: String,
    },
    /// Defect-one denominator identity check.
    Denominator {
        spec: String,
        /// Isotropic root (defaults to the first isotropic positive root).
        #[arg(long)]
        isotropic: Option<String>,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign_convention: SignArg,
    },
    /// Defect, C_g and maximal isotropic sets.
    Defect { spec: String },
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = RankArg::Paper)]
    rank_policy: RankArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Preserve)]
    parity: ParityArg,
    /// Require embeddings to reflect sums as well as preserve them.
    #[arg(long)]
    strict_embedding: bool,
    /// Largest number of positive roots searched.
    #[arg(long, default_value_t = DEFAULT_MAX_POSITIVE)]
    max_positive: usize,
    /// Stop after this many splints.
    #[arg(long)]
    max_results: Option<usize>,
    /// Accepted for compatibility; output order is always canonical.
    #[arg(long)]
    seed_order: bool,
}

impl SearchArgs {
    fn config(&self) -> SplintConfig {
        SplintConfig {
            rank_policy: match self.rank_policy {
                RankArg::Paper => RankPolicy::PaperStrict,
                RankArg::None => RankPolicy::None,
            },
            parity: match self.parity {
                ParityArg::Preserve => ParityPolicy::Preserve,
                ParityArg::Ignore => ParityPolicy::Ignore,
            },
            strict_embedding: self.strict_embedding,
            max_results: self.max_results.unwrap_or(usize::MAX),
            max_positive: self.max_positive,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RankArg {
    Paper,
    None,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ParityArg {
    Preserve,
    Ignore,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SignArg {
    Plus,
    Minus,
}

/// Parses `args` (program name first), runs the command on a pool of
/// `threads` workers (rayon's default when `None`) and returns the exit code.
pub fn run<I, T>(args: I, threads: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok((code, text)) => match out.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Reads the worker count from the environment.
pub fn threads_from_env() -> std::result::Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            )),
        },
    }
}

/// Runs a command, returning the exit code and the rendered output.
fn execute(cli: &Cli) -> Result<(i32, String)> {
    let mut buf = String::new();
    let code = match &cli.command {
        Command::Roots { spec } => roots(&system(spec)?, cli.json, &mut buf),
        Command::Splints {
            spec,
            even_part,
            list,
            search,
        } => {
            let mut rs = system(spec)?;
            if *even_part {
                rs = rs.even_part();
            }
            splints(&rs, &search.config(), *list, cli.json, &mut buf)?
        }
        Command::VerifyPaper {
            fixtures,
            allow_refuted,
            search,
        } => verify_paper(
            fixtures.as_deref(),
            *allow_refuted,
            &search.config(),
            cli.json,
            &mut buf,
        )?,
        Command::Recognize {
            spec,
            roots,
            search,
        } => recognize(&system(spec)?, roots, &search.config(), cli.json, &mut buf)?,
        Command::Char { spec, weight } => character(&system(spec)?, weight, cli.json, &mut buf)?,
        Command::Denominator {
            spec,
            isotropic,
            sign_convention,
        } => {
            let convention = match sign_convention {
                SignArg::Plus => SignConvention::Plus,
                SignArg::Minus => SignConvention::Minus,
            };
            denominator(
                &system(spec)?,
                isotropic.as_deref(),
                convention,
                cli.json,
                &mut buf,
            )?
        }
        Command::Defect { spec } => defect(&spec.parse()?, cli.json, &mut buf)?,
    };
    Ok((code, buf))
}

fn system(spec: &str) -> Result<RootSystem> {
    build(&spec.parse::<RootSystemSpec>()?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn names(roots: &[Root]) -> Vec<String> {
    roots.iter().map(|r| r.to_string()).collect()
}

fn roots(rs: &RootSystem, json: bool, buf: &mut String) -> i32 {
    let (even, odd) = rs.counts();
    if json {
        *buf = to_json(&json!({
            "algebra": rs.label(),
            "dims": { "e": rs.dims().e, "d": rs.dims().d },
            "simple": names(rs.simple()),
            "positive": names(rs.positive()),
            "even": names(&rs.even_positive()),
            "odd": names(&rs.odd_positive()),
            "counts": { "even": even, "odd": odd },
        }));
        return 0;
    }
    let line = |v: Vec<String>| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.join(", ")
        }
    };
    buf.push_str(&format!(
        "{}  (e: {}, d: {})\n",
        rs.label(),
        rs.dims().e,
        rs.dims().d
    ));
    buf.push_str(&format!("simple:   {}\n", line(names(rs.simple()))));
    buf.push_str(&format!(
        "even+ ({even}): {}\n",
        line(names(&rs.even_positive()))
    ));
    buf.push_str(&format!(
        "odd+  ({odd}): {}\n",
        line(names(&rs.odd_positive()))
    ));
    0
}

/// Label with the larger stem first, so both orientations group together.
fn unordered_label(s: &Splint) -> String {
    let (a, b) = (&s.stem1, &s.stem2);
    let key = |x: &Stem| (std::cmp::Reverse(x.roots.len()), x.stem_type.to_string());
    let (first, second) = if key(a) <= key(b) { (a, b) } else { (b, a) };
    format!("({} | {})", first.stem_type, second.stem_type)
}

fn splints(
    rs: &RootSystem,
    cfg: &SplintConfig,
    list: bool,
    json: bool,
    buf: &mut String,
) -> Result<i32> {
    let found = enumerate_splints(rs, cfg)?;
    if json {
        *buf = to_json(&json!({
            "algebra": rs.label(),
            "complete": found.complete,
            "count": found.splints.len(),
            "splints": found.splints,
        }));
        return Ok(0);
    }
    let mut groups: BTreeMap<String, usize> = BTreeMap::new();
    for s in &found.splints {
        *groups.entry(unordered_label(s)).or_default() += 1;
    }
    buf.push_str(&format!(
        "{}: {} splint(s){}\n",
        rs.label(),
        found.splints.len(),
        if found.complete { "" } else { " (truncated)" }
    ));
    for (label, count) in &groups {
        buf.push_str(&format!("{label} x{count}\n"));
    }
    if list {
        for s in &found.splints {
            buf.push_str(&format!("  {s}\n"));
        }
    }
    Ok(0)
}

fn load_fixtures(path: Option<&Path>) -> Result<String> {
    let read = |p: &Path| {
        std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("cannot read fixtures {}: {e}", p.display())))
    };
    match path {
        Some(p) => read(p),
        None if Path::new(DEFAULT_FIXTURES).exists() => read(Path::new(DEFAULT_FIXTURES)),
        None => Ok(SHIPPED_FIXTURES.to_string()),
    }
}

fn verify_paper(
    path: Option<&Path>,
    allow_refuted: bool,
    cfg: &SplintConfig,
    json: bool,
    buf: &mut String,
) -> Result<i32> {
    let fixtures = parse_fixtures(&load_fixtures(path)?)?;
    let verdicts = verify_all(&fixtures, cfg)?;
    let refuted = verdicts
        .iter()
        .filter(|v| v.verdict == VerdictKind::Refuted)
        .count();
    if json {
        *buf = to_json(&verdicts);
    } else {
        for v in &verdicts {
            let detail = match (&v.witness, &v.certificate) {
                (Some(w), _) if v.verdict == VerdictKind::Confirmed => {
                    format!("witness {}", w.label())
                }
                (Some(w), _) => format!(
                    "holds under {}: witness {}",
                    v.holds_under.as_deref().unwrap_or("?"),
                    w.label()
                ),
                (None, Some(c)) => format!("{} ({} examined)", c.reason, c.examined),
                (None, None) => String::new(),
            };
            buf.push_str(&format!(
                "{:<10} {:<32} {} | {}  {}\n",
                v.verdict.to_string(),
                v.id,
                v.claimed[0],
                v.claimed[1],
                detail
            ));
        }
        let count = |k| verdicts.iter().filter(|v| v.verdict == k).count();
        buf.push_str(&format!(
            "{} claims: {} confirmed, {} partial, {} refuted\n",
            verdicts.len(),
            count(VerdictKind::Confirmed),
            count(VerdictKind::Partial),
            refuted
        ));
    }
    Ok(if refuted > 0 && !allow_refuted { 1 } else { 0 })
}

fn recognize(
    rs: &RootSystem,
    roots: &[String],
    cfg: &SplintConfig,
    json: bool,
    buf: &mut String,
) -> Result<i32> {
    let stem: Vec<Root> = roots
        .iter()
        .map(|s| rs.parse_root(s))
        .collect::<Result<_>>()?;
    let found = Stem::recognize(stem, Catalog::standard(), cfg.embed_options())?;
    if json {
        *buf = to_json(&json!({ "algebra": rs.label(), "stem": found }));
    } else {
        match &found {
            Some(s) => {
                buf.push_str(&format!("{} (rank {})\n", s.stem_type, s.rank));
                for (a, b) in &s.embedding.pairs {
                    buf.push_str(&format!("  {a} -> {b}\n"));
                }
            }
            None => buf.push_str("not a stem\n"),
        }
    }
    Ok(if found.is_some() { 0 } else { 1 })
}

fn character(rs: &RootSystem, weight: &str, json: bool, buf: &mut String) -> Result<i32> {
    let lambda = Weight::parse(weight, rs.dims())?;
    let ch = typical_character(rs, &lambda)?;
    if json {
        *buf = to_json(&json!({
            "algebra": rs.label(),
            "weight": lambda.to_string(),
            "dimension": ch.total(),
            "character": ch,
        }));
    } else {
        buf.push_str(&format!("dim = {}\n{ch}\n", ch.total()));
    }
    Ok(0)
}

fn denominator(
    rs: &RootSystem,
    isotropic: Option<&str>,
    convention: SignConvention,
    json: bool,
    buf: &mut String,
) -> Result<i32> {
    let gamma = match isotropic {
        Some(s) => rs.parse_root(s)?,
        None => rs
            .odd_positive()
            .into_iter()
            .rev()
            .find(Root::is_isotropic)
            .ok_or_else(|| Error::Unsupported(format!("{} has no isotropic root", rs.label())))?,
    };
    let report: KwReport = kw_denominator_check(rs, &gamma, convention)?;
    if json {
        *buf = to_json(&report);
    } else {
        buf.push_str(&format!(
            "{} S = {{{}}} sign {} C_g = {} C = {}: {}\n",
            report.algebra,
            report.isotropic,
            report.convention,
            report.cg,
            report.constant,
            if report.equal { "EQUAL" } else { "NOT EQUAL" }
        ));
        if !report.equal {
            buf.push_str(&format!("lhs: {}\nrhs: {}\n", report.lhs, report.rhs));
        }
    }
    Ok(if report.equal { 0 } else { 1 })
}

fn defect(spec: &RootSystemSpec, json: bool, buf: &mut String) -> Result<i32> {
    let data = defect_and_cg(spec)?;
    if json {
        *buf = to_json(&json!({
            "algebra": spec.to_string(),
            "defect": data.defect,
            "cg": data.cg,
            "isotropic_sets": data.isotropic_sets.iter().map(|s| names(s)).collect::<Vec<_>>(),
        }));
    } else {
        buf.push_str(&format!("{spec}: d={}, C_g={}\n", data.defect, data.cg));
        for set in &data.isotropic_sets {
            buf.push_str(&format!("  {{{}}}\n", names(set).join(", ")));
        }
    }
    Ok(0)
}

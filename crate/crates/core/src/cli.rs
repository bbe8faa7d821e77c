//! The `hodge` command line.
//!
//! Results go to stdout, diagnostics to stderr. Exit status is 0 on success
//! (including a computed "false"), 1 on domain errors such as invalid
//! complexes or impossible constructions, and 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::{env, fs};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::complex::{json as complex_json, DdbarDecision, Theory};
use crate::constructions::{json as morphism_json, ses_to_les, Direction};
use crate::error::{FormatError, MorphismError};
use crate::hodge::parse_expr;
use crate::{fixtures, CohomologyTable, DoubleComplex};

#[derive(Debug, Parser)]
#[command(
    name = "hodge",
    version,
    about = "Exact double-complex cohomology and Hodge-diamond calculus"
)]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print only the result, without headers or diagrams.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a construction expression to a Hodge diamond.
    Eval { expr: String },
    /// Cohomology tables of a double complex file.
    Cohomology {
        path: PathBuf,
        /// A theory name or `all`.
        #[arg(long, default_value = "all", value_parser = parse_selector)]
        theory: Selector,
    },
    /// Decide the ∂∂̄-lemma via the natural map from Bott-Chern to Dolbeault.
    CheckDdbar { path: PathBuf },
    /// Check the double-complex axioms.
    Validate { path: PathBuf },
    /// Long exact sequence of a short exact sequence `[f, g]`.
    Les {
        path: PathBuf,
        /// The fixed degree (`p` for rows, `q` for columns).
        #[arg(long = "p", visible_alias = "fixed", allow_negative_numbers = true)]
        p: i32,
        #[arg(long, value_enum, default_value_t = DirectionArg::Row)]
        direction: DirectionArg,
    },
    /// Built-in complexes and leaves.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixturesAction {
    List,
    /// Write a built-in complex in canonical JSON.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    All,
    One(Theory),
}

fn parse_selector(s: &str) -> Result<Selector, String> {
    if s == "all" {
        Ok(Selector::All)
    } else {
        s.parse().map(Selector::One)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Row,
    Column,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Parse { .. } | FormatError::Schema(_) | FormatError::Io { .. } => {
                Failure::Usage(e.to_string())
            }
            FormatError::Complex(_) | FormatError::Morphism(_) => Failure::Domain(e.to_string()),
        }
    }
}

impl From<MorphismError> for Failure {
    fn from(e: MorphismError) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Output {
    stdout: String,
    failure: Option<Failure>,
}

impl From<String> for Output {
    fn from(stdout: String) -> Self {
        Output {
            stdout,
            failure: None,
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

/// Finds `path`, falling back to the fixture directory (`$HODGE_FIXTURES`,
/// else `fixtures/`), with or without a `.json` extension.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    let dir = env::var_os("HODGE_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    [dir.join(path), dir.join(path).with_extension("json")]
        .into_iter()
        .find(|p| p.exists())
        .unwrap_or_else(|| path.to_path_buf())
}

fn read(path: &Path) -> Result<String, Failure> {
    let path = resolve(path);
    fs::read_to_string(&path).map_err(|e| {
        FormatError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
        .into()
    })
}

fn load(path: &Path) -> Result<DoubleComplex, Failure> {
    Ok(complex_json::from_str(&read(path)?)?)
}

pub fn table_to_json(t: &CohomologyTable) -> Value {
    let dims: Vec<Value> = if t.theory == Theory::DeRham {
        t.entries().map(|((k, _), d)| json!([k, d])).collect()
    } else {
        t.entries().map(|((p, q), d)| json!([p, q, d])).collect()
    };
    json!({"theory": t.theory.name(), "dims": dims})
}

pub fn ddbar_to_json(d: &DdbarDecision) -> Value {
    let witness = match d.witness {
        None => Value::Null,
        Some(w) => json!({
            "p": w.bidegree.0,
            "q": w.bidegree.1,
            "failure": w.failure.to_string(),
        }),
    };
    json!({"holds": d.holds, "witness": witness})
}

fn eval(cli: &Cli, src: &str) -> Result<Output, Failure> {
    let expr = parse_expr(src).map_err(|e| Failure::Usage(e.to_string()))?;
    let h = expr
        .evaluate()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    if cli.json {
        return Ok(to_json(&h.to_json()).into());
    }
    if cli.quiet {
        return Ok(format!("{h}\n").into());
    }
    let mut s = format!("{expr}  (n = {})\n", h.dim());
    s.push_str(&h.render_diamond());
    s.push_str(&format!("ddbar: {}\n", h.ddbar()));
    if let Some(b) = h.betti() {
        let b: Vec<String> = b.iter().map(u64::to_string).collect();
        s.push_str(&format!("betti: {}\n", b.join(" ")));
    }
    Ok(s.into())
}

fn cohomology(cli: &Cli, path: &Path, sel: Selector) -> Result<Output, Failure> {
    let k = load(path)?;
    let theories = match sel {
        Selector::All => Theory::ALL.to_vec(),
        Selector::One(t) => vec![t],
    };
    let tables: Vec<CohomologyTable> = theories
        .into_iter()
        .map(|t| k.cohomology(t))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    if cli.json {
        let v = match sel {
            Selector::All => Value::Array(tables.iter().map(table_to_json).collect()),
            Selector::One(_) => table_to_json(&tables[0]),
        };
        return Ok(to_json(&v).into());
    }
    Ok(tables
        .iter()
        .map(|t| t.to_string())
        .collect::<String>()
        .into())
}

fn check_ddbar(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let d = load(path)?
        .check_ddbar()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    if cli.json {
        return Ok(to_json(&ddbar_to_json(&d)).into());
    }
    Ok(format!("{d}\n").into())
}

fn validate(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let k = complex_json::from_str_unvalidated(&read(path)?)?;
    let report = k.validate().map_err(|e| Failure::Domain(e.to_string()))?;
    let stdout = if cli.json {
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(|v| json!({"p": v.bidegree.0, "q": v.bidegree.1, "axiom": v.axiom.to_string()}))
            .collect();
        to_json(&json!({"valid": report.is_valid(), "violations": violations}))
    } else if report.is_valid() {
        "pass\n".to_string()
    } else {
        String::new()
    };
    let failure =
        (!report.is_valid()).then(|| Failure::Domain(format!("invalid double complex: {report}")));
    Ok(Output { stdout, failure })
}

fn les(cli: &Cli, path: &Path, fixed: i32, dir: DirectionArg) -> Result<Output, Failure> {
    let path = resolve(path);
    let (f, g) = morphism_json::ses_from_path(&path)?;
    let direction = match dir {
        DirectionArg::Row => Direction::Row,
        DirectionArg::Column => Direction::Column,
    };
    let seq = ses_to_les(&f, &g, fixed, direction)?;
    if cli.json {
        return Ok(to_json(&morphism_json::les_to_value(&seq)).into());
    }
    let mut s = if cli.quiet {
        String::new()
    } else {
        seq.to_string()
    };
    for (n, m) in seq.connecting_maps() {
        let rows = complex_json::matrix_to_strings(m);
        s.push_str(&format!(
            "delta^{n}: {}\n",
            serde_json::to_string(&rows).expect("strings")
        ));
    }
    if s.is_empty() {
        s.push_str("exact\n");
    }
    Ok(s.into())
}

fn fixtures_cmd(cli: &Cli, action: &FixturesAction) -> Result<Output, Failure> {
    match action {
        FixturesAction::List => {
            if cli.json {
                return Ok(to_json(&json!({
                    "complexes": fixtures::COMPLEX_NAMES,
                    "leaves": fixtures::LEAF_NAMES.split(", ").collect::<Vec<_>>(),
                }))
                .into());
            }
            let mut s = String::new();
            if !cli.quiet {
                s.push_str("complexes:\n");
            }
            for n in fixtures::COMPLEX_NAMES {
                s.push_str(&format!("{}{n}\n", if cli.quiet { "" } else { "  " }));
            }
            if !cli.quiet {
                s.push_str(&format!("leaves:\n  {}\n", fixtures::LEAF_NAMES));
            }
            Ok(s.into())
        }
        FixturesAction::Emit { name, out } => {
            let k = fixtures::builtin_complex(name).map_err(|e| Failure::Usage(e.to_string()))?;
            match out {
                None => Ok(complex_json::to_canonical_string(&k).into()),
                Some(path) => {
                    fixtures::save(&k, path)?;
                    let msg = if cli.quiet {
                        String::new()
                    } else {
                        format!("wrote {}\n", path.display())
                    };
                    Ok(msg.into())
                }
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Eval { expr } => eval(cli, expr),
        Command::Cohomology { path, theory } => cohomology(cli, path, *theory),
        Command::CheckDdbar { path } => check_ddbar(cli, path),
        Command::Validate { path } => validate(cli, path),
        Command::Les { path, p, direction } => les(cli, path, *p, *direction),
        Command::Fixtures { action } => fixtures_cmd(cli, action),
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    let (out, failure) = match dispatch(&cli) {
        Ok(o) => (o.stdout, o.failure),
        Err(f) => (String::new(), Some(f)),
    };
    let _ = stdout.write_all(out.as_bytes());
    match failure {
        None => 0,
        Some(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(
        env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("hodge").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_blowup() {
        let (code, out, _) = call(&["eval", "blowup(P(2), point, 2)"]);
        assert_eq!(code, 0);
        assert!(out.contains("  1\n 0 0\n0 2 0\n 0 0\n  1\n"), "{out}");
        assert!(out.contains("ddbar: true"));
        assert!(out.contains("betti: 1 0 2 0 1"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["eval", "product(P(1),"]).0, 2);
        assert_eq!(call(&["eval", "blowup(P(2), point, 3)"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["cohomology", "/nonexistent/file.json"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn selector_parsing() {
        assert_eq!(parse_selector("all"), Ok(Selector::All));
        assert_eq!(parse_selector("aeppli"), Ok(Selector::One(Theory::Aeppli)));
        assert!(parse_selector("hodge").is_err());
    }
}

//! Command-line front end. Every subcommand is a thin wrapper over the
//! public library operations and writes deterministic plain text.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::filtration::{filtration_to_function, function_to_filtration, is_t_function, PosetHom};
use crate::format::{parse_filtration, parse_function, parse_label_set, parse_poset};
use crate::graph::{build_mutation_graph, graph_to_dot};
use crate::mutation::{decompose_to_mutations, mutate_function};
use crate::poset::{enumerate_upper_sets, generate_poset, Family, PosetRef, UpperSet};
use crate::spec_z::{
    is_z_tfunction, mutate_z, parse_prime_set, parse_upper_set, parse_zhom, truncate_z,
    zset_algebra, ZPosetHom, ZSetOp, ZTFunction,
};

#[derive(Debug, Parser)]
#[command(
    name = "spmut",
    version,
    about = "Sp-filtrations, poset homomorphisms and their right mutations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a function to its filtration, or a filtration to its function
    Convert {
        #[command(flatten)]
        poset: PosetArg,
        /// Function file or inline value list such as `0,1,0`
        #[arg(long = "fn", conflicts_with = "filt", required_unless_present = "filt")]
        func: Option<String>,
        /// Filtration file (`<n>: <members>` lines)
        #[arg(long)]
        filt: Option<PathBuf>,
    },
    /// Right-mutate a function at a specialisation-closed set
    Mutate {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long = "fn")]
        func: String,
        /// `a,b`, `@all` or `@empty`
        #[arg(long)]
        set: String,
    },
    /// Report upper-set and t-function verdicts
    Check {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long = "fn", required_unless_present = "set")]
        func: Option<String>,
        #[arg(long)]
        set: Option<String>,
    },
    /// Write a function as iterated mutations of a constant one
    Decompose {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long = "fn")]
        func: String,
    },
    /// List every upper set of the poset
    Enumerate {
        #[command(flatten)]
        poset: PosetArg,
    },
    /// Build the mutation graph of all functions valued in a window
    Graph {
        #[command(flatten)]
        poset: PosetArg,
        /// `a:b`
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Write Graphviz output to this path (`-` for standard output)
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also record the trivial mutation at the empty set
        #[arg(long)]
        with_empty: bool,
    },
    /// Symbolic operations on the spectrum of the integers
    Specz {
        #[command(subcommand)]
        op: SpecZCommand,
    },
}

#[derive(Debug, Args)]
pub struct PosetArg {
    /// Poset file, or `chain:<n>` / `fan:<k>`
    #[arg(long)]
    pub poset: String,
}

#[derive(Debug, Args)]
pub struct ZFunctionArg {
    /// Generic value `n` of the t-function `(n, U)`
    #[arg(long, allow_hyphen_values = true, requires = "u", conflicts_with = "hom")]
    pub base: Option<i64>,
    /// The set `U` of primes valued `n + 1`
    #[arg(long)]
    pub u: Option<String>,
    /// A general function `0:<v0>; <value>:<set>; ...`
    #[arg(long, allow_hyphen_values = true, required_unless_present = "base")]
    pub hom: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum SpecZCommand {
    /// Right mutation at `W` (`@all`, `@empty`, `2,3` or `~2,3`)
    Mutate {
        #[command(flatten)]
        func: ZFunctionArg,
        #[arg(long)]
        w: String,
    },
    /// Whether a function is a t-function
    Check {
        #[command(flatten)]
        func: ZFunctionArg,
    },
    /// Finite/cofinite set algebra
    Algebra {
        /// union, intersect, complement or symdiff
        #[arg(long)]
        op: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Restrict to the fan over the listed primes
    Truncate {
        #[command(flatten)]
        func: ZFunctionArg,
        #[arg(long)]
        primes: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Io { path: PathBuf, msg: String },
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io { path, msg } => write!(f, "cannot read {}: {msg}", path.display()),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

/// `chain:<n>`, `fan:<k>`, or a poset file.
pub fn load_poset(arg: &str) -> CliResult<PosetRef> {
    let family = |s: &str| {
        s.parse::<i64>()
            .map_err(|_| CliError::Usage(format!("bad poset size in `{arg}`")))
    };
    let poset = if let Some(n) = arg.strip_prefix("chain:") {
        generate_poset(Family::Chain(family(n)?))?
    } else if let Some(k) = arg.strip_prefix("fan:") {
        generate_poset(Family::Fan(family(k)?))?
    } else {
        parse_poset(&read(Path::new(arg))?)?
    };
    Ok(Arc::new(poset))
}

fn inline_values(arg: &str) -> Option<Vec<i64>> {
    let body = arg.trim();
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(body);
    body.split(',').map(|v| v.trim().parse().ok()).collect()
}

/// A function file, or an inline value list in element order.
pub fn load_function(poset: &PosetRef, arg: &str) -> CliResult<PosetHom> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(parse_function(poset, &read(path)?)?);
    }
    match inline_values(arg) {
        Some(values) => Ok(PosetHom::new(poset, values)?),
        None => Err(read(path).unwrap_err()),
    }
}

/// Loads and validates the poset and, when given, a function on it.
pub fn parse_inputs(poset: &str, func: Option<&str>) -> CliResult<(PosetRef, Option<PosetHom>)> {
    let p = load_poset(poset)?;
    let f = func.map(|a| load_function(&p, a)).transpose()?;
    Ok((p, f))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_zfunction(arg: &ZFunctionArg) -> CliResult<ZPosetHom> {
    match (&arg.hom, arg.base, &arg.u) {
        (Some(h), _, _) => Ok(parse_zhom(h)?),
        (None, Some(n), Some(u)) => Ok(ZTFunction::new(n, parse_prime_set(u)?).to_hom()),
        _ => Err(CliError::Usage("give either --hom or --base with --u".into())),
    }
}

fn show_zfunction(out: &mut String, h: &ZPosetHom) {
    match h.as_t_function() {
        Some(t) => {
            let _ = writeln!(out, "{t}");
        }
        None => {
            let _ = writeln!(out, "{h}");
        }
    }
    let _ = writeln!(out, "t-function: {}", yes_no(is_z_tfunction(h)));
}

fn parse_window(w: &str) -> CliResult<(i64, i64)> {
    let bad = || CliError::Usage(format!("window must look like `a:b`, got `{w}`"));
    let (a, b) = w.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Executes one parsed command, returning its standard output.
pub fn run_command(cmd: &Command) -> CliResult<String> {
    let mut out = String::new();
    match cmd {
        Command::Convert { poset, func, filt } => {
            let p = load_poset(&poset.poset)?;
            if let Some(f) = func {
                let f = load_function(&p, f)?;
                out.push_str(&function_to_filtration(&f).to_string());
            } else if let Some(path) = filt {
                let phi = parse_filtration(&p, &read(path)?)?;
                let _ = writeln!(out, "{}", filtration_to_function(&phi));
            }
        }
        Command::Mutate { poset, func, set } => {
            let (p, f) = parse_inputs(&poset.poset, Some(func))?;
            let w = UpperSet::new(&p, parse_label_set(&p, set)?)?;
            let g = mutate_function(&f.expect("function given"), &w)?;
            let _ = writeln!(out, "{g}");
            let _ = writeln!(out, "t-function: {}", yes_no(is_t_function(&g)));
        }
        Command::Check { poset, func, set } => {
            let (p, f) = parse_inputs(&poset.poset, func.as_deref())?;
            if let Some(s) = set {
                let s = parse_label_set(&p, s)?;
                let _ = writeln!(out, "upper-set: {}", yes_no(p.is_upper(&s)));
            }
            if let Some(f) = f {
                let _ = writeln!(out, "increasing: yes");
                let _ = writeln!(out, "t-function: {}", yes_no(is_t_function(&f)));
            }
        }
        Command::Decompose { poset, func } => {
            let (_, f) = parse_inputs(&poset.poset, Some(func))?;
            out.push_str(&decompose_to_mutations(&f.expect("function given"))?.to_string());
        }
        Command::Enumerate { poset } => {
            let p = load_poset(&poset.poset)?;
            let sets = enumerate_upper_sets(&p)?;
            let _ = writeln!(out, "upper sets: {}", sets.len());
            for s in sets {
                let _ = writeln!(out, "{s}");
            }
        }
        Command::Graph {
            poset,
            window,
            dot,
            with_empty,
        } => {
            let p = load_poset(&poset.poset)?;
            let (a, b) = parse_window(window)?;
            let g = build_mutation_graph(&p, a, b, !with_empty)?;
            let _ = writeln!(out, "nodes: {}", g.nodes().len());
            let _ = writeln!(out, "t-functions: {}", g.t_function_count());
            let _ = writeln!(out, "edges: {}", g.edges().len());
            match dot.as_deref() {
                Some(path) if path == Path::new("-") => out.push_str(&graph_to_dot(&g)),
                Some(path) => std::fs::write(path, graph_to_dot(&g)).map_err(|e| CliError::Io {
                    path: path.to_path_buf(),
                    msg: e.to_string(),
                })?,
                None => {}
            }
        }
        Command::Specz { op } => match op {
            SpecZCommand::Mutate { func, w } => {
                let h = load_zfunction(func)?;
                let w = parse_upper_set(w)?;
                show_zfunction(&mut out, &mutate_z(&h, &w));
            }
            SpecZCommand::Check { func } => {
                show_zfunction(&mut out, &load_zfunction(func)?);
            }
            SpecZCommand::Algebra { op, a, b } => {
                let op: ZSetOp = op
                    .parse()
                    .map_err(|_| CliError::Usage(format!("unknown --op `{op}`")))?;
                let a = parse_prime_set(a)?;
                let b = match (op, b) {
                    (ZSetOp::Complement, _) => a.clone(),
                    (_, Some(b)) => parse_prime_set(b)?,
                    (_, None) => return Err(CliError::Usage("--b is required for binary operations".into())),
                };
                let _ = writeln!(out, "{}", zset_algebra(op, &a, &b));
            }
            SpecZCommand::Truncate { func, primes } => {
                let h = load_zfunction(func)?;
                let primes = primes
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| CliError::Usage(format!("bad prime `{t}`")))
                    })
                    .collect::<CliResult<Vec<u64>>>()?;
                let f = truncate_z(&h, &primes)?;
                let _ = writeln!(out, "{f}");
                let _ = writeln!(out, "t-function: {}", yes_no(is_t_function(&f)));
            }
        },
    }
    Ok(out)
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match run_command(&cli.command) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

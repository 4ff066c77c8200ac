//! The `omlkit` command line.
//!
//! Exit codes: 0 when every check passes, 1 when at least one fails, 2 for
//! usage, I/O, parse and size-cap errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::catalog::CatalogId;
use crate::dot::to_dot;
use crate::format::{parse_oml, write_oml};
use crate::foulis::{lin_foulis_tables, sasaki_set_report, validate_foulis, verify_star_laws};
use crate::linmap::enumerate_lin;
use crate::oml::{LatticeData, Oml, OmlError, Ortholattice, MAX_ELEMENTS};
use crate::verify::{oml_report, verify_all};

pub const SIZE_CAP_VAR: &str = "OMLKIT_SIZE_CAP";

#[derive(Debug, Parser)]
#[command(name = "omlkit", version, about = "Finite-model checks for orthomodular lattices")]
struct Cli {
    /// Worker threads for verification scans (default: available cores)
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a lattice file as an orthomodular lattice
    Validate { file: PathBuf },
    /// Write a catalog lattice, e.g. `gen mo 2` or `gen product mo2,chain2`
    Gen {
        family: String,
        param: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the Sasaki projection onto an element
    Sasaki {
        file: PathBuf,
        #[arg(short, long, value_name = "ELT")]
        a: String,
    },
    /// Count or list the linear endomaps
    Linmaps {
        file: PathBuf,
        #[command(flatten)]
        mode: LinmapsMode,
    },
    /// Check the Foulis m-semilattice Lin(X) and its Sasaki projections
    Foulis { file: PathBuf },
    /// Run every suite in order
    VerifyAll { file: PathBuf },
    /// Export the cover relation as Graphviz DOT
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct LinmapsMode {
    #[arg(long)]
    count: bool,
    #[arg(long)]
    list: bool,
}

/// An error that ends the run with exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command, reading the
/// size cap from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_cap(args, std::env::var(SIZE_CAP_VAR).ok().as_deref(), out, err)
}

/// Like [`run`] with the value of the size-cap variable passed explicitly.
pub fn run_with_cap<I, T>(args: I, cap_var: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    // output is buffered so it is emitted whole and in order
    let mut buf = Vec::new();
    let result = size_cap(cap_var).and_then(|cap| match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build()
            .map_err(Fatal::from)
            .and_then(|pool| pool.install(|| dispatch(cli.command, cap, &mut buf))),
        None => dispatch(cli.command, cap, &mut buf),
    });
    match result.and_then(|code| out.write_all(&buf).map(|_| code).map_err(Fatal::from)) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn size_cap(var: Option<&str>) -> Result<usize, Fatal> {
    match var {
        None => Ok(MAX_ELEMENTS),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n.min(MAX_ELEMENTS)),
            _ => Err(Fatal(format!("{SIZE_CAP_VAR} must be a positive integer, got `{v}`"))),
        },
    }
}

fn dispatch(command: Command, cap: usize, out: &mut dyn Write) -> Result<i32, Fatal> {
    match command {
        Command::Validate { file } => cmd_validate(&file, cap, out),
        Command::Gen { family, param, output } => cmd_gen(&family, param.as_deref(), output.as_deref(), cap, out),
        Command::Sasaki { file, a } => cmd_sasaki(&file, &a, cap, out),
        Command::Linmaps { file, mode } => cmd_linmaps(&file, mode.list, cap, out),
        Command::Foulis { file } => cmd_foulis(&file, cap, out),
        Command::VerifyAll { file } => cmd_verify_all(&file, cap, out),
        Command::Dot { file, output } => cmd_dot(&file, output.as_deref(), cap, out),
    }
}

fn read(path: &Path) -> Result<LatticeData, Fatal> {
    let text = fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    parse_oml(&text).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

/// Reads a file that must hold an orthomodular lattice.
fn read_oml(path: &Path, cap: usize) -> Result<Arc<Oml>, Fatal> {
    let data = read(path)?;
    let oml = Oml::build_with_cap(&data, cap).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(oml))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Fatal> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Fatal(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Fatal::from),
    }
}

fn cmd_validate(path: &Path, cap: usize, out: &mut dyn Write) -> Result<i32, Fatal> {
    let data = read(path)?;
    let (report, _) = oml_report(&data, cap)?;
    write!(out, "{report}")?;
    if let Some(w) = report.get("oml", "orthomodular_join_form") {
        match w {
            None => writeln!(out, "ORTHOMODULAR PASS")?,
            Some(w) => writeln!(out, "ORTHOMODULAR FAIL {w}")?,
        }
    }
    Ok(report.exit_code())
}

fn catalog_id(family: &str, param: Option<&str>) -> Result<CatalogId, Fatal> {
    let name = match (family, param) {
        ("product", Some(p)) => format!("product({p})"),
        ("boolean" | "mo", Some(p)) if p.chars().all(|c| c.is_ascii_digit()) => format!("{family}{p}"),
        (f, None) => f.to_string(),
        (f, Some(p)) => return Err(Fatal(format!("family `{f}` does not take parameter `{p}`"))),
    };
    Ok(name.parse()?)
}

fn cmd_gen(
    family: &str,
    param: Option<&str>,
    output: Option<&Path>,
    cap: usize,
    out: &mut dyn Write,
) -> Result<i32, Fatal> {
    let data = catalog_id(family, param)?.data()?;
    let lattice = Ortholattice::build_with_cap(&data, cap)?;
    emit(out, output, &write_oml(&lattice))?;
    Ok(0)
}

fn cmd_sasaki(path: &Path, a: &str, cap: usize, out: &mut dyn Write) -> Result<i32, Fatal> {
    let x = read_oml(path, cap)?;
    let a = x.index_of(a).ok_or_else(|| Fatal(format!("unknown element `{a}`")))?;
    for y in x.elements() {
        writeln!(out, "PI {} {} {}", x.label(a), x.label(y), x.label(x.sasaki(a, y)))?;
    }
    Ok(0)
}

fn cmd_linmaps(path: &Path, list: bool, cap: usize, out: &mut dyn Write) -> Result<i32, Fatal> {
    let x = read_oml(path, cap)?;
    let maps = enumerate_lin(&x)?;
    if list {
        let render = |t: &[usize]| t.iter().map(|&v| x.label(v)).collect::<Vec<_>>().join(",");
        for f in &maps {
            writeln!(out, "MAP {} ADJOINT {}", render(f.table()), render(f.adjoint_table()))?;
        }
    }
    writeln!(out, "COUNT {}", maps.len())?;
    Ok(0)
}

fn cmd_foulis(path: &Path, cap: usize, out: &mut dyn Write) -> Result<i32, Fatal> {
    let x = read_oml(path, cap)?;
    let s = lin_foulis_tables(&x)?;
    let mut report = validate_foulis(&s);
    report.extend(verify_star_laws(&s));
    let (structure, set) = sasaki_set_report(&s);
    report.extend(structure);
    report.info("lin", "carrier", s.size().to_string());
    if let Some(set) = set {
        report.info("lin", "projections", set.len().to_string());
    }
    write!(out, "{report}")?;
    Ok(report.exit_code())
}

fn cmd_verify_all(path: &Path, cap: usize, out: &mut dyn Write) -> Result<i32, Fatal> {
    let data = read(path)?;
    let report = verify_all(&data, cap)?;
    write!(out, "{report}")?;
    Ok(report.exit_code())
}

fn cmd_dot(path: &Path, output: Option<&Path>, cap: usize, out: &mut dyn Write) -> Result<i32, Fatal> {
    let data = read(path)?;
    let lattice =
        Ortholattice::build_with_cap(&data, cap).map_err(|e: OmlError| Fatal(format!("{}: {e}", path.display())))?;
    emit(out, output, &to_dot(&lattice))?;
    Ok(0)
}

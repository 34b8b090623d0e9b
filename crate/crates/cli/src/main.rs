use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dn_crystal::crystal::DEFAULT_NODE_BUDGET;
use dn_crystal::minors::{enumerate_triangles, label, minor_lower, minor_upper, monomial};
use dn_crystal::oracle::{check_coincidence_with_budget, check_spin_forms, weyl_dim, DEFAULT_SEARCH_BUDGET};
use dn_crystal::patterns::enumerate_patterns;
use dn_crystal::{Crystal, DominantWeight, Error, Rank};

const BUDGET_VAR: &str = "DN_CRYSTAL_NODE_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "dn-crystal",
    version,
    about = "Crystal bases of type D_n from tropicalized minors and polyhedral inequalities"
)]
struct Cli {
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the admissible patterns M_n.
    Patterns {
        #[arg(long)]
        n: usize,
    },
    /// List the triangles with their labels and barred monomials.
    Triangles {
        #[arg(long)]
        n: usize,
    },
    /// Print a generalized minor on the torus chart (the lower one unless --upper).
    Minors {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        upper: bool,
        /// Print the min-plus form instead of the Laurent polynomial.
        #[arg(long)]
        tropical: bool,
    },
    /// Generate the crystal graph of B(lambda).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare decoration, polyhedral and BFS sets with the Weyl dimension.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
    },
    /// Weyl dimension of V(lambda).
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
    },
    /// Check the spin-node identities between triangle monomials and pattern forms.
    #[command(name = "spin-forms")]
    SpinForms {
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Dot,
    Text,
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn invalid(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, err: err.into() }
}

fn from_lib(err: Error) -> Failure {
    let code = if matches!(err, Error::BudgetExceeded { .. }) { 1 } else { 2 };
    Failure { code, err: err.into() }
}

fn rank(n: usize) -> Result<Rank, Failure> {
    if n < 3 {
        return Err(invalid(anyhow::anyhow!("rank must be at least 3, got {n}")));
    }
    Rank::new(n).map_err(from_lib)
}

fn weight(n: Rank, text: &str) -> Result<DominantWeight, Failure> {
    let w: DominantWeight = text.parse().map_err(from_lib)?;
    DominantWeight::for_rank(w.coeffs().to_vec(), n).map_err(from_lib)
}

fn budget() -> Result<Option<usize>, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map(Some).with_context(|| format!("{BUDGET_VAR}={v:?}")).map_err(invalid),
        Err(_) => Ok(None),
    }
}

/// JSON with sorted keys and a trailing newline.
fn to_json(value: impl serde::Serialize) -> String {
    let v: Value = serde_json::to_value(value).expect("plain data serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

/// Result text plus the exit code it should end with.
fn run(command: Command) -> Result<(String, u8), Failure> {
    Ok(match command {
        Command::Patterns { n } => {
            let r = rank(n)?;
            let patterns: Vec<_> = enumerate_patterns(r).iter().map(|m| m.parts().to_vec()).collect();
            (to_json(json!({ "n": n, "patterns": patterns })), 0)
        }
        Command::Triangles { n } => {
            let r = rank(n)?;
            let mut rows = Vec::new();
            for t in enumerate_triangles(r) {
                rows.push(json!({
                    "rows": t.rows(),
                    "label": label(&t).map_err(from_lib)?,
                    "monomial": monomial(&t).map_err(from_lib)?.bar(n).to_string(),
                }));
            }
            (to_json(json!({ "n": n, "triangles": rows })), 0)
        }
        Command::Minors { n, k, upper, tropical } => {
            let r = rank(n)?;
            let p = if upper { minor_upper(r, k) } else { minor_lower(r, k) }.map_err(from_lib)?;
            let text = if tropical { p.tropicalize(r).map_err(from_lib)?.to_string() } else { p.to_string() };
            (text + "\n", 0)
        }
        Command::Enumerate { n, lambda, format } => {
            let r = rank(n)?;
            let w = weight(r, &lambda)?;
            let limit = budget()?.unwrap_or(DEFAULT_NODE_BUDGET);
            let graph = Crystal::new(r, w).and_then(|c| c.generate(limit)).map_err(from_lib)?;
            let text = match format {
                Format::Json => to_json(&graph),
                Format::Dot => graph.to_dot(),
                Format::Text => graph.to_text(),
            };
            (text, 0)
        }
        Command::Check { n, lambda } => {
            let r = rank(n)?;
            let w = weight(r, &lambda)?;
            let limit = budget()?.unwrap_or(DEFAULT_SEARCH_BUDGET);
            let report = check_coincidence_with_budget(r, &w, limit).map_err(from_lib)?;
            let code = if report.success { 0 } else { 1 };
            (to_json(&report), code)
        }
        Command::Dims { n, lambda } => {
            let r = rank(n)?;
            let w = weight(r, &lambda)?;
            (format!("{}\n", weyl_dim(r, &w).map_err(from_lib)?), 0)
        }
        Command::SpinForms { n } => {
            let r = rank(n)?;
            let report = check_spin_forms(r).map_err(from_lib)?;
            let code = if report.holds { 0 } else { 1 };
            (to_json(&report), code)
        }
    })
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if path.is_dir() {
        bail!("{} is a directory", path.display());
    }
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(text, code)| {
        match &cli.output {
            Some(path) => write_atomic(path, &text).map_err(invalid)?,
            None => print!("{text}"),
        }
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, err }) => {
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}

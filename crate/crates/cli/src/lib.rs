//! The `daestruct` command line: `analyze`, `convert` and `check-offsets`.
//!
//! Exit codes: 0 on success, 1 on I/O, parse or usage errors, 2 when the
//! input is read but rejected (structurally ill-posed, offsets not general).

pub mod analysis;
pub mod dot;
pub mod error;
pub mod report;
pub mod text;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use daestruct::assignment::{check_offsets, d_from_c, solve_hvt};
use daestruct::dae::{parse_dae, signature_of};
use daestruct::fineblock::critical_subgraph;
use daestruct::sigfile::write_sig;
use daestruct::sigma::{is_structurally_well_posed, OffsetPair};

pub use analysis::{load, parse_list, Analysis, OffsetChoice};
pub use error::CliError;
pub use report::Report;

#[derive(Parser, Debug)]
#[command(name = "daestruct", version, about = "Structural analysis of DAE signature matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum View {
    Sigma,
    Coarse,
    Fine,
    Sess,
    Fbg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Offsets, block forms, essential pattern and fine-block graph.
    Analyze {
        /// A .sig or .dae file.
        path: PathBuf,
        /// Print a view; may be repeated.
        #[arg(long, value_enum)]
        print: Vec<View>,
        /// Write the JSON report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write the fine-block graph in DOT format here.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// List normalised lead-time vectors with every entry at most BOUND.
        #[arg(long, value_name = "BOUND")]
        enumerate_k: Option<i64>,
        /// Use these row offsets instead of the canonical ones.
        #[arg(long, value_name = "c1,...,cn", conflicts_with = "k", allow_hyphen_values = true)]
        offsets: Option<String>,
        /// Use the offsets of these lead times; also annotates the DOT output.
        #[arg(long, value_name = "K1,...,Kp", allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Extract the signature matrix of a .dae file into a .sig file.
    Convert { input: PathBuf, output: PathBuf },
    /// Classify an offset vector as general, valid and normalised.
    CheckOffsets {
        path: PathBuf,
        #[arg(long, value_name = "c1,...,cn", allow_hyphen_values = true)]
        c: String,
        /// Column offsets; follow from `c` along an HVT when omitted.
        #[arg(long, value_name = "d1,...,dn", allow_hyphen_values = true)]
        d: Option<String>,
    },
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Runs one command, writing its normal output to `out`.
pub fn execute(cmd: &Command, out: &mut String) -> Result<(), CliError> {
    match cmd {
        Command::Analyze { path, print, json, dot, enumerate_k, offsets, k } => {
            let sigma = load(path)?;
            let choice = match (offsets, k) {
                (Some(c), _) => OffsetChoice::C(parse_list("--offsets", c)?),
                (None, Some(k)) => OffsetChoice::K(parse_list("--k", k)?),
                (None, None) => OffsetChoice::Canonical,
            };
            let a = Analysis::run(sigma, &choice)?;
            if print.is_empty() {
                out.push_str(&text::summary(&a));
            }
            for view in print {
                out.push_str(&match view {
                    View::Sigma => text::sigma(&a),
                    View::Coarse => text::coarse(&a),
                    View::Fine => text::fine(&a),
                    View::Sess => text::sess(&a),
                    View::Fbg => text::fbg(&a),
                });
            }
            if let Some(bound) = enumerate_k {
                out.push_str(&text::enumeration(&a, *bound));
            }
            if let Some(p) = json {
                write_file(p, &Report::new(&a).to_json())?;
            }
            if let Some(p) = dot {
                let annotated = match choice {
                    OffsetChoice::K(_) => Some(critical_subgraph(&a.fbg, &a.lead_times)?),
                    _ => None,
                };
                let lead = annotated.as_ref().map(|crit| (&a.lead_times, crit));
                write_file(p, &dot::fbg_dot(&a, lead))?;
            }
            Ok(())
        }
        Command::Convert { input, output } => {
            let text = fs::read_to_string(input).map_err(|source| CliError::Io { path: input.clone(), source })?;
            let src = parse_dae(&text).map_err(|source| CliError::Dae { path: input.clone(), source })?;
            write_file(output, &write_sig(&signature_of(&src)))
        }
        Command::CheckOffsets { path, c, d } => {
            let sigma = load(path)?;
            if !is_structurally_well_posed(&sigma) {
                return Err(CliError::IllPosed);
            }
            let n = sigma.n();
            let c = parse_list("--c", c)?;
            if c.len() != n {
                return Err(CliError::Usage(format!("--c needs {n} values, got {}", c.len())));
            }
            let d = match d {
                Some(d) => parse_list("--d", d)?,
                None => d_from_c(&sigma, &solve_hvt(&sigma)?.transversal, &c)?,
            };
            if d.len() != n {
                return Err(CliError::Usage(format!("--d needs {n} values, got {}", d.len())));
            }
            let class = check_offsets(&sigma, &OffsetPair::new(c, d.clone()))?;
            let Some(witness) = &class.witness_hvt else {
                return Err(CliError::NotGeneral);
            };
            out.push_str(&class.describe());
            out.push('\n');
            let pairs: Vec<String> = witness
                .positions()
                .map(|(i, j)| format!("({},{})", sigma.row_labels()[i], sigma.col_labels()[j]))
                .collect();
            out.push_str(&format!("d = {}\n", analysis::tuple(&d)));
            out.push_str(&format!("witness HVT: {}\n", pairs.join(" ")));
            Ok(())
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut out = String::new();
    match execute(&cli.command, &mut out) {
        Ok(()) => {
            let _ = stdout.write_all(out.as_bytes());
            0
        }
        Err(e) => {
            let _ = stdout.write_all(out.as_bytes());
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

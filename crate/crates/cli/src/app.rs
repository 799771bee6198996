use std::io::Write;
use std::path::{Path, PathBuf};

use alc_pinpoint::saturate::{saturate_names, saturate_with, Config, Order};
use alc_pinpoint::symbol::by_spelling;
use alc_pinpoint::{normalize, Antichain, ConceptName, Explainer, Ontology, Valuation};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::syntax::{is_identifier, parse, Document, SyntaxError};

/// Subsumption, explanation and repair for ALC ontologies in `.dl` files.
#[derive(Debug, Parser)]
#[command(name = "alcpin", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the pinpointing trace to stderr, one tab-separated step per line.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Seed for `--order random`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Fifo)]
    pub order: OrderArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Fifo,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print `yes` and exit 0 if FILE entails C [= D, else `no` and exit 1.
    Subsumes { file: PathBuf, c: String, d: String },
    /// Every entailed `A [= B` and `A [= bot` between names of FILE.
    Classify { file: PathBuf },
    /// The pinpointing formula of C [= D over the axiom names of FILE.
    Explain { file: PathBuf, c: String, d: String },
    /// The justifications of C [= D, one per line.
    Justify { file: PathBuf, c: String, d: String },
    /// Minimal diagnoses and maximal repairs of C [= D.
    Repair { file: PathBuf, c: String, d: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Syntax { path: String, source: SyntaxError },
    #[error("unknown concept name `{0}`")]
    UnknownName(String),
    #[error("{0} is not entailed, nothing to repair")]
    NotEntailed(String),
    #[error(transparent)]
    Output(#[from] std::io::Error),
}

pub fn load(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|source| CliError::Syntax {
        path: path.display().to_string(),
        source,
    })
}

/// `bot` is accepted on either side; any other goal name must be a valid
/// identifier but need not occur in the file.
fn goal_name(s: &str) -> Result<ConceptName, CliError> {
    match s {
        "bot" => Ok(ConceptName::BOTTOM),
        s if is_identifier(s) => Ok(ConceptName::new(s)),
        s => Err(CliError::UnknownName(s.to_string())),
    }
}

fn spell(n: ConceptName) -> String {
    if n.is_bottom() {
        "bot".to_string()
    } else {
        n.to_string()
    }
}

fn sets(family: &Antichain) -> Vec<String> {
    family
        .sorted()
        .into_iter()
        .map(|m| m.into_iter().collect::<Valuation>().to_string())
        .collect()
}

impl Cli {
    fn config(&self) -> Config {
        let order = match self.order {
            OrderArg::Fifo => Order::Fifo,
            OrderArg::Random => Order::Random(self.seed),
        };
        Config {
            order,
            trace: self.trace,
            ..Config::default()
        }
    }

    fn explainer(&self, ontology: &Ontology, err: &mut dyn Write) -> Result<Explainer, CliError> {
        let e = Explainer::with_config(ontology, self.config());
        if self.trace {
            err.write_all(e.trace().to_tsv().as_bytes())?;
        }
        Ok(e)
    }

    /// Runs the command, writing results to `out` and the trace to `err`.
    /// Returns the exit code for answers; failures come back as errors.
    pub fn execute(&self, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
        match &self.command {
            Command::Subsumes { file, c, d } => {
                let o = load(file)?.ontology();
                let (c, d) = (goal_name(c)?, goal_name(d)?);
                let yes = if self.trace {
                    self.explainer(&o, err)?.subsumes(c, d)
                } else {
                    saturate_names(&normalize(&o), [c], self.config())
                        .state
                        .entails(c, d)
                };
                writeln!(out, "{}", if yes { "yes" } else { "no" })?;
                Ok(if yes { 0 } else { 1 })
            }
            Command::Classify { file } => {
                let o = load(file)?.ontology();
                let mut names: Vec<ConceptName> = o
                    .signature()
                    .0
                    .into_iter()
                    .filter(|n| !n.is_bottom())
                    .collect();
                names.sort_by(by_spelling);
                let pairs = if self.trace {
                    self.explainer(&o, err)?.classify(&names)
                } else {
                    let state = saturate_with(&normalize(&o), None, self.config()).state;
                    let mut pairs = Vec::new();
                    for &a in &names {
                        if state.entails(a, ConceptName::BOTTOM) {
                            pairs.push((a, ConceptName::BOTTOM));
                        }
                        pairs.extend(
                            names
                                .iter()
                                .filter(|&&b| b != a && state.entails(a, b))
                                .map(|&b| (a, b)),
                        );
                    }
                    pairs
                };
                for (a, b) in pairs {
                    writeln!(out, "{a} [= {}", spell(b))?;
                }
                Ok(0)
            }
            Command::Explain { file, c, d } => {
                let o = load(file)?.ontology();
                let (c, d) = (goal_name(c)?, goal_name(d)?);
                let e = self.explainer(&o, err)?;
                let label = e.label(c, d);
                writeln!(out, "{}", label.to_formula())?;
                Ok(if label.satisfied_by(e.labels()) { 0 } else { 1 })
            }
            Command::Justify { file, c, d } => {
                let o = load(file)?.ontology();
                let (c, d) = (goal_name(c)?, goal_name(d)?);
                let just = self.explainer(&o, err)?.justifications(c, d);
                for s in sets(&just) {
                    writeln!(out, "{s}")?;
                }
                Ok(if just.is_bottom() { 1 } else { 0 })
            }
            Command::Repair { file, c, d } => {
                let o = load(file)?.ontology();
                let (c, d) = (goal_name(c)?, goal_name(d)?);
                let r = self
                    .explainer(&o, err)?
                    .repairs(c, d)
                    .map_err(|_| CliError::NotEntailed(format!("{} [= {}", spell(c), spell(d))))?;
                writeln!(out, "diagnoses:")?;
                for s in sets(&r.diagnoses) {
                    writeln!(out, "{s}")?;
                }
                writeln!(out, "repairs:")?;
                for s in sets(&r.repairs) {
                    writeln!(out, "{s}")?;
                }
                Ok(0)
            }
        }
    }
}

/// Parses `args` (program name first) and runs them. Errors are reported
/// on `err` with exit code 2.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match cli.execute(out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

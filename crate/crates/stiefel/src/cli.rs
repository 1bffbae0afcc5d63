//! Command parsing and dispatch. Every command either prints a JSON (or SVG)
//! result or fails with a machine-readable error code.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stiefel_core::arrangement::enumerate_covectors;
use stiefel_core::bipartite::{is_coherent, is_support_set, matching_multifield, support_face_dimension};
use stiefel_core::linspace::{bounded_complex, bounded_membership, contains, decompose};
use stiefel_core::plucker::{check_plucker, recover_matrix, stiefel_map};
use stiefel_core::subdivision::facets_of_d;
use stiefel_core::trop::{TropMatrix, TropVector};
use stiefel_core::DEFAULT_BUDGET;

use crate::format::{self, FormatError};
use crate::gen::{self, Mode};
use crate::render;

#[derive(Parser, Debug)]
#[command(name = "stiefel", version, about = "Exact tropical Stiefel maps and Stiefel tropical linear spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Input file, `-` for standard input, or inline JSON.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Vector for `member`, `decompose` and `bounded`: file or inline JSON.
    #[arg(long, global = true)]
    pub vector: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumeration steps.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Svg,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Tropical Plücker vector of a matrix.
    Stiefel,
    /// Whether a Plücker vector satisfies the tropical Plücker relations.
    PluckerCheck,
    /// Matching multifield of a matrix.
    Multifield,
    /// Whether a matching multifield is coherent, with a witness matrix.
    Coherent,
    /// Whether a graph (or the support of a matrix) is a support set.
    SupportSet,
    /// Covectors of the hyperplane arrangement of a matrix.
    Covectors,
    /// Facets of the regular matroid subdivision of a matrix.
    Facets,
    /// Whether a vector lies in the tropical linear space of a matrix.
    Member,
    /// Decomposition certificate for a vector.
    Decompose,
    /// Bounded part of the linear space, or bounded membership of a vector.
    Bounded,
    /// Matrix with a given support set and Plücker vector.
    Recover,
    /// Seeded random matrix.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = Mode::Dense)]
        mode: Mode,
        /// Integer entries are drawn from `-range..=range`.
        #[arg(long, default_value_t = 5)]
        range: i64,
    },
    /// SVG of the arrangement (`d ≤ 3`) or of the bounded tree (`d = 2`).
    Render {
        #[arg(long)]
        tree: bool,
    },
}

/// What a command produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Json(Value),
    Svg(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Json(v) => serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n",
            Output::Svg(s) => s.clone(),
        }
    }
}

/// Failure of a command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] stiefel_core::Error),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    /// Process exit status: 1 for domain errors, 2 for usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let code = match self {
            CliError::Usage(_) => "USAGE",
            CliError::Domain(e) => e.code(),
        };
        json!({"error": code, "message": self.to_string()})
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Reads `--input`-style arguments: inline JSON, `-`, or a path.
pub fn read_source(arg: Option<&str>) -> Result<String> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => Ok(s.to_string()),
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}"))),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid JSON: {e}")))
}

/// `{"matrix": .., "vector": ..}` or a bare matrix plus `--vector`.
fn matrix_and_vector(input: &Value, vector: Option<&Value>) -> Result<(TropMatrix, Option<TropVector>)> {
    let (m, v) = match input.get("matrix") {
        Some(m) => (m, input.get("vector").or(vector)),
        None => (input, vector),
    };
    let a = format::parse_matrix(m)?;
    let y = v.map(format::parse_vector).transpose()?;
    if let Some(y) = &y {
        if y.len() != a.cols() {
            return Err(CliError::Usage(format!("the vector needs {} entries, found {}", a.cols(), y.len())));
        }
    }
    Ok((a, y))
}

fn need_vector(y: Option<TropVector>) -> Result<TropVector> {
    y.ok_or_else(|| CliError::Usage("this command needs a vector (--vector or an object with \"vector\")".into()))
}

/// Matrices fed to arrangement computations need every column supported.
fn arrangement_matrix(a: TropMatrix) -> Result<TropMatrix> {
    a.require_no_empty_column()?;
    Ok(a)
}

/// Runs a command on already-read inputs. `gen` ignores `input`.
pub fn execute(command: &Command, options: &Options, input: Option<&str>, vector: Option<&str>) -> Result<Output> {
    if let Command::Gen { d, n, mode, range } = command {
        let a = gen::gen(*d, *n, *mode, *range, &mut gen::rng(options.seed))?;
        return Ok(Output::Json(format::matrix_to_json(&a)));
    }
    let input = parse_json(input.ok_or_else(|| CliError::Usage("missing input".into()))?)?;
    let vector = vector.map(parse_json).transpose()?;
    let budget = options.budget;
    let svg = options.format == OutputFormat::Svg;
    let out = match command {
        Command::Stiefel => format::plucker_to_json(&stiefel_map(&format::parse_matrix(&input)?)?),
        Command::PluckerCheck => json!({"is_plucker": check_plucker(&format::parse_plucker(&input)?)}),
        Command::Multifield => format::multifield_to_json(&matching_multifield(&format::parse_matrix(&input)?)?),
        Command::Coherent => {
            let witness = is_coherent(&format::parse_multifield(&input)?);
            json!({"coherent": witness.is_some(), "matrix": witness.as_ref().map(format::matrix_to_json)})
        }
        Command::SupportSet => {
            let g = format::parse_graph(&input)?;
            json!({"is_support_set": is_support_set(&g), "h1": support_face_dimension(&g)})
        }
        Command::Covectors => {
            let a = arrangement_matrix(format::parse_matrix(&input)?)?;
            let tc = enumerate_covectors(&a, budget)?;
            if svg {
                return Ok(Output::Svg(render::arrangement_svg(&tc, budget)?));
            }
            let cells: Vec<Value> = tc
                .cells()
                .iter()
                .map(|c| json!({"covector": format::covector_to_json(&c.covector), "dim": c.dim}))
                .collect();
            Value::Array(cells)
        }
        Command::Facets => {
            let a = arrangement_matrix(format::parse_matrix(&input)?)?;
            Value::Array(facets_of_d(&a, budget)?.iter().map(format::matroid_to_json).collect())
        }
        Command::Member => {
            let (a, y) = matrix_and_vector(&input, vector.as_ref())?;
            json!({"in_L": contains(&stiefel_map(&a)?, &need_vector(y)?)})
        }
        Command::Decompose => {
            let (a, y) = matrix_and_vector(&input, vector.as_ref())?;
            let cert = decompose(&arrangement_matrix(a)?, &need_vector(y)?, budget)?;
            json!({"in_L": cert.is_some(), "certificate": cert.as_ref().map(format::certificate_to_json)})
        }
        Command::Bounded => {
            let (a, y) = matrix_and_vector(&input, vector.as_ref())?;
            match y {
                Some(y) => json!({"in_bounded_part": bounded_membership(&stiefel_map(&a)?, &y)?}),
                None => {
                    let cells = bounded_complex(&arrangement_matrix(a)?, budget)?;
                    if svg {
                        return Ok(Output::Svg(render::tree_svg(&cells)));
                    }
                    json!({"cells": cells.iter().map(format::bounded_cell_to_json).collect::<Vec<_>>()})
                }
            }
        }
        Command::Recover => {
            let p = format::parse_plucker(field(&input, "plucker")?)?;
            let sigma = format::parse_graph(field(&input, "support")?)?;
            format::matrix_to_json(&recover_matrix(&p, &sigma)?)
        }
        Command::Render { tree } => {
            let a = arrangement_matrix(format::parse_matrix(&input)?)?;
            if *tree {
                if a.rows() != 2 {
                    return Err(stiefel_core::Error::Precondition("trees are drawn for d = 2").into());
                }
                return Ok(Output::Svg(render::tree_svg(&bounded_complex(&a, budget)?)));
            }
            return Ok(Output::Svg(render::arrangement_svg(&enumerate_covectors(&a, budget)?, budget)?));
        }
        Command::Gen { .. } => unreachable!("handled above"),
    };
    Ok(Output::Json(out))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| CliError::Usage(format!("missing field {key:?}")))
}

/// Reads the inputs named by the options and runs the command.
pub fn run(cli: &Cli) -> Result<Output> {
    let input = match cli.command {
        Command::Gen { .. } => None,
        _ => Some(read_source(cli.options.input.as_deref())?),
    };
    let vector = cli.options.vector.as_deref().map(|v| read_source(Some(v))).transpose()?;
    execute(&cli.command, &cli.options, input.as_deref(), vector.as_deref())
}

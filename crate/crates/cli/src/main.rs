//! `recsat`: realize type files and poke at the pieces.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use recsat::formula::parse_formula;
use recsat::trees::{find_path_bounded, node_interval, path_from_real_with};
use recsat::valuation::pseudo_limit_of;
use recsat::{doag_qe, eval, parse_series, parse_series_list, parse_type_file, realize_type, valuation_basis};
use recsat::{BinString, Budgets, CoefficientReal, Env, Error, Mode, OracleReal, TreeOracle};

#[derive(Parser)]
#[command(name = "recsat", version, about = "Realize computable types in Hahn-series models")]
struct Cli {
    #[command(flatten)]
    session: Session,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Session {
    /// Exponent dimension.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    dim: u32,
    /// `group` or `field`.
    #[arg(long, global = true, default_value = "group")]
    mode: Mode,
    /// Coefficient height for side queries.
    #[arg(long, global = true, default_value_t = 8)]
    height: u64,
    /// Preferred denominator bound for fill exponents.
    #[arg(long, global = true, default_value_t = 8)]
    denom: u64,
    /// Formulas examined, of the type and of the enumeration.
    #[arg(long, global = true, default_value_t = 100)]
    prefix: usize,
    /// Bits of precision.
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Session {
    fn budgets(&self) -> Budgets {
        Budgets { height: self.height, denom: self.denom, prefix: self.prefix, precision: self.precision }
    }

    fn dim(&self) -> usize {
        self.dim as usize
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Realize the type in a type file and print the report.
    Realize { file: PathBuf },
    /// Eliminate quantifiers from a group formula.
    Qe { formula: String },
    /// Valuation basis of a comma-separated list of series.
    Basis { series: String },
    /// A pseudo limit of a comma-separated pseudo-Cauchy prefix.
    PseudoLimit { series: String },
    /// Binary trees and the interval coding of reals.
    Tree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
    /// Truth of a formula under `name=series` bindings.
    Eval {
        formula: String,
        bindings: Vec<String>,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// The interval coded by a node.
    Interval { bits: String },
    /// The nodes along the path of a real in `[0, 1)`.
    Path {
        /// `full`, `single:<bits>`, `seeded:<n>`, or a file of bit strings.
        tree: String,
        /// A rational or `alg[...]`.
        real: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// The leftmost path of a given length, if the tree has one.
    Search {
        tree: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

/// A failure with the exit code it maps to and, optionally, output to emit first.
struct Failure {
    code: u8,
    message: String,
    output: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: 1, message: e.to_string(), output: None }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()), output: None })
}

fn tree_of(spec: &str) -> Result<TreeOracle, Failure> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        return Ok(TreeOracle::parse(&read(&path)?)?);
    }
    Ok(TreeOracle::parse(spec)?)
}

fn realize(s: &Session, file: &PathBuf) -> Result<String, Failure> {
    let tf = parse_type_file(&read(file)?, s.dim())?;
    let budgets = s.budgets();
    match realize_type(&tf, s.mode, &budgets, s.dim()) {
        Ok(r) => {
            let report = r.report();
            if r.verified() {
                Ok(report)
            } else {
                Err(Failure { code: 1, message: "witness fails the verification".into(), output: Some(report) })
            }
        }
        Err(Error::NotFinitelySatisfiable(core)) => {
            let mut out = String::from("COMPLETION\n  not finitely satisfiable\n");
            for f in &core {
                out.push_str(&format!("  conflict: {f}\n"));
            }
            Err(Failure { code: 2, message: format!("conflicting formulas: {}", core.join(" ; ")), output: Some(out) })
        }
        Err(Error::BudgetExhausted(what)) => {
            let out = format!("CLASSIFICATION=inconclusive\n  budget exhausted during {what}\nBUDGETS\n  mode {}; {budgets}\n", s.mode);
            Err(Failure { code: 3, message: format!("budget exhausted during {what}"), output: Some(out) })
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let s = &cli.session;
    s.budgets().validate()?;
    let dim = s.dim();
    match &cli.cmd {
        Cmd::Realize { file } => realize(s, file),
        Cmd::Qe { formula } => Ok(format!("{}\n", doag_qe(&parse_formula(formula)?)?)),
        Cmd::Basis { series } => {
            let gs = parse_series_list(series, dim)?;
            if gs.iter().any(|g| g.is_zero()) {
                return Err(Error::Unsupported("basis of a list containing 0".into()).into());
            }
            let b = valuation_basis(&gs, s.precision)?;
            let names: Vec<String> = b.generators.iter().rev().map(|g| g.to_literal()).collect();
            Ok(format!("{}\n", names.join(", ")))
        }
        Cmd::PseudoLimit { series } => Ok(format!("{}\n", pseudo_limit_of(&parse_series_list(series, dim)?)?.to_literal())),
        Cmd::Tree { cmd } => match cmd {
            TreeCmd::Interval { bits } => Ok(format!("{}\n", node_interval(&bits.parse::<BinString>()?))),
            TreeCmd::Path { tree, real, depth } => {
                let c = CoefficientReal::parse(real)?;
                let r = OracleReal::from_fn(real.clone(), move |n| c.approx(n));
                let chain = path_from_real_with(&tree_of(tree)?, &r, *depth, s.precision)?;
                Ok(chain.iter().map(|n| format!("{:<width$} {}\n", if n.is_empty() { "-".to_string() } else { n.to_string() }, node_interval(n), width = depth.max(&1))).collect())
            }
            TreeCmd::Search { tree, depth } => Ok(match find_path_bounded(&tree_of(tree)?, *depth) {
                Some(p) => format!("{}\n", if p.is_empty() { "-".to_string() } else { p.to_string() }),
                None => "none\n".to_string(),
            }),
        },
        Cmd::Eval { formula, bindings } => {
            let mut env = Env::new(dim);
            env.budget = s.precision;
            for b in bindings {
                let (name, value) = b.split_once('=').ok_or_else(|| Error::Syntax { column: 1, message: format!("expected name=series, got `{b}`") })?;
                env.bind(name.trim(), parse_series(value, dim)?);
            }
            Ok(format!("{}\n", eval(&parse_formula(formula)?, &env)?))
        }
    }
}

fn emit(s: &Session, text: &str) -> Result<(), Failure> {
    match &s.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure { code: 1, message: format!("{}: {e}", p.display()), output: None }),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(&cli.session, &out));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(out) = &f.output {
                if let Err(g) = emit(&cli.session, out) {
                    eprintln!("recsat: {}", g.message);
                }
            }
            eprintln!("recsat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

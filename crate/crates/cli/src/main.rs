use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use turanham::export::{self, Format};
use turanham::fixtures::FixtureSet;
use turanham::labelled::ClosingFormula;
use turanham::reflective::DihedralWeights;
use turanham::verify::{self, Scope, VerifyOptions};
use turanham::{cache, Column, Engine};

/// Exact counts of loopless generalized chord diagrams and Hamiltonian
/// cycles in complete multipartite graphs K_{d,...,d}.
#[derive(Parser)]
#[command(name = "turanham", version)]
struct Cli {
    /// Seed the memo tables from a cache file written by `cache save`.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one value.
    Compute {
        #[arg(short = 'd', value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum)]
        column: ColumnArg,
    },
    /// Print or write a table for n = 1..=n-max.
    Table {
        #[arg(short = 'd', value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Column for b-file output.
        #[arg(long, value_enum)]
        column: Option<ColumnArg>,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check published tables, the brute-force oracle and identities.
    Verify(VerifyArgs),
    /// Save or load the memo tables.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    scope: ScopeArg,
    /// Largest number of points handed to the oracle.
    #[arg(long, default_value_t = 12)]
    max_points: usize,
    /// Also report this many rows past each published table.
    #[arg(long, default_value_t = 0)]
    beyond: usize,
    #[arg(long, value_enum, hide = true)]
    erratum: Vec<ErratumArg>,
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Compute tables and write them to a file.
    Save {
        path: PathBuf,
        /// Part sizes to compute; defaults to 2..=6.
        #[arg(short = 'd', value_parser = clap::value_parser!(u64).range(2..))]
        d: Vec<u64>,
        /// Rows per part size; defaults to each published table's length.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Validate a cache file.
    Load { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ColumnArg {
    Linear,
    Labelled,
    Rotations,
    Dihedral,
}

impl From<ColumnArg> for Column {
    fn from(c: ColumnArg) -> Self {
        match c {
            ColumnArg::Linear => Column::Linear,
            ColumnArg::Labelled => Column::Labelled,
            ColumnArg::Rotations => Column::Rotations,
            ColumnArg::Dihedral => Column::Dihedral,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Markdown,
    Bfile,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Markdown => Format::Markdown,
            FormatArg::Bfile => Format::Bfile,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Fixtures,
    Oracle,
    Identities,
    All,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::Fixtures => Scope::Fixtures,
            ScopeArg::Oracle => Scope::Oracle,
            ScopeArg::Identities => Scope::Identities,
            ScopeArg::All => Scope::All,
        }
    }
}

/// Formula variants known to be wrong, for checking that verify notices.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ErratumArg {
    D3Sign,
    PrintedWeights,
}

fn engine(cache_path: &Option<PathBuf>) -> Result<Engine, String> {
    match cache_path {
        Some(p) => cache::load(p).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(Engine::new()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Compute { d, n, column } => {
            let mut engine = engine(&cli.cache)?;
            let value = engine
                .column(d as usize, n as usize, column.into())
                .map_err(|e| e.to_string())?;
            println!("{value}");
        }
        Command::Table { d, n_max, format, column, output } => {
            if matches!(format, FormatArg::Bfile) && column.is_none() {
                eprintln!("error: --format bfile needs --column");
                return Ok(ExitCode::from(2));
            }
            let mut engine = engine(&cli.cache)?;
            let records = engine.records(d as usize, n_max).map_err(|e| e.to_string())?;
            let text = export::render(&records, format.into(), column.map(Into::into)).map_err(|e| e.to_string())?;
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())?,
            }
        }
        Command::Verify(args) => {
            let opts = VerifyOptions {
                scope: args.scope.into(),
                max_points: args.max_points,
                beyond: args.beyond,
                closing: if args.erratum.contains(&ErratumArg::D3Sign) {
                    ClosingFormula::PrintedD3Display
                } else {
                    ClosingFormula::General
                },
                weights: if args.erratum.contains(&ErratumArg::PrintedWeights) {
                    DihedralWeights::Printed
                } else {
                    DihedralWeights::Standard
                },
            };
            let report = verify::run(&opts);
            print!("{}", report.render());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Cache(CacheCommand::Save { path, d, n_max }) => {
            let mut engine = engine(&cli.cache)?;
            let fixtures = FixtureSet::load().map_err(|e| e.to_string())?;
            let ds: Vec<usize> = if d.is_empty() { vec![2, 3, 4, 5, 6] } else { d.iter().map(|&x| x as usize).collect() };
            for d in ds {
                let n = n_max.unwrap_or_else(|| fixtures.coverage(d).max(1));
                engine.records(d, n).map_err(|e| e.to_string())?;
            }
            cache::save(&engine, &path).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        Command::Cache(CacheCommand::Load { path }) => {
            let engine = cache::load(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let triangles = engine.triangles().count();
            let sectors = engine.sector_tables().iter().count();
            println!("{}: {triangles} triangles, {sectors} sector tables", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use quadcusp::cusp_constants::ConstantVector;
use quadcusp::report::{
    ConstantsRecord, CuspRecord, QExpRecord, TableRow, TripleRecord, TABLE_HEADER,
};
use quadcusp::verify::{self, VerifyConfig};
use quadcusp::{cusps, eisenstein, EisTriple, Error, Level};

const D_MAX_LIMIT: u64 = 1000;
const DC_MAX_LIMIT: u64 = 2000;

#[derive(Parser)]
#[command(
    name = "quadcusp",
    version,
    about = "Eisenstein series, cusp constants and cuspidal orders on X0(DC)"
)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct LevelArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    c: u64,
}

#[derive(Args)]
struct TripleArgs {
    #[command(flatten)]
    level: LevelArgs,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    l: u64,
    /// Conductor of the quadratic character.
    #[arg(long, default_value_t = 1)]
    f: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Cusp representatives of X0(DC).
    Cusps(LevelArgs),
    /// Quadratic triples (M, L, f) of H(DC).
    Triples(LevelArgs),
    /// q-expansion of E_{M,L,chi} at infinity.
    Qexp {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 200)]
        prec: usize,
    },
    /// Constant terms at every cusp, in units of n_chi.
    Constants(TripleArgs),
    /// Order row for one triple.
    Order(TripleArgs),
    /// Order rows for every level with D up to a bound.
    Table {
        #[arg(long)]
        d_max: u64,
    },
    /// Runs every identity check up to a bound on DC.
    Verify {
        #[arg(long, default_value_t = 400)]
        dc_max: u64,
        #[arg(long, default_value_t = 200)]
        prec: usize,
    },
}

enum Failure {
    Invalid(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Failure::Verification(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Verification(e.to_string())
    }
}

fn level(args: &LevelArgs) -> Result<Level, Failure> {
    Ok(Level::new(args.d, args.c)?)
}

fn triple(args: &TripleArgs) -> Result<EisTriple, Failure> {
    Ok(EisTriple::new(level(&args.level)?, args.m, args.l, args.f)?)
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), Failure> {
    let s =
        serde_json::to_string_pretty(value).map_err(|e| Failure::Verification(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Cusps(args) => {
            let lv = level(&args)?;
            let recs: Vec<CuspRecord> = cusps::enumerate_cusps(lv)
                .iter()
                .map(|r| CuspRecord::new(r, lv))
                .collect();
            if format == Some(Format::Csv) {
                writeln!(out, "r,s,t,x,num,den,width0,width1")?;
                for c in &recs {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        c.r, c.s, c.t, c.x, c.num, c.den, c.width0, c.width1
                    )?;
                }
            } else {
                print_json(out, &recs)?;
            }
        }
        Command::Triples(args) => {
            let recs: Vec<TripleRecord> = eisenstein::enumerate_quadratic_triples(level(&args)?)
                .iter()
                .map(TripleRecord::from)
                .collect();
            if format == Some(Format::Csv) {
                writeln!(out, "D,C,M,L,f")?;
                for t in &recs {
                    writeln!(out, "{},{},{},{},{}", t.d, t.c, t.m, t.l, t.f)?;
                }
            } else {
                print_json(out, &recs)?;
            }
        }
        Command::Qexp { triple: args, prec } => {
            let t = triple(&args)?;
            let series = eisenstein::qexp_closed(&t, prec);
            if format == Some(Format::Csv) {
                writeln!(out, "n,coeff")?;
                for (n, c) in series.coeffs().iter().enumerate() {
                    writeln!(out, "{n},{c}")?;
                }
            } else {
                print_json(out, &QExpRecord::new(&t, &series))?;
            }
        }
        Command::Constants(args) => {
            let t = triple(&args)?;
            let rec = ConstantsRecord::from(&ConstantVector::closed(&t)?);
            if format == Some(Format::Csv) {
                writeln!(out, "r,s,t,x,rho,width")?;
                for e in &rec.entries {
                    let c = &e.cusp;
                    writeln!(out, "{},{},{},{},{},{}", c.r, c.s, c.t, c.x, e.rho, e.width)?;
                }
            } else {
                print_json(out, &rec)?;
            }
        }
        Command::Order(args) => {
            let row = TableRow::new(&triple(&args)?)?;
            if format == Some(Format::Csv) {
                writeln!(out, "{TABLE_HEADER}")?;
                writeln!(out, "{}", row.csv_line())?;
            } else {
                print_json(out, &row)?;
            }
        }
        Command::Table { d_max } => {
            if d_max > D_MAX_LIMIT {
                return Err(Failure::Invalid(format!(
                    "--d-max {d_max} exceeds {D_MAX_LIMIT}"
                )));
            }
            let triples: Vec<EisTriple> = Level::all_with_d_up_to(d_max)
                .into_iter()
                .flat_map(eisenstein::enumerate_quadratic_triples)
                .collect();
            let mut rows = triples
                .par_iter()
                .map(TableRow::new)
                .collect::<quadcusp::Result<Vec<_>>>()?;
            rows.sort_by_key(|r| {
                let t = r.triple;
                (t.d, t.c, t.m, t.l, t.f)
            });
            if format == Some(Format::Json) {
                print_json(out, &rows)?;
            } else {
                writeln!(out, "{TABLE_HEADER}")?;
                for r in &rows {
                    writeln!(out, "{}", r.csv_line())?;
                }
            }
        }
        Command::Verify { dc_max, prec } => {
            if dc_max > DC_MAX_LIMIT {
                return Err(Failure::Invalid(format!(
                    "--dc-max {dc_max} exceeds {DC_MAX_LIMIT}"
                )));
            }
            let report = verify::run_all(&VerifyConfig {
                dc_max,
                prec,
                ..VerifyConfig::default()
            });
            print_json(out, &report)?;
            if !report.ok {
                return Err(Failure::Verification("verification failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Invalid(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Verification(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Ok(()), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

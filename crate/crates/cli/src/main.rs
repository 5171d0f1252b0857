//! `gf2nbasis`: normal bases of binary fields from the command line.

mod bench;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gf2nbasis_core::algebraic::{compute_nq, embedding_degree};
use gf2nbasis_core::gauss::{build_params, complexity_bounds, exact_complexity, lowest_type, mult_table};
use gf2nbasis_core::tables::{self, diff_rows, DiffReport, TableRow};
use gf2nbasis_core::towers::build;
use gf2nbasis_core::{GnbElement, Mechanism, TowerForm};

use output::{Cell, Format, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(#[from] gf2nbasis_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("golden mismatch: {} row(s) differ from {}", .report.len(), .path.display())]
    Golden { path: PathBuf, report: DiffReport },
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::Golden { .. } => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gf2nbasis", version, about = "Normal bases of binary fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    /// Worker threads for table scans (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gaussian normal bases.
    #[command(subcommand)]
    Gnb(GnbCommand),
    /// The integer n_q for a point of order n over F_q.
    Nq {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// Elliptic and multiplicative-group normal bases.
    #[command(subcommand)]
    Enb(EnbCommand),
    /// Fields without a low-type Gaussian normal basis.
    #[command(subcommand)]
    Ext(ExtCommand),
    /// Extensions of a Gaussian normal basis.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Timings.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Args, Debug)]
struct Range {
    #[arg(long)]
    min: u64,
    #[arg(long)]
    max: u64,
}

#[derive(Args, Debug)]
struct TableOut {
    /// Output path, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: PathBuf,
    /// Golden CSV to compare against; relative paths resolve against
    /// `GF2NBASIS_GOLDEN_DIR` when it is set.
    #[arg(long)]
    golden: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GnbCommand {
    /// Lowest type of a Gaussian normal basis of F_{2^n}.
    Lowest {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Lowest types over a range of n.
    Table {
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 10)]
        kmax: u64,
        #[command(flatten)]
        out: TableOut,
    },
    /// Product of two hex-encoded elements.
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Number of nonzero entries of the multiplication table.
    Complexity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum EnbCommand {
    /// Smallest intermediate degree e for F_{2^n}.
    Embed {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 20)]
        emax: u32,
        #[arg(long, default_value = "elliptic", value_parser = parse_mechanism)]
        mechanism: Mechanism,
    },
    /// Embedding degrees over a range of n.
    Table {
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 20)]
        emax: u32,
        #[command(flatten)]
        out: TableOut,
    },
}

#[derive(Subcommand, Debug)]
enum ExtCommand {
    /// Workarounds for each n lacking a basis of type <= kmax.
    Table {
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 10)]
        kmax: u64,
        #[arg(long, default_value_t = 20)]
        emax: u32,
        #[command(flatten)]
        out: TableOut,
    },
}

#[derive(Subcommand, Debug)]
enum TowerCommand {
    /// Product of two tower elements given as comma-separated hex blocks.
    Mul {
        #[arg(long, value_parser = parse_form)]
        form: TowerForm,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Schoolbook against Karatsuba over a doubling degree ladder.
    Crossover {
        #[arg(long)]
        min_deg: usize,
        #[arg(long)]
        max_deg: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn parse_mechanism(s: &str) -> Result<Mechanism, String> {
    s.parse().map_err(|e: gf2nbasis_core::Error| e.to_string())
}

fn parse_form(s: &str) -> Result<TowerForm, String> {
    s.parse().map_err(|e: gf2nbasis_core::Error| e.to_string())
}

fn golden_path(p: &Path) -> PathBuf {
    match std::env::var_os("GF2NBASIS_GOLDEN_DIR") {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn emit_table<R: TableRow>(
    rows: &[R],
    table: Table,
    out: &TableOut,
    format: Format,
) -> Result<(), CliError> {
    output::write_out(&out.out, &table.render(format)?)?;
    if let Some(golden) = &out.golden {
        let path = golden_path(golden);
        let expected: Vec<R> = tables::read_csv(&path)?;
        let report = diff_rows(rows, &expected);
        if !report.is_empty() {
            return Err(CliError::Golden { path, report });
        }
        eprintln!("matches {} ({} rows)", path.display(), expected.len());
    }
    Ok(())
}

fn print(table: Table, format: Format) -> Result<(), CliError> {
    output::write_out(Path::new("-"), &table.render(format)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Gnb(GnbCommand::Lowest { n, kmax }) => {
            let k = lowest_type(n, kmax);
            print(
                Table::single(&["n", "k"], vec![Cell::Int(n as u128), k.map(|k| k as u64).into()], 1),
                format,
            )
        }
        Command::Gnb(GnbCommand::Table { range, kmax, out }) => {
            let rows = tables::gnb_range(range.min, range.max, kmax)?;
            emit_table(&rows, output::gnb_table(&rows), &out, format)
        }
        Command::Gnb(GnbCommand::Mul { n, k, a, b }) => {
            let params = build_params(n, k)?;
            let x = GnbElement::from_hex(&params, &a)?;
            let y = GnbElement::from_hex(&params, &b)?;
            let p = x.mul(&y)?;
            print(
                Table::single(
                    &["n", "k", "a", "b", "product"],
                    vec![
                        Cell::Int(n as u128),
                        Cell::Int(k as u128),
                        Cell::Str(x.to_hex()),
                        Cell::Str(y.to_hex()),
                        Cell::Str(p.to_hex()),
                    ],
                    4,
                ),
                format,
            )
        }
        Command::Gnb(GnbCommand::Complexity { n, k }) => {
            let table = mult_table(&build_params(n, k)?)?;
            let (lower, upper) = complexity_bounds(n, k);
            let signed = |v: i64| Cell::Str(v.to_string());
            print(
                Table::single(
                    &["n", "k", "complexity", "lower", "upper", "exact"],
                    vec![
                        Cell::Int(n as u128),
                        Cell::Int(k as u128),
                        Cell::Int(table.complexity() as u128),
                        signed(lower),
                        signed(upper),
                        exact_complexity(n, k).map(|c| c as u64).into(),
                    ],
                    2,
                ),
                format,
            )
        }
        Command::Nq { n, q } => {
            let p = compute_nq(n, q)?;
            print(
                Table::single(
                    &["n", "q", "nq", "admits_curve"],
                    vec![
                        Cell::Int(n as u128),
                        Cell::Int(q as u128),
                        Cell::Int(p.nq),
                        Cell::Bool(p.admits_curve()),
                    ],
                    2,
                ),
                format,
            )
        }
        Command::Enb(EnbCommand::Embed { n, emax, mechanism }) => {
            let r = embedding_degree(n, emax, mechanism)?;
            print(
                Table::single(
                    &["n", "embed", "d", "mechanism"],
                    vec![
                        Cell::Int(n as u128),
                        r.embed.into(),
                        r.d.into(),
                        Cell::Str(r.mechanism.to_string()),
                    ],
                    1,
                ),
                format,
            )
        }
        Command::Enb(EnbCommand::Table { range, emax, out }) => {
            let rows = tables::enb_range(range.min, range.max, emax)?;
            emit_table(&rows, output::enb_table(&rows), &out, format)
        }
        Command::Ext(ExtCommand::Table {
            range,
            kmax,
            emax,
            out,
        }) => {
            let rows = tables::ext_range(range.min, range.max, kmax, emax)?;
            emit_table(&rows, output::ext_table(&rows), &out, format)
        }
        Command::Tower(TowerCommand::Mul { form, d, k, x, y }) => {
            let tower = build(&build_params(d, k)?, form)?;
            let (p, counts) = tower.mul(&tower.parse(&x)?, &tower.parse(&y)?)?;
            print(
                Table::single(
                    &["form", "d", "k", "product", "mults", "table_apps", "additions"],
                    vec![
                        Cell::Str(form.to_string()),
                        Cell::Int(d as u128),
                        Cell::Int(k as u128),
                        Cell::Str(p.to_hex()),
                        Cell::Int(counts.mults as u128),
                        Cell::Int(counts.table_apps as u128),
                        Cell::Int(counts.additions as u128),
                    ],
                    3,
                ),
                format,
            )
        }
        Command::Bench(BenchCommand::Crossover {
            min_deg,
            max_deg,
            samples,
        }) => {
            let table = bench::crossover(min_deg, max_deg, samples)?;
            let format = if format == Format::Text { Format::Csv } else { format };
            print(table, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Golden { report, .. } = &e {
                eprint!("{report}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

use baumbott_cli::{emit, parse_job, run, ChiKind, ModeKind, OrderKind, OutputFormat};
use clap::Parser;
use std::io::{Read, Write};
use std::process::ExitCode;

/// Exact and numeric Baum-Bott residues of vector-field singularities.
///
/// Reads a JSON job from FILE or stdin, writes a JSON report (or a CSV
/// convergence table) to stdout. Exit codes: 0 ok, 2 domain error,
/// 3 parse error.
#[derive(Parser, Debug)]
#[command(name = "baumbott", version)]
struct Args {
    /// Job file; stdin when omitted.
    job: Option<std::path::PathBuf>,

    /// Regularization parameter for numeric jobs.
    #[arg(long)]
    eps: Option<f64>,

    /// Grid resolution per real dimension.
    #[arg(long)]
    grid: Option<usize>,

    /// Ball radius for numeric jobs.
    #[arg(long)]
    radius: Option<f64>,

    /// Cutoff profile.
    #[arg(long, value_parser = parse_chi)]
    chi: Option<ChiKind>,

    /// Monomial order for the exact engine.
    #[arg(long, value_parser = parse_order)]
    order: Option<OrderKind>,

    /// Quadrature mode.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<ModeKind>,

    /// Output format (csv only for convergence tables).
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,

    /// Worker threads for the quadrature (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_chi(s: &str) -> Result<ChiKind, String> {
    match s {
        "cubic" => Ok(ChiKind::Cubic),
        "quintic" => Ok(ChiKind::Quintic),
        _ => Err("expected 'cubic' or 'quintic'".into()),
    }
}

fn parse_order(s: &str) -> Result<OrderKind, String> {
    match s {
        "grevlex" => Ok(OrderKind::Grevlex),
        "lex" => Ok(OrderKind::Lex),
        _ => Err("expected 'grevlex' or 'lex'".into()),
    }
}

fn parse_mode(s: &str) -> Result<ModeKind, String> {
    match s {
        "shell-only" => Ok(ModeKind::ShellOnly),
        "full-ball" => Ok(ModeKind::FullBall),
        _ => Err("expected 'shell-only' or 'full-ball'".into()),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        _ => Err("expected 'json' or 'csv'".into()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();

    if let Some(threads) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("warning: could not set thread count: {e}");
        }
    }

    let input = match &args.job {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(3);
            }
        },
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: cannot read stdin: {e}");
                return ExitCode::from(3);
            }
            buf
        }
    };

    let report = match parse_job(&input) {
        Ok(mut job) => {
            // Flags override the corresponding job parameters.
            if args.eps.is_some() {
                job.eps = args.eps;
            }
            if args.grid.is_some() {
                job.grid = args.grid;
            }
            if args.radius.is_some() {
                job.radius = args.radius;
            }
            if args.chi.is_some() {
                job.chi = args.chi;
            }
            if args.order.is_some() {
                job.order = args.order;
            }
            if args.mode.is_some() {
                job.mode = args.mode;
            }
            run(&job)
        }
        Err(report) => *report,
    };

    match emit(&report, args.format) {
        Ok(bytes) => {
            if std::io::stdout().write_all(&bytes).is_err() {
                return ExitCode::from(3);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

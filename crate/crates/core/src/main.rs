use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use matsolve::cli::{error_json, exit_code, run, Command, RunConfig};
use matsolve::exactalg::MonomialOrder;
use matsolve::numlin::Tolerances;
use matsolve::syscount::Shape;
use matsolve::Error;

#[derive(Parser, Debug)]
#[command(name = "matsolve", version, about = "Solve and count solutions of polynomial matrix equations")]
struct Args {
    /// solve-unilateral | solve-riccati | solve-commuting | solve-symmetric | families | count | jacobian | fixtures | random-instance
    command: String,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol_root: Option<f64>,
    #[arg(long)]
    tol_rank: Option<f64>,
    #[arg(long)]
    tol_dedup: Option<f64>,
    /// Maximum S-pair reductions in the Gröbner engine.
    #[arg(long)]
    pair_budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = Order::Grevlex)]
    order: Order,
    /// random-instance: unilateral, riccati, plex1, plex2, degmax, commuting, symmetric or binome.
    #[arg(long)]
    shape: Option<String>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

fn config(args: &Args) -> Result<RunConfig, Error> {
    let command: Command = args.command.parse()?;
    let mut cfg = RunConfig::new(command);
    if let Some(path) = &args.input {
        cfg.input = Some(std::fs::read_to_string(path)?);
    }
    let d = Tolerances::default();
    cfg.tolerances = Tolerances { root: args.tol_root.unwrap_or(d.root), rank: args.tol_rank.unwrap_or(d.rank), dedup: args.tol_dedup.unwrap_or(d.dedup) };
    cfg.seed = args.seed;
    cfg.pair_budget = args.pair_budget;
    cfg.order = match args.order {
        Order::Grevlex => MonomialOrder::Grevlex,
        Order::Lex => MonomialOrder::Lex,
    };
    cfg.shape = args.shape.as_deref().map(str::parse::<Shape>).transpose()?;
    cfg.n = args.n;
    cfg.k = args.k;
    Ok(cfg)
}

fn emit(args: &Args, value: &serde_json::Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match &args.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(threads) = std::env::var("MATSOLVE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // fails only if the pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    let outcome = config(&args).and_then(|cfg| run(&cfg));
    let (value, code) = match outcome {
        Ok(report) => (report.to_json(), report.exit_code()),
        Err(e) => {
            eprintln!("matsolve: {e}");
            (error_json(Some(&args.command), &e), exit_code(&e))
        }
    };
    if let Err(e) = emit(&args, &value) {
        eprintln!("matsolve: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}

mod eval;
mod figures;
mod output;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qshannon::classical::Core;
use qshannon::{EvaluationMode, IntegrationOptions, Statistics};
use rayon::prelude::*;

use eval::{evaluate, Model, Point, State};
use output::{Format, Row, Sweep};

#[derive(Parser)]
#[command(name = "qshannon", version, about = "Shannon entropies and mutual information of quasiparticle states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point.
    Compute(RunArgs),
    /// Evaluate a one-parameter sweep (requires --sweep).
    Sweep(RunArgs),
    /// Write the CSV panels of a standard figure (ids 2 to 10).
    Figure {
        id: u32,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, env = "QSHANNON_THREADS", default_value_t = 0)]
        threads: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, value_enum)]
    state: State,
    #[arg(long, default_value = "exact", value_parser = parse_mode)]
    mode: EvaluationMode,
    /// Chain length.
    #[arg(long = "L")]
    length: usize,
    /// Block length; defaults to L/2.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    k1: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    k2: i64,
    #[arg(long = "I1", default_value_t = 0)]
    i1: i64,
    #[arg(long = "I2", default_value_t = 1)]
    i2: i64,
    /// Total Bethe number of a bound pair, or the σˣ magnon number.
    #[arg(long = "I", default_value_t = 0)]
    i: i64,
    /// Particle count for r-identical states.
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, default_value = "soft", value_parser = parse_core)]
    core: Core,
    /// Particles per species, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    species: Vec<u32>,
    /// Statistics of the numdist model.
    #[arg(long, default_value = "bos", value_parser = parse_stats)]
    stats: Statistics,
    /// Sweep specification `axis:lo:hi:step` with axis one of ell, k12, I, n, x.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long, env = "QSHANNON_THREADS", default_value_t = 0)]
    threads: usize,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Largest L (or ℓ) enumerated by the σˣ brute force.
    #[arg(long = "max-L-sigmax", default_value_t = qshannon::sigma_x::DEFAULT_CEILING)]
    max_l_sigmax: usize,
}

fn parse_mode(s: &str) -> Result<EvaluationMode, String> {
    s.parse().map_err(|e: qshannon::Error| e.to_string())
}

fn parse_core(s: &str) -> Result<Core, String> {
    s.parse().map_err(|e: qshannon::Error| e.to_string())
}

fn parse_stats(s: &str) -> Result<Statistics, String> {
    s.parse().map_err(|e: qshannon::Error| e.to_string())
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Parameter(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parameter(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parameter(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }
}

impl From<qshannon::Error> for Failure {
    fn from(e: qshannon::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Parameter(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    Ell,
    K12,
    #[value(name = "I")]
    I,
    N,
    X,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::Ell => "ell",
            Axis::K12 => "k12",
            Axis::I => "I",
            Axis::N => "n",
            Axis::X => "x",
        }
    }
}

struct SweepSpec {
    axis: Axis,
    values: Vec<f64>,
}

fn parse_sweep(spec: &str) -> Result<SweepSpec, Failure> {
    let bad = |why: &str| Failure::Parameter(format!("invalid sweep '{spec}': {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [axis, lo, hi, step] = parts[..] else {
        return Err(bad("expected axis:lo:hi:step"));
    };
    let axis = Axis::from_str(axis, false).map_err(|_| bad("axis must be one of ell, k12, I, n, x"))?;
    let values = if axis == Axis::X {
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad("bounds must be numbers"));
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if !(step > 0.0) || hi < lo {
            return Err(bad("need lo ≤ hi and step > 0"));
        }
        let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| lo + i as f64 * step).collect()
    } else {
        let num = |s: &str| s.parse::<i64>().map_err(|_| bad("bounds must be integers on this axis"));
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if step <= 0 || hi < lo {
            return Err(bad("need lo ≤ hi and step > 0"));
        }
        (lo..=hi).step_by(step as usize).map(|v| v as f64).collect()
    };
    Ok(SweepSpec { axis, values })
}

fn base_point(a: &RunArgs) -> Point {
    Point {
        model: a.model,
        state: a.state,
        mode: a.mode,
        length: a.length,
        ell: a.ell.unwrap_or(a.length / 2),
        x: None,
        k1: a.k1,
        k2: a.k2,
        i1: a.i1,
        i2: a.i2,
        i: a.i,
        r: a.r,
        core: a.core,
        species: a.species.clone(),
        stats: a.stats,
        tol: a.tol,
        max_l_sigmax: a.max_l_sigmax,
    }
}

fn apply(base: &Point, axis: Axis, v: f64) -> Result<Point, qshannon::Error> {
    let mut p = base.clone();
    match axis {
        Axis::Ell => p.ell = v as usize,
        Axis::K12 => p.k1 = p.k2 + v as i64,
        Axis::I => p.i = v as i64,
        Axis::N => {
            let n = v as usize;
            if n < 2 || p.length % n != 0 {
                return Err(qshannon::Error::Parameter(format!("n = {n} does not divide L = {}", p.length)));
            }
            p.k1 = p.k2 + (p.length / n) as i64;
        }
        Axis::X => {
            if !(v > 0.0 && v < 1.0) {
                return Err(qshannon::Error::Parameter(format!("x = {v} must lie in (0, 1)")));
            }
            p.x = Some(v);
            p.ell = ((v * p.length as f64).round() as usize).clamp(1, p.length.saturating_sub(1).max(1));
        }
    }
    Ok(p)
}

fn failed_row(p: &Point, sweep: Option<f64>, e: &qshannon::Error) -> Row {
    Row {
        sweep,
        x: p.ratio(),
        h_total: None,
        h_sub: None,
        h_comp: None,
        mi: None,
        mode: p.mode.to_string(),
        error: Some(e.to_string()),
    }
}

fn row_for(p: &Point, sweep: Option<f64>) -> (Row, Option<Failure>) {
    match evaluate(p) {
        Ok(rep) => (
            Row {
                sweep,
                x: p.ratio(),
                h_total: Some(rep.h_total),
                h_sub: Some(rep.h_sub),
                h_comp: Some(rep.h_complement),
                mi: Some(rep.mi),
                mode: rep.mode.to_string(),
                error: None,
            },
            None,
        ),
        Err(e) => (failed_row(p, sweep, &e), Some(e.into())),
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Parameter(format!("cannot start {threads} worker threads: {e}")))
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(args: &RunArgs, base: &Point, sweep: Option<&Sweep>, rows: &[Row]) -> Result<(), Failure> {
    let mut out = sink(&args.out)?;
    output::write(&mut out, args.format, base, sweep, rows).map_err(|e| Failure::Io(e.to_string()))?;
    out.flush()?;
    Ok(())
}

fn compute(args: RunArgs) -> Result<(), Failure> {
    if args.sweep.is_some() {
        return Err(Failure::Parameter("compute takes no --sweep; use the sweep subcommand".into()));
    }
    let base = base_point(&args);
    let (row, failure) = pool(args.threads)?.install(|| row_for(&base, None));
    if let Some(f) = failure {
        return Err(f);
    }
    emit(&args, &base, None, &[row])
}

fn sweep(args: RunArgs) -> Result<(), Failure> {
    let Some(text) = args.sweep.clone() else {
        return Err(Failure::Parameter("sweep needs --sweep axis:lo:hi:step".into()));
    };
    let spec = parse_sweep(&text)?;
    let base = base_point(&args);
    let results: Vec<(Row, Option<Failure>)> = pool(args.threads)?.install(|| {
        spec.values
            .par_iter()
            .map(|&v| match apply(&base, spec.axis, v) {
                Ok(p) => row_for(&p, Some(v)),
                Err(e) => (failed_row(&base, Some(v), &e), Some(e.into())),
            })
            .collect()
    });
    let (rows, failures): (Vec<Row>, Vec<Option<Failure>>) = results.into_iter().unzip();
    let meta = Sweep {
        spec: &text,
        axis: spec.axis.name(),
        integer: spec.axis != Axis::X,
    };
    emit(&args, &base, Some(&meta), &rows)?;
    if !rows.is_empty() && failures.iter().all(Option::is_some) {
        return Err(failures.into_iter().flatten().next().unwrap());
    }
    Ok(())
}

fn figure(id: u32, dir: PathBuf, threads: usize, tol: f64) -> Result<(), Failure> {
    if !figures::IDS.contains(&id) {
        return Err(Failure::Parameter(format!("unknown figure id {id}; known ids are 2 to 10")));
    }
    let opts = IntegrationOptions::with_tolerance(tol);
    let panels = pool(threads)?
        .install(|| figures::panels(id, &opts))
        .map_err(|e| match e.downcast::<qshannon::Error>() {
            Ok(e) => Failure::from(e),
            Err(e) => Failure::Parameter(e.to_string()),
        })?;
    fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    for panel in &panels {
        let path = dir.join(&panel.file);
        let file = File::create(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        output::write_panel(&mut w, panel).map_err(|e| Failure::Io(e.to_string()))?;
        w.flush()?;
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Sweep(args) => sweep(args),
        Command::Figure { id, out, threads, tol } => figure(id, out, threads, tol),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qshannon: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eigqubo::harness::{self, ExperimentConfig};
use eigqubo::instances::{self, GeneratorFamily, GeneratorSpec};
use eigqubo::landscape::{self, WalkConfig};
use eigqubo::solver::{self, SolverConfig};
use eigqubo::spectral::{self, TransformConfig};
use eigqubo::QuboInstance;

#[derive(Parser)]
#[command(name = "eigqubo", version, about = "QUBO eigen-augmentation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance with the tabu / path-relinking heuristic.
    Solve(SolveArgs),
    /// Write the augmented matrix Q' in ORLIB triplet format.
    Transform(TransformArgs),
    /// Eigenvalue spectrum and histogram of an instance.
    Eig(EigArgs),
    /// Random-walk autocorrelation (single value or an (M, k) grid).
    Landscape(LandscapeArgs),
    /// Base-versus-transformed comparison driven by a config file.
    Sweep(SweepArgs),
    /// Generate random instances.
    Gen(GenArgs),
    /// Reduce an MDPLIB instance to a penalized QUBO.
    Mdp2qubo(MdpArgs),
}

#[derive(Args)]
struct InstanceArg {
    /// ORLIB-format instance file.
    input: PathBuf,
    /// 1-based instance index inside the file.
    #[arg(long, default_value_t = 1)]
    index: usize,
}

impl InstanceArg {
    fn load(&self) -> eigqubo::Result<QuboInstance> {
        let mut all = harness::load_orlib(&self.input)?;
        if self.index == 0 || self.index > all.len() {
            return Err(eigqubo::Error::InvalidArgument(format!(
                "{} holds {} instance(s), index {} requested",
                self.input.display(),
                all.len(),
                self.index
            )));
        }
        Ok(all.swap_remove(self.index - 1))
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArg,
    /// Search on the augmented matrix (scores stay on the original).
    #[arg(long)]
    transform: bool,
    #[arg(long = "M", default_value_t = 100.0)]
    m: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluation (bit flip) budget.
    #[arg(long)]
    evals: Option<u64>,
    /// Wall-clock budget in seconds; makes the run non-deterministic.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 20)]
    tabu_tenure: usize,
    #[arg(long, default_value_t = 8)]
    elite_size: usize,
    #[arg(long, default_value_t = 500)]
    restart_stall: usize,
    /// Write the JSON run report here (stdout otherwise).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include the incumbent trajectory in the report.
    #[arg(long)]
    trajectory: bool,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    instance: InstanceArg,
    #[arg(long = "M")]
    m: f64,
    #[arg(long)]
    k: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EigArgs {
    #[command(flatten)]
    instance: InstanceArg,
    /// Directory for spectrum.csv, histogram.csv and the manifest.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct LandscapeArgs {
    #[command(flatten)]
    instance: InstanceArg,
    /// M grid; with --k, produces a grid CSV.
    #[arg(long = "M", value_delimiter = ',')]
    m: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    walk_length: usize,
    #[arg(long, default_value_t = 100)]
    max_lag: usize,
    #[arg(long, default_value_t = 1000)]
    burn_in: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    config: PathBuf,
    /// Override the config's output directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value = "orlib-like")]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    density: f64,
    #[arg(long, default_value_t = -100, allow_hyphen_values = true)]
    low: i64,
    #[arg(long, default_value_t = 100, allow_hyphen_values = true)]
    high: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of instances; seeds are seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MdpArgs {
    input: PathBuf,
    #[arg(long = "P")]
    penalty: f64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

type CliResult = eigqubo::Result<()>;

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest");
    output.with_file_name(name)
}

fn write_manifest(output: &Path, command: &str, entries: &[(&str, String)]) -> CliResult {
    let body: String = entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    fs::write(manifest_path(output), harness::manifest_text(command, &body))?;
    Ok(())
}

fn solve(args: SolveArgs) -> CliResult {
    let base = args.instance.load()?;
    let cfg = SolverConfig {
        seed: args.seed,
        time_limit: args.time_limit,
        max_evaluations: match (args.evals, args.time_limit) {
            (None, None) => SolverConfig::default().max_evaluations,
            (e, _) => e,
        },
        tabu_tenure: args.tabu_tenure,
        elite_size: args.elite_size,
        restart_stall: args.restart_stall,
        record_moves: false,
    };
    let transformed = if args.transform {
        Some(spectral::transform_q(&base, TransformConfig::new(args.m, args.k)?)?)
    } else {
        None
    };
    let report = solver::prlocal(&base, transformed.as_ref(), &cfg)?;
    let json = report.to_json(args.trajectory);
    match &args.report {
        Some(path) => {
            fs::write(path, &json)?;
            write_manifest(
                path,
                "solve",
                &[
                    ("input", args.instance.input.display().to_string()),
                    ("index", args.instance.index.to_string()),
                    ("transform", args.transform.to_string()),
                    ("M", args.m.to_string()),
                    ("k", args.k.to_string()),
                    ("seed", cfg.seed.to_string()),
                    ("evals", format!("{:?}", cfg.max_evaluations)),
                    ("time_limit", format!("{:?}", cfg.time_limit)),
                    ("tabu_tenure", cfg.tabu_tenure.to_string()),
                    ("elite_size", cfg.elite_size.to_string()),
                    ("restart_stall", cfg.restart_stall.to_string()),
                ],
            )?;
            eprintln!(
                "{}: best {} after {} evaluations",
                base.name(),
                report.best_value_base,
                report.evaluations
            );
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn transform(args: TransformArgs) -> CliResult {
    let base = args.instance.load()?;
    let out = spectral::transform_q(&base, TransformConfig::new(args.m, args.k)?)?;
    instances::write_orlib(sink(&args.out)?, &[out])?;
    if let Some(path) = &args.out {
        write_manifest(
            path,
            "transform",
            &[
                ("input", args.instance.input.display().to_string()),
                ("index", args.instance.index.to_string()),
                ("M", args.m.to_string()),
                ("k", args.k.to_string()),
            ],
        )?;
    }
    Ok(())
}

fn eig(args: EigArgs) -> CliResult {
    let inst = args.instance.load()?;
    let report = harness::run_spectrum_report(&inst)?;
    match &args.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            spectral::write_spectrum_csv(fs::File::create(dir.join("spectrum.csv"))?, &report.eigenvalues)?;
            report.write_histogram_csv(fs::File::create(dir.join("histogram.csv"))?)?;
            let body = format!(
                "input = {}\nindex = {}\n",
                args.instance.input.display(),
                args.instance.index
            );
            fs::write(dir.join("manifest.txt"), harness::manifest_text("eig", &body))?;
        }
        None => report.write_histogram_csv(io::stdout().lock())?,
    }
    println!("{}", report.summary_line());
    Ok(())
}

fn run_landscape(args: LandscapeArgs) -> CliResult {
    let inst = args.instance.load()?;
    let cfg = WalkConfig {
        walk_length: args.walk_length,
        seed: args.seed,
        max_lag: args.max_lag,
        burn_in: args.burn_in,
    };
    let mut out = sink(&args.out)?;
    if args.m.is_empty() && args.k.is_empty() {
        let stats = landscape::random_walk_autocorrelation(&inst, &cfg)?;
        writeln!(out, "lag,rho")?;
        for (d, r) in stats.rho.iter().enumerate() {
            writeln!(out, "{},{}", d + 1, r)?;
        }
        out.flush()?;
        match stats.xi {
            Some(xi) => eprintln!("{}: xi = {xi}", inst.name()),
            None if stats.zero_variance => eprintln!("{}: xi undefined (constant landscape)", inst.name()),
            None => eprintln!("{}: xi undefined (rho(1) = {})", inst.name(), stats.rho[0]),
        }
    } else {
        let ms = if args.m.is_empty() { vec![0.0] } else { args.m.clone() };
        let ks = if args.k.is_empty() { vec![0] } else { args.k.clone() };
        let grid = landscape::xi_grid(&inst, &ms, &ks, &cfg)?;
        grid.write_csv(&mut out)?;
        out.flush()?;
    }
    drop(out);
    if let Some(path) = &args.out {
        let join = |v: Vec<String>| v.join(",");
        write_manifest(
            path,
            "landscape",
            &[
                ("input", args.instance.input.display().to_string()),
                ("index", args.instance.index.to_string()),
                ("M", join(args.m.iter().map(f64::to_string).collect())),
                ("k", join(args.k.iter().map(usize::to_string).collect())),
                ("walk_length", cfg.walk_length.to_string()),
                ("max_lag", cfg.max_lag.to_string()),
                ("burn_in", cfg.burn_in.to_string()),
                ("seed", cfg.seed.to_string()),
            ],
        )?;
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> CliResult {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(dir) = args.out_dir {
        cfg.output = dir;
    }
    let outcome = harness::run_sweep(&cfg)?;
    for s in &outcome.summary {
        println!(
            "M={} k={}: mean improvement {} ({}%), wins {} ties {} losses {}",
            s.m,
            s.k,
            s.mean_improvement_abs,
            s.mean_improvement_pct.map_or("NaN".into(), |v| v.to_string()),
            s.wins,
            s.ties,
            s.losses
        );
    }
    if outcome.errors.is_empty() {
        Ok(())
    } else {
        for e in &outcome.errors {
            eprintln!("error: {}: {}", e.item, e.message);
        }
        Err(eigqubo::Error::InvalidArgument(format!(
            "{} item(s) failed; see {}",
            outcome.errors.len(),
            cfg.output.join("errors.txt").display()
        )))
    }
}

fn gen(args: GenArgs) -> CliResult {
    let family: GeneratorFamily = args.family.parse()?;
    let spec = GeneratorSpec {
        n: args.n,
        density: args.density,
        coeff_low: args.low,
        coeff_high: args.high,
        seed: args.seed,
        family,
    };
    let all = (0..args.count as u64)
        .map(|i| {
            instances::generate(&GeneratorSpec {
                seed: spec.seed.wrapping_add(i),
                ..spec.clone()
            })
        })
        .collect::<eigqubo::Result<Vec<_>>>()?;
    instances::write_orlib(sink(&args.out)?, &all)?;
    if let Some(path) = &args.out {
        write_manifest(
            path,
            "gen",
            &[
                ("family", family.to_string()),
                ("n", args.n.to_string()),
                ("density", args.density.to_string()),
                ("low", args.low.to_string()),
                ("high", args.high.to_string()),
                ("seed", args.seed.to_string()),
                ("count", args.count.to_string()),
            ],
        )?;
    }
    Ok(())
}

fn mdp2qubo(args: MdpArgs) -> CliResult {
    let file = fs::File::open(&args.input)?;
    let stem = args
        .input
        .file_stem()
        .map_or("mdp".into(), |s| s.to_string_lossy().into_owned());
    let mdp = instances::parse_mdplib(BufReader::new(file), &stem)?;
    let q = instances::mdp_to_qubo(&mdp, args.penalty)?;
    instances::write_orlib(sink(&args.out)?, &[q])?;
    if let Some(path) = &args.out {
        write_manifest(
            path,
            "mdp2qubo",
            &[
                ("input", args.input.display().to_string()),
                ("P", args.penalty.to_string()),
            ],
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Transform(a) => transform(a),
        Command::Eig(a) => eig(a),
        Command::Landscape(a) => run_landscape(a),
        Command::Sweep(a) => sweep(a),
        Command::Gen(a) => gen(a),
        Command::Mdp2qubo(a) => mdp2qubo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

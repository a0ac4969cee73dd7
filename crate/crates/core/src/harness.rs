//! Experiment protocol: base-versus-transformed comparisons over an
//! `(M, k)` grid, eigenvalue histograms, and run manifests.
//!
//! Sweep configs use a flat `key = value` text format; `#` starts a
//! comment. Recognized keys:
//!
//! ```text
//! instances     = a.txt b.txt          ORLIB files (repeatable)
//! mdplib        = som.txt               MDPLIB files (repeatable), needs mdp_penalty
//! mdp_penalty   = 10
//! generate      = dominant-eig n=200 density=0.1 seed=1 count=20 [low=-100 high=100]
//! M             = 100 200               reals, space or comma separated
//! k             = 1 2 5
//! evals         = 100000                evaluation budget per run
//! time_limit    = 100                   seconds per run (non-deterministic)
//! repetitions   = 5
//! seed_base     = 42
//! output        = results/
//! tabu_tenure   = 20
//! elite_size    = 8
//! restart_stall = 500
//! threads       = 4
//! ```
//!
//! Relative paths resolve against the config file's directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, parse_err, Error, Result};
use crate::instances::{
    generate, mdp_to_qubo, parse_mdplib, parse_orlib, GeneratorFamily, GeneratorSpec,
};
use crate::qubo::QuboInstance;
use crate::seed::cell_seed;
use crate::solver::{prlocal, SolverConfig};
use crate::spectral::{full_spectrum, top_k_eigenpairs, transform_with, TransformConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InstanceSource {
    Orlib(PathBuf),
    Mdplib { path: PathBuf, penalty: f64 },
    Generated { spec: GeneratorSpec, count: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub sources: Vec<InstanceSource>,
    pub ms: Vec<f64>,
    pub ks: Vec<usize>,
    pub max_evaluations: Option<u64>,
    pub time_limit: Option<f64>,
    pub repetitions: usize,
    pub seed_base: u64,
    pub output: PathBuf,
    pub tabu_tenure: usize,
    pub elite_size: usize,
    pub restart_stall: usize,
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let solver = SolverConfig::default();
        Self {
            sources: Vec::new(),
            ms: vec![100.0],
            ks: vec![1],
            max_evaluations: solver.max_evaluations,
            time_limit: None,
            repetitions: 5,
            seed_base: 0,
            output: PathBuf::from("results"),
            tabu_tenure: solver.tabu_tenure,
            elite_size: solver.elite_size,
            restart_stall: solver.restart_stall,
            threads: None,
        }
    }
}

fn list<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .or_else(|_| parse_err(line, format!("cannot parse {key} entry {t:?}")))
        })
        .collect()
}

fn scalar<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .or_else(|_| parse_err(line, format!("cannot parse {key} from {value:?}")))
}

fn parse_generate(line: usize, value: &str) -> Result<InstanceSource> {
    let mut toks = value.split_whitespace();
    let family: GeneratorFamily = match toks.next() {
        Some(f) => f.parse().or_else(|e: Error| parse_err(line, e.to_string()))?,
        None => return parse_err(line, "generate needs a family"),
    };
    let mut spec = GeneratorSpec::new(family, 0, 0.1, 0);
    let mut count = 1;
    for t in toks {
        let Some((k, v)) = t.split_once('=') else {
            return parse_err(line, format!("expected key=value, got {t:?}"));
        };
        match k {
            "n" => spec.n = scalar(line, k, v)?,
            "density" => spec.density = scalar(line, k, v)?,
            "seed" => spec.seed = scalar(line, k, v)?,
            "low" => spec.coeff_low = scalar(line, k, v)?,
            "high" => spec.coeff_high = scalar(line, k, v)?,
            "count" => count = scalar(line, k, v)?,
            other => return parse_err(line, format!("unknown generator field {other:?}")),
        }
    }
    spec.validate().or_else(|e| parse_err(line, e.to_string()))?;
    if count == 0 {
        return parse_err(line, "count must be positive");
    }
    Ok(InstanceSource::Generated { spec, count })
}

impl ExperimentConfig {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        let mut penalty: Option<f64> = None;
        let mut mdp_paths: Vec<(usize, PathBuf)> = Vec::new();
        let resolve = |p: &str| {
            let p = PathBuf::from(p);
            if p.is_absolute() {
                p
            } else {
                base_dir.join(p)
            }
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return parse_err(line, format!("expected key = value, got {content:?}"));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "instances" => cfg.sources.extend(
                    value
                        .split_whitespace()
                        .map(|p| InstanceSource::Orlib(resolve(p))),
                ),
                "mdplib" => mdp_paths.extend(value.split_whitespace().map(|p| (line, resolve(p)))),
                "mdp_penalty" => penalty = Some(scalar(line, key, value)?),
                "generate" => cfg.sources.push(parse_generate(line, value)?),
                "M" => cfg.ms = list(line, key, value)?,
                "k" => cfg.ks = list(line, key, value)?,
                "evals" => cfg.max_evaluations = Some(scalar(line, key, value)?),
                "time_limit" => cfg.time_limit = Some(scalar(line, key, value)?),
                "repetitions" => cfg.repetitions = scalar(line, key, value)?,
                "seed_base" => cfg.seed_base = scalar(line, key, value)?,
                "output" => cfg.output = resolve(value),
                "tabu_tenure" => cfg.tabu_tenure = scalar(line, key, value)?,
                "elite_size" => cfg.elite_size = scalar(line, key, value)?,
                "restart_stall" => cfg.restart_stall = scalar(line, key, value)?,
                "threads" => cfg.threads = Some(scalar(line, key, value)?),
                other => return parse_err(line, format!("unknown key {other:?}")),
            }
        }
        for (line, path) in mdp_paths {
            let Some(p) = penalty else {
                return parse_err(line, "mdplib sources need mdp_penalty");
            };
            cfg.sources.push(InstanceSource::Mdplib { path, penalty: p });
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, dir)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ms.is_empty() || self.ks.is_empty() {
            return invalid("M and k grids must be non-empty");
        }
        if self.repetitions == 0 {
            return invalid("repetitions must be at least 1");
        }
        for &m in &self.ms {
            TransformConfig::new(m, 0)?;
        }
        self.solver_config(0).validate()
    }

    pub fn solver_config(&self, seed: u64) -> SolverConfig {
        SolverConfig {
            seed,
            time_limit: self.time_limit,
            max_evaluations: self.max_evaluations,
            tabu_tenure: self.tabu_tenure,
            elite_size: self.elite_size,
            restart_stall: self.restart_stall,
            record_moves: false,
        }
    }

    /// Renders the config in the same format [`ExperimentConfig::parse`]
    /// accepts.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let mut penalty = None;
        for src in &self.sources {
            match src {
                InstanceSource::Orlib(p) => writeln!(s, "instances = {}", p.display()),
                InstanceSource::Mdplib { path, penalty: pen } => {
                    penalty = Some(*pen);
                    writeln!(s, "mdplib = {}", path.display())
                }
                InstanceSource::Generated { spec, count } => writeln!(
                    s,
                    "generate = {} n={} density={} seed={} low={} high={} count={}",
                    spec.family, spec.n, spec.density, spec.seed, spec.coeff_low, spec.coeff_high, count
                ),
            }
            .expect("string write");
        }
        if let Some(p) = penalty {
            writeln!(s, "mdp_penalty = {p}").unwrap();
        }
        let join = |v: Vec<String>| v.join(" ");
        writeln!(s, "M = {}", join(self.ms.iter().map(f64::to_string).collect())).unwrap();
        writeln!(s, "k = {}", join(self.ks.iter().map(usize::to_string).collect())).unwrap();
        if let Some(e) = self.max_evaluations {
            writeln!(s, "evals = {e}").unwrap();
        }
        if let Some(t) = self.time_limit {
            writeln!(s, "time_limit = {t}").unwrap();
        }
        writeln!(s, "repetitions = {}", self.repetitions).unwrap();
        writeln!(s, "seed_base = {}", self.seed_base).unwrap();
        writeln!(s, "output = {}", self.output.display()).unwrap();
        writeln!(s, "tabu_tenure = {}", self.tabu_tenure).unwrap();
        writeln!(s, "elite_size = {}", self.elite_size).unwrap();
        writeln!(s, "restart_stall = {}", self.restart_stall).unwrap();
        if let Some(t) = self.threads {
            writeln!(s, "threads = {t}").unwrap();
        }
        s
    }
}

/// Loads every instance in a source.
pub fn load_source(source: &InstanceSource) -> Result<Vec<QuboInstance>> {
    match source {
        InstanceSource::Orlib(path) => load_orlib(path),
        InstanceSource::Mdplib { path, penalty } => {
            let file = fs::File::open(path)?;
            let mdp = parse_mdplib(BufReader::new(file), &file_stem(path))?;
            Ok(vec![mdp_to_qubo(&mdp, *penalty)?])
        }
        InstanceSource::Generated { spec, count } => (0..*count as u64)
            .map(|i| {
                generate(&GeneratorSpec {
                    seed: spec.seed.wrapping_add(i),
                    ..spec.clone()
                })
            })
            .collect(),
    }
}

pub fn load_orlib(path: &Path) -> Result<Vec<QuboInstance>> {
    let file = fs::File::open(path)?;
    parse_orlib(BufReader::new(file), &file_stem(path))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "instance".to_string(), |s| s.to_string_lossy().into_owned())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub instance: String,
    pub m: f64,
    pub k: usize,
    /// Mean over repetitions, original objective.
    pub base_best: f64,
    pub transformed_best: f64,
    pub improvement_abs: f64,
    /// `None` when `base_best == 0`.
    pub improvement_pct: Option<f64>,
    pub base_evaluations: u64,
    pub transformed_evaluations: u64,
}

impl ComparisonRow {
    fn new(instance: String, m: f64, k: usize, base: f64, transformed: f64) -> Self {
        Self {
            instance,
            m,
            k,
            base_best: base,
            transformed_best: transformed,
            improvement_abs: transformed - base,
            improvement_pct: improvement_pct(base, transformed),
            base_evaluations: 0,
            transformed_evaluations: 0,
        }
    }
}

pub fn improvement_pct(base: f64, transformed: f64) -> Option<f64> {
    (base != 0.0).then(|| 100.0 * (transformed - base) / base.abs())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub m: f64,
    pub k: usize,
    pub instances: usize,
    pub mean_improvement_abs: f64,
    /// Mean over rows with a defined percentage.
    pub mean_improvement_pct: Option<f64>,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemError {
    pub item: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonOutcome {
    pub rows: Vec<ComparisonRow>,
    pub summary: Vec<CellSummary>,
    pub errors: Vec<ItemError>,
    /// `(instance, M, k, repetition, seed)` for every run pair.
    pub seeds: Vec<(String, f64, usize, usize, u64)>,
}

struct Prepared {
    instance: QuboInstance,
    spectrum: Option<crate::spectral::SpectralSummary>,
}

/// Solves the base and transformed problem for every instance and
/// `(M, k)` cell under identical budgets and seeds. Per-item failures are
/// collected instead of aborting the sweep.
pub fn run_comparison(config: &ExperimentConfig) -> Result<ComparisonOutcome> {
    config.validate()?;
    let mut errors = Vec::new();
    let mut instances = Vec::new();
    for src in &config.sources {
        match load_source(src) {
            Ok(v) => instances.extend(v),
            Err(e) => errors.push(ItemError {
                item: source_label(src),
                message: e.to_string(),
            }),
        }
    }

    let k_max = config.ks.iter().copied().max().unwrap_or(0);
    let needs_spectrum = k_max > 0 && config.ms.iter().any(|&m| m != 0.0);
    let prepared: Vec<std::result::Result<Prepared, ItemError>> = instances
        .into_par_iter()
        .map(|instance| {
            let fail = |msg: String| ItemError {
                item: instance.name().to_string(),
                message: msg,
            };
            if k_max > instance.n() {
                return Err(fail(format!("k = {k_max} exceeds n = {}", instance.n())));
            }
            let spectrum = if needs_spectrum {
                Some(top_k_eigenpairs(&instance, k_max).map_err(|e| fail(e.to_string()))?)
            } else {
                None
            };
            Ok(Prepared { instance, spectrum })
        })
        .collect();
    let mut ready = Vec::new();
    for p in prepared {
        match p {
            Ok(p) => ready.push(p),
            Err(e) => errors.push(e),
        }
    }

    let mut jobs = Vec::new();
    for (ii, p) in ready.iter().enumerate() {
        for &m in &config.ms {
            for &k in &config.ks {
                for rep in 0..config.repetitions {
                    let seed = cell_seed(config.seed_base, p.instance.name(), m, k, rep);
                    jobs.push((ii, m, k, rep, seed));
                }
            }
        }
    }

    let run_all = || -> Vec<std::result::Result<(f64, f64, u64, u64), ItemError>> {
        jobs.par_iter()
            .map(|&(ii, m, k, _, seed)| {
                let p = &ready[ii];
                let fail = |e: Error| ItemError {
                    item: format!("{} M={m} k={k}", p.instance.name()),
                    message: e.to_string(),
                };
                let cfg = TransformConfig::new(m, k).map_err(fail)?;
                let transformed = match &p.spectrum {
                    Some(s) => transform_with(&p.instance, s, cfg).map_err(fail)?,
                    None => p.instance.clone(),
                };
                let solver = config.solver_config(seed);
                let base = prlocal(&p.instance, None, &solver).map_err(fail)?;
                let trans = prlocal(&p.instance, Some(&transformed), &solver).map_err(fail)?;
                Ok((
                    base.best_value_base,
                    trans.best_value_base,
                    base.evaluations,
                    trans.evaluations,
                ))
            })
            .collect()
    };
    let results = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run_all),
        None => run_all(),
    };

    // (instance, M bits, k) -> (base sum, transformed sum, base evals, trans evals, count, M)
    type Tally = (f64, f64, u64, u64, usize, f64);
    let mut cells: BTreeMap<(String, u64, usize), Tally> = BTreeMap::new();
    let mut seeds = Vec::with_capacity(jobs.len());
    for (&(ii, m, k, rep, seed), res) in jobs.iter().zip(results) {
        let name = ready[ii].instance.name().to_string();
        seeds.push((name.clone(), m, k, rep, seed));
        match res {
            Ok((b, t, be, te)) => {
                let e = cells
                    .entry((name, m.to_bits(), k))
                    .or_insert((0.0, 0.0, 0, 0, 0, m));
                e.0 += b;
                e.1 += t;
                e.2 += be;
                e.3 += te;
                e.4 += 1;
            }
            Err(err) => errors.push(err),
        }
    }

    let mut rows: Vec<ComparisonRow> = cells
        .into_iter()
        .map(|((name, _, k), (b, t, be, te, count, m))| {
            let c = count as f64;
            let mut row = ComparisonRow::new(name, m, k, b / c, t / c);
            row.base_evaluations = be;
            row.transformed_evaluations = te;
            row
        })
        .collect();
    rows.sort_by(|a, b| {
        a.instance
            .cmp(&b.instance)
            .then(a.m.total_cmp(&b.m))
            .then(a.k.cmp(&b.k))
    });
    let summary = summarize(&rows);
    Ok(ComparisonOutcome {
        rows,
        summary,
        errors,
        seeds,
    })
}

fn source_label(src: &InstanceSource) -> String {
    match src {
        InstanceSource::Orlib(p) | InstanceSource::Mdplib { path: p, .. } => {
            p.display().to_string()
        }
        InstanceSource::Generated { spec, .. } => spec.name(),
    }
}

/// Per-`(M, k)` averages across instances.
pub fn summarize(rows: &[ComparisonRow]) -> Vec<CellSummary> {
    let mut groups: BTreeMap<(u64, usize), Vec<&ComparisonRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.m.to_bits(), r.k)).or_default().push(r);
    }
    let mut out: Vec<CellSummary> = groups
        .into_values()
        .map(|g| {
            let pcts: Vec<f64> = g.iter().filter_map(|r| r.improvement_pct).collect();
            CellSummary {
                m: g[0].m,
                k: g[0].k,
                instances: g.len(),
                mean_improvement_abs: g.iter().map(|r| r.improvement_abs).sum::<f64>()
                    / g.len() as f64,
                mean_improvement_pct: (!pcts.is_empty())
                    .then(|| pcts.iter().sum::<f64>() / pcts.len() as f64),
                wins: g.iter().filter(|r| r.transformed_best > r.base_best).count(),
                ties: g.iter().filter(|r| r.transformed_best == r.base_best).count(),
                losses: g.iter().filter(|r| r.transformed_best < r.base_best).count(),
            }
        })
        .collect();
    out.sort_by(|a, b| a.k.cmp(&b.k).then(a.m.total_cmp(&b.m)));
    out
}

fn opt_num(v: Option<f64>) -> String {
    v.map_or_else(|| "NaN".to_string(), |x| x.to_string())
}

pub const COMPARISON_HEADER: &str =
    "instance,M,k,base_best,transformed_best,improvement_abs,improvement_pct";

pub fn write_comparison_csv<W: Write>(mut out: W, rows: &[ComparisonRow]) -> Result<()> {
    writeln!(out, "{COMPARISON_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.instance,
            r.m,
            r.k,
            r.base_best,
            r.transformed_best,
            r.improvement_abs,
            opt_num(r.improvement_pct)
        )?;
    }
    Ok(())
}

pub fn write_summary_csv<W: Write>(mut out: W, summary: &[CellSummary]) -> Result<()> {
    writeln!(
        out,
        "M,k,instances,mean_improvement_abs,mean_improvement_pct,wins,ties,losses"
    )?;
    for s in summary {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            s.m,
            s.k,
            s.instances,
            s.mean_improvement_abs,
            opt_num(s.mean_improvement_pct),
            s.wins,
            s.ties,
            s.losses
        )?;
    }
    Ok(())
}

/// Plain-text manifest: a comment header plus `key = value` lines.
pub fn manifest_text(command: &str, body: &str) -> String {
    let mut s = format!("# eigqubo {VERSION} manifest\n# command: {command}\n");
    s.push_str(body);
    if !body.ends_with('\n') && !body.is_empty() {
        s.push('\n');
    }
    s
}

/// Runs a sweep and writes `comparison.csv`, `summary.csv`,
/// `manifest.txt` and, when anything failed, `errors.txt` into the
/// configured output directory. The manifest is itself a valid sweep
/// config.
pub fn run_sweep(config: &ExperimentConfig) -> Result<ComparisonOutcome> {
    let outcome = run_comparison(config)?;
    fs::create_dir_all(&config.output)?;
    write_comparison_csv(
        fs::File::create(config.output.join("comparison.csv"))?,
        &outcome.rows,
    )?;
    write_summary_csv(
        fs::File::create(config.output.join("summary.csv"))?,
        &outcome.summary,
    )?;
    let mut body = config.to_config_text();
    for (name, m, k, rep, seed) in &outcome.seeds {
        writeln!(body, "# seed {name} M={m} k={k} rep={rep} -> {seed}").unwrap();
    }
    fs::write(
        config.output.join("manifest.txt"),
        manifest_text("sweep", &body),
    )?;
    let err_path = config.output.join("errors.txt");
    if outcome.errors.is_empty() {
        if err_path.exists() {
            fs::remove_file(&err_path)?;
        }
    } else {
        let mut f = fs::File::create(err_path)?;
        for e in &outcome.errors {
            writeln!(f, "{}: {}", e.item, e.message)?;
        }
    }
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub name: String,
    /// Sorted descending by signed value.
    pub eigenvalues: Vec<f64>,
    pub histogram: Vec<HistogramBin>,
    pub max_abs: f64,
    pub second_abs: f64,
    /// `max_abs / second_abs`; infinite when the second is zero.
    pub dominance_ratio: f64,
    /// Eigenvalue of largest magnitude, with sign.
    pub dominant: f64,
}

pub const HISTOGRAM_BINS: usize = 50;

/// Equal-width histogram over `[min, max]`; the top edge is inclusive.
pub fn histogram(values: &[f64], bins: usize) -> Vec<HistogramBin> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / bins as f64;
    let mut out: Vec<HistogramBin> = (0..bins)
        .map(|b| HistogramBin {
            lower: lo + width * b as f64,
            upper: if b + 1 == bins { hi } else { lo + width * (b + 1) as f64 },
            count: 0,
        })
        .collect();
    for &v in values {
        let b = if width > 0.0 {
            (((v - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        out[b].count += 1;
    }
    out
}

pub fn run_spectrum_report(instance: &QuboInstance) -> Result<SpectrumReport> {
    let eigenvalues = full_spectrum(instance)?;
    let mut by_abs = eigenvalues.clone();
    by_abs.sort_by(|a, b| {
        b.abs()
            .total_cmp(&a.abs())
            .then(b.total_cmp(a))
    });
    let dominant = by_abs[0];
    let max_abs = dominant.abs();
    let second_abs = by_abs.get(1).map_or(0.0, |v| v.abs());
    let dominance_ratio = if second_abs > 0.0 {
        max_abs / second_abs
    } else {
        f64::INFINITY
    };
    Ok(SpectrumReport {
        name: instance.name().to_string(),
        histogram: histogram(&eigenvalues, HISTOGRAM_BINS),
        eigenvalues,
        max_abs,
        second_abs,
        dominance_ratio,
        dominant,
    })
}

impl SpectrumReport {
    pub fn write_histogram_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "bin,lower,upper,count")?;
        for (i, b) in self.histogram.iter().enumerate() {
            writeln!(out, "{i},{},{},{}", b.lower, b.upper, b.count)?;
        }
        Ok(())
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: n={} max|lambda|={} (lambda={}) second|lambda|={} ratio={}",
            self.name,
            self.eigenvalues.len(),
            self.max_abs,
            self.dominant,
            self.second_abs,
            self.dominance_ratio
        )
    }
}

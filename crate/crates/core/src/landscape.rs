//! Random-walk autocorrelation of a QUBO landscape.
//!
//! A walk flips one uniformly chosen bit per step and records the
//! objective. From the series `f_t` we estimate
//!
//! ```text
//! rho(d) = sum_t (f_t - mean)(f_{t+d} - mean) / sum_t (f_t - mean)^2
//! xi     = -1 / ln rho(1)          (defined for 0 < rho(1) < 1)
//! ```
//!
//! Larger `xi` means a smoother landscape with fewer local optima.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::qubo::{FlipGainState, QuboInstance};
use crate::spectral::{top_k_eigenpairs, transform_with, TransformConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub walk_length: usize,
    pub seed: u64,
    pub max_lag: usize,
    /// Steps discarded before recording starts.
    pub burn_in: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        Self {
            walk_length: 1_000_000,
            seed: 0,
            max_lag: 100,
            burn_in: 1000,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_lag == 0 {
            return invalid("max_lag must be positive");
        }
        if self.walk_length < 100 * self.max_lag {
            return invalid(format!(
                "walk_length {} is below 100 * max_lag = {}",
                self.walk_length,
                100 * self.max_lag
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandscapeStats {
    /// `None` when `rho(1)` is outside `(0, 1)` or the walk is constant.
    pub xi: Option<f64>,
    /// `rho[d - 1]` is the autocorrelation at lag `d`.
    pub rho: Vec<f64>,
    pub walk_mean: f64,
    pub walk_variance: f64,
    pub zero_variance: bool,
}

/// Objective values along a seeded single-flip random walk.
pub fn random_walk(instance: &QuboInstance, config: &WalkConfig) -> Vec<f64> {
    let n = instance.n();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let x: Vec<u8> = (0..n).map(|_| u8::from(rng.random_bool(0.5))).collect();
    let mut state = FlipGainState::new_unchecked(instance, x);
    for _ in 0..config.burn_in {
        state.flip(rng.random_range(0..n));
    }
    let mut series = Vec::with_capacity(config.walk_length);
    series.push(state.value());
    for _ in 1..config.walk_length {
        state.flip(rng.random_range(0..n));
        series.push(state.value());
    }
    series
}

/// Autocorrelation statistics of a series for lags `1..=max_lag`.
pub fn autocorrelation(series: &[f64], max_lag: usize) -> LandscapeStats {
    let len = series.len();
    let mean = series.iter().sum::<f64>() / len as f64;
    let centered: Vec<f64> = series.iter().map(|f| f - mean).collect();
    let denom: f64 = centered.iter().map(|a| a * a).sum();
    let constant = series.iter().all(|&f| f == series[0]);
    if constant || denom == 0.0 {
        return LandscapeStats {
            xi: None,
            rho: vec![f64::NAN; max_lag],
            walk_mean: mean,
            walk_variance: 0.0,
            zero_variance: true,
        };
    }
    let rho: Vec<f64> = (1..=max_lag)
        .map(|d| {
            if d >= len {
                return 0.0;
            }
            let num: f64 = centered[..len - d]
                .iter()
                .zip(&centered[d..])
                .map(|(a, b)| a * b)
                .sum();
            num / denom
        })
        .collect();
    let r1 = rho[0];
    let xi = (r1 > 0.0 && r1 < 1.0).then(|| -1.0 / r1.ln());
    LandscapeStats {
        xi,
        rho,
        walk_mean: mean,
        walk_variance: denom / len as f64,
        zero_variance: false,
    }
}

pub fn random_walk_autocorrelation(
    instance: &QuboInstance,
    config: &WalkConfig,
) -> Result<LandscapeStats> {
    config.validate()?;
    if instance.n() < 2 {
        return invalid("landscape analysis needs at least two variables");
    }
    let series = random_walk(instance, config);
    Ok(autocorrelation(&series, config.max_lag))
}

/// Landscape statistics for every `(k, M)` cell; `cells[row][col]`
/// pairs `ks[row]` with `ms[col]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XiGrid {
    pub ms: Vec<f64>,
    pub ks: Vec<usize>,
    pub cells: Vec<Vec<LandscapeStats>>,
}

impl XiGrid {
    pub fn xi(&self, k_row: usize, m_col: usize) -> Option<f64> {
        self.cells[k_row][m_col].xi
    }

    /// CSV with a header of M values and one row per k.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "k")?;
        for m in &self.ms {
            write!(out, ",M={m}")?;
        }
        writeln!(out)?;
        for (k, row) in self.ks.iter().zip(&self.cells) {
            write!(out, "{k}")?;
            for cell in row {
                match cell.xi {
                    Some(xi) => write!(out, ",{xi}")?,
                    None => write!(out, ",NaN")?,
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Transforms the instance for each `(M, k)` and measures its landscape.
///
/// Every cell reuses `config.seed`: the walk's bit sequence does not
/// depend on the matrix, so all cells see the same trajectory through
/// the hypercube and differ only through their coefficients.
pub fn xi_grid(
    instance: &QuboInstance,
    ms: &[f64],
    ks: &[usize],
    config: &WalkConfig,
) -> Result<XiGrid> {
    if ms.is_empty() || ks.is_empty() {
        return invalid("M and k grids must be non-empty");
    }
    config.validate()?;
    let configs: Vec<Vec<TransformConfig>> = ks
        .iter()
        .map(|&k| ms.iter().map(|&m| TransformConfig::new(m, k)).collect())
        .collect::<Result<_>>()?;
    let k_max = ks.iter().copied().max().unwrap_or(0);
    if k_max > instance.n() {
        return invalid(format!("k = {k_max} exceeds n = {}", instance.n()));
    }
    let summary = if k_max > 0 && ms.iter().any(|&m| m != 0.0) {
        Some(top_k_eigenpairs(instance, k_max)?)
    } else {
        None
    };

    let flat: Vec<TransformConfig> = configs.iter().flatten().copied().collect();
    let stats: Vec<LandscapeStats> = flat
        .par_iter()
        .map(|cfg| {
            let transformed = match &summary {
                Some(s) => transform_with(instance, s, *cfg)?,
                None => instance.clone(),
            };
            random_walk_autocorrelation(&transformed, config)
        })
        .collect::<Result<_>>()?;
    let cells = stats.chunks(ms.len()).map(<[_]>::to_vec).collect();
    Ok(XiGrid {
        ms: ms.to_vec(),
        ks: ks.to_vec(),
        cells,
    })
}

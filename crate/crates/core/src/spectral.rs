//! Symmetric eigendecomposition and the dominant-eigenpair augmentation
//!
//! ```text
//! Q' = Q + sum_{t=1..k} M * sign(lambda_t) * c_t c_t^T
//! ```
//!
//! where the eigenpairs are ordered by decreasing `|lambda|`. The
//! decomposition is a dense Householder tridiagonalization followed by
//! implicit-shift QL iterations (the EISPACK `tred2`/`tql2` pair).

use std::cmp::Ordering;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::qubo::QuboInstance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda: f64,
    /// Unit-norm eigenvector.
    pub c: Vec<f64>,
}

impl EigenPair {
    /// `||Q c - lambda c||_2`.
    pub fn residual(&self, instance: &QuboInstance) -> f64 {
        (0..instance.n())
            .map(|i| {
                let qc: f64 = instance.row(i).iter().zip(&self.c).map(|(a, b)| a * b).sum();
                let r = qc - self.lambda * self.c[i];
                r * r
            })
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    /// Sorted by `|lambda|` descending.
    pub pairs: Vec<EigenPair>,
    pub k_computed: usize,
    pub full_spectrum: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformConfig {
    /// Weight of each rank-1 term.
    pub m: f64,
    /// Number of leading eigenpairs used.
    pub k: usize,
}

impl TransformConfig {
    pub fn new(m: f64, k: usize) -> Result<Self> {
        let cfg = Self { m, k };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m.is_finite() && self.m >= 0.0) {
            return invalid(format!("M must be a finite non-negative number, got {}", self.m));
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 || self.m == 0.0
    }
}

/// `sign(0) = 0`, so zero eigenvalues contribute nothing.
pub fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Full decomposition: eigenvalues plus an `n * n` buffer whose row `t`
/// is the eigenvector for `values[t]`.
pub(crate) struct Decomposition {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<f64>>,
}

pub(crate) fn decompose(instance: &QuboInstance, want_vectors: bool) -> Result<Decomposition> {
    let n = instance.n();
    let mut v = instance.as_slice().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(n, &mut v, &mut d, &mut e, want_vectors);
    if !want_vectors {
        tql2(n, &mut d, &mut e, None)?;
        return Ok(Decomposition {
            values: d,
            vectors: None,
        });
    }
    // Rotations touch eigenvector columns; transposing once keeps them contiguous.
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            w[j * n + i] = v[i * n + j];
        }
    }
    tql2(n, &mut d, &mut e, Some(&mut w))?;
    Ok(Decomposition {
        values: d,
        vectors: Some(w),
    })
}

/// Householder reduction of the symmetric matrix in `v` to tridiagonal
/// form. On return `d` is the diagonal and `e[1..]` the subdiagonal; when
/// `accumulate` is set, `v` holds the orthogonal transformation.
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64], accumulate: bool) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in &mut e[..i] {
                *ej = 0.0;
            }

            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    if !accumulate {
        // The tridiagonal diagonal was parked on the diagonal of `v`.
        for (j, dj) in d.iter_mut().enumerate() {
            *dj = v[at(j, j)];
        }
        e[0] = 0.0;
        return;
    }

    for i in 0..n.saturating_sub(1) {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal `(d, e)`. `w`, when present, holds
/// the accumulated transformation transposed (row `t` = eigenvector `t`).
fn tql2(n: usize, d: &mut [f64], e: &mut [f64], mut w: Option<&mut [f64]>) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let max_sweeps = 100 * n;
    let mut sweeps = 0usize;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        // e[n - 1] == 0 guarantees m < n.
        if m > l {
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    let worst = e.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
                    return Err(Error::Convergence {
                        sweeps: max_sweeps,
                        worst_residual: worst,
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[(l + 2)..] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(w) = w.as_deref_mut() {
                        let (lo, hi) = w.split_at_mut((i + 1) * n);
                        let wi = &mut lo[i * n..];
                        let wi1 = &mut hi[..n];
                        for (a, b) in wi.iter_mut().zip(wi1.iter_mut()) {
                            let t = *b;
                            *b = s * *a + c * t;
                            *a = c * *a - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Ordering by `|lambda|` descending; ties prefer the more positive value,
/// then the lower original index.
fn dominance_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        let (va, vb) = (values[a], values[b]);
        vb.abs()
            .partial_cmp(&va.abs())
            .unwrap_or(Ordering::Equal)
            .then(vb.partial_cmp(&va).unwrap_or(Ordering::Equal))
            .then(a.cmp(&b))
    });
    idx
}

/// Flips the eigenvector so its largest-magnitude entry is positive
/// (first such entry on ties). Purely cosmetic: the outer product is
/// sign-invariant.
fn canonical_sign(c: &mut [f64]) {
    let mut best = 0usize;
    for (i, v) in c.iter().enumerate() {
        if v.abs() > c[best].abs() {
            best = i;
        }
    }
    if c[best] < 0.0 {
        c.iter_mut().for_each(|v| *v = -*v);
    }
}

fn normalize(c: &mut [f64]) {
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        c.iter_mut().for_each(|v| *v /= norm);
    }
}

/// Every eigenpair, sorted by `|lambda|` descending.
pub fn all_eigenpairs(instance: &QuboInstance) -> Result<SpectralSummary> {
    top_k_eigenpairs(instance, instance.n())
}

/// The `k` eigenpairs of largest `|lambda|`.
pub fn top_k_eigenpairs(instance: &QuboInstance, k: usize) -> Result<SpectralSummary> {
    let n = instance.n();
    if k == 0 || k > n {
        return invalid(format!("k must be in 1..={n}, got {k}"));
    }
    let dec = decompose(instance, true)?;
    let w = dec.vectors.expect("vectors requested");
    let order = dominance_order(&dec.values);
    let pairs = order
        .iter()
        .take(k)
        .map(|&t| {
            let mut c = w[t * n..(t + 1) * n].to_vec();
            normalize(&mut c);
            canonical_sign(&mut c);
            EigenPair {
                lambda: dec.values[t],
                c,
            }
        })
        .collect();
    let mut spectrum = dec.values;
    spectrum.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    Ok(SpectralSummary {
        pairs,
        k_computed: k,
        full_spectrum: Some(spectrum),
    })
}

/// All `n` eigenvalues, sorted descending by signed value.
pub fn full_spectrum(instance: &QuboInstance) -> Result<Vec<f64>> {
    let mut values = decompose(instance, false)?.values;
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    Ok(values)
}

/// `sum_t weight(lambda_t) * c_t c_t^T` over the given pairs, row-major.
pub fn reconstruct(pairs: &[EigenPair], n: usize, weight: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for p in pairs {
        add_rank_one(&mut out, n, weight(p.lambda), &p.c);
    }
    out
}

fn add_rank_one(q: &mut [f64], n: usize, w: f64, c: &[f64]) {
    if w == 0.0 {
        return;
    }
    for i in 0..n {
        let wi = w * c[i];
        for j in i..n {
            let v = q[i * n + j] + wi * c[j];
            q[i * n + j] = v;
            q[j * n + i] = v;
        }
    }
}

/// Builds `Q'` from precomputed eigenpairs. Uses the first `config.k`
/// entries of `summary.pairs`.
pub fn transform_with(
    instance: &QuboInstance,
    summary: &SpectralSummary,
    config: TransformConfig,
) -> Result<QuboInstance> {
    config.validate()?;
    if config.k > instance.n() {
        return invalid(format!("k = {} exceeds n = {}", config.k, instance.n()));
    }
    if config.is_identity() {
        return Ok(instance.clone());
    }
    if summary.pairs.len() < config.k {
        return invalid(format!(
            "summary holds {} eigenpairs, transform needs {}",
            summary.pairs.len(),
            config.k
        ));
    }
    let n = instance.n();
    let mut q = instance.as_slice().to_vec();
    for p in &summary.pairs[..config.k] {
        if p.c.len() != n {
            return invalid("eigenvector length does not match instance");
        }
        add_rank_one(&mut q, n, config.m * sign(p.lambda), &p.c);
    }
    QuboInstance::from_row_major(instance.name(), n, q)?.with_offset(instance.offset())
}

/// `Q' = Q + sum_{t<=k} M sign(lambda_t) c_t c_t^T`. The identity
/// configuration (`M = 0` or `k = 0`) returns an exact copy.
pub fn transform_q(instance: &QuboInstance, config: TransformConfig) -> Result<QuboInstance> {
    config.validate()?;
    if config.k > instance.n() {
        return invalid(format!("k = {} exceeds n = {}", config.k, instance.n()));
    }
    if config.is_identity() {
        return Ok(instance.clone());
    }
    let summary = top_k_eigenpairs(instance, config.k)?;
    transform_with(instance, &summary, config)
}

/// Writes `index,lambda` rows, sorted descending by signed value.
pub fn write_spectrum_csv<W: Write>(mut out: W, eigenvalues: &[f64]) -> Result<()> {
    let mut sorted = eigenvalues.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    writeln!(out, "index,lambda")?;
    for (i, l) in sorted.iter().enumerate() {
        writeln!(out, "{i},{l}")?;
    }
    Ok(())
}

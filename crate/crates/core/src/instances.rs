//! Benchmark instance formats, random generators, and the maximum
//! diversity problem reduction.
//!
//! ORLIB triplet format (also used for Palubeckis-style data):
//!
//! ```text
//! P                      number of instances
//! n nz [offset]          per instance; offset is optional, default 0
//! i j v                  nz lines, 1-based, sets q[i][j] = q[j][i] = v
//! ```
//!
//! MDPLIB format: a header `n m` followed by either `i j d` triplets
//! (0- or 1-based, detected from the smallest index) or the strict upper
//! triangle of the distance matrix as a row-major value stream.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, parse_err, Result};
use crate::qubo::QuboInstance;

/// Reads all lines, keeping 1-based line numbers and dropping blanks.
fn numbered_lines<R: BufRead>(reader: R) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push((i + 1, line));
        }
    }
    Ok(out)
}

fn token<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    match tok {
        None => parse_err(line, format!("missing {what}")),
        Some(t) => t
            .parse()
            .or_else(|_| parse_err(line, format!("cannot parse {what} from {t:?}"))),
    }
}

fn finite(line: usize, v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        parse_err(line, format!("{what} must be finite"))
    }
}

/// Parses an ORLIB-style stream. Instances are named `{base}_{index}`
/// with 1-based indices.
pub fn parse_orlib<R: BufRead>(reader: R, base: &str) -> Result<Vec<QuboInstance>> {
    let lines = numbered_lines(reader)?;
    let mut it = lines.iter();
    let Some((ln, first)) = it.next() else {
        return parse_err(1, "empty stream, expected an instance count");
    };
    let mut toks = first.split_whitespace();
    let count: usize = token(*ln, toks.next(), "instance count")?;
    if toks.next().is_some() {
        return parse_err(*ln, "unexpected tokens after instance count");
    }

    let mut out = Vec::with_capacity(count);
    let mut last_line = *ln;
    for idx in 0..count {
        let Some((ln, header)) = it.next() else {
            return parse_err(last_line + 1, format!("missing header for instance {}", idx + 1));
        };
        last_line = *ln;
        let mut toks = header.split_whitespace();
        let n: usize = token(*ln, toks.next(), "variable count")?;
        let nz: usize = token(*ln, toks.next(), "nonzero count")?;
        let offset = match toks.next() {
            Some(t) => finite(*ln, token(*ln, Some(t), "offset")?, "offset")?,
            None => 0.0,
        };
        if toks.next().is_some() {
            return parse_err(*ln, "unexpected tokens in instance header");
        }
        if n == 0 {
            return parse_err(*ln, "variable count must be positive");
        }

        let mut q = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for _ in 0..nz {
            let Some((ln, row)) = it.next() else {
                return parse_err(last_line + 1, "stream ended inside triplet list");
            };
            last_line = *ln;
            let mut toks = row.split_whitespace();
            let i: usize = token(*ln, toks.next(), "row index")?;
            let j: usize = token(*ln, toks.next(), "column index")?;
            let v: f64 = token(*ln, toks.next(), "coefficient")?;
            if toks.next().is_some() {
                return parse_err(*ln, "expected exactly three fields");
            }
            if i == 0 || j == 0 || i > n || j > n {
                return parse_err(*ln, format!("index ({i}, {j}) outside 1..={n}"));
            }
            let v = finite(*ln, v, "coefficient")?;
            let (a, b) = (i.min(j) - 1, i.max(j) - 1);
            if seen[a * n + b] {
                return parse_err(*ln, format!("duplicate entry for ({i}, {j})"));
            }
            seen[a * n + b] = true;
            q[a * n + b] = v;
            q[b * n + a] = v;
        }
        let inst = QuboInstance::from_row_major(format!("{base}_{}", idx + 1), n, q)
            .and_then(|q| q.with_offset(offset))
            .or_else(|e| parse_err(last_line, e.to_string()))?;
        out.push(inst);
    }
    if let Some((ln, _)) = it.next() {
        return parse_err(*ln, "trailing data after the last instance");
    }
    Ok(out)
}

/// Writes instances in the grammar accepted by [`parse_orlib`]. Only
/// nonzero upper-triangle cells are emitted; values use shortest
/// round-trip formatting.
pub fn write_orlib<W: Write>(mut out: W, instances: &[QuboInstance]) -> Result<()> {
    writeln!(out, "{}", instances.len())?;
    for inst in instances {
        let n = inst.n();
        let nz = inst.upper_nonzeros();
        if inst.offset() != 0.0 {
            writeln!(out, "{n} {nz} {}", inst.offset())?;
        } else {
            writeln!(out, "{n} {nz}")?;
        }
        for i in 0..n {
            for j in i..n {
                let v = inst.get(i, j);
                if v != 0.0 {
                    writeln!(out, "{} {} {}", i + 1, j + 1, v)?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorFamily {
    OrlibLike,
    PalubeckisLike,
    DominantEig,
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::OrlibLike => "orlib-like",
            Self::PalubeckisLike => "palubeckis-like",
            Self::DominantEig => "dominant-eig",
        })
    }
}

impl FromStr for GeneratorFamily {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orlib-like" | "orlib" => Ok(Self::OrlibLike),
            "palubeckis-like" | "palubeckis" => Ok(Self::PalubeckisLike),
            "dominant-eig" => Ok(Self::DominantEig),
            other => invalid(format!("unknown generator family {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub density: f64,
    pub coeff_low: i64,
    pub coeff_high: i64,
    pub seed: u64,
    pub family: GeneratorFamily,
}

impl GeneratorSpec {
    /// ORLIB defaults: integer coefficients in `[-100, 100]`.
    pub fn new(family: GeneratorFamily, n: usize, density: f64, seed: u64) -> Self {
        Self {
            n,
            density,
            coeff_low: -100,
            coeff_high: 100,
            seed,
            family,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return invalid("generator needs n >= 1");
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return invalid(format!("density must lie in (0, 1], got {}", self.density));
        }
        if self.coeff_low > self.coeff_high {
            return invalid("coeff_low must not exceed coeff_high");
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        format!(
            "{}_n{}_d{}_s{}",
            self.family, self.n, self.density, self.seed
        )
    }

    /// Weight of the planted rank-1 term of the `dominant-eig` family.
    ///
    /// Scales with `sqrt(n * density)`, the growth rate of the random
    /// bulk's spectral radius, so the planted eigenvalue stays separated
    /// at every size.
    pub fn planted_weight(&self) -> f64 {
        5.0 * self.coeff_high as f64 * (self.n as f64 * self.density).sqrt()
    }
}

/// Draws an instance from the given family. Identical specs yield
/// identical instances.
pub fn generate(spec: &GeneratorSpec) -> Result<QuboInstance> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            if rng.random_bool(spec.density) {
                q[i * n + j] = rng.random_range(spec.coeff_low..=spec.coeff_high) as f64;
            }
        }
    }
    if spec.family == GeneratorFamily::DominantEig {
        let mut u: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        u.iter_mut().for_each(|v| *v /= norm);
        let beta = spec.planted_weight();
        for i in 0..n {
            for j in i..n {
                q[i * n + j] += beta * u[i] * u[j];
            }
        }
    }
    QuboInstance::from_upper(spec.name(), n, q)
}

/// Maximum diversity instance: choose `m` of `n` elements maximizing
/// `sum_{i != j} d[i][j] x_i x_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MdpInstance {
    pub n: usize,
    pub m: usize,
    /// Row-major `n * n`, symmetric, zero diagonal, non-negative.
    pub d: Vec<f64>,
    pub name: String,
}

impl MdpInstance {
    pub fn new(name: impl Into<String>, n: usize, m: usize, d: Vec<f64>) -> Result<Self> {
        if n == 0 || m == 0 || m > n {
            return invalid(format!("need 1 <= m <= n, got n = {n}, m = {m}"));
        }
        if d.len() != n * n {
            return invalid("distance buffer must have n * n entries");
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return invalid(format!("distance diagonal at {i} is nonzero"));
            }
            for j in 0..n {
                let v = d[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return invalid(format!("distance ({i}, {j}) must be finite and non-negative"));
                }
                if v != d[j * n + i] {
                    return invalid(format!("distance matrix is not symmetric at ({i}, {j})"));
                }
            }
        }
        Ok(Self {
            n,
            m,
            d,
            name: name.into(),
        })
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// `sum_{i != j} d_ij x_i x_j` (each unordered pair counted twice).
    pub fn diversity(&self, x: &[u8]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if j != i && x[j] == 1 {
                    s += self.dist(i, j);
                }
            }
        }
        s
    }

    /// `sum_{i < j} d_ij`.
    pub fn pair_sum(&self) -> f64 {
        (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.dist(i, j))
            .sum()
    }

    /// Random instance with distances uniform in `[0, max_dist)`.
    pub fn random(name: impl Into<String>, n: usize, m: usize, max_dist: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = rng.random_range(0.0..max_dist);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Self::new(name, n, m, d)
    }
}

/// Penalized QUBO for the MDP:
///
/// ```text
/// x^T Q x + offset = sum_{i != j} d_ij x_i x_j - P (sum_i x_i - m)^2
/// ```
///
/// with `q[i][j] = d_ij - P` off the diagonal, `q[i][i] = P (2m - 1)`,
/// and `offset = -P m^2`.
pub fn mdp_to_qubo(mdp: &MdpInstance, penalty: f64) -> Result<QuboInstance> {
    if !(penalty.is_finite() && penalty >= 0.0) {
        return invalid(format!("penalty must be finite and non-negative, got {penalty}"));
    }
    let n = mdp.n;
    let m = mdp.m as f64;
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            q[i * n + j] = if i == j {
                penalty * (2.0 * m - 1.0)
            } else {
                mdp.dist(i, j) - penalty
            };
        }
    }
    QuboInstance::from_row_major(mdp.name.clone(), n, q)?.with_offset(-penalty * m * m)
}

/// Parses an MDPLIB stream.
pub fn parse_mdplib<R: BufRead>(reader: R, name: &str) -> Result<MdpInstance> {
    let lines = numbered_lines(reader)?;
    let Some((hl, header)) = lines.first() else {
        return parse_err(1, "empty stream, expected header \"n m\"");
    };
    let mut toks = header.split_whitespace();
    let n: usize = token(*hl, toks.next(), "element count")?;
    let m: usize = token(*hl, toks.next(), "subset size")?;
    if toks.next().is_some() {
        return parse_err(*hl, "unexpected tokens in header");
    }
    if n == 0 || m == 0 || m > n {
        return parse_err(*hl, format!("need 1 <= m <= n, got n = {n}, m = {m}"));
    }
    let body = &lines[1..];
    let pairs = n * (n - 1) / 2;

    let total_tokens: usize = body.iter().map(|(_, l)| l.split_whitespace().count()).sum();

    let mut d = vec![0.0; n * n];
    if pairs == 0 {
        if let Some((ln, _)) = body.first() {
            return parse_err(*ln, "a single-element instance has no distances");
        }
    } else if total_tokens != pairs {
        let mut trip = Vec::with_capacity(body.len());
        for (ln, l) in body {
            let mut t = l.split_whitespace();
            let i: usize = token(*ln, t.next(), "index i")?;
            let j: usize = token(*ln, t.next(), "index j")?;
            let v: f64 = token(*ln, t.next(), "distance")?;
            if t.next().is_some() {
                return parse_err(*ln, "expected exactly three fields");
            }
            trip.push((*ln, i, j, v));
        }
        let min_idx = trip.iter().map(|t| t.1.min(t.2)).min().unwrap_or(0);
        let shift = usize::from(min_idx >= 1);
        let mut seen = vec![false; n * n];
        for (ln, i, j, v) in trip {
            let (Some(i), Some(j)) = (i.checked_sub(shift), j.checked_sub(shift)) else {
                return parse_err(ln, "index below the detected base");
            };
            if i >= n || j >= n {
                return parse_err(ln, format!("index ({i}, {j}) outside 0..{n}"));
            }
            let v = finite(ln, v, "distance")?;
            if v < 0.0 {
                return parse_err(ln, "distances must be non-negative");
            }
            if i == j {
                if v != 0.0 {
                    return parse_err(ln, "self-distance must be zero");
                }
                continue;
            }
            let (a, b) = (i.min(j), i.max(j));
            if seen[a * n + b] {
                if d[a * n + b] != v {
                    return parse_err(ln, format!("conflicting distances for ({a}, {b})"));
                }
                continue;
            }
            seen[a * n + b] = true;
            d[a * n + b] = v;
            d[b * n + a] = v;
        }
        let missing = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .find(|&(a, b)| !seen[a * n + b]);
        if let Some((a, b)) = missing {
            let last = body.last().map_or(*hl, |(ln, _)| *ln);
            return parse_err(last, format!("missing distance for pair ({a}, {b})"));
        }
    } else {
        let mut values = Vec::with_capacity(pairs);
        for (ln, l) in body {
            for t in l.split_whitespace() {
                let v: f64 = token(*ln, Some(t), "distance")?;
                let v = finite(*ln, v, "distance")?;
                if v < 0.0 {
                    return parse_err(*ln, "distances must be non-negative");
                }
                values.push((*ln, v));
            }
        }
        if values.len() != pairs {
            let last = body.last().map_or(*hl, |(ln, _)| *ln);
            return parse_err(
                last,
                format!("expected {pairs} upper-triangle distances, found {}", values.len()),
            );
        }
        let mut it = values.into_iter();
        for a in 0..n {
            for b in (a + 1)..n {
                let (_, v) = it.next().expect("count checked");
                d[a * n + b] = v;
                d[b * n + a] = v;
            }
        }
    }
    MdpInstance::new(name, n, m, d).or_else(|e| parse_err(*hl, e.to_string()))
}

/// Writes 0-based `i j d` triplets for every `i < j`.
pub fn write_mdplib<W: Write>(mut out: W, mdp: &MdpInstance) -> Result<()> {
    writeln!(out, "{} {}", mdp.n, mdp.m)?;
    for i in 0..mdp.n {
        for j in (i + 1)..mdp.n {
            writeln!(out, "{i} {j} {}", mdp.dist(i, j))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn parse(text: &str) -> Result<Vec<QuboInstance>> {
        parse_orlib(text.as_bytes(), "t")
    }

    #[test]
    fn orlib_direct_mapping() {
        let v = parse("1\n3 3\n1 1 -7\n1 2 2\n2 3 2\n").unwrap();
        assert_eq!(v.len(), 1);
        let q = &v[0];
        assert_eq!(q.n(), 3);
        assert_eq!(q.get(0, 0), -7.0);
        assert_eq!((q.get(0, 1), q.get(1, 0)), (2.0, 2.0));
        assert_eq!((q.get(1, 2), q.get(2, 1)), (2.0, 2.0));
        assert_eq!(q.get(0, 2), 0.0);
        assert_eq!(q.get(2, 2), 0.0);
        assert_eq!(q.name(), "t_1");
    }

    #[test]
    fn orlib_empty_list() {
        assert!(parse("0\n").unwrap().is_empty());
    }

    #[test]
    fn orlib_errors_carry_line_numbers() {
        let line_of = |text: &str| match parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("1\n3 2\n1 1 4\n1 4 2\n"), 4);
        assert_eq!(line_of("1\n3 2\n1 2 4\n2 1 2\n"), 4);
        assert_eq!(line_of("1\n3 x\n"), 2);
        assert_eq!(line_of("1\n3 2\n1 2 4\n"), 4);
        assert_eq!(line_of("1\n2 1\n1 2 3 4\n"), 3);
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("1\n1 0\n1 0\n"), 3);
    }

    #[test]
    fn orlib_offset_round_trip() {
        let q = QuboInstance::from_rows("a", &[vec![1.5, -0.25], vec![-0.25, 0.0]])
            .unwrap()
            .with_offset(-12.0)
            .unwrap();
        let mut buf = Vec::new();
        write_orlib(&mut buf, std::slice::from_ref(&q)).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "1\n2 2 -12\n1 1 1.5\n1 2 -0.25\n");
        let back = parse_orlib(buf.as_slice(), "a").unwrap();
        assert_eq!(back[0].as_slice(), q.as_slice());
        assert_eq!(back[0].offset(), -12.0);
    }

    #[test]
    fn generator_is_reproducible_and_symmetric() {
        for family in [
            GeneratorFamily::OrlibLike,
            GeneratorFamily::PalubeckisLike,
            GeneratorFamily::DominantEig,
        ] {
            let spec = GeneratorSpec::new(family, 30, 0.3, 42);
            let a = generate(&spec).unwrap();
            let b = generate(&spec).unwrap();
            assert_eq!(a, b);
            for i in 0..30 {
                for j in 0..30 {
                    assert_eq!(a.get(i, j).to_bits(), a.get(j, i).to_bits());
                }
            }
        }
    }

    #[test]
    fn generator_validation() {
        let mut spec = GeneratorSpec::new(GeneratorFamily::OrlibLike, 10, 0.0, 1);
        assert!(generate(&spec).is_err());
        spec.density = 1.5;
        assert!(generate(&spec).is_err());
        spec.density = 0.5;
        spec.coeff_low = 5;
        spec.coeff_high = 4;
        assert!(generate(&spec).is_err());
        assert!("nope".parse::<GeneratorFamily>().is_err());
        assert_eq!(
            "dominant-eig".parse::<GeneratorFamily>().unwrap(),
            GeneratorFamily::DominantEig
        );
    }

    #[test]
    fn full_density_zeros_only_when_drawn() {
        // With range [1, 3] a full-density draw can never produce zero.
        let spec = GeneratorSpec {
            coeff_low: 1,
            coeff_high: 3,
            ..GeneratorSpec::new(GeneratorFamily::PalubeckisLike, 20, 1.0, 3)
        };
        let q = generate(&spec).unwrap();
        assert_eq!(q.upper_nonzeros(), 20 * 21 / 2);
    }

    #[test]
    fn mdp_small_example() {
        let mdp = MdpInstance::new("z", 3, 1, vec![0.0; 9]).unwrap();
        let q = mdp_to_qubo(&mdp, 10.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.get(i, j), if i == j { 10.0 } else { -10.0 });
            }
        }
        assert_eq!(q.offset(), -10.0);
        for i in 0..3 {
            let mut x = vec![0u8; 3];
            x[i] = 1;
            assert_eq!(q.evaluate(&x).unwrap(), 0.0);
        }
        assert_eq!(crate::solver::brute_force(&q).unwrap().value, 0.0);
    }

    #[test]
    fn mdp_identity_against_direct_expression() {
        let mdp = MdpInstance::random("r", 10, 4, 50.0, 9).unwrap();
        let q = mdp_to_qubo(&mdp, 7.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let x: Vec<u8> = (0..10).map(|_| rng.random_range(0..=1u8)).collect();
            let card: f64 = x.iter().map(|&b| f64::from(b)).sum();
            let direct = mdp.diversity(&x) - 7.0 * (card - 4.0).powi(2);
            let got = q.evaluate(&x).unwrap();
            assert!((got - direct).abs() <= 1e-9 * direct.abs().max(1.0));
        }
        assert!(mdp_to_qubo(&mdp, -1.0).is_err());
    }

    #[test]
    fn mdp_validation() {
        assert!(MdpInstance::new("a", 2, 3, vec![0.0; 4]).is_err());
        assert!(MdpInstance::new("a", 2, 1, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(MdpInstance::new("a", 2, 1, vec![1.0, 0.0, 0.0, 0.0]).is_err());
        assert!(MdpInstance::new("a", 2, 1, vec![0.0, -1.0, -1.0, 0.0]).is_err());
    }

    #[test]
    fn mdplib_triplets() {
        let mdp = parse_mdplib("3 1\n0 1 2.5\n0 2 1.0\n1 2 4.0\n".as_bytes(), "x").unwrap();
        assert_eq!(mdp.m, 1);
        assert_eq!(mdp.d, vec![0.0, 2.5, 1.0, 2.5, 0.0, 4.0, 1.0, 4.0, 0.0]);

        let one_based = parse_mdplib("3 1\n1 2 2.5\n1 3 1.0\n2 3 4.0\n".as_bytes(), "x").unwrap();
        assert_eq!(one_based.d, mdp.d);
    }

    #[test]
    fn mdplib_dense_rows() {
        let mdp = parse_mdplib("4 2\n1 2 3\n4 5\n6\n".as_bytes(), "x").unwrap();
        assert_eq!(mdp.dist(0, 3), 3.0);
        assert_eq!(mdp.dist(1, 2), 4.0);
        assert_eq!(mdp.dist(3, 2), 6.0);
    }

    #[test]
    fn mdplib_single_element() {
        let mdp = parse_mdplib("1 1\n".as_bytes(), "x").unwrap();
        assert_eq!((mdp.n, mdp.m), (1, 1));
        assert_eq!(mdp.d, vec![0.0]);
    }

    #[test]
    fn mdplib_errors() {
        let line_of = |text: &str| match parse_mdplib(text.as_bytes(), "x") {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        // missing pair (1, 2)
        assert_eq!(line_of("3 1\n0 1 2.5\n0 2 1.0\n"), 3);
        // conflicting symmetric entries
        assert_eq!(line_of("3 1\n0 1 2.5\n1 0 3.0\n0 2 1\n1 2 1\n"), 3);
        assert_eq!(line_of("3 4\n"), 1);
        assert_eq!(line_of("3 1\n1 2\n"), 2);
    }
}

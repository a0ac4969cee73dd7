//! QUBO data model: a dense symmetric coefficient matrix, objective
//! evaluation, and incrementally maintained single-flip gains.
//!
//! The objective is always maximized:
//!
//! ```text
//! f(x) = sum_i sum_j q[i][j] * x[i] * x[j] + offset,   x in {0,1}^n
//! ```
//!
//! Diagonal entries act as linear terms (`x[i]^2 = x[i]`), and each
//! off-diagonal pair contributes twice through symmetry.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Dense symmetric QUBO instance, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboInstance {
    n: usize,
    q: Vec<f64>,
    offset: f64,
    name: String,
}

impl QuboInstance {
    /// Builds an instance from a row-major `n * n` buffer.
    ///
    /// The buffer must already be exactly symmetric and finite.
    pub fn from_row_major(name: impl Into<String>, n: usize, q: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return invalid("instance must have at least one variable");
        }
        if q.len() != n * n {
            return invalid(format!(
                "matrix buffer has {} entries, expected {}",
                q.len(),
                n * n
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let v = q[i * n + j];
                if !v.is_finite() {
                    return invalid(format!("non-finite coefficient at ({i}, {j})"));
                }
                if j > i && v.to_bits() != q[j * n + i].to_bits() {
                    return invalid(format!("matrix is not symmetric at ({i}, {j})"));
                }
            }
        }
        Ok(Self {
            n,
            q,
            offset: 0.0,
            name: name.into(),
        })
    }

    /// Builds an instance from nested rows.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return invalid(format!("row {i} has {} entries, expected {n}", r.len()));
        }
        Self::from_row_major(name, n, rows.concat())
    }

    /// Builds an instance from an arbitrary square buffer by keeping the
    /// upper triangle and mirroring it.
    pub fn from_upper(name: impl Into<String>, n: usize, mut q: Vec<f64>) -> Result<Self> {
        if n > 0 && q.len() == n * n {
            for i in 0..n {
                for j in 0..i {
                    q[i * n + j] = q[j * n + i];
                }
            }
        }
        Self::from_row_major(name, n, q)
    }

    pub fn zeros(name: impl Into<String>, n: usize) -> Result<Self> {
        Self::from_row_major(name, n, vec![0.0; n * n])
    }

    pub fn with_offset(mut self, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return invalid("offset must be finite");
        }
        self.offset = offset;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.q[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.q
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Returns a copy with every coefficient (and the offset) multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let q = self.q.iter().map(|v| v * factor).collect();
        Self::from_row_major(self.name.clone(), self.n, q)?.with_offset(self.offset * factor)
    }

    /// Number of nonzero cells in the upper triangle, diagonal included.
    pub fn upper_nonzeros(&self) -> usize {
        (0..self.n)
            .map(|i| self.row(i)[i..].iter().filter(|v| **v != 0.0).count())
            .sum()
    }

    pub(crate) fn check_assignment(&self, x: &[u8]) -> Result<()> {
        if x.len() != self.n {
            return invalid(format!(
                "assignment has length {}, instance has {} variables",
                x.len(),
                self.n
            ));
        }
        if let Some(i) = x.iter().position(|&b| b > 1) {
            return invalid(format!("assignment entry {i} is {}, expected 0 or 1", x[i]));
        }
        Ok(())
    }

    /// Objective value `x^T Q x + offset`.
    pub fn evaluate(&self, x: &[u8]) -> Result<f64> {
        self.check_assignment(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[u8]) -> f64 {
        let mut total = 0.0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = self.row(i);
            total += x
                .iter()
                .zip(row)
                .filter(|(&xj, _)| xj == 1)
                .map(|(_, &v)| v)
                .sum::<f64>();
        }
        total + self.offset
    }
}

/// A binary assignment with its objective value under some instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: Vec<u8>,
    pub value: f64,
}

impl Solution {
    pub fn evaluate(instance: &QuboInstance, x: Vec<u8>) -> Result<Self> {
        let value = instance.evaluate(&x)?;
        Ok(Self { x, value })
    }

    pub fn hamming(&self, other: &Solution) -> usize {
        self.x.iter().zip(&other.x).filter(|(a, b)| a != b).count()
    }
}

/// Current assignment plus the objective change of flipping each bit.
///
/// `gains[j] = (1 - 2 x[j]) * (q[j][j] + 2 * sum_{i != j} q[i][j] x[i])`.
#[derive(Debug, Clone)]
pub struct FlipGainState<'a> {
    instance: &'a QuboInstance,
    x: Vec<u8>,
    gains: Vec<f64>,
    value: f64,
}

impl<'a> FlipGainState<'a> {
    pub fn new(instance: &'a QuboInstance, x: Vec<u8>) -> Result<Self> {
        instance.check_assignment(&x)?;
        Ok(Self::new_unchecked(instance, x))
    }

    pub(crate) fn new_unchecked(instance: &'a QuboInstance, x: Vec<u8>) -> Self {
        let n = instance.n();
        let mut gains = vec![0.0; n];
        for (j, g) in gains.iter_mut().enumerate() {
            let row = instance.row(j);
            let mut field = 0.0;
            for (i, (&xi, &q)) in x.iter().zip(row).enumerate() {
                if xi == 1 && i != j {
                    field += q;
                }
            }
            let sign = 1.0 - 2.0 * f64::from(x[j]);
            *g = sign * (row[j] + 2.0 * field);
        }
        let value = instance.evaluate_unchecked(&x);
        Self {
            instance,
            x,
            gains,
            value,
        }
    }

    pub fn instance(&self) -> &'a QuboInstance {
        self.instance
    }

    pub fn x(&self) -> &[u8] {
        &self.x
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    #[inline]
    pub fn gain(&self, j: usize) -> f64 {
        self.gains[j]
    }

    /// Cached objective, offset included.
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn into_solution(self) -> Solution {
        Solution {
            x: self.x,
            value: self.value,
        }
    }

    pub fn to_solution(&self) -> Solution {
        Solution {
            x: self.x.clone(),
            value: self.value,
        }
    }

    /// Toggles bit `j` and refreshes all gains. Returns the objective delta.
    pub fn apply_flip(&mut self, j: usize) -> Result<f64> {
        if j >= self.x.len() {
            return invalid(format!(
                "flip index {j} out of range for {} variables",
                self.x.len()
            ));
        }
        Ok(self.flip(j))
    }

    #[inline]
    pub(crate) fn flip(&mut self, j: usize) -> f64 {
        let delta = self.gains[j];
        // +1 when the bit turns on, -1 when it turns off.
        let step = if self.x[j] == 0 { 2.0 } else { -2.0 };
        self.x[j] ^= 1;
        let row = self.instance.row(j);
        for (i, ((g, &xi), &q)) in self.gains.iter_mut().zip(&self.x).zip(row).enumerate() {
            if i == j {
                continue;
            }
            let sign = if xi == 0 { 1.0 } else { -1.0 };
            *g += sign * step * q;
        }
        self.gains[j] = -delta;
        self.value += delta;
        delta
    }

    /// Recomputes the cached value and gains from scratch.
    pub fn resync(&mut self) {
        let x = std::mem::take(&mut self.x);
        *self = Self::new_unchecked(self.instance, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn worked() -> QuboInstance {
        QuboInstance::from_rows(
            "worked",
            &[
                vec![-7.0, 2.0, 2.0],
                vec![2.0, 4.0, 2.0],
                vec![2.0, 2.0, 5.0],
            ],
        )
        .unwrap()
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> QuboInstance {
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                q[i * n + j] = rng.random_range(-100..=100) as f64;
            }
        }
        QuboInstance::from_upper("r", n, q).unwrap()
    }

    fn random_x(rng: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
        (0..n).map(|_| rng.random_range(0..=1u8)).collect()
    }

    // Naive double sum, kept separate from the implementation path.
    fn naive(q: &QuboInstance, x: &[u8]) -> f64 {
        let n = q.n();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += q.get(i, j) * f64::from(x[i]) * f64::from(x[j]);
            }
        }
        s + q.offset()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn evaluate_worked_example() {
        let q = worked();
        assert_eq!(q.evaluate(&[0, 0, 0]).unwrap(), 0.0);
        assert_eq!(q.evaluate(&[1, 0, 0]).unwrap(), -7.0);
        let all: f64 = q.as_slice().iter().sum();
        assert_eq!(all, 14.0);
        assert_eq!(q.evaluate(&[1, 1, 1]).unwrap(), all);
    }

    #[test]
    fn evaluate_rejects_bad_input() {
        let q = worked();
        assert!(q.evaluate(&[0, 1]).is_err());
        assert!(q.evaluate(&[0, 2, 1]).is_err());
    }

    #[test]
    fn constructor_rejects_asymmetric_and_non_finite() {
        assert!(QuboInstance::from_rows("a", &[vec![1.0, 2.0], vec![3.0, 1.0]]).is_err());
        assert!(QuboInstance::from_rows("a", &[vec![f64::NAN]]).is_err());
        assert!(QuboInstance::from_rows("a", &[]).is_err());
        assert!(QuboInstance::from_rows("a", &[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn gains_worked_example() {
        let q = worked();
        let s = FlipGainState::new(&q, vec![0, 0, 0]).unwrap();
        assert_eq!(s.gains(), &[-7.0, 4.0, 5.0]);

        let s = FlipGainState::new(&q, vec![1, 1, 1]).unwrap();
        let base = naive(&q, &[1, 1, 1]);
        let brute: Vec<f64> = (0..3)
            .map(|j| {
                let mut y = vec![1u8, 1, 1];
                y[j] ^= 1;
                naive(&q, &y) - base
            })
            .collect();
        assert_eq!(brute, vec![-1.0, -12.0, -13.0]);
        assert_eq!(s.gains(), brute.as_slice());
    }

    #[test]
    fn flip_worked_example() {
        let q = worked();
        let mut s = FlipGainState::new(&q, vec![0, 0, 0]).unwrap();
        let d = s.apply_flip(0).unwrap();
        assert_eq!(d, -7.0);
        assert_eq!(s.x(), &[1, 0, 0]);
        assert_eq!(s.gain(0), 7.0);

        let mut s = FlipGainState::new(&q, vec![0, 0, 0]).unwrap();
        s.apply_flip(1).unwrap();
        s.apply_flip(2).unwrap();
        assert_eq!(s.value(), 13.0);
        assert_eq!(naive(&q, &[0, 1, 1]), 13.0);
        assert!(s.apply_flip(3).is_err());
    }

    #[test]
    fn flip_then_reinit_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.random_range(1..30);
            let q = random_instance(&mut rng, n);
            let x = random_x(&mut rng, n);
            let j = rng.random_range(0..n);
            let mut s = FlipGainState::new(&q, x).unwrap();
            s.apply_flip(j).unwrap();
            let fresh = FlipGainState::new(&q, s.x().to_vec()).unwrap();
            assert_eq!(s.gains(), fresh.gains());
            assert_eq!(s.value(), fresh.value());
        }
    }

    #[test]
    fn long_flip_chain_tracks_objective() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 15;
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                q[i * n + j] = rng.random_range(-1.0..1.0) * 37.5;
            }
        }
        let q = QuboInstance::from_upper("r", n, q).unwrap().with_offset(2.5).unwrap();
        let mut s = FlipGainState::new(&q, random_x(&mut rng, n)).unwrap();
        for _ in 0..1000 {
            s.apply_flip(rng.random_range(0..n)).unwrap();
            assert!(rel_close(s.value(), naive(&q, s.x()), 1e-9));
        }
    }

    #[test]
    fn offset_is_additive() {
        let q = worked();
        let shifted = q.clone().with_offset(-3.25).unwrap();
        for bits in 0..8u8 {
            let x: Vec<u8> = (0..3).map(|i| (bits >> i) & 1).collect();
            assert_eq!(shifted.evaluate(&x).unwrap(), q.evaluate(&x).unwrap() + -3.25);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn instance_and_x() -> impl Strategy<Value = (QuboInstance, Vec<u8>, usize)> {
            (1usize..=50).prop_flat_map(|n| {
                (
                    proptest::collection::vec(-100i32..=100, n * n),
                    proptest::collection::vec(0u8..=1, n),
                    0..n,
                )
                    .prop_map(move |(vals, x, j)| {
                        let q = vals.into_iter().map(f64::from).collect();
                        (QuboInstance::from_upper("p", n, q).unwrap(), x, j)
                    })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn gain_matches_recomputation((q, x, j) in instance_and_x()) {
                for i in 0..q.n() {
                    for k in 0..q.n() {
                        prop_assert_eq!(q.get(i, k).to_bits(), q.get(k, i).to_bits());
                    }
                }
                let s = FlipGainState::new(&q, x.clone()).unwrap();
                let mut y = x.clone();
                y[j] ^= 1;
                let diff = naive(&q, &y) - naive(&q, &x);
                prop_assert!(rel_close(s.gain(j), diff, 1e-9));
            }

            #[test]
            fn flip_is_an_involution((q, x, j) in instance_and_x()) {
                let mut s = FlipGainState::new(&q, x.clone()).unwrap();
                let before = s.gains().to_vec();
                s.apply_flip(j).unwrap();
                s.apply_flip(j).unwrap();
                prop_assert_eq!(s.x(), x.as_slice());
                for (a, b) in s.gains().iter().zip(&before) {
                    prop_assert!(rel_close(*a, *b, 1e-9));
                }
            }
        }
    }
}

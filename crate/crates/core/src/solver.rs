//! Tabu search with random restarts and greedy path relinking over an
//! elite pool, plus an exhaustive oracle for small instances.
//!
//! Moves are chosen on a *search* instance (possibly the augmented `Q'`)
//! while the incumbent is always scored on the *score* instance (the
//! original `Q`), so reported values stay in base-objective units.
//!
//! One evaluation is one performed bit flip, whether made by the tabu
//! walk or by path relinking. Evaluation budgets are therefore exact and
//! fully reproducible; wall-clock budgets are honoured but make the run
//! non-deterministic.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::qubo::{FlipGainState, QuboInstance, Solution};

/// Largest instance `brute_force` will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub seed: u64,
    /// Seconds.
    pub time_limit: Option<f64>,
    pub max_evaluations: Option<u64>,
    pub tabu_tenure: usize,
    pub elite_size: usize,
    /// Non-improving moves tolerated before a random restart.
    pub restart_stall: usize,
    /// Keep a per-move log in the report (for tabu-rule auditing).
    pub record_moves: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            time_limit: None,
            max_evaluations: Some(1_000_000),
            tabu_tenure: 20,
            elite_size: 8,
            restart_stall: 500,
            record_moves: false,
        }
    }
}

impl SolverConfig {
    pub fn with_evaluations(seed: u64, evaluations: u64) -> Self {
        Self {
            seed,
            max_evaluations: Some(evaluations),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let has_time = matches!(self.time_limit, Some(t) if t > 0.0);
        let has_evals = matches!(self.max_evaluations, Some(e) if e > 0);
        if !has_time && !has_evals {
            return invalid("at least one of time_limit or max_evaluations must be positive");
        }
        if let Some(t) = self.time_limit {
            if !t.is_finite() || t < 0.0 {
                return invalid(format!("time_limit must be a non-negative number, got {t}"));
            }
        }
        if self.tabu_tenure == 0 || self.elite_size == 0 || self.restart_stall == 0 {
            return invalid("tabu_tenure, elite_size and restart_stall must be positive");
        }
        Ok(())
    }

    /// Evaluation-budget runs are bit-reproducible; time-limited ones are not.
    pub fn is_deterministic(&self) -> bool {
        self.time_limit.is_none()
    }

    fn effective_tenure(&self, n: usize) -> usize {
        // Tenure must leave at least half of the variables free.
        self.tabu_tenure.min(n / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub evaluation: u64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub evaluation: u64,
    pub var: usize,
    pub aspiration: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub best_solution: Solution,
    /// Best solution scored on the original instance.
    pub best_value_base: f64,
    /// Best solution scored on the instance the moves were chosen on.
    pub best_value_search: f64,
    pub evaluations: u64,
    pub restarts: u64,
    pub relink_calls: u64,
    /// Seconds; only recorded for time-limited (non-deterministic) runs.
    pub wall_time: Option<f64>,
    pub deterministic: bool,
    pub seed: u64,
    pub trajectory: Vec<TrajectoryPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub move_log: Option<Vec<MoveRecord>>,
}

impl RunReport {
    pub fn to_json(&self, include_trajectory: bool) -> String {
        let mut value = serde_json::to_value(self).expect("report is serializable");
        if !include_trajectory {
            if let Some(obj) = value.as_object_mut() {
                obj.remove("trajectory");
            }
        }
        let mut s = serde_json::to_string_pretty(&value).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// Paired gain states for the search and score instances. `score` is
/// `None` when both are the same instance.
struct Walker<'a> {
    search: FlipGainState<'a>,
    score: Option<FlipGainState<'a>>,
}

impl<'a> Walker<'a> {
    fn new(search: &'a QuboInstance, score: Option<&'a QuboInstance>, x: Vec<u8>) -> Self {
        let score = score.map(|s| FlipGainState::new_unchecked(s, x.clone()));
        Self {
            search: FlipGainState::new_unchecked(search, x),
            score,
        }
    }

    fn reset(&mut self, x: Vec<u8>) {
        let search = self.search.instance();
        let score = self.score.as_ref().map(|s| s.instance());
        *self = Self::new(search, score, x);
    }

    #[inline]
    fn flip(&mut self, j: usize) {
        self.search.flip(j);
        if let Some(s) = &mut self.score {
            s.flip(j);
        }
    }

    fn x(&self) -> &[u8] {
        self.search.x()
    }

    fn search_value(&self) -> f64 {
        self.search.value()
    }

    fn score_value(&self) -> f64 {
        self.score.as_ref().map_or(self.search.value(), |s| s.value())
    }

    fn score_solution(&self) -> Solution {
        Solution {
            x: self.x().to_vec(),
            value: self.score_value(),
        }
    }

    /// Greedy walk toward `target` over the differing bits; returns the
    /// best score-valued point (endpoints included) and the flip order.
    fn relink_to(&mut self, target: &[u8]) -> (Solution, Vec<usize>) {
        let mut diff: Vec<usize> = (0..target.len())
            .filter(|&i| self.x()[i] != target[i])
            .collect();
        let mut best = self.score_solution();
        let mut order = Vec::with_capacity(diff.len());
        while !diff.is_empty() {
            let mut pick = 0;
            for (slot, &i) in diff.iter().enumerate() {
                if self.search.gain(i) > self.search.gain(diff[pick]) {
                    pick = slot;
                }
            }
            // `diff` stays sorted, so the first maximum is the lowest index.
            let j = diff.remove(pick);
            self.flip(j);
            order.push(j);
            if self.score_value() > best.value {
                best = self.score_solution();
            }
        }
        (best, order)
    }
}

struct ElitePool {
    capacity: usize,
    entries: Vec<(Solution, u64)>,
    stamp: u64,
}

impl ElitePool {
    fn new(capacity: usize) -> Self {
        Self {
            capacity,
            entries: Vec::with_capacity(capacity + 1),
            stamp: 0,
        }
    }

    /// Inserts a distinct solution, evicting the worst (oldest on ties)
    /// when full. Returns whether it was admitted.
    fn insert(&mut self, sol: Solution) -> bool {
        if self.entries.iter().any(|(s, _)| s.x == sol.x) {
            return false;
        }
        if self.entries.len() >= self.capacity {
            let worst = self
                .entries
                .iter()
                .enumerate()
                .min_by(|a, b| {
                    a.1 .0
                        .value
                        .total_cmp(&b.1 .0.value)
                        .then(a.1 .1.cmp(&b.1 .1))
                })
                .map(|(i, _)| i)
                .expect("pool is non-empty");
            if sol.value <= self.entries[worst].0.value {
                return false;
            }
            self.entries.swap_remove(worst);
        }
        self.stamp += 1;
        self.entries.push((sol, self.stamp));
        true
    }

    fn newest(&self) -> Option<usize> {
        self.entries
            .iter()
            .enumerate()
            .max_by_key(|(_, (_, st))| *st)
            .map(|(i, _)| i)
    }
}

struct Engine<'a> {
    cfg: &'a SolverConfig,
    walker: Walker<'a>,
    score_instance: &'a QuboInstance,
    rng: ChaCha8Rng,
    n: usize,
    tenure: u64,
    tabu_until: Vec<u64>,
    evaluations: u64,
    start: Instant,
    timed_out: bool,
    best: Solution,
    search_incumbent: f64,
    trajectory: Vec<TrajectoryPoint>,
    move_log: Option<Vec<MoveRecord>>,
    restarts: u64,
    relink_calls: u64,
}

impl<'a> Engine<'a> {
    fn new(
        search: &'a QuboInstance,
        score: &'a QuboInstance,
        cfg: &'a SolverConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        if search.n() != score.n() {
            return invalid(format!(
                "search instance has {} variables, score instance has {}",
                search.n(),
                score.n()
            ));
        }
        let n = search.n();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let x0 = random_bits(&mut rng, n);
        let score_opt = (!std::ptr::eq(search, score)).then_some(score);
        let walker = Walker::new(search, score_opt, x0);
        let best = walker.score_solution();
        Ok(Self {
            cfg,
            score_instance: score,
            rng,
            n,
            tenure: cfg.effective_tenure(n) as u64,
            tabu_until: vec![0; n],
            evaluations: 0,
            start: Instant::now(),
            timed_out: false,
            search_incumbent: walker.search_value(),
            trajectory: vec![TrajectoryPoint {
                evaluation: 0,
                value: best.value,
            }],
            best,
            move_log: cfg.record_moves.then(Vec::new),
            restarts: 0,
            relink_calls: 0,
            walker,
        })
    }

    fn remaining(&self) -> u64 {
        self.cfg
            .max_evaluations
            .map_or(u64::MAX, |m| m.saturating_sub(self.evaluations))
    }

    fn has_budget(&mut self) -> bool {
        if self.remaining() == 0 || self.timed_out {
            return false;
        }
        if let Some(limit) = self.cfg.time_limit {
            if self.evaluations.is_multiple_of(64) && self.start.elapsed().as_secs_f64() >= limit {
                self.timed_out = true;
                return false;
            }
        }
        true
    }

    fn offer(&mut self, candidate: &Solution) {
        if candidate.value > self.best.value {
            self.best = candidate.clone();
            self.trajectory.push(TrajectoryPoint {
                evaluation: self.evaluations,
                value: candidate.value,
            });
        }
    }

    fn note_current(&mut self) {
        let score = self.walker.score_value();
        if score > self.best.value {
            let sol = self.walker.score_solution();
            self.offer(&sol);
        }
        self.search_incumbent = self.search_incumbent.max(self.walker.search_value());
    }

    /// One best-improvement move. Tabu variables are skipped unless the
    /// move would beat the best search-instance value seen so far.
    fn tabu_move(&mut self) {
        let next_eval = self.evaluations + 1;
        let current = self.walker.search_value();
        let mut pick: Option<(usize, f64, bool)> = None;
        let mut fallback: Option<(usize, f64)> = None;
        for j in 0..self.n {
            let g = self.walker.search.gain(j);
            let tabu = next_eval < self.tabu_until[j];
            let aspiration = tabu && current + g > self.search_incumbent;
            if !tabu || aspiration {
                if pick.is_none_or(|(_, bg, _)| g > bg) {
                    pick = Some((j, g, aspiration));
                }
            } else if fallback.is_none_or(|(_, bg)| g > bg) {
                fallback = Some((j, g));
            }
        }
        let (j, aspiration) = match (pick, fallback) {
            (Some((j, _, a)), _) => (j, a),
            (None, Some((j, _))) => (j, false),
            (None, None) => unreachable!("n >= 1"),
        };
        self.walker.flip(j);
        self.evaluations = next_eval;
        self.tabu_until[j] = next_eval + self.tenure;
        if let Some(log) = &mut self.move_log {
            log.push(MoveRecord {
                evaluation: next_eval,
                var: j,
                aspiration,
            });
        }
        self.note_current();
    }

    /// Runs tabu moves from the walker's current point until the search
    /// value stalls or the budget runs out. Returns the episode's best
    /// score-valued solution.
    fn episode(&mut self) -> Solution {
        let mut ep_best = self.walker.score_solution();
        let mut ep_best_search = self.walker.search_value();
        let mut stall = 0usize;
        while self.has_budget() {
            self.tabu_move();
            if self.walker.score_value() > ep_best.value {
                ep_best = self.walker.score_solution();
            }
            if self.walker.search_value() > ep_best_search {
                ep_best_search = self.walker.search_value();
                stall = 0;
            } else {
                stall += 1;
                if stall >= self.cfg.restart_stall {
                    break;
                }
            }
        }
        ep_best
    }

    fn restart(&mut self) {
        let x = random_bits(&mut self.rng, self.n);
        self.walker.reset(x);
        self.restarts += 1;
        self.note_current();
    }

    fn run(mut self, relink: bool) -> RunReport {
        let mut pool = ElitePool::new(self.cfg.elite_size);
        self.note_current();
        let mut first = true;
        while self.has_budget() {
            if !first {
                self.restart();
            }
            first = false;
            let ep_best = self.episode();
            if !relink {
                continue;
            }
            pool.insert(ep_best);
            if pool.entries.len() < 2 {
                continue;
            }
            let newest = pool.newest().expect("pool has entries");
            let mut other = self.rng.random_range(0..pool.entries.len() - 1);
            if other >= newest {
                other += 1;
            }
            let a = pool.entries[newest].0.clone();
            let b = pool.entries[other].0.x.clone();
            let dist = a.x.iter().zip(&b).filter(|(p, q)| p != q).count() as u64;
            if dist > self.remaining() || !self.has_budget() {
                continue;
            }
            self.walker.reset(a.x);
            let (found, order) = self.walker.relink_to(&b);
            self.evaluations += order.len() as u64;
            self.relink_calls += 1;
            self.offer(&found);
            pool.insert(found);
        }
        self.finish()
    }

    fn finish(self) -> RunReport {
        let x = self.best.x;
        let best_value_base = self.score_instance.evaluate_unchecked(&x);
        let best_value_search = self.walker.search.instance().evaluate_unchecked(&x);
        RunReport {
            best_solution: Solution {
                x,
                value: best_value_base,
            },
            best_value_base,
            best_value_search,
            evaluations: self.evaluations,
            restarts: self.restarts,
            relink_calls: self.relink_calls,
            wall_time: (!self.cfg.is_deterministic()).then(|| self.start.elapsed().as_secs_f64()),
            deterministic: self.cfg.is_deterministic(),
            seed: self.cfg.seed,
            trajectory: self.trajectory,
            move_log: self.move_log,
        }
    }
}

fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    (0..n).map(|_| u8::from(rng.random_bool(0.5))).collect()
}

/// Tabu search with random restarts (no relinking). Moves follow
/// `search_instance`; the incumbent is scored on `score_instance`.
pub fn tabu_search(
    search_instance: &QuboInstance,
    score_instance: &QuboInstance,
    config: &SolverConfig,
) -> Result<RunReport> {
    Ok(Engine::new(search_instance, score_instance, config)?.run(false))
}

/// Greedy relinking from `a` to `b`: repeatedly flips the differing bit
/// with the largest search gain (lowest index on ties) and returns the
/// best score-valued solution on the path, endpoints included.
pub fn path_relink(
    a: &Solution,
    b: &Solution,
    search_instance: &QuboInstance,
    score_instance: &QuboInstance,
) -> Result<Solution> {
    path_relink_traced(a, b, search_instance, score_instance).map(|(s, _)| s)
}

/// As [`path_relink`], also returning the flipped indices in order.
pub fn path_relink_traced(
    a: &Solution,
    b: &Solution,
    search_instance: &QuboInstance,
    score_instance: &QuboInstance,
) -> Result<(Solution, Vec<usize>)> {
    if search_instance.n() != score_instance.n() {
        return invalid("search and score instances differ in size");
    }
    search_instance.check_assignment(&a.x)?;
    search_instance.check_assignment(&b.x)?;
    if a.x == b.x {
        return invalid("path relinking needs distinct endpoints");
    }
    let score = (!std::ptr::eq(search_instance, score_instance)).then_some(score_instance);
    let mut walker = Walker::new(search_instance, score, a.x.clone());
    let (mut best, order) = walker.relink_to(&b.x);
    best.value = score_instance.evaluate_unchecked(&best.x);
    Ok((best, order))
}

/// The PRlocal heuristic: tabu episodes with random restarts, an elite
/// pool, and path relinking between the newest elite entry and a random
/// other member after every episode.
///
/// With `transformed` present, moves follow `Q'` while the incumbent and
/// elite pool are scored on `base`.
pub fn prlocal(
    base: &QuboInstance,
    transformed: Option<&QuboInstance>,
    config: &SolverConfig,
) -> Result<RunReport> {
    let search = transformed.unwrap_or(base);
    Ok(Engine::new(search, base, config)?.run(true))
}

/// Exhaustive maximization by Gray-code enumeration. Ties go to the
/// lexicographically smallest assignment.
pub fn brute_force(instance: &QuboInstance) -> Result<Solution> {
    let n = instance.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut x = vec![0u8; n];
    let mut value = instance.offset();
    let mut best_x = x.clone();
    let mut best = value;
    for step in 1u64..(1u64 << n) {
        let j = step.trailing_zeros() as usize;
        let row = instance.row(j);
        let field: f64 = x
            .iter()
            .zip(row)
            .enumerate()
            .filter(|&(i, (&xi, _))| xi == 1 && i != j)
            .map(|(_, (_, &q))| q)
            .sum();
        let delta = (row[j] + 2.0 * field) * if x[j] == 0 { 1.0 } else { -1.0 };
        x[j] ^= 1;
        value += delta;
        if value > best || (value == best && x < best_x) {
            best = value;
            best_x.copy_from_slice(&x);
        }
    }
    let value = instance.evaluate_unchecked(&best_x);
    Ok(Solution { x: best_x, value })
}

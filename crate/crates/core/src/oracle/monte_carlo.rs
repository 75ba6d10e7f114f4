//! Monte-Carlo simulation of dR = dt + μR dB killed at A.
//!
//! Euler–Maruyama with a Brownian-bridge correction for crossings that
//! happen between grid times. Every path draws from its own ChaCha8 stream
//! (master seed, stream = path index), so results do not depend on how
//! rayon schedules the work.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "QSD_SR_THREADS";

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub headstart: f64,
    pub dt: f64,
    pub horizon: f64,
    pub n_paths: usize,
    pub seed: u64,
    pub n_bins: usize,
    /// Times (≤ horizon) at which survivors are counted.
    pub checkpoints: Vec<f64>,
}

impl SimulationConfig {
    pub fn new(headstart: f64, dt: f64, horizon: f64, n_paths: usize, seed: u64) -> Self {
        Self {
            headstart,
            dt,
            horizon,
            n_paths,
            seed,
            n_bins: 100,
            checkpoints: Vec::new(),
        }
    }
}

/// The conditional law of R_T given survival, as estimated from the paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalLaw {
    pub bin_edges: Vec<f64>,
    pub bin_masses: Vec<f64>,
    pub n_paths_total: usize,
    pub n_survivors: usize,
    pub seed: u64,
    pub headstart: f64,
    pub horizon: f64,
    pub dt: f64,
    /// Surviving terminal values, sorted.
    pub samples: Vec<f64>,
    /// (time, survivors) at each checkpoint.
    pub survival: Vec<(f64, usize)>,
}

impl EmpiricalLaw {
    pub fn ecdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.samples.len() as f64
    }

    /// sup_x |F_n(x) − F(x)|.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.samples.len() as f64;
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Two-sample Kolmogorov–Smirnov distance.
    pub fn ks_two_sample(&self, other: &EmpiricalLaw) -> f64 {
        let (a, b) = (&self.samples, &other.samples);
        let (na, nb) = (a.len() as f64, b.len() as f64);
        let (mut i, mut j) = (0, 0);
        let mut d: f64 = 0.0;
        while i < a.len() && j < b.len() {
            let x = a[i].min(b[j]);
            while i < a.len() && a[i] <= x {
                i += 1;
            }
            while j < b.len() && b[j] <= x {
                j += 1;
            }
            d = d.max((i as f64 / na - j as f64 / nb).abs());
        }
        d
    }

    /// Least-squares slope of ln(survivors) against time over the
    /// checkpoints; estimates λ.
    pub fn survival_decay_rate(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .survival
            .iter()
            .filter(|(_, s)| *s > 0)
            .map(|&(t, s)| (t, (s as f64).ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
        Some(sxy / sxx)
    }
}

enum Fate {
    Killed(usize),
    Survived(f64),
}

fn simulate_path(params: &ModelParams, cfg: &SimulationConfig, n_steps: usize, path: u64) -> Fate {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(path);
    let a = params.threshold();
    let mu = params.mu();
    let mu2 = params.mu_sq();
    let sqrt_dt = cfg.dt.sqrt();
    let mut r = cfg.headstart;
    for k in 0..n_steps {
        let z: f64 = rng.sample(StandardNormal);
        let next = (r + cfg.dt + mu * r * sqrt_dt * z).max(0.0);
        if next >= a {
            return Fate::Killed(k + 1);
        }
        // Probability that the bridge between r and next touched A.
        if r > 0.0 {
            let exponent = -2.0 * (a - r) * (a - next) / (mu2 * r * r * cfg.dt);
            if exponent > -40.0 {
                let u: f64 = rng.gen();
                if u < exponent.exp() {
                    return Fate::Killed(k + 1);
                }
            }
        }
        r = next;
    }
    Fate::Survived(r)
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Simulate `n_paths` killed paths from R_0 = headstart up to the horizon.
pub fn simulate_killed_sr(params: &ModelParams, cfg: &SimulationConfig) -> Result<EmpiricalLaw> {
    let a = params.threshold();
    if !(cfg.headstart >= 0.0 && cfg.headstart < a) {
        return Err(Error::InvalidParameter(format!(
            "headstart must lie in [0, A), got {}",
            cfg.headstart
        )));
    }
    if !(cfg.dt > 0.0 && cfg.horizon > cfg.dt && cfg.n_paths > 0 && cfg.n_bins > 0) {
        return Err(Error::InvalidParameter(format!(
            "need dt > 0, horizon > dt and positive path and bin counts (dt = {}, horizon = {}, paths = {}, bins = {})",
            cfg.dt, cfg.horizon, cfg.n_paths, cfg.n_bins
        )));
    }
    if cfg.checkpoints.iter().any(|&t| !(t > 0.0 && t <= cfg.horizon)) {
        return Err(Error::InvalidParameter(
            "checkpoints must lie in (0, horizon]".into(),
        ));
    }
    let n_steps = (cfg.horizon / cfg.dt).round() as usize;
    let run = || -> Vec<Fate> {
        (0..cfg.n_paths as u64)
            .into_par_iter()
            .map(|i| simulate_path(params, cfg, n_steps, i))
            .collect()
    };
    let fates = match thread_count() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut samples = Vec::new();
    let mut killed_at = Vec::new();
    for f in fates {
        match f {
            Fate::Survived(r) => samples.push(r),
            Fate::Killed(k) => killed_at.push(k),
        }
    }
    if samples.is_empty() {
        return Err(Error::InsufficientSurvivors {
            n_paths: cfg.n_paths,
            horizon: cfg.horizon,
        });
    }
    samples.sort_by(f64::total_cmp);
    killed_at.sort_unstable();
    let survival = cfg
        .checkpoints
        .iter()
        .map(|&t| {
            let step = (t / cfg.dt).round() as usize;
            let dead = killed_at.partition_point(|&k| k <= step);
            (t, cfg.n_paths - dead)
        })
        .collect();

    let width = a / cfg.n_bins as f64;
    let bin_edges: Vec<f64> = (0..=cfg.n_bins).map(|i| i as f64 * width).collect();
    let mut counts = vec![0usize; cfg.n_bins];
    for &s in &samples {
        counts[((s / width) as usize).min(cfg.n_bins - 1)] += 1;
    }
    let total = samples.len() as f64;
    Ok(EmpiricalLaw {
        bin_edges,
        bin_masses: counts.iter().map(|&c| c as f64 / total).collect(),
        n_paths_total: cfg.n_paths,
        n_survivors: samples.len(),
        seed: cfg.seed,
        headstart: cfg.headstart,
        horizon: cfg.horizon,
        dt: cfg.dt,
        samples,
        survival,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_run(seed: u64) -> EmpiricalLaw {
        let p = ModelParams::new(1.0, 5.0).unwrap();
        let mut cfg = SimulationConfig::new(1.0, 1e-2, 3.0, 2000, seed);
        cfg.checkpoints = vec![1.0, 2.0, 3.0];
        simulate_killed_sr(&p, &cfg).unwrap()
    }

    #[test]
    fn deterministic_given_seed() {
        assert_eq!(small_run(7), small_run(7));
        assert_ne!(small_run(7).samples, small_run(8).samples);
    }

    #[test]
    fn invariants_hold() {
        let law = small_run(3);
        assert!(law.n_survivors <= law.n_paths_total);
        assert!(law.samples.iter().all(|&s| (0.0..5.0).contains(&s)));
        assert!((law.bin_masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let counts: Vec<usize> = law.survival.iter().map(|s| s.1).collect();
        assert!(counts.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*counts.last().unwrap(), law.n_survivors);
    }

    #[test]
    fn ks_helpers() {
        let law = small_run(5);
        assert_eq!(law.ks_two_sample(&law), 0.0);
        assert!((law.ks_distance(|x| law.ecdf(x)) - 1.0 / law.n_survivors as f64).abs() < 1e-12);
        assert_eq!(law.ks_distance(|_| 0.0), 1.0);
    }

    #[test]
    fn rejects_bad_configs() {
        let p = ModelParams::new(1.0, 5.0).unwrap();
        assert!(simulate_killed_sr(&p, &SimulationConfig::new(5.0, 1e-2, 1.0, 10, 0)).is_err());
        assert!(simulate_killed_sr(&p, &SimulationConfig::new(1.0, 0.0, 1.0, 10, 0)).is_err());
        let err = simulate_killed_sr(&p, &SimulationConfig::new(4.99, 0.5, 400.0, 5, 0));
        assert!(matches!(err, Err(Error::InsufficientSurvivors { .. })));
    }
}

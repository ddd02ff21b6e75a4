//! Timing harness for empirical scaling: runs the algorithms over seeded
//! random trees and fits the exponent of `time ~ n^slope`.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::fast::{aecc3_fast, aecc3_fast_par};
use crate::oracle::{aecc3_bruteforce_pairwise, aecc_k_bruteforce};
use crate::prufer::random_tree;
use crate::tree::Tree;

/// Default largest `n` for the quartic oracle.
pub const DEFAULT_ORACLE_CAP: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchAlgo {
    Fast,
    FastPar,
    /// Subset enumeration with leaf pruning, quartic in `n`.
    Oracle,
    /// Pairwise-distance enumeration of triples, cubic in `n`.
    OraclePairwise,
}

impl BenchAlgo {
    pub fn name(self) -> &'static str {
        match self {
            BenchAlgo::Fast => "fast",
            BenchAlgo::FastPar => "fast_par",
            BenchAlgo::Oracle => "oracle",
            BenchAlgo::OraclePairwise => "oracle_pairwise",
        }
    }

    fn is_oracle(self) -> bool {
        matches!(self, BenchAlgo::Oracle | BenchAlgo::OraclePairwise)
    }

    /// Runs the algorithm once and returns the sum of eccentricities, so the
    /// work cannot be optimized away.
    pub fn run(self, t: &Tree) -> u64 {
        match self {
            BenchAlgo::Fast => aecc3_fast(t).expect("n >= 3").sum,
            BenchAlgo::FastPar => aecc3_fast_par(t).expect("n >= 3").sum,
            BenchAlgo::Oracle => aecc_k_bruteforce(t, 3).expect("within limits").sum,
            BenchAlgo::OraclePairwise => aecc3_bruteforce_pairwise(t).expect("within limits").sum,
        }
    }
}

impl std::str::FromStr for BenchAlgo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            BenchAlgo::Fast,
            BenchAlgo::FastPar,
            BenchAlgo::Oracle,
            BenchAlgo::OraclePairwise,
        ]
        .into_iter()
        .find(|a| a.name() == s)
        .ok_or_else(|| format!("unknown algorithm '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("oracle run at n = {n} exceeds the cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },
    #[error("sizes must be at least 3, got {0}")]
    SizeTooSmall(usize),
    #[error("need at least one trial")]
    NoTrials,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub algos: Vec<BenchAlgo>,
    pub trials: usize,
    pub seed: u64,
    pub oracle_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub algo: BenchAlgo,
    pub trial: usize,
    pub elapsed_ns: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub algo: BenchAlgo,
    pub slope: f64,
    /// `(n, fastest time in ns)` pairs the fit was made on.
    pub points: Vec<(usize, u128)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub fits: Vec<SlopeFit>,
}

/// Seed of the tree used at size `n` in trial `trial`; depends only on the
/// base seed, so every algorithm sees the same corpus.
pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (trial as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
}

/// The tree corpus of a configuration, in `(n, trial)` order.
pub fn bench_corpus(sizes: &[usize], trials: usize, seed: u64) -> Vec<(usize, usize, Tree)> {
    sizes
        .iter()
        .flat_map(|&n| {
            (0..trials).map(move |trial| (n, trial, random_tree(n, trial_seed(seed, n, trial))))
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Times every algorithm on every tree of the corpus. Each fit uses the
/// fastest trial per size, which filters out scheduling noise.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, HarnessError> {
    if config.trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    if let Some(&n) = config.sizes.iter().find(|&&n| n < 3) {
        return Err(HarnessError::SizeTooSmall(n));
    }
    for algo in &config.algos {
        if algo.is_oracle() {
            if let Some(&n) = config.sizes.iter().find(|&&n| n > config.oracle_cap) {
                return Err(HarnessError::OracleCapExceeded {
                    n,
                    cap: config.oracle_cap,
                });
            }
        }
    }
    let corpus = bench_corpus(&config.sizes, config.trials, config.seed);
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for &algo in &config.algos {
        let mut points = Vec::new();
        for &n in &config.sizes {
            let mut best = u128::MAX;
            for (_, trial, t) in corpus.iter().filter(|(m, _, _)| *m == n) {
                let start = Instant::now();
                std::hint::black_box(algo.run(std::hint::black_box(t)));
                let elapsed_ns = start.elapsed().as_nanos();
                best = best.min(elapsed_ns);
                rows.push(BenchRow {
                    n,
                    algo,
                    trial: *trial,
                    elapsed_ns,
                });
            }
            points.push((n, best));
        }
        let slope = if points.len() >= 2 {
            fit_loglog_slope(
                &points
                    .iter()
                    .map(|&(n, ns)| (n as f64, ns.max(1) as f64))
                    .collect::<Vec<_>>(),
            )
        } else {
            f64::NAN
        };
        fits.push(SlopeFit {
            algo,
            slope,
            points,
        });
    }
    Ok(BenchReport { rows, fits })
}

impl BenchReport {
    /// Raw rows `n,algo,trial,elapsed_ns`, then one `slope,<algo>,,<value>`
    /// summary row per algorithm.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,algo,trial,elapsed_ns\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{}",
                r.n,
                r.algo.name(),
                r.trial,
                r.elapsed_ns
            )
            .unwrap();
        }
        for f in &self.fits {
            writeln!(out, "slope,{},,{:.4}", f.algo.name(), f.slope).unwrap();
        }
        out
    }
}

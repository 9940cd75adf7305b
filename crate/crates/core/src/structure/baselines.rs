//! Erdős–Rényi baselines for the small-world comparison: clustering and path
//! length averaged over a handful of generated graphs of matching size.

use super::clustering::avg_clustering;
use super::paths::{avg_path_length, PathMode};
use crate::error::Result;
use crate::graph::er_random_graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy)]
pub struct ErBaselineOptions {
    pub trials: usize,
    pub seed: u64,
    /// Path mode applied to each trial graph's giant component.
    pub path_mode: PathMode,
}

impl Default for ErBaselineOptions {
    fn default() -> Self {
        ErBaselineOptions {
            trials: 10,
            seed: 0,
            path_mode: PathMode::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErBaselines {
    /// Monte-Carlo average local clustering.
    pub c_er: f64,
    /// Analytic reference `k / (n-1)`.
    pub c_analytic: f64,
    /// Monte-Carlo average path length on each trial's giant component;
    /// undefined when the expected degree is below the giant-component
    /// threshold.
    pub l_er: Option<f64>,
    pub c_trials: Vec<f64>,
    pub l_trials: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

pub fn er_baselines(n: usize, e: usize, opts: &ErBaselineOptions) -> Result<ErBaselines> {
    assert!(n >= 2 && opts.trials >= 1);
    let k = 2.0 * e as f64 / n as f64;
    let c_analytic = k / (n as f64 - 1.0);
    let measure_paths = k >= 1.0;

    type TrialOutcome = (f64, Option<f64>, Option<String>);
    let per_trial: Vec<Result<TrialOutcome>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = splitmix(opts.seed.wrapping_add(t as u64));
            let (graph, clamp_warning) = er_random_graph(n, e, trial_seed);
            let c = avg_clustering(&graph)?;
            let l = if measure_paths {
                let (giant, _) = graph.giant_component();
                if giant.node_count() >= 2 {
                    Some(avg_path_length(&giant, reseed(opts.path_mode, trial_seed))?.mean)
                } else {
                    None
                }
            } else {
                None
            };
            Ok((c, l, clamp_warning))
        })
        .collect();

    let mut out = ErBaselines {
        c_er: 0.0,
        c_analytic,
        l_er: None,
        c_trials: Vec::with_capacity(opts.trials),
        l_trials: Vec::new(),
        trials: opts.trials,
        seed: opts.seed,
        warnings: Vec::new(),
    };
    for trial in per_trial {
        let (c, l, warning) = trial?;
        out.c_trials.push(c);
        if let Some(l) = l {
            out.l_trials.push(l);
        }
        if let Some(w) = warning {
            out.warnings.push(w);
        }
    }
    out.warnings.dedup();
    out.c_er = out.c_trials.iter().sum::<f64>() / out.c_trials.len() as f64;
    if !measure_paths {
        out.warnings.push(format!(
            "expected degree {k:.3} < 1: the giant component vanishes, baseline path length undefined"
        ));
    } else if !out.l_trials.is_empty() {
        out.l_er = Some(out.l_trials.iter().sum::<f64>() / out.l_trials.len() as f64);
    }
    Ok(out)
}

/// Each trial gets its own derived path-sampling seed.
fn reseed(mode: PathMode, trial_seed: u64) -> PathMode {
    match mode {
        PathMode::Exact => PathMode::Exact,
        PathMode::Sampled { sources, .. } => PathMode::Sampled {
            seed: splitmix(trial_seed),
            sources,
        },
    }
}

/// splitmix64: cheap, well-mixed seed derivation.
pub(crate) fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

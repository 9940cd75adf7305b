//! Ecosystem-level diagnostics: degree distributions, power-law fit,
//! clustering, path lengths, density, random-graph baselines, and the
//! small-world verdict.

mod baselines;
mod clustering;
mod degree;
mod paths;
mod powerlaw;

pub use baselines::{er_baselines, ErBaselineOptions, ErBaselines};
pub use clustering::{avg_clustering, local_triangle_counts};
pub use degree::{degree_distribution, DegreeDistribution, DegreeKind};
pub use paths::{avg_path_length, PathLength, PathMode};
pub use powerlaw::{fit_power_law, hurwitz_zeta, PowerLawFit, MIN_DISTINCT_TAIL};

pub(crate) use baselines::splitmix;

use crate::error::Result;
use crate::graph::{undirected_projection, DependencyGraph};
use crate::nodes::{driver_nodes, ControllabilityEstimate};
use serde::{Deserialize, Serialize};

/// Factors turning the qualitative small-world conditions into a boolean:
/// `C >= c_factor * C_er` and `l <= l_factor * l_er`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldThresholds {
    pub c_factor: f64,
    pub l_factor: f64,
}

impl Default for SmallWorldThresholds {
    fn default() -> Self {
        SmallWorldThresholds {
            c_factor: 10.0,
            l_factor: 2.0,
        }
    }
}

/// True iff clustering is at least `c_factor` times the baseline and the path
/// length is within `l_factor` of it. Undefined baseline path length leaves
/// the verdict undefined; raw ratios are reported alongside so callers can
/// apply their own cutoffs.
pub fn small_world_verdict(
    c: f64,
    c_er: f64,
    l: f64,
    l_er: Option<f64>,
    thresholds: SmallWorldThresholds,
) -> Option<bool> {
    let l_er = l_er?;
    Some(c >= thresholds.c_factor * c_er && l <= thresholds.l_factor * l_er)
}

/// How path lengths should be computed for a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathModeChoice {
    /// Exact up to [`AUTO_EXACT_LIMIT`] nodes, sampled with
    /// [`AUTO_SAMPLE_SOURCES`] sources above.
    Auto,
    Exact,
    Sampled(usize),
}

pub const AUTO_EXACT_LIMIT: usize = 4000;
pub const AUTO_SAMPLE_SOURCES: usize = 500;

impl PathModeChoice {
    pub(crate) fn resolve(self, n: usize, seed: u64) -> PathMode {
        match self {
            PathModeChoice::Exact => PathMode::Exact,
            PathModeChoice::Sampled(sources) => PathMode::Sampled { seed, sources },
            PathModeChoice::Auto => {
                if n <= AUTO_EXACT_LIMIT {
                    PathMode::Exact
                } else {
                    PathMode::Sampled {
                        seed,
                        sources: AUTO_SAMPLE_SOURCES,
                    }
                }
            }
        }
    }

    pub fn describe(&self, n: usize) -> String {
        match self.resolve(n, 0) {
            PathMode::Exact => "exact".to_string(),
            PathMode::Sampled { sources, .. } => format!("sampled:{sources}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StructureOptions {
    pub seed: u64,
    pub er_trials: usize,
    pub path_mode: PathModeChoice,
    pub thresholds: SmallWorldThresholds,
}

impl Default for StructureOptions {
    fn default() -> Self {
        StructureOptions {
            seed: 0,
            er_trials: 10,
            path_mode: PathModeChoice::Auto,
            thresholds: SmallWorldThresholds::default(),
        }
    }
}

/// Everything the structural profile of one network variant needs, plus the
/// seeds and thresholds that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub variant: String,
    pub n: usize,
    pub e: usize,
    pub avg_degree: f64,
    /// Headline exponent: the total-degree fit, matching how the reference
    /// values behave (see `gamma_kind`).
    pub gamma: Option<f64>,
    pub gamma_kind: String,
    pub fit_total: Option<PowerLawFit>,
    pub fit_in: Option<PowerLawFit>,
    pub fit_out: Option<PowerLawFit>,
    pub clustering: f64,
    pub c_er: f64,
    pub c_er_analytic: f64,
    pub path_length: f64,
    pub path_std_error: Option<f64>,
    pub path_mode: String,
    pub l_er: Option<f64>,
    pub density: f64,
    pub driver: Option<ControllabilityEstimate>,
    pub small_world: Option<bool>,
    pub c_ratio: Option<f64>,
    pub l_ratio: Option<f64>,
    pub er_trials: usize,
    pub seed: u64,
    pub thresholds: SmallWorldThresholds,
    pub warnings: Vec<String>,
}

/// Computes the full structural profile of a connected variant.
pub fn compute_structure(g: &DependencyGraph, opts: &StructureOptions) -> Result<StructureReport> {
    let n = g.node_count();
    let e = g.edge_count();
    let variant = g.variant().as_str().to_string();
    let mut warnings = Vec::new();

    let mut fit_for = |kind: DegreeKind| -> Result<Option<PowerLawFit>> {
        let dist = degree_distribution(g, kind)?;
        match fit_power_law(&dist) {
            Ok(fit) => Ok(Some(fit)),
            Err(err) => {
                warnings.push(format!(
                    "{variant}: {} degree fit unavailable: {err}",
                    kind.as_str()
                ));
                Ok(None)
            }
        }
    };
    let fit_total = fit_for(DegreeKind::Total)?;
    let fit_in = fit_for(DegreeKind::In)?;
    let fit_out = fit_for(DegreeKind::Out)?;
    let gamma = fit_total.as_ref().map(|f| f.gamma);

    let ug = undirected_projection(g);
    let clustering = avg_clustering(&ug)?;

    let path_seed = splitmix(opts.seed ^ 0x7061_7468); // "path"
    let path = avg_path_length(&ug, opts.path_mode.resolve(n, path_seed))?;

    let er_seed = splitmix(opts.seed ^ 0x6261_7365); // "base"
    let er = er_baselines(
        n,
        e,
        &ErBaselineOptions {
            trials: opts.er_trials,
            seed: er_seed,
            path_mode: opts.path_mode.resolve(n, 0),
        },
    )?;
    warnings.extend(er.warnings.iter().cloned());

    let driver = match gamma {
        Some(gamma) => {
            let est = driver_nodes(gamma, g.avg_degree(), n)?;
            if est.clamped {
                warnings.push(format!(
                    "{variant}: driver-node fraction clamped to 1 (gamma {gamma:.3} <= 2 puts the formula outside its validity range)"
                ));
            }
            Some(est)
        }
        None => None,
    };

    let small_world = small_world_verdict(clustering, er.c_er, path.mean, er.l_er, opts.thresholds);

    Ok(StructureReport {
        variant,
        n,
        e,
        avg_degree: g.avg_degree(),
        gamma,
        gamma_kind: "total".to_string(),
        fit_total,
        fit_in,
        fit_out,
        clustering,
        c_er: er.c_er,
        c_er_analytic: er.c_analytic,
        path_length: path.mean,
        path_std_error: path.std_error,
        path_mode: opts.path_mode.describe(n),
        l_er: er.l_er,
        density: g.density(),
        driver,
        small_world,
        c_ratio: if er.c_er > 0.0 {
            Some(clustering / er.c_er)
        } else {
            None
        },
        l_ratio: er.l_er.map(|l_er| path.mean / l_er),
        er_trials: opts.er_trials,
        seed: opts.seed,
        thresholds: opts.thresholds,
        warnings,
    })
}

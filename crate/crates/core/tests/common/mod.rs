//! Shared test oracles and fixture generators. Everything here is
//! independent of the library's computation paths: reachability comes from
//! Floyd–Warshall, triangle counts from an O(n³) scan, and power-law samples
//! from a cumulative table built by direct summation.

// Each test target compiles this module but uses only part of it.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Boolean reachability over nonempty paths.
pub fn floyd_warshall_reach(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for &(u, v) in edges {
        reach[u as usize][v as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Random digraph with 2..=max_n nodes and roughly `density_factor / n` edge
/// probability per ordered pair.
pub fn random_digraph(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    density_factor: f64,
) -> (usize, Vec<(u32, u32)>) {
    let n = rng.gen_range(2..=max_n);
    let p = (density_factor / n as f64).min(0.9);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (n, edges)
}

/// Per-node triangle counts by exhaustive triple scan.
pub fn triangle_counts_oracle(n: usize, has_edge: impl Fn(u32, u32) -> bool) -> Vec<u64> {
    let mut counts = vec![0u64; n];
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if !has_edge(a, b) {
                continue;
            }
            for c in b + 1..n as u32 {
                if has_edge(b, c) && has_edge(a, c) {
                    counts[a as usize] += 1;
                    counts[b as usize] += 1;
                    counts[c as usize] += 1;
                }
            }
        }
    }
    counts
}

/// Exact discrete power-law sampler via an inverse-CDF table built by direct
/// backward summation of `k^(-gamma)`. The support is truncated at 2^20; the
/// mass beyond that point (under 1e-6 for gamma >= 2) is folded into the last
/// table entry.
pub struct DiscretePowerLaw {
    ccdf: Vec<f64>,
    xmin: usize,
}

impl DiscretePowerLaw {
    pub fn new(gamma: f64, xmin: usize) -> Self {
        assert!(gamma > 1.0 && xmin >= 1);
        const K_MAX: usize = 1 << 20;
        let mut ccdf = vec![0.0f64; K_MAX - xmin + 1];
        // Integral estimate of the truncated tail mass.
        let mut acc = (K_MAX as f64 + 0.5).powf(1.0 - gamma) / (gamma - 1.0);
        for k in (xmin..=K_MAX).rev() {
            acc += (k as f64).powf(-gamma);
            ccdf[k - xmin] = acc;
        }
        let total = ccdf[0];
        for value in &mut ccdf {
            *value /= total;
        }
        DiscretePowerLaw { ccdf, xmin }
    }

    /// Draws `k` with `P(K >= k) = ccdf(k)`.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let u: f64 = rng.gen();
        // ccdf[0] = 1 > u always, so the partition point is at least 1.
        let i = self.ccdf.partition_point(|&c| c > u);
        self.xmin + i - 1
    }

    pub fn sample_many(&self, count: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample(&mut rng)).collect()
    }
}

/// Ring of `cliques` size-`size` cliques joined by single bridge edges, with
/// the planted community of each node.
pub fn ring_of_cliques(cliques: u32, size: u32) -> (usize, Vec<(u32, u32)>, Vec<usize>) {
    let mut edges = Vec::new();
    for c in 0..cliques {
        let offset = c * size;
        for a in 0..size {
            for b in a + 1..size {
                edges.push((offset + a, offset + b));
            }
        }
    }
    for c in 0..cliques {
        edges.push((c * size, ((c + 1) % cliques) * size + 1));
    }
    let planted = (0..cliques * size).map(|u| (u / size) as usize).collect();
    ((cliques * size) as usize, edges, planted)
}

/// Deterministic synthetic ecosystem in DCF form: preferential attachment on
/// earlier packages plus a handful of base-package imports, with themed
/// description text so keyword extraction has something to chew on.
pub fn synthetic_ecosystem_dcf(packages: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let themes = [
        "statistical regression models for applied analysis",
        "spatial raster maps and geographic layers",
        "time series forecasting and financial volatility",
        "network graphs clustering and centrality",
        "text mining corpora and tokenization pipelines",
    ];
    let base_imports = ["stats", "methods", "utils", "graphics"];

    // In-degree counts drive preferential attachment.
    let mut weights: Vec<usize> = vec![1; packages];
    let mut out = String::new();
    for i in 0..packages {
        let name = format!("pkg{i:04}");
        let theme = themes[i % themes.len()];
        out.push_str(&format!("Package: {name}\nVersion: 1.{}\n", i % 10));

        let mut imports: Vec<String> = Vec::new();
        if i > 0 {
            let targets = rng.gen_range(1..=4usize.min(i));
            for _ in 0..targets {
                // Weighted draw over earlier packages.
                let total: usize = weights[..i].iter().sum();
                let mut pick = rng.gen_range(0..total);
                let mut chosen = 0;
                for (j, &w) in weights[..i].iter().enumerate() {
                    if pick < w {
                        chosen = j;
                        break;
                    }
                    pick -= w;
                }
                let dep = format!("pkg{chosen:04}");
                if !imports.contains(&dep) {
                    weights[chosen] += 3;
                    imports.push(dep);
                }
            }
        }
        if rng.gen_bool(0.6) {
            imports.push(base_imports[rng.gen_range(0..base_imports.len())].to_string());
        }
        if !imports.is_empty() {
            out.push_str(&format!("Imports: {}\n", imports.join(", ")));
        }
        out.push_str("Depends: R (>= 3.5)\n");
        out.push_str(&format!("Description: {theme} ({name})\n\n"));
    }
    out
}

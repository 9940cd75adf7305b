//! Average shortest path length over a connected undirected graph, exact or
//! estimated from a sample of BFS sources.

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PathMode {
    /// All-sources BFS; the mean over all unordered pairs.
    Exact,
    /// BFS from `sources` distinct uniformly drawn sources; the mean of
    /// per-source means, reported with its standard error.
    Sampled { seed: u64, sources: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathLength {
    pub mean: f64,
    /// Standard error of the sampled estimate; absent in exact mode.
    pub std_error: Option<f64>,
    pub sources_used: usize,
}

pub fn avg_path_length(ug: &UndirectedGraph, mode: PathMode) -> Result<PathLength> {
    let n = ug.node_count();
    if n < 2 {
        return Err(Error::Graph("path length needs at least two nodes".into()));
    }
    if !ug.is_connected() {
        return Err(Error::Graph(
            "graph is disconnected: reduce to the giant component first".into(),
        ));
    }

    let sources: Vec<u32> = match mode {
        PathMode::Exact => (0..n as u32).collect(),
        PathMode::Sampled { seed, sources } => sample_distinct(n, sources.min(n), seed),
    };

    // Distance sums are integers, so the reduction is exact and
    // order-independent regardless of how workers interleave.
    let sums: Vec<u64> = sources
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::<u32>::new()),
            |(dist, queue), &source| {
                queue.clear();
                queue.push(source);
                dist[source as usize] = 0;
                let mut head = 0;
                let mut total = 0u64;
                while head < queue.len() {
                    let u = queue[head];
                    head += 1;
                    let d = dist[u as usize];
                    total += d as u64;
                    for &v in ug.neighbors(u) {
                        if dist[v as usize] == u32::MAX {
                            dist[v as usize] = d + 1;
                            queue.push(v);
                        }
                    }
                }
                for &u in queue.iter() {
                    dist[u as usize] = u32::MAX;
                }
                total
            },
        )
        .collect();

    match mode {
        PathMode::Exact => {
            let total: u64 = sums.iter().sum();
            let pairs = n as f64 * (n as f64 - 1.0);
            Ok(PathLength {
                mean: total as f64 / pairs,
                std_error: None,
                sources_used: n,
            })
        }
        PathMode::Sampled { .. } => {
            let m = sums.len();
            let per_source: Vec<f64> = sums.iter().map(|&s| s as f64 / (n as f64 - 1.0)).collect();
            let mean = per_source.iter().sum::<f64>() / m as f64;
            let std_error = if m >= 2 {
                let var = per_source
                    .iter()
                    .map(|x| (x - mean) * (x - mean))
                    .sum::<f64>()
                    / (m as f64 - 1.0);
                Some((var / m as f64).sqrt())
            } else {
                None
            };
            Ok(PathLength {
                mean,
                std_error,
                sources_used: m,
            })
        }
    }
}

/// First `count` entries of a seeded Fisher–Yates shuffle of 0..n.
fn sample_distinct(n: usize, count: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<u32> = (0..n as u32).collect();
    for i in 0..count {
        let j = rng.gen_range(i..n);
        ids.swap(i, j);
    }
    ids.truncate(count);
    ids
}

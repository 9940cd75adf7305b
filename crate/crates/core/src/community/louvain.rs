//! The Louvain method: repeated local moves maximizing the modularity gain,
//! then aggregation of communities into supernodes, until no move improves.

use super::modularity;
use crate::graph::UndirectedGraph;
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityPartition {
    /// Node → community, ids dense in 0..community_count.
    pub assignment: Vec<usize>,
    pub community_count: usize,
    /// Newman modularity of `assignment` on the input graph.
    pub modularity: f64,
    pub seed: u64,
    pub resolution: f64,
    /// Modularity of the flattened assignment after each pass; never
    /// decreasing at resolution 1.
    pub levels: Vec<f64>,
}

/// Weighted multigraph for the aggregated levels. Self-loop weight counts
/// twice in a node's strength, matching the collapsed intra-community edges.
struct LevelGraph {
    adj: Vec<Vec<(u32, f64)>>,
    self_loops: Vec<f64>,
    two_m: f64,
}

impl LevelGraph {
    fn from_simple(ug: &UndirectedGraph) -> Self {
        let n = ug.node_count();
        let adj: Vec<Vec<(u32, f64)>> = (0..n as u32)
            .map(|u| ug.neighbors(u).iter().map(|&v| (v, 1.0)).collect())
            .collect();
        LevelGraph {
            adj,
            self_loops: vec![0.0; n],
            two_m: 2.0 * ug.edge_count() as f64,
        }
    }

    fn node_count(&self) -> usize {
        self.adj.len()
    }

    fn strength(&self, u: usize) -> f64 {
        self.adj[u].iter().map(|(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[u]
    }
}

pub fn louvain(ug: &UndirectedGraph, seed: u64, resolution: f64) -> CommunityPartition {
    let n = ug.node_count();
    if n == 0 || ug.edge_count() == 0 {
        return CommunityPartition {
            assignment: (0..n).collect(),
            community_count: n,
            modularity: 0.0,
            seed,
            resolution,
            levels: vec![0.0],
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = LevelGraph::from_simple(ug);
    // Original node → supernode of the current level.
    let mut flat: Vec<usize> = (0..n).collect();
    let mut levels = Vec::new();

    loop {
        let (membership, moved) = local_moves(&level, resolution, &mut rng);
        if !moved && !levels.is_empty() {
            break;
        }
        let dense = densify(&membership);
        for slot in flat.iter_mut() {
            *slot = dense[*slot];
        }
        levels.push(modularity(ug, &flat).expect("flattened assignment covers all nodes"));
        if !moved {
            break;
        }
        level = aggregate(&level, &dense);
        if level.node_count() == 1 {
            break;
        }
    }

    let assignment = densify(&flat);
    let community_count = assignment.iter().max().map_or(0, |&c| c + 1);
    let q = *levels.last().expect("at least one pass recorded");
    CommunityPartition {
        assignment,
        community_count,
        modularity: q,
        seed,
        resolution,
        levels,
    }
}

/// Phase one: sweep nodes in shuffled order, moving each to the neighboring
/// community with the largest positive gain, until a full sweep changes
/// nothing. Gain for joining community `c`:
/// `k_i_in(c) − resolution · Σ_tot(c) · k_i / 2m`, evaluated with the node
/// removed from its own community.
fn local_moves(level: &LevelGraph, resolution: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = level.node_count();
    let mut membership: Vec<usize> = (0..n).collect();
    let mut sigma_tot: Vec<f64> = (0..n).map(|u| level.strength(u)).collect();
    let strengths: Vec<f64> = (0..n).map(|u| level.strength(u)).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut moved_any = false;
    loop {
        let mut moved_in_sweep = false;
        for &u in &order {
            let current = membership[u];
            sigma_tot[current] -= strengths[u];

            // Weight of links from u into each incident community.
            let mut incident: BTreeMap<usize, f64> = BTreeMap::new();
            incident.insert(current, 0.0);
            for &(v, w) in &level.adj[u] {
                *incident.entry(membership[v as usize]).or_insert(0.0) += w;
            }

            let gain_of = |community: usize, k_i_in: f64| {
                k_i_in - resolution * sigma_tot[community] * strengths[u] / level.two_m
            };
            let mut best = current;
            let mut best_gain = gain_of(current, incident[&current]);
            for (&community, &k_i_in) in &incident {
                if community == current {
                    continue;
                }
                let gain = gain_of(community, k_i_in);
                if gain > best_gain {
                    best = community;
                    best_gain = gain;
                }
            }

            membership[u] = best;
            sigma_tot[best] += strengths[u];
            if best != current {
                moved_in_sweep = true;
                moved_any = true;
            }
        }
        if !moved_in_sweep {
            break;
        }
    }
    (membership, moved_any)
}

/// Renumbers labels densely by first appearance in index order.
fn densify(labels: &[usize]) -> Vec<usize> {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut next = 0;
    labels
        .iter()
        .map(|&label| {
            *map.entry(label).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect()
}

/// Phase two: one supernode per community; inter-community weights summed,
/// intra-community weight folded into self-loops.
fn aggregate(level: &LevelGraph, membership: &[usize]) -> LevelGraph {
    let count = membership.iter().max().map_or(0, |&c| c + 1);
    let mut self_loops = vec![0.0; count];
    let mut weights: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for u in 0..level.node_count() {
        let cu = membership[u];
        self_loops[cu] += level.self_loops[u];
        for &(v, w) in &level.adj[u] {
            if (v as usize) < u {
                continue; // each undirected pair once
            }
            let cv = membership[v as usize];
            if cu == cv {
                self_loops[cu] += w;
            } else {
                let key = (cu.min(cv), cu.max(cv));
                *weights.entry(key).or_insert(0.0) += w;
            }
        }
    }
    let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); count];
    for (&(a, b), &w) in &weights {
        adj[a].push((b as u32, w));
        adj[b].push((a as u32, w));
    }
    LevelGraph {
        adj,
        self_loops,
        two_m: level.two_m,
    }
}

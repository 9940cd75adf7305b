//! Community structure: Louvain modularity maximization and per-community
//! summaries.

mod louvain;
mod summary;

pub use louvain::{louvain, CommunityPartition};
pub use summary::{default_stopwords, summarize_communities, CommunitySummary, SummaryOptions};

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use std::collections::BTreeMap;

/// Newman modularity `Q = Σ_c [ e_c/m − (d_c/2m)² ]` of a partition, where
/// `e_c` counts intra-community edges and `d_c` sums member degrees.
/// Labels need not be dense. An edgeless graph scores 0.
pub fn modularity(ug: &UndirectedGraph, assignment: &[usize]) -> Result<f64> {
    if assignment.len() != ug.node_count() {
        return Err(Error::Graph(format!(
            "partition covers {} nodes but the graph has {}",
            assignment.len(),
            ug.node_count()
        )));
    }
    let m = ug.edge_count() as f64;
    if m == 0.0 {
        return Ok(0.0);
    }
    let mut intra: BTreeMap<usize, f64> = BTreeMap::new();
    let mut degree: BTreeMap<usize, f64> = BTreeMap::new();
    for u in 0..ug.node_count() as u32 {
        *degree.entry(assignment[u as usize]).or_insert(0.0) += ug.degree(u) as f64;
    }
    for (u, v) in ug.edges() {
        if assignment[u as usize] == assignment[v as usize] {
            *intra.entry(assignment[u as usize]).or_insert(0.0) += 1.0;
        }
    }
    let mut q = 0.0;
    for (community, d_c) in &degree {
        let e_c = intra.get(community).copied().unwrap_or(0.0);
        let frac = d_c / (2.0 * m);
        q += e_c / m - frac * frac;
    }
    Ok(q)
}

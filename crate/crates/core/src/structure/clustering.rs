//! Average local clustering via one-pass triangle counting.

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Triangles through each node, every triangle counted once per corner.
///
/// Forward algorithm: nodes ordered by (degree, index); each triangle is
/// discovered exactly once at its lowest-ordered corner, in O(m^{3/2}).
pub fn local_triangle_counts(ug: &UndirectedGraph) -> Vec<u64> {
    let n = ug.node_count();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&u| (ug.degree(u), u));
    let mut rank = vec![0u32; n];
    for (r, &u) in order.iter().enumerate() {
        rank[u as usize] = r as u32;
    }

    // Forward lists: neighbors of higher rank, sorted by rank.
    let mut forward: Vec<Vec<u32>> = vec![Vec::new(); n];
    for u in 0..n as u32 {
        let mut fw: Vec<u32> = ug
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| rank[v as usize] > rank[u as usize])
            .collect();
        fw.sort_unstable_by_key(|&v| rank[v as usize]);
        forward[u as usize] = fw;
    }

    let mut triangles = vec![0u64; n];
    for u in 0..n {
        for &v in &forward[u] {
            // Both lists are rank-sorted: two-pointer intersection.
            let (a, b) = (&forward[u], &forward[v as usize]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match rank[a[i] as usize].cmp(&rank[b[j] as usize]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        triangles[u] += 1;
                        triangles[v as usize] += 1;
                        triangles[a[i] as usize] += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    triangles
}

/// Mean over all nodes of `2T(u) / (d(d-1))`; nodes of degree < 2 contribute
/// zero. Errors on an empty graph.
pub fn avg_clustering(ug: &UndirectedGraph) -> Result<f64> {
    let n = ug.node_count();
    if n == 0 {
        return Err(Error::Graph("average clustering of an empty graph".into()));
    }
    let triangles = local_triangle_counts(ug);
    let mut total = 0.0;
    for (u, &t) in triangles.iter().enumerate() {
        let d = ug.degree(u as u32) as f64;
        if d >= 2.0 {
            total += 2.0 * t as f64 / (d * (d - 1.0));
        }
    }
    Ok(total / n as f64)
}

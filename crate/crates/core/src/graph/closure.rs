//! Transitive closure by per-source reachability traversal, and the removal
//! of the base/recommended node sets from a closed graph.

use super::component::giant_component_as;
use super::{DependencyGraph, NodeSetConfig, Variant};
use rayon::prelude::*;

/// Closure of `g`: same node set, edge `(i, j)` for `i != j` present iff `j`
/// is reachable from `i` by a nonempty path. Self-edges arising from cycles
/// are not materialized, keeping the graph simple.
///
/// One BFS per source, fanned out across workers; the merged edge set is
/// deterministic because sources are collected in index order.
pub fn transitive_closure(g: &DependencyGraph) -> DependencyGraph {
    transitive_closure_as(g, Variant::Tc)
}

pub(crate) fn transitive_closure_as(g: &DependencyGraph, variant: Variant) -> DependencyGraph {
    let n = g.node_count();
    let out: Vec<Vec<u32>> = (0..n as u32)
        .into_par_iter()
        .map_init(
            || (vec![false; n], Vec::<u32>::new()),
            |(visited, queue), source| {
                queue.clear();
                let mut reached = Vec::new();
                visited[source as usize] = true;
                queue.extend_from_slice(g.out_neighbors(source));
                for &v in g.out_neighbors(source) {
                    visited[v as usize] = true;
                }
                let mut head = 0;
                while head < queue.len() {
                    let u = queue[head];
                    head += 1;
                    reached.push(u);
                    for &v in g.out_neighbors(u) {
                        if !visited[v as usize] {
                            visited[v as usize] = true;
                            queue.push(v);
                        }
                    }
                }
                // Reset scratch for the next source on this worker.
                visited[source as usize] = false;
                for &u in queue.iter() {
                    visited[u as usize] = false;
                }
                reached.sort_unstable();
                reached
            },
        )
        .collect();

    DependencyGraph::from_parts(
        variant,
        g.names().to_vec(),
        (0..n as u32).map(|u| g.flags(u)).collect(),
        out,
    )
}

/// Drops the configured base and recommended nodes (with incident edges) from
/// a closed graph, then reduces the remainder to its largest weakly connected
/// component. Node-induced subgraphs of a transitively closed graph stay
/// closed, so no re-closure is needed.
pub fn remove_node_sets(g: &DependencyGraph, config: &NodeSetConfig) -> DependencyGraph {
    let keep: Vec<u32> = (0..g.node_count() as u32)
        .filter(|&u| {
            let name = g.name(u);
            !config.is_base(name) && !config.is_recommended(name)
        })
        .collect();
    let reduced = g.induced_subgraph(&keep, Variant::Tcnb);
    giant_component_as(&reduced, Variant::Tcnb)
}

//! Per-package influence and risk scores: direct/transitive dependency
//! counts, degree centrality, vulnerability, and inverse vulnerability.

mod driver;

pub use driver::{driver_nodes, ControllabilityEstimate};

use crate::error::{Error, Result};
use crate::graph::{DependencyGraph, NodeSetConfig};
use serde::{Deserialize, Serialize};

/// One row of the vulnerability table.
///
/// `dd`/`td` are in-degrees in the direct graph and its closure (reverse
/// dependencies); `dc = td/(n-1)` is the normalized degree centrality on the
/// closed graph, numerically identical to the vulnerability fraction `v`.
/// `inverse_v` mirrors the construction on out-degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeScoreRow {
    pub package: String,
    pub dd: usize,
    pub td: usize,
    pub dc: f64,
    pub v: f64,
    pub out_direct: usize,
    pub out_transitive: usize,
    pub inverse_v: f64,
}

/// Scores every node given the direct graph and its transitive closure.
/// The two graphs must carry the same node set in the same order.
pub fn vulnerability_table(
    gc: &DependencyGraph,
    tc: &DependencyGraph,
) -> Result<Vec<NodeScoreRow>> {
    if gc.names() != tc.names() {
        return Err(Error::Graph(format!(
            "node sets of the direct graph ({} nodes) and closure ({} nodes) do not align",
            gc.node_count(),
            tc.node_count()
        )));
    }
    let n = gc.node_count();
    if n < 2 {
        return Err(Error::Graph(
            "vulnerability needs at least two nodes".into(),
        ));
    }
    let denom = n as f64 - 1.0;
    let rows = (0..n as u32)
        .map(|u| {
            let td = tc.in_degree(u);
            let out_transitive = tc.out_degree(u);
            let dc = td as f64 / denom;
            NodeScoreRow {
                package: gc.name(u).to_string(),
                dd: gc.in_degree(u),
                td,
                dc,
                v: dc,
                out_direct: gc.out_degree(u),
                out_transitive,
                inverse_v: out_transitive as f64 / denom,
            }
        })
        .collect();
    Ok(rows)
}

/// Top `k` rows by vulnerability, ties broken by transitive dependents then
/// name. `exclude` drops base/recommended packages before ranking.
pub fn top_influential(
    rows: &[NodeScoreRow],
    k: usize,
    exclude: Option<&NodeSetConfig>,
) -> Vec<NodeScoreRow> {
    let mut kept: Vec<&NodeScoreRow> = rows
        .iter()
        .filter(|row| match exclude {
            Some(config) => !config.is_base(&row.package) && !config.is_recommended(&row.package),
            None => true,
        })
        .collect();
    kept.sort_by(|a, b| {
        b.v.partial_cmp(&a.v)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.td.cmp(&a.td))
            .then(a.package.cmp(&b.package))
    });
    kept.into_iter().take(k).cloned().collect()
}

/// Rows whose transitive dependency count exceeds `threshold`, descending,
/// ties broken by name.
pub fn heavy_dependents(rows: &[NodeScoreRow], threshold: usize) -> Vec<NodeScoreRow> {
    let mut kept: Vec<&NodeScoreRow> = rows
        .iter()
        .filter(|r| r.out_transitive > threshold)
        .collect();
    kept.sort_by(|a, b| {
        b.out_transitive
            .cmp(&a.out_transitive)
            .then(a.package.cmp(&b.package))
    });
    kept.into_iter().cloned().collect()
}

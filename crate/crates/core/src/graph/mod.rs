//! Directed dependency graph and its derived variants: full network, giant
//! component, transitive closure, and closure minus base packages.

mod closure;
mod component;
mod er;
pub mod io;
mod undirected;

pub use closure::{remove_node_sets, transitive_closure};
pub use component::giant_component;
pub use er::er_random_graph;
pub use undirected::{undirected_projection, UndirectedGraph};

use crate::error::{Error, Result};
use crate::ingest::{Origin, PackageRecord};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Which derivation of the network a graph represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Gc,
    Tc,
    Tcnb,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Gc => "gc",
            Variant::Tc => "tc",
            Variant::Tcnb => "tcnb",
        }
    }
}

/// Per-node flags assigned at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeFlags {
    pub is_base: bool,
    pub is_recommended: bool,
    pub origin: Origin,
}

/// The base and recommended package sets bundled with the language
/// distribution. Defaults are the 14 base and 15 recommended R packages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeSetConfig {
    pub base: Vec<String>,
    pub recommended: Vec<String>,
}

pub const DEFAULT_BASE_PACKAGES: [&str; 14] = [
    "base",
    "compiler",
    "datasets",
    "grDevices",
    "graphics",
    "grid",
    "methods",
    "parallel",
    "splines",
    "stats",
    "stats4",
    "tcltk",
    "tools",
    "utils",
];

pub const DEFAULT_RECOMMENDED_PACKAGES: [&str; 15] = [
    "KernSmooth",
    "MASS",
    "Matrix",
    "boot",
    "class",
    "cluster",
    "codetools",
    "foreign",
    "lattice",
    "mgcv",
    "nlme",
    "nnet",
    "rpart",
    "spatial",
    "survival",
];

impl Default for NodeSetConfig {
    fn default() -> Self {
        NodeSetConfig {
            base: DEFAULT_BASE_PACKAGES
                .iter()
                .map(|s| s.to_string())
                .collect(),
            recommended: DEFAULT_RECOMMENDED_PACKAGES
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

impl NodeSetConfig {
    /// Validates that the two lists are disjoint.
    pub fn new(base: Vec<String>, recommended: Vec<String>) -> Result<Self> {
        let base_set: std::collections::HashSet<&String> = base.iter().collect();
        if let Some(overlap) = recommended.iter().find(|name| base_set.contains(name)) {
            return Err(Error::Graph(format!(
                "base and recommended package sets overlap on {overlap:?}"
            )));
        }
        Ok(NodeSetConfig { base, recommended })
    }

    pub fn is_base(&self, name: &str) -> bool {
        self.base.iter().any(|b| b == name)
    }

    pub fn is_recommended(&self, name: &str) -> bool {
        self.recommended.iter().any(|r| r == name)
    }
}

/// Directed dependency graph with stable, dense node indexing.
///
/// Edge `(i, j)` means package `i` imports or depends on package `j`.
/// Simple by construction: no self-loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyGraph {
    variant: Variant,
    names: Vec<String>,
    index: HashMap<String, u32>,
    flags: Vec<NodeFlags>,
    out: Vec<Vec<u32>>,
    ins: Vec<Vec<u32>>,
    edge_count: usize,
}

impl DependencyGraph {
    /// Builds a graph from explicit node and edge lists. Names must be
    /// unique and edge endpoints in range; self-loops and duplicate edges
    /// are dropped.
    pub fn from_edges(
        variant: Variant,
        names: Vec<String>,
        flags: Vec<NodeFlags>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let n = names.len();
        if flags.len() != n {
            return Err(Error::Graph(format!(
                "{n} names but {} flag entries",
                flags.len()
            )));
        }
        let distinct: std::collections::HashSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Graph("node names must be unique".into()));
        }
        let mut out = vec![Vec::new(); n];
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Graph(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            out[u as usize].push(v);
        }
        Ok(DependencyGraph::from_parts(variant, names, flags, out))
    }

    /// Convenience for graphs whose nodes need no flags or names beyond an
    /// index: nodes are named `n0, n1, ...`.
    pub fn from_indexed_edges(
        variant: Variant,
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let names = (0..n).map(|i| format!("n{i}")).collect();
        let flags = vec![
            NodeFlags {
                is_base: false,
                is_recommended: false,
                origin: Origin::Unknown
            };
            n
        ];
        DependencyGraph::from_edges(variant, names, flags, edges)
    }

    /// Assembles a graph from named parts. Out-lists may be unsorted and may
    /// contain duplicates or self-loops; both are dropped here.
    pub(crate) fn from_parts(
        variant: Variant,
        names: Vec<String>,
        flags: Vec<NodeFlags>,
        mut out: Vec<Vec<u32>>,
    ) -> Self {
        debug_assert_eq!(names.len(), flags.len());
        debug_assert_eq!(names.len(), out.len());
        let mut edge_count = 0;
        for (u, targets) in out.iter_mut().enumerate() {
            targets.sort_unstable();
            targets.dedup();
            targets.retain(|&v| v as usize != u);
            edge_count += targets.len();
        }
        let mut ins = vec![Vec::new(); names.len()];
        for (u, targets) in out.iter().enumerate() {
            for &v in targets {
                ins[v as usize].push(u as u32);
            }
        }
        // In-lists come out sorted because sources are visited in order.
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        DependencyGraph {
            variant,
            names,
            index,
            flags,
            out,
            ins,
            edge_count,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, node: u32) -> &str {
        &self.names[node as usize]
    }

    pub fn node_id(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn flags(&self, node: u32) -> NodeFlags {
        self.flags[node as usize]
    }

    pub fn out_neighbors(&self, node: u32) -> &[u32] {
        &self.out[node as usize]
    }

    pub fn in_neighbors(&self, node: u32) -> &[u32] {
        &self.ins[node as usize]
    }

    pub fn out_degree(&self, node: u32) -> usize {
        self.out[node as usize].len()
    }

    pub fn in_degree(&self, node: u32) -> usize {
        self.ins[node as usize].len()
    }

    pub fn total_degree(&self, node: u32) -> usize {
        self.out_degree(node) + self.in_degree(node)
    }

    pub fn has_edge(&self, from: u32, to: u32) -> bool {
        self.out[from as usize].binary_search(&to).is_ok()
    }

    /// Average degree `k = 2E/N`.
    pub fn avg_degree(&self) -> f64 {
        if self.names.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.names.len() as f64
        }
    }

    /// Directed density `E / (n(n-1))`.
    pub fn density(&self) -> f64 {
        let n = self.names.len();
        if n < 2 {
            return 0.0;
        }
        self.edge_count as f64 / (n as f64 * (n as f64 - 1.0))
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, targets)| targets.iter().map(move |&v| (u as u32, v)))
    }

    /// Induced subgraph on `keep` (indices into this graph), preserving the
    /// nodes' relative order and all edges among them.
    pub fn induced_subgraph(&self, keep: &[u32], variant: Variant) -> DependencyGraph {
        let mut remap = vec![u32::MAX; self.names.len()];
        for (new_id, &old_id) in keep.iter().enumerate() {
            remap[old_id as usize] = new_id as u32;
        }
        let names = keep
            .iter()
            .map(|&i| self.names[i as usize].clone())
            .collect();
        let flags = keep.iter().map(|&i| self.flags[i as usize]).collect();
        let out = keep
            .iter()
            .map(|&i| {
                self.out[i as usize]
                    .iter()
                    .filter_map(|&v| {
                        let new = remap[v as usize];
                        (new != u32::MAX).then_some(new)
                    })
                    .collect()
            })
            .collect();
        DependencyGraph::from_parts(variant, names, flags, out)
    }
}

/// Log of non-fatal events produced while building a graph.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct BuildLog {
    /// Names referenced as dependencies but absent from the records, with
    /// how many packages referenced each; first-reference order.
    pub missing_dependencies: Vec<(String, usize)>,
    pub skipped_records: Vec<String>,
}

impl BuildLog {
    pub fn lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for msg in &self.skipped_records {
            lines.push(format!("skipped record: {msg}"));
        }
        for (name, referrers) in &self.missing_dependencies {
            lines.push(format!(
                "missing dependency node: {name} (referenced by {referrers} package{})",
                if *referrers == 1 { "" } else { "s" }
            ));
        }
        lines
    }
}

/// Builds the full dependency network: one node per record, one flagged node
/// per referenced-but-missing name, one edge per distinct element of
/// imports ∪ depends. Suggests never create edges.
pub fn build_graph(
    records: &[PackageRecord],
    config: &NodeSetConfig,
) -> Result<(DependencyGraph, BuildLog)> {
    let mut names: Vec<String> = Vec::with_capacity(records.len());
    let mut index: HashMap<String, u32> = HashMap::with_capacity(records.len());
    for record in records {
        if index.contains_key(&record.name) {
            return Err(Error::Graph(format!(
                "duplicate record name {:?}: record names must be unique",
                record.name
            )));
        }
        index.insert(record.name.clone(), names.len() as u32);
        names.push(record.name.clone());
    }

    let record_count = names.len();
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); record_count];
    let mut missing: Vec<(String, usize)> = Vec::new();
    let mut missing_index: HashMap<String, usize> = HashMap::new();

    for (u, record) in records.iter().enumerate() {
        for dep in record.imports.iter().chain(record.depends.iter()) {
            let v = match index.get(dep) {
                Some(&v) => v,
                None => {
                    let v = names.len() as u32;
                    index.insert(dep.clone(), v);
                    names.push(dep.clone());
                    out.push(Vec::new());
                    missing_index.insert(dep.clone(), missing.len());
                    missing.push((dep.clone(), 0));
                    v
                }
            };
            if let Some(&slot) = missing_index.get(dep) {
                // Count each referencing record once; a name listed in both
                // imports and depends shows up twice in this loop.
                if !out[u].contains(&v) {
                    missing[slot].1 += 1;
                }
            }
            out[u].push(v);
        }
    }

    let flags = names
        .iter()
        .enumerate()
        .map(|(i, name)| NodeFlags {
            is_base: config.is_base(name),
            is_recommended: config.is_recommended(name),
            origin: if i < record_count {
                records[i].origin
            } else {
                Origin::Unknown
            },
        })
        .collect();

    let graph = DependencyGraph::from_parts(Variant::Full, names, flags, out);
    let log = BuildLog {
        missing_dependencies: missing,
        skipped_records: Vec::new(),
    };
    Ok((graph, log))
}

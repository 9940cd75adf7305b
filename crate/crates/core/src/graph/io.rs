//! Graph export and import: edge-list CSV, node-table CSV, build log.
//!
//! Package names contain no whitespace or commas (enforced at parse time), so
//! plain comma-separated lines are unambiguous.

use super::{DependencyGraph, NodeFlags, NodeSetConfig, Variant};
use crate::error::{Error, Result};
use crate::ingest::Origin;
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

/// Writes `source,target` rows, one edge per line, node order by index.
pub fn export_edge_csv(g: &DependencyGraph, path: &Path) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "source,target")?;
    for (u, v) in g.edges() {
        writeln!(w, "{},{}", g.name(u), g.name(v))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `name,is_base,is_recommended,origin` rows. When `communities` is
/// given, a `community` column is appended (empty for unassigned nodes).
pub fn export_node_csv(
    g: &DependencyGraph,
    path: &Path,
    communities: Option<&HashMap<String, usize>>,
) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    match communities {
        Some(_) => writeln!(w, "name,is_base,is_recommended,origin,community")?,
        None => writeln!(w, "name,is_base,is_recommended,origin")?,
    }
    for u in 0..g.node_count() as u32 {
        let f = g.flags(u);
        match communities {
            Some(map) => {
                let community = map
                    .get(g.name(u))
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                writeln!(
                    w,
                    "{},{},{},{},{community}",
                    g.name(u),
                    f.is_base,
                    f.is_recommended,
                    f.origin.as_str()
                )?;
            }
            None => writeln!(
                w,
                "{},{},{},{}",
                g.name(u),
                f.is_base,
                f.is_recommended,
                f.origin.as_str()
            )?,
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads an edge-list CSV (optionally with a node-table CSV for flags) back
/// into a FULL-variant graph. Nodes appear in node-table order first, then in
/// first-reference order from the edge list.
pub fn import_edge_csv(
    edges_path: &Path,
    nodes_path: Option<&Path>,
    config: &NodeSetConfig,
) -> Result<DependencyGraph> {
    let mut names: Vec<String> = Vec::new();
    let mut flags: Vec<NodeFlags> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();

    let intern = |name: &str,
                  names: &mut Vec<String>,
                  flags: &mut Vec<NodeFlags>,
                  index: &mut HashMap<String, u32>|
     -> u32 {
        if let Some(&id) = index.get(name) {
            return id;
        }
        let id = names.len() as u32;
        index.insert(name.to_string(), id);
        names.push(name.to_string());
        flags.push(NodeFlags {
            is_base: config.is_base(name),
            is_recommended: config.is_recommended(name),
            origin: Origin::Unknown,
        });
        id
    };

    if let Some(nodes_path) = nodes_path {
        let text = std::fs::read_to_string(nodes_path)?;
        for (line_no, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() < 4 {
                return Err(Error::Parse(format!(
                    "{}:{}: expected name,is_base,is_recommended,origin",
                    nodes_path.display(),
                    line_no + 1
                )));
            }
            let id = intern(cols[0], &mut names, &mut flags, &mut index);
            flags[id as usize] = NodeFlags {
                is_base: cols[1] == "true",
                is_recommended: cols[2] == "true",
                origin: Origin::parse(cols[3]).unwrap_or(Origin::Unknown),
            };
        }
    }

    let text = std::fs::read_to_string(edges_path)?;
    let mut out_edges: Vec<(u32, u32)> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line_no == 0 || line.trim().is_empty() {
            continue; // header
        }
        let (source, target) = line.split_once(',').ok_or_else(|| {
            Error::Parse(format!(
                "{}:{}: expected source,target",
                edges_path.display(),
                line_no + 1
            ))
        })?;
        let u = intern(source.trim(), &mut names, &mut flags, &mut index);
        let v = intern(target.trim(), &mut names, &mut flags, &mut index);
        out_edges.push((u, v));
    }

    let mut out = vec![Vec::new(); names.len()];
    for (u, v) in out_edges {
        out[u as usize].push(v);
    }
    Ok(DependencyGraph::from_parts(
        Variant::Full,
        names,
        flags,
        out,
    ))
}

pub fn write_build_log(lines: &[String], path: &Path) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    for line in lines {
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::ingest::PackageRecord;

    #[test]
    fn edge_csv_round_trip() {
        let records = vec![
            {
                let mut r = PackageRecord::new("a");
                r.imports = vec!["b".into(), "stats".into()];
                r
            },
            PackageRecord::new("b"),
        ];
        let config = NodeSetConfig::default();
        let (g, _) = build_graph(&records, &config).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("edges.csv");
        let nodes = dir.path().join("nodes.csv");
        export_edge_csv(&g, &edges).unwrap();
        export_node_csv(&g, &nodes, None).unwrap();

        let back = import_edge_csv(&edges, Some(&nodes), &config).unwrap();
        assert_eq!(back.node_count(), g.node_count());
        assert_eq!(back.edge_count(), g.edge_count());
        for u in 0..g.node_count() as u32 {
            let name = g.name(u);
            let v = back.node_id(name).unwrap();
            assert_eq!(back.flags(v).is_base, g.flags(u).is_base);
            for &t in g.out_neighbors(u) {
                let tv = back.node_id(g.name(t)).unwrap();
                assert!(back.has_edge(v, tv));
            }
        }
    }

    #[test]
    fn import_without_node_table_applies_config_flags() {
        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("edges.csv");
        std::fs::write(&edges, "source,target\na,stats\n").unwrap();
        let g = import_edge_csv(&edges, None, &NodeSetConfig::default()).unwrap();
        let stats = g.node_id("stats").unwrap();
        assert!(g.flags(stats).is_base);
    }
}

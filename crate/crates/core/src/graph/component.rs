//! Weakly connected components over the undirected view of the graph.

use super::{DependencyGraph, Variant};

/// Labels every node with a component id (ids in first-seen order) and
/// returns the label vector plus the number of components.
pub(crate) fn weak_components(g: &DependencyGraph) -> (Vec<u32>, usize) {
    let n = g.node_count();
    let mut label = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for start in 0..n as u32 {
        if label[start as usize] != u32::MAX {
            continue;
        }
        label[start as usize] = next;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &v in g.out_neighbors(u).iter().chain(g.in_neighbors(u)) {
                if label[v as usize] == u32::MAX {
                    label[v as usize] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    (label, next as usize)
}

/// Induced subgraph on the largest weakly connected component, direction
/// preserved. Ties broken by node count, then edge count, then smallest
/// minimum node index; with first-seen component ids the last rule reduces to
/// the smallest id.
pub fn giant_component(g: &DependencyGraph) -> DependencyGraph {
    giant_component_as(g, Variant::Gc)
}

pub(crate) fn giant_component_as(g: &DependencyGraph, variant: Variant) -> DependencyGraph {
    if g.node_count() == 0 {
        return g.induced_subgraph(&[], variant);
    }
    let (label, count) = weak_components(g);
    let mut nodes = vec![0usize; count];
    let mut edges = vec![0usize; count];
    for u in 0..g.node_count() as u32 {
        nodes[label[u as usize] as usize] += 1;
        edges[label[u as usize] as usize] += g.out_degree(u);
    }
    let mut best = 0usize;
    for c in 1..count {
        if (nodes[c], edges[c]) > (nodes[best], edges[best]) {
            best = c;
        }
    }
    let keep: Vec<u32> = (0..g.node_count() as u32)
        .filter(|&u| label[u as usize] == best as u32)
        .collect();
    g.induced_subgraph(&keep, variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, NodeSetConfig};
    use crate::ingest::PackageRecord;

    fn graph_from(edges: &[(&str, &str)], extra_nodes: &[&str]) -> DependencyGraph {
        let mut recs: std::collections::BTreeMap<&str, PackageRecord> = Default::default();
        for &(a, b) in edges {
            recs.entry(a)
                .or_insert_with(|| PackageRecord::new(a))
                .imports
                .push(b.to_string());
            recs.entry(b).or_insert_with(|| PackageRecord::new(b));
        }
        for &n in extra_nodes {
            recs.entry(n).or_insert_with(|| PackageRecord::new(n));
        }
        let records: Vec<PackageRecord> = recs.into_values().collect();
        build_graph(&records, &NodeSetConfig::default()).unwrap().0
    }

    #[test]
    fn two_triangles_and_a_pair_tie_broken_by_min_index() {
        // Triangles t0 and u0 tie on nodes and edges; t0 holds the smaller
        // minimum node index (BTreeMap orders t* before u*).
        let g = graph_from(
            &[
                ("t0", "t1"),
                ("t1", "t2"),
                ("t2", "t0"),
                ("u0", "u1"),
                ("u1", "u2"),
                ("u2", "u0"),
                ("x0", "x1"),
            ],
            &[],
        );
        let gc = giant_component(&g);
        assert_eq!(gc.node_count(), 3);
        let mut names: Vec<&str> = gc.names().iter().map(|s| s.as_str()).collect();
        names.sort_unstable();
        assert_eq!(names, vec!["t0", "t1", "t2"]);
    }

    #[test]
    fn empty_graph_yields_empty_result() {
        let g = graph_from(&[], &[]);
        let gc = giant_component(&g);
        assert_eq!(gc.node_count(), 0);
        assert_eq!(gc.edge_count(), 0);
    }

    #[test]
    fn direction_preserved() {
        let g = graph_from(&[("a", "b"), ("b", "c")], &["lonely"]);
        let gc = giant_component(&g);
        assert_eq!(gc.node_count(), 3);
        let a = gc.node_id("a").unwrap();
        let b = gc.node_id("b").unwrap();
        assert!(gc.has_edge(a, b));
        assert!(!gc.has_edge(b, a));
    }

    #[test]
    fn membership_matches_union_find_oracle() {
        use rand::{Rng, SeedableRng};

        // Union-find over the undirected projection.
        struct Dsu(Vec<usize>);
        impl Dsu {
            fn find(&mut self, x: usize) -> usize {
                if self.0[x] != x {
                    let root = self.find(self.0[x]);
                    self.0[x] = root;
                }
                self.0[x]
            }
            fn union(&mut self, a: usize, b: usize) {
                let (ra, rb) = (self.find(a), self.find(b));
                if ra != rb {
                    self.0[ra] = rb;
                }
            }
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n: usize = rng.gen_range(1..=64);
            let mut out = vec![Vec::new(); n];
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(1.5 / n as f64) {
                        out[u].push(v as u32);
                    }
                }
            }
            let names = (0..n).map(|i| format!("n{i:02}")).collect();
            let flags = vec![
                super::super::NodeFlags {
                    is_base: false,
                    is_recommended: false,
                    origin: crate::ingest::Origin::MainRegistry,
                };
                n
            ];
            let g = DependencyGraph::from_parts(Variant::Full, names, flags, out);

            let mut dsu = Dsu((0..n).collect());
            for (u, v) in g.edges() {
                dsu.union(u as usize, v as usize);
            }
            let (label, _) = weak_components(&g);
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(
                        label[u] == label[v],
                        dsu.find(u) == dsu.find(v),
                        "component disagreement on nodes {u},{v}"
                    );
                }
            }
        }
    }
}

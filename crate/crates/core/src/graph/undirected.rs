//! Undirected simple-graph view used by the clustering, path-length, and
//! community computations.

use super::DependencyGraph;

/// Undirected simple graph over dense node indices. Node ids match the graph
/// it was projected from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl UndirectedGraph {
    /// Builds from an adjacency list that may contain duplicates or
    /// self-loops; both are removed and the lists mirrored.
    pub fn from_adjacency(mut adj: Vec<Vec<u32>>) -> Self {
        let n = adj.len();
        let mut mirrored: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, neighbors) in adj.iter_mut().enumerate() {
            for &v in neighbors.iter() {
                if (v as usize) < n && v as usize != u {
                    mirrored[u].push(v);
                    mirrored[v as usize].push(u as u32);
                }
            }
        }
        let mut edge_count = 0;
        for list in &mut mirrored {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        UndirectedGraph {
            adj: mirrored,
            edge_count: edge_count / 2,
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u as usize].push(v);
        }
        UndirectedGraph::from_adjacency(adj)
    }

    /// Trusted constructor for lists already mirrored, sorted, and free of
    /// duplicates and self-loops.
    pub(crate) fn from_sorted_parts(adj: Vec<Vec<u32>>, edge_count: usize) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        UndirectedGraph { adj, edge_count }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, node: u32) -> usize {
        self.adj[node as usize].len()
    }

    pub fn neighbors(&self, node: u32) -> &[u32] {
        &self.adj[node as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Unordered pairs, each reported once with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, neighbors)| {
            neighbors
                .iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    /// True when every node is reachable from node 0 (empty graphs count as
    /// connected).
    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Largest connected component as a new graph plus the kept node ids
    /// (ascending). Ties broken like the directed variant: node count, edge
    /// count, then smallest minimum node index.
    pub fn giant_component(&self) -> (UndirectedGraph, Vec<u32>) {
        let n = self.adj.len();
        if n == 0 {
            return (
                UndirectedGraph {
                    adj: Vec::new(),
                    edge_count: 0,
                },
                Vec::new(),
            );
        }
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
                for &v in self.neighbors(u) {
                    if label[v as usize] == u32::MAX {
                        label[v as usize] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        let mut nodes = vec![0usize; next as usize];
        let mut degree_sum = vec![0usize; next as usize];
        for u in 0..n {
            nodes[label[u] as usize] += 1;
            degree_sum[label[u] as usize] += self.adj[u].len();
        }
        let mut best = 0usize;
        for c in 1..next as usize {
            if (nodes[c], degree_sum[c]) > (nodes[best], degree_sum[best]) {
                best = c;
            }
        }
        let keep: Vec<u32> = (0..n as u32)
            .filter(|&u| label[u as usize] == best as u32)
            .collect();
        let mut remap = vec![u32::MAX; n];
        for (new_id, &old_id) in keep.iter().enumerate() {
            remap[old_id as usize] = new_id as u32;
        }
        let adj: Vec<Vec<u32>> = keep
            .iter()
            .map(|&old| {
                self.adj[old as usize]
                    .iter()
                    .map(|&v| remap[v as usize])
                    .collect()
            })
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (UndirectedGraph { adj, edge_count }, keep)
    }
}

/// Collapses each directed edge to an undirected one; antiparallel pairs
/// become a single edge.
pub fn undirected_projection(g: &DependencyGraph) -> UndirectedGraph {
    let adj = (0..g.node_count() as u32)
        .map(|u| g.out_neighbors(u).to_vec())
        .collect();
    UndirectedGraph::from_adjacency(adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{NodeFlags, Variant};
    use crate::ingest::Origin;

    fn digraph(n: usize, edges: &[(u32, u32)]) -> DependencyGraph {
        let mut out = vec![Vec::new(); n];
        for &(u, v) in edges {
            out[u as usize].push(v);
        }
        DependencyGraph::from_parts(
            Variant::Full,
            (0..n).map(|i| format!("n{i}")).collect(),
            vec![
                NodeFlags {
                    is_base: false,
                    is_recommended: false,
                    origin: Origin::MainRegistry
                };
                n
            ],
            out,
        )
    }

    #[test]
    fn antiparallel_pair_collapses() {
        let ug = undirected_projection(&digraph(2, &[(0, 1), (1, 0)]));
        assert_eq!(ug.edge_count(), 1);
        assert!(ug.has_edge(0, 1));
    }

    #[test]
    fn directed_triangle_projects_to_triangle() {
        let ug = undirected_projection(&digraph(3, &[(0, 1), (1, 2), (2, 0)]));
        assert_eq!(ug.edge_count(), 3);
        assert_eq!(ug.degree(0), 2);
    }

    #[test]
    fn projection_matches_pair_scan_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..40 {
            let n: usize = rng.gen_range(2..=40);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in 0..n as u32 {
                    if u != v && rng.gen_bool(0.15) {
                        edges.push((u, v));
                    }
                }
            }
            let g = digraph(n, &edges);
            let ug = undirected_projection(&g);
            // Brute-force pair scan: count unordered pairs with at least one
            // directed edge between them.
            let mut expected = 0;
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if g.has_edge(u, v) || g.has_edge(v, u) {
                        expected += 1;
                        assert!(ug.has_edge(u, v));
                    } else {
                        assert!(!ug.has_edge(u, v));
                    }
                }
            }
            assert_eq!(ug.edge_count(), expected);
        }
    }

    #[test]
    fn giant_component_of_undirected() {
        let ug = UndirectedGraph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]);
        let (gc, kept) = ug.giant_component();
        assert_eq!(gc.node_count(), 3);
        assert_eq!(kept, vec![0, 1, 2]);
        assert!(!ug.is_connected());
        assert!(gc.is_connected());
    }
}

//! Erdős–Rényi G(n, p) generation for baseline comparisons.

use super::undirected::UndirectedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n, p) with `p = 2e / (n(n-1))`, i.e. `k/(n-1)` for `k = 2e/n`: every
/// unordered pair is linked independently with probability `p`, reproducibly
/// from `seed`. Returns the graph and a warning when `p` had to be clamped
/// to 1.
pub fn er_random_graph(n: usize, e: usize, seed: u64) -> (UndirectedGraph, Option<String>) {
    assert!(n >= 2, "er_random_graph needs at least two nodes");
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    let p = e as f64 / pairs;
    let (p, warning) = if p > 1.0 {
        (
            1.0,
            Some(format!(
                "requested edge count {e} exceeds the {pairs} available pairs; p clamped to 1"
            )),
        )
    } else {
        (p, None)
    };

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut push = |u: usize, v: usize| {
        adj[u].push(v as u32);
        adj[v].push(u as u32);
    };

    if p >= 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                push(u, v);
            }
        }
    } else if p > 0.0 {
        // Geometric gap sampling over the pair sequence (Batagelj–Brandes):
        // each pair is still an independent Bernoulli(p) draw, in O(n + m).
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        let mut v: i64 = 1;
        let mut w: i64 = -1;
        while (v as usize) < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v && (v as usize) < n {
                w -= v;
                v += 1;
            }
            if (v as usize) < n {
                push(v as usize, w as usize);
            }
        }
    }

    let mut edge_count = 0;
    for list in &mut adj {
        list.sort_unstable();
        edge_count += list.len();
    }
    (
        UndirectedGraph::from_sorted_parts(adj, edge_count / 2),
        warning,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_nodes_one_edge_is_deterministic() {
        let (g, warning) = er_random_graph(2, 1, 0);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
        assert!(warning.is_none());
    }

    #[test]
    fn p_above_one_clamps_with_warning() {
        let (g, warning) = er_random_graph(3, 10, 0);
        assert_eq!(g.edge_count(), 3);
        assert!(warning.is_some());
    }

    #[test]
    fn reproducible_from_seed() {
        let (a, _) = er_random_graph(100, 300, 99);
        let (b, _) = er_random_graph(100, 300, 99);
        assert_eq!(a, b);
        let (c, _) = er_random_graph(100, 300, 100);
        assert_ne!(a, c);
    }

    #[test]
    fn mean_edge_count_matches_binomial_oracle() {
        // Binomial statistics: M = n(n-1)/2 pairs, mean M·p = e,
        // variance M·p(1-p).
        let n = 1000;
        let e = 5000;
        let trials = 100;
        let total: usize = (0..trials)
            .map(|s| er_random_graph(n, e, s as u64).0.edge_count())
            .sum();
        let mean = total as f64 / trials as f64;
        let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
        let p = e as f64 / pairs;
        let sigma = (pairs * p * (1.0 - p)).sqrt();
        let bound = 3.0 * sigma / (trials as f64).sqrt();
        assert!(
            (mean - e as f64).abs() <= bound,
            "mean {mean} outside {e} ± {bound}"
        );
    }

    #[test]
    fn zero_edges_requested() {
        let (g, _) = er_random_graph(10, 0, 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn giant_component_equivalent_realizes_expected_degree() {
        // Reference parameterization: n = 13838, e = 66574 gives an expected
        // degree of 2e/n = 9.622.
        let (n, e) = (13_838usize, 66_574usize);
        let (g, warning) = er_random_graph(n, e, 17);
        assert!(warning.is_none());
        let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
        let p = e as f64 / pairs;
        let sigma = (pairs * p * (1.0 - p)).sqrt();
        assert!((g.edge_count() as f64 - e as f64).abs() <= 4.0 * sigma);
        let mean_degree = 2.0 * g.edge_count() as f64 / n as f64;
        assert!(
            (mean_degree - 9.622).abs() < 0.15,
            "mean degree {mean_degree}"
        );
    }
}

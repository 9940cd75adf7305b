//! Exact degree histograms with probability density and complementary
//! cumulative distribution points for log-log plotting.

use crate::error::{Error, Result};
use crate::graph::DependencyGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    Total,
    In,
    Out,
}

impl DegreeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DegreeKind::Total => "total",
            DegreeKind::In => "in",
            DegreeKind::Out => "out",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    pub kind: DegreeKind,
    /// Exact counts per observed degree.
    pub histogram: BTreeMap<usize, usize>,
    /// `(k, p(k))` with `p(k) = count(k) / n`, ascending in `k`.
    pub pdf: Vec<(usize, f64)>,
    /// `(k, P(K >= k))` by suffix sum; non-increasing, 1 at the minimum
    /// observed degree.
    pub ccdf: Vec<(usize, f64)>,
    pub sample_count: usize,
}

pub fn degree_distribution(g: &DependencyGraph, kind: DegreeKind) -> Result<DegreeDistribution> {
    if g.node_count() == 0 {
        return Err(Error::Graph("degree distribution of an empty graph".into()));
    }
    let degrees = (0..g.node_count() as u32).map(|u| match kind {
        DegreeKind::Total => g.total_degree(u),
        DegreeKind::In => g.in_degree(u),
        DegreeKind::Out => g.out_degree(u),
    });
    Ok(DegreeDistribution::from_degrees(kind, degrees))
}

impl DegreeDistribution {
    pub fn from_degrees<I: IntoIterator<Item = usize>>(kind: DegreeKind, degrees: I) -> Self {
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        let mut sample_count = 0usize;
        for d in degrees {
            *histogram.entry(d).or_insert(0) += 1;
            sample_count += 1;
        }
        let n = sample_count as f64;
        let pdf: Vec<(usize, f64)> = histogram.iter().map(|(&k, &c)| (k, c as f64 / n)).collect();
        let mut ccdf: Vec<(usize, f64)> = Vec::with_capacity(histogram.len());
        let mut suffix = 0usize;
        for (&k, &c) in histogram.iter().rev() {
            suffix += c;
            ccdf.push((k, suffix as f64 / n));
        }
        ccdf.reverse();
        DegreeDistribution {
            kind,
            histogram,
            pdf,
            ccdf,
            sample_count,
        }
    }

    pub fn mean(&self) -> f64 {
        let total: usize = self.histogram.iter().map(|(&k, &c)| k * c).sum();
        total as f64 / self.sample_count as f64
    }

    pub fn max_degree(&self) -> usize {
        self.histogram.keys().next_back().copied().unwrap_or(0)
    }
}

//! Per-community summaries: size share, representative and critical
//! packages, and description keywords.

use super::CommunityPartition;
use crate::error::{Error, Result};
use crate::graph::DependencyGraph;
use crate::ingest::PackageRecord;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Debug, Clone, Copy)]
pub struct SummaryOptions {
    /// Communities below this share of all nodes collapse into one
    /// aggregate row.
    pub share_threshold: f64,
    pub top_k_words: usize,
    /// How many sample/critical packages to list.
    pub list_len: usize,
}

impl Default for SummaryOptions {
    fn default() -> Self {
        SummaryOptions {
            share_threshold: 0.01,
            top_k_words: 30,
            list_len: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunitySummary {
    /// Community id; `None` marks the aggregate row for the sub-threshold
    /// remainder.
    pub community: Option<usize>,
    pub size: usize,
    pub share: f64,
    /// Highest direct in-degree members, base/recommended excluded.
    pub sample_packages: Vec<String>,
    /// Highest transitive in-degree members, base packages allowed.
    pub critical_packages: Vec<String>,
    /// Top description terms by frequency after stopword removal.
    pub keywords: Vec<String>,
}

/// Summarizes a partition of `gc`'s nodes. `tc` supplies transitive in-degrees
/// for the critical-package ranking; descriptions come from `records`.
/// Rows are ordered largest community first, aggregate row last; shares over
/// all rows sum to 1.
pub fn summarize_communities(
    partition: &CommunityPartition,
    gc: &DependencyGraph,
    tc: &DependencyGraph,
    records: &[PackageRecord],
    stopwords: &HashSet<String>,
    opts: &SummaryOptions,
) -> Result<Vec<CommunitySummary>> {
    let n = gc.node_count();
    if partition.assignment.len() != n {
        return Err(Error::Graph(format!(
            "partition covers {} nodes but the graph has {n}",
            partition.assignment.len()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let descriptions: HashMap<&str, &str> = records
        .iter()
        .map(|r| (r.name.as_str(), r.description.as_str()))
        .collect();

    let mut members: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (node, &community) in partition.assignment.iter().enumerate() {
        members.entry(community).or_default().push(node as u32);
    }

    let mut sized: Vec<(usize, Vec<u32>)> = members.into_iter().collect();
    sized.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));

    let mut rows = Vec::new();
    let mut leftover: Vec<u32> = Vec::new();
    for (community, nodes) in sized {
        let share = nodes.len() as f64 / n as f64;
        if share >= opts.share_threshold {
            rows.push(summarize_group(
                Some(community),
                &nodes,
                gc,
                tc,
                &descriptions,
                stopwords,
                opts,
                n,
            ));
        } else {
            leftover.extend(nodes);
        }
    }
    if !leftover.is_empty() {
        leftover.sort_unstable();
        rows.push(summarize_group(
            None,
            &leftover,
            gc,
            tc,
            &descriptions,
            stopwords,
            opts,
            n,
        ));
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn summarize_group(
    community: Option<usize>,
    nodes: &[u32],
    gc: &DependencyGraph,
    tc: &DependencyGraph,
    descriptions: &HashMap<&str, &str>,
    stopwords: &HashSet<String>,
    opts: &SummaryOptions,
    total: usize,
) -> CommunitySummary {
    let ranked = |score: &dyn Fn(u32) -> usize, skip_special: bool| -> Vec<String> {
        let mut candidates: Vec<(usize, &str)> = nodes
            .iter()
            .filter(|&&u| {
                if skip_special {
                    let f = gc.flags(u);
                    !f.is_base && !f.is_recommended
                } else {
                    true
                }
            })
            .map(|&u| (score(u), gc.name(u)))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(b.1)));
        candidates
            .into_iter()
            .take(opts.list_len)
            .map(|(_, name)| name.to_string())
            .collect()
    };

    let direct_in = |u: u32| gc.in_degree(u);
    let transitive_in = |u: u32| tc.node_id(gc.name(u)).map_or(0, |t| tc.in_degree(t));

    let mut counts: HashMap<String, usize> = HashMap::new();
    for &u in nodes {
        if let Some(text) = descriptions.get(gc.name(u)) {
            for token in tokenize(text) {
                if !stopwords.contains(&token) {
                    *counts.entry(token).or_insert(0) += 1;
                }
            }
        }
    }
    let mut terms: Vec<(String, usize)> = counts.into_iter().collect();
    terms.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    terms.truncate(opts.top_k_words);

    CommunitySummary {
        community,
        size: nodes.len(),
        share: nodes.len() as f64 / total as f64,
        sample_packages: ranked(&direct_in, true),
        critical_packages: ranked(&transitive_in, false),
        keywords: terms.into_iter().map(|(t, _)| t).collect(),
    }
}

/// Lowercases and splits on non-alphanumeric boundaries; tokens shorter than
/// two characters or without a letter are noise and dropped.
fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2 && t.chars().any(char::is_alphabetic))
        .map(str::to_string)
        .collect::<Vec<_>>()
        .into_iter()
}

/// The stopword list shipped with the crate: common English words plus
/// ecosystem boilerplate.
pub fn default_stopwords() -> HashSet<String> {
    include_str!("../../data/stopwords_en.txt")
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_string)
        .collect()
}

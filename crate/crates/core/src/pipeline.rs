//! End-to-end orchestration: ingest → build → giant component → closure →
//! closure-minus-base → metrics → scores → communities, plus table emission.

use crate::community::{
    default_stopwords, louvain, summarize_communities, CommunityPartition, CommunitySummary,
    SummaryOptions,
};
use crate::error::{Error, Result};
use crate::graph::{
    build_graph, giant_component, io, remove_node_sets, transitive_closure, undirected_projection,
    BuildLog, DependencyGraph, NodeSetConfig, Variant,
};
use crate::ingest::{
    dedup_records, fetch_snapshot_with, parse_dcf, parse_manifest_json, FetchOptions, PackageRecord,
};
use crate::nodes::{heavy_dependents, top_influential, vulnerability_table, NodeScoreRow};
use crate::structure::{
    compute_structure, degree_distribution, splitmix, DegreeDistribution, DegreeKind,
    PathModeChoice, SmallWorldThresholds, StructureOptions, StructureReport,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Dcf,
    Json,
    Edges,
}

#[derive(Debug, Clone)]
pub enum InputSource {
    File {
        path: PathBuf,
        format: InputFormat,
        /// Optional node-table CSV accompanying an edge list.
        nodes: Option<PathBuf>,
    },
    Url {
        url: String,
        cache_dir: PathBuf,
        force_refresh: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputFormats {
    pub tsv: bool,
    pub json: bool,
}

impl Default for OutputFormats {
    fn default() -> Self {
        OutputFormats {
            tsv: true,
            json: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: InputSource,
    pub out_dir: PathBuf,
    pub formats: OutputFormats,
    pub node_sets: NodeSetConfig,
    pub seed: u64,
    pub er_trials: usize,
    pub path_mode: PathModeChoice,
    pub thresholds: SmallWorldThresholds,
    /// Rows kept in the influential tables.
    pub top_k: usize,
    /// Transitive out-degree cutoff for the heavy-dependents table.
    pub out_degree_threshold: usize,
    /// Minimum community share for its own summary row.
    pub share_threshold: f64,
    pub top_k_words: usize,
    /// Louvain runs for the stability report; 1 disables it.
    pub louvain_seeds: usize,
    pub extra_stopwords: Vec<String>,
    /// Promote power-law fit failures from warnings to errors.
    pub strict_fit: bool,
}

impl RunConfig {
    pub fn new(input: InputSource, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            input,
            out_dir: out_dir.into(),
            formats: OutputFormats::default(),
            node_sets: NodeSetConfig::default(),
            seed: 0,
            er_trials: 10,
            path_mode: PathModeChoice::Auto,
            thresholds: SmallWorldThresholds::default(),
            top_k: 20,
            out_degree_threshold: 200,
            share_threshold: 0.01,
            top_k_words: 30,
            louvain_seeds: 1,
            extra_stopwords: Vec::new(),
            strict_fit: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub checksum: String,
    pub captured_at: Option<String>,
    pub stale: bool,
    pub record_count: usize,
    pub skipped_records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkRow {
    pub variant: String,
    pub n: usize,
    pub e: usize,
    pub avg_degree: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub seeds: Vec<u64>,
    pub community_counts: Vec<usize>,
    pub modularities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityReport {
    pub seed: u64,
    pub resolution: f64,
    pub community_count: usize,
    pub modularity: f64,
    pub levels: Vec<f64>,
    pub summaries: Vec<CommunitySummary>,
    pub stability: Option<StabilityReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub er_trials: usize,
    pub path_mode: String,
    pub top_k: usize,
    pub out_degree_threshold: usize,
    pub share_threshold_pct: String,
    pub top_k_words: usize,
    pub small_world_c_factor: String,
    pub small_world_l_factor: String,
    pub louvain_seeds: usize,
    pub base_packages: Vec<String>,
    pub recommended_packages: Vec<String>,
}

/// Everything the run produced; the JSON form of this struct is the
/// `report.json` artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcosystemReport {
    pub provenance: Provenance,
    pub network: Vec<NetworkRow>,
    pub structure: Vec<StructureReport>,
    /// Degree distributions of the giant component, one per kind.
    pub degree_distributions: Vec<DegreeDistribution>,
    pub influential_tc: Vec<NodeScoreRow>,
    pub influential_tcnb: Vec<NodeScoreRow>,
    pub heavy_dependents: Vec<NodeScoreRow>,
    pub communities: CommunityReport,
    pub config: ConfigEcho,
    pub warnings: Vec<String>,
}

/// The parsed input plus the FULL graph built from it.
pub struct LoadedInput {
    pub full: DependencyGraph,
    pub records: Vec<PackageRecord>,
    pub provenance: Provenance,
    pub build_log: BuildLog,
    /// Build-log lines for parse-stage events.
    pub parse_log: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn load_input(input: &InputSource, node_sets: &NodeSetConfig) -> Result<LoadedInput> {
    let mut warnings = Vec::new();
    let (records, provenance, mut parse_log, graph) = match input {
        InputSource::File {
            path,
            format: InputFormat::Edges,
            nodes,
        } => {
            let graph = io::import_edge_csv(path, nodes.as_deref(), node_sets)?;
            let bytes = std::fs::read(path)?;
            let provenance = Provenance {
                source: path.display().to_string(),
                checksum: crate::ingest::hex_sha256(&bytes),
                captured_at: None,
                stale: false,
                record_count: graph.node_count(),
                skipped_records: 0,
            };
            (Vec::new(), provenance, Vec::new(), Some(graph))
        }
        InputSource::File {
            path,
            format,
            nodes: _,
        } => {
            let bytes = std::fs::read(path)?;
            let outcome = match format {
                InputFormat::Dcf => parse_dcf(&bytes)?,
                InputFormat::Json => parse_manifest_json(&bytes)?,
                InputFormat::Edges => unreachable!(),
            };
            let (records, dedup_warnings) = dedup_records(outcome.records);
            let mut log: Vec<String> = outcome
                .warnings
                .iter()
                .map(|w| format!("line {}: {}", w.line, w.message))
                .collect();
            log.extend(dedup_warnings.iter().map(|w| w.message.clone()));
            let skipped = outcome.warnings.len() + dedup_warnings.len();
            let provenance = Provenance {
                source: path.display().to_string(),
                checksum: crate::ingest::hex_sha256(&bytes),
                captured_at: None,
                stale: false,
                record_count: records.len(),
                skipped_records: skipped,
            };
            (records, provenance, log, None)
        }
        InputSource::Url {
            url,
            cache_dir,
            force_refresh,
        } => {
            let opts = FetchOptions {
                force_refresh: *force_refresh,
                ..FetchOptions::default()
            };
            let snapshot = fetch_snapshot_with(url, cache_dir, &opts)?;
            if snapshot.stale {
                warnings.push("snapshot served from cache: remote was unreachable".to_string());
            }
            warnings.extend(snapshot.fetch_notes.iter().cloned());
            let log: Vec<String> = snapshot
                .parse_warnings
                .iter()
                .map(|w| format!("line {}: {}", w.line, w.message))
                .collect();
            let provenance = Provenance {
                source: snapshot.source.clone(),
                checksum: snapshot.checksum.clone(),
                captured_at: Some(snapshot.captured_at.clone()),
                stale: snapshot.stale,
                record_count: snapshot.records.len(),
                skipped_records: snapshot.parse_warnings.len(),
            };
            (snapshot.records, provenance, log, None)
        }
    };

    let (full, build_log) = match graph {
        Some(graph) => (graph, BuildLog::default()),
        None => {
            if records.is_empty() {
                return Err(Error::Parse(
                    "input produced no usable package records".into(),
                ));
            }
            build_graph(&records, node_sets)?
        }
    };
    if !build_log.missing_dependencies.is_empty() {
        warnings.push(format!(
            "{} dependency name(s) had no record and were added as flagged nodes",
            build_log.missing_dependencies.len()
        ));
    }
    parse_log.extend(build_log.lines());

    Ok(LoadedInput {
        full,
        records,
        provenance,
        build_log,
        parse_log,
        warnings,
    })
}

/// The four variants derived from one input.
pub struct VariantSet {
    pub full: DependencyGraph,
    pub gc: DependencyGraph,
    pub tc: DependencyGraph,
    pub tcnb: DependencyGraph,
    /// Direct graph aligned with `tcnb`'s node set.
    pub gcnb: DependencyGraph,
    pub notes: Vec<String>,
}

pub fn derive_variants(full: DependencyGraph, node_sets: &NodeSetConfig) -> VariantSet {
    let gc = giant_component(&full);
    let tc = transitive_closure(&gc);
    let tcnb = remove_node_sets(&tc, node_sets);

    let removed_sets = (0..tc.node_count() as u32)
        .filter(|&u| {
            let name = tc.name(u);
            node_sets.is_base(name) || node_sets.is_recommended(name)
        })
        .count();
    let isolated = tc.node_count() - removed_sets - tcnb.node_count();
    let mut notes = Vec::new();
    if isolated > 0 {
        notes.push(format!(
            "tcnb: after removing {removed_sets} base/recommended node(s), {isolated} node(s) \
             were left disconnected and dropped when the giant component was re-extracted \
             (an inferred step: {} -> {} nodes)",
            tc.node_count() - removed_sets,
            tcnb.node_count()
        ));
    }

    let keep: Vec<u32> = tcnb
        .names()
        .iter()
        .map(|name| gc.node_id(name).expect("tcnb nodes come from gc"))
        .collect();
    let gcnb = gc.induced_subgraph(&keep, Variant::Tcnb);

    VariantSet {
        full,
        gc,
        tc,
        tcnb,
        gcnb,
        notes,
    }
}

pub fn network_rows(variants: &VariantSet) -> Vec<NetworkRow> {
    [&variants.full, &variants.gc, &variants.tc, &variants.tcnb]
        .iter()
        .map(|g| NetworkRow {
            variant: g.variant().as_str().to_string(),
            n: g.node_count(),
            e: g.edge_count(),
            avg_degree: g.avg_degree(),
        })
        .collect()
}

/// Runs the whole pipeline and writes every artifact into the output
/// directory. Input files and cache entries are never modified.
pub fn run_pipeline(config: &RunConfig) -> Result<EcosystemReport> {
    let loaded = load_input(&config.input, &config.node_sets)?;
    let mut warnings = loaded.warnings.clone();
    let variants = derive_variants(loaded.full, &config.node_sets);
    warnings.extend(variants.notes.iter().cloned());

    if variants.gc.node_count() < 2 {
        return Err(Error::Graph(
            "giant component has fewer than two nodes; nothing to analyze".into(),
        ));
    }

    // Structural profiles per variant, each with its own derived seed.
    let mut structure = Vec::new();
    for g in [&variants.gc, &variants.tc, &variants.tcnb] {
        if g.node_count() < 2 {
            warnings.push(format!(
                "{}: skipped structural profile ({} nodes)",
                g.variant().as_str(),
                g.node_count()
            ));
            continue;
        }
        let opts = StructureOptions {
            seed: splitmix(
                config.seed ^ g.variant().as_str().len() as u64 ^ variant_tag(g.variant()),
            ),
            er_trials: config.er_trials,
            path_mode: config.path_mode,
            thresholds: config.thresholds,
        };
        let report = compute_structure(g, &opts)?;
        if config.strict_fit && report.gamma.is_none() {
            return Err(Error::Fit(format!(
                "{}: power-law fit failed and --strict-fit is set",
                report.variant
            )));
        }
        structure.push(report);
    }

    let degree_distributions = vec![
        degree_distribution(&variants.gc, DegreeKind::Total)?,
        degree_distribution(&variants.gc, DegreeKind::In)?,
        degree_distribution(&variants.gc, DegreeKind::Out)?,
    ];

    let rows_tc = vulnerability_table(&variants.gc, &variants.tc)?;
    let influential_tc = top_influential(&rows_tc, config.top_k, None);
    let heavy = heavy_dependents(&rows_tc, config.out_degree_threshold);
    let (influential_tcnb, _rows_tcnb) = if variants.tcnb.node_count() >= 2 {
        let rows = vulnerability_table(&variants.gcnb, &variants.tcnb)?;
        (top_influential(&rows, config.top_k, None), rows)
    } else {
        warnings.push("tcnb: too small for node scores".to_string());
        (Vec::new(), Vec::new())
    };

    // Communities on the giant component's undirected projection.
    let ug = undirected_projection(&variants.gc);
    let community_seed = splitmix(config.seed ^ 0x636f_6d6d); // "comm"
    let partition = louvain(&ug, community_seed, 1.0);
    let stability = if config.louvain_seeds > 1 {
        let seeds: Vec<u64> = (0..config.louvain_seeds)
            .map(|i| {
                if i == 0 {
                    community_seed
                } else {
                    splitmix(community_seed.wrapping_add(i as u64))
                }
            })
            .collect();
        let runs: Vec<CommunityPartition> =
            seeds.par_iter().map(|&s| louvain(&ug, s, 1.0)).collect();
        Some(StabilityReport {
            seeds,
            community_counts: runs.iter().map(|p| p.community_count).collect(),
            modularities: runs.iter().map(|p| p.modularity).collect(),
        })
    } else {
        None
    };

    let mut stopwords = default_stopwords();
    stopwords.extend(config.extra_stopwords.iter().map(|w| w.to_lowercase()));
    let summaries = summarize_communities(
        &partition,
        &variants.gc,
        &variants.tc,
        &loaded.records,
        &stopwords,
        &SummaryOptions {
            share_threshold: config.share_threshold,
            top_k_words: config.top_k_words,
            list_len: 3,
        },
    )?;

    let report = EcosystemReport {
        provenance: loaded.provenance,
        network: network_rows(&variants),
        structure,
        degree_distributions,
        influential_tc,
        influential_tcnb,
        heavy_dependents: heavy,
        communities: CommunityReport {
            seed: community_seed,
            resolution: 1.0,
            community_count: partition.community_count,
            modularity: partition.modularity,
            levels: partition.levels.clone(),
            summaries,
            stability,
        },
        config: ConfigEcho {
            seed: config.seed,
            er_trials: config.er_trials,
            path_mode: match config.path_mode {
                PathModeChoice::Auto => "auto".to_string(),
                PathModeChoice::Exact => "exact".to_string(),
                PathModeChoice::Sampled(m) => format!("sampled:{m}"),
            },
            top_k: config.top_k,
            out_degree_threshold: config.out_degree_threshold,
            share_threshold_pct: format!("{}", config.share_threshold * 100.0),
            top_k_words: config.top_k_words,
            small_world_c_factor: format!("{}", config.thresholds.c_factor),
            small_world_l_factor: format!("{}", config.thresholds.l_factor),
            louvain_seeds: config.louvain_seeds,
            base_packages: config.node_sets.base.clone(),
            recommended_packages: config.node_sets.recommended.clone(),
        },
        warnings,
    };

    std::fs::create_dir_all(&config.out_dir)?;
    io::export_edge_csv(&variants.full, &config.out_dir.join("edges.csv"))?;
    let community_by_name: HashMap<String, usize> = partition
        .assignment
        .iter()
        .enumerate()
        .map(|(node, &c)| (variants.gc.name(node as u32).to_string(), c))
        .collect();
    io::export_node_csv(
        &variants.full,
        &config.out_dir.join("nodes.csv"),
        Some(&community_by_name),
    )?;
    io::write_build_log(&loaded.parse_log, &config.out_dir.join("build.log"))?;
    write_partition_csv(
        &variants.gc,
        &partition,
        &config.out_dir.join("partition.csv"),
    )?;
    emit_tables(&report, &config.out_dir, config.formats)?;

    Ok(report)
}

fn variant_tag(v: Variant) -> u64 {
    match v {
        Variant::Full => 0x66,
        Variant::Gc => 0x6763,
        Variant::Tc => 0x7463,
        Variant::Tcnb => 0x7463_6e62,
    }
}

pub fn write_partition_csv(
    gc: &DependencyGraph,
    partition: &CommunityPartition,
    path: &Path,
) -> Result<()> {
    use std::io::Write;
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "package,community")?;
    for (node, &community) in partition.assignment.iter().enumerate() {
        writeln!(w, "{},{community}", gc.name(node as u32))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the tabular artifacts derived from a report: `network.tsv`,
/// `structure.tsv`, `influential.tsv`, `heavy.tsv`, `communities.tsv`, the
/// three `degree_*.tsv` files, and `report.json`.
pub fn emit_tables(
    report: &EcosystemReport,
    out_dir: &Path,
    formats: OutputFormats,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut write = |name: &str, body: String| -> Result<()> {
        let path = out_dir.join(name);
        std::fs::write(&path, body)?;
        written.push(path);
        Ok(())
    };

    if formats.tsv {
        write("network.tsv", render_network_tsv(&report.network))?;
        write("structure.tsv", render_structure_tsv(&report.structure))?;
        write(
            "influential.tsv",
            render_influential_tsv(&report.influential_tc, &report.influential_tcnb),
        )?;
        write("heavy.tsv", render_heavy_tsv(&report.heavy_dependents))?;
        write(
            "communities.tsv",
            render_communities_tsv(&report.communities.summaries),
        )?;
        for dist in &report.degree_distributions {
            write(
                &format!("degree_{}.tsv", dist.kind.as_str()),
                render_degree_tsv(dist),
            )?;
        }
    }
    if formats.json {
        let json = serde_json::to_string_pretty(report)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        write("report.json", json + "\n")?;
    }
    Ok(written)
}

pub fn render_network_tsv(rows: &[NetworkRow]) -> String {
    let mut out = String::from("variant\tn\te\tk\n");
    for row in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.3}\n",
            row.variant, row.n, row.e, row.avg_degree
        ));
    }
    out
}

pub fn render_structure_tsv(reports: &[StructureReport]) -> String {
    let mut out = String::from("variant\tgamma\tC\tC_er\tl\tl_er\tD\tnd\n");
    for r in reports {
        out.push_str(&format!(
            "{}\t{}\t{:.4}\t{:.6}\t{:.3}\t{}\t{:.6}\t{}\n",
            r.variant,
            r.gamma.map_or("NA".to_string(), |g| format!("{g:.3}")),
            r.clustering,
            r.c_er,
            r.path_length,
            r.l_er.map_or("NA".to_string(), |l| format!("{l:.3}")),
            r.density,
            r.driver
                .as_ref()
                .map_or("NA".to_string(), |d| d.nd_count.to_string()),
        ));
    }
    out
}

pub fn render_influential_tsv(tc: &[NodeScoreRow], tcnb: &[NodeScoreRow]) -> String {
    let mut out = String::from("variant\trank\tpackage\tdd\ttd\tdc\tv_pct\n");
    for (variant, rows) in [("tc", tc), ("tcnb", tcnb)] {
        for (i, row) in rows.iter().enumerate() {
            out.push_str(&format!(
                "{variant}\t{}\t{}\t{}\t{}\t{:.4}\t{:.1}\n",
                i + 1,
                row.package,
                row.dd,
                row.td,
                row.dc,
                row.v * 100.0
            ));
        }
    }
    out
}

pub fn render_heavy_tsv(rows: &[NodeScoreRow]) -> String {
    let mut out = String::from("package\timports\ttransitive\tinverse_v_pct\n");
    for row in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.2}\n",
            row.package,
            row.out_direct,
            row.out_transitive,
            row.inverse_v * 100.0
        ));
    }
    out
}

pub fn render_communities_tsv(summaries: &[CommunitySummary]) -> String {
    let mut out = String::from("community\tshare_pct\tsample_pkgs\tcritical_pkgs\tkeywords\n");
    for s in summaries {
        out.push_str(&format!(
            "{}\t{:.1}\t{}\t{}\t{}\n",
            s.community.map_or("other".to_string(), |c| c.to_string()),
            s.share * 100.0,
            s.sample_packages.join(","),
            s.critical_packages.join(","),
            s.keywords
                .iter()
                .take(3)
                .cloned()
                .collect::<Vec<_>>()
                .join(","),
        ));
    }
    out
}

pub fn render_degree_tsv(dist: &DegreeDistribution) -> String {
    let mut out = String::from("k\tpdf\tccdf\n");
    for (i, &(k, pdf)) in dist.pdf.iter().enumerate() {
        out.push_str(&format!("{k}\t{pdf}\t{}\n", dist.ccdf[i].1));
    }
    out
}

//! `ecograph` — build package dependency networks from registry metadata and
//! profile their structure, per-package risk, and community layout.

use clap::{Args, Parser, Subcommand};
use ecograph::community::{default_stopwords, louvain, summarize_communities, SummaryOptions};
use ecograph::error::Error;
use ecograph::graph::{io as graph_io, undirected_projection, NodeSetConfig};
use ecograph::nodes::{heavy_dependents, top_influential, vulnerability_table};
use ecograph::pipeline::{
    self, derive_variants, load_input, network_rows, run_pipeline, InputFormat, InputSource,
    OutputFormats, RunConfig,
};
use ecograph::structure::{
    compute_structure, PathModeChoice, SmallWorldThresholds, StructureOptions,
};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "ecograph",
    version,
    about = "Complex-network profile of a package ecosystem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap the worker-thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Fetch a registry index snapshot into the cache.
    Fetch {
        /// Registry index URL, e.g. a CRAN PACKAGES file.
        #[arg(long)]
        url: String,
        #[arg(long, env = "ECOGRAPH_CACHE", default_value = "ecograph-cache")]
        cache_dir: PathBuf,
        /// Re-download even if today's snapshot is cached.
        #[arg(long)]
        force_refresh: bool,
    },
    /// Parse the input and export the full dependency graph.
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the whole pipeline: structure, node scores, communities.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        metrics: MetricArgs,
        #[command(flatten)]
        scores: ScoreArgs,
        #[command(flatten)]
        communities: CommunityArgs,
    },
    /// Structural diagnostics only (degree distributions, gamma, clustering,
    /// paths, baselines).
    Structure {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        metrics: MetricArgs,
    },
    /// Per-package vulnerability tables only.
    Nodes {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        scores: ScoreArgs,
        /// Exclude base/recommended packages from the influential ranking.
        #[arg(long)]
        exclude_base: bool,
    },
    /// Community detection and summaries only.
    Communities {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Louvain seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        communities: CommunityArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input file (DCF index, JSON manifest, or edge-list CSV).
    #[arg(long, conflicts_with = "url", required_unless_present = "url")]
    input: Option<PathBuf>,

    /// Input format.
    #[arg(long, value_parser = ["dcf", "json", "edges"], default_value = "dcf")]
    input_format: String,

    /// Node-table CSV accompanying an edge-list input.
    #[arg(long)]
    nodes: Option<PathBuf>,

    /// Fetch the index from a URL instead of a file.
    #[arg(long)]
    url: Option<String>,

    #[arg(long, env = "ECOGRAPH_CACHE", default_value = "ecograph-cache")]
    cache_dir: PathBuf,

    #[arg(long)]
    force_refresh: bool,

    /// File with one base-package name per line (defaults to the 14 R base
    /// packages).
    #[arg(long)]
    base_list: Option<PathBuf>,

    /// File with one recommended-package name per line (defaults to the 15 R
    /// recommended packages).
    #[arg(long)]
    recommended_list: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output directory for all artifacts.
    #[arg(long, default_value = "ecograph-out")]
    out: PathBuf,

    /// Output formats, comma separated.
    #[arg(long, default_value = "tsv,json")]
    format: String,
}

#[derive(Args)]
struct MetricArgs {
    /// Master seed; every randomized stage derives from it and records it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Erdős–Rényi baseline trials.
    #[arg(long, default_value_t = 10)]
    er_trials: usize,

    /// Path-length mode: exact, sampled:M, or auto.
    #[arg(long, default_value = "auto")]
    path_mode: String,

    /// Small-world clustering factor (C >= factor * C_er).
    #[arg(long, default_value_t = 10.0)]
    small_world_c_factor: f64,

    /// Small-world path factor (l <= factor * l_er).
    #[arg(long, default_value_t = 2.0)]
    small_world_l_factor: f64,

    /// Fail (exit 4) when a power-law fit is impossible instead of warning.
    #[arg(long)]
    strict_fit: bool,
}

#[derive(Args)]
struct ScoreArgs {
    /// Rows in the influential table.
    #[arg(long, default_value_t = 20)]
    top: usize,

    /// Transitive out-degree cutoff for the heavy-dependents table.
    #[arg(long, default_value_t = 200)]
    out_degree_threshold: usize,
}

#[derive(Args)]
struct CommunityArgs {
    /// Louvain runs for the stability report (1 disables it).
    #[arg(long, default_value_t = 1)]
    louvain_seeds: usize,

    /// Minimum community share (percent) for its own summary row.
    #[arg(long, default_value_t = 1.0)]
    share_threshold: f64,

    /// Keywords kept per community.
    #[arg(long, default_value_t = 30)]
    top_words: usize,

    /// Extra stopword (repeatable).
    #[arg(long = "stopword")]
    stopwords: Vec<String>,
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("ecograph: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn run(command: Command) -> ecograph::Result<()> {
    match command {
        Command::Fetch {
            url,
            cache_dir,
            force_refresh,
        } => {
            let opts = ecograph::ingest::FetchOptions {
                force_refresh,
                ..Default::default()
            };
            let snapshot = ecograph::ingest::fetch_snapshot_with(&url, &cache_dir, &opts)?;
            println!(
                "fetched {} record(s) from {} (captured {}, checksum {}{})",
                snapshot.records.len(),
                snapshot.source,
                snapshot.captured_at,
                &snapshot.checksum[..12],
                if snapshot.stale { ", STALE" } else { "" }
            );
            for note in &snapshot.fetch_notes {
                println!("note: {note}");
            }
            if !snapshot.parse_warnings.is_empty() {
                println!("{} parse warning(s)", snapshot.parse_warnings.len());
            }
            Ok(())
        }
        Command::Build { input, output } => {
            let node_sets = input.node_sets()?;
            let loaded = load_input(&input.source()?, &node_sets)?;
            std::fs::create_dir_all(&output.out)?;
            graph_io::export_edge_csv(&loaded.full, &output.out.join("edges.csv"))?;
            graph_io::export_node_csv(&loaded.full, &output.out.join("nodes.csv"), None)?;
            graph_io::write_build_log(&loaded.parse_log, &output.out.join("build.log"))?;
            println!(
                "built graph: {} nodes, {} edges ({} record(s), {} missing dependency name(s))",
                loaded.full.node_count(),
                loaded.full.edge_count(),
                loaded.provenance.record_count,
                loaded.build_log.missing_dependencies.len()
            );
            println!(
                "wrote edges.csv, nodes.csv, build.log under {}",
                output.out.display()
            );
            Ok(())
        }
        Command::Analyze {
            input,
            output,
            metrics,
            scores,
            communities,
        } => {
            let config = RunConfig {
                formats: output.formats()?,
                node_sets: input.node_sets()?,
                seed: metrics.seed,
                er_trials: metrics.er_trials,
                path_mode: parse_path_mode(&metrics.path_mode)?,
                thresholds: SmallWorldThresholds {
                    c_factor: metrics.small_world_c_factor,
                    l_factor: metrics.small_world_l_factor,
                },
                top_k: scores.top,
                out_degree_threshold: scores.out_degree_threshold,
                share_threshold: communities.share_threshold / 100.0,
                top_k_words: communities.top_words,
                louvain_seeds: communities.louvain_seeds,
                extra_stopwords: communities.stopwords.clone(),
                strict_fit: metrics.strict_fit,
                ..RunConfig::new(input.source()?, &output.out)
            };
            let report = run_pipeline(&config)?;
            for row in &report.network {
                println!(
                    "{:>5}: {} nodes, {} edges, k = {:.3}",
                    row.variant, row.n, row.e, row.avg_degree
                );
            }
            println!(
                "communities: {} (Q = {:.3})",
                report.communities.community_count, report.communities.modularity
            );
            for warning in &report.warnings {
                println!("warning: {warning}");
            }
            println!("artifacts written under {}", output.out.display());
            Ok(())
        }
        Command::Structure {
            input,
            output,
            metrics,
        } => {
            let node_sets = input.node_sets()?;
            let loaded = load_input(&input.source()?, &node_sets)?;
            let variants = derive_variants(loaded.full, &node_sets);
            let mut reports = Vec::new();
            for g in [&variants.gc, &variants.tc, &variants.tcnb] {
                if g.node_count() < 2 {
                    continue;
                }
                let opts = StructureOptions {
                    seed: metrics.seed,
                    er_trials: metrics.er_trials,
                    path_mode: parse_path_mode(&metrics.path_mode)?,
                    thresholds: SmallWorldThresholds {
                        c_factor: metrics.small_world_c_factor,
                        l_factor: metrics.small_world_l_factor,
                    },
                };
                let report = compute_structure(g, &opts)?;
                if metrics.strict_fit && report.gamma.is_none() {
                    return Err(Error::Fit(format!(
                        "{}: power-law fit failed and --strict-fit is set",
                        report.variant
                    )));
                }
                reports.push(report);
            }
            let network = pipeline::render_network_tsv(&network_rows(&variants));
            let table = pipeline::render_structure_tsv(&reports);
            std::fs::create_dir_all(&output.out)?;
            std::fs::write(output.out.join("network.tsv"), &network)?;
            std::fs::write(output.out.join("structure.tsv"), &table)?;
            print!("{network}\n{table}");
            Ok(())
        }
        Command::Nodes {
            input,
            output,
            scores,
            exclude_base,
        } => {
            let node_sets = input.node_sets()?;
            let loaded = load_input(&input.source()?, &node_sets)?;
            let variants = derive_variants(loaded.full, &node_sets);
            let rows_tc = vulnerability_table(&variants.gc, &variants.tc)?;
            let exclusion = exclude_base.then_some(&node_sets);
            let influential_tc = top_influential(&rows_tc, scores.top, exclusion);
            let influential_tcnb = if variants.tcnb.node_count() >= 2 {
                let rows = vulnerability_table(&variants.gcnb, &variants.tcnb)?;
                top_influential(&rows, scores.top, None)
            } else {
                Vec::new()
            };
            let heavy = heavy_dependents(&rows_tc, scores.out_degree_threshold);
            let influential = pipeline::render_influential_tsv(&influential_tc, &influential_tcnb);
            let heavy_table = pipeline::render_heavy_tsv(&heavy);
            std::fs::create_dir_all(&output.out)?;
            std::fs::write(output.out.join("influential.tsv"), &influential)?;
            std::fs::write(output.out.join("heavy.tsv"), &heavy_table)?;
            print!("{influential}\n{heavy_table}");
            Ok(())
        }
        Command::Communities {
            input,
            output,
            seed,
            communities,
        } => {
            let node_sets = input.node_sets()?;
            let loaded = load_input(&input.source()?, &node_sets)?;
            let variants = derive_variants(loaded.full, &node_sets);
            let ug = undirected_projection(&variants.gc);
            let partition = louvain(&ug, seed, 1.0);
            let mut stopwords = default_stopwords();
            stopwords.extend(communities.stopwords.iter().map(|w| w.to_lowercase()));
            let summaries = summarize_communities(
                &partition,
                &variants.gc,
                &variants.tc,
                &loaded.records,
                &stopwords,
                &SummaryOptions {
                    share_threshold: communities.share_threshold / 100.0,
                    top_k_words: communities.top_words,
                    list_len: 3,
                },
            )?;
            std::fs::create_dir_all(&output.out)?;
            let table = pipeline::render_communities_tsv(&summaries);
            std::fs::write(output.out.join("communities.tsv"), &table)?;
            pipeline::write_partition_csv(
                &variants.gc,
                &partition,
                &output.out.join("partition.csv"),
            )?;
            println!(
                "{} communities, Q = {:.4} (seed {})",
                partition.community_count, partition.modularity, partition.seed
            );
            if communities.louvain_seeds > 1 {
                let counts: Vec<usize> = (0..communities.louvain_seeds)
                    .map(|i| louvain(&ug, seed.wrapping_add(i as u64), 1.0).community_count)
                    .collect();
                println!(
                    "stability over {} seeds: community counts {counts:?}",
                    communities.louvain_seeds
                );
            }
            print!("{table}");
            Ok(())
        }
    }
}

impl InputArgs {
    fn source(&self) -> ecograph::Result<InputSource> {
        if let Some(url) = &self.url {
            return Ok(InputSource::Url {
                url: url.clone(),
                cache_dir: self.cache_dir.clone(),
                force_refresh: self.force_refresh,
            });
        }
        let path = self
            .input
            .clone()
            .ok_or_else(|| Error::Parse("no input given".into()))?;
        let format = match self.input_format.as_str() {
            "dcf" => InputFormat::Dcf,
            "json" => InputFormat::Json,
            "edges" => InputFormat::Edges,
            other => return Err(Error::Parse(format!("unknown input format {other:?}"))),
        };
        Ok(InputSource::File {
            path,
            format,
            nodes: self.nodes.clone(),
        })
    }

    fn node_sets(&self) -> ecograph::Result<NodeSetConfig> {
        let defaults = NodeSetConfig::default();
        let base = match &self.base_list {
            Some(path) => read_name_list(path)?,
            None => defaults.base,
        };
        let recommended = match &self.recommended_list {
            Some(path) => read_name_list(path)?,
            None => defaults.recommended,
        };
        NodeSetConfig::new(base, recommended)
    }
}

impl OutputArgs {
    fn formats(&self) -> ecograph::Result<OutputFormats> {
        let mut formats = OutputFormats {
            tsv: false,
            json: false,
        };
        for part in self.format.split(',') {
            match part.trim() {
                "tsv" => formats.tsv = true,
                "json" => formats.json = true,
                "" => {}
                other => return Err(Error::Parse(format!("unknown output format {other:?}"))),
            }
        }
        if !formats.tsv && !formats.json {
            return Err(Error::Parse(
                "at least one output format is required".into(),
            ));
        }
        Ok(formats)
    }
}

fn parse_path_mode(raw: &str) -> ecograph::Result<PathModeChoice> {
    match raw {
        "auto" => Ok(PathModeChoice::Auto),
        "exact" => Ok(PathModeChoice::Exact),
        other => match other
            .strip_prefix("sampled:")
            .and_then(|m| m.parse::<usize>().ok())
        {
            Some(sources) if sources > 0 => Ok(PathModeChoice::Sampled(sources)),
            _ => Err(Error::Parse(format!(
                "path mode must be exact, auto, or sampled:M, got {raw:?}"
            ))),
        },
    }
}

fn read_name_list(path: &PathBuf) -> ecograph::Result<Vec<String>> {
    let text = std::fs::read_to_string(path)?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

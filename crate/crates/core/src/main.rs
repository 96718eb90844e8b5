use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use wsnsim::{oracle, report, Protocol, SimConfig};

#[derive(Parser)]
#[command(name = "wsnsim", version, about = "Cluster-based sensor network lifetime simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one protocol for one seed and write the per-round table.
    Run {
        /// Config file; defaults apply for missing keys.
        #[arg(long)]
        config: Option<PathBuf>,
        /// leach, ffa, or jfa.
        #[arg(long)]
        protocol: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory; falls back to $WSNSIM_OUT, then the
        /// current directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every protocol over a set of seeds and write the lifetime
    /// summary table.
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Either a count (`20` runs seeds 0..19) or an explicit
        /// comma-separated list (`3,7,11`).
        #[arg(long, default_value = "5")]
        seeds: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively search the cheapest head set for a deployment.
    Oracle {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_config(path: &Option<PathBuf>) -> anyhow::Result<SimConfig> {
    let config = match path {
        Some(path) => SimConfig::from_file(path)
            .with_context(|| format!("reading config {}", path.display()))?,
        None => SimConfig::default(),
    };
    config.validate()?;
    Ok(config)
}

fn resolve_out_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os("WSNSIM_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn parse_seeds(arg: &str) -> anyhow::Result<Vec<u64>> {
    let seeds: Vec<u64> = if arg.contains(',') {
        arg.split(',')
            .map(|s| s.trim().parse().with_context(|| format!("bad seed `{s}`")))
            .collect::<anyhow::Result<_>>()?
    } else {
        let count: u64 = arg.trim().parse().with_context(|| format!("bad seed count `{arg}`"))?;
        (0..count).collect()
    };
    if seeds.is_empty() {
        bail!("no seeds to run");
    }
    Ok(seeds)
}

fn median(values: &mut [u32]) -> f64 {
    values.sort_unstable();
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid] as f64
    } else {
        (values[mid - 1] as f64 + values[mid] as f64) / 2.0
    }
}

fn mean(values: &[u32]) -> f64 {
    values.iter().map(|&v| v as f64).sum::<f64>() / values.len() as f64
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run { config, protocol, seed, out } => {
            let config = load_config(&config)?;
            let protocol: Protocol = protocol.parse()?;
            let out_dir = resolve_out_dir(&out);
            let run = wsnsim::simulate(&config, protocol, seed)?;

            let rounds_path = out_dir.join(format!("rounds_{protocol}_{seed}.csv"));
            write_file(&rounds_path, &report::round_csv(&run))?;
            let summary_path = out_dir.join(format!("summary_{protocol}_{seed}.csv"));
            write_file(&summary_path, &report::summary_csv(std::slice::from_ref(&run)))?;
            write_file(&out_dir.join("config_resolved.conf"), &config.dump())?;

            println!("protocol = {protocol}");
            println!("seed = {seed}");
            println!("rounds = {}", run.rounds.len());
            println!("fnd = {}", run.summary.fnd);
            println!("hnd = {}", run.summary.hnd);
            println!("lnd = {}", run.summary.lnd);
            println!("wrote {}", rounds_path.display());
            println!("wrote {}", summary_path.display());
        }
        Command::Compare { config, seeds, out } => {
            let config = load_config(&config)?;
            let seeds = parse_seeds(&seeds)?;
            let out_dir = resolve_out_dir(&out);
            let mut runs = Vec::new();
            for protocol in Protocol::ALL {
                for &seed in &seeds {
                    let run = wsnsim::simulate(&config, protocol, seed)?;
                    println!(
                        "{protocol} seed {seed}: fnd {} hnd {} lnd {}",
                        run.summary.fnd, run.summary.hnd, run.summary.lnd
                    );
                    let rounds_path = out_dir.join(format!("rounds_{protocol}_{seed}.csv"));
                    write_file(&rounds_path, &report::round_csv(&run))?;
                    runs.push(run);
                }
            }
            for protocol in Protocol::ALL {
                let per_protocol: Vec<_> =
                    runs.iter().filter(|r| r.protocol == protocol).collect();
                let mut fnd: Vec<u32> = per_protocol.iter().map(|r| r.summary.fnd).collect();
                let mut hnd: Vec<u32> = per_protocol.iter().map(|r| r.summary.hnd).collect();
                let mut lnd: Vec<u32> = per_protocol.iter().map(|r| r.summary.lnd).collect();
                println!(
                    "{protocol} median: fnd {} hnd {} lnd {}",
                    median(&mut fnd),
                    median(&mut hnd),
                    median(&mut lnd)
                );
                println!(
                    "{protocol} mean: fnd {} hnd {} lnd {}",
                    mean(&fnd),
                    mean(&hnd),
                    mean(&lnd)
                );
            }
            let summary_path = out_dir.join("summary.csv");
            write_file(&summary_path, &report::summary_csv(&runs))?;
            write_file(&out_dir.join("config_resolved.conf"), &config.dump())?;
            println!("wrote {}", summary_path.display());
        }
        Command::Oracle { config, seed } => {
            let config = load_config(&config)?;
            let nodes = wsnsim::network::deploy(&config.field(), seed)?;
            let alive = nodes.iter().filter(|n| n.alive).count();
            let k = wsnsim::network::cluster_count(alive, config.cluster_fraction);
            let best = oracle::exhaustive_best(&nodes, k, &config.weights()?)?;
            let heads = best
                .head_ids
                .iter()
                .map(|id| id.to_string())
                .collect::<Vec<_>>()
                .join("|");
            println!("k = {k}");
            println!("evaluated = {}", best.evaluated);
            println!("heads = {heads}");
            println!("cost = {}", best.cost);
        }
    }
    Ok(())
}

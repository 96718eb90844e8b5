//! CSV rendering of simulation output.
//!
//! Floats are written with Rust's shortest round-trip formatting, so the
//! same run always serializes to the same bytes.

use crate::engine::{RoundStats, SimulationRun};
use std::fmt::Write as _;

pub const ROUND_HEADER: &str = "round,alive,total_energy_j,head_ids,jumps";
pub const SUMMARY_HEADER: &str = "protocol,seed,fnd,hnd,lnd";

fn head_field(stats: &RoundStats) -> String {
    stats
        .head_ids
        .iter()
        .map(|id| id.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

/// Per-round table for a single run.
pub fn round_csv(run: &SimulationRun) -> String {
    let mut out = String::with_capacity(64 * (run.rounds.len() + 1));
    out.push_str(ROUND_HEADER);
    out.push('\n');
    for stats in &run.rounds {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            stats.round,
            stats.alive,
            stats.total_energy_j,
            head_field(stats),
            stats.jumps
        );
    }
    out
}

/// Lifetime milestones, one row per run.
pub fn summary_csv(runs: &[SimulationRun]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for run in runs {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            run.protocol, run.seed, run.summary.fnd, run.summary.hnd, run.summary.lnd
        );
    }
    out
}

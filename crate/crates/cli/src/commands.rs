use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use swarmnav_core::prob::{fractional_gain, majority_error, optimal_gain};
use swarmnav_core::sim::{format_sig, run_experiment};
use swarmnav_core::terrain::{
    extremal_pair, generate_grid, load_scenario, parse_osm_subset, shortest_flight_plan,
    LandmarkGraph, Scenario, TerrainError,
};
use swarmnav_core::{Probability, SwarmSize};

use crate::args::{Gen, RunArgs};
use crate::config::{ExperimentConfig, Overrides};
use crate::CliError;

/// Text for standard output, or for the file named alongside it.
pub type Output = (String, Option<PathBuf>);

pub const GAIN_TABLE_HEADER: &str = "m,p_star,max_gain,majority_error_at_p_star";
pub const CURVES_HEADER: &str = "p,m,gain,majority_error";

fn size(m: u32) -> Result<SwarmSize, CliError> {
    SwarmSize::new(m).map_err(|e| CliError::Config(e.to_string()))
}

pub fn gain_table(m_max: u32, csv: bool) -> Result<Output, CliError> {
    if m_max < 2 {
        return Err(CliError::Config(format!(
            "m_max must be at least 2, got {m_max}"
        )));
    }
    let mut out = String::new();
    if csv {
        out.push_str(GAIN_TABLE_HEADER);
        out.push('\n');
    } else {
        out.push_str("   m    p_star      gain   p_m(p_star)\n");
    }
    for m in 2..=m_max {
        let m = size(m)?;
        let point = optimal_gain(m).map_err(|e| CliError::Config(e.to_string()))?;
        let error = majority_error(point.p_star, m).value();
        let p = point.p_star.value();
        if csv {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                m.get(),
                format_sig(p, 9),
                format_sig(point.gain, 9),
                format_sig(error, 9)
            );
        } else {
            let _ = writeln!(
                out,
                "{:>4}  {p:>8.4}  {:>8.4}  {error:>12.6}",
                m.get(),
                point.gain
            );
        }
    }
    Ok((out, None))
}

/// Grid points are `i * step` for integer `i`, up to `p_max` inclusive.
pub fn p_grid(step: f64, p_max: f64) -> Result<Vec<f64>, CliError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(CliError::Config(format!(
            "p step must be positive, got {step}"
        )));
    }
    if !(0.0..1.0).contains(&p_max) {
        return Err(CliError::Config(format!(
            "p max must lie in [0, 1), got {p_max}"
        )));
    }
    let count = (p_max / step + 1e-9).floor() as u64;
    Ok((0..=count).map(|i| i as f64 * step).collect())
}

pub fn curves(step: f64, p_max: f64, ms: &[u32]) -> Result<Output, CliError> {
    if ms.is_empty() {
        return Err(CliError::Config("m list is empty".to_string()));
    }
    let grid = p_grid(step, p_max)?;
    let mut out = String::from(CURVES_HEADER);
    out.push('\n');
    for &m in ms {
        let m = size(m)?;
        for &p in &grid {
            let prob = Probability::new(p).map_err(|e| CliError::Config(e.to_string()))?;
            let gain = fractional_gain(prob, m).map_err(|e| CliError::Config(e.to_string()))?;
            let _ = writeln!(
                out,
                "{},{},{},{}",
                format_sig(p, 9),
                m.get(),
                format_sig(gain, 9),
                format_sig(majority_error(prob, m).value(), 9)
            );
        }
    }
    Ok((out, None))
}

fn invalid(e: TerrainError) -> CliError {
    CliError::Validation(e.to_string())
}

/// Scenario flying between the graph's extremal pair.
pub fn extremal_scenario(name: String, graph: LandmarkGraph) -> Result<Scenario, CliError> {
    let (s, t) = extremal_pair(&graph)
        .ok_or_else(|| CliError::Validation("graph has no landmarks".to_string()))?;
    if s == t {
        return Err(CliError::Validation(
            "graph has no two connected landmarks".to_string(),
        ));
    }
    let plan = shortest_flight_plan(&graph, s, t).map_err(invalid)?;
    Scenario::new(name, graph, plan.path().to_vec()).map_err(invalid)
}

pub fn gen(gen: Gen) -> Result<Output, CliError> {
    match gen {
        Gen::Grid {
            rows,
            cols,
            spacing,
            name,
            out,
        } => {
            let graph = generate_grid(rows, cols, spacing).map_err(invalid)?;
            let name = name.unwrap_or_else(|| format!("grid-{rows}x{cols}"));
            Ok((extremal_scenario(name, graph)?.to_json(), out))
        }
        Gen::Osm { file, name, out } => {
            let bytes = std::fs::read(&file)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", file.display())))?;
            let graph = parse_osm_subset(&bytes)
                .map_err(|e| CliError::Validation(format!("{}: {e}", file.display())))?;
            let name = name.unwrap_or_else(|| {
                file.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "osm".to_string())
            });
            Ok((extremal_scenario(name, graph)?.to_json(), out))
        }
    }
}

pub fn run(args: RunArgs) -> Result<Output, CliError> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    config.apply(Overrides {
        scenario: args.scenario,
        p: args.p,
        q: args.q,
        ratio: args.ratio,
        m: args.m,
        trials: args.trials,
        master_seed: args.seed,
        retry_cap: args.retry_cap,
        speed: args.speed,
        tie_policy: args.tie_policy.map(Into::into),
        workers: args.workers,
        output: args.out,
    });
    run_config(&config)
}

pub fn run_config(config: &ExperimentConfig) -> Result<Output, CliError> {
    let resolved = config.resolve()?;
    let scenario = load_scenario(&resolved.scenario)?;
    let table = run_experiment(&scenario, &resolved.experiment)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok((table.to_csv(), resolved.output))
}

pub fn validate(path: &Path) -> Result<Output, CliError> {
    let scenario = load_scenario(path)?;
    let g = &scenario.graph;
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", scenario.name);
    let _ = writeln!(out, "landmarks: {}", g.vertex_count());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    let _ = writeln!(out, "connected: {}", g.is_connected());
    let _ = writeln!(
        out,
        "plan: {} -> {}, {} segments, {} m",
        scenario.plan.source(),
        scenario.plan.terminal(),
        scenario.plan.segments(),
        format_sig(scenario.plan_length(), 9)
    );
    Ok((out, None))
}

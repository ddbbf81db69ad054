//! Command-line front end for the tripartite Wigner's-friend simulator.

mod angle;
mod render;

use std::hash::{BuildHasher, Hasher};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use render::{Format, Histogram, HistogramBin, SettingRun, SweepDoc};
use wfsim_core::{
    analytic_correlators, classical_bound_oracle, correlator_from_counts, evaluate,
    exact_wire_distribution, export_qasm, run_fusion_demo, run_sampled, sample_wire_histogram,
    scenario_circuit, w_state_rotation_circuit, w_state_unitary_circuit, EvalMode,
    MeasurementSetting, RunConfig, SamplingMode, WPrepMethod,
};

const SEED_ENV: &str = "WFSIM_SEED";

#[derive(Parser)]
#[command(
    name = "wfsim",
    version,
    about = "Tripartite Wigner's-friend scenario: statevector simulation, shot sampling and the correlation inequality",
    after_help = "Angles accept decimals or pi fractions (pi/4, 3pi/8). Seeds come from --seed, \
                  the WFSIM_SEED environment variable, or fresh entropy (printed in the output \
                  so every run can be reproduced)."
)]
struct Cli {
    /// Print the JSON schema describing every JSON output, then exit.
    #[arg(long)]
    schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario at one angle: all eight settings (counts table plus
    /// inequality report) or a single setting.
    Run(RunArgs),
    /// Evaluate the inequality over a theta grid (start:stop:count).
    Sweep(SweepArgs),
    /// Histograms of the two W-state preparation circuits.
    #[command(name = "w-state")]
    WState(WStateArgs),
    /// The fusion-gate demonstration for Alice's laboratory.
    #[command(name = "fusion-demo")]
    FusionDemo(FusionArgs),
    /// Write a scenario circuit as OpenQASM 2.0.
    Export(ExportArgs),
    /// Exhaustively check the deterministic-strategy bound of 1.
    #[command(name = "classical-bound")]
    ClassicalBound(ClassicalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Draw valid shots from the exact postselected distribution.
    Exact,
    /// Sample all nine wires and reject shots with nonzero fusion ancillas.
    Rejection,
}

impl ModeArg {
    fn to_core(self) -> SamplingMode {
        match self {
            ModeArg::Exact => SamplingMode::ExactPostselect,
            ModeArg::Rejection => SamplingMode::PhysicalRejection,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Rotation,
    Unitary,
}

impl MethodArg {
    fn to_core(self) -> WPrepMethod {
        match self {
            MethodArg::Rotation => WPrepMethod::Rotation,
            MethodArg::Unitary => WPrepMethod::Unitary,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Rotation angle of the shared state.
    #[arg(long, value_parser = angle::parse_angle)]
    theta: f64,
    /// Restrict to one measurement setting, e.g. A1B0C0.
    #[arg(long, value_parser = parse_setting)]
    setting: Option<MeasurementSetting>,
    /// Shots per setting (attempts in rejection mode).
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long = "w-method", value_enum, default_value_t = MethodArg::Rotation)]
    w_method: MethodArg,
    /// Exact expectation values instead of sampling.
    #[arg(long)]
    analytic: bool,
    /// Worker threads for the shot loop (the counts do not depend on this).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Theta grid as start:stop:count, endpoints included.
    #[arg(value_parser = angle::parse_grid)]
    grid: angle::GridSpec,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long = "w-method", value_enum, default_value_t = MethodArg::Rotation)]
    w_method: MethodArg,
    #[arg(long)]
    analytic: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct WStateArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Rotation)]
    method: MethodArg,
    #[arg(long, default_value_t = 8192)]
    shots: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FusionArgs {
    #[arg(long, default_value_t = 8192)]
    shots: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long, value_parser = angle::parse_angle)]
    theta: f64,
    #[arg(long, value_parser = parse_setting)]
    setting: MeasurementSetting,
    #[arg(long = "w-method", value_enum, default_value_t = MethodArg::Rotation)]
    w_method: MethodArg,
    /// Output path for the .qasm file.
    #[arg(long)]
    out: std::path::PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ClassicalArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    if let Some(seed) = flag {
        return seed;
    }
    if let Ok(value) = std::env::var(SEED_ENV) {
        if let Ok(seed) = value.parse() {
            return seed;
        }
        eprintln!("warning: ignoring unparseable {SEED_ENV}={value}");
    }
    // Fresh entropy from the process's randomly keyed hasher.
    let mut hasher = std::collections::hash_map::RandomState::new().build_hasher();
    hasher.write_u64(
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.subsec_nanos() as u64)
            .unwrap_or(0),
    );
    hasher.finish()
}

fn parse_setting(s: &str) -> Result<MeasurementSetting, String> {
    s.parse().map_err(|e: wfsim_core::Error| e.to_string())
}

fn cmd_run(args: RunArgs) -> Result<(), String> {
    let w_method = args.w_method.to_core();
    if let Some(setting) = args.setting {
        let doc = if args.analytic {
            let e = analytic_correlators(args.theta).get(setting).unwrap().e;
            SettingRun::analytic(args.theta, setting, w_method.label(), e)
        } else {
            let seed = resolve_seed(args.seed);
            let cfg = RunConfig {
                shots: args.shots,
                seed,
                mode: args.mode.to_core(),
                theta: args.theta,
                setting,
                w_method,
                workers: args.workers,
            };
            let table = run_sampled(&cfg).map_err(|e| e.to_string())?;
            let (e, sigma_e) = correlator_from_counts(&table).map_err(|e| e.to_string())?;
            SettingRun {
                schema: render::SETTING_SCHEMA.to_string(),
                theta: args.theta,
                setting: setting.label(),
                mode: cfg.mode.label().to_string(),
                w_method: w_method.label().to_string(),
                shots: args.shots,
                seed: Some(seed),
                e,
                sigma_e,
                valid_shots: table.valid_shots,
                attempted_shots: table.attempted_shots,
                counts: Some(table.counts),
            }
        };
        match args.format {
            Format::Text => print!("{}", doc.text()),
            Format::Json => println!("{}", render::to_pretty_json(&doc)),
            Format::Csv => println!("{}", doc.csv()),
        }
        return Ok(());
    }

    let eval = if args.analytic {
        EvalMode::Analytic
    } else {
        EvalMode::Sampled {
            shots: args.shots,
            seed: resolve_seed(args.seed),
            mode: args.mode.to_core(),
            workers: args.workers,
        }
    };
    let report = evaluate(args.theta, w_method, &eval).map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => print!("{}", render::report_text(&report)),
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => println!("{}\n{}", render::CSV_HEADER, render::csv_row(&report)),
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), String> {
    let grid = args.grid.0;
    let eval = if args.analytic {
        EvalMode::Analytic
    } else {
        EvalMode::Sampled {
            shots: args.shots,
            seed: resolve_seed(args.seed),
            mode: args.mode.to_core(),
            workers: args.workers,
        }
    };
    let rows = wfsim_core::theta_sweep(&grid, args.w_method.to_core(), &eval)
        .map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => print!("{}", render::sweep_text(&rows)),
        Format::Json => println!(
            "{}",
            render::to_pretty_json(&SweepDoc { schema: render::SWEEP_SCHEMA.to_string(), rows })
        ),
        Format::Csv => {
            println!("{}", render::CSV_HEADER);
            for row in &rows {
                println!("{}", render::csv_row(row));
            }
        }
    }
    Ok(())
}

fn cmd_w_state(args: WStateArgs) -> Result<(), String> {
    let seed = resolve_seed(args.seed);
    let mut circuit = match args.method {
        MethodArg::Rotation => w_state_rotation_circuit(),
        MethodArg::Unitary => w_state_unitary_circuit(),
    };
    for q in [0, 1, 2] {
        circuit.measure(q);
    }
    let exact = exact_wire_distribution(&circuit).map_err(|e| e.to_string())?;
    let sampled = sample_wire_histogram(&circuit, args.shots, seed, "w-state", 1)
        .map_err(|e| e.to_string())?;
    let mut bins: Vec<HistogramBin> = exact
        .iter()
        .map(|(bits, p)| {
            let count = *sampled.counts.get(bits).unwrap_or(&0);
            HistogramBin {
                bits: bits.clone(),
                analytic: *p,
                count,
                frequency: count as f64 / sampled.valid_shots as f64,
            }
        })
        .collect();
    bins.sort_by(|a, b| a.bits.cmp(&b.bits));
    let doc = Histogram {
        schema: "wfsim-wstate/v1".to_string(),
        shots: args.shots,
        seed,
        valid_shots: sampled.valid_shots,
        attempted_shots: sampled.attempted_shots,
        method: Some(
            match args.method {
                MethodArg::Rotation => "rotation",
                MethodArg::Unitary => "unitary",
            }
            .to_string(),
        ),
        success_ratio: None,
        bins,
    };
    match args.format {
        Format::Text => print!("{}", doc.text("abc")),
        Format::Json => println!("{}", render::to_pretty_json(&doc)),
        Format::Csv => println!("{}", doc.csv("abc")),
    }
    Ok(())
}

fn cmd_fusion_demo(args: FusionArgs) -> Result<(), String> {
    let seed = resolve_seed(args.seed);
    let demo = run_fusion_demo(args.shots, seed).map_err(|e| e.to_string())?;
    let valid = demo.histogram.valid_shots;
    let mut bins: Vec<HistogramBin> = demo
        .exact
        .iter()
        .map(|(bits, p)| {
            let count = *demo.histogram.counts.get(bits).unwrap_or(&0);
            HistogramBin {
                bits: bits.clone(),
                analytic: *p,
                count,
                frequency: count as f64 / valid as f64,
            }
        })
        .collect();
    bins.sort_by(|a, b| a.bits.cmp(&b.bits));
    let doc = Histogram {
        schema: "wfsim-fusion/v1".to_string(),
        shots: args.shots,
        seed,
        valid_shots: valid,
        attempted_shots: demo.histogram.attempted_shots,
        method: None,
        success_ratio: Some(valid as f64 / demo.histogram.attempted_shots as f64),
        bins,
    };
    // Bitstrings list a, b, c, then the surviving record wire.
    match args.format {
        Format::Text => print!("{}", doc.text("abcr")),
        Format::Json => println!("{}", render::to_pretty_json(&doc)),
        Format::Csv => println!("{}", doc.csv("abcr")),
    }
    Ok(())
}

fn cmd_export(args: ExportArgs) -> Result<(), String> {
    let circuit = scenario_circuit(args.theta, args.setting, args.w_method.to_core())
        .map_err(|e| e.to_string())?;
    let text = export_qasm(&circuit).map_err(|e| e.to_string())?;
    std::fs::write(&args.out, &text)
        .map_err(|e| format!("cannot write {}: {e}", args.out.display()))?;
    match args.format {
        Format::Text => println!("wrote {} ({} bytes)", args.out.display(), text.len()),
        Format::Json => println!(
            "{}",
            render::to_pretty_json(&render::ExportDoc {
                schema: render::EXPORT_SCHEMA.to_string(),
                path: args.out.display().to_string(),
                bytes: text.len(),
            })
        ),
        Format::Csv => println!("path,bytes\n{},{}", args.out.display(), text.len()),
    }
    Ok(())
}

fn cmd_classical_bound(args: ClassicalArgs) -> Result<(), String> {
    let bound = classical_bound_oracle();
    let all_one = bound.strategy_values.iter().all(|v| *v == 1.0);
    match args.format {
        Format::Text => {
            println!(
                "max I over {} deterministic strategies = {} (every strategy reaches exactly 1: {})",
                bound.strategy_values.len(),
                bound.max,
                all_one
            );
        }
        Format::Json => println!(
            "{}",
            render::to_pretty_json(&render::ClassicalDoc {
                schema: render::CLASSICAL_SCHEMA.to_string(),
                max_i: bound.max,
                strategies: bound.strategy_values.len(),
                all_values_equal_one: all_one,
            })
        ),
        Format::Csv => {
            println!("max_i,strategies");
            println!("{},{}", bound.max, bound.strategy_values.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.schema {
        print!("{}", render::JSON_SCHEMA);
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (try --help)");
        return ExitCode::from(2);
    };
    let outcome = match command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::WState(args) => cmd_w_state(args),
        Command::FusionDemo(args) => cmd_fusion_demo(args),
        Command::Export(args) => cmd_export(args),
        Command::ClassicalBound(args) => cmd_classical_bound(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

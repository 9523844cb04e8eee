//! `dunkl-up`: batch verification front end.
//!
//! ```text
//! dunkl-up verify <config.json> [--no-meta]     bound sweep -> JSON/CSV report
//! dunkl-up transform --mu M --alpha A (--preset NAME | --input FILE) --out FILE
//! dunkl-up selftest                             full acceptance suite
//! dunkl-up sweep <config.json> [--no-meta]      functional summaries
//! ```
//!
//! Exit codes: 0 pass, 1 configuration error, 2 verification failure.
//! `DUNKL_UP_THREADS` caps parallelism (0 = automatic).

use clap::{Args, Parser, Subcommand};
use dunkl_core::error::Error;
use dunkl_core::quadrature::{DomainTag, SampledFunction};
use dunkl_core::special::MuParam;
use dunkl_core::transforms::{warning_strings, FracOrder, FracPlan};
use dunkl_core::C64;
use dunkl_up::config::{ScenarioConfig, SchemeConfig};
use dunkl_up::presets::resolve_function;
use dunkl_up::runner::{render_sweep, render_verify, run_sweep, run_verify};
use dunkl_up::{build_pool, selftest, thread_count_from_env};

#[derive(Parser)]
#[command(name = "dunkl-up", version, about = "Dunkl uncertainty-principle verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bound-verification sweep described by a JSON config.
    Verify {
        config: String,
        /// omit timestamps/metadata so reports are byte-reproducible
        #[arg(long)]
        no_meta: bool,
    },
    /// Apply one fractional transform and write (w, Re, Im) rows as CSV.
    Transform(TransformArgs),
    /// Run the full acceptance suite and print the criterion table.
    Selftest,
    /// Compute functional summaries over the configured grid.
    Sweep {
        config: String,
        #[arg(long)]
        no_meta: bool,
    },
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    mu: f64,
    #[arg(long)]
    alpha: f64,
    /// named battery function or extremal preset
    #[arg(long, conflicts_with = "input")]
    preset: Option<String>,
    /// CSV of x,re,im samples on the scheme nodes
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    out: String,
    #[arg(long, default_value_t = 12.0)]
    radius: f64,
    #[arg(long, default_value_t = 48)]
    panels: usize,
    #[arg(long, default_value_t = 16)]
    nodes_per_panel: usize,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify { config, no_meta } => cmd_verify(&config, no_meta),
        Command::Transform(args) => cmd_transform(&args),
        Command::Selftest => cmd_selftest(),
        Command::Sweep { config, no_meta } => cmd_sweep(&config, no_meta),
    };
    std::process::exit(code);
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Domain(_) => 1,
        _ => 2,
    }
}

fn cmd_verify(path: &str, no_meta: bool) -> i32 {
    let config = match ScenarioConfig::load(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    let pool = build_pool(thread_count_from_env());
    match run_verify(&config, &pool, no_meta) {
        Ok(outcome) => {
            let text = render_verify(&outcome.report, config.output.format);
            if let Err(e) = std::fs::write(&config.output.path, text) {
                eprintln!("cannot write {}: {e}", config.output.path);
                return 1;
            }
            let s = &outcome.report.summary;
            println!(
                "{} rows, {} violations, {} row errors ({} consistency) -> {}",
                s.rows, s.violations, s.row_errors, s.consistency_errors, config.output.path
            );
            if outcome.failed {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("{e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_sweep(path: &str, no_meta: bool) -> i32 {
    let config = match ScenarioConfig::load(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    let pool = build_pool(thread_count_from_env());
    match run_sweep(&config, &pool, no_meta) {
        Ok(report) => {
            let errors = report.rows.iter().filter(|r| r.error.is_some()).count();
            let text = render_sweep(&report, config.output.format);
            if let Err(e) = std::fs::write(&config.output.path, text) {
                eprintln!("cannot write {}: {e}", config.output.path);
                return 1;
            }
            println!(
                "{} rows, {} errors -> {}",
                report.rows.len(),
                errors,
                config.output.path
            );
            if errors > 0 {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("{e}");
            exit_code_for(&e)
        }
    }
}

fn load_samples_csv(
    path: &str,
    scheme: &dunkl_core::quadrature::QuadratureScheme,
) -> Result<SampledFunction, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
    let mut values = Vec::new();
    let mut nodes_seen = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("x,") {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "{path}:{}: expected x,re,im",
                lineno + 1
            )));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("{path}:{}: {e}", lineno + 1)))
        };
        nodes_seen.push(parse(parts[0])?);
        values.push(C64::new(parse(parts[1])?, parse(parts[2])?));
    }
    if values.len() != scheme.len() {
        return Err(Error::Config(format!(
            "{path}: {} samples, scheme has {} nodes",
            values.len(),
            scheme.len()
        )));
    }
    for (k, (&x, &node)) in nodes_seen.iter().zip(scheme.nodes()).enumerate() {
        if (x - node).abs() > 1e-9 * (1.0 + node.abs()) {
            return Err(Error::Config(format!(
                "{path}: sample {k} at x = {x} does not match scheme node {node}"
            )));
        }
    }
    Ok(SampledFunction {
        values,
        domain: DomainTag::Position,
        scheme_key: scheme.key(),
    })
}

fn cmd_transform(args: &TransformArgs) -> i32 {
    let run = || -> Result<(String, Vec<String>), Error> {
        let scheme = SchemeConfig {
            radius: args.radius,
            panels: args.panels,
            nodes_per_panel: args.nodes_per_panel,
        }
        .build()?;
        let mu = MuParam::new(args.mu)?;
        let order = FracOrder::classify(args.alpha)?;
        let input = match (&args.preset, &args.input) {
            (Some(name), None) => {
                let f = resolve_function(name, mu, &scheme)?;
                SampledFunction::from_fn(&scheme, DomainTag::Position, |x| f.handle.eval(x))
            }
            (None, Some(path)) => load_samples_csv(path, &scheme)?,
            _ => {
                return Err(Error::Config(
                    "exactly one of --preset or --input is required".into(),
                ))
            }
        };
        let plan = FracPlan::new(mu, order, &scheme)?;
        let result = plan.apply(&input, &scheme)?;
        let warnings = warning_strings(&result.warnings);
        let mut out = String::new();
        for w in &warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
        out.push_str("w,re,im\n");
        for (k, &w) in scheme.nodes().iter().enumerate() {
            let v = result.samples.values[k];
            out.push_str(&format!("{w},{},{}\n", v.re, v.im));
        }
        Ok((out, warnings))
    };
    match run() {
        Ok((text, warnings)) => {
            if let Err(e) = std::fs::write(&args.out, text) {
                eprintln!("cannot write {}: {e}", args.out);
                return 1;
            }
            for w in warnings {
                eprintln!("warning: {w}");
            }
            println!("wrote {}", args.out);
            0
        }
        Err(e) => {
            eprintln!("{e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_selftest() -> i32 {
    let results = selftest::run_all();
    if selftest::print_table(&results) {
        0
    } else {
        2
    }
}

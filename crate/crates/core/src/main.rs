use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lcd_mhd::config::{parse_list, threads_from_env, RunConfig};
use lcd_mhd::convergence::convergence_study;
use lcd_mhd::dump::{read_dump, write_dump, write_slice_csv, Axis, FieldDump};
use lcd_mhd::solver::run::run_with;
use lcd_mhd::solver::SchemeVariant;
use lcd_mhd::stepper::TimeControls;
use lcd_mhd::MhdError;

/// Finite-volume solver for 2-D ideal MHD with the LCD-PCCU scheme.
#[derive(Parser, Debug)]
#[command(name = "lcd-mhd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one benchmark problem and write dumps and diagnostics.
    Run(RunArgs),
    /// Alfven-wave mesh-refinement study.
    Convergence(ConvergenceArgs),
    /// Extract a row or column of a dump as CSV.
    Slice(SliceArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    scheme: Option<SchemeVariant>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    dt_min: Option<f64>,
    /// Clamp density and pressure at a small floor instead of failing.
    #[arg(long)]
    floor: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated output times.
    #[arg(long)]
    snapshot_times: Option<String>,
}

#[derive(Args, Debug)]
struct ConvergenceArgs {
    #[arg(long, default_value = "alfven")]
    problem: String,
    /// Comma-separated cells per direction, each twice the previous.
    #[arg(long, default_value = "20,40,80")]
    meshes: String,
    #[arg(long, default_value = "lcd-pccu")]
    scheme: SchemeVariant,
    #[arg(long, default_value_t = TimeControls::default().cfl)]
    cfl: f64,
    #[arg(long)]
    t_final: Option<f64>,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SliceArgs {
    /// Input dump.
    #[arg(long = "in")]
    input: PathBuf,
    /// `x` for a row at fixed y, `y` for a column at fixed x.
    #[arg(long)]
    axis: Axis,
    /// Fixed coordinate, snapped to the nearest cell centre.
    #[arg(long)]
    at: f64,
    /// Comma-separated variables among rho,u,v,w,p,b1,b2,b3,E,A,B.
    #[arg(long, default_value = "rho,u,v,w,p,b1,b2,b3")]
    vars: String,
    #[arg(long)]
    out: PathBuf,
}

fn snapshot_name(t: f64) -> String {
    format!("snapshot_t{t:.6}.dump")
}

fn cmd_run(args: RunArgs) -> Result<(), MhdError> {
    let file = match &args.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    let flags = RunConfig {
        problem: args.problem,
        scheme: args.scheme,
        nx: args.nx,
        ny: args.ny,
        theta: args.theta,
        cfl: args.cfl,
        eps: args.eps,
        t_final: args.t_final,
        dt_min: args.dt_min,
        floor: args.floor.then_some(true),
        out: args.out,
        snapshot_times: args.snapshot_times.as_deref().map(parse_list).transpose()?,
    };
    let r = file.overridden_by(flags).resolve()?;
    std::fs::create_dir_all(&r.out)?;
    let gas = r.spec.gas();
    let variant = r.settings.scheme.variant.name();
    let t_final = r.settings.controls.t_final;
    let write = |name: String, t: f64, field: &lcd_mhd::solver::AugField| -> Result<(), MhdError> {
        let dump = FieldDump::from_field(field, &gas, t, variant, r.spec.name)?;
        write_dump(&dump, &r.out.join(name))
    };
    let initial = r.spec.initial_field(r.nx, r.ny)?;
    let out = run_with(initial, &r.settings, |t, field| {
        if t < t_final {
            write(snapshot_name(t), t, field)?;
        }
        Ok(())
    })?;
    write("final.dump".into(), t_final, &out.field)?;
    out.diagnostics.write_csv(&r.out.join("diagnostics.csv"))?;
    println!(
        "{} {}x{} {}: t = {} in {} steps, max |div b| = {:.3e}, mass drift = {:.3e}",
        r.spec.name,
        r.nx,
        r.ny,
        variant,
        t_final,
        out.steps,
        out.diagnostics.max_div_linf(),
        out.diagnostics.mass_drift()
    );
    Ok(())
}

fn cmd_convergence(args: ConvergenceArgs) -> Result<(), MhdError> {
    if args.problem.trim() != "alfven" {
        return Err(MhdError::Config(format!(
            "convergence studies need an exact solution; only `alfven` is supported, got `{}`",
            args.problem
        )));
    }
    let meshes: Vec<usize> = parse_list(&args.meshes)?;
    let table = convergence_study(&meshes, args.scheme, args.cfl, args.t_final)?;
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    table.write_csv(&args.out)?;
    println!("{} at t = {}", table.variant, table.t_final);
    println!("{:>6} {:>11} {:>6} {:>11} {:>6}", "mesh", "err u", "rate", "err b3", "rate");
    for row in &table.rows {
        let rate = |r: Option<f64>| r.map(|r| format!("{r:.2}")).unwrap_or_else(|| "-".into());
        println!(
            "{:>6} {:>11.3e} {:>6} {:>11.3e} {:>6}",
            row.n,
            row.err_u,
            rate(row.rate_u),
            row.err_b3,
            rate(row.rate_b3)
        );
    }
    Ok(())
}

fn cmd_slice(args: SliceArgs) -> Result<(), MhdError> {
    let dump = read_dump(&args.input)?;
    let vars: Vec<String> = parse_list(&args.vars)?;
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    write_slice_csv(&dump, args.axis, args.at, &vars, Path::new(&args.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = threads_from_env().and_then(|threads| {
        if let Some(n) = threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| MhdError::Config(e.to_string()))?;
        }
        match cli.command {
            Command::Run(a) => cmd_run(a),
            Command::Convergence(a) => cmd_convergence(a),
            Command::Slice(a) => cmd_slice(a),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_runtime_failure() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use thermal_transistor::channels::{channels_analytic, write_channels_csv};
use thermal_transistor::dynamics::DriveSpec;
use thermal_transistor::experiments::{
    parse_range, preset_names, run_modulation, run_populations, run_sweep, write_populations_csv, write_sweep_csv,
    Axis, Config, SweepSpec,
};
use thermal_transistor::format::sci;
use thermal_transistor::model::{validate_secular, EigenSystem};
use thermal_transistor::{Error, Terminal, Transistor};

#[derive(Parser)]
#[command(
    name = "simulate",
    about = "Three-qubit quantum thermal transistor in common reservoirs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Named figure preset; a config file may override it.
    #[arg(long, global = true)]
    preset: Option<String>,
    #[arg(long, global = true)]
    axis: Option<String>,
    /// Sweep range as lo:hi.
    #[arg(long, global = true, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, global = true)]
    points: Option<usize>,
    #[arg(long, global = true)]
    control: Option<Terminal>,
    /// Output CSV (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Steady currents, amplification and populations along an axis.
    Sweep,
    /// Drive the dark state and compare currents before and after.
    Modulate {
        /// Also write the Rabi trajectory of rho44 over one period.
        #[arg(long)]
        trajectory: Option<PathBuf>,
        #[arg(long, default_value_t = 101)]
        trajectory_points: usize,
    },
    /// Steady populations versus T_M and the lambda1 comparison.
    Populations,
    /// Eigen-operator channels as a table.
    ChannelsDump,
    /// Regime and solver diagnostics for the configured point.
    Validate,
    /// List the figure presets.
    Presets,
}

enum Failure {
    Config(Error),
    AllFailed,
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Other(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Other(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::AllFailed) => {
            eprintln!("every point failed");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load_config(c: &Common) -> Result<Config, Error> {
    let mut cfg = match &c.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            match &c.preset {
                Some(name) => Config::parse(&format!("preset = {name}\n{text}"))?,
                None => Config::parse(&text)?,
            }
        }
        None => match &c.preset {
            Some(name) => Config::preset(name)?,
            None => Config::default(),
        },
    };
    if let Some(a) = &c.axis {
        cfg.axis = Some(a.parse::<Axis>()?);
    }
    if let Some(r) = &c.range {
        cfg.range = Some(parse_range(r)?);
        cfg.values = None;
    }
    if let Some(n) = c.points {
        cfg.points = Some(n);
    }
    if let Some(t) = c.control {
        cfg.control = t;
    }
    cfg.resolved_params()?;
    Ok(cfg)
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let c = &cli.common;
    if let Command::Presets = cli.command {
        for name in preset_names() {
            println!("{name}");
        }
        return Ok(());
    }
    let cfg = load_config(c).map_err(Failure::Config)?;
    let params = cfg.resolved_params().map_err(Failure::Config)?;

    match &cli.command {
        Command::Sweep => {
            let spec = SweepSpec::from_config(&cfg).map_err(Failure::Config)?;
            let records = run_sweep(&spec, c.workers)?;
            write_sweep_csv(&records, output(&c.out)?)?;
            if records.iter().all(|r| r.failed()) {
                return Err(Failure::AllFailed);
            }
        }
        Command::Modulate {
            trajectory,
            trajectory_points,
        } => {
            let (omega, duration) = cfg.drive().map_err(Failure::Config)?;
            let rho44 = cfg.rho44.unwrap_or(0.0);
            let points: Vec<(f64, _)> = match cfg.axis {
                Some(axis) => {
                    let grid = cfg.grid().map_err(Failure::Config)?;
                    grid.into_iter().map(|v| (v, axis.apply(&params, v))).collect()
                }
                None => vec![(params.temperature(Terminal::M), params)],
            };
            let mut w = csv::Writer::from_writer(output(&c.out)?);
            w.write_record([
                "axis_value",
                "rho44_before",
                "rho44_after",
                "Q_L_before",
                "Q_M_before",
                "Q_R_before",
                "Q_L_after",
                "Q_M_after",
                "Q_R_after",
                "predicted_scale",
                "error",
            ])?;
            let mut ok = 0;
            let mut first_trajectory = None;
            for (v, p) in points {
                let report = Transistor::new(p)
                    .and_then(|t| DriveSpec::new(omega, duration, t.eigen()))
                    .and_then(|d| run_modulation(&p, &d, rho44, *trajectory_points));
                let mut row = vec![sci(v)];
                match report {
                    Ok(r) => {
                        ok += 1;
                        row.extend([sci(r.rho44_before), sci(r.rho44_after)]);
                        row.extend(r.before.q.iter().chain(&r.after.q).map(|&x| sci(x)));
                        row.extend([sci(r.predicted_scale), String::new()]);
                        first_trajectory.get_or_insert(r.trajectory);
                    }
                    Err(e) => {
                        row.extend(std::iter::repeat_n(String::new(), 9));
                        row.push(e.to_string());
                    }
                }
                w.write_record(&row)?;
            }
            w.flush()?;
            if let (Some(path), Some(traj)) = (trajectory, first_trajectory) {
                let mut tw = csv::Writer::from_path(path)?;
                tw.write_record(["t", "rho_44"])?;
                for (t, r) in traj {
                    tw.write_record([sci(t), sci(r)])?;
                }
                tw.flush()?;
            }
            if ok == 0 {
                return Err(Failure::AllFailed);
            }
        }
        Command::Populations => {
            let grid = cfg.grid().map_err(Failure::Config)?;
            let records = run_populations(&params, &grid, cfg.compare_lambda1, c.workers)?;
            write_populations_csv(&records, output(&c.out)?)?;
            if records.iter().all(|r| r.populations.is_err()) {
                return Err(Failure::AllFailed);
            }
        }
        Command::ChannelsDump => {
            let t = Transistor::new(params).map_err(Failure::Config)?;
            write_channels_csv(&channels_analytic(&params, t.eigen())?, output(&c.out)?)?;
        }
        Command::Validate => validate(&params, cfg.rho44, c)?,
        Command::Presets => unreachable!(),
    }
    Ok(())
}

fn validate(params: &thermal_transistor::SystemParams, rho44: Option<f64>, c: &Common) -> Result<(), Failure> {
    let mut out = output(&c.out)?;
    let report = validate_secular(params)?;
    writeln!(out, "secular: {}", report.flag)?;
    writeln!(out, "  2g / max(gamma) = {:.6e}", report.coupling_ratio)?;
    writeln!(out, "  min(omega) / g = {:.6e}", report.frequency_ratio)?;
    writeln!(out, "  min Bohr gap = {:.6e}", report.min_bohr_gap)?;
    for w in &report.warnings {
        writeln!(out, "  warning: {w}")?;
    }
    let t = Transistor::new(*params).map_err(Failure::Config)?;
    let numeric = EigenSystem::numeric(params)?;
    let max_rel = t
        .eigen()
        .eigenvalues
        .iter()
        .zip(&numeric.eigenvalues)
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    writeln!(
        out,
        "eigenvalues: max relative deviation from diagonalization {max_rel:.3e}"
    )?;
    writeln!(out, "rate matrix: kernel dimension {}", t.rates().kernel_dimension())?;
    let rho44 = if params.is_fully_common() {
        Some(rho44.unwrap_or(0.0))
    } else {
        None
    };
    let (_, q) = t.steady_currents(rho44)?;
    writeln!(
        out,
        "currents: Q_L = {:.6e}, Q_M = {:.6e}, Q_R = {:.6e}, conservation residual {:.3e}",
        q.q[0],
        q.q[1],
        q.q[2],
        q.conservation_residual()
    )?;
    Ok(())
}

//! Sweep defined by a flat configuration text, written as CSV.

use thermal_transistor::experiments::{run_sweep, write_sweep_csv, Config, SweepSpec};

const CONFIG: &str = "
preset = fig2
# coarser grid over the same window
points = 12
lambda1 = 0.5
";

fn main() -> thermal_transistor::Result<()> {
    let cfg = Config::parse(CONFIG)?;
    let spec = SweepSpec::from_config(&cfg)?;
    let records = run_sweep(&spec, 4)?;
    for r in records.iter().filter(|r| !r.errors.is_empty()) {
        eprintln!("{}: {}", r.axis_value, r.errors.join("; "));
    }
    write_sweep_csv(&records, std::io::stdout())?;
    Ok(())
}

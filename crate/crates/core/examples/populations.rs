//! Steady populations against the control temperature and the shift
//! caused by correlating the left reservoir.

use thermal_transistor::experiments::{linspace, run_populations, write_populations_csv};
use thermal_transistor::SystemParams;

fn main() -> thermal_transistor::Result<()> {
    let base = SystemParams::reference().with_g(0.7).with_lambda([0.0; 3]);
    let grid = linspace(0.1, 3.0, 8)?;
    let records = run_populations(&base, &grid, Some(0.9), 4)?;
    write_populations_csv(&records, std::io::stdout())?;
    Ok(())
}

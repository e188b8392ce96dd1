//! Figure-level runs: configuration, presets, sweeps and CSV output.

mod config;
mod modulation;
mod populations;
mod presets;
mod sweep;

pub use config::{linspace, parse_range, with_gamma_bias, Axis, Config};
pub use modulation::{run_modulation, ModulationReport};
pub use populations::{run_populations, write_populations_csv, PopulationRecord};
pub use presets::{preset_names, preset_source};
pub use sweep::{run_point, run_sweep, write_sweep_csv, RunRecord, SweepSpec, SWEEP_HEADER};

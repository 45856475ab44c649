//! Sweeps that compare exact values with asymptotic main terms over
//! `(n, v)` grids, plus CSV/JSON emission and regression ceilings.

mod audit;
mod config;
mod emit;
mod family;
mod presets;
mod regression;
mod sweep;

pub use audit::{ismail_masson_centre_audit, odd_parity_audit, CentreFinding, ParityFinding, EXPLAINED_BOUND};
pub use config::{Function, SweepConfig, VPoint, LARGE_N, MIN_DIGITS_LARGE_N};
pub use emit::{emit, format_real, render, render_csv, render_json, Format, CSV_COLUMNS, EMIT_DIGITS};
pub use presets::{all_presets, preset, preset_names, DEFAULT_CEILINGS, PRESETS};
pub use regression::{
    regression_check, regression_check_file, Ceilings, CellVerdict, RegressionReport, CEILING_SLACK,
};
pub use sweep::{cell_label, evaluate_point, run_sweep, ComparisonRecord, PointEvaluation};

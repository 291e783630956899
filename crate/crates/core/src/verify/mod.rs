//! Configuration, bundled fixtures and the aggregated verification report.

mod checks;
mod config;
mod fixtures;
mod report;

pub use checks::run_verify_all;
pub use config::{RunConfig, Tolerances};
pub use fixtures::{
    bundled_lattices, bundled_media, bundled_medium, bundled_model, bundled_models, load_medium,
    load_model,
};
pub use report::{CheckRecord, Report};

//! Render-and-save timing with and without maidr, per fixture and plotting
//! layer, summarised as mean ± std with per-type overhead.

pub mod config;
pub mod report;
pub mod samples;
pub mod stats;
pub mod trial;

pub use config::BenchConfig;
pub use report::{LayerTable, Overall, Report, ReportError, Row};
pub use samples::{Condition, Sample};
pub use trial::{TrialError, TrialSpec};

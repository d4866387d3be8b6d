//! Evaluation arithmetic: confusion counts and class-weighted reports, inter-rater reliability,
//! and relative error of rate estimates against observer panels.

mod classification;
mod relative;
mod reliability;

pub use classification::{
    confusion, weighted_report, ClassMetrics, ConfusionMatrix, WeightedReport,
};
pub use relative::{relative_error, relative_error_values, ErrorReport};
pub use reliability::{krippendorff_alpha_interval, percent_agreement, RaterMatrix};

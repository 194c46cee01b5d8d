//! Eventual periodicity of scoring Grundy sequences.

mod detect;
mod lemma;
mod scan;

pub use detect::{certify, certify_period, detect_period, holds_on, sequence_digest, PeriodReport, DEFAULT_MIN_WINDOW};
pub use lemma::{check_lemma, BoundFailure, BoundKind, LemmaFailure, LemmaReport};
pub use scan::{
    conjecture_scan, instances, run_instance, Family, Hypothesis, InlineRules, Instance, Relation, ScanReport, ScanRow,
    ScanSpec, Status, CSV_HEADER,
};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::octal::OctalRules;
use crate::score::Score;

/// Default number of full periods required after the preperiod.
pub const DEFAULT_MIN_WINDOW: usize = 3;

/// An eventual period found in a finite value sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    /// Smallest index from which `v(n + period) == v(n)` holds in the data.
    pub preperiod: usize,
    pub period: usize,
    /// Index of the last value examined.
    pub checked_up_to: usize,
    /// Whether periodicity was proven to continue forever.
    pub certified: bool,
    /// Index from which the certificate applies.
    pub certified_from: Option<usize>,
    pub sequence_digest: String,
}

/// Hex SHA-256 of the values written as comma-separated exact rationals.
pub fn sequence_digest(values: &[Score]) -> String {
    let text: Vec<String> = values.iter().map(Score::to_string).collect();
    hex::encode(Sha256::digest(text.join(",").as_bytes()))
}

/// `v(n + period) == v(n)` for every `n` in `from..=to`.
pub fn holds_on(values: &[Score], period: usize, from: usize, to: usize) -> bool {
    (from..=to).all(|n| values[n] == values[n + period])
}

/// Smallest period, then smallest preperiod, such that the tail from the
/// preperiod repeats, spans at least `min_window` full periods and covers at
/// least half of the sequence. The last condition keeps a short constant run
/// at the end of the data from passing as period 1.
pub fn detect_period(values: &[Score], min_window: usize) -> Option<PeriodReport> {
    let len = values.len();
    let min_window = min_window.max(1);
    if len == 0 || len < min_window {
        return None;
    }
    for period in 1..len {
        let last_mismatch = (0..len - period).rev().find(|&n| values[n] != values[n + period]);
        let preperiod = last_mismatch.map_or(0, |n| n + 1);
        let tail = len - preperiod;
        if tail < min_window * period || 2 * tail < len {
            continue;
        }
        assert!(
            preperiod + period >= len || holds_on(values, period, preperiod, len - 1 - period),
            "period self-check failed"
        );
        return Some(PeriodReport {
            preperiod,
            period,
            checked_up_to: len - 1,
            certified: false,
            certified_from: None,
            sequence_digest: sequence_digest(values),
        });
    }
    None
}

/// First index from which a single-heap sweep of `rules` is a fixed
/// function of the previous `rules.len()` values.
fn recurrence_start(rules: &OctalRules, preperiod: usize) -> usize {
    preperiod.max(rules.len() + 1)
}

/// Proves that a period detected on the single-heap sequence of `rules`
/// continues forever.
///
/// Only taking-no-breaking rules qualify. Past `f = rules.len()` beans no
/// move can clear a heap outright, so each value is a fixed function of the
/// `f` before it; agreement over `period + f` consecutive indices from
/// `max(preperiod, f + 1)` then propagates by induction.
pub fn certify_period(rules: &OctalRules, report: &PeriodReport, values: &[Score]) -> Result<bool, Error> {
    if !rules.is_taking_no_breaking() {
        return Ok(false);
    }
    let f = rules.len();
    let start = recurrence_start(rules, report.preperiod);
    let needed = start + report.period + f - 1 + report.period;
    let have = values.len().saturating_sub(1);
    if needed > have {
        return Err(Error::WindowTooShort { needed, have });
    }
    Ok(holds_on(values, report.period, start, start + report.period + f - 1))
}

/// Runs [`certify_period`] and records the result on the report.
pub fn certify(rules: &OctalRules, mut report: PeriodReport, values: &[Score]) -> Result<PeriodReport, Error> {
    report.certified = certify_period(rules, &report, values)?;
    report.certified_from = report.certified.then(|| recurrence_start(rules, report.preperiod));
    Ok(report)
}

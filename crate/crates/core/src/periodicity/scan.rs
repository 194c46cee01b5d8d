//! Evidence scans over families of rulesets.
//!
//! A scan sweeps `gs(m + n)` for a fixed base position `m` and a growing heap
//! `n`, looks for an eventual period, tries to certify it, and compares it
//! with the period `2k` predicted for taking-no-breaking games whose points
//! equal the beans removed (`k` is the largest index with a digit other than
//! 0 or 1). Rows are evidence only: a scan never claims a conjecture holds.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::detect::{certify, detect_period, sequence_digest, DEFAULT_MIN_WINDOW};
use crate::error::Error;
use crate::octal::{builtin, sweep, GrundyCache, OctalRules, Position, RuleBook, DEFAULT_BUDGET};
use crate::score::Score;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_min_window")]
    pub min_window: usize,
    /// Evaluated-position cap per instance.
    #[serde(default = "default_budget")]
    pub budget: usize,
    #[serde(default, rename = "family")]
    pub families: Vec<Family>,
}

fn default_min_window() -> usize {
    DEFAULT_MIN_WINDOW
}

fn default_budget() -> usize {
    DEFAULT_BUDGET
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    /// Every nonempty subtraction set within `1..=max_element`, `p_i = i`.
    Subtraction {
        max_element: u32,
        max_n: u32,
        #[serde(default)]
        fixed: Vec<String>,
    },
    /// Named builtins and inline rulesets.
    Rules {
        #[serde(default)]
        builtin: Vec<String>,
        #[serde(default)]
        ruleset: Vec<InlineRules>,
        max_n: u32,
        #[serde(default)]
        fixed: Vec<String>,
    },
    /// Seeded random rulesets.
    Random {
        count: u32,
        max_len: u32,
        max_n: u32,
        #[serde(default)]
        breaking: bool,
        /// `p_i = i` when true, small random rationals otherwise.
        #[serde(default = "yes")]
        unit_points: bool,
        #[serde(default)]
        fixed: Vec<String>,
    },
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InlineRules {
    pub name: String,
    pub digits: Vec<i64>,
    pub points: Vec<Score>,
}

impl ScanSpec {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let spec: ScanSpec = toml::from_str(text).map_err(|e| Error::ScanSpec(e.message().to_string()))?;
        if spec.families.is_empty() {
            return Err(Error::ScanSpec("no [[family]] entries".into()));
        }
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Periodic,
    NotFound,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// Taking-no-breaking with `p_i = i` everywhere: the `2k` prediction applies.
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Divides,
    NotDivides,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub key: String,
    pub rules: String,
    pub digits: String,
    pub points: String,
    pub fixed: String,
    pub max_n: u32,
    pub status: Status,
    pub preperiod: Option<usize>,
    pub period: Option<usize>,
    pub certified: bool,
    pub certified_from: Option<usize>,
    pub hypothesis: Hypothesis,
    pub conjectured_period: Option<usize>,
    pub relation: Relation,
    pub counterexample: bool,
    pub note: String,
    pub sequence_digest: String,
    #[serde(skip)]
    pub values: Vec<Score>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub version: String,
    pub seed: u64,
    pub min_window: usize,
    pub budget: usize,
    pub rows: Vec<ScanRow>,
}

/// One concrete sweep to run.
#[derive(Clone, Debug)]
pub struct Instance {
    pub key: String,
    pub rules: OctalRules,
    pub fixed: String,
    pub max_n: u32,
}

/// Expands the families of `spec` into instances, sorted by key.
pub fn instances(spec: &ScanSpec) -> Result<Vec<Instance>, Error> {
    let mut out = Vec::new();
    for (fi, family) in spec.families.iter().enumerate() {
        let (rulesets, max_n, fixed) = match family {
            Family::Subtraction { max_element, max_n, fixed } => {
                if *max_element == 0 || *max_element > 16 {
                    return Err(Error::ScanSpec("max_element must be in 1..=16".into()));
                }
                let mut rs = Vec::new();
                for mask in 1u32..(1 << max_element) {
                    let set: Vec<u32> = (1..=*max_element).filter(|e| mask & (1 << (e - 1)) != 0).collect();
                    let name = format!("sub_{}", set.iter().map(u32::to_string).collect::<Vec<_>>().join("_"));
                    rs.push(OctalRules::subtraction(name, &set)?);
                }
                (rs, *max_n, fixed)
            }
            Family::Rules { builtin: names, ruleset, max_n, fixed } => {
                let mut rs = Vec::new();
                for n in names {
                    rs.push(builtin(n).ok_or_else(|| Error::UnknownRuleset(n.clone()))?);
                }
                for r in ruleset {
                    rs.push(OctalRules::new(r.name.clone(), &r.digits, r.points.clone())?);
                }
                (rs, *max_n, fixed)
            }
            Family::Random { count, max_len, max_n, breaking, unit_points, fixed } => {
                if *max_len == 0 {
                    return Err(Error::ScanSpec("max_len must be positive".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ (fi as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let rs = (0..*count)
                    .map(|i| random_rules(&mut rng, format!("r{fi}_{i}"), *max_len, *breaking, *unit_points))
                    .collect();
                (rs, *max_n, fixed)
            }
        };
        let fixed: Vec<String> = if fixed.is_empty() { vec![String::new()] } else { fixed.clone() };
        for (ri, rules) in rulesets.into_iter().enumerate() {
            for (mi, m) in fixed.iter().enumerate() {
                out.push(Instance {
                    key: format!("f{fi:02}-r{ri:05}-m{mi:02}"),
                    rules: rules.clone(),
                    fixed: m.trim().to_string(),
                    max_n,
                });
            }
        }
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

fn random_rules(rng: &mut ChaCha8Rng, name: String, max_len: u32, breaking: bool, unit_points: bool) -> OctalRules {
    let top = if breaking { 7 } else { 3 };
    loop {
        let len = rng.random_range(1..=max_len) as usize;
        let digits: Vec<i64> = (0..len).map(|_| rng.random_range(0..=top)).collect();
        let points: Vec<Score> = (1..=len as i64)
            .map(|i| {
                if unit_points {
                    Score::integer(i)
                } else {
                    Score::new(rng.random_range(-4..=4), rng.random_range(1..=3)).expect("positive denominator")
                }
            })
            .collect();
        if let Ok(r) = OctalRules::new(name.clone(), &digits, points) {
            return r;
        }
    }
}

/// Resolves a base-position literal. `self` names the instance ruleset;
/// other names are builtins.
fn base_position(literal: &str, book: &mut RuleBook) -> Result<Position, Error> {
    let own = book.get(crate::octal::RulesetId(0))?.name().to_string();
    let mut rewritten = Vec::new();
    for term in literal.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (size, name) = term.split_once('@').ok_or_else(|| Error::PositionFormat(literal.to_string()))?;
        let name = if name.trim() == "self" { own.clone() } else { name.trim().to_string() };
        if book.id(&name).is_err() {
            book.insert(builtin(&name).ok_or_else(|| Error::UnknownRuleset(name.clone()))?)?;
        }
        rewritten.push(format!("{}@{}", size.trim(), name));
    }
    Position::parse(&rewritten.join(","), book)
}

/// Evaluates one instance. Budget exhaustion is a row status, other
/// failures are errors.
pub fn run_instance(inst: &Instance, min_window: usize, budget: usize) -> Result<ScanRow, Error> {
    let (mut book, id) = RuleBook::with(inst.rules.clone());
    let base = base_position(&inst.fixed, &mut book)?;
    let hypothesis = if book.iter().all(|(_, r)| r.is_taking_no_breaking() && r.points_equal_beans())
        && inst.rules.largest_nontrivial_index().is_some()
    {
        Hypothesis::In
    } else {
        Hypothesis::Out
    };
    let conjectured_period = match hypothesis {
        Hypothesis::In => inst.rules.largest_nontrivial_index().map(|k| 2 * k),
        Hypothesis::Out => None,
    };
    let mut row = ScanRow {
        key: inst.key.clone(),
        rules: inst.rules.name().to_string(),
        digits: inst.rules.digits().iter().map(u8::to_string).collect::<Vec<_>>().join(""),
        points: inst.rules.points().iter().map(Score::to_string).collect::<Vec<_>>().join(" "),
        fixed: base.render(&book),
        max_n: inst.max_n,
        status: Status::NotFound,
        preperiod: None,
        period: None,
        certified: false,
        certified_from: None,
        hypothesis,
        conjectured_period,
        relation: Relation::NotApplicable,
        counterexample: false,
        note: String::new(),
        sequence_digest: String::new(),
        values: Vec::new(),
    };

    let mut cache = GrundyCache::with_budget(budget);
    let values = match sweep(&book, &base, id, inst.max_n, &mut cache) {
        Ok(v) => v,
        Err(Error::BudgetExceeded(_)) => {
            row.status = Status::BudgetExceeded;
            row.note = format!("stopped after {} positions", cache.len());
            return Ok(row);
        }
        Err(e) => return Err(e),
    };
    row.sequence_digest = sequence_digest(&values);

    if let Some(report) = detect_period(&values, min_window) {
        row.status = Status::Periodic;
        let report = if base.is_empty() {
            match certify(&inst.rules, report.clone(), &values) {
                Ok(r) => r,
                Err(e) => {
                    row.note = e.to_string();
                    report
                }
            }
        } else {
            row.note = "fixed base position: empirical only".into();
            report
        };
        row.preperiod = Some(report.preperiod);
        row.period = Some(report.period);
        row.certified = report.certified;
        row.certified_from = report.certified_from;
        if let Some(two_k) = conjectured_period {
            row.relation = if two_k % report.period == 0 { Relation::Divides } else { Relation::NotDivides };
            if let Some(from) = report.certified_from {
                match shift_fails(&values, from, report.period, two_k) {
                    Some(fails) => row.counterexample = fails,
                    None => row.note = "certified, but too few values to test the 2k shift".into(),
                }
            }
        }
    }
    row.values = values;
    Ok(row)
}

/// Once `values` is proven periodic with `period` from `from`, the shift
/// identity `v(n + shift) == v(n)` holds for all large `n` exactly when it
/// holds across one period starting at `from`.
fn shift_fails(values: &[Score], from: usize, period: usize, shift: usize) -> Option<bool> {
    if from + period - 1 + shift >= values.len() {
        return None;
    }
    Some((from..from + period).any(|n| values[n] != values[n + shift]))
}

/// Runs every instance in parallel; rows come back in key order.
pub fn conjecture_scan(spec: &ScanSpec) -> Result<ScanReport, Error> {
    let insts = instances(spec)?;
    let rows = insts
        .par_iter()
        .map(|inst| run_instance(inst, spec.min_window, spec.budget))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(ScanReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: spec.seed,
        min_window: spec.min_window,
        budget: spec.budget,
        rows,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn label<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|j| j.as_str().map(str::to_string)).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "key,rules,digits,points,fixed,max_n,status,preperiod,period,certified,certified_from,hypothesis,conjectured_period,relation,counterexample,note,sequence_digest";

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let fields = [
                r.key.clone(),
                r.rules.clone(),
                r.digits.clone(),
                r.points.clone(),
                r.fixed.clone(),
                r.max_n.to_string(),
                label(&r.status),
                opt(&r.preperiod),
                opt(&r.period),
                r.certified.to_string(),
                opt(&r.certified_from),
                label(&r.hypothesis),
                opt(&r.conjectured_period),
                label(&r.relation),
                if r.counterexample { "COUNTEREXAMPLE".into() } else { String::new() },
                r.note.clone(),
                r.sequence_digest.clone(),
            ];
            let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// Pretty JSON with the same rows plus run metadata.
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Hex SHA-256 of the CSV form.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_csv().as_bytes()))
    }
}

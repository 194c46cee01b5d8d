//! Checker for the alternation identity of subtraction games with
//! `p_i = i`: for every `s` in `S` and `i >= 1`,
//! `gs(s + 2ik) = k - gs(s + (2i-1)k)` where `k = max S`, together with the
//! bounds `gs(r + 2ik) <= r` and `gs(r + (2i+1)k) >= k - r` for `0 <= r <= k`.

use serde::Serialize;

use crate::error::Error;
use crate::octal::{sweep, GrundyCache, OctalRules, Position, RuleBook};
use crate::score::Score;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub s: u32,
    pub i: u32,
    pub lhs: Score,
    pub rhs: Score,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// `gs(r + 2ik) <= r`
    EvenUpper,
    /// `gs(r + (2i+1)k) >= k - r`
    OddLower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundFailure {
    pub kind: BoundKind,
    pub r: u32,
    pub i: u32,
    pub value: Score,
    pub bound: Score,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub set: Vec<u32>,
    pub k: u32,
    pub i_max: u32,
    pub failures: Vec<LemmaFailure>,
    pub bound_failures: Vec<BoundFailure>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.bound_failures.is_empty()
    }
}

pub fn check_lemma(set: &[u32], i_max: u32) -> Result<LemmaReport, Error> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let rules = OctalRules::subtraction(lemma_name(&set), &set)?;
    let k = *set.last().expect("nonempty set");
    let (book, id) = RuleBook::with(rules);
    let max_n = (2 * i_max + 2) * k;
    let v = sweep(&book, &Position::empty(), id, max_n, &mut GrundyCache::new())?;
    let gs = |n: u32| v[n as usize];
    let kk = Score::integer(k as i64);

    let mut failures = Vec::new();
    for &s in &set {
        for i in 1..=i_max {
            let lhs = gs(s + 2 * i * k);
            let rhs = kk - gs(s + (2 * i - 1) * k);
            if lhs != rhs {
                failures.push(LemmaFailure { s, i, lhs, rhs });
            }
        }
    }

    let mut bound_failures = Vec::new();
    for r in 0..=k {
        let rr = Score::integer(r as i64);
        for i in 0..=i_max {
            let value = gs(r + 2 * i * k);
            if value > rr {
                bound_failures.push(BoundFailure { kind: BoundKind::EvenUpper, r, i, value, bound: rr });
            }
            let value = gs(r + (2 * i + 1) * k);
            if value < kk - rr {
                bound_failures.push(BoundFailure { kind: BoundKind::OddLower, r, i, value, bound: kk - rr });
            }
        }
    }

    Ok(LemmaReport { set, k, i_max, failures, bound_failures })
}

fn lemma_name(set: &[u32]) -> String {
    let parts: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("sub_{}", parts.join("_"))
}

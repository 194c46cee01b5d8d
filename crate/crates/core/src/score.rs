//! Exact rational scores.
//!
//! Every node score, point award and scoring Grundy value is a [`Score`].
//! Arithmetic never rounds; an overflow of the underlying 64-bit components
//! panics instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Score(Ratio<i64>);

impl Score {
    pub const ZERO: Score = Score(Ratio::new_raw(0, 1));
    pub const ONE: Score = Score(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::InvalidScore(format!("{numer}/0")));
        }
        Ok(Score(Ratio::new(numer, denom)))
    }

    pub const fn integer(n: i64) -> Self {
        Score(Ratio::new_raw(n, 1))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        self.0.numer().cmp(&0)
    }

    pub fn abs(&self) -> Self {
        Score(self.0.abs())
    }

    /// `self * k` for an integer factor.
    pub fn scale(self, k: i64) -> Self {
        Score(self.0.checked_mul(&Ratio::from_integer(k)).unwrap_or_else(|| overflow("*", self, Score::integer(k))))
    }
}

#[cold]
fn overflow(op: &str, a: Score, b: Score) -> ! {
    panic!("score arithmetic overflow: {a} {op} {b} exceeds 64-bit rational range")
}

impl Add for Score {
    type Output = Score;
    fn add(self, rhs: Score) -> Score {
        Score(self.0.checked_add(&rhs.0).unwrap_or_else(|| overflow("+", self, rhs)))
    }
}

impl Sub for Score {
    type Output = Score;
    fn sub(self, rhs: Score) -> Score {
        Score(self.0.checked_sub(&rhs.0).unwrap_or_else(|| overflow("-", self, rhs)))
    }
}

impl Neg for Score {
    type Output = Score;
    fn neg(self) -> Score {
        match self.0.numer().checked_neg() {
            Some(n) => Score(Ratio::new_raw(n, *self.0.denom())),
            None => overflow("-", Score::ZERO, self),
        }
    }
}

impl AddAssign for Score {
    fn add_assign(&mut self, rhs: Score) {
        *self = *self + rhs;
    }
}

impl SubAssign for Score {
    fn sub_assign(&mut self, rhs: Score) {
        *self = *self - rhs;
    }
}

impl Sum for Score {
    fn sum<I: Iterator<Item = Score>>(iter: I) -> Score {
        iter.fold(Score::ZERO, Add::add)
    }
}

impl From<i64> for Score {
    fn from(n: i64) -> Self {
        Score::integer(n)
    }
}

impl From<i32> for Score {
    fn from(n: i32) -> Self {
        Score::integer(n as i64)
    }
}

/// Integers print bare, everything else as `a/b`. Never decimal.
impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `7`, `-7`, `3/4`, `-3/4` and decimals such as `-1.25`, which are
/// converted to the exact rational they denote.
impl FromStr for Score {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidScore(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n = parse_int(n.trim()).ok_or_else(bad)?;
            let d = d.trim();
            if d.starts_with(['+', '-']) {
                return Err(bad());
            }
            let d = parse_int(d).ok_or_else(bad)?;
            if d <= 0 {
                return Err(bad());
            }
            return Score::new(n, d);
        }
        if let Some((int_part, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.starts_with('-');
            let digits = int_part.trim_start_matches(['+', '-']);
            if !digits.bytes().all(|b| b.is_ascii_digit()) || (digits.is_empty() && int_part.len() > 1) {
                return Err(bad());
            }
            let whole: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
            let scale = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
            let frac_val: i64 = frac.parse().map_err(|_| bad())?;
            let magnitude = whole.checked_mul(scale).and_then(|w| w.checked_add(frac_val)).ok_or_else(bad)?;
            let numer = if negative { -magnitude } else { magnitude };
            return Score::new(numer, scale);
        }
        parse_int(t).map(Score::integer).ok_or_else(bad)
    }
}

fn parse_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(n) => Ok(Score::integer(n)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::score::Score;

/// A scoring octal ruleset.
///
/// `digits[k-1]` says what may be left after removing `k` beans from a heap:
/// bit 0 allows leaving nothing, bit 1 one nonempty heap and bit 2 two
/// nonempty heaps. Removing `k` beans earns `points[k-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OctalRules {
    name: String,
    digits: Vec<u8>,
    points: Vec<Score>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRules {
    name: String,
    digits: Vec<i64>,
    points: Vec<Score>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    ruleset: Vec<RawRules>,
    name: Option<String>,
    digits: Option<Vec<i64>>,
    points: Option<Vec<Score>>,
}

impl OctalRules {
    pub fn new(name: impl Into<String>, digits: &[i64], points: Vec<Score>) -> Result<Self, Error> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(Error::RulesFormat(format!("`{name}` is not a valid ruleset name")));
        }
        if digits.len() != points.len() {
            return Err(Error::LengthMismatch { name, digits: digits.len(), points: points.len() });
        }
        let mut checked = Vec::with_capacity(digits.len());
        for (index, &digit) in digits.iter().enumerate() {
            if !(0..=7).contains(&digit) {
                return Err(Error::DigitOutOfRange { name, index, digit });
            }
            checked.push(digit as u8);
        }
        if checked.iter().all(|&d| d == 0) {
            return Err(Error::NoMoves(name));
        }
        Ok(OctalRules { name, digits: checked, points })
    }

    /// Subtraction game on `set` where removing `i` beans scores `i` points.
    pub fn subtraction(name: impl Into<String>, set: &[u32]) -> Result<Self, Error> {
        let k = set.iter().copied().max().unwrap_or(0) as usize;
        let mut digits = vec![0; k];
        for &s in set {
            if s == 0 {
                return Err(Error::RulesFormat("subtraction set members must be positive".into()));
            }
            digits[s as usize - 1] = 3;
        }
        let points = (1..=k as i64).map(Score::integer).collect();
        OctalRules::new(name, &digits, points)
    }

    /// Scoring nim truncated to heaps of at most `max_take` beans removed
    /// per move: every digit 3 and `p_i = i`.
    pub fn standard_nim(max_take: usize) -> Self {
        let digits = vec![3; max_take];
        let points = (1..=max_take as i64).map(Score::integer).collect();
        OctalRules::new(format!("nim{max_take}"), &digits, points).expect("valid nim rules")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn points(&self) -> &[Score] {
        &self.points
    }

    /// Number of digits, i.e. the largest removable count.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit governing removal of `k` beans (1-based); 0 past the end.
    pub fn digit(&self, k: usize) -> u8 {
        if k == 0 {
            0
        } else {
            self.digits.get(k - 1).copied().unwrap_or(0)
        }
    }

    pub fn point(&self, k: usize) -> Score {
        self.points[k - 1]
    }

    pub fn is_taking_no_breaking(&self) -> bool {
        self.digits.iter().all(|&d| d <= 3)
    }

    pub fn is_subtraction(&self) -> bool {
        self.digits.iter().all(|&d| d == 0 || d == 3)
    }

    /// Largest index whose digit is neither 0 nor 1.
    pub fn largest_nontrivial_index(&self) -> Option<usize> {
        self.digits.iter().rposition(|&d| d > 1).map(|i| i + 1)
    }

    /// True when every usable removal of `i` beans scores exactly `i`.
    pub fn points_equal_beans(&self) -> bool {
        self.digits
            .iter()
            .zip(&self.points)
            .enumerate()
            .all(|(i, (&d, &p))| d == 0 || p == Score::integer(i as i64 + 1))
    }

    /// Hex SHA-256 of the canonical text form, for provenance.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }

    pub fn to_toml(&self) -> String {
        let digits: Vec<String> = self.digits.iter().map(u8::to_string).collect();
        let points: Vec<String> = self.points.iter().map(|p| format!("\"{p}\"")).collect();
        format!("name = \"{}\"\ndigits = [{}]\npoints = [{}]\n", self.name, digits.join(", "), points.join(", "))
    }

    fn from_raw(raw: RawRules) -> Result<Self, Error> {
        OctalRules::new(raw.name, &raw.digits, raw.points)
    }
}

/// `name (digits; points)`, e.g. `sub45 (0.00033; 0,0,0,4,5)`.
impl fmt::Display for OctalRules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (0.", self.name)?;
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        f.write_str("; ")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses a rules document: either one ruleset as top-level
/// `name`/`digits`/`points` keys, or several `[[ruleset]]` tables.
pub fn parse_rules(doc: &str) -> Result<Vec<OctalRules>, Error> {
    let raw: RawDocument = toml::from_str(doc).map_err(|e| Error::RulesFormat(e.message().to_string()))?;
    let mut out = Vec::new();
    match (raw.name, raw.digits, raw.points) {
        (Some(name), Some(digits), Some(points)) => out.push(OctalRules::from_raw(RawRules { name, digits, points })?),
        (None, None, None) => {}
        _ => return Err(Error::RulesFormat("top-level ruleset needs name, digits and points".into())),
    }
    for r in raw.ruleset {
        out.push(OctalRules::from_raw(r)?);
    }
    if out.is_empty() {
        return Err(Error::RulesFormat("document defines no ruleset".into()));
    }
    Ok(out)
}

/// Named rulesets that need no file.
pub fn builtin(name: &str) -> Option<OctalRules> {
    let int = |v: &[i64]| v.iter().copied().map(Score::integer).collect::<Vec<_>>();
    match name {
        "sub45" => Some(OctalRules::new("sub45", &[0, 0, 0, 3, 3], int(&[0, 0, 0, 4, 5])).unwrap()),
        "o3333p2" => Some(OctalRules::new("o3333p2", &[3, 3, 3, 3], int(&[2, 2, 2, 2])).unwrap()),
        "o26" => Some(OctalRules::new("o26", &[2, 6], int(&[1, 2])).unwrap()),
        _ => {
            let n: usize = name.strip_prefix("nim")?.parse().ok()?;
            (n > 0).then(|| OctalRules::standard_nim(n))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RulesetId(pub u16);

/// The rulesets a position may refer to, addressed by [`RulesetId`].
#[derive(Clone, Debug, Default)]
pub struct RuleBook {
    rules: Vec<OctalRules>,
    by_name: HashMap<String, RulesetId>,
}

impl RuleBook {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a ruleset; re-adding an identical one returns the existing id.
    pub fn insert(&mut self, rules: OctalRules) -> Result<RulesetId, Error> {
        if let Some(&id) = self.by_name.get(rules.name()) {
            if self.rules[id.0 as usize] == rules {
                return Ok(id);
            }
            return Err(Error::RulesFormat(format!("ruleset `{}` defined twice", rules.name())));
        }
        let id =
            RulesetId(u16::try_from(self.rules.len()).map_err(|_| Error::RulesFormat("too many rulesets".into()))?);
        self.by_name.insert(rules.name().to_string(), id);
        self.rules.push(rules);
        Ok(id)
    }

    pub fn with(rules: OctalRules) -> (Self, RulesetId) {
        let mut book = RuleBook::new();
        let id = book.insert(rules).expect("empty book");
        (book, id)
    }

    pub fn get(&self, id: RulesetId) -> Result<&OctalRules, Error> {
        self.rules.get(id.0 as usize).ok_or_else(|| Error::UnknownRuleset(format!("#{}", id.0)))
    }

    pub fn id(&self, name: &str) -> Result<RulesetId, Error> {
        self.by_name.get(name).copied().ok_or_else(|| Error::UnknownRuleset(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (RulesetId, &OctalRules)> {
        self.rules.iter().enumerate().map(|(i, r)| (RulesetId(i as u16), r))
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

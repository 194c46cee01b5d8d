use std::fmt::Write;

use serde::Serialize;

use super::rules::{RuleBook, RulesetId};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Heap {
    pub rules: RulesetId,
    pub size: u32,
}

/// A multiset of heaps, each played under its own ruleset. Stored sorted by
/// `(ruleset, size)` with empty heaps dropped, so equal multisets are equal
/// values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Position {
    heaps: Vec<Heap>,
}

impl Position {
    pub fn new(heaps: impl IntoIterator<Item = Heap>) -> Self {
        let mut heaps: Vec<Heap> = heaps.into_iter().filter(|h| h.size > 0).collect();
        heaps.sort_unstable();
        Position { heaps }
    }

    pub fn empty() -> Self {
        Position::default()
    }

    pub fn single(rules: RulesetId, size: u32) -> Self {
        Position::new([Heap { rules, size }])
    }

    pub fn heaps(&self) -> &[Heap] {
        &self.heaps
    }

    pub fn is_empty(&self) -> bool {
        self.heaps.is_empty()
    }

    pub fn total_beans(&self) -> u64 {
        self.heaps.iter().map(|h| h.size as u64).sum()
    }

    pub fn with_heap(&self, rules: RulesetId, size: u32) -> Self {
        let mut p = self.clone();
        p.push(Heap { rules, size });
        p
    }

    fn push(&mut self, heap: Heap) {
        if heap.size > 0 {
            let at = self.heaps.partition_point(|h| *h <= heap);
            self.heaps.insert(at, heap);
        }
    }

    /// Removes the heap at `index` and adds `parts` under the same ruleset.
    pub(crate) fn replace(&self, index: usize, parts: &[u32]) -> Self {
        let rules = self.heaps[index].rules;
        let mut heaps = Vec::with_capacity(self.heaps.len() + parts.len());
        heaps.extend_from_slice(&self.heaps[..index]);
        heaps.extend_from_slice(&self.heaps[index + 1..]);
        let mut p = Position { heaps };
        for &size in parts {
            p.push(Heap { rules, size });
        }
        p
    }

    /// Parses `size@name` terms separated by commas, e.g. `4@A,7@A,3@B`.
    /// The empty string (or `0`) is the empty position.
    pub fn parse(literal: &str, book: &RuleBook) -> Result<Self, Error> {
        let t = literal.trim();
        if t.is_empty() || t == "0" {
            return Ok(Position::empty());
        }
        let mut heaps = Vec::new();
        for term in t.split(',') {
            let (size, name) = term.trim().split_once('@').ok_or_else(|| Error::PositionFormat(literal.to_string()))?;
            let size: u32 = size.trim().parse().map_err(|_| Error::PositionFormat(literal.to_string()))?;
            heaps.push(Heap { rules: book.id(name.trim())?, size });
        }
        Ok(Position::new(heaps))
    }

    pub fn render(&self, book: &RuleBook) -> String {
        let mut out = String::new();
        for (i, h) in self.heaps.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let name = book.get(h.rules).map(|r| r.name()).unwrap_or("?");
            let _ = write!(out, "{}@{}", h.size, name);
        }
        out
    }
}

/// Every position of total size `1..=max_total` whose heaps use rulesets
/// from `ids`, each listed once.
pub fn positions_up_to(ids: &[RulesetId], max_total: u32) -> Vec<Position> {
    let kinds: Vec<(RulesetId, u32)> = ids.iter().flat_map(|&id| (1..=max_total).map(move |s| (id, s))).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(kinds: &[(RulesetId, u32)], start: usize, left: u32, current: &mut Vec<Heap>, out: &mut Vec<Position>) {
        for i in start..kinds.len() {
            let (rules, size) = kinds[i];
            if size > left {
                continue;
            }
            current.push(Heap { rules, size });
            out.push(Position::new(current.iter().copied()));
            rec(kinds, i, left - size, current, out);
            current.pop();
        }
    }
    rec(&kinds, 0, max_total, &mut current, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octal::rules::builtin;

    fn book() -> RuleBook {
        let mut b = RuleBook::new();
        b.insert(builtin("sub45").unwrap()).unwrap();
        b.insert(builtin("o26").unwrap()).unwrap();
        b
    }

    #[test]
    fn canonical_form() {
        let b = book();
        let p = Position::parse("7@sub45, 0@o26, 3@o26,4@sub45", &b).unwrap();
        let q = Position::parse("4@sub45,3@o26,7@sub45", &b).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.render(&b), "4@sub45,7@sub45,3@o26");
        assert_eq!(p.total_beans(), 14);
    }

    #[test]
    fn empty_literals() {
        let b = book();
        assert!(Position::parse("", &b).unwrap().is_empty());
        assert!(Position::parse("0@sub45", &b).unwrap().is_empty());
    }

    #[test]
    fn literal_errors() {
        let b = book();
        assert!(matches!(Position::parse("4", &b), Err(Error::PositionFormat(_))));
        assert!(matches!(Position::parse("x@sub45", &b), Err(Error::PositionFormat(_))));
        assert!(matches!(Position::parse("4@nope", &b), Err(Error::UnknownRuleset(_))));
    }

    #[test]
    fn replace_keeps_order() {
        let b = book();
        let p = Position::parse("2@sub45,9@sub45", &b).unwrap();
        let q = p.replace(1, &[1, 5]);
        assert_eq!(q.render(&b), "1@sub45,2@sub45,5@sub45");
    }

    #[test]
    fn enumeration_counts_partitions() {
        // partitions of 1..=6 with one ruleset: 1+2+3+5+7+11
        let ps = positions_up_to(&[RulesetId(0)], 6);
        assert_eq!(ps.len(), 29);
        let mut dedup = ps.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), ps.len());
        // two colours, total <= 2: {1a},{1b},{2a},{2b},{1a1a},{1a1b},{1b1b}
        assert_eq!(positions_up_to(&[RulesetId(0), RulesetId(1)], 2).len(), 7);
    }
}

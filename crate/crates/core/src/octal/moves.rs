use std::collections::HashSet;

use serde::Serialize;

use super::position::{Heap, Position};
use super::rules::RuleBook;
use crate::error::Error;
use crate::score::Score;

/// One legal move: which heap, how many beans, what is left of the heap,
/// the points scored and the resulting position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveOutcome {
    pub heap: Heap,
    pub take: u32,
    pub parts: Vec<u32>,
    pub points: Score,
    pub next: Position,
}

/// All legal moves from `p`, deduplicated on `(points, next)`, ordered by
/// source heap, then beans removed, then the remaining parts.
pub fn legal_moves(p: &Position, book: &RuleBook) -> Result<Vec<MoveOutcome>, Error> {
    let mut out = Vec::new();
    let mut seen: HashSet<(Score, Position)> = HashSet::new();
    let heaps = p.heaps();
    for (index, &heap) in heaps.iter().enumerate() {
        if index > 0 && heaps[index - 1] == heap {
            continue;
        }
        let rules = book.get(heap.rules)?;
        let n = heap.size as usize;
        for k in 1..=n.min(rules.len()) {
            let digit = rules.digit(k);
            if digit == 0 {
                continue;
            }
            let rest = (n - k) as u32;
            let points = rules.point(k);
            let mut emit = |parts: Vec<u32>| {
                let next = p.replace(index, &parts);
                if seen.insert((points, next.clone())) {
                    out.push(MoveOutcome { heap, take: k as u32, parts, points, next });
                }
            };
            if digit & 1 != 0 && rest == 0 {
                emit(Vec::new());
            }
            if digit & 2 != 0 && rest >= 1 {
                emit(vec![rest]);
            }
            if digit & 4 != 0 && rest >= 2 {
                for a in 1..=rest / 2 {
                    emit(vec![a, rest - a]);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octal::rules::{builtin, OctalRules, RulesetId};

    #[test]
    fn subtraction_45_small_heaps() {
        let (book, id) = RuleBook::with(builtin("sub45").unwrap());
        let m = legal_moves(&Position::single(id, 4), &book).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].points, Score::integer(4));
        assert!(m[0].next.is_empty());
        assert!(legal_moves(&Position::single(id, 3), &book).unwrap().is_empty());
        assert!(legal_moves(&Position::empty(), &book).unwrap().is_empty());
    }

    #[test]
    fn breaking_moves_on_five() {
        let (book, id) = RuleBook::with(builtin("o26").unwrap());
        let m = legal_moves(&Position::single(id, 5), &book).unwrap();
        let shapes: Vec<(u32, Vec<u32>)> = m.iter().map(|mv| (mv.take, mv.parts.clone())).collect();
        assert_eq!(shapes, vec![(1, vec![4]), (2, vec![3]), (2, vec![1, 2])]);
        assert_eq!(m[2].next, Position::new([Heap { rules: id, size: 1 }, Heap { rules: id, size: 2 }]));
    }

    #[test]
    fn whole_heap_bit_only_clears() {
        // digit 1: take k only when exactly k remain
        let (book, id) = RuleBook::with(OctalRules::new("t", &[1, 1], vec![Score::ONE, Score::ONE]).unwrap());
        assert!(legal_moves(&Position::single(id, 3), &book).unwrap().is_empty());
        assert_eq!(legal_moves(&Position::single(id, 2), &book).unwrap().len(), 1);
    }

    #[test]
    fn duplicate_heaps_merge() {
        let (book, id) = RuleBook::with(builtin("sub45").unwrap());
        let p = Position::new([Heap { rules: id, size: 4 }, Heap { rules: id, size: 4 }]);
        let m = legal_moves(&p, &book).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].next, Position::single(id, 4));
    }

    #[test]
    fn unresolved_ruleset() {
        let (book, _) = RuleBook::with(builtin("sub45").unwrap());
        let p = Position::single(RulesetId(7), 4);
        assert!(matches!(legal_moves(&p, &book), Err(Error::UnknownRuleset(_))));
    }
}

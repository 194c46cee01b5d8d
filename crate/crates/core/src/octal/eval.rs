//! Memoized scoring Grundy values.
//!
//! `gs(p)` is 0 when no move is available and otherwise the maximum over
//! moves of `points - gs(next)`: the score differential the player to move
//! can force from `p`.

use std::collections::HashMap;

use super::moves::{legal_moves, MoveOutcome};
use super::position::Position;
use super::rules::{RuleBook, RulesetId};
use crate::error::Error;
use crate::score::Score;

pub const DEFAULT_BUDGET: usize = 20_000_000;

/// Memo table of evaluated positions with a cap on its size.
#[derive(Clone, Debug)]
pub struct GrundyCache {
    memo: HashMap<Position, Score>,
    budget: usize,
}

impl Default for GrundyCache {
    fn default() -> Self {
        GrundyCache::with_budget(DEFAULT_BUDGET)
    }
}

impl GrundyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: usize) -> Self {
        GrundyCache { memo: HashMap::new(), budget }
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn get(&self, p: &Position) -> Option<Score> {
        self.memo.get(p).copied()
    }

    fn insert(&mut self, p: Position, v: Score) -> Result<(), Error> {
        if self.memo.len() >= self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        self.memo.insert(p, v);
        Ok(())
    }
}

struct Frame {
    position: Position,
    moves: Vec<MoveOutcome>,
    next: usize,
}

/// Scoring Grundy value of `p`, evaluated with an explicit stack.
pub fn grundy_s(p: &Position, book: &RuleBook, cache: &mut GrundyCache) -> Result<Score, Error> {
    if let Some(v) = cache.get(p) {
        return Ok(v);
    }
    let mut stack = vec![Frame { position: p.clone(), moves: legal_moves(p, book)?, next: 0 }];
    while let Some(top) = stack.last_mut() {
        while top.next < top.moves.len() && cache.memo.contains_key(&top.moves[top.next].next) {
            top.next += 1;
        }
        if top.next < top.moves.len() {
            let child = top.moves[top.next].next.clone();
            let moves = legal_moves(&child, book)?;
            stack.push(Frame { position: child, moves, next: 0 });
            continue;
        }
        let frame = stack.pop().expect("nonempty stack");
        let value = frame.moves.iter().map(|m| m.points - cache.memo[&m.next]).max().unwrap_or(Score::ZERO);
        cache.insert(frame.position, value)?;
    }
    Ok(cache.memo[p])
}

/// A move together with its value `points - gs(next)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RatedMove {
    #[serde(flatten)]
    pub mv: MoveOutcome,
    pub value: Score,
}

/// Every move of `p` with its value, in move order.
pub fn rated_moves(p: &Position, book: &RuleBook, cache: &mut GrundyCache) -> Result<Vec<RatedMove>, Error> {
    legal_moves(p, book)?
        .into_iter()
        .map(|mv| {
            let value = mv.points - grundy_s(&mv.next, book, cache)?;
            Ok(RatedMove { mv, value })
        })
        .collect()
}

/// The moves achieving `gs(p)`.
pub fn best_moves(p: &Position, book: &RuleBook, cache: &mut GrundyCache) -> Result<Vec<RatedMove>, Error> {
    let rated = rated_moves(p, book, cache)?;
    let best = rated.iter().map(|r| r.value).max().ok_or(Error::NoLegalMoves)?;
    Ok(rated.into_iter().filter(|r| r.value == best).collect())
}

/// `gs(base + heap n under var)` for `n = 0..=max_n`, sharing `cache`.
pub fn sweep(
    book: &RuleBook,
    base: &Position,
    var: RulesetId,
    max_n: u32,
    cache: &mut GrundyCache,
) -> Result<Vec<Score>, Error> {
    book.get(var)?;
    (0..=max_n).map(|n| grundy_s(&base.with_heap(var, n), book, cache)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octal::position::Heap;
    use crate::octal::rules::{builtin, OctalRules};

    fn ints(v: &[i64]) -> Vec<Score> {
        v.iter().copied().map(Score::integer).collect()
    }

    #[test]
    fn empty_position_is_zero() {
        let (book, _) = RuleBook::with(builtin("sub45").unwrap());
        assert_eq!(grundy_s(&Position::empty(), &book, &mut GrundyCache::new()).unwrap(), Score::ZERO);
    }

    #[test]
    fn subtraction_45_table() {
        let (book, id) = RuleBook::with(builtin("sub45").unwrap());
        let v = sweep(&book, &Position::empty(), id, 15, &mut GrundyCache::new()).unwrap();
        assert_eq!(v, ints(&[0, 0, 0, 0, 4, 5, 5, 5, 5, 1, 0, 0, 0, 3, 4, 5]));
    }

    #[test]
    fn o3333_table() {
        let (book, id) = RuleBook::with(builtin("o3333p2").unwrap());
        let v = sweep(&book, &Position::empty(), id, 10, &mut GrundyCache::new()).unwrap();
        assert_eq!(v, ints(&[0, 2, 2, 2, 2, 0, 2, 2, 2, 2, 0]));
    }

    #[test]
    fn two_heaps_of_four() {
        let (book, id) = RuleBook::with(builtin("sub45").unwrap());
        let p = Position::new([Heap { rules: id, size: 4 }, Heap { rules: id, size: 4 }]);
        assert_eq!(grundy_s(&p, &book, &mut GrundyCache::new()).unwrap(), Score::ZERO);
    }

    #[test]
    fn dead_heap_does_not_change_sweep() {
        let (book, id) = RuleBook::with(builtin("sub45").unwrap());
        let mut cache = GrundyCache::new();
        let plain = sweep(&book, &Position::empty(), id, 40, &mut cache).unwrap();
        let with_dead = sweep(&book, &Position::single(id, 3), id, 40, &mut cache).unwrap();
        assert_eq!(plain, with_dead);
    }

    #[test]
    fn best_move_at_13() {
        let (book, id) = RuleBook::with(builtin("sub45").unwrap());
        let mut cache = GrundyCache::new();
        let rated = rated_moves(&Position::single(id, 13), &book, &mut cache).unwrap();
        let summary: Vec<(u32, Score)> = rated.iter().map(|r| (r.mv.take, r.value)).collect();
        assert_eq!(summary, vec![(4, Score::integer(3)), (5, Score::ZERO)]);
        let best = best_moves(&Position::single(id, 13), &book, &mut cache).unwrap();
        assert_eq!(best.len(), 1);
        assert_eq!((best[0].mv.take, best[0].value), (4, Score::integer(3)));

        let best = best_moves(&Position::single(id, 5), &book, &mut cache).unwrap();
        assert_eq!((best.len(), best[0].mv.take, best[0].value), (1, 5, Score::integer(5)));
    }

    #[test]
    fn nim_heap_one() {
        let (book, id) = RuleBook::with(OctalRules::standard_nim(4));
        let best = best_moves(&Position::single(id, 1), &book, &mut GrundyCache::new()).unwrap();
        assert_eq!(best.len(), 1);
        assert_eq!(best[0].mv.take, 1);
    }

    #[test]
    fn no_moves_is_an_error_for_best_moves() {
        let (book, id) = RuleBook::with(builtin("sub45").unwrap());
        assert_eq!(best_moves(&Position::single(id, 2), &book, &mut GrundyCache::new()), Err(Error::NoLegalMoves));
    }

    #[test]
    fn budget_is_enforced() {
        let (book, id) = RuleBook::with(builtin("o26").unwrap());
        let mut cache = GrundyCache::with_budget(50);
        let r = grundy_s(&Position::single(id, 40), &book, &mut cache);
        assert_eq!(r, Err(Error::BudgetExceeded(50)));
    }

    #[test]
    fn negative_and_fractional_points() {
        let rules = OctalRules::new("neg", &[3, 3], vec![Score::integer(-1), Score::new(1, 2).unwrap()]).unwrap();
        let (book, id) = RuleBook::with(rules);
        let v = sweep(&book, &Position::empty(), id, 4, &mut GrundyCache::new()).unwrap();
        // gs(1) = -1; gs(2) = max(-1 - gs(1), 1/2) = 1/2;
        // gs(3) = max(-1 - 1/2, 1/2 + 1) = 3/2; gs(4) = max(-1 - 3/2, 1/2 - 1/2) = 0
        let h = |n, d| Score::new(n, d).unwrap();
        assert_eq!(v, vec![Score::ZERO, h(-1, 1), h(1, 2), h(3, 2), Score::ZERO]);
    }

    #[test]
    fn deep_sweep_does_not_overflow_stack() {
        let (book, id) = RuleBook::with(OctalRules::subtraction("one", &[1]).unwrap());
        let v = grundy_s(&Position::single(id, 200_000), &book, &mut GrundyCache::new()).unwrap();
        assert_eq!(v, Score::ZERO);
    }
}

//! Expansion of heap positions into explicit [`Game`] trees.
//!
//! The root of an expanded position has score 0. A move worth `q` points is
//! a left option with every score of the expanded child shifted by `+q` and
//! a right option shifted by `-q`: Left's points count up, Right's down.

use std::collections::HashMap;

use super::moves::legal_moves;
use super::position::Position;
use super::rules::RuleBook;
use crate::error::Error;
use crate::game::Game;
use crate::score::Score;

/// Builds expansions, sharing subtrees across calls. Each distinct
/// `(position, accumulated score)` pair becomes one shared node.
pub struct GameExpander<'a> {
    book: &'a RuleBook,
    memo: HashMap<(Position, Score), Game>,
    max_nodes: usize,
}

impl<'a> GameExpander<'a> {
    pub fn new(book: &'a RuleBook, max_nodes: usize) -> Self {
        GameExpander { book, memo: HashMap::new(), max_nodes }
    }

    pub fn expand(&mut self, p: &Position) -> Result<Game, Error> {
        self.node(p, Score::ZERO)
    }

    pub fn nodes(&self) -> usize {
        self.memo.len()
    }

    fn node(&mut self, p: &Position, offset: Score) -> Result<Game, Error> {
        let key = (p.clone(), offset);
        if let Some(g) = self.memo.get(&key) {
            return Ok(g.clone());
        }
        if self.memo.len() >= self.max_nodes {
            return Err(Error::ExpansionLimit(self.max_nodes));
        }
        let moves = legal_moves(p, self.book)?;
        let mut left = Vec::with_capacity(moves.len());
        let mut right = Vec::with_capacity(moves.len());
        for m in &moves {
            left.push(self.node(&m.next, offset + m.points)?);
            right.push(self.node(&m.next, offset - m.points)?);
        }
        let g = Game::new(offset, left, right);
        self.memo.insert(key, g.clone());
        Ok(g)
    }
}

/// The game tree of `p`, refusing to build more than `max_nodes` shared nodes.
pub fn position_to_game(p: &Position, book: &RuleBook, max_nodes: usize) -> Result<Game, Error> {
    GameExpander::new(book, max_nodes).expand(p)
}

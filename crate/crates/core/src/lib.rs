//! Impartial scoring-play games.
//!
//! * [`Game`]: explicit scoring game trees with long-rule sums, final-score
//!   minimax, outcome classes and an impartiality test.
//! * [`octal`]: scoring octal games and the memoized scoring Grundy function.
//! * [`periodicity`]: period detection, certification, the alternation
//!   lemma checker and conjecture scans over families of rulesets.

mod error;
mod game;
mod generate;
mod notation;
pub mod octal;
pub mod periodicity;
mod score;

pub use error::Error;
pub use game::{FinalScores, Game, Outcome};
pub use generate::generate_impartial;
pub use notation::parse_game;
pub use octal::{
    best_moves, grundy_s, legal_moves, position_to_game, sweep, GrundyCache, MoveOutcome, OctalRules, Position,
    RuleBook, RulesetId,
};
pub use score::Score;

//! Scoring octal games: rulesets, heap positions, move generation, the
//! memoized scoring Grundy evaluator and expansion into explicit game trees.

mod eval;
mod expand;
mod moves;
mod position;
mod rules;

pub use eval::{best_moves, grundy_s, rated_moves, sweep, GrundyCache, RatedMove, DEFAULT_BUDGET};
pub use expand::{position_to_game, GameExpander};
pub use moves::{legal_moves, MoveOutcome};
pub use position::{positions_up_to, Heap, Position};
pub use rules::{builtin, parse_rules, OctalRules, RuleBook, RulesetId};

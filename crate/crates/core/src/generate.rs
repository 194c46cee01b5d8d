//! Seeded generator of impartial games, used as a property-test corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::Game;
use crate::score::Score;

/// Random impartial game of height at most `max_depth`.
///
/// Each node draws a score in `[-score_bound, score_bound]` with denominator
/// 1 or 2 and up to `max_branch` recursively generated left options. Right
/// options are the exact reflections of the left options about the node
/// score, so the result always passes [`Game::is_impartial`]. The same
/// arguments always produce the same game.
pub fn generate_impartial(max_depth: u32, max_branch: u32, score_bound: Score, seed: u64) -> Game {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half_steps = score_bound.abs().scale(2);
    // floor(2 * bound) as an integer count of half steps
    let limit = half_steps.numer().div_euclid(half_steps.denom());
    gen(&mut rng, max_depth, max_branch, limit)
}

fn gen(rng: &mut ChaCha8Rng, depth: u32, branch: u32, limit: i64) -> Game {
    let score = Score::new(rng.random_range(-limit..=limit), 2).expect("nonzero denominator");
    let width = if depth == 0 { 0 } else { rng.random_range(0..=branch) };
    let left: Vec<Game> = (0..width).map(|_| gen(rng, depth - 1, branch, limit)).collect();
    let right = left.iter().map(|gl| reflect(gl, score)).collect();
    Game::new(score, left, right)
}

/// `translate(negate(translate(g, -c)), c)`
fn reflect(g: &Game, c: Score) -> Game {
    g.translate(-c).negate().translate(c)
}

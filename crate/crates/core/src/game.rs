//! Explicit scoring-play game trees.
//!
//! A [`Game`] is an immutable, reference-counted node `{L | s | R}`. Option
//! lists are multisets kept in a canonical order (score, then left options,
//! then right options, compared recursively), so two games are equal exactly
//! when their trees are structurally identical. Subtrees may be shared, which
//! keeps sums and expansions of heap positions polynomial in size.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::score::Score;

#[derive(Clone)]
pub struct Game(Arc<Node>);

struct Node {
    score: Score,
    left: Vec<Game>,
    right: Vec<Game>,
    hash: u64,
    height: u32,
}

/// Left-first and Right-first final scores under perfect play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinalScores {
    pub sl: Score,
    pub sr: Score,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    /// Left wins whoever starts (ties allowed on one side).
    L,
    /// Right wins whoever starts (ties allowed on one side).
    R,
    /// The player who moves first wins.
    N,
    /// The player who moves second wins.
    P,
    /// Both orders of play end at score zero.
    Tie,
}

impl Outcome {
    pub fn from_final_scores(fs: FinalScores) -> Outcome {
        use Ordering::*;
        match (fs.sl.signum(), fs.sr.signum()) {
            (Greater, Greater) | (Greater, Equal) | (Equal, Greater) => Outcome::L,
            (Less, Less) | (Less, Equal) | (Equal, Less) => Outcome::R,
            (Greater, Less) => Outcome::N,
            (Less, Greater) => Outcome::P,
            (Equal, Equal) => Outcome::Tie,
        }
    }

    /// The class of the negated game.
    pub fn mirror(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            other => other,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::L => "L",
            Outcome::R => "R",
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::Tie => "Tie",
        })
    }
}

const fn mix(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn node_hash(score: Score, left: &[Game], right: &[Game]) -> u64 {
    let mut h = mix(score.numer() as u64 ^ mix(score.denom() as u64).rotate_left(17));
    for g in left {
        h = mix(h ^ g.0.hash.wrapping_add(0x9e37_79b9_7f4a_7c15));
    }
    h = mix(h ^ 0x5555_5555_5555_5555);
    for g in right {
        h = mix(h ^ g.0.hash.wrapping_add(0x632b_e59b_d9b4_e019));
    }
    h
}

type Ptr = *const ();

impl Game {
    /// Builds `{left | score | right}`, sorting both option multisets into
    /// canonical order.
    pub fn new(score: Score, mut left: Vec<Game>, mut right: Vec<Game>) -> Game {
        left.sort();
        right.sort();
        let height = left.iter().chain(&right).map(|g| g.0.height + 1).max().unwrap_or(0);
        let hash = node_hash(score, &left, &right);
        Game(Arc::new(Node { score, left, right, hash, height }))
    }

    /// A bare score: no options for either player.
    pub fn number(score: Score) -> Game {
        Game::new(score, Vec::new(), Vec::new())
    }

    /// `{{0|0|0} | 0 | {0|0|0}}`
    pub fn identity() -> Game {
        let zero = Game::number(Score::ZERO);
        let inner = Game::new(Score::ZERO, vec![zero.clone()], vec![zero]);
        Game::new(Score::ZERO, vec![inner.clone()], vec![inner])
    }

    pub fn score(&self) -> Score {
        self.0.score
    }

    pub fn left(&self) -> &[Game] {
        &self.0.left
    }

    pub fn right(&self) -> &[Game] {
        &self.0.right
    }

    pub fn is_number(&self) -> bool {
        self.0.left.is_empty() && self.0.right.is_empty()
    }

    /// Longest path from the root to a leaf.
    pub fn height(&self) -> u32 {
        self.0.height
    }

    /// Number of nodes in the fully unshared tree, saturating.
    pub fn tree_size(&self) -> u64 {
        let mut memo: HashMap<Ptr, u64> = HashMap::new();
        self.fold_dag(&mut memo, &mut |_, kids: &[u64]| kids.iter().fold(1u64, |acc, k| acc.saturating_add(*k)))
    }

    /// Number of distinct shared nodes reachable from the root.
    pub fn dag_size(&self) -> usize {
        let mut seen: HashSet<Ptr> = HashSet::new();
        let mut stack = vec![self];
        while let Some(g) = stack.pop() {
            if seen.insert(g.ptr()) {
                stack.extend(g.options());
            }
        }
        seen.len()
    }

    fn ptr(&self) -> Ptr {
        Arc::as_ptr(&self.0) as Ptr
    }

    fn options(&self) -> impl Iterator<Item = &Game> {
        self.0.left.iter().chain(self.0.right.iter())
    }

    /// Post-order fold over the shared DAG with an explicit stack. `combine`
    /// receives the node and the folded values of its left then right options.
    fn fold_dag<T: Clone>(&self, memo: &mut HashMap<Ptr, T>, combine: &mut impl FnMut(&Game, &[T]) -> T) -> T {
        let mut stack: Vec<(&Game, bool)> = vec![(self, false)];
        let mut kids = Vec::new();
        while let Some((g, expanded)) = stack.pop() {
            if memo.contains_key(&g.ptr()) {
                continue;
            }
            if !expanded {
                stack.push((g, true));
                for c in g.options() {
                    if !memo.contains_key(&c.ptr()) {
                        stack.push((c, false));
                    }
                }
            } else {
                kids.clear();
                kids.extend(g.options().map(|c| memo[&c.ptr()].clone()));
                let v = combine(g, &kids);
                memo.insert(g.ptr(), v);
            }
        }
        memo[&self.ptr()].clone()
    }

    /// Every score negated and the roles of Left and Right swapped.
    pub fn negate(&self) -> Game {
        let mut memo = HashMap::new();
        self.negate_memo(&mut memo)
    }

    fn negate_memo(&self, memo: &mut HashMap<Ptr, Game>) -> Game {
        if let Some(g) = memo.get(&self.ptr()) {
            return g.clone();
        }
        let left = self.0.right.iter().map(|g| g.negate_memo(memo)).collect();
        let right = self.0.left.iter().map(|g| g.negate_memo(memo)).collect();
        let g = Game::new(-self.0.score, left, right);
        memo.insert(self.ptr(), g.clone());
        g
    }

    /// Adds `delta` to the score of every node.
    pub fn translate(&self, delta: Score) -> Game {
        if delta.is_zero() {
            return self.clone();
        }
        let mut memo = HashMap::new();
        self.translate_memo(delta, &mut memo)
    }

    fn translate_memo(&self, delta: Score, memo: &mut HashMap<Ptr, Game>) -> Game {
        if let Some(g) = memo.get(&self.ptr()) {
            return g.clone();
        }
        let left = self.0.left.iter().map(|g| g.translate_memo(delta, memo)).collect();
        let right = self.0.right.iter().map(|g| g.translate_memo(delta, memo)).collect();
        let g = Game::new(self.0.score + delta, left, right);
        memo.insert(self.ptr(), g.clone());
        g
    }

    /// Long-rule disjunctive sum: a player may move in either component and
    /// play ends only when the player to move has no move in both.
    pub fn sum(&self, other: &Game) -> Game {
        let mut memo = HashMap::new();
        sum_memo(self, other, &mut memo)
    }

    /// Final scores under perfect play, computed on the shared DAG with an
    /// explicit stack so deep trees do not exhaust the call stack.
    pub fn final_scores(&self) -> FinalScores {
        let mut memo: HashMap<Ptr, FinalScores> = HashMap::new();
        self.fold_dag(&mut memo, &mut |g, kids| {
            let (l, r) = kids.split_at(g.0.left.len());
            FinalScores {
                sl: l.iter().map(|k| k.sr).max().unwrap_or(g.0.score),
                sr: r.iter().map(|k| k.sl).min().unwrap_or(g.0.score),
            }
        })
    }

    pub fn outcome(&self) -> Outcome {
        Outcome::from_final_scores(self.final_scores())
    }

    /// Impartiality test.
    ///
    /// A node qualifies when either both option sets are empty, or both are
    /// nonempty and every left option `gl` is matched by some right option
    /// `gr` with `gl - s == -(gr - s)` (and every right option by some left
    /// option), where `s` is the node's score. The condition is applied at
    /// every node of the tree.
    pub fn is_impartial(&self) -> bool {
        let mut mirror_memo = HashMap::new();
        let mut memo: HashMap<Ptr, bool> = HashMap::new();
        self.fold_dag(&mut memo, &mut |g, kids| {
            if !kids.iter().all(|ok| *ok) {
                return false;
            }
            let (left, right) = (&g.0.left, &g.0.right);
            if left.is_empty() != right.is_empty() {
                return false;
            }
            let c = g.0.score;
            left.iter().all(|gl| right.iter().any(|gr| reflects(gl, gr, c, &mut mirror_memo)))
                && right.iter().all(|gr| left.iter().any(|gl| reflects(gl, gr, c, &mut mirror_memo)))
        })
    }

    /// Indented tree, one node per line, children tagged `L` or `R`.
    pub fn render_tree(&self) -> String {
        let mut out = String::new();
        let mut stack: Vec<(&Game, usize, &str)> = vec![(self, 0, "")];
        while let Some((g, depth, tag)) = stack.pop() {
            for _ in 0..depth {
                out.push_str("  ");
            }
            out.push_str(tag);
            out.push_str(&g.0.score.to_string());
            out.push('\n');
            for c in g.0.right.iter().rev() {
                stack.push((c, depth + 1, "R "));
            }
            for c in g.0.left.iter().rev() {
                stack.push((c, depth + 1, "L "));
            }
        }
        out
    }

    fn structurally_eq(&self, other: &Game, proven: &mut HashSet<(Ptr, Ptr)>) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        let (a, b) = (&*self.0, &*other.0);
        if a.hash != b.hash
            || a.height != b.height
            || a.score != b.score
            || a.left.len() != b.left.len()
            || a.right.len() != b.right.len()
        {
            return false;
        }
        if proven.contains(&(self.ptr(), other.ptr())) {
            return true;
        }
        let eq = a.left.iter().zip(&b.left).all(|(x, y)| x.structurally_eq(y, proven))
            && a.right.iter().zip(&b.right).all(|(x, y)| x.structurally_eq(y, proven));
        if eq {
            proven.insert((self.ptr(), other.ptr()));
        }
        eq
    }
}

fn sum_memo(g: &Game, h: &Game, memo: &mut HashMap<(Ptr, Ptr), Game>) -> Game {
    if let Some(s) = memo.get(&(g.ptr(), h.ptr())) {
        return s.clone();
    }
    let mut left = Vec::with_capacity(g.0.left.len() + h.0.left.len());
    left.extend(g.0.left.iter().map(|gl| sum_memo(gl, h, memo)));
    left.extend(h.0.left.iter().map(|hl| sum_memo(g, hl, memo)));
    let mut right = Vec::with_capacity(g.0.right.len() + h.0.right.len());
    right.extend(g.0.right.iter().map(|gr| sum_memo(gr, h, memo)));
    right.extend(h.0.right.iter().map(|hr| sum_memo(g, hr, memo)));
    let s = Game::new(g.0.score + h.0.score, left, right);
    memo.insert((g.ptr(), h.ptr()), s.clone());
    s
}

/// `a - c == -(b - c)` as trees: scores reflect about `c`, and `a`'s left
/// (right) options reflect one-to-one onto `b`'s right (left) options.
fn reflects(a: &Game, b: &Game, c: Score, memo: &mut HashMap<(Ptr, Ptr, Score), bool>) -> bool {
    let (x, y) = (&*a.0, &*b.0);
    if x.score - c != c - y.score
        || x.left.len() != y.right.len()
        || x.right.len() != y.left.len()
        || x.height != y.height
    {
        return false;
    }
    let key = (a.ptr(), b.ptr(), c);
    if let Some(v) = memo.get(&key) {
        return *v;
    }
    let v = multiset_reflects(&x.left, &y.right, c, memo) && multiset_reflects(&x.right, &y.left, c, memo);
    memo.insert(key, v);
    v
}

fn multiset_reflects(xs: &[Game], ys: &[Game], c: Score, memo: &mut HashMap<(Ptr, Ptr, Score), bool>) -> bool {
    // Reflection is a bijection on games, so greedy matching is exact.
    let mut used = vec![false; ys.len()];
    'outer: for x in xs {
        for (j, y) in ys.iter().enumerate() {
            if !used[j] && reflects(x, y, c, memo) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl PartialEq for Game {
    fn eq(&self, other: &Game) -> bool {
        self.structurally_eq(other, &mut HashSet::new())
    }
}

impl Eq for Game {}

impl Hash for Game {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Game {
    fn partial_cmp(&self, other: &Game) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: score, then left options, then right options,
/// each list compared lexicographically.
impl Ord for Game {
    fn cmp(&self, other: &Game) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        let (a, b) = (&*self.0, &*other.0);
        a.score.cmp(&b.score).then_with(|| {
            if a.hash == b.hash && self == other {
                Ordering::Equal
            } else {
                a.left.cmp(&b.left).then_with(|| a.right.cmp(&b.right))
            }
        })
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

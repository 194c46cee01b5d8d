//! Cross-checks against deliberately naive reference implementations that
//! share no code with the library's evaluation paths.

use scoreplay::octal::{builtin, grundy_s, position_to_game, sweep, GrundyCache, Heap, OctalRules, Position, RuleBook};
use scoreplay::{Game, Score};

/// Plain recursive minimax straight from the definition of final scores.
fn naive_final(g: &Game, left_first: bool) -> Score {
    if left_first {
        g.left().iter().map(|o| naive_final(o, false)).max().unwrap_or(g.score())
    } else {
        g.right().iter().map(|o| naive_final(o, true)).min().unwrap_or(g.score())
    }
}

/// Unmemoized scoring Grundy value on a plain heap list under one ruleset.
fn naive_gs(heaps: &[u32], digits: &[u8], points: &[Score]) -> Score {
    let mut best: Option<Score> = None;
    for (idx, &n) in heaps.iter().enumerate() {
        for k in 1..=(n as usize).min(digits.len()) {
            let d = digits[k - 1];
            let rest = n - k as u32;
            let mut options: Vec<Vec<u32>> = Vec::new();
            if d & 1 != 0 && rest == 0 {
                options.push(vec![]);
            }
            if d & 2 != 0 && rest > 0 {
                options.push(vec![rest]);
            }
            if d & 4 != 0 {
                for a in 1..rest {
                    if a <= rest - a {
                        options.push(vec![a, rest - a]);
                    }
                }
            }
            for parts in options {
                let mut next: Vec<u32> = heaps.to_vec();
                next.remove(idx);
                next.extend(parts);
                let v = points[k - 1] - naive_gs(&next, digits, points);
                best = Some(best.map_or(v, |b| b.max(v)));
            }
        }
    }
    best.unwrap_or(Score::ZERO)
}

#[test]
fn nested_game_minimax() {
    let g: Game = "{2,{11|4|-3}|3|4,{9|2|-5}}".parse().unwrap();
    assert_eq!((naive_final(&g, true), naive_final(&g, false)), (Score::integer(2), Score::integer(4)));
    let fs = g.final_scores();
    assert_eq!((fs.sl, fs.sr), (Score::integer(2), Score::integer(4)));
}

#[test]
fn five_outcome_games_minimax() {
    for (text, sl, sr) in [("{1|5|9}", 1, 9), ("{-9|-5|-1}", -9, -1)] {
        let g: Game = text.parse().unwrap();
        assert_eq!((naive_final(&g, true), naive_final(&g, false)), (Score::integer(sl), Score::integer(sr)));
        let fs = g.final_scores();
        assert_eq!((fs.sl, fs.sr), (Score::integer(sl), Score::integer(sr)));
    }
}

#[test]
fn identity_plus_number_minimax() {
    let g = Game::number(Score::integer(5)).sum(&Game::identity());
    assert_eq!(naive_final(&g, true), Score::integer(5));
    assert_eq!(naive_final(&g, false), Score::integer(5));
}

#[test]
fn symmetric_game_doubled_is_p() {
    let g: Game = "{2,{1|2|3}|0|-2,{-3|-2|-1}}".parse().unwrap();
    let s = g.sum(&g);
    assert!(naive_final(&s, true) < Score::ZERO);
    assert!(naive_final(&s, false) > Score::ZERO);
}

#[test]
fn engine_matches_naive_single_ruleset() {
    let rulesets = [
        builtin("sub45").unwrap(),
        builtin("o3333p2").unwrap(),
        builtin("o26").unwrap(),
        OctalRules::new(
            "mix",
            &[7, 1, 6, 2],
            vec![Score::new(1, 2).unwrap(), Score::integer(-1), Score::integer(3), Score::new(-2, 3).unwrap()],
        )
        .unwrap(),
    ];
    for rules in rulesets {
        let (book, id) = RuleBook::with(rules.clone());
        let mut cache = GrundyCache::new();
        for heaps in [vec![1], vec![5], vec![9], vec![3, 4], vec![2, 2, 5], vec![6, 1, 1], vec![10]] {
            let p = Position::new(heaps.iter().map(|&size| Heap { rules: id, size }));
            let expected = naive_gs(&heaps, rules.digits(), rules.points());
            assert_eq!(grundy_s(&p, &book, &mut cache).unwrap(), expected, "{} {:?}", rules.name(), heaps);
        }
    }
}

#[test]
fn four_and_four_is_zero() {
    let (book, id) = RuleBook::with(builtin("sub45").unwrap());
    let digits = book.get(id).unwrap().digits().to_vec();
    let points = book.get(id).unwrap().points().to_vec();
    assert_eq!(naive_gs(&[4, 4], &digits, &points), Score::ZERO);
}

#[test]
fn expanded_trees_agree_with_naive_minimax() {
    let (book, id) = RuleBook::with(builtin("o26").unwrap());
    for n in 0..=7 {
        let g = position_to_game(&Position::single(id, n), &book, 100_000).unwrap();
        let v = sweep(&book, &Position::empty(), id, n, &mut GrundyCache::new()).unwrap()[n as usize];
        assert_eq!(naive_final(&g, true), v);
        assert_eq!(naive_final(&g, false), -v);
    }
}

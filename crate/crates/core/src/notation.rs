//! Text notation for games.
//!
//! ```text
//! game  := "{" opts "|" score "|" opts "}" | score
//! opts  := ε | game ("," game)*
//! score := integer | integer "/" positive-integer | decimal
//! ```
//!
//! Whitespace is ignored. A bare score denotes a game with no options.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::game::Game;
use crate::score::Score;

pub fn parse_game(text: &str) -> Result<Game, Error> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let g = p.game()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input after game"));
    }
    Ok(g)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn game(&mut self) -> Result<Game, Error> {
        if self.peek() != Some(b'{') {
            return self.score().map(Game::number);
        }
        self.pos += 1;
        let left = self.options()?;
        self.expect(b'|')?;
        let score = self.score()?;
        self.expect(b'|')?;
        let right = self.options()?;
        self.expect(b'}')?;
        Ok(Game::new(score, left, right))
    }

    fn options(&mut self) -> Result<Vec<Game>, Error> {
        let mut opts = Vec::new();
        if matches!(self.peek(), Some(b'|') | Some(b'}')) {
            return Ok(opts);
        }
        loop {
            opts.push(self.game()?);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(opts);
            }
        }
    }

    fn score(&mut self) -> Result<Score, Error> {
        self.skip_ws();
        let start = self.pos;
        let mut end = self.number_end(start);
        let mut after = end;
        while after < self.src.len() && self.src[after].is_ascii_whitespace() {
            after += 1;
        }
        if self.src.get(after) == Some(&b'/') {
            let mut d = after + 1;
            while d < self.src.len() && self.src[d].is_ascii_whitespace() {
                d += 1;
            }
            end = self.number_end(d);
        }
        let token = std::str::from_utf8(&self.src[start..end]).expect("ascii slice");
        let compact: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(self.err("expected a score"));
        }
        let score = compact
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: format!("non-rational score literal `{compact}`") })?;
        self.pos = end;
        Ok(score)
    }

    /// End of a `[+-]digits[.digits]` run starting at `from`.
    fn number_end(&self, from: usize) -> usize {
        let mut end = from;
        if matches!(self.src.get(end), Some(b'-') | Some(b'+')) {
            end += 1;
        }
        while end < self.src.len() && (self.src[end].is_ascii_digit() || self.src[end] == b'.') {
            end += 1;
        }
        end
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Game, Error> {
        parse_game(s)
    }
}

fn write_game(g: &Game, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
    if !top && g.is_number() {
        return write!(f, "{}", g.score());
    }
    f.write_str("{")?;
    write_options(g.left(), f)?;
    write!(f, "|{}|", g.score())?;
    write_options(g.right(), f)?;
    f.write_str("}")
}

fn write_options(opts: &[Game], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, o) in opts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write_game(o, f, false)?;
    }
    Ok(())
}

/// Canonical notation. The root is always braced; options with no moves
/// print as bare scores.
impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_game(self, f, true)
    }
}

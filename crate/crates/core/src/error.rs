use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid score literal `{0}`")]
    InvalidScore(String),

    #[error("malformed rules document: {0}")]
    RulesFormat(String),

    #[error("ruleset `{name}`: digit {digit} at index {index} is outside 0..7")]
    DigitOutOfRange { name: String, index: usize, digit: i64 },

    #[error("ruleset `{name}`: {digits} digits but {points} points")]
    LengthMismatch { name: String, digits: usize, points: usize },

    #[error("ruleset `{0}` has no nonzero digit")]
    NoMoves(String),

    #[error("unknown ruleset `{0}`")]
    UnknownRuleset(String),

    #[error("malformed position literal `{0}`")]
    PositionFormat(String),

    #[error("position budget of {0} evaluated positions exceeded")]
    BudgetExceeded(usize),

    #[error("game expansion exceeded {0} nodes")]
    ExpansionLimit(usize),

    #[error("position has no legal moves")]
    NoLegalMoves,

    #[error("verification window too short: need values up to index {needed}, have up to {have}")]
    WindowTooShort { needed: usize, have: usize },

    #[error("malformed scan spec: {0}")]
    ScanSpec(String),
}

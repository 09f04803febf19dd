use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside 1..={max}")]
    LetterOutOfRange { letter: i64, max: i64 },
    #[error("the empty word has no last spot")]
    EmptyWord,
    #[error("unknown procedure `{0}`")]
    UnknownProcedure(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("procedure `{name}` is not {required}")]
    NotApplicable { name: String, required: &'static str },
    #[error("size {size} exceeds the exhaustive cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("invalid direction table: {0}")]
    InvalidTable(String),
    #[error("word {0} is not in the language")]
    NotInLanguage(String),
    #[error("parking rule undefined: {0}")]
    RuleUndefined(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

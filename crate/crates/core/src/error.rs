use thiserror::Error;

/// Errors produced by the automata and factorization routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown symbol `{token}` at position {position}")]
    UnknownSymbol { token: String, position: usize },

    #[error("regex parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("automata are over different alphabets")]
    AlphabetMismatch,

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("the language contains the empty word")]
    EpsilonInLanguage,

    #[error("the word is not in L*")]
    NotInLanguageStar,

    #[error("result exceeds the cap of {cap} items")]
    Overflow { cap: usize },

    #[error("more than {cap} factorizations (stopped after {partial})")]
    FactorizationCapExceeded { cap: usize, partial: usize },

    #[error("more than {cap} reachable matrices")]
    StateExplosion { cap: usize },

    #[error("operation requires a finite language")]
    NotFinite,

    #[error("language has {0} words; characteristic vectors support at most 64")]
    TooManyWords(usize),

    #[error("invalid language spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

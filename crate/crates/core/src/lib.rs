//! Factorization analysis for regular and finite languages.
//!
//! For a language `L` and a word `x ∈ L*` this crate decides whether `x`
//! factors into `L`-words uniquely (`uf`), with a unique number of factors
//! (`su`), uniquely up to permuting the factors (`ufp`), or with a unique set
//! of factors (`ufs`). Each notion has an automaton construction for the
//! words that *fail* it, and every construction is checked against the
//! brute-force [`oracle`].

pub mod acceptance;
pub mod alphabet;
pub mod automata;
pub mod cfg;
pub mod counter;
pub mod error;
pub mod families;
pub mod language;
pub mod oracle;
pub mod palstar;
pub mod su;
pub mod uf;
pub mod ufp;
pub mod ufs;

pub use alphabet::{Alphabet, Symbol, Word};
pub use automata::{Automaton, Dfa, Nfa};
pub use error::{Error, Result};
pub use language::{Language, LanguageSpec};
pub use oracle::{MembershipOracle, Predicate};

//! The JSON language description consumed by the CLI and produced by the
//! witness families.
//!
//! ```json
//! {"alphabet": ["a", "b"], "kind": "finite", "words": [["a"], ["a", "b"]]}
//! {"alphabet": ["a", "b"], "kind": "regex", "pattern": "b(aa)*|(aaa)*b"}
//! ```

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::automata::{compile_regex, determinize, minimize, Dfa};
use crate::error::{Error, Result};
use crate::oracle::MembershipOracle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LanguageBody {
    Finite { words: Vec<Vec<String>> },
    Regex { pattern: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub alphabet: Vec<String>,
    #[serde(flatten)]
    pub body: LanguageBody,
}

/// A validated language: either an explicit finite word list or a regex
/// compiled to a minimal DFA.
#[derive(Debug, Clone)]
pub struct Language {
    alphabet: Alphabet,
    words: Option<Vec<Word>>,
    pattern: Option<String>,
    dfa: Dfa,
}

impl LanguageSpec {
    pub fn finite<S: AsRef<str>>(alphabet: &[S], words: Vec<Vec<String>>) -> Self {
        LanguageSpec {
            alphabet: alphabet.iter().map(|s| s.as_ref().to_string()).collect(),
            body: LanguageBody::Finite { words },
        }
    }

    pub fn regex<S: AsRef<str>>(alphabet: &[S], pattern: impl Into<String>) -> Self {
        LanguageSpec {
            alphabet: alphabet.iter().map(|s| s.as_ref().to_string()).collect(),
            body: LanguageBody::Regex {
                pattern: pattern.into(),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.body, LanguageBody::Finite { .. })
    }

    pub fn load(&self) -> Result<Language> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        match &self.body {
            LanguageBody::Finite { words } => {
                let mut seen = HashSet::new();
                let mut parsed = Vec::with_capacity(words.len());
                for w in words {
                    let w = alphabet.word_from_tokens(w)?;
                    if !seen.insert(w.clone()) {
                        return Err(Error::InvalidSpec(format!(
                            "duplicate word `{}`",
                            alphabet.render(&w)
                        )));
                    }
                    parsed.push(w);
                }
                Ok(Language::from_words(alphabet, parsed))
            }
            LanguageBody::Regex { pattern } => {
                let dfa = minimize(&determinize(&compile_regex(pattern, &alphabet)?));
                Ok(Language {
                    alphabet,
                    words: None,
                    pattern: Some(pattern.clone()),
                    dfa,
                })
            }
        }
    }
}

impl Language {
    /// Finite language from distinct words, kept in the given order.
    pub fn from_words(alphabet: Alphabet, words: Vec<Word>) -> Self {
        let dfa = minimize(&Dfa::from_words(alphabet.clone(), &words));
        Language {
            alphabet,
            words: Some(words),
            pattern: None,
            dfa,
        }
    }

    pub fn from_dfa(dfa: Dfa) -> Self {
        Language {
            alphabet: dfa.alphabet().clone(),
            words: None,
            pattern: None,
            dfa,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Minimal complete DFA.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref()
    }

    pub fn finite_words(&self) -> Result<&[Word]> {
        self.words().ok_or(Error::NotFinite)
    }

    pub fn pattern(&self) -> Option<&str> {
        self.pattern.as_deref()
    }

    pub fn contains_empty(&self) -> bool {
        self.dfa.accepts_empty()
    }

    pub fn oracle(&self) -> MembershipOracle {
        match &self.words {
            Some(w) => MembershipOracle::finite(self.alphabet.clone(), w.iter().cloned()),
            None => MembershipOracle::from_dfa(self.dfa.clone()),
        }
    }

    pub fn describe(&self) -> String {
        match (&self.words, &self.pattern) {
            (Some(w), _) => {
                let shown: Vec<String> = w.iter().map(|w| self.alphabet.render(w)).collect();
                format!("{{{}}}", shown.join(", "))
            }
            (None, Some(p)) => p.clone(),
            (None, None) => format!("DFA with {} states", self.dfa.num_states()),
        }
    }

    /// Spec form of this language. DFA-only languages have no spec form.
    pub fn to_spec(&self) -> Option<LanguageSpec> {
        let alphabet = self.alphabet.tokens().to_vec();
        match (&self.words, &self.pattern) {
            (Some(w), _) => Some(LanguageSpec {
                alphabet,
                body: LanguageBody::Finite {
                    words: w.iter().map(|w| self.alphabet.tokens_of(w)).collect(),
                },
            }),
            (None, Some(p)) => Some(LanguageSpec {
                alphabet,
                body: LanguageBody::Regex { pattern: p.clone() },
            }),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_kinds() {
        let f = LanguageSpec::from_json(
            r#"{"alphabet": ["a", "b"], "kind": "finite", "words": [["a"], ["a", "b"]]}"#,
        )
        .unwrap();
        assert!(f.is_finite());
        let lang = f.load().unwrap();
        assert_eq!(lang.words().unwrap().len(), 2);

        let r = LanguageSpec::from_json(
            r#"{"alphabet": ["a", "b"], "kind": "regex", "pattern": "(ab)*"}"#,
        )
        .unwrap();
        let lang = r.load().unwrap();
        assert!(lang.contains_empty());
        assert!(lang.words().is_none());
    }

    #[test]
    fn json_round_trip() {
        let spec = LanguageSpec::regex(&["a", "b"], "b(aa)*");
        assert_eq!(LanguageSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn rejects_duplicates_and_unknown_tokens() {
        let dup = LanguageSpec::finite(&["a"], vec![vec!["a".into()], vec!["a".into()]]);
        assert!(matches!(dup.load(), Err(Error::InvalidSpec(_))));
        let unknown = LanguageSpec::finite(&["a"], vec![vec!["b".into()]]);
        assert!(matches!(unknown.load(), Err(Error::UnknownSymbol { .. })));
        assert!(LanguageSpec::from_json(r#"{"alphabet": ["a"], "kind": "cfg"}"#).is_err());
    }
}

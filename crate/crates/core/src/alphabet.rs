//! Alphabets of text tokens and words as token sequences.
//!
//! A [`Symbol`] is an index into its [`Alphabet`]; the declared order of the
//! alphabet is the order used for every lexicographic tie-break in the crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters reserved by the regex dialect.
pub const RESERVED: &[char] = &['|', '*', '+', '(', ')'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, non-empty, duplicate-free list of tokens.
#[derive(Clone)]
pub struct Alphabet {
    tokens: Arc<[String]>,
    lookup: Arc<HashMap<String, Symbol>>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if tokens.len() > u16::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        let mut lookup = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() {
                return Err(Error::InvalidAlphabet("empty token".into()));
            }
            if t.chars()
                .any(|c| c.is_whitespace() || RESERVED.contains(&c))
            {
                return Err(Error::InvalidAlphabet(format!(
                    "token `{t}` contains whitespace or a regex operator"
                )));
            }
            if lookup.insert(t.clone(), Symbol(i as u16)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate token `{t}`")));
            }
        }
        Ok(Alphabet {
            tokens: tokens.into(),
            lookup: Arc::new(lookup),
        })
    }

    /// Alphabet of single-character tokens, in the order given.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.tokens.len()).map(|i| Symbol(i as u16))
    }

    pub fn symbol(&self, token: &str) -> Option<Symbol> {
        self.lookup.get(token).copied()
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.tokens[s.index()]
    }

    fn longest_token_len(&self) -> usize {
        self.tokens
            .iter()
            .map(|t| t.chars().count())
            .max()
            .unwrap_or(1)
    }

    /// Tokenizes `text` by longest match against the alphabet. Whitespace
    /// separates tokens and is otherwise ignored.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_whitespace() {
                i += 1;
                continue;
            }
            let (sym, len) = self.match_at(&chars, i)?;
            out.push(sym);
            i += len;
        }
        Ok(Word(out))
    }

    /// Longest alphabet token starting at `chars[pos]`.
    pub(crate) fn match_at(&self, chars: &[char], pos: usize) -> Result<(Symbol, usize)> {
        let max = self.longest_token_len().min(chars.len() - pos);
        for len in (1..=max).rev() {
            let candidate: String = chars[pos..pos + len].iter().collect();
            if let Some(s) = self.symbol(&candidate) {
                return Ok((s, len));
            }
        }
        Err(Error::UnknownSymbol {
            token: chars[pos].to_string(),
            position: pos,
        })
    }

    /// Builds a word from explicit tokens.
    pub fn word_from_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word> {
        tokens
            .iter()
            .enumerate()
            .map(|(i, t)| {
                self.symbol(t.as_ref()).ok_or_else(|| Error::UnknownSymbol {
                    token: t.as_ref().to_string(),
                    position: i,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Renders a word. Tokens are joined without separators when every token
    /// is a single character, and with spaces otherwise. The empty word
    /// renders as `ε`.
    pub fn render(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.tokens.iter().all(|t| t.chars().count() == 1) {
            ""
        } else {
            " "
        };
        w.iter()
            .map(|&s| self.token(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn tokens_of(&self, w: &[Symbol]) -> Vec<String> {
        w.iter().map(|&s| self.token(s).to_string()).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tokens, &other.tokens) || self.tokens == other.tokens
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.tokens.iter()).finish()
    }
}

/// A finite sequence of symbols. Ordered length-first, then lexicographically
/// by symbol index.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices(ix: &[u16]) -> Self {
        Word(ix.iter().map(|&i| Symbol(i)).collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    /// `self` repeated `n` times.
    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

// Hash of a newtype over Vec equals the hash of the slice, so lookups by
// `&[Symbol]` are consistent.
impl std::borrow::Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ix: Vec<u16> = self.0.iter().map(|s| s.0).collect();
        write!(f, "Word{ix:?}")
    }
}

pub fn shortlex(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a", ""]).is_err());
        assert!(Alphabet::new(["a|b"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
    }

    #[test]
    fn longest_match_tokenizing() {
        let al = Alphabet::new(["a1", "a10", "b"]).unwrap();
        let w = al.parse_word("a1 b a10b").unwrap();
        assert_eq!(al.tokens_of(&w), vec!["a1", "b", "a10", "b"]);
        assert_eq!(al.render(&w), "a1 b a10 b");
        assert!(matches!(
            al.parse_word("a2"),
            Err(Error::UnknownSymbol { position: 0, .. })
        ));
    }

    #[test]
    fn shortlex_order() {
        let mut v = vec![
            Word::from_indices(&[1]),
            Word::from_indices(&[0, 0]),
            Word::empty(),
            Word::from_indices(&[0]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Word::empty(),
                Word::from_indices(&[0]),
                Word::from_indices(&[1]),
                Word::from_indices(&[0, 0]),
            ]
        );
    }
}

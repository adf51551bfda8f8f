//! Unique factorization over a regular language.
//!
//! Two independent constructions of a DFA for `uf(L)`:
//!
//! * [`build_double_nfa`] guesses two different factorizations of a word
//!   with states `Q ∪ Q×Q` and accepts exactly the words of `L*` having at
//!   least two; [`uf_dfa`] is its complement relative to `L*`.
//! * [`matrix_uf_dfa`] runs the transition matrices of the star automaton
//!   with path counts saturated at 2 and accepts when the initial-to-initial
//!   count is exactly 1.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::Word;
use crate::automata::{
    complement_within, determinize, minimize, shortest_accepted, star_nfa, Automaton, Dfa, Nfa,
};
use crate::error::{Error, Result};

/// Default bound on reachable matrices in [`matrix_uf_dfa`].
pub const DEFAULT_MATRIX_CAP: usize = 100_000;

/// A state of the doubled automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoubledState {
    /// Both factorizations agree so far; tracks the one DFA state.
    Single(usize),
    /// The factorizations have split; one DFA state per factorization.
    Pair(usize, usize),
}

impl DoubledState {
    pub fn index(self, n: usize) -> usize {
        match self {
            DoubledState::Single(q) => q,
            DoubledState::Pair(p, q) => n + p * n + q,
        }
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        if index < n {
            DoubledState::Single(index)
        } else {
            let i = index - n;
            DoubledState::Pair(i / n, i % n)
        }
    }
}

impl fmt::Display for DoubledState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoubledState::Single(q) => write!(f, "{q}"),
            DoubledState::Pair(p, q) => write!(f, "[{p},{q}]"),
        }
    }
}

/// NFA over `Q ∪ Q×Q` accepting the words of `L*` that have at least two
/// distinct factorizations into words of `L = L(m)`.
///
/// In single mode a final state `q` may continue its factor, end it and
/// start the next one, or split: the first coordinate ends the factor while
/// the second continues it. The split is the point where the two
/// factorizations first differ. In pair mode each coordinate follows `m`
/// and may independently restart from the initial state after a final
/// state. Finals are `F × F`.
pub fn build_double_nfa(m: &Dfa) -> Result<Nfa> {
    if m.accepts_empty() {
        return Err(Error::EpsilonInLanguage);
    }
    let n = m.num_states();
    let q0 = m.initial();
    let single = |q| DoubledState::Single(q).index(n);
    let pair = |p, q| DoubledState::Pair(p, q).index(n);
    let mut nfa = Nfa::new(m.alphabet().clone(), n + n * n);

    for a in m.alphabet().symbols() {
        let t = m.step(q0, a);
        for q in 0..n {
            let s = m.step(q, a);
            nfa.add_transition(single(q), a, single(s));
            if m.is_final(q) {
                nfa.add_transition(single(q), a, single(t));
                nfa.add_transition(single(q), a, pair(t, s));
            }
        }
        for p in 0..n {
            let r = m.step(p, a);
            for q in 0..n {
                let s = m.step(q, a);
                let from = pair(p, q);
                nfa.add_transition(from, a, pair(r, s));
                if m.is_final(p) {
                    nfa.add_transition(from, a, pair(t, s));
                }
                if m.is_final(q) {
                    nfa.add_transition(from, a, pair(r, t));
                }
                if m.is_final(p) && m.is_final(q) {
                    nfa.add_transition(from, a, pair(t, t));
                }
            }
        }
    }
    nfa.add_initial(single(q0));
    for p in (0..n).filter(|&p| m.is_final(p)) {
        for q in (0..n).filter(|&q| m.is_final(q)) {
            nfa.set_final(pair(p, q), true);
        }
    }
    nfa.set_labels(
        (0..n + n * n)
            .map(|i| DoubledState::from_index(i, n).to_string())
            .collect(),
    );
    Ok(nfa)
}

/// DFA for `L(m)*`.
pub fn lstar_dfa(m: &Dfa) -> Result<Dfa> {
    Ok(minimize(&determinize(&star_nfa(m)?)))
}

/// Minimal DFA for `uf(L)`, computed as `L* − L(M′)`. Empty when `ε ∈ L`.
pub fn uf_dfa(m: &Dfa) -> Result<Dfa> {
    if m.accepts_empty() {
        return Ok(Dfa::empty(m.alphabet().clone()));
    }
    let star = lstar_dfa(m)?;
    let ambiguous = determinize(&build_double_nfa(m)?);
    Ok(minimize(&complement_within(&ambiguous, &star)?))
}

/// Square matrix with entries in `{0, 1, 2}`, where 2 stands for "two or
/// more".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SaturatingMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl SaturatingMatrix {
    pub fn zero(n: usize) -> Self {
        SaturatingMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Adjacency matrix of `nfa` on one letter.
    pub fn letter(nfa: &Nfa, a: crate::alphabet::Symbol) -> Self {
        let n = nfa.num_states();
        let mut m = Self::zero(n);
        for i in 0..n {
            for &j in nfa.successors(i, a) {
                m.entries[i * n + j] = 1;
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Integer product with every entry above 2 clamped to 2.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.entries[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = other.entries[k * n + j];
                    if y != 0 {
                        let e = &mut out.entries[i * n + j];
                        *e = (*e + x * y).min(2);
                    }
                }
            }
        }
        out
    }
}

pub fn matrix_uf_dfa(m: &Dfa) -> Result<Dfa> {
    matrix_uf_dfa_capped(m, DEFAULT_MATRIX_CAP)
}

/// DFA whose states are the reachable saturating transition matrices of the
/// star automaton of `m`. A word is accepted when its matrix has exactly one
/// path from the initial state back to itself.
pub fn matrix_uf_dfa_capped(m: &Dfa, cap: usize) -> Result<Dfa> {
    let star = star_nfa(m)?;
    let init = star.initials()[0];
    let letters: Vec<SaturatingMatrix> = m
        .alphabet()
        .symbols()
        .map(|a| SaturatingMatrix::letter(&star, a))
        .collect();
    let start = SaturatingMatrix::identity(star.num_states());
    let mut index = HashMap::from([(start.clone(), 0usize)]);
    let mut matrices = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < matrices.len() {
        for letter in &letters {
            let next = matrices[i].mul(letter);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if matrices.len() == cap {
                        return Err(Error::StateExplosion { cap });
                    }
                    index.insert(next.clone(), matrices.len());
                    matrices.push(next);
                    matrices.len() - 1
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let finals = matrices.iter().map(|x| x.get(init, init) == 1).collect();
    Ok(Dfa::from_raw(m.alphabet().clone(), delta, 0, finals))
}

/// Outcome of [`is_code`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeCheck {
    /// Number of states of the DFA that was checked.
    pub states: usize,
    /// Shortest-then-least word with two factorizations, if any.
    pub witness: Option<Word>,
}

impl CodeCheck {
    pub fn is_code(&self) -> bool {
        self.witness.is_none()
    }

    /// `n² + n`: every witness is strictly shorter.
    pub fn length_bound(&self) -> usize {
        self.states * self.states + self.states
    }
}

/// Tests whether `L(m)` is a code. If `ε ∈ L`, the empty word already has
/// infinitely many factorizations and is returned as the witness.
pub fn is_code(m: &Dfa) -> Result<CodeCheck> {
    let witness = if m.accepts_empty() {
        Some(Word::empty())
    } else {
        shortest_accepted(&build_double_nfa(m)?)
    };
    Ok(CodeCheck {
        states: m.num_states(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::{enumerate_slice, equivalent};
    use crate::language::Language;

    fn finite(chars: &str, words: &[&str]) -> Language {
        let al = Alphabet::from_chars(chars).unwrap();
        let ws = words.iter().map(|w| al.parse_word(w).unwrap()).collect();
        Language::from_words(al, ws)
    }

    #[test]
    fn doubled_state_count() {
        let l = finite("ab", &["a", "ab", "aab"]);
        let n = l.dfa().num_states();
        assert_eq!(build_double_nfa(l.dfa()).unwrap().num_states(), n * n + n);
    }

    #[test]
    fn prefix_code_is_unambiguous() {
        let l = finite("ab", &["a", "ba"]);
        let m2 = build_double_nfa(l.dfa()).unwrap();
        assert_eq!(shortest_accepted(&m2), None);
        assert!(is_code(l.dfa()).unwrap().is_code());
    }

    #[test]
    fn shortest_ambiguous_of_example() {
        let l = finite("ab", &["a", "ab", "aab"]);
        let w = shortest_accepted(&build_double_nfa(l.dfa()).unwrap()).unwrap();
        assert_eq!(l.alphabet().render(&w), "aab");
    }

    #[test]
    fn shared_factor_with_proper_prefix_in_language() {
        // (ab)(cd) = (ab)(c)(d): the shared factor ab passes through the
        // final state reached after a.
        let l = finite("abcd", &["a", "ab", "c", "cd", "d"]);
        let m2 = build_double_nfa(l.dfa()).unwrap();
        let abcd = l.alphabet().parse_word("abcd").unwrap();
        assert!(m2.accepts(&abcd));
        assert_eq!(
            shortest_accepted(&m2),
            Some(l.alphabet().parse_word("cd").unwrap())
        );
    }

    #[test]
    fn epsilon_language_has_empty_uf() {
        let al = Alphabet::from_chars("a").unwrap();
        let l = Language::from_words(al.clone(), vec![Word::empty(), al.parse_word("a").unwrap()]);
        assert!(build_double_nfa(l.dfa()).is_err());
        assert!(matrix_uf_dfa(l.dfa()).is_err());
        let uf = uf_dfa(l.dfa()).unwrap();
        assert!(equivalent(&uf, &Dfa::empty(al)).unwrap());
        assert_eq!(is_code(l.dfa()).unwrap().witness, Some(Word::empty()));
    }

    #[test]
    fn singleton_code() {
        let l = finite("ab", &["ab"]);
        let uf = uf_dfa(l.dfa()).unwrap();
        let star = lstar_dfa(l.dfa()).unwrap();
        assert!(equivalent(&uf, &star).unwrap());
    }

    #[test]
    fn matrix_construction_small_cases() {
        let l = finite("a", &["a"]);
        let d = matrix_uf_dfa(l.dfa()).unwrap();
        let s: Vec<_> = enumerate_slice(&d, 3)
            .unwrap()
            .iter()
            .map(|w| w.len())
            .collect();
        assert_eq!(s, [0, 1, 2, 3]);

        let l = finite("a", &["a", "aa"]);
        let d = matrix_uf_dfa(l.dfa()).unwrap();
        let aa = l.alphabet().parse_word("aa").unwrap();
        assert!(!d.accepts(&aa));
        assert!(d.accepts(&aa[..1]));
    }

    #[test]
    fn saturating_product_clamps() {
        let mut m = SaturatingMatrix::zero(2);
        m.entries = vec![1, 1, 1, 1];
        let sq = m.mul(&m);
        assert_eq!(sq.entries, vec![2, 2, 2, 2]);
        assert_eq!(SaturatingMatrix::identity(2).mul(&m), m);
    }

    #[test]
    fn matrix_cap_is_enforced() {
        let l = finite("ab", &["a", "ab", "ba", "bb"]);
        assert_eq!(
            matrix_uf_dfa_capped(l.dfa(), 2).unwrap_err(),
            Error::StateExplosion { cap: 2 }
        );
    }
}

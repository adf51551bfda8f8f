use std::collections::{HashMap, VecDeque};

use super::Automaton;
use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Complete deterministic automaton. States are `0..num_states()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    // row-major: delta[state * k + symbol]
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// `table[q][a]` is the successor of `q` on the `a`-th symbol.
    pub fn new(
        alphabet: Alphabet,
        table: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = table.len();
        let k = alphabet.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if finals.len() != n {
            return Err(Error::InvalidAutomaton("finals length mismatch".into()));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        let mut delta = Vec::with_capacity(n * k);
        for (q, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidAutomaton(format!(
                    "state {q} has {} transitions, expected {k}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition target {bad} out of range"
                )));
            }
            delta.extend_from_slice(row);
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            finals,
        })
    }

    pub(crate) fn from_raw(
        alphabet: Alphabet,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), finals.len() * alphabet.len());
        Dfa {
            alphabet,
            delta,
            initial,
            finals,
        }
    }

    /// The one-state automaton for the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_raw(alphabet, vec![0; k], 0, vec![false])
    }

    /// The one-state automaton for Σ*.
    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_raw(alphabet, vec![0; k], 0, vec![true])
    }

    /// Trie automaton for a finite set of words, completed with a sink.
    pub fn from_words<'a, I>(alphabet: Alphabet, words: I) -> Self
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let k = alphabet.len();
        // state 0 = sink, state 1 = root
        let mut delta = vec![0; 2 * k];
        let mut finals = vec![false, false];
        for w in words {
            let mut q = 1;
            for &s in w.iter() {
                let next = delta[q * k + s.index()];
                q = if next == 0 {
                    let fresh = finals.len();
                    finals.push(false);
                    delta.extend(std::iter::repeat_n(0, k));
                    delta[q * k + s.index()] = fresh;
                    fresh
                } else {
                    next
                };
            }
            finals[q] = true;
        }
        Dfa::from_raw(alphabet, delta, 1, finals)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: usize, a: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + a.index()]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn run_from(&self, q: usize, w: &[Symbol]) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.finals[self.run_from(self.initial, w)]
    }

    pub fn accepts_empty(&self) -> bool {
        self.finals[self.initial]
    }

    /// Swaps final and non-final states.
    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.finals.iter_mut().for_each(|f| *f = !*f);
        d
    }

    /// Removes states unreachable from the initial state.
    pub fn reachable_part(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut index = HashMap::new();
        let mut order = vec![self.initial];
        index.insert(self.initial, 0usize);
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                let t = self.step(q, a);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                    e.insert(order.len());
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for a in self.alphabet.symbols() {
                delta.push(index[&self.step(q, a)]);
            }
        }
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa::from_raw(self.alphabet.clone(), delta, 0, finals)
    }
}

impl Automaton for Dfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn num_states(&self) -> usize {
        self.finals.len()
    }

    fn initial_states(&self) -> Vec<usize> {
        vec![self.initial]
    }

    fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    fn successors(&self, q: usize, a: Symbol) -> &[usize] {
        std::slice::from_ref(&self.delta[q * self.alphabet.len() + a.index()])
    }
}

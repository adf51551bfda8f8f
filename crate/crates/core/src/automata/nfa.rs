use super::Automaton;
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Nondeterministic automaton without ε-moves and with a set of initial
/// states. States may carry diagnostic labels used by DOT export.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    // delta[state * k + symbol], each sorted and deduplicated
    delta: Vec<Vec<usize>>,
    initials: Vec<usize>,
    finals: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, num_states: usize) -> Self {
        let k = alphabet.len();
        Nfa {
            alphabet,
            delta: vec![Vec::new(); num_states * k],
            initials: Vec::new(),
            finals: vec![false; num_states],
            labels: None,
        }
    }

    /// Appends a state and returns its index.
    pub fn add_state(&mut self) -> usize {
        let k = self.alphabet.len();
        self.delta.extend(std::iter::repeat_with(Vec::new).take(k));
        self.finals.push(false);
        if let Some(labels) = &mut self.labels {
            labels.push(String::new());
        }
        self.finals.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, a: Symbol, to: usize) {
        let k = self.alphabet.len();
        let row = &mut self.delta[from * k + a.index()];
        if let Err(pos) = row.binary_search(&to) {
            row.insert(pos, to);
        }
    }

    pub fn add_initial(&mut self, q: usize) {
        if let Err(pos) = self.initials.binary_search(&q) {
            self.initials.insert(pos, q);
        }
    }

    pub fn set_final(&mut self, q: usize, accepting: bool) {
        self.finals[q] = accepting;
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.finals.len());
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, q: usize) -> String {
        match &self.labels {
            Some(l) => l[q].clone(),
            None => q.to_string(),
        }
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    /// Checks that every referenced state is in range.
    pub fn validate(&self) -> Result<()> {
        let n = self.finals.len();
        if self.initials.iter().any(|&q| q >= n) {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        if self.delta.iter().flatten().any(|&q| q >= n) {
            return Err(Error::InvalidAutomaton(
                "transition target out of range".into(),
            ));
        }
        Ok(())
    }

    /// Subset simulation.
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        super::accepts(self, w)
    }
}

impl Automaton for Nfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn num_states(&self) -> usize {
        self.finals.len()
    }

    fn initial_states(&self) -> Vec<usize> {
        self.initials.clone()
    }

    fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    fn successors(&self, q: usize, a: Symbol) -> &[usize] {
        &self.delta[q * self.alphabet.len() + a.index()]
    }
}

//! Finite automata over token alphabets and the usual algebra on them.

mod dfa;
pub mod dot;
mod nfa;
mod ops;
pub mod regex;

pub use dfa::Dfa;
pub use nfa::Nfa;
pub use ops::{
    complement_within, determinize, distances_to_final, distinguishing_word, enumerate_slice,
    enumerate_slice_capped, equivalent, minimize, product, shortest_accepted, star_nfa,
    DEFAULT_SLICE_CAP,
};
pub use regex::compile_regex;

use crate::alphabet::{Alphabet, Symbol};

/// Read-only view shared by [`Dfa`] and [`Nfa`], enough for subset
/// simulation and breadth-first search.
pub trait Automaton {
    fn alphabet(&self) -> &Alphabet;
    fn num_states(&self) -> usize;
    fn initial_states(&self) -> Vec<usize>;
    fn is_final(&self, q: usize) -> bool;
    fn successors(&self, q: usize, a: Symbol) -> &[usize];

    /// Sorted, deduplicated successor set of `set` on `a`.
    fn step_set(&self, set: &[usize], a: Symbol) -> Vec<usize> {
        let mut next: Vec<usize> = set
            .iter()
            .flat_map(|&q| self.successors(q, a).iter().copied())
            .collect();
        next.sort_unstable();
        next.dedup();
        next
    }
}

pub(crate) fn accepts<M: Automaton + ?Sized>(m: &M, w: &[Symbol]) -> bool {
    let mut set = m.initial_states();
    set.sort_unstable();
    set.dedup();
    for &a in w {
        if set.is_empty() {
            return false;
        }
        set = m.step_set(&set, a);
    }
    set.iter().any(|&q| m.is_final(q))
}

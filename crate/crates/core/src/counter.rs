//! Nondeterministic one-counter machines: pushdown automata whose stack
//! holds a single non-negative counter that can be tested for zero.

use std::collections::{HashSet, VecDeque};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CounterTest {
    Zero,
    Nonzero,
    Any,
}

impl CounterTest {
    pub fn admits(self, counter: u32) -> bool {
        match self {
            CounterTest::Zero => counter == 0,
            CounterTest::Nonzero => counter > 0,
            CounterTest::Any => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CounterTransition {
    pub from: usize,
    /// `None` is an ε-move.
    pub input: Option<Symbol>,
    pub test: CounterTest,
    /// One of -1, 0, +1.
    pub delta: i8,
    pub to: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcceptCondition {
    /// Accept in a final state only when the counter is positive.
    CounterNonzero,
    /// Accept in a final state whatever the counter holds.
    CounterAny,
}

/// Which of two tallied runs is ahead when the counter stores the absolute
/// difference of their tallies. At difference zero either side is valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Bottom => "bottom",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OneCounterPda {
    alphabet: Alphabet,
    transitions: Vec<CounterTransition>,
    outgoing: Vec<Vec<usize>>,
    initials: Vec<usize>,
    finals: Vec<bool>,
    accept: AcceptCondition,
    labels: Vec<String>,
}

impl OneCounterPda {
    pub fn new(alphabet: Alphabet, accept: AcceptCondition) -> Self {
        OneCounterPda {
            alphabet,
            transitions: Vec::new(),
            outgoing: Vec::new(),
            initials: Vec::new(),
            finals: Vec::new(),
            accept,
            labels: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> usize {
        self.outgoing.push(Vec::new());
        self.finals.push(false);
        self.labels.push(label.into());
        self.finals.len() - 1
    }

    pub fn add_transition(&mut self, t: CounterTransition) -> Result<()> {
        let n = self.num_states();
        if t.from >= n || t.to >= n {
            return Err(Error::InvalidAutomaton(
                "transition state out of range".into(),
            ));
        }
        if !(-1..=1).contains(&t.delta) {
            return Err(Error::InvalidAutomaton(
                "counter delta must be -1, 0 or +1".into(),
            ));
        }
        if t.delta == -1 && t.test != CounterTest::Nonzero {
            return Err(Error::InvalidAutomaton(
                "decrement requires a nonzero test".into(),
            ));
        }
        self.outgoing[t.from].push(self.transitions.len());
        self.transitions.push(t);
        Ok(())
    }

    pub fn add_initial(&mut self, q: usize) {
        if !self.initials.contains(&q) {
            self.initials.push(q);
        }
    }

    pub fn set_final(&mut self, q: usize, accepting: bool) {
        self.finals[q] = accepting;
    }

    pub fn set_accept_condition(&mut self, accept: AcceptCondition) {
        self.accept = accept;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn transitions(&self) -> &[CounterTransition] {
        &self.transitions
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn accept_condition(&self) -> AcceptCondition {
        self.accept
    }

    pub fn label(&self, q: usize) -> &str {
        &self.labels[q]
    }

    fn accepting(&self, q: usize, counter: u32) -> bool {
        self.finals[q]
            && match self.accept {
                AcceptCondition::CounterNonzero => counter > 0,
                AcceptCondition::CounterAny => true,
            }
    }

    fn apply(&self, t: &CounterTransition, counter: u32, bound: u32) -> Option<u32> {
        if !t.test.admits(counter) {
            return None;
        }
        let next = counter as i64 + t.delta as i64;
        (0..=bound as i64).contains(&next).then_some(next as u32)
    }

    fn epsilon_closure(&self, configs: &mut HashSet<(usize, u32)>, bound: u32) {
        let mut queue: VecDeque<(usize, u32)> = configs.iter().copied().collect();
        while let Some((q, c)) = queue.pop_front() {
            for &ti in &self.outgoing[q] {
                let t = &self.transitions[ti];
                if t.input.is_some() {
                    continue;
                }
                if let Some(c2) = self.apply(t, c, bound) {
                    if configs.insert((t.to, c2)) {
                        queue.push_back((t.to, c2));
                    }
                }
            }
        }
    }

    /// Adds the moves for one step in which the first tally grows by
    /// `first` and the second by `second` (each 0 or 1). `side` is the run
    /// currently ahead; `to` gives the target state for a side.
    pub fn add_difference_step(
        &mut self,
        from: usize,
        input: Option<Symbol>,
        side: Side,
        first: i8,
        second: i8,
        to: impl Fn(Side) -> usize,
    ) -> Result<()> {
        let toward = match side {
            Side::Top => first - second,
            Side::Bottom => second - first,
        };
        let mut add = |test, delta, to| {
            self.add_transition(CounterTransition {
                from,
                input,
                test,
                delta,
                to,
            })
        };
        match toward {
            0 => add(CounterTest::Any, 0, to(side)),
            1 => add(CounterTest::Any, 1, to(side)),
            -1 => {
                add(CounterTest::Nonzero, -1, to(side))?;
                add(CounterTest::Zero, 1, to(side.other()))
            }
            _ => Err(Error::InvalidAutomaton("tally steps must be 0 or 1".into())),
        }
    }

    /// Simulation with the counter confined to `0..=bound`; runs that would
    /// exceed the bound are dropped.
    pub fn accepts_bounded(&self, w: &[Symbol], bound: u32) -> bool {
        let mut configs: HashSet<(usize, u32)> = self.initials.iter().map(|&q| (q, 0)).collect();
        self.epsilon_closure(&mut configs, bound);
        for &a in w {
            let mut next = HashSet::new();
            for &(q, c) in &configs {
                for &ti in &self.outgoing[q] {
                    let t = &self.transitions[ti];
                    if t.input == Some(a) {
                        if let Some(c2) = self.apply(t, c, bound) {
                            next.insert((t.to, c2));
                        }
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            self.epsilon_closure(&mut next, bound);
            configs = next;
        }
        configs.iter().any(|&(q, c)| self.accepting(q, c))
    }

    /// Removes states that are unreachable from an initial state or cannot
    /// reach a final state, ignoring the counter. The language is unchanged.
    pub fn trim(&self) -> OneCounterPda {
        let n = self.num_states();
        let mut forward = vec![false; n];
        let mut stack: Vec<usize> = self.initials.clone();
        stack.iter().for_each(|&q| forward[q] = true);
        while let Some(q) = stack.pop() {
            for &ti in &self.outgoing[q] {
                let to = self.transitions[ti].to;
                if !forward[to] {
                    forward[to] = true;
                    stack.push(to);
                }
            }
        }
        let mut incoming = vec![Vec::new(); n];
        for t in &self.transitions {
            incoming[t.to].push(t.from);
        }
        let mut backward = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&q| self.finals[q]).collect();
        stack.iter().for_each(|&q| backward[q] = true);
        while let Some(q) = stack.pop() {
            for &p in &incoming[q] {
                if !backward[p] {
                    backward[p] = true;
                    stack.push(p);
                }
            }
        }
        let mut out = OneCounterPda::new(self.alphabet.clone(), self.accept);
        let mut map = vec![usize::MAX; n];
        for q in (0..n).filter(|&q| forward[q] && backward[q]) {
            map[q] = out.add_state(self.labels[q].clone());
            out.set_final(map[q], self.finals[q]);
        }
        for t in &self.transitions {
            if map[t.from] != usize::MAX && map[t.to] != usize::MAX {
                out.add_transition(CounterTransition {
                    from: map[t.from],
                    to: map[t.to],
                    ..*t
                })
                .expect("trimmed transition stays valid");
            }
        }
        for &q in &self.initials {
            if map[q] != usize::MAX {
                out.add_initial(map[q]);
            }
        }
        out
    }
}

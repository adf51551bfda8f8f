//! Context-free grammars, the triple construction from one-counter
//! machines, and the emptiness test.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::counter::{AcceptCondition, CounterTest, CounterTransition, OneCounterPda};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CfgSymbol {
    Terminal(Symbol),
    Nonterminal(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<CfgSymbol>,
}

#[derive(Clone, Debug)]
pub struct Cfg {
    alphabet: Alphabet,
    nonterminals: Vec<String>,
    productions: Vec<Production>,
    start: usize,
}

impl Cfg {
    /// A grammar with a single nonterminal `start_name` and no productions.
    pub fn new(alphabet: Alphabet, start_name: impl Into<String>) -> Self {
        Cfg {
            alphabet,
            nonterminals: vec![start_name.into()],
            productions: Vec::new(),
            start: 0,
        }
    }

    pub fn add_nonterminal(&mut self, name: impl Into<String>) -> usize {
        self.nonterminals.push(name.into());
        self.nonterminals.len() - 1
    }

    pub fn add_production(&mut self, lhs: usize, rhs: Vec<CfgSymbol>) -> Result<()> {
        let n = self.nonterminals.len();
        let k = self.alphabet.len();
        let bad = lhs >= n
            || rhs.iter().any(|s| match *s {
                CfgSymbol::Nonterminal(v) => v >= n,
                CfgSymbol::Terminal(t) => t.index() >= k,
            });
        if bad {
            return Err(Error::InvalidAutomaton(
                "production references an undeclared symbol".into(),
            ));
        }
        self.productions.push(Production { lhs, rhs });
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// Nonterminals that derive at least one terminal string.
    pub fn generating(&self) -> Vec<bool> {
        let n = self.nonterminals.len();
        let mut generating = vec![false; n];
        let mut pending: Vec<usize> = Vec::with_capacity(self.productions.len());
        let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut queue = Vec::new();
        for (pi, p) in self.productions.iter().enumerate() {
            let mut count = 0;
            for s in &p.rhs {
                if let CfgSymbol::Nonterminal(v) = *s {
                    occurs[v].push(pi);
                    count += 1;
                }
            }
            pending.push(count);
            if count == 0 && !generating[p.lhs] {
                generating[p.lhs] = true;
                queue.push(p.lhs);
            }
        }
        while let Some(v) = queue.pop() {
            for &pi in &occurs[v] {
                pending[pi] -= 1;
                let lhs = self.productions[pi].lhs;
                if pending[pi] == 0 && !generating[lhs] {
                    generating[lhs] = true;
                    queue.push(lhs);
                }
            }
        }
        generating
    }

    /// True iff the start symbol derives some terminal string.
    pub fn nonempty(&self) -> bool {
        self.generating()[self.start]
    }

    /// Terminal strings of length at most `max_len` derivable from the start
    /// symbol, by fixpoint iteration. Only meant for small grammars.
    pub fn words_up_to(&self, max_len: usize) -> BTreeSet<Word> {
        let n = self.nonterminals.len();
        let mut lang: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); n];
        loop {
            let mut changed = false;
            for p in &self.productions {
                let mut partial: BTreeSet<Word> = BTreeSet::from([Word::empty()]);
                for s in &p.rhs {
                    let mut next = BTreeSet::new();
                    for prefix in &partial {
                        match *s {
                            CfgSymbol::Terminal(t) => {
                                if prefix.len() < max_len {
                                    next.insert(prefix.concat(&[t]));
                                }
                            }
                            CfgSymbol::Nonterminal(v) => {
                                for w in &lang[v] {
                                    if prefix.len() + w.len() <= max_len {
                                        next.insert(prefix.concat(w));
                                    }
                                }
                            }
                        }
                    }
                    partial = next;
                }
                for w in partial {
                    changed |= lang[p.lhs].insert(w);
                }
            }
            if !changed {
                break;
            }
        }
        std::mem::take(&mut lang[self.start])
    }
}

/// One production per nonterminal line: `S -> a T | ε`.
impl fmt::Display for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_lhs: Vec<Vec<&Production>> = vec![Vec::new(); self.nonterminals.len()];
        for p in &self.productions {
            by_lhs[p.lhs].push(p);
        }
        let mut order: Vec<usize> = vec![self.start];
        order.extend((0..self.nonterminals.len()).filter(|&v| v != self.start));
        for v in order {
            if by_lhs[v].is_empty() {
                continue;
            }
            let alts: Vec<String> = by_lhs[v]
                .iter()
                .map(|p| {
                    if p.rhs.is_empty() {
                        "ε".to_string()
                    } else {
                        p.rhs
                            .iter()
                            .map(|s| match *s {
                                CfgSymbol::Terminal(t) => self.alphabet.token(t).to_string(),
                                CfgSymbol::Nonterminal(u) => self.nonterminals[u].clone(),
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    }
                })
                .collect();
            writeln!(f, "{} -> {}", self.nonterminals[v], alts.join(" | "))?;
        }
        Ok(())
    }
}

const BOTTOM: usize = 0;
const UNIT: usize = 1;

/// Grammar generating the language of `machine`.
///
/// The counter is read as a stack `X^c Z` over a bottom marker `Z`. Final
/// state acceptance is first turned into empty-stack acceptance: every
/// accepting final state moves by ε to a drain state that pops all `X`s and
/// then `Z`. Nonterminal `[p,Y,r]` derives the inputs that take the machine
/// from `p` with `Y` on top to `r` with that `Y` popped:
///
/// * a decrement `p -a-> q` gives `[p,X,q] -> a`,
/// * a counter-preserving move gives `[p,Y,r] -> a [q,Y,r]`,
/// * an increment gives `[p,Y,r] -> a [q,X,s] [s,Y,r]`,
/// * the drain gives `[d,Z,d] -> ε`, and `S -> [q0,Z,d]` for each initial `q0`.
///
/// Only triples that can possibly derive something are materialized: `r`
/// must be reachable from `p` in the control graph, `Z` is popped only at the
/// drain, and `X` only by a decrement into `r`.
pub fn pda_to_cfg(machine: &OneCounterPda) -> Cfg {
    let m = machine.trim();
    let n = m.num_states();
    let drain = n;
    let total = n + 1;

    let mut transitions: Vec<CounterTransition> = m.transitions().to_vec();
    let final_test = match m.accept_condition() {
        AcceptCondition::CounterNonzero => CounterTest::Nonzero,
        AcceptCondition::CounterAny => CounterTest::Any,
    };
    for q in (0..n).filter(|&q| m.is_final(q)) {
        transitions.push(CounterTransition {
            from: q,
            input: None,
            test: final_test,
            delta: 0,
            to: drain,
        });
    }
    transitions.push(CounterTransition {
        from: drain,
        input: None,
        test: CounterTest::Nonzero,
        delta: -1,
        to: drain,
    });

    // control-graph reachability (reflexive), as bitsets
    let words = total.div_ceil(64);
    let mut succ = vec![Vec::new(); total];
    for t in &transitions {
        succ[t.from].push(t.to);
    }
    let reach: Vec<Vec<u64>> = (0..total)
        .map(|p| {
            let mut bits = vec![0u64; words];
            let mut stack = vec![p];
            bits[p / 64] |= 1 << (p % 64);
            while let Some(q) = stack.pop() {
                for &r in &succ[q] {
                    if bits[r / 64] & (1 << (r % 64)) == 0 {
                        bits[r / 64] |= 1 << (r % 64);
                        stack.push(r);
                    }
                }
            }
            bits
        })
        .collect();
    let reaches = |p: usize, r: usize| reach[p][r / 64] & (1 << (r % 64)) != 0;
    let mut pop_target = vec![false; total];
    for t in &transitions {
        if t.delta == -1 {
            pop_target[t.to] = true;
        }
    }
    let pop_targets: Vec<usize> = (0..total).filter(|&r| pop_target[r]).collect();
    // candidate right ends of [p,Y,_]
    let ends = |p: usize, y: usize| -> Vec<usize> {
        if y == BOTTOM {
            if reaches(p, drain) {
                vec![drain]
            } else {
                Vec::new()
            }
        } else {
            pop_targets
                .iter()
                .copied()
                .filter(|&r| reaches(p, r))
                .collect()
        }
    };
    let ends_x: Vec<Vec<usize>> = (0..total).map(|p| ends(p, UNIT)).collect();

    let name = |p: usize| {
        if p == drain {
            "drain".to_string()
        } else {
            p.to_string()
        }
    };
    let mut g = Cfg::new(m.alphabet().clone(), "S");
    let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut nt = |g: &mut Cfg, p: usize, y: usize, r: usize| -> usize {
        *ids.entry((p, y, r)).or_insert_with(|| {
            let stack = if y == BOTTOM { "Z" } else { "X" };
            g.add_nonterminal(format!("[{},{stack},{}]", name(p), name(r)))
        })
    };
    let term = |t: &CounterTransition| t.input.map(CfgSymbol::Terminal);
    let tops = |test: CounterTest| -> &'static [usize] {
        match test {
            CounterTest::Zero => &[BOTTOM],
            CounterTest::Nonzero => &[UNIT],
            CounterTest::Any => &[BOTTOM, UNIT],
        }
    };

    let add = |g: &mut Cfg, lhs: usize, rhs: Vec<CfgSymbol>| {
        g.add_production(lhs, rhs).expect("symbols are declared");
    };
    for t in &transitions {
        match t.delta {
            -1 => {
                let lhs = nt(&mut g, t.from, UNIT, t.to);
                add(&mut g, lhs, term(t).into_iter().collect());
            }
            0 => {
                for &y in tops(t.test) {
                    for r in ends(t.from, y) {
                        if !ends(t.to, y).contains(&r) {
                            continue;
                        }
                        let lhs = nt(&mut g, t.from, y, r);
                        let rest = nt(&mut g, t.to, y, r);
                        let mut rhs: Vec<CfgSymbol> = term(t).into_iter().collect();
                        rhs.push(CfgSymbol::Nonterminal(rest));
                        add(&mut g, lhs, rhs);
                    }
                }
            }
            _ => {
                for &y in tops(t.test) {
                    for r in ends(t.from, y) {
                        for &s in &ends_x[t.to] {
                            let tail_ok = if y == BOTTOM {
                                reaches(s, drain)
                            } else {
                                ends_x[s].contains(&r)
                            };
                            if !tail_ok {
                                continue;
                            }
                            let lhs = nt(&mut g, t.from, y, r);
                            let head = nt(&mut g, t.to, UNIT, s);
                            let tail = nt(&mut g, s, y, r);
                            let mut rhs: Vec<CfgSymbol> = term(t).into_iter().collect();
                            rhs.push(CfgSymbol::Nonterminal(head));
                            rhs.push(CfgSymbol::Nonterminal(tail));
                            add(&mut g, lhs, rhs);
                        }
                    }
                }
            }
        }
    }
    let bottom = nt(&mut g, drain, BOTTOM, drain);
    add(&mut g, bottom, Vec::new());
    let start = g.start();
    for &q in m.initials() {
        let first = nt(&mut g, q, BOTTOM, drain);
        add(&mut g, start, vec![CfgSymbol::Nonterminal(first)]);
    }
    g
}

pub fn cfg_nonempty(g: &Cfg) -> bool {
    g.nonempty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::all_words;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn emptiness_basics() {
        let mut g = Cfg::new(ab(), "S");
        g.add_production(
            0,
            vec![CfgSymbol::Terminal(Symbol(0)), CfgSymbol::Nonterminal(0)],
        )
        .unwrap();
        assert!(!g.nonempty());
        g.add_production(0, vec![CfgSymbol::Terminal(Symbol(0))])
            .unwrap();
        assert!(g.nonempty());
        assert!(g.add_production(5, vec![]).is_err());
    }

    #[test]
    fn dump_format() {
        let mut g = Cfg::new(ab(), "S");
        let t = g.add_nonterminal("T");
        g.add_production(
            0,
            vec![CfgSymbol::Terminal(Symbol(0)), CfgSymbol::Nonterminal(t)],
        )
        .unwrap();
        g.add_production(0, vec![]).unwrap();
        g.add_production(t, vec![CfgSymbol::Terminal(Symbol(1))])
            .unwrap();
        assert_eq!(g.to_string(), "S -> a T | ε\nT -> b\n");
    }

    fn step(
        from: usize,
        input: Option<u16>,
        test: CounterTest,
        delta: i8,
        to: usize,
    ) -> CounterTransition {
        CounterTransition {
            from,
            input: input.map(Symbol),
            test,
            delta,
            to,
        }
    }

    /// Reads a^k and accepts iff k is even and positive: the counter flips
    /// between 0 and 1 and acceptance requires it to be 0 at the end via a
    /// zero-tested ε-move.
    fn parity_machine() -> OneCounterPda {
        let mut m = OneCounterPda::new(ab(), AcceptCondition::CounterAny);
        let s = m.add_state("s");
        let t = m.add_state("t");
        let f = m.add_state("f");
        m.add_initial(s);
        m.set_final(f, true);
        m.add_transition(step(s, Some(0), CounterTest::Zero, 1, t))
            .unwrap();
        m.add_transition(step(t, Some(0), CounterTest::Nonzero, -1, s))
            .unwrap();
        m.add_transition(step(s, Some(0), CounterTest::Zero, 1, f))
            .unwrap();
        m.add_transition(step(f, Some(0), CounterTest::Nonzero, -1, s))
            .unwrap();
        m.add_transition(step(t, Some(0), CounterTest::Nonzero, -1, f))
            .unwrap();
        m
    }

    #[test]
    fn grammar_matches_machine_on_small_slice() {
        for (machine, accept) in [
            (parity_machine(), AcceptCondition::CounterAny),
            (parity_machine(), AcceptCondition::CounterNonzero),
        ] {
            let mut machine = machine;
            machine.set_accept_condition(accept);
            let g = pda_to_cfg(&machine);
            let generated = g.words_up_to(6);
            let simulated: BTreeSet<Word> = all_words(&ab(), 6)
                .filter(|w| machine.accepts_bounded(w, 7))
                .collect();
            assert_eq!(generated, simulated);
            assert!(!simulated.is_empty());
        }
    }

    #[test]
    fn empty_machine_gives_empty_grammar() {
        let mut m = OneCounterPda::new(ab(), AcceptCondition::CounterNonzero);
        let s = m.add_state("s");
        m.add_initial(s);
        m.set_final(s, true);
        m.add_transition(step(s, Some(0), CounterTest::Any, 0, s))
            .unwrap();
        // the counter never leaves zero, so nothing is accepted
        assert!(!cfg_nonempty(&pda_to_cfg(&m)));
    }
}

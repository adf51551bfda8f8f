//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Automaton, Dfa, Nfa};
use crate::counter::{CounterTest, OneCounterPda};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render<M: Automaton>(m: &M, name: &str, label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    for q in 0..m.num_states() {
        let shape = if m.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  s{q} [label=\"{}\", shape={shape}];",
            escape(&label(q))
        );
    }
    for (i, q) in m.initial_states().into_iter().enumerate() {
        let _ = writeln!(out, "  init{i} [shape=point];");
        let _ = writeln!(out, "  init{i} -> s{q};");
    }
    for q in 0..m.num_states() {
        // merge parallel edges into one comma-separated label
        let mut edges: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for a in m.alphabet().symbols() {
            for &t in m.successors(q, a) {
                edges.entry(t).or_default().push(m.alphabet().token(a));
            }
        }
        for (t, labels) in edges {
            let _ = writeln!(
                out,
                "  s{q} -> s{t} [label=\"{}\"];",
                escape(&labels.join(","))
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn nfa_to_dot(nfa: &Nfa, name: &str) -> String {
    render(nfa, name, |q| nfa.label(q))
}

pub fn dfa_to_dot(dfa: &Dfa, name: &str) -> String {
    render(dfa, name, |q| q.to_string())
}

/// Control graph of a one-counter machine. Edge labels read
/// `input, test, delta`, with `=0`, `≠0` or `*` for the test.
pub fn pda_to_dot(pda: &OneCounterPda, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    let _ = writeln!(out, "  rankdir=LR;");
    for q in 0..pda.num_states() {
        let shape = if pda.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  s{q} [label=\"{}\", shape={shape}];",
            escape(pda.label(q))
        );
    }
    for (i, q) in pda.initials().iter().enumerate() {
        let _ = writeln!(out, "  init{i} [shape=point];");
        let _ = writeln!(out, "  init{i} -> s{q};");
    }
    for t in pda.transitions() {
        let input = t.input.map_or("ε", |a| pda.alphabet().token(a));
        let test = match t.test {
            CounterTest::Zero => "=0",
            CounterTest::Nonzero => "≠0",
            CounterTest::Any => "*",
        };
        let _ = writeln!(
            out,
            "  s{} -> s{} [label=\"{}, {test}, {:+}\"];",
            t.from,
            t.to,
            escape(input),
            t.delta
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::{compile_regex, determinize, minimize};

    #[test]
    fn dot_lists_states_and_merged_edges() {
        let al = Alphabet::from_chars("ab").unwrap();
        let dfa = minimize(&determinize(&compile_regex("(a|b)b", &al).unwrap()));
        let dot = dfa_to_dot(&dfa, "demo");
        assert!(dot.starts_with("digraph \"demo\" {"));
        assert!(dot.contains("label=\"a,b\""));
        assert!(dot.contains("doublecircle"));
        assert!(dot.trim_end().ends_with('}'));
    }
}

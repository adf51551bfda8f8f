use std::collections::{HashMap, VecDeque};

use super::{Automaton, Dfa, Nfa};
use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};

/// Default bound on the number of words returned by [`enumerate_slice`].
pub const DEFAULT_SLICE_CAP: usize = 1_000_000;

/// Subset construction. The result is complete: the empty subset, when
/// reachable, becomes the sink.
pub fn determinize<M: Automaton + ?Sized>(m: &M) -> Dfa {
    let alphabet = m.alphabet().clone();
    let k = alphabet.len();
    let mut start = m.initial_states();
    start.sort_unstable();
    start.dedup();

    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut sets = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        for a in alphabet.symbols() {
            let next = m.step_set(&sets[i], a);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    index.insert(next.clone(), id);
                    sets.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    debug_assert_eq!(delta.len(), sets.len() * k);
    let finals = sets
        .iter()
        .map(|s| s.iter().any(|&q| m.is_final(q)))
        .collect();
    Dfa::from_raw(alphabet, delta, 0, finals)
}

/// Moore partition refinement on the reachable part. States of the result
/// are numbered in breadth-first order from the initial state.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let d = dfa.reachable_part();
    let n = d.num_states();
    let k = d.alphabet().len();
    let mut class: Vec<usize> = d.finals().iter().map(|&f| usize::from(f)).collect();
    let mut count = if d.finals().iter().all(|&f| f) || d.finals().iter().all(|&f| !f) {
        // single block; normalize ids to 0
        class.iter_mut().for_each(|c| *c = 0);
        1
    } else {
        2
    };
    loop {
        let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend(d.alphabet().symbols().map(|a| class[d.step(q, a)]));
            let fresh = sig_ids.len();
            next[q] = *sig_ids.entry(sig).or_insert(fresh);
        }
        let new_count = sig_ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut delta = vec![0; count * k];
    let mut finals = vec![false; count];
    for q in 0..n {
        for a in d.alphabet().symbols() {
            delta[class[q] * k + a.index()] = class[d.step(q, a)];
        }
        finals[class[q]] = d.is_final(q);
    }
    Dfa::from_raw(d.alphabet().clone(), delta, class[d.initial()], finals).reachable_part()
}

/// Synchronous product accepting `{w : combine(a accepts w, b accepts w)}`.
pub fn product<F>(a: &Dfa, b: &Dfa, combine: F) -> Result<Dfa>
where
    F: Fn(bool, bool) -> bool,
{
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let alphabet = a.alphabet().clone();
    let start = (a.initial(), b.initial());
    let mut index = HashMap::from([(start, 0usize)]);
    let mut pairs = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for s in alphabet.symbols() {
            let next = (a.step(p, s), b.step(q, s));
            let id = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            delta.push(id);
        }
        i += 1;
    }
    let finals = pairs
        .iter()
        .map(|&(p, q)| combine(a.is_final(p), b.is_final(q)))
        .collect();
    Ok(Dfa::from_raw(alphabet, delta, 0, finals))
}

/// Accepts the words of `universe` that `a` rejects.
pub fn complement_within(a: &Dfa, universe: &Dfa) -> Result<Dfa> {
    product(a, universe, |in_a, in_u| in_u && !in_a)
}

/// Predecessor pair and the letter leading out of it.
type Parent = Option<((usize, usize), Symbol)>;

/// Shortest-then-least word on which `a` and `b` disagree, or `None` when
/// they accept the same language.
pub fn distinguishing_word(a: &Dfa, b: &Dfa) -> Result<Option<Word>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let start = (a.initial(), b.initial());
    let mut parent: HashMap<(usize, usize), Parent> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        if a.is_final(p) != b.is_final(q) {
            let mut w = Vec::new();
            let mut cur = pair;
            while let Some((prev, s)) = parent[&cur] {
                w.push(s);
                cur = prev;
            }
            w.reverse();
            return Ok(Some(Word(w)));
        }
        for s in a.alphabet().symbols() {
            let next = (a.step(p, s), b.step(q, s));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((pair, s)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool> {
    distinguishing_word(a, b).map(|w| w.is_none())
}

/// NFA for `L(dfa)*` without ε-moves.
///
/// State 0 is a fresh initial state that is also the only final state; state
/// `q + 1` mirrors state `q` of `dfa`. Reading a letter that lands on a final
/// state of `dfa` may additionally return to state 0, which ends a factor.
/// Since nothing but factor ends enters state 0, accepting paths are in
/// bijection with factorizations into `L(dfa)`-words.
pub fn star_nfa(dfa: &Dfa) -> Result<Nfa> {
    if dfa.accepts_empty() {
        return Err(Error::EpsilonInLanguage);
    }
    let n = dfa.num_states();
    let mut nfa = Nfa::new(dfa.alphabet().clone(), n + 1);
    let sources = std::iter::once((0, dfa.initial())).chain((0..n).map(|q| (q + 1, q)));
    for (from, q) in sources {
        for a in dfa.alphabet().symbols() {
            let r = dfa.step(q, a);
            nfa.add_transition(from, a, r + 1);
            if dfa.is_final(r) {
                nfa.add_transition(from, a, 0);
            }
        }
    }
    nfa.add_initial(0);
    nfa.set_final(0, true);
    let mut labels = vec!["start".to_string()];
    labels.extend((0..n).map(|q| q.to_string()));
    nfa.set_labels(labels);
    Ok(nfa)
}

/// Length of the shortest path from each state to a final state.
pub fn distances_to_final<M: Automaton + ?Sized>(m: &M) -> Vec<Option<usize>> {
    let n = m.num_states();
    let mut reverse = vec![Vec::new(); n];
    for q in 0..n {
        for a in m.alphabet().symbols() {
            for &t in m.successors(q, a) {
                reverse[t].push(q);
            }
        }
    }
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for (q, d) in dist.iter_mut().enumerate() {
        if m.is_final(q) {
            *d = Some(0);
            queue.push_back(q);
        }
    }
    while let Some(q) = queue.pop_front() {
        let d = dist[q].unwrap() + 1;
        for &p in &reverse[q] {
            if dist[p].is_none() {
                dist[p] = Some(d);
                queue.push_back(p);
            }
        }
    }
    dist
}

/// Shortest accepted word, least in alphabet order among the shortest.
pub fn shortest_accepted<M: Automaton + ?Sized>(m: &M) -> Option<Word> {
    let dist = distances_to_final(m);
    let mut current = m.initial_states();
    current.sort_unstable();
    current.dedup();
    let best = current.iter().filter_map(|&q| dist[q]).min()?;
    let mut word = Vec::with_capacity(best);
    for remaining in (1..=best).rev() {
        let (a, next) = m
            .alphabet()
            .symbols()
            .map(|a| (a, m.step_set(&current, a)))
            .find(|(_, next)| next.iter().any(|&t| dist[t] == Some(remaining - 1)))
            .expect("distance labels guarantee a continuation");
        word.push(a);
        current = next;
    }
    Some(Word(word))
}

/// All accepted words of length at most `max_len`, in length-then-lex order.
pub fn enumerate_slice<M: Automaton + ?Sized>(m: &M, max_len: usize) -> Result<Vec<Word>> {
    enumerate_slice_capped(m, max_len, DEFAULT_SLICE_CAP)
}

pub fn enumerate_slice_capped<M: Automaton + ?Sized>(
    m: &M,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Word>> {
    let dist = distances_to_final(m);
    let live = |set: &[usize], budget: usize| {
        set.iter()
            .any(|&q| matches!(dist[q], Some(d) if d <= budget))
    };
    let mut start = m.initial_states();
    start.sort_unstable();
    start.dedup();
    let mut out = Vec::new();
    if !live(&start, max_len) {
        return Ok(out);
    }
    let mut layer: Vec<(Vec<Symbol>, Vec<usize>)> = vec![(Vec::new(), start)];
    for len in 0..=max_len {
        for (w, set) in &layer {
            if set.iter().any(|&q| m.is_final(q)) {
                if out.len() == cap {
                    return Err(Error::Overflow { cap });
                }
                out.push(Word(w.clone()));
            }
        }
        if len == max_len {
            break;
        }
        let budget = max_len - len - 1;
        let mut next_layer = Vec::new();
        for (w, set) in &layer {
            for a in m.alphabet().symbols() {
                let next = m.step_set(set, a);
                if live(&next, budget) {
                    let mut nw = w.clone();
                    nw.push(a);
                    next_layer.push((nw, next));
                }
            }
        }
        layer = next_layer;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::compile_regex;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn dfa(pattern: &str) -> Dfa {
        minimize(&determinize(&compile_regex(pattern, &ab()).unwrap()))
    }

    fn words(al: &Alphabet, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| al.render(w)).collect()
    }

    #[test]
    fn empty_language_minimizes_to_one_state() {
        let d = Dfa::from_words(ab(), []);
        let m = minimize(&d);
        assert_eq!(m.num_states(), 1);
        assert!(!m.is_final(0));
        assert_eq!(shortest_accepted(&m), None);
        assert!(enumerate_slice(&m, 10).unwrap().is_empty());
    }

    #[test]
    fn slice_of_ab_star_a_star() {
        let d = dfa("(ab)*a*");
        let s = enumerate_slice(&d, 3).unwrap();
        assert_eq!(words(&ab(), &s), ["ε", "a", "aa", "ab", "aaa", "aba"]);
    }

    #[test]
    fn shortest_of_a_star_b() {
        let d = dfa("a*b");
        assert_eq!(ab().render(&shortest_accepted(&d).unwrap()), "b");
    }

    #[test]
    fn xor_with_itself_is_empty() {
        let d = dfa("(ab|b)*a");
        let x = product(&d, &d, |p, q| p ^ q).unwrap();
        assert_eq!(shortest_accepted(&x), None);
        let disjoint = product(&dfa("a*"), &dfa("ba*b"), |p, q| p && q).unwrap();
        assert_eq!(shortest_accepted(&disjoint), None);
    }

    #[test]
    fn relative_complement_edges() {
        let u = dfa("(a|b)*b");
        let empty = Dfa::empty(ab());
        assert!(equivalent(&complement_within(&empty, &u).unwrap(), &u).unwrap());
        let none = complement_within(&u, &u).unwrap();
        assert!(equivalent(&none, &empty).unwrap());
    }

    #[test]
    fn counterexample_is_shortest() {
        let w = distinguishing_word(&dfa("a"), &dfa("aa")).unwrap().unwrap();
        assert_eq!(ab().render(&w), "a");
        let d = dfa("(a|b)*abb");
        assert_eq!(distinguishing_word(&minimize(&d), &d).unwrap(), None);
    }

    #[test]
    fn mismatched_alphabets() {
        let other = Dfa::empty(Alphabet::from_chars("xy").unwrap());
        assert_eq!(
            product(&dfa("a"), &other, |p, _| p).unwrap_err(),
            Error::AlphabetMismatch
        );
        assert!(equivalent(&dfa("a"), &other).is_err());
    }

    #[test]
    fn star_nfa_rejects_epsilon() {
        assert_eq!(star_nfa(&dfa("a*")).unwrap_err(), Error::EpsilonInLanguage);
    }

    #[test]
    fn star_of_single_word() {
        let star = star_nfa(&dfa("ab")).unwrap();
        let expect = dfa("(ab)*");
        assert!(equivalent(&minimize(&determinize(&star)), &expect).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let d = dfa("(a|b)*");
        assert_eq!(
            enumerate_slice_capped(&d, 4, 10).unwrap_err(),
            Error::Overflow { cap: 10 }
        );
    }
}

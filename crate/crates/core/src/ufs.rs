//! Subset-invariant factorization for finite languages: all factorizations
//! use the same set of factors.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automata::{complement_within, determinize, minimize, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::families;
use crate::language::Language;
use crate::oracle::{factorizations, holds, slice_by_predicate, MembershipOracle, Predicate};
use crate::uf::lstar_dfa;
use crate::ufp::{exponent_grid, IntersectionReport, IntersectionRow};

/// `[w₁, s₁, v₁, w₂, s₂, v₂]`: for each of two factorizations, the factor in
/// progress (`s` is its unread suffix, i.e. `word[read..]`) and the set of
/// factors used so far as a bit vector over the words of `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UfsState {
    pub word1: usize,
    pub read1: usize,
    pub used1: u64,
    pub word2: usize,
    pub read2: usize,
    pub used2: u64,
}

/// The reachable part of the construction with its ε-moves composed into
/// the letter moves.
#[derive(Clone, Debug)]
pub struct UfsConstruction {
    pub nfa: Nfa,
    pub states: Vec<UfsState>,
}

fn vector(bits: u64, width: usize) -> String {
    (0..width)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

struct Moves<'a> {
    words: &'a [Word],
}

impl<'a> Moves<'a> {
    fn new(l: &'a Language) -> Result<Self> {
        let words = l.finite_words()?;
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::EpsilonInLanguage);
        }
        if words.len() > 64 {
            return Err(Error::TooManyWords(words.len()));
        }
        Ok(Moves { words })
    }

    fn initials(&self) -> impl Iterator<Item = UfsState> + '_ {
        let n = self.words.len();
        (0..n).flat_map(move |w| {
            (0..n).map(move |x| UfsState {
                word1: w,
                read1: 0,
                used1: 1 << w,
                word2: x,
                read2: 0,
                used2: 1 << x,
            })
        })
    }

    fn run(&self, word: usize, read: usize, used: u64, a: Symbol) -> Vec<(usize, usize, u64)> {
        let words = self.words;
        if read < words[word].len() {
            if words[word][read] == a {
                vec![(word, read + 1, used)]
            } else {
                Vec::new()
            }
        } else {
            (0..words.len())
                .filter(|&v| words[v][0] == a)
                .map(|v| (v, 1, used | 1 << v))
                .collect()
        }
    }

    fn successors(&self, s: &UfsState, a: Symbol) -> Vec<UfsState> {
        let mut out = Vec::new();
        for (word1, read1, used1) in self.run(s.word1, s.read1, s.used1, a) {
            for (word2, read2, used2) in self.run(s.word2, s.read2, s.used2, a) {
                out.push(UfsState {
                    word1,
                    read1,
                    used1,
                    word2,
                    read2,
                    used2,
                });
            }
        }
        out
    }

    fn is_final(&self, s: &UfsState) -> bool {
        s.read1 == self.words[s.word1].len()
            && s.read2 == self.words[s.word2].len()
            && s.used1 != s.used2
    }
}

impl UfsState {
    /// The state with the two runs exchanged; it accepts the same words.
    fn swapped(&self) -> UfsState {
        UfsState {
            word1: self.word2,
            read1: self.read2,
            used1: self.used2,
            word2: self.word1,
            read2: self.read1,
            used2: self.used1,
        }
    }

    fn canonical(self) -> UfsState {
        self.min(self.swapped())
    }
}

/// NFA accepting `L* − ufs(L)` for finite `L` with at most 64 words.
///
/// Initial states are `[w, w, C(w), x, x, C(x)]`; a letter consumes the next
/// letter of both pending suffixes. A run whose suffix is empty may first
/// reload a factor `w` and OR `C(w)` into its vector. Finals are the states
/// with both suffixes empty and different vectors.
pub fn ufs_construction(l: &Language) -> Result<UfsConstruction> {
    let moves = Moves::new(l)?;
    let words = moves.words;
    let alphabet = l.alphabet();
    let mut states: Vec<UfsState> = Vec::new();
    let mut ids: HashMap<UfsState, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut edges: Vec<(usize, Symbol, usize)> = Vec::new();
    let mut intern = |states: &mut Vec<UfsState>, queue: &mut VecDeque<usize>, s: UfsState| {
        *ids.entry(s).or_insert_with(|| {
            states.push(s);
            queue.push_back(states.len() - 1);
            states.len() - 1
        })
    };
    let initials: Vec<usize> = moves
        .initials()
        .map(|s| intern(&mut states, &mut queue, s))
        .collect();
    while let Some(i) = queue.pop_front() {
        let s = states[i];
        for a in alphabet.symbols() {
            for next in moves.successors(&s, a) {
                let j = intern(&mut states, &mut queue, next);
                edges.push((i, a, j));
            }
        }
    }
    let mut nfa = Nfa::new(alphabet.clone(), states.len());
    for (i, a, j) in edges {
        nfa.add_transition(i, a, j);
    }
    for q in initials {
        nfa.add_initial(q);
    }
    let width = words.len();
    let mut labels = Vec::with_capacity(states.len());
    for (q, s) in states.iter().enumerate() {
        let w1 = &words[s.word1];
        let w2 = &words[s.word2];
        nfa.set_final(q, moves.is_final(s));
        labels.push(format!(
            "({}|{}|{}‖{}|{}|{})",
            alphabet.render(w1),
            alphabet.render(&w1[s.read1..]),
            vector(s.used1, width),
            alphabet.render(w2),
            alphabet.render(&w2[s.read2..]),
            vector(s.used2, width),
        ));
    }
    nfa.set_labels(labels);
    Ok(UfsConstruction { nfa, states })
}

pub fn build_ufs_nfa(l: &Language) -> Result<Nfa> {
    Ok(ufs_construction(l)?.nfa)
}

/// Minimal DFA for `ufs(L) = L* − L(build_ufs_nfa(L))`.
pub fn ufs_dfa(l: &Language) -> Result<Dfa> {
    let violations = determinize(&build_ufs_nfa(l)?);
    let star = lstar_dfa(l.dfa())?;
    Ok(minimize(&complement_within(&violations, &star)?))
}

#[derive(Clone, Debug)]
pub struct UfsViolation {
    pub word: Option<Word>,
    /// `2m²n²` for `n` words of maximum length `m`.
    pub bound: usize,
}

impl UfsViolation {
    pub fn within_bound(&self) -> bool {
        self.word.as_ref().is_none_or(|w| w.len() <= self.bound)
    }
}

/// Shortest-then-least word of `L* − ufs(L)`, with the length bound.
///
/// Explores the construction breadth first, identifying each state with its
/// run-swapped twin, and stops after the first layer that holds a final
/// state.
pub fn shortest_ufs_violation(l: &Language) -> Result<UfsViolation> {
    let moves = Moves::new(l)?;
    let words = moves.words;
    let n = words.len();
    let m = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let bound = 2 * m * m * n * n;
    let alphabet = l.alphabet();

    let mut states: Vec<UfsState> = Vec::new();
    let mut ids: HashMap<UfsState, usize> = HashMap::new();
    let mut intern = |states: &mut Vec<UfsState>, s: UfsState| -> (usize, bool) {
        let s = s.canonical();
        let next = states.len();
        let id = *ids.entry(s).or_insert(next);
        if id == next {
            states.push(s);
        }
        (id, id == next)
    };
    let mut layer: Vec<usize> = Vec::new();
    for s in moves.initials() {
        let (id, fresh) = intern(&mut states, s);
        if fresh {
            layer.push(id);
        }
    }
    let initials = layer.clone();
    // letter-labelled predecessor lists of every explored state
    let mut preds: Vec<Vec<(Symbol, usize)>> = vec![Vec::new(); states.len()];
    let mut depth = 0;
    let mut finals: Vec<usize> = layer
        .iter()
        .copied()
        .filter(|&q| moves.is_final(&states[q]))
        .collect();
    while finals.is_empty() && !layer.is_empty() {
        let mut next_layer = Vec::new();
        for &i in &layer {
            let s = states[i];
            for a in alphabet.symbols() {
                for t in moves.successors(&s, a) {
                    let (j, fresh) = intern(&mut states, t);
                    if fresh {
                        preds.push(Vec::new());
                        next_layer.push(j);
                    }
                    preds[j].push((a, i));
                }
            }
        }
        depth += 1;
        layer = next_layer;
        finals = layer
            .iter()
            .copied()
            .filter(|&q| moves.is_final(&states[q]))
            .collect();
    }
    if finals.is_empty() {
        return Ok(UfsViolation { word: None, bound });
    }
    // distance to a depth-`depth` final over the explored edges
    let mut dist: Vec<Option<usize>> = vec![None; states.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &f in &finals {
        dist[f] = Some(0);
        queue.push_back(f);
    }
    while let Some(j) = queue.pop_front() {
        let d = dist[j].expect("queued states have a distance");
        for &(_, i) in &preds[j] {
            if dist[i].is_none() {
                dist[i] = Some(d + 1);
                queue.push_back(i);
            }
        }
    }
    let mut succs: HashMap<usize, Vec<(Symbol, usize)>> = HashMap::new();
    for (j, ps) in preds.iter().enumerate() {
        for &(a, i) in ps {
            succs.entry(i).or_default().push((a, j));
        }
    }
    let mut current: Vec<usize> = initials
        .into_iter()
        .filter(|&q| dist[q] == Some(depth))
        .collect();
    let mut word = Vec::with_capacity(depth);
    for remaining in (0..depth).rev() {
        let (a, next) = alphabet
            .symbols()
            .find_map(|a| {
                let mut next: Vec<usize> = current
                    .iter()
                    .flat_map(|q| succs.get(q).into_iter().flatten())
                    .filter(|&&(b, t)| b == a && dist[t] == Some(remaining))
                    .map(|&(_, t)| t)
                    .collect();
                next.sort_unstable();
                next.dedup();
                (!next.is_empty()).then_some((a, next))
            })
            .expect("a path of the right length exists");
        word.push(a);
        current = next;
    }
    Ok(UfsViolation {
        word: Some(Word(word)),
        bound,
    })
}

/// `{x ∈ L* : |x| ≤ max_len, x ∈ ufs(L)}`.
pub fn ufs_slice(l: &MembershipOracle, max_len: usize) -> Result<Vec<Word>> {
    slice_by_predicate(l, Predicate::Ufs, max_len)
}

fn concat(parts: &[(&Word, usize)]) -> Word {
    let mut out = Vec::new();
    for &(w, k) in parts {
        for _ in 0..k {
            out.extend_from_slice(w);
        }
    }
    Word(out)
}

/// Checks `ufs(L) ∩ R` for `L = (ab)+(ac)+aa | (ba)+(ca)+ | aa | aaa` on
/// every word `aa(ab)^r(ac)^s aa(ba)^t(ca)^q aaa` with exponents up to
/// `r_max`: membership must hold iff `r = t` and `s = q`, and both
/// factorizations `aa·(ab)^r(ac)^s aa·(ba)^t(ca)^q·aaa` and
/// `aaa·(ba)^r(ca)^s·(ab)^t(ac)^q aa·aa` must occur. `L` is infinite, so only
/// the oracle (with DFA factor tests) decides membership.
pub fn ufs_regular_witness_check(r_max: usize) -> Result<IntersectionReport> {
    assert!(r_max <= 3, "desk-scale check is limited to exponent 3");
    let lang = families::ufs_regular_language().language.load()?;
    let oracle = lang.oracle();
    let al: Alphabet = lang.alphabet().clone();
    let f = |s: &str| al.parse_word(s).expect("witness factor");
    let (aa, aaa, ab, ac, ba, ca) = (f("aa"), f("aaa"), f("ab"), f("ac"), f("ba"), f("ca"));
    let mut rows = Vec::new();
    for [r, s, t, q] in exponent_grid(r_max) {
        let word = families::bell_word(&al, r, s, t, q);
        let shape1 = vec![
            aa.clone(),
            concat(&[(&ab, r), (&ac, s), (&aa, 1)]),
            concat(&[(&ba, t), (&ca, q)]),
            aaa.clone(),
        ];
        let shape2 = vec![
            aaa.clone(),
            concat(&[(&ba, r), (&ca, s)]),
            concat(&[(&ab, t), (&ac, q), (&aa, 1)]),
            aa.clone(),
        ];
        let found = factorizations(&word, &oracle, 64)?;
        let has = |shape: &Vec<Word>| found.iter().any(|f| f.factors() == shape.as_slice());
        rows.push(IntersectionRow {
            r,
            s,
            t,
            q,
            word: al.render(&word),
            expected_member: r == t && s == q,
            oracle_member: holds(Predicate::Ufs, &word, &oracle)?,
            construction_member: None,
            factorizations: found.len(),
            shapes_found: has(&shape1) && has(&shape2),
        });
    }
    Ok(IntersectionReport { r_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::enumerate_slice;
    use crate::oracle::is_ufs;

    fn finite(chars: &str, words: &[&str]) -> Language {
        let al = Alphabet::from_chars(chars).unwrap();
        let ws = words.iter().map(|w| al.parse_word(w).unwrap()).collect();
        Language::from_words(al, ws)
    }

    #[test]
    fn nfa_matches_oracle() {
        for words in [
            &["a", "aa"][..],
            &["a", "ba"],
            &["a", "ab", "aab"],
            &["ab", "b", "ba", "a"],
        ] {
            let l = finite("ab", words);
            let oracle = l.oracle();
            let from_nfa = enumerate_slice(&build_ufs_nfa(&l).unwrap(), 8).unwrap();
            let from_oracle: Vec<Word> = crate::oracle::lstar_slice(&oracle, 8, 1 << 20)
                .unwrap()
                .into_iter()
                .filter(|x| !is_ufs(x, &oracle).unwrap())
                .collect();
            assert_eq!(from_nfa, from_oracle, "{words:?}");
        }
    }

    #[test]
    fn shortest_violations() {
        let v = shortest_ufs_violation(&finite("ab", &["a", "aa"])).unwrap();
        assert_eq!(v.word.unwrap().len(), 2);
        assert_eq!(v.bound, 2 * 4 * 4);
        assert!(shortest_ufs_violation(&finite("ab", &["a", "ba"]))
            .unwrap()
            .word
            .is_none());
    }

    #[test]
    fn early_exit_search_matches_full_construction() {
        for words in [
            &["a", "aa"][..],
            &["a", "ab", "aab"],
            &["ab", "b", "ba", "a"],
            &["ab", "ba", "aba"],
        ] {
            let l = finite("ab", words);
            let full = crate::automata::shortest_accepted(&build_ufs_nfa(&l).unwrap());
            assert_eq!(shortest_ufs_violation(&l).unwrap().word, full, "{words:?}");
        }
    }

    #[test]
    fn dfa_of_small_language() {
        let l = finite("a", &["a", "aa"]);
        let d = ufs_dfa(&l).unwrap();
        assert!(d.accepts(&[crate::Symbol(0)]));
        assert!(!d.accepts(&[crate::Symbol(0); 2]));
    }

    #[test]
    fn vectors_only_grow() {
        let l = finite("ab", &["a", "ab", "ba", "b"]);
        let c = ufs_construction(&l).unwrap();
        for p in 0..c.states.len() {
            for a in l.alphabet().symbols() {
                for &q in crate::Automaton::successors(&c.nfa, p, a) {
                    let (s, t) = (c.states[p], c.states[q]);
                    assert_eq!(s.used1 & !t.used1, 0);
                    assert_eq!(s.used2 & !t.used2, 0);
                }
            }
        }
    }

    #[test]
    fn regular_witness_grid_of_one() {
        let report = ufs_regular_witness_check(1).unwrap();
        assert!(report.all_ok(), "{:?}", report.failures());
    }
}

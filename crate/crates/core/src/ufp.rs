//! Permutationally unique factorization for finite languages: all
//! factorizations share one multiset of factors.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::counter::{AcceptCondition, CounterTest, CounterTransition, OneCounterPda, Side};
use crate::error::{Error, Result};
use crate::families;
use crate::language::Language;
use crate::oracle::{factorizations, holds, slice_by_predicate, MembershipOracle, Predicate};

/// Where one guessed factorization stands: between factors, or `k` letters
/// into the factor `words[w]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pending {
    Boundary,
    Inside { word: usize, read: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuffixTrackState {
    pub first: Pending,
    pub second: Pending,
    /// Index of the factor whose occurrences are compared.
    pub target: usize,
    pub side: Side,
}

fn pending_label(alphabet: &Alphabet, words: &[Word], p: Pending) -> String {
    match p {
        Pending::Boundary => "·".to_string(),
        Pending::Inside { word, read } => {
            let w = &words[word];
            format!(
                "{}.{}",
                alphabet.render(&w[..read]),
                alphabet.render(&w[read..])
            )
        }
    }
}

/// Successors of `p` on letter `a`, each with 1 if the step completes an
/// occurrence of `words[target]`.
fn advance(words: &[Word], p: Pending, a: crate::Symbol, target: usize) -> Vec<(Pending, i8)> {
    let finish = |word: usize, read: usize| {
        if read == words[word].len() {
            (Pending::Boundary, i8::from(word == target))
        } else {
            (Pending::Inside { word, read }, 0)
        }
    };
    match p {
        Pending::Boundary => (0..words.len())
            .filter(|&w| words[w][0] == a)
            .map(|w| finish(w, 1))
            .collect(),
        Pending::Inside { word, read } => {
            if words[word][read] == a {
                vec![finish(word, read + 1)]
            } else {
                Vec::new()
            }
        }
    }
}

/// One-counter machine accepting `L* − ufp(L)` for finite `L`.
///
/// A run first guesses a factor `t ∈ L`, then reads two factorizations in
/// parallel, each tracked by the factor in progress and how much of it has
/// been read. The counter holds the absolute difference of the numbers of
/// completed `t` factors. When both factorizations sit at a factor boundary
/// an ε-move that requires a nonzero counter leads to the accepting state.
pub fn build_ufp_counter_machine(l: &Language) -> Result<OneCounterPda> {
    let words = l.finite_words()?;
    if words.iter().any(|w| w.is_empty()) {
        return Err(Error::EpsilonInLanguage);
    }
    let alphabet = l.alphabet();
    let mut pda = OneCounterPda::new(alphabet.clone(), AcceptCondition::CounterAny);
    let acc = pda.add_state("acc");
    pda.set_final(acc, true);

    let mut ids: HashMap<SuffixTrackState, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |pda: &mut OneCounterPda, queue: &mut VecDeque<_>, s: SuffixTrackState| {
        *ids.entry(s).or_insert_with(|| {
            let label = format!(
                "({},{},{},{})",
                pending_label(alphabet, words, s.first),
                pending_label(alphabet, words, s.second),
                alphabet.render(&words[s.target]),
                s.side.name()
            );
            queue.push_back(s);
            pda.add_state(label)
        })
    };
    for target in 0..words.len() {
        let start = SuffixTrackState {
            first: Pending::Boundary,
            second: Pending::Boundary,
            target,
            side: Side::Top,
        };
        let id = intern(&mut pda, &mut queue, start);
        pda.add_initial(id);
    }
    while let Some(s) = queue.pop_front() {
        let from = intern(&mut pda, &mut queue, s);
        if s.first == Pending::Boundary && s.second == Pending::Boundary {
            pda.add_transition(CounterTransition {
                from,
                input: None,
                test: CounterTest::Nonzero,
                delta: 0,
                to: acc,
            })?;
        }
        for a in alphabet.symbols() {
            let moves1 = advance(words, s.first, a, s.target);
            let moves2 = advance(words, s.second, a, s.target);
            for &(p1, c1) in &moves1 {
                for &(p2, c2) in &moves2 {
                    let mut targets = [0usize; 2];
                    for side in [Side::Top, Side::Bottom] {
                        let next = SuffixTrackState {
                            first: p1,
                            second: p2,
                            target: s.target,
                            side,
                        };
                        targets[usize::from(side == Side::Bottom)] =
                            intern(&mut pda, &mut queue, next);
                    }
                    pda.add_difference_step(from, Some(a), s.side, c1, c2, |side| {
                        targets[usize::from(side == Side::Bottom)]
                    })?;
                }
            }
        }
    }
    Ok(pda)
}

/// `{x ∈ L* : |x| ≤ max_len, x ∈ ufp(L)}`.
pub fn ufp_slice(l: &MembershipOracle, max_len: usize) -> Result<Vec<Word>> {
    slice_by_predicate(l, Predicate::Ufp, max_len)
}

/// One word `aa(ab)^r(ac)^s aa(ba)^t(ca)^q aaa` of an intersection check.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionRow {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub q: usize,
    pub word: String,
    pub expected_member: bool,
    pub oracle_member: bool,
    /// Membership according to the construction, where one applies.
    pub construction_member: Option<bool>,
    pub factorizations: usize,
    pub shapes_found: bool,
}

impl IntersectionRow {
    pub fn ok(&self) -> bool {
        self.oracle_member == self.expected_member
            && self
                .construction_member
                .is_none_or(|m| m == self.expected_member)
            && self.shapes_found
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub r_max: usize,
    pub rows: Vec<IntersectionRow>,
}

impl IntersectionReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(IntersectionRow::ok)
    }

    pub fn failures(&self) -> Vec<&IntersectionRow> {
        self.rows.iter().filter(|r| !r.ok()).collect()
    }
}

pub(crate) fn exponent_grid(r_max: usize) -> impl Iterator<Item = [usize; 4]> {
    let range = move || 1..=r_max;
    range().flat_map(move |r| {
        range().flat_map(move |s| range().flat_map(move |t| range().map(move |q| [r, s, t, q])))
    })
}

/// Checks `ufp(L) ∩ R` for the six-word language `{aa, aaa, ab, ac, ba, ca}`
/// on every word `aa(ab)^r(ac)^s aa(ba)^t(ca)^q aaa` with exponents up to
/// `r_max`: membership must hold iff `r = t` and `s = q`, and the word must
/// have exactly the factorizations `A S₁^r S₂^s A T₁^t T₂^q B` and
/// `B T₁^r T₂^s S₁^t S₂^q A A`. Both the oracle and the counter machine are
/// consulted.
pub fn bell_intersection_check(r_max: usize) -> Result<IntersectionReport> {
    assert!(r_max <= 3, "desk-scale check is limited to exponent 3");
    let lang = families::bell_language().language.load()?;
    let oracle = lang.oracle();
    let machine = build_ufp_counter_machine(&lang)?;
    let al = lang.alphabet().clone();
    let f = |s: &str| al.parse_word(s).expect("bell factor");
    let (a, b, s1, s2, t1, t2) = (f("aa"), f("aaa"), f("ab"), f("ac"), f("ba"), f("ca"));
    let mut rows = Vec::new();
    for [r, s, t, q] in exponent_grid(r_max) {
        let word = families::bell_word(&al, r, s, t, q);
        let mut shape1 = vec![a.clone()];
        shape1.extend(std::iter::repeat_n(s1.clone(), r));
        shape1.extend(std::iter::repeat_n(s2.clone(), s));
        shape1.push(a.clone());
        shape1.extend(std::iter::repeat_n(t1.clone(), t));
        shape1.extend(std::iter::repeat_n(t2.clone(), q));
        shape1.push(b.clone());
        let mut shape2 = vec![b.clone()];
        shape2.extend(std::iter::repeat_n(t1.clone(), r));
        shape2.extend(std::iter::repeat_n(t2.clone(), s));
        shape2.extend(std::iter::repeat_n(s1.clone(), t));
        shape2.extend(std::iter::repeat_n(s2.clone(), q));
        shape2.push(a.clone());
        shape2.push(a.clone());
        let found = factorizations(&word, &oracle, 16)?;
        let mut found_shapes: Vec<Vec<Word>> = found.iter().map(|f| f.factors().to_vec()).collect();
        found_shapes.sort();
        let mut expected_shapes = vec![shape1, shape2];
        expected_shapes.sort();
        let oracle_member = holds(Predicate::Ufp, &word, &oracle)?;
        let construction_member = !machine.accepts_bounded(&word, word.len() as u32);
        rows.push(IntersectionRow {
            r,
            s,
            t,
            q,
            word: al.render(&word),
            expected_member: r == t && s == q,
            oracle_member,
            construction_member: Some(construction_member),
            factorizations: found.len(),
            shapes_found: found_shapes == expected_shapes,
        });
    }
    Ok(IntersectionReport { r_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::DEFAULT_SLICE_CAP;
    use crate::oracle::{is_ufp, lstar_slice};

    fn finite(chars: &str, words: &[&str]) -> Language {
        let al = Alphabet::from_chars(chars).unwrap();
        let ws = words.iter().map(|w| al.parse_word(w).unwrap()).collect();
        Language::from_words(al, ws)
    }

    #[test]
    fn machine_matches_oracle() {
        for words in [
            &["aaa", "aaaa"][..],
            &["a", "ba"],
            &["a", "aa"],
            &["a", "ab", "ba", "b"],
        ] {
            let l = finite("ab", words);
            let oracle = l.oracle();
            let pda = build_ufp_counter_machine(&l).unwrap();
            for x in lstar_slice(&oracle, 12, DEFAULT_SLICE_CAP).unwrap() {
                assert_eq!(
                    pda.accepts_bounded(&x, x.len() as u32),
                    !is_ufp(&x, &oracle).unwrap(),
                    "{words:?} {x:?}"
                );
            }
        }
    }

    #[test]
    fn a3_a4_slice() {
        let l = finite("a", &["aaa", "aaaa"]);
        let lens: Vec<usize> = ufp_slice(&l.oracle(), 17)
            .unwrap()
            .iter()
            .map(|w| w.len())
            .collect();
        assert_eq!(lens, [0, 3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 17]);
    }

    #[test]
    fn bell_grid_of_one() {
        let report = bell_intersection_check(1).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(report.all_ok(), "{:?}", report.failures());
    }

    #[test]
    fn requires_finite_language() {
        let al = Alphabet::from_chars("a").unwrap();
        let l = Language::from_dfa(crate::Dfa::universal(al));
        assert!(matches!(
            build_ufp_counter_machine(&l),
            Err(Error::NotFinite)
        ));
    }
}

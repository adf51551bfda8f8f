//! Brute-force ground truth for factorizations.
//!
//! Everything here works directly from the definitions: segmentation dynamic
//! programming over the substrings of the input word, with factor membership
//! answered by a [`MembershipOracle`]. Nothing in this module depends on the
//! automaton constructions it is used to check.
//!
//! Convention for the empty word: `ε ∈ L*` through the empty factorization,
//! and every predicate holds vacuously on `ε`. [`factorizations`] only lists
//! non-empty factor sequences, so it returns nothing for `ε`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automata::{enumerate_slice_capped, Dfa, DEFAULT_SLICE_CAP};
use crate::error::{Error, Result};

/// Default cap on enumerated factorizations.
pub const DEFAULT_FACTORIZATION_CAP: usize = 1_000_000;

type MembershipFn = dyn Fn(&[Symbol]) -> bool + Send + Sync;

#[derive(Clone)]
enum Backing {
    Finite {
        set: HashSet<Word>,
        words: Vec<Word>,
        longest: usize,
    },
    Dfa(Dfa),
    Predicate(Arc<MembershipFn>),
}

/// Uniform membership test for a language `L`.
#[derive(Clone)]
pub struct MembershipOracle {
    alphabet: Alphabet,
    backing: Backing,
    description: String,
}

impl MembershipOracle {
    pub fn finite<I: IntoIterator<Item = Word>>(alphabet: Alphabet, words: I) -> Self {
        let mut words: Vec<Word> = words.into_iter().collect();
        words.sort();
        words.dedup();
        let longest = words.iter().map(|w| w.len()).max().unwrap_or(0);
        let description = format!(
            "{{{}}}",
            words
                .iter()
                .map(|w| alphabet.render(w))
                .collect::<Vec<_>>()
                .join(", ")
        );
        MembershipOracle {
            alphabet,
            backing: Backing::Finite {
                set: words.iter().cloned().collect(),
                words,
                longest,
            },
            description,
        }
    }

    pub fn from_dfa(dfa: Dfa) -> Self {
        MembershipOracle {
            alphabet: dfa.alphabet().clone(),
            description: format!("DFA with {} states", dfa.num_states()),
            backing: Backing::Dfa(dfa),
        }
    }

    pub fn from_fn<F>(alphabet: Alphabet, description: impl Into<String>, test: F) -> Self
    where
        F: Fn(&[Symbol]) -> bool + Send + Sync + 'static,
    {
        MembershipOracle {
            alphabet,
            backing: Backing::Predicate(Arc::new(test)),
            description: description.into(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        match &self.backing {
            Backing::Finite { set, longest, .. } => w.len() <= *longest && set.contains(w),
            Backing::Dfa(d) => d.accepts(w),
            Backing::Predicate(f) => f(w),
        }
    }

    pub fn contains_empty(&self) -> bool {
        self.contains(&[])
    }

    fn max_factor_len(&self) -> Option<usize> {
        match &self.backing {
            Backing::Finite { longest, .. } => Some(*longest),
            _ => None,
        }
    }

    /// Members of `L` of length at most `max_len`, in length-then-lex order.
    pub fn words_up_to(&self, max_len: usize, cap: usize) -> Result<Vec<Word>> {
        match &self.backing {
            Backing::Finite { words, .. } => Ok(words
                .iter()
                .filter(|w| w.len() <= max_len)
                .cloned()
                .collect()),
            Backing::Dfa(d) => enumerate_slice_capped(d, max_len, cap),
            Backing::Predicate(f) => {
                let mut out = Vec::new();
                for w in all_words(&self.alphabet, max_len) {
                    if f(&w) {
                        if out.len() == cap {
                            return Err(Error::Overflow { cap });
                        }
                        out.push(w);
                    }
                }
                Ok(out)
            }
        }
    }
}

impl fmt::Debug for MembershipOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MembershipOracle")
            .field("description", &self.description)
            .finish()
    }
}

/// Σ^{≤max_len} in length-then-lex order.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> impl Iterator<Item = Word> + '_ {
    let k = alphabet.len();
    (0..=max_len).flat_map(move |len| {
        let total = k.checked_pow(len as u32).expect("word space too large");
        (0..total).map(move |mut code| {
            let mut w = vec![Symbol(0); len];
            for slot in w.iter_mut().rev() {
                *slot = Symbol((code % k) as u16);
                code /= k;
            }
            Word(w)
        })
    })
}

/// A non-empty sequence of non-empty factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization {
    factors: Vec<Word>,
}

/// Factor counts of a factorization, ignoring order.
pub type FactorMultiset = BTreeMap<Word, usize>;

impl Factorization {
    pub fn new(factors: Vec<Word>) -> Self {
        debug_assert!(!factors.is_empty() && factors.iter().all(|f| !f.is_empty()));
        Factorization { factors }
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn word(&self) -> Word {
        self.factors
            .iter()
            .flat_map(|f| f.iter().copied())
            .collect()
    }

    pub fn multiset(&self) -> FactorMultiset {
        let mut m = BTreeMap::new();
        for f in &self.factors {
            *m.entry(f.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn support(&self) -> BTreeSet<Word> {
        self.factors.iter().cloned().collect()
    }

    /// Parenthesized display, e.g. `(a)(ab)`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.factors
            .iter()
            .map(|f| format!("({})", alphabet.render(f)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    /// exactly one factorization
    Uf,
    /// all factorizations have the same number of factors
    Su,
    /// all factorizations have the same factor multiset
    Ufp,
    /// all factorizations use the same set of factors
    Ufs,
}

impl Predicate {
    pub const ALL: [Predicate; 4] = [Predicate::Uf, Predicate::Su, Predicate::Ufp, Predicate::Ufs];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Uf => "uf",
            Predicate::Su => "su",
            Predicate::Ufp => "ufp",
            Predicate::Ufs => "ufs",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uf" => Ok(Predicate::Uf),
            "su" => Ok(Predicate::Su),
            "ufp" => Ok(Predicate::Ufp),
            "ufs" => Ok(Predicate::Ufs),
            other => Err(format!(
                "unknown predicate `{other}` (expected uf, su, ufp or ufs)"
            )),
        }
    }
}

/// Segmentation table of one word: `ends[i]` lists every `j > i` with
/// `x[i..j] ∈ L`, and `live[i]` says whether `x[i..] ∈ L*`.
struct SegmentTable<'a> {
    x: &'a [Symbol],
    ends: Vec<Vec<usize>>,
    live: Vec<bool>,
}

impl<'a> SegmentTable<'a> {
    fn new(x: &'a [Symbol], l: &MembershipOracle) -> Self {
        let n = x.len();
        let reach = l.max_factor_len().unwrap_or(n);
        let ends: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (i + 1..=n.min(i + reach))
                    .filter(|&j| l.contains(&x[i..j]))
                    .collect()
            })
            .collect();
        let mut live = vec![false; n + 1];
        live[n] = true;
        for i in (0..n).rev() {
            live[i] = ends[i].iter().any(|&j| live[j]);
        }
        SegmentTable { x, ends, live }
    }

    fn in_star(&self) -> bool {
        self.live[0]
    }

    fn live_ends(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.ends[i].iter().copied().filter(move |&j| self.live[j])
    }

    fn count(&self, saturate_at: usize) -> usize {
        let n = self.x.len();
        let mut cnt = vec![0usize; n + 1];
        cnt[n] = 1;
        for i in (0..n).rev() {
            cnt[i] = self.ends[i]
                .iter()
                .fold(0usize, |acc, &j| acc.saturating_add(cnt[j]))
                .min(saturate_at);
        }
        cnt[0]
    }

    /// Ids for the distinct factor words occurring in the table.
    fn factor_ids(&self) -> HashMap<(usize, usize), u32> {
        let mut by_word: HashMap<&[Symbol], u32> = HashMap::new();
        let mut ids = HashMap::new();
        for (i, js) in self.ends.iter().enumerate() {
            for &j in js {
                let next = by_word.len() as u32;
                let id = *by_word.entry(&self.x[i..j]).or_insert(next);
                ids.insert((i, j), id);
            }
        }
        ids
    }

    /// Distinct summaries of the factorizations of `x[i..]`, folded from the
    /// right with `extend(factor id, summary of the rest)`.
    fn summaries<S, F>(&self, empty: S, extend: F) -> HashSet<S>
    where
        S: Hash + Eq + Clone,
        F: Fn(u32, &S) -> S,
    {
        let ids = self.factor_ids();
        let n = self.x.len();
        let mut table: Vec<HashSet<S>> = vec![HashSet::new(); n + 1];
        table[n].insert(empty);
        for i in (0..n).rev() {
            let mut here = HashSet::new();
            for j in self.live_ends(i) {
                let id = ids[&(i, j)];
                for rest in &table[j] {
                    here.insert(extend(id, rest));
                }
            }
            table[i] = here;
        }
        std::mem::take(&mut table[0])
    }
}

fn require_epsilon_free(l: &MembershipOracle) -> Result<()> {
    if l.contains_empty() {
        Err(Error::EpsilonInLanguage)
    } else {
        Ok(())
    }
}

/// Every factorization of `x` into `L`-words, sorted.
pub fn factorizations(
    x: &[Symbol],
    l: &MembershipOracle,
    cap: usize,
) -> Result<Vec<Factorization>> {
    require_epsilon_free(l)?;
    let table = SegmentTable::new(x, l);
    let mut out = Vec::new();
    if x.is_empty() || !table.in_star() {
        return Ok(out);
    }
    let mut cuts = vec![0usize];
    fn walk(
        t: &SegmentTable<'_>,
        cuts: &mut Vec<usize>,
        out: &mut Vec<Factorization>,
        cap: usize,
    ) -> Result<()> {
        let i = *cuts.last().unwrap();
        if i == t.x.len() {
            if out.len() == cap {
                return Err(Error::FactorizationCapExceeded {
                    cap,
                    partial: out.len(),
                });
            }
            let factors = cuts
                .windows(2)
                .map(|c| Word::from(&t.x[c[0]..c[1]]))
                .collect();
            out.push(Factorization::new(factors));
            return Ok(());
        }
        for j in t.live_ends(i).collect::<Vec<_>>() {
            cuts.push(j);
            walk(t, cuts, out, cap)?;
            cuts.pop();
        }
        Ok(())
    }
    walk(&table, &mut cuts, &mut out, cap)?;
    out.sort();
    Ok(out)
}

/// Number of factorizations of `x`, saturated at `saturate_at`. Zero for `ε`.
pub fn count_factorizations(x: &[Symbol], l: &MembershipOracle, saturate_at: usize) -> usize {
    if x.is_empty() {
        return 0;
    }
    SegmentTable::new(x, l).count(saturate_at)
}

pub fn in_language_star(x: &[Symbol], l: &MembershipOracle) -> bool {
    x.is_empty() || SegmentTable::new(x, l).in_star()
}

/// Distinct factor counts over all factorizations of `x`.
pub fn term_counts(x: &[Symbol], l: &MembershipOracle) -> Result<BTreeSet<usize>> {
    let table = checked_table(x, l)?;
    Ok(table.summaries(0usize, |_, n| n + 1).into_iter().collect())
}

fn checked_table<'a>(x: &'a [Symbol], l: &MembershipOracle) -> Result<SegmentTable<'a>> {
    require_epsilon_free(l)?;
    let table = SegmentTable::new(x, l);
    if !table.in_star() {
        return Err(Error::NotInLanguageStar);
    }
    Ok(table)
}

/// Decides `pred` for `x` directly from its definition.
pub fn holds(pred: Predicate, x: &[Symbol], l: &MembershipOracle) -> Result<bool> {
    let table = checked_table(x, l)?;
    if x.is_empty() {
        return Ok(true);
    }
    let distinct = match pred {
        Predicate::Uf => table.count(2),
        Predicate::Su => table.summaries(0usize, |_, n| n + 1).len(),
        Predicate::Ufp => table
            .summaries(Vec::<u32>::new(), |id, rest| {
                let mut m = rest.clone();
                let pos = m.partition_point(|&e| e < id);
                m.insert(pos, id);
                m
            })
            .len(),
        Predicate::Ufs => table
            .summaries(Vec::<u32>::new(), |id, rest| {
                let mut s = rest.clone();
                if let Err(pos) = s.binary_search(&id) {
                    s.insert(pos, id);
                }
                s
            })
            .len(),
    };
    Ok(distinct == 1)
}

pub fn is_uf(x: &[Symbol], l: &MembershipOracle) -> Result<bool> {
    holds(Predicate::Uf, x, l)
}

pub fn is_su(x: &[Symbol], l: &MembershipOracle) -> Result<bool> {
    holds(Predicate::Su, x, l)
}

pub fn is_ufp(x: &[Symbol], l: &MembershipOracle) -> Result<bool> {
    holds(Predicate::Ufp, x, l)
}

pub fn is_ufs(x: &[Symbol], l: &MembershipOracle) -> Result<bool> {
    holds(Predicate::Ufs, x, l)
}

/// `L* ∩ Σ^{≤max_len}` in length-then-lex order, built by concatenating
/// members of `L`.
pub fn lstar_slice(l: &MembershipOracle, max_len: usize, cap: usize) -> Result<Vec<Word>> {
    require_epsilon_free(l)?;
    let factors = l.words_up_to(max_len, cap)?;
    let mut by_len: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); max_len + 1];
    by_len[0].insert(Word::empty());
    let mut total = 1;
    for len in 1..=max_len {
        let mut layer = BTreeSet::new();
        for f in factors.iter().filter(|f| f.len() <= len) {
            for prefix in &by_len[len - f.len()] {
                layer.insert(prefix.concat(f));
            }
        }
        total += layer.len();
        if total > cap {
            return Err(Error::Overflow { cap });
        }
        by_len[len] = layer;
    }
    Ok(by_len.into_iter().flatten().collect())
}

/// `{x ∈ L* : |x| ≤ max_len, pred(x)}`.
pub fn slice_by_predicate(
    l: &MembershipOracle,
    pred: Predicate,
    max_len: usize,
) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for x in lstar_slice(l, max_len, DEFAULT_SLICE_CAP)? {
        if holds(pred, &x, l)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Words of the `L*` slice with at least two factorizations.
pub fn ambiguous_slice(l: &MembershipOracle, max_len: usize) -> Result<Vec<Word>> {
    Ok(lstar_slice(l, max_len, DEFAULT_SLICE_CAP)?
        .into_iter()
        .filter(|x| count_factorizations(x, l, 2) >= 2)
        .collect())
}

/// Shortest-then-least `x ∈ L*` with `|x| ≤ max_len` failing `pred`.
pub fn shortest_violation(
    l: &MembershipOracle,
    pred: Predicate,
    max_len: usize,
) -> Result<Option<Word>> {
    for x in lstar_slice(l, max_len, DEFAULT_SLICE_CAP)? {
        if !holds(pred, &x, l)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(chars: &str, words: &[&str]) -> MembershipOracle {
        let al = Alphabet::from_chars(chars).unwrap();
        let ws = words
            .iter()
            .map(|w| al.parse_word(w).unwrap())
            .collect::<Vec<_>>();
        MembershipOracle::finite(al, ws)
    }

    fn w(l: &MembershipOracle, s: &str) -> Word {
        l.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn factorizations_of_aab() {
        let l = lang("ab", &["a", "ab", "aab"]);
        let fs = factorizations(&w(&l, "aab"), &l, 10).unwrap();
        let shown: Vec<_> = fs.iter().map(|f| f.render(l.alphabet())).collect();
        assert_eq!(shown, ["(a)(ab)", "(aab)"]);
        assert_eq!(count_factorizations(&w(&l, "aab"), &l, 2), 2);
        assert_eq!(count_factorizations(&w(&l, "aba"), &l, 2), 1);
    }

    #[test]
    fn empty_word_and_empty_language() {
        let l = lang("ab", &["a", "ab"]);
        assert!(factorizations(&[], &l, 10).unwrap().is_empty());
        for p in Predicate::ALL {
            assert!(holds(p, &[], &l).unwrap());
        }
        let none = lang("a", &[]);
        assert_eq!(count_factorizations(&w(&none, "a"), &none, 2), 0);
    }

    #[test]
    fn predicates_on_named_examples() {
        let l = lang("ab", &["a", "ab", "aab"]);
        let x = w(&l, "aab");
        assert!(!is_su(&x, &l).unwrap());
        assert!(!is_uf(&x, &l).unwrap());
        assert!(!is_ufs(&x, &l).unwrap());

        let l = lang("a", &["a", "aa"]);
        assert!(!is_ufs(&w(&l, "aa"), &l).unwrap());

        let l = lang("a", &["aaa", "aaaa"]);
        assert!(!is_ufp(&Word(vec![Symbol(0); 12]), &l).unwrap());
        assert!(is_ufp(&Word(vec![Symbol(0); 17]), &l).unwrap());
    }

    #[test]
    fn errors() {
        let l = lang("ab", &["a"]);
        assert_eq!(
            is_uf(&w(&l, "b"), &l).unwrap_err(),
            Error::NotInLanguageStar
        );
        let eps =
            MembershipOracle::from_fn(l.alphabet().clone(), "a*", |w| w.iter().all(|s| s.0 == 0));
        assert_eq!(
            factorizations(&[], &eps, 1).unwrap_err(),
            Error::EpsilonInLanguage
        );
        let many = lang("a", &["a", "aa"]);
        assert!(matches!(
            factorizations(&Word(vec![Symbol(0); 10]), &many, 5),
            Err(Error::FactorizationCapExceeded { cap: 5, .. })
        ));
    }

    #[test]
    fn su_slice_of_example_language() {
        let l = lang("ab", &["a", "ab", "aab"]);
        let got = slice_by_predicate(&l, Predicate::Su, 4).unwrap();
        let shown: Vec<_> = got.iter().map(|x| l.alphabet().render(x)).collect();
        assert_eq!(
            shown,
            ["ε", "a", "aa", "ab", "aaa", "aba", "aaaa", "abaa", "abab"]
        );
    }

    #[test]
    fn shortest_violations() {
        let l = lang("ab", &["a", "ba"]);
        assert_eq!(shortest_violation(&l, Predicate::Uf, 10).unwrap(), None);
        let l = lang("a", &["a", "aa"]);
        assert_eq!(
            shortest_violation(&l, Predicate::Su, 4).unwrap(),
            Some(w(&l, "aa"))
        );
    }

    #[test]
    fn all_words_order() {
        let al = Alphabet::from_chars("ab").unwrap();
        let v: Vec<_> = all_words(&al, 2).map(|w| al.render(&w)).collect();
        assert_eq!(v, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
    }
}

//! The acceptance suite: fourteen exact checks of the constructions against
//! the oracle and against the known values of the witness families.
//!
//! Random inputs come from a fixed-seed ChaCha generator, so every run sees
//! the same languages.

use std::collections::BTreeSet;
use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::automata::{compile_regex, enumerate_slice, equivalent, Dfa, DEFAULT_SLICE_CAP};
use crate::error::Result;
use crate::families::{
    bell_language, cycle_family, staircase_binary_family, staircase_family, su_finite_witness,
    su_regular_witness, Claim, FamilyInstance,
};
use crate::language::Language;
use crate::oracle::{
    ambiguous_slice, holds, lstar_slice, shortest_violation, slice_by_predicate, MembershipOracle,
    Predicate,
};
use crate::palstar::palstar_uf_check;
use crate::su::{build_su_counter_machine, su_gap_exists, su_slice};
use crate::uf::{build_double_nfa, is_code, matrix_uf_dfa, uf_dfa};
use crate::ufp::{bell_intersection_check, build_ufp_counter_machine, ufp_slice};
use crate::ufs::{build_ufs_nfa, shortest_ufs_violation, ufs_regular_witness_check};

pub const SEED: u64 = 0x5eed_f00d;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "[{verdict}] {:>2}. {}: {}",
            self.id, self.title, self.detail
        )
    }
}

fn binary() -> Alphabet {
    Alphabet::from_chars("ab").expect("static alphabet")
}

/// Complete DFA over `{a, b}` with 1 to `max_states` states and a non-final
/// initial state, so `ε ∉ L`.
pub fn random_dfa(rng: &mut impl Rng, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let table = (0..n)
        .map(|_| (0..2).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let mut finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    finals[0] = false;
    Dfa::new(binary(), table, 0, finals).expect("well-formed random DFA")
}

fn random_word(rng: &mut impl Rng, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| crate::Symbol(rng.gen_range(0..2u16)))
        .collect()
}

/// 1 to `max_words` distinct nonempty words over `{a, b}` of length at most
/// `max_len`.
pub fn random_finite_language(rng: &mut impl Rng, max_words: usize, max_len: usize) -> Language {
    let target = rng.gen_range(1..=max_words);
    let mut words: Vec<Word> = Vec::new();
    while words.len() < target {
        let w = random_word(rng, max_len);
        if !words.contains(&w) {
            words.push(w);
        }
    }
    Language::from_words(binary(), words)
}

/// A prefix-free set of 2 to 4 words over `{a, b}` of length at most 3.
pub fn random_prefix_code(rng: &mut impl Rng) -> Language {
    loop {
        let mut pool: Vec<Word> = crate::oracle::all_words(&binary(), 3)
            .filter(|w| !w.is_empty())
            .collect();
        pool.shuffle(rng);
        let target = rng.gen_range(2..=4);
        let mut words: Vec<Word> = Vec::new();
        for w in pool {
            if words
                .iter()
                .all(|v| !w.starts_with(v) && !v.starts_with(&w))
            {
                words.push(w);
            }
            if words.len() == target {
                return Language::from_words(binary(), words);
            }
        }
    }
}

fn finite(chars: &str, words: &[&str]) -> Language {
    let al = Alphabet::from_chars(chars).expect("static alphabet");
    let ws = words
        .iter()
        .map(|w| al.parse_word(w).expect("static word"))
        .collect();
    Language::from_words(al, ws)
}

fn report(id: u8, title: &'static str, outcome: Result<(bool, String)>) -> CriterionReport {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionReport {
        id,
        title,
        passed,
        detail,
    }
}

/// The fixed random inputs shared by several criteria.
pub struct Corpus {
    pub dfas: Vec<Dfa>,
    pub small_dfas: Vec<Dfa>,
    pub finite: Vec<Language>,
    pub prefix_codes: Vec<Language>,
}

impl Corpus {
    pub fn generate(seed: u64) -> Corpus {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Corpus {
            dfas: (0..200).map(|_| random_dfa(&mut rng, 4)).collect(),
            small_dfas: (0..50).map(|_| random_dfa(&mut rng, 3)).collect(),
            finite: (0..200)
                .map(|_| random_finite_language(&mut rng, 4, 3))
                .collect(),
            prefix_codes: (0..20).map(|_| random_prefix_code(&mut rng)).collect(),
        }
    }
}

fn words_set(words: Vec<Word>) -> BTreeSet<Word> {
    words.into_iter().collect()
}

pub fn criterion_1(corpus: &Corpus) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for (i, m) in corpus.dfas.iter().enumerate() {
        let oracle = MembershipOracle::from_dfa(m.clone());
        let ambiguous = enumerate_slice(&build_double_nfa(m)?, 8)?;
        let uf = enumerate_slice(&uf_dfa(m)?, 8)?;
        if ambiguous != ambiguous_slice(&oracle, 8)?
            || uf != slice_by_predicate(&oracle, Predicate::Uf, 8)?
        {
            bad.push(i);
        }
    }
    Ok((
        bad.is_empty(),
        format!("{} DFAs, mismatches at {bad:?}", corpus.dfas.len()),
    ))
}

pub fn criterion_2(corpus: &Corpus) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for (i, m) in corpus.small_dfas.iter().enumerate() {
        if !equivalent(&uf_dfa(m)?, &matrix_uf_dfa(m)?)? {
            bad.push(i);
        }
    }
    Ok((
        bad.is_empty(),
        format!("{} DFAs, inequivalent at {bad:?}", corpus.small_dfas.len()),
    ))
}

pub fn criterion_3(corpus: &Corpus) -> Result<(bool, String)> {
    let (mut non_codes, mut violations, mut longest) = (0, 0, 0);
    for m in &corpus.dfas {
        let check = is_code(m)?;
        if let Some(w) = &check.witness {
            non_codes += 1;
            longest = longest.max(w.len());
            if w.len() >= check.length_bound() {
                violations += 1;
            }
        }
    }
    Ok((
        violations == 0,
        format!("{non_codes} non-codes, longest witness {longest}, {violations} at or above n²+n"),
    ))
}

fn all_claims_hold(
    instances: &[FamilyInstance],
    keep: impl Fn(&Claim) -> bool,
) -> Result<(bool, Vec<String>)> {
    let mut failed = Vec::new();
    for f in instances {
        let lang = f.language.load()?;
        for c in f.claims.iter().filter(|c| keep(c)) {
            let out = c.evaluate(&lang)?;
            if !out.holds {
                failed.push(format!(
                    "{}({:?}) {}: expected {}, got {}",
                    f.name, f.parameter, out.description, out.expected, out.actual
                ));
            }
        }
    }
    Ok((failed.is_empty(), failed))
}

pub fn criterion_4() -> Result<(bool, String)> {
    let instances = (2..=6).map(cycle_family).collect::<Result<Vec<_>>>()?;
    let (ok, failed) = all_claims_hold(&instances, |c| {
        matches!(
            c,
            Claim::ShortestAmbiguous { .. } | Claim::MinimalDfaAtMost { .. }
        )
    })?;
    let mut detail = String::from("n=2..6 lengths");
    for f in &instances {
        let lang = f.language.load()?;
        let len = is_code(lang.dfa())?.witness.map_or(0, |w| w.len());
        let _ = write!(detail, " {len}/{}st", lang.dfa().num_states());
    }
    if !ok {
        let _ = write!(detail, "; {}", failed.join("; "));
    }
    Ok((ok, detail))
}

pub fn criterion_5() -> Result<(bool, String)> {
    let instances = (2..=6).map(staircase_family).collect::<Result<Vec<_>>>()?;
    let (mut ok, failed) = all_claims_hold(&instances, |c| {
        matches!(
            c,
            Claim::ShortestAmbiguous { .. } | Claim::MinimalDfaAtMost { .. }
        )
    })?;
    let mut detail = String::from("staircase n=2..6 ok");
    if !ok {
        detail = failed.join("; ");
    }
    let mut previous = 0;
    detail.push_str("; binary witnesses");
    for n in 4..=8 {
        let lang = staircase_binary_family(n)?.language.load()?;
        let witness = is_code(lang.dfa())?.witness;
        let len = witness.as_ref().map_or(0, |w| w.len());
        let ratio = len as f64 / (n * n) as f64;
        let _ = write!(detail, " n={n}:{len}({ratio:.2})");
        ok &= witness.is_some() && (0.2..=3.0).contains(&ratio) && len > previous;
        previous = len;
    }
    Ok((ok, detail))
}

pub fn criterion_6() -> Result<(bool, String)> {
    let r = palstar_uf_check(14);
    Ok((
        r.sets_agree(),
        format!(
            "{} words, {} PRIMEPALSTAR, {} uf, {} mismatches",
            r.words_checked,
            r.primepalstar,
            r.uf,
            r.mismatches.len()
        ),
    ))
}

pub fn criterion_7() -> Result<(bool, String)> {
    let lang = finite("ab", &["a", "ab", "aab"]);
    let oracle = lang.oracle();
    let expected = enumerate_slice(&compile_regex("(ab)*a*", lang.alphabet())?, 10)?;
    let from_oracle = su_slice(&oracle, 10)?;
    let machine = build_su_counter_machine(lang.dfa())?;
    let from_machine: Vec<Word> = lstar_slice(&oracle, 10, DEFAULT_SLICE_CAP)?
        .into_iter()
        .filter(|x| !machine.accepts_bounded(x, x.len() as u32))
        .collect();
    let ok = from_oracle == expected && from_machine == expected;
    Ok((
        ok,
        format!(
            "(ab)*a* has {} words ≤ 10; oracle {}, machine {}",
            expected.len(),
            from_oracle.len(),
            from_machine.len()
        ),
    ))
}

pub fn criterion_8(corpus: &Corpus) -> Result<(bool, String)> {
    let mut named = vec![
        ("{a,aa}", finite("ab", &["a", "aa"])),
        ("{a,ab,aab}", finite("ab", &["a", "ab", "aab"])),
    ];
    named.push(("su-regular", su_regular_witness(1).language.load()?));
    named.push(("su-finite", su_finite_witness(1).language.load()?));
    let mut failures = Vec::new();
    for (name, l) in &named {
        if !su_gap_exists(l.dfa())? {
            failures.push(format!("{name} reported without gap"));
        }
    }
    for (i, l) in corpus.prefix_codes.iter().enumerate() {
        if su_gap_exists(l.dfa())? {
            failures.push(format!("prefix code {i} reported with gap"));
        }
    }
    // one-sided: a language without a gap must have no oracle violation
    let (mut gaps, mut clean) = (0, 0);
    let tested = named
        .iter()
        .map(|(_, l)| l)
        .chain(&corpus.prefix_codes)
        .chain(&corpus.finite);
    for l in tested {
        if su_gap_exists(l.dfa())? {
            gaps += 1;
        } else if shortest_violation(&l.oracle(), Predicate::Su, 12)?.is_some() {
            failures.push(format!("oracle violation but no gap for {}", l.describe()));
        } else {
            clean += 1;
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "named languages all have gaps, {} prefix codes gap-free; {gaps} languages with gaps, {clean} without and oracle-clean to length 12{}",
            corpus.prefix_codes.len(),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    ))
}

pub fn criterion_9() -> Result<(bool, String)> {
    let instances = [su_regular_witness(3), su_finite_witness(3)];
    let terms = |c: &Claim| matches!(c, Claim::TermCounts { .. });
    let words: usize = instances
        .iter()
        .map(|f| f.claims.iter().filter(|c| terms(c)).count())
        .sum();
    let (ok, failed) = all_claims_hold(&instances, terms)?;
    Ok((
        ok,
        if ok {
            format!("{words} target words, three factorizations each with the predicted counts")
        } else {
            failed.join("; ")
        },
    ))
}

pub fn criterion_10() -> Result<(bool, String)> {
    let lang = finite("a", &["aaa", "aaaa"]);
    let lengths: Vec<usize> = ufp_slice(&lang.oracle(), 40)?
        .into_iter()
        .filter(|w| !w.is_empty())
        .map(|w| w.len())
        .collect();
    let expected = [3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 17];
    let machine = build_ufp_counter_machine(&lang)?;
    let from_machine: Vec<usize> = (1..=40)
        .filter(|&k| k != 1 && k != 2 && k != 5)
        .filter(|&k| !machine.accepts_bounded(&vec![crate::Symbol(0); k], k as u32))
        .collect();
    Ok((
        lengths == expected && from_machine == expected,
        format!("oracle lengths {lengths:?}, machine lengths {from_machine:?}"),
    ))
}

pub fn criterion_11() -> Result<(bool, String)> {
    let r = bell_intersection_check(3)?;
    let members = r.rows.iter().filter(|row| row.oracle_member).count();
    Ok((
        r.all_ok(),
        format!(
            "{} words, {members} members, {} failures",
            r.rows.len(),
            r.failures().len()
        ),
    ))
}

pub fn criterion_12(corpus: &Corpus) -> Result<(bool, String)> {
    let mut mismatches = Vec::new();
    let mut over_bound = 0;
    let mut violations = 0;
    for (i, l) in corpus.finite.iter().enumerate() {
        let oracle = l.oracle();
        let from_nfa = words_set(enumerate_slice(&build_ufs_nfa(l)?, 8)?);
        let mut from_oracle = BTreeSet::new();
        for x in lstar_slice(&oracle, 8, DEFAULT_SLICE_CAP)? {
            if !holds(Predicate::Ufs, &x, &oracle)? {
                from_oracle.insert(x);
            }
        }
        if from_nfa != from_oracle {
            mismatches.push(i);
        }
        let v = shortest_ufs_violation(l)?;
        violations += usize::from(v.word.is_some());
        over_bound += usize::from(!v.within_bound());
    }
    let mut lengths = Vec::new();
    let mut family_ok = true;
    for n in 2..=6 {
        let lang = staircase_family(n)?.language.load()?;
        let len = shortest_ufs_violation(&lang)?.word.map_or(0, |w| w.len());
        family_ok &= len == n * (n + 1) / 2;
        lengths.push(len);
    }
    Ok((
        mismatches.is_empty() && over_bound == 0 && family_ok,
        format!(
            "{} languages, slice mismatches at {mismatches:?}; {violations} violations, {over_bound} over 2m²n²; staircase lengths {lengths:?}",
            corpus.finite.len()
        ),
    ))
}

pub fn criterion_13() -> Result<(bool, String)> {
    let r = ufs_regular_witness_check(3)?;
    let members = r.rows.iter().filter(|row| row.oracle_member).count();
    Ok((
        r.all_ok(),
        format!(
            "{} words, {members} members, {} failures",
            r.rows.len(),
            r.failures().len()
        ),
    ))
}

pub fn criterion_14(corpus: &Corpus) -> Result<(bool, String)> {
    let mut oracles: Vec<MembershipOracle> = Vec::new();
    oracles.extend(corpus.finite.iter().map(Language::oracle));
    oracles.extend(corpus.prefix_codes.iter().map(Language::oracle));
    oracles.extend(
        corpus
            .dfas
            .iter()
            .map(|m| MembershipOracle::from_dfa(m.clone())),
    );
    for f in [bell_language(), cycle_family(2)?, staircase_family(3)?] {
        oracles.push(f.language.load()?.oracle());
    }
    oracles.push(finite("ab", &["a", "ab", "aab"]).oracle());
    oracles.push(finite("a", &["aaa", "aaaa"]).oracle());
    let (mut words, mut counterexamples) = (0, 0);
    for l in &oracles {
        for x in lstar_slice(l, 8, DEFAULT_SLICE_CAP)? {
            words += 1;
            let [uf, su, ufp, ufs] = Predicate::ALL.map(|p| holds(p, &x, l));
            let (uf, su, ufp, ufs) = (uf?, su?, ufp?, ufs?);
            if (uf && !ufp) || (ufp && !su) || (ufp && !ufs) {
                counterexamples += 1;
            }
        }
    }
    Ok((
        counterexamples == 0,
        format!(
            "{} languages, {words} words, {counterexamples} counterexamples",
            oracles.len()
        ),
    ))
}

/// Runs all fourteen criteria in order.
pub fn run_all() -> Vec<CriterionReport> {
    let corpus = Corpus::generate(SEED);
    vec![
        report(1, "uf construction vs oracle", criterion_1(&corpus)),
        report(2, "doubled-state vs matrix DFA", criterion_2(&corpus)),
        report(3, "shortest ambiguous word < n²+n", criterion_3(&corpus)),
        report(4, "cycle family witnesses", criterion_4()),
        report(5, "staircase family witnesses", criterion_5()),
        report(6, "uf(PALSTAR) = PRIMEPALSTAR", criterion_6()),
        report(7, "su({a,ab,aab}) = (ab)*a*", criterion_7()),
        report(8, "su gap decision", criterion_8(&corpus)),
        report(9, "su witness term counts", criterion_9()),
        report(10, "ufp({a³,a⁴})", criterion_10()),
        report(11, "ufp(L) ∩ R for the six-word language", criterion_11()),
        report(12, "ufs construction vs oracle", criterion_12(&corpus)),
        report(13, "ufs(L) ∩ R for the regular witness", criterion_13()),
        report(14, "uf ⇒ ufp ⇒ su, ufp ⇒ ufs", criterion_14(&corpus)),
    ]
}

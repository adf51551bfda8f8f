use std::collections::BTreeSet;
use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;

use unifac::automata::enumerate_slice_capped;
use unifac::oracle::{factorizations, holds, lstar_slice, term_counts};
use unifac::su::{build_su_counter_machine, su_gap_exists};
use unifac::uf::{is_code, uf_dfa};
use unifac::ufp::build_ufp_counter_machine;
use unifac::ufs::{build_ufs_nfa, shortest_ufs_violation};
use unifac::{Language, MembershipOracle, Predicate, Word};

use crate::Failure;

/// Lines of a word list shown in text output before eliding.
const SHOWN: usize = 40;

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    Uf,
    Su,
    Ufp,
    Ufs,
}

impl Kind {
    fn predicate(self) -> Predicate {
        match self {
            Kind::Uf => Predicate::Uf,
            Kind::Su => Predicate::Su,
            Kind::Ufp => Predicate::Ufp,
            Kind::Ufs => Predicate::Ufs,
        }
    }
}

#[derive(Serialize)]
pub struct LanguageSummary {
    pub description: String,
    pub alphabet: Vec<String>,
    pub finite: bool,
    pub words: Option<usize>,
    pub dfa_states: usize,
}

#[derive(Serialize)]
pub struct Witness {
    pub word: String,
    pub length: usize,
    /// Length bound the construction guarantees, where there is one.
    pub bound: Option<usize>,
    pub factorizations: Vec<String>,
    pub term_counts: Vec<usize>,
    /// Whether the oracle confirmed the defining property.
    pub confirmed: bool,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub language: LanguageSummary,
    pub predicate: String,
    pub max_len: usize,
    pub is_code: bool,
    pub su_gap_exists: Option<bool>,
    pub witness: Option<Witness>,
    /// Nonempty words of L* up to `max_len`.
    pub lstar_words: usize,
    /// Nonempty words of the slice satisfying the predicate.
    pub members: Vec<String>,
    pub violations: Vec<String>,
    /// Words where the construction and the oracle disagree.
    pub mismatches: Vec<String>,
}

fn summary(lang: &Language) -> LanguageSummary {
    LanguageSummary {
        description: lang.describe(),
        alphabet: lang.alphabet().tokens().to_vec(),
        finite: lang.words().is_some(),
        words: lang.words().map(<[Word]>::len),
        dfa_states: lang.dfa().num_states(),
    }
}

fn witness(
    x: &Word,
    bound: Option<usize>,
    kind: Kind,
    oracle: &MembershipOracle,
    cap: usize,
) -> Result<Witness, Failure> {
    let al = oracle.alphabet();
    let confirmed = unifac::oracle::in_language_star(x, oracle)
        && !holds(kind.predicate(), x, oracle)?
        && bound.is_none_or(|b| x.len() <= b);
    Ok(Witness {
        word: al.render(x),
        length: x.len(),
        bound,
        factorizations: factorizations(x, oracle, cap)?
            .iter()
            .map(|f| f.render(al))
            .collect(),
        term_counts: term_counts(x, oracle)?.into_iter().collect(),
        confirmed,
    })
}

pub fn analyze(
    lang: &Language,
    kind: Kind,
    max_len: usize,
    cap: usize,
) -> Result<AnalysisReport, Failure> {
    let oracle = lang.oracle();
    let al = lang.alphabet();
    let slice: Vec<Word> = lstar_slice(&oracle, max_len, cap)?
        .into_iter()
        .filter(|x| !x.is_empty())
        .collect();
    let mut members = Vec::new();
    let mut violations = Vec::new();
    for x in &slice {
        if holds(kind.predicate(), x, &oracle)? {
            members.push(x.clone());
        } else {
            violations.push(x.clone());
        }
    }

    let code = is_code(lang.dfa())?;
    let mut su_gap = None;
    // words of the slice the construction reports as violations
    let flagged: Vec<Word>;
    let mut found = None;
    let mut mismatches = Vec::new();
    match kind {
        Kind::Uf => {
            let dfa = uf_dfa(lang.dfa())?;
            flagged = slice.iter().filter(|x| !dfa.accepts(x)).cloned().collect();
            found = code.witness.clone().map(|w| (w, Some(code.length_bound())));
        }
        Kind::Su => {
            let gap = su_gap_exists(lang.dfa())?;
            su_gap = Some(gap);
            let machine = build_su_counter_machine(lang.dfa())?;
            flagged = slice
                .iter()
                .filter(|x| machine.accepts_bounded(x, x.len() as u32))
                .cloned()
                .collect();
            if !gap && !flagged.is_empty() {
                mismatches.push("gap decision reports none".to_string());
            }
        }
        Kind::Ufp => {
            let machine = build_ufp_counter_machine(lang)?;
            flagged = slice
                .iter()
                .filter(|x| machine.accepts_bounded(x, x.len() as u32))
                .cloned()
                .collect();
        }
        Kind::Ufs => {
            let nfa = build_ufs_nfa(lang)?;
            flagged = enumerate_slice_capped(&nfa, max_len, cap)?;
            let v = shortest_ufs_violation(lang)?;
            found = v.word.clone().map(|w| (w, Some(v.bound)));
        }
    }
    if found.is_none() {
        found = flagged.first().cloned().map(|w| (w, None));
    }

    let by_oracle: BTreeSet<&Word> = violations.iter().collect();
    let by_construction: BTreeSet<&Word> = flagged.iter().filter(|x| !x.is_empty()).collect();
    for x in by_oracle.symmetric_difference(&by_construction) {
        mismatches.push(al.render(x));
    }
    // the construction's shortest violation must be the oracle's when it fits
    if let (Some((w, _)), Some(first)) = (&found, violations.first()) {
        if w.len() <= max_len && w != first {
            mismatches.push(format!(
                "shortest violation {} vs {}",
                al.render(w),
                al.render(first)
            ));
        }
    }

    let witness = match found {
        Some((w, bound)) => Some(witness(&w, bound, kind, &oracle, cap)?),
        None => None,
    };
    let render = |ws: Vec<Word>| ws.iter().map(|w| al.render(w)).collect();
    Ok(AnalysisReport {
        language: summary(lang),
        predicate: predicate_name(kind).into(),
        max_len,
        is_code: code.is_code(),
        su_gap_exists: su_gap,
        witness,
        lstar_words: slice.len(),
        members: render(members),
        violations: render(violations),
        mismatches,
    })
}

fn predicate_name(kind: Kind) -> &'static str {
    kind.predicate().name()
}

fn list(out: &mut String, title: &str, words: &[String]) {
    let _ = writeln!(out, "{title} ({}):", words.len());
    for w in words.iter().take(SHOWN) {
        let _ = writeln!(out, "  {w}");
    }
    if words.len() > SHOWN {
        let _ = writeln!(out, "  … {} more", words.len() - SHOWN);
    }
}

impl AnalysisReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let l = &self.language;
        let _ = writeln!(out, "language: {}", l.description);
        let _ = writeln!(
            out,
            "alphabet: {}  minimal DFA: {} states",
            l.alphabet.join(" "),
            l.dfa_states
        );
        let _ = writeln!(out, "is code: {}", self.is_code);
        if let Some(gap) = self.su_gap_exists {
            let _ = writeln!(out, "su gap exists: {gap}");
        }
        match &self.witness {
            Some(w) => {
                let bound = w.bound.map_or(String::new(), |b| format!(" (bound {b})"));
                let _ = writeln!(
                    out,
                    "shortest word outside {}(L): {}  length {}{bound}",
                    self.predicate, w.word, w.length
                );
                for f in &w.factorizations {
                    let _ = writeln!(out, "  {f}");
                }
                let counts: Vec<String> = w.term_counts.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "  term counts: {{{}}}", counts.join(", "));
            }
            None => {
                let _ = writeln!(
                    out,
                    "no word of L* up to length {} lies outside {}(L)",
                    self.max_len, self.predicate
                );
            }
        }
        let _ = writeln!(
            out,
            "L* up to length {}: {} nonempty words",
            self.max_len, self.lstar_words
        );
        list(&mut out, &format!("{}(L)", self.predicate), &self.members);
        list(&mut out, "outside", &self.violations);
        if self.mismatches.is_empty() {
            let _ = writeln!(out, "construction agrees with oracle");
        } else {
            list(&mut out, "MISMATCH", &self.mismatches);
        }
        out
    }

    pub fn verdict(&self) -> Result<(), Failure> {
        if !self.mismatches.is_empty() {
            return Err(Failure::Violation(format!(
                "construction and oracle disagree on {} words",
                self.mismatches.len()
            )));
        }
        if self.witness.as_ref().is_some_and(|w| !w.confirmed) {
            return Err(Failure::Violation("witness failed re-validation".into()));
        }
        Ok(())
    }
}

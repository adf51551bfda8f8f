use unifac::automata::{compile_regex, dot, enumerate_slice, equivalent, shortest_accepted};
use unifac::cfg::{cfg_nonempty, pda_to_cfg};
use unifac::families::{
    self, cycle_family, staircase_binary_family, staircase_family, su_finite_witness,
    su_regular_witness, FamilyInstance,
};
use unifac::oracle::{
    factorizations, is_su, is_uf, is_ufp, is_ufs, shortest_violation, term_counts,
};
use unifac::su::{build_su_counter_machine, su_gap_exists, su_slice};
use unifac::uf::{build_double_nfa, is_code, lstar_dfa, uf_dfa};
use unifac::ufp::{bell_intersection_check, build_ufp_counter_machine};
use unifac::ufs::{build_ufs_nfa, shortest_ufs_violation, ufs_dfa, ufs_regular_witness_check};
use unifac::{Alphabet, Error, Language, Predicate};

fn finite(chars: &str, words: &[&str]) -> Language {
    let al = Alphabet::from_chars(chars).unwrap();
    let ws = words.iter().map(|w| al.parse_word(w).unwrap()).collect();
    Language::from_words(al, ws)
}

fn load(f: &FamilyInstance) -> Language {
    f.language.load().unwrap()
}

#[test]
fn cycle_language_word_has_two_factorizations() {
    let l = load(&cycle_family(2).unwrap());
    let x = l.alphabet().parse_word("baaaaaab").unwrap();
    let shown: Vec<String> = factorizations(&x, &l.oracle(), 10)
        .unwrap()
        .iter()
        .map(|f| f.render(l.alphabet()))
        .collect();
    assert_eq!(shown, ["(b)(aaaaaab)", "(baaaaaa)(b)"]);
}

#[test]
fn powers_of_a_under_three_and_four() {
    let l = finite("a", &["aaa", "aaaa"]);
    let o = l.oracle();
    let a = |k| vec![unifac::Symbol(0); k];
    assert!(!is_ufp(&a(12), &o).unwrap());
    assert!(is_ufp(&a(17), &o).unwrap());
    // unique representation k = 3i + 4j
    for k in 1..=40usize {
        let reps = (0..=k / 3).filter(|i| (k - 3 * i) % 4 == 0).count();
        if reps > 0 {
            assert_eq!(is_ufp(&a(k), &o).unwrap(), reps == 1, "a^{k}");
        }
    }
    let m = build_ufp_counter_machine(&l).unwrap();
    assert!(m.accepts_bounded(&a(12), 12));
}

#[test]
fn predicates_on_aab() {
    let l = finite("ab", &["a", "ab", "aab"]);
    let o = l.oracle();
    let x = l.alphabet().parse_word("aab").unwrap();
    assert!(!is_su(&x, &o).unwrap() && !is_uf(&x, &o).unwrap() && !is_ufs(&x, &o).unwrap());
    assert_eq!(
        term_counts(&x, &o).unwrap().into_iter().collect::<Vec<_>>(),
        [1, 2]
    );
    let m = build_su_counter_machine(l.dfa()).unwrap();
    assert!(m.accepts_bounded(&x, 3));
    assert!(cfg_nonempty(&pda_to_cfg(&m)));
    let expected = enumerate_slice(&compile_regex("(ab)*a*", l.alphabet()).unwrap(), 8).unwrap();
    assert_eq!(su_slice(&o, 8).unwrap(), expected);
}

#[test]
fn staircase_shortest_violations() {
    let l = load(&staircase_family(3).unwrap());
    let w = shortest_violation(&l.oracle(), Predicate::Uf, 10)
        .unwrap()
        .unwrap();
    assert_eq!(l.alphabet().render(&w), "a1 b a2 b b a3");
    assert_eq!(shortest_ufs_violation(&l).unwrap().word.unwrap().len(), 6);
    let l4 = load(&staircase_family(4).unwrap());
    let v = shortest_ufs_violation(&l4).unwrap();
    assert_eq!((v.word.unwrap().len(), v.bound), (10, 2 * 16 * 64));
    let recoded = load(&staircase_binary_family(4).unwrap());
    assert!(!is_code(recoded.dfa()).unwrap().is_code());
}

#[test]
fn small_languages() {
    let aa = finite("a", &["a", "aa"]);
    let x = aa.alphabet().parse_word("aa").unwrap();
    assert!(build_double_nfa(aa.dfa()).unwrap().accepts(&x));
    assert!(build_ufs_nfa(&aa).unwrap().accepts(&x));
    assert!(su_gap_exists(aa.dfa()).unwrap());
    assert_eq!(
        shortest_violation(&aa.oracle(), Predicate::Su, 4).unwrap(),
        Some(x)
    );

    let code = finite("ab", &["a", "ba"]);
    assert!(is_code(code.dfa()).unwrap().is_code());
    assert!(shortest_accepted(&build_ufs_nfa(&code).unwrap()).is_none());
    assert!(equivalent(&ufs_dfa(&code).unwrap(), &lstar_dfa(code.dfa()).unwrap()).unwrap());
    assert!(equivalent(
        &uf_dfa(code.dfa()).unwrap(),
        &lstar_dfa(code.dfa()).unwrap()
    )
    .unwrap());
    assert!(!su_gap_exists(code.dfa()).unwrap());
    let ufp = build_ufp_counter_machine(&code).unwrap();
    assert!(!cfg_nonempty(&pda_to_cfg(&ufp)));
}

#[test]
fn epsilon_is_rejected_by_the_constructions() {
    let al = Alphabet::from_chars("a").unwrap();
    let l = Language::from_words(
        al.clone(),
        vec![unifac::Word::empty(), al.parse_word("a").unwrap()],
    );
    assert!(matches!(
        build_double_nfa(l.dfa()),
        Err(Error::EpsilonInLanguage)
    ));
    assert!(matches!(
        build_su_counter_machine(l.dfa()),
        Err(Error::EpsilonInLanguage)
    ));
    assert!(matches!(
        build_ufp_counter_machine(&l),
        Err(Error::EpsilonInLanguage)
    ));
    assert!(matches!(build_ufs_nfa(&l), Err(Error::EpsilonInLanguage)));
    assert_eq!(uf_dfa(l.dfa()).unwrap().num_states(), 1);
}

#[test]
fn su_witnesses() {
    let regular = su_regular_witness(1);
    let lang = load(&regular);
    assert!(su_gap_exists(lang.dfa()).unwrap());
    let w = lang
        .alphabet()
        .word_from_tokens(&families::su_regular_word(1, 1, 2))
        .unwrap();
    assert!(is_su(&w, &lang.oracle()).unwrap());
    let w = lang
        .alphabet()
        .word_from_tokens(&families::su_regular_word(2, 1, 2))
        .unwrap();
    assert!(!is_su(&w, &lang.oracle()).unwrap());

    let fin = load(&su_finite_witness(1));
    let w = fin
        .alphabet()
        .word_from_tokens(&families::su_finite_word(2, 1, 1))
        .unwrap();
    assert_eq!(
        term_counts(&w, &fin.oracle())
            .unwrap()
            .into_iter()
            .collect::<Vec<_>>(),
        [7, 8]
    );
}

#[test]
fn family_claims_hold_at_small_parameters() {
    for name in families::FAMILY_NAMES {
        let f = families::family(name, Some(2)).unwrap();
        for outcome in f.check().unwrap() {
            assert!(outcome.holds, "{name}: {outcome:?}");
        }
    }
}

#[test]
fn family_manifest_round_trips() {
    let f = staircase_family(3).unwrap();
    let json = serde_json::to_string(&f).unwrap();
    let back: FamilyInstance = serde_json::from_str(&json).unwrap();
    assert_eq!(back.claims, f.claims);
    assert_eq!(back.language, f.language);
}

#[test]
fn intersection_checks_at_full_size() {
    assert!(bell_intersection_check(3).unwrap().all_ok());
    let r = ufs_regular_witness_check(3).unwrap();
    assert!(r.all_ok());
    assert!(r.rows.iter().all(|row| row.factorizations >= 2));
}

#[test]
fn ufs_dot_labels_show_both_runs() {
    let l = finite("ab", &["a", "ab"]);
    let text = dot::nfa_to_dot(&build_ufs_nfa(&l).unwrap(), "ufs");
    assert!(text.contains("‖"));
    assert!(text.contains("(a|a|10‖"));
}

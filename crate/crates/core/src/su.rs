//! Semi-unique factorization: every factorization has the same number of
//! terms.

use crate::alphabet::Word;
use crate::automata::Dfa;
use crate::cfg::{cfg_nonempty, pda_to_cfg, Cfg};
use crate::counter::{AcceptCondition, CounterTest, CounterTransition, OneCounterPda, Side};
use crate::error::{Error, Result};
use crate::oracle::{slice_by_predicate, MembershipOracle, Predicate};

/// One-counter machine accepting `L* − su(L)` for `L = L(m)`.
///
/// Two runs of `m` start at `q₀`. After reading a letter from a final state
/// a run may restart at `δ(q₀,a)`, which opens a new term. The counter holds
/// the absolute difference of the two term counts and the flag says which
/// run is ahead. In `F × F` an ε-move that requires a nonzero counter leads
/// to the accepting state.
pub fn build_su_counter_machine(m: &Dfa) -> Result<OneCounterPda> {
    if m.accepts_empty() {
        return Err(Error::EpsilonInLanguage);
    }
    let n = m.num_states();
    let q0 = m.initial();
    let mut pda = OneCounterPda::new(m.alphabet().clone(), AcceptCondition::CounterAny);
    let index =
        |p: usize, q: usize, side: Side| 2 * (p * n + q) + usize::from(side == Side::Bottom);
    for p in 0..n {
        for q in 0..n {
            for side in [Side::Top, Side::Bottom] {
                pda.add_state(format!("({p},{q},{})", side.name()));
            }
        }
    }
    let acc = pda.add_state("acc");
    pda.set_final(acc, true);
    pda.add_initial(index(q0, q0, Side::Top));

    for p in 0..n {
        for q in 0..n {
            for side in [Side::Top, Side::Bottom] {
                let from = index(p, q, side);
                if m.is_final(p) && m.is_final(q) {
                    pda.add_transition(CounterTransition {
                        from,
                        input: None,
                        test: CounterTest::Nonzero,
                        delta: 0,
                        to: acc,
                    })?;
                }
                for a in m.alphabet().symbols() {
                    let restart = m.step(q0, a);
                    let mut moves1 = vec![(m.step(p, a), 0)];
                    if m.is_final(p) {
                        moves1.push((restart, 1));
                    }
                    let mut moves2 = vec![(m.step(q, a), 0)];
                    if m.is_final(q) {
                        moves2.push((restart, 1));
                    }
                    for &(p2, r1) in &moves1 {
                        for &(q2, r2) in &moves2 {
                            pda.add_difference_step(from, Some(a), side, r1, r2, |s| {
                                index(p2, q2, s)
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(pda)
}

/// Grammar for `L* − su(L)`.
pub fn su_gap_grammar(m: &Dfa) -> Result<Cfg> {
    Ok(pda_to_cfg(&build_su_counter_machine(m)?))
}

/// Whether some word of `L*` has factorizations with different numbers of
/// terms, decided by CFG emptiness.
pub fn su_gap_exists(m: &Dfa) -> Result<bool> {
    Ok(cfg_nonempty(&su_gap_grammar(m)?))
}

/// `{x ∈ L* : |x| ≤ max_len, x ∈ su(L)}`.
pub fn su_slice(l: &MembershipOracle, max_len: usize) -> Result<Vec<Word>> {
    slice_by_predicate(l, Predicate::Su, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::DEFAULT_SLICE_CAP;
    use crate::oracle::{is_su, lstar_slice};

    fn finite(chars: &str, words: &[&str]) -> (MembershipOracle, Dfa) {
        let al = Alphabet::from_chars(chars).unwrap();
        let ws: Vec<Word> = words.iter().map(|w| al.parse_word(w).unwrap()).collect();
        (
            MembershipOracle::finite(al.clone(), ws.clone()),
            Dfa::from_words(al, &ws),
        )
    }

    #[test]
    fn machine_matches_oracle_on_named_languages() {
        for words in [
            &["a", "ab", "aab"][..],
            &["a", "ba"],
            &["a", "aa"],
            &["ab", "b", "ba"],
        ] {
            let (l, m) = finite("ab", words);
            let pda = build_su_counter_machine(&m).unwrap();
            for x in lstar_slice(&l, 8, DEFAULT_SLICE_CAP).unwrap() {
                let bound = x.len() as u32;
                assert_eq!(
                    pda.accepts_bounded(&x, bound),
                    !is_su(&x, &l).unwrap(),
                    "{words:?} {x:?}"
                );
            }
        }
    }

    #[test]
    fn gap_detection() {
        assert!(su_gap_exists(&finite("ab", &["a", "ab", "aab"]).1).unwrap());
        assert!(su_gap_exists(&finite("ab", &["a", "aa"]).1).unwrap());
        assert!(!su_gap_exists(&finite("ab", &["a", "ba"]).1).unwrap());
        // not a code, but each factorization has |x| − #b terms
        assert!(!su_gap_exists(&finite("abc", &["a", "ab", "bc", "c"]).1).unwrap());
    }

    #[test]
    fn rejects_epsilon() {
        let al = Alphabet::from_chars("a").unwrap();
        assert!(matches!(
            build_su_counter_machine(&Dfa::universal(al)),
            Err(Error::EpsilonInLanguage)
        ));
    }
}

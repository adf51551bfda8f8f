//! Generators for the concrete witness languages, each carrying the
//! properties it is known to have as executable claims.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::language::{Language, LanguageBody, LanguageSpec};
use crate::oracle::{factorizations, holds, Predicate};
use crate::su::su_gap_exists;
use crate::uf::is_code;
use crate::ufp::bell_intersection_check;
use crate::ufs::{shortest_ufs_violation, ufs_regular_witness_check};

/// Registered family names, as accepted by [`family`].
pub const FAMILY_NAMES: [&str; 7] = [
    "cycles",
    "staircase",
    "staircase-binary",
    "su-regular",
    "su-finite",
    "bell",
    "ufs-regular",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    WordCount {
        expected: usize,
    },
    EpsilonFree,
    MinimalDfaAtMost {
        states: usize,
    },
    IsCode {
        expected: bool,
    },
    /// Shortest-then-least word with two factorizations.
    ShortestAmbiguous {
        length: usize,
        word: Option<Vec<String>>,
    },
    ShortestUfsViolation {
        length: usize,
    },
    /// Per-factorization term counts of `word` (sorted) and its su membership.
    TermCounts {
        word: Vec<String>,
        counts: Vec<usize>,
        su_member: bool,
    },
    SuGap {
        expected: bool,
    },
    UfpIntersection {
        r_max: usize,
    },
    UfsIntersection {
        r_max: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub holds: bool,
}

impl Claim {
    pub fn description(&self) -> String {
        match self {
            Claim::WordCount { .. } => "number of words".into(),
            Claim::EpsilonFree => "empty word not in L".into(),
            Claim::MinimalDfaAtMost { .. } => "minimal DFA size bound".into(),
            Claim::IsCode { .. } => "L is a code".into(),
            Claim::ShortestAmbiguous { .. } => "shortest word with two factorizations".into(),
            Claim::ShortestUfsViolation { .. } => "shortest word outside ufs(L)".into(),
            Claim::TermCounts { word, .. } => format!("term counts of {}", word.concat()),
            Claim::SuGap { .. } => "some word of L* is not semi-unique".into(),
            Claim::UfpIntersection { r_max } => format!("ufp(L) ∩ R for exponents ≤ {r_max}"),
            Claim::UfsIntersection { r_max } => format!("ufs(L) ∩ R for exponents ≤ {r_max}"),
        }
    }

    pub fn evaluate(&self, lang: &Language) -> Result<ClaimOutcome> {
        let al = lang.alphabet();
        let (expected, actual, holds) = match self {
            Claim::WordCount { expected } => {
                let n = lang.finite_words()?.len();
                (expected.to_string(), n.to_string(), n == *expected)
            }
            Claim::EpsilonFree => {
                let e = lang.contains_empty();
                ("false".into(), e.to_string(), !e)
            }
            Claim::MinimalDfaAtMost { states } => {
                let n = lang.dfa().num_states();
                (format!("≤ {states}"), n.to_string(), n <= *states)
            }
            Claim::IsCode { expected } => {
                let c = is_code(lang.dfa())?.is_code();
                (expected.to_string(), c.to_string(), c == *expected)
            }
            Claim::ShortestAmbiguous { length, word } => {
                let found = is_code(lang.dfa())?.witness;
                let actual = found.as_ref().map_or("none".to_string(), |w| {
                    format!("{} (length {})", al.render(w), w.len())
                });
                let holds = match (&found, word) {
                    (Some(f), Some(tokens)) => f.len() == *length && al.tokens_of(f) == *tokens,
                    (Some(f), None) => f.len() == *length,
                    (None, _) => false,
                };
                let expected = match word {
                    Some(t) => format!("{} (length {length})", al.render(&al.word_from_tokens(t)?)),
                    None => format!("length {length}"),
                };
                (expected, actual, holds)
            }
            Claim::ShortestUfsViolation { length } => {
                let v = shortest_ufs_violation(lang)?;
                let actual = v
                    .word
                    .as_ref()
                    .map_or("none".into(), |w| w.len().to_string());
                let holds = v.word.as_ref().is_some_and(|w| w.len() == *length) && v.within_bound();
                (format!("{length} (≤ {})", v.bound), actual, holds)
            }
            Claim::TermCounts {
                word,
                counts,
                su_member,
            } => {
                let x = al.word_from_tokens(word)?;
                let oracle = lang.oracle();
                let mut found: Vec<usize> = factorizations(&x, &oracle, 64)?
                    .iter()
                    .map(|f| f.len())
                    .collect();
                found.sort_unstable();
                let su = holds(Predicate::Su, &x, &oracle)?;
                let show =
                    |c: &[usize], s: bool| format!("{c:?}, {}", if s { "su" } else { "not su" });
                (
                    show(counts, *su_member),
                    show(&found, su),
                    found == *counts && su == *su_member,
                )
            }
            Claim::SuGap { expected } => {
                let g = su_gap_exists(lang.dfa())?;
                (expected.to_string(), g.to_string(), g == *expected)
            }
            Claim::UfpIntersection { r_max } => {
                let report = bell_intersection_check(*r_max)?;
                let bad = report.failures().len();
                (
                    "0 failures".into(),
                    format!("{bad} failures of {}", report.rows.len()),
                    bad == 0,
                )
            }
            Claim::UfsIntersection { r_max } => {
                let report = ufs_regular_witness_check(*r_max)?;
                let bad = report.failures().len();
                (
                    "0 failures".into(),
                    format!("{bad} failures of {}", report.rows.len()),
                    bad == 0,
                )
            }
        };
        Ok(ClaimOutcome {
            description: self.description(),
            expected,
            actual,
            holds,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub name: String,
    pub parameter: Option<usize>,
    pub language: LanguageSpec,
    /// Regular restriction `R` the claims are about, where there is one.
    pub restriction: Option<String>,
    pub claims: Vec<Claim>,
}

impl FamilyInstance {
    pub fn check(&self) -> Result<Vec<ClaimOutcome>> {
        let lang = self.language.load()?;
        self.claims.iter().map(|c| c.evaluate(&lang)).collect()
    }
}

fn chars(text: &str) -> Vec<String> {
    text.chars().map(String::from).collect()
}

/// `b(aⁿ)* | (aⁿ⁺¹)*b`, whose shortest ambiguous word `b a^{n(n+1)} b` is
/// quadratic in the DFA size.
pub fn cycle_family(n: usize) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::InvalidSpec("cycles needs n ≥ 2".into()));
    }
    let pattern = format!("b({})*|({})*b", "a".repeat(n), "a".repeat(n + 1));
    let mut witness = vec!["b".to_string()];
    witness.extend(std::iter::repeat_n("a".to_string(), n * (n + 1)));
    witness.push("b".into());
    Ok(FamilyInstance {
        name: "cycles".into(),
        parameter: Some(n),
        language: LanguageSpec::regex(&["a", "b"], pattern),
        restriction: None,
        claims: vec![
            Claim::EpsilonFree,
            Claim::MinimalDfaAtMost { states: 2 * n + 5 },
            Claim::IsCode { expected: false },
            Claim::ShortestAmbiguous {
                length: n * n + n + 2,
                word: Some(witness),
            },
        ],
    })
}

fn staircase_words(n: usize) -> (Vec<String>, Vec<Vec<String>>) {
    let letter = |i: usize| format!("a{i}");
    let mut alphabet = vec!["b".to_string()];
    alphabet.extend((1..=n).map(letter));
    let mut words = vec![vec![letter(1)], vec![letter(n)]];
    for i in 1..n {
        let mut w = vec!["b".to_string(); i];
        w.push(letter(i + 1));
        words.push(w);
    }
    for i in 1..n {
        let mut w = vec![letter(i)];
        w.extend(std::iter::repeat_n("b".to_string(), i));
        words.push(w);
    }
    (alphabet, words)
}

/// The `2n` words `a₁, aₙ, bⁱa_{i+1}, a_i bⁱ` (`1 ≤ i < n`), whose shortest
/// ambiguous word `a₁ b a₂ b² ⋯ b^{n−1} aₙ` has length `n(n+1)/2`.
pub fn staircase_family(n: usize) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::InvalidSpec("staircase needs n ≥ 2".into()));
    }
    let (alphabet, words) = staircase_words(n);
    let mut witness = Vec::new();
    for i in 1..=n {
        witness.push(format!("a{i}"));
        if i < n {
            witness.extend(std::iter::repeat_n("b".to_string(), i));
        }
    }
    let length = n * (n + 1) / 2;
    Ok(FamilyInstance {
        name: "staircase".into(),
        parameter: Some(n),
        language: LanguageSpec::finite(&alphabet, words),
        restriction: None,
        claims: vec![
            Claim::WordCount { expected: 2 * n },
            Claim::EpsilonFree,
            Claim::MinimalDfaAtMost { states: 2 * n + 2 },
            Claim::ShortestAmbiguous {
                length,
                word: Some(witness),
            },
            Claim::ShortestUfsViolation { length },
        ],
    })
}

/// Bits per letter in [`staircase_binary_family`].
pub fn block_width(n: usize) -> usize {
    (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize
}

/// The staircase language over `{0, 1, b}`, with `a_i` written as `i − 1`
/// in binary on [`block_width`] bits.
pub fn staircase_binary_family(n: usize) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::InvalidSpec("staircase-binary needs n ≥ 2".into()));
    }
    let width = block_width(n);
    let (_, words) = staircase_words(n);
    let block = |token: &str| -> Vec<String> {
        match token.strip_prefix('a') {
            Some(i) => {
                let i: usize = i.parse().expect("letter index");
                (0..width)
                    .rev()
                    .map(|bit| ((i - 1) >> bit & 1).to_string())
                    .collect()
            }
            None => vec![token.to_string()],
        }
    };
    let words = words
        .iter()
        .map(|w| w.iter().flat_map(|t| block(t)).collect())
        .collect();
    Ok(FamilyInstance {
        name: "staircase-binary".into(),
        parameter: Some(n),
        language: LanguageSpec::finite(&["0", "1", "b"], words),
        restriction: None,
        claims: vec![
            Claim::WordCount { expected: 2 * n },
            Claim::EpsilonFree,
            Claim::IsCode { expected: false },
        ],
    })
}

/// `a0ⁱb1ʲc(23)^{k+1}d`: its three factorizations have `j+3`, `i+3` and
/// `k+2` terms.
pub fn su_regular_word(i: usize, j: usize, k: usize) -> Vec<String> {
    let mut w = String::from("a");
    w.push_str(&"0".repeat(i));
    w.push('b');
    w.push_str(&"1".repeat(j));
    w.push('c');
    w.push_str(&"23".repeat(k + 1));
    w.push('d');
    chars(&w)
}

/// A regular language over `{a,b,c,d,0,1,2,3}` whose su set, restricted to
/// `a0⁺b1⁺c(23)⁺d`, is not context-free.
pub fn su_regular_witness(max_exponent: usize) -> FamilyInstance {
    let pattern = "a0+b|1|c(23)+|23d|a|0|b1+c(23)+|a0+b1+c2|32|3d";
    let mut claims = vec![Claim::EpsilonFree, Claim::SuGap { expected: true }];
    for i in 1..=max_exponent {
        for j in 1..=max_exponent {
            for k in 1..=max_exponent {
                let mut counts = vec![j + 3, i + 3, k + 2];
                counts.sort_unstable();
                claims.push(Claim::TermCounts {
                    word: su_regular_word(i, j, k),
                    counts,
                    su_member: i == j && j + 1 == k,
                });
            }
        }
    }
    FamilyInstance {
        name: "su-regular".into(),
        parameter: Some(max_exponent),
        language: LanguageSpec::regex(&chars("abcd0123"), pattern),
        restriction: Some("a0+b1+c(23)+d".into()),
        claims,
    }
}

/// The 21-letter alphabet `0..8, a..l`.
pub fn su_finite_alphabet() -> Vec<String> {
    chars("012345678abcdefghijkl")
}

pub const SU_FINITE_WORDS: [&str; 29] = [
    "0ab", "cd", "ab", "cd127", "efgh", "efgh3", "4ijkl", "ijkl", "5", "68", "0abc", "dabc", "d1",
    "27e", "fg", "he", "h34ij", "klij", "kl568", "0a", "bcda", "bcd12", "7ef", "ghef", "gh34i",
    "jk", "li", "jkl56", "8",
];

/// `0(abcd)^m 127 (efgh)^n 34 (ijkl)^p 568`.
pub fn su_finite_word(m: usize, n: usize, p: usize) -> Vec<String> {
    chars(&format!(
        "0{}127{}34{}568",
        "abcd".repeat(m),
        "efgh".repeat(n),
        "ijkl".repeat(p)
    ))
}

/// A finite 29-word language whose su set, restricted to
/// `0(abcd)⁺127(efgh)⁺34(ijkl)⁺568`, is not context-free.
pub fn su_finite_witness(max_exponent: usize) -> FamilyInstance {
    let words = SU_FINITE_WORDS.iter().map(|w| chars(w)).collect();
    let mut claims = vec![
        Claim::WordCount { expected: 29 },
        Claim::EpsilonFree,
        Claim::SuGap { expected: true },
    ];
    for m in 1..=max_exponent {
        for n in 1..=max_exponent {
            for p in 1..=max_exponent {
                let mut counts = vec![2 * m + n + p + 2, m + 2 * n + p + 2, m + n + 2 * p + 2];
                counts.sort_unstable();
                claims.push(Claim::TermCounts {
                    word: su_finite_word(m, n, p),
                    counts,
                    su_member: m == n && n == p,
                });
            }
        }
    }
    FamilyInstance {
        name: "su-finite".into(),
        parameter: Some(max_exponent),
        language: LanguageSpec::finite(&su_finite_alphabet(), words),
        restriction: Some("0(abcd)+127(efgh)+34(ijkl)+568".into()),
        claims,
    }
}

pub const BELL_RESTRICTION: &str = "aa(ab)+(ac)+aa(ba)+(ca)+aaa";

/// `aa(ab)^r(ac)^s aa(ba)^t(ca)^q aaa` over an alphabet containing a, b, c.
pub fn bell_word(al: &Alphabet, r: usize, s: usize, t: usize, q: usize) -> Word {
    let text = format!(
        "aa{}{}aa{}{}aaa",
        "ab".repeat(r),
        "ac".repeat(s),
        "ba".repeat(t),
        "ca".repeat(q)
    );
    al.parse_word(&text).expect("alphabet contains a, b, c")
}

/// `{aa, aaa, ab, ac, ba, ca}`: finite, with ufp set not context-free.
pub fn bell_language() -> FamilyInstance {
    let words = ["aa", "aaa", "ab", "ac", "ba", "ca"]
        .iter()
        .map(|w| chars(w))
        .collect();
    FamilyInstance {
        name: "bell".into(),
        parameter: None,
        language: LanguageSpec::finite(&chars("abc"), words),
        restriction: Some(BELL_RESTRICTION.into()),
        claims: vec![
            Claim::WordCount { expected: 6 },
            Claim::EpsilonFree,
            Claim::UfpIntersection { r_max: 3 },
        ],
    }
}

/// `(ab)⁺(ac)⁺aa | (ba)⁺(ca)⁺ | aa | aaa`: regular, with ufs set not
/// context-free.
pub fn ufs_regular_language() -> FamilyInstance {
    FamilyInstance {
        name: "ufs-regular".into(),
        parameter: None,
        language: LanguageSpec::regex(&chars("abc"), "(ab)+(ac)+aa|(ba)+(ca)+|aa|aaa"),
        restriction: Some(BELL_RESTRICTION.into()),
        claims: vec![Claim::EpsilonFree, Claim::UfsIntersection { r_max: 3 }],
    }
}

/// Looks up a family by name. `n` is the size parameter for the
/// parametric families and the exponent bound for the su witnesses.
pub fn family(name: &str, n: Option<usize>) -> Result<FamilyInstance> {
    match name {
        "cycles" => cycle_family(n.unwrap_or(2)),
        "staircase" => staircase_family(n.unwrap_or(3)),
        "staircase-binary" => staircase_binary_family(n.unwrap_or(4)),
        "su-regular" => Ok(su_regular_witness(n.unwrap_or(3))),
        "su-finite" => Ok(su_finite_witness(n.unwrap_or(3))),
        "bell" => Ok(bell_language()),
        "ufs-regular" => Ok(ufs_regular_language()),
        other => Err(Error::InvalidSpec(format!(
            "unknown family {other:?}; expected one of {}",
            FAMILY_NAMES.join(", ")
        ))),
    }
}

/// Image of `w` under the map sending the `i`-th letter (from 1) to
/// `b aⁱ b`, over the alphabet `{a, b}`.
pub fn recode_word(w: &[crate::Symbol]) -> Word {
    let (a, b) = (crate::Symbol(0), crate::Symbol(1));
    let mut out = Vec::new();
    for s in w {
        out.push(b);
        out.extend(std::iter::repeat_n(a, s.index() + 1));
        out.push(b);
    }
    Word(out)
}

/// Homomorphic image of a finite language over `{a, b}` under
/// [`recode_word`]. The blocks are delimited by `b`, so the map is
/// injective and factorizations correspond one to one.
pub fn binary_recode(spec: &LanguageSpec) -> Result<LanguageSpec> {
    let LanguageBody::Finite { .. } = &spec.body else {
        return Err(Error::NotFinite);
    };
    let lang = spec.load()?;
    let binary = Alphabet::from_chars("ab")?;
    let words = lang
        .finite_words()?
        .iter()
        .map(|w| binary.tokens_of(&recode_word(w)))
        .collect();
    Ok(LanguageSpec::finite(&["a", "b"], words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_factorizations;

    fn tokens(text: &[&str]) -> Vec<String> {
        text.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn staircase_words_for_three() {
        let f = staircase_family(3).unwrap();
        let lang = f.language.load().unwrap();
        let shown: Vec<String> = lang
            .finite_words()
            .unwrap()
            .iter()
            .map(|w| lang.alphabet().render(w))
            .collect();
        assert_eq!(shown, ["a1", "a3", "b a2", "b b a3", "a1 b", "a2 b b"]);
    }

    #[test]
    fn binary_blocks() {
        assert_eq!(block_width(2), 1);
        assert_eq!(block_width(4), 2);
        assert_eq!(block_width(5), 3);
        let f = staircase_binary_family(4).unwrap();
        let LanguageBody::Finite { words } = &f.language.body else {
            panic!("finite family")
        };
        assert_eq!(words[0].concat(), "00");
        assert_eq!(words[1].concat(), "11");
    }

    #[test]
    fn su_witness_languages_are_well_formed() {
        assert_eq!(su_regular_word(1, 1, 1).concat(), "a0b1c2323d");
        assert_eq!(su_finite_word(1, 1, 1).concat(), "0abcd127efgh34ijkl568");
        let lang = su_finite_witness(1).language.load().unwrap();
        assert_eq!(lang.alphabet().len(), 21);
        assert_eq!(lang.finite_words().unwrap().len(), 29);
        su_regular_witness(1).language.load().unwrap();
    }

    #[test]
    fn recoding_letters() {
        let spec = LanguageSpec::finite(&["x", "y"], vec![tokens(&["x"]), tokens(&["y", "x"])]);
        let r = binary_recode(&spec).unwrap();
        let LanguageBody::Finite { words } = &r.body else {
            panic!("finite")
        };
        assert_eq!(words[0].concat(), "bab");
        assert_eq!(words[1].concat(), "baabbab");
        let empty = LanguageSpec::finite(&["x"], vec![]);
        let LanguageBody::Finite { words } = binary_recode(&empty).unwrap().body else {
            panic!("finite")
        };
        assert!(words.is_empty());
    }

    #[test]
    fn recoding_preserves_counts() {
        let spec = LanguageSpec::finite(
            &["x", "y"],
            vec![tokens(&["x"]), tokens(&["x", "y"]), tokens(&["y"])],
        );
        let src = spec.load().unwrap();
        let dst = binary_recode(&spec).unwrap().load().unwrap();
        for x in crate::oracle::all_words(src.alphabet(), 5) {
            assert_eq!(
                count_factorizations(&x, &src.oracle(), 100),
                count_factorizations(&recode_word(&x), &dst.oracle(), 100)
            );
        }
    }

    #[test]
    fn unknown_family() {
        assert!(family("nope", None).is_err());
        for name in FAMILY_NAMES {
            family(name, Some(2)).unwrap();
        }
    }
}

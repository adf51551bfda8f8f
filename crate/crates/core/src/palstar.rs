//! Desk-scale check that the words of PALSTAR (concatenations of one or more
//! even-length palindromes over a binary alphabet) with a unique
//! factorization into PALSTAR words are exactly the prime ones, i.e. those
//! that are not a product of two or more PALSTAR words.

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::oracle::{all_words, count_factorizations, MembershipOracle};

pub fn binary_alphabet() -> Alphabet {
    Alphabet::from_chars("ab").expect("static alphabet")
}

pub fn is_even_palindrome(w: &[Symbol]) -> bool {
    !w.is_empty() && w.len().is_multiple_of(2) && w.iter().eq(w.iter().rev())
}

/// `w` is a concatenation of one or more even palindromes.
pub fn in_palstar(w: &[Symbol]) -> bool {
    let n = w.len();
    if n == 0 || n % 2 == 1 {
        return false;
    }
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for j in (2..=n).step_by(2) {
        ok[j] = (0..j)
            .step_by(2)
            .any(|i| ok[i] && is_even_palindrome(&w[i..j]));
    }
    ok[n]
}

/// `w ∈ PALSTAR` and no split `w = uv` has both halves in PALSTAR.
pub fn in_primepalstar(w: &[Symbol]) -> bool {
    in_palstar(w) && !(1..w.len()).any(|i| in_palstar(&w[..i]) && in_palstar(&w[i..]))
}

pub fn palstar_oracle() -> MembershipOracle {
    MembershipOracle::from_fn(binary_alphabet(), "PALSTAR", in_palstar)
}

pub fn even_palindrome_oracle() -> MembershipOracle {
    MembershipOracle::from_fn(binary_alphabet(), "even palindromes", is_even_palindrome)
}

/// `w ∈ uf(PALSTAR)`: exactly one factorization into PALSTAR words.
pub fn in_uf_palstar(w: &[Symbol], palstar: &MembershipOracle) -> bool {
    count_factorizations(w, palstar, 2) == 1
}

#[derive(Clone, Debug, Serialize)]
pub struct PalstarReport {
    pub max_len: usize,
    pub words_checked: usize,
    pub palstar: usize,
    pub primepalstar: usize,
    pub uf: usize,
    /// Words where uf-membership and PRIMEPALSTAR-membership disagree.
    pub mismatches: Vec<String>,
    /// Words with exactly one factorization into even palindromes that are
    /// nevertheless not prime (e.g. `aabb = (aa)(bb)`).
    pub unique_even_palindrome_split_not_prime: usize,
}

impl PalstarReport {
    pub fn sets_agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn palstar_uf_check(max_len: usize) -> PalstarReport {
    assert!(max_len <= 20, "desk-scale check is limited to length 20");
    let al = binary_alphabet();
    let palstar = palstar_oracle();
    let evens = even_palindrome_oracle();
    let mut report = PalstarReport {
        max_len,
        words_checked: 0,
        palstar: 0,
        primepalstar: 0,
        uf: 0,
        mismatches: Vec::new(),
        unique_even_palindrome_split_not_prime: 0,
    };
    for w in all_words(&al, max_len) {
        report.words_checked += 1;
        let prime = in_primepalstar(&w);
        let uf = in_uf_palstar(&w, &palstar);
        report.palstar += usize::from(in_palstar(&w));
        report.primepalstar += usize::from(prime);
        report.uf += usize::from(uf);
        if prime != uf {
            report.mismatches.push(al.render(&w));
        }
        if !prime && count_factorizations(&w, &evens, 2) == 1 {
            report.unique_even_palindrome_split_not_prime += 1;
        }
    }
    report
}

pub fn word(text: &str) -> Word {
    binary_alphabet().parse_word(text).expect("binary word")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_cases() {
        let p = palstar_oracle();
        let aa = word("aa");
        assert!(in_palstar(&aa) && in_primepalstar(&aa) && in_uf_palstar(&aa, &p));
        let a4 = word("aaaa");
        assert!(in_palstar(&a4) && !in_uf_palstar(&a4, &p) && !in_primepalstar(&a4));
        assert!(!in_palstar(&[]));
        assert!(!in_palstar(&word("ab")));
    }

    #[test]
    fn even_palindrome_count_differs_from_palstar_count() {
        let aabb = word("aabb");
        assert_eq!(count_factorizations(&aabb, &even_palindrome_oracle(), 2), 1);
        assert_eq!(count_factorizations(&aabb, &palstar_oracle(), 2), 2);
        assert!(!in_primepalstar(&aabb));
    }

    #[test]
    fn small_check_agrees() {
        let r = palstar_uf_check(8);
        assert!(r.sets_agree(), "{:?}", r.mismatches);
        assert_eq!(r.words_checked, (1 << 9) - 1);
        assert!(r.unique_even_palindrome_split_not_prime > 0);
    }
}

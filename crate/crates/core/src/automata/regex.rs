//! Regex dialect: symbol tokens, juxtaposition, `|`, postfix `*` and `+`
//! (Kleene plus), and parentheses. Whitespace between tokens is ignored.

use super::Nfa;
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Symbol(Symbol),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn union(&mut self) -> Result<Regex> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Regex::Union(branches)
        })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        match parts.len() {
            0 => self.error("expected a symbol or `(`"),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Regex::Concat(parts)),
        }
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    r = Regex::Star(Box::new(r));
                }
                Some('+') => {
                    self.pos += 1;
                    r = Regex::Plus(Box::new(r));
                }
                _ => return Ok(r),
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('*') | Some('+') => self.error("operator without operand"),
            Some(_) => {
                let (sym, len) = self.alphabet.match_at(&self.chars, self.pos)?;
                self.pos += len;
                Ok(Regex::Symbol(sym))
            }
            None => self.error("unexpected end of pattern"),
        }
    }
}

pub fn parse_regex(pattern: &str, alphabet: &Alphabet) -> Result<Regex> {
    let mut p = Parser {
        chars: pattern.chars().collect(),
        pos: 0,
        alphabet,
    };
    let r = p.union()?;
    if p.peek().is_some() {
        return p.error("unbalanced `)`");
    }
    Ok(r)
}

/// Thompson fragments with explicit ε-edges, later eliminated.
struct EpsNfa {
    eps: Vec<Vec<usize>>,
    edges: Vec<Vec<(Symbol, usize)>>,
}

impl EpsNfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns (entry, exit) of the fragment for `r`.
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Symbol(s) => {
                let (i, o) = (self.state(), self.state());
                self.edges[i].push((*s, o));
                (i, o)
            }
            Regex::Concat(parts) => {
                let frags: Vec<_> = parts.iter().map(|p| self.build(p)).collect();
                for w in frags.windows(2) {
                    self.eps[w[0].1].push(w[1].0);
                }
                (frags[0].0, frags[frags.len() - 1].1)
            }
            Regex::Union(branches) => {
                let (i, o) = (self.state(), self.state());
                for b in branches {
                    let (bi, bo) = self.build(b);
                    self.eps[i].push(bi);
                    self.eps[bo].push(o);
                }
                (i, o)
            }
            Regex::Star(inner) | Regex::Plus(inner) => {
                let (i, o) = (self.state(), self.state());
                let (bi, bo) = self.build(inner);
                self.eps[i].push(bi);
                self.eps[bo].push(bi);
                self.eps[bo].push(o);
                if matches!(r, Regex::Star(_)) {
                    self.eps[i].push(o);
                }
                (i, o)
            }
        }
    }

    fn closure(&self, q: usize) -> Vec<usize> {
        let mut seen = vec![false; self.eps.len()];
        let mut stack = vec![q];
        seen[q] = true;
        let mut out = Vec::new();
        while let Some(p) = stack.pop() {
            out.push(p);
            for &t in &self.eps[p] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        out
    }
}

/// Compiles `pattern` into an ε-free NFA restricted to its reachable states.
pub fn compile_regex(pattern: &str, alphabet: &Alphabet) -> Result<Nfa> {
    let regex = parse_regex(pattern, alphabet)?;
    let mut t = EpsNfa {
        eps: Vec::new(),
        edges: Vec::new(),
    };
    let (entry, exit) = t.build(&regex);

    // q reads a from any state of its closure; q accepts if its closure holds the exit.
    let n = t.eps.len();
    let closures: Vec<Vec<usize>> = (0..n).map(|q| t.closure(q)).collect();
    let mut index = vec![usize::MAX; n];
    let mut order = vec![entry];
    index[entry] = 0;
    let mut i = 0;
    let mut moves: Vec<Vec<(Symbol, usize)>> = Vec::new();
    while i < order.len() {
        let q = order[i];
        let mut out = Vec::new();
        for &p in &closures[q] {
            for &(s, target) in &t.edges[p] {
                if index[target] == usize::MAX {
                    index[target] = order.len();
                    order.push(target);
                }
                out.push((s, index[target]));
            }
        }
        moves.push(out);
        i += 1;
    }
    let mut nfa = Nfa::new(alphabet.clone(), order.len());
    for (from, out) in moves.into_iter().enumerate() {
        for (s, to) in out {
            nfa.add_transition(from, s, to);
        }
    }
    for (new, &old) in order.iter().enumerate() {
        if closures[old].contains(&exit) {
            nfa.set_final(new, true);
        }
    }
    nfa.add_initial(0);
    Ok(nfa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::enumerate_slice;

    fn slice(pattern: &str, chars: &str, len: usize) -> Vec<String> {
        let al = Alphabet::from_chars(chars).unwrap();
        let nfa = compile_regex(pattern, &al).unwrap();
        enumerate_slice(&nfa, len)
            .unwrap()
            .iter()
            .map(|w| al.render(w))
            .collect()
    }

    #[test]
    fn star_of_a_letter() {
        assert_eq!(slice("a*", "a", 3), ["ε", "a", "aa", "aaa"]);
    }

    #[test]
    fn plus_is_kleene_plus() {
        assert_eq!(slice("a0+b", "ab01", 4), ["a0b", "a00b"]);
    }

    #[test]
    fn union_of_two_counting_branches() {
        // b(aa)* | (aaa)*b, listed by hand up to length 6
        assert_eq!(
            slice("b(aa)*|(aaa)*b", "ab", 6),
            ["b", "baa", "aaab", "baaaa"]
        );
    }

    #[test]
    fn parse_errors() {
        let al = Alphabet::from_chars("ab").unwrap();
        for bad in ["a|", "|a", "(a", "a)", "*a", "()", ""] {
            assert!(
                matches!(compile_regex(bad, &al), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
        assert!(matches!(
            compile_regex("ac", &al),
            Err(Error::UnknownSymbol { position: 1, .. })
        ));
    }

    #[test]
    fn multi_character_tokens() {
        let al = Alphabet::new(["b", "a1", "a2"]).unwrap();
        let nfa = compile_regex("a1 | b a2", &al).unwrap();
        let got: Vec<_> = enumerate_slice(&nfa, 3)
            .unwrap()
            .iter()
            .map(|w| al.render(w))
            .collect();
        assert_eq!(got, ["a1", "b a2"]);
    }
}

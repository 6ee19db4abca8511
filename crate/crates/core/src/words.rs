//! Signed alphabets and free-group words.
//!
//! A generator is a lowercase ASCII letter; its formal inverse is written with
//! the matching uppercase letter, so `"abA"` is the word a b a⁻¹. The empty
//! word is written `1` (the empty string is accepted on input as well).

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A signed letter x or x⁻¹ of Ã = A ∪ A⁻¹.
///
/// Letters are numbered `2 * generator + sign`, which makes the order
/// a < a⁻¹ < b < b⁻¹ < ... the declared generator order used for shortlex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// Terminal symbol of grammars and marked automata: a letter or the marker `$`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Letter(Letter),
    Marker,
}

impl Term {
    pub fn letter(self) -> Option<Letter> {
        match self {
            Term::Letter(l) => Some(l),
            Term::Marker => None,
        }
    }
}

impl From<Letter> for Term {
    fn from(l: Letter) -> Self {
        Term::Letter(l)
    }
}

/// An ordered set of generator symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<Vec<char>>,
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self> {
        Self::from_chars(
            symbols
                .chars()
                .filter(|c| !matches!(c, ',' | ' '))
                .collect(),
        )
    }

    pub fn from_chars(symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Malformed("alphabet must be nonempty".into()));
        }
        for (i, c) in symbols.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::Malformed(format!(
                    "generator {c:?} is not a lowercase letter"
                )));
            }
            if symbols[..i].contains(c) {
                return Err(Error::Malformed(format!("generator {c:?} declared twice")));
            }
        }
        Ok(Alphabet {
            symbols: Arc::new(symbols),
        })
    }

    /// Smallest alphabet containing the generators of both, in sorted order.
    pub fn merge(&self, other: &Alphabet) -> Alphabet {
        let mut all: Vec<char> = self
            .symbols
            .iter()
            .chain(other.symbols.iter())
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        Alphabet {
            symbols: Arc::new(all),
        }
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Number of generators |A|.
    pub fn rank(&self) -> usize {
        self.symbols.len()
    }

    /// Number of signed letters |Ã| = 2|A|.
    pub fn size(&self) -> usize {
        2 * self.symbols.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.size()).map(Letter::from_index)
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        l.index() < self.size()
    }

    pub fn position(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    pub fn letter(&self, c: char) -> Result<Letter> {
        let lower = c.to_ascii_lowercase();
        match self.position(lower) {
            Some(g) if c.is_ascii_alphabetic() => Ok(Letter::new(g, c.is_ascii_uppercase())),
            _ => Err(Error::Malformed(format!(
                "letter {c:?} outside alphabet {self}"
            ))),
        }
    }

    pub fn letter_char(&self, l: Letter) -> char {
        let c = self.symbols[l.generator()];
        if l.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn term_char(&self, t: Term) -> char {
        match t {
            Term::Letter(l) => self.letter_char(l),
            Term::Marker => '$',
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" || text == "ε" {
            return Ok(Word::empty());
        }
        text.chars().map(|c| self.letter(c)).collect()
    }

    /// Same as [`Alphabet::parse_word`] but also accepts `$`.
    pub fn parse_terms(&self, text: &str) -> Result<Vec<Term>> {
        let text = text.trim();
        if text == "1" || text == "ε" {
            return Ok(Vec::new());
        }
        text.chars()
            .map(|c| {
                if c == '$' {
                    Ok(Term::Marker)
                } else {
                    self.letter(c).map(Term::Letter)
                }
            })
            .collect()
    }

    pub fn render(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.letter_char(l)).collect()
    }

    pub fn render_terms(&self, w: &[Term]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&t| self.term_char(t)).collect()
    }

    /// Checks that every letter of `w` belongs to this alphabet.
    pub fn validate(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| !self.contains_letter(**l)) {
            Some(l) => Err(Error::Malformed(format!(
                "letter index {} outside alphabet {self}",
                l.index()
            ))),
            None => Ok(()),
        }
    }

    /// Re-indexes a letter of `self` into the (super-)alphabet `target`.
    pub fn translate(&self, l: Letter, target: &Alphabet) -> Result<Letter> {
        let c = self.symbols[l.generator()];
        let g = target
            .position(c)
            .ok_or_else(|| Error::Malformed(format!("generator {c:?} missing from {target}")))?;
        Ok(Letter::new(g, l.is_inverse()))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.symbols.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word over Ã. Equality is letter-by-letter; use [`free_reduce`] for group equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Length first, then lexicographic in letter order.
pub fn shortlex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A freely reduced word: no factor x x⁻¹.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct ReducedWord(Word);

impl ReducedWord {
    pub fn new(w: Word) -> Result<Self> {
        if w.is_reduced() {
            Ok(ReducedWord(w))
        } else {
            Err(Error::Precondition("word is not freely reduced".into()))
        }
    }

    pub fn empty() -> Self {
        ReducedWord(Word::empty())
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    /// True iff empty or the first letter is not the inverse of the last.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => f != l.inverse(),
            _ => true,
        }
    }
}

impl Deref for ReducedWord {
    type Target = Word;
    fn deref(&self) -> &Word {
        &self.0
    }
}

/// Unique reduced word representing the same free-group element.
pub fn free_reduce(w: &[Letter]) -> ReducedWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    ReducedWord(Word(out))
}

/// Formal inverse: reversed, every letter flipped.
pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Precondition-checked form of [`ReducedWord::is_cyclically_reduced`].
pub fn is_cyclically_reduced(w: &[Letter]) -> Result<bool> {
    Ok(ReducedWord::new(Word::from_letters(w.to_vec()))?.is_cyclically_reduced())
}

/// Splits `w` as conj⁻¹ · core · conj with `core` cyclically reduced.
///
/// `conj` is the suffix of the reduced form that was stripped off.
pub fn cyclic_reduce(w: &[Letter]) -> (ReducedWord, ReducedWord) {
    let r = free_reduce(w).into_word().into_letters();
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == r[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    let core = Word(r[lo..hi].to_vec());
    let conj = Word(r[hi..].to_vec());
    (ReducedWord(conj), ReducedWord(core))
}

/// Free-group conjugacy: cyclic cores agree up to cyclic permutation.
pub fn conjugate_oracle(x: &[Letter], y: &[Letter]) -> bool {
    let (_, cx) = cyclic_reduce(x);
    let (_, cy) = cyclic_reduce(y);
    if cx.len() != cy.len() {
        return false;
    }
    if cx.is_empty() {
        return true;
    }
    let doubled: Vec<Letter> = cx.iter().chain(cx.iter()).copied().collect();
    doubled.windows(cy.len()).any(|win| win == &cy[..])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(free_reduce(&w("aA")).as_word(), &w("1"));
        assert_eq!(free_reduce(&w("abBa")).as_word(), &w("aa"));
        assert_eq!(free_reduce(&w("bAaBb")).as_word(), &w("b"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&w("ab")), w("BA"));
        assert_eq!(invert(&w("1")), w("1"));
        assert_eq!(invert(&w("AA")), w("aa"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, k) = cyclic_reduce(&w("abA"));
        assert_eq!((c.as_word(), k.as_word()), (&w("A"), &w("b")));
        let (c, k) = cyclic_reduce(&w("baBa"));
        assert_eq!((c.as_word(), k.as_word()), (&w("1"), &w("baBa")));
        let (c, k) = cyclic_reduce(&w("abbA"));
        assert_eq!((c.as_word(), k.as_word()), (&w("A"), &w("bb")));
    }

    #[test]
    fn cyclically_reduced_predicate() {
        assert!(is_cyclically_reduced(&w("ab")).unwrap());
        assert!(!is_cyclically_reduced(&w("abA")).unwrap());
        assert!(is_cyclically_reduced(&w("1")).unwrap());
        assert!(matches!(
            is_cyclically_reduced(&w("aA")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn conjugacy_examples() {
        assert!(conjugate_oracle(&w("abA"), &w("b")));
        assert!(conjugate_oracle(&w("ab"), &w("ba")));
        // rotations of aab: aab, aba, baa; none equals abb
        assert!(!conjugate_oracle(&w("aab"), &w("abb")));
    }

    #[test]
    fn letter_outside_alphabet() {
        assert!(matches!(ab().parse_word("ac"), Err(Error::Malformed(_))));
        assert!(Alphabet::new("aa").is_err());
        assert!(Alphabet::new("").is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(ab().render(&w("abA")), "abA");
        assert_eq!(ab().render(&w("")), "1");
    }
}

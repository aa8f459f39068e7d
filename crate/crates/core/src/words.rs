//! Free group alphabets and freely reduced words.
//!
//! Letters are signed generator indices. Generators `1..=26` render as
//! `a..z` with inverses `A..Z`; larger indices render as `g27` / `G27`.
//! Shortlex order uses `a < A < b < B < ...` on letters.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A free alphabet of a given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Alphabet> {
        if rank == 0 {
            return Err(Error::Precondition("alphabet rank must be at least 1".into()));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Number of letters including inverses.
    pub fn letter_count(self) -> usize {
        2 * self.rank
    }

    pub fn generators(self) -> impl Iterator<Item = Word> {
        (1..=self.rank).map(move |i| Word::generator(self, i).expect("index within rank"))
    }
}

/// A generator or inverse generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter(i32);

impl Letter {
    /// `generator` is 1-based.
    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(generator >= 1, "generators are 1-based");
        let g = generator as i32;
        Letter(if inverse { -g } else { g })
    }

    pub fn from_signed(value: i32) -> Option<Letter> {
        (value != 0).then_some(Letter(value))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Dense index in `0..2*rank`; `key ^ 1` is the inverse letter.
    pub fn key(self) -> usize {
        2 * (self.generator() - 1) + usize::from(self.is_inverse())
    }

    pub fn from_key(key: usize) -> Letter {
        Letter::new(key / 2 + 1, key % 2 == 1)
    }

    pub fn exponent(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator();
        if g <= 26 {
            let base = if self.is_inverse() { b'A' } else { b'a' };
            write!(f, "{}", (base + (g - 1) as u8) as char)
        } else if self.is_inverse() {
            write!(f, "G{g}")
        } else {
            write!(f, "g{g}")
        }
    }
}

/// A freely reduced word. Reduction happens at every constructor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&letter.inverse()) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

impl Word {
    pub fn identity(alphabet: Alphabet) -> Word {
        Word { alphabet, letters: Vec::new() }
    }

    pub fn generator(alphabet: Alphabet, index: usize) -> Result<Word> {
        if index == 0 {
            return Err(Error::IndexOutOfRange { index, rank: alphabet.rank });
        }
        Word::from_letters(alphabet, [Letter::new(index, false)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(alphabet: Alphabet, letters: impl IntoIterator<Item = Letter>) -> Result<Word> {
        let mut stack = Vec::new();
        for letter in letters {
            if letter.generator() > alphabet.rank {
                return Err(Error::IndexOutOfRange { index: letter.generator(), rank: alphabet.rank });
            }
            push_reduced(&mut stack, letter);
        }
        Ok(Word { alphabet, letters: stack })
    }

    /// `reduce` on signed indices (`-i` is the inverse of generator `i`).
    pub fn from_signed(alphabet: Alphabet, raw: &[i32]) -> Result<Word> {
        let letters = raw
            .iter()
            .map(|&v| Letter::from_signed(v).ok_or(Error::IndexOutOfRange { index: 0, rank: alphabet.rank }))
            .collect::<Result<Vec<_>>>()?;
        Word::from_letters(alphabet, letters)
    }

    /// Letters already known to be reduced and in range.
    pub(crate) fn from_reduced_unchecked(alphabet: Alphabet, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        Word { alphabet, letters }
    }

    /// Parses the default letter names (`a b A`, `abA`, `g27 G27`).
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Word> {
        let letters = crate::text::parse_letters(text, 1)?;
        Word::from_letters(alphabet, letters)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet.rank, right: other.alphabet.rank });
        }
        Ok(())
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same(other)?;
        Ok(self.mul(other))
    }

    /// Product without the alphabet check; panics on mismatch in debug builds.
    pub(crate) fn mul(&self, other: &Word) -> Word {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        Word { alphabet: self.alphabet, letters: stack }
    }

    pub fn invert(&self) -> Word {
        Word { alphabet: self.alphabet, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.alphabet);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self * other * self^-1`
    pub fn conjugate(&self, other: &Word) -> Result<Word> {
        Ok(self.concat(other)?.mul(&self.invert()))
    }

    /// Splits `w = c * core * c^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut i = 0;
        while i < l.len() / 2 && l[i] == l[l.len() - 1 - i].inverse() {
            i += 1;
        }
        let core = l[i..l.len() - i].to_vec();
        let conj = l[..i].to_vec();
        (Word { alphabet: self.alphabet, letters: core }, Word { alphabet: self.alphabet, letters: conj })
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.letters.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Signed count of generator `index` (1-based).
    pub fn exponent_sum(&self, index: usize) -> Result<i64> {
        if index == 0 || index > self.alphabet.rank {
            return Err(Error::IndexOutOfRange { index, rank: self.alphabet.rank });
        }
        Ok(self.letters.iter().filter(|l| l.generator() == index).map(|l| l.exponent()).sum())
    }

    /// Exponent sums of every generator, in order.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0; self.alphabet.rank];
        for l in &self.letters {
            v[l.generator() - 1] += l.exponent();
        }
        v
    }

    /// Re-embeds the word in a larger (or equal) alphabet, shifting generators by `offset`.
    pub fn embed(&self, alphabet: Alphabet, offset: usize) -> Result<Word> {
        let letters = self.letters.iter().map(|l| Letter::new(l.generator() + offset, l.is_inverse()));
        Word::from_letters(alphabet, letters)
    }

    /// Inverse of [`Word::embed`]; fails if a letter falls outside the window.
    pub fn restrict(&self, alphabet: Alphabet, offset: usize) -> Result<Word> {
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let g = l.generator();
                if g <= offset || g - offset > alphabet.rank {
                    Err(Error::IndexOutOfRange { index: g, rank: alphabet.rank })
                } else {
                    Ok(Letter::new(g - offset, l.is_inverse()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Word::from_letters(alphabet, letters)
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other).then_with(|| self.alphabet.rank.cmp(&other.alphabet.rank))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Every freely reduced word of length at most `max_len`, in shortlex order.
pub fn enumerate_words(alphabet: Alphabet, max_len: usize) -> WordEnumerator {
    WordEnumerator { alphabet, max_len, current: Some(Vec::new()) }
}

/// Nonempty reduced words of length at most `max_len`, shortlex.
pub fn enumerate_nonempty(alphabet: Alphabet, max_len: usize) -> impl Iterator<Item = Word> {
    enumerate_words(alphabet, max_len).skip(1)
}

pub struct WordEnumerator {
    alphabet: Alphabet,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl WordEnumerator {
    fn min_after(prev: Option<usize>) -> usize {
        match prev {
            Some(p) if p ^ 1 == 0 => 1,
            _ => 0,
        }
    }

    fn advance(&self, keys: &[usize]) -> Option<Vec<usize>> {
        let top = self.alphabet.letter_count();
        let mut keys = keys.to_vec();
        for pos in (0..keys.len()).rev() {
            let prev = if pos == 0 { None } else { Some(keys[pos - 1]) };
            let mut k = keys[pos] + 1;
            while k < top && prev.is_some_and(|p| p ^ 1 == k) {
                k += 1;
            }
            if k < top {
                keys[pos] = k;
                for i in pos + 1..keys.len() {
                    keys[i] = Self::min_after(Some(keys[i - 1]));
                }
                return Some(keys);
            }
        }
        let n = keys.len() + 1;
        if n > self.max_len {
            return None;
        }
        let mut next = vec![0; n];
        for i in 1..n {
            next[i] = Self::min_after(Some(next[i - 1]));
        }
        Some(next)
    }
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let keys = self.current.take()?;
        self.current = self.advance(&keys);
        let letters = keys.iter().map(|&k| Letter::from_key(k)).collect();
        Some(Word::from_reduced_unchecked(self.alphabet, letters))
    }
}

/// Number of reduced words of length exactly `len` in rank `rank`.
pub fn sphere_size(rank: usize, len: usize) -> u64 {
    if len == 0 {
        1
    } else {
        2 * rank as u64 * (2 * rank as u64 - 1).pow(len as u32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(f2(), s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w("a b B A").is_identity());
        assert_eq!(w("a A a"), w("a"));
        assert_eq!(w("a b a").len(), 3);
        assert!(matches!(Word::from_signed(f2(), &[1, 3]), Err(Error::IndexOutOfRange { index: 3, rank: 2 })));
    }

    #[test]
    fn concat_and_invert() {
        assert!(w("a b").concat(&w("B A")).unwrap().is_identity());
        assert_eq!(w("a b").invert(), w("B A"));
        assert_eq!(w("a").concat(&w("b")).unwrap(), w("a b"));
        let f3 = Alphabet::new(3).unwrap();
        assert!(w("a").concat(&Word::identity(f3)).is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("a b A").cyclic_reduce(), (w("b"), w("a")));
        assert_eq!(w("b a").cyclic_reduce(), (w("b a"), w("")));
        assert_eq!(w("").cyclic_reduce(), (w(""), w("")));
        let x = w("a b a b A");
        let (core, c) = x.cyclic_reduce();
        assert_eq!(c.mul(&core).mul(&c.invert()), x);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("a b a").exponent_sum(1).unwrap(), 2);
        assert_eq!(w("a B A").exponent_sum(2).unwrap(), -1);
        assert_eq!(w("a b A B").exponent_sum(1).unwrap(), 0);
        assert!(w("a").exponent_sum(3).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let f1 = Alphabet::new(1).unwrap();
        let words: Vec<String> = enumerate_words(f1, 2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["", "a", "A", "a a", "A A"]);
        assert_eq!(enumerate_words(f2(), 1).count(), 5);
        // closed form 1 + sum 4*3^(k-1)
        let closed: u64 = (0..=3).map(|k| sphere_size(2, k)).sum();
        assert_eq!(closed, 53);
        assert_eq!(enumerate_words(f2(), 3).count() as u64, closed);
    }

    #[test]
    fn enumeration_is_strict_shortlex() {
        let all: Vec<Word> = enumerate_words(Alphabet::new(3).unwrap(), 4).collect();
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        assert!(all.iter().all(|w| Word::from_letters(w.alphabet(), w.letters().to_vec()).unwrap() == *w));
    }

    #[test]
    fn rendering_large_generators() {
        let big = Alphabet::new(30).unwrap();
        let x = Word::from_signed(big, &[1, 27, -28, -2]).unwrap();
        assert_eq!(x.to_string(), "a g27 G28 B");
        assert_eq!(Word::parse(big, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn group_laws_exhaustive_small() {
        let words: Vec<Word> = enumerate_words(f2(), 4).collect();
        for u in &words {
            assert!(u.mul(&u.invert()).is_identity());
            assert_eq!(u.invert().invert(), *u);
        }
        let short: Vec<Word> = enumerate_words(f2(), 2).collect();
        for u in &short {
            for v in &short {
                for x in &short {
                    assert_eq!(u.mul(v).mul(x), u.mul(&v.mul(x)));
                }
            }
        }
    }
}

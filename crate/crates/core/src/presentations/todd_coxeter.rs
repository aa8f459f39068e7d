//! HLT coset enumeration with coincidence processing.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub const DEFAULT_MAX_COSETS: usize = 10_000;

const NONE: u32 = u32::MAX;

/// A complete coset table, numbered breadth-first from the subgroup coset 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    alphabet: Alphabet,
    index: usize,
    /// `table[c * 2r + key]`
    table: Vec<u32>,
}

impl CosetTable {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn action(&self, coset: usize, letter: Letter) -> usize {
        self.table[coset * self.alphabet.letter_count() + letter.key()] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.action(c, l))
    }

    /// Rows as lists of targets, one column per letter key.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let stride = self.alphabet.letter_count();
        self.table.chunks(stride).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    /// Every relator closes at every coset and every subgroup generator closes at coset 0.
    pub fn is_consistent(&self, p: &Presentation, subgroup: &[Word]) -> bool {
        (0..self.index).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c))
            && subgroup.iter().all(|h| self.trace(0, h) == 0)
    }
}

struct Enumerator {
    stride: usize,
    table: Vec<u32>,
    /// forwarding pointers; `parent[c] == c` for live cosets
    parent: Vec<u32>,
    queue: VecDeque<usize>,
    max: usize,
}

impl Enumerator {
    fn get(&self, c: usize, k: usize) -> u32 {
        self.table[c * self.stride + k]
    }

    fn set(&mut self, c: usize, k: usize, v: u32) {
        self.table[c * self.stride + k] = v;
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, k: usize) -> Result<()> {
        let d = self.parent.len();
        if d >= self.max {
            return Err(Error::CosetOverflow { limit: self.max });
        }
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.stride));
        self.set(c, k, d as u32);
        self.set(d, k ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        while self.parent[c] as usize != root {
            let next = self.parent[c] as usize;
            self.parent[c] = root as u32;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo as u32;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for k in 0..self.stride {
                let d = self.get(g, k);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                self.set(d, k ^ 1, NONE);
                let (mu, nu) = (self.rep(g), self.rep(d));
                let fwd = self.get(mu, k);
                if fwd != NONE {
                    self.merge(nu, fwd as usize);
                } else {
                    let back = self.get(nu, k ^ 1);
                    if back != NONE {
                        self.merge(mu, back as usize);
                    } else {
                        self.set(mu, k, nu as u32);
                        self.set(nu, k ^ 1, mu as u32);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, word[j as usize] ^ 1) != NONE {
                b = self.get(b, word[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, word[i], b as u32);
                self.set(b, word[i] ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Precondition("coset limit must be at least 1".into()));
    }
    let alphabet = p.alphabet();
    for h in subgroup {
        if h.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: h.alphabet().rank() });
        }
    }
    let stride = alphabet.letter_count();
    let as_keys = |w: &Word| w.letters().iter().map(|l| l.key()).collect::<Vec<_>>();
    let mut e =
        Enumerator { stride, table: vec![NONE; stride], parent: vec![0], queue: VecDeque::new(), max: max_cosets };
    for h in subgroup {
        e.scan_and_fill(0, &as_keys(h))?;
    }
    let relators: Vec<Vec<usize>> = p.relators().iter().map(as_keys).collect();
    let mut c = 0;
    while c < e.parent.len() {
        for r in &relators {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        if e.live(c) {
            for k in 0..stride {
                if e.get(c, k) == NONE {
                    e.define(c, k)?;
                }
            }
        }
        c += 1;
    }
    // standardize: breadth-first from coset 0 over live cosets
    let mut label = vec![NONE; e.parent.len()];
    let mut order = vec![0usize];
    label[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for k in 0..stride {
            let t = e.get(c, k);
            if t == NONE {
                return Err(Error::IncompleteTable);
            }
            let t = e.rep(t as usize);
            if label[t] == NONE {
                label[t] = order.len() as u32;
                order.push(t);
            }
        }
        i += 1;
    }
    let mut table = Vec::with_capacity(order.len() * stride);
    for &c in &order {
        for k in 0..stride {
            let t = e.get(c, k) as usize;
            let t = e.rep(t);
            table.push(label[t]);
        }
    }
    Ok(CosetTable { alphabet, index: order.len(), table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(p: &Presentation, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| Word::parse(p.alphabet(), w).unwrap()).collect()
    }

    #[test]
    fn free_group_index_two() {
        let p = Presentation::free(2).unwrap();
        let h = words(&p, &["a a", "b", "a b A"]);
        let t = todd_coxeter(&p, &h, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.index(), 2);
        assert!(t.is_consistent(&p, &h));
    }

    #[test]
    fn surface_index_two() {
        let p = Presentation::orientable(2).unwrap();
        let h = words(&p, &["a a", "b", "c", "d", "a b A", "a c A", "a d A"]);
        let t = todd_coxeter(&p, &h, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.index(), 2);
        assert!(t.is_consistent(&p, &h));
    }

    #[test]
    fn whole_group_and_finite_groups() {
        let p = Presentation::orientable(2).unwrap();
        let gens: Vec<Word> = p.alphabet().generators().collect();
        assert_eq!(todd_coxeter(&p, &gens, 10).unwrap().index(), 1);
        // S3 = <a, b | a^2, b^3, (ab)^2>
        let s3 = Presentation::parse_relators(2, &["a a", "b b b", "a b a b"]).unwrap();
        let t = todd_coxeter(&s3, &[], 1000).unwrap();
        assert_eq!(t.index(), 6);
        assert!(t.is_consistent(&s3, &[]));
        // A5 = <a, b | a^2, b^3, (ab)^5> has order 60
        let a5 = Presentation::parse_relators(2, &["a a", "b b b", "a b a b a b a b a b"]).unwrap();
        assert_eq!(todd_coxeter(&a5, &[], 10_000).unwrap().index(), 60);
    }

    #[test]
    fn overflow_is_reported() {
        let p = Presentation::free(2).unwrap();
        let a = words(&p, &["a"]);
        assert_eq!(todd_coxeter(&p, &a, 50), Err(Error::CosetOverflow { limit: 50 }));
    }
}

//! Symmetrized relators, the metric piece condition and Dehn's algorithm.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    /// Longest common prefix of two distinct symmetrized relators.
    pub max_piece: usize,
    pub shortest_relator: usize,
    /// Every piece is shorter than a sixth of each relator it sits in.
    pub satisfies: bool,
}

/// All cyclic shifts of every relator and its inverse, without repeats.
pub fn symmetrized(p: &Presentation) -> Vec<Word> {
    let mut out = BTreeSet::new();
    for r in p.relators() {
        for w in [r.clone(), r.invert()] {
            let l = w.letters();
            for i in 0..l.len() {
                let rot: Vec<Letter> = l[i..].iter().chain(&l[..i]).copied().collect();
                out.insert(Word::from_reduced_unchecked(p.alphabet(), rot));
            }
        }
    }
    out.into_iter().collect()
}

fn common_prefix(x: &[Letter], y: &[Letter]) -> usize {
    x.iter().zip(y).take_while(|(a, b)| a == b).count()
}

pub fn piece_check(p: &Presentation) -> PieceReport {
    let rs = symmetrized(p);
    let mut max_piece = 0;
    let mut satisfies = true;
    for (i, s1) in rs.iter().enumerate() {
        for s2 in &rs[i + 1..] {
            let piece = common_prefix(s1.letters(), s2.letters());
            max_piece = max_piece.max(piece);
            if 6 * piece >= s1.len() || 6 * piece >= s2.len() {
                satisfies = false;
            }
        }
    }
    let shortest_relator = rs.iter().map(Word::len).min().unwrap_or(0);
    PieceReport { max_piece, shortest_relator, satisfies }
}

/// Decides `w = 1` by Dehn's algorithm; only valid under the piece condition,
/// which is checked first.
pub fn dehn_is_trivial(p: &Presentation, w: &Word) -> Result<bool> {
    if w.alphabet() != p.alphabet() {
        return Err(Error::AlphabetMismatch { left: p.alphabet().rank(), right: w.alphabet().rank() });
    }
    if !piece_check(p).satisfies {
        return Err(Error::NotSmallCancellation);
    }
    Ok(dehn_reduce(&symmetrized(p), w).is_identity())
}

/// Replaces the longest (then leftmost) subword that is more than half of a
/// symmetrized relator by the inverse of the remainder, until none is left.
pub(crate) fn dehn_reduce(rs: &[Word], w: &Word) -> Word {
    let mut cur = w.clone();
    loop {
        let l = cur.letters();
        let mut best: Option<(usize, usize, &Word)> = None;
        for i in 0..l.len() {
            for s in rs {
                let m = common_prefix(&l[i..], s.letters());
                if 2 * m > s.len() && best.is_none_or(|(_, bm, _)| m > bm) {
                    best = Some((i, m, s));
                }
            }
        }
        let Some((i, m, s)) = best else { return cur };
        let rest = &s.letters()[m..];
        let letters: Vec<Letter> = l[..i]
            .iter()
            .copied()
            .chain(rest.iter().rev().map(|x| x.inverse()))
            .chain(l[i + m..].iter().copied())
            .collect();
        cur = Word::from_letters(cur.alphabet(), letters).expect("same alphabet");
    }
}

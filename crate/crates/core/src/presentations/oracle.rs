//! Three-valued word equality across the group classes used elsewhere.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::dehn::{dehn_reduce, piece_check, symmetrized};
use super::klein::KleinElement;
use super::{AbelianMap, Presentation};
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupContext {
    Free,
    /// One cyclic factor per generator; order 0 means infinite cyclic.
    Abelian(Vec<u64>),
    Klein,
    SmallCancellation(Presentation),
    Presented(Presentation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict3 {
    Equal,
    NotEqual,
    Unknown,
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict3::Equal => "equal",
            Verdict3::NotEqual => "not-equal",
            Verdict3::Unknown => "unknown",
        })
    }
}

impl GroupContext {
    /// Checks the piece condition before accepting the presentation.
    pub fn small_cancellation(p: Presentation) -> Result<GroupContext> {
        if piece_check(&p).satisfies {
            Ok(GroupContext::SmallCancellation(p))
        } else {
            Err(Error::NotSmallCancellation)
        }
    }

    /// Chooses the strongest context the presentation admits.
    pub fn for_presentation(p: Presentation) -> GroupContext {
        if p.relators().is_empty() {
            GroupContext::Free
        } else if p == Presentation::klein() {
            GroupContext::Klein
        } else if piece_check(&p).satisfies {
            GroupContext::SmallCancellation(p)
        } else {
            GroupContext::Presented(p)
        }
    }
}

fn verdict(equal: bool) -> Verdict3 {
    if equal {
        Verdict3::Equal
    } else {
        Verdict3::NotEqual
    }
}

/// Deletes subwords that are whole cyclic shifts of a relator or its inverse.
fn delete_relators(rs: &[Word], w: &Word) -> Word {
    let mut cur = w.clone();
    'outer: loop {
        let l = cur.letters();
        for i in 0..l.len() {
            for s in rs {
                if l[i..].starts_with(s.letters()) {
                    let letters: Vec<Letter> = l[..i].iter().chain(&l[i + s.len()..]).copied().collect();
                    cur = Word::from_letters(cur.alphabet(), letters).expect("same alphabet");
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

pub fn equality_oracle(ctx: &GroupContext, u: &Word, v: &Word) -> Result<Verdict3> {
    Oracle::new(ctx.clone()).equal(u, v)
}

/// A context with its symmetrized relators and abelianization precomputed,
/// for repeated queries.
#[derive(Clone, Debug)]
pub struct Oracle {
    ctx: GroupContext,
    symmetrized: Vec<Word>,
    abelian: Option<AbelianMap>,
}

impl Oracle {
    pub fn new(ctx: GroupContext) -> Oracle {
        let (symmetrized, abelian) = match &ctx {
            GroupContext::SmallCancellation(p) => (symmetrized(p), None),
            GroupContext::Presented(p) => (symmetrized(p), Some(AbelianMap::new(p))),
            _ => (Vec::new(), None),
        };
        Oracle { ctx, symmetrized, abelian }
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<Verdict3> {
        self.is_trivial(&u.concat(&v.invert())?)
    }

    pub fn is_trivial(&self, diff: &Word) -> Result<Verdict3> {
        match &self.ctx {
            GroupContext::Free => Ok(verdict(diff.is_identity())),
            GroupContext::Abelian(orders) => {
                if orders.len() != diff.alphabet().rank() {
                    return Err(Error::AlphabetMismatch { left: orders.len(), right: diff.alphabet().rank() });
                }
                let e = diff.exponent_vector();
                Ok(verdict(
                    e.iter().zip(orders).all(|(&x, &o)| if o == 0 { x == 0 } else { x.rem_euclid(o as i64) == 0 }),
                ))
            }
            GroupContext::Klein => Ok(verdict(KleinElement::from_word(diff)?.is_identity())),
            GroupContext::SmallCancellation(p) => {
                check_alphabet(p, diff)?;
                Ok(verdict(dehn_reduce(&self.symmetrized, diff).is_identity()))
            }
            GroupContext::Presented(p) => {
                check_alphabet(p, diff)?;
                if delete_relators(&self.symmetrized, diff).is_identity() {
                    Ok(Verdict3::Equal)
                } else if !self.abelian.as_ref().expect("built with the context").is_trivial(diff) {
                    Ok(Verdict3::NotEqual)
                } else {
                    Ok(Verdict3::Unknown)
                }
            }
        }
    }
}

fn check_alphabet(p: &Presentation, w: &Word) -> Result<()> {
    if p.alphabet() != w.alphabet() {
        return Err(Error::AlphabetMismatch { left: p.alphabet().rank(), right: w.alphabet().rank() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(Alphabet::new(rank).unwrap(), s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(equality_oracle(&GroupContext::Free, &w(2, "a b"), &w(2, "a b")).unwrap(), Verdict3::Equal);
        let ns3 = GroupContext::Presented(Presentation::nonorientable(3).unwrap());
        // in the pair presentation NS3 = <a, b, c | a b A b c c>
        let pairs = GroupContext::for_presentation(Presentation::nonorientable_pairs(3).unwrap());
        assert!(matches!(pairs, GroupContext::Presented(_)));
        assert_eq!(equality_oracle(&pairs, &w(3, "c"), &w(3, "c b")).unwrap(), Verdict3::NotEqual);
        assert_eq!(equality_oracle(&ns3, &w(3, "a b"), &w(3, "b a")).unwrap(), Verdict3::Unknown);
        assert_eq!(equality_oracle(&ns3, &w(3, "a a b"), &w(3, "C C B")).unwrap(), Verdict3::Equal);
    }

    #[test]
    fn contexts_decide() {
        let ab = GroupContext::Abelian(vec![0, 2]);
        assert_eq!(equality_oracle(&ab, &w(2, "a b b"), &w(2, "a")).unwrap(), Verdict3::Equal);
        assert_eq!(equality_oracle(&ab, &w(2, "a b"), &w(2, "b")).unwrap(), Verdict3::NotEqual);
        assert_eq!(equality_oracle(&GroupContext::Klein, &w(2, "b a"), &w(2, "a B")).unwrap(), Verdict3::Equal);
        let s2 = GroupContext::small_cancellation(Presentation::orientable(2).unwrap()).unwrap();
        assert_eq!(equality_oracle(&s2, &w(4, "a b A B"), &w(4, "d c D C")).unwrap(), Verdict3::Equal);
        assert_eq!(equality_oracle(&s2, &w(4, "a b"), &w(4, "b a")).unwrap(), Verdict3::NotEqual);
        assert!(GroupContext::small_cancellation(Presentation::nonorientable(3).unwrap()).is_err());
        assert_eq!(GroupContext::for_presentation(Presentation::klein()), GroupContext::Klein);
    }
}

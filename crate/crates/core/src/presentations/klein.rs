//! Normal forms `a^m b^n` in `⟨a, b | a b A b⟩` and fixed subgroups of its endomorphisms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

/// `a^m b^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KleinElement {
    pub m: i64,
    pub n: i64,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl KleinElement {
    pub const IDENTITY: KleinElement = KleinElement { m: 0, n: 0 };
    pub const A: KleinElement = KleinElement { m: 1, n: 0 };
    pub const B: KleinElement = KleinElement { m: 0, n: 1 };

    pub fn new(m: i64, n: i64) -> KleinElement {
        KleinElement { m, n }
    }

    /// `b^n a^p = a^p b^(±n)`
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: KleinElement) -> KleinElement {
        KleinElement { m: self.m + other.m, n: sign(other.m) * self.n + other.n }
    }

    pub fn inverse(self) -> KleinElement {
        KleinElement { m: -self.m, n: -sign(self.m) * self.n }
    }

    pub fn pow(self, e: i64) -> KleinElement {
        let base = if e < 0 { self.inverse() } else { self };
        let mut out = KleinElement::IDENTITY;
        for _ in 0..e.unsigned_abs() {
            out = out.mul(base);
        }
        out
    }

    pub fn is_identity(self) -> bool {
        self == KleinElement::IDENTITY
    }

    /// Lies in the index-two subgroup `⟨a², b⟩`.
    pub fn is_even(self) -> bool {
        self.m.rem_euclid(2) == 0
    }

    pub fn from_word(w: &Word) -> Result<KleinElement> {
        if w.alphabet().rank() != 2 {
            return Err(Error::Precondition(format!("rank {} word in a rank 2 group", w.alphabet().rank())));
        }
        Ok(w.letters().iter().fold(KleinElement::IDENTITY, |acc, l| {
            let g = if l.generator() == 1 { KleinElement::A } else { KleinElement::B };
            acc.mul(if l.is_inverse() { g.inverse() } else { g })
        }))
    }

    pub fn size(self) -> u64 {
        self.m.unsigned_abs() + self.n.unsigned_abs()
    }
}

impl fmt::Display for KleinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{}", self.m, self.n)
    }
}

pub fn klein_normal_form(w: &Word) -> Result<(i64, i64)> {
    let k = KleinElement::from_word(w)?;
    Ok((k.m, k.n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FixClass {
    Whole,
    /// Contains an odd element and a rank two lattice of even ones, without
    /// being the whole group.
    KleinLike,
    Z2,
    Z,
    Trivial,
}

impl fmt::Display for FixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FixClass::Whole => "whole",
            FixClass::KleinLike => "klein-like",
            FixClass::Z2 => "Z^2",
            FixClass::Z => "Z",
            FixClass::Trivial => "1",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ns2Fix {
    pub class: FixClass,
    pub generators: Vec<KleinElement>,
    /// Fixed normal forms found in the box `|m|, |n| <= bound`.
    pub fixed_in_box: usize,
}

fn apply(images: &[KleinElement; 2], x: KleinElement) -> KleinElement {
    images[0].pow(x.m).mul(images[1].pow(x.n))
}

/// Hermite basis of the lattice spanned by integer vectors in the plane.
fn lattice_basis(vectors: &[(i64, i64)]) -> Vec<(i64, i64)> {
    // reduce on the first coordinate, then gcd the second coordinates of the rest
    let mut first: Option<(i64, i64)> = None;
    let mut second: i64 = 0;
    for &v in vectors {
        let mut v = v;
        if let Some(mut p) = first {
            while v.0 != 0 {
                let q = p.0.div_euclid(v.0);
                p = (p.0 - q * v.0, p.1 - q * v.1);
                std::mem::swap(&mut p, &mut v);
            }
            first = Some(p);
        } else if v.0 != 0 {
            first = Some(v);
            continue;
        }
        second = num_integer::Integer::gcd(&second, &v.1);
    }
    let mut out = Vec::new();
    if let Some(mut p) = first {
        if p.0 < 0 {
            p = (-p.0, -p.1);
        }
        if second != 0 {
            p.1 = p.1.rem_euclid(second);
        }
        out.push(p);
    }
    if second != 0 {
        out.push((0, second));
    }
    out
}

/// Classifies the fixed subgroup of the endomorphism `a -> images[0]`,
/// `b -> images[1]` from the fixed normal forms with `|m|, |n| <= bound`.
pub fn ns2_fix_classify(images: &[KleinElement; 2], bound: i64) -> Result<Ns2Fix> {
    let [x, y] = *images;
    if !x.mul(y).mul(x.inverse()).mul(y).is_identity() {
        return Err(Error::NotHomomorphism(format!("a -> {x}, b -> {y} does not kill a b A b")));
    }
    if bound < 2 {
        return Err(Error::Precondition("box bound must be at least 2".into()));
    }
    let mut even = Vec::new();
    let mut odd: Option<KleinElement> = None;
    let mut fixed_in_box = 0;
    for m in -bound..=bound {
        for n in -bound..=bound {
            let e = KleinElement::new(m, n);
            if apply(images, e) != e {
                continue;
            }
            fixed_in_box += 1;
            if e.is_even() {
                even.push((m / 2, n));
            } else if odd
                .is_none_or(|o| (e.m.abs(), e.n.abs(), e.m < 0, e.n < 0) < (o.m.abs(), o.n.abs(), o.m < 0, o.n < 0))
            {
                odd = Some(e);
            }
        }
    }
    let basis = lattice_basis(&even);
    let mut generators: Vec<KleinElement> = Vec::new();
    if let Some(o) = odd {
        generators.push(o);
    }
    let class = match (odd.is_some(), basis.len()) {
        (_, 0) => FixClass::Trivial,
        (false, 1) => FixClass::Z,
        (false, _) => FixClass::Z2,
        (true, 1) => FixClass::Z,
        (true, _) if *images == [KleinElement::A, KleinElement::B] => FixClass::Whole,
        (true, _) => FixClass::KleinLike,
    };
    if !(odd.is_some() && class == FixClass::Z) {
        generators.extend(basis.iter().map(|&(h, n)| KleinElement::new(2 * h, n)));
    }
    if class == FixClass::Whole {
        generators = vec![KleinElement::A, KleinElement::B];
    }
    Ok(Ns2Fix { class, generators, fixed_in_box })
}

/// Every endomorphism whose images have normal-form size at most `size`.
pub fn ns2_endomorphisms(size: u64) -> Vec<[KleinElement; 2]> {
    let s = size as i64;
    let elems: Vec<KleinElement> =
        (-s..=s).flat_map(|m| (-s..=s).map(move |n| KleinElement::new(m, n))).filter(|e| e.size() <= size).collect();
    let mut out = Vec::new();
    for &x in &elems {
        for &y in &elems {
            if x.mul(y).mul(x.inverse()).mul(y).is_identity() {
                out.push([x, y]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_words, Alphabet};
    use std::collections::HashMap;

    /// Faithful action on the plane: `a(x, y) = (x + 1, -y)`, `b(x, y) = (x, y + 1)`,
    /// kept as (tx, ty, s) for `(x, y) -> (x + tx, s y + ty)`.
    fn affine(w: &Word) -> (i64, i64, i64) {
        let compose = |f: (i64, i64, i64), g: (i64, i64, i64)| (f.0 + g.0, f.2 * g.1 + f.1, f.2 * g.2);
        w.letters().iter().fold((0, 0, 1), |acc, l| {
            let g = match (l.generator(), l.is_inverse()) {
                (1, false) => (1, 0, -1),
                (1, true) => (-1, 0, -1),
                (_, false) => (0, 1, 1),
                (_, true) => (0, -1, 1),
            };
            compose(acc, g)
        })
    }

    fn parse(s: &str) -> Word {
        Word::parse(Alphabet::new(2).unwrap(), s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(klein_normal_form(&parse("b a")).unwrap(), (1, -1));
        assert_eq!(klein_normal_form(&parse("a b A b")).unwrap(), (0, 0));
        assert_eq!(klein_normal_form(&parse("a a b A A")).unwrap(), (0, 1));
        assert!(klein_normal_form(&Word::identity(Alphabet::new(3).unwrap())).is_err());
    }

    #[test]
    fn normal_form_matches_affine_action_and_is_a_bijection() {
        let mut by_form: HashMap<(i64, i64), (i64, i64, i64)> = HashMap::new();
        for w in enumerate_words(Alphabet::new(2).unwrap(), 6) {
            let (m, n) = klein_normal_form(&w).unwrap();
            let act = affine(&w);
            assert_eq!(act, (m, sign(m) * n, sign(m)), "{w}");
            // equal forms give equal actions, and distinct forms distinct actions
            assert_eq!(*by_form.entry((m, n)).or_insert(act), act);
        }
        let mut actions: Vec<_> = by_form.values().collect();
        actions.sort();
        actions.dedup();
        assert_eq!(actions.len(), by_form.len());
    }

    #[test]
    fn group_laws() {
        let es: Vec<KleinElement> = (-3..=3).flat_map(|m| (-3..=3).map(move |n| KleinElement::new(m, n))).collect();
        for &x in &es {
            assert!(x.mul(x.inverse()).is_identity());
            for &y in &es {
                for &z in &es {
                    assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let id = ns2_fix_classify(&[KleinElement::A, KleinElement::B], 6).unwrap();
        assert_eq!(id.class, FixClass::Whole);
        let flip = ns2_fix_classify(&[KleinElement::A, KleinElement::B.inverse()], 6).unwrap();
        assert_eq!((flip.class, flip.generators.clone()), (FixClass::Z, vec![KleinElement::A]));
        let shear = ns2_fix_classify(&[KleinElement::new(1, 1), KleinElement::B], 6).unwrap();
        assert_eq!(shear.class, FixClass::Z2);
        assert_eq!(shear.generators, vec![KleinElement::new(2, 0), KleinElement::B]);
        let zero = ns2_fix_classify(&[KleinElement::IDENTITY, KleinElement::IDENTITY], 6).unwrap();
        assert_eq!(zero.class, FixClass::Trivial);
        assert!(matches!(ns2_fix_classify(&[KleinElement::B, KleinElement::A], 6), Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn generators_are_fixed() {
        for images in ns2_endomorphisms(2) {
            let fix = ns2_fix_classify(&images, 6).unwrap();
            for g in &fix.generators {
                assert_eq!(apply(&images, *g), *g);
            }
        }
    }

    #[test]
    fn lattice_basis_spans() {
        assert_eq!(lattice_basis(&[(2, 1), (4, 0), (0, 3)]), vec![(2, 0), (0, 1)]);
        assert_eq!(lattice_basis(&[(2, 1), (0, 3)]), vec![(2, 1), (0, 3)]);
        assert_eq!(lattice_basis(&[(0, 0), (0, 4), (0, 6)]), vec![(0, 2)]);
        assert_eq!(lattice_basis(&[(3, 3), (6, 6)]), vec![(3, 3)]);
        assert_eq!(lattice_basis(&[(0, 0)]), vec![]);
    }
}

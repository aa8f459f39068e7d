//! Direct products of free groups and surface groups.
//!
//! Every factor carries a standard presentation: free groups, orientable
//! surfaces `[a1,b1]...[ag,bg]`, and non-orientable surfaces written with
//! Klein pairs (`a b A b c c` for `NS3`, `a b A b c d C d` for `NS4`), which is
//! the form the explicit automorphisms below are stated in.

mod bh;
mod cycles;
mod witness;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::{GroupContext, KleinElement, Oracle, Presentation, Verdict3};
use crate::words::{Alphabet, Letter, Word};

pub use bh::{bh_products_check, euclidean_fix_rank, BhEntry, BhOutcome, BhProductsReport, EuclideanFix};
pub use cycles::{
    fix_of_cycle, permuted_product, rectangular_decompose, CycleFix, RectangularDecomposition, Rectangularity,
};
pub use witness::{
    central_twist, non_compressed_witness, non_inert_witness, twist_report, CompressionWitness, InertiaWitness,
    RankBounds, TwistReport, COMPRESSION_CASES, INERTIA_CASES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorDescriptor {
    Free(usize),
    Orientable(usize),
    NonOrientable(usize),
}

impl FactorDescriptor {
    pub fn rank(self) -> usize {
        match self {
            FactorDescriptor::Free(r) => r,
            FactorDescriptor::Orientable(g) => 2 * g,
            FactorDescriptor::NonOrientable(k) => k,
        }
    }

    pub fn euler_characteristic(self) -> i64 {
        match self {
            FactorDescriptor::Free(r) => 1 - r as i64,
            FactorDescriptor::Orientable(g) => 2 - 2 * g as i64,
            FactorDescriptor::NonOrientable(k) => 2 - k as i64,
        }
    }

    pub fn is_abelian(self) -> bool {
        matches!(self, FactorDescriptor::Free(1) | FactorDescriptor::Orientable(1) | FactorDescriptor::NonOrientable(1))
    }

    pub fn center_nontrivial(self) -> bool {
        self.is_abelian() || self == FactorDescriptor::NonOrientable(2)
    }

    pub fn is_surface(self) -> bool {
        !matches!(self, FactorDescriptor::Free(_))
    }

    pub fn presentation(self) -> Presentation {
        let p = match self {
            FactorDescriptor::Free(r) => Presentation::free(r),
            FactorDescriptor::Orientable(g) => Presentation::orientable(g),
            FactorDescriptor::NonOrientable(1) => Presentation::parse_relators(1, &["a a"]),
            FactorDescriptor::NonOrientable(2) => Ok(Presentation::klein()),
            FactorDescriptor::NonOrientable(k) => Presentation::nonorientable_pairs(k),
        };
        p.expect("descriptor parameters are validated on construction")
    }

    pub fn context(self) -> GroupContext {
        match self {
            FactorDescriptor::Free(_) => GroupContext::Free,
            FactorDescriptor::Orientable(1) => GroupContext::Abelian(vec![0, 0]),
            FactorDescriptor::NonOrientable(1) => GroupContext::Abelian(vec![2]),
            FactorDescriptor::NonOrientable(2) => GroupContext::Klein,
            d => GroupContext::for_presentation(d.presentation()),
        }
    }

    /// Generators of the center, as words in this factor.
    pub fn center_generators(self) -> Vec<Word> {
        let alphabet = Alphabet::new(self.rank()).expect("positive rank");
        if self.is_abelian() {
            alphabet.generators().collect()
        } else if self == FactorDescriptor::NonOrientable(2) {
            vec![Word::parse(alphabet, "a a").expect("rank 2")]
        } else {
            Vec::new()
        }
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorDescriptor::Free(1) => write!(f, "Z"),
            FactorDescriptor::Free(r) => write!(f, "F{r}"),
            FactorDescriptor::Orientable(g) => write!(f, "S{g}"),
            FactorDescriptor::NonOrientable(1) => write!(f, "C2"),
            FactorDescriptor::NonOrientable(k) => write!(f, "NS{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    Euclidean,
    Hyperbolic,
    Mixed,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::Euclidean => "euclidean",
            GroupType::Hyperbolic => "hyperbolic",
            GroupType::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ProductGroup {
    factors: Vec<FactorDescriptor>,
    offsets: Vec<usize>,
    rank: usize,
    oracles: Vec<Oracle>,
}

impl PartialEq for ProductGroup {
    fn eq(&self, other: &ProductGroup) -> bool {
        self.factors == other.factors
    }
}

impl Eq for ProductGroup {}

impl ProductGroup {
    pub fn new(factors: Vec<FactorDescriptor>) -> Result<ProductGroup> {
        if factors.is_empty() {
            return Err(Error::Precondition("a product needs at least one factor".into()));
        }
        if let Some(f) = factors.iter().find(|f| f.rank() == 0) {
            return Err(Error::Precondition(format!("factor {f:?} has rank 0")));
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut rank = 0;
        for f in &factors {
            offsets.push(rank);
            rank += f.rank();
        }
        let oracles = factors.iter().map(|f| Oracle::new(f.context())).collect();
        Ok(ProductGroup { factors, offsets, rank, oracles })
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn descriptors(&self) -> Vec<FactorDescriptor> {
        self.factors.clone()
    }

    pub fn factor(&self, i: usize) -> FactorDescriptor {
        self.factors[i]
    }

    /// Sum of the factor ranks.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn factor_alphabet(&self, i: usize) -> Alphabet {
        Alphabet::new(self.factors[i].rank()).expect("positive rank")
    }

    pub fn global_alphabet(&self) -> Alphabet {
        Alphabet::new(self.rank).expect("positive rank")
    }

    /// Factor and local generator (1-based) of a global generator (1-based).
    pub fn locate(&self, global: usize) -> Result<(usize, usize)> {
        if global == 0 || global > self.rank {
            return Err(Error::IndexOutOfRange { index: global, rank: self.rank });
        }
        let i = self.offsets.iter().rposition(|&o| o < global).expect("offset 0 is below every generator");
        Ok((i, global - self.offsets[i]))
    }

    pub fn oracle(&self, i: usize) -> &Oracle {
        &self.oracles[i]
    }

    /// Isomorphic factors grouped in order of first appearance.
    pub fn blocks(&self) -> Vec<(FactorDescriptor, usize)> {
        let mut out: Vec<(FactorDescriptor, usize)> = Vec::new();
        for &f in &self.factors {
            match out.iter_mut().find(|(g, _)| *g == f) {
                Some(slot) => slot.1 += 1,
                None => out.push((f, 1)),
            }
        }
        out
    }

    pub fn classify_type(&self) -> GroupType {
        let central = self.factors.iter().filter(|f| f.center_nontrivial()).count();
        if central == self.factors.len() {
            GroupType::Euclidean
        } else if central == 0 {
            GroupType::Hyperbolic
        } else {
            GroupType::Mixed
        }
    }

    /// All factor relators plus commutators between generators of distinct
    /// factors, over the global alphabet.
    pub fn presentation(&self) -> Presentation {
        let alphabet = self.global_alphabet();
        let mut relators = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            for r in f.presentation().relators() {
                relators.push(r.embed(alphabet, self.offsets[i]).expect("fits the global alphabet"));
            }
        }
        for i in 0..self.factors.len() {
            for j in i + 1..self.factors.len() {
                for x in self.offsets[i] + 1..=self.offsets[i] + self.factors[i].rank() {
                    for y in self.offsets[j] + 1..=self.offsets[j] + self.factors[j].rank() {
                        let (x, y) = (Letter::new(x, false), Letter::new(y, false));
                        relators
                            .push(Word::from_letters(alphabet, [x, y, x.inverse(), y.inverse()]).expect("in range"));
                    }
                }
            }
        }
        Presentation::new(alphabet, relators).expect("global alphabet")
    }

    /// Name of a global generator: `a b c ...` across the factors.
    pub fn generator_name(&self, global: usize) -> String {
        Letter::new(global, false).to_string()
    }

    /// Center, one entry per factor.
    pub fn center(&self) -> Vec<FactorSubgroup> {
        self.factors
            .iter()
            .map(|f| {
                if f.is_abelian() {
                    FactorSubgroup::Whole
                } else if f.center_nontrivial() {
                    FactorSubgroup::Generated(f.center_generators())
                } else {
                    FactorSubgroup::Trivial
                }
            })
            .collect()
    }

    /// Centralizer of `x`, factor by factor.
    pub fn centralizer(&self, x: &ProductElement) -> Result<Vec<FactorSubgroup>> {
        self.check(x)?;
        let mut out = Vec::new();
        for (i, (f, g)) in self.factors.iter().zip(&x.components).enumerate() {
            let trivial = match self.oracles[i].is_trivial(g)? {
                Verdict3::Equal => true,
                Verdict3::NotEqual => false,
                Verdict3::Unknown => return Err(Error::UndecidableComponent { factor: i }),
            };
            let c = if trivial || f.is_abelian() {
                FactorSubgroup::Whole
            } else if *f == FactorDescriptor::NonOrientable(2) {
                klein_centralizer(KleinElement::from_word(g)?)
            } else {
                FactorSubgroup::CyclicContaining(g.clone())
            };
            out.push(c);
        }
        Ok(out)
    }

    /// Isomorphism test for products of hyperbolic type: equal factor multisets.
    pub fn isomorphic(&self, other: &ProductGroup) -> Result<bool> {
        if self.classify_type() != GroupType::Hyperbolic || other.classify_type() != GroupType::Hyperbolic {
            return Err(Error::Precondition("isomorphism test needs two products of hyperbolic type".into()));
        }
        let mut a = self.factors.clone();
        let mut b = other.factors.clone();
        a.sort();
        b.sort();
        Ok(a == b)
    }

    fn check(&self, x: &ProductElement) -> Result<()> {
        if x.components.len() != self.factors.len() {
            return Err(Error::Precondition(format!(
                "{} components for {} factors",
                x.components.len(),
                self.factors.len()
            )));
        }
        for (i, c) in x.components.iter().enumerate() {
            if c.alphabet() != self.factor_alphabet(i) {
                return Err(Error::AlphabetMismatch { left: self.factors[i].rank(), right: c.alphabet().rank() });
            }
        }
        Ok(())
    }

    /// Componentwise comparison with the factor oracles: `Equal` only if
    /// every component is, `NotEqual` as soon as one is.
    pub fn compare(&self, x: &ProductElement, y: &ProductElement) -> Result<Verdict3> {
        self.check(x)?;
        self.check(y)?;
        let mut unknown = false;
        for (i, (u, v)) in x.components.iter().zip(&y.components).enumerate() {
            match self.oracles[i].equal(u, v)? {
                Verdict3::NotEqual => return Ok(Verdict3::NotEqual),
                Verdict3::Unknown => unknown = true,
                Verdict3::Equal => {}
            }
        }
        Ok(if unknown { Verdict3::Unknown } else { Verdict3::Equal })
    }

    pub fn render(&self, x: &ProductElement) -> String {
        let global = self.global_alphabet();
        let parts: Vec<String> = x
            .components
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let s = w.embed(global, self.offsets[i]).expect("fits").to_string();
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        format!("({})", parts.join(" ; "))
    }
}

impl fmt::Display for ProductGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.blocks().iter().map(|(d, n)| if *n == 1 { d.to_string() } else { format!("{d}^{n}") }).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A subgroup of one factor, as reported by `center` and `centralizer`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorSubgroup {
    Trivial,
    Whole,
    Generated(Vec<Word>),
    /// The infinite cyclic group containing this element.
    CyclicContaining(Word),
}

impl fmt::Display for FactorSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSubgroup::Trivial => write!(f, "1"),
            FactorSubgroup::Whole => write!(f, "whole"),
            FactorSubgroup::Generated(gens) => {
                let g: Vec<String> = gens.iter().map(Word::to_string).collect();
                write!(f, "<{}>", g.join(", "))
            }
            FactorSubgroup::CyclicContaining(w) => write!(f, "Z containing {w}"),
        }
    }
}

fn klein_centralizer(x: KleinElement) -> FactorSubgroup {
    let alphabet = Alphabet::new(2).expect("rank 2");
    let word = |m: i64, n: i64| {
        Word::generator(alphabet, 1).expect("rank 2").pow(m).mul(&Word::generator(alphabet, 2).expect("rank 2").pow(n))
    };
    if x.is_even() {
        if x.n == 0 {
            FactorSubgroup::Whole
        } else {
            FactorSubgroup::Generated(vec![word(2, 0), word(0, 1)])
        }
    } else {
        FactorSubgroup::Generated(vec![word(1, x.n)])
    }
}

/// One word per factor, in that factor's own alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductElement {
    components: Vec<Word>,
}

impl ProductElement {
    pub fn new(group: &ProductGroup, components: Vec<Word>) -> Result<ProductElement> {
        let x = ProductElement { components };
        group.check(&x)?;
        Ok(x)
    }

    pub fn identity(group: &ProductGroup) -> ProductElement {
        ProductElement {
            components: (0..group.factor_count()).map(|i| Word::identity(group.factor_alphabet(i))).collect(),
        }
    }

    /// The element of a global letter.
    pub fn letter(group: &ProductGroup, l: Letter) -> Result<ProductElement> {
        let (i, local) = group.locate(l.generator())?;
        let mut x = ProductElement::identity(group);
        x.components[i] = Word::from_letters(group.factor_alphabet(i), [Letter::new(local, l.is_inverse())])?;
        Ok(x)
    }

    /// Evaluates a word over the global alphabet.
    pub fn from_global(group: &ProductGroup, w: &Word) -> Result<ProductElement> {
        if w.alphabet() != group.global_alphabet() {
            return Err(Error::AlphabetMismatch { left: group.rank(), right: w.alphabet().rank() });
        }
        let mut x = ProductElement::identity(group);
        for &l in w.letters() {
            let (i, local) = group.locate(l.generator())?;
            let step = Word::from_letters(group.factor_alphabet(i), [Letter::new(local, l.is_inverse())])?;
            x.components[i] = x.components[i].mul(&step);
        }
        Ok(x)
    }

    pub fn components(&self) -> &[Word] {
        &self.components
    }

    pub fn mul(&self, other: &ProductElement) -> ProductElement {
        ProductElement { components: self.components.iter().zip(&other.components).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn inverse(&self) -> ProductElement {
        ProductElement { components: self.components.iter().map(Word::invert).collect() }
    }

    pub fn pow(&self, e: i64) -> ProductElement {
        ProductElement { components: self.components.iter().map(|w| w.pow(e)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(Word::is_identity)
    }

    /// Total length of the components.
    pub fn len(&self) -> usize {
        self.components.iter().map(Word::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An endomorphism given by the images of the global generators, checked to
/// respect every relation of the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEndo {
    group: ProductGroup,
    images: Vec<ProductElement>,
}

fn require_equal(
    group: &ProductGroup,
    x: &ProductElement,
    y: &ProductElement,
    what: impl Fn() -> String,
) -> Result<()> {
    match group.compare(x, y)? {
        Verdict3::Equal => Ok(()),
        Verdict3::NotEqual => Err(Error::NotHomomorphism(format!("{} fails", what()))),
        Verdict3::Unknown => Err(Error::NotHomomorphism(format!("{} cannot be verified", what()))),
    }
}

impl ProductEndo {
    pub fn new(group: &ProductGroup, images: Vec<ProductElement>) -> Result<ProductEndo> {
        if images.len() != group.rank() {
            return Err(Error::Precondition(format!("{} images for {} generators", images.len(), group.rank())));
        }
        for x in &images {
            group.check(x)?;
        }
        let phi = ProductEndo { group: group.clone(), images };
        let id = ProductElement::identity(group);
        for i in 0..group.factor_count() {
            for r in group.factor(i).presentation().relators() {
                let global = r.embed(group.global_alphabet(), group.offset(i))?;
                let image = phi.apply_global(&global);
                require_equal(group, &image, &id, || {
                    format!(
                        "relator {} of factor {}",
                        group.render(&ProductElement::from_global(group, &global).expect("valid")),
                        i + 1
                    )
                })?;
            }
        }
        for i in 0..group.factor_count() {
            for j in i + 1..group.factor_count() {
                for x in group.offset(i) + 1..=group.offset(i) + group.factor(i).rank() {
                    for y in group.offset(j) + 1..=group.offset(j) + group.factor(j).rank() {
                        let (u, v) = (&phi.images[x - 1], &phi.images[y - 1]);
                        require_equal(group, &u.mul(v), &v.mul(u), || {
                            format!("commutation of {} and {}", group.generator_name(x), group.generator_name(y))
                        })?;
                    }
                }
            }
        }
        Ok(phi)
    }

    /// Images written with global names, one per generator.
    pub fn from_global_images(group: &ProductGroup, images: &[Word]) -> Result<ProductEndo> {
        let images = images.iter().map(|w| ProductElement::from_global(group, w)).collect::<Result<Vec<_>>>()?;
        ProductEndo::new(group, images)
    }

    pub fn identity(group: &ProductGroup) -> ProductEndo {
        let images = (1..=group.rank())
            .map(|g| ProductElement::letter(group, Letter::new(g, false)).expect("in range"))
            .collect();
        ProductEndo { group: group.clone(), images }
    }

    pub fn group(&self) -> &ProductGroup {
        &self.group
    }

    pub fn images(&self) -> &[ProductElement] {
        &self.images
    }

    fn image_of_letter(&self, l: Letter) -> ProductElement {
        let x = &self.images[l.generator() - 1];
        if l.is_inverse() {
            x.inverse()
        } else {
            x.clone()
        }
    }

    fn apply_global(&self, w: &Word) -> ProductElement {
        w.letters().iter().fold(ProductElement::identity(&self.group), |acc, &l| acc.mul(&self.image_of_letter(l)))
    }

    pub fn apply(&self, x: &ProductElement) -> Result<ProductElement> {
        self.group.check(x)?;
        let mut out = ProductElement::identity(&self.group);
        for (i, c) in x.components.iter().enumerate() {
            for &l in c.letters() {
                let g = Letter::new(l.generator() + self.group.offset(i), l.is_inverse());
                out = out.mul(&self.image_of_letter(g));
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(g, x)| format!("{} -> {}", self.group.generator_name(g + 1), self.group.render(x)))
            .collect();
        parts.join("; ")
    }
}

/// Fixed elements among short products of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFix {
    /// `φ(x) = x` certified by every factor oracle.
    pub certified: Vec<ProductElement>,
    /// Some component could not be decided.
    pub uncertain: Vec<ProductElement>,
    pub enumerated: usize,
}

/// Tuples of reduced component words with total length at most `limit`.
pub fn product_elements(group: &ProductGroup, limit: usize) -> Vec<ProductElement> {
    let per_factor: Vec<Vec<Word>> = (0..group.factor_count())
        .map(|i| crate::words::enumerate_words(group.factor_alphabet(i), limit).collect())
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<Word> = Vec::new();
    fn rec(per: &[Vec<Word>], budget: usize, current: &mut Vec<Word>, out: &mut Vec<ProductElement>) {
        let i = current.len();
        if i == per.len() {
            out.push(ProductElement { components: current.clone() });
            return;
        }
        for w in per[i].iter().take_while(|w| w.len() <= budget) {
            current.push(w.clone());
            rec(per, budget - w.len(), current, out);
            current.pop();
        }
    }
    rec(&per_factor, limit, &mut current, &mut out);
    out
}

pub fn fix_words_product(phi: &ProductEndo, limit: usize) -> Result<ProductFix> {
    let elements = product_elements(&phi.group, limit);
    let mut certified = Vec::new();
    let mut uncertain = Vec::new();
    for x in &elements {
        match phi.group.compare(&phi.apply(x)?, x)? {
            Verdict3::Equal => certified.push(x.clone()),
            Verdict3::Unknown => uncertain.push(x.clone()),
            Verdict3::NotEqual => {}
        }
    }
    Ok(ProductFix { certified, uncertain, enumerated: elements.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_product_group;

    fn group(s: &str) -> ProductGroup {
        parse_product_group(s).unwrap()
    }

    fn global(g: &ProductGroup, s: &str) -> ProductElement {
        ProductElement::from_global(g, &Word::parse(g.global_alphabet(), s).unwrap()).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(group("F2 x Z").rank(), 3);
        assert_eq!(group("NS2^2 x C2").rank(), 5);
        assert_eq!(group("S3").rank(), 6);
    }

    #[test]
    fn rank_matches_abelianization_of_the_product() {
        for s in ["F2 x Z", "NS2^2 x C2", "S2 x NS3", "C2 x C2 x Z", "NS3 x NS4", "S1 x NS2"] {
            let g = group(s);
            assert_eq!(g.presentation().abelianization().rank(), g.rank(), "{s}");
        }
    }

    #[test]
    fn types() {
        let cases = [
            ("NS2 x Z^2 x C2", GroupType::Euclidean),
            ("F2 x NS3", GroupType::Hyperbolic),
            ("F2 x Z", GroupType::Mixed),
            ("Z", GroupType::Euclidean),
            ("S1 x C2", GroupType::Euclidean),
            ("S2 x S3", GroupType::Hyperbolic),
            ("NS2 x F2", GroupType::Mixed),
            ("NS4", GroupType::Hyperbolic),
            ("C2 x NS3", GroupType::Mixed),
            ("NS2^3", GroupType::Euclidean),
        ];
        for (s, t) in cases {
            assert_eq!(group(s).classify_type(), t, "{s}");
            let mut rev = group(s).descriptors();
            rev.reverse();
            assert_eq!(ProductGroup::new(rev).unwrap().classify_type(), t);
        }
    }

    #[test]
    fn center_and_centralizer() {
        let ff = group("F2 x F2");
        assert!(ff.center().iter().all(|c| *c == FactorSubgroup::Trivial));
        let c = ff.centralizer(&global(&ff, "a")).unwrap();
        assert_eq!(c[0], FactorSubgroup::CyclicContaining(Word::parse(ff.factor_alphabet(0), "a").unwrap()));
        assert_eq!(c[1], FactorSubgroup::Whole);
        let k = group("NS2");
        assert_eq!(k.center()[0].to_string(), "<a a>");
        assert_eq!(k.centralizer(&global(&k, "b")).unwrap()[0].to_string(), "<a a, b>");
        assert_eq!(k.centralizer(&global(&k, "a b")).unwrap()[0].to_string(), "<a b>");
        assert_eq!(k.centralizer(&global(&k, "a a")).unwrap()[0], FactorSubgroup::Whole);
        let ns3 = group("NS3");
        assert_eq!(ns3.centralizer(&global(&ns3, "a b A B")), Err(Error::UndecidableComponent { factor: 0 }));
    }

    #[test]
    fn isomorphism_of_hyperbolic_products() {
        assert!(group("F2 x S2").isomorphic(&group("S2 x F2")).unwrap());
        assert!(!group("F2 x F2").isomorphic(&group("F2 x F3")).unwrap());
        assert!(group("NS3 x S2").isomorphic(&group("NS3 x S2")).unwrap());
        assert!(group("F2 x Z").isomorphic(&group("F2 x Z")).is_err());
    }

    #[test]
    fn endomorphisms_are_checked() {
        let g = group("F2 x Z");
        let a = Alphabet::new(3).unwrap();
        let w = |s: &str| Word::parse(a, s).unwrap();
        assert!(ProductEndo::from_global_images(&g, &[w("c a"), w("b"), w("c")]).is_ok());
        // c must commute with the image of a
        assert!(matches!(
            ProductEndo::from_global_images(&g, &[w("a"), w("b"), w("a")]),
            Err(Error::NotHomomorphism(_))
        ));
        let k = group("NS2");
        let b = Alphabet::new(2).unwrap();
        let v = |s: &str| Word::parse(b, s).unwrap();
        assert!(ProductEndo::from_global_images(&k, &[v("a"), v("B")]).is_ok());
        assert!(ProductEndo::from_global_images(&k, &[v("b"), v("a")]).is_err());
    }

    #[test]
    fn fixed_elements() {
        let g = group("F2 x Z");
        let id = ProductEndo::identity(&g);
        let fix = fix_words_product(&id, 3).unwrap();
        assert_eq!(fix.certified.len(), fix.enumerated);
        let a = Alphabet::new(3).unwrap();
        let w = |s: &str| Word::parse(a, s).unwrap();
        let twist = ProductEndo::from_global_images(&g, &[w("c a"), w("b"), w("c")]).unwrap();
        let fix = fix_words_product(&twist, 4).unwrap();
        assert!(fix.uncertain.is_empty());
        for x in &fix.certified {
            assert_eq!(x.components()[0].exponent_sum(1).unwrap(), 0);
            assert_eq!(twist.apply(x).unwrap(), *x);
        }
        let ff = group("F2 x F2");
        let b = Alphabet::new(4).unwrap();
        let v = |s: &str| Word::parse(b, s).unwrap();
        let swap = ProductEndo::from_global_images(&ff, &[v("c"), v("d"), v("a"), v("b")]).unwrap();
        let fix = fix_words_product(&swap, 4).unwrap();
        assert!(!fix.certified.is_empty());
        for x in &fix.certified {
            assert_eq!(x.components()[0], x.components()[1]);
        }
        assert_eq!(fix.certified.len(), crate::words::enumerate_words(Alphabet::new(2).unwrap(), 2).count());
    }

    #[test]
    fn rendering() {
        let g = group("F2 x Z");
        assert_eq!(g.to_string(), "F2 x Z");
        assert_eq!(g.render(&global(&g, "a B c")), "(a B ; c)");
        assert_eq!(group("NS2^2 x C2").to_string(), "NS2^2 x C2");
        assert_eq!(g.locate(3).unwrap(), (1, 1));
        assert!(g.locate(4).is_err());
    }
}

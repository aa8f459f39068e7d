//! Rectangular automorphisms up to permutation and the fixed subgroup of a
//! single permutation cycle.

use super::{GroupType, ProductElement, ProductEndo, ProductGroup};
use crate::error::{Error, Result};
use crate::morphisms::{fix_subgroup_approx, EndoFamily, FixApproximation, FreeHom};
use crate::presentations::Verdict3;
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangularDecomposition {
    /// Coordinate `i` is sent to coordinate `permutation[i]`.
    pub permutation: Vec<usize>,
    /// `maps[i]` takes factor `i` to factor `permutation[i]` on generators.
    pub maps: Vec<FreeHom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rectangularity {
    Rectangular(RectangularDecomposition),
    /// A global generator whose image is not supported on the one coordinate
    /// its factor should go to; `live` lists the coordinates it touches.
    NotRectangular {
        generator: usize,
        live: Vec<usize>,
    },
}

impl RectangularDecomposition {
    pub fn recompose(&self, group: &ProductGroup) -> Result<ProductEndo> {
        let mut images = Vec::with_capacity(group.rank());
        for i in 0..group.factor_count() {
            let j = self.permutation[i];
            for g in group.factor_alphabet(i).generators() {
                let mut x = ProductElement::identity(group);
                x.components[j] = self.maps[i].apply(&g)?;
                images.push(x);
            }
        }
        ProductEndo::new(group, images)
    }

    /// Disjoint cycles of the permutation, each starting at its smallest coordinate.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        permutation_cycles(&self.permutation)
    }

    /// Per block of isomorphic factors, the permutation it induces.
    pub fn block_permutations(&self, group: &ProductGroup) -> Vec<Vec<usize>> {
        group
            .blocks()
            .iter()
            .map(|(d, _)| {
                let coords: Vec<usize> = (0..group.factor_count()).filter(|&i| group.factor(i) == *d).collect();
                coords
                    .iter()
                    .map(|&i| coords.iter().position(|&c| c == self.permutation[i]).expect("blocks are preserved"))
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn permutation_cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            cycle.push(c);
            c = p[c];
        }
        out.push(cycle);
    }
    out
}

fn live_coordinates(group: &ProductGroup, x: &ProductElement) -> Result<Vec<usize>> {
    let mut live = Vec::new();
    for (i, c) in x.components().iter().enumerate() {
        match group.oracle(i).is_trivial(c)? {
            Verdict3::Equal => {}
            Verdict3::NotEqual => live.push(i),
            Verdict3::Unknown => return Err(Error::UndecidableComponent { factor: i }),
        }
    }
    Ok(live)
}

/// Reads off the permutation and the coordinate maps of an endomorphism of a
/// product of hyperbolic type, or names a generator that breaks the pattern.
pub fn rectangular_decompose(phi: &ProductEndo) -> Result<Rectangularity> {
    let group = phi.group();
    if group.classify_type() != GroupType::Hyperbolic {
        return Err(Error::Precondition("rectangular decomposition needs a product of hyperbolic type".into()));
    }
    let n = group.factor_count();
    let mut permutation = Vec::with_capacity(n);
    let mut maps = Vec::with_capacity(n);
    for i in 0..n {
        let mut target: Option<usize> = None;
        for local in 1..=group.factor(i).rank() {
            let global = group.offset(i) + local;
            let live = live_coordinates(group, &phi.images()[global - 1])?;
            match (live.as_slice(), target) {
                ([j], None) => target = Some(*j),
                ([j], Some(t)) if *j == t => {}
                _ => return Ok(Rectangularity::NotRectangular { generator: global, live }),
            }
        }
        let j = target.expect("every factor has a generator");
        if group.factor(j) != group.factor(i) || permutation.contains(&j) {
            return Ok(Rectangularity::NotRectangular { generator: group.offset(i) + 1, live: vec![j] });
        }
        let images = (1..=group.factor(i).rank())
            .map(|local| phi.images()[group.offset(i) + local - 1].components()[j].clone())
            .collect();
        maps.push(FreeHom::new(group.factor_alphabet(i), group.factor_alphabet(j), images)?);
        permutation.push(j);
    }
    Ok(Rectangularity::Rectangular(RectangularDecomposition { permutation, maps }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFix {
    /// The maps composed once around the cycle, starting at coordinate 0.
    pub composite: FreeHom,
    pub approx: FixApproximation,
    pub rank: usize,
    /// `(g, φ_0(g), ...)` placed at the coordinates the cycle visits, one
    /// tuple per folded generator `g` of the composite's fixed subgroup.
    pub generators: Vec<Vec<Word>>,
}

/// Fixed subgroup of `σ ∘ (φ_0 × ... × φ_{n-1})` on `F^n` when `σ` is one
/// `n`-cycle: the twisted diagonal over the fixed subgroup of the composite.
pub fn fix_of_cycle(maps: &[FreeHom], sigma: &[usize], limit: usize) -> Result<CycleFix> {
    let n = maps.len();
    if n == 0 || sigma.len() != n {
        return Err(Error::Precondition("one map per coordinate of the cycle".into()));
    }
    let cycles = permutation_cycles(sigma);
    if sigma.iter().any(|&j| j >= n) || cycles.len() != 1 || cycles[0].len() != n {
        return Err(Error::Precondition(format!("{sigma:?} is not a single {n}-cycle")));
    }
    let alphabet = maps[0].domain();
    if let Some(m) = maps.iter().find(|m| m.domain() != alphabet || m.codomain() != alphabet) {
        return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: m.codomain().rank() });
    }
    let mut composite = FreeHom::identity(alphabet);
    let mut c = 0;
    for _ in 0..n {
        composite = maps[c].compose(&composite)?;
        c = sigma[c];
    }
    let approx = fix_subgroup_approx(&EndoFamily::single(composite.clone())?, limit)?;
    let generators = approx
        .graph
        .generators()
        .into_iter()
        .map(|g| {
            let mut tuple = vec![Word::identity(alphabet); n];
            let mut cur = g;
            let mut c = 0;
            for _ in 0..n {
                tuple[c] = cur.clone();
                cur = maps[c].apply_unchecked(&cur);
                c = sigma[c];
            }
            tuple
        })
        .collect();
    let rank = approx.graph.rank();
    Ok(CycleFix { composite, approx, rank, generators })
}

/// The endomorphism `σ ∘ (φ_0 × ... )` of a product of copies of one factor.
pub fn permuted_product(group: &ProductGroup, maps: &[FreeHom], sigma: &[usize]) -> Result<ProductEndo> {
    RectangularDecomposition { permutation: sigma.to_vec(), maps: maps.to_vec() }.recompose(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{fix_words_product, FactorDescriptor};
    use crate::words::Alphabet;

    fn f2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn endo(images: &[&str]) -> FreeHom {
        FreeHom::parse_endo(f2(), images).unwrap()
    }

    fn power(n: usize) -> ProductGroup {
        ProductGroup::new(vec![FactorDescriptor::Free(2); n]).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let g = ProductGroup::new(vec![FactorDescriptor::Free(2), FactorDescriptor::Free(3)]).unwrap();
        let a5 = Alphabet::new(5).unwrap();
        let w = |s: &str| Word::parse(a5, s).unwrap();
        let phi = ProductEndo::from_global_images(&g, &[w("a b"), w("b"), w("d"), w("c"), w("e")]).unwrap();
        let Rectangularity::Rectangular(d) = rectangular_decompose(&phi).unwrap() else { panic!() };
        assert_eq!(d.permutation, vec![0, 1]);
        assert_eq!(d.recompose(&g).unwrap(), phi);

        let ff = power(2);
        let a4 = Alphabet::new(4).unwrap();
        let v = |s: &str| Word::parse(a4, s).unwrap();
        let swap = ProductEndo::from_global_images(&ff, &[v("c"), v("d"), v("a"), v("b")]).unwrap();
        let Rectangularity::Rectangular(d) = rectangular_decompose(&swap).unwrap() else { panic!() };
        assert_eq!(d.permutation, vec![1, 0]);
        assert!(d.maps.iter().all(FreeHom::is_identity));
        assert_eq!(d.cycles(), vec![vec![0, 1]]);
        assert_eq!(d.block_permutations(&ff), vec![vec![1, 0]]);
        assert_eq!(d.recompose(&ff).unwrap(), swap);

        let mixed = ProductEndo::from_global_images(&ff, &[v("a c"), v("b"), v("c"), v("d")]);
        // a -> (a, c) does not commute with the image of c, so build one that does
        assert!(mixed.is_err());
        let diag = ProductEndo::from_global_images(&ff, &[v("a c"), v("b d"), v("c"), v("d")]);
        assert!(diag.is_err());
        let spread = ProductEndo::from_global_images(&ff, &[v("a c"), v("b c"), v("c"), v("c")]).unwrap();
        assert_eq!(
            rectangular_decompose(&spread).unwrap(),
            Rectangularity::NotRectangular { generator: 1, live: vec![0, 1] }
        );
        let fz = ProductGroup::new(vec![FactorDescriptor::Free(2), FactorDescriptor::Free(1)]).unwrap();
        assert!(rectangular_decompose(&ProductEndo::identity(&fz)).is_err());
    }

    #[test]
    fn cycle_examples() {
        let id = FreeHom::identity(f2());
        let two = fix_of_cycle(&[id.clone(), id.clone()], &[1, 0], 6).unwrap();
        assert_eq!(two.rank, 2);
        let shear = endo(&["a b", "b"]);
        let one = fix_of_cycle(&[shear.clone(), id.clone()], &[1, 0], 8).unwrap();
        assert_eq!(one.rank, 2);
        assert_eq!(one.approx.graph.describe(), "<b, a b A>");
        let three = fix_of_cycle(&[id.clone(), id.clone(), id.clone()], &[1, 2, 0], 6).unwrap();
        assert_eq!(three.rank, 2);
        assert!(fix_of_cycle(&[id.clone(), id.clone()], &[0, 1], 6).is_err());
    }

    #[test]
    fn twisted_generators_are_fixed() {
        let maps = [endo(&["a b", "b"]), endo(&["b", "a"]), endo(&["A", "b"])];
        let sigma = [2, 0, 1];
        let g = power(3);
        let phi = permuted_product(&g, &maps, &sigma).unwrap();
        let cyc = fix_of_cycle(&maps, &sigma, 10).unwrap();
        for t in &cyc.generators {
            let x = ProductElement::new(&g, t.clone()).unwrap();
            assert_eq!(phi.apply(&x).unwrap(), x);
        }
        // the rank agrees with the fixed subgroup of the composite
        let direct = fix_subgroup_approx(&EndoFamily::single(cyc.composite.clone()).unwrap(), 10).unwrap();
        assert_eq!(cyc.rank, direct.graph.rank());
    }

    #[test]
    fn swap_fix_is_the_diagonal() {
        let g = power(2);
        let id = FreeHom::identity(f2());
        let phi = permuted_product(&g, &[id.clone(), id], &[1, 0]).unwrap();
        let fix = fix_words_product(&phi, 6).unwrap();
        let diag: Vec<Word> = fix.certified.iter().map(|x| x.components()[0].clone()).collect();
        assert!(fix.certified.iter().all(|x| x.components()[0] == x.components()[1]));
        assert_eq!(diag.len(), crate::words::enumerate_words(f2(), 3).count());
    }
}

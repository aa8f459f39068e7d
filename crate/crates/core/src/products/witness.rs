//! Explicit automorphisms of product groups: central twists whose fixed
//! subgroup outgrows the group, fixed subgroups that are not compressed, and
//! fixed subgroups that are not inert.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{FactorDescriptor, ProductElement, ProductEndo, ProductGroup};
use crate::error::{Error, Result};
use crate::morphisms::FreeHom;
use crate::presentations::{
    reidemeister_schreier, tietze_simplify, todd_coxeter, AbelianInvariants, AbelianMap, Verdict3, DEFAULT_MAX_COSETS,
};
use crate::stallings::{probe_compressed, CoreGraph, ProbeBounds, ProbeReport};
use crate::words::{enumerate_words, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

impl RankBounds {
    pub fn new(lower: usize, upper: usize) -> RankBounds {
        RankBounds { lower, upper, exact: lower == upper }
    }
}

/// Minimal generator count of a direct sum of abelian groups.
pub(crate) fn direct_sum_rank(parts: &[AbelianInvariants]) -> usize {
    let free: usize = parts.iter().map(|p| p.free_rank).sum();
    let torsion: Vec<u64> = parts.iter().flat_map(|p| p.torsion.iter().copied()).collect();
    let mut primes = BTreeSet::new();
    for &t in &torsion {
        let mut n = t;
        let mut p = 2;
        while p * p <= n {
            while n % p == 0 {
                primes.insert(p);
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            primes.insert(n);
        }
    }
    free + primes.iter().map(|p| torsion.iter().filter(|&&t| t % p == 0).count()).max().unwrap_or(0)
}

fn free_invariants(rank: usize) -> AbelianInvariants {
    AbelianInvariants { free_rank: rank, torsion: Vec::new() }
}

fn word(alphabet: Alphabet, s: &str) -> Word {
    Word::parse(alphabet, s).expect("fixed case data")
}

fn signed_letter(alphabet: Alphabet, s: i32) -> Word {
    Word::from_signed(alphabet, &[s]).expect("in range")
}

/// Abelianization of the subgroup of one factor generated by `gens`, with an
/// upper bound on its rank. Free factors fold; a surface subgroup missing a
/// generator of the relator sits in a free group; otherwise the subgroup must
/// have finite index.
fn subgroup_invariants(factor: FactorDescriptor, gens: &[Word]) -> Result<(AbelianInvariants, usize)> {
    let alphabet = Alphabet::new(factor.rank())?;
    if gens.is_empty() {
        return Ok((free_invariants(0), 0));
    }
    let p = factor.presentation();
    if p.relators().is_empty() {
        let r = CoreGraph::from_generators(alphabet, gens)?.rank();
        return Ok((free_invariants(r), r));
    }
    let whole: Vec<Word> = alphabet.generators().collect();
    if gens == whole.as_slice() {
        return Ok((p.abelianization(), factor.rank()));
    }
    let used: BTreeSet<usize> = gens.iter().flat_map(|w| w.letters().iter().map(|l| l.generator())).collect();
    if p.relators().len() == 1 && p.relators()[0].letters().iter().any(|l| !used.contains(&l.generator())) {
        let r = CoreGraph::from_generators(alphabet, gens)?.rank();
        return Ok((free_invariants(r), r));
    }
    let table = todd_coxeter(&p, gens, DEFAULT_MAX_COSETS)?;
    let sp = tietze_simplify(&reidemeister_schreier(&p, &table)?)?;
    let upper = gens.len().min(sp.presentation.generator_count());
    Ok((sp.presentation.abelianization(), upper))
}

fn require(group: &ProductGroup, x: &ProductElement, y: &ProductElement) -> Result<bool> {
    Ok(group.compare(x, y)? == Verdict3::Equal)
}

/// The automorphism of `G` sending the first generator `x` of factor `target`
/// to `t x`, for `t` central and nontrivial in factor `source`.
pub fn central_twist(group: &ProductGroup, source: usize, t: &Word, target: usize) -> Result<ProductEndo> {
    let n = group.factor_count();
    if source >= n || target >= n || source == target {
        return Err(Error::Precondition(format!("factors {source} and {target} of {n}")));
    }
    if group.factor(target).center_nontrivial() {
        return Err(Error::Precondition(format!("factor {} has nontrivial center", group.factor(target))));
    }
    if t.alphabet() != group.factor_alphabet(source) {
        return Err(Error::AlphabetMismatch { left: group.factor(source).rank(), right: t.alphabet().rank() });
    }
    let oracle = group.oracle(source);
    if oracle.is_trivial(t)? != Verdict3::NotEqual {
        return Err(Error::Precondition(format!("{t} is not certified nontrivial")));
    }
    for g in group.factor_alphabet(source).generators() {
        if oracle.equal(&t.mul(&g), &g.mul(t))? != Verdict3::Equal {
            return Err(Error::Precondition(format!("{t} is not central")));
        }
    }
    let mut images: Vec<ProductElement> =
        (1..=group.rank()).map(|g| ProductElement::letter(group, Letter::new(g, false)).expect("in range")).collect();
    images[group.offset(target)].components[source] = t.clone();
    ProductEndo::new(group, images)
}

/// Rank data for the fixed subgroup of a central twist. The fixed subgroup
/// is everything outside the target times the kernel of `w -> t^{|w|_x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub phi: ProductEndo,
    /// `None` for infinite order.
    pub order: Option<u64>,
    pub group_rank: usize,
    pub kernel: Option<RankBounds>,
    pub kernel_abelianization: Option<AbelianInvariants>,
    pub kernel_generators_fixed: bool,
    pub fix: Option<RankBounds>,
    /// Rank of the folded target shadow of fixed words, per length.
    pub growth: Vec<(usize, usize)>,
}

impl TwistReport {
    pub fn exceeds_group_rank(&self) -> bool {
        self.fix.is_some_and(|f| f.lower > self.group_rank)
    }

    pub fn growth_strictly_increasing(&self) -> bool {
        self.growth.len() >= 2 && self.growth.windows(2).all(|w| w[0].1 < w[1].1)
    }
}

pub fn twist_report(
    group: &ProductGroup,
    source: usize,
    t: &Word,
    target: usize,
    lengths: &[usize],
) -> Result<TwistReport> {
    let phi = central_twist(group, source, t, target)?;
    let order = AbelianMap::new(&group.factor(source).presentation()).order(t);
    let tf = group.factor(target);
    let ta = group.factor_alphabet(target);
    let embed = |w: &Word| {
        let mut x = ProductElement::identity(group);
        x.components[target] = w.clone();
        x
    };
    let mut report = TwistReport {
        phi: phi.clone(),
        order,
        group_rank: group.rank(),
        kernel: None,
        kernel_abelianization: None,
        kernel_generators_fixed: false,
        fix: None,
        growth: Vec::new(),
    };
    if let Some(m) = order {
        let x = signed_letter(ta, 1);
        let mut sub = vec![x.pow(m as i64)];
        for g in 2..=tf.rank() {
            for j in 0..m as i64 {
                sub.push(x.pow(j).conjugate(&signed_letter(ta, g as i32))?);
            }
        }
        let p = tf.presentation();
        let table = todd_coxeter(&p, &sub, DEFAULT_MAX_COSETS)?;
        let sp = reidemeister_schreier(&p, &table)?;
        let mut fixed = true;
        for g in &sp.generators {
            fixed &= require(group, &phi.apply(&embed(g))?, &embed(g))?;
        }
        let simplified = tietze_simplify(&sp)?;
        let ab = simplified.presentation.abelianization();
        let kernel = RankBounds::new(ab.rank(), simplified.presentation.generator_count());
        let mut parts = vec![ab.clone()];
        let mut upper = kernel.upper;
        for i in (0..group.factor_count()).filter(|&i| i != target) {
            parts.push(group.factor(i).presentation().abelianization());
            upper += group.factor(i).rank();
        }
        report.fix = Some(RankBounds::new(direct_sum_rank(&parts), upper));
        report.kernel = Some(kernel);
        report.kernel_abelianization = Some(ab);
        report.kernel_generators_fixed = fixed;
    } else {
        let max = lengths.iter().copied().max().unwrap_or(0);
        let mut fixed = Vec::new();
        for w in enumerate_words(ta, max) {
            let x = embed(&w);
            if require(group, &phi.apply(&x)?, &x)? {
                fixed.push(w);
            }
        }
        for &l in lengths {
            let gens: Vec<Word> = fixed.iter().filter(|w| w.len() <= l).cloned().collect();
            report.growth.push((l, CoreGraph::from_generators(ta, &gens)?.rank()));
        }
    }
    Ok(report)
}

/// Case ids accepted by [`non_compressed_witness`].
pub const COMPRESSION_CASES: &[&str] =
    &["euc-l2q1", "euc-l1p1q2", "hyp-FF", "hyp-SS", "hyp-NN", "hyp-FS", "hyp-FN", "hyp-SN"];

/// A fixed subgroup together with a smaller-rank overgroup `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionWitness {
    pub case: String,
    pub phi: ProductEndo,
    pub fix_generators: Vec<ProductElement>,
    pub k_generators: Vec<ProductElement>,
    /// Each fixed generator as a signed word in the `K` generators (1-based).
    pub expressions: Vec<Vec<i32>>,
    pub generators_fixed: bool,
    pub contained: bool,
    pub fix_abelianization: AbelianInvariants,
    pub fix_rank: RankBounds,
    pub k_rank_upper: usize,
}

impl CompressionWitness {
    pub fn holds(&self) -> bool {
        self.generators_fixed && self.contained && self.k_rank_upper < self.fix_rank.lower
    }

    pub fn group(&self) -> &ProductGroup {
        self.phi.group()
    }
}

fn canonical_case(case: &str) -> String {
    case.replace('ℓ', "l")
}

struct CaseData {
    factors: Vec<FactorDescriptor>,
    images: Vec<String>,
    /// (factor, local word)
    fix: Vec<(usize, String)>,
    k: Vec<String>,
    expressions: Vec<Vec<i32>>,
}

fn euclidean_case(case: &str) -> Option<CaseData> {
    use FactorDescriptor::*;
    let (factors, images) = match case {
        "euc-l2q1" => (vec![NonOrientable(2), NonOrientable(2), NonOrientable(1)], ["a", "b e", "c d", "d", "e"]),
        "euc-l1p1q2" => {
            (vec![NonOrientable(2), Free(1), NonOrientable(1), NonOrientable(1)], ["a", "b d", "c e", "d", "e"])
        }
        _ => return None,
    };
    // b b = (b c)(a b c A)^-1 and c c = (b c)(a b c A) in both groups
    let (fix, k) = if case == "euc-l2q1" {
        (vec![(0, "a"), (0, "b b"), (1, "a a"), (1, "b"), (2, "a")], ["a", "b c", "d", "e"])
    } else {
        (vec![(0, "a"), (0, "b b"), (1, "a a"), (2, "a"), (3, "a")], ["a", "b c", "d", "e"])
    };
    let expressions = vec![vec![1], vec![2, 1, -2, -1], vec![2, 1, 2, -1], vec![3], vec![4]];
    Some(CaseData {
        factors,
        images: images.iter().map(|s| s.to_string()).collect(),
        fix: fix.into_iter().map(|(i, s)| (i, s.to_string())).collect(),
        k: k.iter().map(|s| s.to_string()).collect(),
        expressions,
    })
}

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

fn name(g: usize) -> String {
    (LETTERS[g - 1] as char).to_string()
}

/// `x1 -> x1 x2` on every factor, and `x3 -> x3 x4` on surfaces. The fixed
/// subgroup of each factor is `<x2, x1 x2 x1^-1, ...>`, free since it misses
/// `x3` on surfaces; `K` glues the two `x1`s into one generator.
fn hyperbolic_case(case: &str) -> Option<CaseData> {
    let pick = |c: char| match c {
        'F' => Some(FactorDescriptor::Free(2)),
        'S' => Some(FactorDescriptor::Orientable(2)),
        'N' => Some(FactorDescriptor::NonOrientable(4)),
        _ => None,
    };
    let kinds = case.strip_prefix("hyp-")?;
    let chars: Vec<char> = kinds.chars().collect();
    if chars.len() != 2 {
        return None;
    }
    let factors = vec![pick(chars[0])?, pick(chars[1])?];
    let mut images = Vec::new();
    let mut fix = Vec::new();
    let mut rest = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        let off: usize = factors[..i].iter().map(|f| f.rank()).sum();
        let r = d.rank();
        for g in 1..=r {
            let twisted = g == 1 || (d.is_surface() && g == 3);
            images.push(if twisted { format!("{} {}", name(off + g), name(off + g + 1)) } else { name(off + g) });
        }
        fix.push((i, "b".to_string()));
        fix.push((i, "a b A".to_string()));
        let tail = if d.is_surface() { 4 } else { 3 };
        for g in tail..=r {
            fix.push((i, name(g)));
            rest.push(name(off + g));
        }
    }
    let off = factors[0].rank();
    let mut k = vec![name(2), name(off + 2), format!("{} {}", name(1), name(off + 1))];
    k.extend(rest);
    // fix order: b, a b A, rest of factor 0, then the same for factor 1
    let tail0 = fix.iter().filter(|(i, _)| *i == 0).count() - 2;
    let mut expressions = vec![vec![1], vec![3, 1, -3]];
    expressions.extend((0..tail0).map(|j| vec![4 + j as i32]));
    expressions.push(vec![2]);
    expressions.push(vec![3, 2, -3]);
    let tail1 = fix.len() - 4 - tail0;
    expressions.extend((0..tail1).map(|j| vec![(4 + tail0 + j) as i32]));
    Some(CaseData { factors, images, fix, k, expressions })
}

/// Builds and certifies a named non-compression case: every listed generator
/// is fixed, lies in `K`, and the fixed subgroup has larger rank than `K`.
pub fn non_compressed_witness(case: &str) -> Result<CompressionWitness> {
    let id = canonical_case(case);
    let data =
        euclidean_case(&id).or_else(|| hyperbolic_case(&id)).ok_or_else(|| Error::UnknownCase(case.to_string()))?;
    let group = ProductGroup::new(data.factors.clone())?;
    let ga = group.global_alphabet();
    let images: Vec<Word> = data.images.iter().map(|s| word(ga, s)).collect();
    let phi = ProductEndo::from_global_images(&group, &images)?;
    let mut fix_generators = Vec::new();
    let mut per_factor: Vec<Vec<Word>> = vec![Vec::new(); group.factor_count()];
    for (i, s) in &data.fix {
        let w = word(group.factor_alphabet(*i), s);
        let mut x = ProductElement::identity(&group);
        x.components[*i] = w.clone();
        per_factor[*i].push(w);
        fix_generators.push(x);
    }
    let k_generators: Vec<ProductElement> =
        data.k.iter().map(|s| ProductElement::from_global(&group, &word(ga, s))).collect::<Result<_>>()?;
    let mut generators_fixed = true;
    for x in &fix_generators {
        generators_fixed &= require(&group, &phi.apply(x)?, x)?;
    }
    let mut contained = true;
    for (x, e) in fix_generators.iter().zip(&data.expressions) {
        let value = e.iter().fold(ProductElement::identity(&group), |acc, &s| {
            let k = &k_generators[s.unsigned_abs() as usize - 1];
            acc.mul(&if s < 0 { k.inverse() } else { k.clone() })
        });
        contained &= require(&group, &value, x)?;
    }
    let mut parts = Vec::new();
    let mut upper = 0;
    for (i, gens) in per_factor.iter().enumerate() {
        let (ab, u) = subgroup_invariants(group.factor(i), gens)?;
        parts.push(ab);
        upper += u;
    }
    let fix_abelianization = AbelianInvariants {
        free_rank: parts.iter().map(|p| p.free_rank).sum(),
        torsion: {
            let mut t: Vec<u64> = parts.iter().flat_map(|p| p.torsion.iter().copied()).collect();
            t.sort();
            t
        },
    };
    let fix_rank = RankBounds::new(direct_sum_rank(&parts), upper);
    Ok(CompressionWitness {
        case: id,
        phi,
        fix_generators,
        k_rank_upper: k_generators.len(),
        k_generators,
        expressions: data.expressions,
        generators_fixed,
        contained,
        fix_abelianization,
        fix_rank,
    })
}

/// Case ids accepted by [`non_inert_witness`].
pub const INERTIA_CASES: &[&str] = &["final-corollary", "fr-ns3", "sg-ns3", "nsk-ns3"];

/// A fixed subgroup whose intersection with a finitely generated `K` keeps
/// growing with the enumeration length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaWitness {
    pub case: String,
    pub phi: ProductEndo,
    pub k_generators: Vec<ProductElement>,
    /// Rank of the folded first-factor shadow of certified fixed `K`-words, per length.
    pub growth: Vec<(usize, usize)>,
    /// `K`-words no oracle could decide.
    pub uncertain: usize,
    /// `φ(t) t^-1` has infinite order in the abelianization of the second
    /// factor, so no nontrivial power of `t` is fixed.
    pub abelian_certificate: bool,
    /// Bounded compression probe on the fixed subgroup, where it is a whole free factor.
    pub compression: Option<ProbeReport>,
}

impl InertiaWitness {
    pub fn growth_strictly_increasing(&self) -> bool {
        self.growth.len() >= 2 && self.growth.windows(2).all(|w| w[0].1 < w[1].1)
    }

    pub fn group(&self) -> &ProductGroup {
        self.phi.group()
    }
}

/// Builds a named non-inertia case and tabulates the growth. The lengths are
/// chosen per case to keep the enumeration small.
pub fn non_inert_witness(case: &str) -> Result<InertiaWitness> {
    use FactorDescriptor::*;
    let (factors, images, k, lengths): (Vec<FactorDescriptor>, &[&str], &[&str], &[usize]) = match case {
        "final-corollary" => (vec![Free(2), Free(1)], &["a", "b", "C"], &["a c", "b"], &[4, 6, 8, 10]),
        "fr-ns3" => (vec![Free(2), NonOrientable(3)], &["a", "b", "c d", "d", "e"], &["a c", "b"], &[4, 6, 8, 10]),
        "sg-ns3" => (
            vec![Orientable(2), NonOrientable(3)],
            &["a", "b", "c", "d", "e f", "f", "g"],
            &["a e", "b", "c", "d"],
            &[1, 3, 5],
        ),
        "nsk-ns3" => (
            vec![NonOrientable(4), NonOrientable(3)],
            &["a", "b", "c", "d", "e f", "f", "g"],
            &["a e", "b", "c", "d"],
            &[1, 3, 5],
        ),
        _ => return Err(Error::UnknownCase(case.to_string())),
    };
    let group = ProductGroup::new(factors)?;
    let ga = group.global_alphabet();
    let images: Vec<Word> = images.iter().map(|s| word(ga, s)).collect();
    let phi = ProductEndo::from_global_images(&group, &images)?;
    let k_generators: Vec<ProductElement> =
        k.iter().map(|s| ProductElement::from_global(&group, &word(ga, s))).collect::<Result<_>>()?;
    let ka = Alphabet::new(k_generators.len())?;
    let homs: Vec<FreeHom> = (0..group.factor_count())
        .map(|i| {
            FreeHom::new(ka, group.factor_alphabet(i), k_generators.iter().map(|x| x.components[i].clone()).collect())
        })
        .collect::<Result<_>>()?;
    let max = lengths.iter().copied().max().unwrap_or(0);
    let mut certified: Vec<(usize, Word)> = Vec::new();
    let mut uncertain = 0;
    for w in enumerate_words(ka, max) {
        let components = homs.iter().map(|h| h.apply_unchecked(&w)).collect();
        let x = ProductElement { components };
        match group.compare(&phi.apply(&x)?, &x)? {
            Verdict3::Equal => certified.push((w.len(), x.components[0].clone())),
            Verdict3::Unknown => uncertain += 1,
            Verdict3::NotEqual => {}
        }
    }
    let fa = group.factor_alphabet(0);
    let mut growth = Vec::new();
    for &l in lengths {
        let gens: Vec<Word> = certified.iter().filter(|(n, _)| *n <= l).map(|(_, w)| w.clone()).collect();
        growth.push((l, CoreGraph::from_generators(fa, &gens)?.rank()));
    }
    let t = signed_letter(group.factor_alphabet(1), 1);
    let mut tx = ProductElement::identity(&group);
    tx.components[1] = t.clone();
    let moved = phi.apply(&tx)?.components[1].mul(&t.invert());
    let abelian_certificate = AbelianMap::new(&group.factor(1).presentation()).order(&moved).is_none();
    let compression = if case == "final-corollary" {
        Some(probe_compressed(&CoreGraph::whole(fa), ProbeBounds::new(2, 4)?))
    } else {
        None
    };
    Ok(InertiaWitness {
        case: case.to_string(),
        phi,
        k_generators,
        growth,
        uncertain,
        abelian_certificate,
        compression,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_product_group;

    fn local(g: &ProductGroup, i: usize, s: &str) -> Word {
        Word::parse(g.factor_alphabet(i), s).unwrap()
    }

    #[test]
    fn direct_sum_ranks() {
        let z2 = AbelianInvariants { free_rank: 0, torsion: vec![2] };
        let z3 = AbelianInvariants { free_rank: 0, torsion: vec![3] };
        assert_eq!(direct_sum_rank(&[z2.clone(), z3.clone()]), 1);
        assert_eq!(direct_sum_rank(&[z2.clone(), z2.clone(), free_invariants(3)]), 5);
        assert_eq!(direct_sum_rank(&[AbelianInvariants { free_rank: 1, torsion: vec![6] }, z3]), 3);
        assert_eq!(direct_sum_rank(&[]), 0);
    }

    #[test]
    fn twist_checks_its_inputs() {
        let g = parse_product_group("C2 x F2").unwrap();
        let t = local(&g, 0, "a");
        assert!(central_twist(&g, 0, &t, 1).is_ok());
        assert!(central_twist(&g, 1, &local(&g, 1, "a"), 0).is_err());
        assert!(central_twist(&g, 0, &local(&g, 0, ""), 1).is_err());
        let k = parse_product_group("NS2 x F2").unwrap();
        assert!(central_twist(&k, 0, &local(&k, 0, "b"), 1).is_err());
        assert!(central_twist(&k, 0, &local(&k, 0, "a a"), 1).is_ok());
    }

    #[test]
    fn finite_order_twists_outgrow_the_group() {
        let g = parse_product_group("C2 x F2").unwrap();
        let r = twist_report(&g, 0, &local(&g, 0, "a"), 1, &[]).unwrap();
        assert_eq!(r.order, Some(2));
        assert_eq!(r.kernel, Some(RankBounds::new(3, 3)));
        assert_eq!(r.fix, Some(RankBounds::new(4, 4)));
        assert!(r.kernel_generators_fixed);
        assert!(r.exceeds_group_rank());

        let n = parse_product_group("C2 x NS3").unwrap();
        let r = twist_report(&n, 0, &local(&n, 0, "a"), 1, &[]).unwrap();
        assert_eq!(r.kernel.unwrap().lower, 4);
        assert_eq!(r.fix.unwrap().lower, 5);
        assert!(r.exceeds_group_rank());
    }

    #[test]
    fn infinite_order_twist_grows() {
        let g = parse_product_group("Z x F2").unwrap();
        let r = twist_report(&g, 0, &local(&g, 0, "a"), 1, &[4, 6, 8]).unwrap();
        assert_eq!(r.order, None);
        // the kernel of the a-exponent is the normal closure of b: b, a b A, A b a, ...
        assert_eq!(r.growth, vec![(4, 3), (6, 5), (8, 7)]);
        assert!(r.growth_strictly_increasing());
    }

    #[test]
    fn compression_cases_hold() {
        let expected = [
            ("euc-l2q1", 5, 4),
            ("euc-l1p1q2", 5, 4),
            ("hyp-FF", 4, 3),
            ("hyp-SS", 6, 5),
            ("hyp-NN", 6, 5),
            ("hyp-FS", 5, 4),
            ("hyp-FN", 5, 4),
            ("hyp-SN", 6, 5),
        ];
        for (case, fix, k) in expected {
            let w = non_compressed_witness(case).unwrap();
            assert!(w.generators_fixed && w.contained, "{case}");
            assert_eq!(w.fix_rank, RankBounds::new(fix, fix), "{case}");
            assert_eq!(w.k_rank_upper, k, "{case}");
            assert!(w.holds());
        }
        assert_eq!(non_compressed_witness("euc-ℓ2q1").unwrap().case, "euc-l2q1");
        assert!(non_compressed_witness("hyp-XY").is_err());
        assert_eq!(COMPRESSION_CASES.len(), expected.len());
    }

    #[test]
    fn euclidean_fix_structure() {
        let w = non_compressed_witness("euc-l2q1").unwrap();
        assert_eq!(w.fix_abelianization.to_string(), "Z^3 + Z/2 + Z/2");
        assert_eq!(w.group().to_string(), "NS2^2 x C2");
    }

    #[test]
    fn identity_times_inversion_growth() {
        let w = non_inert_witness("final-corollary").unwrap();
        assert_eq!(w.growth, vec![(4, 3), (6, 5), (8, 7), (10, 9)]);
        assert!(w.abelian_certificate);
        assert!(w.compression.as_ref().unwrap().passed());
        assert_eq!(w.uncertain, 0);
    }

    #[test]
    fn ns3_cases_grow() {
        let w = non_inert_witness("fr-ns3").unwrap();
        assert!(w.abelian_certificate);
        assert_eq!(w.growth, vec![(4, 3), (6, 5), (8, 7), (10, 9)]);
        assert!(non_inert_witness("nope").is_err());
    }
}

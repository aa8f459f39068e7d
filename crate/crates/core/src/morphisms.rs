//! Homomorphisms between free groups, fixed words and equalizers.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stallings::{
    candidate_subgroups, probe_inert_against, CoreGraph, Folder, ProbeBounds, ProbeReport, ProbeWitness,
};
use crate::words::{Alphabet, Letter, Word};

/// A homomorphism `F(domain) -> F(codomain)` given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeHom {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

/// Endomorphisms are homomorphisms with equal domain and codomain.
pub type FreeEndo = FreeHom;

impl FreeHom {
    pub fn new(domain: Alphabet, codomain: Alphabet, images: Vec<Word>) -> Result<FreeHom> {
        if images.len() != domain.rank() {
            return Err(Error::Precondition(format!(
                "expected {} generator images, got {}",
                domain.rank(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|w| w.alphabet() != codomain) {
            return Err(Error::AlphabetMismatch { left: codomain.rank(), right: bad.alphabet().rank() });
        }
        Ok(FreeHom { domain, codomain, images })
    }

    pub fn endo(alphabet: Alphabet, images: Vec<Word>) -> Result<FreeHom> {
        FreeHom::new(alphabet, alphabet, images)
    }

    /// Endomorphism from image strings, e.g. `["a b", "b"]`.
    pub fn parse_endo(alphabet: Alphabet, images: &[&str]) -> Result<FreeHom> {
        let words = images.iter().map(|s| Word::parse(alphabet, s)).collect::<Result<Vec<_>>>()?;
        FreeHom::endo(alphabet, words)
    }

    pub fn identity(alphabet: Alphabet) -> FreeHom {
        FreeHom { domain: alphabet, codomain: alphabet, images: alphabet.generators().collect() }
    }

    pub fn domain(&self) -> Alphabet {
        self.domain
    }

    pub fn codomain(&self) -> Alphabet {
        self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_endo(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn is_identity(&self) -> bool {
        self.is_endo() && self.images.iter().zip(self.domain.generators()).all(|(img, g)| *img == g)
    }

    /// Longest generator image.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    fn letter_image(&self, l: Letter) -> Word {
        let img = &self.images[l.generator() - 1];
        if l.is_inverse() {
            img.invert()
        } else {
            img.clone()
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != self.domain {
            return Err(Error::AlphabetMismatch { left: self.domain.rank(), right: w.alphabet().rank() });
        }
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len() * 2);
        for &l in w.letters() {
            let img = &self.images[l.generator() - 1];
            if l.is_inverse() {
                push_reduced(&mut out, img.letters().iter().rev().map(|x| x.inverse()));
            } else {
                push_reduced(&mut out, img.letters().iter().copied());
            }
        }
        Word::from_reduced_unchecked(self.codomain, out)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &FreeHom) -> Result<FreeHom> {
        if other.codomain != self.domain {
            return Err(Error::AlphabetMismatch { left: self.domain.rank(), right: other.codomain.rank() });
        }
        Ok(FreeHom {
            domain: other.domain,
            codomain: self.codomain,
            images: other.images.iter().map(|w| self.apply_unchecked(w)).collect(),
        })
    }

    /// Graph of the image subgroup.
    pub fn image_subgroup(&self) -> CoreGraph {
        CoreGraph::from_generators(self.codomain, &self.images).expect("images live in the codomain")
    }
}

fn push_reduced(out: &mut Vec<Letter>, letters: impl Iterator<Item = Letter>) {
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

impl fmt::Display for FreeHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(i, w)| format!("{} -> {}", Letter::new(i + 1, false), w)).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A nonempty finite family of endomorphisms of one free group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoFamily {
    alphabet: Alphabet,
    members: Vec<FreeHom>,
}

impl EndoFamily {
    pub fn new(members: Vec<FreeHom>) -> Result<EndoFamily> {
        let first = members.first().ok_or_else(|| Error::Precondition("empty endomorphism family".into()))?;
        let alphabet = first.domain;
        for m in &members {
            if !m.is_endo() || m.domain != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: m.codomain.rank() });
            }
        }
        Ok(EndoFamily { alphabet, members })
    }

    pub fn single(phi: FreeHom) -> Result<EndoFamily> {
        EndoFamily::new(vec![phi])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn members(&self) -> &[FreeHom] {
        &self.members
    }
}

/// Result of the composition-monoid search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalImage {
    pub beta0: FreeHom,
    pub rank: usize,
    /// Member indices `[i1, ..., ik]` meaning `β_i1 ∘ ... ∘ β_ik`; empty is the identity.
    pub word: Vec<usize>,
    pub explored: usize,
}

/// Breadth-first search of compositions of at most `depth` members,
/// deduplicated by image tuple, for one of minimal image rank.
pub fn minimal_image_search(family: &EndoFamily, depth: usize) -> Result<MinimalImage> {
    if depth == 0 {
        return Err(Error::Precondition("search depth must be at least 1".into()));
    }
    let id = FreeHom::identity(family.alphabet);
    let mut seen: HashSet<Vec<Word>> = HashSet::new();
    seen.insert(id.images.clone());
    let mut best = MinimalImage { rank: id.image_subgroup().rank(), beta0: id.clone(), word: vec![], explored: 1 };
    let mut layer = vec![(id, Vec::<usize>::new())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (phi, word) in &layer {
            for (i, m) in family.members.iter().enumerate() {
                let psi = phi.compose(m).expect("common alphabet");
                if !seen.insert(psi.images.clone()) {
                    continue;
                }
                let mut w = word.clone();
                w.push(i);
                next.push((psi, w));
            }
        }
        let ranks: Vec<usize> = next.par_iter().map(|(psi, _)| psi.image_subgroup().rank()).collect();
        best.explored += next.len();
        for ((psi, w), r) in next.iter().zip(ranks) {
            if r < best.rank {
                best.rank = r;
                best.beta0 = psi.clone();
                best.word = w.clone();
            }
        }
        layer = next;
    }
    Ok(best)
}

/// Reduced letter stack with undo, used by the equalizer search.
struct Stack {
    letters: Vec<Letter>,
}

impl Stack {
    /// Multiplies by a reduced word; returns (letters pushed, letters popped to `log`).
    fn push(&mut self, word: &[Letter], log: &mut Vec<Letter>) -> (usize, usize) {
        let (mut pushed, mut popped) = (0, 0);
        for &l in word {
            if pushed == 0 && self.letters.last() == Some(&l.inverse()) {
                log.push(self.letters.pop().expect("nonempty"));
                popped += 1;
            } else {
                self.letters.push(l);
                pushed += 1;
            }
        }
        (pushed, popped)
    }

    fn undo(&mut self, pushed: usize, popped: usize, log: &mut Vec<Letter>) {
        let keep = self.letters.len() - pushed;
        self.letters.truncate(keep);
        for _ in 0..popped {
            self.letters.push(log.pop().expect("undo log"));
        }
    }
}

fn common_prefix(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

struct Search<'a> {
    homs: &'a [FreeHom],
    /// per hom, images of every letter key
    letter_images: Vec<Vec<Vec<Letter>>>,
    max_len: Vec<usize>,
    limit: usize,
}

impl Search<'_> {
    fn new(homs: &[FreeHom], limit: usize) -> Search<'_> {
        let letter_images = homs
            .iter()
            .map(|h| {
                (0..h.domain.letter_count()).map(|k| h.letter_image(Letter::from_key(k)).letters().to_vec()).collect()
            })
            .collect();
        Search { homs, letter_images, max_len: homs.iter().map(FreeHom::max_image_len).collect(), limit }
    }

    fn all_agree(&self, stacks: &[Stack]) -> bool {
        stacks[1..].iter().all(|s| s.letters == stacks[0].letters)
    }

    fn prunable(&self, stacks: &[Stack], depth: usize) -> bool {
        let room = self.limit - depth;
        let first = &stacks[0].letters;
        stacks[1..].iter().enumerate().any(|(i, s)| {
            let lcp = common_prefix(first, &s.letters);
            let gap = first.len() + s.letters.len() - 2 * lcp;
            gap > (self.max_len[0] + self.max_len[i + 1]) * room
        })
    }

    fn dfs(&self, word: &mut Vec<Letter>, stacks: &mut [Stack], log: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if self.all_agree(stacks) {
            out.push(Word::from_reduced_unchecked(self.homs[0].domain, word.clone()));
        }
        if word.len() == self.limit {
            return;
        }
        let keys = self.homs[0].domain.letter_count();
        for key in 0..keys {
            let l = Letter::from_key(key);
            if word.last() == Some(&l.inverse()) {
                continue;
            }
            self.descend(l, word, stacks, log, out);
        }
    }

    fn descend(
        &self,
        l: Letter,
        word: &mut Vec<Letter>,
        stacks: &mut [Stack],
        log: &mut Vec<Letter>,
        out: &mut Vec<Word>,
    ) {
        let mut undo = Vec::with_capacity(stacks.len());
        for (h, s) in stacks.iter_mut().enumerate() {
            undo.push(s.push(&self.letter_images[h][l.key()], log));
        }
        word.push(l);
        if !self.prunable(stacks, word.len()) {
            self.dfs(word, stacks, log, out);
        }
        word.pop();
        for (s, (pushed, popped)) in stacks.iter_mut().zip(undo).rev() {
            s.undo(pushed, popped, log);
        }
    }
}

/// Words of length at most `limit` on which all `homs` agree, in shortlex order.
///
/// Depth-first over reduced words with an exact prune: once two images of a
/// prefix differ by more than the remaining letters can repair, no extension
/// can be equalized.
pub fn equalizer_words(homs: &[FreeHom], limit: usize) -> Result<Vec<Word>> {
    let first = homs.first().ok_or_else(|| Error::Precondition("empty morphism family".into()))?;
    for h in homs {
        if h.domain != first.domain {
            return Err(Error::AlphabetMismatch { left: first.domain.rank(), right: h.domain.rank() });
        }
        if h.codomain != first.codomain {
            return Err(Error::AlphabetMismatch { left: first.codomain.rank(), right: h.codomain.rank() });
        }
    }
    let search = Search::new(homs, limit);
    let alphabet = first.domain;
    let mut words: Vec<Word> = vec![Word::identity(alphabet)];
    if limit > 0 {
        let parts: Vec<Vec<Word>> = (0..alphabet.letter_count())
            .into_par_iter()
            .map(|key| {
                let mut stacks: Vec<Stack> = homs.iter().map(|_| Stack { letters: Vec::new() }).collect();
                let mut out = Vec::new();
                let mut log = Vec::new();
                search.descend(Letter::from_key(key), &mut Vec::new(), &mut stacks, &mut log, &mut out);
                out
            })
            .collect();
        words.extend(parts.into_iter().flatten());
    }
    words.sort();
    Ok(words)
}

/// Reduced words of length at most `limit` fixed by every member.
pub fn fixed_words(family: &EndoFamily, limit: usize) -> Vec<Word> {
    let mut homs = vec![FreeHom::identity(family.alphabet)];
    homs.extend(family.members.iter().filter(|m| !m.is_identity()).cloned());
    if homs.len() == 1 {
        return crate::words::enumerate_words(family.alphabet, limit).collect();
    }
    equalizer_words(&homs, limit).expect("family shares an alphabet")
}

/// Subgroup generated by fixed words, an under-approximation of `Fix B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixApproximation {
    pub graph: CoreGraph,
    pub length: usize,
    /// Ranks at lengths `L-2`, `L-1`, `L`.
    pub ranks: [usize; 3],
    /// Equal ranks at three consecutive lengths. Heuristic only.
    pub stabilized: bool,
}

pub(crate) fn fold_words<'a>(alphabet: Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Folder {
    let mut folder = Folder::new(alphabet);
    for w in words {
        if !folder.contains(w) {
            folder.add_loop(w);
        }
    }
    folder
}

/// Approximates `Fix B` from below by folding fixed words of length at most `limit`.
pub fn fix_subgroup_approx(family: &EndoFamily, limit: usize) -> Result<FixApproximation> {
    if limit < 2 {
        return Err(Error::Precondition("fix approximation needs length at least 2".into()));
    }
    let alphabet = family.alphabet;
    if family.members.iter().all(FreeHom::is_identity) {
        let r = alphabet.rank();
        return Ok(FixApproximation {
            graph: CoreGraph::whole(alphabet),
            length: limit,
            ranks: [r; 3],
            stabilized: true,
        });
    }
    let words = fixed_words(family, limit);
    let mut ranks = [0; 3];
    let mut folder = Folder::new(alphabet);
    let mut cursor = 0;
    for (slot, bound) in (limit - 2..=limit).enumerate() {
        while cursor < words.len() && words[cursor].len() <= bound {
            if !folder.contains(&words[cursor]) {
                folder.add_loop(&words[cursor]);
            }
            cursor += 1;
        }
        ranks[slot] = folder.rank();
    }
    let graph = folder.finish();
    for g in graph.generators() {
        for m in &family.members {
            assert_eq!(m.apply_unchecked(&g), g, "folded generator {g} is not fixed by {m}");
        }
    }
    Ok(FixApproximation { graph, length: limit, ranks, stabilized: ranks[0] == ranks[1] && ranks[1] == ranks[2] })
}

/// Bergman-type check on sections `σ_i` of `π`: the equalizer has rank at most `rk F_m`.
pub fn sections_equalizer_check(pi: &FreeHom, sections: &[FreeHom], limit: usize) -> Result<ProbeReport> {
    let m = pi.codomain;
    for s in sections {
        if s.domain != m || s.codomain != pi.domain {
            return Err(Error::AlphabetMismatch { left: m.rank(), right: s.domain.rank() });
        }
        let back = pi.compose(s)?;
        for (i, (img, g)) in back.images.iter().zip(m.generators()).enumerate() {
            if *img != g {
                return Err(Error::SectionLawViolated { generator: i + 1 });
            }
        }
    }
    let words = if sections.is_empty() {
        crate::words::enumerate_words(m, limit).collect()
    } else {
        equalizer_words(sections, limit)?
    };
    let graph = fold_words(m, &words).finish();
    let witnesses = if graph.rank() > m.rank() {
        vec![ProbeWitness { subgroup: graph.describe(), ranks: (graph.rank(), m.rank()) }]
    } else {
        vec![]
    };
    Ok(ProbeReport::from_violations("rk(Eq) <= rk(F_m)", None, words.len(), witnesses))
}

/// Both halves of the free-group criterion at a given scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainFreeCheck {
    /// Every fixed word of length at most `L` lying in `β₀(K)` lies in `K`.
    pub hypothesis: bool,
    /// `rk(K ∩ FixApprox) <= rk(K)`.
    pub conclusion: bool,
    pub k_rank: usize,
    pub meet_rank: usize,
    pub fix_rank: usize,
    /// Fails only when the hypothesis holds and the conclusion does not.
    pub report: ProbeReport,
}

pub fn verify_main_free(family: &EndoFamily, beta0: &FreeHom, k: &CoreGraph, limit: usize) -> Result<MainFreeCheck> {
    if beta0.domain != family.alphabet || k.alphabet() != family.alphabet {
        return Err(Error::AlphabetMismatch { left: family.alphabet.rank(), right: beta0.domain.rank() });
    }
    let image: Vec<Word> = k.generators().iter().map(|g| beta0.apply_unchecked(g)).collect();
    let beta_k = CoreGraph::from_generators(family.alphabet, &image)?;
    let words = fixed_words(family, limit);
    let hypothesis = words.iter().filter(|x| beta_k.contains_unchecked(x)).all(|x| k.contains_unchecked(x));
    let fix = fix_subgroup_approx(family, limit.max(2))?;
    let meet = k.intersect(&fix.graph)?;
    let conclusion = meet.rank() <= k.rank();
    let witnesses = if hypothesis && !conclusion {
        vec![ProbeWitness { subgroup: k.describe(), ranks: (meet.rank(), k.rank()) }]
    } else {
        vec![]
    };
    Ok(MainFreeCheck {
        hypothesis,
        conclusion,
        k_rank: k.rank(),
        meet_rank: meet.rank(),
        fix_rank: fix.graph.rank(),
        report: ProbeReport::from_violations("rk(K ∩ Fix) <= rk(K)", None, words.len(), witnesses),
    })
}

/// `probe_inert` on a fix approximation, reusing a candidate list.
pub fn probe_fix_inert(family: &EndoFamily, limit: usize, bounds: ProbeBounds) -> Result<ProbeReport> {
    let fix = fix_subgroup_approx(family, limit)?;
    let cands = candidate_subgroups(family.alphabet, bounds);
    Ok(probe_inert_against(&fix.graph, &cands, Some(bounds)))
}

/// `rk(FixApprox) <= rk(F)` for every catalogue entry.
pub fn bh_catalogue_check(catalogue: &[FreeHom], limit: usize) -> Result<ProbeReport> {
    if limit < 8 {
        return Err(Error::Precondition("catalogue check needs length at least 8".into()));
    }
    let results: Vec<Result<Option<ProbeWitness>>> = catalogue
        .par_iter()
        .map(|phi| {
            let fam = EndoFamily::single(phi.clone())?;
            let fix = fix_subgroup_approx(&fam, limit)?;
            let r = phi.domain.rank();
            Ok((fix.graph.rank() > r).then(|| ProbeWitness {
                subgroup: format!("Fix({phi}) ⊇ {}", fix.graph.describe()),
                ranks: (fix.graph.rank(), r),
            }))
        })
        .collect();
    let mut witnesses = Vec::new();
    for r in results {
        witnesses.extend(r?);
    }
    Ok(ProbeReport::from_violations("rk(Fix φ) <= rk(F)", None, catalogue.len(), witnesses))
}

/// Nielsen generators of `Aut(F_r)`: a transposition, a cycle, an inversion
/// and a transvection (omitting duplicates in low rank).
pub fn nielsen_generators(alphabet: Alphabet) -> Vec<FreeHom> {
    let r = alphabet.rank();
    let gens: Vec<Word> = alphabet.generators().collect();
    let mut out = Vec::new();
    let with = |f: &dyn Fn(&mut Vec<Word>)| {
        let mut images = gens.clone();
        f(&mut images);
        FreeHom::endo(alphabet, images).expect("same alphabet")
    };
    out.push(with(&|im| im[0] = im[0].invert()));
    if r >= 2 {
        out.push(with(&|im| im.swap(0, 1)));
        out.push(with(&|im| im[0] = gens[0].mul(&gens[1])));
    }
    if r >= 3 {
        out.push(with(&|im| im.rotate_left(1)));
    }
    out
}

/// Nielsen generators of `F2` and `F3` plus seeded random compositions of
/// depth at most 4.
pub fn bh_catalogue(seed: u64, random_per_rank: usize) -> Vec<FreeHom> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for rank in [2, 3] {
        let alphabet = Alphabet::new(rank).expect("positive rank");
        let gens = nielsen_generators(alphabet);
        out.extend(gens.iter().cloned());
        for _ in 0..random_per_rank {
            let depth = rng.gen_range(2..=4);
            let mut phi = FreeHom::identity(alphabet);
            for _ in 0..depth {
                let g = &gens[rng.gen_range(0..gens.len())];
                phi = phi.compose(g).expect("same alphabet");
            }
            out.push(phi);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_words;

    fn f2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(f2(), s).unwrap()
    }

    fn endo(images: &[&str]) -> FreeHom {
        FreeHom::parse_endo(f2(), images).unwrap()
    }

    #[test]
    fn apply_examples() {
        let id = FreeHom::identity(f2());
        assert_eq!(id.apply(&w("a b A")).unwrap(), w("a b A"));
        let phi = endo(&["a b", "b"]);
        assert_eq!(phi.apply(&w("a b A")).unwrap(), w("a b A"));
        assert!(phi.apply(&Word::identity(Alphabet::new(3).unwrap())).is_err());
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let phi = endo(&["a b A", "b b a"]);
        let words: Vec<Word> = enumerate_words(f2(), 4).collect();
        for u in &words {
            for v in &words {
                let lhs = phi.apply(&u.mul(v)).unwrap();
                let rhs = phi.apply(u).unwrap().mul(&phi.apply(v).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn compose_examples() {
        let id = FreeHom::identity(f2());
        let phi = endo(&["a b", "b A"]);
        assert_eq!(id.compose(&phi).unwrap(), phi);
        let sq = endo(&["a a", "b"]);
        assert_eq!(sq.compose(&id).unwrap(), sq);
        let cat = bh_catalogue(3, 4);
        for x in cat.iter().filter(|h| h.domain.rank() == 2).take(4) {
            for y in cat.iter().filter(|h| h.domain.rank() == 2).take(4) {
                for z in cat.iter().filter(|h| h.domain.rank() == 2).take(4) {
                    let l = x.compose(&y.compose(z).unwrap()).unwrap();
                    let r = x.compose(y).unwrap().compose(z).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn image_subgroup_examples() {
        assert_eq!(FreeHom::identity(f2()).image_subgroup(), CoreGraph::whole(f2()));
        assert_eq!(endo(&["a a", "a"]).image_subgroup().rank(), 1);
        assert_eq!(endo(&["a b", "b"]).image_subgroup().rank(), 2);
    }

    #[test]
    fn minimal_image_examples() {
        let fam = EndoFamily::single(FreeHom::identity(f2())).unwrap();
        let m = minimal_image_search(&fam, 3).unwrap();
        assert_eq!((m.rank, m.word.len()), (2, 0));
        let fam = EndoFamily::single(endo(&["a a", "a"])).unwrap();
        let m = minimal_image_search(&fam, 1).unwrap();
        assert_eq!((m.rank, m.word.clone()), (1, vec![0]));
        assert_eq!(m.beta0.image_subgroup().rank(), 1);
        let fam = EndoFamily::new(nielsen_generators(f2())).unwrap();
        assert_eq!(minimal_image_search(&fam, 3).unwrap().rank, 2);
    }

    #[test]
    fn minimal_rank_non_increasing_in_depth() {
        let fam = EndoFamily::new(vec![endo(&["a b", "b a"]), endo(&["a", "a b A"])]).unwrap();
        let mut last = usize::MAX;
        for d in 1..=4 {
            let r = minimal_image_search(&fam, d).unwrap().rank;
            assert!(r <= last);
            last = r;
        }
    }

    fn brute_fixed(fam: &EndoFamily, limit: usize) -> Vec<Word> {
        enumerate_words(fam.alphabet, limit)
            .filter(|x| fam.members.iter().all(|m| m.apply_unchecked(x) == *x))
            .collect()
    }

    #[test]
    fn fixed_words_examples() {
        let id = EndoFamily::single(FreeHom::identity(f2())).unwrap();
        assert_eq!(fixed_words(&id, 2).len(), 17);
        let fam = EndoFamily::single(endo(&["a b", "b"])).unwrap();
        let fixed = fixed_words(&fam, 3);
        for x in ["b", "b b", "b b b", "a b A", "B", "a B A"] {
            assert!(fixed.contains(&w(x)), "{x}");
        }
        assert!(!fixed.contains(&w("a")));
        let fam = EndoFamily::single(endo(&["A", "b"])).unwrap();
        let fixed = fixed_words(&fam, 5);
        let expected: Vec<Word> =
            (-5..=5).map(|k| w("b").pow(k)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        assert_eq!(fixed, expected);
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let cases = [
            vec![endo(&["a b", "b"])],
            vec![endo(&["b", "a"])],
            vec![endo(&["b a B", "b"])],
            vec![endo(&["a b", "b"]), endo(&["a", "a b A"])],
            vec![endo(&["a a", "b"])],
            vec![endo(&["a B", "b A b"])],
        ];
        for members in cases {
            let fam = EndoFamily::new(members).unwrap();
            assert_eq!(fixed_words(&fam, 7), brute_fixed(&fam, 7));
        }
    }

    #[test]
    fn fix_approx_examples() {
        let id = EndoFamily::single(FreeHom::identity(f2())).unwrap();
        assert_eq!(fix_subgroup_approx(&id, 4).unwrap().graph, CoreGraph::whole(f2()));
        let fam = EndoFamily::single(endo(&["a b", "b"])).unwrap();
        let fix = fix_subgroup_approx(&fam, 10).unwrap();
        let expected = CoreGraph::from_generators(f2(), &[w("b"), w("a b A")]).unwrap();
        assert_eq!(fix.graph, expected);
        assert!(fix.stabilized);
        let swap = EndoFamily::single(endo(&["b", "a"])).unwrap();
        let fix = fix_subgroup_approx(&swap, 8).unwrap();
        assert!(fix.graph.rank() <= 2);
    }

    #[test]
    fn fix_approx_ignores_identity_members() {
        let phi = endo(&["a b", "b"]);
        let a = EndoFamily::new(vec![FreeHom::identity(f2()), phi.clone()]).unwrap();
        let b = EndoFamily::single(phi).unwrap();
        assert_eq!(fix_subgroup_approx(&a, 8).unwrap().graph, fix_subgroup_approx(&b, 8).unwrap().graph);
    }

    #[test]
    fn fix_approx_monotone() {
        let fam = EndoFamily::single(endo(&["b a B", "b"])).unwrap();
        let small = fix_subgroup_approx(&fam, 6).unwrap().graph;
        let big = fix_subgroup_approx(&fam, 7).unwrap().graph;
        for x in enumerate_words(f2(), 6) {
            if small.contains_unchecked(&x) {
                assert!(big.contains_unchecked(&x));
            }
        }
    }

    #[test]
    fn equalizer_examples() {
        let phi = endo(&["a b", "b"]);
        let all: Vec<Word> = enumerate_words(f2(), 3).collect();
        assert_eq!(equalizer_words(std::slice::from_ref(&phi), 3).unwrap(), all);
        let fam = EndoFamily::single(phi.clone()).unwrap();
        assert_eq!(equalizer_words(&[FreeHom::identity(f2()), phi], 6).unwrap(), fixed_words(&fam, 6));
        let f1 = Alphabet::new(1).unwrap();
        let s1 = FreeHom::new(f1, f2(), vec![w("a")]).unwrap();
        let s2 = FreeHom::new(f1, f2(), vec![w("a b")]).unwrap();
        assert_eq!(equalizer_words(&[s1, s2], 8).unwrap(), vec![Word::identity(f1)]);
    }

    #[test]
    fn sections_examples() {
        let f1 = Alphabet::new(1).unwrap();
        let x = Word::parse(f1, "a").unwrap();
        let pi = FreeHom::new(f2(), f1, vec![x.clone(), Word::identity(f1)]).unwrap();
        let s1 = FreeHom::new(f1, f2(), vec![w("a")]).unwrap();
        let s2 = FreeHom::new(f1, f2(), vec![w("a b")]).unwrap();
        let single = sections_equalizer_check(&pi, std::slice::from_ref(&s1), 6).unwrap();
        assert!(single.passed());
        let pair = sections_equalizer_check(&pi, &[s1.clone(), s2], 6).unwrap();
        assert!(pair.passed());
        let twice = sections_equalizer_check(&pi, &[s1.clone(), s1], 6).unwrap();
        assert_eq!(twice, single);
        let bad = FreeHom::new(f1, f2(), vec![w("b")]).unwrap();
        assert_eq!(sections_equalizer_check(&pi, &[bad], 4), Err(Error::SectionLawViolated { generator: 1 }));
    }

    #[test]
    fn main_free_examples() {
        let fam = EndoFamily::single(endo(&["a b", "b"])).unwrap();
        let beta = minimal_image_search(&fam, 2).unwrap().beta0;
        let check = verify_main_free(&fam, &beta, &CoreGraph::whole(f2()), 8).unwrap();
        assert!(check.hypothesis && check.conclusion && check.report.passed());
    }

    #[test]
    fn catalogue_shape() {
        let cat = bh_catalogue(7, 8);
        assert!(cat.len() >= 20);
        let r = bh_catalogue_check(&cat[..4], 8).unwrap();
        assert!(r.passed());
    }
}

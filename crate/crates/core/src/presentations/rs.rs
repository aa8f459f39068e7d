//! Reidemeister–Schreier rewriting and Tietze elimination.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{CosetTable, Presentation};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Presentation of a subgroup together with the words (in the ambient
/// generators) that its generators stand for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    pub generators: Vec<Word>,
}

/// Schreier generators from a breadth-first spanning tree of the coset
/// table; one rewritten relator per (coset, relator) pair.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<SubgroupPresentation> {
    if table.alphabet() != p.alphabet() {
        return Err(Error::AlphabetMismatch { left: p.alphabet().rank(), right: table.alphabet().rank() });
    }
    if !table.is_consistent(p, &[]) {
        return Err(Error::IncompleteTable);
    }
    let alphabet = p.alphabet();
    let n = table.index();
    let rank = alphabet.rank();
    // tree_in[c] = (parent coset, key) used to reach c
    let mut tree_in: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut path: Vec<Vec<Letter>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for key in 0..alphabet.letter_count() {
            let l = Letter::from_key(key);
            let d = table.action(c, l);
            if !seen[d] {
                seen[d] = true;
                tree_in[d] = Some((c, key));
                let mut pth = path[c].clone();
                pth.push(l);
                path[d] = pth;
                queue.push_back(d);
            }
        }
    }
    // schreier[c * rank + g] = generator index for the edge c --g--> d, if not a tree edge
    let mut schreier = vec![None; n * rank];
    let mut words = Vec::new();
    for c in 0..n {
        for g in 1..=rank {
            let l = Letter::new(g, false);
            let d = table.action(c, l);
            let key = l.key();
            if tree_in[d] == Some((c, key)) || tree_in[c] == Some((d, key ^ 1)) {
                continue;
            }
            schreier[c * rank + g - 1] = Some(words.len());
            let mut letters = path[c].clone();
            letters.push(l);
            letters.extend(path[d].iter().rev().map(|x| x.inverse()));
            words.push(Word::from_letters(alphabet, letters)?);
        }
    }
    let sub = Alphabet::new(words.len().max(1))?;
    let mut relators = Vec::new();
    for c in 0..n {
        for r in p.relators() {
            let mut cur = c;
            let mut out = Vec::new();
            for &l in r.letters() {
                let next = table.action(cur, l);
                let (from, g) = if l.is_inverse() { (next, l.generator()) } else { (cur, l.generator()) };
                if let Some(s) = schreier[from * rank + g - 1] {
                    out.push(Letter::new(s + 1, l.is_inverse()));
                }
                cur = next;
            }
            relators.push(Word::from_letters(sub, out)?);
        }
    }
    if words.is_empty() {
        // trivial subgroup: keep a placeholder generator killed by a relator
        let a = Word::generator(sub, 1)?;
        return Ok(SubgroupPresentation {
            presentation: Presentation::new(sub, vec![a])?,
            generators: vec![Word::identity(alphabet)],
        });
    }
    let names = (1..=words.len()).map(|i| format!("s{i}")).collect();
    Ok(SubgroupPresentation { presentation: Presentation::with_names(sub, relators, names)?, generators: words })
}

/// Canonical representative of a relator up to rotation and inversion.
fn cyclic_key(w: &Word) -> Vec<i32> {
    let mut best: Option<Vec<i32>> = None;
    for cand in [w.clone(), w.invert()] {
        let s: Vec<i32> = cand.letters().iter().map(|l| l.signed()).collect();
        for i in 0..s.len() {
            let rot: Vec<i32> = s[i..].iter().chain(&s[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Repeatedly removes a generator that occurs exactly once in some relator,
/// substituting its solution everywhere; duplicate relators are dropped.
pub fn tietze_simplify(sp: &SubgroupPresentation) -> Result<SubgroupPresentation> {
    let rank = sp.presentation.alphabet().rank();
    // work with signed-integer words over the original indices
    let mut alive: Vec<bool> = vec![true; rank];
    let mut rels: Vec<Vec<i32>> =
        sp.presentation.relators().iter().map(|r| r.letters().iter().map(|l| l.signed()).collect()).collect();
    loop {
        let mut found = None;
        'search: for (ri, r) in rels.iter().enumerate() {
            for g in 1..=rank as i32 {
                let hits: Vec<usize> = (0..r.len()).filter(|&i| r[i].abs() == g).collect();
                if hits.len() == 1 {
                    found = Some((ri, hits[0]));
                    break 'search;
                }
            }
        }
        let Some((ri, pos)) = found else { break };
        let r = rels.remove(ri);
        let g = r[pos];
        // r = u g v = 1  =>  g = u^-1 v^-1, i.e. g^+1 = inverse of (v u)
        let rest: Vec<i32> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let mut solution: Vec<i32> = rest.iter().rev().map(|x| -x).collect();
        if g < 0 {
            solution = rest;
        }
        let target = g.abs();
        alive[target as usize - 1] = false;
        for other in rels.iter_mut() {
            let mut out: Vec<i32> = Vec::with_capacity(other.len());
            for &x in other.iter() {
                if x == target {
                    push_signed(&mut out, &solution);
                } else if x == -target {
                    let inv: Vec<i32> = solution.iter().rev().map(|y| -y).collect();
                    push_signed(&mut out, &inv);
                } else {
                    push_signed(&mut out, &[x]);
                }
            }
            *other = out;
        }
        rels = normalize(rels, rank)?;
    }
    // renumber surviving generators
    let survivors: Vec<usize> = (0..rank).filter(|&i| alive[i]).collect();
    let sub = Alphabet::new(survivors.len().max(1))?;
    let mut map = vec![0i32; rank + 1];
    for (new, &old) in survivors.iter().enumerate() {
        map[old + 1] = new as i32 + 1;
    }
    let relators = rels
        .iter()
        .map(|r| {
            let raw: Vec<i32> = r.iter().map(|&x| map[x.unsigned_abs() as usize] * x.signum()).collect();
            Word::from_signed(sub, &raw)
        })
        .collect::<Result<Vec<_>>>()?;
    let names: Vec<String> = if survivors.is_empty() {
        vec!["s0".into()]
    } else {
        survivors.iter().map(|&i| sp.presentation.names()[i].clone()).collect()
    };
    let mut relators = relators;
    let generators: Vec<Word> = if survivors.is_empty() {
        relators.push(Word::generator(sub, 1)?);
        vec![Word::identity(sp.generators[0].alphabet())]
    } else {
        survivors.iter().map(|&i| sp.generators[i].clone()).collect()
    };
    Ok(SubgroupPresentation { presentation: Presentation::with_names(sub, relators, names)?, generators })
}

fn push_signed(out: &mut Vec<i32>, xs: &[i32]) {
    for &x in xs {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
}

fn normalize(rels: Vec<Vec<i32>>, rank: usize) -> Result<Vec<Vec<i32>>> {
    let alphabet = Alphabet::new(rank)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        let w = Word::from_signed(alphabet, &r)?.cyclic_reduce().0;
        if w.is_identity() {
            continue;
        }
        if seen.insert(cyclic_key(&w)) {
            out.push(w.letters().iter().map(|l| l.signed()).collect());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{todd_coxeter, DEFAULT_MAX_COSETS};
    use super::*;
    use crate::stallings::CoreGraph;

    fn words(p: &Presentation, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| Word::parse(p.alphabet(), w).unwrap()).collect()
    }

    #[test]
    fn free_index_two_is_free_of_rank_three() {
        let p = Presentation::free(2).unwrap();
        let h = words(&p, &["a a", "b", "a b A"]);
        let t = todd_coxeter(&p, &h, DEFAULT_MAX_COSETS).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(sp.presentation.generator_count(), 3);
        assert!(sp.presentation.relators().is_empty());
        // the Schreier generators span the same subgroup
        let g = CoreGraph::from_generators(p.alphabet(), &sp.generators).unwrap();
        assert_eq!(g, CoreGraph::from_generators(p.alphabet(), &h).unwrap());
    }

    #[test]
    fn surface_index_two_cover() {
        let p = Presentation::orientable(2).unwrap();
        let h = words(&p, &["a a", "b", "c", "d", "a b A", "a c A", "a d A"]);
        let t = todd_coxeter(&p, &h, DEFAULT_MAX_COSETS).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!((sp.presentation.generator_count(), sp.presentation.relators().len()), (7, 2));
        let simple = tietze_simplify(&sp).unwrap();
        assert_eq!((simple.presentation.generator_count(), simple.presentation.relators().len()), (6, 1));
        let ab = simple.presentation.abelianization();
        assert_eq!((ab.free_rank, ab.torsion.len()), (6, 0));
        assert_eq!(sp.presentation.abelianization(), ab);
    }

    #[test]
    fn index_one_returns_the_presentation() {
        let p = Presentation::orientable(2).unwrap();
        let gens: Vec<Word> = p.alphabet().generators().collect();
        let t = todd_coxeter(&p, &gens, 10).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(sp.generators, gens);
        let rel: Vec<String> = sp.presentation.relators().iter().map(|r| r.to_string()).collect();
        assert_eq!(rel, vec!["a b A B c d C D"]);
    }

    #[test]
    fn nonorientable_double_cover_has_torsion_free_abelianization() {
        // orientation cover of NS3: kernel of the map sending every generator to 1 mod 2
        let p = Presentation::nonorientable(3).unwrap();
        let h = words(&p, &["a a", "a b", "a c", "b a", "c a"]);
        let t = todd_coxeter(&p, &h, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.index(), 2);
        let sp = tietze_simplify(&reidemeister_schreier(&p, &t).unwrap()).unwrap();
        let ab = sp.presentation.abelianization();
        assert_eq!(ab.free_rank, 4);
        assert!(ab.torsion.is_empty());
    }
}

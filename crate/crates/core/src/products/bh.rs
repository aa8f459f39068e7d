//! Rank of fixed subgroups against the rank of the product, over a small
//! catalogue of automorphisms chosen by the type of the product.

use serde::{Deserialize, Serialize};

use super::cycles::{fix_of_cycle, permutation_cycles, RectangularDecomposition};
use super::witness::twist_report;
use super::{FactorDescriptor, GroupType, ProductElement, ProductEndo, ProductGroup};
use crate::error::{Error, Result};
use crate::morphisms::{nielsen_generators, FreeHom};
use crate::presentations::KleinElement;
use crate::stallings::Verdict;
use crate::words::{enumerate_words, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BhOutcome {
    Within,
    Violation,
    /// A central twist whose fixed subgroup is larger than the group, as it should be.
    ExpectedViolation,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BhEntry {
    pub label: String,
    pub rank: usize,
    pub outcome: BhOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BhProductsReport {
    pub group: String,
    pub group_type: GroupType,
    pub group_rank: usize,
    pub entries: Vec<BhEntry>,
    pub verdict: Verdict,
}

impl BhProductsReport {
    pub fn count(&self, outcome: BhOutcome) -> usize {
        self.entries.iter().filter(|e| e.outcome == outcome).count()
    }
}

/// Runs the catalogue for the type of `group`: rectangular products of
/// Nielsen maps and swaps for hyperbolic type, central twists for mixed type
/// and a sweep of short endomorphisms for euclidean type.
pub fn bh_products_check(group: &ProductGroup, limit: usize) -> Result<BhProductsReport> {
    let group_type = group.classify_type();
    let entries = match group_type {
        GroupType::Hyperbolic => hyperbolic_entries(group, limit)?,
        GroupType::Mixed => mixed_entries(group)?,
        GroupType::Euclidean => euclidean_entries(group)?,
    };
    let bad = |o: BhOutcome| match group_type {
        GroupType::Mixed => o != BhOutcome::ExpectedViolation,
        _ => o == BhOutcome::Violation,
    };
    let verdict = if entries.iter().any(|e| bad(e.outcome)) {
        Verdict::Fail
    } else if entries.iter().any(|e| e.outcome == BhOutcome::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(BhProductsReport { group: group.to_string(), group_type, group_rank: group.rank(), entries, verdict })
}

fn within(rank: usize, bound: usize) -> BhOutcome {
    if rank <= bound {
        BhOutcome::Within
    } else {
        BhOutcome::Violation
    }
}

fn hyperbolic_entries(group: &ProductGroup, limit: usize) -> Result<Vec<BhEntry>> {
    let n = group.factor_count();
    let ids: Vec<FreeHom> = (0..n).map(|i| FreeHom::identity(group.factor_alphabet(i))).collect();
    let identity: Vec<usize> = (0..n).collect();
    let mut catalogue: Vec<(String, Vec<usize>, Vec<FreeHom>)> = vec![("id".into(), identity.clone(), ids.clone())];
    for i in (0..n).filter(|&i| !group.factor(i).is_surface()) {
        for (j, m) in nielsen_generators(group.factor_alphabet(i)).into_iter().enumerate() {
            let mut maps = ids.clone();
            maps[i] = m;
            catalogue.push((format!("nielsen{}@{}", j + 1, i + 1), identity.clone(), maps));
        }
    }
    for i in 0..n {
        if let Some(j) = (i + 1..n).find(|&j| group.factor(j) == group.factor(i)) {
            if (0..i).any(|k| group.factor(k) == group.factor(i)) {
                continue;
            }
            let mut sigma = identity.clone();
            sigma.swap(i, j);
            catalogue.push((format!("swap{}{}", i + 1, j + 1), sigma.clone(), ids.clone()));
            if !group.factor(i).is_surface() {
                for (k, m) in nielsen_generators(group.factor_alphabet(i)).into_iter().enumerate() {
                    let mut maps = ids.clone();
                    maps[i] = m;
                    catalogue.push((format!("swap{}{}+nielsen{}", i + 1, j + 1, k + 1), sigma.clone(), maps));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (label, permutation, maps) in catalogue {
        let d = RectangularDecomposition { permutation, maps };
        d.recompose(group)?;
        let mut rank = 0;
        for cycle in permutation_cycles(&d.permutation) {
            let factor = group.factor(cycle[0]);
            if factor.is_surface() {
                // only identity maps are catalogued on surfaces: the fixed subgroup is a diagonal copy
                rank += factor.rank();
                continue;
            }
            let maps: Vec<FreeHom> = cycle.iter().map(|&c| d.maps[c].clone()).collect();
            let sigma: Vec<usize> = (0..cycle.len()).map(|k| (k + 1) % cycle.len()).collect();
            rank += fix_of_cycle(&maps, &sigma, limit)?.rank;
        }
        out.push(BhEntry { label, rank, outcome: within(rank, group.rank()) });
    }
    Ok(out)
}

fn mixed_entries(group: &ProductGroup) -> Result<Vec<BhEntry>> {
    let mut out = Vec::new();
    for s in (0..group.factor_count()).filter(|&i| group.factor(i).center_nontrivial()) {
        let t = group.factor(s).center_generators()[0].clone();
        for target in (0..group.factor_count()).filter(|&i| !group.factor(i).center_nontrivial()) {
            let lengths: &[usize] = if group.factor(target).rank() <= 2 { &[4, 6, 8] } else { &[2, 4, 6] };
            let r = twist_report(group, s, &t, target, lengths)?;
            let (rank, outcome) = match r.fix {
                Some(f) if f.lower > group.rank() => (f.lower, BhOutcome::ExpectedViolation),
                Some(f) => (f.lower, BhOutcome::Inconclusive),
                None if r.growth_strictly_increasing() => {
                    (r.growth.last().expect("lengths").1, BhOutcome::ExpectedViolation)
                }
                None => (r.growth.last().map_or(0, |g| g.1), BhOutcome::Inconclusive),
            };
            out.push(BhEntry { label: format!("twist {}@{} -> {}", t, s + 1, target + 1), rank, outcome });
        }
    }
    Ok(out)
}

/// Element of `NS2^{0,1} x Z^p x (Z/2)^q`: a Klein part and an abelian vector.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Elt {
    k: KleinElement,
    v: Vec<i64>,
}

/// Coordinates of a euclidean product with at most one Klein factor.
struct Model {
    klein: Option<usize>,
    /// (factor, local generator) per abelian coordinate
    coords: Vec<(usize, usize)>,
    moduli: Vec<i64>,
}

impl Model {
    fn new(group: &ProductGroup) -> Result<Model> {
        let mut klein = None;
        let mut coords = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..group.factor_count() {
            match group.factor(i) {
                FactorDescriptor::NonOrientable(2) if klein.is_none() => klein = Some(i),
                FactorDescriptor::Free(1) | FactorDescriptor::NonOrientable(1) | FactorDescriptor::Orientable(1) => {
                    for g in 1..=group.factor(i).rank() {
                        coords.push((i, g));
                        moduli.push(if group.factor(i) == FactorDescriptor::NonOrientable(1) { 2 } else { 0 });
                    }
                }
                d => return Err(Error::Precondition(format!("euclidean model does not cover {d} in {group}"))),
            }
        }
        Ok(Model { klein, coords, moduli })
    }

    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            if m > 0 {
                *x = x.rem_euclid(m);
            }
        }
        v
    }

    fn identity(&self) -> Elt {
        Elt { k: KleinElement::IDENTITY, v: vec![0; self.coords.len()] }
    }

    fn mul(&self, x: &Elt, y: &Elt) -> Elt {
        Elt { k: x.k.mul(y.k), v: self.reduce(x.v.iter().zip(&y.v).map(|(a, b)| a + b).collect()) }
    }

    fn pow(&self, x: &Elt, e: i64) -> Elt {
        Elt { k: x.k.pow(e), v: self.reduce(x.v.iter().map(|a| a * e).collect()) }
    }

    fn of(&self, x: &ProductElement) -> Result<Elt> {
        let k = match self.klein {
            Some(i) => KleinElement::from_word(&x.components()[i])?,
            None => KleinElement::IDENTITY,
        };
        let v = self.coords.iter().map(|&(i, g)| x.components()[i].exponent_vector()[g - 1]).collect();
        Ok(Elt { k, v: self.reduce(v) })
    }

    /// Images of the Klein generators (if any) followed by the abelian coordinates.
    fn images(&self, group: &ProductGroup, images: &[ProductElement]) -> Result<Vec<Elt>> {
        let mut out = Vec::new();
        if let Some(i) = self.klein {
            out.push(self.of(&images[group.offset(i)])?);
            out.push(self.of(&images[group.offset(i) + 1])?);
        }
        for &(i, g) in &self.coords {
            out.push(self.of(&images[group.offset(i) + g - 1])?);
        }
        Ok(out)
    }

    fn apply(&self, images: &[Elt], x: &Elt) -> Elt {
        let mut out = self.identity();
        let mut rest = images;
        if self.klein.is_some() {
            out = self.mul(&self.pow(&images[0], x.k.m), &self.pow(&images[1], x.k.n));
            rest = &images[2..];
        }
        for (img, &e) in rest.iter().zip(&x.v) {
            out = self.mul(&out, &self.pow(img, e));
        }
        out
    }

    fn vector(&self, x: &Elt) -> Vec<i64> {
        let mut v = vec![x.k.m, x.k.n];
        v.extend(&x.v);
        v
    }

    fn box_elements(&self, bound: i64) -> Vec<Elt> {
        let klein: Vec<KleinElement> = if self.klein.is_some() {
            (-bound..=bound).flat_map(|m| (-bound..=bound).map(move |n| KleinElement::new(m, n))).collect()
        } else {
            vec![KleinElement::IDENTITY]
        };
        let mut vs: Vec<Vec<i64>> = vec![Vec::new()];
        for &m in &self.moduli {
            let range: Vec<i64> = if m > 0 { (0..m).collect() } else { (-bound..=bound).collect() };
            vs = vs.iter().flat_map(|v| range.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
        }
        klein.iter().flat_map(|&k| vs.iter().map(move |v| Elt { k, v: v.clone() })).collect()
    }
}

/// Hermite normal form of the row lattice; equal lattices give equal forms.
pub(crate) fn hermite(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (pivot_row..rows.len()).filter(|&r| rows[r][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&r| rows[r][c].abs()).expect("nonempty");
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                let q = rows[r][c] / rows[pivot_row][c];
                if q != 0 {
                    let p = rows[pivot_row].clone();
                    for (x, y) in rows[r].iter_mut().zip(&p) {
                        *x -= q * y;
                    }
                }
                done &= rows[r][c] == 0;
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && rows[pivot_row][c] != 0 {
            if rows[pivot_row][c] < 0 {
                rows[pivot_row].iter_mut().for_each(|x| *x = -*x);
            }
            let p = rows[pivot_row].clone();
            for row in rows.iter_mut().take(pivot_row) {
                let q = row[c].div_euclid(p[c]);
                for (x, y) in row.iter_mut().zip(&p) {
                    *x -= q * y;
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows
}

fn f2_rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c].rem_euclid(2) == 1) {
            rows.swap(rank, p);
            let pr = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[c].rem_euclid(2) == 1 {
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x = (*x + y).rem_euclid(2);
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Rank data for the subgroup generated by the fixed elements in a box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclideanFix {
    pub fixed_in_box: usize,
    /// Some fixed element has odd `a`-exponent.
    pub odd: bool,
    /// Minimal generator count of the even part.
    pub even_rank: usize,
    /// Generating set size found for the whole approximation.
    pub upper: usize,
}

/// Fixed subgroup approximation of an endomorphism of a euclidean product
/// with at most one Klein bottle factor, from the elements of the box
/// `|coordinate| <= bound`.
pub fn euclidean_fix_rank(phi: &ProductEndo, bound: i64) -> Result<EuclideanFix> {
    let group = phi.group();
    let model = Model::new(group)?;
    let images = model.images(group, phi.images())?;
    Ok(fix_in_model(&model, &images, bound))
}

fn fix_in_model(model: &Model, images: &[Elt], bound: i64) -> EuclideanFix {
    let fixed: Vec<Elt> = model.box_elements(bound).into_iter().filter(|x| model.apply(images, x) == *x).collect();
    let odd_elt =
        fixed.iter().filter(|x| !x.k.is_even()).min_by_key(|x| (x.k.m.abs() + x.k.n.abs(), x.k.m, x.k.n)).cloned();
    let d = 2 + model.coords.len();
    let z_cols = 2 + model.moduli.iter().filter(|&&m| m == 0).count();
    // torsion coordinates last, so the Hermite form separates them
    let order: Vec<usize> = (0..d)
        .filter(|&c| c < 2 || model.moduli[c - 2] == 0)
        .chain((2..d).filter(|&c| model.moduli[c - 2] > 0))
        .collect();
    let arrange = |v: Vec<i64>| order.iter().map(|&c| v[c]).collect::<Vec<i64>>();
    let torsion_rows: Vec<Vec<i64>> = (z_cols..d)
        .map(|c| {
            let mut r = vec![0; d];
            r[c] = 2;
            r
        })
        .collect();
    let mut even: Vec<Vec<i64>> = fixed.iter().filter(|x| x.k.is_even()).map(|x| arrange(model.vector(x))).collect();
    let tau = |v: &Vec<i64>| {
        let mut w = v.clone();
        w[1] = -w[1];
        w
    };
    if let Some(o) = &odd_elt {
        let extra: Vec<Vec<i64>> = even.iter().map(tau).collect();
        even.extend(extra);
        even.push(arrange(model.vector(&model.mul(o, o))));
        let inv = Elt { k: o.k.inverse(), v: model.reduce(o.v.iter().map(|x| -x).collect()) };
        for x in fixed.iter().filter(|x| !x.k.is_even()) {
            even.push(arrange(model.vector(&model.mul(x, &inv))));
        }
    }
    let basis = hermite(even.clone());
    let free = basis.iter().filter(|r| r[..z_cols].iter().any(|&x| x != 0)).count();
    let torsion =
        f2_rank(basis.iter().filter(|r| r[..z_cols].iter().all(|&x| x == 0)).map(|r| r[z_cols..].to_vec()).collect());
    let even_rank = free + torsion;
    let upper = match &odd_elt {
        None => even_rank,
        Some(o) => {
            let target = hermite([even.clone(), torsion_rows.clone()].concat());
            let o2 = arrange(model.vector(&model.mul(o, o)));
            let mut pool: Vec<Vec<i64>> = basis.clone();
            let mut small: Vec<Vec<i64>> = fixed
                .iter()
                .filter(|x| x.k.is_even() && !x.k.is_identity())
                .map(|x| arrange(model.vector(x)))
                .collect();
            small.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
            for v in small {
                if pool.len() >= 12 {
                    break;
                }
                if !pool.contains(&v) {
                    pool.push(v);
                }
            }
            let generates = |subset: &[usize]| {
                let mut rows: Vec<Vec<i64>> = subset.iter().flat_map(|&i| [pool[i].clone(), tau(&pool[i])]).collect();
                rows.push(o2.clone());
                rows.extend(torsion_rows.iter().cloned());
                hermite(rows) == target
            };
            (0..=even_rank.min(4))
                .find_map(|k| combinations(pool.len(), k).into_iter().find(|s| generates(s)).map(|_| k + 1))
                .unwrap_or(even_rank + 1)
        }
    };
    EuclideanFix { fixed_in_box: fixed.len(), odd: odd_elt.is_some(), even_rank, upper }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

const EUCLIDEAN_BOX: i64 = 3;

/// Every endomorphism whose generator images have length at most 2 (1 from
/// rank 4 on), kept when it respects the relations of the product.
fn euclidean_entries(group: &ProductGroup) -> Result<Vec<BhEntry>> {
    let model = Model::new(group)?;
    let ga = group.global_alphabet();
    let max = if group.rank() >= 4 { 1 } else { 2 };
    let words: Vec<Word> = enumerate_words(ga, max).collect();
    let elts: Vec<Elt> =
        words.iter().map(|w| model.of(&ProductElement::from_global(group, w)?)).collect::<Result<_>>()?;
    let relators: Vec<Word> = group.presentation().relators().to_vec();
    let eval = |assignment: &[usize], w: &Word| {
        w.letters().iter().fold(model.identity(), |acc, l| {
            let x = &elts[assignment[l.generator() - 1]];
            model.mul(&acc, &if l.is_inverse() { model.pow(x, -1) } else { x.clone() })
        })
    };
    let mut out = Vec::new();
    let mut assignment = vec![0; group.rank()];
    loop {
        if relators.iter().all(|r| eval(&assignment, r) == model.identity()) {
            // images in model order: Klein generators first, then the abelian coordinates
            let by_global: Vec<Elt> = assignment.iter().map(|&i| elts[i].clone()).collect();
            let mut images = Vec::new();
            if let Some(i) = model.klein {
                images.push(by_global[group.offset(i)].clone());
                images.push(by_global[group.offset(i) + 1].clone());
            }
            for &(i, g) in &model.coords {
                images.push(by_global[group.offset(i) + g - 1].clone());
            }
            let fix = fix_in_model(&model, &images, EUCLIDEAN_BOX);
            let label: Vec<String> = assignment.iter().map(|&i| words[i].to_string()).collect();
            let outcome = if fix.upper <= group.rank() { BhOutcome::Within } else { BhOutcome::Inconclusive };
            out.push(BhEntry { label: format!("[{}]", label.join(", ")), rank: fix.upper, outcome });
        }
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return Ok(out);
            }
            assignment[i] += 1;
            if assignment[i] < words.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_product_group;

    #[test]
    fn hermite_is_canonical() {
        let a = hermite(vec![vec![2, 0], vec![0, 1]]);
        let b = hermite(vec![vec![2, 1], vec![0, 1], vec![4, 3]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(hermite(vec![vec![6], vec![4]]), vec![vec![2]]);
        assert!(hermite(vec![vec![0, 0]]).is_empty());
    }

    #[test]
    fn euclidean_fix_of_identity() {
        let g = parse_product_group("NS2 x Z").unwrap();
        let fix = euclidean_fix_rank(&ProductEndo::identity(&g), 2).unwrap();
        assert!(fix.odd);
        assert_eq!(fix.even_rank, 3);
        assert_eq!(fix.upper, 3);
        let k = parse_product_group("NS2").unwrap();
        assert_eq!(euclidean_fix_rank(&ProductEndo::identity(&k), 2).unwrap().upper, 2);
        let c = parse_product_group("C2 x Z").unwrap();
        let fix = euclidean_fix_rank(&ProductEndo::identity(&c), 2).unwrap();
        assert_eq!((fix.odd, fix.even_rank, fix.upper), (false, 2, 2));
    }

    #[test]
    fn catalogues_by_type() {
        let ff = bh_products_check(&parse_product_group("F2 x F2").unwrap(), 8).unwrap();
        assert_eq!(ff.verdict, Verdict::Pass);
        assert!(ff.entries.iter().any(|e| e.label.starts_with("swap")));
        assert!(ff.entries.iter().all(|e| e.rank <= 4));

        let mixed = bh_products_check(&parse_product_group("C2 x F2").unwrap(), 8).unwrap();
        assert_eq!(mixed.verdict, Verdict::Pass);
        assert_eq!(mixed.entries.len(), 1);
        assert_eq!((mixed.entries[0].rank, mixed.entries[0].outcome), (4, BhOutcome::ExpectedViolation));

        let euc = bh_products_check(&parse_product_group("NS2 x Z").unwrap(), 8).unwrap();
        assert_eq!(euc.count(BhOutcome::Violation), 0);
        assert!(euc.entries.len() > 10);
        assert!(euc.entries.iter().filter(|e| e.outcome == BhOutcome::Within).all(|e| e.rank <= 3));
    }

    #[test]
    fn unsupported_euclidean_shape() {
        assert!(bh_products_check(&parse_product_group("NS2^2").unwrap(), 8).is_err());
    }
}

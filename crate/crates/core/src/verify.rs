//! Named checks with pinned bounds, run as one suite and reported as JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::morphisms::{bh_catalogue, bh_catalogue_check, fix_subgroup_approx, probe_fix_inert, EndoFamily, FreeHom};
use crate::presentations::{
    dehn_is_trivial, equality_oracle, ns2_endomorphisms, ns2_fix_classify, piece_check, reidemeister_schreier,
    tietze_simplify, todd_coxeter, AbelianMap, FixClass, GroupContext, KleinElement, Presentation, SurfaceDescriptor,
    Verdict3, DEFAULT_MAX_COSETS,
};
use crate::products::{
    bh_products_check, non_compressed_witness, non_inert_witness, twist_report, GroupType, ProductGroup,
    COMPRESSION_CASES,
};
use crate::stallings::{hanna_neumann_sweep, CoreGraph, Index, ProbeBounds, Verdict};
use crate::text::parse_product_group;
use crate::words::{Alphabet, Word};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub name: &'static str,
    /// Word length for fixed subgroup approximations.
    pub length: usize,
    /// Word length for the bounded probes.
    pub depth: usize,
}

impl Profile {
    pub const QUICK: Profile = Profile { name: "quick", length: 8, depth: 3 };
    pub const DEFAULT: Profile = Profile { name: "default", length: 12, depth: 4 };
    pub const DEEP: Profile = Profile { name: "deep", length: 16, depth: 5 };

    pub fn parse(name: &str) -> Result<Profile> {
        match name {
            "quick" => Ok(Profile::QUICK),
            "default" => Ok(Profile::DEFAULT),
            "deep" => Ok(Profile::DEEP),
            _ => Err(Error::Precondition(format!("unknown profile `{name}`"))),
        }
    }

    fn probe_bounds(self) -> ProbeBounds {
        ProbeBounds { max_generators: 2, max_length: self.depth.min(4) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Bounded growth consistent with infinite generation; never a proof.
    Evidence,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Evidence => "evidence",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub numbers: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    /// Wall time; kept out of the JSON so reports diff cleanly.
    #[serde(skip)]
    pub runtime_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub profile: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn evidence_if(ok: bool) -> Status {
    if ok {
        Status::Evidence
    } else {
        Status::Fail
    }
}

struct Outcome {
    status: Status,
    numbers: Vec<(&'static str, Value)>,
    witness: Option<Value>,
}

fn outcome(status: Status, numbers: Vec<(&'static str, Value)>) -> Outcome {
    Outcome { status, numbers, witness: None }
}

/// Every check id, in report order, with its anchor.
pub fn check_ids() -> Vec<(String, &'static str)> {
    let mut out: Vec<(String, &'static str)> =
        (2..=5).map(|r| (format!("schreier-f{r}"), "Schreier index formula")).collect();
    out.push(("hanna-neumann-sweep".into(), "strengthened Hanna Neumann inequality"));
    out.push(("bh-catalogue".into(), "Bestvina-Handel bound for free groups"));
    out.push(("fix-identification".into(), "fixed subgroup of a transvection, inert"));
    out.push(("surface-cover-rank".into(), "rank of a finite cover of a surface"));
    out.push(("small-cancellation".into(), "C'(1/6) and Dehn's algorithm"));
    out.push(("klein-classification".into(), "fixed subgroups of the Klein bottle group"));
    out.push(("product-rank-type".into(), "rank and type of product groups"));
    out.push(("bh-products".into(), "rank bound for fixed subgroups of products by type"));
    out.push(("exs-no-bh/c2-f2".into(), "central twist with finite-order centre"));
    out.push(("exs-no-bh/z-f2".into(), "central twist with infinite-order centre"));
    out.push(("exs-no-bh/c2-ns3".into(), "central twist on a non-orientable factor"));
    for case in COMPRESSION_CASES {
        out.push((format!("thm-main-products-2/{case}"), "fixed subgroup not compressed"));
    }
    out.push(("final-corollary".into(), "fixed subgroup compressed but not inert in F2 x Z"));
    for case in ["f2-ns3", "s2-ns3", "ns4-ns3"] {
        out.push((format!("thm-main-products-3/{case}"), "fixed subgroup not inert"));
    }
    out.push(("oracle-soundness".into(), "word problem oracles agree with normal forms"));
    out
}

pub fn run_check(id: &str, profile: Profile) -> Result<CheckResult> {
    let anchor = check_ids()
        .into_iter()
        .find(|(c, _)| c == id)
        .map(|(_, a)| a)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    let start = Instant::now();
    let o = dispatch(id, profile)?;
    Ok(CheckResult {
        id: id.to_string(),
        anchor: anchor.to_string(),
        status: o.status,
        numbers: o.numbers.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        witness: o.witness,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Runs the selected checks (all when empty) concurrently; results come back
/// in canonical order.
pub fn verify_paper(selection: &[String], profile: Profile) -> Result<Report> {
    let all: Vec<String> = check_ids().into_iter().map(|(c, _)| c).collect();
    let ids: Vec<String> = if selection.is_empty() {
        all.clone()
    } else {
        for s in selection {
            if !all.contains(s) {
                return Err(Error::UnknownCheck(s.clone()));
            }
        }
        all.iter().filter(|c| selection.contains(c)).cloned().collect()
    };
    let checks = ids.par_iter().map(|id| run_check(id, profile)).collect::<Result<Vec<_>>>()?;
    Ok(Report { version: REPORT_VERSION.to_string(), profile: profile.name.to_string(), checks })
}

fn dispatch(id: &str, profile: Profile) -> Result<Outcome> {
    if let Some(r) = id.strip_prefix("schreier-f") {
        return schreier(r.parse().map_err(|_| Error::UnknownCheck(id.to_string()))?);
    }
    if let Some(case) = id.strip_prefix("thm-main-products-2/") {
        return compression(case);
    }
    if let Some(case) = id.strip_prefix("thm-main-products-3/") {
        return inertia(match case {
            "f2-ns3" => "fr-ns3",
            "s2-ns3" => "sg-ns3",
            "ns4-ns3" => "nsk-ns3",
            _ => return Err(Error::UnknownCheck(id.to_string())),
        });
    }
    match id {
        "hanna-neumann-sweep" => hanna_neumann(profile),
        "bh-catalogue" => catalogue(profile),
        "fix-identification" => fix_identification(profile),
        "surface-cover-rank" => surface_cover(),
        "small-cancellation" => small_cancellation(),
        "klein-classification" => klein(),
        "product-rank-type" => rank_type(),
        "bh-products" => bh_products(profile),
        "exs-no-bh/c2-f2" => twist("C2 x F2", &[]),
        "exs-no-bh/z-f2" => twist("Z x F2", &[4, 6, 8]),
        "exs-no-bh/c2-ns3" => twist("C2 x NS3", &[]),
        "final-corollary" => inertia("final-corollary"),
        "oracle-soundness" => oracle_soundness(10_000),
        _ => Err(Error::UnknownCheck(id.to_string())),
    }
}

/// Kernel of the total exponent sum mod 2, by folding and by coset enumeration.
fn schreier(r: usize) -> Result<Outcome> {
    let alphabet = Alphabet::new(r)?;
    let gens: Vec<Word> = crate::words::enumerate_words(alphabet, 2).filter(|w| w.len() == 2).collect();
    let graph = CoreGraph::from_generators(alphabet, &gens)?;
    let p = Presentation::free(r)?;
    let table = todd_coxeter(&p, &gens, DEFAULT_MAX_COSETS)?;
    let sp = reidemeister_schreier(&p, &table)?;
    let expected = 2 * r - 1;
    let ok = graph.index() == Index::Finite(2)
        && graph.rank() == expected
        && table.index() == 2
        && sp.generators.len() == expected
        && sp.presentation.relators().is_empty();
    let index = match graph.index() {
        Index::Finite(n) => json!(n),
        Index::Infinite => json!("infinite"),
    };
    Ok(outcome(
        pass_if(ok),
        vec![
            ("index", index),
            ("rank", json!(graph.rank())),
            ("coset_index", json!(table.index())),
            ("schreier_generators", json!(sp.generators.len())),
            ("expected_rank", json!(expected)),
        ],
    ))
}

fn probe_outcome(report: &crate::stallings::ProbeReport, extra: Vec<(&'static str, Value)>) -> Outcome {
    let mut numbers = vec![("checked", json!(report.checked)), ("violations", json!(report.violations))];
    numbers.extend(extra);
    Outcome {
        status: pass_if(report.passed()),
        numbers,
        witness: (!report.witnesses.is_empty()).then(|| json!(report.witnesses)),
    }
}

fn hanna_neumann(profile: Profile) -> Result<Outcome> {
    let bounds = profile.probe_bounds();
    let report = hanna_neumann_sweep(Alphabet::new(2)?, bounds);
    Ok(probe_outcome(&report, vec![("max_length", json!(bounds.max_length))]))
}

fn catalogue(profile: Profile) -> Result<Outcome> {
    let cat = bh_catalogue(17, 7);
    let report = bh_catalogue_check(&cat, profile.length)?;
    let mut o = probe_outcome(&report, vec![("automorphisms", json!(cat.len())), ("length", json!(profile.length))]);
    if cat.len() < 20 {
        o.status = Status::Fail;
    }
    Ok(o)
}

fn fix_identification(profile: Profile) -> Result<Outcome> {
    let f2 = Alphabet::new(2)?;
    let fam = EndoFamily::single(FreeHom::parse_endo(f2, &["a b", "b"])?)?;
    let fix = fix_subgroup_approx(&fam, profile.length)?;
    let expected = CoreGraph::from_generators(f2, &[Word::parse(f2, "b")?, Word::parse(f2, "a b A")?])?;
    let bounds = ProbeBounds { max_generators: 2, max_length: 4 };
    let inert = probe_fix_inert(&fam, profile.length, bounds)?;
    let ok = fix.graph == expected && inert.passed();
    let mut o = probe_outcome(
        &inert,
        vec![
            ("rank", json!(fix.graph.rank())),
            ("stabilized", json!(fix.stabilized)),
            ("length", json!(profile.length)),
        ],
    );
    o.status = pass_if(ok);
    if fix.graph != expected {
        o.witness = Some(json!({ "approximation": fix.graph.describe() }));
    }
    Ok(o)
}

fn surface_cover() -> Result<Outcome> {
    let p = Presentation::orientable(2)?;
    let h: Vec<Word> = ["a a", "b", "c", "d", "a b A", "a c A", "a d A"]
        .iter()
        .map(|s| Word::parse(p.alphabet(), s))
        .collect::<Result<_>>()?;
    let table = todd_coxeter(&p, &h, DEFAULT_MAX_COSETS)?;
    let sp = tietze_simplify(&reidemeister_schreier(&p, &table)?)?;
    let ab = sp.presentation.abelianization();
    let expected = SurfaceDescriptor::Orientable(2).cover_rank(table.index())?;
    Ok(outcome(
        pass_if(table.index() == 2 && ab.free_rank == expected && ab.torsion.is_empty()),
        vec![
            ("index", json!(table.index())),
            ("free_rank", json!(ab.free_rank)),
            ("expected", json!(expected)),
            ("generators", json!(sp.presentation.generator_count())),
        ],
    ))
}

fn random_word(alphabet: Alphabet, rng: &mut ChaCha8Rng, len: usize) -> Word {
    let n = alphabet.rank() as i32;
    let raw: Vec<i32> = (0..len).map(|_| rng.gen_range(1..=n) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    Word::from_signed(alphabet, &raw).expect("in range")
}

fn small_cancellation() -> Result<Outcome> {
    let s2 = Presentation::orientable(2)?;
    let gates = [
        piece_check(&s2).satisfies,
        piece_check(&Presentation::nonorientable(4)?).satisfies,
        !piece_check(&Presentation::nonorientable(3)?).satisfies,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let r = s2.relators()[0].clone();
    let mut missed = 0;
    for _ in 0..50 {
        let mut w = Word::identity(s2.alphabet());
        for _ in 0..rng.gen_range(1..=10) {
            let len = rng.gen_range(0..6);
            let g = random_word(s2.alphabet(), &mut rng, len);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            w = w.mul(&g.conjugate(&r.pow(e))?);
        }
        if !dehn_is_trivial(&s2, &w)? {
            missed += 1;
        }
    }
    let ab = AbelianMap::new(&s2);
    let mut wrongly_killed = 0;
    let mut tested = 0;
    while tested < 200 {
        let len = rng.gen_range(1..14);
        let w = random_word(s2.alphabet(), &mut rng, len);
        if ab.is_trivial(&w) {
            continue;
        }
        tested += 1;
        if dehn_is_trivial(&s2, &w)? {
            wrongly_killed += 1;
        }
    }
    Ok(outcome(
        pass_if(gates.iter().all(|&g| g) && missed == 0 && wrongly_killed == 0),
        vec![
            ("gates", json!(gates)),
            ("products_not_killed", json!(missed)),
            ("abelian_nonzero_killed", json!(wrongly_killed)),
        ],
    ))
}

fn klein() -> Result<Outcome> {
    let endos = ns2_endomorphisms(3);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    for e in &endos {
        let fix = ns2_fix_classify(e, 6)?;
        *counts.entry(fix.class.to_string()).or_default() += 1;
        let identity = *e == [KleinElement::A, KleinElement::B];
        if !identity && !matches!(fix.class, FixClass::Z2 | FixClass::Z | FixClass::Trivial) {
            bad.push(format!("a -> {}, b -> {}: {}", e[0], e[1], fix.class));
        }
    }
    Ok(Outcome {
        status: pass_if(bad.is_empty()),
        numbers: vec![("endomorphisms", json!(endos.len())), ("classes", json!(counts))],
        witness: (!bad.is_empty()).then(|| json!(bad)),
    })
}

fn rank_type() -> Result<Outcome> {
    let ranks = [("F2 x Z", 3), ("NS2^2 x C2", 5)];
    let mut ok = true;
    let mut numbers = Vec::new();
    for (g, r) in ranks {
        let got = parse_product_group(g)?.rank();
        ok &= got == r;
        numbers.push((if r == 3 { "rank_f2_z" } else { "rank_ns2_ns2_c2" }, json!(got)));
    }
    let samples = [
        "NS2 x Z^2 x C2",
        "F2 x NS3",
        "F2 x Z",
        "Z",
        "S1 x C2",
        "S2 x S3",
        "NS2^2",
        "NS1 x F3",
        "F1 x NS4",
        "NS2 x S2",
    ];
    let mut mismatches = Vec::new();
    for s in samples {
        let g = parse_product_group(s)?;
        // the definition, read off the centres directly
        let centres: Vec<bool> = g.descriptors().iter().map(|d| !d.center_generators().is_empty()).collect();
        let expected = if centres.iter().all(|&c| c) {
            GroupType::Euclidean
        } else if centres.iter().all(|&c| !c) {
            GroupType::Hyperbolic
        } else {
            GroupType::Mixed
        };
        let mut reversed = g.descriptors();
        reversed.reverse();
        let flipped = ProductGroup::new(reversed)?.classify_type();
        if g.classify_type() != expected || flipped != expected {
            mismatches.push(s);
        }
    }
    ok &= mismatches.is_empty();
    numbers.push(("type_samples", json!(samples.len())));
    numbers.push(("type_mismatches", json!(mismatches.len())));
    Ok(Outcome { status: pass_if(ok), numbers, witness: (!mismatches.is_empty()).then(|| json!(mismatches)) })
}

fn bh_products(profile: Profile) -> Result<Outcome> {
    let mut ok = true;
    let mut numbers = Vec::new();
    for (g, key) in [("F2 x F2", "hyperbolic"), ("NS2 x Z", "euclidean"), ("C2 x F2", "mixed")] {
        let report = bh_products_check(&parse_product_group(g)?, profile.length.min(10))?;
        ok &= report.verdict != Verdict::Fail;
        numbers.push((
            key,
            json!({
                "group": report.group,
                "entries": report.entries.len(),
                "max_rank": report.entries.iter().map(|e| e.rank).max(),
                "group_rank": report.group_rank,
                "verdict": report.verdict,
            }),
        ));
    }
    Ok(outcome(pass_if(ok), numbers))
}

fn twist(group: &str, lengths: &[usize]) -> Result<Outcome> {
    let g = parse_product_group(group)?;
    let t = Word::parse(g.factor_alphabet(0), "a")?;
    let r = twist_report(&g, 0, &t, 1, lengths)?;
    let mut numbers = vec![("group_rank", json!(r.group_rank)), ("order", json!(r.order))];
    let status = if let Some(fix) = r.fix {
        numbers.push(("kernel_rank", json!(r.kernel)));
        numbers.push(("fix_rank", json!(fix)));
        pass_if(fix.exact && fix.lower > r.group_rank && r.kernel_generators_fixed)
    } else {
        numbers.push(("growth", json!(r.growth)));
        evidence_if(r.growth_strictly_increasing())
    };
    Ok(Outcome { status, numbers, witness: Some(json!({ "automorphism": r.phi.render() })) })
}

fn compression(case: &str) -> Result<Outcome> {
    let w = non_compressed_witness(case)?;
    let g = w.group();
    Ok(Outcome {
        status: pass_if(w.holds() && w.fix_rank.exact),
        numbers: vec![
            ("fix_rank", json!(w.fix_rank)),
            ("k_rank_upper", json!(w.k_rank_upper)),
            ("generators_fixed", json!(w.generators_fixed)),
            ("contained", json!(w.contained)),
        ],
        witness: Some(json!({
            "group": g.to_string(),
            "automorphism": w.phi.render(),
            "fix": w.fix_generators.iter().map(|x| g.render(x)).collect::<Vec<_>>(),
            "k": w.k_generators.iter().map(|x| g.render(x)).collect::<Vec<_>>(),
            "fix_abelianization": w.fix_abelianization.to_string(),
        })),
    })
}

fn inertia(case: &str) -> Result<Outcome> {
    let w = non_inert_witness(case)?;
    let g = w.group();
    let compressed = w.compression.as_ref().is_none_or(|c| c.passed());
    let mut numbers = vec![
        ("growth", json!(w.growth)),
        ("abelian_certificate", json!(w.abelian_certificate)),
        ("uncertain", json!(w.uncertain)),
    ];
    if let Some(c) = &w.compression {
        numbers.push(("compression_checked", json!(c.checked)));
    }
    Ok(Outcome {
        status: evidence_if(w.growth_strictly_increasing() && w.abelian_certificate && compressed),
        numbers,
        witness: Some(json!({
            "group": g.to_string(),
            "automorphism": w.phi.render(),
            "k": w.k_generators.iter().map(|x| g.render(x)).collect::<Vec<_>>(),
        })),
    })
}

fn free_reduce(raw: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &x in raw {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// The Klein bottle group acting on the plane by `a(x, y) = (x + 1, -y)` and
/// `b(x, y) = (x, y + 1)`; two points pin the affine map down.
fn klein_action(raw: &[i32]) -> [(i64, i64); 2] {
    let mut pts = [(0, 0), (0, 1)];
    for &l in raw.iter().rev() {
        for p in &mut pts {
            *p = match l {
                1 => (p.0 + 1, -p.1),
                -1 => (p.0 - 1, -p.1),
                2 => (p.0, p.1 + 1),
                _ => (p.0, p.1 - 1),
            };
        }
    }
    pts
}

fn random_raw(rng: &mut ChaCha8Rng, rank: i32, len: usize) -> Vec<i32> {
    (0..len).map(|_| rng.gen_range(1..=rank) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

/// `v` equal to `u` in the group about half the time: a relator or a
/// cancelling pair spliced in, or letters shuffled for abelian groups.
fn partner(rng: &mut ChaCha8Rng, u: &[i32], rank: i32, relators: &[Vec<i32>], shuffle: bool) -> Vec<i32> {
    if rng.gen_bool(0.5) {
        return random_raw(rng, rank, u.len());
    }
    let mut v = u.to_vec();
    if shuffle {
        for i in (1..v.len()).rev() {
            v.swap(i, rng.gen_range(0..=i));
        }
    }
    let at = rng.gen_range(0..=v.len());
    let insert: Vec<i32> = if relators.is_empty() || rng.gen_bool(0.3) {
        let g = rng.gen_range(1..=rank);
        vec![g, -g]
    } else {
        let r = &relators[rng.gen_range(0..relators.len())];
        if rng.gen_bool(0.5) {
            r.clone()
        } else {
            r.iter().rev().map(|x| -x).collect()
        }
    };
    v.splice(at..at, insert);
    v
}

fn oracle_soundness(trials: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut discrepancies = Vec::new();
    let mut wrong = 0;
    let mut equal = 0;
    let orders = vec![0u64, 2, 3];
    for i in 0..trials {
        let kind = i % 3;
        let rank = match kind {
            0 => 2,
            1 => 3,
            _ => 2,
        };
        let alphabet = Alphabet::new(rank as usize)?;
        let len = rng.gen_range(0..10);
        let u = random_raw(&mut rng, rank, len);
        let (ctx, relators, shuffle) = match kind {
            0 => (GroupContext::Free, vec![], false),
            1 => (GroupContext::Abelian(orders.clone()), vec![vec![2, 2], vec![3, 3, 3]], true),
            _ => (GroupContext::Klein, vec![vec![1, 2, -1, 2]], false),
        };
        let v = partner(&mut rng, &u, rank, &relators, shuffle);
        let truth = match kind {
            0 => free_reduce(&u) == free_reduce(&v),
            1 => (1..=rank).all(|g| {
                let count = |w: &[i32]| {
                    w.iter()
                        .map(|&x| {
                            if x == g {
                                1i64
                            } else if x == -g {
                                -1
                            } else {
                                0
                            }
                        })
                        .sum::<i64>()
                };
                let o = orders[g as usize - 1] as i64;
                let d = count(&u) - count(&v);
                if o == 0 {
                    d == 0
                } else {
                    d.rem_euclid(o) == 0
                }
            }),
            _ => klein_action(&u) == klein_action(&v),
        };
        equal += truth as usize;
        let verdict = equality_oracle(&ctx, &Word::from_signed(alphabet, &u)?, &Word::from_signed(alphabet, &v)?)?;
        let agrees = matches!((verdict, truth), (Verdict3::Equal, true) | (Verdict3::NotEqual, false));
        if !agrees {
            wrong += 1;
            if discrepancies.len() < 8 {
                discrepancies.push(json!({ "context": kind, "u": u, "v": v, "oracle": verdict.to_string() }));
            }
        }
    }
    Ok(Outcome {
        status: pass_if(wrong == 0),
        numbers: vec![("trials", json!(trials)), ("equal_pairs", json!(equal)), ("discrepancies", json!(wrong))],
        witness: (wrong > 0).then(|| json!(discrepancies)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_known() {
        let ids = check_ids();
        let set: std::collections::BTreeSet<_> = ids.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(set.len(), ids.len());
        assert!(matches!(run_check("nope", Profile::QUICK), Err(Error::UnknownCheck(_))));
        assert!(verify_paper(&["nope".into()], Profile::QUICK).is_err());
    }

    #[test]
    fn schreier_check() {
        let r = run_check("schreier-f2", Profile::QUICK).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.numbers["index"], json!(2));
        assert_eq!(r.numbers["rank"], json!(3));
    }

    #[test]
    fn klein_action_is_faithful_on_examples() {
        assert_eq!(klein_action(&[1, 2, -1, 2]), klein_action(&[]));
        assert_ne!(klein_action(&[1, 2]), klein_action(&[2, 1]));
        assert_eq!(klein_action(&[2, 1]), klein_action(&[1, -2]));
    }

    #[test]
    fn report_json_shape() {
        let report = verify_paper(&["schreier-f3".into(), "surface-cover-rank".into()], Profile::QUICK).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["profile"], "quick");
        assert_eq!(v["checks"].as_array().unwrap().len(), 2);
        assert_eq!(v["checks"][0]["id"], "schreier-f3");
        assert!(v["checks"][0].get("runtime_ms").is_none());
        assert!(report.passed());
    }
}

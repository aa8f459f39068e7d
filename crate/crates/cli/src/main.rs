//! Command-line front end for the fixgroups library.
//!
//! Every operation prints a JSON document `{op, inputs, result, witnesses}`;
//! `verify-paper` prints the check report instead.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fixgroups::morphisms::{
    bh_catalogue, bh_catalogue_check, equalizer_words, fix_subgroup_approx, minimal_image_search, probe_fix_inert,
    verify_main_free, EndoFamily, FreeHom,
};
use fixgroups::presentations::{
    dehn_is_trivial, klein_normal_form, ns2_fix_classify, piece_check, reidemeister_schreier, tietze_simplify,
    todd_coxeter, KleinElement, Presentation, DEFAULT_MAX_COSETS,
};
use fixgroups::products::{
    euclidean_fix_rank, fix_words_product, rectangular_decompose, GroupType, ProductGroup, Rectangularity,
    COMPRESSION_CASES,
};
use fixgroups::stallings::{probe_compressed, probe_inert, CoreGraph, Index, ProbeBounds};
use fixgroups::text::{
    parse_endo, parse_morphism, parse_presentation, parse_presentation_word, parse_product_endo, parse_product_group,
    parse_subgroup, parse_word,
};
use fixgroups::verify::{verify_paper, Profile, Status};
use fixgroups::Word;

#[derive(Parser)]
#[command(
    name = "fixgroups",
    version,
    about = "Fixed subgroups, inertia and compression in free, surface and product groups"
)]
struct Cli {
    /// Bounds profile: quick, default or deep.
    #[arg(long, global = true, default_value = "default")]
    profile: String,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fold a subgroup file into its core graph.
    Fold { subgroup: PathBuf },
    /// Rank of a subgroup.
    Rank { subgroup: PathBuf },
    /// Membership of a word in a subgroup.
    Member { subgroup: PathBuf, word: String },
    /// Intersection of two subgroups.
    Intersect { left: PathBuf, right: PathBuf },
    /// Index of a subgroup in its free group.
    Index { subgroup: PathBuf },
    /// Bounded inertia probe.
    ProbeInert {
        subgroup: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Bounded compression probe.
    ProbeCompress {
        subgroup: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Fixed subgroup approximation of a family of endomorphisms.
    Fix {
        #[arg(required = true)]
        endos: Vec<PathBuf>,
        #[arg(long)]
        limit: Option<usize>,
        /// Also run the bounded inertia probe on the approximation.
        #[arg(long)]
        probe: bool,
    },
    /// Equalizer words of two homomorphisms.
    Eq {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Image subgroup of a homomorphism.
    Image { morphism: PathBuf },
    /// Minimal-image composition of a family of endomorphisms.
    Beta0 {
        #[arg(required = true)]
        endos: Vec<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Free-group rank criterion for a subgroup and a family.
    VerifyMainFree {
        subgroup: PathBuf,
        #[arg(required = true)]
        endos: Vec<PathBuf>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Fix rank bound over endomorphism files, or the built-in catalogue.
    BhCheck {
        endos: Vec<PathBuf>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Coset enumeration.
    Tc {
        presentation: PathBuf,
        /// Subgroup generators, one word per line, in the presentation's names.
        #[arg(long)]
        subgroup: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Presentation of a finite-index subgroup.
    Rs {
        presentation: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Abelianization invariants.
    Abel { presentation: PathBuf },
    /// Dehn's algorithm on a word.
    Dehn { presentation: PathBuf, word: String },
    /// Small-cancellation piece report.
    Pieces { presentation: PathBuf },
    /// Klein bottle normal form of a word, or the fixed subgroup class of an endomorphism.
    Klein {
        word: Option<String>,
        #[arg(long)]
        endo: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Product group operations.
    Prod {
        #[command(subcommand)]
        action: ProdAction,
    },
    /// Run the named checks and report pass, fail or evidence per check.
    VerifyPaper {
        /// Restrict to these check ids.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ProdAction {
    /// Rank of a product group such as "F2 x Z".
    Rank { group: String },
    /// Euclidean, hyperbolic or mixed.
    Type { group: String },
    /// Center, factor by factor.
    Center { group: String },
    /// Fixed elements of an endomorphism among short elements.
    Fix {
        group: String,
        endo: PathBuf,
        #[arg(long, default_value_t = 4)]
        limit: usize,
    },
    /// Rectangular decomposition of an endomorphism of a hyperbolic-type product.
    Decompose { group: String, endo: PathBuf },
    /// A named witness case.
    Witness { case: String },
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Maximum number of generators of the probing subgroups.
    #[arg(long)]
    gens: Option<usize>,
    /// Maximum length of the probing generators.
    #[arg(long)]
    len: Option<usize>,
}

impl BoundArgs {
    fn resolve(&self, profile: Profile) -> Result<ProbeBounds> {
        Ok(ProbeBounds::new(self.gens.unwrap_or(2), self.len.unwrap_or(profile.depth.min(4)))?)
    }
}

struct Output {
    op: &'static str,
    inputs: Value,
    result: Value,
    witnesses: Value,
}

impl Output {
    fn new(op: &'static str, inputs: Value, result: Value) -> Output {
        Output { op, inputs, result, witnesses: json!([]) }
    }

    fn with_witnesses(mut self, witnesses: Value) -> Output {
        self.witnesses = witnesses;
        self
    }

    fn to_json(&self) -> Value {
        json!({ "op": self.op, "inputs": self.inputs, "result": self.result, "witnesses": self.witnesses })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn subgroup(path: &Path) -> Result<CoreGraph> {
    let (alphabet, gens) = parse_subgroup(&read(path)?, None).with_context(|| path.display().to_string())?;
    Ok(CoreGraph::from_generators(alphabet, &gens)?)
}

fn endo(path: &Path) -> Result<FreeHom> {
    parse_endo(&read(path)?).with_context(|| path.display().to_string())
}

fn family(paths: &[PathBuf]) -> Result<EndoFamily> {
    Ok(EndoFamily::new(paths.iter().map(|p| endo(p)).collect::<Result<Vec<_>>>()?)?)
}

fn presentation(path: &Path) -> Result<Presentation> {
    parse_presentation(&read(path)?).with_context(|| path.display().to_string())
}

fn presentation_subgroup(p: &Presentation, path: &Path) -> Result<Vec<Word>> {
    read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_presentation_word(p, l).with_context(|| path.display().to_string()))
        .collect()
}

fn paths(ps: &[PathBuf]) -> Value {
    json!(ps.iter().map(|p| p.display().to_string()).collect::<Vec<_>>())
}

fn index_json(index: Index) -> Value {
    match index {
        Index::Finite(n) => json!(n),
        Index::Infinite => json!("infinite"),
    }
}

fn words(ws: &[Word]) -> Value {
    json!(ws.iter().map(Word::to_string).collect::<Vec<_>>())
}

fn render_words(p: &Presentation, ws: &[Word]) -> Value {
    json!(ws.iter().map(|w| p.render(w)).collect::<Vec<_>>())
}

fn probe_output(
    op: &'static str,
    path: &Path,
    bounds: ProbeBounds,
    report: fixgroups::stallings::ProbeReport,
) -> Result<Output> {
    let witnesses = serde_json::to_value(&report.witnesses)?;
    Ok(Output::new(
        op,
        json!({ "subgroup": path.display().to_string(), "bounds": bounds }),
        serde_json::to_value(&report)?,
    )
    .with_witnesses(witnesses))
}

fn run(command: Command, profile: Profile) -> Result<Output> {
    let limit_or = |l: Option<usize>| l.unwrap_or(profile.length);
    Ok(match command {
        Command::Fold { subgroup: path } => {
            let g = subgroup(&path)?;
            Output::new("fold", json!({ "subgroup": path.display().to_string() }), serde_json::to_value(g.summary())?)
        }
        Command::Rank { subgroup: path } => {
            let g = subgroup(&path)?;
            Output::new(
                "rank",
                json!({ "subgroup": path.display().to_string() }),
                json!({ "rank": g.rank(), "basis": words(&g.generators()) }),
            )
        }
        Command::Member { subgroup: path, word } => {
            let g = subgroup(&path)?;
            let w = parse_word(&word, g.alphabet())?;
            Output::new(
                "member",
                json!({ "subgroup": path.display().to_string(), "word": w.to_string() }),
                json!({ "member": g.contains(&w)? }),
            )
        }
        Command::Intersect { left, right } => {
            let (h, k) = (subgroup(&left)?, subgroup(&right)?);
            let meet = h.intersect(&k)?;
            Output::new(
                "intersect",
                json!({ "left": left.display().to_string(), "right": right.display().to_string() }),
                json!({
                    "rank": meet.rank(),
                    "basis": words(&meet.generators()),
                    "left_rank": h.rank(),
                    "right_rank": k.rank(),
                }),
            )
        }
        Command::Index { subgroup: path } => {
            let g = subgroup(&path)?;
            Output::new(
                "index",
                json!({ "subgroup": path.display().to_string() }),
                json!({ "index": index_json(g.index()), "rank": g.rank() }),
            )
        }
        Command::ProbeInert { subgroup: path, bounds } => {
            let b = bounds.resolve(profile)?;
            probe_output("probe-inert", &path, b, probe_inert(&subgroup(&path)?, b))?
        }
        Command::ProbeCompress { subgroup: path, bounds } => {
            let b = bounds.resolve(profile)?;
            probe_output("probe-compress", &path, b, probe_compressed(&subgroup(&path)?, b))?
        }
        Command::Fix { endos, limit, probe } => {
            let fam = family(&endos)?;
            let l = limit_or(limit);
            let approx = fix_subgroup_approx(&fam, l)?;
            let mut result = json!({
                "rank": approx.graph.rank(),
                "basis": words(&approx.graph.generators()),
                "length": approx.length,
                "ranks": approx.ranks,
                "stabilized": approx.stabilized,
            });
            let mut witnesses = json!([]);
            if probe {
                let b = ProbeBounds::new(2, profile.depth.min(4))?;
                let report = probe_fix_inert(&fam, l, b)?;
                witnesses = serde_json::to_value(&report.witnesses)?;
                result["inert_probe"] = serde_json::to_value(&report)?;
            }
            Output::new("fix", json!({ "endos": paths(&endos), "limit": l }), result).with_witnesses(witnesses)
        }
        Command::Eq { left, right, limit } => {
            let h = parse_morphism(&read(&left)?, None)?;
            let k = parse_morphism(&read(&right)?, None)?;
            let l = limit_or(limit);
            let found = equalizer_words(&[h.clone(), k], l)?;
            let graph = CoreGraph::from_generators(h.domain(), &found)?;
            Output::new(
                "eq",
                json!({ "left": left.display().to_string(), "right": right.display().to_string(), "limit": l }),
                json!({ "words": found.len(), "rank": graph.rank(), "basis": words(&graph.generators()) }),
            )
        }
        Command::Image { morphism } => {
            let h = parse_morphism(&read(&morphism)?, None)?;
            Output::new(
                "image",
                json!({ "morphism": morphism.display().to_string() }),
                serde_json::to_value(h.image_subgroup().summary())?,
            )
        }
        Command::Beta0 { endos, depth } => {
            let fam = family(&endos)?;
            let d = depth.unwrap_or(profile.depth);
            let m = minimal_image_search(&fam, d)?;
            Output::new(
                "beta0",
                json!({ "endos": paths(&endos), "depth": d }),
                json!({ "beta0": m.beta0.to_string(), "rank": m.rank, "word": m.word, "explored": m.explored }),
            )
        }
        Command::VerifyMainFree { subgroup: path, endos, limit } => {
            let fam = family(&endos)?;
            let k = subgroup(&path)?;
            let l = limit_or(limit);
            let beta0 = minimal_image_search(&fam, profile.depth)?.beta0;
            let check = verify_main_free(&fam, &beta0, &k, l)?;
            let witnesses = serde_json::to_value(&check.report.witnesses)?;
            Output::new(
                "verify-main-free",
                json!({ "subgroup": path.display().to_string(), "endos": paths(&endos), "limit": l }),
                serde_json::to_value(&check)?,
            )
            .with_witnesses(witnesses)
        }
        Command::BhCheck { endos, limit } => {
            let catalogue = if endos.is_empty() {
                bh_catalogue(17, 7)
            } else {
                endos.iter().map(|p| endo(p)).collect::<Result<Vec<_>>>()?
            };
            let l = limit_or(limit);
            let report = bh_catalogue_check(&catalogue, l)?;
            let witnesses = serde_json::to_value(&report.witnesses)?;
            Output::new(
                "bh-check",
                json!({ "endos": paths(&endos), "catalogue": catalogue.len(), "limit": l }),
                serde_json::to_value(&report)?,
            )
            .with_witnesses(witnesses)
        }
        Command::Tc { presentation: path, subgroup: sub, max_cosets } => {
            let p = presentation(&path)?;
            let gens = match &sub {
                Some(s) => presentation_subgroup(&p, s)?,
                None => Vec::new(),
            };
            let table = todd_coxeter(&p, &gens, max_cosets)?;
            Output::new(
                "tc",
                json!({ "presentation": p.to_string(), "subgroup": render_words(&p, &gens), "max_cosets": max_cosets }),
                json!({ "index": table.index(), "table": table.rows() }),
            )
        }
        Command::Rs { presentation: path, subgroup: sub, max_cosets } => {
            let p = presentation(&path)?;
            let gens = presentation_subgroup(&p, &sub)?;
            let table = todd_coxeter(&p, &gens, max_cosets)?;
            let sp = tietze_simplify(&reidemeister_schreier(&p, &table)?)?;
            Output::new(
                "rs",
                json!({ "presentation": p.to_string(), "subgroup": render_words(&p, &gens) }),
                json!({
                    "index": table.index(),
                    "presentation": sp.presentation.to_string(),
                    "generators": render_words(&p, &sp.generators),
                    "abelianization": sp.presentation.abelianization().to_string(),
                }),
            )
        }
        Command::Abel { presentation: path } => {
            let p = presentation(&path)?;
            let ab = p.abelianization();
            Output::new(
                "abel",
                json!({ "presentation": p.to_string() }),
                json!({ "invariants": ab.to_string(), "free_rank": ab.free_rank, "torsion": ab.torsion, "rank": ab.rank() }),
            )
        }
        Command::Dehn { presentation: path, word } => {
            let p = presentation(&path)?;
            let w = parse_presentation_word(&p, &word)?;
            Output::new(
                "dehn",
                json!({ "presentation": p.to_string(), "word": p.render(&w) }),
                json!({ "trivial": dehn_is_trivial(&p, &w)? }),
            )
        }
        Command::Pieces { presentation: path } => {
            let p = presentation(&path)?;
            Output::new("pieces", json!({ "presentation": p.to_string() }), serde_json::to_value(piece_check(&p))?)
        }
        Command::Klein { word, endo: endo_path, bound } => match (word, endo_path) {
            (Some(text), None) => {
                let w = parse_word(&text, fixgroups::Alphabet::new(2)?)?;
                let (m, n) = klein_normal_form(&w)?;
                Output::new(
                    "klein",
                    json!({ "word": w.to_string() }),
                    json!({ "m": m, "n": n, "normal_form": KleinElement::new(m, n).to_string() }),
                )
            }
            (None, Some(path)) => {
                let phi = endo(&path)?;
                if phi.domain().rank() != 2 {
                    bail!("a Klein bottle endomorphism has two generator lines");
                }
                let images = [KleinElement::from_word(&phi.images()[0])?, KleinElement::from_word(&phi.images()[1])?];
                let fix = ns2_fix_classify(&images, bound)?;
                Output::new(
                    "klein",
                    json!({ "endo": path.display().to_string(), "images": [images[0].to_string(), images[1].to_string()], "bound": bound }),
                    json!({
                        "class": fix.class.to_string(),
                        "generators": fix.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "fixed_in_box": fix.fixed_in_box,
                    }),
                )
            }
            _ => bail!("klein takes either a word or --endo <file>"),
        },
        Command::Prod { action } => prod(action)?,
        Command::VerifyPaper { .. } => unreachable!("handled in main"),
    })
}

fn group(text: &str) -> Result<ProductGroup> {
    parse_product_group(text).with_context(|| format!("group `{text}`"))
}

fn witness_check(case: &str) -> Option<String> {
    let canonical = case.replace('ℓ', "l");
    if COMPRESSION_CASES.contains(&canonical.as_str()) {
        return Some(format!("thm-main-products-2/{canonical}"));
    }
    Some(match canonical.as_str() {
        "final-corollary" => "final-corollary".into(),
        "fr-ns3" | "f2-ns3" => "thm-main-products-3/f2-ns3".into(),
        "sg-ns3" | "s2-ns3" => "thm-main-products-3/s2-ns3".into(),
        "nsk-ns3" | "ns4-ns3" => "thm-main-products-3/ns4-ns3".into(),
        "c2-f2" | "z-f2" | "c2-ns3" => format!("exs-no-bh/{canonical}"),
        _ => return None,
    })
}

fn prod(action: ProdAction) -> Result<Output> {
    Ok(match action {
        ProdAction::Rank { group: text } => {
            let g = group(&text)?;
            Output::new(
                "prod rank",
                json!({ "group": g.to_string() }),
                json!({ "rank": g.rank(), "factors": g.factor_count() }),
            )
        }
        ProdAction::Type { group: text } => {
            let g = group(&text)?;
            Output::new(
                "prod type",
                json!({ "group": g.to_string() }),
                json!({ "type": g.classify_type().to_string() }),
            )
        }
        ProdAction::Center { group: text } => {
            let g = group(&text)?;
            let center: Vec<String> = g.center().iter().map(ToString::to_string).collect();
            Output::new("prod center", json!({ "group": g.to_string() }), json!({ "center": center }))
        }
        ProdAction::Fix { group: text, endo: path, limit } => {
            let g = group(&text)?;
            let phi = parse_product_endo(&g, &read(&path)?).with_context(|| path.display().to_string())?;
            let fix = fix_words_product(&phi, limit)?;
            let mut result = json!({
                "enumerated": fix.enumerated,
                "certified": fix.certified.len(),
                "uncertain": fix.uncertain.len(),
            });
            if g.classify_type() == GroupType::Euclidean {
                if let Ok(e) = euclidean_fix_rank(&phi, 3) {
                    result["euclidean"] = serde_json::to_value(e)?;
                }
            }
            let shown: Vec<String> =
                fix.certified.iter().filter(|x| !x.is_identity()).take(64).map(|x| g.render(x)).collect();
            Output::new("prod fix", json!({ "group": g.to_string(), "endo": phi.render(), "limit": limit }), result)
                .with_witnesses(json!(shown))
        }
        ProdAction::Decompose { group: text, endo: path } => {
            let g = group(&text)?;
            let phi = parse_product_endo(&g, &read(&path)?).with_context(|| path.display().to_string())?;
            let result = match rectangular_decompose(&phi)? {
                Rectangularity::Rectangular(d) => json!({
                    "rectangular": true,
                    "permutation": d.permutation,
                    "cycles": d.cycles(),
                    "maps": d.maps.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
                Rectangularity::NotRectangular { generator, live } => json!({
                    "rectangular": false,
                    "generator": g.generator_name(generator),
                    "live": live,
                }),
            };
            Output::new("prod decompose", json!({ "group": g.to_string(), "endo": phi.render() }), result)
        }
        ProdAction::Witness { case } => {
            let Some(id) = witness_check(&case) else {
                return Err(fixgroups::Error::UnknownCase(case).into());
            };
            let check = fixgroups::verify::run_check(&id, Profile::DEFAULT)?;
            let witness = check.witness.clone().unwrap_or(Value::Null);
            Output::new(
                "prod witness",
                json!({ "case": case }),
                json!({ "check": check.id, "status": check.status, "numbers": check.numbers }),
            )
            .with_witnesses(witness)
        }
    })
}

fn emit(value: &Value, json_path: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if let Some(path) = json_path {
        fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    let profile = Profile::parse(&cli.profile)?;
    if let Command::VerifyPaper { checks } = &cli.command {
        let report = verify_paper(checks, profile)?;
        for c in &report.checks {
            eprintln!("{:<8} {} ({} ms)", c.status.to_string().to_uppercase(), c.id, c.runtime_ms);
        }
        emit(&serde_json::to_value(&report)?, cli.json.as_deref())?;
        let failed = report.checks.iter().any(|c| c.status == Status::Fail);
        return Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS });
    }
    let out = run(cli.command, profile)?;
    emit(&out.to_json(), cli.json.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

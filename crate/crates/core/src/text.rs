//! Text formats: words, subgroup files, endomorphism files, presentations,
//! product group strings and product elements.
//!
//! All parsers report failures as [`Error::Syntax`] with 1-based line and
//! column numbers and never panic on arbitrary input.

use crate::error::{Error, Result};
use crate::morphisms::FreeHom;
use crate::presentations::Presentation;
use crate::products::{FactorDescriptor, ProductElement, ProductEndo, ProductGroup};
use crate::words::{Alphabet, Letter, Word};

/// Generator indices above this are rejected to keep allocations bounded.
pub const MAX_GENERATOR: usize = 4096;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Letters named by the default convention, with 1-based columns.
fn lex_letters(text: &str, line: usize) -> Result<Vec<(Letter, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(syntax(line, column, format!("unexpected character `{c}`")));
        }
        let inverse = c.is_ascii_uppercase();
        let lower = c.to_ascii_lowercase();
        if lower == 'g' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
            let mut j = i + 1;
            let mut value: usize = 0;
            while j < chars.len() && chars[j].is_ascii_digit() {
                value = value.saturating_mul(10).saturating_add(chars[j] as usize - '0' as usize);
                j += 1;
            }
            if value == 0 || value > MAX_GENERATOR {
                return Err(syntax(line, column, format!("generator index {value} out of range")));
            }
            out.push((Letter::new(value, inverse), column));
            i = j;
        } else {
            out.push((Letter::new((lower as u8 - b'a') as usize + 1, inverse), column));
            i += 1;
        }
    }
    Ok(out)
}

pub(crate) fn parse_letters(text: &str, line: usize) -> Result<Vec<Letter>> {
    Ok(lex_letters(text, line)?.into_iter().map(|(l, _)| l).collect())
}

/// Parses a word over `alphabet` using default names.
pub fn parse_word(text: &str, alphabet: Alphabet) -> Result<Word> {
    parse_word_at(text, alphabet, 1)
}

fn parse_word_at(text: &str, alphabet: Alphabet, line: usize) -> Result<Word> {
    let letters = lex_letters(text, line)?;
    if let Some(&(l, col)) = letters.iter().find(|(l, _)| l.generator() > alphabet.rank()) {
        return Err(syntax(line, col, format!("generator `{l}` outside alphabet of rank {}", alphabet.rank())));
    }
    Word::from_letters(alphabet, letters.into_iter().map(|(l, _)| l))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        (!body.trim().is_empty()).then_some((i + 1, body))
    })
}

/// Subgroup file: one generator word per line, `#` comments.
///
/// Without an explicit alphabet the rank is the largest generator used
/// (at least 1).
pub fn parse_subgroup(text: &str, alphabet: Option<Alphabet>) -> Result<(Alphabet, Vec<Word>)> {
    let mut rows = Vec::new();
    let mut max_gen = 1;
    for (line, body) in content_lines(text) {
        let letters = lex_letters(body, line)?;
        max_gen = letters.iter().map(|(l, _)| l.generator()).fold(max_gen, usize::max);
        rows.push((line, body));
    }
    let alphabet = match alphabet {
        Some(a) => a,
        None => Alphabet::new(max_gen)?,
    };
    let words = rows.into_iter().map(|(line, body)| parse_word_at(body, alphabet, line)).collect::<Result<Vec<_>>>()?;
    Ok((alphabet, words))
}

/// Morphism file: lines `a -> a b`, one per domain generator.
///
/// The codomain rank defaults to the largest generator mentioned on either
/// side.
pub fn parse_morphism(text: &str, codomain: Option<Alphabet>) -> Result<FreeHom> {
    // (line, generator, image letters with columns)
    type Entry = (usize, usize, Vec<(Letter, usize)>);
    let mut entries: Vec<Entry> = Vec::new();
    for (line, body) in content_lines(text) {
        let Some(pos) = body.find("->") else {
            return Err(syntax(line, 1, "expected `<generator> -> <word>`"));
        };
        let lhs = lex_letters(&body[..pos], line)?;
        let [(g, col)] = lhs[..] else {
            return Err(syntax(line, 1, "left side must be a single generator"));
        };
        if g.is_inverse() {
            return Err(syntax(line, col, "left side must be a positive generator"));
        }
        let offset = body[..pos + 2].chars().count();
        let rhs = lex_letters(&body[pos + 2..], line)?.into_iter().map(|(l, c)| (l, c + offset)).collect();
        entries.push((line, g.generator(), rhs));
    }
    if entries.is_empty() {
        return Err(syntax(1, 1, "empty morphism"));
    }
    let n = entries.len();
    let mut slots: Vec<Option<Vec<(Letter, usize)>>> = vec![None; n];
    for (line, g, rhs) in entries {
        if g > n {
            return Err(syntax(line, 1, format!("generator {g} exceeds domain rank {n}")));
        }
        if slots[g - 1].replace(rhs).is_some() {
            return Err(syntax(line, 1, format!("generator {g} defined twice")));
        }
    }
    let used = slots.iter().flatten().flat_map(|r| r.iter().map(|(l, _)| l.generator())).fold(n, usize::max);
    let domain = Alphabet::new(n)?;
    let codomain = match codomain {
        Some(c) => {
            if used > c.rank().max(n) {
                return Err(syntax(1, 1, format!("image uses generator {used} outside codomain")));
            }
            c
        }
        None => Alphabet::new(used)?,
    };
    let images = slots
        .into_iter()
        .map(|s| Word::from_letters(codomain, s.expect("all slots filled").into_iter().map(|(l, _)| l)))
        .collect::<Result<Vec<_>>>()?;
    FreeHom::new(domain, codomain, images)
}

/// Endomorphism file; images must stay within the domain generators.
pub fn parse_endo(text: &str) -> Result<FreeHom> {
    let hom = parse_morphism(text, None)?;
    if hom.codomain() != hom.domain() {
        return Err(syntax(1, 1, "image mentions a generator outside the domain"));
    }
    Ok(hom)
}

fn parse_generator_names(text: &str, line: usize) -> Result<Vec<usize>> {
    let names = lex_letters(text, line)?;
    let mut seen = Vec::new();
    for (l, col) in names {
        if l.is_inverse() {
            return Err(syntax(line, col, "generator names must be lowercase"));
        }
        if seen.contains(&l.generator()) {
            return Err(syntax(line, col, format!("duplicate generator `{l}`")));
        }
        seen.push(l.generator());
    }
    if seen.is_empty() {
        return Err(syntax(line, 1, "presentation needs at least one generator"));
    }
    Ok(seen)
}

fn parse_named_word(text: &str, line: usize, names: &[usize], alphabet: Alphabet) -> Result<Word> {
    let letters = lex_letters(text, line)?
        .into_iter()
        .map(|(l, col)| match names.iter().position(|&g| g == l.generator()) {
            Some(i) => Ok(Letter::new(i + 1, l.is_inverse())),
            None => Err(syntax(line, col, format!("`{l}` is not a generator of the presentation"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Word::from_letters(alphabet, letters)
}

/// Presentation text: either `gens` on the first line and one relator per
/// following line, or a single line `gens | r1, r2`.
///
/// Generator names are mapped to indices in the order listed.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let Some(&(first_line, first)) = lines.first() else {
        return Err(syntax(1, 1, "empty presentation"));
    };
    let (gens_text, inline) = match first.split_once('|') {
        Some((g, r)) => (g, Some(r)),
        None => (first, None),
    };
    let names = parse_generator_names(gens_text, first_line)?;
    let alphabet = Alphabet::new(names.len())?;
    let mut relators = Vec::new();
    if let Some(rest) = inline {
        for piece in rest.split([',', ';']) {
            if !piece.trim().is_empty() {
                relators.push(parse_named_word(piece, first_line, &names, alphabet)?);
            }
        }
    }
    for &(line, body) in &lines[1..] {
        for piece in body.split([',', ';']) {
            if !piece.trim().is_empty() {
                relators.push(parse_named_word(piece, line, &names, alphabet)?);
            }
        }
    }
    let display: Vec<String> = names.iter().map(|&g| Letter::new(g, false).to_string()).collect();
    Presentation::with_names(alphabet, relators, display)
}

/// A word in the generator names of `p`.
pub fn parse_presentation_word(p: &Presentation, text: &str) -> Result<Word> {
    let names: Vec<usize> = p
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| match parse_letters(n, 1).ok().as_deref() {
            Some([l]) if !l.is_inverse() => l.generator(),
            _ => i + 1,
        })
        .collect();
    parse_named_word(text, 1, &names, p.alphabet())
}

/// Product group strings such as `F2 x NS3`, `NS2^2 x C2`, `Z^2 x S2`.
pub fn parse_product_group(text: &str) -> Result<ProductGroup> {
    let mut factors = Vec::new();
    let mut column = 1;
    for token in text.split(['x', '×']) {
        let trimmed = token.trim();
        let col = column + token.len() - token.trim_start().len();
        column += token.len() + 1;
        if trimmed.is_empty() {
            return Err(syntax(1, col, "missing factor"));
        }
        let (base, power) = match trimmed.split_once('^') {
            Some((b, p)) => {
                let p: usize = p.trim().parse().map_err(|_| syntax(1, col, format!("bad exponent in `{trimmed}`")))?;
                if p == 0 || p > 64 {
                    return Err(syntax(1, col, "exponent must be in 1..=64"));
                }
                (b.trim(), p)
            }
            None => (trimmed, 1),
        };
        let desc = parse_factor(base).ok_or_else(|| syntax(1, col, format!("unknown factor `{base}`")))?;
        factors.extend(std::iter::repeat_n(desc, power));
    }
    ProductGroup::new(factors)
}

fn parse_factor(text: &str) -> Option<FactorDescriptor> {
    let number = |s: &str| -> Option<usize> {
        let v: usize = s.parse().ok()?;
        (1..=256).contains(&v).then_some(v)
    };
    match text {
        "Z" => Some(FactorDescriptor::Free(1)),
        "C2" | "Z/2" => Some(FactorDescriptor::NonOrientable(1)),
        _ => {
            if let Some(rest) = text.strip_prefix("NS") {
                number(rest).map(FactorDescriptor::NonOrientable)
            } else if let Some(rest) = text.strip_prefix('S') {
                number(rest).map(FactorDescriptor::Orientable)
            } else if let Some(rest) = text.strip_prefix('F') {
                number(rest).map(FactorDescriptor::Free)
            } else {
                None
            }
        }
    }
}

/// Product element text `(a b A ; c)`: one component per factor, written
/// with the group's global generator names.
pub fn parse_product_element(group: &ProductGroup, text: &str) -> Result<ProductElement> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| syntax(1, 1, "product element must be wrapped in parentheses"))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != group.factor_count() {
        return Err(syntax(1, 1, format!("expected {} components, found {}", group.factor_count(), parts.len())));
    }
    let global = Alphabet::new(group.rank().max(1))?;
    let mut components = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let word = parse_word_at(part, global, 1)?;
        let local = word
            .restrict(group.factor_alphabet(i), group.offset(i))
            .map_err(|_| syntax(1, 1, format!("component {} uses a generator of another factor", i + 1)))?;
        components.push(local);
    }
    ProductElement::new(group, components)
}

/// Endomorphism of a product group: a morphism file over the global
/// generator names, one line per generator.
pub fn parse_product_endo(group: &ProductGroup, text: &str) -> Result<ProductEndo> {
    let global = group.global_alphabet();
    let hom = parse_morphism(text, Some(global))?;
    if hom.domain().rank() != global.rank() {
        return Err(syntax(1, 1, format!("expected {} generator lines, found {}", global.rank(), hom.domain().rank())));
    }
    ProductEndo::from_global_images(group, hom.images())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_text() {
        let f2 = Alphabet::new(2).unwrap();
        let w = parse_word("a b A", f2).unwrap();
        assert_eq!(w.letters().len(), 3);
        assert_eq!(parse_word("abA", f2).unwrap(), w);
        assert!(parse_word("", f2).unwrap().is_identity());
        match parse_word("a c", f2) {
            Err(Error::Syntax { line: 1, column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_word("a ?", f2), Err(Error::Syntax { column: 3, .. })));
    }

    #[test]
    fn presentation_text() {
        let p = parse_presentation("a b | a a b b").unwrap();
        assert_eq!(p.alphabet().rank(), 2);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].to_string(), "a a b b");

        let ns3 = parse_presentation("c d e\nc d C d e e\n").unwrap();
        assert_eq!(ns3.relators()[0].to_string(), "a b A b c c");
        assert_eq!(ns3.names(), ["c", "d", "e"]);
        assert!(matches!(parse_presentation("a b\na c"), Err(Error::Syntax { line: 2, column: 3, .. })));
    }

    #[test]
    fn subgroup_and_endo_text() {
        let (alph, gens) = parse_subgroup("a a\nb # comment\n\na b A\n", None).unwrap();
        assert_eq!(alph.rank(), 2);
        assert_eq!(gens.len(), 3);
        let phi = parse_endo("a -> a b\nb -> b\n").unwrap();
        assert_eq!(phi.images()[0].to_string(), "a b");
        assert!(parse_endo("a -> a\na -> b").is_err());
        assert!(parse_endo("a -> c").is_err());
        assert!(parse_morphism("a -> a\nb -> ", None).is_ok());
    }

    #[test]
    fn product_text() {
        let g = parse_product_group("F2 x NS3").unwrap();
        assert_eq!(g.descriptors(), vec![FactorDescriptor::Free(2), FactorDescriptor::NonOrientable(3)]);
        let h = parse_product_group("NS2^2 x C2").unwrap();
        assert_eq!(h.factor_count(), 3);
        assert_eq!(h.rank(), 5);
        assert!(parse_product_group("F2 x Q7").is_err());
        assert!(parse_product_group("F2 x").is_err());

        let fz = parse_product_group("F2 x Z").unwrap();
        let x = parse_product_element(&fz, "(a b A ; c)").unwrap();
        assert_eq!(x.components()[0].to_string(), "a b A");
        assert_eq!(x.components()[1].to_string(), "a");
        assert!(parse_product_element(&fz, "(c ; c)").is_err());
        assert!(parse_product_element(&fz, "a ; c").is_err());

        let phi = parse_product_endo(&fz, "a -> a\nb -> b\nc -> C\n").unwrap();
        assert_eq!(phi.images()[2].components()[1].to_string(), "A");
        assert!(parse_product_endo(&fz, "a -> a\nb -> b\n").is_err());
        assert!(parse_product_endo(&fz, "a -> a\nb -> b\nc -> a\n").is_err());
    }

    #[test]
    fn presentation_words() {
        let p = parse_presentation("c d | c d C d").unwrap();
        assert_eq!(parse_presentation_word(&p, "c D").unwrap().to_string(), "a B");
        assert!(parse_presentation_word(&p, "a").is_err());
    }
}

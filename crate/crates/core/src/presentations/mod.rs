//! Finite presentations, surface groups and the machinery around them.

mod dehn;
mod klein;
mod oracle;
mod rs;
pub mod snf;
mod todd_coxeter;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub use dehn::{dehn_is_trivial, piece_check, symmetrized, PieceReport};
pub use klein::{klein_normal_form, ns2_endomorphisms, ns2_fix_classify, FixClass, KleinElement, Ns2Fix};
pub use oracle::{equality_oracle, GroupContext, Oracle, Verdict3};
pub use rs::{reidemeister_schreier, tietze_simplify, SubgroupPresentation};
pub use todd_coxeter::{todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};

/// Generators and cyclically reduced, nonempty relators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    names: Vec<String>,
}

fn default_names(alphabet: Alphabet) -> Vec<String> {
    (1..=alphabet.rank()).map(|i| Letter::new(i, false).to_string()).collect()
}

impl Presentation {
    /// Relators are cyclically reduced; ones that reduce to the identity are dropped.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Presentation> {
        Presentation::with_names(alphabet, relators, default_names(alphabet))
    }

    pub fn with_names(alphabet: Alphabet, relators: Vec<Word>, names: Vec<String>) -> Result<Presentation> {
        if names.len() != alphabet.rank() {
            return Err(Error::Precondition(format!("{} names for {} generators", names.len(), alphabet.rank())));
        }
        let mut out = Vec::with_capacity(relators.len());
        for r in relators {
            if r.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: r.alphabet().rank() });
            }
            let core = r.cyclic_reduce().0;
            if !core.is_identity() {
                out.push(core);
            }
        }
        Ok(Presentation { alphabet, relators: out, names })
    }

    /// Relators given as strings over the default letter names.
    pub fn parse_relators(rank: usize, relators: &[&str]) -> Result<Presentation> {
        let alphabet = Alphabet::new(rank)?;
        let words = relators.iter().map(|r| Word::parse(alphabet, r)).collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, words)
    }

    pub fn free(rank: usize) -> Result<Presentation> {
        Presentation::new(Alphabet::new(rank)?, vec![])
    }

    /// `⟨a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]⟩` on letters `a b c d ...`.
    pub fn orientable(genus: usize) -> Result<Presentation> {
        SurfaceDescriptor::Orientable(genus).presentation()
    }

    /// `⟨a1, ..., ak | a1² ... ak²⟩`; for `k = 2` the Klein bottle form `⟨a, b | a b A b⟩`.
    pub fn nonorientable(k: usize) -> Result<Presentation> {
        SurfaceDescriptor::NonOrientable(k).presentation()
    }

    /// The re-presentation of `NS_k` built from Klein pairs:
    /// `x1 x2 X1 x2 [x3 x4 X3 x4] x5² ... xk²` (two pairs when `k >= 4`).
    pub fn nonorientable_pairs(k: usize) -> Result<Presentation> {
        if k < 2 {
            return Presentation::nonorientable(k);
        }
        let alphabet = Alphabet::new(k)?;
        let g = |i: usize| Letter::new(i, false);
        let pairs = if k >= 4 { 2 } else { 1 };
        let mut letters = Vec::new();
        for p in 0..pairs {
            let (x, y) = (g(2 * p + 1), g(2 * p + 2));
            letters.extend([x, y, x.inverse(), y]);
        }
        for i in 2 * pairs + 1..=k {
            letters.extend([g(i), g(i)]);
        }
        Presentation::new(alphabet, vec![Word::from_letters(alphabet, letters)?])
    }

    pub fn klein() -> Presentation {
        Presentation::nonorientable(2).expect("rank 2")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.rank()
    }

    /// Word in this presentation's own names.
    pub fn render(&self, w: &Word) -> String {
        let parts: Vec<String> = w
            .letters()
            .iter()
            .map(|l| {
                let name = &self.names[l.generator() - 1];
                if l.is_inverse() {
                    invert_name(name)
                } else {
                    name.clone()
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relator_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(Word::exponent_vector).collect()
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        AbelianMap::new(self).invariants()
    }
}

fn invert_name(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_lowercase() => c.to_uppercase().chain(chars).collect(),
        Some(c) if c.is_uppercase() => c.to_lowercase().chain(chars).collect(),
        _ => format!("{name}^-1"),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render(r)).collect();
        write!(f, "{} | {}", self.names.join(" "), rels.join(", "))
    }
}

/// `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tm` with `t1 | t2 | ... | tm`, all `ti >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    /// Minimal number of generators of the abelian group.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The abelianization map in Smith coordinates: a word goes to its exponent
/// vector times `W`, coordinate `i` read modulo the `i`-th invariant factor.
#[derive(Clone, Debug)]
pub struct AbelianMap {
    columns: usize,
    w: snf::Matrix,
    /// invariant factor per coordinate; zero means a free coordinate
    moduli: Vec<BigInt>,
}

impl AbelianMap {
    pub fn new(p: &Presentation) -> AbelianMap {
        AbelianMap::from_matrix(p.alphabet.rank(), &p.relator_matrix())
    }

    pub fn from_matrix(columns: usize, rows: &[Vec<i64>]) -> AbelianMap {
        if rows.is_empty() {
            return AbelianMap { columns, w: snf::identity(columns), moduli: vec![BigInt::zero(); columns] };
        }
        let s = snf::smith_normal_form(&snf::from_i64(rows));
        let mut moduli = vec![BigInt::zero(); columns];
        for (i, d) in s.diagonal.iter().enumerate() {
            moduli[i] = d.clone();
        }
        AbelianMap { columns, w: s.w, moduli }
    }

    pub fn invariants(&self) -> AbelianInvariants {
        let free_rank = self.moduli.iter().filter(|d| d.is_zero()).count();
        let torsion = self
            .moduli
            .iter()
            .filter(|d| !d.is_zero() && **d > BigInt::from(1))
            .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
            .collect();
        AbelianInvariants { free_rank, torsion }
    }

    /// Image of an exponent vector, reduced coordinatewise.
    pub fn image_of_vector(&self, e: &[i64]) -> Vec<BigInt> {
        assert_eq!(e.len(), self.columns, "exponent vector length");
        (0..self.columns)
            .map(|j| {
                let x = e.iter().zip(&self.w).fold(BigInt::zero(), |acc, (&ei, row)| acc + BigInt::from(ei) * &row[j]);
                let m = &self.moduli[j];
                if m.is_zero() {
                    x
                } else {
                    ((x % m) + m) % m
                }
            })
            .collect()
    }

    pub fn image(&self, w: &Word) -> Vec<BigInt> {
        self.image_of_vector(&w.exponent_vector())
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.image(w).iter().all(Zero::is_zero)
    }

    /// Order of the image: `None` for infinite order.
    pub fn order(&self, w: &Word) -> Option<u64> {
        let img = self.image(w);
        let mut order = BigInt::from(1);
        for (x, m) in img.iter().zip(&self.moduli) {
            if x.is_zero() {
                continue;
            }
            if m.is_zero() {
                return None;
            }
            let g = num_integer::Integer::gcd(x, m);
            let o = m / g;
            order = num_integer::Integer::lcm(&order, &o);
        }
        order.abs().to_u64()
    }
}

/// A closed surface: orientable of genus `g` or non-orientable with `k` cross-caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceDescriptor {
    Orientable(usize),
    NonOrientable(usize),
}

impl SurfaceDescriptor {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            SurfaceDescriptor::Orientable(g) => 2 - 2 * g as i64,
            SurfaceDescriptor::NonOrientable(k) => 2 - k as i64,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            SurfaceDescriptor::Orientable(g) => 2 * g,
            SurfaceDescriptor::NonOrientable(k) => k,
        }
    }

    pub fn is_abelian(self) -> bool {
        matches!(self, SurfaceDescriptor::Orientable(1) | SurfaceDescriptor::NonOrientable(1))
    }

    /// Rank `2 - n·χ` of an index-`n` surface subgroup.
    pub fn cover_rank(self, index: usize) -> Result<usize> {
        if index == 0 {
            return Err(Error::Precondition("cover index must be at least 1".into()));
        }
        let r = 2 - index as i64 * self.euler_characteristic();
        usize::try_from(r).map_err(|_| Error::Precondition(format!("no index-{index} surface cover")))
    }

    pub fn presentation(self) -> Result<Presentation> {
        match self {
            SurfaceDescriptor::Orientable(g) => {
                if g == 0 {
                    return Err(Error::Precondition("genus must be at least 1".into()));
                }
                let alphabet = Alphabet::new(2 * g)?;
                let mut letters = Vec::new();
                for i in 0..g {
                    let (a, b) = (Letter::new(2 * i + 1, false), Letter::new(2 * i + 2, false));
                    letters.extend([a, b, a.inverse(), b.inverse()]);
                }
                Presentation::new(alphabet, vec![Word::from_letters(alphabet, letters)?])
            }
            SurfaceDescriptor::NonOrientable(k) => {
                if k == 0 {
                    return Err(Error::Precondition("cross-cap count must be at least 1".into()));
                }
                if k == 2 {
                    return Presentation::parse_relators(2, &["a b A b"]);
                }
                let alphabet = Alphabet::new(k)?;
                let letters: Vec<Letter> =
                    (1..=k).flat_map(|i| [Letter::new(i, false), Letter::new(i, false)]).collect();
                Presentation::new(alphabet, vec![Word::from_letters(alphabet, letters)?])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_presentations() {
        let s2 = Presentation::orientable(2).unwrap();
        assert_eq!(s2.relators()[0].to_string(), "a b A B c d C D");
        let ns3 = Presentation::nonorientable(3).unwrap();
        assert_eq!(ns3.relators()[0].to_string(), "a a b b c c");
        assert_eq!(Presentation::klein().relators()[0].to_string(), "a b A b");
        let p3 = Presentation::nonorientable_pairs(3).unwrap();
        assert_eq!(p3.relators()[0].to_string(), "a b A b c c");
        let p5 = Presentation::nonorientable_pairs(5).unwrap();
        assert_eq!(p5.relators()[0].to_string(), "a b A b c d C d e e");
    }

    #[test]
    fn abelianization_examples() {
        let s2 = Presentation::orientable(2).unwrap().abelianization();
        assert_eq!(s2, AbelianInvariants { free_rank: 4, torsion: vec![] });
        let k = Presentation::klein().abelianization();
        assert_eq!(k, AbelianInvariants { free_rank: 1, torsion: vec![2] });
        let ns3 = Presentation::parse_relators(3, &["a b A b c c"]).unwrap().abelianization();
        assert_eq!(ns3, AbelianInvariants { free_rank: 2, torsion: vec![2] });
        assert_eq!(ns3, Presentation::nonorientable(3).unwrap().abelianization());
        for k in 1..6 {
            let std = Presentation::nonorientable(k).unwrap().abelianization();
            assert_eq!(std, Presentation::nonorientable_pairs(k).unwrap().abelianization());
            assert_eq!(std.rank(), k);
        }
    }

    #[test]
    fn euler_and_covers() {
        assert_eq!(SurfaceDescriptor::Orientable(2).cover_rank(2).unwrap(), 6);
        assert_eq!(SurfaceDescriptor::NonOrientable(3).euler_characteristic(), -1);
        assert_eq!(SurfaceDescriptor::NonOrientable(3).cover_rank(1).unwrap(), 3);
        for n in 1..5 {
            assert_eq!(n as i64 * SurfaceDescriptor::Orientable(1).euler_characteristic(), 0);
        }
    }

    #[test]
    fn abelian_map_orders() {
        let p = Presentation::parse_relators(3, &["a b A b c c"]).unwrap();
        let m = AbelianMap::new(&p);
        let w = |s: &str| Word::parse(p.alphabet(), s).unwrap();
        assert_eq!(m.order(&w("b")), None);
        assert_eq!(m.order(&w("b b c c")), Some(1));
        assert_eq!(m.order(&w("b c")), Some(2));
        assert!(!m.is_trivial(&w("a")));
        assert!(m.is_trivial(&w("a b A b c c")));
    }
}

//! Folded core graphs of finitely generated subgroups of free groups.
//!
//! Folding runs on a union-find over vertices; every edge insertion folds
//! immediately, so the working graph is always deterministic. Finished
//! graphs are trimmed to their core and relabelled breadth-first from the
//! basepoint with edges visited in letter order, which makes structural
//! equality the same as subgroup equality.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{enumerate_nonempty, Alphabet, Letter, Word};

const NONE: u32 = u32::MAX;

/// Incremental folding state.
#[derive(Clone, Debug)]
pub(crate) struct Folder {
    alphabet: Alphabet,
    stride: usize,
    parent: Vec<u32>,
    out: Vec<u32>,
}

impl Folder {
    pub(crate) fn new(alphabet: Alphabet) -> Folder {
        let mut f = Folder { alphabet, stride: alphabet.letter_count(), parent: Vec::new(), out: Vec::new() };
        f.add_vertex();
        f
    }

    pub(crate) fn add_vertex(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id as u32);
        self.out.extend(std::iter::repeat_n(NONE, self.stride));
        id
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            let grand = self.parent[self.parent[v] as usize];
            self.parent[v] = grand;
            v = grand as usize;
        }
        v
    }

    fn slot(&self, v: usize, key: usize) -> u32 {
        self.out[v * self.stride + key]
    }

    fn follow(&mut self, v: usize, key: usize) -> Option<usize> {
        let v = self.find(v);
        match self.slot(v, key) {
            NONE => None,
            t => Some(self.find(t as usize)),
        }
    }

    fn set_or_queue(&mut self, u: usize, key: usize, v: usize, pending: &mut Vec<(usize, usize)>) {
        let idx = u * self.stride + key;
        match self.out[idx] {
            NONE => self.out[idx] = v as u32,
            t => pending.push((t as usize, v)),
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, letter: Letter, v: usize) {
        let key = letter.key();
        let mut pending = Vec::new();
        let (u, v) = (self.find(u), self.find(v));
        self.set_or_queue(u, key, v, &mut pending);
        let (u, v) = (self.find(u), self.find(v));
        self.set_or_queue(v, key ^ 1, u, &mut pending);
        self.merge_all(pending);
    }

    fn merge_all(&mut self, mut pending: Vec<(usize, usize)>) {
        while let Some((a, b)) = pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (root, child) = if a < b { (a, b) } else { (b, a) };
            self.parent[child] = root as u32;
            for key in 0..self.stride {
                let t = std::mem::replace(&mut self.out[child * self.stride + key], NONE);
                if t != NONE {
                    self.set_or_queue(root, key, t as usize, &mut pending);
                }
            }
        }
    }

    /// Endpoint of the path spelled by `word` from the basepoint, if defined.
    pub(crate) fn read(&mut self, word: &Word) -> Option<usize> {
        let mut v = self.find(0);
        for l in word.letters() {
            v = self.follow(v, l.key())?;
        }
        Some(v)
    }

    pub(crate) fn contains(&mut self, word: &Word) -> bool {
        let base = self.find(0);
        self.read(word) == Some(base)
    }

    /// Adds the closed path spelled by `word` at the basepoint.
    pub(crate) fn add_loop(&mut self, word: &Word) {
        let letters = word.letters();
        if letters.is_empty() {
            return;
        }
        let mut cur = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                match self.follow(cur, l.key()) {
                    Some(t) => {
                        cur = t;
                        continue;
                    }
                    None => self.add_vertex(),
                }
            };
            self.add_edge(cur, l, next);
            cur = self.find(next);
        }
    }

    /// Rank of the basepoint component (garbage vertices excluded).
    pub(crate) fn rank(&mut self) -> usize {
        let (vertices, table) = self.resolved();
        let edges = table.iter().step_by(2).filter(|&&t| t != NONE).count();
        debug_assert_eq!(table.len(), vertices * self.stride);
        edges + 1 - vertices
    }

    /// Resolved deterministic table of the basepoint component.
    fn resolved(&mut self) -> (usize, Vec<u32>) {
        let base = self.find(0);
        let mut index = HashMap::new();
        let mut order = vec![base];
        index.insert(base, 0u32);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for key in 0..self.stride {
                if let Some(t) = self.follow(v, key) {
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                        e.insert(order.len() as u32);
                        order.push(t);
                    }
                }
            }
            i += 1;
        }
        let mut table = vec![NONE; order.len() * self.stride];
        for (idx, &v) in order.iter().enumerate() {
            for key in 0..self.stride {
                if let Some(t) = self.follow(v, key) {
                    table[idx * self.stride + key] = index[&t];
                }
            }
        }
        (order.len(), table)
    }

    pub(crate) fn finish(mut self) -> CoreGraph {
        let (n, table) = self.resolved();
        CoreGraph::from_table(self.alphabet, n, table)
    }
}

/// A folded, trimmed, canonically numbered core graph. Vertex 0 is the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoreGraph {
    alphabet: Alphabet,
    vertices: usize,
    table: Vec<u32>,
}

/// Arbitrary labelled basepointed graph, input to [`fold`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub alphabet: Alphabet,
    pub vertex_count: usize,
    pub basepoint: usize,
    /// `(source, letter, target)`; an inverse letter is the reversed positive edge.
    pub edges: Vec<(usize, Letter, usize)>,
}

/// Folds an arbitrary graph to the core graph of its basepoint subgroup.
pub fn fold(graph: &RawGraph) -> Result<CoreGraph> {
    let rank = graph.alphabet.rank();
    if graph.basepoint >= graph.vertex_count.max(1) {
        return Err(Error::Precondition("basepoint outside vertex set".into()));
    }
    let mut folder = Folder::new(graph.alphabet);
    // vertex 0 of the folder is the basepoint
    let mut map = vec![usize::MAX; graph.vertex_count.max(1)];
    map[graph.basepoint] = 0;
    for slot in map.iter_mut() {
        if *slot == usize::MAX {
            *slot = folder.add_vertex();
        }
    }
    for &(u, l, v) in &graph.edges {
        if u >= map.len() || v >= map.len() {
            return Err(Error::Precondition("edge endpoint outside vertex set".into()));
        }
        if l.generator() > rank {
            return Err(Error::IndexOutOfRange { index: l.generator(), rank });
        }
        folder.add_edge(map[u], l, map[v]);
    }
    Ok(folder.finish())
}

/// Finite index or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl CoreGraph {
    /// Trims and canonically relabels a deterministic symmetric table rooted at 0.
    fn from_table(alphabet: Alphabet, n: usize, table: Vec<u32>) -> CoreGraph {
        let stride = alphabet.letter_count();
        let mut alive = vec![true; n];
        let mut degree: Vec<usize> =
            (0..n).map(|v| table[v * stride..(v + 1) * stride].iter().filter(|&&t| t != NONE).count()).collect();
        let mut table = table;
        let mut stack: Vec<usize> = (1..n).filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || v == 0 || degree[v] > 1 {
                continue;
            }
            alive[v] = false;
            for key in 0..stride {
                let t = table[v * stride + key];
                if t != NONE {
                    table[v * stride + key] = NONE;
                    let t = t as usize;
                    if t != v {
                        table[t * stride + (key ^ 1)] = NONE;
                        degree[t] -= 1;
                        if degree[t] <= 1 && t != 0 {
                            stack.push(t);
                        }
                    }
                }
            }
            degree[v] = 0;
        }
        // canonical BFS renumbering
        let mut label = vec![NONE; n];
        let mut order = vec![0usize];
        label[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for key in 0..stride {
                let t = table[v * stride + key];
                if t != NONE && label[t as usize] == NONE {
                    label[t as usize] = order.len() as u32;
                    order.push(t as usize);
                }
            }
            i += 1;
        }
        let mut canon = vec![NONE; order.len() * stride];
        for (idx, &v) in order.iter().enumerate() {
            for key in 0..stride {
                let t = table[v * stride + key];
                if t != NONE {
                    canon[idx * stride + key] = label[t as usize];
                }
            }
        }
        CoreGraph { alphabet, vertices: order.len(), table: canon }
    }

    /// Folded core graph of the subgroup generated by `gens`.
    pub fn from_generators(alphabet: Alphabet, gens: &[Word]) -> Result<CoreGraph> {
        let mut folder = Folder::new(alphabet);
        for g in gens {
            if g.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: g.alphabet().rank() });
            }
            folder.add_loop(g);
        }
        Ok(folder.finish())
    }

    pub fn trivial(alphabet: Alphabet) -> CoreGraph {
        CoreGraph { alphabet, vertices: 1, table: vec![NONE; alphabet.letter_count()] }
    }

    /// The rose: the whole free group.
    pub fn whole(alphabet: Alphabet) -> CoreGraph {
        CoreGraph { alphabet, vertices: 1, table: vec![0; alphabet.letter_count()] }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Number of (positive) edges.
    pub fn edge_count(&self) -> usize {
        self.table.iter().step_by(2).filter(|&&t| t != NONE).count()
    }

    fn stride(&self) -> usize {
        self.alphabet.letter_count()
    }

    /// Target of the edge labelled `letter` leaving `v`.
    pub fn target(&self, v: usize, letter: Letter) -> Option<usize> {
        match self.table[v * self.stride() + letter.key()] {
            NONE => None,
            t => Some(t as usize),
        }
    }

    /// Positive edges `(source, generator, target)` in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let stride = self.stride();
        let mut out = Vec::new();
        for v in 0..self.vertices {
            for key in (0..stride).step_by(2) {
                let t = self.table[v * stride + key];
                if t != NONE {
                    out.push((v, key / 2 + 1, t as usize));
                }
            }
        }
        out
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet.rank(), right: w.alphabet().rank() });
        }
        Ok(())
    }

    fn check_graph(&self, other: &CoreGraph) -> Result<()> {
        if other.alphabet != self.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet.rank(), right: other.alphabet.rank() });
        }
        Ok(())
    }

    /// Membership: `w` labels a closed path at the basepoint.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        self.check(w)?;
        Ok(self.contains_unchecked(w))
    }

    pub(crate) fn contains_unchecked(&self, w: &Word) -> bool {
        let mut v = 0;
        for &l in w.letters() {
            match self.target(v, l) {
                Some(t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    /// `|E| - |V| + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertices
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }

    pub fn index(&self) -> Index {
        if self.table.iter().all(|&t| t != NONE) {
            Index::Finite(self.vertices)
        } else {
            Index::Infinite
        }
    }

    /// Basepoint component of the pullback: the graph of `H ∩ K`.
    pub fn intersect(&self, other: &CoreGraph) -> Result<CoreGraph> {
        self.check_graph(other)?;
        let stride = self.stride();
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut order = vec![(0u32, 0u32)];
        index.insert((0, 0), 0);
        let mut table = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (u, v) = order[i];
            for key in 0..stride {
                let a = self.table[u as usize * stride + key];
                let b = other.table[v as usize * stride + key];
                let t = if a != NONE && b != NONE {
                    let next = order.len() as u32;
                    *index.entry((a, b)).or_insert_with(|| {
                        order.push((a, b));
                        next
                    })
                } else {
                    NONE
                };
                table.push(t);
            }
            i += 1;
        }
        Ok(CoreGraph::from_table(self.alphabet, order.len(), table))
    }

    /// Graph of the subgroup generated by both.
    pub fn join(&self, other: &CoreGraph) -> Result<CoreGraph> {
        self.check_graph(other)?;
        let mut folder = Folder::new(self.alphabet);
        for _ in 1..self.vertices + other.vertices {
            folder.add_vertex();
        }
        for (u, g, v) in self.edges() {
            folder.add_edge(u, Letter::new(g, false), v);
        }
        let off = self.vertices;
        for (u, g, v) in other.edges() {
            let map = |x: usize| if x == 0 { 0 } else { x + off };
            folder.add_edge(map(u), Letter::new(g, false), map(v));
        }
        Ok(folder.finish())
    }

    /// Free basis read off a breadth-first spanning tree.
    pub fn generators(&self) -> Vec<Word> {
        let stride = self.stride();
        let mut tree_in: Vec<Option<(usize, usize)>> = vec![None; self.vertices];
        let mut path: Vec<Vec<Letter>> = vec![Vec::new(); self.vertices];
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for key in 0..stride {
                let t = self.table[v * stride + key];
                if t != NONE && !seen[t as usize] {
                    let t = t as usize;
                    seen[t] = true;
                    tree_in[t] = Some((v, key));
                    let mut p = path[v].clone();
                    p.push(Letter::from_key(key));
                    path[t] = p;
                    queue.push_back(t);
                }
            }
        }
        let mut gens = Vec::new();
        for (u, g, v) in self.edges() {
            let key = 2 * (g - 1);
            if tree_in[v] == Some((u, key)) || tree_in[u] == Some((v, key ^ 1)) {
                continue;
            }
            let mut letters = path[u].clone();
            letters.push(Letter::new(g, false));
            letters.extend(path[v].iter().rev().map(|l| l.inverse()));
            gens.push(Word::from_letters(self.alphabet, letters).expect("letters in range"));
        }
        gens
    }

    /// `⟨w1, w2, ...⟩` using a free basis.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators().iter().map(|w| w.to_string()).collect();
        format!("<{}>", gens.join(", "))
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            rank: self.rank(),
            vertices: self.vertices,
            edges: self.edges().into_iter().map(|(u, g, v)| (u, Letter::new(g, false).to_string(), v)).collect(),
            generators: self.generators().iter().map(|w| w.to_string()).collect(),
            index: self.index(),
        }
    }
}

impl fmt::Display for CoreGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// JSON-friendly view of a core graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub rank: usize,
    pub vertices: usize,
    pub edges: Vec<(usize, String, usize)>,
    pub generators: Vec<String>,
    pub index: Index,
}

/// Enumeration bounds for the bounded probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeBounds {
    pub max_generators: usize,
    pub max_length: usize,
}

impl ProbeBounds {
    pub fn new(max_generators: usize, max_length: usize) -> Result<ProbeBounds> {
        if max_generators == 0 || max_length == 0 {
            return Err(Error::Precondition("probe bounds must be at least 1".into()));
        }
        Ok(ProbeBounds { max_generators, max_length })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Some candidates could not be certified either way.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProbeWitness {
    pub subgroup: String,
    pub ranks: (usize, usize),
}

/// Outcome of a bounded search. A pass means no counterexample within the
/// bounds, not a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub verdict: Verdict,
    pub witnesses: Vec<ProbeWitness>,
    pub violations: usize,
    pub checked: usize,
    pub bounds: Option<ProbeBounds>,
    pub relation: String,
}

const WITNESS_CAP: usize = 32;

impl ProbeReport {
    pub(crate) fn from_violations(
        relation: impl Into<String>,
        bounds: Option<ProbeBounds>,
        checked: usize,
        mut witnesses: Vec<ProbeWitness>,
    ) -> ProbeReport {
        witnesses.sort();
        let violations = witnesses.len();
        witnesses.truncate(WITNESS_CAP);
        ProbeReport {
            verdict: if violations == 0 { Verdict::Pass } else { Verdict::Fail },
            witnesses,
            violations,
            checked,
            bounds,
            relation: relation.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Distinct subgroups generated by at most `g` nonempty words of length at most `L`.
pub fn candidate_subgroups(alphabet: Alphabet, bounds: ProbeBounds) -> Vec<CoreGraph> {
    let words: Vec<Word> = enumerate_nonempty(alphabet, bounds.max_length).collect();
    let mut found: HashSet<CoreGraph> = HashSet::new();
    let words = &words;
    let mut frontier: Vec<Vec<usize>> = (0..words.len()).map(|i| vec![i]).collect();
    for depth in 1..=bounds.max_generators {
        let graphs: Vec<CoreGraph> = frontier
            .par_iter()
            .map(|idx| {
                let gens: Vec<Word> = idx.iter().map(|&i| words[i].clone()).collect();
                CoreGraph::from_generators(alphabet, &gens).expect("same alphabet")
            })
            .collect();
        found.extend(graphs);
        if depth == bounds.max_generators {
            break;
        }
        frontier = frontier
            .into_iter()
            .flat_map(|idx| {
                let last = *idx.last().expect("nonempty tuple");
                (last..words.len()).map(move |j| {
                    let mut next = idx.clone();
                    next.push(j);
                    next
                })
            })
            .collect();
    }
    let mut out: Vec<CoreGraph> = found.into_iter().collect();
    out.sort();
    out
}

fn hn_holds(h: &CoreGraph, k: &CoreGraph, meet: &CoreGraph) -> bool {
    let lhs = meet.rank().saturating_sub(1);
    lhs <= h.rank().saturating_sub(1) * k.rank().saturating_sub(1)
}

/// `max(rk(H∩K)-1, 0) <= max(rk H - 1, 0) * max(rk K - 1, 0)`.
pub fn hanna_neumann_check(h: &CoreGraph, k: &CoreGraph) -> Result<ProbeReport> {
    let meet = h.intersect(k)?;
    let witnesses = if hn_holds(h, k, &meet) {
        vec![]
    } else {
        vec![ProbeWitness { subgroup: format!("{h} ∩ {k}"), ranks: (meet.rank(), h.rank() * k.rank()) }]
    };
    Ok(ProbeReport::from_violations("rk(H∩K)-1 <= (rk H-1)(rk K-1)", None, 1, witnesses))
}

/// All unordered pairs of candidate subgroups within `bounds`.
pub fn hanna_neumann_sweep(alphabet: Alphabet, bounds: ProbeBounds) -> ProbeReport {
    let cands = candidate_subgroups(alphabet, bounds);
    let witnesses: Vec<ProbeWitness> = (0..cands.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let cands = &cands;
            (i..cands.len()).filter_map(move |j| {
                let (h, k) = (&cands[i], &cands[j]);
                // rank <= 1 on either side forces a cyclic intersection
                let meet = h.intersect(k).expect("same alphabet");
                (!hn_holds(h, k, &meet))
                    .then(|| ProbeWitness {
                        subgroup: format!("{h} ∩ {k}"), ranks: (meet.rank(), h.rank() * k.rank())
                    })
            })
        })
        .collect();
    let n = cands.len();
    ProbeReport::from_violations("rk(H∩K)-1 <= (rk H-1)(rk K-1)", Some(bounds), n * (n + 1) / 2, witnesses)
}

/// Checks `rk(K ∩ H) <= rk(K)` for every candidate `K`.
pub fn probe_inert(h: &CoreGraph, bounds: ProbeBounds) -> ProbeReport {
    let cands = candidate_subgroups(h.alphabet, bounds);
    probe_inert_against(h, &cands, Some(bounds))
}

pub(crate) fn probe_inert_against(h: &CoreGraph, cands: &[CoreGraph], bounds: Option<ProbeBounds>) -> ProbeReport {
    let witnesses: Vec<ProbeWitness> = cands
        .par_iter()
        .filter_map(|k| {
            let meet = k.intersect(h).expect("same alphabet");
            (meet.rank() > k.rank()).then(|| ProbeWitness { subgroup: k.describe(), ranks: (meet.rank(), k.rank()) })
        })
        .collect();
    ProbeReport::from_violations("rk(K∩H) <= rk(K)", bounds, cands.len(), witnesses)
}

/// Checks `rk(H) <= rk(K)` for every overgroup `K = ⟨H, w1, ..., wg⟩`.
pub fn probe_compressed(h: &CoreGraph, bounds: ProbeBounds) -> ProbeReport {
    let cands = candidate_subgroups(h.alphabet, bounds);
    let rank_h = h.rank();
    let mut overgroups: Vec<CoreGraph> = cands.par_iter().map(|c| h.join(c).expect("same alphabet")).collect();
    overgroups.sort();
    overgroups.dedup();
    let witnesses: Vec<ProbeWitness> = overgroups
        .iter()
        .filter(|k| k.rank() < rank_h)
        .map(|k| ProbeWitness { subgroup: k.describe(), ranks: (rank_h, k.rank()) })
        .collect();
    ProbeReport::from_violations("rk(H) <= rk(K) for H <= K", Some(bounds), overgroups.len(), witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_words;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn sub(gens: &[&str]) -> CoreGraph {
        let ws: Vec<Word> = gens.iter().map(|g| Word::parse(f2(), g).unwrap()).collect();
        CoreGraph::from_generators(f2(), &ws).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(f2(), s).unwrap()
    }

    #[test]
    fn construction_examples() {
        let a = sub(&["a"]);
        assert_eq!((a.vertex_count(), a.edge_count(), a.rank()), (1, 1, 1));
        let h = sub(&["a", "b a B"]);
        assert_eq!((h.vertex_count(), h.edge_count(), h.rank()), (2, 3, 2));
        assert_eq!(sub(&["a b", "a"]), CoreGraph::whole(f2()));
        let t = CoreGraph::from_generators(f2(), &[]).unwrap();
        assert_eq!(t, CoreGraph::trivial(f2()));
        assert_eq!(t.rank(), 0);
    }

    #[test]
    fn fold_examples() {
        let h = sub(&["a a", "b", "a b A"]);
        let raw = RawGraph {
            alphabet: f2(),
            vertex_count: 2,
            basepoint: 0,
            edges: h.edges().into_iter().map(|(u, g, v)| (u, Letter::new(g, false), v)).collect(),
        };
        assert_eq!(fold(&raw).unwrap(), h);

        // bouquet of {a b, a c}: the a-edges merge
        let f3 = Alphabet::new(3).unwrap();
        let raw = RawGraph {
            alphabet: f3,
            vertex_count: 3,
            basepoint: 0,
            edges: vec![
                (0, Letter::new(1, false), 1),
                (1, Letter::new(2, false), 0),
                (0, Letter::new(1, false), 2),
                (2, Letter::new(3, false), 0),
            ],
        };
        let g = fold(&raw).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 3));

        // hanging path gets pruned
        let raw = RawGraph {
            alphabet: f2(),
            vertex_count: 4,
            basepoint: 0,
            edges: vec![
                (0, Letter::new(1, false), 0),
                (0, Letter::new(2, false), 1),
                (1, Letter::new(2, false), 2),
                (3, Letter::new(1, false), 3),
            ],
        };
        assert_eq!(fold(&raw).unwrap(), sub(&["a"]));
    }

    #[test]
    fn fold_is_confluent_under_random_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let gens = ["a b A b b", "b a a B", "a b a", "B a b a"];
        let mut edges = Vec::new();
        let mut n = 1;
        for g in gens {
            let word = w(g);
            let mut cur = 0;
            for (i, &l) in word.letters().iter().enumerate() {
                let next = if i + 1 == word.len() {
                    0
                } else {
                    n += 1;
                    n - 1
                };
                edges.push((cur, l, next));
                cur = next;
            }
        }
        let reference =
            fold(&RawGraph { alphabet: f2(), vertex_count: n, basepoint: 0, edges: edges.clone() }).unwrap();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm[1..].shuffle(&mut rng);
            let base = rng.gen_range(0..n);
            perm.swap(0, base);
            let mut e: Vec<_> = edges.iter().map(|&(u, l, v)| (perm[u], l, perm[v])).collect();
            e.shuffle(&mut rng);
            let g = fold(&RawGraph { alphabet: f2(), vertex_count: n, basepoint: perm[0], edges: e }).unwrap();
            assert_eq!(g, reference);
        }
    }

    #[test]
    fn membership_examples() {
        let h = sub(&["a a", "b"]);
        assert!(h.contains(&w("a a")).unwrap());
        assert!(!h.contains(&w("a")).unwrap());
        assert!(h.contains(&Word::identity(f2())).unwrap());
        assert!(h.contains(&Word::identity(Alphabet::new(3).unwrap())).is_err());
    }

    #[test]
    fn membership_matches_brute_force_products() {
        let gens = [w("a a"), w("b"), w("a b A")];
        let h = CoreGraph::from_generators(f2(), &gens).unwrap();
        let mut letters: Vec<Word> = gens.to_vec();
        letters.extend(gens.iter().map(|g| g.invert()));
        let mut products: HashSet<Word> = HashSet::from([Word::identity(f2())]);
        let mut layer = vec![Word::identity(f2())];
        for _ in 0..6 {
            let mut next = Vec::new();
            for p in &layer {
                for g in &letters {
                    let q = p.mul(g);
                    if products.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            layer = next;
        }
        for word in enumerate_words(f2(), 6) {
            let brute = products.contains(&word);
            let graph = h.contains(&word).unwrap();
            // products of <= 6 factors cover every member of length <= 6 here
            assert_eq!(graph, brute, "{word}");
        }
    }

    #[test]
    fn rank_and_index_examples() {
        assert_eq!(CoreGraph::trivial(f2()).rank(), 0);
        assert_eq!(sub(&["b", "a b A"]).rank(), 2);
        let k = sub(&["a a", "b", "a b A"]);
        assert_eq!(k.rank(), 3);
        assert_eq!(k.index(), Index::Finite(2));
        assert_eq!(CoreGraph::whole(f2()).index(), Index::Finite(1));
        assert_eq!(sub(&["a"]).index(), Index::Infinite);
    }

    #[test]
    fn intersection_examples() {
        let h = sub(&["a a", "b"]);
        assert_eq!(h.intersect(&h).unwrap(), h);
        assert_eq!(sub(&["a"]).intersect(&sub(&["a a"])).unwrap(), sub(&["a a"]));
    }

    #[test]
    fn intersection_matches_membership_conjunction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pool: Vec<Word> = enumerate_nonempty(f2(), 3).collect();
        let words: Vec<Word> = enumerate_words(f2(), 8).collect();
        for _ in 0..12 {
            let pick = |rng: &mut ChaCha8Rng| -> Vec<Word> {
                (0..2).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
            };
            let h = CoreGraph::from_generators(f2(), &pick(&mut rng)).unwrap();
            let k = CoreGraph::from_generators(f2(), &pick(&mut rng)).unwrap();
            let m = h.intersect(&k).unwrap();
            for x in &words {
                let both = h.contains_unchecked(x) && k.contains_unchecked(x);
                assert_eq!(m.contains_unchecked(x), both);
            }
        }
    }

    #[test]
    fn join_examples() {
        let h = sub(&["a a", "b a B"]);
        assert_eq!(h.join(&CoreGraph::trivial(f2())).unwrap(), h);
        assert_eq!(sub(&["a a"]).join(&sub(&["a a a"])).unwrap(), sub(&["a"]));
        assert_eq!(sub(&["a"]).join(&sub(&["b"])).unwrap(), CoreGraph::whole(f2()));
    }

    #[test]
    fn generators_regenerate_graph() {
        for gens in [vec!["a a", "b", "a b A"], vec!["a b a B", "b b"], vec!["a"], vec![]] {
            let h = sub(&gens);
            let basis = h.generators();
            assert_eq!(basis.len(), h.rank());
            assert_eq!(CoreGraph::from_generators(f2(), &basis).unwrap(), h);
            for g in &gens {
                assert!(h.contains(&w(g)).unwrap());
            }
        }
    }

    #[test]
    fn hanna_neumann_examples() {
        assert!(hanna_neumann_check(&sub(&["a"]), &sub(&["a b"])).unwrap().passed());
        let h = sub(&["a a", "b"]);
        let k = sub(&["a a a", "b"]);
        let r = hanna_neumann_check(&h, &k).unwrap();
        assert!(r.passed());
        let m = h.intersect(&k).unwrap();
        assert!(m.rank() - 1 <= 1);
    }

    #[test]
    fn probe_examples() {
        let bounds = ProbeBounds::new(2, 3).unwrap();
        assert!(probe_inert(&CoreGraph::whole(f2()), bounds).passed());
        assert!(probe_inert(&sub(&["a b"]), bounds).passed());
        assert!(probe_compressed(&CoreGraph::whole(f2()), bounds).passed());
        let r = probe_compressed(&sub(&["a a", "b", "a b A"]), ProbeBounds::new(1, 1).unwrap());
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witnesses.iter().any(|w| w.ranks == (3, 2)));
    }

    #[test]
    fn schreier_identity_on_finite_index() {
        for h in candidate_subgroups(f2(), ProbeBounds::new(2, 2).unwrap()) {
            if let Index::Finite(n) = h.index() {
                assert_eq!(h.rank() - 1, n);
            }
        }
    }
}

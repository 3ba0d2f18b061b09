//! Coloured words: words whose letters each carry a commuting "colour"
//! generator, their block structure, transition words, and the canonical
//! pushdown to alternating words.
//!
//! The colour of a letter acts as a counterweight: balancing a word against
//! its colour (`s -> s a'`, `s' -> a s'`) keeps partial heights in {0,1}.
//! The pushdown of a coloured word splices transition words (tree paths
//! from a fixed base generator, raised to the running height) between the
//! balanced blocks, producing an alternating word that represents
//! `s0^h g s0^(-h-height(g))`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{SimplicialGraph, SpanningTree, VertexId};
use crate::words::{
    enumerate_geodesics, height, is_geodesic_word, normal_form, Letter, Word,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColourError {
    #[error("letter `{letter}` does not commute with colour `{colour}`")]
    ColourClash { letter: String, colour: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed coloured token `{0}`")]
    BadToken(String),
    #[error("search cap exceeded (cap {0})")]
    CapExceeded(usize),
}

/// A signed generator together with a colour that commutes with it.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColouredLetter {
    pub gen: VertexId,
    pub colour: VertexId,
    pub sign: i8,
}

impl ColouredLetter {
    pub fn new(
        g: &SimplicialGraph,
        gen: VertexId,
        colour: VertexId,
        sign: i8,
    ) -> Result<Self, ColourError> {
        if !g.commute(gen, colour) {
            return Err(ColourError::ColourClash {
                letter: g.name(gen).to_string(),
                colour: g.name(colour).to_string(),
            });
        }
        Ok(ColouredLetter { gen, colour, sign })
    }

    pub fn inverse(self) -> Self {
        ColouredLetter {
            sign: -self.sign,
            ..self
        }
    }

    pub fn letter(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign,
        }
    }
}

impl fmt::Debug for ColouredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}{}",
            self.gen,
            self.colour,
            if self.sign > 0 { "" } else { "'" }
        )
    }
}

/// A word over the coloured generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ColouredWord(pub Vec<ColouredLetter>);

impl ColouredWord {
    pub fn empty() -> Self {
        ColouredWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[ColouredLetter] {
        &self.0
    }

    pub fn inverse(&self) -> ColouredWord {
        ColouredWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &ColouredWord) -> ColouredWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ColouredWord(v)
    }

    /// Colour a whole word with one colour that commutes with all of it.
    pub fn monochrome(g: &SimplicialGraph, w: &Word, colour: VertexId) -> Result<Self, ColourError> {
        let mut out = Vec::with_capacity(w.len());
        for l in w.letters() {
            out.push(ColouredLetter::new(g, l.gen, colour, l.sign)?);
        }
        Ok(ColouredWord(out))
    }

    /// Parse whitespace-separated `s:a` / `s:a'` tokens.
    pub fn parse(g: &SimplicialGraph, text: &str) -> Result<Self, ColourError> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            let (body, sign) = match tok.strip_suffix('\'') {
                Some(b) => (b, -1),
                None => (tok, 1),
            };
            let Some((s, a)) = body.split_once(':') else {
                return Err(ColourError::BadToken(tok.to_string()));
            };
            let gen = g
                .vertex(s)
                .map_err(|_| ColourError::UnknownGenerator(s.to_string()))?;
            let colour = g
                .vertex(a)
                .map_err(|_| ColourError::UnknownGenerator(a.to_string()))?;
            out.push(ColouredLetter::new(g, gen, colour, sign)?);
        }
        Ok(ColouredWord(out))
    }

    pub fn display<'a>(&'a self, g: &'a SimplicialGraph) -> ColouredWordDisplay<'a> {
        ColouredWordDisplay { word: self, g }
    }
}

pub struct ColouredWordDisplay<'a> {
    word: &'a ColouredWord,
    g: &'a SimplicialGraph,
}

impl fmt::Display for ColouredWordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{}:{}{}",
                self.g.name(l.gen),
                self.g.name(l.colour),
                if l.sign > 0 { "" } else { "'" }
            )?;
        }
        Ok(())
    }
}

/// Forget the colours.
pub fn underlying(cw: &ColouredWord) -> Word {
    Word(cw.0.iter().map(|l| l.letter()).collect())
}

/// One block of a coloured word: a maximal run of equal colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub word: Word,
    pub colour: VertexId,
}

/// Maximal runs of equal colour; adjacent blocks have distinct colours.
pub fn blocks(cw: &ColouredWord) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for l in &cw.0 {
        match out.last_mut() {
            Some(b) if b.colour == l.colour => b.word.0.push(l.letter()),
            _ => out.push(Block {
                word: Word(vec![l.letter()]),
                colour: l.colour,
            }),
        }
    }
    out
}

/// Colour every letter by its own generator.
pub fn self_colour(w: &Word) -> ColouredWord {
    ColouredWord(
        w.letters()
            .iter()
            .map(|l| ColouredLetter {
                gen: l.gen,
                colour: l.gen,
                sign: l.sign,
            })
            .collect(),
    )
}

/// Balance a word against a colour: `s -> s a'`, `s' -> a s'`. Every letter
/// must commute with the colour. The result is alternating of twice the
/// length and height zero.
pub fn balance(g: &SimplicialGraph, w: &Word, colour: VertexId) -> Result<Word, ColourError> {
    let mut out = Vec::with_capacity(2 * w.len());
    for l in w.letters() {
        if !g.commute(l.gen, colour) {
            return Err(ColourError::ColourClash {
                letter: g.name(l.gen).to_string(),
                colour: g.name(colour).to_string(),
            });
        }
        if l.sign > 0 {
            out.push(Letter::pos(l.gen));
            out.push(Letter::neg(colour));
        } else {
            out.push(Letter::pos(colour));
            out.push(Letter::neg(l.gen));
        }
    }
    Ok(Word(out))
}

/// The fixed base generator and spanning tree used by transition words.
#[derive(Clone, Debug)]
pub struct PushdownConfig {
    pub base: VertexId,
    pub tree: SpanningTree,
}

impl PushdownConfig {
    /// Default configuration: base is the least vertex, tree is the
    /// deterministic spanning tree.
    pub fn new(g: &SimplicialGraph) -> Result<Self, crate::graph::GraphError> {
        Ok(PushdownConfig {
            base: 0,
            tree: g.spanning_tree()?,
        })
    }

    pub fn with_base(g: &SimplicialGraph, base: VertexId) -> Result<Self, crate::graph::GraphError> {
        Ok(PushdownConfig {
            base,
            tree: g.spanning_tree()?,
        })
    }
}

/// The transition word along the tree path from the base generator to `a`,
/// raised to height `h`: `(t0 t1')^h (t1 t2')^h ... (t_{l-1} t_l')^h`.
/// It is alternating and represents `s0^h a^{-h}`.
pub fn transition_word(cfg: &PushdownConfig, a: VertexId, h: i64) -> Word {
    if a == cfg.base || h == 0 {
        return Word::empty();
    }
    let path = cfg.tree.path(cfg.base, a);
    let mut out = Word::empty();
    for pair in path.windows(2) {
        let step = Word(vec![Letter::pos(pair[0]), Letter::neg(pair[1])]);
        out = out.concat(&step.pow(h as i32));
    }
    out
}

/// The h-pushdown of a coloured word: for blocks `<w_i>_{a_i}` and running
/// heights `h_i = h + height(w_1 ... w_i)`, the concatenation of
/// `tau_{a_i}^{h_{i-1}}  balance(w_i, a_i)  tau_{a_i}^{h_i} inverse`.
pub fn pushdown(cfg: &PushdownConfig, g: &SimplicialGraph, cw: &ColouredWord, h: i64) -> Word {
    let mut out = Word::empty();
    let mut level = h;
    for block in blocks(cw) {
        let next = level + height(&block.word);
        let balanced = balance(g, &block.word, block.colour).expect("coloured letter invariant");
        out = out.concat(&transition_word(cfg, block.colour, level));
        out = out.concat(&balanced);
        out = out.concat(&transition_word(cfg, block.colour, next).inverse());
        level = next;
    }
    out
}

/// Minimal block count over all coloured words of the given underlying
/// word, by dynamic programming over positions and colours.
fn min_blocks_of_word(g: &SimplicialGraph, w: &Word) -> Option<usize> {
    if w.is_empty() {
        return Some(0);
    }
    let n = g.vertex_count();
    let big = usize::MAX / 2;
    // dp[c] = min blocks for the processed prefix with last colour c.
    let mut dp = vec![big; n];
    for (i, l) in w.letters().iter().enumerate() {
        let mut next = vec![big; n];
        let prev_best = *dp.iter().min().unwrap();
        for c in 0..n {
            if !g.commute(l.gen, c) {
                continue;
            }
            next[c] = if i == 0 {
                1
            } else {
                dp[c].min(prev_best.saturating_add(1))
            };
        }
        dp = next;
    }
    let best = *dp.iter().min().unwrap();
    (best < big).then_some(best)
}

/// Default geodesic-length cap for the chromatic search.
pub const DEFAULT_CHROMATIC_CAP: usize = 10;

/// The least k such that some k-coloured word represents the element of
/// `w`: the minimum of the block DP over the full geodesic commutation
/// class. The empty word has chromatic number 0 by convention.
pub fn chromatic_number(g: &SimplicialGraph, w: &Word, cap: usize) -> Result<usize, ColourError> {
    let geodesics =
        enumerate_geodesics(g, w, cap).map_err(|_| ColourError::CapExceeded(cap))?;
    let mut best = None;
    for geo in &geodesics {
        if let Some(k) = min_blocks_of_word(g, geo) {
            best = Some(best.map_or(k, |b: usize| b.min(k)));
        }
    }
    // Every single letter commutes with its own generator, so a colouring
    // always exists.
    Ok(best.expect("self-colouring always exists"))
}

/// An optimal colouring of one fixed word, tracking the DP argmin.
fn colour_word_minimally(g: &SimplicialGraph, w: &Word) -> Option<(usize, ColouredWord)> {
    if w.is_empty() {
        return Some((0, ColouredWord::empty()));
    }
    let n = g.vertex_count();
    let big = usize::MAX / 2;
    let len = w.len();
    let mut dp = vec![vec![big; n]; len];
    let mut from: Vec<Vec<Option<VertexId>>> = vec![vec![None; n]; len];
    for (i, l) in w.letters().iter().enumerate() {
        if i == 0 {
            for c in 0..n {
                if g.commute(l.gen, c) {
                    dp[0][c] = 1;
                }
            }
            continue;
        }
        let (prev_best_c, prev_best) = (0..n)
            .map(|c| (c, dp[i - 1][c]))
            .min_by_key(|&(_, v)| v)
            .unwrap();
        for c in 0..n {
            if !g.commute(l.gen, c) {
                continue;
            }
            let stay = dp[i - 1][c];
            let switch = prev_best.saturating_add(1);
            if stay <= switch {
                dp[i][c] = stay;
                from[i][c] = Some(c);
            } else {
                dp[i][c] = switch;
                from[i][c] = Some(prev_best_c);
            }
        }
    }
    let (mut c, best) = (0..n).map(|c| (c, dp[len - 1][c])).min_by_key(|&(_, v)| v).unwrap();
    if best >= big {
        return None;
    }
    let mut colours = vec![0; len];
    for i in (0..len).rev() {
        colours[i] = c;
        if i > 0 {
            c = from[i][c].expect("reached state has a predecessor");
        }
    }
    let cw = ColouredWord(
        w.letters()
            .iter()
            .zip(colours)
            .map(|(l, colour)| ColouredLetter {
                gen: l.gen,
                colour,
                sign: l.sign,
            })
            .collect(),
    );
    Some((best, cw))
}

/// An efficient coloured word for the element of `w`: geodesic, with
/// chromatically minimal block count (hence all proper blocks minimal).
/// Single letters come back self-coloured.
pub fn make_efficient(g: &SimplicialGraph, w: &Word, cap: usize) -> Result<ColouredWord, ColourError> {
    let nf = normal_form(g, w);
    if nf.len() == 1 {
        return Ok(self_colour(&nf));
    }
    let geodesics =
        enumerate_geodesics(g, w, cap).map_err(|_| ColourError::CapExceeded(cap))?;
    let mut best: Option<(usize, ColouredWord)> = None;
    for geo in &geodesics {
        if let Some((k, cw)) = colour_word_minimally(g, geo) {
            if best.as_ref().map_or(true, |(bk, _)| k < *bk) {
                best = Some((k, cw));
            }
        }
    }
    let (_, cw) = best.expect("self-colouring always exists");
    debug_assert!(is_efficient(g, &cw, cap).unwrap_or(false) || cw.is_empty());
    Ok(cw)
}

/// Efficiency test: the underlying word is geodesic and every proper block
/// (a block range omitting the first and last block) is chromatically
/// minimal.
pub fn is_efficient(g: &SimplicialGraph, cw: &ColouredWord, cap: usize) -> Result<bool, ColourError> {
    let w = underlying(cw);
    if !is_geodesic_word(g, &w) {
        return Ok(false);
    }
    let bs = blocks(cw);
    let k = bs.len();
    if k <= 2 {
        return Ok(true);
    }
    for i in 1..(k - 1) {
        for j in i..(k - 1) {
            let mut sub = Word::empty();
            for b in &bs[i..=j] {
                sub = sub.concat(&b.word);
            }
            let actual = j - i + 1;
            let minimal = chromatic_number(g, &sub, cap)?;
            if minimal < actual {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive reference for the chromatic number: a layered search over
/// all coloured words up to a length bound, states keyed by (normal form,
/// last colour), minimizing block counts. Built once per graph and then
/// queried per element.
pub struct ChromaticBruteTable {
    best: HashMap<Word, usize>,
    max_len: usize,
}

impl ChromaticBruteTable {
    pub fn build(g: &SimplicialGraph, max_len: usize) -> Self {
        let n = g.vertex_count();
        let mut best: HashMap<Word, usize> = HashMap::new();
        best.insert(Word::empty(), 0);
        // layer: best block count per (element, last colour) at the
        // current word length.
        let mut layer: HashMap<(Word, VertexId), usize> = HashMap::new();
        for c in 0..n {
            layer.insert((Word::empty(), c), 0);
        }
        for _ in 0..max_len {
            let mut next: HashMap<(Word, VertexId), usize> = HashMap::new();
            for ((elem, last), &blocks_used) in &layer {
                for gen in 0..n {
                    for sign in [1i8, -1] {
                        let appended = elem.concat(&Word(vec![Letter { gen, sign }]));
                        let nf = normal_form(g, &appended);
                        for c in 0..n {
                            if !g.commute(gen, c) {
                                continue;
                            }
                            let cost = if blocks_used == 0 {
                                1
                            } else if c == *last {
                                blocks_used
                            } else {
                                blocks_used + 1
                            };
                            let entry = next.entry((nf.clone(), c)).or_insert(usize::MAX);
                            if cost < *entry {
                                *entry = cost;
                            }
                        }
                    }
                }
            }
            for ((elem, _), &blocks_used) in &next {
                let entry = best.entry(elem.clone()).or_insert(usize::MAX);
                if blocks_used < *entry {
                    *entry = blocks_used;
                }
            }
            layer = next;
        }
        ChromaticBruteTable { best, max_len }
    }

    /// Least block count over all coloured words of length at most the
    /// table bound representing the element of `w`; None if none reach it.
    pub fn query(&self, g: &SimplicialGraph, w: &Word) -> Option<usize> {
        self.best.get(&normal_form(g, w)).copied()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }
}

/// One-shot exhaustive chromatic number for small inputs.
pub fn brute_force_chromatic_number(
    g: &SimplicialGraph,
    w: &Word,
    max_len: usize,
) -> Option<usize> {
    ChromaticBruteTable::build(g, max_len).query(g, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::words::{free_reduce, is_alternating, is_trivial, words_equal};

    fn p5() -> SimplicialGraph {
        SimplicialGraph::new(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        )
        .unwrap()
    }

    #[test]
    fn block_examples() {
        let g = corpus::k3();
        let cw = ColouredWord::parse(&g, "a:a b:b a:a").unwrap();
        assert_eq!(blocks(&cw).len(), 3);

        let w = Word::parse(&g, "a b c'").unwrap();
        assert_eq!(underlying(&self_colour(&w)), w);

        let mono = ColouredWord::monochrome(&g, &Word::parse(&g, "a a b").unwrap(), 2).unwrap();
        assert_eq!(blocks(&mono).len(), 1);
    }

    #[test]
    fn repeated_colour_still_three_blocks() {
        let g = corpus::k3();
        // w1 coloured a, w2 coloured b, w3 coloured a again.
        let cw = ColouredWord::parse(&g, "b:a c:a a:b a:b c:a").unwrap();
        assert_eq!(blocks(&cw).len(), 3);
    }

    #[test]
    fn balance_examples() {
        let g = corpus::k3();
        let s = Word::parse(&g, "a").unwrap();
        assert_eq!(balance(&g, &s, 1).unwrap(), Word::parse(&g, "a b'").unwrap());
        let sinv = Word::parse(&g, "a'").unwrap();
        assert_eq!(balance(&g, &sinv, 1).unwrap(), Word::parse(&g, "b a'").unwrap());
        assert!(balance(&g, &Word::empty(), 0).unwrap().is_empty());

        let p4 = corpus::p4();
        let w = Word::parse(&p4, "a c").unwrap();
        assert_eq!(
            balance(&p4, &w, 0),
            Err(ColourError::ColourClash {
                letter: "c".into(),
                colour: "a".into()
            })
        );

        let w = Word::parse(&g, "a b a'").unwrap();
        let b = balance(&g, &w, 2).unwrap();
        assert_eq!(b.len(), 2 * w.len());
        assert!(is_alternating(&b));
        assert_eq!(height(&b), 0);
    }

    #[test]
    fn transition_word_examples() {
        let p4 = corpus::p4();
        let cfg = PushdownConfig::new(&p4).unwrap();
        assert!(transition_word(&cfg, 0, 5).is_empty()); // base itself
        assert!(transition_word(&cfg, 2, 0).is_empty()); // zero height
        let tau = transition_word(&cfg, 1, 2); // neighbour in tree, h = 2
        assert_eq!(tau, Word::parse(&p4, "a b' a b'").unwrap());
        // Represents s0^h a^{-h}.
        let expect = Word::parse(&p4, "a a b' b'").unwrap();
        assert!(words_equal(&p4, &tau, &expect));
        let tau_neg = transition_word(&cfg, 1, -1);
        assert_eq!(tau_neg, Word::parse(&p4, "b a'").unwrap());

        // Length bounds: 2|h| <= |tau| <= 2|h| |V|.
        for a in 1..4 {
            for h in [-4i64, -1, 1, 3] {
                let t = transition_word(&cfg, a, h);
                assert!(t.len() as i64 >= 2 * h.abs());
                assert!(t.len() as i64 <= 2 * h.abs() * p4.vertex_count() as i64);
                assert!(is_alternating(&t));
            }
        }
    }

    #[test]
    fn pushdown_of_single_letter() {
        let g = corpus::k3();
        let cfg = PushdownConfig::new(&g).unwrap();
        for h in -3i64..=3 {
            for sign in [1i8, -1] {
                let cl = ColouredLetter::new(&g, 1, 2, sign).unwrap();
                let cw = ColouredWord(vec![cl]);
                let pd = pushdown(&cfg, &g, &cw, h);
                let expect = transition_word(&cfg, 2, h)
                    .concat(&balance(&g, &Word(vec![Letter { gen: 1, sign }]), 2).unwrap())
                    .concat(&transition_word(&cfg, 2, h + sign as i64).inverse());
                assert_eq!(pd, expect);
                assert!(is_alternating(&pd));
            }
        }
    }

    #[test]
    fn pushdown_of_alternating_word_is_freely_equivalent_to_it() {
        let g = corpus::gamma1();
        let cfg = PushdownConfig::new(&g).unwrap();
        let w = Word::parse(&g, "C A' D B'").unwrap();
        let cw = self_colour(&w);
        let pd = pushdown(&cfg, &g, &cw, 0);
        assert_eq!(free_reduce(&pd), free_reduce(&w));
    }

    #[test]
    fn pushdown_represents_conjugated_element() {
        let g = corpus::k3();
        let cfg = PushdownConfig::new(&g).unwrap();
        let cw = ColouredWord::parse(&g, "a:b a:b b:a c:a'").unwrap();
        let w = underlying(&cw);
        for h in -2i64..=2 {
            let pd = pushdown(&cfg, &g, &cw, h);
            let s0 = Word(vec![Letter::pos(cfg.base)]);
            let expect = s0
                .pow(h as i32)
                .concat(&w)
                .concat(&s0.pow(-(h + height(&w)) as i32));
            assert!(words_equal(&g, &pd, &expect));
        }
    }

    #[test]
    fn worked_pushdown_example() {
        // Two adjacent generators; the coloured word
        // <a^2>_b <b>_a <a'>_b <a' b'>_a pushes down, at h = 0, to the
        // displayed word with tau_b affixes only (tau_a is trivial).
        let g = SimplicialGraph::new(&["a", "b"], &[("a", "b")]).unwrap();
        let cfg = PushdownConfig::new(&g).unwrap();
        let cw = ColouredWord::parse(&g, "a:b a:b b:a a:b' a:a' b:a'").unwrap();
        assert!(is_trivial(&g, &underlying(&cw)));
        let pd = pushdown(&cfg, &g, &cw, 0);
        let expect = Word::parse(
            &g,
            "a b' a b' b a' b a' b a' a b' a b' a b' b a' b a' b a' a a' a b'",
        )
        .unwrap();
        assert_eq!(pd, expect);
    }

    #[test]
    fn chromatic_examples() {
        let g = p5();
        // <ab>_a <cd>_c is chromatically minimal (k = 2) ...
        let w = Word::parse(&g, "a b c d").unwrap();
        assert_eq!(chromatic_number(&g, &w, 10), Ok(2));
        // ... whereas b c d fits in one colour c.
        let w = Word::parse(&g, "b c d").unwrap();
        assert_eq!(chromatic_number(&g, &w, 10), Ok(1));
        assert_eq!(chromatic_number(&g, &Word::empty(), 10), Ok(0));

        let long = Word::parse(&g, "a b a b a b a b a b a b").unwrap();
        assert_eq!(
            chromatic_number(&g, &long, 4),
            Err(ColourError::CapExceeded(4))
        );
    }

    #[test]
    fn efficiency_examples() {
        let g = p5();
        let single = ColouredWord::parse(&g, "b:b").unwrap();
        assert_eq!(is_efficient(&g, &single, 10), Ok(true));

        let two = ColouredWord::parse(&g, "a:a b:a c:c d:c").unwrap();
        assert_eq!(is_efficient(&g, &two, 10), Ok(true));

        // 2-coloured with no proper blocks: efficient even though not
        // chromatically minimal.
        let bc = ColouredWord::parse(&g, "b:a c:c d:c").unwrap();
        assert_eq!(is_efficient(&g, &bc, 10), Ok(true));
        assert_eq!(chromatic_number(&g, &underlying(&bc), 10), Ok(1));

        // Not geodesic: not efficient.
        let redundant = ColouredWord::parse(&g, "a:a a:a'").unwrap();
        assert_eq!(is_efficient(&g, &redundant, 10), Ok(false));

        let eff = make_efficient(&g, &Word::parse(&g, "a b c d").unwrap(), 10).unwrap();
        assert_eq!(blocks(&eff).len(), 2);
        assert!(is_geodesic_word(&g, &underlying(&eff)));

        // A single letter comes back self-coloured.
        let single = make_efficient(&g, &Word::parse(&g, "c").unwrap(), 10).unwrap();
        assert_eq!(single, ColouredWord::parse(&g, "c:c").unwrap());
    }

    #[test]
    fn brute_force_chromatic_small() {
        let g = p5();
        let w = Word::parse(&g, "b c d").unwrap();
        assert_eq!(brute_force_chromatic_number(&g, &w, 5), Some(1));
        let w = Word::parse(&g, "a b c d").unwrap();
        assert_eq!(brute_force_chromatic_number(&g, &w, 6), Some(2));
        assert_eq!(brute_force_chromatic_number(&g, &Word::empty(), 2), Some(0));
    }

    #[test]
    fn parse_rejects_colour_clash() {
        let p4 = corpus::p4();
        assert!(matches!(
            ColouredWord::parse(&p4, "a:c"),
            Err(ColourError::ColourClash { .. })
        ));
    }
}

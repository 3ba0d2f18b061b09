//! Words over the standard generating set of a right-angled Artin group:
//! free reduction, a canonical normal form, the word problem, geodesics,
//! heights, supports and palettes.
//!
//! The normal form is the left-greedy lexicographic linearization of the
//! commutation class of a geodesic representative: first delete cancelling
//! pairs whose intervening letters commute with the cancelled generator
//! (this yields a geodesic), then repeatedly emit the least letter that can
//! be commuted to the front. Two words get the same normal form exactly
//! when they represent the same group element.

use std::fmt;

use thiserror::Error;

use crate::graph::{SimplicialGraph, VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("word is not alternating")]
    NotAlternating,
    #[error("word does not lie in the kernel of the height map")]
    NotInKernel,
    #[error("search cap exceeded (cap {0})")]
    CapExceeded(usize),
    #[error("malformed word token `{0}`")]
    BadToken(String),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: VertexId,
    /// +1 or -1.
    pub sign: i8,
}

impl Letter {
    pub fn pos(gen: VertexId) -> Self {
        Letter { gen, sign: 1 }
    }

    pub fn neg(gen: VertexId) -> Self {
        Letter { gen, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.gen, if self.sign > 0 { "" } else { "'" })
    }
}

/// A word in the free monoid over the generators and their inverses.
/// Words need not be reduced.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: i32) -> Word {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Parse whitespace-separated tokens: `a` positive, `a'` inverse.
    pub fn parse(g: &SimplicialGraph, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, sign) = match tok.strip_suffix('\'') {
                Some(name) => (name, -1),
                None => (tok, 1),
            };
            if name.is_empty() {
                return Err(WordError::BadToken(tok.to_string()));
            }
            let gen = g
                .vertex(name)
                .map_err(|_| WordError::UnknownGenerator(name.to_string()))?;
            letters.push(Letter { gen, sign });
        }
        Ok(Word(letters))
    }

    pub fn display<'a>(&'a self, g: &'a SimplicialGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, g }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    g: &'a SimplicialGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.letters().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.g.name(l.gen), if l.sign > 0 { "" } else { "'" })?;
        }
        Ok(())
    }
}

/// Remove all `s s'` and `s' s` subwords.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if let Some(&last) = out.last() {
            if last.gen == l.gen && last.sign == -l.sign {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    Word(out)
}

/// Delete a cancelling pair `s^e ... s^-e` whose intervening letters all
/// commute with `s`, if one exists. A word admits no such pair exactly when
/// it is geodesic.
fn delete_one_pair(g: &SimplicialGraph, letters: &mut Vec<Letter>) -> bool {
    let n = letters.len();
    for i in 0..n {
        'next_j: for j in (i + 1)..n {
            if letters[j].gen == letters[i].gen {
                if letters[j].sign == -letters[i].sign {
                    letters.remove(j);
                    letters.remove(i);
                    return true;
                }
                // Same generator, same sign: blocks any farther partner.
                break 'next_j;
            }
            if !g.adjacent(letters[j].gen, letters[i].gen) {
                break 'next_j;
            }
        }
    }
    false
}

/// Shorten to a geodesic representative of the same group element.
pub fn reduce_to_geodesic(g: &SimplicialGraph, w: &Word) -> Word {
    let mut letters = free_reduce(w).0;
    while delete_one_pair(g, &mut letters) {}
    Word(letters)
}

/// Canonical normal form: the lexicographically least geodesic in the
/// commutation class, with letters ordered by (generator, sign).
pub fn normal_form(g: &SimplicialGraph, w: &Word) -> Word {
    let mut rem = reduce_to_geodesic(g, w).0;
    let mut out = Vec::with_capacity(rem.len());
    while !rem.is_empty() {
        let mut best: Option<usize> = None;
        'candidates: for i in 0..rem.len() {
            for j in 0..i {
                if rem[j].gen == rem[i].gen || !g.adjacent(rem[j].gen, rem[i].gen) {
                    continue 'candidates;
                }
            }
            match best {
                None => best = Some(i),
                Some(b) => {
                    if (rem[i].gen, rem[i].sign < 0) < (rem[b].gen, rem[b].sign < 0) {
                        best = Some(i);
                    }
                }
            }
        }
        let i = best.expect("a front letter always exists");
        out.push(rem.remove(i));
    }
    Word(out)
}

pub fn words_equal(g: &SimplicialGraph, u: &Word, v: &Word) -> bool {
    normal_form(g, u) == normal_form(g, v)
}

pub fn is_trivial(g: &SimplicialGraph, w: &Word) -> bool {
    normal_form(g, w).is_empty()
}

/// Image under the height map: the sum of the letter signs.
pub fn height(w: &Word) -> i64 {
    w.letters().iter().map(|l| l.sign as i64).sum()
}

/// Even length, positive letters at even positions, negative at odd.
pub fn is_alternating(w: &Word) -> bool {
    if w.len() % 2 != 0 {
        return false;
    }
    w.letters()
        .iter()
        .enumerate()
        .all(|(i, l)| if i % 2 == 0 { l.sign > 0 } else { l.sign < 0 })
}

/// Vertices whose generators occur in the word.
pub fn support(w: &Word) -> VertexSet {
    VertexSet::from_iter(w.letters().iter().map(|l| l.gen))
}

/// Intersection of the stars of all support vertices: the set of valid
/// colours for the word. The palette of the empty word is every vertex.
pub fn palette(g: &SimplicialGraph, w: &Word) -> VertexSet {
    let mut out: Vec<VertexId> = g.vertices().collect();
    for l in w.letters() {
        out.retain(|&a| g.commute(l.gen, a));
    }
    VertexSet::new(out)
}

pub fn is_geodesic_word(g: &SimplicialGraph, w: &Word) -> bool {
    normal_form(g, w).len() == w.len()
}

pub fn geodesic_length(g: &SimplicialGraph, w: &Word) -> usize {
    normal_form(g, w).len()
}

/// The full commutation class of the normal form: every geodesic word
/// representing the element. Errors out if the geodesic length exceeds `cap`.
pub fn enumerate_geodesics(g: &SimplicialGraph, w: &Word, cap: usize) -> Result<Vec<Word>, WordError> {
    let nf = normal_form(g, w);
    if nf.len() > cap {
        return Err(WordError::CapExceeded(cap));
    }
    let mut seen = std::collections::HashSet::new();
    let mut queue = vec![nf.0.clone()];
    seen.insert(queue[0].clone());
    let mut out = Vec::new();
    while let Some(cur) = queue.pop() {
        out.push(Word(cur.clone()));
        for i in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur[i], cur[i + 1]);
            if a.gen != b.gen && g.adjacent(a.gen, b.gen) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

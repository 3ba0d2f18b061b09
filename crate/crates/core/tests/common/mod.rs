//! Shared deterministic generators for the property and acceptance suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dehnscope_core::coloured::{ColouredLetter, ColouredWord};
use dehnscope_core::graph::SimplicialGraph;
use dehnscope_core::words::{free_reduce, Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

pub fn random_graph(r: &mut ChaCha8Rng, n: usize, p: f64) -> SimplicialGraph {
    let names = names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if r.gen_bool(p) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

pub fn random_connected_graph(r: &mut ChaCha8Rng, n: usize, p: f64) -> SimplicialGraph {
    loop {
        let g = random_graph(r, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random tree by attaching each vertex to an earlier one.
pub fn random_tree(r: &mut ChaCha8Rng, n: usize) -> SimplicialGraph {
    let names = names(n);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = r.gen_range(0..i);
        edges.push((names[j].clone(), names[i].clone()));
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

/// Join of `parts` disjoint random graphs with the given sizes.
pub fn random_join(r: &mut ChaCha8Rng, sizes: &[usize], p: f64) -> SimplicialGraph {
    let total: usize = sizes.iter().sum();
    let names = names(total);
    let mut edges = Vec::new();
    let mut offsets = vec![0usize];
    for s in sizes {
        offsets.push(offsets.last().unwrap() + s);
    }
    for (k, &s) in sizes.iter().enumerate() {
        let base = offsets[k];
        for i in 0..s {
            for j in (i + 1)..s {
                if r.gen_bool(p) {
                    edges.push((names[base + i].clone(), names[base + j].clone()));
                }
            }
        }
    }
    for k1 in 0..sizes.len() {
        for k2 in (k1 + 1)..sizes.len() {
            for i in offsets[k1]..offsets[k1 + 1] {
                for j in offsets[k2]..offsets[k2 + 1] {
                    edges.push((names[i].clone(), names[j].clone()));
                }
            }
        }
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

/// A graph on `n` vertices whose complement is connected (irreducible),
/// suitable as a join factor.
pub fn random_irreducible_factor(r: &mut ChaCha8Rng, n: usize) -> SimplicialGraph {
    loop {
        let g = random_graph(r, n, 0.3);
        if g.complement().is_connected() {
            return g;
        }
    }
}

/// An essential join of two random irreducible factors of the given sizes.
pub fn random_essential_join(r: &mut ChaCha8Rng, n1: usize, n2: usize) -> SimplicialGraph {
    assert!(n1 >= 2 && n2 >= 2);
    let f1 = random_irreducible_factor(r, n1);
    let f2 = random_irreducible_factor(r, n2);
    let names = names(n1 + n2);
    let mut edges = Vec::new();
    for (u, v) in f1.edges() {
        edges.push((names[u].clone(), names[v].clone()));
    }
    for (u, v) in f2.edges() {
        edges.push((names[n1 + u].clone(), names[n1 + v].clone()));
    }
    for i in 0..n1 {
        for j in 0..n2 {
            edges.push((names[i].clone(), names[n1 + j].clone()));
        }
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

pub fn random_word(r: &mut ChaCha8Rng, g: &SimplicialGraph, len: usize) -> Word {
    let n = g.vertex_count();
    Word(
        (0..len)
            .map(|_| Letter {
                gen: r.gen_range(0..n),
                sign: if r.gen_bool(0.5) { 1 } else { -1 },
            })
            .collect(),
    )
}

/// A null-homotopic word: u u^-1 mixed by random commuting swaps.
pub fn random_trivial_word(r: &mut ChaCha8Rng, g: &SimplicialGraph, half: usize, mixes: usize) -> Word {
    let u = random_word(r, g, half);
    let mut w = u.concat(&u.inverse()).0;
    for _ in 0..mixes {
        if w.len() < 2 {
            break;
        }
        let i = r.gen_range(0..w.len() - 1);
        let (x, y) = (w[i], w[i + 1]);
        if x.gen != y.gen && g.adjacent(x.gen, y.gen) {
            w.swap(i, i + 1);
        }
    }
    Word(w)
}

/// Colour every letter of `w` with a uniformly random valid colour.
pub fn random_colouring(r: &mut ChaCha8Rng, g: &SimplicialGraph, w: &Word) -> ColouredWord {
    let cw = w
        .letters()
        .iter()
        .map(|l| {
            let options: Vec<usize> = g.vertices().filter(|&c| g.commute(l.gen, c)).collect();
            let colour = options[r.gen_range(0..options.len())];
            ColouredLetter::new(g, l.gen, colour, l.sign).unwrap()
        })
        .collect();
    ColouredWord(cw)
}

/// Random coloured word over the coloured generating set.
pub fn random_coloured_word(r: &mut ChaCha8Rng, g: &SimplicialGraph, len: usize) -> ColouredWord {
    let w = random_word(r, g, len);
    random_colouring(r, g, &w)
}

/// Reference decision procedure for the word problem: breadth-first search
/// over commuting swaps and free cancellations from the freely reduced
/// difference word. Complete for these groups because null-homotopic words
/// admit length-non-increasing reductions.
pub fn cayley_equal(g: &SimplicialGraph, u: &Word, v: &Word, cap: usize) -> bool {
    let start = free_reduce(&u.concat(&v.inverse()));
    if start.len() > cap {
        panic!("cayley oracle cap exceeded");
    }
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(start.0.clone());
    queue.push_back(start.0.clone());
    while let Some(w) = queue.pop_front() {
        if w.is_empty() {
            return true;
        }
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            if x.gen == y.gen && x.sign == -y.sign {
                let mut next = w.clone();
                next.remove(i);
                next.remove(i);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            } else if x.gen != y.gen && g.adjacent(x.gen, y.gen) {
                let mut next = w.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

//! First homology and simple connectivity of the flag complex of a graph.
//!
//! H1 is computed exactly over the integers by Smith normal form of the
//! simplicial boundary maps (edges and triangles suffice). Simple
//! connectivity of the flag complex is semi-decided: a nontrivial H1
//! refutes it; otherwise a budgeted Tietze simplification of a presentation
//! of the fundamental group tries to verify it. The check never misreports:
//! `Verified` implies the fundamental group is trivial, `Refuted` implies
//! it is not.

use num_bigint::BigInt;
use num_traits_shim::{is_one, is_zero};
use serde::{Deserialize, Serialize};

use crate::graph::{JoinDecomposition, SimplicialGraph};

mod num_traits_shim {
    use num_bigint::BigInt;

    pub fn is_zero(x: &BigInt) -> bool {
        x.sign() == num_bigint::Sign::NoSign
    }

    pub fn is_one(x: &BigInt) -> bool {
        *x == BigInt::from(1)
    }
}

/// Invariant factors of H1 of the flag complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Invariants {
    /// Torsion divisors d1 | d2 | ..., each > 1.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl H1Invariants {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Flat list: torsion divisors followed by one `0` per free summand.
    pub fn as_list(&self) -> Vec<BigInt> {
        let mut out = self.torsion.clone();
        out.extend(std::iter::repeat(BigInt::from(0)).take(self.free_rank));
        out
    }
}

/// Outcome of the simple-connectivity check, with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScStatus {
    /// The fundamental group presentation was trivialized.
    Verified { moves_used: usize },
    /// H1 is nontrivial (or the graph is disconnected).
    Refuted { h1: H1Invariants },
    /// The budget ran out before the presentation trivialized.
    Unknown { budget: usize },
}

impl ScStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, ScStatus::Verified { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ScStatus::Refuted { .. })
    }
}

/// Smith normal form diagonal of an integer matrix (nonzero invariant
/// factors, each dividing the next).
pub fn smith_invariants(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        // Find a pivot of least absolute value.
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !is_zero(&m[i][j]) {
                    let better = match &pivot {
                        None => true,
                        Some((pi, pj)) => abs(&m[i][j]) < abs(&m[*pi][*pj]),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        // Clear the pivot row and column.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in (top + 1)..rows {
                if is_zero(&m[i][top]) {
                    continue;
                }
                let q = div_round(&m[i][top], &m[top][top]);
                for j in top..cols {
                    let sub = &q * &m[top][j];
                    m[i][j] -= sub;
                }
                if !is_zero(&m[i][top]) {
                    m.swap(top, i);
                    dirty = true;
                }
            }
            for j in (top + 1)..cols {
                if is_zero(&m[top][j]) {
                    continue;
                }
                let q = div_round(&m[top][j], &m[top][top]);
                for row in m.iter_mut().take(rows).skip(top) {
                    let sub = &q * &row[top];
                    row[j] -= sub;
                }
                if !is_zero(&m[top][j]) {
                    for row in m.iter_mut() {
                        row.swap(top, j);
                    }
                    dirty = true;
                }
            }
        }
        // Ensure the pivot divides every remaining entry.
        'divides: loop {
            for i in (top + 1)..rows {
                for j in (top + 1)..cols {
                    if !is_zero(&(&m[i][j] % &m[top][top])) {
                        for jj in top..cols {
                            let add = m[i][jj].clone();
                            m[top][jj] += add;
                        }
                        continue 'divides;
                    }
                }
            }
            break;
        }
        if !is_zero(&m[top][top]) && m[top][top].sign() == num_bigint::Sign::Minus {
            m[top][top] = -m[top][top].clone();
        }
        out.push(m[top][top].clone());
        top += 1;
    }
    out
}

fn abs(x: &BigInt) -> BigInt {
    if x.sign() == num_bigint::Sign::Minus {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Integer quotient rounded toward the nearest integer, so the remainder
/// has absolute value at most |d|/2. Keeps SNF pivots shrinking.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = (n / d, n % d);
    if &abs(&r) * &two > abs(d) {
        if (r.sign() == num_bigint::Sign::Minus) == (d.sign() == num_bigint::Sign::Minus) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// H1 of the flag complex of `g`, from the boundary maps on edges and
/// triangles.
pub fn h1_invariants(g: &SimplicialGraph) -> H1Invariants {
    let edges = g.edges();
    let tris = g.triangles();
    let n = g.vertex_count();
    let edge_index = |u, v| edges.binary_search(&(u, v)).expect("edge present");

    // boundary_1: vertices x edges
    let mut b1 = vec![vec![BigInt::from(0); edges.len()]; n];
    for (j, &(u, v)) in edges.iter().enumerate() {
        b1[u][j] = BigInt::from(-1);
        b1[v][j] = BigInt::from(1);
    }
    // boundary_2: edges x triangles
    let mut b2 = vec![vec![BigInt::from(0); tris.len()]; edges.len()];
    for (j, &(a, b, c)) in tris.iter().enumerate() {
        b2[edge_index(b, c)][j] = BigInt::from(1);
        b2[edge_index(a, c)][j] = BigInt::from(-1);
        b2[edge_index(a, b)][j] = BigInt::from(1);
    }

    let rank1 = smith_invariants(b1).iter().filter(|d| !is_zero(d)).count();
    let snf2: Vec<BigInt> = smith_invariants(b2).into_iter().filter(|d| !is_zero(d)).collect();
    let rank2 = snf2.len();
    let torsion: Vec<BigInt> = snf2.into_iter().filter(|d| !is_one(d)).collect();
    H1Invariants {
        torsion,
        free_rank: edges.len() - rank1 - rank2,
    }
}

/// A presentation of the fundamental group of the flag complex: one
/// generator per non-tree edge, one relator per triangle.
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    /// Non-tree edges (lo, hi) in sorted order.
    pub generators: Vec<(usize, usize)>,
    /// Relators as words over generator indices with signs.
    pub relators: Vec<Vec<(usize, i8)>>,
}

pub fn pi1_presentation(g: &SimplicialGraph) -> Result<Pi1Presentation, crate::graph::GraphError> {
    let tree = g.spanning_tree()?;
    let generators: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !tree.contains_edge(u, v))
        .collect();
    let gen_of = |u: usize, v: usize| -> Option<(usize, i8)> {
        let (lo, hi) = (u.min(v), u.max(v));
        generators
            .binary_search(&(lo, hi))
            .ok()
            .map(|i| (i, if u < v { 1 } else { -1 }))
    };
    let mut relators = Vec::new();
    for (a, b, c) in g.triangles() {
        let mut word = Vec::new();
        for (u, v) in [(a, b), (b, c), (c, a)] {
            if let Some(l) = gen_of(u, v) {
                word.push(l);
            }
        }
        relators.push(word);
    }
    Ok(Pi1Presentation { generators, relators })
}

fn free_reduce_rel(w: &[(usize, i8)]) -> Vec<(usize, i8)> {
    let mut out: Vec<(usize, i8)> = Vec::with_capacity(w.len());
    for &l in w {
        if let Some(&last) = out.last() {
            if last.0 == l.0 && last.1 == -l.1 {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

fn cyclic_reduce_rel(mut w: Vec<(usize, i8)>) -> Vec<(usize, i8)> {
    w = free_reduce_rel(&w);
    while w.len() >= 2 {
        let (first, last) = (w[0], w[w.len() - 1]);
        if first.0 == last.0 && first.1 == -last.1 {
            w.pop();
            w.remove(0);
            w = free_reduce_rel(&w);
        } else {
            break;
        }
    }
    w
}

/// Budgeted Tietze simplification: eliminate generators via length-one
/// relators and single-occurrence substitutions until the presentation
/// trivializes, the moves run out, or nothing applies.
fn tietze_trivializes(pres: &Pi1Presentation, budget: usize) -> (bool, usize) {
    let mut alive: Vec<bool> = vec![true; pres.generators.len()];
    let mut relators: Vec<Vec<(usize, i8)>> = pres.relators.clone();
    let mut moves = 0usize;

    loop {
        if moves >= budget {
            return (false, moves);
        }
        relators = relators
            .iter()
            .map(|r| cyclic_reduce_rel(r.clone()))
            .filter(|r| !r.is_empty())
            .collect();
        relators.sort();
        relators.dedup();

        if alive.iter().all(|&a| !a) {
            return (true, moves);
        }

        // Length-one relator: the generator is trivial, erase it everywhere.
        if let Some(pos) = relators.iter().position(|r| r.len() == 1) {
            let gen = relators[pos][0].0;
            alive[gen] = false;
            relators.remove(pos);
            for r in relators.iter_mut() {
                r.retain(|l| l.0 != gen);
            }
            moves += 1;
            continue;
        }

        // A relator in which some generator occurs exactly once lets us
        // solve for that generator and substitute it away.
        let mut action: Option<(usize, usize)> = None;
        'scan: for (ri, r) in relators.iter().enumerate() {
            for (li, l) in r.iter().enumerate() {
                if r.iter().filter(|m| m.0 == l.0).count() == 1 {
                    action = Some((ri, li));
                    break 'scan;
                }
            }
        }
        let Some((ri, li)) = action else {
            return (false, moves);
        };
        let r = relators.remove(ri);
        let gen = r[li].0;
        // Rotate so the solved generator sits first with exponent +1, then
        // gen = replacement^{-1}.
        let mut rot: Vec<(usize, i8)> = r[li..].iter().chain(r[..li].iter()).copied().collect();
        if rot[0].1 < 0 {
            rot = rot.iter().rev().map(|&(g0, s)| (g0, -s)).collect();
            let last = rot.pop().unwrap();
            rot.insert(0, last);
        }
        let replacement: Vec<(usize, i8)> = rot[1..].iter().rev().map(|&(g0, s)| (g0, -s)).collect();
        alive[gen] = false;
        for rel in relators.iter_mut() {
            let mut out = Vec::new();
            for &(g0, s) in rel.iter() {
                if g0 != gen {
                    out.push((g0, s));
                } else if s > 0 {
                    out.extend(replacement.iter().copied());
                } else {
                    out.extend(replacement.iter().rev().map(|&(g1, s1)| (g1, -s1)));
                }
            }
            *rel = out;
        }
        moves += 1;
    }
}

/// Default move budget for the simple-connectivity check.
pub const DEFAULT_PI1_BUDGET: usize = 10_000;

/// Three-valued simple-connectivity check for the flag complex of `g`.
pub fn simply_connected_status(g: &SimplicialGraph, budget: usize) -> ScStatus {
    if !g.is_connected() {
        return ScStatus::Refuted {
            h1: h1_invariants(g),
        };
    }
    let h1 = h1_invariants(g);
    if !h1.is_trivial() {
        return ScStatus::Refuted { h1 };
    }
    let pres = pi1_presentation(g).expect("connected graph");
    let (ok, moves_used) = tietze_trivializes(&pres, budget);
    if ok {
        ScStatus::Verified { moves_used }
    } else {
        ScStatus::Unknown { budget }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum JoinScError {
    #[error("join decomposition has fewer than two factors")]
    FewerThanTwoFactors,
}

/// Exact simple-connectivity test for the flag complex of a join: true
/// when there are at least three factors, or exactly two and at least one
/// induces a connected subgraph.
pub fn join_simply_connected(
    g: &SimplicialGraph,
    d: &JoinDecomposition,
) -> Result<bool, JoinScError> {
    if d.factors.len() < 2 {
        return Err(JoinScError::FewerThanTwoFactors);
    }
    if d.factors.len() >= 3 {
        return Ok(true);
    }
    for f in &d.factors {
        if g.induced(f).expect("factor vertices valid").is_connected() {
            return Ok(true);
        }
    }
    Ok(false)
}

//! Enumeration of maximal reducible induced subgraphs.
//!
//! A vertex set S is reducible when the complement of the subgraph it
//! induces is disconnected, and maximal when no vertex outside S dominates
//! a full join factor of S (adding such a vertex is the only way to grow a
//! reducible set). The fast path enumerates, in the complement graph, the
//! minimal separators all of whose components are full; the subset
//! brute force is kept as the reference oracle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{JoinDecomposition, SimplicialGraph, VertexSet};
use crate::homology::join_simply_connected;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReducibleError {
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set is not reducible")]
    NotReducible,
    #[error("graph too large for brute force ({0} vertices)")]
    TooLarge(usize),
}

/// A maximal reducible vertex set with its decomposition and flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalReducibleSet {
    pub vertices: VertexSet,
    /// Join factors, as vertex sets of the ambient graph.
    pub decomposition: JoinDecomposition,
    pub essential: bool,
    pub cone: bool,
    /// Whether the flag complex of the induced subgraph is simply connected.
    pub flag_simply_connected: bool,
}

fn lift(owner: &VertexSet, s: &VertexSet) -> VertexSet {
    VertexSet::new(s.ids().iter().map(|&i| owner.ids()[i]).collect())
}

fn make_entry(g: &SimplicialGraph, s: &VertexSet) -> MaximalReducibleSet {
    let sub = g.induced(s).expect("valid subset");
    let dec_local = sub.join_decompose().expect("nonempty subset");
    let decomposition = JoinDecomposition {
        factors: dec_local.factors.iter().map(|f| lift(s, f)).collect(),
    };
    let flag_simply_connected =
        join_simply_connected(&sub, &dec_local).expect("reducible set has >= 2 factors");
    MaximalReducibleSet {
        vertices: s.clone(),
        essential: dec_local.is_essential(),
        cone: dec_local.is_cone(),
        decomposition,
        flag_simply_connected,
    }
}

/// True when the subgraph induced by `s` decomposes as a join.
pub fn is_reducible_set(g: &SimplicialGraph, s: &VertexSet) -> Result<bool, ReducibleError> {
    if s.is_empty() {
        return Err(ReducibleError::EmptySet);
    }
    let sub = g.induced(s).map_err(|_| ReducibleError::EmptySet)?;
    Ok(!sub.complement().is_connected())
}

/// Maximality test for a reducible set: every vertex outside `s` must have
/// a non-neighbour inside every join factor of `s`.
pub fn is_maximal_reducible_set(g: &SimplicialGraph, s: &VertexSet) -> Result<bool, ReducibleError> {
    if !is_reducible_set(g, s)? {
        return Err(ReducibleError::NotReducible);
    }
    let sub = g.induced(s).expect("valid subset");
    let dec = sub.join_decompose().expect("nonempty");
    let factors: Vec<VertexSet> = dec.factors.iter().map(|f| lift(s, f)).collect();
    for v in g.vertices() {
        if s.contains(v) {
            continue;
        }
        let dominates_some_factor = factors
            .iter()
            .any(|f| f.ids().iter().all(|&u| g.adjacent(u, v)));
        if dominates_some_factor {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal separators of a connected graph (generation by vertex
/// neighbourhoods followed by closure under component substitution).
fn minimal_separators(h: &SimplicialGraph) -> BTreeSet<VertexSet> {
    let n = h.vertex_count();
    let components_avoiding = |blocked: &[bool]| -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if blocked[start] || comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = vec![start];
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if h.adjacent(u, v) && !blocked[v] && comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            out.push(members);
        }
        out
    };
    let neighbourhood = |members: &[usize]| -> VertexSet {
        let mut sep = BTreeSet::new();
        for &u in members {
            for v in 0..n {
                if h.adjacent(u, v) && !members.contains(&v) {
                    sep.insert(v);
                }
            }
        }
        VertexSet::new(sep.into_iter().collect())
    };

    let mut found: BTreeSet<VertexSet> = BTreeSet::new();
    let mut queue: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        let mut blocked = vec![false; n];
        blocked[v] = true;
        for u in 0..n {
            if h.adjacent(u, v) {
                blocked[u] = true;
            }
        }
        for comp in components_avoiding(&blocked) {
            let sep = neighbourhood(&comp);
            if !sep.is_empty() && found.insert(sep.clone()) {
                queue.push(sep);
            }
        }
    }
    while let Some(sep) = queue.pop() {
        for &x in sep.ids() {
            let mut blocked = vec![false; n];
            for &u in sep.ids() {
                blocked[u] = true;
            }
            for u in 0..n {
                if h.adjacent(u, x) {
                    blocked[u] = true;
                }
            }
            for comp in components_avoiding(&blocked) {
                let cand = neighbourhood(&comp);
                if !cand.is_empty() && found.insert(cand.clone()) {
                    queue.push(cand);
                }
            }
        }
    }
    found
}

fn canonical_sort(sets: &mut Vec<MaximalReducibleSet>) {
    sets.sort_by(|a, b| {
        a.vertices
            .len()
            .cmp(&b.vertices.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    sets.dedup_by(|a, b| a.vertices == b.vertices);
}

/// All maximal reducible vertex sets, canonically sorted (by size, then
/// lexicographically). Empty exactly when the graph has no adjacent pair.
pub fn maximal_reducible_subgraphs(g: &SimplicialGraph) -> Vec<MaximalReducibleSet> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let compl = g.complement();
    if !compl.is_connected() {
        // The graph itself is reducible: it is its own unique maximal
        // reducible subgraph.
        return vec![make_entry(g, &g.vertex_set())];
    }
    let mut out = Vec::new();
    for sep in minimal_separators(&compl) {
        let s = VertexSet::new(g.vertices().filter(|v| !sep.contains(*v)).collect());
        if s.len() < 2 {
            continue;
        }
        // Keep only separators every vertex of which sees every component
        // of the separated complement; those complements are exactly the
        // maximal reducible sets.
        let sub = g.induced(&s).expect("subset of vertices");
        let factors: Vec<VertexSet> = sub
            .join_decompose()
            .expect("nonempty")
            .factors
            .iter()
            .map(|f| lift(&s, f))
            .collect();
        if factors.len() < 2 {
            continue;
        }
        let ok = sep.ids().iter().all(|&v| {
            factors
                .iter()
                .all(|f| f.ids().iter().any(|&u| !g.adjacent(u, v)))
        });
        if ok {
            out.push(make_entry(g, &s));
        }
    }
    canonical_sort(&mut out);
    out
}

/// Reference semantics: enumerate all subsets, filter the reducible ones,
/// and keep those maximal under inclusion. Guarded to 20 vertices.
pub fn brute_force_maximal_reducible(
    g: &SimplicialGraph,
) -> Result<Vec<MaximalReducibleSet>, ReducibleError> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(ReducibleError::TooLarge(n));
    }
    let mut reducible: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << n) {
        let s = VertexSet::new((0..n).filter(|i| mask & (1 << i) != 0).collect());
        if s.len() >= 2 && is_reducible_set(g, &s).unwrap() {
            reducible.push(mask);
        }
    }
    let mut out = Vec::new();
    'outer: for &mask in &reducible {
        for &other in &reducible {
            if other != mask && other & mask == mask {
                continue 'outer;
            }
        }
        let s = VertexSet::new((0..n).filter(|i| mask & (1 << i) != 0).collect());
        out.push(make_entry(g, &s));
    }
    canonical_sort(&mut out);
    Ok(out)
}

/// First maximal reducible subgraph (in canonical order) that is essential,
/// if any.
pub fn essential_maximal_reducible(g: &SimplicialGraph) -> Option<MaximalReducibleSet> {
    maximal_reducible_subgraphs(g).into_iter().find(|s| s.essential)
}

/// First maximal reducible subgraph (in canonical order) whose flag complex
/// is not simply connected, if any.
pub fn non_simply_connected_maximal_reducible(g: &SimplicialGraph) -> Option<MaximalReducibleSet> {
    maximal_reducible_subgraphs(g)
        .into_iter()
        .find(|s| !s.flag_simply_connected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(g: &SimplicialGraph, names: &[&str]) -> VertexSet {
        VertexSet::from_iter(names.iter().map(|n| g.vertex(n).unwrap()))
    }

    #[test]
    fn reducible_set_examples() {
        let g3 = corpus::gamma3();
        assert_eq!(is_reducible_set(&g3, &set(&g3, &["A", "B", "C", "E"])), Ok(true));
        assert_eq!(is_reducible_set(&g3, &set(&g3, &["A"])), Ok(false));
        // Any adjacent pair is reducible.
        assert_eq!(is_reducible_set(&g3, &set(&g3, &["A", "C"])), Ok(true));
        assert_eq!(
            is_reducible_set(&g3, &VertexSet::new(vec![])),
            Err(ReducibleError::EmptySet)
        );
    }

    #[test]
    fn maximality_examples() {
        let g2 = corpus::gamma2();
        assert_eq!(
            is_maximal_reducible_set(&g2, &set(&g2, &["C", "F", "G", "A", "B", "H"])),
            Ok(true)
        );
        let g3 = corpus::gamma3();
        assert_eq!(
            is_maximal_reducible_set(&g3, &set(&g3, &["A", "B", "C", "E"])),
            Ok(false)
        );
        // A reducible graph is its own unique maximal reducible subgraph.
        let g1 = corpus::gamma1();
        assert_eq!(is_maximal_reducible_set(&g1, &g1.vertex_set()), Ok(true));
        assert_eq!(
            is_maximal_reducible_set(&g3, &set(&g3, &["A", "B"])),
            Err(ReducibleError::NotReducible)
        );
    }

    #[test]
    fn enumeration_examples() {
        let k3 = corpus::k3();
        let sets = maximal_reducible_subgraphs(&k3);
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].vertices, k3.vertex_set());

        let g3 = corpus::gamma3();
        let sets = maximal_reducible_subgraphs(&g3);
        assert!(!sets.is_empty());
        assert!(sets.iter().all(|s| s.cone), "all maximal reducible sets of GAMMA3 are cones");

        let g2 = corpus::gamma2();
        let sets = maximal_reducible_subgraphs(&g2);
        let lam = set(&g2, &["C", "F", "G", "A", "B", "H"]);
        assert!(sets.iter().any(|s| s.vertices == lam));
    }

    #[test]
    fn oracle_agreement_on_corpus() {
        for (name, g) in corpus::all() {
            let fast = maximal_reducible_subgraphs(&g);
            let brute = brute_force_maximal_reducible(&g).unwrap();
            assert_eq!(fast, brute, "mismatch on {name}");
            for s in &fast {
                assert_eq!(is_maximal_reducible_set(&g, &s.vertices), Ok(true));
            }
            for a in &fast {
                for b in &fast {
                    if a.vertices != b.vertices {
                        assert!(!a.vertices.is_subset_of(&b.vertices));
                    }
                }
            }
        }
    }

    #[test]
    fn witness_examples() {
        let g1 = corpus::gamma1();
        let w = essential_maximal_reducible(&g1).unwrap();
        assert_eq!(w.vertices, g1.vertex_set());

        let g2 = corpus::gamma2();
        let w = non_simply_connected_maximal_reducible(&g2).unwrap();
        assert_eq!(w.vertices, set(&g2, &["C", "F", "G", "A", "B", "H"]));

        assert!(essential_maximal_reducible(&corpus::gamma3()).is_none());
        assert!(non_simply_connected_maximal_reducible(&corpus::gamma1()).is_none());
    }

    #[test]
    fn edgeless_graph_has_no_reducible_sets() {
        // No adjacent pair means no reducible subset at all.
        let g = SimplicialGraph::new(&["a", "b", "c"], &[]).unwrap();
        assert!(maximal_reducible_subgraphs(&g).is_empty());
        assert!(brute_force_maximal_reducible(&g).unwrap().is_empty());
    }
}

//! The finite presentation of the Bestvina-Brady group of a graph, the
//! translation maps between words over tree-edge generators and alternating
//! words, and the exact flat norm at small scale.
//!
//! Fix a spanning tree T with edges oriented from lower to higher vertex.
//! The group is generated by the tree edges, with one commutator relator
//! per directed triangle. An alternating word `s1 t1' s2 t2' ...` maps to
//! the product of the tree-path words w_{s_i,t_i}; a tree-edge word maps
//! letterwise to `(s t')^e`.

use std::collections::HashMap;
use std::fmt;

use crate::graph::{GraphError, SimplicialGraph, SpanningTree, VertexId};
use crate::words::{height, is_alternating, normal_form, Letter, Word, WordError};

/// An oriented spanning-tree edge (lo, hi) with lo < hi in the vertex order.
pub type TreeEdge = (VertexId, VertexId);

/// A signed tree-edge letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeLetter {
    pub edge: TreeEdge,
    pub sign: i8,
}

impl fmt::Debug for TreeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-{}{}",
            self.edge.0,
            self.edge.1,
            if self.sign > 0 { "" } else { "'" }
        )
    }
}

/// A word over the tree-edge generating set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeWord(pub Vec<TreeLetter>);

impl TreeWord {
    pub fn empty() -> Self {
        TreeWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> TreeWord {
        TreeWord(
            self.0
                .iter()
                .rev()
                .map(|l| TreeLetter {
                    edge: l.edge,
                    sign: -l.sign,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &TreeWord) -> TreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TreeWord(v)
    }

    pub fn display<'a>(&'a self, g: &'a SimplicialGraph) -> TreeWordDisplay<'a> {
        TreeWordDisplay { word: self, g }
    }
}

pub struct TreeWordDisplay<'a> {
    word: &'a TreeWord,
    g: &'a SimplicialGraph,
}

impl fmt::Display for TreeWordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{}-{}{}",
                self.g.name(l.edge.0),
                self.g.name(l.edge.1),
                if l.sign > 0 { "" } else { "'" }
            )?;
        }
        Ok(())
    }
}

/// The word w_{s,t} spelling the unique simple tree path from s to t.
pub fn tree_path_word(tree: &SpanningTree, s: VertexId, t: VertexId) -> TreeWord {
    let path = tree.path(s, t);
    let mut out = Vec::new();
    for pair in path.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        if u < v {
            out.push(TreeLetter { edge: (u, v), sign: 1 });
        } else {
            out.push(TreeLetter { edge: (v, u), sign: -1 });
        }
    }
    TreeWord(out)
}

/// A relator [left, right], stored unexpanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorRelator {
    /// The directed triangle v1 < v2 < v3 this relator comes from.
    pub triangle: (VertexId, VertexId, VertexId),
    /// w_e for e = (v1, v2).
    pub left: TreeWord,
    /// w_f for f = (v2, v3).
    pub right: TreeWord,
}

impl CommutatorRelator {
    /// Flatten [l, r] to l r l' r'.
    pub fn expand(&self) -> TreeWord {
        self.left
            .concat(&self.right)
            .concat(&self.left.inverse())
            .concat(&self.right.inverse())
    }
}

/// Generators and relators of the Bestvina-Brady group of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<TreeEdge>,
    pub relators: Vec<CommutatorRelator>,
    /// Set when H1 of the flag complex is nontrivial, in which case the
    /// presented group is not the Bestvina-Brady group (which is not
    /// finitely presented at all).
    pub flagged_not_simply_connected: bool,
}

/// One commutator relator [w_e, w_f] per directed triangle of the graph.
pub fn bbg_presentation(g: &SimplicialGraph, tree: &SpanningTree) -> Result<Presentation, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut relators = Vec::new();
    for (v1, v2, v3) in g.triangles() {
        relators.push(CommutatorRelator {
            triangle: (v1, v2, v3),
            left: tree_path_word(tree, v1, v2),
            right: tree_path_word(tree, v2, v3),
        });
    }
    let flagged = !crate::homology::h1_invariants(g).is_trivial();
    Ok(Presentation {
        generators: tree.edges.clone(),
        relators,
        flagged_not_simply_connected: flagged,
    })
}

/// Letterwise translation of a tree-edge word into an alternating word:
/// the edge (s, t) becomes `s t'`.
pub fn psi(w: &TreeWord) -> Word {
    let mut out = Vec::with_capacity(2 * w.len());
    for l in &w.0 {
        let (s, t) = l.edge;
        if l.sign > 0 {
            out.push(Letter::pos(s));
            out.push(Letter::neg(t));
        } else {
            out.push(Letter::pos(t));
            out.push(Letter::neg(s));
        }
    }
    Word(out)
}

/// Translation of an alternating word into a tree-edge word: each pair
/// `s t'` becomes the tree-path word from s to t.
pub fn phi(tree: &SpanningTree, u: &Word) -> Result<TreeWord, WordError> {
    if !is_alternating(u) {
        return Err(WordError::NotAlternating);
    }
    let mut out = TreeWord::empty();
    for pair in u.letters().chunks(2) {
        out = out.concat(&tree_path_word(tree, pair[0].gen, pair[1].gen));
    }
    Ok(out)
}

/// Membership in the kernel of the height map.
pub fn in_bbg(w: &Word) -> bool {
    height(w) == 0
}

/// Default length cap for the flat-norm search.
pub const DEFAULT_FLAT_NORM_CAP: usize = 12;

/// Breadth-first table of all kernel elements with flat norm at most `cap`,
/// keyed by normal form. Useful when many flat norms over the same graph
/// are needed.
pub fn kernel_ball(g: &SimplicialGraph, cap: usize) -> HashMap<Word, usize> {
    let mut table: HashMap<Word, usize> = HashMap::new();
    table.insert(Word::empty(), 0);
    let mut frontier = vec![Word::empty()];
    let pairs: Vec<(VertexId, VertexId)> = g
        .vertices()
        .flat_map(|s| g.vertices().map(move |t| (s, t)))
        .filter(|(s, t)| s != t)
        .collect();
    let mut depth = 0;
    while depth * 2 < cap {
        depth += 1;
        let mut next = Vec::new();
        for state in &frontier {
            for &(s, t) in &pairs {
                let cand = state.concat(&Word(vec![Letter::pos(s), Letter::neg(t)]));
                let nf = normal_form(g, &cand);
                if !table.contains_key(&nf) {
                    table.insert(nf.clone(), depth * 2);
                    next.push(nf);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    table
}

/// Exact flat norm of the element represented by `w`: the least length of
/// an alternating word representing it, found by breadth-first search over
/// products of pairs `s t'` with normal-form deduplication.
pub fn flat_norm(g: &SimplicialGraph, w: &Word, cap: usize) -> Result<usize, WordError> {
    if !in_bbg(w) {
        return Err(WordError::NotInKernel);
    }
    let target = normal_form(g, w);
    if target.is_empty() {
        return Ok(0);
    }
    let pairs: Vec<(VertexId, VertexId)> = g
        .vertices()
        .flat_map(|s| g.vertices().map(move |t| (s, t)))
        .filter(|(s, t)| s != t)
        .collect();
    let mut seen: HashMap<Word, usize> = HashMap::new();
    seen.insert(Word::empty(), 0);
    let mut frontier = vec![Word::empty()];
    let mut depth = 0;
    while depth * 2 < cap {
        depth += 1;
        let mut next = Vec::new();
        for state in &frontier {
            for &(s, t) in &pairs {
                let cand = state.concat(&Word(vec![Letter::pos(s), Letter::neg(t)]));
                let nf = normal_form(g, &cand);
                if nf == target {
                    return Ok(depth * 2);
                }
                if !seen.contains_key(&nf) {
                    seen.insert(nf.clone(), depth * 2);
                    next.push(nf);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Err(WordError::CapExceeded(cap))
}

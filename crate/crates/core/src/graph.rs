//! Finite simplicial graphs with a fixed total order on the vertices.
//!
//! The vertex order is the listing order of the input and stays fixed for
//! the lifetime of the graph; induced subgraphs inherit it. Everything here
//! is an immutable value, so graphs can be shared freely between threads.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a vertex in the ambient graph's fixed order.
pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    InvalidVertex(String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite simplicial graph: no loops, no multiple edges, and a total
/// order on the vertex set given by the listing order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialGraph {
    names: Vec<String>,
    adj: Vec<Vec<bool>>,
}

/// A subset of the vertices of some graph, kept in canonical sorted form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(mut ids: Vec<VertexId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }

    pub fn display<'a>(&'a self, g: &'a SimplicialGraph) -> VertexSetDisplay<'a> {
        VertexSetDisplay { set: self, g }
    }
}

pub struct VertexSetDisplay<'a> {
    set: &'a VertexSet,
    g: &'a SimplicialGraph,
}

impl fmt::Display for VertexSetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, &v) in self.set.ids().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.g.name(v))?;
        }
        write!(f, "}}")
    }
}

/// Join decomposition of a graph: the factors are the connected components
/// of the complement, listed in canonical order (sorted by least vertex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinDecomposition {
    pub factors: Vec<VertexSet>,
}

impl JoinDecomposition {
    pub fn is_reducible(&self) -> bool {
        self.factors.len() >= 2
    }

    pub fn is_cone(&self) -> bool {
        self.is_reducible() && self.factors.iter().any(|f| f.len() == 1)
    }

    /// Exactly two irreducible factors, each with at least two vertices.
    pub fn is_essential(&self) -> bool {
        self.factors.len() == 2 && self.factors.iter().all(|f| f.len() >= 2)
    }
}

/// A spanning tree with edges oriented from lower to higher vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: VertexId,
    /// `parent[v]` is None for the root, otherwise the BFS parent of v.
    pub parent: Vec<Option<VertexId>>,
    /// Tree edges as (lo, hi) pairs, sorted.
    pub edges: Vec<(VertexId, VertexId)>,
}

impl SpanningTree {
    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    /// Vertex sequence of the unique simple tree path from `s` to `t`.
    pub fn path(&self, s: VertexId, t: VertexId) -> Vec<VertexId> {
        let mut up_s = vec![s];
        let mut v = s;
        while let Some(p) = self.parent[v] {
            up_s.push(p);
            v = p;
        }
        let mut up_t = vec![t];
        v = t;
        while let Some(p) = self.parent[v] {
            up_t.push(p);
            v = p;
        }
        // Cut both ancestor chains at the lowest common ancestor.
        let mut i = up_s.len();
        let mut j = up_t.len();
        while i > 1 && j > 1 && up_s[i - 2] == up_t[j - 2] {
            i -= 1;
            j -= 1;
        }
        let mut path = up_s[..i].to_vec();
        path.extend(up_t[..j - 1].iter().rev());
        path
    }
}

impl SimplicialGraph {
    /// Build a graph from vertex names (order-defining) and edges given as
    /// name pairs. Rejects loops, duplicate edges, and unknown names.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(GraphError::Parse {
                    line: 1,
                    msg: format!("duplicate vertex `{name}`"),
                });
            }
        }
        let mut g = SimplicialGraph {
            names,
            adj: vec![vec![false; n]; n],
        };
        for (a, b) in edges {
            let u = g.vertex(a.as_ref())?;
            let v = g.vertex(b.as_ref())?;
            if u == v {
                return Err(GraphError::Parse {
                    line: 0,
                    msg: format!("self-loop at `{}`", a.as_ref()),
                });
            }
            if g.adj[u][v] {
                return Err(GraphError::Parse {
                    line: 0,
                    msg: format!("duplicate edge `{} {}`", a.as_ref(), b.as_ref()),
                });
            }
            g.adj[u][v] = true;
            g.adj[v][u] = true;
        }
        Ok(g)
    }

    /// Parse the text format: first non-comment line `vertices: a b c`,
    /// then one `a b` line per edge; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut names: Option<Vec<String>> = None;
        let mut edges: Vec<(String, String, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if names.is_none() {
                let rest = line.strip_prefix("vertices:").ok_or(GraphError::Parse {
                    line: line_no,
                    msg: "expected `vertices:` line".into(),
                })?;
                let vs: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if vs.is_empty() {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "empty vertex list".into(),
                    });
                }
                for v in &vs {
                    if !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("invalid vertex name `{v}`"),
                        });
                    }
                }
                names = Some(vs);
            } else {
                let mut it = line.split_whitespace();
                let (a, b) = (it.next(), it.next());
                match (a, b, it.next()) {
                    (Some(a), Some(b), None) => edges.push((a.to_string(), b.to_string(), line_no)),
                    _ => {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: "expected `<name> <name>` edge line".into(),
                        })
                    }
                }
            }
        }
        let names = names.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `vertices:` line".into(),
        })?;
        let mut g = SimplicialGraph::new::<String>(&names, &[]).map_err(|e| match e {
            GraphError::Parse { msg, .. } => GraphError::Parse { line: 1, msg },
            other => other,
        })?;
        for (a, b, line) in edges {
            let u = g
                .vertex(&a)
                .map_err(|_| GraphError::Parse { line, msg: format!("unknown vertex `{a}`") })?;
            let v = g
                .vertex(&b)
                .map_err(|_| GraphError::Parse { line, msg: format!("unknown vertex `{b}`") })?;
            if u == v {
                return Err(GraphError::Parse { line, msg: format!("self-loop at `{a}`") });
            }
            if g.adj[u][v] {
                return Err(GraphError::Parse { line, msg: format!("duplicate edge `{a} {b}`") });
            }
            g.adj[u][v] = true;
            g.adj[v][u] = true;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("vertices:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.names[u], self.names[v]));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::new(self.vertices().collect())
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GraphError::InvalidVertex(name.to_string()))
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u][v]
    }

    /// Whether `u` and `v` commute as generators: equal or adjacent.
    pub fn commute(&self, u: VertexId, v: VertexId) -> bool {
        u == v || self.adj[u][v]
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in (u + 1)..self.vertex_count() {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn complement(&self) -> SimplicialGraph {
        let n = self.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    adj[u][v] = !self.adj[u][v];
                }
            }
        }
        SimplicialGraph {
            names: self.names.clone(),
            adj,
        }
    }

    /// Induced subgraph on `s`. Vertex ids of the result are indices into
    /// the *restricted* name list; the inherited order is the ambient one.
    pub fn induced(&self, s: &VertexSet) -> Result<SimplicialGraph, GraphError> {
        for &v in s.ids() {
            if v >= self.vertex_count() {
                return Err(GraphError::InvalidVertex(format!("#{v}")));
            }
        }
        let ids = s.ids();
        let names: Vec<String> = ids.iter().map(|&v| self.names[v].clone()).collect();
        let k = ids.len();
        let mut adj = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                adj[i][j] = i != j && self.adj[ids[i]][ids[j]];
            }
        }
        Ok(SimplicialGraph { names, adj })
    }

    /// Connected components as canonical vertex sets, sorted by least vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if self.adj[u][v] && comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        let mut sets = vec![Vec::new(); count];
        for v in 0..n {
            sets[comp[v]].push(v);
        }
        sets.into_iter().map(VertexSet::new).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.connected_components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() == self.vertex_count() - 1
    }

    /// Vertices adjacent to `v`.
    pub fn link(&self, v: VertexId) -> Result<VertexSet, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::InvalidVertex(format!("#{v}")));
        }
        Ok(VertexSet::new(
            self.vertices().filter(|&u| self.adj[v][u]).collect(),
        ))
    }

    /// The link of `v` together with `v` itself.
    pub fn star(&self, v: VertexId) -> Result<VertexSet, GraphError> {
        let mut link = self.link(v)?;
        link.0.push(v);
        Ok(VertexSet::new(link.0))
    }

    /// Decompose into join factors: the connected components of the
    /// complement. A single factor means the graph is irreducible.
    pub fn join_decompose(&self) -> Result<JoinDecomposition, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(JoinDecomposition {
            factors: self.complement().connected_components(),
        })
    }

    pub fn is_reducible(&self) -> Result<bool, GraphError> {
        Ok(self.join_decompose()?.is_reducible())
    }

    pub fn is_cone(&self) -> Result<bool, GraphError> {
        Ok(self.join_decompose()?.is_cone())
    }

    pub fn is_essential(&self) -> Result<bool, GraphError> {
        Ok(self.join_decompose()?.is_essential())
    }

    /// Deterministic spanning tree: BFS from the least vertex, scanning
    /// neighbours in vertex order.
    pub fn spanning_tree(&self) -> Result<SpanningTree, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.vertex_count();
        let root = 0;
        let mut parent: Vec<Option<VertexId>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut edges = Vec::new();
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if self.adj[u][v] && !visited[v] {
                    visited[v] = true;
                    parent[v] = Some(u);
                    edges.push((u.min(v), u.max(v)));
                    queue.push_back(v);
                }
            }
        }
        edges.sort_unstable();
        Ok(SpanningTree { root, parent, edges })
    }

    /// All triangles as ordered triples v1 < v2 < v3, sorted.
    pub fn triangles(&self) -> Vec<(VertexId, VertexId, VertexId)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if !self.adj[a][b] {
                    continue;
                }
                for c in (b + 1)..n {
                    if self.adj[a][c] && self.adj[b][c] {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialGraph({:?}, edges: [", self.names)?;
        for (i, (u, v)) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", self.names[*u], self.names[*v])?;
        }
        write!(f, "])")
    }
}

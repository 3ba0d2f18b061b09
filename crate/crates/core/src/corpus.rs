//! The bundled test corpus: small named graphs used across the test suites
//! and handy as CLI inputs.

use crate::graph::SimplicialGraph;

/// Path a-b-c-d (four vertices, three edges).
pub fn p4() -> SimplicialGraph {
    SimplicialGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
}

/// Four-cycle a-b-c-d-a.
pub fn c4() -> SimplicialGraph {
    SimplicialGraph::new(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")],
    )
    .unwrap()
}

/// Complete graph on three vertices.
pub fn k3() -> SimplicialGraph {
    SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap()
}

/// Octahedron: the threefold join of two-vertex empty graphs.
pub fn oct() -> SimplicialGraph {
    let names = ["a1", "a2", "b1", "b2", "c1", "c2"];
    let mut edges = Vec::new();
    for (i, u) in names.iter().enumerate() {
        for v in names.iter().skip(i + 1) {
            // skip the three "antipodal" non-edges
            if u[..1] == v[..1] {
                continue;
            }
            edges.push((*u, *v));
        }
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

/// The suspension of the path C-D-E-F by the two-vertex empty graph {A,B}.
pub fn gamma1() -> SimplicialGraph {
    SimplicialGraph::new(
        &["A", "B", "C", "D", "E", "F"],
        &[
            ("A", "C"),
            ("A", "D"),
            ("A", "E"),
            ("A", "F"),
            ("B", "C"),
            ("B", "D"),
            ("B", "E"),
            ("B", "F"),
            ("C", "D"),
            ("D", "E"),
            ("E", "F"),
        ],
    )
    .unwrap()
}

/// `gamma1` extended by G adjacent to {A,C,F} and H adjacent to {B,C,F}.
pub fn gamma2() -> SimplicialGraph {
    SimplicialGraph::new(
        &["A", "B", "C", "D", "E", "F", "G", "H"],
        &[
            ("A", "C"),
            ("A", "D"),
            ("A", "E"),
            ("A", "F"),
            ("B", "C"),
            ("B", "D"),
            ("B", "E"),
            ("B", "F"),
            ("C", "D"),
            ("D", "E"),
            ("E", "F"),
            ("G", "A"),
            ("G", "C"),
            ("G", "F"),
            ("H", "B"),
            ("H", "C"),
            ("H", "F"),
        ],
    )
    .unwrap()
}

/// The seven-vertex variation whose maximal reducible subgraphs are all cones.
pub fn gamma3() -> SimplicialGraph {
    SimplicialGraph::new(
        &["A", "B", "C", "D", "E", "F", "G"],
        &[
            ("A", "C"),
            ("A", "D"),
            ("A", "E"),
            ("A", "F"),
            ("B", "C"),
            ("B", "D"),
            ("B", "E"),
            ("B", "G"),
            ("C", "D"),
            ("D", "E"),
            ("E", "F"),
            ("E", "G"),
            ("F", "G"),
        ],
    )
    .unwrap()
}

/// The join of the two-vertex empty graph {x,y} with a path of `len` edges.
pub fn suspension_of_path(len: usize) -> SimplicialGraph {
    assert!(len >= 1);
    let mut names = vec!["x".to_string(), "y".to_string()];
    for i in 0..=len {
        names.push(format!("p{i}"));
    }
    let mut edges = Vec::new();
    for i in 0..len {
        edges.push((format!("p{i}"), format!("p{}", i + 1)));
    }
    for s in ["x", "y"] {
        for i in 0..=len {
            edges.push((s.to_string(), format!("p{i}")));
        }
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    SimplicialGraph::new(&name_refs, &edge_refs).unwrap()
}

/// All bundled graphs with their canonical names.
pub fn all() -> Vec<(&'static str, SimplicialGraph)> {
    vec![
        ("P4", p4()),
        ("C4", c4()),
        ("K3", k3()),
        ("OCT", oct()),
        ("GAMMA1", gamma1()),
        ("GAMMA2", gamma2()),
        ("GAMMA3", gamma3()),
    ]
}

//! Combinatorial planar diagrams: rotation-system maps with labelled
//! oriented darts, used as van Kampen, coarse, alternating, and coloured
//! diagrams. Includes corridor/annulus tracing, vertex heights with the
//! separating-band decomposition, an exact capped minimal-area filling
//! oracle, the pushdown of coloured diagrams, and cutting along corridors.
//!
//! Conventions: each edge is a twin pair of darts carrying inverse labels;
//! `rotations[v]` lists the darts with origin v in counterclockwise order;
//! the face to the LEFT of a dart is the orbit of `d -> rot_next(twin(d))`.
//! The boundary word of the diagram is the reverse-twinned outer orbit,
//! read from the base vertex.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_rational::Ratio;
use thiserror::Error;

use crate::coloured::{transition_word, ColouredLetter, ColouredWord, PushdownConfig};
use crate::graph::{SimplicialGraph, VertexId};
use crate::words::{free_reduce, is_trivial, Letter, Word};

pub type DartId = usize;
pub type FaceId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("boundary word does not match the required shape")]
    BoundaryMismatch,
    #[error("face is not a commutation square")]
    NotASquareComplexCell,
    #[error("corridors cross or share cells")]
    CorridorsCross,
    #[error("corridor does not connect the two boundary arcs")]
    NotBoundaryToBoundary,
    #[error("word is not null-homotopic")]
    NotNullHomotopic,
}

/// Labels that can sit on a dart: a signed generator, possibly coloured.
pub trait DiagramLabel: Clone + Eq + Hash + fmt::Debug {
    fn inverse(&self) -> Self;
    fn letter(&self) -> Letter;
    fn text(&self, g: &SimplicialGraph) -> String;
}

impl DiagramLabel for Letter {
    fn inverse(&self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    fn letter(&self) -> Letter {
        *self
    }

    fn text(&self, g: &SimplicialGraph) -> String {
        format!("{}{}", g.name(self.gen), if self.sign > 0 { "" } else { "'" })
    }
}

impl DiagramLabel for ColouredLetter {
    fn inverse(&self) -> Self {
        ColouredLetter {
            sign: -self.sign,
            ..*self
        }
    }

    fn letter(&self) -> Letter {
        ColouredLetter::letter(*self)
    }

    fn text(&self, g: &SimplicialGraph) -> String {
        format!(
            "{}:{}{}",
            g.name(self.gen),
            g.name(self.colour),
            if self.sign > 0 { "" } else { "'" }
        )
    }
}

/// A frozen planar diagram. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Diagram<L> {
    origin: Vec<usize>,
    twin: Vec<DartId>,
    label: Vec<L>,
    rotations: Vec<Vec<DartId>>,
    base: usize,
    boundary: Vec<DartId>,
    faces: Vec<Vec<DartId>>,
    outer: FaceId,
    face_of: Vec<FaceId>,
}

impl<L: DiagramLabel> Diagram<L> {
    /// Assemble and validate a diagram from raw parts. Checks the twin
    /// involution, label pairing, rotation consistency, connectivity, the
    /// sphere Euler count, and that `boundary` reads the outer face from
    /// `base`.
    pub fn from_parts(
        origin: Vec<usize>,
        twin: Vec<DartId>,
        label: Vec<L>,
        rotations: Vec<Vec<DartId>>,
        base: usize,
        boundary: Vec<DartId>,
    ) -> Result<Self, DiagramError> {
        let nd = origin.len();
        if twin.len() != nd || label.len() != nd {
            return Err(DiagramError::MalformedMap("dart array length mismatch".into()));
        }
        let nv = rotations.len();
        if base >= nv {
            return Err(DiagramError::MalformedMap("base out of range".into()));
        }
        for d in 0..nd {
            if twin[d] >= nd || twin[twin[d]] != d || twin[d] == d {
                return Err(DiagramError::MalformedMap(format!("twin involution broken at {d}")));
            }
            if label[twin[d]] != label[d].inverse() {
                return Err(DiagramError::MalformedMap(format!("twin labels not inverse at {d}")));
            }
            if origin[d] >= nv {
                return Err(DiagramError::MalformedMap(format!("origin out of range at {d}")));
            }
        }
        let mut seen = vec![false; nd];
        for (v, rot) in rotations.iter().enumerate() {
            for &d in rot {
                if d >= nd || origin[d] != v || seen[d] {
                    return Err(DiagramError::MalformedMap(format!(
                        "rotation at vertex {v} lists dart {d} incorrectly"
                    )));
                }
                seen[d] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(DiagramError::MalformedMap("dart missing from rotations".into()));
        }

        // 1-skeleton connectivity.
        if nv > 0 {
            let mut vis = vec![false; nv];
            vis[0] = true;
            let mut stack = vec![0usize];
            while let Some(v) = stack.pop() {
                for &d in &rotations[v] {
                    let w = origin[twin[d]];
                    if !vis[w] {
                        vis[w] = true;
                        stack.push(w);
                    }
                }
            }
            if vis.iter().any(|v| !v) {
                return Err(DiagramError::MalformedMap("diagram is disconnected".into()));
            }
        }

        // Faces: orbits of d -> rot_next(twin(d)).
        let mut rot_pos: HashMap<DartId, (usize, usize)> = HashMap::new();
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                rot_pos.insert(d, (v, i));
            }
        }
        let next_in_face = |d: DartId| -> DartId {
            let t = twin[d];
            let (v, i) = rot_pos[&t];
            rotations[v][(i + 1) % rotations[v].len()]
        };
        let mut face_of = vec![usize::MAX; nd];
        let mut faces: Vec<Vec<DartId>> = Vec::new();
        for d0 in 0..nd {
            if face_of[d0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut orbit = Vec::new();
            let mut d = d0;
            loop {
                face_of[d] = id;
                orbit.push(d);
                d = next_in_face(d);
                if d == d0 {
                    break;
                }
            }
            faces.push(orbit);
        }
        if nd == 0 {
            if !boundary.is_empty() || nv != 1 {
                return Err(DiagramError::BoundaryMismatch);
            }
            return Ok(Diagram {
                origin,
                twin,
                label,
                rotations,
                base,
                boundary,
                faces: vec![Vec::new()],
                outer: 0,
                face_of,
            });
        }
        let euler = nv as i64 - (nd as i64 / 2) + faces.len() as i64;
        if euler != 2 {
            return Err(DiagramError::MalformedMap(format!("Euler count {euler} != 2")));
        }

        // Outer face: boundary must be its reverse-twinned orbit, starting
        // at base.
        if boundary.is_empty() {
            return Err(DiagramError::BoundaryMismatch);
        }
        let outer = face_of[twin[boundary[0]]];
        let expected: Vec<DartId> = faces[outer].iter().rev().map(|&d| twin[d]).collect();
        if expected.len() != boundary.len() {
            return Err(DiagramError::BoundaryMismatch);
        }
        let start = expected
            .iter()
            .position(|&d| d == boundary[0])
            .ok_or(DiagramError::BoundaryMismatch)?;
        let rotated: Vec<DartId> = expected[start..]
            .iter()
            .chain(expected[..start].iter())
            .copied()
            .collect();
        if rotated != boundary {
            return Err(DiagramError::BoundaryMismatch);
        }
        if origin[boundary[0]] != base {
            return Err(DiagramError::BoundaryMismatch);
        }
        for i in 0..boundary.len() {
            let next = boundary[(i + 1) % boundary.len()];
            if origin[twin[boundary[i]]] != origin[next] {
                return Err(DiagramError::BoundaryMismatch);
            }
        }
        Ok(Diagram {
            origin,
            twin,
            label,
            rotations,
            base,
            boundary,
            faces,
            outer,
            face_of,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn origin_of(&self, d: DartId) -> usize {
        self.origin[d]
    }

    pub fn head_of(&self, d: DartId) -> usize {
        self.origin[self.twin[d]]
    }

    pub fn twin_of(&self, d: DartId) -> DartId {
        self.twin[d]
    }

    pub fn label_of(&self, d: DartId) -> &L {
        &self.label[d]
    }

    pub fn rotation(&self, v: usize) -> &[DartId] {
        &self.rotations[v]
    }

    pub fn boundary(&self) -> &[DartId] {
        &self.boundary
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d]
    }

    pub fn face_darts(&self, f: FaceId) -> &[DartId] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }

    /// Number of bounded regions.
    pub fn area(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn boundary_word(&self) -> Vec<L> {
        self.boundary.iter().map(|&d| self.label[d].clone()).collect()
    }

    /// Label word read along the face orbit (a bounded region is read with
    /// the region on its left).
    pub fn face_word(&self, f: FaceId) -> Vec<L> {
        self.faces[f].iter().map(|&d| self.label[d].clone()).collect()
    }

    /// Sum of bounded region boundary lengths over the outer boundary
    /// length.
    pub fn density(&self) -> Ratio<i64> {
        let total: usize = self.bounded_faces().map(|f| self.faces[f].len()).sum();
        Ratio::new(total as i64, self.boundary.len().max(1) as i64)
    }

    /// Vertex heights measured from the base along any path; consistent
    /// exactly when every face word has height zero.
    pub fn heights(&self) -> Result<Vec<i64>, DiagramError> {
        let mut h = vec![i64::MAX; self.vertex_count()];
        h[self.base] = 0;
        let mut queue = VecDeque::from([self.base]);
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotations[v] {
                let w = self.head_of(d);
                let hw = h[v] + self.label[d].letter().sign as i64;
                if h[w] == i64::MAX {
                    h[w] = hw;
                    queue.push_back(w);
                } else if h[w] != hw {
                    return Err(DiagramError::MalformedMap(
                        "vertex heights are inconsistent".into(),
                    ));
                }
            }
        }
        Ok(h)
    }

    /// Stable JSON form for golden tests.
    pub fn to_json(&self, g: &SimplicialGraph) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertex_count(),
            "base": self.base,
            "darts": (0..self.dart_count()).map(|d| serde_json::json!({
                "origin": self.origin[d],
                "twin": self.twin[d],
                "label": self.label[d].text(g),
            })).collect::<Vec<_>>(),
            "rotations": self.rotations,
            "boundary": self.boundary,
        })
    }
}

impl Diagram<Letter> {
    pub fn boundary_as_word(&self) -> Word {
        Word(self.boundary_word())
    }

    pub fn face_as_word(&self, f: FaceId) -> Word {
        Word(self.face_word(f))
    }

    /// Every bounded region must be freely equivalent to a commutation
    /// square of adjacent generators.
    pub fn validate_van_kampen(&self, g: &SimplicialGraph) -> Result<(), DiagramError> {
        for f in self.bounded_faces() {
            let w = cyclic_free_reduce(&self.face_as_word(f));
            if !is_commutation_square_word(g, &w) {
                return Err(DiagramError::BoundaryMismatch);
            }
        }
        self.heights()?;
        Ok(())
    }

    /// Every bounded region must be null-homotopic in the ambient group.
    pub fn validate_coarse(&self, g: &SimplicialGraph) -> Result<(), DiagramError> {
        for f in self.bounded_faces() {
            if !is_trivial(g, &self.face_as_word(f)) {
                return Err(DiagramError::BoundaryMismatch);
            }
        }
        self.heights()?;
        Ok(())
    }

    /// Coarse with all vertex heights in {0, 1}.
    pub fn validate_alternating(&self, g: &SimplicialGraph) -> Result<(), DiagramError> {
        self.validate_coarse(g)?;
        let h = self.heights()?;
        if h.iter().all(|&x| x == 0 || x == 1) {
            Ok(())
        } else {
            Err(DiagramError::BoundaryMismatch)
        }
    }

    /// Van Kampen with all vertex heights in {0, 1, 2}.
    pub fn validate_almost_flat(&self, g: &SimplicialGraph) -> Result<(), DiagramError> {
        self.validate_van_kampen(g)?;
        let h = self.heights()?;
        if h.iter().all(|&x| (0..=2).contains(&x)) {
            Ok(())
        } else {
            Err(DiagramError::BoundaryMismatch)
        }
    }
}

impl Diagram<ColouredLetter> {
    pub fn boundary_as_coloured(&self) -> ColouredWord {
        ColouredWord(self.boundary_word())
    }

    pub fn face_as_coloured(&self, f: FaceId) -> ColouredWord {
        ColouredWord(self.face_word(f))
    }

    pub fn face_as_word(&self, f: FaceId) -> Word {
        Word(self.face_word(f).iter().map(|l| l.letter()).collect())
    }

    /// Every bounded region's underlying word must be null-homotopic.
    pub fn validate_coarse(&self, g: &SimplicialGraph) -> Result<(), DiagramError> {
        for f in self.bounded_faces() {
            if !is_trivial(g, &self.face_as_word(f)) {
                return Err(DiagramError::BoundaryMismatch);
            }
        }
        self.heights()?;
        Ok(())
    }
}

fn cyclic_free_reduce(w: &Word) -> Word {
    let mut v = free_reduce(w);
    while v.len() >= 2 {
        let (first, last) = (v.0[0], v.0[v.len() - 1]);
        if first.gen == last.gen && first.sign == -last.sign {
            v.0.pop();
            v.0.remove(0);
            v = free_reduce(&v);
        } else {
            break;
        }
    }
    v
}

fn is_commutation_square_word(g: &SimplicialGraph, w: &Word) -> bool {
    if w.len() != 4 {
        return false;
    }
    let l = w.letters();
    l[0].gen != l[1].gen
        && g.adjacent(l[0].gen, l[1].gen)
        && l[2] == l[0].inverse()
        && l[3] == l[1].inverse()
}

// ---------------------------------------------------------------------------
// Builder

/// Incremental construction of planar diagrams by boundary surgery and
/// face splitting. Tracks the bounded faces and the based boundary walk.
pub struct DiagramBuilder<L> {
    origin: Vec<usize>,
    twin: Vec<DartId>,
    label: Vec<L>,
    rotations: Vec<Vec<DartId>>,
    base: usize,
    boundary: Vec<DartId>,
    faces: Vec<Vec<DartId>>,
}

impl<L: DiagramLabel> DiagramBuilder<L> {
    /// A single base vertex with empty boundary.
    pub fn single_vertex() -> Self {
        DiagramBuilder {
            origin: Vec::new(),
            twin: Vec::new(),
            label: Vec::new(),
            rotations: vec![Vec::new()],
            base: 0,
            boundary: Vec::new(),
            faces: Vec::new(),
        }
    }

    /// A simple cycle bounding one region; the boundary reads `labels`
    /// from the base.
    pub fn cycle(labels: Vec<L>) -> Self {
        let n = labels.len();
        assert!(n >= 2, "cycle needs at least two darts");
        let mut b = DiagramBuilder {
            origin: Vec::new(),
            twin: Vec::new(),
            label: Vec::new(),
            rotations: vec![Vec::new(); n],
            base: 0,
            boundary: Vec::new(),
            faces: Vec::new(),
        };
        let mut forward = Vec::with_capacity(n);
        for (i, lab) in labels.into_iter().enumerate() {
            let d = b.new_edge(i, (i + 1) % n, lab);
            forward.push(d);
        }
        for i in 0..n {
            // Outgoing forward dart, then the back-dart of the previous
            // edge; the bounded face lies on the left of forward darts.
            let prev = forward[(i + n - 1) % n];
            b.rotations[i] = vec![forward[i], b.twin[prev]];
        }
        b.boundary = forward.clone();
        b.faces = vec![forward];
        b
    }

    fn new_edge(&mut self, from: usize, to: usize, lab: L) -> DartId {
        let d = self.origin.len();
        self.origin.push(from);
        self.twin.push(d + 1);
        self.label.push(lab.clone());
        self.origin.push(to);
        self.twin.push(d);
        self.label.push(lab.inverse());
        d
    }

    fn new_vertex(&mut self) -> usize {
        self.rotations.push(Vec::new());
        self.rotations.len() - 1
    }

    fn insert_after(&mut self, v: usize, after: DartId, d: DartId) {
        let pos = self.rotations[v]
            .iter()
            .position(|&x| x == after)
            .expect("dart in rotation");
        self.rotations[v].insert(pos + 1, d);
    }

    fn head_of(&self, d: DartId) -> usize {
        self.origin[self.twin[d]]
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn boundary_labels(&self) -> Vec<L> {
        self.boundary.iter().map(|&d| self.label[d].clone()).collect()
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn dart_head(&self, d: DartId) -> usize {
        self.head_of(d)
    }

    /// Insert a cancelling pair `x x'` into the boundary word at `pos`,
    /// growing a spike into the outer region.
    pub fn attach_spike(&mut self, pos: usize, lab: L) {
        let tip = self.new_vertex();
        if self.boundary.is_empty() {
            let d = self.new_edge(self.base, tip, lab);
            self.rotations[self.base].push(d);
            self.rotations[tip].push(self.twin[d]);
            self.boundary = vec![d, self.twin[d]];
            return;
        }
        let m = self.boundary.len();
        // The spike grows in the outer corner at the vertex between
        // boundary positions pos-1 and pos.
        let corner = self.boundary[pos % m];
        let v = self.origin[corner];
        let d = self.new_edge(v, tip, lab);
        self.insert_after(v, corner, d);
        let td = self.twin[d];
        self.rotations[tip].push(td);
        self.boundary.insert(pos.min(m), td);
        self.boundary.insert(pos.min(m), d);
    }

    /// Replace the boundary darts at `pos`, `pos + 1` (labels v then u) by
    /// a new two-dart path labelled u then v, attaching a commutation
    /// square over them.
    pub fn attach_square(&mut self, pos: usize) {
        let m = self.boundary.len();
        assert!(pos + 1 < m, "square must not straddle the base point");
        let b1 = self.boundary[pos];
        let b2 = self.boundary[pos + 1];
        let p = self.origin[b1];
        let r = self.head_of(b2);
        let qp = self.new_vertex();
        let lab_u = self.label[b2].clone();
        let lab_v = self.label[b1].clone();
        let e1 = self.new_edge(p, qp, lab_u);
        let e2 = self.new_edge(qp, r, lab_v);
        self.insert_after(p, b1, e1);
        self.rotations[qp] = vec![self.twin[e1], e2];
        let leaving_r = self.boundary[(pos + 2) % m];
        debug_assert_eq!(self.origin[leaving_r], r);
        let te2 = self.twin[e2];
        self.insert_after(r, leaving_r, te2);
        self.faces.push(vec![e1, e2, self.twin[b2], self.twin[b1]]);
        self.boundary[pos] = e1;
        self.boundary[pos + 1] = e2;
    }

    /// Split bounded face `face_idx` by a new chord path from the vertex
    /// at face position `pos_a` to the vertex at face position `pos_b`,
    /// reading `labels` from a to b. The face keeps the side from b around
    /// to a together with the chord; the other side is pushed as a new
    /// face.
    pub fn split_face(&mut self, face_idx: usize, pos_a: usize, pos_b: usize, labels: Vec<L>) {
        assert!(!labels.is_empty());
        assert_ne!(pos_a, pos_b, "chord endpoints must be distinct face corners");
        let face = self.faces[face_idx].clone();
        let m = face.len();
        let a = self.origin[face[pos_a]];
        let b = self.origin[face[pos_b]];
        let k = labels.len();
        let mut verts = vec![a];
        for _ in 1..k {
            verts.push(self.new_vertex());
        }
        verts.push(b);
        let mut chord = Vec::with_capacity(k);
        for (i, lab) in labels.into_iter().enumerate() {
            chord.push(self.new_edge(verts[i], verts[i + 1], lab));
        }
        for i in 1..k {
            let d_in = chord[i - 1];
            let d_out = chord[i];
            self.rotations[verts[i]] = vec![self.twin[d_in], d_out];
        }
        let before_a = face[(pos_a + m - 1) % m];
        let before_b = face[(pos_b + m - 1) % m];
        let ta = self.twin[before_a];
        self.insert_after(a, ta, chord[0]);
        let tb = self.twin[before_b];
        let tl = self.twin[chord[k - 1]];
        self.insert_after(b, tb, tl);
        let mut f1 = chord.clone();
        let mut i = pos_b;
        while i != pos_a {
            f1.push(face[i]);
            i = (i + 1) % m;
        }
        let mut f2 = Vec::new();
        let mut i = pos_a;
        while i != pos_b {
            f2.push(face[i]);
            i = (i + 1) % m;
        }
        f2.extend(chord.iter().rev().map(|&d| self.twin[d]));
        self.faces[face_idx] = f1;
        self.faces.push(f2);
    }

    pub fn face_labels(&self, face_idx: usize) -> Vec<L> {
        self.faces[face_idx].iter().map(|&d| self.label[d].clone()).collect()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Position of the `occurrence`-th visit of `v` in the face cycle.
    pub fn face_position_of_vertex(
        &self,
        face_idx: usize,
        v: usize,
        occurrence: usize,
    ) -> Option<usize> {
        self.faces[face_idx]
            .iter()
            .enumerate()
            .filter(|&(_, &d)| self.origin[d] == v)
            .map(|(i, _)| i)
            .nth(occurrence)
    }

    /// Vertex at face position `pos`.
    pub fn face_vertex(&self, face_idx: usize, pos: usize) -> usize {
        self.origin[self.faces[face_idx][pos]]
    }

    pub fn freeze(self) -> Result<Diagram<L>, DiagramError> {
        let d = Diagram::from_parts(
            self.origin,
            self.twin,
            self.label,
            self.rotations,
            self.base,
            self.boundary,
        )?;
        // The builder's bounded faces must agree with the derived orbits.
        let mut seen = vec![false; d.face_count()];
        seen[d.outer_face()] = true;
        for f in &self.faces {
            if f.is_empty() {
                return Err(DiagramError::MalformedMap("empty builder face".into()));
            }
            let id = d.face_of(f[0]);
            if id == d.outer_face() || seen[id] || !cyclic_eq(f, d.face_darts(id)) {
                return Err(DiagramError::MalformedMap(
                    "builder faces disagree with derived orbits".into(),
                ));
            }
            seen[id] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(DiagramError::MalformedMap(
                "derived orbit missing from builder faces".into(),
            ));
        }
        Ok(d)
    }
}

fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

// ---------------------------------------------------------------------------
// Corridors and annuli

/// A dual band of commutation squares sharing a generator.
#[derive(Clone, Debug)]
pub struct Band {
    pub generator: VertexId,
    pub cells: Vec<FaceId>,
    /// Positive darts of the crossed edges, in traversal order. A corridor
    /// has one more crossed edge than cells; an annulus has as many.
    pub crossed: Vec<DartId>,
    pub is_annulus: bool,
}

impl Band {
    pub fn length(&self) -> usize {
        self.cells.len()
    }
}

impl Diagram<Letter> {
    fn positive_dart(&self, d: DartId) -> DartId {
        if self.label[d].sign > 0 {
            d
        } else {
            self.twin[d]
        }
    }

    fn opposite_in_square(&self, f: FaceId, entry: DartId) -> Result<DartId, DiagramError> {
        let orbit = &self.faces[f];
        if orbit.len() != 4 {
            return Err(DiagramError::NotASquareComplexCell);
        }
        let pos = orbit
            .iter()
            .position(|&d| d == entry)
            .expect("entry dart lies on the face");
        Ok(orbit[(pos + 2) % 4])
    }

    /// Trace the dual band through the edge of `dart`: a corridor if it
    /// reaches the outer face, an annulus if it closes up.
    pub fn trace_band(&self, dart: DartId) -> Result<Band, DiagramError> {
        let generator = self.label[dart].gen;
        let seed = self.positive_dart(dart);
        let march = |start: DartId| -> Result<(Vec<FaceId>, Vec<DartId>, bool), DiagramError> {
            let mut side_dart = start;
            let mut cells = Vec::new();
            let mut crossed = Vec::new();
            loop {
                let f = self.face_of[side_dart];
                if f == self.outer {
                    return Ok((cells, crossed, false));
                }
                let exit = self.opposite_in_square(f, side_dart)?;
                if self.label[exit].gen != generator {
                    return Err(DiagramError::NotASquareComplexCell);
                }
                cells.push(f);
                let pe = self.positive_dart(exit);
                if pe == seed {
                    return Ok((cells, crossed, true));
                }
                crossed.push(pe);
                side_dart = self.twin[exit];
            }
        };
        let (cells_fwd, crossed_fwd, closed) = march(seed)?;
        if closed {
            let mut crossed = vec![seed];
            crossed.extend(crossed_fwd);
            return Ok(canonical_annulus(Band {
                generator,
                cells: cells_fwd,
                crossed,
                is_annulus: true,
            }));
        }
        let (cells_bwd, crossed_bwd, closed_bwd) = march(self.twin[seed])?;
        debug_assert!(!closed_bwd);
        let mut cells: Vec<FaceId> = cells_bwd.iter().rev().copied().collect();
        cells.extend(cells_fwd.iter().copied());
        let mut crossed: Vec<DartId> = crossed_bwd.iter().rev().copied().collect();
        crossed.push(seed);
        crossed.extend(crossed_fwd.iter().copied());
        Ok(canonical_corridor(Band {
            generator,
            cells,
            crossed,
            is_annulus: false,
        }))
    }

    /// Every band of the diagram, one per dual curve, deterministically
    /// ordered by first traversal.
    pub fn all_bands(&self) -> Result<Vec<Band>, DiagramError> {
        let mut visited = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for d in 0..self.dart_count() {
            let p = self.positive_dart(d);
            if visited[p] {
                continue;
            }
            let band = self.trace_band(p)?;
            for &c in &band.crossed {
                visited[c] = true;
            }
            out.push(band);
        }
        Ok(out)
    }

    /// Number of shared cells of two bands.
    pub fn crossings(&self, a: &Band, b: &Band) -> usize {
        a.cells.iter().filter(|c| b.cells.contains(c)).count()
    }

    /// Component ids of the vertices after removing the band's interior
    /// (its cells and crossed edges). Two components for a separating band.
    pub fn band_sides(&self, band: &Band) -> Vec<usize> {
        let mut blocked = vec![false; self.dart_count()];
        for &d in &band.crossed {
            blocked[d] = true;
            blocked[self.twin[d]] = true;
        }
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &d in &self.rotations[v] {
                    if blocked[d] {
                        continue;
                    }
                    let w = self.head_of(d);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        comp
    }

    /// Signed count of corridors separating the base from `p`: +1 when `p`
    /// lies on the side the positive darts point into.
    pub fn kappa(&self, bands: &[Band], p: usize) -> i64 {
        self.band_sign_sum(bands, p, false)
    }

    /// Signed count of annuli enclosing `p`, oriented by their positive
    /// darts.
    pub fn alpha(&self, bands: &[Band], p: usize) -> i64 {
        self.band_sign_sum(bands, p, true)
    }

    fn band_sign_sum(&self, bands: &[Band], p: usize, annuli: bool) -> i64 {
        let mut total = 0;
        for band in bands {
            if band.is_annulus != annuli {
                continue;
            }
            let comp = self.band_sides(band);
            if comp[p] == comp[self.base] {
                continue;
            }
            let head = self.head_of(band.crossed[0]);
            total += if comp[p] == comp[head] { 1 } else { -1 };
        }
        total
    }
}

fn canonical_corridor(mut band: Band) -> Band {
    let first = *band.crossed.first().unwrap();
    let last = *band.crossed.last().unwrap();
    if last < first {
        band.cells.reverse();
        band.crossed.reverse();
    }
    band
}

fn canonical_annulus(mut band: Band) -> Band {
    if band.crossed.is_empty() {
        return band;
    }
    let min_pos = band
        .crossed
        .iter()
        .enumerate()
        .min_by_key(|&(_, &d)| d)
        .map(|(i, _)| i)
        .unwrap();
    band.crossed.rotate_left(min_pos);
    band.cells.rotate_left(min_pos);
    if band.crossed.len() >= 2 && band.crossed[band.crossed.len() - 1] < band.crossed[1] {
        band.crossed[1..].reverse();
        band.cells.reverse();
        band.cells.rotate_right(1);
    }
    band
}

// ---------------------------------------------------------------------------
// Exact-area filling oracle

/// Outcome of the capped filling search.
pub enum FillOutcome {
    /// A minimal-area van Kampen diagram within the caps.
    Filled(Box<Diagram<Letter>>),
    /// Caps exhausted before the search completed.
    Unknown,
}

const FILL_STATE_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug)]
enum Move {
    Swap(usize),
    Cancel(usize),
}

fn reduce_recording(letters: &mut Vec<Letter>, moves: &mut Vec<Move>) {
    loop {
        let mut pos = None;
        for i in 0..letters.len().saturating_sub(1) {
            if letters[i].gen == letters[i + 1].gen && letters[i].sign == -letters[i + 1].sign {
                pos = Some(i);
                break;
            }
        }
        match pos {
            Some(i) => {
                moves.push(Move::Cancel(i));
                letters.remove(i);
                letters.remove(i);
            }
            None => return,
        }
    }
}

/// Breadth-first search for a minimal sequence of commutation moves taking
/// `start` to the empty word, with free cancellations free of charge.
/// Outer None: caps exhausted. Inner None: target unreachable.
#[allow(clippy::type_complexity)]
fn min_swap_path(
    g: &SimplicialGraph,
    start: &[Letter],
    max_area: usize,
) -> Option<Option<Vec<Move>>> {
    if start.is_empty() {
        return Some(Some(Vec::new()));
    }
    let mut parents: HashMap<Vec<Letter>, Option<(Vec<Letter>, usize)>> = HashMap::new();
    parents.insert(start.to_vec(), None);
    let mut frontier = vec![start.to_vec()];
    let mut depth = 0;
    while !frontier.is_empty() && depth < max_area {
        depth += 1;
        let mut next = Vec::new();
        for state in &frontier {
            for i in 0..state.len() - 1 {
                let (x, y) = (state[i], state[i + 1]);
                if x.gen == y.gen || !g.adjacent(x.gen, y.gen) {
                    continue;
                }
                let mut cand = state.clone();
                cand.swap(i, i + 1);
                let mut scratch = Vec::new();
                reduce_recording(&mut cand, &mut scratch);
                if parents.contains_key(&cand) {
                    continue;
                }
                parents.insert(cand.clone(), Some((state.clone(), i)));
                if cand.is_empty() {
                    let mut chain: Vec<(Vec<Letter>, usize)> = Vec::new();
                    let mut cur = cand;
                    while let Some(Some((prev, pos))) = parents.get(&cur) {
                        chain.push((prev.clone(), *pos));
                        cur = prev.clone();
                    }
                    chain.reverse();
                    let mut moves = Vec::new();
                    for (state, pos) in chain {
                        let mut word = state;
                        moves.push(Move::Swap(pos));
                        word.swap(pos, pos + 1);
                        reduce_recording(&mut word, &mut moves);
                    }
                    return Some(Some(moves));
                }
                if parents.len() > FILL_STATE_BUDGET {
                    return None;
                }
                next.push(cand);
            }
        }
        frontier = next;
    }
    if frontier.is_empty() {
        Some(None)
    } else {
        None
    }
}

/// Exact minimal-area van Kampen diagram for a null-homotopic word over
/// the standard presentation, by breadth-first search over commutation
/// moves with free reduction, reconstructing the diagram from the move
/// trace. `Unknown` when the area, length, or state caps are exhausted.
pub fn fill_small(
    g: &SimplicialGraph,
    w: &Word,
    max_area: usize,
    max_len: usize,
) -> Result<FillOutcome, DiagramError> {
    if !is_trivial(g, w) {
        return Err(DiagramError::NotNullHomotopic);
    }
    if w.len() > max_len {
        return Ok(FillOutcome::Unknown);
    }
    let mut moves = Vec::new();
    let mut letters = w.0.clone();
    reduce_recording(&mut letters, &mut moves);
    let tail = match min_swap_path(g, &letters, max_area) {
        None => return Ok(FillOutcome::Unknown),
        Some(None) => return Err(DiagramError::NotNullHomotopic),
        Some(Some(t)) => t,
    };
    moves.extend(tail);

    // Forward word states, for undoing cancellations with the right letter.
    let mut forward_words = Vec::with_capacity(moves.len() + 1);
    let mut cur = w.0.clone();
    forward_words.push(cur.clone());
    for mv in &moves {
        match *mv {
            Move::Swap(i) => cur.swap(i, i + 1),
            Move::Cancel(i) => {
                cur.remove(i);
                cur.remove(i);
            }
        }
        forward_words.push(cur.clone());
    }
    debug_assert!(forward_words.last().unwrap().is_empty());

    // Replay backwards, growing the diagram from a point.
    let mut builder: DiagramBuilder<Letter> = DiagramBuilder::single_vertex();
    for (idx, mv) in moves.iter().enumerate().rev() {
        let before = &forward_words[idx];
        match *mv {
            Move::Cancel(i) => builder.attach_spike(i, before[i]),
            Move::Swap(i) => builder.attach_square(i),
        }
        debug_assert_eq!(
            builder.boundary_labels(),
            *before,
            "replay word mismatch at move {idx}"
        );
    }
    let d = builder.freeze()?;
    debug_assert_eq!(d.boundary_as_word(), *w);
    Ok(FillOutcome::Filled(Box::new(d)))
}

// ---------------------------------------------------------------------------
// Pushdown of coloured diagrams

/// The pushdown of a coloured diagram: every edge is replaced by its
/// pushdown path, equal-colour transition prefixes are folded at each
/// vertex, and vertices all of whose edges share one colour lose their
/// dangling transition path entirely.
pub fn pushdown_diagram(
    cfg: &PushdownConfig,
    g: &SimplicialGraph,
    cd: &Diagram<ColouredLetter>,
    h: i64,
) -> Result<Diagram<Letter>, DiagramError> {
    if cd.dart_count() == 0 {
        return Err(DiagramError::MalformedMap("empty coloured diagram".into()));
    }
    cd.validate_coarse(g)?;
    let heights = cd.heights()?;

    struct NewMap {
        origin: Vec<usize>,
        twin: Vec<DartId>,
        label: Vec<Letter>,
        rotations: Vec<Vec<DartId>>,
    }
    impl NewMap {
        fn new_vertex(&mut self) -> usize {
            self.rotations.push(Vec::new());
            self.rotations.len() - 1
        }
        fn new_edge(&mut self, from: usize, to: usize, lab: Letter) -> DartId {
            let d = self.origin.len();
            self.origin.push(from);
            self.twin.push(d + 1);
            self.label.push(lab);
            self.origin.push(to);
            self.twin.push(d);
            self.label.push(lab.inverse());
            d
        }
    }
    let mut nm = NewMap {
        origin: Vec::new(),
        twin: Vec::new(),
        label: Vec::new(),
        rotations: Vec::new(),
    };

    // Cyclic runs of equal colour in each old rotation.
    #[derive(Clone)]
    struct Run {
        darts: Vec<DartId>,
        colour: VertexId,
    }
    let runs_of = |v: usize| -> Vec<Run> {
        let rot = cd.rotation(v);
        let mut runs: Vec<Run> = Vec::new();
        for &d in rot {
            let colour = cd.label_of(d).colour;
            match runs.last_mut() {
                Some(r) if r.colour == colour => r.darts.push(d),
                _ => runs.push(Run {
                    darts: vec![d],
                    colour,
                }),
            }
        }
        if runs.len() >= 2 && runs[0].colour == runs[runs.len() - 1].colour {
            let tail = runs.pop().unwrap();
            let mut darts = tail.darts;
            darts.extend(runs[0].darts.iter().copied());
            runs[0].darts = darts;
        }
        runs
    };

    let mut junction_of: HashMap<(usize, DartId), usize> = HashMap::new();
    let mut centre_of: Vec<Option<usize>> = vec![None; cd.vertex_count()];
    let mut chain_first: HashMap<(usize, usize), DartId> = HashMap::new();
    let mut chain_last: HashMap<(usize, usize), DartId> = HashMap::new();
    let mut slots_per_vertex: Vec<Vec<(usize, Vec<DartId>)>> = Vec::new();
    let mut run_index_of_dart: HashMap<DartId, usize> = HashMap::new();

    for v in 0..cd.vertex_count() {
        let runs = runs_of(v);
        for (ri, run) in runs.iter().enumerate() {
            for &d in &run.darts {
                run_index_of_dart.insert(d, ri);
            }
        }
        let taus: Vec<Word> = runs
            .iter()
            .map(|r| transition_word(cfg, r.colour, h + heights[v]))
            .collect();
        let trim = runs.len() == 1 && !taus[0].is_empty();
        let centre = if trim { None } else { Some(nm.new_vertex()) };
        centre_of[v] = centre;
        let mut slots = Vec::new();
        for (ri, run) in runs.iter().enumerate() {
            let tau = &taus[ri];
            let junction = if tau.is_empty() {
                centre.expect("empty transition word never trims")
            } else if trim {
                nm.new_vertex()
            } else {
                let mut prev = centre.unwrap();
                let mut first = None;
                let mut last = None;
                for (i, lab) in tau.letters().iter().enumerate() {
                    let nxt = nm.new_vertex();
                    let d = nm.new_edge(prev, nxt, *lab);
                    if i == 0 {
                        first = Some(d);
                    } else {
                        nm.rotations[prev] = vec![nm.twin[d - 2], d];
                    }
                    last = Some(d);
                    prev = nxt;
                }
                chain_first.insert((v, ri), first.unwrap());
                chain_last.insert((v, ri), last.unwrap());
                prev
            };
            for &d in &run.darts {
                junction_of.insert((v, d), junction);
            }
            slots.push((junction, run.darts.clone()));
        }
        slots_per_vertex.push(slots);
    }

    // Central two-dart paths, one per old edge.
    let mut stub_of: HashMap<DartId, DartId> = HashMap::new();
    for d in 0..cd.dart_count() {
        if cd.label_of(d).sign < 0 {
            continue;
        }
        let td = cd.twin_of(d);
        let p = cd.origin_of(d);
        let q = cd.origin_of(td);
        let lab = *cd.label_of(d);
        let jp = junction_of[&(p, d)];
        let jq = junction_of[&(q, td)];
        let mid = nm.new_vertex();
        let c1 = nm.new_edge(jp, mid, Letter::pos(lab.gen));
        let c2 = nm.new_edge(mid, jq, Letter::neg(lab.colour));
        nm.rotations[mid] = vec![nm.twin[c1], c2];
        stub_of.insert(d, c1);
        stub_of.insert(td, nm.twin[c2]);
    }

    // Rotations at centres and junctions.
    for v in 0..cd.vertex_count() {
        let slots = &slots_per_vertex[v];
        if let Some(c) = centre_of[v] {
            let mut rot = Vec::new();
            for (ri, (junction, darts)) in slots.iter().enumerate() {
                if let Some(&first) = chain_first.get(&(v, ri)) {
                    rot.push(first);
                    let last = chain_last[&(v, ri)];
                    let mut jrot = vec![nm.twin[last]];
                    jrot.extend(darts.iter().map(|&d| stub_of[&d]));
                    nm.rotations[*junction] = jrot;
                } else {
                    rot.extend(darts.iter().map(|&d| stub_of[&d]));
                }
            }
            nm.rotations[c] = rot;
        } else {
            let (junction, darts) = &slots[0];
            nm.rotations[*junction] = darts.iter().map(|&d| stub_of[&d]).collect();
        }
    }

    // Base and boundary.
    let b0 = cd.boundary()[0];
    let old_base = cd.base();
    let base_run = run_index_of_dart[&b0];
    let expected_first = chain_first
        .get(&(old_base, base_run))
        .copied()
        .unwrap_or(stub_of[&b0]);
    let new_base = nm.origin[expected_first];

    let mut rot_pos: HashMap<DartId, (usize, usize)> = HashMap::new();
    for (v, rot) in nm.rotations.iter().enumerate() {
        for (i, &d) in rot.iter().enumerate() {
            rot_pos.insert(d, (v, i));
        }
    }
    let next_in_face = |d: DartId| -> DartId {
        let t = nm.twin[d];
        let (v, i) = rot_pos[&t];
        nm.rotations[v][(i + 1) % nm.rotations[v].len()]
    };
    let outer_seed = stub_of[&cd.twin_of(b0)];
    let mut outer_orbit = Vec::new();
    let mut d = outer_seed;
    loop {
        outer_orbit.push(d);
        d = next_in_face(d);
        if d == outer_seed {
            break;
        }
    }
    let mut boundary: Vec<DartId> = outer_orbit.iter().rev().map(|&d| nm.twin[d]).collect();
    let start = boundary
        .iter()
        .position(|&d| d == expected_first)
        .ok_or(DiagramError::BoundaryMismatch)?;
    boundary.rotate_left(start);

    Diagram::from_parts(nm.origin, nm.twin, nm.label, nm.rotations, new_base, boundary)
}

// ---------------------------------------------------------------------------
// Cutting along corridors

/// Which side of a corridor the cut runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutSide {
    Left,
    Right,
}

/// A corridor chosen for cutting, identified by the boundary letter index
/// (within the first arc) of the edge where it starts.
#[derive(Clone, Copy, Debug)]
pub struct CorridorCut {
    pub start: usize,
    pub side: CutSide,
}

/// Cut a van Kampen diagram for `w w'^-1` along disjoint boundary-to-
/// boundary corridors, producing a coloured diagram whose regions follow
/// the ladder pattern `w_i <u_i>_{a_i} w'_i^-1 <u_{i-1}>^-1`.
///
/// `w_col` and `wp_col` colour the two boundary arcs; each cut corridor's
/// side word is coloured by the corridor's generator.
pub fn cut_along_corridors(
    d: &Diagram<Letter>,
    g: &SimplicialGraph,
    w_col: &ColouredWord,
    wp_col: &ColouredWord,
    cuts: &[CorridorCut],
) -> Result<Diagram<ColouredLetter>, DiagramError> {
    let n_w = w_col.len();
    let boundary_word = d.boundary_as_word();
    let expected = crate::coloured::underlying(w_col)
        .concat(&crate::coloured::underlying(wp_col).inverse());
    if boundary_word != expected {
        return Err(DiagramError::BoundaryMismatch);
    }

    struct Chord {
        p: usize,
        q: usize,
        colour: VertexId,
        word: Vec<Letter>,
    }
    let boundary = d.boundary();
    let mut chords: Vec<Chord> = Vec::new();
    let mut used_cells: Vec<FaceId> = Vec::new();
    for cut in cuts {
        if cut.start >= n_w {
            return Err(DiagramError::NotBoundaryToBoundary);
        }
        let start_dart = boundary[cut.start];
        let band = d.trace_band(start_dart)?;
        if band.is_annulus {
            return Err(DiagramError::NotBoundaryToBoundary);
        }
        for c in &band.cells {
            if used_cells.contains(c) {
                return Err(DiagramError::CorridorsCross);
            }
        }
        used_cells.extend(band.cells.iter().copied());
        let boundary_pos = |dart: DartId| -> Option<usize> {
            boundary
                .iter()
                .position(|&b| b == dart || b == d.twin_of(dart))
        };
        let first = *band.crossed.first().unwrap();
        let last = *band.crossed.last().unwrap();
        let (w_end, wp_end, oriented) = match (boundary_pos(first), boundary_pos(last)) {
            (Some(a), Some(b)) if a < n_w && b >= n_w => (a, b, band.crossed.clone()),
            (Some(a), Some(b)) if b < n_w && a >= n_w => {
                let mut rev = band.crossed.clone();
                rev.reverse();
                (b, a, rev)
            }
            _ => return Err(DiagramError::NotBoundaryToBoundary),
        };
        if w_end != cut.start {
            return Err(DiagramError::NotBoundaryToBoundary);
        }
        // Walk the chosen side of the band from the w arc to the w' arc.
        let side_vertex = |pos_dart: DartId| -> usize {
            match cut.side {
                CutSide::Left => d.origin_of(pos_dart),
                CutSide::Right => d.head_of(pos_dart),
            }
        };
        let mut side_word = Vec::new();
        for win in oriented.windows(2) {
            let (a, b) = (side_vertex(win[0]), side_vertex(win[1]));
            let dart = d
                .rotation(a)
                .iter()
                .copied()
                .find(|&x| d.head_of(x) == b && d.label_of(x).gen != band.generator)
                .ok_or_else(|| DiagramError::MalformedMap("broken corridor side".into()))?;
            side_word.push(*d.label_of(dart));
        }
        // Boundary vertex positions of the endpoints: the boundary edge at
        // letter index i runs from boundary vertex i to vertex i + 1.
        let endpoint_pos = |letter_pos: usize, pos_dart: DartId| -> usize {
            let v = side_vertex(pos_dart);
            if d.origin_of(boundary[letter_pos]) == v {
                letter_pos
            } else {
                letter_pos + 1
            }
        };
        let p = endpoint_pos(w_end, *oriented.first().unwrap());
        let q = endpoint_pos(wp_end, *oriented.last().unwrap());
        chords.push(Chord {
            p,
            q,
            colour: band.generator,
            word: side_word,
        });
    }
    chords.sort_by_key(|c| c.p);
    for pair in chords.windows(2) {
        if pair[0].p == pair[1].p || pair[0].q <= pair[1].q {
            // Chords must be nested consistently along the two arcs: later
            // along w means earlier along the reversed w' arc.
            return Err(DiagramError::CorridorsCross);
        }
    }

    // Assemble the coloured ladder.
    let mut labels: Vec<ColouredLetter> = w_col.letters().to_vec();
    labels.extend(wp_col.inverse().letters().iter().copied());
    let total = labels.len();
    let mut builder = DiagramBuilder::cycle(labels);
    for chord in &chords {
        // Endpoints may land on the far corner where the arcs meet, but
        // never on the base vertex, and never coincide.
        if chord.p == 0 || chord.p > n_w || chord.q < n_w || chord.q >= total || chord.p == chord.q
        {
            return Err(DiagramError::NotBoundaryToBoundary);
        }
        if chord.word.is_empty() {
            return Err(DiagramError::NotBoundaryToBoundary);
        }
        let pos_a = builder
            .face_position_of_vertex(0, chord.p, 0)
            .ok_or(DiagramError::NotBoundaryToBoundary)?;
        let pos_b = builder
            .face_position_of_vertex(0, chord.q, 0)
            .ok_or(DiagramError::NotBoundaryToBoundary)?;
        let mut chord_labels = Vec::with_capacity(chord.word.len());
        for l in &chord.word {
            let cl = ColouredLetter::new(g, l.gen, chord.colour, l.sign)
                .map_err(|_| DiagramError::MalformedMap("side letter does not commute".into()))?;
            chord_labels.push(cl);
        }
        builder.split_face(0, pos_a, pos_b, chord_labels);
    }
    builder.freeze()
}

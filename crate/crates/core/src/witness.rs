//! Witness word families over essential reducible subgraphs, and the
//! coloured diagram skeletons used to fill bigons and commutators.

use thiserror::Error;

use crate::coloured::{ColouredLetter, ColouredWord};
use crate::diagram::{Diagram, DiagramBuilder, DiagramError};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};
use crate::reducible::is_maximal_reducible_set;
use crate::words::{is_alternating, is_trivial, normal_form, palette, support, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("factor is not irreducible")]
    NotIrreducible,
    #[error("factor has fewer than two vertices")]
    TooSmall,
    #[error("vertex set is not an essential maximal reducible subgraph")]
    NotEssential,
    #[error("support of the word is irreducible")]
    SupportIrreducible,
    #[error("colour does not commute with the word")]
    ColourClash,
    #[error("the words have no common colour")]
    NoCommonColour,
    #[error("constructor precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A closed walk in the complement of `factor` visiting every vertex, with
/// consecutive entries non-adjacent in `factor`. Deterministic: the
/// depth-first tree of the complement from the least vertex, traversed
/// with backtracking. Length at most twice the vertex count.
pub fn noncommuting_closed_walk(factor: &SimplicialGraph) -> Result<Vec<VertexId>, WitnessError> {
    let n = factor.vertex_count();
    if n < 2 {
        return Err(WitnessError::TooSmall);
    }
    let compl = factor.complement();
    if !compl.is_connected() {
        return Err(WitnessError::NotIrreducible);
    }
    fn dfs(compl: &SimplicialGraph, v: VertexId, visited: &mut [bool], walk: &mut Vec<VertexId>) {
        visited[v] = true;
        walk.push(v);
        for u in compl.vertices() {
            if compl.adjacent(v, u) && !visited[u] {
                dfs(compl, u, visited, walk);
                walk.push(v);
            }
        }
    }
    let mut walk = Vec::new();
    let mut visited = vec![false; n];
    dfs(&compl, 0, &mut visited, &mut walk);
    debug_assert!(walk.len() <= 2 * n);
    Ok(walk)
}

/// The witness family over an essential maximal reducible subgraph: the
/// two non-commuting closed walks and the alternating words built from
/// them, with the commutator word null-homotopic by construction.
#[derive(Clone, Debug)]
pub struct WitnessFamily {
    pub lambda: VertexSet,
    pub factor_a: VertexSet,
    pub factor_b: VertexSet,
    /// a_0 .. a_k with a_k = a_0, consecutive entries non-commuting.
    pub a_seq: Vec<VertexId>,
    pub b_seq: Vec<VertexId>,
    pub n: usize,
    pub w_prime: Word,
    pub w_second: Word,
    /// The commutator [w_prime, w_second].
    pub w: Word,
}

impl WitnessFamily {
    pub fn k(&self) -> usize {
        self.a_seq.len() - 1
    }

    pub fn l(&self) -> usize {
        self.b_seq.len() - 1
    }
}

/// Build the witness words for parameter `n` over the essential maximal
/// reducible set `lambda` of `g`.
pub fn witness_words(
    g: &SimplicialGraph,
    lambda: &VertexSet,
    n: usize,
) -> Result<WitnessFamily, WitnessError> {
    assert!(n >= 1);
    if !is_maximal_reducible_set(g, lambda).unwrap_or(false) {
        return Err(WitnessError::NotEssential);
    }
    let sub = g.induced(lambda).expect("valid subset");
    let dec = sub.join_decompose().expect("nonempty");
    if !dec.is_essential() {
        return Err(WitnessError::NotEssential);
    }
    let lift = |s: &VertexSet| VertexSet::new(s.ids().iter().map(|&i| lambda.ids()[i]).collect());
    let factor_a = lift(&dec.factors[0]);
    let factor_b = lift(&dec.factors[1]);
    let walk_in = |f: &VertexSet| -> Result<Vec<VertexId>, WitnessError> {
        let fg = g.induced(f).expect("valid subset");
        let local = noncommuting_closed_walk(&fg)?;
        Ok(local.into_iter().map(|i| f.ids()[i]).collect())
    };
    let a_seq = walk_in(&factor_a)?;
    let b_seq = walk_in(&factor_b)?;
    let (a1, b1) = (a_seq[1], b_seq[1]);

    // One period upward (a_1 b_1' ... a_k b_1') and the balanced return
    // (b_1 a_1' ... b_1 a_k'), each repeated n times.
    let mut up_a = Vec::new();
    let mut down_a = Vec::new();
    for &ai in &a_seq[1..] {
        up_a.push(Letter::pos(ai));
        up_a.push(Letter::neg(b1));
        down_a.push(Letter::pos(b1));
        down_a.push(Letter::neg(ai));
    }
    let w_prime = Word(up_a).pow(n as i32).concat(&Word(down_a).pow(n as i32));

    let mut up_b = Vec::new();
    let mut down_b = Vec::new();
    for &bj in &b_seq[1..] {
        up_b.push(Letter::pos(bj));
        up_b.push(Letter::neg(a1));
        down_b.push(Letter::pos(a1));
        down_b.push(Letter::neg(bj));
    }
    let w_second = Word(up_b).pow(n as i32).concat(&Word(down_b).pow(n as i32));

    let w = w_prime
        .concat(&w_second)
        .concat(&w_prime.inverse())
        .concat(&w_second.inverse());

    let k = a_seq.len() - 1;
    let l = b_seq.len() - 1;
    debug_assert_eq!(w_prime.len(), 4 * k * n);
    debug_assert_eq!(w_second.len(), 4 * l * n);
    debug_assert_eq!(w.len(), 8 * n * (k + l));
    debug_assert!(is_alternating(&w_prime) && is_alternating(&w_second) && is_alternating(&w));
    if !is_trivial(g, &w) {
        return Err(WitnessError::PreconditionFailed(
            "witness commutator is not null-homotopic".into(),
        ));
    }
    Ok(WitnessFamily {
        lambda: lambda.clone(),
        factor_a,
        factor_b,
        a_seq,
        b_seq,
        n,
        w_prime,
        w_second,
        w,
    })
}

fn mono(
    g: &SimplicialGraph,
    w: &Word,
    colour: VertexId,
    err: WitnessError,
) -> Result<ColouredWord, WitnessError> {
    ColouredWord::monochrome(g, w, colour).map_err(|_| err)
}

/// Split the element of `w` along a join decomposition of its support:
/// the stable partition of the normal form into the letters of the first
/// factor and the rest. Valid because cross-factor letters commute.
fn join_split(g: &SimplicialGraph, w: &Word) -> Result<(Word, Word), WitnessError> {
    let supp = support(w);
    if supp.is_empty() {
        return Err(WitnessError::SupportIrreducible);
    }
    let sub = g.induced(&supp).expect("valid subset");
    let dec = sub.join_decompose().expect("nonempty");
    if !dec.is_reducible() {
        return Err(WitnessError::SupportIrreducible);
    }
    let first: VertexSet =
        VertexSet::new(dec.factors[0].ids().iter().map(|&i| supp.ids()[i]).collect());
    let nf = normal_form(g, w);
    let mut w1 = Vec::new();
    let mut w2 = Vec::new();
    for &l in nf.letters() {
        if first.contains(l.gen) {
            w1.push(l);
        } else {
            w2.push(l);
        }
    }
    if w1.is_empty() || w2.is_empty() {
        return Err(WitnessError::PreconditionFailed(
            "join split degenerates to one factor".into(),
        ));
    }
    Ok((Word(w1), Word(w2)))
}

/// Four-region coloured diagram for the bigon `<w>_a <w>_b'` of a word
/// with reducible support: the element is split as w' w'' along the join,
/// giving two monochromatic regions and two smaller bigons.
pub fn bigon_split_diagram(
    g: &SimplicialGraph,
    w: &Word,
    a: VertexId,
    b: VertexId,
) -> Result<Diagram<ColouredLetter>, WitnessError> {
    let pal = palette(g, w);
    if !pal.contains(a) || !pal.contains(b) {
        return Err(WitnessError::ColourClash);
    }
    let (wp, ws) = join_split(g, w)?;
    let wa = mono(g, w, a, WitnessError::ColourClash)?;
    let wb = mono(g, w, b, WitnessError::ColourClash)?;
    let mut labels = wa.letters().to_vec();
    labels.extend(wb.inverse().letters().iter().copied());
    let mut builder = DiagramBuilder::cycle(labels);

    let chord1: Vec<ColouredLetter> = mono(g, &wp, a, WitnessError::ColourClash)?
        .letters()
        .iter()
        .chain(mono(g, &ws, a, WitnessError::ColourClash)?.letters().iter())
        .copied()
        .collect();
    let first_new = builder.dart_count();
    builder.split_face(0, 0, w.len(), chord1);
    // Midpoint between the w' and w'' parts of the chord.
    let m = builder.dart_head(first_new + 2 * (wp.len() - 1));

    let chord2 = mono(g, &wp, b, WitnessError::ColourClash)?.letters().to_vec();
    let pos_a = builder.face_position_of_vertex(0, 0, 0).expect("base on face");
    let pos_m = builder.face_position_of_vertex(0, m, 0).expect("midpoint on face");
    builder.split_face(0, pos_a, pos_m, chord2);

    let chord3 = mono(g, &ws, b, WitnessError::ColourClash)?.letters().to_vec();
    let pos_m = builder.face_position_of_vertex(0, m, 0).expect("midpoint on face");
    let pos_f = builder
        .face_position_of_vertex(0, w.len(), 0)
        .expect("far corner on face");
    builder.split_face(0, pos_m, pos_f, chord3);

    Ok(builder.freeze()?)
}

/// Chain of |w| single-letter bigons `<s_i>_a <s_i>_b'`.
pub fn bigon_necklace(
    g: &SimplicialGraph,
    w: &Word,
    a: VertexId,
    b: VertexId,
) -> Result<Diagram<ColouredLetter>, WitnessError> {
    let pal = palette(g, w);
    if !pal.contains(a) || !pal.contains(b) {
        return Err(WitnessError::ColourClash);
    }
    let k = w.len();
    if k == 0 {
        let d: Diagram<ColouredLetter> =
            Diagram::from_parts(vec![], vec![], vec![], vec![vec![]], 0, vec![])?;
        return Ok(d);
    }
    // Direct construction: vertices p_0..p_k, top edges coloured a, bottom
    // edges coloured b, one bigon face per letter.
    let mut origin = Vec::new();
    let mut twin = Vec::new();
    let mut label: Vec<ColouredLetter> = Vec::new();
    let new_edge = |origin: &mut Vec<usize>,
                        twin: &mut Vec<usize>,
                        label: &mut Vec<ColouredLetter>,
                        from: usize,
                        to: usize,
                        lab: ColouredLetter|
     -> usize {
        let d = origin.len();
        origin.push(from);
        twin.push(d + 1);
        label.push(lab);
        origin.push(to);
        twin.push(d);
        label.push(lab.inverse());
        d
    };
    let mut tops = Vec::with_capacity(k);
    let mut bottoms = Vec::with_capacity(k);
    for (i, l) in w.letters().iter().enumerate() {
        let ta = ColouredLetter::new(g, l.gen, a, l.sign).map_err(|_| WitnessError::ColourClash)?;
        let tb = ColouredLetter::new(g, l.gen, b, l.sign).map_err(|_| WitnessError::ColourClash)?;
        tops.push(new_edge(&mut origin, &mut twin, &mut label, i, i + 1, ta));
        bottoms.push(new_edge(&mut origin, &mut twin, &mut label, i, i + 1, tb));
    }
    let mut rotations = vec![Vec::new(); k + 1];
    rotations[0] = vec![tops[0], bottoms[0]];
    for i in 1..k {
        rotations[i] = vec![twin[tops[i - 1]], twin[bottoms[i - 1]], bottoms[i], tops[i]];
    }
    rotations[k] = vec![twin[tops[k - 1]], twin[bottoms[k - 1]]];
    let mut boundary: Vec<usize> = tops.clone();
    boundary.extend(bottoms.iter().rev().map(|&d| twin[d]));
    Ok(Diagram::from_parts(origin, twin, label, rotations, 0, boundary)?)
}

fn check_commutator_invariants(
    g: &SimplicialGraph,
    w1: &Word,
    a: VertexId,
    w2: &Word,
    b: VertexId,
) -> Result<(), WitnessError> {
    let pal1 = palette(g, w1);
    let pal2 = palette(g, w2);
    if !pal1.contains(a) || !pal2.contains(b) {
        return Err(WitnessError::ColourClash);
    }
    let ok = support(w2).ids().iter().all(|&v| pal1.contains(v))
        && support(w1).ids().iter().all(|&v| pal2.contains(v));
    if ok {
        Ok(())
    } else {
        Err(WitnessError::PreconditionFailed(
            "coloured commutator support/palette containments fail".into(),
        ))
    }
}

fn commutator_cycle(
    g: &SimplicialGraph,
    w1: &Word,
    a: VertexId,
    w2: &Word,
    b: VertexId,
) -> Result<DiagramBuilder<ColouredLetter>, WitnessError> {
    let w1a = mono(g, w1, a, WitnessError::ColourClash)?;
    let w2b = mono(g, w2, b, WitnessError::ColourClash)?;
    let mut labels = w1a.letters().to_vec();
    labels.extend(w2b.letters().iter().copied());
    labels.extend(w1a.inverse().letters().iter().copied());
    labels.extend(w2b.inverse().letters().iter().copied());
    Ok(DiagramBuilder::cycle(labels))
}

fn pos_of(b: &DiagramBuilder<ColouredLetter>, face: usize, v: usize) -> usize {
    b.face_position_of_vertex(face, v, 0).expect("corner on working face")
}

/// Five-region coloured diagram for the commutator of two monochromatic
/// words sharing a palette colour `c`: four bigon lenses around an inner
/// monochromatic commutator.
pub fn commutator_common_colour(
    g: &SimplicialGraph,
    w1: &Word,
    a: VertexId,
    w2: &Word,
    b: VertexId,
    c: VertexId,
) -> Result<Diagram<ColouredLetter>, WitnessError> {
    check_commutator_invariants(g, w1, a, w2, b)?;
    if !palette(g, w1).contains(c) || !palette(g, w2).contains(c) {
        return Err(WitnessError::NoCommonColour);
    }
    if w1.is_empty() || w2.is_empty() {
        return Err(WitnessError::PreconditionFailed("empty commutator side".into()));
    }
    let n1 = w1.len();
    let n2 = w2.len();
    let (tl, bl, br, tr) = (0, n1, n1 + n2, 2 * n1 + n2);
    let mut builder = commutator_cycle(g, w1, a, w2, b)?;

    // Left lens.
    let chord = mono(g, w1, c, WitnessError::NoCommonColour)?.letters().to_vec();
    let (pa, pb) = (pos_of(&builder, 0, tl), pos_of(&builder, 0, bl));
    builder.split_face(0, pa, pb, chord);
    // Bottom lens.
    let chord = mono(g, w2, c, WitnessError::NoCommonColour)?.letters().to_vec();
    let (pa, pb) = (pos_of(&builder, 0, bl), pos_of(&builder, 0, br));
    builder.split_face(0, pa, pb, chord);
    // Right lens: the inner edge runs downward against the boundary arc,
    // so the chord is entered as the inverse word from BR to TR.
    let chord = mono(g, w1, c, WitnessError::NoCommonColour)?
        .inverse()
        .letters()
        .to_vec();
    let (pa, pb) = (pos_of(&builder, 0, br), pos_of(&builder, 0, tr));
    builder.split_face(0, pa, pb, chord);
    // Top lens; the remaining face is the inner commutator.
    let chord = mono(g, w2, c, WitnessError::NoCommonColour)?.letters().to_vec();
    let (pa, pb) = (pos_of(&builder, 0, tl), pos_of(&builder, 0, tr));
    builder.split_face(0, pa, pb, chord);

    Ok(builder.freeze()?)
}

/// Four-region coloured diagram for a commutator whose first side has
/// reducible support: two monochromatic lenses and two smaller coloured
/// commutators.
pub fn commutator_split(
    g: &SimplicialGraph,
    w1: &Word,
    a: VertexId,
    w2: &Word,
    b: VertexId,
) -> Result<Diagram<ColouredLetter>, WitnessError> {
    check_commutator_invariants(g, w1, a, w2, b)?;
    if w1.is_empty() || w2.is_empty() {
        return Err(WitnessError::PreconditionFailed("empty commutator side".into()));
    }
    let (wp, ws) = join_split(g, w1)?;
    let n1 = w1.len();
    let n2 = w2.len();
    let (tl, bl, br, tr) = (0, n1, n1 + n2, 2 * n1 + n2);
    let mut builder = commutator_cycle(g, w1, a, w2, b)?;

    // Left lens via the inner path <w'>_a <w''>_a; remember the midpoint.
    let chord1: Vec<ColouredLetter> = mono(g, &wp, a, WitnessError::ColourClash)?
        .letters()
        .iter()
        .chain(mono(g, &ws, a, WitnessError::ColourClash)?.letters().iter())
        .copied()
        .collect();
    let first_new = builder.dart_count();
    let (pa, pb) = (pos_of(&builder, 0, tl), pos_of(&builder, 0, bl));
    builder.split_face(0, pa, pb, chord1);
    let ml = builder.dart_head(first_new + 2 * (wp.len() - 1));

    // Right lens via the inner path read upward (BR to TR).
    let chord2: Vec<ColouredLetter> = mono(g, &ws, a, WitnessError::ColourClash)?
        .inverse()
        .letters()
        .iter()
        .chain(
            mono(g, &wp, a, WitnessError::ColourClash)?
                .inverse()
                .letters()
                .iter(),
        )
        .copied()
        .collect();
    let first_new = builder.dart_count();
    let (pa, pb) = (pos_of(&builder, 0, br), pos_of(&builder, 0, tr));
    builder.split_face(0, pa, pb, chord2);
    let mr = builder.dart_head(first_new + 2 * (ws.len() - 1));

    // Middle chord <w2>_b from the left midpoint to the right midpoint.
    let chord3 = mono(g, w2, b, WitnessError::ColourClash)?.letters().to_vec();
    let (pa, pb) = (pos_of(&builder, 0, ml), pos_of(&builder, 0, mr));
    builder.split_face(0, pa, pb, chord3);

    Ok(builder.freeze()?)
}

/// The subdivided commutator of a monochromatic word against `<w2>_b`:
/// 3k+1 coloured bigons and k monochromatic commutator cells, for
/// k = |w1|.
pub fn commutator_grid(
    g: &SimplicialGraph,
    w1: &Word,
    a: VertexId,
    w2: &Word,
    b: VertexId,
) -> Result<Diagram<ColouredLetter>, WitnessError> {
    check_commutator_invariants(g, w1, a, w2, b)?;
    // The two sides together with the opposite colours must span a join.
    let s1: Vec<VertexId> = support(w1).union(&VertexSet::new(vec![b])).ids().to_vec();
    let s2: Vec<VertexId> = support(w2).union(&VertexSet::new(vec![a])).ids().to_vec();
    for &u in &s1 {
        for &v in &s2 {
            if u == v || !g.adjacent(u, v) {
                return Err(WitnessError::PreconditionFailed(
                    "the two sides do not span a join".into(),
                ));
            }
        }
    }
    let k = w1.len();
    if k == 0 {
        if w2.is_empty() {
            let d: Diagram<ColouredLetter> =
                Diagram::from_parts(vec![], vec![], vec![], vec![vec![]], 0, vec![])?;
            return Ok(d);
        }
        let w2b = mono(g, w2, b, WitnessError::ColourClash)?;
        let mut labels = w2b.letters().to_vec();
        labels.extend(w2b.inverse().letters().iter().copied());
        return Ok(DiagramBuilder::cycle(labels).freeze()?);
    }
    if w2.is_empty() {
        return Err(WitnessError::PreconditionFailed("empty second side".into()));
    }
    let n2 = w2.len();
    let letters1 = w1.letters().to_vec();
    let mut builder = commutator_cycle(g, w1, a, w2, b)?;
    // Corner vertices: left column L_i = i, right column R_j at boundary
    // vertex k + n2 + (k - j).
    let l_v = |i: usize| i;
    let r_v = |j: usize| k + n2 + (k - j);

    // Left inner verticals.
    for (i, l) in letters1.iter().enumerate() {
        let lab = ColouredLetter::new(g, l.gen, l.gen, l.sign).expect("self colour");
        let (pa, pb) = (pos_of(&builder, 0, l_v(i)), pos_of(&builder, 0, l_v(i + 1)));
        builder.split_face(0, pa, pb, vec![lab]);
    }
    // Right inner verticals, oriented downward against the boundary arc.
    for (i, l) in letters1.iter().enumerate() {
        let lab = ColouredLetter::new(g, l.gen, l.gen, -l.sign).expect("self colour");
        let (pa, pb) = (pos_of(&builder, 0, r_v(i + 1)), pos_of(&builder, 0, r_v(i)));
        builder.split_face(0, pa, pb, vec![lab]);
    }

    // Horizontal rows, top to bottom. After each split the remainder is
    // the freshly pushed face.
    let mut cur = 0usize;
    let row_word = |colour: VertexId| -> Result<Vec<ColouredLetter>, WitnessError> {
        Ok(mono(g, w2, colour, WitnessError::PreconditionFailed("row colour clash".into()))?
            .letters()
            .to_vec())
    };
    // Top bigon row: <w2>_{s_1} under the <w2>_b arc.
    let row = row_word(letters1[0].gen)?;
    let (pa, pb) = (pos_of(&builder, cur, l_v(0)), pos_of(&builder, cur, r_v(0)));
    builder.split_face(cur, pa, pb, row);
    cur = builder.face_count() - 1;
    for i in 1..k {
        // Close commutator cell i with the upper path <w2>_{s_i} ...
        let row = row_word(letters1[i - 1].gen)?;
        let (pa, pb) = (pos_of(&builder, cur, l_v(i)), pos_of(&builder, cur, r_v(i)));
        builder.split_face(cur, pa, pb, row);
        cur = builder.face_count() - 1;
        // ... then open the level bigon with the lower path <w2>_{s_{i+1}}.
        let row = row_word(letters1[i].gen)?;
        let (pa, pb) = (pos_of(&builder, cur, l_v(i)), pos_of(&builder, cur, r_v(i)));
        builder.split_face(cur, pa, pb, row);
        cur = builder.face_count() - 1;
    }
    // Close commutator cell k; the remaining face is the bottom bigon.
    let row = row_word(letters1[k - 1].gen)?;
    let (pa, pb) = (pos_of(&builder, cur, l_v(k)), pos_of(&builder, cur, r_v(k)));
    builder.split_face(cur, pa, pb, row);

    Ok(builder.freeze()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloured::underlying;
    use crate::corpus;
    use crate::words::words_equal;

    #[test]
    fn closed_walk_examples() {
        let f = SimplicialGraph::new(&["x", "y"], &[]).unwrap();
        assert_eq!(noncommuting_closed_walk(&f).unwrap(), vec![0, 1, 0]);

        let single = SimplicialGraph::new(&["x"], &[]).unwrap();
        assert_eq!(noncommuting_closed_walk(&single), Err(WitnessError::TooSmall));

        let edge = SimplicialGraph::new(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(noncommuting_closed_walk(&edge), Err(WitnessError::NotIrreducible));

        // Path factor C-D-E-F: complement connected, walk visits all.
        let g1 = corpus::gamma1();
        let path = g1.induced(&VertexSet::from_iter([2, 3, 4, 5])).unwrap();
        let walk = noncommuting_closed_walk(&path).unwrap();
        assert_eq!(walk.first(), walk.last());
        assert!(walk.len() <= 2 * path.vertex_count());
        let visited: std::collections::BTreeSet<_> = walk.iter().copied().collect();
        assert_eq!(visited.len(), 4);
        for pair in walk.windows(2) {
            assert!(!path.adjacent(pair[0], pair[1]));
            assert_ne!(pair[0], pair[1]);
        }
    }

    #[test]
    fn witness_words_on_gamma1() {
        let g1 = corpus::gamma1();
        let fam = witness_words(&g1, &g1.vertex_set(), 1).unwrap();
        assert_eq!(fam.k(), 2);
        assert_eq!(fam.l(), 6);
        assert_eq!(fam.w_prime.len(), 4 * fam.k());
        assert_eq!(fam.w_second.len(), 4 * fam.l());
        assert_eq!(fam.w.len(), 8 * (fam.k() + fam.l()));
        assert!(is_alternating(&fam.w));
        assert_eq!(crate::words::height(&fam.w_prime), 0);

        // w' and w'' commute in the ambient group.
        let lhs = fam.w_prime.concat(&fam.w_second);
        let rhs = fam.w_second.concat(&fam.w_prime);
        assert!(words_equal(&g1, &lhs, &rhs));

        for n in 2..=3 {
            let fam = witness_words(&g1, &g1.vertex_set(), n).unwrap();
            assert_eq!(fam.w.len(), 8 * n * (fam.k() + fam.l()));
            assert!(is_trivial(&g1, &fam.w));
        }
    }

    #[test]
    fn witness_words_reject_non_essential() {
        let g3 = corpus::gamma3();
        // The square {A,B,C,E} is reducible but not maximal.
        let square = VertexSet::from_iter([0, 1, 2, 4]);
        assert!(matches!(
            witness_words(&g3, &square, 1),
            Err(WitnessError::NotEssential)
        ));
        let k3 = corpus::k3();
        assert!(matches!(
            witness_words(&k3, &k3.vertex_set(), 1),
            Err(WitnessError::NotEssential)
        ));
    }

    fn cyclic_word_eq(a: &ColouredWord, b: &ColouredWord) -> bool {
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|s| (0..a.len()).all(|i| a.letters()[(s + i) % a.len()] == b.letters()[i]))
    }

    fn assert_some_region(d: &Diagram<ColouredLetter>, expect: &ColouredWord) {
        let found = d
            .bounded_faces()
            .any(|f| cyclic_word_eq(&d.face_as_coloured(f), expect));
        assert!(found, "missing region {:?}", expect);
    }

    #[test]
    fn bigon_split_on_oct() {
        // Support inside the 4-vertex join {a1,a2} * {b1,b2} of OCT,
        // coloured by the opposite factor's vertices c1, c2.
        let oct = corpus::oct();
        let w = Word::parse(&oct, "a1 b1 a2 b2'").unwrap();
        let c1 = oct.vertex("c1").unwrap();
        let c2 = oct.vertex("c2").unwrap();
        let d = bigon_split_diagram(&oct, &w, c1, c2).unwrap();
        assert_eq!(d.area(), 4);
        d.validate_coarse(&oct).unwrap();
        for f in d.bounded_faces() {
            assert!(is_trivial(&oct, &d.face_as_word(f)));
        }
        // The two pure-bigon regions.
        let wp = Word::parse(&oct, "a1 a2").unwrap();
        let ws = Word::parse(&oct, "b1 b2'").unwrap();
        let expect3 = ColouredWord::monochrome(&oct, &wp, c1)
            .unwrap()
            .concat(&ColouredWord::monochrome(&oct, &wp, c2).unwrap().inverse());
        let expect4 = ColouredWord::monochrome(&oct, &ws, c1)
            .unwrap()
            .concat(&ColouredWord::monochrome(&oct, &ws, c2).unwrap().inverse());
        assert_some_region(&d, &expect3);
        assert_some_region(&d, &expect4);
    }

    #[test]
    fn bigon_split_rejects_irreducible_support() {
        let g1 = corpus::gamma1();
        let w = Word::parse(&g1, "C").unwrap();
        let a = g1.vertex("A").unwrap();
        let b = g1.vertex("B").unwrap();
        assert!(matches!(
            bigon_split_diagram(&g1, &w, a, b),
            Err(WitnessError::SupportIrreducible)
        ));
    }

    #[test]
    fn necklace_examples() {
        let g1 = corpus::gamma1();
        let a = g1.vertex("A").unwrap();
        let b = g1.vertex("B").unwrap();
        let w = Word::parse(&g1, "C D' E").unwrap();
        let d = bigon_necklace(&g1, &w, a, b).unwrap();
        assert_eq!(d.area(), 3);
        d.validate_coarse(&g1).unwrap();
        let boundary = d.boundary_as_coloured();
        let expect = ColouredWord::monochrome(&g1, &w, a)
            .unwrap()
            .concat(&ColouredWord::monochrome(&g1, &w, b).unwrap().inverse());
        assert_eq!(boundary, expect);

        let single = bigon_necklace(&g1, &Word::parse(&g1, "C").unwrap(), a, b).unwrap();
        assert_eq!(single.area(), 1);

        let empty = bigon_necklace(&g1, &Word::empty(), a, b).unwrap();
        assert_eq!(empty.area(), 0);
    }

    #[test]
    fn common_colour_commutator() {
        let oct = corpus::oct();
        let w1 = Word::parse(&oct, "a1 a2 a1'").unwrap();
        let w2 = Word::parse(&oct, "b1 b2").unwrap();
        let c1 = oct.vertex("c1").unwrap();
        let c2 = oct.vertex("c2").unwrap();
        let d = commutator_common_colour(&oct, &w1, c1, &w2, c1, c2).unwrap();
        assert_eq!(d.area(), 5);
        d.validate_coarse(&oct).unwrap();
        // The inner region is the monochromatic commutator in colour c2.
        let inner = ColouredWord::monochrome(&oct, &w1, c2)
            .unwrap()
            .concat(&ColouredWord::monochrome(&oct, &w2, c2).unwrap())
            .concat(&ColouredWord::monochrome(&oct, &w1, c2).unwrap().inverse())
            .concat(&ColouredWord::monochrome(&oct, &w2, c2).unwrap().inverse());
        assert_some_region(&d, &inner);

        assert!(matches!(
            commutator_common_colour(&oct, &w1, c1, &w2, c1, oct.vertex("a1").unwrap()),
            Err(WitnessError::NoCommonColour)
        ));
    }

    #[test]
    fn split_commutator() {
        let oct = corpus::oct();
        // supp(w1) = {a1, b1} is reducible; w2 lives in the c factor.
        let w1 = Word::parse(&oct, "a1 b1").unwrap();
        let w2 = Word::parse(&oct, "c1 c2'").unwrap();
        let ca = oct.vertex("c1").unwrap();
        let cb = oct.vertex("a2").unwrap();
        let d = commutator_split(&oct, &w1, ca, &w2, cb).unwrap();
        assert_eq!(d.area(), 4);
        d.validate_coarse(&oct).unwrap();
        for f in d.bounded_faces() {
            assert!(is_trivial(&oct, &d.face_as_word(f)));
        }
    }

    #[test]
    fn grid_commutator_counts() {
        // w1 over the a-factor coloured by b1, w2 over the b-factor
        // coloured by a1; the supports plus opposite colours span the
        // join {a1,a2} * {b1,b2}.
        let oct = corpus::oct();
        let a = oct.vertex("b1").unwrap();
        let b = oct.vertex("a1").unwrap();
        let w2 = Word::parse(&oct, "b1 b2").unwrap();
        for k in 1..=5 {
            let letters: Vec<&str> = ["a1", "a2"].iter().cycle().take(k).copied().collect();
            let w1 = Word::parse(&oct, &letters.join(" ")).unwrap();
            let d = commutator_grid(&oct, &w1, a, &w2, b).unwrap();
            assert_eq!(d.area(), 4 * k + 1, "area for k={k}");
            d.validate_coarse(&oct).unwrap();
            // Commutator cells are the regions of length 2|w2| + 2.
            let cells = d
                .bounded_faces()
                .filter(|&f| d.face_darts(f).len() == 2 * w2.len() + 2)
                .count();
            assert_eq!(cells, k);
            assert_eq!(d.area() - cells, 3 * k + 1);
        }
        let d = commutator_grid(&oct, &Word::empty(), a, &w2, b).unwrap();
        assert_eq!(d.area(), 1);
    }

    #[test]
    fn constructors_produce_coarse_diagrams_with_null_homotopic_regions() {
        let oct = corpus::oct();
        let c1 = oct.vertex("c1").unwrap();
        let c2 = oct.vertex("c2").unwrap();
        for wtxt in ["a1 b1", "a1 a2 b1", "a1 b1 a2 b2'"] {
            let w = Word::parse(&oct, wtxt).unwrap();
            let d = bigon_necklace(&oct, &w, c1, c2).unwrap();
            d.validate_coarse(&oct).unwrap();
            for f in d.bounded_faces() {
                assert!(is_trivial(&oct, &d.face_as_word(f)));
                assert_eq!(underlying(&d.face_as_coloured(f)).len(), 2);
            }
        }
    }
}

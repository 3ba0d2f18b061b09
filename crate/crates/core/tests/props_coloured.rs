//! Property suites for chromatic minimality and efficiency: the
//! geodesic-class search against the exhaustive all-words reference, the
//! efficiency of constructed colourings, and the flat-norm sandwich for
//! pushdowns of efficient words.

mod common;

use common::{random_graph, random_word, rng};
use dehnscope_core::coloured::{
    blocks, chromatic_number, is_efficient, make_efficient, pushdown, underlying,
    ChromaticBruteTable, PushdownConfig,
};
use dehnscope_core::graph::SimplicialGraph;
use dehnscope_core::presentation::{flat_norm, kernel_ball};
use dehnscope_core::words::{
    geodesic_length, height, is_geodesic_word, words_equal, Letter, Word,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn connected_graph(r: &mut ChaCha8Rng, max_n: usize) -> SimplicialGraph {
    loop {
        let n = r.gen_range(2..=max_n);
        let g = random_graph(r, n, 0.55);
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn chromatic_number_matches_exhaustive_search() {
    let mut r = rng(601);
    let mut checked = 0;
    let mut graphs = 0;
    while checked < 220 {
        let g = connected_graph(&mut r, 5);
        graphs += 1;
        // One exhaustive table per graph, shared by several elements.
        let max_len = 5;
        let table = ChromaticBruteTable::build(&g, max_len);
        for _ in 0..12 {
            let len = r.gen_range(0..=4);
            let w = random_word(&mut r, &g, len);
            let glen = geodesic_length(&g, &w);
            if glen + 2 > max_len {
                continue;
            }
            let fast = chromatic_number(&g, &w, 10).unwrap();
            let brute = table.query(&g, &w).expect("element inside the table ball");
            assert_eq!(fast, brute, "chromatic mismatch on {w:?} over {g:?}");
            checked += 1;
        }
        assert!(graphs < 200, "not enough usable samples");
    }
}

#[test]
fn make_efficient_outputs_are_efficient_geodesics() {
    let mut r = rng(602);
    let mut checked = 0;
    while checked < 200 {
        let g = connected_graph(&mut r, 6);
        let len = r.gen_range(0..=6);
        let w = random_word(&mut r, &g, len);
        if geodesic_length(&g, &w) > 8 {
            continue;
        }
        let cw = make_efficient(&g, &w, 10).unwrap();
        let u = underlying(&cw);
        assert!(is_geodesic_word(&g, &u), "underlying word geodesic");
        assert!(words_equal(&g, &u, &w), "same element");
        assert_eq!(is_efficient(&g, &cw, 10), Ok(true));
        assert_eq!(
            blocks(&cw).len(),
            chromatic_number(&g, &w, 10).unwrap(),
            "chromatically minimal"
        );
        checked += 1;
    }
}

#[test]
fn efficient_pushdown_is_sandwiched_by_the_flat_norm() {
    // For an efficient coloured word representing g, the pushdown length
    // lies between the flat norm and (24 |V| + 2) times the flat norm.
    let mut checked = 0;
    let graphs = [
        dehnscope_core::corpus::k3(),
        dehnscope_core::corpus::p4(),
        {
            SimplicialGraph::new(
                &["a", "b", "c", "d", "e"],
                &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("a", "e")],
            )
            .unwrap()
        },
    ];
    for g in &graphs {
        let cfg = PushdownConfig::new(g).unwrap();
        let cap = 8;
        let ball = kernel_ball(g, cap);
        let mut elements: Vec<&Word> = ball.keys().collect();
        elements.sort_by(|a, b| a.0.cmp(&b.0));
        for w in elements.into_iter().take(60) {
            if w.is_empty() {
                continue;
            }
            let norm = ball[w];
            assert_eq!(flat_norm(g, w, cap), Ok(norm));
            let eff = make_efficient(g, w, 12).unwrap();
            let pd = pushdown(&cfg, g, &eff, 0);
            assert!(norm <= pd.len(), "lower bound on {w:?}");
            assert!(
                pd.len() <= (24 * g.vertex_count() + 2) * norm,
                "upper bound on {w:?}: |pd| = {}, norm = {norm}",
                pd.len()
            );
            // The pushdown represents the same kernel element.
            assert!(words_equal(g, &pd, w));
            checked += 1;
        }
    }
    assert!(checked >= 100, "too few elements checked: {checked}");
}

#[test]
fn flat_norm_basics_and_lipschitz_spot_checks() {
    let g = dehnscope_core::corpus::p4();
    // Exact flat norm of the balanced commutator of the non-adjacent
    // pair (a, c), frozen from the breadth-first oracle itself.
    let w = Word::parse(&g, "a c a' c'").unwrap();
    assert_eq!(height(&w), 0);
    assert_eq!(flat_norm(&g, &w, 12), Ok(6));

    // Spot checks of the two-sided comparison between the flat norm and
    // word length over tree-edge generators: a tree-edge word of length L
    // translates to an alternating word of length 2L, so the flat norm is
    // at most 2L; conversely the translation of an alternating word has
    // length at most |V| |u| / 2.
    use dehnscope_core::presentation::{phi, psi, TreeLetter, TreeWord};
    let mut r = rng(604);
    for g in [dehnscope_core::corpus::p4(), dehnscope_core::corpus::gamma1()] {
        let tree = g.spanning_tree().unwrap();
        for _ in 0..50 {
            let len = r.gen_range(1..=4);
            let tw = TreeWord(
                (0..len)
                    .map(|_| TreeLetter {
                        edge: tree.edges[r.gen_range(0..tree.edges.len())],
                        sign: if r.gen_bool(0.5) { 1 } else { -1 },
                    })
                    .collect(),
            );
            let u = psi(&tw);
            let norm = flat_norm(&g, &u, 2 * len + 2).unwrap();
            assert!(norm <= 2 * tw.len());

            let pairs = r.gen_range(1..=4);
            let mut letters = Vec::new();
            for _ in 0..pairs {
                letters.push(Letter::pos(r.gen_range(0..g.vertex_count())));
                letters.push(Letter::neg(r.gen_range(0..g.vertex_count())));
            }
            let alt = Word(letters);
            let translated = phi(&tree, &alt).unwrap();
            assert!(2 * translated.len() <= g.vertex_count() * alt.len());
        }
    }
}

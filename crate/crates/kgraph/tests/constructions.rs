mod common;

use common::*;
use kgraph::constructions::{grid, pullback, rose, skew_product_window, MonoidHom};
use kgraph::fixtures::{fixture, fixture_data, fixture_names};
use kgraph::{Degree, IntMatrix, KgError, Shift};
use proptest::prelude::*;

#[test]
fn grid_sizes() {
    let line = grid(1, &Degree(vec![3]));
    assert_eq!((line.vertex_count(), line.edges().len()), (4, 3));
    let cube = grid(3, &Degree(vec![2, 2, 2]));
    assert_eq!((cube.vertex_count(), cube.edges().len()), (27, 54));
    let point = grid(2, &Degree(vec![0, 0]));
    assert_eq!((point.vertex_count(), point.edges().len()), (1, 0));
}

#[test]
fn roses() {
    let r1 = rose(1);
    assert_eq!((r1.vertex_count(), r1.edges().len(), r1.rank()), (1, 1, 1));
    let r2 = rose(2);
    assert!(r2.edges().iter().all(|e| e.src == 0 && e.rng == 0));
    assert_eq!(r2.edges().len(), 2);
    assert_eq!(rose(5).color_matrix(1), IntMatrix::from_rows(&[vec![5]]));
}

#[test]
fn pullback_along_the_sum() {
    let sum = MonoidHom::parse("1;1").unwrap();
    let g = pullback(&rose(1), &sum).unwrap();
    assert_eq!((g.rank(), g.vertex_count(), g.edges().len()), (2, 1, 2));
    assert_eq!(g.edges()[0].color, 1);
    assert_eq!(g.edges()[1].color, 2);
}

#[test]
fn pullback_of_rose_matches_the_homology_fixtures() {
    let first = MonoidHom::parse("1;0").unwrap();
    for n in 2..=6 {
        let g = pullback(&rose(n), &first).unwrap();
        let fx = fixture(&format!("ex4.7-n{n}")).unwrap();
        for c in 1..=2 {
            assert_eq!(g.color_matrix(c), fx.color_matrix(c), "n={n} color {c}");
        }
        assert!(g.is_strict());
    }
}

#[test]
fn pullback_along_identity_keeps_the_graph() {
    for name in fixture_names() {
        let g = fx(name);
        let p = pullback(&g, &MonoidHom::identity(g.rank())).unwrap();
        assert_eq!(p.vertex_count(), g.vertex_count());
        assert_eq!(p.edges().len(), g.edges().len());
        assert_eq!(p.squares().len(), g.squares().len());
    }
}

#[test]
fn pullback_matrices_follow_the_hom() {
    let homs = ["1,0;0,1", "0,1;1,0", "1,1;0,1", "1,0;0,1;1,1", "1,1"];
    for name in ["ex3.5-Lambda", "ex5.6-Omega", "ex7.1-Lambda2", "sec3-Gamma"] {
        let g = fx(name);
        for h in homs {
            let f = MonoidHom::parse(h).unwrap();
            let p = pullback(&g, &f).unwrap();
            assert_eq!(p.vertex_count(), g.vertex_count());
            for a in 1..=f.source_rank {
                assert_eq!(p.color_matrix(a), g.vertex_matrix(f.image(a)), "{name} along {h}");
            }
        }
    }
}

#[test]
fn skew_windows() {
    let sum = MonoidHom::parse("1;1").unwrap();
    let g = pullback(&rose(1), &sum).unwrap();
    let w = skew_product_window(&g, &Shift(vec![0, 0]), &Shift(vec![2, 2])).unwrap();
    assert_eq!(w.vertex_count(), 9);
    // each color step inside the box: 2·3 edges per color
    assert_eq!(w.edges().len(), 12);
    let point = skew_product_window(&g, &Shift(vec![0, 0]), &Shift(vec![0, 0])).unwrap();
    assert_eq!((point.vertex_count(), point.edges().len()), (1, 0));
    let l = fx("ex3.5-Lambda");
    let w = skew_product_window(&l, &Shift(vec![-1, 0]), &Shift(vec![1, 2])).unwrap();
    assert_eq!(w.vertex_count(), l.vertex_count() * 3 * 3);
    assert!(matches!(
        skew_product_window(&l, &Shift(vec![1, 0]), &Shift(vec![0, 0])),
        Err(KgError::EmptyWindow)
    ));
}

#[test]
fn fixture_shapes() {
    let l = fx("ex5.6-Lambda");
    assert_eq!(l.vertex_count(), 1);
    assert_eq!(l.edges_of_color(1).count(), 2);
    assert_eq!(l.edges_of_color(2).count(), 2);
    let (a, b) = (fx("ex7.1-Lambda1"), fx("ex7.1-Lambda2"));
    assert_eq!(a.skeleton(), b.skeleton());
    assert_ne!(a.squares(), b.squares());
    let s = fx("ex3.5-LambdaS");
    assert_eq!((s.vertex_count(), s.edges().len()), (1, 3));
    assert!(matches!(fixture("nope"), Err(KgError::UnknownFixture(_))));
}

#[test]
fn every_fixture_validates_and_round_trips() {
    for name in fixture_names() {
        let data = fixture_data(name).unwrap();
        let g = data.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        let json = kgraph::format::graph_to_json(&g);
        let back = kgraph::format::parse_graph(&json).unwrap();
        assert_eq!(back, g, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grid_edge_count(k in 1usize..4, n in proptest::collection::vec(0u32..3, 3)) {
        let n = Degree(n[..k].to_vec());
        let g = grid(k, &n);
        let points: u32 = n.coords().iter().map(|c| c + 1).product();
        let edges: u32 = (0..k).map(|i| points / (n.coords()[i] + 1) * n.coords()[i]).sum();
        prop_assert_eq!(g.vertex_count() as u32, points);
        prop_assert_eq!(g.edges().len() as u32, edges);
    }

    #[test]
    fn window_vertex_count(lo in proptest::collection::vec(-2i64..2, 2), span in proptest::collection::vec(0i64..3, 2)) {
        let g = fx("ex5.6-Omega");
        let hi: Vec<i64> = lo.iter().zip(&span).map(|(a, s)| a + s).collect();
        let w = skew_product_window(&g, &Shift(lo), &Shift(hi)).unwrap();
        let expect = g.vertex_count() as i64 * span.iter().map(|s| s + 1).product::<i64>();
        prop_assert_eq!(w.vertex_count() as i64, expect);
    }
}

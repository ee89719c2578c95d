//! Oracles, worked-example data and random instance generators shared by the
//! integration tests and the acceptance runner.
#![allow(dead_code)]

use kgraph::bridging::{polymorphism_from_matrix, FlipFamily};
use kgraph::dimension::DimElement;
use kgraph::fixtures::fixture;
use kgraph::{EdgeRecord, GraphData, IntMatrix, KGraph, Skeleton, Square};
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Mat = Vec<Vec<i128>>;

/// Color matrices counted straight from the edge list.
pub fn edge_counts(g: &KGraph, color: usize) -> Mat {
    let d = g.vertex_count();
    let mut m = vec![vec![0i128; d]; d];
    for e in g.edges() {
        if e.color == color {
            m[e.rng][e.src] += 1;
        }
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] != 0 {
                for j in 0..m {
                    out[i][j] += a[i][t] * b[t][j];
                }
            }
        }
    }
    out
}

pub fn mat_ident(d: usize) -> Mat {
    (0..d).map(|i| (0..d).map(|j| i128::from(i == j)).collect()).collect()
}

/// A_n by repeated multiplication of edge-count matrices.
pub fn power_product(g: &KGraph, n: &[u32]) -> Mat {
    let mut acc = mat_ident(g.vertex_count());
    for (i, &c) in n.iter().enumerate() {
        let a = edge_counts(g, i + 1);
        for _ in 0..c {
            acc = mat_mul(&acc, &a);
        }
    }
    acc
}

pub fn row_times(x: &[i128], m: &Mat) -> Vec<i128> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| x.iter().zip(m).map(|(a, row)| a * row[j]).sum()).collect()
}

pub fn to_i128(e: &DimElement) -> Vec<i128> {
    e.x.iter().map(|c| c.to_i128().expect("small coefficients")).collect()
}

pub fn to_mat(m: &IntMatrix) -> Mat {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|c| c.to_i128().unwrap()).collect()).collect()
}

/// Brute-force equality in the dimension group: some l ≥ n ∨ m with every
/// coordinate of l − (n ∨ m) at most `bound` has xA_{l−n} = yA_{l−m}.
pub fn dge_eq_oracle(g: &KGraph, a: &DimElement, b: &DimElement, bound: u32) -> bool {
    let k = g.rank();
    let p: Vec<i64> = (0..k).map(|i| a.n.0[i].max(b.n.0[i])).collect();
    let (x, y) = (to_i128(a), to_i128(b));
    let mut q = vec![0u32; k];
    loop {
        let la: Vec<u32> = (0..k).map(|i| (p[i] - a.n.0[i]) as u32 + q[i]).collect();
        let lb: Vec<u32> = (0..k).map(|i| (p[i] - b.n.0[i]) as u32 + q[i]).collect();
        if row_times(&x, &power_product(g, &la)) == row_times(&y, &power_product(g, &lb)) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            q[i] += 1;
            if q[i] <= bound {
                break;
            }
            q[i] = 0;
            i += 1;
        }
    }
}

pub fn fx(name: &str) -> KGraph {
    fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn row(entries: &[i64]) -> IntMatrix {
    IntMatrix::from_rows(&[entries.to_vec()])
}

/// The flips displayed for the first bridging example, with g1 = g1^{u,w}
/// and g2 = g1^{u,v}.
pub fn ex56_displayed_flips(lam: &KGraph, om: &KGraph) -> FlipFamily {
    let poly = polymorphism_from_matrix(lam, om, &row(&[1, 1])).unwrap();
    let (g1, g2) = ("g1^{u,w}", "g1^{u,v}");
    FlipFamily::from_ids(
        lam,
        om,
        &poly,
        &[
            (1, "alpha1", g1, g2, "f2"),
            (1, "alpha1", g2, g1, "f3"),
            (1, "alpha2", g1, g2, "f1"),
            (1, "alpha2", g2, g1, "f4"),
            (2, "beta1", g1, g2, "e3"),
            (2, "beta1", g2, g1, "e2"),
            (2, "beta2", g1, g2, "e4"),
            (2, "beta2", g2, g1, "e1"),
        ],
    )
    .unwrap()
}

/// The explicit flips of the second bridging example.
pub fn ex57_flips(lam: &KGraph, om: &KGraph) -> FlipFamily {
    let poly = polymorphism_from_matrix(lam, om, &row(&[1, 1])).unwrap();
    let (gw, gv) = ("g1^{u,w}", "g1^{u,v}");
    FlipFamily::from_ids(
        lam,
        om,
        &poly,
        &[
            (1, "f1", gw, gv, "alpha1"),
            (1, "f1", gv, gw, "alpha3"),
            (1, "f2", gw, gv, "alpha2"),
            (1, "f2", gv, gw, "alpha4"),
            (2, "e", gw, gw, "gamma1"),
            (2, "e", gv, gv, "gamma2"),
        ],
    )
    .unwrap()
}

/// A random 2-graph on `d` vertices with the given color matrices: edges
/// are laid out from the counts and each endpoint block of squares is a
/// random bijection. None when the matrices do not commute.
pub fn random_two_graph<R: Rng>(rng: &mut R, a1: &Mat, a2: &Mat, prefix: &str) -> Option<GraphData> {
    if mat_mul(a1, a2) != mat_mul(a2, a1) {
        return None;
    }
    let d = a1.len();
    let vid = |v: usize| format!("{prefix}{v}");
    let mut edges = Vec::new();
    for (c, a) in [(1, a1), (2, a2)] {
        for u in 0..d {
            for w in 0..d {
                for t in 0..a[u][w] {
                    edges.push(EdgeRecord {
                        id: format!("{}{c}_{u}{w}_{t}", if c == 1 { "b" } else { "r" }),
                        color: c,
                        src: vid(w),
                        rng: vid(u),
                    });
                }
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<(String, String), (Vec<(String, String)>, Vec<(String, String)>)> =
        Default::default();
    for x in &edges {
        for y in &edges {
            if x.src != y.rng {
                continue;
            }
            let key = (x.rng.clone(), y.src.clone());
            if x.color == 1 && y.color == 2 {
                blocks.entry(key).or_default().0.push((x.id.clone(), y.id.clone()));
            } else if x.color == 2 && y.color == 1 {
                blocks.entry(key).or_default().1.push((x.id.clone(), y.id.clone()));
            }
        }
    }
    let mut squares = Vec::new();
    for (_, (left, mut right)) in blocks {
        assert_eq!(left.len(), right.len(), "commuting matrices give equal block sizes");
        right.shuffle(rng);
        for (l, r) in left.into_iter().zip(right) {
            squares.push(Square { left: l, right: r });
        }
    }
    Some(GraphData {
        skeleton: Skeleton { rank: 2, vertices: (0..d).map(vid).collect(), edges },
        squares,
        strict: false,
        doc: None,
    })
}

/// Random commuting pair of d×d matrices with entries at most `max`.
pub fn random_commuting<R: Rng>(rng: &mut R, d: usize, max: i128) -> (Mat, Mat) {
    loop {
        let mut gen = || -> Mat { (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..=max)).collect()).collect() };
        let (a, b) = (gen(), gen());
        if mat_mul(&a, &b) == mat_mul(&b, &a) {
            return (a, b);
        }
    }
}

/// A random family of endpoint-preserving bijections, block by block.
pub fn random_flips<R: Rng>(rng: &mut R, lam: &KGraph, om: &KGraph, r: &IntMatrix) -> FlipFamily {
    let poly = polymorphism_from_matrix(lam, om, r).unwrap();
    let mut fam = FlipFamily::empty(lam.rank());
    for c in 1..=lam.rank() {
        let mut dom: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> = Default::default();
        let mut cod: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> = Default::default();
        for l in lam.edges_of_color(c) {
            for g in poly.edges_into(lam.src(l)) {
                dom.entry((lam.rng(l), poly.edges[g].src)).or_default().push((l, g));
            }
        }
        for (g, e) in poly.edges.iter().enumerate() {
            for &w in om.edges_into(e.src, c) {
                cod.entry((e.rng, om.src(w))).or_default().push((g, w));
            }
        }
        for (key, d) in dom {
            let mut image = cod.remove(&key).unwrap_or_default();
            assert_eq!(d.len(), image.len(), "intertwiner gives equal block sizes");
            image.shuffle(rng);
            for ((l, g), v) in d.into_iter().zip(image) {
                fam.insert(c, l, g, v);
            }
        }
    }
    fam
}

/// For Ω a relabeled copy of Λ and R = cI: f_i(λ, g_t^{s(λ)}) = (g_t^{r(λ)}, λ').
pub fn copy_flips(lam: &KGraph, om: &KGraph, r: &IntMatrix) -> FlipFamily {
    let poly = polymorphism_from_matrix(lam, om, r).unwrap();
    let mut fam = FlipFamily::empty(lam.rank());
    for (l, e) in lam.edges().iter().enumerate() {
        for g in poly.edges_into(e.src) {
            let t = poly.edge_id(g).split('^').next().unwrap().to_string();
            let target = poly
                .edges
                .iter()
                .position(|p| p.rng == e.rng && p.id.starts_with(&format!("{t}^")))
                .unwrap();
            fam.insert(e.color, l, g, (target, l));
        }
    }
    fam
}

/// A bijective relabeling of a graph's ids with a prefix.
pub fn relabel(data: &GraphData, prefix: &str) -> GraphData {
    let p = |s: &str| format!("{prefix}{s}");
    GraphData {
        skeleton: Skeleton {
            rank: data.skeleton.rank,
            vertices: data.skeleton.vertices.iter().map(|v| p(v)).collect(),
            edges: data
                .skeleton
                .edges
                .iter()
                .map(|e| EdgeRecord { id: p(&e.id), color: e.color, src: p(&e.src), rng: p(&e.rng) })
                .collect(),
        },
        squares: data
            .squares
            .iter()
            .map(|s| Square { left: (p(&s.left.0), p(&s.left.1)), right: (p(&s.right.0), p(&s.right.1)) })
            .collect(),
        strict: data.strict,
        doc: None,
    }
}

/// A composable random edge word of length `len`, built from the range end.
pub fn random_word<R: Rng>(rng: &mut R, g: &KGraph, len: usize) -> Option<Vec<usize>> {
    let mut at = rng.gen_range(0..g.vertex_count());
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let into = g.all_edges_into(at);
        let &e = into.choose(rng)?;
        word.push(e);
        at = g.src(e);
    }
    Some(word)
}

/// Fixture names with at most `max` vertices.
pub fn small_fixtures(max: usize) -> Vec<&'static str> {
    kgraph::fixtures::fixture_names().into_iter().filter(|n| fx(n).vertex_count() <= max).collect()
}

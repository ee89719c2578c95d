//! Grids, roses, pullbacks and finite skew-product windows.

use std::collections::HashMap;

use crate::degree::{Degree, Shift};
use crate::error::{KgError, Result};
use crate::graph::{EdgeRecord, GraphData, KGraph, Skeleton, Square};
use crate::path::{compose, paths_of_degree, segment, Path};

/// A monoid homomorphism ℕ^ℓ → ℕᵏ, given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    pub source_rank: usize,
    pub target_rank: usize,
    pub images: Vec<Degree>,
}

impl MonoidHom {
    pub fn new(target_rank: usize, images: Vec<Degree>) -> Result<Self> {
        if images.iter().any(|d| d.rank() != target_rank) {
            return Err(KgError::RankMismatch {
                expected: target_rank,
                found: images.iter().map(Degree::rank).find(|&r| r != target_rank).unwrap(),
            });
        }
        Ok(MonoidHom { source_rank: images.len(), target_rank, images })
    }

    pub fn identity(k: usize) -> Self {
        MonoidHom { source_rank: k, target_rank: k, images: (1..=k).map(|i| Degree::basis(k, i)).collect() }
    }

    /// Parse `"1,0;0,1"`: one comma-separated image per generator, separated by `;`.
    pub fn parse(text: &str) -> Result<Self> {
        let images = text
            .split(';')
            .map(|part| parse_degree(part.trim()))
            .collect::<Result<Vec<_>>>()?;
        let k = images.first().map_or(0, Degree::rank);
        MonoidHom::new(k, images)
    }

    pub fn image(&self, generator: usize) -> &Degree {
        &self.images[generator - 1]
    }

    pub fn apply(&self, n: &Degree) -> Degree {
        let mut out = Degree::zero(self.target_rank);
        for (a, &c) in n.coords().iter().enumerate() {
            for (o, x) in out.0.iter_mut().zip(self.images[a].coords()) {
                *o += c * x;
            }
        }
        out
    }

    /// The ℤ-linear extension.
    pub fn apply_shift(&self, n: &Shift) -> Shift {
        let mut out = Shift::zero(self.target_rank);
        for (a, &c) in n.coords().iter().enumerate() {
            for (o, &x) in out.0.iter_mut().zip(self.images[a].coords()) {
                *o += c * x as i64;
            }
        }
        out
    }

    /// Every basis vector of ℕᵏ is an ℕ-combination of images. With
    /// nonnegative images this happens exactly when each basis vector is
    /// itself an image.
    pub fn is_surjective(&self) -> bool {
        (1..=self.target_rank).all(|i| self.preimage_of_basis(i).is_some())
    }

    /// A generator of ℕ^ℓ mapped onto the given basis vector, if any.
    pub fn preimage_of_basis(&self, color: usize) -> Option<usize> {
        let target = Degree::basis(self.target_rank, color);
        self.images.iter().position(|d| *d == target).map(|a| a + 1)
    }
}

pub fn parse_degree(text: &str) -> Result<Degree> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| KgError::Parse(format!("bad degree {text:?}: {e}"))))
        .collect::<Result<Vec<_>>>()
        .map(Degree)
}

pub fn parse_shift(text: &str) -> Result<Shift> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| KgError::Parse(format!("bad shift {text:?}: {e}"))))
        .collect::<Result<Vec<_>>>()
        .map(Shift)
}

fn point_id(q: &[u32]) -> String {
    let parts: Vec<String> = q.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// Grid edge of color `i` with source `q`.
fn grid_edge_id(i: usize, q: &[u32]) -> String {
    format!("{i}:{}", point_id(q))
}

/// The grid Ω_{k,n}: vertices are the points below `n`; the color-i edge
/// with source q has range q − e_i.
pub fn grid(k: usize, n: &Degree) -> KGraph {
    assert_eq!(n.rank(), k, "grid bound must have rank k");
    let mut points: Vec<Vec<u32>> = vec![Vec::new()];
    for &bound in n.coords() {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let mut edges = Vec::new();
    for q in &points {
        for i in 1..=k {
            if q[i - 1] > 0 {
                let mut r = q.clone();
                r[i - 1] -= 1;
                edges.push(EdgeRecord { id: grid_edge_id(i, q), color: i, src: point_id(q), rng: point_id(&r) });
            }
        }
    }
    // g: p+e_i → p, h: p+e_i+e_j → p+e_i equals h': p+e_j → p, g': p+e_i+e_j → p+e_j
    let mut squares = Vec::new();
    for top in &points {
        for i in 1..=k {
            for j in i + 1..=k {
                if top[i - 1] == 0 || top[j - 1] == 0 {
                    continue;
                }
                let mut via_i = top.clone();
                via_i[j - 1] -= 1;
                let mut via_j = top.clone();
                via_j[i - 1] -= 1;
                squares.push(Square {
                    left: (grid_edge_id(i, &via_i), grid_edge_id(j, top)),
                    right: (grid_edge_id(j, &via_j), grid_edge_id(i, top)),
                });
            }
        }
    }
    let data = GraphData {
        skeleton: Skeleton { rank: k, vertices: points.iter().map(|p| point_id(p)).collect(), edges },
        squares,
        strict: false,
        doc: None,
    };
    data.validate().expect("grid squares are canonical")
}

/// One vertex `v` with `n` loops `e1..en`, as a 1-graph.
pub fn rose(n: usize) -> KGraph {
    let edges = (1..=n)
        .map(|i| EdgeRecord { id: format!("e{i}"), color: 1, src: "v".into(), rng: "v".into() })
        .collect();
    let data = GraphData {
        skeleton: Skeleton { rank: 1, vertices: vec!["v".into()], edges },
        squares: Vec::new(),
        strict: n > 0,
        doc: None,
    };
    data.validate().expect("rose is a 1-graph")
}

fn path_word_id(g: &KGraph, p: &Path) -> String {
    if p.is_vertex() {
        g.vertex_id(p.range()).to_string()
    } else {
        p.ids(g).join(".")
    }
}

/// The pullback f*(Λ): color-a edges are the paths of degree f(e_a), written
/// `word@a` (a vertex id for degree 0).
pub fn pullback(g: &KGraph, f: &MonoidHom) -> Result<KGraph> {
    if f.target_rank != g.rank() {
        return Err(KgError::RankMismatch { expected: g.rank(), found: f.target_rank });
    }
    let l = f.source_rank;
    let mut edges = Vec::new();
    let mut paths: Vec<(usize, Path)> = Vec::new();
    let mut lookup: HashMap<(usize, Path), String> = HashMap::new();
    for a in 1..=l {
        for v in 0..g.vertex_count() {
            for p in paths_of_degree(g, v, f.image(a)) {
                let id = format!("{}@{a}", path_word_id(g, &p));
                edges.push(EdgeRecord {
                    id: id.clone(),
                    color: a,
                    src: g.vertex_id(p.source()).to_string(),
                    rng: g.vertex_id(p.range()).to_string(),
                });
                lookup.insert((a, p.clone()), id);
                paths.push((a, p));
            }
        }
    }
    let mut squares = Vec::new();
    for (a, lam) in &paths {
        for (b, mu) in &paths {
            if a >= b || lam.source() != mu.range() {
                continue;
            }
            let whole = compose(g, lam, mu)?;
            let split = f.image(*b).clone();
            let mu2 = segment(g, &whole, &Degree::zero(g.rank()), &split)?;
            let lam2 = segment(g, &whole, &split, whole.degree())?;
            squares.push(Square {
                left: (lookup[&(*a, lam.clone())].clone(), lookup[&(*b, mu.clone())].clone()),
                right: (lookup[&(*b, mu2)].clone(), lookup[&(*a, lam2)].clone()),
            });
        }
    }
    let data = GraphData {
        skeleton: Skeleton { rank: l, vertices: g.vertices().to_vec(), edges },
        squares,
        strict: g.is_strict(),
        doc: None,
    };
    data.validate()
}

fn window_vertex_id(g: &KGraph, v: usize, m: &[i64]) -> String {
    let parts: Vec<String> = m.iter().map(i64::to_string).collect();
    format!("{}@({})", g.vertex_id(v), parts.join(","))
}

/// The part of Λ ×_d ℤᵏ over the box `lo ≤ m ≤ hi`: vertex (v, m), and the
/// edge (e, m) from (s(e), m + d(e)) to (r(e), m) whenever both lie in the box.
pub fn skew_product_window(g: &KGraph, lo: &Shift, hi: &Shift) -> Result<KGraph> {
    let k = g.rank();
    if lo.rank() != k || hi.rank() != k {
        return Err(KgError::RankMismatch { expected: k, found: lo.rank().min(hi.rank()) });
    }
    if lo.coords().iter().zip(hi.coords()).any(|(a, b)| a > b) {
        return Err(KgError::EmptyWindow);
    }
    let mut boxes: Vec<Vec<i64>> = vec![Vec::new()];
    for (&a, &b) in lo.coords().iter().zip(hi.coords()) {
        boxes = boxes
            .into_iter()
            .flat_map(|p| {
                (a..=b).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let inside = |m: &[i64]| m.iter().zip(lo.coords().iter().zip(hi.coords())).all(|(x, (a, b))| a <= x && x <= b);
    let shifted = |m: &[i64], color: usize| {
        let mut q = m.to_vec();
        q[color - 1] += 1;
        q
    };
    let edge_id = |e: usize, m: &[i64]| {
        let parts: Vec<String> = m.iter().map(i64::to_string).collect();
        format!("{}@({})", g.edge_id(e), parts.join(","))
    };
    let mut vertices = Vec::new();
    for v in 0..g.vertex_count() {
        for m in &boxes {
            vertices.push(window_vertex_id(g, v, m));
        }
    }
    let mut edges = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        for m in &boxes {
            let end = shifted(m, edge.color);
            if inside(&end) {
                edges.push(EdgeRecord {
                    id: edge_id(e, m),
                    color: edge.color,
                    src: window_vertex_id(g, edge.src, &end),
                    rng: window_vertex_id(g, edge.rng, m),
                });
            }
        }
    }
    let mut squares = Vec::new();
    for sq in g.squares() {
        let (a, b) = (g.edge_by_id(&sq.left.0)?, g.edge_by_id(&sq.left.1)?);
        let (b2, a2) = (g.edge_by_id(&sq.right.0)?, g.edge_by_id(&sq.right.1)?);
        for m in &boxes {
            let mid = shifted(m, g.color(a));
            let top = shifted(&mid, g.color(b));
            if inside(&top) {
                let other = shifted(m, g.color(b2));
                squares.push(Square {
                    left: (edge_id(a, m), edge_id(b, &mid)),
                    right: (edge_id(b2, m), edge_id(a2, &other)),
                });
            }
        }
    }
    let data = GraphData { skeleton: Skeleton { rank: k, vertices, edges }, squares, strict: false, doc: None };
    data.validate()
}

//! Colored skeletons, factorization squares and validated k-graphs.

use std::collections::{BTreeMap, HashMap};

use crate::degree::Degree;
use crate::error::{Diagnostic, KgError, Result};
use crate::matrix::IntMatrix;

/// One edge of a skeleton, by ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: String,
    pub color: usize,
    pub src: String,
    pub rng: String,
}

/// The k-colored directed graph underlying a k-graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

/// `left.0 · left.1 = right.0 · right.1` with `left.0` of the lower color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub left: (String, String),
    pub right: (String, String),
}

/// Unvalidated graph data: a skeleton, its squares and the strictness flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphData {
    pub skeleton: Skeleton,
    pub squares: Vec<Square>,
    pub strict: bool,
    pub doc: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub color: usize,
    pub src: usize,
    pub rng: usize,
}

/// A validated finite k-graph. Vertices and edges are addressed by index.
#[derive(Debug, Clone)]
pub struct KGraph {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    /// (g, h) with color(g) < color(h) ↦ (h', g').
    forward: HashMap<(usize, usize), (usize, usize)>,
    /// Inverse of `forward`.
    backward: HashMap<(usize, usize), (usize, usize)>,
    strict: bool,
    doc: Option<String>,
    /// `into[v][i]`: edges of color i+1 with range v.
    into: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.forward == other.forward
            && self.strict == other.strict
    }
}

impl Eq for KGraph {}

/// Check every k-graph axiom; on failure returns all violated constraints.
pub fn validate_kgraph(
    skeleton: &Skeleton,
    squares: &[Square],
    strict: bool,
) -> std::result::Result<KGraph, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let k = skeleton.rank;
    if k == 0 {
        return Err(vec![Diagnostic::Malformed("rank must be at least 1".into())]);
    }

    let mut vertex_index = HashMap::new();
    for (i, v) in skeleton.vertices.iter().enumerate() {
        if vertex_index.insert(v.clone(), i).is_some() {
            diags.push(Diagnostic::Malformed(format!("duplicate vertex {v}")));
        }
    }
    let mut edges = Vec::with_capacity(skeleton.edges.len());
    let mut edge_index = HashMap::new();
    for e in &skeleton.edges {
        if e.color == 0 || e.color > k {
            diags.push(Diagnostic::Malformed(format!("edge {} has color {} outside 1..={k}", e.id, e.color)));
            continue;
        }
        let (Some(&src), Some(&rng)) = (vertex_index.get(&e.src), vertex_index.get(&e.rng)) else {
            diags.push(Diagnostic::Malformed(format!("edge {} references an unknown vertex", e.id)));
            continue;
        };
        if edge_index.insert(e.id.clone(), edges.len()).is_some() {
            diags.push(Diagnostic::Malformed(format!("duplicate edge {}", e.id)));
            continue;
        }
        edges.push(Edge { id: e.id.clone(), color: e.color, src, rng });
    }
    if !diags.is_empty() {
        return Err(diags);
    }

    let mut forward = HashMap::new();
    let mut backward: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for sq in squares {
        let lookup = |id: &String| edge_index.get(id).copied();
        let ids = [&sq.left.0, &sq.left.1, &sq.right.0, &sq.right.1];
        let Some(idx) = ids.iter().map(|id| lookup(id)).collect::<Option<Vec<_>>>() else {
            diags.push(Diagnostic::Malformed(format!(
                "square {}·{} = {}·{} references an unknown edge",
                sq.left.0, sq.left.1, sq.right.0, sq.right.1
            )));
            continue;
        };
        let (g, h, h2, g2) = (idx[0], idx[1], idx[2], idx[3]);
        let (cg, ch) = (edges[g].color, edges[h].color);
        if cg >= ch || edges[h2].color != ch || edges[g2].color != cg {
            diags.push(Diagnostic::Malformed(format!(
                "square {}·{} = {}·{} has wrong colors",
                sq.left.0, sq.left.1, sq.right.0, sq.right.1
            )));
            continue;
        }
        if edges[g].src != edges[h].rng || edges[h2].src != edges[g2].rng {
            diags.push(Diagnostic::Malformed(format!(
                "square {}·{} = {}·{} has a non-composable side",
                sq.left.0, sq.left.1, sq.right.0, sq.right.1
            )));
            continue;
        }
        if edges[h2].rng != edges[g].rng || edges[g2].src != edges[h].src {
            diags.push(Diagnostic::EndpointMismatch {
                left: sq.left.clone(),
                right: sq.right.clone(),
            });
        }
        if forward.insert((g, h), (h2, g2)).is_some() {
            diags.push(Diagnostic::NonBijectiveSquares(format!(
                "{}·{} has more than one square",
                sq.left.0, sq.left.1
            )));
        }
        if let Some(prev) = backward.insert((h2, g2), (g, h)) {
            diags.push(Diagnostic::NonBijectiveSquares(format!(
                "{}·{} is the image of both {}·{} and {}·{}",
                sq.right.0, sq.right.1, edges[prev.0].id, edges[prev.1].id, sq.left.0, sq.left.1
            )));
        }
    }
    if diags.iter().any(|d| matches!(d, Diagnostic::Malformed(_))) {
        return Err(diags);
    }

    let n = skeleton.vertices.len();
    let mut into = vec![vec![Vec::new(); k]; n];
    for (i, e) in edges.iter().enumerate() {
        into[e.rng][e.color - 1].push(i);
    }

    // completeness and surjectivity onto the reversed pairs
    for (g, eg) in edges.iter().enumerate() {
        for (h, eh) in edges.iter().enumerate() {
            if eg.src != eh.rng || eg.color == eh.color {
                continue;
            }
            if eg.color < eh.color {
                if !forward.contains_key(&(g, h)) {
                    diags.push(Diagnostic::MissingSquare { g: eg.id.clone(), h: eh.id.clone() });
                }
            } else if !backward.contains_key(&(g, h)) {
                diags.push(Diagnostic::NonBijectiveSquares(format!(
                    "{}·{} is not the image of any square",
                    eg.id, eh.id
                )));
            }
        }
    }

    let graph = KGraph {
        rank: k,
        vertices: skeleton.vertices.clone(),
        edges,
        vertex_index,
        edge_index,
        forward,
        backward,
        strict,
        doc: None,
        into,
    };

    if diags.is_empty() {
        diags.extend(graph.cube_failures());
    }
    if strict {
        for v in 0..n {
            for c in 1..=k {
                if graph.into[v][c - 1].is_empty() {
                    diags.push(Diagnostic::SourceVertex { vertex: graph.vertices[v].clone(), color: c });
                }
            }
        }
    }
    if diags.is_empty() {
        Ok(graph)
    } else {
        Err(diags)
    }
}

impl GraphData {
    pub fn validate(&self) -> Result<KGraph> {
        let mut g = validate_kgraph(&self.skeleton, &self.squares, self.strict).map_err(KgError::Invalid)?;
        g.doc = self.doc.clone();
        Ok(g)
    }
}

impl KGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn doc(&self) -> Option<&str> {
        self.doc.as_deref()
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index.get(id).copied().ok_or_else(|| KgError::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edge_index.get(id).copied().ok_or_else(|| KgError::UnknownEdge(id.to_string()))
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn color(&self, e: usize) -> usize {
        self.edges[e].color
    }

    pub fn src(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn rng(&self, e: usize) -> usize {
        self.edges[e].rng
    }

    /// Edges of a 1-based color with range `v` (the set vΛ^{e_i}).
    pub fn edges_into(&self, v: usize, color: usize) -> &[usize] {
        &self.into[v][color - 1]
    }

    /// All edges with range `v`, in edge order.
    pub fn all_edges_into(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.into[v].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn edges_of_color(&self, color: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].color == color)
    }

    /// Exchange an adjacent pair of differently colored edges `a·b` for the
    /// unique pair `b'·a'` with the colors swapped.
    pub fn swap(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ca, cb) = (self.color(a), self.color(b));
        if ca < cb {
            self.forward.get(&(a, b)).copied()
        } else if ca > cb {
            self.backward.get(&(a, b)).copied()
        } else {
            None
        }
    }

    /// Squares in a deterministic order (by left pair indices).
    pub fn squares(&self) -> Vec<Square> {
        let sorted: BTreeMap<_, _> = self.forward.iter().collect();
        sorted
            .into_iter()
            .map(|(&(g, h), &(h2, g2))| Square {
                left: (self.edges[g].id.clone(), self.edges[h].id.clone()),
                right: (self.edges[h2].id.clone(), self.edges[g2].id.clone()),
            })
            .collect()
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton {
            rank: self.rank,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.clone(),
                    color: e.color,
                    src: self.vertices[e.src].clone(),
                    rng: self.vertices[e.rng].clone(),
                })
                .collect(),
        }
    }

    pub fn to_data(&self) -> GraphData {
        GraphData {
            skeleton: self.skeleton(),
            squares: self.squares(),
            strict: self.strict,
            doc: self.doc.clone(),
        }
    }

    pub fn with_doc(mut self, doc: impl Into<String>) -> Self {
        self.doc = Some(doc.into());
        self
    }

    /// Both rewriting routes for every composable tricolored triple.
    fn cube_failures(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let k = self.rank;
        for i in 1..=k {
            for j in i + 1..=k {
                for l in j + 1..=k {
                    for a in self.edges_of_color(i) {
                        for &b in self.edges_into(self.src(a), j) {
                            for &c in self.edges_into(self.src(b), l) {
                                let (Some(ra), Some(rb)) = (self.cube_route_a(a, b, c), self.cube_route_b(a, b, c))
                                else {
                                    continue;
                                };
                                if ra != rb {
                                    let ids = |t: (usize, usize, usize)| {
                                        (self.edge_id(t.0).to_string(), self.edge_id(t.1).to_string(), self.edge_id(t.2).to_string())
                                    };
                                    out.push(Diagnostic::CubeFailure {
                                        colors: (i, j, l),
                                        triple: ids((a, b, c)),
                                        route_a: ids(ra),
                                        route_b: ids(rb),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Swap (i,j), then (i,l), then (j,l).
    fn cube_route_a(&self, a: usize, b: usize, c: usize) -> Option<(usize, usize, usize)> {
        let (b1, a1) = self.swap(a, b)?;
        let (c1, a2) = self.swap(a1, c)?;
        let (c2, b2) = self.swap(b1, c1)?;
        Some((c2, b2, a2))
    }

    /// Swap (j,l), then (i,l), then (i,j).
    fn cube_route_b(&self, a: usize, b: usize, c: usize) -> Option<(usize, usize, usize)> {
        let (c1, b1) = self.swap(b, c)?;
        let (c2, a1) = self.swap(a, c1)?;
        let (b2, a2) = self.swap(a1, b1)?;
        Some((c2, b2, a2))
    }

    /// A_{e_i}(u, v) = number of color-i edges with range u and source v.
    pub fn color_matrix(&self, color: usize) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for e in self.edges_of_color(color) {
            m[(self.rng(e), self.src(e))] += 1;
        }
        m
    }

    /// A_n = A_{e_1}^{n_1} ⋯ A_{e_k}^{n_k}.
    pub fn vertex_matrix(&self, n: &Degree) -> IntMatrix {
        assert_eq!(n.rank(), self.rank, "degree rank mismatch");
        let mut acc = IntMatrix::identity(self.vertex_count());
        for (i, &c) in n.coords().iter().enumerate() {
            if c > 0 {
                acc = acc.mul(&self.color_matrix(i + 1).pow(c as u64));
            }
        }
        acc
    }

    /// A_{e_1} A_{e_2} ⋯ A_{e_k}.
    pub fn total_matrix(&self) -> IntMatrix {
        self.vertex_matrix(&Degree(vec![1; self.rank]))
    }

    /// Vertices with no edge of the given color having them as source.
    pub fn ei_sinks(&self, color: usize) -> Vec<usize> {
        let mut emits = vec![false; self.vertex_count()];
        for e in self.edges_of_color(color) {
            emits[self.src(e)] = true;
        }
        (0..self.vertex_count()).filter(|&v| !emits[v]).collect()
    }
}

/// Vertex matrix for a degree; free-function form of [`KGraph::vertex_matrix`].
pub fn vertex_matrix(g: &KGraph, n: &Degree) -> IntMatrix {
    g.vertex_matrix(n)
}

/// Vertices that are e_i-sinks for the 1-based color.
pub fn ei_sinks(g: &KGraph, color: usize) -> Vec<usize> {
    g.ei_sinks(color)
}

//! In-splitting and sink deletion, their matrices and generator maps.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use crate::degree::Shift;
use crate::dimension::{dge_add, DimElement, GeneratorMap};
use crate::error::{KgError, Result};
use crate::graph::{EdgeRecord, GraphData, KGraph, Skeleton, Square};
use crate::matrix::IntMatrix;

/// Classes of vΛ¹ under the pairing condition: λ ~ μ when λα = μβ for some
/// edges α, β, closed transitively. Each class is sorted; classes are
/// ordered by their first edge.
pub fn pairing_closure(g: &KGraph, v: usize) -> Vec<Vec<usize>> {
    let incoming = g.all_edges_into(v);
    let pos: HashMap<usize, usize> = incoming.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..incoming.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    // a square g·h = h'·g' with r(g) = v joins g and h'
    for &a in &incoming {
        for c in 1..=g.rank() {
            if c <= g.color(a) {
                continue;
            }
            for &b in g.edges_into(g.src(a), c) {
                let (b2, _) = g.swap(a, b).expect("validated graph has every square");
                let (x, y) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b2]));
                parent[x] = y;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &e) in incoming.iter().enumerate() {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(e);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

/// A split of vΛ¹ into two nonempty parts respecting the pairing condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub vertex: usize,
    pub parts: [Vec<usize>; 2],
}

impl Partition {
    /// Check the partition against `g`, sorting each part.
    pub fn new(g: &KGraph, vertex: usize, first: Vec<usize>, second: Vec<usize>) -> Result<Self> {
        let mut parts = [first, second];
        for p in &mut parts {
            p.sort_unstable();
            p.dedup();
        }
        let p = Partition { vertex, parts };
        p.check(g)?;
        Ok(p)
    }

    /// Parts given by edge ids.
    pub fn from_ids(g: &KGraph, vertex: &str, first: &[&str], second: &[&str]) -> Result<Self> {
        let v = g.vertex(vertex)?;
        let ids = |xs: &[&str]| xs.iter().map(|id| g.edge_by_id(id)).collect::<Result<Vec<_>>>();
        Partition::new(g, v, ids(first)?, ids(second)?)
    }

    /// Parse `"a,b|c,d"`.
    pub fn parse(g: &KGraph, vertex: &str, text: &str) -> Result<Self> {
        let (a, b) = text
            .split_once('|')
            .ok_or_else(|| KgError::Parse(format!("partition {text:?} must look like a,b|c,d")))?;
        fn list(s: &str) -> Vec<&str> {
            s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
        }
        Partition::from_ids(g, vertex, &list(a), &list(b))
    }

    /// Which part (0 or 1) holds the edge.
    pub fn part_of(&self, e: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&e).is_ok())
    }

    fn check(&self, g: &KGraph) -> Result<()> {
        let bad = |m: String| Err(KgError::InvalidPartition(m));
        if self.vertex >= g.vertex_count() {
            return bad(format!("vertex index {} out of range", self.vertex));
        }
        if self.parts.iter().any(Vec::is_empty) {
            return bad("both parts must be nonempty".into());
        }
        if self.parts[0].iter().any(|e| self.parts[1].contains(e)) {
            return bad("parts overlap".into());
        }
        let mut all: Vec<usize> = self.parts.concat();
        all.sort_unstable();
        if all != g.all_edges_into(self.vertex) {
            return bad(format!("parts do not cover the edges into {}", g.vertex_id(self.vertex)));
        }
        for class in pairing_closure(g, self.vertex) {
            let side = self.part_of(class[0]);
            if class.iter().any(|&e| self.part_of(e) != side) {
                let ids: Vec<&str> = class.iter().map(|&e| g.edge_id(e)).collect();
                return bad(format!("pairing class {{{}}} is split", ids.join(",")));
            }
        }
        Ok(())
    }

    pub fn display(&self, g: &KGraph) -> String {
        let side = |p: &[usize]| p.iter().map(|&e| g.edge_id(e)).collect::<Vec<_>>().join(",");
        format!("{}|{}", side(&self.parts[0]), side(&self.parts[1]))
    }
}

/// Every unordered two-part partition built from the pairing classes; the
/// part holding the first class comes first.
pub fn enumerate_valid_partitions(g: &KGraph, v: usize) -> Result<Vec<Partition>> {
    let classes = pairing_closure(g, v);
    if classes.len() < 2 {
        return Err(KgError::IndivisibleVertex(g.vertex_id(v).to_string()));
    }
    let rest = classes.len() - 1;
    let mut out = Vec::new();
    // bit t set: class t+1 joins the first part
    for mask in 0u64..(1u64 << rest) - 1 {
        let mut first = classes[0].clone();
        let mut second = Vec::new();
        for (t, class) in classes[1..].iter().enumerate() {
            if mask >> t & 1 == 1 {
                first.extend(class);
            } else {
                second.extend(class);
            }
        }
        out.push(Partition::new(g, v, first, second)?);
    }
    Ok(out)
}

/// Parents of the vertices and edges of an in-split, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentMap {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Serialize)]
struct ParentDoc<'a> {
    vertices: BTreeMap<&'a str, &'a str>,
    edges: BTreeMap<&'a str, &'a str>,
}

impl ParentMap {
    /// JSON object mapping each child id to its parent id.
    pub fn to_json(&self, parent: &KGraph, child: &KGraph) -> String {
        let doc = ParentDoc {
            vertices: (0..child.vertex_count()).map(|w| (child.vertex_id(w), parent.vertex_id(self.vertices[w]))).collect(),
            edges: (0..child.edges().len()).map(|e| (child.edge_id(e), parent.edge_id(self.edges[e]))).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("parent maps always serialize")
    }
}

fn split_id(id: &str, t: usize) -> String {
    format!("{id}^{t}")
}

/// The in-split of `g` at `p.vertex`. Vertex v becomes v^1, v^2 and each
/// edge f with source v becomes f^1, f^2 with s(f^t) = v^t; edges into v
/// land on v^t for the part t that holds them. Squares are lifted from the
/// parents.
pub fn insplit(g: &KGraph, p: &Partition) -> Result<(KGraph, ParentMap)> {
    p.check(g)?;
    let v = p.vertex;
    let vid = g.vertex_id(v);

    let mut vertices = Vec::new();
    let mut vertex_parent = Vec::new();
    for (w, id) in g.vertices().iter().enumerate() {
        if w == v {
            for t in 1..=2 {
                vertices.push(split_id(id, t));
                vertex_parent.push(w);
            }
        } else {
            vertices.push(id.clone());
            vertex_parent.push(w);
        }
    }
    let range_id = |e: usize| -> String {
        match p.part_of(e) {
            Some(t) => split_id(vid, t + 1),
            None => g.vertex_id(g.rng(e)).to_string(),
        }
    };
    let mut edges = Vec::new();
    let mut edge_parent = Vec::new();
    // offspring[e] lists the child edge ids of e
    let mut offspring: Vec<Vec<String>> = vec![Vec::new(); g.edges().len()];
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.src == v {
            for t in 1..=2 {
                let id = split_id(&edge.id, t);
                edges.push(EdgeRecord { id: id.clone(), color: edge.color, src: split_id(vid, t), rng: range_id(e) });
                edge_parent.push(e);
                offspring[e].push(id);
            }
        } else {
            edges.push(EdgeRecord {
                id: edge.id.clone(),
                color: edge.color,
                src: g.vertex_id(edge.src).to_string(),
                rng: range_id(e),
            });
            edge_parent.push(e);
            offspring[e].push(edge.id.clone());
        }
    }

    let pos: HashMap<&str, usize> = edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
    let mut squares = Vec::new();
    for (a, ea) in edges.iter().enumerate() {
        for eb in &edges {
            if ea.color >= eb.color || ea.src != eb.rng {
                continue;
            }
            let b = pos[eb.id.as_str()];
            let (pb, pa) = g
                .swap(edge_parent[a], edge_parent[b])
                .ok_or_else(|| KgError::Internal("parent square missing".into()))?;
            let mut lifts = Vec::new();
            for x in &offspring[pb] {
                for y in &offspring[pa] {
                    let (ex, ey) = (&edges[pos[x.as_str()]], &edges[pos[y.as_str()]]);
                    if ex.rng == ea.rng && ex.src == ey.rng && ey.src == eb.src {
                        lifts.push((x.clone(), y.clone()));
                    }
                }
            }
            if lifts.len() != 1 {
                return Err(KgError::Internal(format!(
                    "square {}·{} has {} lifts in the in-split",
                    ea.id,
                    eb.id,
                    lifts.len()
                )));
            }
            let (x, y) = lifts.pop().unwrap();
            squares.push(Square { left: (ea.id.clone(), eb.id.clone()), right: (x, y) });
        }
    }

    let data = GraphData {
        skeleton: Skeleton { rank: g.rank(), vertices, edges },
        squares,
        strict: g.is_strict(),
        doc: None,
    };
    let split = data.validate()?;
    Ok((split, ParentMap { vertices: vertex_parent, edges: edge_parent }))
}

/// R(u, w) = 1 when u is the parent of w; S(v^t, w) counts color-j edges of
/// part t with source w, and S(u, w) = A_{e_j}(u, w) elsewhere.
pub fn insplit_matrices(g: &KGraph, p: &Partition, j: usize) -> Result<(IntMatrix, IntMatrix)> {
    if j == 0 || j > g.rank() {
        return Err(KgError::DegreeOutOfRange);
    }
    let (split, parents) = insplit(g, p)?;
    let (d, di) = (g.vertex_count(), split.vertex_count());
    let mut r = IntMatrix::zeros(d, di);
    for w in 0..di {
        r[(parents.vertices[w], w)] = BigInt::from(1);
    }
    let a = g.color_matrix(j);
    let mut s = IntMatrix::zeros(di, d);
    for u in 0..di {
        let pu = parents.vertices[u];
        if pu == p.vertex {
            let t = split_part(&split, u);
            for &f in &p.parts[t] {
                if g.color(f) == j {
                    s[(u, g.src(f))] += 1;
                }
            }
        } else {
            for w in 0..d {
                s[(u, w)] = a[(pu, w)].clone();
            }
        }
    }
    Ok((r, s))
}

/// 0 for v^1, 1 for v^2, read off the vertex id suffix.
fn split_part(split: &KGraph, u: usize) -> usize {
    if split.vertex_id(u).ends_with("^1") {
        0
    } else {
        1
    }
}

/// w(0) ↦ w(0) for w ≠ v, v(0) ↦ v^1(0) + v^2(0).
pub fn phi_i_generator_map(g: &KGraph, p: &Partition) -> Result<GeneratorMap> {
    let (split, parents) = insplit(g, p)?;
    let zero = Shift::zero(g.rank());
    let mut images = Vec::with_capacity(g.vertex_count());
    for w in 0..g.vertex_count() {
        let mut x = vec![BigInt::from(0); split.vertex_count()];
        for (c, &par) in parents.vertices.iter().enumerate() {
            if par == w {
                x[c] = BigInt::from(1);
            }
        }
        images.push(DimElement::new(x, zero.clone()));
    }
    GeneratorMap::new(g, &split, images)
}

/// w(0) ↦ w(0) for w ≠ v^t, v^t(0) ↦ Σ_{f ∈ E_t of color j} s(f)(e_j).
pub fn psi_generator_map(g: &KGraph, p: &Partition, j: usize) -> Result<GeneratorMap> {
    if j == 0 || j > g.rank() {
        return Err(KgError::DegreeOutOfRange);
    }
    let (split, parents) = insplit(g, p)?;
    let k = g.rank();
    let mut images = Vec::with_capacity(split.vertex_count());
    for u in 0..split.vertex_count() {
        let pu = parents.vertices[u];
        if pu == p.vertex {
            let t = split_part(&split, u);
            let mut acc = DimElement::zero(g);
            for &f in &p.parts[t] {
                if g.color(f) == j {
                    acc = dge_add(g, &acc, &DimElement::generator(g, g.src(f), Shift::basis(k, j)))?;
                }
            }
            images.push(acc);
        } else {
            images.push(DimElement::generator(g, pu, Shift::zero(k)));
        }
    }
    GeneratorMap::new(&split, g, images)
}

/// A color i for which v is an e_i-sink (no color-i edge has source v).
pub fn sink_color(g: &KGraph, v: usize) -> Option<usize> {
    (1..=g.rank()).find(|&i| g.ei_sinks(i).contains(&v))
}

/// Vertices w with wΛv ≠ ∅, i.e. reachable from v along edges (source to
/// range), including v. Sorted.
pub fn sink_deleted_set(g: &KGraph, v: usize) -> Result<Vec<usize>> {
    if sink_color(g, v).is_none() {
        return Err(KgError::NotASink(g.vertex_id(v).to_string()));
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![v];
    seen[v] = true;
    while let Some(x) = stack.pop() {
        for e in g.edges() {
            if e.src == x && !seen[e.rng] {
                seen[e.rng] = true;
                stack.push(e.rng);
            }
        }
    }
    Ok((0..g.vertex_count()).filter(|&w| seen[w]).collect())
}

/// Λ_S: the full subgraph on the vertices that do not reach back to v.
pub fn sink_delete(g: &KGraph, v: usize) -> Result<KGraph> {
    let deleted = sink_deleted_set(g, v)?;
    let keep = |w: usize| deleted.binary_search(&w).is_err();
    let vertices: Vec<String> = (0..g.vertex_count()).filter(|&w| keep(w)).map(|w| g.vertex_id(w).to_string()).collect();
    let edges: Vec<EdgeRecord> = g
        .skeleton()
        .edges
        .into_iter()
        .zip(g.edges())
        .filter(|(_, e)| keep(e.rng))
        .map(|(rec, _)| rec)
        .collect();
    // hereditary: a surviving range forces a surviving source
    let squares = g
        .squares()
        .into_iter()
        .filter(|sq| g.edge_by_id(&sq.left.0).is_ok_and(|e| keep(g.rng(e))))
        .collect::<Vec<_>>();
    let data = GraphData {
        skeleton: Skeleton { rank: g.rank(), vertices, edges },
        squares,
        strict: g.is_strict(),
        doc: None,
    };
    data.validate()
}

/// The inclusion w(0) ↦ w(0) from T_{Λ_S} into T_Λ.
pub fn phi_s_generator_map(g: &KGraph, v: usize) -> Result<GeneratorMap> {
    let small = sink_delete(g, v)?;
    GeneratorMap::same_names(&small, g)
}

/// One expansion step u(0) = Σ_{α ∈ uΛ^{e_i}} s(α)(e_i) for a deleted vertex,
/// written over the surviving graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkExpansion {
    pub deleted: usize,
    pub color: usize,
    pub preimage: DimElement,
}

/// Surjectivity of φ_S: every deleted u(0) is the image of an element of
/// T_{Λ_S}, expanded along the sink color.
pub fn sink_surjectivity_witness(g: &KGraph, v: usize) -> Result<Vec<SinkExpansion>> {
    let color = sink_color(g, v).ok_or_else(|| KgError::NotASink(g.vertex_id(v).to_string()))?;
    let small = sink_delete(g, v)?;
    let k = g.rank();
    let mut out = Vec::new();
    for u in sink_deleted_set(g, v)? {
        let into = g.edges_into(u, color);
        if into.is_empty() {
            return Err(KgError::NotStrict);
        }
        let mut acc = DimElement::zero(&small);
        for &alpha in into {
            let s = small.vertex(g.vertex_id(g.src(alpha))).map_err(|_| {
                KgError::Internal(format!("source of {} was deleted", g.edge_id(alpha)))
            })?;
            acc = dge_add(&small, &acc, &DimElement::generator(&small, s, Shift::basis(k, color)))?;
        }
        out.push(SinkExpansion { deleted: u, color, preimage: acc });
    }
    Ok(out)
}

//! Polymorphisms, flip families, the coherence condition and the search for
//! coherent flips.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dimension::intertwiner_check;
use crate::error::{KgError, Result};
use crate::graph::{EdgeRecord, GraphData, KGraph, Skeleton, Square};
use crate::matrix::IntMatrix;
use crate::path::{factor, Path};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEdge {
    pub id: String,
    pub rng: usize,
    pub src: usize,
}

/// Edges between two vertex sets: `rng` indexes `ranges`, `src` indexes
/// `sources`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polymorphism {
    pub ranges: Vec<String>,
    pub sources: Vec<String>,
    pub edges: Vec<PolyEdge>,
}

impl Polymorphism {
    /// Entry (u, w) counts edges from w to u.
    pub fn adjacency(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.ranges.len(), self.sources.len());
        for e in &self.edges {
            m[(e.rng, e.src)] += 1;
        }
        m
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.id == id).ok_or_else(|| KgError::UnknownEdge(id.to_string()))
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    /// Edges with the given range.
    pub fn edges_into(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].rng == u)
    }
}

/// The polymorphism with R(v, w) edges `g{t}^{v,w}` from w ∈ Ω⁰ to v ∈ Λ⁰.
pub fn polymorphism_from_matrix(lam: &KGraph, om: &KGraph, r: &IntMatrix) -> Result<Polymorphism> {
    if r.rows() != lam.vertex_count() || r.cols() != om.vertex_count() {
        return Err(KgError::DimensionMismatch(format!(
            "matrix is {}×{}, expected {}×{}",
            r.rows(),
            r.cols(),
            lam.vertex_count(),
            om.vertex_count()
        )));
    }
    if !r.is_nonnegative() {
        return Err(KgError::DimensionMismatch("matrix has a negative entry".into()));
    }
    let mut edges = Vec::new();
    for v in 0..r.rows() {
        for w in 0..r.cols() {
            let count = r[(v, w)].to_usize().ok_or_else(|| KgError::DimensionMismatch("entry too large".into()))?;
            for t in 1..=count {
                edges.push(PolyEdge {
                    id: format!("g{t}^{{{},{}}}", lam.vertex_id(v), om.vertex_id(w)),
                    rng: v,
                    src: w,
                });
            }
        }
    }
    Ok(Polymorphism { ranges: lam.vertices().to_vec(), sources: om.vertices().to_vec(), edges })
}

/// The color-i edges of a graph, as a polymorphism from its vertices to
/// themselves.
pub fn edge_polymorphism(g: &KGraph, color: usize) -> Polymorphism {
    let edges = g
        .edges_of_color(color)
        .map(|e| PolyEdge { id: g.edge_id(e).to_string(), rng: g.rng(e), src: g.src(e) })
        .collect();
    Polymorphism { ranges: g.vertices().to_vec(), sources: g.vertices().to_vec(), edges }
}

/// Composable pairs (e, f) with s(e) = r(f), written `e·f`.
pub fn compose_poly(e: &Polymorphism, f: &Polymorphism) -> Result<Polymorphism> {
    if e.sources != f.ranges {
        return Err(KgError::NotComposable);
    }
    let mut edges = Vec::new();
    for a in &e.edges {
        for b in &f.edges {
            if a.src == b.rng {
                edges.push(PolyEdge { id: format!("{}·{}", a.id, b.id), rng: a.rng, src: b.src });
            }
        }
    }
    Ok(Polymorphism { ranges: e.ranges.clone(), sources: f.sources.clone(), edges })
}

/// Per-color maps (λ, g) ↦ (g', ω) by index: λ an edge of Λ, g and g'
/// polymorphism edges, ω an edge of Ω.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlipFamily {
    maps: Vec<BTreeMap<(usize, usize), (usize, usize)>>,
}

impl FlipFamily {
    pub fn empty(k: usize) -> Self {
        FlipFamily { maps: vec![BTreeMap::new(); k] }
    }

    pub fn rank(&self) -> usize {
        self.maps.len()
    }

    pub fn get(&self, color: usize, lambda: usize, g: usize) -> Option<(usize, usize)> {
        self.maps[color - 1].get(&(lambda, g)).copied()
    }

    pub fn insert(&mut self, color: usize, lambda: usize, g: usize, image: (usize, usize)) {
        self.maps[color - 1].insert((lambda, g), image);
    }

    fn remove(&mut self, color: usize, lambda: usize, g: usize) {
        self.maps[color - 1].remove(&(lambda, g));
    }

    /// (λ, g) with f_i(λ, g) = (g', ω).
    pub fn preimage(&self, color: usize, g2: usize, omega: usize) -> Option<(usize, usize)> {
        self.maps[color - 1].iter().find(|(_, &v)| v == (g2, omega)).map(|(&k, _)| k)
    }

    /// Assignments of one color in key order.
    pub fn entries(&self, color: usize) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        self.maps[color - 1].iter().map(|(&k, &v)| (k, v))
    }

    /// Build from `(color, λ, g, g', ω)` id tuples.
    pub fn from_ids(
        lam: &KGraph,
        om: &KGraph,
        poly: &Polymorphism,
        entries: &[(usize, &str, &str, &str, &str)],
    ) -> Result<Self> {
        let mut fam = FlipFamily::empty(lam.rank());
        for &(c, l, g, g2, w) in entries {
            if c == 0 || c > lam.rank() {
                return Err(KgError::InvalidFlips(format!("color {c} out of range")));
            }
            let key = (lam.edge_by_id(l)?, poly.edge_by_id(g)?);
            if fam.get(c, key.0, key.1).is_some() {
                return Err(KgError::InvalidFlips(format!("({l}, {g}) assigned twice")));
            }
            fam.insert(c, key.0, key.1, (poly.edge_by_id(g2)?, om.edge_by_id(w)?));
        }
        Ok(fam)
    }

    /// Every f_i is an endpoint-preserving bijection between the composable
    /// pairs of Λ^{e_i}×R¹ and R¹×Ω^{e_i}.
    pub fn check(&self, lam: &KGraph, om: &KGraph, poly: &Polymorphism) -> Result<()> {
        let bad = |m: String| Err(KgError::InvalidFlips(m));
        if self.rank() != lam.rank() || lam.rank() != om.rank() {
            return bad(format!("family has {} colors for graphs of rank {}", self.rank(), lam.rank()));
        }
        for c in 1..=lam.rank() {
            let domain = domain_pairs(lam, poly, c);
            let mut seen = std::collections::BTreeSet::new();
            for &(l, g) in &domain {
                let Some((g2, w)) = self.get(c, l, g) else {
                    return bad(format!("f{c} is undefined at ({}, {})", lam.edge_id(l), poly.edge_id(g)));
                };
                if g2 >= poly.edges.len() || w >= om.edges().len() || om.color(w) != c {
                    return bad(format!("f{c} sends ({}, {}) outside R¹×Ω^e{c}", lam.edge_id(l), poly.edge_id(g)));
                }
                if poly.edges[g2].src != om.rng(w) {
                    return bad(format!("f{c} value ({}, {}) is not composable", poly.edge_id(g2), om.edge_id(w)));
                }
                if lam.rng(l) != poly.edges[g2].rng || poly.edges[g].src != om.src(w) {
                    return bad(format!("f{c} moves the endpoints of ({}, {})", lam.edge_id(l), poly.edge_id(g)));
                }
                if !seen.insert((g2, w)) {
                    return bad(format!("f{c} is not injective at ({}, {})", poly.edge_id(g2), om.edge_id(w)));
                }
            }
            if self.maps[c - 1].len() != domain.len() {
                return bad(format!("f{c} has assignments outside its domain"));
            }
            if seen.len() != codomain_pairs(om, poly, c).len() {
                return bad(format!("f{c} is not surjective"));
            }
        }
        Ok(())
    }
}

/// Composable (λ, g) with λ of the color, sorted.
fn domain_pairs(lam: &KGraph, poly: &Polymorphism, color: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for l in lam.edges_of_color(color) {
        for g in poly.edges_into(lam.src(l)) {
            out.push((l, g));
        }
    }
    out
}

/// Composable (g', ω) with ω of the color, sorted.
fn codomain_pairs(om: &KGraph, poly: &Polymorphism, color: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (g, e) in poly.edges.iter().enumerate() {
        for &w in om.edges_into(e.src, color) {
            out.push((g, w));
        }
    }
    out
}

/// A triple (λ_i, λ_j, g) on which the two routes disagree. Both routes end
/// as (g', ω_j, ω_i) with ω_j of color j and ω_i of color i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceFailure {
    pub colors: (usize, usize),
    pub lambda_i: usize,
    pub lambda_j: usize,
    pub g: usize,
    pub top: (usize, usize, usize),
    pub bottom: (usize, usize, usize),
}

impl CoherenceFailure {
    pub fn display(&self, lam: &KGraph, om: &KGraph, poly: &Polymorphism) -> String {
        let route = |t: (usize, usize, usize)| format!("({}, {}, {})", poly.edge_id(t.0), om.edge_id(t.1), om.edge_id(t.2));
        format!(
            "colors ({},{}) at ({}, {}, {}): top {} vs bottom {}",
            self.colors.0,
            self.colors.1,
            lam.edge_id(self.lambda_i),
            lam.edge_id(self.lambda_j),
            poly.edge_id(self.g),
            route(self.top),
            route(self.bottom)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub first_failure: Option<CoherenceFailure>,
}

/// Composable triples (i, j, λ_i, λ_j, g) with i < j: colors outermost, then
/// g, then λ_i, then λ_j.
fn triples(lam: &KGraph, poly: &Polymorphism) -> Vec<(usize, usize, usize, usize, usize)> {
    let mut out = Vec::new();
    let k = lam.rank();
    for i in 1..=k {
        for j in i + 1..=k {
            for (g, ge) in poly.edges.iter().enumerate() {
                for li in lam.edges_of_color(i) {
                    for &lj in lam.edges_into(lam.src(li), j) {
                        if lam.src(lj) == ge.rng {
                            out.push((i, j, li, lj, g));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Both routes of one triple, when every flip value they need is known.
fn routes(
    lam: &KGraph,
    om: &KGraph,
    fam: &FlipFamily,
    (i, j, li, lj, g): (usize, usize, usize, usize, usize),
) -> Option<((usize, usize, usize), (usize, usize, usize))> {
    let (g1, wj) = fam.get(j, lj, g)?;
    let (g2, wi) = fam.get(i, li, g1)?;
    let (wj2, wi2) = om.swap(wi, wj)?;
    let top = (g2, wj2, wi2);
    let (lj2, li2) = lam.swap(li, lj)?;
    let (h1, vi) = fam.get(i, li2, g)?;
    let (h2, vj) = fam.get(j, lj2, h1)?;
    let bottom = (h2, vj, vi);
    Some((top, bottom))
}

/// The square condition relating the flips of each pair of colors, checked
/// triple by triple. Invalid flips are an error.
pub fn coherence_check(lam: &KGraph, om: &KGraph, r: &IntMatrix, fam: &FlipFamily) -> Result<CoherenceReport> {
    let poly = polymorphism_from_matrix(lam, om, r)?;
    fam.check(lam, om, &poly)?;
    for t in triples(lam, &poly) {
        let (top, bottom) = routes(lam, om, fam, t).ok_or_else(|| KgError::Internal("flip lookup failed".into()))?;
        if top != bottom {
            let (i, j, li, lj, g) = t;
            return Ok(CoherenceReport {
                coherent: false,
                first_failure: Some(CoherenceFailure { colors: (i, j), lambda_i: li, lambda_j: lj, g, top, bottom }),
            });
        }
    }
    Ok(CoherenceReport { coherent: true, first_failure: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(FlipFamily),
    /// Number of complete families ruled out.
    Exhausted(BigUint),
}

struct Block {
    color: usize,
    domain: Vec<(usize, usize)>,
    codomain: Vec<(usize, usize)>,
}

/// Blocks keyed by (r(λ), s(g)), colors ascending then keys lexicographic.
fn blocks(lam: &KGraph, om: &KGraph, poly: &Polymorphism) -> Vec<Block> {
    let mut out = Vec::new();
    for c in 1..=lam.rank() {
        let mut dom: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (l, g) in domain_pairs(lam, poly, c) {
            dom.entry((lam.rng(l), poly.edges[g].src)).or_default().push((l, g));
        }
        let mut cod: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (g, w) in codomain_pairs(om, poly, c) {
            cod.entry((poly.edges[g].rng, om.src(w))).or_default().push((g, w));
        }
        for (key, domain) in dom {
            let codomain = cod.remove(&key).unwrap_or_default();
            out.push(Block { color: c, domain, codomain });
        }
    }
    out
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, t| acc * t)
}

struct Search<'a> {
    lam: &'a KGraph,
    om: &'a KGraph,
    blocks: Vec<Block>,
    triples: Vec<(usize, usize, usize, usize, usize)>,
    /// later[b] = Π_{c > b} |block c|!
    later: Vec<BigUint>,
    fam: FlipFamily,
    exhausted: BigUint,
}

impl Search<'_> {
    /// No triple whose routes are fully determined disagrees.
    fn consistent(&self) -> bool {
        self.triples.iter().all(|&t| routes(self.lam, self.om, &self.fam, t).is_none_or(|(a, b)| a == b))
    }

    fn run(&mut self, b: usize, t: usize, used: &mut Vec<bool>) -> bool {
        if b == self.blocks.len() {
            return true;
        }
        let n = self.blocks[b].domain.len();
        if t == n {
            let mut next = vec![false; self.blocks.get(b + 1).map_or(0, |x| x.codomain.len())];
            return self.run(b + 1, 0, &mut next);
        }
        let (color, (l, g)) = (self.blocks[b].color, self.blocks[b].domain[t]);
        for c in 0..n {
            if used[c] {
                continue;
            }
            used[c] = true;
            self.fam.insert(color, l, g, self.blocks[b].codomain[c]);
            if self.consistent() {
                if self.run(b, t + 1, used) {
                    return true;
                }
            } else {
                self.exhausted += factorial(n - t - 1) * &self.later[b];
            }
            self.fam.remove(color, l, g);
            used[c] = false;
        }
        false
    }
}

/// Backtracking over per-block bijections in lexicographic order, pruning
/// on every triple whose flip values are all assigned.
pub fn bridging_search(lam: &KGraph, om: &KGraph, r: &IntMatrix) -> Result<SearchOutcome> {
    if !intertwiner_check(lam, om, r)? {
        return Err(KgError::NotIntertwining);
    }
    let poly = polymorphism_from_matrix(lam, om, r)?;
    let blocks = blocks(lam, om, &poly);
    if blocks.iter().any(|b| b.domain.len() != b.codomain.len()) {
        return Err(KgError::Internal("block sizes differ for an intertwiner".into()));
    }
    let mut later = vec![BigUint::one(); blocks.len()];
    for b in (0..blocks.len().saturating_sub(1)).rev() {
        later[b] = &later[b + 1] * factorial(blocks[b + 1].domain.len());
    }
    let mut search = Search {
        lam,
        om,
        triples: triples(lam, &poly),
        later,
        fam: FlipFamily::empty(lam.rank()),
        exhausted: BigUint::zero(),
        blocks,
    };
    let mut used = vec![false; search.blocks.first().map_or(0, |x| x.codomain.len())];
    if search.run(0, 0, &mut used) {
        Ok(SearchOutcome::Found(search.fam))
    } else {
        Ok(SearchOutcome::Exhausted(search.exhausted))
    }
}

/// A matrix with a coherent flip family.
#[derive(Debug, Clone)]
pub struct BridgingPair {
    pub lambda: KGraph,
    pub omega: KGraph,
    pub matrix: IntMatrix,
    pub poly: Polymorphism,
    pub flips: FlipFamily,
}

impl BridgingPair {
    pub fn new(lam: &KGraph, om: &KGraph, r: &IntMatrix, flips: FlipFamily) -> Result<Self> {
        if !coherence_check(lam, om, r, &flips)?.coherent {
            return Err(KgError::IncoherentPair);
        }
        Ok(BridgingPair {
            lambda: lam.clone(),
            omega: om.clone(),
            matrix: r.clone(),
            poly: polymorphism_from_matrix(lam, om, r)?,
            flips,
        })
    }
}

/// Flip a path of Λ through g one edge at a time, starting from the edge
/// next to g: λ·g = g'·ω with d(ω) = d(λ).
pub fn extend_flip(pair: &BridgingPair, lambda: &Path, g: usize) -> Result<(usize, Path)> {
    flip_word(pair, lambda, g, lambda.edges().to_vec())
}

/// As [`extend_flip`], but first factor λ along the given color sequence.
pub fn extend_flip_along(pair: &BridgingPair, lambda: &Path, g: usize, colors: &[usize]) -> Result<(usize, Path)> {
    let word = factor(&pair.lambda, lambda, colors)?;
    flip_word(pair, lambda, g, word)
}

fn flip_word(pair: &BridgingPair, lambda: &Path, g: usize, word: Vec<usize>) -> Result<(usize, Path)> {
    let lam = &pair.lambda;
    let om = &pair.omega;
    if lambda.source() != pair.poly.edges[g].rng {
        return Err(KgError::NotComposable);
    }
    if word.is_empty() {
        return Ok((g, Path::vertex(om, pair.poly.edges[g].src)));
    }
    let mut cur = g;
    let mut omegas = Vec::with_capacity(word.len());
    for &e in word.iter().rev() {
        let (g2, w) = pair.flips.get(lam.color(e), e, cur).ok_or(KgError::IncoherentPair)?;
        omegas.push(w);
        cur = g2;
    }
    omegas.reverse();
    Ok((cur, Path::from_word(om, &omegas)?))
}

/// (g, ω) ↦ (λ, g') with λ·g' = g·ω, flipping the edges of ω back one at a
/// time from the range end. A vertex ω gives (r(g), g).
pub fn morph_apply(pair: &BridgingPair, g: usize, omega: &Path) -> Result<(Path, usize)> {
    let lam = &pair.lambda;
    let om = &pair.omega;
    if pair.poly.edges[g].src != omega.range() {
        return Err(KgError::NotComposable);
    }
    if omega.is_vertex() {
        return Ok((Path::vertex(lam, pair.poly.edges[g].rng), g));
    }
    let mut cur = g;
    let mut lambdas = Vec::with_capacity(omega.edges().len());
    for &w in omega.edges() {
        let (l, g2) = pair.flips.preimage(om.color(w), cur, w).ok_or(KgError::IncoherentPair)?;
        lambdas.push(l);
        cur = g2;
    }
    Ok((Path::from_word(lam, &lambdas)?, cur))
}

/// The (k+1)-colored graph on Λ⁰ ⊔ Ω⁰ whose color k+1 holds R¹, with each
/// flip f_i(λ, g) = (g', ω) read as the square λ·g = g'·ω. Ids carry the
/// prefixes `L.`, `O.` and `R.`.
pub fn bridging_graph_data(lam: &KGraph, om: &KGraph, r: &IntMatrix, fam: &FlipFamily) -> Result<GraphData> {
    if lam.rank() != om.rank() {
        return Err(KgError::RankMismatch { expected: lam.rank(), found: om.rank() });
    }
    let poly = polymorphism_from_matrix(lam, om, r)?;
    let k = lam.rank();
    let pre = |p: &str, id: &str| format!("{p}.{id}");
    let mut vertices: Vec<String> = lam.vertices().iter().map(|v| pre("L", v)).collect();
    vertices.extend(om.vertices().iter().map(|v| pre("O", v)));
    let mut edges = Vec::new();
    for (p, g) in [("L", lam), ("O", om)] {
        for e in g.edges() {
            edges.push(EdgeRecord {
                id: pre(p, &e.id),
                color: e.color,
                src: pre(p, g.vertex_id(e.src)),
                rng: pre(p, g.vertex_id(e.rng)),
            });
        }
    }
    for e in &poly.edges {
        edges.push(EdgeRecord {
            id: pre("R", &e.id),
            color: k + 1,
            src: pre("O", &poly.sources[e.src]),
            rng: pre("L", &poly.ranges[e.rng]),
        });
    }
    let mut squares = Vec::new();
    for (p, g) in [("L", lam), ("O", om)] {
        for sq in g.squares() {
            squares.push(Square {
                left: (pre(p, &sq.left.0), pre(p, &sq.left.1)),
                right: (pre(p, &sq.right.0), pre(p, &sq.right.1)),
            });
        }
    }
    for c in 1..=fam.rank() {
        for ((l, g), (g2, w)) in fam.entries(c) {
            let (Some(ge), Some(g2e)) = (poly.edges.get(g), poly.edges.get(g2)) else {
                return Err(KgError::InvalidFlips("polymorphism edge out of range".into()));
            };
            if l >= lam.edges().len() || w >= om.edges().len() {
                return Err(KgError::InvalidFlips("graph edge out of range".into()));
            }
            squares.push(Square {
                left: (pre("L", lam.edge_id(l)), pre("R", &ge.id)),
                right: (pre("R", &g2e.id), pre("O", om.edge_id(w))),
            });
        }
    }
    Ok(GraphData { skeleton: Skeleton { rank: k + 1, vertices, edges }, squares, strict: false, doc: None })
}

/// [`bridging_graph_data`], validated.
pub fn bridging_graph(lam: &KGraph, om: &KGraph, r: &IntMatrix, fam: &FlipFamily) -> Result<KGraph> {
    bridging_graph_data(lam, om, r, fam)?.validate()
}

/// Serialized form of a flip family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlipDoc {
    pub color: usize,
    pub from: [String; 2],
    pub to: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlipsDoc {
    pub flips: Vec<FlipDoc>,
}

impl FlipsDoc {
    pub fn from_family(lam: &KGraph, om: &KGraph, poly: &Polymorphism, fam: &FlipFamily) -> Self {
        let mut flips = Vec::new();
        for c in 1..=fam.rank() {
            for ((l, g), (g2, w)) in fam.entries(c) {
                flips.push(FlipDoc {
                    color: c,
                    from: [lam.edge_id(l).to_string(), poly.edge_id(g).to_string()],
                    to: [poly.edge_id(g2).to_string(), om.edge_id(w).to_string()],
                });
            }
        }
        FlipsDoc { flips }
    }

    /// The family named by the document, checked to be a valid flip family.
    pub fn to_family(&self, lam: &KGraph, om: &KGraph, poly: &Polymorphism) -> Result<FlipFamily> {
        let entries: Vec<(usize, &str, &str, &str, &str)> = self
            .flips
            .iter()
            .map(|f| (f.color, f.from[0].as_str(), f.from[1].as_str(), f.to[0].as_str(), f.to[1].as_str()))
            .collect();
        let fam = FlipFamily::from_ids(lam, om, poly, &entries)?;
        fam.check(lam, om, poly)?;
        Ok(fam)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| KgError::Parse(e.to_string()))
    }
}

impl fmt::Display for FlipsDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.flips {
            writeln!(f, "f{}: ({}, {}) -> ({}, {})", d.color, d.from[0], d.from[1], d.to[0], d.to[1])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::rose;

    #[test]
    fn poly_adjacency_roundtrip() {
        let g = rose(2);
        let r = IntMatrix::from_rows(&[vec![3]]);
        let p = polymorphism_from_matrix(&g, &g, &r).unwrap();
        assert_eq!(p.edges.len(), 3);
        assert_eq!(p.adjacency(), r);
        assert_eq!(p.edges[0].id, "g1^{v,v}");
    }

    #[test]
    fn rank_one_search_is_immediate() {
        let g = rose(2);
        let r = IntMatrix::identity(1);
        let SearchOutcome::Found(fam) = bridging_search(&g, &g, &r).unwrap() else {
            panic!("a 1-graph pair always bridges");
        };
        assert!(coherence_check(&g, &g, &r, &fam).unwrap().coherent);
        assert!(bridging_graph(&g, &g, &r, &fam).is_ok());
    }

    #[test]
    fn compose_counts_multiply() {
        let g = rose(2);
        let e = edge_polymorphism(&g, 1);
        let r = polymorphism_from_matrix(&g, &g, &IntMatrix::from_rows(&[vec![2]])).unwrap();
        let c = compose_poly(&e, &r).unwrap();
        assert_eq!(c.adjacency(), e.adjacency().mul(&r.adjacency()));
    }
}

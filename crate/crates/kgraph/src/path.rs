//! Morphisms of a k-graph as color-sorted edge words.

use crate::degree::Degree;
use crate::error::{KgError, Result};
use crate::graph::KGraph;

/// A path in normal form: all color-1 edges first, then color 2, and so on.
///
/// Words are read from the range end: `edges[0]` has range `range`, and the
/// source of each edge is the range of the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    range: usize,
    source: usize,
    edges: Vec<usize>,
    degree: Degree,
}

impl Path {
    pub fn vertex(g: &KGraph, v: usize) -> Path {
        Path { range: v, source: v, edges: Vec::new(), degree: Degree::zero(g.rank()) }
    }

    pub fn edge(g: &KGraph, e: usize) -> Path {
        Path {
            range: g.rng(e),
            source: g.src(e),
            edges: vec![e],
            degree: Degree::basis(g.rank(), g.color(e)),
        }
    }

    /// Build from any composable edge word, normalizing it.
    pub fn from_word(g: &KGraph, word: &[usize]) -> Result<Path> {
        let Some(&first) = word.first() else {
            return Err(KgError::NotComposable);
        };
        check_composable(g, word)?;
        let mut w = word.to_vec();
        normalize_in_place(g, &mut w, &mut |_| 0);
        let mut degree = Degree::zero(g.rank());
        for &e in &w {
            degree.0[g.color(e) - 1] += 1;
        }
        Ok(Path { range: g.rng(first), source: g.src(*word.last().unwrap()), edges: w, degree })
    }

    /// Build from edge ids; the word need not be sorted.
    pub fn from_ids(g: &KGraph, ids: &[&str]) -> Result<Path> {
        let word = ids.iter().map(|id| g.edge_by_id(id)).collect::<Result<Vec<_>>>()?;
        Path::from_word(g, &word)
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn ids<'g>(&self, g: &'g KGraph) -> Vec<&'g str> {
        self.edges.iter().map(|&e| g.edge_id(e)).collect()
    }

    /// Human-readable form: edge ids joined by `·`, or the vertex id.
    pub fn display(&self, g: &KGraph) -> String {
        if self.edges.is_empty() {
            g.vertex_id(self.range).to_string()
        } else {
            self.ids(g).join("·")
        }
    }
}

fn check_composable(g: &KGraph, word: &[usize]) -> Result<()> {
    if word.windows(2).all(|w| g.src(w[0]) == g.rng(w[1])) {
        Ok(())
    } else {
        Err(KgError::NotComposable)
    }
}

/// Positions `p` where `word[p]` has a larger color than `word[p+1]`.
fn descents(g: &KGraph, word: &[usize]) -> Vec<usize> {
    (0..word.len().saturating_sub(1)).filter(|&p| g.color(word[p]) > g.color(word[p + 1])).collect()
}

/// Sort a composable word by repeated square swaps; `choose` picks which
/// descent to resolve among the candidates.
fn normalize_in_place(g: &KGraph, word: &mut [usize], choose: &mut dyn FnMut(usize) -> usize) {
    loop {
        let d = descents(g, word);
        if d.is_empty() {
            return;
        }
        let p = d[choose(d.len()) % d.len()];
        let (x, y) = g.swap(word[p], word[p + 1]).expect("validated graph has every square");
        word[p] = x;
        word[p + 1] = y;
    }
}

/// Normalize a composable word resolving descents in the order picked by
/// `choose` (given the number of candidates, returns an index). Confluence
/// makes the result independent of the choices.
pub fn normalize_word_by(
    g: &KGraph,
    word: &[usize],
    mut choose: impl FnMut(usize) -> usize,
) -> Result<Vec<usize>> {
    check_composable(g, word)?;
    let mut w = word.to_vec();
    normalize_in_place(g, &mut w, &mut choose);
    Ok(w)
}

/// Compose `p` then `q` (requires `s(p) = r(q)`).
pub fn compose(g: &KGraph, p: &Path, q: &Path) -> Result<Path> {
    if p.source != q.range {
        return Err(KgError::NotComposable);
    }
    if p.is_vertex() {
        return Ok(q.clone());
    }
    if q.is_vertex() {
        return Ok(p.clone());
    }
    let mut word = p.edges.clone();
    word.extend_from_slice(&q.edges);
    normalize_in_place(g, &mut word, &mut |_| 0);
    Ok(Path { range: p.range, source: q.source, edges: word, degree: p.degree.add(&q.degree) })
}

/// The factorization of `p` whose edge colors follow `colors`, which must be
/// a rearrangement of the colors of `p`.
pub fn factor(g: &KGraph, p: &Path, colors: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    if sorted != p.degree.color_word() {
        return Err(KgError::DegreeOutOfRange);
    }
    let mut w = p.edges.clone();
    for (t, &c) in colors.iter().enumerate() {
        let s = (t..w.len()).find(|&s| g.color(w[s]) == c).expect("color multiset checked");
        for q in (t..s).rev() {
            let (x, y) = g.swap(w[q], w[q + 1]).expect("validated graph has every square");
            w[q] = x;
            w[q + 1] = y;
        }
    }
    Ok(w)
}

/// The segment λ(m, n) of a path, for 0 ≤ m ≤ n ≤ d(λ).
pub fn segment(g: &KGraph, p: &Path, m: &Degree, n: &Degree) -> Result<Path> {
    if m.rank() != g.rank() || n.rank() != g.rank() || !m.le(n) || !n.le(&p.degree) {
        return Err(KgError::DegreeOutOfRange);
    }
    let mid = n.checked_sub(m).unwrap();
    let tail = p.degree.checked_sub(n).unwrap();
    let mut colors = m.color_word();
    colors.extend(mid.color_word());
    colors.extend(tail.color_word());
    let word = factor(g, p, &colors)?;
    let start = m.total() as usize;
    let end = n.total() as usize;
    let edges = word[start..end].to_vec();
    let range = if start == 0 { p.range } else { g.src(word[start - 1]) };
    let source = if end == 0 { p.range } else { g.src(word[end - 1]) };
    Ok(Path { range, source, edges, degree: mid })
}

/// All normal-form paths with range `v` and degree `n`, in lexicographic
/// order of edge indices.
pub fn paths_of_degree(g: &KGraph, v: usize, n: &Degree) -> Vec<Path> {
    let colors = n.color_word();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(colors.len());
    extend_paths(g, v, &colors, &mut word, &mut out);
    out.into_iter()
        .map(|w: Vec<usize>| {
            let source = w.last().map_or(v, |&e| g.src(e));
            Path { range: v, source, edges: w, degree: n.clone() }
        })
        .collect()
}

fn extend_paths(g: &KGraph, at: usize, colors: &[usize], word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some((&c, rest)) = colors.split_first() else {
        out.push(word.clone());
        return;
    };
    for &e in g.edges_into(at, c) {
        word.push(e);
        extend_paths(g, g.src(e), rest, word, out);
        word.pop();
    }
}

/// Minimal common extensions of `p` and `q`, by enumeration.
pub fn mce(g: &KGraph, p: &Path, q: &Path) -> Vec<Path> {
    if p.range != q.range {
        return Vec::new();
    }
    let top = p.degree.join(&q.degree);
    let zero = Degree::zero(g.rank());
    paths_of_degree(g, p.range, &top)
        .into_iter()
        .filter(|t| {
            segment(g, t, &zero, &p.degree).is_ok_and(|s| s == *p)
                && segment(g, t, &zero, &q.degree).is_ok_and(|s| s == *q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_kgraph, EdgeRecord, Skeleton, Square};

    /// One vertex, blue loop f, red loops e1 e2, with e1·f = f·e2 and e2·f = f·e1.
    fn twisted() -> KGraph {
        let edge = |id: &str, color| EdgeRecord { id: id.into(), color, src: "v".into(), rng: "v".into() };
        let s = Skeleton { rank: 2, vertices: vec!["v".into()], edges: vec![edge("f", 1), edge("e1", 2), edge("e2", 2)] };
        let sq = |g: &str, h: &str, h2: &str, g2: &str| Square { left: (g.into(), h.into()), right: (h2.into(), g2.into()) };
        validate_kgraph(&s, &[sq("f", "e2", "e1", "f"), sq("f", "e1", "e2", "f")], true).unwrap()
    }

    #[test]
    fn compose_uses_squares() {
        let g = twisted();
        let e1 = Path::from_ids(&g, &["e1"]).unwrap();
        let f = Path::from_ids(&g, &["f"]).unwrap();
        let p = compose(&g, &e1, &f).unwrap();
        assert_eq!(p.ids(&g), vec!["f", "e2"]);
        assert_eq!(p.degree(), &Degree(vec![1, 1]));
    }

    #[test]
    fn segment_reads_backwards() {
        let g = twisted();
        let p = Path::from_ids(&g, &["f", "e2"]).unwrap();
        let s = segment(&g, &p, &Degree(vec![0, 0]), &Degree(vec![0, 1])).unwrap();
        assert_eq!(s.ids(&g), vec!["e1"]);
        let rest = segment(&g, &p, &Degree(vec![0, 1]), &Degree(vec![1, 1])).unwrap();
        assert_eq!(compose(&g, &s, &rest).unwrap(), p);
    }

    #[test]
    fn vertex_identity() {
        let g = twisted();
        let v = Path::vertex(&g, 0);
        let f = Path::from_ids(&g, &["f"]).unwrap();
        assert_eq!(compose(&g, &v, &f).unwrap(), f);
        assert_eq!(compose(&g, &f, &v).unwrap(), f);
    }

    #[test]
    fn paths_count_matches_matrix() {
        let g = twisted();
        let n = Degree(vec![2, 1]);
        assert_eq!(paths_of_degree(&g, 0, &n).len(), 2);
        assert_eq!(g.vertex_matrix(&n)[(0, 0)], 2.into());
    }

    #[test]
    fn distinct_same_degree_paths_have_no_mce() {
        let g = twisted();
        let e1 = Path::from_ids(&g, &["e1"]).unwrap();
        let e2 = Path::from_ids(&g, &["e2"]).unwrap();
        assert!(mce(&g, &e1, &e2).is_empty());
        assert_eq!(mce(&g, &e1, &e1), vec![e1]);
    }
}

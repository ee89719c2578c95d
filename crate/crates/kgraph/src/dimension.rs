//! The dimension group H_Λ (graded K₀) and the talented monoid inside it.
//!
//! An element [x, n] is a row vector over the vertices with a shift n ∈ ℤᵏ;
//! the vertex generator v(n) is [ε_v, n] and [x, n] = [x·A_m, n + m].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::constructions::{parse_shift, MonoidHom};
use crate::degree::{Degree, Shift};
use crate::error::{KgError, Result};
use crate::graph::KGraph;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimElement {
    pub x: Vec<BigInt>,
    pub n: Shift,
}

impl DimElement {
    pub fn zero(g: &KGraph) -> Self {
        DimElement { x: vec![BigInt::zero(); g.vertex_count()], n: Shift::zero(g.rank()) }
    }

    /// The generator v(n).
    pub fn generator(g: &KGraph, v: usize, n: Shift) -> Self {
        let mut x = vec![BigInt::zero(); g.vertex_count()];
        x[v] = BigInt::one();
        DimElement { x, n }
    }

    pub fn new(x: Vec<BigInt>, n: Shift) -> Self {
        DimElement { x, n }
    }

    pub fn from_ints(x: &[i64], n: &[i64]) -> Self {
        DimElement { x: x.iter().map(|&c| c.into()).collect(), n: Shift(n.to_vec()) }
    }

    /// Σ c · v(n) over (vertex, shift, coefficient) terms.
    pub fn from_terms(g: &KGraph, terms: &[(usize, Shift, BigInt)]) -> Result<Self> {
        let mut acc = DimElement::zero(g);
        for (v, n, c) in terms {
            acc = dge_add(g, &acc, &DimElement::generator(g, *v, n.clone()).scale(c))?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        DimElement { x: self.x.iter().map(|a| a * c).collect(), n: self.n.clone() }
    }

    pub fn neg(&self) -> Self {
        DimElement { x: self.x.iter().map(|a| -a).collect(), n: self.n.clone() }
    }

    fn check(&self, g: &KGraph) -> Result<()> {
        if self.n.rank() != g.rank() {
            return Err(KgError::RankMismatch { expected: g.rank(), found: self.n.rank() });
        }
        if self.x.len() != g.vertex_count() {
            return Err(KgError::DimensionMismatch(format!(
                "element has {} coordinates, graph has {} vertices",
                self.x.len(),
                g.vertex_count()
            )));
        }
        Ok(())
    }

    /// Human-readable sum of generators, e.g. `2·u(0,0) + v(1,0)`.
    pub fn display(&self, g: &KGraph) -> String {
        let terms: Vec<String> = self
            .x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| {
                let gen = format!("{}{}", g.vertex_id(v), self.n);
                if c.is_one() {
                    gen
                } else {
                    format!("{c}·{gen}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for DimElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.x.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}; {}]", xs.join(" "), self.n)
    }
}

/// Parse `"u:0,0:2 + v:1,0"`: terms `vertex:shift[:coefficient]` separated by
/// whitespace or `+`.
pub fn parse_element(g: &KGraph, text: &str) -> Result<DimElement> {
    let mut terms = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == '+').filter(|t| !t.is_empty()) {
        terms.push(parse_term(g, tok)?);
    }
    DimElement::from_terms(g, &terms)
}

fn parse_term(g: &KGraph, tok: &str) -> Result<(usize, Shift, BigInt)> {
    let pieces: Vec<&str> = tok.rsplitn(3, ':').collect();
    if pieces.len() == 3 {
        if let (Ok(c), Ok(n)) = (pieces[0].parse::<BigInt>(), parse_shift(pieces[1])) {
            if n.rank() == g.rank() {
                return Ok((g.vertex(pieces[2])?, n, c));
            }
        }
    }
    let (v, n) = tok
        .rsplit_once(':')
        .ok_or_else(|| KgError::Parse(format!("term {tok:?} is not vertex:shift[:coefficient]")))?;
    let n = parse_shift(n)?;
    if n.rank() != g.rank() {
        return Err(KgError::RankMismatch { expected: g.rank(), found: n.rank() });
    }
    Ok((g.vertex(v)?, n, BigInt::one()))
}

/// The representative of `a` at level `p ≥ a.n`: x·A_{p−n}.
fn lift(g: &KGraph, a: &DimElement, p: &Shift) -> Vec<BigInt> {
    let d = p.degree_above(&a.n).expect("lift target dominates the shift");
    g.vertex_matrix(&d).left_mul_vec(&a.x)
}

pub fn dge_add(g: &KGraph, a: &DimElement, b: &DimElement) -> Result<DimElement> {
    a.check(g)?;
    b.check(g)?;
    let p = a.n.join(&b.n);
    let xa = lift(g, a, &p);
    let xb = lift(g, b, &p);
    Ok(DimElement { x: xa.iter().zip(&xb).map(|(s, t)| s + t).collect(), n: p })
}

pub fn dge_sub(g: &KGraph, a: &DimElement, b: &DimElement) -> Result<DimElement> {
    dge_add(g, a, &b.neg())
}

/// The ℤᵏ-action: [x, n] ↦ [x, n + m].
pub fn dge_shift(a: &DimElement, m: &Shift) -> DimElement {
    DimElement { x: a.x.clone(), n: a.n.add(m) }
}

/// [x, n] = 0 iff x·A_q = 0 for some q, iff x·P^d = 0 where P = A_{e_1}⋯A_{e_k}
/// and d = |Λ⁰| (the kernel chain of P stabilizes after d steps).
pub fn dge_is_zero(g: &KGraph, a: &DimElement) -> Result<bool> {
    a.check(g)?;
    if a.x.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let pd = g.total_matrix().pow(g.vertex_count() as u64);
    Ok(pd.left_mul_vec(&a.x).iter().all(Zero::is_zero))
}

/// Equality in H_Λ.
pub fn dge_eq(g: &KGraph, a: &DimElement, b: &DimElement) -> Result<bool> {
    dge_is_zero(g, &dge_sub(g, a, b)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    NotPositive,
    Unknown,
}

/// Bounded cone membership. `Positive` when some x·A_q (q ≤ q_max in every
/// coordinate) is nonnegative; `NotPositive` when some x·A_q is nonpositive
/// and the element is nonzero, since every later representative then stays
/// nonpositive and nonzero.
pub fn positivity(g: &KGraph, a: &DimElement, q_max: u32) -> Result<Positivity> {
    a.check(g)?;
    if dge_is_zero(g, a)? {
        return Ok(Positivity::Positive);
    }
    // both sign conditions persist under further multiplication, so the
    // corner of the box decides
    let corner = Degree(vec![q_max; g.rank()]);
    let y = g.vertex_matrix(&corner).left_mul_vec(&a.x);
    if y.iter().all(|c| !c.is_negative()) {
        Ok(Positivity::Positive)
    } else if y.iter().all(|c| !c.is_positive()) {
        Ok(Positivity::NotPositive)
    } else {
        Ok(Positivity::Unknown)
    }
}

/// A map T_Λ → T_Ω given on generators: `images[v]` is the image of v(0).
/// The shift action is carried along `degree_map` (identity when `None`).
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    pub source: KGraph,
    pub target: KGraph,
    pub images: Vec<DimElement>,
    pub degree_map: Option<MonoidHom>,
}

impl GeneratorMap {
    pub fn new(source: &KGraph, target: &KGraph, images: Vec<DimElement>) -> Result<Self> {
        if source.rank() != target.rank() {
            return Err(KgError::RankMismatch { expected: source.rank(), found: target.rank() });
        }
        Self::build(source, target, images, None)
    }

    /// A map whose shift action goes through a monoid homomorphism
    /// ℕ^{rank(source)} → ℕ^{rank(target)}.
    pub fn along(source: &KGraph, target: &KGraph, images: Vec<DimElement>, f: MonoidHom) -> Result<Self> {
        if f.source_rank != source.rank() || f.target_rank != target.rank() {
            return Err(KgError::RankMismatch { expected: source.rank(), found: f.source_rank });
        }
        Self::build(source, target, images, Some(f))
    }

    fn build(source: &KGraph, target: &KGraph, images: Vec<DimElement>, degree_map: Option<MonoidHom>) -> Result<Self> {
        if images.len() != source.vertex_count() {
            return Err(KgError::DimensionMismatch(format!(
                "{} images for {} source vertices",
                images.len(),
                source.vertex_count()
            )));
        }
        for im in &images {
            im.check(target)?;
        }
        Ok(GeneratorMap { source: source.clone(), target: target.clone(), images, degree_map })
    }

    /// v(0) ↦ w(0) where w has the same id as v.
    pub fn same_names(source: &KGraph, target: &KGraph) -> Result<Self> {
        let images = source
            .vertices()
            .iter()
            .map(|id| Ok(DimElement::generator(target, target.vertex(id)?, Shift::zero(target.rank()))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    /// v(0) ↦ [ε_v R, 0].
    pub fn from_matrix(source: &KGraph, target: &KGraph, r: &IntMatrix) -> Result<Self> {
        check_shape(source, target, r)?;
        let images = (0..source.vertex_count())
            .map(|v| DimElement::new(r.row(v).to_vec(), Shift::zero(target.rank())))
            .collect();
        Self::new(source, target, images)
    }

    fn map_shift(&self, n: &Shift) -> Shift {
        match &self.degree_map {
            Some(f) => f.apply_shift(n),
            None => n.clone(),
        }
    }

    /// Extend additively and equivariantly to any element of the source.
    pub fn apply(&self, a: &DimElement) -> Result<DimElement> {
        a.check(&self.source)?;
        let shift = self.map_shift(&a.n);
        let mut acc = DimElement::zero(&self.target);
        for (v, c) in a.x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = dge_shift(&self.images[v], &shift).scale(c);
            acc = dge_add(&self.target, &acc, &term)?;
        }
        Ok(acc)
    }
}

/// The map respects v(0) = Σ_{α ∈ vΛ^{e_i}} s(α)(e_i) for every v and i.
pub fn hom_check(m: &GeneratorMap) -> Result<bool> {
    Ok(first_hom_failure(m)?.is_none())
}

/// The first (vertex, color) whose relation is not preserved.
pub fn first_hom_failure(m: &GeneratorMap) -> Result<Option<(usize, usize)>> {
    let src = &m.source;
    for v in 0..src.vertex_count() {
        for i in 1..=src.rank() {
            let step = m.map_shift(&Shift::basis(src.rank(), i));
            let mut rhs = DimElement::zero(&m.target);
            for &alpha in src.edges_into(v, i) {
                rhs = dge_add(&m.target, &rhs, &dge_shift(&m.images[src.src(alpha)], &step))?;
            }
            if !dge_eq(&m.target, &m.images[v], &rhs)? {
                return Ok(Some((v, i)));
            }
        }
    }
    Ok(None)
}

fn same_graph(a: &KGraph, b: &KGraph) -> bool {
    a.rank() == b.rank() && a.vertices() == b.vertices()
}

/// Both maps are homomorphisms and mutually inverse on generators.
pub fn iso_check(fwd: &GeneratorMap, bwd: &GeneratorMap) -> Result<bool> {
    if !same_graph(&fwd.source, &bwd.target) || !same_graph(&fwd.target, &bwd.source) {
        return Err(KgError::DimensionMismatch("maps do not run between the same pair of graphs".into()));
    }
    if !hom_check(fwd)? || !hom_check(bwd)? {
        return Ok(false);
    }
    for (there, back) in [(fwd, bwd), (bwd, fwd)] {
        for v in 0..there.source.vertex_count() {
            let g = DimElement::generator(&there.source, v, Shift::zero(there.source.rank()));
            let round = back.apply(&there.apply(&g)?)?;
            if !dge_eq(&there.source, &round, &g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn unit(g: &KGraph) -> DimElement {
    DimElement { x: vec![BigInt::one(); g.vertex_count()], n: Shift::zero(g.rank()) }
}

/// The map sends Σ_v v(0) to Σ_w w(0).
pub fn pointed_check(fwd: &GeneratorMap) -> Result<bool> {
    dge_eq(&fwd.target, &fwd.apply(&unit(&fwd.source))?, &unit(&fwd.target))
}

fn check_shape(a: &KGraph, b: &KGraph, r: &IntMatrix) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(KgError::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    if r.rows() != a.vertex_count() || r.cols() != b.vertex_count() {
        return Err(KgError::DimensionMismatch(format!(
            "matrix is {}×{}, expected {}×{}",
            r.rows(),
            r.cols(),
            a.vertex_count(),
            b.vertex_count()
        )));
    }
    Ok(())
}

/// A_{e_i} R = R B_{e_i} for every color.
pub fn intertwiner_check(a: &KGraph, b: &KGraph, r: &IntMatrix) -> Result<bool> {
    check_shape(a, b, r)?;
    Ok((1..=a.rank()).all(|i| a.color_matrix(i).mul(r) == r.mul(&b.color_matrix(i))))
}

/// [x, n] ↦ [xR, n].
pub fn hom_from_matrix(r: &IntMatrix, a: &DimElement) -> DimElement {
    DimElement { x: r.left_mul_vec(&a.x), n: a.n.clone() }
}

/// Rational rank of the eventual image: rank(P^d).
pub fn rank_invariant(g: &KGraph) -> usize {
    if g.vertex_count() == 0 {
        return 0;
    }
    g.total_matrix().pow(g.vertex_count() as u64).rank()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseWitness {
    pub p: Degree,
    pub r: IntMatrix,
    pub s: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SseOutcome {
    Found(SseWitness),
    ExhaustedBounds,
}

/// Check A_p = RS, B_p = SR, A_{e_i}R = RB_{e_i}, B_{e_i}S = SA_{e_i}.
pub fn sse_witness_check(a: &KGraph, b: &KGraph, w: &SseWitness) -> bool {
    let (r, s) = (&w.r, &w.s);
    if r.rows() != a.vertex_count() || r.cols() != b.vertex_count() {
        return false;
    }
    if s.rows() != b.vertex_count() || s.cols() != a.vertex_count() {
        return false;
    }
    a.vertex_matrix(&w.p) == r.mul(s)
        && b.vertex_matrix(&w.p) == s.mul(r)
        && (1..=a.rank()).all(|i| {
            a.color_matrix(i).mul(r) == r.mul(&b.color_matrix(i))
                && b.color_matrix(i).mul(s) == s.mul(&a.color_matrix(i))
        })
}

/// First witness in lexicographic order of (p, R, S), with p ≤ p_max in each
/// coordinate and matrix entries in 0..=entry_max. Exhaustion proves nothing
/// beyond the bounds.
pub fn sse_search(a: &KGraph, b: &KGraph, p_max: u32, entry_max: u32) -> Result<SseOutcome> {
    if a.rank() != b.rank() {
        return Err(KgError::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    let k = a.rank();
    let (da, db) = (a.vertex_count(), b.vertex_count());
    let am: Vec<IntMatrix> = (1..=k).map(|i| a.color_matrix(i)).collect();
    let bm: Vec<IntMatrix> = (1..=k).map(|i| b.color_matrix(i)).collect();

    // R is da×db, variable r*db + c; constraints (A_i R − R B_i)[x][y] = 0
    let mut r_sys = LinearSystem::new(da * db);
    for i in 0..k {
        for x in 0..da {
            for y in 0..db {
                let mut terms = Vec::new();
                for t in 0..da {
                    terms.push((t * db + y, am[i][(x, t)].clone()));
                }
                for t in 0..db {
                    terms.push((x * db + t, -bm[i][(t, y)].clone()));
                }
                r_sys.add(terms, BigInt::zero());
            }
        }
    }

    for p in degrees_up_to(k, p_max) {
        let ap = a.vertex_matrix(&p);
        let bp = b.vertex_matrix(&p);
        let mut found = None;
        r_sys.solve(entry_max, &mut |rv| {
            let r = to_matrix(rv, da, db);
            let s_sys = s_system(&r, &ap, &bp, &am, &bm);
            let mut first_s = None;
            s_sys.solve(entry_max, &mut |sv| {
                first_s = Some(to_matrix(sv, db, da));
                true
            });
            if let Some(s) = first_s {
                found = Some(SseWitness { p: p.clone(), r, s });
                true
            } else {
                false
            }
        });
        if let Some(w) = found {
            debug_assert!(sse_witness_check(a, b, &w));
            return Ok(SseOutcome::Found(w));
        }
    }
    Ok(SseOutcome::ExhaustedBounds)
}

/// S is db×da, variable s*da + c.
fn s_system(r: &IntMatrix, ap: &IntMatrix, bp: &IntMatrix, am: &[IntMatrix], bm: &[IntMatrix]) -> LinearSystem {
    let (da, db) = (r.rows(), r.cols());
    let mut sys = LinearSystem::new(db * da);
    // (RS)[x][y] = A_p[x][y]
    for x in 0..da {
        for y in 0..da {
            let terms = (0..db).map(|t| (t * da + y, r[(x, t)].clone())).collect();
            sys.add(terms, ap[(x, y)].clone());
        }
    }
    // (SR)[x][y] = B_p[x][y]
    for x in 0..db {
        for y in 0..db {
            let terms = (0..da).map(|t| (x * da + t, r[(t, y)].clone())).collect();
            sys.add(terms, bp[(x, y)].clone());
        }
    }
    // (B_i S − S A_i)[x][y] = 0
    for (ai, bi) in am.iter().zip(bm) {
        for x in 0..db {
            for y in 0..da {
                let mut terms: Vec<(usize, BigInt)> = (0..db).map(|t| (t * da + y, bi[(x, t)].clone())).collect();
                terms.extend((0..da).map(|t| (x * da + t, -ai[(t, y)].clone())));
                sys.add(terms, BigInt::zero());
            }
        }
    }
    sys
}

fn to_matrix(values: &[u32], rows: usize, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = values[r * cols + c].into();
        }
    }
    m
}

/// All degrees with coordinates ≤ bound, in lexicographic order.
pub fn degrees_up_to(k: usize, bound: u32) -> Vec<Degree> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
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
    out.into_iter().map(Degree).collect()
}

/// Linear equations Σ c·x = rhs over bounded nonnegative integer unknowns,
/// solved by depth-first search in lexicographic order with interval pruning.
struct LinearSystem {
    nvars: usize,
    constraints: Vec<(Vec<(usize, BigInt)>, BigInt)>,
    by_var: Vec<Vec<usize>>,
}

impl LinearSystem {
    fn new(nvars: usize) -> Self {
        LinearSystem { nvars, constraints: Vec::new(), by_var: vec![Vec::new(); nvars] }
    }

    fn add(&mut self, terms: Vec<(usize, BigInt)>, rhs: BigInt) {
        let mut merged: Vec<(usize, BigInt)> = Vec::new();
        for (v, c) in terms {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, acc)) => *acc += c,
                None => merged.push((v, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        if merged.is_empty() {
            if !rhs.is_zero() {
                // unsatisfiable; keep a constraint that always fails
                self.constraints.push((Vec::new(), rhs));
            }
            return;
        }
        let idx = self.constraints.len();
        for (v, _) in &merged {
            self.by_var[*v].push(idx);
        }
        self.constraints.push((merged, rhs));
    }

    /// Calls `visit` on solutions in lexicographic order until it returns true.
    fn solve(&self, max: u32, visit: &mut dyn FnMut(&[u32]) -> bool) {
        if self.constraints.iter().any(|(t, rhs)| t.is_empty() && !rhs.is_zero()) {
            return;
        }
        let mut values = vec![0u32; self.nvars];
        self.dfs(0, max, &mut values, visit);
    }

    fn dfs(&self, var: usize, max: u32, values: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if var == self.nvars {
            return visit(values);
        }
        for val in 0..=max {
            values[var] = val;
            if self.by_var[var].iter().all(|&c| self.feasible(c, var, max, values)) && self.dfs(var + 1, max, values, visit)
            {
                return true;
            }
        }
        false
    }

    /// Can the constraint still hold when variables after `assigned` range over 0..=max?
    fn feasible(&self, c: usize, assigned: usize, max: u32, values: &[u32]) -> bool {
        let (terms, rhs) = &self.constraints[c];
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (v, coef) in terms {
            if *v <= assigned {
                let t = coef * values[*v];
                lo += &t;
                hi += t;
            } else if coef.is_positive() {
                hi += coef * max;
            } else {
                lo += coef * max;
            }
        }
        &lo <= rhs && rhs <= &hi
    }
}

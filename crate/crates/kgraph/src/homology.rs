//! Smith normal form and zeroth groupoid homology.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::constructions::{pullback, MonoidHom};
use crate::degree::Shift;
use crate::dimension::{dge_eq, hom_check, rank_invariant, DimElement, GeneratorMap};
use crate::error::{KgError, Result};
use crate::graph::KGraph;
use crate::matrix::IntMatrix;

/// U·M·V = D with U, V unimodular and D diagonal, each diagonal entry
/// dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = m[(i, c)].clone();
                m[(i, c)] = m[(j, c)].clone();
                m[(j, c)] = t;
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let t = m[(r, i)].clone();
                m[(r, i)] = m[(r, j)].clone();
                m[(r, j)] = t;
            }
        }
    }

    /// row_i −= q · row_j
    fn sub_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = &m[(j, c)] * q;
                m[(i, c)] -= t;
            }
        }
    }

    /// col_i −= q · col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let t = &m[(r, j)] * q;
                m[(r, i)] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                m[(i, c)] = -m[(i, c)].clone();
            }
        }
    }

    /// Position of a nonzero entry of least absolute value in the block
    /// starting at (t, t).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let x = &self.a[(r, c)];
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < self.a[(br, bc)].abs()) {
                    best = Some((r, c));
                }
            }
        }
        best
    }
}

/// Smith normal form over arbitrary-precision integers, pivoting on the
/// entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut red = Reducer { a: m.clone(), u: IntMatrix::identity(rows), v: IntMatrix::identity(cols) };
    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = red.min_pivot(t) else {
                return finish(red);
            };
            red.swap_rows(t, pr);
            red.swap_cols(t, pc);
            let mut clean = true;
            for r in t + 1..rows {
                if !red.a[(r, t)].is_zero() {
                    let q = red.a[(r, t)].div_floor(&red.a[(t, t)]);
                    red.sub_row(r, t, &q);
                    clean &= red.a[(r, t)].is_zero();
                }
            }
            for c in t + 1..cols {
                if !red.a[(t, c)].is_zero() {
                    let q = red.a[(t, c)].div_floor(&red.a[(t, t)]);
                    red.sub_col(c, t, &q);
                    clean &= red.a[(t, c)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let pivot = red.a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !red.a[(r, c)].is_multiple_of(&pivot)));
            match offender {
                Some(r) => red.sub_row(t, r, &BigInt::from(-1)),
                None => break,
            }
        }
        if red.a[(t, t)].is_negative() {
            red.negate_row(t);
        }
    }
    finish(red)
}

fn finish(red: Reducer) -> SmithForm {
    SmithForm { d: red.a, u: red.u, v: red.v }
}

/// A finitely generated abelian group ℤ^free_rank ⊕ ⊕ ℤ/t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        write!(f, "rank {}, torsion [{}]", self.free_rank, ts.join(", "))
    }
}

/// The cokernel of the row space of `m` inside ℤ^cols.
pub fn cokernel(m: &IntMatrix) -> AbelianInvariants {
    let factors = smith_normal_form(m).invariant_factors();
    AbelianInvariants {
        free_rank: m.cols() - factors.len(),
        torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// The relation matrix: one row ε_v − Σ_w A_{e_i}(v, w) ε_w per vertex v and
/// color i, stacked color by color.
pub fn h0_relations(g: &KGraph) -> IntMatrix {
    let d = g.vertex_count();
    let k = g.rank();
    let mut m = IntMatrix::zeros(k * d, d);
    for i in 1..=k {
        let a = g.color_matrix(i);
        for v in 0..d {
            let row = (i - 1) * d + v;
            for w in 0..d {
                m[(row, w)] = -a[(v, w)].clone();
            }
            m[(row, v)] += 1;
        }
    }
    m
}

/// H₀ of the path groupoid, as the cokernel of [`h0_relations`].
pub fn h0(g: &KGraph) -> Result<AbelianInvariants> {
    if !g.is_strict() {
        return Err(KgError::NotStrict);
    }
    Ok(cokernel(&h0_relations(g)))
}

/// H₀ of the pullback along a surjective hom agrees with H₀ of the graph.
pub fn h0_pullback_compare(g: &KGraph, f: &MonoidHom) -> Result<bool> {
    if !f.is_surjective() {
        return Err(KgError::NotSurjective);
    }
    Ok(h0(&pullback(g, f)?)? == h0(g)?)
}

/// v(n) ↦ v(f(n)) from the pullback's talented monoid to that of the graph.
pub fn rho_generator_map(g: &KGraph, f: &MonoidHom) -> Result<GeneratorMap> {
    let pb = pullback(g, f)?;
    let images = (0..g.vertex_count())
        .map(|v| DimElement::generator(g, v, Shift::zero(g.rank())))
        .collect();
    GeneratorMap::along(&pb, g, images, f.clone())
}

/// The map ρ respects the pullback relations and hits every generator w(m):
/// each w(e_i) is the image of w(e_a) for a generator a with f(e_a) = e_i,
/// and additivity covers the remaining shifts.
pub fn rho_pullback_check(g: &KGraph, f: &MonoidHom) -> Result<bool> {
    if !f.is_surjective() {
        return Err(KgError::NotSurjective);
    }
    let rho = rho_generator_map(g, f)?;
    if !hom_check(&rho)? {
        return Ok(false);
    }
    for i in 1..=g.rank() {
        let a = f.preimage_of_basis(i).ok_or(KgError::NotSurjective)?;
        for w in 0..g.vertex_count() {
            let src = DimElement::generator(&rho.source, w, Shift::basis(f.source_rank, a));
            let want = DimElement::generator(g, w, Shift::basis(g.rank(), i));
            if !dge_eq(g, &rho.apply(&src)?, &want)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Graded H₀ as presentation data: the vertex matrices and the rank of H_Λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPresentation {
    pub matrices: Vec<IntMatrix>,
    pub rank: usize,
}

pub fn h0gr_presentation(g: &KGraph) -> GradedPresentation {
    GradedPresentation { matrices: (1..=g.rank()).map(|i| g.color_matrix(i)).collect(), rank: rank_invariant(g) }
}

//! Degrees in ℕᵏ and shifts in ℤᵏ.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An element of ℕᵏ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The basis vector for a 1-based color.
    pub fn basis(k: usize, color: usize) -> Self {
        let mut d = vec![0; k];
        d[color - 1] = 1;
        Degree(d)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Coordinatewise `self ≤ other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self − other`, if nonnegative.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.le(self) {
            return None;
        }
        Some(Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn to_shift(&self) -> Shift {
        Shift(self.0.iter().map(|&c| c as i64).collect())
    }

    /// The color-sorted sequence of colors of a path with this degree.
    pub fn color_word(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (i, &c) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat(i + 1).take(c as usize));
        }
        out
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// An element of ℤᵏ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shift(pub Vec<i64>);

impl Shift {
    pub fn zero(k: usize) -> Self {
        Shift(vec![0; k])
    }

    pub fn basis(k: usize, color: usize) -> Self {
        let mut d = vec![0; k];
        d[color - 1] = 1;
        Shift(d)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Shift) -> Shift {
        Shift(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Shift {
        Shift(self.0.iter().map(|a| -a).collect())
    }

    pub fn join(&self, other: &Shift) -> Shift {
        Shift(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self − other` as a degree; `None` if some coordinate is negative.
    pub fn degree_above(&self, other: &Shift) -> Option<Degree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| u32::try_from(a - b).ok())
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in items.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

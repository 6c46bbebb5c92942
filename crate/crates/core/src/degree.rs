//! Degree vectors in `N^k` and graded shifts in `Z^k`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// An element of `N^k`, ordered coordinatewise for `le` and
/// degree-lexicographically (total first) for `Ord`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    /// The generator `e_i` (0-based color).
    pub fn unit(rank: usize, color: usize) -> Self {
        let mut d = vec![0; rank];
        d[color] = 1;
        Degree(d)
    }

    pub fn uniform(rank: usize, n: u32) -> Self {
        Degree(vec![n; rank])
    }

    pub fn from_vec(v: Vec<u32>) -> Self {
        Degree(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    pub fn shift_from(&self, other: &Degree) -> Shift {
        Shift(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a as i64 - *b as i64)
                .collect(),
        )
    }

    pub fn increment(&mut self, color: usize) {
        self.0[color] += 1;
    }

    /// All `m` with `0 <= m <= self`, in degree-lexicographic order.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        let mut degrees: Vec<Degree> = out.into_iter().map(Degree).collect();
        degrees.sort();
        degrees
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A graded degree `d(lambda) - d(mu)` in `Z^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Shift(Vec<i64>);

impl Shift {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Shift) -> Shift {
        Shift(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

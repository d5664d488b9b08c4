//! Integer partitions.
//!
//! The canonical order used throughout the crate sorts partitions by weight
//! first and then in *descending* lexicographic order of their parts, so the
//! partitions of 3 come out as `[3], [2,1], [1,1,1]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that the parts are positive and non-increasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&x| x == 0) {
            return Err(Error::Parse(format!("partition has a zero part: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition is not non-increasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union of parts; the power-sum product `p_λ p_μ = p_{λ∪μ}`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] >= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Partition(out)
    }

    /// Every part multiplied by `r`.
    pub fn scale(&self, r: usize) -> Partition {
        Partition(self.0.iter().map(|x| x * r).collect())
    }

    /// Multiplicity of each part size, as `(size, count)` in decreasing size.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((s, c)) if *s == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centraliser order of cycle type λ.
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(s, c)| (s as u128).pow(c as u32) * factorial(c))
            .product()
    }

    /// Compares two partitions of the same weight lexicographically.
    pub fn cmp_lex(&self, other: &Partition) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Dominance order `self ≤ other`, for partitions of equal weight.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    pub(crate) fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `d` with at most `max_len` parts, in descending
/// lexicographic order.
pub fn partitions_of(d: usize, max_len: Option<usize>) -> Vec<Partition> {
    fn go(rest: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for x in (1..=max_part.min(rest)).rev() {
            cur.push(x);
            go(rest - x, x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, max_len.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

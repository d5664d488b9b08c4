//! Explicit `F_p C_p`-modules: the generator's matrix, stored block-diagonally.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use crate::partition::Partition;

use super::fp::FpMatrix;

/// A module for the cyclic group of order `p`, given by the action of a fixed
/// generator. The matrix is block diagonal; each block acts on its own
/// summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRep {
    p: u32,
    blocks: Vec<FpMatrix>,
}

impl MatRep {
    /// Validates `(g - 1)^p = 0` on every block.
    pub fn new(p: u32, blocks: Vec<FpMatrix>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        for b in &blocks {
            if !b.is_square() || b.p() != p {
                return Err(Error::InvalidRep("blocks must be square matrices over F_p".into()));
            }
            if !b.minus_scalar(1).pow(p as u64).is_zero() {
                return Err(Error::InvalidRep("(g - 1)^p is not zero".into()));
            }
        }
        Ok(MatRep { p, blocks })
    }

    pub(crate) fn from_blocks_unchecked(p: u32, blocks: Vec<FpMatrix>) -> Self {
        MatRep { p, blocks }
    }

    pub fn from_matrix(g: FpMatrix) -> Result<Self> {
        MatRep::new(g.p(), vec![g])
    }

    /// `⊕ J_a^{counts[a-1]}` in Jordan form.
    pub fn from_jordan_counts(p: u32, counts: &[usize]) -> Self {
        let mut blocks = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                blocks.push(FpMatrix::jordan_block(p, i + 1));
            }
        }
        MatRep { p, blocks }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(FpMatrix::rows).sum()
    }

    pub fn blocks(&self) -> &[FpMatrix] {
        &self.blocks
    }

    /// The full generator matrix.
    pub fn matrix(&self) -> FpMatrix {
        self.blocks
            .iter()
            .fold(FpMatrix::zeros(self.p, 0, 0), |acc, b| acc.direct_sum(b))
    }

    /// Block sizes of the generator's Jordan form. The number of blocks of
    /// size at least `s` is `rank N^{s-1} - rank N^s` for `N = g - 1`.
    pub fn jordan_type(&self) -> Result<Partition> {
        let mut parts = Vec::new();
        for b in &self.blocks {
            let ranks = b.minus_scalar(1).power_ranks();
            if *ranks.last().expect("nonempty") != 0 || ranks.len() > self.p as usize + 1 {
                return Err(Error::InvalidRep("g - 1 is not nilpotent of order at most p".into()));
            }
            for s in 1..ranks.len() {
                let at_least_s = ranks[s - 1] - ranks[s];
                let at_least_next = if s + 1 < ranks.len() { ranks[s] - ranks[s + 1] } else { 0 };
                parts.extend(std::iter::repeat(s).take(at_least_s - at_least_next));
            }
        }
        Ok(Partition::from_parts(parts))
    }

    /// Multiplicity of `J_a` at index `a-1`, for `a = 1..=p`.
    pub fn jordan_counts(&self) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.p as usize];
        for part in self.jordan_type()?.parts() {
            counts[part - 1] += 1;
        }
        Ok(counts)
    }

    pub fn direct_sum(&self, other: &MatRep) -> MatRep {
        assert_eq!(self.p, other.p, "characteristic mismatch");
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        MatRep { p: self.p, blocks }
    }

    /// Kronecker product, block pair by block pair.
    pub fn tensor(&self, other: &MatRep) -> MatRep {
        assert_eq!(self.p, other.p, "characteristic mismatch");
        let blocks = self
            .blocks
            .iter()
            .flat_map(|a| other.blocks.iter().map(move |b| a.kron(b)))
            .collect();
        MatRep { p: self.p, blocks }
    }

    /// `S^r` on the basis of degree-`r` monomials in the coordinates.
    pub fn sym_power(&self, r: usize) -> MatRep {
        let g = self.matrix();
        MatRep { p: self.p, blocks: vec![sym_power_matrix(&g, r)] }
    }
}

/// Exponent vectors of degree `r` in `n` variables, in lexicographically
/// decreasing order.
fn monomials(n: usize, r: usize) -> Vec<Vec<u16>> {
    fn go(i: usize, n: usize, rest: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i + 1 == n {
            cur.push(rest as u16);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=rest).rev() {
            cur.push(e as u16);
            go(i + 1, n, rest - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if r == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `S^r(g)`: the variable `x_j` goes to `Σ_i g_{ij} x_i`, and each
/// monomial's image is re-expanded.
fn sym_power_matrix(g: &FpMatrix, r: usize) -> FpMatrix {
    let p = g.p();
    let n = g.rows();
    let basis = monomials(n, r);
    let index: HashMap<&[u16], usize> = basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let images: Vec<Vec<(usize, u32)>> = (0..n)
        .map(|j| (0..n).filter_map(|i| (g.get(i, j) != 0).then(|| (i, g.get(i, j)))).collect())
        .collect();
    let mut out = FpMatrix::zeros(p, basis.len(), basis.len());
    for (col, mono) in basis.iter().enumerate() {
        let mut poly: HashMap<Vec<u16>, u32> = HashMap::from([(vec![0u16; n], 1 % p)]);
        for (j, &e) in mono.iter().enumerate() {
            for _ in 0..e {
                let mut next: HashMap<Vec<u16>, u32> = HashMap::new();
                for (m, c) in &poly {
                    for &(i, a) in &images[j] {
                        let mut m2 = m.clone();
                        m2[i] += 1;
                        let slot = next.entry(m2).or_insert(0);
                        *slot = ((*slot as u64 + *c as u64 * a as u64) % p as u64) as u32;
                    }
                }
                next.retain(|_, c| *c != 0);
                poly = next;
            }
        }
        for (m, c) in poly {
            out.set(index[m.as_slice()], col, c);
        }
    }
    out
}

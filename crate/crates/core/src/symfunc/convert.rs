//! Transition data between the five classical bases.
//!
//! Everything is routed through power sums. The forward maps (basis element
//! expressed in `p`) come from the Newton identities for `h`/`e`, the
//! Jacobi–Trudi determinant for `s`, and inversion of the `p -> m` table
//! for `m`. The backward maps solve triangular systems: `h`/`e` are
//! triangular against `p` in lexicographic order, and `s` is unitriangular
//! against `m` with Kostka numbers as entries.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Basis, SymFunc, Terms};
use crate::partition::{factorial, partitions_of, Partition};
use crate::rational::Rational;

/// Process-wide memo table; concurrent first computations are harmless
/// because every value is a pure function of its key.
struct Memo<K, V> {
    cell: OnceLock<RwLock<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    const fn new() -> Self {
        Memo { cell: OnceLock::new() }
    }

    fn get(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        let map = self.cell.get_or_init(Default::default);
        if let Some(v) = map.read().unwrap().get(key) {
            return v.clone();
        }
        let v = Arc::new(compute());
        map.write().unwrap().entry(key.clone()).or_insert(v).clone()
    }
}

static IN_P: Memo<(Basis, Partition), Terms> = Memo::new();
static P_IN_M: Memo<Partition, Terms> = Memo::new();
static S_IN_M: Memo<Partition, Terms> = Memo::new();
static S_IN_H: Memo<Partition, Terms> = Memo::new();
static KOSTKA: Memo<(Partition, Partition), BigInt> = Memo::new();

fn add_into(acc: &mut Terms, key: Partition, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

fn add_scaled(acc: &mut Terms, src: &Terms, c: &Rational) {
    for (k, v) in src {
        let slot = acc.entry(k.clone()).or_insert_with(Rational::zero);
        *slot += v * c;
    }
    acc.retain(|_, v| !v.is_zero());
}

fn mul_p(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let slot = out.entry(ka.union(kb)).or_insert_with(Rational::zero);
            *slot += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `h_n` (sign = false) or `e_n` (sign = true) in power sums.
fn complete_or_elementary(n: usize, signed: bool) -> Terms {
    let mut out = Terms::new();
    for mu in partitions_of(n, None) {
        let mut c = Rational::new(BigInt::one(), BigInt::from(mu.z()));
        if signed && (n - mu.len()) % 2 == 1 {
            c = -c;
        }
        out.insert(mu, c);
    }
    out
}

fn product_in_p(lambda: &Partition, signed: bool) -> Terms {
    let mut acc = Terms::new();
    acc.insert(Partition::empty(), Rational::one());
    for &x in lambda.parts() {
        acc = mul_p(&acc, &complete_or_elementary(x, signed));
    }
    acc
}

/// Jacobi–Trudi: `s_λ = det(h_{λ_i - i + j})`, returned in the `h` basis.
fn schur_in_h(lambda: &Partition) -> Arc<Terms> {
    S_IN_H.get(lambda, || {
        let l = lambda.len();
        // dp over rows; state = set of used columns, value = h-monomials with
        // signed integer coefficients
        let mut dp: HashMap<u32, HashMap<Vec<usize>, i64>> = HashMap::new();
        dp.insert(0, HashMap::from([(Vec::new(), 1)]));
        for i in 0..l {
            let mut next: HashMap<u32, HashMap<Vec<usize>, i64>> = HashMap::new();
            for (mask, polys) in &dp {
                for j in 0..l {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let idx = lambda.part(i) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        continue;
                    }
                    // inversions contributed: used columns to the right of j
                    let inv = (mask >> (j + 1)).count_ones();
                    let sign = if inv % 2 == 0 { 1 } else { -1 };
                    let entry = next.entry(mask | (1 << j)).or_default();
                    for (mono, c) in polys {
                        let mut m = mono.clone();
                        if idx > 0 {
                            m.push(idx as usize);
                        }
                        *entry.entry(m).or_insert(0) += sign * c;
                    }
                }
            }
            dp = next;
        }
        let mut out = Terms::new();
        if let Some(polys) = dp.remove(&((1u32 << l) - 1)) {
            for (mono, c) in polys {
                if c != 0 {
                    add_into(&mut out, Partition::from_parts(mono), Rational::from_integer(c.into()));
                }
            }
        }
        out
    })
}

/// `p_λ = Σ_μ R_{λμ} m_μ`, where `R_{λμ}` counts maps from the parts of λ to
/// the rows of μ with matching row sums.
fn power_sum_in_m(lambda: &Partition) -> Arc<Terms> {
    P_IN_M.get(lambda, || {
        // state: multiset of block sums (sorted descending) -> number of set
        // partitions of the parts seen so far
        let mut states: HashMap<Vec<usize>, BigInt> = HashMap::from([(Vec::new(), BigInt::one())]);
        for &x in lambda.parts() {
            let mut next: HashMap<Vec<usize>, BigInt> = HashMap::new();
            for (blocks, count) in &states {
                let mut seen: Vec<usize> = Vec::new();
                for (i, &s) in blocks.iter().enumerate() {
                    if seen.contains(&s) {
                        continue;
                    }
                    seen.push(s);
                    let mult = blocks.iter().filter(|&&b| b == s).count();
                    let mut nb = blocks.clone();
                    nb[i] += x;
                    nb.sort_unstable_by(|a, b| b.cmp(a));
                    *next.entry(nb).or_insert_with(BigInt::zero) += count * BigInt::from(mult);
                }
                let mut nb = blocks.clone();
                nb.push(x);
                nb.sort_unstable_by(|a, b| b.cmp(a));
                *next.entry(nb).or_insert_with(BigInt::zero) += count;
            }
            states = next;
        }
        let mut out = Terms::new();
        for (blocks, count) in states {
            let mu = Partition::from_parts(blocks);
            let sym: u128 = mu.multiplicities().into_iter().map(|(_, c)| factorial(c)).product();
            out.insert(mu, Rational::from_integer(count * BigInt::from(sym)));
        }
        out
    })
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka_number(lambda: &Partition, mu: &Partition) -> BigInt {
    kostka(lambda, mu)
}

fn kostka(lambda: &Partition, mu: &Partition) -> BigInt {
    if lambda.weight() != mu.weight() {
        return BigInt::zero();
    }
    if mu.is_empty() {
        return BigInt::one();
    }
    KOSTKA
        .get(&(lambda.clone(), mu.clone()), || {
            let k = *mu.parts().last().unwrap();
            let rest = Partition::new(mu.parts()[..mu.len() - 1].to_vec()).unwrap();
            let mut total = BigInt::zero();
            for nu in horizontal_strip_removals(lambda, k) {
                total += kostka(&nu, &rest);
            }
            total
        })
        .as_ref()
        .clone()
}

/// All ν ⊆ λ such that λ/ν is a horizontal strip of size `k`.
fn horizontal_strip_removals(lambda: &Partition, k: usize) -> Vec<Partition> {
    fn go(lambda: &Partition, i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let l = lambda.len();
        if i == l {
            if left == 0 {
                out.push(Partition::from_parts(cur.clone()));
            }
            return;
        }
        let lo = lambda.part(i + 1);
        let hi = lambda.part(i);
        for nu_i in (lo..=hi).rev() {
            let removed = hi - nu_i;
            if removed > left {
                break;
            }
            cur.push(nu_i);
            go(lambda, i + 1, left - removed, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, k, &mut Vec::new(), &mut out);
    out
}

fn schur_in_m(lambda: &Partition) -> Arc<Terms> {
    S_IN_M.get(lambda, || {
        let mut out = Terms::new();
        for mu in partitions_of(lambda.weight(), None) {
            if !mu.dominated_by(lambda) {
                continue;
            }
            let k = kostka(lambda, &mu);
            if !k.is_zero() {
                out.insert(mu, Rational::from_integer(k));
            }
        }
        out
    })
}

/// Solves a triangular system by repeatedly eliminating one pivot.
///
/// `expansion(λ)` gives the basis element indexed by λ in the source
/// coordinates; its λ-coefficient must be nonzero and every other term must
/// be strictly later in the elimination order. With `from_front` the pivot
/// is the first remaining key in canonical order (largest lex within a
/// weight), otherwise the last.
fn triangular_solve(src: &Terms, from_front: bool, expansion: impl Fn(&Partition) -> Arc<Terms>) -> Terms {
    let mut rem = src.clone();
    let mut out = Terms::new();
    loop {
        let pivot = if from_front { rem.keys().next() } else { rem.keys().next_back() };
        let Some(lambda) = pivot.cloned() else { break };
        let row = expansion(&lambda);
        let c = &rem[&lambda] / &row[&lambda];
        add_scaled(&mut rem, &row, &(-c.clone()));
        debug_assert!(!rem.contains_key(&lambda));
        out.insert(lambda, c);
    }
    out
}

/// Basis element `b_λ` written in power sums.
fn element_in_p(basis: Basis, lambda: &Partition) -> Arc<Terms> {
    if basis == Basis::PowerSum {
        return Arc::new(BTreeMap::from([(lambda.clone(), Rational::one())]));
    }
    IN_P.get(&(basis, lambda.clone()), || match basis {
        Basis::PowerSum => unreachable!(),
        Basis::Homogeneous => product_in_p(lambda, false),
        Basis::Elementary => product_in_p(lambda, true),
        Basis::Schur => {
            let mut out = Terms::new();
            for (mu, c) in schur_in_h(lambda).iter() {
                add_scaled(&mut out, &element_in_p(Basis::Homogeneous, mu), c);
            }
            out
        }
        Basis::Monomial => {
            let unit = BTreeMap::from([(lambda.clone(), Rational::one())]);
            triangular_solve(&unit, false, power_sum_in_m)
        }
    })
}

pub(crate) fn to_power_sum(f: &SymFunc) -> Terms {
    if f.basis == Basis::PowerSum {
        return f.terms.clone();
    }
    let mut out = Terms::new();
    for (lambda, c) in &f.terms {
        add_scaled(&mut out, &element_in_p(f.basis, lambda), c);
    }
    out
}

pub(crate) fn from_power_sum(p_terms: &Terms, target: Basis) -> Terms {
    match target {
        Basis::PowerSum => p_terms.clone(),
        Basis::Homogeneous | Basis::Elementary => {
            triangular_solve(p_terms, true, |l| element_in_p(target, l))
        }
        Basis::Monomial => {
            let mut out = Terms::new();
            for (lambda, c) in p_terms {
                add_scaled(&mut out, &power_sum_in_m(lambda), c);
            }
            out
        }
        Basis::Schur => {
            let m = from_power_sum(p_terms, Basis::Monomial);
            triangular_solve(&m, true, schur_in_m)
        }
    }
}

//! The ring of symmetric functions over ℚ, used as the ring of formal
//! characters of polynomial `GL_n`-modules.
//!
//! Elements carry a basis tag. Products, `chi` and dimension evaluation are
//! computed in power sums, where they are combinatorially trivial; the other
//! bases exist for input and for integrality / positivity checks.

mod convert;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{format_rational, is_integral, is_nonneg_integer, parse_rational, Rational};

pub(crate) type Terms = BTreeMap<Partition, Rational>;

pub use convert::kostka_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    PowerSum,
    Monomial,
    Homogeneous,
    Elementary,
    Schur,
}

impl Basis {
    pub const ALL: [Basis; 5] = [
        Basis::PowerSum,
        Basis::Monomial,
        Basis::Homogeneous,
        Basis::Elementary,
        Basis::Schur,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Basis::PowerSum => "p",
            Basis::Monomial => "m",
            Basis::Homogeneous => "h",
            Basis::Elementary => "e",
            Basis::Schur => "s",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Basis> {
        Ok(match tag {
            "p" => Basis::PowerSum,
            "m" => Basis::Monomial,
            "h" => Basis::Homogeneous,
            "e" => Basis::Elementary,
            "s" => Basis::Schur,
            other => return Err(Error::Parse(format!("unknown basis tag {other:?}"))),
        })
    }
}

/// A symmetric function: finitely many nonzero rational coefficients on the
/// partitions of one chosen basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: Terms,
}

/// Result of a Schur-positivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positivity {
    pub ok: bool,
    /// Every Schur coefficient that is negative or non-integral.
    pub violations: Vec<(Partition, Rational)>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: Terms::new() }
    }

    pub fn one() -> Self {
        Self::monic(Basis::PowerSum, Partition::empty())
    }

    pub fn monic(basis: Basis, lambda: Partition) -> Self {
        SymFunc { basis, terms: Terms::from([(lambda, Rational::one())]) }
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut acc = Terms::new();
        for (k, v) in terms {
            *acc.entry(k).or_insert_with(Rational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        SymFunc { basis, terms: acc }
    }

    /// Power sum `p_λ`; parts may be given in any order.
    pub fn p(parts: &[usize]) -> Self {
        Self::monic(Basis::PowerSum, Partition::from_parts(parts.to_vec()))
    }
    pub fn m(parts: &[usize]) -> Self {
        Self::monic(Basis::Monomial, Partition::from_parts(parts.to_vec()))
    }
    pub fn h(parts: &[usize]) -> Self {
        Self::monic(Basis::Homogeneous, Partition::from_parts(parts.to_vec()))
    }
    pub fn e(parts: &[usize]) -> Self {
        Self::monic(Basis::Elementary, Partition::from_parts(parts.to_vec()))
    }
    pub fn s(parts: &[usize]) -> Self {
        Self::monic(Basis::Schur, Partition::from_parts(parts.to_vec()))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Terms in canonical partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest weight carrying a nonzero term.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::weight).max()
    }

    /// Smallest weight carrying a nonzero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::weight).min()
    }

    pub fn to_basis(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        let p = convert::to_power_sum(self);
        SymFunc { basis: target, terms: convert::from_power_sum(&p, target) }
    }

    pub fn to_power_sum(&self) -> SymFunc {
        self.to_basis(Basis::PowerSum)
    }

    /// Equality as elements of the ring, regardless of basis.
    pub fn same_element(&self, other: &SymFunc) -> bool {
        if self.basis == other.basis {
            return self.terms == other.terms;
        }
        self.to_power_sum().terms == other.to_power_sum().terms
    }

    fn aligned(&self, other: &SymFunc) -> (SymFunc, SymFunc) {
        if self.basis == other.basis {
            (self.clone(), other.clone())
        } else {
            (self.to_power_sum(), other.to_power_sum())
        }
    }

    pub fn scale(&self, c: &Rational) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis);
        }
        SymFunc {
            basis: self.basis,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Product, returned in power sums.
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        let a = self.to_power_sum();
        let b = other.to_power_sum();
        let mut acc: HashMap<Partition, Rational> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ka, va) in &a.terms {
            for (kb, vb) in &b.terms {
                let slot = acc.entry(ka.union(kb)).or_insert_with(Rational::zero);
                *slot += va * vb;
            }
        }
        SymFunc::from_terms(Basis::PowerSum, acc)
    }

    /// Product with every term of weight above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &SymFunc, max_degree: usize) -> SymFunc {
        let a = self.to_power_sum();
        let b = other.to_power_sum();
        let mut acc: HashMap<Partition, Rational> = HashMap::new();
        for (ka, va) in &a.terms {
            let wa = ka.weight();
            if wa > max_degree {
                continue;
            }
            for (kb, vb) in &b.terms {
                if wa + kb.weight() > max_degree {
                    continue;
                }
                let slot = acc.entry(ka.union(kb)).or_insert_with(Rational::zero);
                *slot += va * vb;
            }
        }
        SymFunc::from_terms(Basis::PowerSum, acc)
    }

    pub fn pow(&self, k: u32) -> SymFunc {
        let base = self.to_power_sum();
        let mut out = SymFunc::one();
        for _ in 0..k {
            out = out.mul(&base);
        }
        out
    }

    /// Drops every term of weight above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.weight() <= max_degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.weight() == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// The endomorphism `t_i ↦ t_i^r`; on power sums `p_λ ↦ p_{rλ}`.
    pub fn chi(&self, r: usize) -> SymFunc {
        assert!(r >= 1, "chi needs r >= 1");
        let p = self.to_power_sum();
        SymFunc {
            basis: Basis::PowerSum,
            terms: p.terms.iter().map(|(k, v)| (k.scale(r), v.clone())).collect(),
        }
    }

    /// Specialisation `t_1 = … = t_n = 1`: the dimension of the (virtual)
    /// module with this character in `n` variables.
    pub fn eval_dim(&self, n: usize) -> Rational {
        let p = self.to_power_sum();
        let n = BigInt::from(n);
        p.terms
            .iter()
            .map(|(k, v)| v * Rational::from_integer(num_traits::pow(n.clone(), k.len())))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Image in `n` variables, in the monomial basis.
    pub fn restrict_vars(&self, n: usize) -> SymFunc {
        let m = self.to_basis(Basis::Monomial);
        SymFunc {
            basis: Basis::Monomial,
            terms: m.terms.into_iter().filter(|(k, _)| k.len() <= n).collect(),
        }
    }

    pub fn is_schur_positive(&self) -> Positivity {
        let s = self.to_basis(Basis::Schur);
        let violations: Vec<_> = s
            .terms
            .into_iter()
            .filter(|(_, v)| !is_nonneg_integer(v))
            .collect();
        Positivity { ok: violations.is_empty(), violations }
    }

    /// True when every coefficient in this element's basis is an integer.
    pub fn has_integral_coeffs(&self) -> bool {
        self.terms.values().all(is_integral)
    }

    /// True when every monomial coefficient is a non-negative integer, i.e.
    /// the element could be the character of an actual torus module.
    pub fn is_actual_character(&self) -> bool {
        self.to_basis(Basis::Monomial).terms.values().all(is_nonneg_integer)
    }

    /// First term (canonical order) where `self` and `other` differ, both
    /// taken in `basis`.
    pub fn first_difference(&self, other: &SymFunc, basis: Basis) -> Option<(Partition, Rational, Rational)> {
        let a = self.to_basis(basis);
        let b = other.to_basis(basis);
        let keys: std::collections::BTreeSet<&Partition> = a.terms.keys().chain(b.terms.keys()).collect();
        let found = keys.into_iter().find_map(|k| {
            let (x, y) = (a.coeff(k), b.coeff(k));
            (x != y).then(|| (k.clone(), x, y))
        });
        found
    }
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        let (a, b) = self.aligned(rhs);
        SymFunc::from_terms(a.basis, a.terms.into_iter().chain(b.terms))
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        self + &(-rhs)
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        SymFunc::mul(self, rhs)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let neg = v.is_negative();
            let mag = v.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{} ", format_rational(&mag))?;
            }
            write!(f, "{}{}", self.basis.tag(), k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncWire {
    basis: String,
    terms: Vec<(Partition, String)>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncWire {
            basis: self.basis.tag().to_string(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = SymFuncWire::deserialize(d)?;
        let basis = Basis::from_tag(&wire.basis).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for (k, v) in wire.terms {
            terms.push((k, parse_rational(&v).map_err(D::Error::custom)?));
        }
        Ok(SymFunc::from_terms(basis, terms))
    }
}

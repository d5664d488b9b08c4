//! Truncated power series over a carrier ring and the operator calculus
//! built on them.
//!
//! A [`Carrier`] is a commutative ℚ-algebra with decidable equality. It may
//! also supply two indexed families of ℚ-linear maps, the Adams operations
//! `ψ^r` and the Lie resolvents `Φ^r`. From those the operators
//!
//! * `S⁺` / `L⁺` ([`plus_op`] with the Adams or resolvent family),
//! * `S* = exp ∘ S⁺` ([`star_s`]),
//! * `L* = L⁺ ∘ log` ([`star_l`]),
//! * the Lie module function `𝓛 = L⁺ ∘ Log` ([`script_l`])
//!
//! are assembled without knowing anything else about the carrier.
//!
//! Every series is truncated at an explicit degree `D`; binary operations on
//! series of different `D` work at the smaller one.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, p_power_exponent};
use crate::rational::{rat, Rational};

pub trait Carrier {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(a, &rat(-1))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// `ψ^r`, when the carrier has one.
    fn adams(&self, _r: usize, _a: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::Domain("carrier has no Adams operations".into()))
    }

    /// `Φ^r`, when the carrier has one.
    fn resolvent(&self, _r: usize, _a: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::Domain("carrier has no Lie resolvents".into()))
    }
}

/// An indexed family `r ↦ (ℚ-linear map on the carrier)`.
pub trait ComponentFamily<C: Carrier + ?Sized> {
    fn apply(&self, carrier: &C, r: usize, x: &C::Elem) -> Result<C::Elem>;
}

/// The carrier's Adams operations `ψ^r`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Adams;

/// The carrier's Lie resolvents `Φ^r`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Resolvent;

/// Wraps a closure as a family.
pub struct FnFamily<F>(pub F);

impl<C: Carrier + ?Sized> ComponentFamily<C> for Adams {
    fn apply(&self, carrier: &C, r: usize, x: &C::Elem) -> Result<C::Elem> {
        carrier.adams(r, x)
    }
}

impl<C: Carrier + ?Sized> ComponentFamily<C> for Resolvent {
    fn apply(&self, carrier: &C, r: usize, x: &C::Elem) -> Result<C::Elem> {
        carrier.resolvent(r, x)
    }
}

impl<C, F> ComponentFamily<C> for FnFamily<F>
where
    C: Carrier + ?Sized,
    F: Fn(&C, usize, &C::Elem) -> Result<C::Elem>,
{
    fn apply(&self, carrier: &C, r: usize, x: &C::Elem) -> Result<C::Elem> {
        (self.0)(carrier, r, x)
    }
}

/// `Σ_{j ≤ D} a_j t^j`; coefficients above `D` are not represented.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: Deserialize<'de>"))]
#[serde(try_from = "SeriesWire<E>")]
pub struct TruncSeries<E> {
    #[serde(rename = "D")]
    degree: usize,
    coeffs: Vec<E>,
}

#[derive(Deserialize)]
struct SeriesWire<E> {
    #[serde(rename = "D")]
    degree: usize,
    coeffs: Vec<E>,
}

impl<E> TryFrom<SeriesWire<E>> for TruncSeries<E> {
    type Error = Error;
    fn try_from(w: SeriesWire<E>) -> Result<Self> {
        if w.degree == 0 || w.coeffs.len() != w.degree + 1 {
            return Err(Error::Parse(format!(
                "series needs D >= 1 and D+1 coefficients, got D={} with {}",
                w.degree,
                w.coeffs.len()
            )));
        }
        Ok(TruncSeries { degree: w.degree, coeffs: w.coeffs })
    }
}

impl<E: fmt::Debug> fmt::Debug for TruncSeries<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(D={}, {:?})", self.degree, self.coeffs)
    }
}

impl<E: Clone> TruncSeries<E> {
    /// Pads with zeros or drops coefficients so that exactly `0..=degree`
    /// are stored.
    pub fn new<C: Carrier<Elem = E> + ?Sized>(carrier: &C, degree: usize, mut coeffs: Vec<E>) -> Self {
        assert!(degree >= 1, "truncation degree must be positive");
        coeffs.truncate(degree + 1);
        while coeffs.len() < degree + 1 {
            coeffs.push(carrier.zero());
        }
        TruncSeries { degree, coeffs }
    }

    pub fn zero<C: Carrier<Elem = E> + ?Sized>(carrier: &C, degree: usize) -> Self {
        Self::new(carrier, degree, Vec::new())
    }

    pub fn one<C: Carrier<Elem = E> + ?Sized>(carrier: &C, degree: usize) -> Self {
        Self::new(carrier, degree, vec![carrier.one()])
    }

    /// `a t^j`.
    pub fn monomial<C: Carrier<Elem = E> + ?Sized>(carrier: &C, degree: usize, j: usize, a: E) -> Self {
        let mut s = Self::zero(carrier, degree);
        if j <= degree {
            s.coeffs[j] = a;
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, j: usize) -> &E {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// The same series viewed at a smaller truncation degree.
    pub fn truncated(&self, degree: usize) -> Self {
        assert!(degree >= 1 && degree <= self.degree);
        TruncSeries { degree, coeffs: self.coeffs[..=degree].to_vec() }
    }

    pub fn map<F, C>(&self, carrier: &C, mut f: F) -> Result<Self>
    where
        C: Carrier<Elem = E> + ?Sized,
        F: FnMut(usize, &E) -> Result<E>,
    {
        let coeffs = self.coeffs.iter().enumerate().map(|(j, a)| f(j, a)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(carrier, self.degree, coeffs))
    }
}

fn common<E: Clone>(f: &TruncSeries<E>, g: &TruncSeries<E>) -> usize {
    f.degree.min(g.degree)
}

pub fn add<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, g: &TruncSeries<C::Elem>) -> TruncSeries<C::Elem> {
    let d = common(f, g);
    TruncSeries::new(c, d, (0..=d).map(|j| c.add(&f.coeffs[j], &g.coeffs[j])).collect())
}

pub fn sub<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, g: &TruncSeries<C::Elem>) -> TruncSeries<C::Elem> {
    let d = common(f, g);
    TruncSeries::new(c, d, (0..=d).map(|j| c.sub(&f.coeffs[j], &g.coeffs[j])).collect())
}

pub fn scale<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, q: &Rational) -> TruncSeries<C::Elem> {
    TruncSeries::new(c, f.degree, f.coeffs.iter().map(|a| c.scale(a, q)).collect())
}

pub fn neg<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>) -> TruncSeries<C::Elem> {
    scale(c, f, &rat(-1))
}

pub fn mul<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, g: &TruncSeries<C::Elem>) -> TruncSeries<C::Elem> {
    let d = common(f, g);
    let mut out = vec![c.zero(); d + 1];
    for i in 0..=d {
        if c.is_zero(&f.coeffs[i]) {
            continue;
        }
        for j in 0..=(d - i) {
            if c.is_zero(&g.coeffs[j]) {
                continue;
            }
            out[i + j] = c.add(&out[i + j], &c.mul(&f.coeffs[i], &g.coeffs[j]));
        }
    }
    TruncSeries::new(c, d, out)
}

pub fn equal<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, g: &TruncSeries<C::Elem>) -> bool {
    first_difference(c, f, g).is_none()
}

/// Lowest index (up to the common degree) where the two series differ.
pub fn first_difference<C: Carrier + ?Sized>(
    c: &C,
    f: &TruncSeries<C::Elem>,
    g: &TruncSeries<C::Elem>,
) -> Option<usize> {
    (0..=common(f, g)).find(|&j| !c.equal(&f.coeffs[j], &g.coeffs[j]))
}

fn require_constant<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, one: bool, op: &str) -> Result<()> {
    let ok = if one { c.equal(&f.coeffs[0], &c.one()) } else { c.is_zero(&f.coeffs[0]) };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{op} needs constant term {}",
            if one { "1" } else { "0" }
        )))
    }
}

/// `exp(f)` for `f ∈ tΠ`, via `n g_n = Σ_{k=1}^{n} k f_k g_{n-k}`.
pub fn exp<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    require_constant(c, f, false, "exp")?;
    let d = f.degree;
    let mut g = vec![c.one()];
    for n in 1..=d {
        let mut acc = c.zero();
        for k in 1..=n {
            if c.is_zero(&f.coeffs[k]) || c.is_zero(&g[n - k]) {
                continue;
            }
            acc = c.add(&acc, &c.scale(&c.mul(&f.coeffs[k], &g[n - k]), &rat(k as i64)));
        }
        g.push(c.scale(&acc, &Rational::new(1.into(), (n as i64).into())));
    }
    Ok(TruncSeries::new(c, d, g))
}

/// `log(g)` for `g ∈ 1 + tΠ`, via `n h_n = n g_n - Σ_{k<n} k h_k g_{n-k}`.
pub fn log<C: Carrier + ?Sized>(c: &C, g: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    require_constant(c, g, true, "log")?;
    let d = g.degree;
    let mut h = vec![c.zero()];
    for n in 1..=d {
        let mut acc = c.scale(&g.coeffs[n], &rat(n as i64));
        for k in 1..n {
            if c.is_zero(&h[k]) || c.is_zero(&g.coeffs[n - k]) {
                continue;
            }
            acc = c.sub(&acc, &c.scale(&c.mul(&h[k], &g.coeffs[n - k]), &rat(k as i64)));
        }
        h.push(c.scale(&acc, &Rational::new(1.into(), (n as i64).into())));
    }
    Ok(TruncSeries::new(c, d, h))
}

/// `Exp(f) = 1 - exp(-f)`, a bijection of `tΠ`.
pub fn shifted_exp<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    require_constant(c, f, false, "Exp")?;
    let e = exp(c, &neg(c, f))?;
    Ok(sub(c, &TruncSeries::one(c, f.degree), &e))
}

/// `Log(f) = -log(1 - f) = f + f²/2 + f³/3 + …`, the inverse of [`shifted_exp`].
pub fn shifted_log<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    require_constant(c, f, false, "Log")?;
    let one_minus = sub(c, &TruncSeries::one(c, f.degree), f);
    Ok(neg(c, &log(c, &one_minus)?))
}

/// `(1 - g)^{-1} = 1 + g + g² + …` for `g ∈ tΠ`.
pub fn geometric<C: Carrier + ?Sized>(c: &C, g: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    require_constant(c, g, false, "geometric series")?;
    let mut out = TruncSeries::one(c, g.degree);
    let mut power = TruncSeries::one(c, g.degree);
    for _ in 0..g.degree {
        power = mul(c, &power, g);
        out = add(c, &out, &power);
    }
    Ok(out)
}

/// `t ↦ t^r`.
pub fn subst_power<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, r: usize) -> TruncSeries<C::Elem> {
    assert!(r >= 1, "subst_power needs r >= 1");
    let mut out = TruncSeries::zero(c, f.degree);
    for j in 0..=f.degree / r {
        out.coeffs[j * r] = f.coeffs[j].clone();
    }
    out
}

/// Coefficient `r` of the output is `Σ_{d | r} (1/d) F_d(a_{r/d})`.
///
/// With the Adams family this is `S⁺`, with the resolvent family `L⁺`.
pub fn plus_op<C, F>(c: &C, f: &TruncSeries<C::Elem>, family: &F) -> Result<TruncSeries<C::Elem>>
where
    C: Carrier + ?Sized,
    F: ComponentFamily<C> + ?Sized,
{
    require_constant(c, f, false, "plus operator")?;
    let d = f.degree;
    let mut out = vec![c.zero()];
    for r in 1..=d {
        let mut acc = c.zero();
        for dd in divisors(r as u64) {
            let dd = dd as usize;
            let a = &f.coeffs[r / dd];
            if c.is_zero(a) {
                continue;
            }
            let image = family.apply(c, dd, a)?;
            acc = c.add(&acc, &c.scale(&image, &Rational::new(1.into(), (dd as i64).into())));
        }
        out.push(acc);
    }
    Ok(TruncSeries::new(c, d, out))
}

/// `S* = exp ∘ S⁺`, taking `tΠ` to `1 + tΠ`.
pub fn star_s<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    exp(c, &plus_op(c, f, &Adams)?)
}

/// `L* = L⁺ ∘ log`, taking `1 + tΠ` to `tΠ`.
pub fn star_l<C: Carrier + ?Sized>(c: &C, g: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    plus_op(c, &log(c, g)?, &Resolvent)
}

/// The Lie module function `𝓛 = L⁺ ∘ Log`; for an actual module `V`,
/// `𝓛(V t^r) = Σ_j L^j(V) t^{jr}`.
pub fn script_l<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>) -> Result<TruncSeries<C::Elem>> {
    plus_op(c, &shifted_log(c, f)?, &Resolvent)
}

/// Every nonzero coefficient sits at an exponent `p^i` (including `1 = p^0`).
pub fn is_p_typical<C: Carrier + ?Sized>(c: &C, f: &TruncSeries<C::Elem>, p: u64) -> bool {
    f.coeffs
        .iter()
        .enumerate()
        .all(|(j, a)| c.is_zero(a) || p_power_exponent(j as u64, p).is_some())
}

/// ℚ itself as a carrier, with both families the identity; mostly useful for
/// testing the operator layer in isolation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Scalars;

impl Carrier for Scalars {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn scale(&self, a: &Rational, q: &Rational) -> Rational {
        a * q
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn adams(&self, _r: usize, a: &Rational) -> Result<Rational> {
        Ok(a.clone())
    }
    fn resolvent(&self, r: usize, a: &Rational) -> Result<Rational> {
        Ok(a * rat(crate::numtheory::mobius(r as u64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ser(d: usize, v: &[i64]) -> TruncSeries<Rational> {
        TruncSeries::new(&Scalars, d, v.iter().map(|&x| rat(x)).collect())
    }

    /// Oracle: exp by its defining sum `Σ f^k / k!`.
    fn exp_by_definition(f: &TruncSeries<Rational>) -> TruncSeries<Rational> {
        let c = &Scalars;
        let mut out = TruncSeries::one(c, f.degree());
        let mut term = TruncSeries::one(c, f.degree());
        for k in 1..=f.degree() {
            term = scale(c, &mul(c, &term, f), &ratio(1, k as i64));
            out = add(c, &out, &term);
        }
        out
    }

    /// Oracle: log by its defining sum `Σ (-1)^{k+1} (g-1)^k / k`.
    fn log_by_definition(g: &TruncSeries<Rational>) -> TruncSeries<Rational> {
        let c = &Scalars;
        let x = sub(c, g, &TruncSeries::one(c, g.degree()));
        let mut out = TruncSeries::zero(c, g.degree());
        let mut power = TruncSeries::one(c, g.degree());
        for k in 1..=g.degree() {
            power = mul(c, &power, &x);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = add(c, &out, &scale(c, &power, &ratio(sign, k as i64)));
        }
        out
    }

    #[test]
    fn exp_and_log_match_definitions() {
        let f = ser(7, &[0, 3, -1, 2, 0, 5, 1, -2]);
        assert_eq!(exp(&Scalars, &f).unwrap(), exp_by_definition(&f));
        let g = ser(7, &[1, 2, 0, -3, 1, 1, 4, 0]);
        assert_eq!(log(&Scalars, &g).unwrap(), log_by_definition(&g));
    }

    #[test]
    fn exp_log_examples() {
        let c = &Scalars;
        assert_eq!(exp(c, &TruncSeries::zero(c, 5)).unwrap(), TruncSeries::one(c, 5));
        // exp(At): t² coefficient A²/2 with A = 3
        assert_eq!(exp(c, &ser(4, &[0, 3])).unwrap().coeff(2), &ratio(9, 2));
        assert_eq!(log(c, &TruncSeries::one(c, 5)).unwrap(), TruncSeries::zero(c, 5));
        // log(1 + At): t² coefficient -A²/2
        assert_eq!(log(c, &ser(4, &[1, 3])).unwrap().coeff(2), &ratio(-9, 2));
        // Log(At): t³ coefficient A³/3
        assert_eq!(shifted_log(c, &ser(4, &[0, 2])).unwrap().coeff(3), &ratio(8, 3));
        // Exp(At) = At - A²t²/2 + A³t³/6
        let e = shifted_exp(c, &ser(3, &[0, 2])).unwrap();
        assert_eq!(e, TruncSeries::new(c, 3, vec![rat(0), rat(2), rat(-2), ratio(8, 6)]));
    }

    #[test]
    fn domain_errors() {
        let c = &Scalars;
        assert!(matches!(exp(c, &ser(3, &[1, 1])), Err(Error::Domain(_))));
        assert!(matches!(log(c, &ser(3, &[0, 1])), Err(Error::Domain(_))));
        assert!(matches!(shifted_exp(c, &ser(3, &[2])), Err(Error::Domain(_))));
        assert!(matches!(shifted_log(c, &ser(3, &[2])), Err(Error::Domain(_))));
    }

    #[test]
    fn substitution() {
        let c = &Scalars;
        let f = ser(6, &[0, 1, 2]);
        assert_eq!(subst_power(c, &f, 2), ser(6, &[0, 0, 1, 0, 2]));
        assert_eq!(subst_power(c, &f, 1), f);
        let g = ser(12, &[0, 1, 2, 3, 4]);
        assert_eq!(subst_power(c, &subst_power(c, &g, 2), 3), subst_power(c, &g, 6));
    }

    #[test]
    fn plus_op_on_a_single_term() {
        // family d ↦ multiplication by d²; output coefficient r is (1/r)·r²·A
        let c = &Scalars;
        let fam = FnFamily(|_: &Scalars, d: usize, x: &Rational| Ok(x * rat((d * d) as i64)));
        let out = plus_op(c, &ser(5, &[0, 2]), &fam).unwrap();
        for r in 1..=5 {
            assert_eq!(out.coeff(r), &rat(2 * r as i64));
        }
    }

    #[test]
    fn mixed_degree_takes_minimum() {
        let c = &Scalars;
        assert_eq!(add(c, &ser(3, &[1]), &ser(5, &[1])).degree(), 3);
        assert_eq!(mul(c, &ser(6, &[1, 1]), &ser(2, &[1, 1])), ser(2, &[1, 2, 1]));
    }

    #[test]
    fn p_typicality() {
        let c = &Scalars;
        assert!(is_p_typical(c, &ser(8, &[0, 1, 1, 0, 1]), 2));
        assert!(!is_p_typical(c, &ser(8, &[0, 0, 0, 1]), 2));
        assert!(is_p_typical(c, &ser(8, &[0, 0, 0, 1]), 3));
    }

    #[test]
    fn json_shape() {
        assert!(serde_json::from_str::<TruncSeries<i64>>(r#"{"D":2,"coeffs":[0,1]}"#).is_err());
        let ok: TruncSeries<i64> = serde_json::from_str(r#"{"D":2,"coeffs":[0,1,-1]}"#).unwrap();
        assert_eq!(ok.coeffs(), &[0, 1, -1]);
        assert_eq!(serde_json::to_string(&ok).unwrap(), r#"{"D":2,"coeffs":[0,1,-1]}"#);
    }
}

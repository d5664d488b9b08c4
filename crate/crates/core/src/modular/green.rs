//! The rational Green ring of `C_p` over `F_p`, on the basis `J_1, …, J_p`
//! of indecomposables.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use crate::rational::{is_nonneg_integer, rat, Rational};
use crate::series::Carrier;

use super::rep::MatRep;

/// `coords[a-1]` is the coefficient of `J_a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GreenElement {
    p: u32,
    coords: Vec<Rational>,
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

impl GreenElement {
    pub fn zero(p: u32) -> Self {
        GreenElement { p, coords: vec![Rational::zero(); p as usize] }
    }

    /// `J_1`, the trivial module.
    pub fn one(p: u32) -> Self {
        Self::indecomposable(p, 1)
    }

    /// `J_a`, for `1 ≤ a ≤ p`.
    pub fn indecomposable(p: u32, a: usize) -> Self {
        assert!(a >= 1 && a <= p as usize, "J_{a} does not exist for p = {p}");
        let mut x = Self::zero(p);
        x.coords[a - 1] = Rational::one();
        x
    }

    pub fn from_coords(p: u32, coords: Vec<Rational>) -> Result<Self> {
        check_prime(p)?;
        if coords.len() != p as usize {
            return Err(Error::Parse(format!("expected {p} coordinates, got {}", coords.len())));
        }
        Ok(GreenElement { p, coords })
    }

    pub fn from_counts(p: u32, counts: &[usize]) -> Self {
        assert_eq!(counts.len(), p as usize);
        GreenElement { p, coords: counts.iter().map(|&c| rat(c as i64)).collect() }
    }

    pub fn scalar(p: u32, q: Rational) -> Self {
        Self::one(p).scale(&q)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coefficient of `J_a`.
    pub fn coeff(&self, a: usize) -> &Rational {
        &self.coords[a - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        GreenElement { p: self.p, coords: self.coords.iter().map(|c| c * q).collect() }
    }

    pub fn dim(&self) -> Rational {
        self.coords.iter().enumerate().map(|(i, c)| c * rat(i as i64 + 1)).sum()
    }

    /// Non-negative integer coordinates: the class of an actual module.
    pub fn is_actual(&self) -> bool {
        self.coords.iter().all(is_nonneg_integer)
    }

    /// Multiplicities of `J_1, …, J_p`, for actual elements.
    pub fn counts(&self) -> Result<Vec<usize>> {
        if !self.is_actual() {
            return Err(Error::NegativeCoords(format!("{self} is not the class of a module")));
        }
        Ok(self
            .coords
            .iter()
            .map(|c| c.to_integer().try_into().expect("multiplicity fits in usize"))
            .collect())
    }

    pub fn mul(&self, other: &GreenElement) -> GreenElement {
        assert_eq!(self.p, other.p, "characteristic mismatch");
        let table = structure_constants(self.p);
        let mut out = GreenElement::zero(self.p);
        for (a, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (c, &n) in table[a][b].iter().enumerate() {
                    if n != 0 {
                        out.coords[c] += &xy * rat(n as i64);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> GreenElement {
        let mut out = GreenElement::one(self.p);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// First index `a` where the two differ, with both coefficients.
    pub fn first_difference(&self, other: &GreenElement) -> Option<(usize, Rational, Rational)> {
        (0..self.coords.len())
            .find(|&i| self.coords[i] != other.coords[i])
            .map(|i| (i + 1, self.coords[i].clone(), other.coords[i].clone()))
    }
}

type Table = Arc<Vec<Vec<Vec<usize>>>>;

fn tables() -> &'static RwLock<HashMap<u32, Table>> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Table>>> = OnceLock::new();
    TABLES.get_or_init(Default::default)
}

/// `table[a-1][b-1][c-1]` is the multiplicity of `J_c` in `J_a ⊗ J_b`,
/// found by decomposing the explicit Kronecker product.
pub fn structure_constants(p: u32) -> Table {
    if let Some(t) = tables().read().expect("lock").get(&p) {
        return t.clone();
    }
    let n = p as usize;
    let block = |a: usize| {
        let mut counts = vec![0; n];
        counts[a - 1] = 1;
        MatRep::from_jordan_counts(p, &counts)
    };
    let table: Vec<Vec<Vec<usize>>> = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| block(a).tensor(&block(b)).jordan_counts().expect("tensor of valid modules"))
                .collect()
        })
        .collect();
    let table = Arc::new(table);
    tables().write().expect("lock").entry(p).or_insert(table).clone()
}

impl Add for &GreenElement {
    type Output = GreenElement;
    fn add(self, rhs: &GreenElement) -> GreenElement {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        GreenElement { p: self.p, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &GreenElement {
    type Output = GreenElement;
    fn sub(self, rhs: &GreenElement) -> GreenElement {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        GreenElement { p: self.p, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &GreenElement {
    type Output = GreenElement;
    fn neg(self) -> GreenElement {
        self.scale(&rat(-1))
    }
}

impl Mul for &GreenElement {
    type Output = GreenElement;
    fn mul(self, rhs: &GreenElement) -> GreenElement {
        GreenElement::mul(self, rhs)
    }
}

/// Written as `2*J1 - J2 + 1/2*J3`; zero is `0`.
impl fmt::Display for GreenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "J{}", i + 1)?;
            } else {
                write!(f, "{mag}*J{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GreenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (p={})", self.p)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    p: u32,
    coords: Vec<String>,
}

impl Serialize for GreenElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire { p: self.p, coords: self.coords.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GreenElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let coords = w
            .coords
            .iter()
            .map(|c| crate::rational::parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        GreenElement::from_coords(w.p, coords).map_err(serde::de::Error::custom)
    }
}

/// The Green ring as a plain carrier, without operator families.
#[derive(Debug, Clone, Copy)]
pub struct GreenRing {
    pub p: u32,
}

impl Carrier for GreenRing {
    type Elem = GreenElement;
    fn zero(&self) -> GreenElement {
        GreenElement::zero(self.p)
    }
    fn one(&self) -> GreenElement {
        GreenElement::one(self.p)
    }
    fn add(&self, a: &GreenElement, b: &GreenElement) -> GreenElement {
        a + b
    }
    fn scale(&self, a: &GreenElement, q: &Rational) -> GreenElement {
        a.scale(q)
    }
    fn mul(&self, a: &GreenElement, b: &GreenElement) -> GreenElement {
        a * b
    }
    fn is_zero(&self, a: &GreenElement) -> bool {
        a.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    J(usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let n = digits(&mut i);
                out.push(Tok::Num(crate::rational::parse_rational(&n)?));
            }
            'J' | 'j' => {
                i += 1;
                let n = digits(&mut i);
                let a: usize = n.parse().map_err(|_| bad("J needs an index"))?;
                out.push(Tok::J(a));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(bad(&format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    p: u32,
    toks: &'a [Tok],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GreenElement> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GreenElement> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let q = d.coords[0].clone();
                if q.is_zero() || d.coords[1..].iter().any(|c| !c.is_zero()) {
                    return Err(Error::Parse("only division by a nonzero scalar is allowed".into()));
                }
                acc = acc.scale(&q.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<GreenElement> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    self.pos += 1;
                    let e: u32 = n.to_integer().try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("exponent must be a non-negative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GreenElement> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(GreenElement::scalar(self.p, n))
            }
            Some(Tok::J(a)) => {
                self.pos += 1;
                if a == 0 || a > self.p as usize {
                    return Err(Error::Parse(format!("J{a} does not exist for p = {}", self.p)));
                }
                Ok(GreenElement::indecomposable(self.p, a))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses expressions such as `J2*J2`, `2*J1 + J2`, `(J1+J2)^3 - J3/2`.
pub fn parse_green(p: u32, s: &str) -> Result<GreenElement> {
    check_prime(p)?;
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { p, toks: &toks, pos: 0 };
    let out = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out)
}

//! Lie powers, restricted Lie powers, Lie resolvents and the ghost-component
//! solver, all at the level of formal characters.
//!
//! Characters are symmetric functions held in power sums. The Adams
//! operation `ψ^r` acts on characters as `χ^r`, and the Lie resolvent `Φ^r`
//! as `μ(r)χ^r`; [`CharCarrier`] packages this as a series carrier.

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd, is_prime, mobius};
use crate::partition::{partitions_of, Partition};
use crate::rational::{rat, Rational};
use crate::report::{Check, Report};
use crate::series::{self, Adams, Carrier, Resolvent, TruncSeries};
use crate::symfunc::{Basis, SymFunc};

/// Symmetric functions truncated at total degree `cap`, with `ψ^r = χ^r`
/// and `Φ^r = μ(r)χ^r`.
#[derive(Debug, Clone, Copy)]
pub struct CharCarrier {
    cap: usize,
}

impl CharCarrier {
    pub fn new(cap: usize) -> Self {
        CharCarrier { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

impl Carrier for CharCarrier {
    type Elem = SymFunc;

    fn zero(&self) -> SymFunc {
        SymFunc::zero(Basis::PowerSum)
    }
    fn one(&self) -> SymFunc {
        SymFunc::one()
    }
    fn add(&self, a: &SymFunc, b: &SymFunc) -> SymFunc {
        (a + b).to_power_sum()
    }
    fn scale(&self, a: &SymFunc, q: &Rational) -> SymFunc {
        a.to_power_sum().scale(q)
    }
    fn mul(&self, a: &SymFunc, b: &SymFunc) -> SymFunc {
        a.mul_truncated(b, self.cap)
    }
    fn is_zero(&self, a: &SymFunc) -> bool {
        a.is_zero()
    }
    fn adams(&self, r: usize, a: &SymFunc) -> Result<SymFunc> {
        Ok(a.chi(r).truncate(self.cap))
    }
    fn resolvent(&self, r: usize, a: &SymFunc) -> Result<SymFunc> {
        Ok(resolvent_char(a, r).truncate(self.cap))
    }
}

/// `ch Φ^r(U) = μ(r) χ^r(ch U)`.
pub fn resolvent_char(f: &SymFunc, r: usize) -> SymFunc {
    f.chi(r).scale(&rat(mobius(r as u64)))
}

/// `f^0, f^1, …, f^n` in power sums.
fn powers(f: &SymFunc, n: usize) -> Vec<SymFunc> {
    let base = f.to_power_sum();
    let mut out = Vec::with_capacity(n + 1);
    out.push(SymFunc::one());
    for j in 1..=n {
        let next = out[j - 1].mul(&base);
        out.push(next);
    }
    out
}

/// `ch L^d(U^q)` from a table of powers of `ch U`.
fn lie_of_power(pw: &[SymFunc], q: usize, d: usize) -> SymFunc {
    let mut acc = SymFunc::zero(Basis::PowerSum);
    for e in divisors(d as u64) {
        let e = e as usize;
        let mu = mobius(e as u64);
        if mu == 0 {
            continue;
        }
        acc = &acc + &pw[q * d / e].chi(e).scale(&rat(mu));
    }
    acc.scale(&Rational::new(1.into(), (d as i64).into()))
}

/// `(1/r) Σ_{d|r} μ(d) χ^d(f^{r/d})` with no checks, valid for virtual `f`.
pub fn lie_polynomial(f: &SymFunc, r: usize) -> SymFunc {
    assert!(r >= 1, "Lie power degree must be positive");
    lie_of_power(&powers(f, r), 1, r)
}

fn degree_of(f: &SymFunc) -> usize {
    f.degree().unwrap_or(0)
}

fn require_prime_coprime(p: u64, k: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if k == 0 || k as u64 % p == 0 {
        return Err(Error::Domain(format!("k = {k} must be positive and prime to p = {p}")));
    }
    Ok(())
}

/// Characters of `B_k, B_{pk}, …, B_{p^m k}` together with the ghost
/// components `ch L^k(V^{p^i})` they were solved from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostSolution {
    pub p: u64,
    pub k: usize,
    pub m: u32,
    pub b: Vec<SymFunc>,
    pub ghosts: Vec<SymFunc>,
}

impl GhostSolution {
    /// `dim B_{p^i k}` in `n` variables, for each `i`.
    pub fn dims(&self, n: usize) -> Vec<Rational> {
        self.b.iter().map(|b| b.eval_dim(n)).collect()
    }

    /// Schur positivity of each `b_i`.
    pub fn positivity(&self) -> Vec<bool> {
        self.b.iter().map(|b| b.is_schur_positive().ok).collect()
    }

    /// Both `b` and `ghosts` are written in the Schur basis; `dims[j]` lists
    /// the dimensions of the `b_i` in `ns[j]` variables.
    pub fn to_json(&self, ns: &[usize]) -> serde_json::Value {
        let schur = |v: &[SymFunc]| v.iter().map(|x| x.to_basis(Basis::Schur)).collect::<Vec<_>>();
        let dims: Vec<Vec<String>> =
            ns.iter().map(|&n| self.dims(n).iter().map(|d| d.to_string()).collect()).collect();
        json!({
            "p": self.p,
            "k": self.k,
            "m": self.m,
            "b": schur(&self.b),
            "ghosts": schur(&self.ghosts),
            "n": ns,
            "dims": dims,
            "schur_positive": self.positivity(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharConfig {
    pub f: SymFunc,
    pub p: u64,
    pub k: usize,
    pub m: u32,
    pub r: usize,
    pub s: usize,
    /// Highest degree used by the per-degree checks.
    pub d: usize,
    pub n: usize,
}

impl Default for CharConfig {
    fn default() -> Self {
        CharConfig { f: SymFunc::p(&[1]), p: 2, k: 3, m: 1, r: 2, s: 3, d: 8, n: 2 }
    }
}

/// Character-level computations under a total-degree cap.
#[derive(Debug, Clone)]
pub struct CharBackend {
    /// Requests whose output degree exceeds this are refused.
    pub max_degree: usize,
    /// Input actuality and output integrality of [`CharBackend::lie_char`]
    /// are checked up to this output degree; above it the monomial-basis
    /// conversions dominate the cost and the checks are skipped.
    pub check_degree: usize,
}

impl Default for CharBackend {
    fn default() -> Self {
        CharBackend { max_degree: 48, check_degree: 16 }
    }
}

impl CharBackend {
    fn budget(&self, degree: usize, what: &str) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::Domain(format!(
                "{what} would reach degree {degree}, above the cap {}",
                self.max_degree
            )));
        }
        Ok(())
    }

    /// `ch L^r(U) = (1/r) Σ_{d|r} μ(d) χ^d((ch U)^{r/d})`.
    pub fn lie_char(&self, f: &SymFunc, r: usize) -> Result<SymFunc> {
        if r == 0 {
            return Err(Error::Domain("Lie power degree must be positive".into()));
        }
        let degree = degree_of(f) * r;
        self.budget(degree, "Lie power")?;
        let checked = degree <= self.check_degree;
        if checked && !f.is_actual_character() {
            return Err(Error::Domain(format!("not an actual character: {f}")));
        }
        let out = lie_polynomial(f, r);
        if checked && !out.to_basis(Basis::Monomial).has_integral_coeffs() {
            return Err(Error::Integrality(format!("ch L^{r} of {f} has fractional coefficients")));
        }
        Ok(out)
    }

    /// `Σ_{d|r} μ(r/d) d ch L^d(U^{r/d})`: the resolvent recovered from Lie
    /// powers of tensor powers, for any (possibly virtual) `f`.
    pub fn resolvent_via_lie(&self, f: &SymFunc, r: usize) -> Result<SymFunc> {
        if r == 0 {
            return Err(Error::Domain("resolvent index must be positive".into()));
        }
        self.budget(degree_of(f) * r, "Lie resolvent")?;
        let pw = powers(f, r);
        let mut acc = SymFunc::zero(Basis::PowerSum);
        for d in divisors(r as u64) {
            let d = d as usize;
            let mu = mobius((r / d) as u64);
            if mu == 0 {
                continue;
            }
            acc = &acc + &lie_of_power(&pw, r / d, d).scale(&rat(mu * d as i64));
        }
        Ok(acc)
    }

    /// `ch R^{p^i k}(V) = Σ_{s+j=i} χ^{p^s}(ch L^{p^j k}(V))`.
    pub fn restricted_lie_char(&self, f: &SymFunc, p: u64, i: u32, k: usize) -> Result<SymFunc> {
        require_prime_coprime(p, k)?;
        let pu = p as usize;
        self.budget(degree_of(f) * pu.pow(i) * k, "restricted Lie power")?;
        let mut acc = SymFunc::zero(Basis::PowerSum);
        for s in 0..=i {
            let lie = self.lie_char(f, pu.pow(i - s) * k)?;
            acc = &acc + &lie.chi(pu.pow(s));
        }
        Ok(acc)
    }

    /// Solves `Σ_{j≤i} p^j b_j^{p^{i-j}} = ch L^k(V^{p^i})` for `i = 0..=m`.
    pub fn ghost_solve(&self, f: &SymFunc, p: u64, k: usize, m: u32) -> Result<GhostSolution> {
        require_prime_coprime(p, k)?;
        let pu = p as usize;
        self.budget(degree_of(f) * pu.pow(m) * k, "ghost solve")?;
        let f = f.to_power_sum();
        let mut b: Vec<SymFunc> = Vec::new();
        let mut ghosts = Vec::new();
        for i in 0..=m {
            let ghost = self.lie_char(&f.pow(pu.pow(i) as u32), k)?;
            let mut acc = ghost.clone();
            for (j, bj) in b.iter().enumerate() {
                let term = bj.pow(pu.pow(i - j as u32) as u32).scale(&rat(pu.pow(j as u32) as i64));
                acc = &acc - &term;
            }
            let bi = acc.scale(&Rational::new(1.into(), (pu.pow(i) as i64).into()));
            if !bi.to_basis(Basis::Monomial).has_integral_coeffs() {
                return Err(Error::Integrality(format!(
                    "ghost equation {i} for p={p}, k={k} is not divisible by {p}^{i}"
                )));
            }
            b.push(bi);
            ghosts.push(ghost);
        }
        Ok(GhostSolution { p, k, m, b, ghosts })
    }

    /// Runs every character-level identity for one configuration.
    pub fn verify_char_identities(&self, cfg: &CharConfig) -> Report {
        let mut report = Report::new();
        let base = format!("f={} p={} k={} m={}", cfg.f, cfg.p, cfg.k, cfg.m);

        report.push(Check::from_result(
            "Lie power character equals necklace sum",
            &format!("r=1..{} n={}", cfg.d, cfg.n),
            self.check_necklace(cfg.d, cfg.n),
        ));
        report.push(Check::from_result(
            "log of symmetric power series is the power sum series",
            &format!("D={}", cfg.d),
            check_log_symmetric_series(cfg.d),
        ));

        match self.ghost_solve(&cfg.f, cfg.p, cfg.k, cfg.m) {
            Ok(sol) => {
                let positive: Option<String> = sol
                    .b
                    .iter()
                    .enumerate()
                    .find_map(|(i, b)| {
                        let pos = b.is_schur_positive();
                        (!pos.ok).then(|| format!("b_{i}: {:?}", pos.violations[0]))
                    });
                report.push(Check::new("ghost components are Schur positive", &base, positive));
                report.push(Check::from_result(
                    "Witt equation holds for ghost components",
                    &base,
                    Ok(witt_residual(&sol)),
                ));
                report.push(Check::from_result(
                    "Lie power splits over ghost components",
                    &base,
                    self.check_decomposition(&cfg.f, &sol),
                ));
                report.push(Check::from_result(
                    "restricted Lie power splits over ghost components",
                    &base,
                    self.check_restricted_decomposition(&cfg.f, &sol),
                ));
            }
            Err(e) => report.push(Check::errored("ghost components are integral", &base, &e)),
        }

        let rs = format!("f={} r={} s={}", cfg.f, cfg.r, cfg.s);
        if gcd(cfg.r as u64, cfg.s as u64) == 1 {
            report.push(Check::from_result(
                "resolvent of coprime product factorises",
                &rs,
                self.check_coprime_factorisation(&cfg.f, cfg.r, cfg.s),
            ));
        } else {
            report.push(Check::errored(
                "resolvent of coprime product factorises",
                &rs,
                &Error::Domain("r and s are not coprime".into()),
            ));
        }
        let top = (1..=8).filter(|r| degree_of(&cfg.f) * r <= self.max_degree).max().unwrap_or(1);
        report.push(Check::from_result(
            "resolvent from Lie powers equals mobius-scaled chi",
            &format!("f={} r=1..{top}", cfg.f),
            (1..=top).try_fold(None, |w: Option<String>, r| {
                if w.is_some() {
                    return Ok(w);
                }
                let lhs = self.resolvent_via_lie(&cfg.f, r)?;
                Ok(witness(&format!("r={r}"), &lhs, &resolvent_char(&cfg.f, r)))
            }),
        ));
        report
    }

    fn check_necklace(&self, d: usize, n: usize) -> Result<Option<String>> {
        for r in 1..=d {
            let lie = self.lie_char(&SymFunc::p(&[1]), r)?;
            let mut direct = SymFunc::zero(Basis::PowerSum);
            for e in divisors(r as u64) {
                let e = e as usize;
                let lam = Partition::new(vec![e; r / e]).expect("constant parts");
                let c = Rational::new(mobius(e as u64).into(), (r as i64).into());
                direct = &direct + &SymFunc::from_terms(Basis::PowerSum, [(lam, c)]);
            }
            if let Some(w) = witness(&format!("r={r}"), &lie, &direct) {
                return Ok(Some(w));
            }
            let witt = rat(crate::numtheory::witt_number(n as u64, r as u64) as i64);
            let dim = lie.eval_dim(n);
            if dim != witt {
                return Ok(Some(format!("r={r}: dim {dim} vs Witt number {witt}")));
            }
        }
        Ok(None)
    }

    fn check_decomposition(&self, f: &SymFunc, sol: &GhostSolution) -> Result<Option<String>> {
        let p = sol.p as usize;
        let m = sol.m;
        let lhs = self.lie_char(f, p.pow(m) * sol.k)?;
        let mut rhs = SymFunc::zero(Basis::PowerSum);
        for i in 0..=m {
            rhs = &rhs + &self.lie_char(&sol.b[(m - i) as usize], p.pow(i))?;
        }
        Ok(witness("", &lhs, &rhs))
    }

    fn check_restricted_decomposition(&self, f: &SymFunc, sol: &GhostSolution) -> Result<Option<String>> {
        let m = sol.m;
        let lhs = self.restricted_lie_char(f, sol.p, m, sol.k)?;
        let mut rhs = SymFunc::zero(Basis::PowerSum);
        for i in 0..=m {
            rhs = &rhs + &self.restricted_lie_char(&sol.b[(m - i) as usize], sol.p, i, 1)?;
        }
        Ok(witness("", &lhs, &rhs))
    }

    /// `ch Φ^{rs}(U)` against `ch Φ^r(Φ^s(U))`, both sides evaluated through
    /// Lie powers of tensor powers.
    pub fn check_coprime_factorisation(&self, f: &SymFunc, r: usize, s: usize) -> Result<Option<String>> {
        let lhs = self.resolvent_via_lie(f, r * s)?;
        let inner = self.resolvent_via_lie(f, s)?;
        let rhs = self.resolvent_via_lie(&inner, r)?;
        if let Some(w) = witness("composite", &lhs, &rhs) {
            return Ok(Some(w));
        }
        let expected = resolvent_char(f, r * s);
        Ok(witness("against mobius-scaled chi", &lhs, &expected))
    }
}

/// First differing power-sum term, formatted for a report.
pub fn witness(label: &str, lhs: &SymFunc, rhs: &SymFunc) -> Option<String> {
    lhs.first_difference(rhs, Basis::PowerSum).map(|(lam, a, b)| {
        let prefix = if label.is_empty() { String::new() } else { format!("{label}: ") };
        format!("{prefix}p{lam}: {a} vs {b}")
    })
}

fn witt_residual(sol: &GhostSolution) -> Option<String> {
    let p = sol.p as usize;
    for (i, ghost) in sol.ghosts.iter().enumerate() {
        let mut acc = SymFunc::zero(Basis::PowerSum);
        for (j, bj) in sol.b.iter().enumerate().take(i + 1) {
            acc = &acc + &bj.pow(p.pow((i - j) as u32) as u32).scale(&rat(p.pow(j as u32) as i64));
        }
        if let Some(w) = witness(&format!("i={i}"), &acc, ghost) {
            return Some(w);
        }
    }
    None
}

/// `log(Σ h_r t^r)` has `p_r / r` at `t^r`.
fn check_log_symmetric_series(d: usize) -> Result<Option<String>> {
    let c = CharCarrier::new(d);
    let sym = TruncSeries::new(&c, d, (0..=d).map(|r| SymFunc::h(&[r]).to_power_sum()).collect());
    let lg = series::log(&c, &sym)?;
    for r in 1..=d {
        let expected = SymFunc::p(&[r]).scale(&Rational::new(1.into(), (r as i64).into()));
        if let Some(w) = witness(&format!("t^{r}"), lg.coeff(r), &expected) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `Σ c_i s_λ` with one or two terms, `|λ| ≤ 4`, `c_i ∈ {1, 2}`.
pub fn random_character<R: Rng + ?Sized>(rng: &mut R) -> SymFunc {
    let terms = rng.gen_range(1..=2);
    let mut out = SymFunc::zero(Basis::Schur);
    for _ in 0..terms {
        let w = rng.gen_range(1..=4);
        let parts = partitions_of(w, None);
        let lam = parts[rng.gen_range(0..parts.len())].clone();
        out = &out + &SymFunc::from_terms(Basis::Schur, [(lam, rat(rng.gen_range(1..=2)))]);
    }
    out
}

/// A random series over the character carrier whose `t^i` coefficient has
/// degree at most `i`, so nothing is lost to the carrier's truncation.
pub fn random_char_series<R: Rng + ?Sized>(
    rng: &mut R,
    c: &CharCarrier,
    d: usize,
    constant_one: bool,
) -> TruncSeries<SymFunc> {
    let mut coeffs = vec![if constant_one { SymFunc::one() } else { SymFunc::zero(Basis::PowerSum) }];
    for i in 1..=d {
        let mut a = SymFunc::zero(Basis::Schur);
        for _ in 0..rng.gen_range(0..=2) {
            let w = rng.gen_range(0..=i.min(4));
            let parts = partitions_of(w, None);
            let lam = parts[rng.gen_range(0..parts.len())].clone();
            let mut coef = rng.gen_range(-2..=2i64);
            if coef == 0 {
                coef = 1;
            }
            a = &a + &SymFunc::from_terms(Basis::Schur, [(lam, rat(coef))]);
        }
        coeffs.push(a.to_power_sum());
    }
    TruncSeries::new(c, d, coeffs)
}

fn series_witness(c: &CharCarrier, lhs: &TruncSeries<SymFunc>, rhs: &TruncSeries<SymFunc>) -> Option<String> {
    series::first_difference(c, lhs, rhs).map(|j| {
        let w = witness("", lhs.coeff(j), rhs.coeff(j)).unwrap_or_default();
        format!("t^{j}: {w}")
    })
}

/// Series-operator identities on the character carrier, on seeded random
/// inputs: the inverse pairs `S*`/`L*`, `exp`/`log`, `Exp`/`Log`, the
/// product formula `S*(𝓛(g)) = (1-g)^{-1}`, the multiplicativity of `S*`,
/// additivity of `L*`, and the `f + g - fg` law of `𝓛`.
pub fn verify_series_identities(d: usize, seed: u64, trials: usize) -> Report {
    use rand::SeedableRng;
    let c = CharCarrier::new(d);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    for t in 0..trials {
        let params = format!("D={d} seed={seed} trial={t}");
        let f = random_char_series(&mut rng, &c, d, false);
        let g = random_char_series(&mut rng, &c, d, false);
        let u = random_char_series(&mut rng, &c, d, true);
        let v = random_char_series(&mut rng, &c, d, true);

        let mut run = |name: &str, body: &dyn Fn() -> Result<Option<String>>| {
            report.push(Check::from_result(name, &params, body()));
        };
        run("log after exp is the identity", &|| {
            Ok(series_witness(&c, &series::log(&c, &series::exp(&c, &f)?)?, &f))
        });
        run("Log after Exp is the identity", &|| {
            Ok(series_witness(&c, &series::shifted_log(&c, &series::shifted_exp(&c, &f)?)?, &f))
        });
        run("L* after S* is the identity on tΠ", &|| {
            Ok(series_witness(&c, &series::star_l(&c, &series::star_s(&c, &f)?)?, &f))
        });
        run("S* after L* is the identity on 1+tΠ", &|| {
            Ok(series_witness(&c, &series::star_s(&c, &series::star_l(&c, &u)?)?, &u))
        });
        run("L* after S* equals L+ after S+", &|| {
            let lhs = series::star_l(&c, &series::star_s(&c, &f)?)?;
            let rhs = series::plus_op(&c, &series::plus_op(&c, &f, &Adams)?, &Resolvent)?;
            Ok(series_witness(&c, &lhs, &rhs))
        });
        run("S* of the Lie module function is the geometric series", &|| {
            let lhs = series::star_s(&c, &series::script_l(&c, &g)?)?;
            Ok(series_witness(&c, &lhs, &series::geometric(&c, &g)?))
        });
        run("S* turns sums into products", &|| {
            let lhs = series::star_s(&c, &series::add(&c, &f, &g))?;
            let rhs = series::mul(&c, &series::star_s(&c, &f)?, &series::star_s(&c, &g)?);
            Ok(series_witness(&c, &lhs, &rhs))
        });
        run("L* turns products into sums", &|| {
            let lhs = series::star_l(&c, &series::mul(&c, &u, &v))?;
            let rhs = series::add(&c, &series::star_l(&c, &u)?, &series::star_l(&c, &v)?);
            Ok(series_witness(&c, &lhs, &rhs))
        });
        run("Lie module function turns f+g-fg into sums", &|| {
            let fg = series::sub(&c, &series::add(&c, &f, &g), &series::mul(&c, &f, &g));
            let lhs = series::add(&c, &series::script_l(&c, &f)?, &series::script_l(&c, &g)?);
            Ok(series_witness(&c, &lhs, &series::script_l(&c, &fg)?))
        });
    }
    report
}

/// Checks that `ψ^1` and `Φ^1` are the identity and that both families are
/// ℚ-linear, on seeded random characters.
pub fn verify_family_laws(seed: u64, trials: usize, max_r: usize) -> Report {
    use rand::SeedableRng;
    let c = CharCarrier::new(4 * max_r);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    for t in 0..trials {
        let params = format!("seed={seed} trial={t} r<={max_r}");
        let x = random_character(&mut rng).to_power_sum();
        let y = random_character(&mut rng).to_power_sum();
        let q = Rational::new(rng.gen_range(-5..=5i64).into(), rng.gen_range(1..=4i64).into());
        let mut w = None;
        for r in 1..=max_r {
            for (name, fam) in [("adams", 0), ("resolvent", 1)] {
                let apply = |z: &SymFunc| if fam == 0 { c.adams(r, z) } else { c.resolvent(r, z) };
                let lhs = apply(&c.add(&c.scale(&x, &q), &y)).expect("total");
                let rhs = c.add(&c.scale(&apply(&x).expect("total"), &q), &apply(&y).expect("total"));
                if w.is_none() {
                    w = witness(&format!("{name} r={r} linear"), &lhs, &rhs);
                }
                if r == 1 && w.is_none() {
                    w = witness(&format!("{name} index 1"), &apply(&x).expect("total"), &x);
                }
            }
        }
        report.push(Check::new("Adams and resolvent families are linear with identity at 1", params, w));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn v() -> SymFunc {
        SymFunc::p(&[1])
    }

    #[test]
    fn lie_square_is_exterior_square() {
        let be = CharBackend::default();
        let l2 = be.lie_char(&v(), 2).unwrap();
        assert!(l2.same_element(&SymFunc::e(&[2])));
        assert_eq!(be.lie_char(&SymFunc::s(&[2, 1]), 1).unwrap().to_basis(Basis::Schur), SymFunc::s(&[2, 1]));
    }

    #[test]
    fn lie_dimensions_on_two_letters() {
        let be = CharBackend::default();
        let dims: Vec<Rational> = (1..=6).map(|r| be.lie_char(&v(), r).unwrap().eval_dim(2)).collect();
        assert_eq!(dims, [2, 1, 2, 3, 6, 9].map(rat));
    }

    #[test]
    fn non_actual_input_is_refused() {
        let be = CharBackend::default();
        let virtual_char = &SymFunc::p(&[2]) - &SymFunc::p(&[1, 1]);
        assert!(matches!(be.lie_char(&virtual_char, 2), Err(Error::Domain(_))));
        let expected = &SymFunc::p(&[2, 2]).scale(&ratio(1, 2)) - &SymFunc::p(&[4]).scale(&ratio(1, 2));
        assert!(lie_polynomial(&SymFunc::p(&[2]), 2).same_element(&expected));
    }

    #[test]
    fn restricted_examples() {
        let be = CharBackend::default();
        let r2 = be.restricted_lie_char(&v(), 2, 1, 1).unwrap();
        assert!(r2.same_element(&(&SymFunc::p(&[2]) + &SymFunc::e(&[2]))));
        assert_eq!(r2.eval_dim(2), rat(3));
        assert_eq!(be.restricted_lie_char(&v(), 2, 2, 1).unwrap().eval_dim(2), rat(6));
        assert_eq!(be.restricted_lie_char(&v(), 3, 0, 2).unwrap(), be.lie_char(&v(), 2).unwrap());
        assert!(matches!(be.restricted_lie_char(&v(), 2, 1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn ghost_examples() {
        let be = CharBackend::default();
        let sol = be.ghost_solve(&v(), 2, 3, 1).unwrap();
        assert_eq!(sol.dims(2), vec![rat(2), rat(8)]);
        assert!(sol.positivity().iter().all(|&x| x));

        // dim L²(V³) for dim V = 2 is the Witt number of 8 letters in degree 2
        let sol = be.ghost_solve(&v(), 3, 2, 1).unwrap();
        assert_eq!(sol.dims(2), vec![rat(1), rat((28 - 1) / 3)]);

        for p in [2, 3] {
            let sol = be.ghost_solve(&v(), p, 1, 2).unwrap();
            assert!(sol.b[1..].iter().all(SymFunc::is_zero));
        }
        assert!(matches!(be.ghost_solve(&v(), 2, 2, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let be = CharBackend { max_degree: 10, check_degree: 10 };
        assert!(matches!(be.lie_char(&v(), 11), Err(Error::Domain(_))));
        assert!(matches!(be.ghost_solve(&v(), 2, 3, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn resolvent_routes_agree() {
        let be = CharBackend::default();
        let f = SymFunc::s(&[2]);
        for r in 1..=8 {
            assert!(be.resolvent_via_lie(&f, r).unwrap().same_element(&resolvent_char(&f, r)), "r={r}");
        }
        assert_eq!(be.check_coprime_factorisation(&f, 2, 3).unwrap(), None);
        assert!(resolvent_char(&f, 6).same_element(&f.chi(6)));
    }

    #[test]
    fn full_identity_report_passes() {
        let be = CharBackend::default();
        let report = be.verify_char_identities(&CharConfig::default());
        assert!(report.all_pass(), "{}", report.render(crate::report::Format::Table));
        assert_eq!(report.len(), 8);
    }

    #[test]
    fn series_identities_pass() {
        let report = verify_series_identities(6, 7, 2);
        assert!(report.all_pass(), "{}", report.render(crate::report::Format::Table));
        assert!(verify_family_laws(3, 4, 4).all_pass());
    }

    #[test]
    fn ghost_json() {
        let be = CharBackend::default();
        let js = be.ghost_solve(&v(), 2, 3, 1).unwrap().to_json(&[2, 3]);
        assert_eq!(js["dims"][0], json!(["2", "8"]));
        assert_eq!(js["b"][0]["basis"], "s");
    }
}

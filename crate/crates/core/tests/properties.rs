use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use liewb::character::{lie_polynomial, random_char_series, resolvent_char, CharBackend, CharCarrier};
use liewb::modular::{GreenElement, GreenRing, MatRep, ModularLab};
use liewb::numtheory::{mobius, p_power_exponent};
use liewb::rational::{rat, Rational};
use liewb::series::{self, Adams, Carrier, FnFamily, Resolvent, Scalars, TruncSeries};
use liewb::{partitions_of, Basis, SymFunc};

const BASES: [Basis; 5] = [Basis::PowerSum, Basis::Monomial, Basis::Homogeneous, Basis::Elementary, Basis::Schur];

fn symfunc(max_weight: usize, max_terms: usize, basis: Basis) -> impl Strategy<Value = SymFunc> {
    prop::collection::vec((0..=max_weight, any::<prop::sample::Index>(), -3i64..=3, 1i64..=3), 0..=max_terms).prop_map(
        move |terms| {
            SymFunc::from_terms(
                basis,
                terms.into_iter().map(|(w, idx, n, d)| {
                    let parts = partitions_of(w, None);
                    (idx.get(&parts).clone(), Rational::new(n.into(), d.into()))
                }),
            )
        },
    )
}

/// Non-negative integer combinations of monomial symmetric functions.
fn actual_character(max_weight: usize) -> impl Strategy<Value = SymFunc> {
    prop::collection::vec((1..=max_weight, any::<prop::sample::Index>(), 1i64..=2), 1..=2).prop_map(|terms| {
        SymFunc::from_terms(
            Basis::Monomial,
            terms.into_iter().map(|(w, idx, c)| (idx.get(&partitions_of(w, None)).clone(), rat(c))),
        )
    })
}

/// Characters of genuine modules: non-negative integer Schur combinations.
fn module_character(max_weight: usize) -> impl Strategy<Value = SymFunc> {
    prop::collection::vec((1..=max_weight, any::<prop::sample::Index>(), 1i64..=2), 1..=2).prop_map(|terms| {
        SymFunc::from_terms(
            Basis::Schur,
            terms.into_iter().map(|(w, idx, c)| (idx.get(&partitions_of(w, None)).clone(), rat(c))),
        )
    })
}

fn basis() -> impl Strategy<Value = Basis> {
    prop::sample::select(BASES.to_vec())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn scalar_series(d: usize, constant: i64) -> impl Strategy<Value = TruncSeries<Rational>> {
    prop::collection::vec(rational(), d).prop_map(move |mut v| {
        v.insert(0, rat(constant));
        TruncSeries::new(&Scalars, d, v)
    })
}

fn green_element(p: u32) -> impl Strategy<Value = GreenElement> {
    prop::collection::vec(rational(), p as usize).prop_map(move |c| GreenElement::from_coords(p, c).unwrap())
}

fn green_series(p: u32, d: usize, constant: i64) -> impl Strategy<Value = TruncSeries<GreenElement>> {
    prop::collection::vec(green_element(p), d).prop_map(move |mut v| {
        v.insert(0, GreenElement::scalar(p, rat(constant)));
        TruncSeries::new(&GreenRing { p }, d, v)
    })
}

fn char_series(seed: u64, d: usize, constant_one: bool) -> TruncSeries<SymFunc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_char_series(&mut rng, &CharCarrier::new(d), d, constant_one)
}

fn module_counts(p: u32) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=2, p as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_round_trip(f in symfunc(8, 4, Basis::PowerSum), b1 in basis(), b2 in basis()) {
        let start = f.to_basis(b1);
        let back = start.to_basis(b2).to_basis(b1);
        prop_assert_eq!(back, start);
    }

    #[test]
    fn chi_is_a_ring_homomorphism(f in symfunc(4, 3, Basis::Schur), g in symfunc(4, 3, Basis::Elementary), r in 1usize..=4) {
        prop_assert!(f.mul(&g).chi(r).same_element(&f.chi(r).mul(&g.chi(r))));
        prop_assert!((&f + &g).chi(r).same_element(&(&f.chi(r) + &g.chi(r))));
        prop_assert!(f.chi(1).same_element(&f));
    }

    #[test]
    fn chi_composes(f in symfunc(3, 3, Basis::Homogeneous), r in 1usize..=6, s in 1usize..=6) {
        prop_assert!(f.chi(r).chi(s).same_element(&f.chi(r * s)));
    }

    #[test]
    fn dimension_is_a_ring_homomorphism(f in symfunc(4, 3, Basis::Schur), g in symfunc(4, 3, Basis::Monomial), n in 1usize..=4, r in 1usize..=4) {
        prop_assert_eq!(f.mul(&g).eval_dim(n), f.eval_dim(n) * g.eval_dim(n));
        prop_assert_eq!((&f + &g).eval_dim(n), f.eval_dim(n) + g.eval_dim(n));
        prop_assert_eq!(f.chi(r).eval_dim(n), f.eval_dim(n));
    }

    #[test]
    fn products_of_actual_characters_are_actual(f in actual_character(4), g in actual_character(4)) {
        prop_assert!(f.is_actual_character() && g.is_actual_character());
        prop_assert!(f.mul(&g).is_actual_character());
    }

    #[test]
    fn exp_and_log_are_inverse_over_the_rationals(f in scalar_series(8, 0), g in scalar_series(8, 1)) {
        let c = Scalars;
        prop_assert!(series::equal(&c, &series::log(&c, &series::exp(&c, &f).unwrap()).unwrap(), &f));
        prop_assert!(series::equal(&c, &series::exp(&c, &series::log(&c, &g).unwrap()).unwrap(), &g));
        prop_assert!(series::equal(&c, &series::shifted_log(&c, &series::shifted_exp(&c, &f).unwrap()).unwrap(), &f));
        prop_assert!(series::equal(&c, &series::shifted_exp(&c, &series::shifted_log(&c, &f).unwrap()).unwrap(), &f));
    }

    #[test]
    fn exp_and_log_are_inverse_over_the_green_ring(f in green_series(3, 4, 0), g in green_series(2, 5, 1)) {
        let c3 = GreenRing { p: 3 };
        let c2 = GreenRing { p: 2 };
        prop_assert!(series::equal(&c3, &series::log(&c3, &series::exp(&c3, &f).unwrap()).unwrap(), &f));
        prop_assert!(series::equal(&c2, &series::exp(&c2, &series::log(&c2, &g).unwrap()).unwrap(), &g));
        prop_assert!(series::equal(&c3, &series::shifted_log(&c3, &series::shifted_exp(&c3, &f).unwrap()).unwrap(), &f));
    }

    #[test]
    fn exp_and_log_are_inverse_over_characters(seed in any::<u64>()) {
        let d = 6;
        let c = CharCarrier::new(d);
        let f = char_series(seed, d, false);
        let g = char_series(seed ^ 1, d, true);
        prop_assert!(series::equal(&c, &series::log(&c, &series::exp(&c, &f).unwrap()).unwrap(), &f));
        prop_assert!(series::equal(&c, &series::exp(&c, &series::log(&c, &g).unwrap()).unwrap(), &g));
        prop_assert!(series::equal(&c, &series::shifted_exp(&c, &series::shifted_log(&c, &f).unwrap()).unwrap(), &f));
    }

    #[test]
    fn plus_operator_laws(seed in any::<u64>(), q in rational(), r in 1usize..=4, s in 2usize..=3) {
        let d = 8;
        let c = CharCarrier::new(d);
        let f = char_series(seed, d, false);
        let g = char_series(seed.wrapping_add(17), d, false);
        for fam in [0, 1] {
            let apply = |x: &TruncSeries<SymFunc>| if fam == 0 {
                series::plus_op(&c, x, &Adams).unwrap()
            } else {
                series::plus_op(&c, x, &Resolvent).unwrap()
            };
            // linearity
            let lhs = apply(&series::add(&c, &series::scale(&c, &f, &q), &g));
            let rhs = series::add(&c, &series::scale(&c, &apply(&f), &q), &apply(&g));
            prop_assert!(series::equal(&c, &lhs, &rhs));
            // t^r Π is preserved
            let coeffs: Vec<SymFunc> = (0..=d).map(|j| if j < r { c.zero() } else { f.coeff(j).clone() }).collect();
            let shifted = TruncSeries::new(&c, d, coeffs);
            let image = apply(&shifted);
            prop_assert!((0..r).all(|j| image.coeff(j).is_zero()));
            // commutes with t -> t^s
            let lhs = apply(&series::subst_power(&c, &f, s));
            let rhs = series::subst_power(&c, &apply(&f), s);
            prop_assert!(series::equal(&c, &lhs, &rhs));
            // additive over f_i ∈ t^i Π
            let parts: Vec<TruncSeries<SymFunc>> = (1..=d)
                .map(|i| TruncSeries::monomial(&c, d, i, f.coeff(i).clone()))
                .collect();
            let mut sum = TruncSeries::zero(&c, d);
            for part in &parts {
                sum = series::add(&c, &sum, &apply(part));
            }
            prop_assert!(series::equal(&c, &sum, &apply(&f)));
        }
    }

    #[test]
    fn plus_operator_is_linear_for_any_linear_family(f in scalar_series(6, 0), g in scalar_series(6, 0), q in rational()) {
        let c = Scalars;
        let fam = FnFamily(|_: &Scalars, r: usize, x: &Rational| Ok(x * rat(r as i64 * r as i64 - 3)));
        let lhs = series::plus_op(&c, &series::add(&c, &series::scale(&c, &f, &q), &g), &fam).unwrap();
        let rhs = series::add(
            &c,
            &series::scale(&c, &series::plus_op(&c, &f, &fam).unwrap(), &q),
            &series::plus_op(&c, &g, &fam).unwrap(),
        );
        prop_assert!(series::equal(&c, &lhs, &rhs));
    }

    #[test]
    fn star_operators_match_plus_operators(seed in any::<u64>()) {
        let d = 8;
        let c = CharCarrier::new(d);
        let f = char_series(seed, d, false);
        let lhs = series::star_l(&c, &series::star_s(&c, &f).unwrap()).unwrap();
        let rhs = series::plus_op(&c, &series::plus_op(&c, &f, &Adams).unwrap(), &Resolvent).unwrap();
        prop_assert!(series::equal(&c, &lhs, &rhs));
    }

    #[test]
    fn star_operators_are_inverse_in_characteristic_zero(seed in any::<u64>()) {
        let d = 8;
        let c = CharCarrier::new(d);
        let f = char_series(seed, d, false);
        let g = char_series(seed ^ 0xabc, d, true);
        prop_assert!(series::equal(&c, &series::star_l(&c, &series::star_s(&c, &f).unwrap()).unwrap(), &f));
        prop_assert!(series::equal(&c, &series::star_s(&c, &series::star_l(&c, &g).unwrap()).unwrap(), &g));
        let pbw = series::star_s(&c, &series::script_l(&c, &f).unwrap()).unwrap();
        prop_assert!(series::equal(&c, &pbw, &series::geometric(&c, &f).unwrap()));
    }

    #[test]
    fn lie_powers_of_module_characters_are_schur_positive(f in module_character(2), r in 1usize..=5) {
        prop_assume!(f.degree().unwrap() * r <= 10);
        let be = CharBackend::default();
        let lie = be.lie_char(&f, r).unwrap();
        // in n variables only Schur functions of length ≤ n survive
        let schur = lie.to_basis(Basis::Schur);
        for n in 1..=3 {
            let kept = SymFunc::from_terms(
                Basis::Schur,
                schur.terms().filter(|(l, _)| l.len() <= n).map(|(l, c)| (l.clone(), c.clone())),
            );
            prop_assert!(kept.terms().all(|(_, c)| c.is_integer() && *c > rat(0)), "n={} {}", n, kept);
            prop_assert_eq!(kept.restrict_vars(n), lie.restrict_vars(n));
        }
        prop_assert!(lie.to_basis(Basis::Schur).terms().all(|(_, c)| c.is_integer() && *c > rat(0)));
    }

    #[test]
    fn resolvent_from_lie_powers_is_mobius_chi(f in symfunc(2, 2, Basis::Schur), r in 1usize..=8) {
        let be = CharBackend::default();
        prop_assert!(be.resolvent_via_lie(&f, r).unwrap().same_element(&resolvent_char(&f, r)));
    }

    #[test]
    fn tensor_products_commute_and_sums_add(a in module_counts(3), b in module_counts(3)) {
        let lab = ModularLab::new(3).unwrap();
        let (x, y) = (MatRep::from_jordan_counts(3, &a), MatRep::from_jordan_counts(3, &b));
        prop_assert_eq!(lab.decompose(&x.tensor(&y)).unwrap(), lab.decompose(&y.tensor(&x)).unwrap());
        let sum = lab.decompose(&x.direct_sum(&y)).unwrap();
        prop_assert_eq!(sum, &lab.decompose(&x).unwrap() + &lab.decompose(&y).unwrap());
    }

    #[test]
    fn lie_power_dimension_matches_character(a in module_counts(2), d in 1usize..=5) {
        let lab = ModularLab::new(2).unwrap();
        let m = MatRep::from_jordan_counts(2, &a);
        prop_assume!(m.dim() >= 1 && (m.dim() as u64).pow(d as u32) <= lab.budget());
        let dim = lab.lie_power_rep(&m, d).unwrap().dim();
        let be = CharBackend::default();
        let expected = be.lie_char(&SymFunc::p(&[1]), d).unwrap().eval_dim(m.dim());
        prop_assert_eq!(rat(dim as i64), expected);
    }
}

#[test]
fn ghost_components_are_schur_positive_integral() {
    let be = CharBackend::default();
    for (p, k) in [(2u64, 1usize), (2, 3), (3, 1), (3, 2)] {
        for m in 0..=2u32 {
            if (p as usize).pow(m) * k > 12 {
                continue;
            }
            let sol = be.ghost_solve(&SymFunc::p(&[1]), p, k, m).unwrap();
            for b in &sol.b {
                let s = b.to_basis(Basis::Schur);
                assert!(s.terms().all(|(_, c)| c.is_integer() && *c > rat(0)), "p={p} k={k} m={m}: {s}");
            }
            // character form of the decomposition
            let pu = p as usize;
            let lhs = lie_polynomial(&SymFunc::p(&[1]), pu.pow(m) * k);
            let mut rhs = SymFunc::zero(Basis::PowerSum);
            for i in 0..=m {
                rhs = &rhs + &lie_polynomial(&sol.b[(m - i) as usize], pu.pow(i));
            }
            assert!(lhs.same_element(&rhs), "p={p} k={k} m={m}");
            // restricted form, with ch R^{p^i}(B) = Σ_{s≤i} χ^{p^s}(ch L^{p^{i-s}}(B))
            let restricted = |f: &SymFunc, i: u32, k: usize| {
                let mut acc = SymFunc::zero(Basis::PowerSum);
                for s in 0..=i {
                    acc = &acc + &lie_polynomial(f, pu.pow(i - s) * k).chi(pu.pow(s));
                }
                acc
            };
            let lhs = restricted(&SymFunc::p(&[1]), m, k);
            let mut rhs = SymFunc::zero(Basis::PowerSum);
            for i in 0..=m {
                rhs = &rhs + &restricted(&sol.b[(m - i) as usize], i, 1);
            }
            assert!(lhs.same_element(&rhs), "restricted p={p} k={k} m={m}");
            assert!(be.restricted_lie_char(&SymFunc::p(&[1]), p, m, k).unwrap().same_element(&lhs));
        }
    }
}

#[test]
fn adams_and_resolvent_agree_with_brauer_characters_away_from_p() {
    for p in [2u32, 3] {
        let lab = ModularLab::new(p).unwrap();
        for b in 1..=p as usize {
            let v = GreenElement::indecomposable(p, b);
            for r in (1..=8).filter(|r| r % p as usize != 0) {
                let psi = lab.adams(&v, r).unwrap();
                assert_eq!(lab.phi(&v, r).unwrap(), psi.scale(&rat(mobius(r as u64))), "p={p} J{b} r={r}");
                for s in 1..=8 / r {
                    let lhs = lab.adams(&v, r * s).unwrap();
                    let rhs = lab.adams(&lab.adams(&v, s).unwrap(), r).unwrap();
                    assert_eq!(lhs, rhs, "p={p} J{b} r={r} s={s}");
                }
            }
        }
    }
}

#[test]
fn witt_equation_in_the_green_ring() {
    for (p, k, m) in [(2u32, 1usize, 2u32), (2, 3, 1), (3, 1, 1), (3, 2, 1)] {
        let lab = ModularLab::new(p).unwrap();
        for a in 1..=p as usize {
            let v = GreenElement::indecomposable(p, a);
            let bs = lab.b_classes(&v, k, m).unwrap();
            let pu = p as usize;
            for i in 0..=m {
                let ghost = lab.lie_power(&v.pow(pu.pow(i) as u32), k).unwrap();
                let mut acc = GreenElement::zero(p);
                for (j, b) in bs.iter().enumerate().take(i as usize + 1) {
                    let term = b.pow(pu.pow(i - j as u32) as u32).scale(&rat(pu.pow(j as u32) as i64));
                    acc = &acc + &term;
                }
                assert_eq!(acc, ghost, "p={p} a={a} k={k} i={i}");
            }
        }
    }
}

#[test]
fn p_typical_with_rho_coefficients() {
    for p in [2u32, 3] {
        let lab = ModularLab::new(p).unwrap();
        for a in 1..=p as usize {
            let v = GreenElement::indecomposable(p, a);
            let s = lab.star_ls(&v, 8).unwrap();
            assert!(series::is_p_typical(&lab, &s, p as u64), "p={p} a={a}");
            for r in (1..=8).filter(|&r| p_power_exponent(r as u64, p as u64).is_some()) {
                assert_eq!(*s.coeff(r), lab.rho(&v, r).unwrap(), "p={p} a={a} r={r}");
            }
        }
    }
}

#[test]
fn restricted_decomposition_in_the_green_ring() {
    let lab = ModularLab::new(2).unwrap();
    for a in [1, 2] {
        let v = GreenElement::indecomposable(2, a);
        for k in [1, 3] {
            for m in 0..=2u32 {
                let d = 2usize.pow(m) * k;
                if (a as u64).pow(d as u32) > lab.budget() {
                    continue;
                }
                let bs = lab.b_classes(&v, k, m).unwrap();
                let lhs = lab.decompose(&lab.restricted_lie_power_rep(&lab.rep_of(&v).unwrap(), d).unwrap()).unwrap();
                let mut rhs = GreenElement::zero(2);
                for i in 0..=m {
                    let b = lab.rep_of(&bs[(m - i) as usize]).unwrap();
                    rhs = &rhs + &lab.decompose(&lab.restricted_lie_power_rep(&b, 2usize.pow(i)).unwrap()).unwrap();
                }
                assert_eq!(lhs, rhs, "a={a} k={k} m={m}");
            }
        }
    }
}

use freefield::cochain::{pairing, LatticeFunction, Monomial};
use freefield::complex::{differential, laplace, odd_laplacian, poisson_bracket};
use freefield::harness::oracle::independent_dquantum;
use freefield::harness::parse::parse_cochain;
use freefield::reduction::{normal_form_with, Strategy as Rewrite};
use freefield::{dquantum, Cochain, Interval, ModelParams, Scalar, Window};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 1i64..=3, 0u32..=1, -1i32..=1), 1..=2).prop_map(|ts| {
        let mut s = Scalar::zero();
        for (n, d, h, a) in ts {
            s += &(&Scalar::from_ratio(n, d) * &(&Scalar::hbar_pow(h) * &Scalar::alpha_pow(a)));
        }
        s
    })
}

fn monomial(lo: i64, hi: i64, maxdeg: usize, odd: bool) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((lo..=hi, prop::bool::weighted(if odd { 0.4 } else { 0.0 })), 0..=maxdeg).prop_map(|gens| {
        let mut m = Monomial::one();
        for (s, anti) in gens {
            let g = if anti { Monomial::antifield(s) } else { Monomial::field(s) };
            if let Some((_, next)) = m.mul(&g) {
                m = next;
            }
        }
        m
    })
}

fn cochain(lo: i64, hi: i64, maxdeg: usize, odd: bool) -> impl Strategy<Value = Cochain> {
    prop::collection::vec((monomial(lo, hi, maxdeg, odd), scalar()), 1..=4).prop_map(|ts| {
        let mut c = Cochain::zero();
        for (m, s) in ts {
            c.add_term(m, s);
        }
        c
    })
}

fn function(lo: i64, hi: i64) -> impl Strategy<Value = LatticeFunction> {
    prop::collection::vec((lo..=hi, scalar()), 1..=4)
        .prop_map(LatticeFunction::from_pairs)
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn symbolic() -> ModelParams {
    ModelParams::symbolic()
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn dhbar_squares_to_zero(c in cochain(-6, 6, 4, true)) {
        let p = symbolic();
        prop_assert!(dquantum(&dquantum(&c, &p), &p).is_zero());
        prop_assert!(differential(&differential(&c, &p), &p).is_zero());
        prop_assert!(odd_laplacian(&odd_laplacian(&c)).is_zero());
    }

    #[test]
    fn independent_differential_agrees(c in cochain(-5, 5, 3, true)) {
        let p = symbolic();
        prop_assert_eq!(dquantum(&c, &p), independent_dquantum(&c, p.alpha(), p.hbar()));
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn delta_defect_is_the_bracket(x in cochain(-3, 3, 3, true), y in cochain(-3, 3, 3, true)) {
        // homogeneous x keeps the Koszul sign uniform
        let k = x.terms().next().map_or(0, |t| t.0.degree());
        let x = x.homogeneous(k);
        let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let defect = &(&odd_laplacian(&(&x * &y)) - &(&odd_laplacian(&x) * &y)) - &(&x * &odd_laplacian(&y)).scale(&sign);
        prop_assert_eq!(defect, poisson_bracket(&x, &y));
    }

    #[test]
    fn laplacian_is_self_adjoint(f in function(-6, 6), g in function(-6, 6)) {
        let p = symbolic();
        prop_assert_eq!(pairing(&laplace(&f, &p), &g), pairing(&f, &laplace(&g, &p)));
    }

    #[test]
    fn laplacian_is_injective(f in function(-8, 8)) {
        let p = symbolic();
        prop_assert!(!laplace(&f, &p).is_zero());
    }

    #[test]
    fn strategies_agree(c in cochain(-5, 5, 4, false)) {
        let p = symbolic();
        let j = Interval::from_ints(-6, 6).unwrap();
        let a = normal_form_with(&c, &j, Window::new(0), &p, Rewrite::RightmostOutermost).unwrap();
        let b = normal_form_with(&c, &j, Window::new(0), &p, Rewrite::LeftmostOutermost).unwrap();
        prop_assert_eq!(&a.normal_form, &b.normal_form);
        prop_assert_eq!(&c - &a.normal_form, independent_dquantum(&a.homotopy, p.alpha(), p.hbar()));
    }

    #[test]
    fn parser_round_trips(c in cochain(-9, 9, 4, true)) {
        prop_assert_eq!(parse_cochain(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn multiplication_is_graded_commutative(x in cochain(-4, 4, 3, true), y in cochain(-4, 4, 3, true), z in cochain(-4, 4, 2, true)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        let k = x.terms().next().map_or(0, |t| t.0.degree());
        let l = y.terms().next().map_or(0, |t| t.0.degree());
        let (x, y) = (x.homogeneous(k), y.homogeneous(l));
        let sign = if (k * l) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        prop_assert_eq!(&x * &y, (&y * &x).scale(&sign));
    }

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }
}

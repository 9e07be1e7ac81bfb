//! Property tests for the exact-arithmetic kernel: field axioms, gcd and
//! squarefree-decomposition contracts, resultants, substitution, and the
//! parser/printer round trip.

use proptest::prelude::*;
use submonoidal::exactalg::{
    gcd, is_squarefree_binary, poly_parse, poly_print, resultant,
    squarefree_decompose_binary, vars, Expo, FieldCtx, FieldElement, MultiPoly,
    VarSet,
};

fn bv() -> VarSet {
    vars(&["x0", "x1"])
}

fn rational() -> impl Strategy<Value = FieldElement> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| FieldElement::ratio(n, d))
}

fn quadratic(disc: i64) -> impl Strategy<Value = FieldElement> {
    (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6).prop_map(move |(a, ad, b, bd)| {
        let w = FieldElement::sqrt_gen(disc);
        &FieldElement::ratio(a, ad) + &(&FieldElement::ratio(b, bd) * &w)
    })
}

/// Homogeneous binary form of the given degree with small integer
/// coefficients.
fn binary_form(degree: u32) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(-9i64..=9, degree as usize + 1).prop_map(move |cs| {
        let vs = bv();
        let mut f = MultiPoly::zero(&vs);
        for (j, c) in cs.into_iter().enumerate() {
            f = f.add(&MultiPoly::monomial(
                &vs,
                Expo(vec![degree - j as u32, j as u32]),
                FieldElement::from_int(c),
            ));
        }
        f
    })
}

fn nonzero_form(degree: u32) -> impl Strategy<Value = MultiPoly> {
    binary_form(degree).prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn field_inverse(a in quadratic(-3)) {
        if let Ok(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, FieldElement::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn quadratic_norm_multiplicative(a in quadratic(5), b in quadratic(5)) {
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
    }

    #[test]
    fn gcd_divides_both(f in nonzero_form(4), g in nonzero_form(5)) {
        let h = gcd(&f, &g);
        prop_assert!(f.try_divide(&h).is_some());
        prop_assert!(g.try_divide(&h).is_some());
    }

    #[test]
    fn gcd_detects_common_factor(
        f in nonzero_form(3),
        g in nonzero_form(2),
        h in nonzero_form(2),
    ) {
        let a = f.mul(&g);
        let b = f.mul(&h);
        let d = gcd(&a, &b);
        // The common factor f divides the gcd.
        prop_assert!(d.try_divide(&f.monic()).is_some());
    }

    #[test]
    fn squarefree_reconstruction(
        f in nonzero_form(2),
        g in nonzero_form(1),
        e in 1u32..=3,
    ) {
        let prod = f.mul(&g.pow(e));
        let dec = squarefree_decompose_binary(&prod);
        prop_assert_eq!(dec.reconstruct(&bv()), prod);
        for part in &dec.factors {
            prop_assert!(is_squarefree_binary(&part.factor));
        }
        // Distinct multiplicity parts are coprime.
        for i in 0..dec.factors.len() {
            for j in 0..i {
                let d = gcd(&dec.factors[i].factor, &dec.factors[j].factor);
                prop_assert!(d.is_constant());
            }
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        f in nonzero_form(3),
        g in nonzero_form(3),
    ) {
        let res = resultant(&f, &g, 1);
        let d = gcd(&f, &g);
        // For binary forms of equal degree, a vanishing resultant in one
        // variable certifies a common factor, unless both leading
        // coefficients in that variable drop (shared root at infinity is
        // the shared factor x0).
        let common = !d.is_constant();
        if !common {
            prop_assert!(!res.is_zero());
        }
        if common && d.degree_in(1) == Some(d.total_degree().unwrap()) {
            prop_assert!(res.is_zero());
        }
    }

    #[test]
    fn substitution_composes(f in nonzero_form(3), a in -4i64..=4, b in -4i64..=4) {
        // f(x0 + a*x1, b*x1) evaluated at a point equals evaluating the
        // substituted polynomial.
        let vs = bv();
        let x0 = MultiPoly::var(&vs, 0);
        let x1 = MultiPoly::var(&vs, 1);
        let images = [
            x0.add(&x1.scale(&FieldElement::from_int(a))),
            x1.scale(&FieldElement::from_int(b)),
        ];
        let sub = f.substitute(&images);
        let p = [FieldElement::from_int(2), FieldElement::from_int(3)];
        let direct = f.eval(&[images[0].eval(&p), images[1].eval(&p)]);
        prop_assert_eq!(sub.eval(&p), direct);
    }

    #[test]
    fn print_parse_round_trip(f in binary_form(4)) {
        let text = poly_print(&f);
        let back = poly_parse(&text, &bv(), &FieldCtx::Rational).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn print_parse_round_trip_quadratic(a in quadratic(-3), b in quadratic(-3)) {
        let vs = bv();
        let f = MultiPoly::monomial(&vs, Expo(vec![2, 0]), a)
            .add(&MultiPoly::monomial(&vs, Expo(vec![0, 2]), b));
        let text = poly_print(&f);
        let back = poly_parse(&text, &vs, &FieldCtx::Quadratic(-3)).unwrap();
        prop_assert_eq!(back, f);
    }
}

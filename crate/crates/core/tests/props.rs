use num_bigint::BigInt;
use proptest::prelude::*;

use magnus_core::alexander::{find_transversal, factorization_with, GradedMap, MultiVector};
use magnus_core::cobordism;
use magnus_core::free_group::jacobian;
use magnus_core::gen;
use magnus_core::linalg::det;
use magnus_core::magnus::mag_kernel;
use magnus_core::ring::{exact_div, gcd};
use magnus_core::surface::PointedHermModule;
use magnus_core::{HeegaardData, LagRelation, LaurentPoly, MatQ, PhiValuation, RingFrac};

const NV: usize = 2;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, NV), -6i64..=6), 0..5)
        .prop_map(|ts| LaurentPoly::from_terms(NV, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn phi(g: usize) -> impl Strategy<Value = PhiValuation> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, NV), 2 * g).prop_map(|v| PhiValuation::new(NV, v).unwrap())
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatQ> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let cols_v: Vec<Vec<RingFrac>> =
            (0..cols).map(|j| (0..rows).map(|i| RingFrac::from_int(0, v[i * cols + j])).collect()).collect();
        MatQ::from_cols(0, rows, &cols_v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).involute(), &a.involute() * &b.involute());
    }

    #[test]
    fn normalization_splits(a in nonzero_poly()) {
        let (u, n) = a.unit_normalize().unwrap();
        prop_assert!(u.is_unit());
        prop_assert_eq!(&u * &n, a.clone());
        prop_assert!(n.min_exponents().iter().all(|&e| e == 0));
        let shifted = a.shift(&[2, -1]);
        prop_assert_eq!(shifted.normal_form(), n.clone());
        prop_assert_eq!((-&a).normal_form(), n);
    }

    #[test]
    fn gcd_is_common_divisor(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (x, y) = (&a * &c, &b * &c);
        let g = gcd(&x, &y);
        prop_assert!(exact_div(&x, &g).is_some());
        prop_assert!(exact_div(&y, &g).is_some());
        prop_assert!(exact_div(&g, &c).is_some());
    }

    #[test]
    fn fractions_form_a_field(a in nonzero_poly(), b in nonzero_poly(), c in poly()) {
        let x = RingFrac::new(c.clone(), a.clone()).unwrap();
        let y = RingFrac::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(&(&x * &y) / &y, x.clone());
        prop_assert_eq!(&(&x + &y) - &x, y.clone());
        prop_assert_eq!(&x * &y, RingFrac::new(c, b).unwrap());
    }

    #[test]
    fn forms_are_certified(p in (1usize..=3).prop_flat_map(|g| (Just(g), phi(g)))) {
        let (g, phi) = p;
        let h = PointedHermModule::build(g, &phi).unwrap();
        prop_assert!(h.certify().is_ok());
        prop_assert_eq!(det(h.form_matrix()).unwrap(), LaurentPoly::constant(NV, 4i64.pow(g as u32)));
    }

    #[test]
    fn wedge_is_alternating(u in prop::collection::vec(-3i64..=3, 4), v in prop::collection::vec(-3i64..=3, 4)) {
        let q = |w: &[i64]| w.iter().map(|&x| RingFrac::from_int(0, x)).collect::<Vec<_>>();
        let (a, b) = (MultiVector::from_vector(0, &q(&u)), MultiVector::from_vector(0, &q(&v)));
        prop_assert!(a.wedge(&a).unwrap().is_zero());
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        for (m, c) in ab.terms() {
            prop_assert_eq!(&-c.clone(), &ba.coeff(*m));
        }
    }

    #[test]
    fn exterior_power_is_multiplicative(a in int_matrix(3, 3), b in int_matrix(3, 3)) {
        let la = GradedMap::exterior_power(&a).unwrap();
        let lb = GradedMap::exterior_power(&b).unwrap();
        let lab = GradedMap::exterior_power(&a.mul(&b)).unwrap();
        for j in 0..=3 {
            prop_assert_eq!(&lab.blocks()[j], &la.blocks()[j].mul(&lb.blocks()[j]));
        }
    }

    #[test]
    fn graphs_compose(seed in any::<u64>(), g in 1usize..=2) {
        let mut r = gen::rng(seed);
        let f1 = gen::random_mapping_class(&mut r, g, 4, 10);
        let f2 = gen::random_mapping_class(&mut r, g, 4, 10);
        let p = gen::random_phi(&mut r, 1, 2 * g, 2);
        let a = HeegaardData::mapping_cylinder(f1.clone(), p.clone()).unwrap();
        let b = HeegaardData::mapping_cylinder(f2.clone(), a.phi_minus()).unwrap();
        let (ma, mb) = (mag_kernel(&a.compile()).unwrap(), mag_kernel(&b.compile()).unwrap());
        let both = HeegaardData::mapping_cylinder(f1.compose(&f2).unwrap(), p.clone()).unwrap();
        let j = jacobian(&f1.compose(&f2).unwrap(), &p).unwrap().to_q();
        let graph = LagRelation::graph(&j, &both.compile().source(), &both.compile().target()).unwrap();
        prop_assert!(ma.compose(&mb).unwrap().equal(&graph).unwrap());
        prop_assert!(ma.certify().is_ok());
    }

    #[test]
    fn dsl_round_trip(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let h = gen::random_heegaard(&mut r, 3, 2, 12);
        prop_assert_eq!(cobordism::parse(&h.to_dsl()).unwrap(), h);
    }

    #[test]
    fn factorization_holds(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let c = gen::random_heegaard(&mut r, 2, 1, 8).compile();
        let rel = mag_kernel(&c).unwrap();
        let w = find_transversal(&rel);
        let rep = factorization_with(&c, &rel, &w).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.discrepancy);
    }
}

//! Property tests for the algebraic core and the combinatorial maps.

use compoly::bijection::{phi1, phi2, phi_inverse, PhiImage, Preimage};
use compoly::composition::{compositions_of, Composition};
use compoly::permutition::{enumerate_shape, standardize, Permutition};
use compoly::qpoly::QPoly;
use compoly::rational::Rational;
use compoly::tpoly::TPoly;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(rational(), 0..8).prop_map(QPoly::from_coeffs)
}

fn tpoly() -> impl Strategy<Value = TPoly> {
    prop::collection::vec(qpoly(), 0..4).prop_map(TPoly::from_coeffs)
}

proptest! {
    #[test]
    fn ring_axioms(a in qpoly(), b in qpoly(), c in qpoly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &(-&a), QPoly::zero());
    }

    #[test]
    fn division_inverts_multiplication(a in qpoly(), b in qpoly()) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(product.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn integration_vanishes_at_lower_bound(p in tpoly(), m in 1usize..=6) {
        let integrated = p.integrate_power_from_q(m);
        prop_assert!(integrated.eval_at_q().is_zero());
    }

    #[test]
    fn qpoly_json_round_trip(a in qpoly()) {
        let strings = a.coeff_strings();
        prop_assert_eq!(QPoly::from_coeff_strings(&strings).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_morphism(a in qpoly(), b in qpoly(), v in rational()) {
        prop_assert_eq!((&a * &b).eval(&v), a.eval(&v) * b.eval(&v));
        prop_assert_eq!((&a + &b).eval(&v), a.eval(&v) + b.eval(&v));
    }

    #[test]
    fn standardize_idempotent_and_order_preserving(
        word in prop::collection::btree_set(1usize..=60, 1..=10)
    ) {
        // btree_set gives distinct letters; shuffle them deterministically
        let mut word: Vec<usize> = word.into_iter().collect();
        word.reverse();
        let std = standardize(&word);
        prop_assert_eq!(standardize(&std), std.clone());
        for i in 0..word.len() {
            for j in 0..word.len() {
                prop_assert_eq!(word[i] < word[j], std[i] < std[j]);
            }
        }
    }
}

fn small_composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_filter("small weight", |parts| parts.iter().sum::<usize>() <= 6)
        .prop_map(|parts| Composition::new(parts).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalization_sorts_blocks(i in small_composition()) {
        for pi in enumerate_shape(&i) {
            // feed the blocks back in reverse order: canonical form returns
            let mut blocks: Vec<Vec<usize>> = pi.blocks().to_vec();
            blocks.reverse();
            let rebuilt = Permutition::from_blocks(blocks).unwrap();
            prop_assert_eq!(rebuilt, pi.clone());
            // sinv bound: 0 <= sinv <= n - l(shape)
            prop_assert!(pi.sinv() <= i.weight() - i.len());
        }
    }

    #[test]
    fn bijection_round_trip(i in small_composition()) {
        prop_assume!(i.len() >= 2);
        for tau in enumerate_shape(&i) {
            for &x in &tau.blocks()[0].clone() {
                let e = compoly::bijection::E1Element { tau: tau.clone(), x };
                let img = phi1(&e, &i).unwrap();
                match phi_inverse(&img, &i).unwrap() {
                    Preimage::FromE1(back) => prop_assert_eq!(back, e),
                    Preimage::FromE2(_) => prop_assert!(false, "phi1 image must invert into E1"),
                }
            }
        }
        let merged = i.merge_first_two().unwrap();
        for tau in enumerate_shape(&merged) {
            let e = compoly::bijection::E2Element { tau };
            let img = phi2(&e, &i).unwrap();
            match phi_inverse(&img, &i).unwrap() {
                Preimage::FromE2(back) => prop_assert_eq!(back, e),
                Preimage::FromE1(_) => prop_assert!(false, "phi2 image must invert into E2"),
            }
        }
    }

    #[test]
    fn phi1_case_b_preserves_shape(i in small_composition()) {
        prop_assume!(i.len() >= 2);
        for tau in enumerate_shape(&i) {
            for &x in &tau.blocks()[0].clone() {
                let e = compoly::bijection::E1Element { tau: tau.clone(), x };
                if let PhiImage::InE1(out) = phi1(&e, &i).unwrap() {
                    prop_assert_eq!(out.tau.shape(), i.clone());
                }
            }
        }
    }
}

#[test]
fn composition_counts_are_powers_of_two() {
    for n in 1..=12 {
        assert_eq!(compositions_of(n).len(), 1 << (n - 1));
    }
}

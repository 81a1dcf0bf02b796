//! Property tests for polynomial arithmetic, normal forms and the pairing.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qflag_core::groebner::GbConfig;
use qflag_core::poly::{parse_polynomial, Degree, Polynomial, VarRegistry};
use qflag_core::presentation::{flag_registry, FlagType};
use qflag_core::QuantumRing;

fn f123_registry() -> Arc<VarRegistry> {
    flag_registry(&FlagType::new(&[1, 2, 3]).unwrap(), true)
}

fn eq_ring() -> &'static Arc<QuantumRing> {
    static RING: OnceLock<Arc<QuantumRing>> = OnceLock::new();
    RING.get_or_init(|| QuantumRing::new(&FlagType::new(&[1, 3]).unwrap(), true, &GbConfig::default()).unwrap())
}

fn plain_ring() -> &'static Arc<QuantumRing> {
    static RING: OnceLock<Arc<QuantumRing>> = OnceLock::new();
    RING.get_or_init(|| QuantumRing::new(&FlagType::new(&[1, 2, 3]).unwrap(), false, &GbConfig::default()).unwrap())
}

const VARS: [&str; 5] = ["c[0][1]", "c[1][1]", "q[1]", "q[2]", "C[1]"];

fn poly_strategy() -> impl Strategy<Value = String> {
    let term = (-5i64..=5, proptest::collection::vec(0u32..3, VARS.len())).prop_map(|(c, exps)| {
        let mut s = c.to_string();
        for (v, e) in VARS.iter().zip(exps) {
            if e > 0 {
                s.push_str(&format!("*{v}^{e}"));
            }
        }
        s
    });
    proptest::collection::vec(term, 0..5).prop_map(|ts| if ts.is_empty() { "0".into() } else { ts.join(" + ") })
}

fn random_element(ring: &QuantumRing, seed: u64, degree: u32) -> Polynomial {
    ring.random_homogeneous(&mut ChaCha8Rng::seed_from_u64(seed), degree)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let reg = f123_registry();
        let (a, b, c) = (
            parse_polynomial(&a, &reg).unwrap(),
            parse_polynomial(&b, &reg).unwrap(),
            parse_polynomial(&c, &reg).unwrap(),
        );
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&reg), a.clone());
    }

    #[test]
    fn text_round_trip(a in poly_strategy()) {
        let reg = f123_registry();
        let p = parse_polynomial(&a, &reg).unwrap();
        prop_assert_eq!(parse_polynomial(&p.to_string(), &reg).unwrap(), p);
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), d in 0u32..6) {
        let ring = plain_ring();
        let x = random_element(ring, seed, d);
        let y = ring.nf(&(&x * &x));
        prop_assert_eq!(ring.nf(&y), y);
    }

    #[test]
    fn normal_form_is_linear_over_parameters(s1 in any::<u64>(), s2 in any::<u64>(), d in 0u32..4) {
        let ring = eq_ring();
        let (x, y) = (random_element(ring, s1, d), random_element(ring, s2, d));
        let c1 = ring.parse("C[1] + 2*q[1]").unwrap();
        let lhs = ring.nf(&(&(&c1 * &x) + &y));
        let rhs = &(&c1 * &ring.nf(&x)) + &ring.nf(&y);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_preserves_degree(seed in any::<u64>(), d in 0u32..7) {
        let ring = eq_ring();
        let x = random_element(ring, seed, d);
        let nf = ring.nf(&x);
        prop_assert!(nf.is_zero() || nf.weighted_degree() == Degree::Homogeneous(d));
    }

    #[test]
    fn pairing_is_frobenius(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), d in (0u32..4, 0u32..4, 0u32..4)) {
        let ring = plain_ring();
        let (a, b, c) = (random_element(ring, s1, d.0), random_element(ring, s2, d.1), random_element(ring, s3, d.2));
        let lhs = ring.pair(&ring.nf(&(&a * &b)), &c).unwrap();
        let rhs = ring.pair(&a, &ring.nf(&(&b * &c))).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ring.pair(&a, &b).unwrap(), ring.pair(&b, &a).unwrap());
    }
}

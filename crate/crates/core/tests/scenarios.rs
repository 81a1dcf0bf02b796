//! Worked examples through the public API.

use qflag_core::equivariant::{product_ring, specialize_params};
use qflag_core::groebner::cache::{CacheStatus, GbCache};
use qflag_core::groebner::GbConfig;
use qflag_core::oracle::{gaussian_binomial, ProjectiveOracle};
use qflag_core::{buchberger, FlagType, Presentation, QuantumRing, ResidueMethod};

fn ring(dims: &[usize], eq: bool) -> std::sync::Arc<QuantumRing> {
    QuantumRing::new(&FlagType::new(dims).unwrap(), eq, &GbConfig::default()).unwrap()
}

#[test]
fn projective_line_relations() {
    let r = ring(&[1, 2], false);
    let gens: Vec<String> = r.gb().generators().iter().map(|g| g.to_string()).collect();
    assert_eq!(r.rank(), 2);
    assert!(gens.iter().any(|g| g.contains("q[1]")), "{gens:?}");
    let b = r.parse("c[1][1]").unwrap();
    assert_eq!(r.nf(&b.pow(2)), r.parse("q[1]").unwrap());
}

#[test]
fn projective_space_powers_follow_the_oracle() {
    for n in 2..=5 {
        let r = ring(&[1, n], false);
        let oracle = ProjectiveOracle::new(n);
        let p = r.parse("p[1]").unwrap();
        let q = r.parse("q[1]").unwrap();
        for e in 0..3 * n {
            let (a, b) = oracle.reduce(e);
            assert_eq!(r.nf(&p.pow(e as u32)), r.nf(&(&q.pow(a as u32) * &p.pow(b as u32))), "n={n} e={e}");
        }
    }
}

#[test]
fn grassmannian_rank_is_a_binomial() {
    for n in 2..=6 {
        for k in 1..n {
            let r = ring(&[k, n], false);
            let total: u64 = gaussian_binomial(n, k).iter().sum();
            assert_eq!(r.rank() as u64, total, "Gr({k},{n})");
        }
    }
}

#[test]
fn residue_routes_agree_on_equivariant_flags() {
    let r = ring(&[1, 2, 3], true);
    let a = r.parse("c[0][1]^2*c[1][1]").unwrap();
    let sym = r.compute_residue(ResidueMethod::Symbolic).unwrap();
    let specialized = r.compute_residue(ResidueMethod::Specialized { seed: 7 }).unwrap();
    assert_eq!(sym.values, specialized.values);
    assert_eq!(r.residue(&a).unwrap(), r.residue(&r.nf(&a)).unwrap());
}

#[test]
fn specializing_a_parameter_to_zero() {
    let r = ring(&[1, 2], true);
    let s = specialize_params(&r, &[("C[1]".into(), "0".into())], &[], &GbConfig::default()).unwrap();
    assert_eq!(s.rank(), 2);
    assert!(s.registry().index_of("C[1]").is_none());
}

#[test]
fn product_ranks_multiply() {
    let a = ring(&[1, 3], false);
    let b = ring(&[1, 2], false);
    assert_eq!(product_ring(&a, &b).unwrap().rank(), 6);
}

#[test]
fn cache_round_trip_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cache = GbCache::new(dir.path());
    let pres = Presentation::new(&FlagType::new(&[1, 2, 4]).unwrap(), true);
    let cfg = GbConfig::default();
    let (first, s1) = cache.get_or_compute(&pres, &cfg).unwrap();
    let (second, s2) = cache.get_or_compute(&pres, &cfg).unwrap();
    assert_eq!((s1, s2), (CacheStatus::Miss, CacheStatus::Hit));
    assert_eq!(first, second);
    assert_eq!(first, buchberger(&pres, &cfg).unwrap());

    let path = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let gens = json["generators"].as_array_mut().unwrap();
    let target = gens.iter_mut().find(|g| g["terms"].as_array().unwrap().len() > 1).unwrap();
    for (i, t) in target["terms"].as_array_mut().unwrap().iter_mut().enumerate() {
        t["coeff"] = serde_json::Value::String(format!("{}/1", 7 + i));
    }
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let (third, s3) = cache.get_or_compute(&pres, &cfg).unwrap();
    assert_eq!(s3, CacheStatus::Rejected);
    assert_eq!(third, first);
}

#[test]
fn resource_cap_is_reported() {
    let cfg = GbConfig { max_generators: 1, max_terms: 1_000_000 };
    let err = QuantumRing::new(&FlagType::new(&[1, 2, 3]).unwrap(), false, &cfg).unwrap_err();
    assert_eq!(err.code(), qflag_core::ErrorCode::ResourceCap);
}

//! Constructions on equivariant rings: parameter specialization (including
//! restriction to the maximal torus), tensor products, and the splitting of
//! the presentation when one quantum parameter vanishes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GbConfig, GroebnerBasis};
use crate::poly::{parse_with, Degree, OrderBlock, Polynomial, Var, VarKind, VarRegistry};
use crate::presentation::{induction_split, FlagType, Presentation};
use crate::ring::{Divisor, QuantumRing, RingParts};

/// Substitutes parameter variables of `ring`. `assignments` maps variable
/// names (or aliases such as `c1`, `q2`) to expressions over the target
/// registry, which is the source registry minus the assigned variables plus
/// `extra_vars`. Each value must be zero or homogeneous of the variable's
/// weight and free of Chern variables.
pub fn specialize_params(
    ring: &QuantumRing,
    assignments: &[(String, String)],
    extra_vars: &[Var],
    cfg: &GbConfig,
) -> Result<Arc<QuantumRing>> {
    let src = ring.registry();
    let mut assigned: BTreeMap<usize, &str> = BTreeMap::new();
    for (name, value) in assignments {
        let var = ring.parse(name)?;
        let idx = single_variable(&var).ok_or_else(|| Error::Specialization(format!("`{name}` is not a variable")))?;
        if src.is_chern(idx) {
            return Err(Error::Specialization(format!("`{name}` is a Chern class, not a parameter")));
        }
        if assigned.insert(idx, value).is_some() {
            return Err(Error::Specialization(format!("`{name}` is assigned twice")));
        }
    }

    let mut vars: Vec<Var> =
        src.vars().iter().enumerate().filter(|(i, _)| !assigned.contains_key(i)).map(|(_, v)| v.clone()).collect();
    for v in extra_vars {
        if v.kind.order_block() == OrderBlock::Chern {
            return Err(Error::Specialization(format!("new variable {} must be a parameter", v.name)));
        }
        vars.push(v.clone());
    }
    vars.sort_by_key(|v| v.kind.order_block());
    let target = Arc::new(VarRegistry::new(vars).map_err(|e| Error::Specialization(e.to_string()))?);

    let resolve = |name: &str| -> Option<Polynomial> {
        let i = target.index_of(name).or_else(|| crate::ring::expand_alias(name).and_then(|c| target.index_of(&c)))?;
        Some(Polynomial::var(&target, i))
    };
    let mut images = Vec::with_capacity(src.len());
    for (i, v) in src.vars().iter().enumerate() {
        match assigned.get(&i) {
            Some(text) => {
                let value = parse_with(text, &target, &resolve)?;
                if !value.is_coefficient() {
                    return Err(Error::Specialization(format!("value of {} involves Chern classes", v.name)));
                }
                match value.weighted_degree() {
                    Degree::Zero => {}
                    Degree::Homogeneous(d) if d == v.weight => {}
                    _ => {
                        return Err(Error::Specialization(format!(
                            "value `{value}` of {} does not have weight {}",
                            v.name, v.weight
                        )))
                    }
                }
                images.push(value);
            }
            None => images.push(Polynomial::var(&target, target.index_of(&v.name).expect("kept variable"))),
        }
    }

    let relations: Vec<Polynomial> = ring.relations().iter().map(|r| r.substitute(&target, &images)).collect();
    let gb = groebner_basis(&target, &relations, cfg)?;
    let divisors = ring
        .divisors()
        .iter()
        .map(|d| Divisor { class: d.class.substitute(&target, &images), ..d.clone() })
        .collect();
    QuantumRing::from_parts(RingParts {
        registry: target,
        factors: ring.factors().to_vec(),
        relations,
        gb,
        complex_dim: ring.complex_dim(),
        divisors,
    })
}

fn single_variable(p: &Polynomial) -> Option<usize> {
    match p.terms() {
        [(m, c)] if num_traits::One::is_one(c) => {
            let vars: Vec<usize> = (0..m.len()).filter(|&i| m.exp(i) > 0).collect();
            (vars.len() == 1 && m.exp(vars[0]) == 1).then(|| vars[0])
        }
        _ => None,
    }
}

fn names_of(ring: &QuantumRing, pred: impl Fn(&VarKind) -> bool) -> Vec<String> {
    ring.registry().vars().iter().filter(|v| pred(&v.kind)).map(|v| v.name.clone()).collect()
}

/// All equivariant parameters set to zero.
pub fn forget_equivariance(ring: &QuantumRing, cfg: &GbConfig) -> Result<Arc<QuantumRing>> {
    let zero: Vec<(String, String)> =
        names_of(ring, |k| matches!(k, VarKind::Equivariant { .. })).into_iter().map(|n| (n, "0".into())).collect();
    specialize_params(ring, &zero, &[], cfg)
}

/// All quantum parameters set to zero.
pub fn classical_limit(ring: &QuantumRing, cfg: &GbConfig) -> Result<Arc<QuantumRing>> {
    let zero: Vec<(String, String)> =
        names_of(ring, |k| matches!(k, VarKind::Quantum { .. })).into_iter().map(|n| (n, "0".into())).collect();
    specialize_params(ring, &zero, &[], cfg)
}

/// Elementary symmetric polynomials `e_1..e_k` of `vars`, as text.
fn elementary_symmetric(vars: &[String]) -> Vec<String> {
    let k = vars.len();
    let mut out = Vec::with_capacity(k);
    for m in 1..=k {
        let mut terms = Vec::new();
        let mut chosen = Vec::new();
        fn pick(start: usize, left: usize, vars: &[String], chosen: &mut Vec<usize>, terms: &mut Vec<String>) {
            if left == 0 {
                terms.push(chosen.iter().map(|&i| vars[i].as_str()).collect::<Vec<_>>().join("*"));
                return;
            }
            for i in start..=vars.len() - left {
                chosen.push(i);
                pick(i + 1, left - 1, vars, chosen, terms);
                chosen.pop();
            }
        }
        pick(0, m, vars, &mut chosen, &mut terms);
        out.push(terms.join(" + "));
    }
    out
}

/// Restriction to the maximal torus: `c_m -> e_m(t_1, ..., t_n)` with new
/// weight-one parameters `t_i`, separately in every tensor factor.
pub fn torus_restriction(ring: &QuantumRing, cfg: &GbConfig) -> Result<Arc<QuantumRing>> {
    let mut by_factor: BTreeMap<usize, Vec<(usize, String)>> = BTreeMap::new();
    for v in ring.registry().vars() {
        if let VarKind::Equivariant { index } = v.kind {
            by_factor.entry(v.factor).or_default().push((index, v.name.clone()));
        }
    }
    if by_factor.is_empty() {
        return Err(Error::Specialization("ring has no equivariant parameters".into()));
    }
    let mut extra = Vec::new();
    let mut assignments = Vec::new();
    for (factor, mut params) in by_factor {
        params.sort();
        let n = params.len();
        let torus: Vec<Var> = (1..=n).map(|i| Var::with_factor(VarKind::Torus { index: i }, 1, factor)).collect();
        let names: Vec<String> = torus.iter().map(|v| v.name.clone()).collect();
        for ((_, name), e) in params.into_iter().zip(elementary_symmetric(&names)) {
            assignments.push((name, e));
        }
        extra.extend(torus);
    }
    specialize_params(ring, &assignments, &extra, cfg)
}

/// Tensor product over `Q`. The variables of `b` are renamed into fresh
/// tensor factors (extra primes); the union of the two reduced bases is a
/// reduced basis because the variable sets are disjoint.
pub fn product_ring(a: &QuantumRing, b: &QuantumRing) -> Result<Arc<QuantumRing>> {
    Ok(product_with_embeddings(a, b)?.ring)
}

/// A tensor product with the variable embeddings of its two factors.
#[derive(Clone, Debug)]
pub struct ProductRing {
    pub ring: Arc<QuantumRing>,
    /// Index in the product registry of each variable of the left factor.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl ProductRing {
    pub fn embed_left(&self, p: &Polynomial) -> Polynomial {
        p.rename(self.ring.registry(), &self.left)
    }

    pub fn embed_right(&self, p: &Polynomial) -> Polynomial {
        p.rename(self.ring.registry(), &self.right)
    }
}

pub fn product_with_embeddings(a: &QuantumRing, b: &QuantumRing) -> Result<ProductRing> {
    let shift = a.registry().vars().iter().map(|v| v.factor + 1).max().unwrap_or(0);
    let b_vars: Vec<Var> =
        b.registry().vars().iter().map(|v| Var::with_factor(v.kind, v.weight, v.factor + shift)).collect();
    let mut tagged: Vec<(OrderBlock, usize, usize, Var)> = Vec::new();
    for (i, v) in a.registry().vars().iter().enumerate() {
        tagged.push((v.kind.order_block(), 0, i, v.clone()));
    }
    for (i, v) in b_vars.into_iter().enumerate() {
        tagged.push((v.kind.order_block(), 1, i, v));
    }
    tagged.sort_by_key(|t| (t.0, t.1, t.2));
    let mut map = [vec![0; a.registry().len()], vec![0; b.registry().len()]];
    for (pos, (_, side, i, _)) in tagged.iter().enumerate() {
        map[*side][*i] = pos;
    }
    let reg = Arc::new(
        VarRegistry::new(tagged.into_iter().map(|t| t.3).collect()).map_err(|e| Error::Specialization(e.to_string()))?,
    );
    let (ma, mb) = (&map[0], &map[1]);
    let relations =
        a.relations().iter().map(|r| r.rename(&reg, ma)).chain(b.relations().iter().map(|r| r.rename(&reg, mb))).collect();
    let generators = a
        .gb()
        .generators()
        .iter()
        .map(|g| g.rename(&reg, ma))
        .chain(b.gb().generators().iter().map(|g| g.rename(&reg, mb)))
        .collect();
    let divisors = a
        .divisors()
        .iter()
        .map(|d| Divisor { class: d.class.rename(&reg, ma), ..d.clone() })
        .chain(b.divisors().iter().map(|d| Divisor {
            name: format!("{}{}", d.name, "'".repeat(shift)),
            factor: d.factor + shift,
            index: d.index,
            class: d.class.rename(&reg, mb),
        }))
        .collect();
    let ring = QuantumRing::from_parts(RingParts {
        registry: reg.clone(),
        factors: a.factors().iter().chain(b.factors()).cloned().collect(),
        relations,
        gb: GroebnerBasis::from_reduced(&reg, generators),
        complex_dim: a.complex_dim() + b.complex_dim(),
        divisors,
    })?;
    let [left, right] = map;
    Ok(ProductRing { ring, left, right })
}

/// Outcome of setting `q_j = 0` in the equivariant ring of a flag type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionReport {
    pub dims: Vec<usize>,
    pub j: usize,
    /// Flag type of blocks `0..j` inside `C^{s_{j-1}}`.
    pub base_dims: Vec<usize>,
    /// Flag type of blocks `j..=l` inside `C^{n - s_{j-1}}`.
    pub fiber_dims: Vec<usize>,
    pub base: String,
    pub fiber: String,
    pub restricted: String,
    /// `P|_{q_j=0} = base * fiber`.
    pub split_holds: bool,
    /// Relations at `q_j = 0` are the coefficients of `base * fiber` minus
    /// the equivariant parameters.
    pub relations_match: bool,
    pub relations_at_zero: Vec<String>,
    /// `rank X = rank Gr(s_{j-1}, n) * rank base * rank fiber`.
    pub rank_factorizes: bool,
    /// Rank of the ring with `q_j = 0`, when it was computed.
    pub specialized_rank: Option<usize>,
    pub holds: bool,
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Sets `q_j = 0` in the equivariant presentation of `f` and checks that
/// the relation ideal splits into base and fiber presentations. With
/// `cfg`, the specialized ring is also built and its rank compared.
pub fn induction_check(f: &FlagType, j: usize, cfg: Option<&GbConfig>) -> Result<InductionReport> {
    let pres = Presentation::new(f, true);
    let reg = &pres.registry;
    let split = induction_split(f, reg, j)?;
    let n = f.n();
    let qj = reg.index_of_kind(VarKind::Quantum { index: j }, 0).expect("quantum variable");
    let images: Vec<Polynomial> =
        (0..reg.len()).map(|i| if i == qj { Polynomial::zero(reg) } else { Polynomial::var(reg, i) }).collect();
    let at_zero: Vec<Polynomial> = pres.relations.iter().map(|r| r.substitute(reg, &images)).collect();
    let product = split.base.mul(&split.fiber);
    let relations_match = (1..=n).all(|m| {
        let c = reg.index_of_kind(VarKind::Equivariant { index: m }, 0).expect("equivariant variable");
        at_zero[m - 1] == &product.coeff(n - m) - &Polynomial::var(reg, c)
    });

    let base_flag = FlagType::from_blocks(&f.blocks()[..j])?;
    let fiber_flag = FlagType::from_blocks(&f.blocks()[j..])?;
    let split_dim = f.dims()[j - 1];
    let rank_factorizes = BigUint::from(f.rank())
        == binomial(n, split_dim) * BigUint::from(base_flag.rank()) * BigUint::from(fiber_flag.rank());

    let specialized_rank = match cfg {
        Some(cfg) => {
            let ring = QuantumRing::new(f, true, cfg)?;
            let name = reg.var(qj).name.clone();
            Some(specialize_params(&ring, &[(name, "0".into())], &[], cfg)?.rank())
        }
        None => None,
    };
    let rank_ok = specialized_rank.is_none_or(|r| r as u64 == f.rank());
    Ok(InductionReport {
        dims: f.dims().to_vec(),
        j,
        base_dims: base_flag.dims().to_vec(),
        fiber_dims: fiber_flag.dims().to_vec(),
        base: split.base.to_string(),
        fiber: split.fiber.to_string(),
        restricted: split.restricted.to_string(),
        split_holds: split.holds,
        relations_match,
        relations_at_zero: at_zero.iter().map(|p| p.to_string()).collect(),
        rank_factorizes,
        specialized_rank,
        holds: split.holds && relations_match && rank_factorizes && rank_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn ring(dims: &[usize], eq: bool) -> Arc<QuantumRing> {
        QuantumRing::new(&FlagType::new(dims).unwrap(), eq, &GbConfig::default()).unwrap()
    }

    fn texts(r: &QuantumRing) -> Vec<String> {
        r.relations().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn forgetting_parameters_gives_nonequivariant_relations() {
        let cfg = GbConfig::default();
        let r = forget_equivariance(&ring(&[1, 2], true), &cfg).unwrap();
        assert_eq!(texts(&r), ["c[0][1] + c[1][1]", "c[0][1]*c[1][1] + q[1]"]);
        assert_eq!(r.registry(), ring(&[1, 2], false).registry());
    }

    #[test]
    fn classical_equivariant_relations() {
        let r = classical_limit(&ring(&[1, 2], true), &GbConfig::default()).unwrap();
        assert_eq!(texts(&r), ["c[0][1] + c[1][1] - C[1]", "c[0][1]*c[1][1] - C[2]"]);
    }

    #[test]
    fn weight_violations_are_rejected() {
        let r = ring(&[1, 2], true);
        let cfg = GbConfig::default();
        let bad = specialize_params(&r, &[("c1".into(), "C[2]".into())], &[], &cfg);
        assert!(matches!(bad, Err(Error::Specialization(_))));
        let chern = specialize_params(&r, &[("c[0][1]".into(), "0".into())], &[], &cfg);
        assert!(matches!(chern, Err(Error::Specialization(_))));
        let ok = specialize_params(&r, &[("c2".into(), "3*q1".into())], &[], &cfg).unwrap();
        assert_eq!(texts(&ok)[1], "c[0][1]*c[1][1] - 2*q[1]");
    }

    #[test]
    fn torus_restriction_is_symmetric() {
        let r = torus_restriction(&ring(&[1, 3], true), &GbConfig::default()).unwrap();
        let reg = r.registry().clone();
        let t: Vec<usize> = (1..=3).map(|i| reg.index_of(&format!("t[{i}]")).unwrap()).collect();
        let mut perm: Vec<usize> = (0..reg.len()).collect();
        perm.swap(t[0], t[2]);
        for rel in r.relations() {
            assert_eq!(&rel.rename(&reg, &perm), rel);
        }
    }

    #[test]
    fn product_of_projective_lines() {
        let p1 = ring(&[1, 2], false);
        let r = product_ring(&p1, &p1).unwrap();
        assert_eq!(r.rank(), 4);
        let b = r.parse("c[1][1]").unwrap();
        let b2 = r.parse("c[1][1]'").unwrap();
        let x = r.element(&b).unwrap().quantum_product(&r.element(&b2).unwrap()).unwrap();
        assert_eq!(x.payload(), &(&b * &b2));
        assert_eq!(r.parse("p[1]'").unwrap(), b2);
        let one = r.parse("1").unwrap();
        assert_eq!(r.pair(&(&b * &b2), &one).unwrap(), one);
        assert_eq!(r.pair(&b, &b2).unwrap(), one);
        assert!(r.pair(&b, &b).unwrap().is_zero());
    }

    #[test]
    fn product_with_point() {
        let x = ring(&[1, 3], false);
        let r = product_ring(&x, &ring(&[2], false)).unwrap();
        assert_eq!(r.rank(), x.rank());
        let p = r.parse("p[1]").unwrap();
        assert_eq!(r.pair(&p, &p).unwrap(), r.parse("1").unwrap());
    }

    #[test]
    fn induction_examples() {
        let rep = induction_check(&FlagType::new(&[1, 2, 3]).unwrap(), 1, Some(&GbConfig::default())).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.base, "x + c[0][1]");
        assert_eq!(rep.base_dims, [1]);
        assert_eq!(rep.fiber_dims, [1, 2]);
        assert_eq!(rep.specialized_rank, Some(6));
        let rep = induction_check(&FlagType::new(&[2, 4]).unwrap(), 1, None).unwrap();
        assert!(rep.holds);
        assert!(induction_check(&FlagType::new(&[1, 2]).unwrap(), 2, None).is_err());
    }

    #[test]
    fn equivariant_pairing_at_zero_matches() {
        let cfg = GbConfig::default();
        for dims in [&[1, 2][..], &[1, 3], &[2, 4]] {
            let eq = forget_equivariance(&ring(dims, true), &cfg).unwrap();
            let plain = ring(dims, false);
            assert_eq!(eq.pairing_table().unwrap(), plain.pairing_table().unwrap(), "{dims:?}");
        }
    }

    #[test]
    fn torus_restriction_commutes_with_products() {
        let cfg = GbConfig::default();
        let r = ring(&[1, 3], true);
        let t = torus_restriction(&r, &cfg).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let images = restriction_images(&r, &t);
        for _ in 0..10 {
            let a = r.random_homogeneous(&mut rng, 1);
            let b = r.random_homogeneous(&mut rng, 2);
            let ab = r.nf(&(&a * &b));
            let lhs = t.nf(&ab.substitute(t.registry(), &images));
            let rhs = t.nf(&(&a.substitute(t.registry(), &images) * &b.substitute(t.registry(), &images)));
            assert_eq!(lhs, rhs);
        }
    }

    fn restriction_images(src: &QuantumRing, dst: &QuantumRing) -> Vec<Polynomial> {
        let e = elementary_symmetric(&["t[1]".into(), "t[2]".into(), "t[3]".into()]);
        src.registry()
            .vars()
            .iter()
            .map(|v| match v.kind {
                VarKind::Equivariant { index } => dst.parse(&e[index - 1]).unwrap(),
                _ => dst.parse(&v.name).unwrap(),
            })
            .collect()
    }
}

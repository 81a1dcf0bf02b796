//! The quantum cohomology ring as a computational object: normal-form
//! arithmetic, multiplication matrices, the residue pairing and
//! Gromov–Witten numbers.

mod residue;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, std_basis, GbConfig, GroebnerBasis, StdBasis};
use crate::poly::{parse_with, same_registry, Coeff, Degree, Monomial, Polynomial, VarKind, VarRegistry};
use crate::presentation::{classical_relations, divisor_classes, flag_registry, FlagType, Presentation};

pub use residue::{PairingTable, ResidueFunctional, ResidueMethod};

/// A named divisor class `p_i` of one tensor factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Divisor {
    pub name: String,
    pub factor: usize,
    pub index: usize,
    pub class: Polynomial,
}

/// Everything needed to assemble a ring; the standard basis and residue
/// are derived.
#[derive(Clone, Debug)]
pub struct RingParts {
    pub registry: Arc<VarRegistry>,
    pub factors: Vec<FlagType>,
    pub relations: Vec<Polynomial>,
    pub gb: GroebnerBasis,
    pub complex_dim: u32,
    pub divisors: Vec<Divisor>,
}

pub struct QuantumRing {
    registry: Arc<VarRegistry>,
    factors: Vec<FlagType>,
    relations: Vec<Polynomial>,
    gb: GroebnerBasis,
    basis: StdBasis,
    complex_dim: u32,
    divisors: Vec<Divisor>,
    residue: OnceLock<ResidueFunctional>,
}

impl fmt::Debug for QuantumRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantumRing")
            .field("factors", &self.factors)
            .field("registry", &self.registry.to_string())
            .field("rank", &self.basis.len())
            .finish()
    }
}

pub(crate) fn flag_divisors(f: &FlagType, reg: &Arc<VarRegistry>) -> Vec<Divisor> {
    divisor_classes(f, reg)
        .into_iter()
        .enumerate()
        .map(|(i, class)| Divisor { name: format!("p[{}]", i + 1), factor: 0, index: i + 1, class })
        .collect()
}

impl QuantumRing {
    /// The (equivariant) quantum cohomology ring of `flag`.
    pub fn new(flag: &FlagType, equivariant: bool, cfg: &GbConfig) -> Result<Arc<Self>> {
        let pres = Presentation::new(flag, equivariant);
        let gb = buchberger(&pres, cfg)?;
        Self::from_presentation(&pres, gb)
    }

    /// Assembles the ring from a presentation and a Gröbner basis of its
    /// relations (e.g. one loaded from the cache).
    pub fn from_presentation(pres: &Presentation, gb: GroebnerBasis) -> Result<Arc<Self>> {
        Self::from_parts(RingParts {
            registry: pres.registry.clone(),
            factors: vec![pres.flag.clone()],
            relations: pres.relations.clone(),
            gb,
            complex_dim: pres.flag.complex_dim(),
            divisors: flag_divisors(&pres.flag, &pres.registry),
        })
    }

    /// The classical (equivariant) cohomology ring: relations are the
    /// coefficients of `prod P_i(x) - x^n` (minus `c_m` when equivariant),
    /// built directly from the Chern polynomials. The registry still holds
    /// the `q` variables, which act trivially.
    pub fn classical(flag: &FlagType, equivariant: bool, cfg: &GbConfig) -> Result<Arc<Self>> {
        let reg = flag_registry(flag, equivariant);
        let mut relations = classical_relations(flag, &reg);
        if equivariant {
            for (m, r) in relations.iter_mut().enumerate() {
                let c = reg.index_of_kind(VarKind::Equivariant { index: m + 1 }, 0).expect("equivariant variable");
                *r = &*r - &Polynomial::var(&reg, c);
            }
        }
        let gb = crate::groebner::groebner_basis(&reg, &relations, cfg)?;
        Self::from_parts(RingParts {
            registry: reg.clone(),
            factors: vec![flag.clone()],
            relations,
            gb,
            complex_dim: flag.complex_dim(),
            divisors: flag_divisors(flag, &reg),
        })
    }

    pub fn from_parts(parts: RingParts) -> Result<Arc<Self>> {
        let leads = parts.gb.parametric_leads();
        if let Some(lead) = leads.first() {
            return Err(Error::ParametricLeadingMonomial(lead.to_string()));
        }
        let basis = std_basis(&parts.gb)?;
        Ok(Arc::new(QuantumRing {
            registry: parts.registry,
            factors: parts.factors,
            relations: parts.relations,
            gb: parts.gb,
            basis,
            complex_dim: parts.complex_dim,
            divisors: parts.divisors,
            residue: OnceLock::new(),
        }))
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn factors(&self) -> &[FlagType] {
        &self.factors
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &StdBasis {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn complex_dim(&self) -> u32 {
        self.complex_dim
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    /// True when the registry carries parameters besides `q`.
    pub fn is_equivariant(&self) -> bool {
        !self.registry.block(crate::poly::OrderBlock::Parameter).is_empty()
    }

    /// Sum of all divisor classes, an ample class.
    pub fn ample_class(&self) -> Polynomial {
        self.divisors.iter().fold(Polynomial::zero(&self.registry), |acc, d| &acc + &d.class)
    }

    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        self.gb.reduce(p)
    }

    pub fn element(self: &Arc<Self>, p: &Polynomial) -> Result<RingElement> {
        if !same_registry(p.registry(), &self.registry) {
            return Err(Error::ContextMismatch);
        }
        Ok(RingElement { ring: self.clone(), payload: self.nf(p) })
    }

    /// Parses an expression over the ring's variables. Besides registry
    /// names, `p[i]` names a divisor class, and `c<m>`, `q<i>`, `p<i>`
    /// abbreviate `C[m]`, `q[i]`, `p[i]`.
    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        let reg = &self.registry;
        let resolve = |name: &str| -> Option<Polynomial> {
            if let Some(i) = reg.index_of(name) {
                return Some(Polynomial::var(reg, i));
            }
            if let Some(d) = self.divisors.iter().find(|d| d.name == name) {
                return Some(d.class.clone());
            }
            let canonical = expand_alias(name)?;
            if let Some(i) = reg.index_of(&canonical) {
                return Some(Polynomial::var(reg, i));
            }
            self.divisors.iter().find(|d| d.name == canonical).map(|d| d.class.clone())
        };
        Ok(parse_with(s, reg, &resolve)?)
    }

    pub fn parse_element(self: &Arc<Self>, s: &str) -> Result<RingElement> {
        let p = self.parse(s)?;
        self.element(&p)
    }

    /// Coordinates of `NF(p)` in the standard basis.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Polynomial> {
        self.basis.coordinates(&self.nf(p)).expect("normal forms expand in the standard basis")
    }

    /// Matrix of multiplication by `a`: column `β` holds `NF(a m_β)`.
    pub fn mult_matrix(&self, a: &Polynomial) -> MultMatrix {
        let n = self.basis.len();
        let mut entries = vec![vec![Polynomial::zero(&self.registry); n]; n];
        #[allow(clippy::needless_range_loop)]
        for beta in 0..n {
            let prod = a.mul_term(self.basis.monomial(beta), &Coeff::one());
            for (i, c) in self.coordinates(&prod).into_iter().enumerate() {
                entries[i][beta] = c;
            }
        }
        MultMatrix { entries }
    }

    /// Weighted-homogeneous random element of degree `degree`: standard
    /// monomials times parameter monomials, small integer coefficients.
    pub fn random_homogeneous<R: Rng + ?Sized>(&self, rng: &mut R, degree: u32) -> Polynomial {
        let coeff_vars: Vec<usize> = self.registry.coefficient_range().collect();
        let mut terms = Vec::new();
        for (i, m) in self.basis.monomials().iter().enumerate() {
            let d = self.basis.degree(i);
            if d > degree {
                continue;
            }
            for pm in monomials_of_degree(&self.registry, &coeff_vars, degree - d) {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    terms.push((m.mul(&pm), Coeff::from_integer(c.into())));
                }
            }
        }
        Polynomial::from_terms(&self.registry, terms)
    }

    /// `<a*b, c> = <a, b*c>` on random homogeneous triples.
    pub fn frobenius_check(&self, trials: usize, seed: u64) -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = self.complex_dim;
        for _ in 0..trials {
            let da = rng.gen_range(0..=top);
            let db = rng.gen_range(0..=top);
            let dc = rng.gen_range(0..=top);
            let a = self.random_homogeneous(&mut rng, da);
            let b = self.random_homogeneous(&mut rng, db);
            let c = self.random_homogeneous(&mut rng, dc);
            let left = self.pair(&self.nf(&(&a * &b)), &c)?;
            let right = self.pair(&a, &self.nf(&(&b * &c)))?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficient of `q^d` in `<a*b, c>`.
    pub fn gw_3point(&self, a: &Polynomial, b: &Polynomial, c: &Polynomial, d: &[u16]) -> Result<GwValue> {
        let qidx = self.registry.quantum_indices();
        if qidx.len() != d.len() {
            return Err(crate::poly::PolyError::Arity { expected: qidx.len(), found: d.len() }.into());
        }
        let mut codim = 0;
        for x in [a, b, c] {
            match x.weighted_degree() {
                Degree::Zero => return Ok(GwValue::zero(&self.registry, d)),
                Degree::Homogeneous(k) => codim += k,
                Degree::Inhomogeneous => return Err(Error::NotHomogeneous(x.to_string())),
            }
        }
        let q_degree: u32 = qidx.iter().zip(d).map(|(&i, &e)| self.registry.weight(i) * e as u32).sum();
        let needed = self.complex_dim + q_degree;
        if codim < needed || (codim > needed && !self.is_equivariant()) {
            return Ok(GwValue::zero(&self.registry, d));
        }
        let ab = self.nf(&(a * b));
        let value = self.pair(&ab, c)?.coeff_extract(d)?;
        Ok(GwValue { degree: d.to_vec(), value })
    }

    /// Coefficient of `q^d` in `Res(NF(prod classes))`, each class a linear
    /// combination of first Chern classes.
    pub fn divisor_count(&self, classes: &[Polynomial], d: &[u16]) -> Result<GwValue> {
        for class in classes {
            if !same_registry(class.registry(), &self.registry) {
                return Err(Error::ContextMismatch);
            }
            let linear = !class.is_zero()
                && class.terms().iter().all(|(m, _)| {
                    let vars: Vec<usize> = (0..m.len()).filter(|&i| m.exp(i) > 0).collect();
                    vars.len() == 1
                        && m.exp(vars[0]) == 1
                        && matches!(self.registry.var(vars[0]).kind, VarKind::Chern { index: 1, .. })
                });
            if !linear {
                return Err(Error::NotDivisor(class.to_string()));
            }
        }
        let mut product = Polynomial::one(&self.registry);
        for class in classes {
            product = self.nf(&(&product * class));
        }
        let value = self.residue(&product)?.coeff_extract(d)?;
        Ok(GwValue { degree: d.to_vec(), value })
    }
}

pub(crate) fn expand_alias(name: &str) -> Option<String> {
    let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let primes = digits.trim_start_matches(|c: char| c.is_ascii_digit());
    let number = &digits[..digits.len() - primes.len()];
    if number.is_empty() || !primes.chars().all(|c| c == '\'') {
        return None;
    }
    let base = match head {
        "c" => "C",
        "q" => "q",
        "p" => "p",
        "t" => "t",
        _ => return None,
    };
    Some(format!("{base}[{number}]{primes}"))
}

/// Monomials in `vars` of weighted degree exactly `d`.
pub(crate) fn monomials_of_degree(reg: &VarRegistry, vars: &[usize], d: u32) -> Vec<Monomial> {
    fn go(reg: &VarRegistry, vars: &[usize], d: u32, current: &mut Monomial, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            if d == 0 {
                out.push(current.clone());
            }
            return;
        };
        let w = reg.weight(v);
        let mut e = 0u16;
        while e as u32 * w <= d {
            current.set_exp(v, e);
            go(reg, rest, d - e as u32 * w, current, out);
            e += 1;
        }
        current.set_exp(v, 0);
    }
    let mut out = Vec::new();
    go(reg, vars, d, &mut Monomial::one(reg.len()), &mut out);
    out
}

/// Element of a [`QuantumRing`], stored as a normal form.
#[derive(Clone)]
pub struct RingElement {
    ring: Arc<QuantumRing>,
    payload: Polynomial,
}

impl RingElement {
    pub fn ring(&self) -> &Arc<QuantumRing> {
        &self.ring
    }

    pub fn payload(&self) -> &Polynomial {
        &self.payload
    }

    pub fn into_payload(self) -> Polynomial {
        self.payload
    }

    pub fn quantum_product(&self, other: &RingElement) -> Result<RingElement> {
        quantum_product(self, other)
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = self.ring.element(&Polynomial::one(&self.ring.registry)).expect("same ring");
        for _ in 0..e {
            acc = quantum_product(&acc, self).expect("same ring");
        }
        acc
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.payload == other.payload
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({})", self.payload)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.payload.fmt(f)
    }
}

/// `NF(a b)`; both factors must come from the same ring.
pub fn quantum_product(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    if !Arc::ptr_eq(&a.ring, &b.ring) {
        return Err(Error::ContextMismatch);
    }
    Ok(RingElement { ring: a.ring.clone(), payload: a.ring.nf(&(&a.payload * &b.payload)) })
}

/// Multiplication by a fixed element in the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MultMatrix {
    pub entries: Vec<Vec<Polynomial>>,
}

impl MultMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> Polynomial {
        let reg = self.entries[0][0].registry().clone();
        (0..self.dim()).fold(Polynomial::zero(&reg), |acc, i| &acc + &self.entries[i][i])
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, e)| if i == j { e.constant_value() == Some(Coeff::one()) } else { e.is_zero() })
        })
    }
}

/// A Gromov–Witten number: the coefficient of `q^degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GwValue {
    pub degree: Vec<u16>,
    /// Constant unless the ring is equivariant.
    pub value: Polynomial,
}

impl GwValue {
    fn zero(reg: &Arc<VarRegistry>, d: &[u16]) -> Self {
        GwValue { degree: d.to_vec(), value: Polynomial::zero(reg) }
    }

    pub fn rational(&self) -> Option<Coeff> {
        if self.value.is_zero() {
            return Some(Coeff::zero());
        }
        self.value.constant_value()
    }

    pub fn integer(&self) -> Option<BigInt> {
        self.rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ring(dims: &[usize], equivariant: bool) -> Arc<QuantumRing> {
        QuantumRing::new(&FlagType::new(dims).unwrap(), equivariant, &GbConfig::default()).unwrap()
    }

    fn el(r: &Arc<QuantumRing>, s: &str) -> RingElement {
        r.parse_element(s).unwrap()
    }

    #[test]
    fn gr24_products() {
        let r = ring(&[2, 4], false);
        let s2 = el(&r, "c[1][2]");
        let s11 = el(&r, "c[1][1]^2 - c[1][2]");
        assert_eq!(s2.quantum_product(&s11).unwrap(), el(&r, "q[1]"));
        let s1 = el(&r, "c[1][1]");
        let four = s1.pow(4);
        let q_part = four.payload().coeff_extract(&[1]).unwrap();
        assert_eq!(q_part, r.parse("2").unwrap());
    }

    #[test]
    fn projective_plane_cube() {
        let r = ring(&[1, 3], false);
        let p = el(&r, "p[1]");
        assert_eq!(p.pow(3), el(&r, "q[1]"));
        assert_eq!(r.parse("p[1]^3 - q[1]").unwrap(), r.parse("c[1][1]^3 - q1").unwrap());
    }

    #[test]
    fn parse_rejects_foreign_quantum_variable() {
        let r = ring(&[1, 2], false);
        assert!(matches!(r.parse("q[2]"), Err(Error::Parse(_))));
        assert_eq!(r.parse("c[0][1]").unwrap(), Polynomial::var(r.registry(), 0));
    }

    #[test]
    fn multiplication_matrix_of_one_is_identity() {
        for dims in [&[1, 2][..], &[2, 4], &[1, 2, 3]] {
            let r = ring(dims, false);
            let m = r.mult_matrix(&Polynomial::one(r.registry()));
            assert!(m.is_identity());
            assert_eq!(m.trace().constant_value(), Some(Coeff::from_integer((r.rank() as i64).into())));
        }
    }

    #[test]
    fn context_mismatch() {
        let a = ring(&[1, 2], false);
        let b = ring(&[1, 2], false);
        let x = el(&a, "p[1]");
        let y = el(&b, "p[1]");
        assert!(matches!(quantum_product(&x, &y), Err(Error::ContextMismatch)));
    }

    #[test]
    fn projective_plane_counts() {
        let r = ring(&[1, 3], false);
        let p = r.parse("p[1]").unwrap();
        let pt = r.parse("p[1]^2").unwrap();
        assert_eq!(r.gw_3point(&pt, &pt, &p, &[1]).unwrap().integer(), Some(1.into()));
        assert_eq!(r.divisor_count(&vec![p.clone(); 5], &[1]).unwrap().integer(), Some(1.into()));
        assert_eq!(r.divisor_count(&vec![p.clone(); 8], &[2]).unwrap().integer(), Some(1.into()));
        assert_eq!(r.divisor_count(std::slice::from_ref(&p), &[0]).unwrap().integer(), Some(0.into()));
        assert!(matches!(r.divisor_count(&[pt], &[0]), Err(Error::NotDivisor(_))));
    }

    #[test]
    fn grading_mismatch_gives_zero() {
        let r = ring(&[2, 4], false);
        let s1 = r.parse("c[1][1]").unwrap();
        assert!(r.gw_3point(&s1, &s1, &s1, &[1]).unwrap().value.is_zero());
        let s2 = r.parse("c[1][2]").unwrap();
        let s11 = r.parse("c[1][1]^2 - c[1][2]").unwrap();
        let point = r.parse("c[1][2]^2").unwrap();
        let one = Polynomial::one(r.registry());
        assert_eq!(r.gw_3point(&s2, &s11, &point, &[1]).unwrap().integer(), Some(1.into()));
        assert!(r.gw_3point(&s2, &s11, &one, &[1]).unwrap().value.is_zero());
        assert_eq!(r.gw_3point(&point, &one, &one, &[0]).unwrap().integer(), Some(1.into()));
    }

    #[test]
    fn frobenius_small_rings() {
        for dims in [&[1, 2][..], &[1, 3], &[2, 4], &[1, 2, 3]] {
            assert!(ring(dims, false).frobenius_check(20, 7).unwrap(), "{dims:?}");
        }
        assert!(ring(&[1, 2], true).frobenius_check(20, 7).unwrap());
    }

    #[test]
    fn aliases() {
        assert_eq!(expand_alias("c1").as_deref(), Some("C[1]"));
        assert_eq!(expand_alias("q12''").as_deref(), Some("q[12]''"));
        assert_eq!(expand_alias("x1"), None);
        assert_eq!(expand_alias("c"), None);
    }
}

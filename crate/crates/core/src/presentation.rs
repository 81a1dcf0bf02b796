//! Flag types and the continued-fraction presentation of their quantum
//! cohomology rings.
//!
//! For `F_{s_0,...,s_l}` with block sizes `k_i`, the Chern polynomials
//! `P_i(x) = x^{k_i} + c_1^{(i)} x^{k_i-1} + ... + c_{k_i}^{(i)}` are combined
//! into the continuant
//!
//! ```text
//! A_l = P_l,  B_l = 1
//! A_i = P_i A_{i+1} + (-1)^{k_i+1} q_{i+1} B_{i+1},  B_i = A_{i+1}
//! ```
//!
//! and the relations are the coefficients `Σ_m` of `x^{n-m}` in `A_0`
//! (shifted to `Σ_m - c_m` in the equivariant ring).

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial, UPoly, Var, VarKind, VarRegistry};

/// Dimension sequence `0 < s_0 < ... < s_l = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlagType {
    dims: Vec<usize>,
    blocks: Vec<usize>,
}

impl FlagType {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidFlag("at least one dimension is required".into()));
        }
        if dims[0] == 0 {
            return Err(Error::InvalidFlag("dimensions must be positive".into()));
        }
        if let Some(w) = dims.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFlag(format!("dimensions must increase strictly, got {} then {}", w[0], w[1])));
        }
        let blocks = std::iter::once(dims[0]).chain(dims.windows(2).map(|w| w[1] - w[0])).collect();
        Ok(FlagType { dims: dims.to_vec(), blocks })
    }

    /// Builds the flag type with the given block sizes `k_0, ..., k_l`.
    pub fn from_blocks(blocks: &[usize]) -> Result<Self> {
        if blocks.contains(&0) {
            return Err(Error::InvalidFlag("block sizes must be positive".into()));
        }
        let dims: Vec<usize> = blocks
            .iter()
            .scan(0, |acc, k| {
                *acc += k;
                Some(*acc)
            })
            .collect();
        Self::new(&dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        *self.dims.last().expect("nonempty")
    }

    /// Number of quantum parameters.
    pub fn l(&self) -> usize {
        self.dims.len() - 1
    }

    /// Complex dimension `Σ_{i<j} k_i k_j`.
    pub fn complex_dim(&self) -> u32 {
        let mut d = 0;
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                d += self.blocks[i] * self.blocks[j];
            }
        }
        d as u32
    }

    /// Total Betti number `n! / ∏ k_i!`.
    pub fn rank(&self) -> u64 {
        // product of binomials C(s_i, k_i) keeps intermediates small
        self.dims
            .iter()
            .zip(&self.blocks)
            .map(|(&s, &k)| (0..k as u64).fold(1u64, |acc, i| acc * (s as u64 - i) / (i + 1)))
            .product()
    }

    /// Complex weight `k_{i-1} + k_i` of `q_i`, for `1 <= i <= l`.
    pub fn quantum_weight(&self, i: usize) -> u32 {
        (self.blocks[i - 1] + self.blocks[i]) as u32
    }

    /// Every flag type of `C^n`, i.e. every composition of `n`.
    pub fn all_with_n(n: usize) -> Vec<FlagType> {
        fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<FlagType>) {
            if rest == 0 {
                out.push(FlagType::from_blocks(prefix).expect("valid composition"));
                return;
            }
            for k in 1..=rest {
                prefix.push(k);
                rec(rest - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Every flag type with `1 <= n <= max_n`.
    pub fn all_up_to(max_n: usize) -> Vec<FlagType> {
        (1..=max_n).flat_map(FlagType::all_with_n).collect()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.dims.len() == 2
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "F_{{{}}}", dims.join(","))
    }
}

pub fn make_flag(dims: &[usize]) -> Result<FlagType> {
    FlagType::new(dims)
}

/// Variable table of a flag manifold: Chern classes of every block, then
/// `q_1..q_l`, then (equivariant only) `c_1..c_n`.
pub fn flag_registry(f: &FlagType, equivariant: bool) -> Arc<VarRegistry> {
    flag_registry_with_factor(f, equivariant, 0)
}

pub(crate) fn flag_vars(f: &FlagType, equivariant: bool, factor: usize) -> [Vec<Var>; 3] {
    let mut chern = Vec::new();
    for (block, &k) in f.blocks().iter().enumerate() {
        for index in 1..=k {
            chern.push(Var::with_factor(VarKind::Chern { block, index }, index as u32, factor));
        }
    }
    let quantum = (1..=f.l()).map(|i| Var::with_factor(VarKind::Quantum { index: i }, f.quantum_weight(i), factor)).collect();
    let params = if equivariant {
        (1..=f.n()).map(|m| Var::with_factor(VarKind::Equivariant { index: m }, m as u32, factor)).collect()
    } else {
        Vec::new()
    };
    [chern, quantum, params]
}

pub(crate) fn flag_registry_with_factor(f: &FlagType, equivariant: bool, factor: usize) -> Arc<VarRegistry> {
    let vars = flag_vars(f, equivariant, factor).concat();
    Arc::new(VarRegistry::new(vars).expect("flag registry is well formed"))
}

fn chern_var(reg: &Arc<VarRegistry>, block: usize, index: usize) -> Polynomial {
    let i = reg.index_of_kind(VarKind::Chern { block, index }, 0).expect("chern variable present");
    Polynomial::var(reg, i)
}

fn quantum_var(reg: &Arc<VarRegistry>, index: usize) -> Polynomial {
    let i = reg.index_of_kind(VarKind::Quantum { index }, 0).expect("quantum variable present");
    Polynomial::var(reg, i)
}

/// `P_i(x)` for every block, over `reg` (which must contain the flag's
/// Chern variables).
pub fn chern_polys(f: &FlagType, reg: &Arc<VarRegistry>) -> Vec<UPoly> {
    f.blocks()
        .iter()
        .enumerate()
        .map(|(block, &k)| {
            let mut coeffs = vec![Polynomial::zero(reg); k + 1];
            coeffs[k] = Polynomial::one(reg);
            for j in 1..=k {
                coeffs[k - j] = chern_var(reg, block, j);
            }
            UPoly::from_coeffs(reg, coeffs)
        })
        .collect()
}

/// Numerator and denominator of the continued fraction restricted to blocks
/// `first..=last`, using the flag's own `q` variables between them.
pub fn continuant_range(f: &FlagType, reg: &Arc<VarRegistry>, first: usize, last: usize) -> (UPoly, UPoly) {
    assert!(first <= last && last <= f.l(), "block range out of bounds");
    let polys = chern_polys(f, reg);
    let mut num = polys[last].clone();
    let mut den = UPoly::constant(Polynomial::one(reg));
    for i in (first..last).rev() {
        let sign = if f.blocks()[i] % 2 == 1 { 1 } else { -1 };
        let q = quantum_var(reg, i + 1).scale(&Coeff::from_integer(sign.into()));
        let next = polys[i].mul(&num).add(&den.scale(&q));
        den = num;
        num = next;
    }
    (num, den)
}

/// `(P, Q)` with `P/Q` the full continued fraction.
pub fn continuant(f: &FlagType, reg: &Arc<VarRegistry>) -> (UPoly, UPoly) {
    continuant_range(f, reg, 0, f.l())
}

/// Coefficients of `x^{n-1}, ..., x^0` in `prod P_i - x^n`: the relations of
/// the classical cohomology ring.
pub fn classical_relations(f: &FlagType, reg: &Arc<VarRegistry>) -> Vec<Polynomial> {
    let product = chern_polys(f, reg).iter().fold(UPoly::constant(Polynomial::one(reg)), |acc, p| acc.mul(p));
    let n = f.n();
    (1..=n).map(|m| product.coeff(n - m)).collect()
}

/// `p_i = c_1^{(i)} + ... + c_1^{(l)}` for `i = 1..=l`.
pub fn divisor_classes(f: &FlagType, reg: &Arc<VarRegistry>) -> Vec<Polynomial> {
    (1..=f.l())
        .map(|i| (i..=f.l()).fold(Polynomial::zero(reg), |acc, b| &acc + &chern_var(reg, b, 1)))
        .collect()
}

/// The relation presentation of the (equivariant) quantum cohomology ring.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub flag: FlagType,
    pub registry: Arc<VarRegistry>,
    pub chern_polys: Vec<UPoly>,
    pub numerator: UPoly,
    pub denominator: UPoly,
    /// `Σ_1..Σ_n`, or `Σ_m - c_m` when `equivariant`.
    pub relations: Vec<Polynomial>,
    pub equivariant: bool,
}

impl Presentation {
    pub fn new(flag: &FlagType, equivariant: bool) -> Self {
        let reg = flag_registry(flag, equivariant);
        let chern_polys = chern_polys(flag, &reg);
        let (numerator, denominator) = continuant(flag, &reg);
        let n = flag.n();
        let relations = (1..=n)
            .map(|m| {
                let sigma = numerator.coeff(n - m);
                if equivariant {
                    let c = reg.index_of_kind(VarKind::Equivariant { index: m }, 0).expect("equivariant variable");
                    &sigma - &Polynomial::var(&reg, c)
                } else {
                    sigma
                }
            })
            .collect();
        Presentation {
            flag: flag.clone(),
            registry: reg,
            chern_polys,
            numerator,
            denominator,
            relations,
            equivariant,
        }
    }

    /// `Σ_m` itself, without the equivariant shift.
    pub fn sigma(&self, m: usize) -> Polynomial {
        self.numerator.coeff(self.flag.n() - m)
    }

    pub fn divisor_classes(&self) -> Vec<Polynomial> {
        divisor_classes(&self.flag, &self.registry)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            dims: self.flag.dims().to_vec(),
            blocks: self.flag.blocks().to_vec(),
            n: self.flag.n(),
            complex_dim: self.flag.complex_dim(),
            equivariant: self.equivariant,
            vars: self.registry.vars().to_vec(),
            chern_polys: self.chern_polys.iter().map(|p| p.to_string()).collect(),
            numerator: self.numerator.to_string(),
            denominator: self.denominator.to_string(),
            relations: self.relations.iter().map(|p| p.to_string()).collect(),
        }
    }
}

pub fn relations(f: &FlagType, equivariant: bool) -> Presentation {
    Presentation::new(f, equivariant)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationJson {
    pub dims: Vec<usize>,
    pub blocks: Vec<usize>,
    pub n: usize,
    pub complex_dim: u32,
    pub equivariant: bool,
    pub vars: Vec<Var>,
    pub chern_polys: Vec<String>,
    pub numerator: String,
    pub denominator: String,
    pub relations: Vec<String>,
}

/// The factorization of the continuant when `q_j` is set to zero.
#[derive(Clone, Debug)]
pub struct InductionSplit {
    pub j: usize,
    /// `P` with `q_j = 0`.
    pub restricted: UPoly,
    /// Continuant of blocks `0..j`.
    pub base: UPoly,
    /// Continuant of blocks `j..=l`.
    pub fiber: UPoly,
    pub holds: bool,
}

/// Sets `q_j = 0` in `P` and compares with the product of the continuants
/// of the blocks before and after position `j`.
pub fn induction_split(f: &FlagType, reg: &Arc<VarRegistry>, j: usize) -> Result<InductionSplit> {
    if j == 0 || j > f.l() {
        return Err(Error::InvalidFlag(format!("q index {j} out of range 1..={}", f.l())));
    }
    let (p, _) = continuant(f, reg);
    let qj = reg.index_of_kind(VarKind::Quantum { index: j }, 0).expect("quantum variable");
    let images: Vec<Polynomial> = (0..reg.len())
        .map(|i| if i == qj { Polynomial::zero(reg) } else { Polynomial::var(reg, i) })
        .collect();
    let restricted = p.substitute(reg, &images);
    let (base, _) = continuant_range(f, reg, 0, j - 1);
    let (fiber, _) = continuant_range(f, reg, j, f.l());
    let holds = restricted == base.mul(&fiber);
    Ok(InductionSplit { j, restricted, base, fiber, holds })
}

pub fn induction_split_check(f: &FlagType, j: usize) -> Result<bool> {
    Ok(induction_split(f, &flag_registry(f, false), j)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn parse(reg: &Arc<VarRegistry>, s: &str) -> Polynomial {
        parse_polynomial(s, reg).unwrap()
    }

    #[test]
    fn make_flag_derives_blocks() {
        let f = FlagType::new(&[1, 2]).unwrap();
        assert_eq!(f.blocks(), &[1, 1]);
        assert_eq!(f.n(), 2);
        let g = FlagType::new(&[2, 4]).unwrap();
        assert_eq!(g.blocks(), &[2, 2]);
        assert_eq!(g.n(), 4);
        assert!(FlagType::new(&[2, 1]).is_err());
        assert!(FlagType::new(&[0, 1]).is_err());
        assert!(FlagType::new(&[]).is_err());
        assert!(FlagType::new(&[2, 2]).is_err());
    }

    #[test]
    fn dims_and_ranks() {
        let f = FlagType::new(&[1, 2, 3]).unwrap();
        assert_eq!(f.complex_dim(), 3);
        assert_eq!(f.rank(), 6);
        let g = FlagType::new(&[2, 4]).unwrap();
        assert_eq!(g.complex_dim(), 4);
        assert_eq!(g.rank(), 6);
        assert_eq!(g.quantum_weight(1), 4);
        assert_eq!(FlagType::new(&[1, 2, 3, 4, 5]).unwrap().rank(), 120);
        assert_eq!(FlagType::all_with_n(4).len(), 8);
        assert_eq!(FlagType::all_up_to(3).len(), 7);
    }

    #[test]
    fn chern_polynomials_of_small_flags() {
        let f = FlagType::new(&[1, 2]).unwrap();
        let reg = flag_registry(&f, false);
        let polys = chern_polys(&f, &reg);
        assert_eq!(polys[0].to_string(), "x + c[0][1]");
        assert_eq!(polys[1].to_string(), "x + c[1][1]");
        let g = FlagType::new(&[2, 4]).unwrap();
        let reg = flag_registry(&g, false);
        let polys = chern_polys(&g, &reg);
        assert_eq!(polys[0].to_string(), "x^2 + c[0][1]*x + c[0][2]");
        let pt = FlagType::new(&[3]).unwrap();
        let reg = flag_registry(&pt, false);
        assert_eq!(chern_polys(&pt, &reg)[0].degree(), Some(3));
        assert_eq!(reg.quantum_indices().len(), 0);
    }

    #[test]
    fn continuant_of_projective_line() {
        let f = FlagType::new(&[1, 2]).unwrap();
        let pres = Presentation::new(&f, false);
        let r = &pres.registry;
        assert_eq!(pres.relations[0], parse(r, "c[0][1] + c[1][1]"));
        assert_eq!(pres.relations[1], parse(r, "c[0][1]*c[1][1] + q[1]"));
        assert_eq!(pres.denominator.to_string(), "x + c[1][1]");
    }

    #[test]
    fn continuant_of_gr24_has_negative_q() {
        let f = FlagType::new(&[2, 4]).unwrap();
        let pres = Presentation::new(&f, false);
        assert_eq!(pres.relations[3], parse(&pres.registry, "c[0][2]*c[1][2] - q[1]"));
    }

    #[test]
    fn complete_flags_give_toda_integrals() {
        let f = FlagType::new(&[1, 2, 3]).unwrap();
        let pres = Presentation::new(&f, false);
        let r = &pres.registry;
        let (a, b, c) = ("c[0][1]", "c[1][1]", "c[2][1]");
        assert_eq!(pres.relations[0], parse(r, &format!("{a} + {b} + {c}")));
        assert_eq!(pres.relations[1], parse(r, &format!("{a}*{b} + {a}*{c} + {b}*{c} + q[1] + q[2]")));
        assert_eq!(pres.relations[2], parse(r, &format!("{a}*{b}*{c} + {a}*q[2] + {c}*q[1]")));
    }

    #[test]
    fn equivariant_shift() {
        let f = FlagType::new(&[1, 2]).unwrap();
        let pres = Presentation::new(&f, true);
        let r = &pres.registry;
        assert_eq!(pres.relations[0], parse(r, "c[0][1] + c[1][1] - C[1]"));
        assert_eq!(pres.relations[1], parse(r, "c[0][1]*c[1][1] + q[1] - C[2]"));
    }

    #[test]
    fn divisor_classes_follow_quotient_bundles() {
        let f = FlagType::new(&[1, 2, 3]).unwrap();
        let reg = flag_registry(&f, false);
        let p = divisor_classes(&f, &reg);
        assert_eq!(p[0], parse(&reg, "c[1][1] + c[2][1]"));
        assert_eq!(p[1], parse(&reg, "c[2][1]"));
        let pt = FlagType::new(&[2]).unwrap();
        assert!(divisor_classes(&pt, &flag_registry(&pt, false)).is_empty());
    }

    #[test]
    fn induction_split_examples() {
        let f = FlagType::new(&[1, 2, 3]).unwrap();
        let reg = flag_registry(&f, false);
        let s1 = induction_split(&f, &reg, 1).unwrap();
        assert!(s1.holds);
        assert_eq!(s1.base.to_string(), "x + c[0][1]");
        assert!(induction_split_check(&f, 2).unwrap());
        assert!(induction_split_check(&FlagType::new(&[1, 2]).unwrap(), 1).unwrap());
        assert!(induction_split_check(&f, 3).is_err());
        assert!(induction_split_check(&f, 0).is_err());
    }

    #[test]
    fn numerator_and_denominator_degrees() {
        for f in FlagType::all_up_to(5) {
            let pres = Presentation::new(&f, false);
            assert_eq!(pres.numerator.degree(), Some(f.n()));
            assert!(pres.numerator.is_monic());
            assert_eq!(pres.denominator.degree(), Some(f.n() - f.dims()[0]));
        }
    }
}

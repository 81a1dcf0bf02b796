use std::cmp::Ordering;

use smallvec::SmallVec;

use super::{OrderBlock, VarRegistry};

pub type Exponents = SmallVec<[u16; 12]>;

/// Exponent vector over a [`VarRegistry`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.0[i] = e;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn weighted_degree(&self, reg: &VarRegistry) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| e as u32 * reg.weight(i)).sum()
    }

    /// Weighted degree restricted to the variables of one order block.
    pub fn block_degree(&self, reg: &VarRegistry, block: OrderBlock) -> u32 {
        reg.block(block).map(|i| self.0[i] as u32 * reg.weight(i)).sum()
    }

    /// True when only variables outside the Chern block occur.
    pub fn is_coefficient(&self, reg: &VarRegistry) -> bool {
        reg.chern_range().all(|i| self.0[i] == 0)
    }

    /// True when only Chern variables occur.
    pub fn is_chern_pure(&self, reg: &VarRegistry) -> bool {
        reg.coefficient_range().all(|i| self.0[i] == 0)
    }

    /// Splits into (Chern part, coefficient part).
    pub fn split(&self, reg: &VarRegistry) -> (Monomial, Monomial) {
        let mut chern = self.clone();
        let mut rest = self.clone();
        for i in 0..self.len() {
            if reg.is_chern(i) {
                rest.0[i] = 0;
            } else {
                chern.0[i] = 0;
            }
        }
        (chern, rest)
    }
}

/// Block order: Chern block, then quantum block, then parameter block; inside
/// each block the weighted degree decides first, ties are broken reverse
/// lexicographically (smaller exponent in the last variable wins).
pub fn cmp_monomials(reg: &VarRegistry, a: &Monomial, b: &Monomial) -> Ordering {
    for block in OrderBlock::ALL {
        let range = reg.block(block);
        if range.is_empty() {
            continue;
        }
        let da = a.block_degree(reg, block);
        let db = b.block_degree(reg, block);
        if da != db {
            return da.cmp(&db);
        }
        for i in range.rev() {
            if a.0[i] != b.0[i] {
                return b.0[i].cmp(&a.0[i]);
            }
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Var, VarKind};

    fn reg() -> VarRegistry {
        VarRegistry::new(vec![
            Var::new(VarKind::Chern { block: 0, index: 1 }, 1),
            Var::new(VarKind::Chern { block: 1, index: 1 }, 1),
            Var::new(VarKind::Chern { block: 1, index: 2 }, 2),
            Var::new(VarKind::Quantum { index: 1 }, 3),
        ])
        .unwrap()
    }

    #[test]
    fn chern_block_dominates() {
        let r = reg();
        let a = Monomial::from_exps(&[0, 1, 0, 0]);
        let q = Monomial::from_exps(&[0, 0, 0, 5]);
        assert_eq!(cmp_monomials(&r, &a, &q), Ordering::Greater);
    }

    #[test]
    fn weighted_grevlex_inside_block() {
        let r = reg();
        let ab = Monomial::from_exps(&[1, 1, 0, 0]);
        let b2 = Monomial::from_exps(&[0, 0, 1, 0]);
        let bb = Monomial::from_exps(&[0, 2, 0, 0]);
        assert_eq!(cmp_monomials(&r, &ab, &b2), Ordering::Greater);
        assert_eq!(cmp_monomials(&r, &bb, &b2), Ordering::Greater);
        assert_eq!(cmp_monomials(&r, &ab, &bb), Ordering::Greater);
        let a = Monomial::from_exps(&[1, 0, 0, 0]);
        let b = Monomial::from_exps(&[0, 1, 0, 0]);
        assert_eq!(cmp_monomials(&r, &a, &b), Ordering::Greater);
    }

    #[test]
    fn divisibility_helpers() {
        let a = Monomial::from_exps(&[1, 2, 0, 0]);
        let b = Monomial::from_exps(&[2, 2, 1, 0]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Monomial::from_exps(&[1, 0, 1, 0]));
        assert_eq!(a.lcm(&Monomial::from_exps(&[0, 3, 0, 1])), Monomial::from_exps(&[1, 3, 0, 1]));
        assert!(Monomial::from_exps(&[1, 0, 0, 0]).is_coprime(&Monomial::from_exps(&[0, 1, 0, 0])));
    }
}

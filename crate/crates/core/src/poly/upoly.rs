use std::sync::Arc;

use super::{Polynomial, VarRegistry};

/// Polynomial in the formal variable `x` with [`Polynomial`] coefficients.
/// `x` is not a ring generator and never appears in a registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    reg: Arc<VarRegistry>,
    /// `coeffs[d]` multiplies `x^d`; the last entry is nonzero.
    coeffs: Vec<Polynomial>,
}

impl UPoly {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        UPoly { reg: reg.clone(), coeffs: Vec::new() }
    }

    pub fn constant(p: Polynomial) -> Self {
        let reg = p.registry().clone();
        Self::from_coeffs(&reg, vec![p])
    }

    pub fn from_coeffs(reg: &Arc<VarRegistry>, mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { reg: reg.clone(), coeffs }
    }

    /// `x^d`.
    pub fn x_pow(reg: &Arc<VarRegistry>, d: usize) -> Self {
        let mut coeffs = vec![Polynomial::zero(reg); d];
        coeffs.push(Polynomial::one(reg));
        UPoly { reg: reg.clone(), coeffs }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> Polynomial {
        self.coeffs.get(d).cloned().unwrap_or_else(|| Polynomial::zero(&self.reg))
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Polynomial> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.constant_value().is_some_and(|v| v == num_traits::One::one()))
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|d| &self.coeff(d) + &other.coeff(d)).collect();
        UPoly::from_coeffs(&self.reg, coeffs)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|d| &self.coeff(d) - &other.coeff(d)).collect();
        UPoly::from_coeffs(&self.reg, coeffs)
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.reg);
        }
        let mut coeffs = vec![Polynomial::zero(&self.reg); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(&self.reg, coeffs)
    }

    pub fn scale(&self, p: &Polynomial) -> UPoly {
        UPoly::from_coeffs(&self.reg, self.coeffs.iter().map(|c| c * p).collect())
    }

    /// Applies a coefficient-wise substitution (see [`Polynomial::substitute`]).
    pub fn substitute(&self, target: &Arc<VarRegistry>, images: &[Polynomial]) -> UPoly {
        UPoly::from_coeffs(target, self.coeffs.iter().map(|c| c.substitute(target, images)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Var, VarKind};

    #[test]
    fn product_of_linear_factors() {
        let reg = Arc::new(
            VarRegistry::new(vec![
                Var::new(VarKind::Chern { block: 0, index: 1 }, 1),
                Var::new(VarKind::Chern { block: 1, index: 1 }, 1),
            ])
            .unwrap(),
        );
        let a = Polynomial::var(&reg, 0);
        let b = Polynomial::var(&reg, 1);
        let xa = UPoly::x_pow(&reg, 1).add(&UPoly::constant(a.clone()));
        let xb = UPoly::x_pow(&reg, 1).add(&UPoly::constant(b.clone()));
        let p = xa.mul(&xb);
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_monic());
        assert_eq!(p.coeff(1), &a + &b);
        assert_eq!(p.coeff(0), &a * &b);
        assert!(p.sub(&p).is_zero());
    }
}

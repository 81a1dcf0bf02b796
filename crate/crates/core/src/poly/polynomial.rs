use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::cmp_monomials;
use super::{Monomial, PolyError, VarRegistry};

pub type Coeff = BigRational;
pub type Term = (Monomial, Coeff);

/// Result of [`Polynomial::weighted_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial with rational coefficients. Terms are kept sorted in
/// strictly decreasing monomial order with no zero coefficients, so equal
/// polynomials have identical representations.
#[derive(Clone)]
pub struct Polynomial {
    reg: Arc<VarRegistry>,
    terms: Vec<Term>,
}

pub(crate) fn same_registry(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_registry(&self.reg, &other.reg)
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        Polynomial { reg: reg.clone(), terms: Vec::new() }
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::constant(reg, Coeff::one())
    }

    pub fn constant(reg: &Arc<VarRegistry>, c: Coeff) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::one(reg.len()), c)] };
        Polynomial { reg: reg.clone(), terms }
    }

    pub fn integer(reg: &Arc<VarRegistry>, c: i64) -> Self {
        Self::constant(reg, Coeff::from_integer(c.into()))
    }

    pub fn var(reg: &Arc<VarRegistry>, i: usize) -> Self {
        Self::monomial(reg, Monomial::var(reg.len(), i), Coeff::one())
    }

    pub fn monomial(reg: &Arc<VarRegistry>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.len(), reg.len(), "monomial length does not match registry");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { reg: reg.clone(), terms }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = Term>>(reg: &Arc<VarRegistry>, terms: I) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), reg.len(), "monomial length does not match registry");
            *acc.entry(m).or_insert_with(Coeff::zero) += c;
        }
        Self::from_map(reg, acc)
    }

    fn from_map(reg: &Arc<VarRegistry>, acc: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| cmp_monomials(reg, &b.0, &a.0));
        Polynomial { reg: reg.clone(), terms }
    }

    /// Wraps terms that are already sorted decreasingly with nonzero coefficients.
    pub(crate) fn from_sorted(reg: &Arc<VarRegistry>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| cmp_monomials(reg, &w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial { reg: reg.clone(), terms }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_monomials(&self.reg, a, b)
    }

    pub fn checked_registry(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_registry(&self.reg, &other.reg) {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    /// Registry-checked arithmetic.
    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
        self.checked_registry(other)?;
        Ok(match op {
            ArithOp::Add => self.add_scaled(other, &Coeff::one()),
            ArithOp::Sub => self.add_scaled(other, &-Coeff::one()),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    /// `self + factor * other`, by merging the sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, factor: &Coeff) -> Polynomial {
        assert!(same_registry(&self.reg, &other.reg), "registry mismatch");
        if factor.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match cmp_monomials(&self.reg, &x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m.clone(), c * factor));
                    }
                    Ordering::Equal => {
                        let (m, c) = a.next().unwrap();
                        let (_, d) = b.next().unwrap();
                        let s = c + d * factor;
                        if !s.is_zero() {
                            out.push((m.clone(), s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), c * factor));
                }
                (None, None) => break,
            }
        }
        Polynomial { reg: self.reg.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.reg);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero) += ca * cb;
            }
        }
        Self::from_map(&self.reg, acc)
    }

    /// Multiplication by a single term; the order is multiplicative so the
    /// result stays sorted.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.reg);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        Polynomial { reg: self.reg.clone(), terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::one(self.reg.len()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.reg);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn weighted_degree(&self) -> Degree {
        let mut degrees = self.terms.iter().map(|(m, _)| m.weighted_degree(&self.reg));
        match degrees.next() {
            None => Degree::Zero,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Inhomogeneous
                }
            }
        }
    }

    /// True for zero or for a weighted-homogeneous polynomial of degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        matches!(self.weighted_degree(), Degree::Zero) || self.weighted_degree() == Degree::Homogeneous(d)
    }

    /// Coefficient of `q^qexp`, where `qexp` is indexed like the quantum
    /// block of the registry. The result keeps the registry, with all
    /// quantum exponents zero.
    pub fn coeff_extract(&self, qexp: &[u16]) -> Result<Polynomial, PolyError> {
        let qidx = self.reg.quantum_indices();
        if qidx.len() != qexp.len() {
            return Err(PolyError::Arity { expected: qidx.len(), found: qexp.len() });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| qidx.iter().zip(qexp).all(|(&i, &e)| m.exp(i) == e))
            .map(|(m, c)| {
                let mut m = m.clone();
                for &i in &qidx {
                    m.set_exp(i, 0);
                }
                (m, c.clone())
            })
            .collect();
        Ok(Polynomial { reg: self.reg.clone(), terms })
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let e = m.exp(var);
            let mut m = m.clone();
            m.set_exp(var, e - 1);
            (m, c * Coeff::from_integer(e.into()))
        });
        Polynomial::from_terms(&self.reg, terms)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`, all of which
    /// live over `target`.
    pub fn substitute(&self, target: &Arc<VarRegistry>, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.reg.len(), "one image per variable required");
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                term = &term * p;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Relabels variables by index (`map[i]` is the target index of
    /// variable `i`); a pure renaming, so no coefficients combine.
    pub fn rename(&self, target: &Arc<VarRegistry>, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(target.len());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    out.set_exp(map[i], e);
                }
            }
            (out, c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Evaluates at a rational point given for every variable.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(same_registry(&self.reg, &divisor.reg), "registry mismatch");
        let (dm, dc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c / dc;
            rem = rem.add_scaled(&divisor.mul_term(&qm, &qc), &-Coeff::one());
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_sorted(&self.reg, quotient))
    }

    /// Scales to coprime integer coefficients with a positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lcm_den = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let gcd_num = self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
        let mut factor = Coeff::new(lcm_den, gcd_num);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// True when no Chern variable occurs.
    pub fn is_coefficient(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_coefficient(&self.reg))
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(rhs, &Coeff::one())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(rhs, &-Coeff::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_registry(&self.reg, &rhs.reg), "registry mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Var, VarKind};

    fn reg() -> Arc<VarRegistry> {
        Arc::new(
            VarRegistry::new(vec![
                Var::new(VarKind::Chern { block: 0, index: 1 }, 1),
                Var::new(VarKind::Chern { block: 1, index: 1 }, 1),
                Var::new(VarKind::Quantum { index: 1 }, 2),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = reg();
        let x = &Polynomial::var(&r, 0) + &Polynomial::one(&r);
        let y = x.scale(&-Coeff::one());
        assert!((&x + &y).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = reg();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&r, 1);
        let lhs = &(&a + &b) * &(&a - &b);
        let rhs = &a.pow(2) - &b.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weighted_degree_cases() {
        let r = reg();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&r, 1);
        let q = Polynomial::var(&r, 2);
        assert_eq!(Polynomial::zero(&r).weighted_degree(), Degree::Zero);
        assert_eq!((&(&a * &b) + &q).weighted_degree(), Degree::Homogeneous(2));
        assert_eq!((&a + &q).weighted_degree(), Degree::Inhomogeneous);
    }

    #[test]
    fn extract_quantum_coefficient() {
        let r = reg();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&r, 1);
        let q = Polynomial::var(&r, 2);
        let p = &(&q * &a) + &b;
        assert_eq!(p.coeff_extract(&[1]).unwrap(), a);
        assert_eq!(p.coeff_extract(&[0]).unwrap(), b);
        assert!(p.coeff_extract(&[1, 0]).is_err());
    }

    #[test]
    fn exact_division() {
        let r = reg();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&r, 1);
        let prod = &(&a + &b) * &(&a - &b.scale(&Coeff::from_integer(3.into())));
        assert_eq!(prod.div_exact(&(&a + &b)).unwrap(), &a - &b.scale(&Coeff::from_integer(3.into())));
        assert!(prod.div_exact(&(&a + &Polynomial::one(&r))).is_none());
    }

    #[test]
    fn primitive_form() {
        let r = reg();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&r, 1);
        let p = &a.scale(&Coeff::new((-2).into(), 3.into())) + &b.scale(&Coeff::new(4.into(), 9.into()));
        let prim = p.primitive();
        assert_eq!(prim, &a.scale(&Coeff::from_integer(3.into())) - &b.scale(&Coeff::from_integer(2.into())));
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let r1 = reg();
        let r2 = Arc::new(VarRegistry::new(vec![Var::new(VarKind::Quantum { index: 1 }, 2)]).unwrap());
        let a = Polynomial::var(&r1, 0);
        let q = Polynomial::var(&r2, 0);
        assert_eq!(a.arith(&q, ArithOp::Add), Err(PolyError::RegistryMismatch));
    }
}

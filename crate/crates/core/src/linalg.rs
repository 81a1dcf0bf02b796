//! Fraction-free (Bareiss) elimination over integral domains with exact
//! division: the rationals and the polynomial parameter ring.

use num_traits::{One, Zero};

use crate::poly::{Coeff, Polynomial};

pub trait ExactDomain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// `self / other` when the division is exact.
    fn div_exact_elem(&self, other: &Self) -> Option<Self>;
}

impl ExactDomain for Coeff {
    fn zero_like(&self) -> Self {
        Coeff::zero()
    }
    fn one_like(&self) -> Self {
        Coeff::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

impl ExactDomain for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.registry())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.registry())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        self.div_exact(other)
    }
}

/// Forward elimination in place. Returns the signed determinant of the
/// leading square part, or `None` if it is singular. Extra columns beyond
/// `n` are carried along (augmented systems).
fn eliminate<T: ExactDomain>(a: &mut [Vec<T>], n: usize) -> Option<bool> {
    let mut negate = false;
    let one = a[0][0].one_like();
    let mut prev = one;
    let width = a[0].len();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero_elem())?;
        if pivot != k {
            a.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let num = a[i][j].mul_elem(&a[k][k]).sub_elem(&a[i][k].mul_elem(&a[k][j]));
                a[i][j] = num.div_exact_elem(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = a[i][k].zero_like();
        }
        prev = a[k][k].clone();
    }
    Some(negate)
}

/// Determinant of a square matrix.
pub fn determinant<T: ExactDomain>(m: &[Vec<T>]) -> Option<T> {
    let n = m.len();
    if n == 0 {
        return None;
    }
    let mut a = m.to_vec();
    match eliminate(&mut a, n) {
        None => Some(a[0][0].zero_like()),
        Some(negate) => {
            let d = a[n - 1][n - 1].clone();
            Some(if negate { d.neg_elem() } else { d })
        }
    }
}

/// Solution of `M x = b` as `x_i = numerators[i] / denominator`, with every
/// numerator and the denominator in the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionFreeSolution<T> {
    pub denominator: T,
    pub numerators: Vec<T>,
}

/// Solves a square system by Bareiss elimination and fraction-free back
/// substitution. `None` when `M` is singular.
pub fn solve<T: ExactDomain>(m: &[Vec<T>], b: &[T]) -> Option<FractionFreeSolution<T>> {
    let n = m.len();
    assert_eq!(b.len(), n, "right-hand side has wrong length");
    if n == 0 {
        return None;
    }
    let mut a: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    eliminate(&mut a, n)?;
    // with D = a[n-1][n-1], y_i = D x_i are ring elements (Cramer)
    let det = a[n - 1][n - 1].clone();
    let mut y: Vec<T> = vec![det.zero_like(); n];
    for i in (0..n).rev() {
        let mut acc = det.mul_elem(&a[i][n]);
        for j in i + 1..n {
            acc = acc.sub_elem(&a[i][j].mul_elem(&y[j]));
        }
        y[i] = acc.div_exact_elem(&a[i][i]).expect("back substitution is exact");
    }
    Some(FractionFreeSolution { denominator: det, numerators: y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Var, VarKind, VarRegistry};
    use std::sync::Arc;

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    fn rational_matrix(rows: &[&[i64]]) -> Vec<Vec<Coeff>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    /// Cofactor expansion, kept independent of the elimination path.
    fn laplace(m: &[Vec<Coeff>]) -> Coeff {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut total = Coeff::zero();
        for col in 0..m.len() {
            let minor: Vec<Vec<Coeff>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][col] * laplace(&minor);
            if col % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = rational_matrix(&[&[0, 2, 1, 3], &[4, -1, 0, 2], &[1, 1, 1, 1], &[2, 0, -3, 5]]);
        assert_eq!(determinant(&m).unwrap(), laplace(&m));
        let singular = rational_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&singular).unwrap(), q(0));
    }

    #[test]
    fn solve_rational_system() {
        let m = rational_matrix(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let b = vec![q(1), q(2), q(3)];
        let sol = solve(&m, &b).unwrap();
        let x: Vec<Coeff> = sol.numerators.iter().map(|v| v / &sol.denominator).collect();
        for (row, rhs) in m.iter().zip(&b) {
            let lhs: Coeff = row.iter().zip(&x).map(|(a, v)| a * v).sum();
            assert_eq!(&lhs, rhs);
        }
        assert!(solve(&rational_matrix(&[&[1, 2], &[2, 4]]), &[q(1), q(1)]).is_none());
    }

    #[test]
    fn solve_over_polynomials() {
        let reg = Arc::new(VarRegistry::new(vec![Var::new(VarKind::Quantum { index: 1 }, 1)]).unwrap());
        let p = |s: &str| parse_polynomial(s, &reg).unwrap();
        // [[q, 1], [1, q]] x = [1, 1]  =>  x = 1/(q+1) each
        let m = vec![vec![p("q[1]"), p("1")], vec![p("1"), p("q[1]")]];
        let sol = solve(&m, &[p("1"), p("1")]).unwrap();
        assert_eq!(sol.denominator, p("q[1]^2 - 1"));
        assert_eq!(sol.numerators[0], p("q[1] - 1"));
        assert_eq!(sol.numerators[1], p("q[1] - 1"));
        assert_eq!(determinant(&m).unwrap(), p("q[1]^2 - 1"));
    }
}

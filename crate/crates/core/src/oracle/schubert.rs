use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarRegistry};
use crate::ring::{QuantumRing, RingElement};

/// A partition in the `k x (n-k)` box, stored without zero parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: &[usize], k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidPartition(format!("k = {k} exceeds n = {n}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        let trimmed: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        if trimmed.len() > k || trimmed.first().is_some_and(|&p| p > n - k) {
            return Err(Error::InvalidPartition(format!("{parts:?} does not fit a {k} x {} box", n - k)));
        }
        Ok(Partition(trimmed))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to length `k`.
    pub fn padded(&self, k: usize) -> Vec<usize> {
        let mut p = self.0.clone();
        p.resize(k, 0);
        p
    }

    /// Every partition in the `k x (n-k)` box, by size then reverse
    /// lexicographically.
    pub fn all_in_box(k: usize, n: usize) -> Vec<Partition> {
        fn go(k: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if current.len() == k {
                out.push(Partition(current.iter().copied().filter(|&p| p > 0).collect()));
                return;
            }
            for p in (0..=max).rev() {
                current.push(p);
                go(k, p, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        go(k, n - k, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `σ_1 * σ_λ` in `QH*(Gr(k, n))`: add one box in every admissible way,
/// plus `q σ_{(λ_2 - 1, ..., λ_k - 1)}` when `λ_1 = n-k` and `λ_k >= 1`.
/// Terms are `(μ, power of q)`, sorted.
pub fn quantum_pieri(k: usize, n: usize, lambda: &Partition) -> Result<Vec<(Partition, u32)>> {
    let lambda = Partition::new(lambda.parts(), k, n)?;
    let width = n - k;
    let p = lambda.padded(k);
    let mut out = Vec::new();
    for i in 0..k {
        if p[i] < width && (i == 0 || p[i - 1] > p[i]) {
            let mut mu = p.clone();
            mu[i] += 1;
            out.push((Partition::new(&mu, k, n)?, 0));
        }
    }
    if k > 0 && p[0] == width && p[k - 1] >= 1 {
        let mu: Vec<usize> = p[1..].iter().map(|x| x - 1).collect();
        out.push((Partition::new(&mu, k, n)?, 1));
    }
    out.sort();
    Ok(out)
}

fn laplace(m: &[Vec<Polynomial>], reg: &Arc<VarRegistry>) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(reg),
        1 => m[0][0].clone(),
        _ => {
            let mut total = Polynomial::zero(reg);
            for col in 0..m.len() {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][col] * &laplace(&minor, reg);
                total = if col % 2 == 0 { &total + &term } else { &total - &term };
            }
            total
        }
    }
}

/// Giambelli: `σ_λ = det(h_{λ_i + j - i})` with `h_j = c_j` of the quotient
/// bundle (block 1, rank `n - k`).
pub fn jacobi_trudi(reg: &Arc<VarRegistry>, k: usize, n: usize, lambda: &Partition) -> Result<Polynomial> {
    let h = |j: isize| -> Result<Polynomial> {
        if j == 0 {
            return Ok(Polynomial::one(reg));
        }
        if j < 0 || j as usize > n - k {
            return Ok(Polynomial::zero(reg));
        }
        let name = format!("c[1][{j}]");
        let i = reg.index_of(&name).ok_or_else(|| Error::InvalidPartition(format!("no variable {name}")))?;
        Ok(Polynomial::var(reg, i))
    };
    let parts = lambda.parts();
    let len = parts.len();
    let mut m = Vec::with_capacity(len);
    for (i, &li) in parts.iter().enumerate() {
        let row: Result<Vec<Polynomial>> = (0..len).map(|j| h(li as isize + j as isize - i as isize)).collect();
        m.push(row?);
    }
    Ok(laplace(&m, reg))
}

/// Schubert classes of a Grassmannian ring, keyed by partition.
pub fn schubert_dictionary(ring: &Arc<QuantumRing>) -> Result<Vec<(Partition, RingElement)>> {
    let [flag] = ring.factors() else {
        return Err(Error::InvalidFlag("Schubert dictionary needs a single Grassmannian".into()));
    };
    if !flag.is_grassmannian() {
        return Err(Error::InvalidFlag(format!("{flag} is not a Grassmannian")));
    }
    let (k, n) = (flag.dims()[0], flag.n());
    Partition::all_in_box(k, n)
        .into_iter()
        .map(|lambda| {
            let p = jacobi_trudi(ring.registry(), k, n, &lambda)?;
            Ok((lambda, ring.element(&p)?))
        })
        .collect()
}

//! The global residue functional and the Poincaré pairing.
//!
//! With `J = det(∂Σ_m/∂c_j^{(i)})`, the trace identity
//! `Tr(M_g) = Res(g J)` applied to `g = m_α` gives a square linear system
//! for the values `Res(m_β)` on the standard basis. The sign is then fixed
//! so that the ample class has positive top power.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::QuantumRing;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Coeff, Polynomial};

/// How the residue values on the standard basis are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueMethod {
    /// Socle route for parameter-free relations, otherwise the trace system
    /// (symbolic when small, specialized otherwise).
    Auto,
    /// Trace system solved over the parameter ring.
    Symbolic,
    /// Trace system solved at random rational parameter points.
    Specialized { seed: u64 },
    /// `Res(J) = rank` on the one-dimensional top degree.
    Socle,
}

impl fmt::Display for ResidueMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueMethod::Auto => f.write_str("auto"),
            ResidueMethod::Symbolic => f.write_str("symbolic"),
            ResidueMethod::Specialized { seed } => write!(f, "specialized:{seed}"),
            ResidueMethod::Socle => f.write_str("socle"),
        }
    }
}

impl FromStr for ResidueMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(ResidueMethod::Auto),
            "symbolic" => Ok(ResidueMethod::Symbolic),
            "socle" => Ok(ResidueMethod::Socle),
            "specialized" => Ok(ResidueMethod::Specialized { seed: DEFAULT_SEED }),
            other => match other.strip_prefix("specialized:").map(str::parse) {
                Some(Ok(seed)) => Ok(ResidueMethod::Specialized { seed }),
                _ => Err(format!("unknown residue method `{other}`")),
            },
        }
    }
}

const DEFAULT_SEED: u64 = 0x5_eed0_f7e5;
const SYMBOLIC_MAX_RANK: usize = 6;
const SPECIALIZATION_ATTEMPTS: usize = 8;

/// `Res(m_β)` for every standard monomial, oriented geometrically.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueFunctional {
    pub method: ResidueMethod,
    pub values: Vec<Polynomial>,
    /// `-1` when the raw trace solution was negated to make the ample class
    /// positive.
    pub orientation: i8,
}

/// `<m_α, m_β>` on the standard basis together with `Res(m_α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingTable {
    pub basis: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    pub complex_dim: u32,
    pub entries: Vec<Vec<Polynomial>>,
    pub residues: Vec<Polynomial>,
}

impl PairingTable {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Entry `(α, β)` is zero or homogeneous of degree
    /// `deg m_α + deg m_β - dim`.
    pub fn is_homogeneous(&self) -> bool {
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| {
                let e = &self.entries[i][j];
                let total = self.degrees[i] + self.degrees[j];
                e.is_zero() || (total >= self.complex_dim && e.is_homogeneous_of(total - self.complex_dim))
            })
        })
    }

    /// Determinant evaluated at parameter points; a nonzero value at any
    /// point proves the determinant is a nonzero polynomial.
    pub fn is_nondegenerate(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let reg = self.basis[0].registry().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        (0..SPECIALIZATION_ATTEMPTS).any(|attempt| {
            let point: Vec<Coeff> = (0..reg.len())
                .map(|i| if attempt == 0 || reg.is_chern(i) { Coeff::zero() } else { random_coeff(&mut rng) })
                .collect();
            let m: Vec<Vec<Coeff>> =
                self.entries.iter().map(|row| row.iter().map(|e| e.evaluate(&point)).collect()).collect();
            linalg::determinant(&m).is_some_and(|d| !d.is_zero())
        })
    }

    /// The table with every quantum variable set to zero.
    pub fn q_zero(&self) -> Vec<Vec<Polynomial>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.coeff_extract(&vec![0; e.registry().quantum_indices().len()]).unwrap()).collect())
            .collect()
    }
}

fn random_coeff<R: Rng + ?Sized>(rng: &mut R) -> Coeff {
    let num: i64 = rng.gen_range(-97..=97);
    let den: i64 = rng.gen_range(1..=13);
    Coeff::new(num.into(), den.into())
}

impl QuantumRing {
    /// `det(∂r_m/∂c_j)` over the relation list and the Chern variables.
    pub fn jacobian(&self) -> Result<Polynomial> {
        let chern: Vec<usize> = self.registry.chern_range().collect();
        if chern.len() != self.relations.len() {
            return Err(Error::ResidueDegenerate(format!(
                "{} relations in {} Chern variables",
                self.relations.len(),
                chern.len()
            )));
        }
        if chern.is_empty() {
            return Ok(Polynomial::one(&self.registry));
        }
        let m: Vec<Vec<Polynomial>> =
            self.relations.iter().map(|r| chern.iter().map(|&v| r.derivative(v)).collect()).collect();
        Ok(linalg::determinant(&m).expect("nonempty matrix"))
    }

    /// The residue functional, computed on first use with
    /// [`ResidueMethod::Auto`].
    pub fn residue_functional(&self) -> Result<&ResidueFunctional> {
        if let Some(r) = self.residue.get() {
            return Ok(r);
        }
        let r = self.compute_residue(ResidueMethod::Auto)?;
        Ok(self.residue.get_or_init(|| r))
    }

    /// Fixes the residue functional to one computed by `method`. Returns
    /// `false` when a functional was already in place.
    pub fn use_residue_method(&self, method: ResidueMethod) -> Result<bool> {
        if self.residue.get().is_some() {
            return Ok(false);
        }
        let r = self.compute_residue(method)?;
        Ok(self.residue.set(r).is_ok())
    }

    fn parameter_free(&self) -> bool {
        self.relations.iter().all(|r| r.terms().iter().all(|(m, _)| m.is_chern_pure(&self.registry)))
    }

    pub fn compute_residue(&self, method: ResidueMethod) -> Result<ResidueFunctional> {
        let method = match method {
            ResidueMethod::Auto if self.parameter_free() => ResidueMethod::Socle,
            ResidueMethod::Auto
                if self.rank() <= SYMBOLIC_MAX_RANK && self.registry.coefficient_range().len() <= 2 =>
            {
                ResidueMethod::Symbolic
            }
            ResidueMethod::Auto => ResidueMethod::Specialized { seed: DEFAULT_SEED },
            m => m,
        };
        let jac = self.jacobian()?;
        let raw = match method {
            ResidueMethod::Socle => self.socle_values(&jac)?,
            ResidueMethod::Symbolic => self.symbolic_values(&jac)?,
            ResidueMethod::Specialized { seed } => self.specialized_values(&jac, seed)?,
            ResidueMethod::Auto => unreachable!(),
        };
        let mut functional = ResidueFunctional { method, values: raw, orientation: 1 };

        let volume = self.apply(&functional, &self.nf(&self.ample_class().pow(self.complex_dim)));
        let sign = match volume.constant_value() {
            Some(v) if v.is_positive() => 1,
            Some(v) if v.is_negative() => -1,
            _ => return Err(Error::ResidueDegenerate(format!("ample class has top power residue {volume}"))),
        };
        if sign < 0 {
            functional.values = functional.values.iter().map(|v| -v).collect();
            functional.orientation = -1;
        }
        let rank = Polynomial::integer(&self.registry, self.rank() as i64);
        let oriented_jac = jac.scale(&Coeff::from_integer(functional.orientation.into()));
        if self.apply(&functional, &self.nf(&oriented_jac)) != rank {
            return Err(Error::ResidueDegenerate("Res(J) differs from the rank".into()));
        }
        Ok(functional)
    }

    fn apply(&self, functional: &ResidueFunctional, nf: &Polynomial) -> Polynomial {
        let coords = self.basis.coordinates(nf).expect("normal form");
        coords
            .iter()
            .zip(&functional.values)
            .filter(|(c, v)| !c.is_zero() && !v.is_zero())
            .fold(Polynomial::zero(&self.registry), |acc, (c, v)| &acc + &(c * v))
    }

    fn top_index(&self) -> Result<usize> {
        let top: Vec<usize> = (0..self.rank()).filter(|&i| self.basis.degree(i) == self.complex_dim).collect();
        match top[..] {
            [t] => Ok(t),
            _ => Err(Error::ResidueDegenerate(format!("{} standard monomials in top degree", top.len()))),
        }
    }

    fn socle_values(&self, jac: &Polynomial) -> Result<Vec<Polynomial>> {
        let t = self.top_index()?;
        let coords = self.coordinates(jac);
        let lambda = coords[t]
            .constant_value()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::ResidueDegenerate("Jacobian has no top-degree component".into()))?;
        let mut values = vec![Polynomial::zero(&self.registry); self.rank()];
        values[t] = Polynomial::constant(&self.registry, Coeff::from_integer((self.rank() as i64).into()) / lambda);
        Ok(values)
    }

    /// Matrix `[NF(m_α J)]_β` and right-hand side `Tr(M_{m_α})`.
    fn trace_system(&self, jac: &Polynomial) -> (Vec<Vec<Polynomial>>, Vec<Polynomial>) {
        let n = self.rank();
        let nf_jac = self.nf(jac);
        let mut matrix = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for alpha in 0..n {
            let m = self.basis.as_polynomial(alpha);
            matrix.push(self.coordinates(&(&m * &nf_jac)));
            rhs.push(self.mult_matrix(&m).trace());
        }
        (matrix, rhs)
    }

    fn symbolic_values(&self, jac: &Polynomial) -> Result<Vec<Polynomial>> {
        let (matrix, rhs) = self.trace_system(jac);
        let sol = linalg::solve(&matrix, &rhs).ok_or_else(|| {
            Error::ResidueDegenerate("trace system is singular over the parameter ring".into())
        })?;
        sol.numerators
            .iter()
            .enumerate()
            .map(|(i, y)| {
                linalg::ExactDomain::div_exact_elem(y, &sol.denominator).ok_or_else(|| {
                    Error::NonPolynomialResidue(format!(
                        "Res({}) = ({}) / ({})",
                        self.basis.as_polynomial(i),
                        y,
                        sol.denominator
                    ))
                })
            })
            .collect()
    }

    fn specialized_values(&self, jac: &Polynomial, seed: u64) -> Result<Vec<Polynomial>> {
        let (matrix, rhs) = self.trace_system(jac);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let reg = self.registry.clone();
        let solve_at = |rng: &mut ChaCha8Rng| -> Option<Vec<Coeff>> {
            for _ in 0..SPECIALIZATION_ATTEMPTS {
                let point: Vec<Coeff> =
                    (0..reg.len()).map(|i| if reg.is_chern(i) { Coeff::zero() } else { random_coeff(rng) }).collect();
                let m: Vec<Vec<Coeff>> =
                    matrix.iter().map(|row| row.iter().map(|e| e.evaluate(&point)).collect()).collect();
                let b: Vec<Coeff> = rhs.iter().map(|e| e.evaluate(&point)).collect();
                if let Some(sol) = linalg::solve(&m, &b) {
                    return Some(sol.numerators.iter().map(|y| y / &sol.denominator).collect());
                }
            }
            None
        };
        let first = solve_at(&mut rng)
            .ok_or_else(|| Error::ResidueDegenerate("trace system singular at every sampled point".into()))?;
        let check = solve_at(&mut rng)
            .ok_or_else(|| Error::ResidueDegenerate("trace system singular at every sampled point".into()))?;
        // Res(m_β) has weighted degree deg m_β - dim <= 0, so it is a constant
        // supported in top degree.
        let mut values = Vec::with_capacity(self.rank());
        for (i, (x, y)) in first.iter().zip(&check).enumerate() {
            let top = self.basis.degree(i) == self.complex_dim;
            if x != y || (!top && !x.is_zero()) {
                return Err(Error::NonPolynomialResidue(format!(
                    "Res({}) is not constant across specializations",
                    self.basis.as_polynomial(i)
                )));
            }
            values.push(Polynomial::constant(&self.registry, x.clone()));
        }
        Ok(values)
    }

    /// `Res(NF(x))`.
    pub fn residue(&self, x: &Polynomial) -> Result<Polynomial> {
        let functional = self.residue_functional()?;
        Ok(self.apply(functional, &self.nf(x)))
    }

    /// `<a, b> = Res(NF(a b))`.
    pub fn pair(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.residue(&(a * b))
    }

    pub fn pairing_table(&self) -> Result<PairingTable> {
        let functional = self.residue_functional()?;
        let n = self.rank();
        let basis: Vec<Polynomial> = (0..n).map(|i| self.basis.as_polynomial(i)).collect();
        let mut entries = vec![vec![Polynomial::zero(&self.registry); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.apply(functional, &self.nf(&(&basis[i] * &basis[j])));
                entries[j][i] = v.clone();
                entries[i][j] = v;
            }
        }
        Ok(PairingTable {
            basis,
            degrees: (0..n).map(|i| self.basis.degree(i)).collect(),
            complex_dim: self.complex_dim,
            entries,
            residues: functional.values.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::ring;
    use super::*;

    #[test]
    fn projective_line_pairing() {
        let r = ring(&[1, 2], false);
        let one = Polynomial::one(r.registry());
        let b = r.parse("c[1][1]").unwrap();
        assert_eq!(r.residue(&one).unwrap(), Polynomial::zero(r.registry()));
        assert_eq!(r.residue(&b).unwrap(), one);
        assert_eq!(r.pair(&one, &b).unwrap(), one);
        assert!(r.pair(&b, &b).unwrap().is_zero());
        assert!(r.pair(&one, &one).unwrap().is_zero());
        assert_eq!(r.residue(&b.pow(3)).unwrap(), r.parse("q[1]").unwrap());
    }

    #[test]
    fn projective_plane_pairing() {
        let r = ring(&[1, 3], false);
        let p = r.parse("p[1]").unwrap();
        let p2 = r.parse("p[1]^2").unwrap();
        assert_eq!(r.pair(&p, &p).unwrap(), Polynomial::one(r.registry()));
        assert!(r.pair(&p2, &p2).unwrap().is_zero());
    }

    #[test]
    fn routes_agree() {
        for (dims, eq) in [(&[1, 2][..], false), (&[1, 2], true), (&[1, 3], false), (&[2, 4], false), (&[1, 2, 3], false)] {
            let r = ring(dims, eq);
            let specialized = r.compute_residue(ResidueMethod::Specialized { seed: 3 }).unwrap();
            let socle = r.compute_residue(ResidueMethod::Socle).unwrap();
            assert_eq!(specialized.values, socle.values, "{dims:?}");
            if r.rank() <= 6 {
                let sym = r.compute_residue(ResidueMethod::Symbolic).unwrap();
                assert_eq!(sym.values, socle.values, "{dims:?}");
            }
        }
    }

    #[test]
    fn classical_ring_uses_socle_and_trace_system_is_singular() {
        let r = QuantumRing::classical(&crate::FlagType::new(&[1, 3]).unwrap(), false, &Default::default()).unwrap();
        assert_eq!(r.residue_functional().unwrap().method, ResidueMethod::Socle);
        assert!(matches!(r.compute_residue(ResidueMethod::Symbolic), Err(Error::ResidueDegenerate(_))));
    }

    #[test]
    fn table_invariants() {
        for dims in [&[1, 2][..], &[1, 3], &[2, 4], &[1, 2, 3], &[1, 4]] {
            let t = ring(dims, false).pairing_table().unwrap();
            assert!(t.is_symmetric() && t.is_homogeneous() && t.is_nondegenerate(), "{dims:?}");
        }
        let t = ring(&[1, 2], true).pairing_table().unwrap();
        assert!(t.is_symmetric() && t.is_homogeneous() && t.is_nondegenerate());
    }

    #[test]
    fn method_text_round_trip() {
        for m in [ResidueMethod::Auto, ResidueMethod::Symbolic, ResidueMethod::Socle, ResidueMethod::Specialized { seed: 9 }] {
            assert_eq!(m.to_string().parse::<ResidueMethod>().unwrap(), m);
        }
    }
}

/// `Q[p, q] / (p^n - q)`, the quantum ring of `P^{n-1}` with its pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectiveOracle {
    pub n: usize,
}

impl ProjectiveOracle {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "projective oracle needs n >= 2");
        ProjectiveOracle { n }
    }

    /// `p^e = q^a p^b` with `b < n`, returned as `(a, b)`.
    pub fn reduce(&self, e: usize) -> (usize, usize) {
        (e / self.n, e % self.n)
    }

    /// `<p^i, p^j>` as the exponent `a` of its value `q^a`, or `None` when
    /// the pairing vanishes.
    pub fn pairing(&self, i: usize, j: usize) -> Option<usize> {
        let top = self.n - 1;
        let e = i + j;
        (e >= top && (e - top).is_multiple_of(self.n)).then(|| (e - top) / self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let p2 = ProjectiveOracle::new(3);
        assert_eq!(p2.reduce(5), (1, 2));
        assert_eq!(p2.pairing(5, 0), Some(1));
        assert_eq!(p2.pairing(1, 1), Some(0));
        assert_eq!(p2.pairing(2, 2), None);
        let p1 = ProjectiveOracle::new(2);
        assert_eq!(p1.pairing(0, 1), Some(0));
        assert_eq!(p1.pairing(0, 0), None);
    }
}

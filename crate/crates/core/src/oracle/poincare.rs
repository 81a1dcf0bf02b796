use crate::presentation::FlagType;

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of the Gaussian binomial `[m choose k]_t`, by the
/// `t`-Pascal rule `[m,k] = [m-1,k-1] + t^k [m-1,k]`.
pub fn gaussian_binomial(m: usize, k: usize) -> Vec<u64> {
    if k > m {
        return vec![0];
    }
    let mut rows: Vec<Vec<Vec<u64>>> = vec![vec![vec![1]]];
    for r in 1..=m {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        for j in 0..=r {
            let mut c = vec![0; j * (r - j) + 1];
            if j > 0 {
                for (i, v) in prev[j - 1].iter().enumerate() {
                    c[i] += v;
                }
            }
            if j < r {
                for (i, v) in prev[j].iter().enumerate() {
                    c[i + j] += v;
                }
            }
            row.push(c);
        }
        rows.push(row);
    }
    rows[m][k].clone()
}

/// Poincaré polynomial in `t = ` complex degree: the Gaussian multinomial
/// `[n; k_0, ..., k_l]_t`.
pub fn poincare_poly(f: &FlagType) -> Vec<u64> {
    let mut total = 0;
    let mut acc = vec![1];
    for &k in f.blocks() {
        total += k;
        acc = poly_mul(&acc, &gaussian_binomial(total, k));
    }
    acc
}

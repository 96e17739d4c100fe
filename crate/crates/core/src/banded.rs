//! Symmetric banded matrices: inertia counts and shifted solves.

use crate::error::{Error, Result};

/// Symmetric matrix stored by its lower bands: `bands[d][i] = A[i + d][i]`.
#[derive(Debug, Clone)]
pub struct SymBanded {
    n: usize,
    bands: Vec<Vec<f64>>,
}

impl SymBanded {
    pub fn new(diagonal: Vec<f64>, off: Vec<Vec<f64>>) -> Self {
        let n = diagonal.len();
        let mut bands = vec![diagonal];
        for (d, b) in off.into_iter().enumerate() {
            assert_eq!(b.len(), n.saturating_sub(d + 1), "band {} has wrong length", d + 1);
            bands.push(b);
        }
        Self { n, bands }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bands.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let d = r - c;
        if d > self.bandwidth() {
            0.0
        } else {
            self.bands[d][c]
        }
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let b = self.bandwidth();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.n {
            let start = i.saturating_sub(b);
            let end = (i + b).min(self.n - 1);
            let radius: f64 = (start..=end).filter(|&j| j != i).map(|j| self.get(i, j).abs()).sum();
            let d = self.get(i, i);
            lo = lo.min(d - radius);
            hi = hi.max(d + radius);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `sigma`, from the signs of the
    /// pivots of an unpivoted `LDLᵀ` factorization of `A - σI`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let b = self.bandwidth();
        let n = self.n;
        let tiny = f64::EPSILON * (1.0 + sigma.abs());
        // l[i][k] = L[i][i - 1 - k]
        let mut l = vec![vec![0.0; b]; n];
        let mut d = vec![0.0; n];
        let mut negatives = 0;
        for i in 0..n {
            let start = i.saturating_sub(b);
            let mut di = self.get(i, i) - sigma;
            for k in start..i {
                let lik = l[i][i - 1 - k];
                di -= lik * lik * d[k];
            }
            if di == 0.0 {
                di = -tiny;
            }
            d[i] = di;
            if di < 0.0 {
                negatives += 1;
            }
            for j in (i + 1)..=(i + b).min(n - 1) {
                let mut v = self.get(j, i);
                for k in j.saturating_sub(b)..i {
                    v -= l[j][j - 1 - k] * l[i][i - 1 - k] * d[k];
                }
                l[j][j - 1 - i] = v / di;
            }
        }
        negatives
    }

    /// `(A - σI)⁻¹ rhs` by banded LU with partial pivoting.
    pub fn shifted_solve(&self, sigma: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let lu = BandLu::factor(self, sigma)?;
        Ok(lu.solve(rhs))
    }
}

/// LU factors of a general banded matrix in LAPACK `gbtrf` layout.
struct BandLu {
    n: usize,
    kl: usize,
    kv: usize,
    ld: usize,
    ab: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandLu {
    fn idx(&self, i: usize, j: usize) -> usize {
        (self.kv + i - j) + j * self.ld
    }

    fn factor(m: &SymBanded, sigma: f64) -> Result<Self> {
        let n = m.dim();
        let kl = m.bandwidth();
        let ku = kl;
        let kv = ku + kl;
        let ld = 2 * kl + ku + 1;
        let mut lu = Self { n, kl, kv, ld, ab: vec![0.0; ld * n], pivots: vec![0; n] };
        for j in 0..n {
            for i in j.saturating_sub(ku)..=(j + kl).min(n - 1) {
                let v = m.get(i, j) - if i == j { sigma } else { 0.0 };
                let k = lu.idx(i, j);
                lu.ab[k] = v;
            }
        }
        let scale = m.gershgorin().1.abs().max(1.0);
        let mut ju = 0;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let mut jp = 0;
            let mut best = 0.0;
            for r in 0..=km {
                let v = lu.ab[lu.idx(j + r, j)].abs();
                if v > best {
                    best = v;
                    jp = r;
                }
            }
            lu.pivots[j] = j + jp;
            let diag_idx = lu.idx(j + jp, j);
            if lu.ab[diag_idx] == 0.0 {
                // exactly singular shift; perturb the pivot
                lu.ab[diag_idx] = f64::EPSILON * scale;
            }
            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let a = lu.idx(j, c);
                    let b = lu.idx(j + jp, c);
                    lu.ab.swap(a, b);
                }
            }
            let pivot = lu.ab[lu.idx(j, j)];
            for r in 1..=km {
                let k = lu.idx(j + r, j);
                lu.ab[k] /= pivot;
            }
            for c in (j + 1)..=ju {
                let u = lu.ab[lu.idx(j, c)];
                if u != 0.0 {
                    for r in 1..=km {
                        let l = lu.ab[lu.idx(j + r, j)];
                        let k = lu.idx(j + r, c);
                        lu.ab[k] -= l * u;
                    }
                }
            }
        }
        if lu.ab.iter().any(|v| !v.is_finite()) {
            return Err(Error::Eigen("non-finite entry in banded LU".into()));
        }
        Ok(lu)
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = rhs.to_vec();
        for j in 0..n {
            x.swap(j, self.pivots[j]);
            let km = self.kl.min(n - 1 - j);
            for r in 1..=km {
                x[j + r] -= self.ab[self.idx(j + r, j)] * x[j];
            }
        }
        for j in (0..n).rev() {
            x[j] /= self.ab[self.idx(j, j)];
            for i in j.saturating_sub(self.kv)..j {
                x[i] -= self.ab[self.idx(i, j)] * x[j];
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn laplacian(n: usize) -> SymBanded {
        SymBanded::new(vec![2.0; n], vec![vec![-1.0; n - 1]])
    }

    #[test]
    fn inertia_of_discrete_laplacian() {
        let n = 50;
        let m = laplacian(n);
        // eigenvalues 2 - 2cos(kπ/(n+1))
        let eig: Vec<f64> = (1..=n)
            .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        for sigma in [0.01, 0.5, 1.01, 2.7, 3.99] {
            let expected = eig.iter().filter(|&&e| e < sigma).count();
            assert_eq!(m.count_below(sigma), expected, "sigma = {sigma}");
        }
    }

    #[test]
    fn pentadiagonal_solve_matches_dense_product() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|i| 3.0 + (i as f64 * 0.37).sin()).collect();
        let b1: Vec<f64> = (0..n - 1).map(|i| -1.0 + 0.1 * (i as f64).cos()).collect();
        let b2: Vec<f64> = (0..n - 2).map(|i| 0.2 * (i as f64 * 1.3).sin()).collect();
        let m = SymBanded::new(diag, vec![b1, b2]);
        let sigma = 1.234;
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64 * 0.5).cos()).collect();
        let x = m.shifted_solve(sigma, &rhs).unwrap();
        for i in 0..n {
            let mut ax = -sigma * x[i];
            for j in i.saturating_sub(2)..=(i + 2).min(n - 1) {
                ax += m.get(i, j) * x[j];
            }
            assert_abs_diff_eq!(ax, rhs[i], epsilon = 1e-11);
        }
    }

    #[test]
    fn gershgorin_bounds_laplacian() {
        let (lo, hi) = laplacian(10).gershgorin();
        assert_abs_diff_eq!(lo, 0.0);
        assert_abs_diff_eq!(hi, 4.0);
    }
}

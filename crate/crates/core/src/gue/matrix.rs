use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Result};

/// Dense Hermitian matrix, row-major. Hermitian symmetry is exact in storage.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds from row-major entries; the lower triangle must be the exact
    /// conjugate of the upper one and the diagonal must be real.
    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(invalid(format!("expected {} entries, got {}", n * n, data.len())));
        }
        for i in 0..n {
            if data[i * n + i].im != 0.0 {
                return Err(invalid(format!("diagonal entry {i} is not real")));
            }
            for j in 0..i {
                if data[i * n + j] != data[j * n + i].conj() {
                    return Err(invalid(format!("entry ({i},{j}) is not the conjugate of ({j},{i})")));
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_real(n: usize, rows: &[f64]) -> Result<Self> {
        Self::from_rows(n, rows.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &v) in values.iter().enumerate() {
            data[i * n + i] = Complex64::new(v, 0.0);
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Upper-left `m × m` block.
    pub fn leading_minor(&self, m: usize) -> Self {
        let m = m.min(self.n);
        let mut data = Vec::with_capacity(m * m);
        for i in 0..m {
            data.extend_from_slice(&self.data[i * self.n..i * self.n + m]);
        }
        Self { n: m, data }
    }

    pub fn to_dmatrix(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(self.n, self.n, &self.data)
    }
}

/// Eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        *self.values.last().expect("empty spectrum")
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// One GUE draw of size `n` under the `a = 1/(2N)` scaling.
pub fn sample_gue<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(invalid("matrix size must be >= 1"));
    }
    let nf = n as f64;
    let diag = Normal::new(0.0, nf.sqrt()).expect("valid normal");
    let off = Normal::new(0.0, (nf / 2.0).sqrt()).expect("valid normal");
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        data[i * n + i] = Complex64::new(diag.sample(rng), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(off.sample(rng), off.sample(rng));
            data[i * n + j] = z;
            data[j * n + i] = z.conj();
        }
    }
    Ok(HermitianMatrix { n, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn samples_are_hermitian_and_reproducible() {
        let a = sample_gue(5, &mut rng::root(3)).unwrap();
        let b = sample_gue(5, &mut rng::root(3)).unwrap();
        assert_eq!(a, b);
        for i in 0..5 {
            assert_eq!(a.get(i, i).im, 0.0);
            for j in 0..5 {
                assert_eq!(a.get(i, j), a.get(j, i).conj());
            }
        }
        assert!(HermitianMatrix::from_rows(a.n(), a.data.clone()).is_ok());
    }

    #[test]
    fn rejects_non_hermitian_input() {
        assert!(HermitianMatrix::from_real(2, &[0.0, 1.0, 2.0, 0.0]).is_err());
        let bad = vec![Complex64::new(1.0, 0.5)];
        assert!(HermitianMatrix::from_rows(1, bad).is_err());
        assert!(sample_gue(0, &mut rng::root(1)).is_err());
    }

    #[test]
    fn single_entry_variance_is_n() {
        let mut r = rng::root(17);
        let m = 100_000;
        let xs: Vec<f64> = (0..m).map(|_| sample_gue(1, &mut r).unwrap().get(0, 0).re).collect();
        let mean = xs.iter().sum::<f64>() / m as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
        // standard error of the sample variance of a normal: σ²√(2/(m-1))
        let se = (2.0 / (m - 1) as f64).sqrt();
        assert!((var - 1.0).abs() < 3.0 * se, "var={var}");
    }

    #[test]
    fn entries_are_centred() {
        let mut r = rng::root(23);
        let m = 100_000;
        let mut sums = [Complex64::new(0.0, 0.0); 4];
        for _ in 0..m {
            let h = sample_gue(2, &mut r).unwrap();
            for (k, s) in sums.iter_mut().enumerate() {
                *s += h.get(k / 2, k % 2);
            }
        }
        // diagonal sd √2, off-diagonal component sd 1
        let se_diag = (2.0 / m as f64).sqrt();
        let se_off = (1.0 / m as f64).sqrt();
        for (k, s) in sums.iter().enumerate() {
            let mean = s / m as f64;
            let se = if k == 0 || k == 3 { se_diag } else { se_off };
            assert!(mean.re.abs() < 3.0 * se && mean.im.abs() < 3.0 * se, "entry {k}: {mean}");
        }
    }
}

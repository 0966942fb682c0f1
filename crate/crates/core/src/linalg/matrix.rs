use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use super::eigen::hermitian_eigenvalues;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            m.data[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        m
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[l * n..(l + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..exp {
            acc = acc.matmul(self);
        }
        acc
    }

    /// `self * self^*`.
    pub fn gram_outer(&self) -> Self {
        self.matmul(&self.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Operator 2-norm: square root of the largest eigenvalue of `A^* A`.
    pub fn operator_norm(&self) -> f64 {
        if self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
            return 0.0;
        }
        let gram = self.adjoint().matmul(self);
        let top = hermitian_eigenvalues(&gram)
            .into_iter()
            .fold(0.0f64, f64::max);
        top.max(0.0).sqrt()
    }

    /// Largest deviation from Hermitian symmetry, entrywise.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.data[i * n + j] - self.data[j * n + i].conj()).norm());
            }
        }
        worst
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let n = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
            .map(move |(idx, &z)| (idx / n, idx % n, z))
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

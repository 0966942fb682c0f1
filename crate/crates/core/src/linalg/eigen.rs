//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a
//! diagonal unitary, then applies the real symmetric Jacobi rotation that
//! zeroes it. Sweeps visit pivots in row-major order, so results are
//! deterministic.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

const MAX_SWEEPS: usize = 100;
const REL_TOL: f64 = 1e-15;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let mut a = h.clone();
    jacobi(&mut a, None);
    let n = a.dim();
    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn min_eigenvalue(h: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(h)[0]
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> HermitianEigen {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    jacobi(&mut a, Some(&mut v));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    HermitianEigen { values, vectors }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn jacobi(a: &mut ComplexMatrix, mut vectors: Option<&mut ComplexMatrix>) {
    let n = a.dim();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return;
    }
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(a);
        if off <= REL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let phase = apq / b;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * b);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let delta = phase.conj();
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = delta * -s;
                let g_qq = delta * c;
                rotate(a, p, q, [g_pp, g_pq, g_qp, g_qq]);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(app - t * b, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * b, 0.0);
                if let Some(v) = vectors.as_deref_mut() {
                    rotate_columns(v, p, q, [g_pp, g_pq, g_qp, g_qq]);
                }
            }
        }
    }
}

fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, g: [Complex64; 4]) {
    let [g_pp, g_pq, g_qp, g_qq] = g;
    let n = m.dim();
    let data = m.as_mut_slice();
    for k in 0..n {
        let kp = data[k * n + p];
        let kq = data[k * n + q];
        data[k * n + p] = kp * g_pp + kq * g_qp;
        data[k * n + q] = kp * g_pq + kq * g_qq;
    }
}

/// `A <- G^* A G` for the 2x2 unitary `G` acting on coordinates `p, q`.
fn rotate(m: &mut ComplexMatrix, p: usize, q: usize, g: [Complex64; 4]) {
    rotate_columns(m, p, q, g);
    let [g_pp, g_pq, g_qp, g_qq] = g;
    let n = m.dim();
    let data = m.as_mut_slice();
    for k in 0..n {
        let pk = data[p * n + k];
        let qk = data[q * n + k];
        data[p * n + k] = g_pp.conj() * pk + g_qp.conj() * qk;
        data[q * n + k] = g_pq.conj() * pk + g_qq.conj() * qk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn diagonal_spectrum() {
        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let vals = hermitian_eigenvalues(&d);
        for (got, want) in vals.iter().zip([1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn pauli_y() {
        let y = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]);
        let vals = hermitian_eigenvalues(&y);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_and_invariants() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (12, 4), (30, 5)] {
            let h = random_hermitian(n, seed);
            let eig = hermitian_eigen(&h);
            let lambda: Vec<Complex64> = eig.values.iter().map(|&x| c(x, 0.0)).collect();
            let rebuilt = &(&eig.vectors * &ComplexMatrix::diagonal(&lambda)) * &eig.vectors.adjoint();
            assert!((&rebuilt - &h).max_abs() < 1e-12, "n = {n}");
            let unit = &eig.vectors.adjoint() * &eig.vectors;
            assert!((&unit - &ComplexMatrix::identity(n)).max_abs() < 1e-12);
            let trace: f64 = (0..n).map(|i| h[(i, i)].re).sum();
            let sum: f64 = eig.values.iter().sum();
            assert!((trace - sum).abs() < 1e-11);
            let frob2: f64 = eig.values.iter().map(|x| x * x).sum();
            assert!((frob2 - h.frobenius_norm().powi(2)).abs() < 1e-10);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn rank_deficient_gram() {
        // x x^* for a rank-one x has a single nonzero eigenvalue
        let mut x = ComplexMatrix::zeros(4);
        x[(0, 1)] = c(1.0, 2.0);
        x[(2, 1)] = c(-0.5, 0.0);
        let vals = hermitian_eigenvalues(&x.gram_outer());
        assert!(vals[0].abs() < 1e-14 && vals[2].abs() < 1e-14);
        assert!((vals[3] - 5.25).abs() < 1e-12);
    }
}

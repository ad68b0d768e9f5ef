//! Small dense complex kernels for 2×2, 4×4 and 8×8 matrices.
//!
//! The Hermitian eigensolver is a cyclic complex Jacobi iteration. Each rotation first
//! removes the phase of the pivot `a_pq` and then applies the real symmetric Jacobi
//! rotation, so real symmetric input stays real throughout.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};
use thiserror::Error;

use crate::model::{HamiltonianMatrix, DIM};

/// Eigenvalues closer than this (relative to `max(1, ‖A‖_max)`) form one degenerate cluster.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Hermiticity tolerance accepted by [`eigh`], relative to `max(1, ‖A‖_max)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Singular values and square roots of Gram eigenvalues below this are treated as zero.
pub const CLAMP_TOL: f64 = 1e-14;

const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("unsupported matrix dimension {0} (expected 2, 4 or 8)")]
    Dimension(usize),
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix is not Hermitian: max |A - A†| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("temperature must be positive for a Gibbs state, got {0}")]
    NonPositiveTemperature(f64),
}

/// Dense row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<(), LinalgError> {
    match dim {
        2 | 4 | 8 => Ok(()),
        d => Err(LinalgError::Dimension(d)),
    }
}

impl ComplexMatrix {
    /// Panics on an unsupported dimension; use [`ComplexMatrix::from_vec`] for checked input.
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("ComplexMatrix dimension");
        Self {
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

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(LinalgError::Shape {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self, LinalgError> {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diag(values: &[f64]) -> Result<Self, LinalgError> {
        check_dim(values.len())?;
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Ok(m)
    }

    pub fn from_hamiltonian(h: &HamiltonianMatrix) -> Self {
        let mut m = Self::zeros(DIM);
        for (i, row) in h.entries().iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let mut m = Self::zeros(v.len());
        for i in 0..v.len() {
            for j in 0..v.len() {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A − A†|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Kronecker product; the result dimension must still be 2, 4 or 8.
    pub fn kron(&self, other: &Self) -> Self {
        let n = self.dim * other.dim;
        let mut m = Self::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        m[(i * other.dim + k, j * other.dim + l)] = self[(i, j)] * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Applies `f` to the eigenvalues of a Hermitian matrix.
    pub fn hermitian_map(&self, f: impl Fn(f64) -> f64) -> Result<Self, LinalgError> {
        let es = eigh(self)?;
        let mut out = Self::zeros(self.dim);
        for (k, &val) in es.values.iter().enumerate() {
            let w = f(val);
            if w == 0.0 {
                continue;
            }
            let v = es.vector(k);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    out[(i, j)] += v[i] * v[j].conj() * w;
                }
            }
        }
        Ok(out)
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

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    /// `max(1, ‖A‖_max)` of the decomposed matrix; scales the degeneracy tolerance.
    scale: f64,
}

impl EigenSystem {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    /// Groups indices of eigenvalues that agree within the degeneracy tolerance.
    pub fn degenerate_clusters(&self) -> Vec<Vec<usize>> {
        let tol = DEGENERACY_TOL * self.scale;
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for (k, &v) in self.values.iter().enumerate() {
            match clusters.last_mut() {
                Some(c) if (v - self.values[*c.last().unwrap()]).abs() <= tol => c.push(k),
                _ => clusters.push(vec![k]),
            }
        }
        clusters
    }

    /// `‖A − VΛV†‖_max`.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        let n = a.dim();
        let mut lambda = ComplexMatrix::zeros(n);
        for (i, &v) in self.values.iter().enumerate() {
            lambda[(i, i)] = Complex64::new(v, 0.0);
        }
        let recon = &(&self.vectors * &lambda) * &self.vectors.adjoint();
        a.max_abs_diff(&recon)
    }

    /// `‖V†V − I‖_max`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.vectors.dim();
        (&self.vectors.adjoint() * &self.vectors).max_abs_diff(&ComplexMatrix::identity(n))
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Eigenvalues come back ascending; equal values keep the order of the columns they
/// converged in. Each eigenvector is rephased so its largest-magnitude component (first
/// one on ties) is real and positive.
pub fn eigh(a: &ComplexMatrix) -> Result<EigenSystem, LinalgError> {
    let n = a.dim();
    let scale = a.max_abs().max(1.0);
    let deviation = a.hermiticity_error();
    if deviation > HERMITIAN_TOL * scale {
        return Err(LinalgError::NotHermitian { deviation });
    }

    // work on the exactly Hermitian part
    let mut m = a.clone();
    for i in 0..n {
        m[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * m.frobenius();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > threshold {
        return Err(LinalgError::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps column order on exact ties
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));

    let mut values = Vec::with_capacity(n);
    let mut vectors = ComplexMatrix::zeros(n);
    for (k, &col) in order.iter().enumerate() {
        values.push(m[(col, col)].re);
        let mut best = 0;
        let mut best_norm = 0.0;
        for i in 0..n {
            let r = v[(i, col)].norm();
            if r > best_norm + 1e-12 {
                best = i;
                best_norm = r;
            }
        }
        let pivot = v[(best, col)];
        let phase = if best_norm > 0.0 {
            pivot.conj() / best_norm
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            vectors[(i, k)] = v[(i, col)] * phase;
        }
        vectors[(best, k)] = Complex64::new(vectors[(best, k)].norm(), 0.0);
    }

    Ok(EigenSystem { values, vectors, scale })
}

/// One Jacobi rotation `A ← U†AU`, `V ← VU` annihilating `a_pq`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase that makes the pivot real positive: D = diag(1, e^{-iφ}) on (p, q)
    let e = apq.conj() / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s·e, c·e]]
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -e * s;
    let uqq = e * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi on the columns.
///
/// Small singular values come out with absolute accuracy near machine precision, which
/// `√eig(A·A†)` cannot give: there a rounding error δ in an eigenvalue near zero turns
/// into an error of order √δ.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    let n = a.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
    let norm_sqr = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&cols[p]);
                let beta = norm_sqr(&cols[q]);
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rephase column q so that the overlap is real and positive
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (head, tail) = cols.split_at_mut(q);
                for (xp, yq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (x, y) = (*xp, *yq * phase);
                    *xp = x * c - y * s;
                    *yq = x * s + y * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence(MAX_SWEEPS));
    }
    let mut values: Vec<f64> = cols.iter().map(|c| norm_sqr(c).sqrt()).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Sum of singular values; those below `CLAMP_TOL` count as zero.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(singular_values(a)?.into_iter().filter(|&x| x >= CLAMP_TOL).sum())
}

/// Thermal state `e^{−H/T}/Z` built in the eigenbasis with energies measured from the minimum.
pub fn gibbs_state(h: &HamiltonianMatrix, temperature: f64) -> Result<ComplexMatrix, LinalgError> {
    let es = eigh(&ComplexMatrix::from_hamiltonian(h))?;
    gibbs_from_eigensystem(&es, temperature)
}

pub fn boltzmann_weights(values: &[f64], temperature: f64) -> Result<Vec<f64>, LinalgError> {
    if !(temperature > 0.0) {
        return Err(LinalgError::NonPositiveTemperature(temperature));
    }
    let e_min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = values.iter().map(|&e| (-(e - e_min) / temperature).exp()).collect();
    let z: f64 = w.iter().sum();
    Ok(w.into_iter().map(|x| x / z).collect())
}

pub fn gibbs_from_eigensystem(es: &EigenSystem, temperature: f64) -> Result<ComplexMatrix, LinalgError> {
    let weights = boltzmann_weights(&es.values, temperature)?;
    let n = es.vectors.dim();
    let mut rho = ComplexMatrix::zeros(n);
    for (k, &w) in weights.iter().enumerate() {
        let v = es.vector(k);
        for i in 0..n {
            for j in 0..n {
                rho[(i, j)] += v[i] * v[j].conj() * w;
            }
        }
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, ModelParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let es = eigh(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(es.values, vec![1.0; 4]);
        assert_eq!(es.degenerate_clusters(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn diagonal_sorted_with_permutation_vectors() {
        let d = [1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0];
        let es = eigh(&ComplexMatrix::from_diag(&d).unwrap()).unwrap();
        assert_eq!(es.values, vec![-1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0]);
        // ties keep the original column order
        let cols: Vec<usize> = (0..8)
            .map(|k| (0..8).find(|&i| es.vectors[(i, k)].norm() == 1.0).unwrap())
            .collect();
        assert_eq!(cols, vec![1, 2, 4, 7, 0, 3, 5, 6]);
    }

    #[test]
    fn special_set_spectrum() {
        let p = ModelParams::special_set(1.0, 1.0, 0.0).unwrap();
        let es = eigh(&ComplexMatrix::from_hamiltonian(&build_hamiltonian(&p))).unwrap();
        let s5 = 5f64.sqrt();
        let expected = [-s5, -s5, -1.0, -1.0, 1.0, 1.0, s5, s5];
        for (v, e) in es.values.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{v} vs {e}");
        }
        assert_eq!(es.degenerate_clusters().len(), 4);
    }

    #[test]
    fn complex_hermitian_2x2() {
        let a = ComplexMatrix::from_vec(2, vec![c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(2.0, 0.0)]).unwrap();
        let es = eigh(&a).unwrap();
        assert!((es.values[0] - 1.0).abs() < 1e-14);
        assert!((es.values[1] - 3.0).abs() < 1e-14);
        assert!(es.residual(&a) < 1e-14);
        for k in 0..2 {
            let v = es.vector(k);
            let top = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
            let big = v.iter().find(|x| x.norm() >= top - 1e-12).unwrap();
            assert!(big.im.abs() < 1e-15 && big.re > 0.0);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(eigh(&a), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn rejects_bad_dimension() {
        assert_eq!(
            ComplexMatrix::from_real(3, &[0.0; 9]).unwrap_err(),
            LinalgError::Dimension(3)
        );
    }

    #[test]
    fn trace_norm_basics() {
        assert!((trace_norm(&ComplexMatrix::identity(4)).unwrap() - 4.0).abs() < 1e-14);
        let d = ComplexMatrix::from_diag(&[1.0, -2.0]).unwrap();
        assert!((trace_norm(&d).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn gibbs_limits() {
        let p = ModelParams::new(2.0, 0.3, -0.2, 0.5, 0.7, 0.0).unwrap();
        let h = build_hamiltonian(&p);
        let rho = gibbs_state(&h, 2e6).unwrap();
        let flat = ComplexMatrix::identity(8).scale(c(0.125, 0.0));
        assert!(rho.max_abs_diff(&flat) <= 1e-5);
        assert!(matches!(
            gibbs_state(&h, 0.0),
            Err(LinalgError::NonPositiveTemperature(_))
        ));
    }

    #[test]
    fn gibbs_commuting_case() {
        let p = ModelParams::new(2.0, 0.3, -0.2, 0.0, 0.0, 0.0).unwrap();
        let h = build_hamiltonian(&p);
        let t = 0.7;
        let rho = gibbs_state(&h, t).unwrap();
        let diag: Vec<f64> = (0..8).map(|i| h.get(i, i)).collect();
        let w = boltzmann_weights(&diag, t).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { w[i] } else { 0.0 };
                assert!((rho[(i, j)] - c(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn gibbs_shift_invariant() {
        let p = ModelParams::new(1.3, 0.4, 0.1, 0.6, -0.3, 0.0).unwrap();
        let h = build_hamiltonian(&p);
        let a = gibbs_state(&h, 0.4).unwrap();
        let b = gibbs_state(&h.shifted(3.5), 0.4).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-13);
    }
}

//! Dense complex matrix kernels.
//!
//! Everything here is written against square `ComplexMatrix` blocks of
//! desk scale (a few thousand rows at most, a few hundred in practice).
//! The two factorizations are Jacobi methods: a one-sided Jacobi SVD
//! that orthogonalizes columns, and a two-sided Jacobi eigensolver for
//! hermitian input. Jacobi is slower than blocked Householder methods
//! but delivers small singular values to high relative accuracy, which
//! the downstream reconstruction budget of 1e-10 depends on.

use crate::tol;
pub use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix data has {got} entries, expected {expected} for dimension {dim}")]
    ShapeMismatch { dim: usize, expected: usize, got: usize },
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix contains a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("matrix is not hermitian: deviation {deviation:e} exceeds {allowed:e}")]
    NotHermitian { deviation: f64, allowed: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} below -{allowed:e}")]
    NotPositive { eigenvalue: f64, allowed: f64 },
    #[error("scalar function does not fix zero: f(0) = {0:e}")]
    BadScalarFunction(f64),
    #[error("scalar function produced a non-finite value at eigenvalue {0:e}")]
    NonFiniteFunctionValue(f64),
    #[error("{0} failed to converge")]
    NoConvergence(&'static str),
}

const MAX_SWEEPS: usize = 64;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != dim * dim {
            return Err(LinalgError::ShapeMismatch {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        let m = ComplexMatrix { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::ShapeMismatch {
                    dim,
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * dim + i] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn check_finite(&self) -> Result<(), LinalgError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self.get(i, j);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(LinalgError::NonFinite(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch(self.dim, other.dim));
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix { dim: self.dim, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch(self.dim, other.dim));
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(ComplexMatrix { dim: self.dim, data })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Build a matrix from orthonormal columns, padding missing ones with zero.
    pub fn from_columns(dim: usize, cols: &[Vec<Complex64>]) -> Self {
        let mut m = Self::zeros(dim);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }
}

/// a = left * diag(values) * right^*. Values are sorted descending and
/// the factors are unitary.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub values: Vec<f64>,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

/// a = vectors * diag(values) * vectors^*. Values sorted descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Jacobi rotation diagonalizing [[app, apq], [conj(apq), aqq]].
/// Returns (c, s, phase) with phase = apq / |apq|; the unitary is
/// [[c, -s * phase], [s * conj(phase), c]] acting on columns.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let absg = apq.norm();
    let phase = apq / absg;
    let tau = (app - aqq) / (2.0 * absg);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, phase)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// One-sided Jacobi SVD. Orthogonalizes column pairs of a working copy
/// until every pair passes the relative threshold, then reads singular
/// values off as column norms. Column norms survive the rotations
/// exactly in the Gram sense, so small singular values keep their
/// relative accuracy.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult, LinalgError> {
    a.check_finite()?;
    let n = a.dim;
    if n == 0 {
        return Ok(SvdResult {
            values: vec![],
            left: ComplexMatrix::zeros(0),
            right: ComplexMatrix::zeros(0),
        });
    }
    // Columns of the working copy and of the accumulated right factor.
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut col = vec![Complex64::zero(); n];
            col[j] = Complex64::new(1.0, 0.0);
            col
        })
        .collect();

    // Columns whose squared norm falls below the global noise floor
    // carry only rounding residue: any singular value they could hold
    // is under EPS * ||A||_F, which the rank floor below discards
    // anyway. Rotating them cycles forever, because rotations against
    // full-size columns keep re-injecting EPS-level correlation into
    // them, so they are excluded from the sweep instead. The Frobenius
    // norm is invariant under the rotations, so the floor is computed
    // once.
    let fro2: f64 = (0..n).map(|j| norm_sqr(&w[j])).sum();
    let noise2 = fro2 * (f64::EPSILON * f64::EPSILON);

    // Convergence tolerance for the normalized correlation of a column
    // pair. Bare machine epsilon is unreachable: near orthogonality the
    // computed rotation can round to an update too small to change the
    // columns while the measured correlation stays a hair above EPS, a
    // floating-point fixed point. sqrt(n) * EPS is the standard Jacobi
    // stopping level and keeps far more accuracy than any consumer of
    // these values needs.
    let tol = (n as f64).sqrt() * f64::EPSILON;

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                if alpha <= noise2 || beta <= noise2 {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = jacobi_rotation(alpha, beta, gamma);
                let sp = phase.conj() * s;
                let sq = phase * s;
                for i in 0..n {
                    let wp = w[p][i];
                    let wq = w[q][i];
                    w[p][i] = c * wp + sp * wq;
                    w[q][i] = -sq * wp + c * wq;
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = c * vp + sp * vq;
                    v[q][i] = -sq * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(LinalgError::NoConvergence("one-sided jacobi svd"));
        }
    }

    let sigma: Vec<f64> = (0..n).map(|j| norm_sqr(&w[j]).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());

    let values: Vec<f64> = order.iter().map(|&j| sigma[j]).collect();
    let scale = values.first().copied().unwrap_or(0.0);
    let rank_floor = scale * f64::EPSILON * n as f64;

    let mut left_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        if values[k] > rank_floor && values[k] > 0.0 {
            let inv = 1.0 / values[k];
            left_cols.push(w[j].iter().map(|z| z * inv).collect());
        } else {
            // Deficient direction; fill in afterwards from the complement.
            left_cols.push(vec![Complex64::zero(); n]);
        }
    }
    complete_orthonormal(&mut left_cols, n);

    let right_cols: Vec<Vec<Complex64>> = order.iter().map(|&j| v[j].clone()).collect();
    Ok(SvdResult {
        values,
        left: ComplexMatrix::from_columns(n, &left_cols),
        right: ComplexMatrix::from_columns(n, &right_cols),
    })
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(svd(a)?.values.first().copied().unwrap_or(0.0))
}

/// Replace zero columns with unit vectors orthogonal to the nonzero
/// ones, so the collection becomes an orthonormal basis.
pub fn complete_orthonormal(cols: &mut [Vec<Complex64>], dim: usize) {
    fn residual(cand: &mut [Complex64], cols: &[Vec<Complex64>], dim: usize) -> f64 {
        // Two passes of Gram-Schmidt against every kept column.
        for _ in 0..2 {
            for col in cols.iter() {
                if norm_sqr(col) < 0.25 {
                    continue;
                }
                let proj = dot(col, cand);
                for i in 0..dim {
                    cand[i] -= proj * col[i];
                }
            }
        }
        norm_sqr(cand)
    }
    fn unit(j: usize, dim: usize) -> Vec<Complex64> {
        let mut e = vec![Complex64::zero(); dim];
        e[j] = Complex64::new(1.0, 0.0);
        e
    }

    let missing: Vec<usize> = (0..cols.len())
        .filter(|&j| norm_sqr(&cols[j]) < 0.25)
        .collect();
    let mut cursor = 0usize;
    for slot in missing {
        let mut chosen: Option<Vec<Complex64>> = None;
        // Quick path: the first coordinate vector keeping most of its
        // mass. Hits immediately when the complement is aligned with
        // coordinate directions (diagonal and masked-column cases).
        while cursor < dim {
            let mut cand = unit(cursor, dim);
            cursor += 1;
            if residual(&mut cand, cols, dim) > 0.25 {
                chosen = Some(cand);
                break;
            }
        }
        // Spread complement: no single coordinate dominates, so take
        // the coordinate vector with the largest residual. For m open
        // slots the residual masses sum to m over all coordinates, so
        // the best one keeps at least 1/dim.
        if chosen.is_none() {
            let mut best_ns = -1.0;
            for j in 0..dim {
                let mut cand = unit(j, dim);
                let ns = residual(&mut cand, cols, dim);
                if ns > best_ns {
                    best_ns = ns;
                    chosen = Some(cand);
                }
            }
            assert!(
                best_ns > 1e-8,
                "no coordinate vector escapes the kept span"
            );
        }
        let mut cand = chosen.unwrap();
        let inv = 1.0 / norm_sqr(&cand).sqrt();
        for z in cand.iter_mut() {
            *z *= inv;
        }
        cols[slot] = cand;
    }
}

/// Orthonormalize a list of columns by modified Gram-Schmidt, dropping
/// columns whose residual falls below drop_tol.
pub fn orthonormalize(cols: &[Vec<Complex64>], dim: usize, drop_tol: f64) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for col in cols {
        let mut cand = col.clone();
        // Two passes of MGS for stable orthogonality.
        for _ in 0..2 {
            for kept in &out {
                let proj = dot(kept, &cand);
                for i in 0..dim {
                    cand[i] -= proj * kept[i];
                }
            }
        }
        let ns = norm_sqr(&cand).sqrt();
        if ns > drop_tol {
            let inv = 1.0 / ns;
            for z in cand.iter_mut() {
                *z *= inv;
            }
            out.push(cand);
        }
    }
    out
}

fn hermitian_deviation(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    operator_norm(&a.sub(&a.adjoint())?)
}

/// Eigendecomposition of a hermitian matrix by cyclic two-sided Jacobi.
/// Input must be hermitian within 1e-12 relative; the decomposition is
/// computed on the hermitian average (a + a^*)/2.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    a.check_finite()?;
    let n = a.dim;
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: ComplexMatrix::zeros(0),
        });
    }
    let norm_a = operator_norm(a)?;
    let allowed = tol::STRUCTURAL * norm_a.max(1.0);
    let deviation = hermitian_deviation(a)?;
    if deviation > allowed {
        return Err(LinalgError::NotHermitian { deviation, allowed });
    }

    let half = Complex64::new(0.5, 0.0);
    let mut h = a.add(&a.adjoint())?.scale(half);
    let mut v = ComplexMatrix::identity(n);
    let scale = h.frobenius_norm().max(1.0);
    let thresh = f64::EPSILON * scale / n as f64;

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = h.get(p, q);
                if apq.norm() <= thresh {
                    continue;
                }
                rotated = true;
                let app = h.get(p, p).re;
                let aqq = h.get(q, q).re;
                let (c, s, phase) = jacobi_rotation(app, aqq, apq);
                let sp = phase.conj() * s;
                let sq = phase * s;
                // h <- U^* h U, columns first then rows.
                for i in 0..n {
                    let hip = h.get(i, p);
                    let hiq = h.get(i, q);
                    h.set(i, p, c * hip + sp * hiq);
                    h.set(i, q, -sq * hip + c * hiq);
                }
                for j in 0..n {
                    let hpj = h.get(p, j);
                    let hqj = h.get(q, j);
                    h.set(p, j, c * hpj + sq * hqj);
                    h.set(q, j, -sp * hpj + c * hqj);
                }
                // Clean the pair that the rotation annihilates.
                h.set(p, q, Complex64::zero());
                h.set(q, p, Complex64::zero());
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, c * vip + sp * viq);
                    v.set(i, q, -sq * vip + c * viq);
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(LinalgError::NoConvergence("two-sided jacobi eigensolver"));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| h.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let cols: Vec<Vec<Complex64>> = order.iter().map(|&j| v.column(j)).collect();
    Ok(HermitianEigen {
        values,
        vectors: ComplexMatrix::from_columns(n, &cols),
    })
}

/// The absolute value |a| = (a^* a)^(1/2), computed from the SVD as
/// right * diag(values) * right^*.
pub fn absolute_value(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let f = svd(a)?;
    let n = a.dim;
    let mut scaled = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            scaled.set(i, j, f.right.get(i, j) * f.values[j]);
        }
    }
    scaled.mul(&f.right.adjoint())
}

/// Functional calculus for a positive matrix: apply f to the spectrum.
/// Requires f(0) = 0 so the value extends the convention on singular
/// values; negative eigenvalues within the structural budget are
/// clamped to zero before f is applied.
pub fn apply_scalar_function(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix, LinalgError> {
    let f0 = f(0.0);
    if f0.abs() != 0.0 {
        return Err(LinalgError::BadScalarFunction(f0));
    }
    let eig = hermitian_eigen(a)?;
    let scale = eig
        .values
        .iter()
        .fold(0.0f64, |m, &x| m.max(x.abs()))
        .max(1.0);
    let allowed = tol::STRUCTURAL * scale;
    if let Some(&min) = eig
        .values
        .iter()
        .min_by(|a, b| a.partial_cmp(b).unwrap())
    {
        if min < -allowed {
            return Err(LinalgError::NotPositive {
                eigenvalue: min,
                allowed,
            });
        }
    }
    let n = a.dim;
    let mut scaled = ComplexMatrix::zeros(n);
    for j in 0..n {
        let lambda = eig.values[j].max(0.0);
        let fl = f(lambda);
        if !fl.is_finite() {
            return Err(LinalgError::NonFiniteFunctionValue(lambda));
        }
        for i in 0..n {
            scaled.set(i, j, eig.vectors.get(i, j) * fl);
        }
    }
    scaled.mul(&eig.vectors.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat(rows: &[&[(f64, f64)]]) -> ComplexMatrix {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&(re, im)| c(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    fn reconstruction_error_svd(a: &ComplexMatrix, f: &SvdResult) -> f64 {
        let n = a.dim();
        let mut mid = ComplexMatrix::zeros(n);
        for j in 0..n {
            for i in 0..n {
                mid.set(i, j, f.left.get(i, j) * f.values[j]);
            }
        }
        let rebuilt = mid.mul(&f.right.adjoint()).unwrap();
        operator_norm(&a.sub(&rebuilt).unwrap()).unwrap()
    }

    fn unitary_error(u: &ComplexMatrix) -> f64 {
        let n = u.dim();
        let g = u.adjoint().mul(u).unwrap();
        operator_norm(&g.sub(&ComplexMatrix::identity(n)).unwrap()).unwrap()
    }

    #[test]
    fn svd_of_nilpotent_jordan_block() {
        // [[0, 2], [0, 0]] has singular values (2, 0).
        let a = mat(&[&[(0.0, 0.0), (2.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        let f = svd(&a).unwrap();
        assert!((f.values[0] - 2.0).abs() < 1e-14);
        assert!(f.values[1].abs() < 1e-14);
        assert!(reconstruction_error_svd(&a, &f) < 1e-12);
        assert!(unitary_error(&f.left) < 1e-12);
        assert!(unitary_error(&f.right) < 1e-12);
        assert!((operator_norm(&a).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn svd_values_are_sorted_and_nonnegative() {
        let a = mat(&[
            &[(1.0, 0.5), (0.0, -2.0), (3.0, 0.0)],
            &[(0.0, 0.0), (0.5, 0.5), (1.0, -1.0)],
            &[(2.0, 1.0), (0.0, 0.0), (0.25, 0.0)],
        ]);
        let f = svd(&a).unwrap();
        for w in f.values.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert!(f.values.iter().all(|&s| s >= 0.0));
        assert!(reconstruction_error_svd(&a, &f) < 1e-12);
    }

    #[test]
    fn eigen_of_pauli_like_matrix() {
        // [[1, i], [-i, 1]] has eigenvalues (2, 0).
        let a = mat(&[&[(1.0, 0.0), (0.0, 1.0)], &[(0.0, -1.0), (1.0, 0.0)]]);
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0] - 2.0).abs() < 1e-13);
        assert!(e.values[1].abs() < 1e-13);
        // Reconstruction.
        let n = a.dim();
        let mut mid = ComplexMatrix::zeros(n);
        for j in 0..n {
            for i in 0..n {
                mid.set(i, j, e.vectors.get(i, j) * e.values[j]);
            }
        }
        let rebuilt = mid.mul(&e.vectors.adjoint()).unwrap();
        assert!(operator_norm(&a.sub(&rebuilt).unwrap()).unwrap() < 1e-12);
        assert!(unitary_error(&e.vectors) < 1e-12);
    }

    #[test]
    fn eigen_rejects_non_hermitian_input() {
        let a = mat(&[&[(0.0, 0.0), (2.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        assert!(matches!(
            hermitian_eigen(&a),
            Err(LinalgError::NotHermitian { .. })
        ));
    }

    #[test]
    fn absolute_value_of_nilpotent_jordan_block() {
        // |[[0,2],[0,0]]| = diag(0, 2).
        let a = mat(&[&[(0.0, 0.0), (2.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        let abs_a = absolute_value(&a).unwrap();
        let expect = ComplexMatrix::from_real_diag(&[0.0, 2.0]);
        assert!(operator_norm(&abs_a.sub(&expect).unwrap()).unwrap() < 1e-13);
    }

    #[test]
    fn absolute_value_preserves_singular_values() {
        let a = mat(&[
            &[(0.3, -1.0), (2.0, 0.1), (0.0, 0.0)],
            &[(1.0, 1.0), (0.0, 0.5), (-1.0, 0.0)],
            &[(0.2, 0.0), (0.7, -0.7), (1.5, 0.25)],
        ]);
        let sa = svd(&a).unwrap().values;
        let sb = svd(&absolute_value(&a).unwrap()).unwrap().values;
        for (x, y) in sa.iter().zip(sb.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn scalar_function_square_root_on_diagonal() {
        let a = ComplexMatrix::from_real_diag(&[4.0, 1.0]);
        let r = apply_scalar_function(&a, |t| t.sqrt()).unwrap();
        let expect = ComplexMatrix::from_real_diag(&[2.0, 1.0]);
        assert!(operator_norm(&r.sub(&expect).unwrap()).unwrap() < 1e-13);
    }

    #[test]
    fn scalar_function_rejects_offset_and_negative_input() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        assert!(matches!(
            apply_scalar_function(&a, |t| t + 1.0),
            Err(LinalgError::BadScalarFunction(_))
        ));
        let neg = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        assert!(matches!(
            apply_scalar_function(&neg, |t| t),
            Err(LinalgError::NotPositive { .. })
        ));
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let data = vec![c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            ComplexMatrix::new(2, data),
            Err(LinalgError::NonFinite(0, 0))
        ));
    }

    #[test]
    fn svd_handles_rank_deficiency_with_orthonormal_left_factor() {
        // Rank one 3x3.
        let a = mat(&[
            &[(1.0, 0.0), (2.0, 0.0), (0.0, 1.0)],
            &[(2.0, 0.0), (4.0, 0.0), (0.0, 2.0)],
            &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        ]);
        let f = svd(&a).unwrap();
        assert!(f.values[1] < 1e-12 && f.values[2] < 1e-12);
        assert!(unitary_error(&f.left) < 1e-12);
        assert!(reconstruction_error_svd(&a, &f) < 1e-12);
    }
}

//! Affine-invariant geometry of the SPD cone: spectral matrix functions,
//! exponential/logarithm maps, geodesics, the Riemannian distance, and the
//! tangent-space vectorization.
//!
//! A weighted network enters this module as a positive-definite matrix (see
//! [`crate::graph::approx_laplacian`]) and is treated as a point [`SPDPoint`]
//! on the curved manifold rather than an element of a vector space. All
//! operations are pure; points are immutable after construction and cache
//! their eigendecomposition plus the matrix square roots that every map needs.

use alloc::vec::Vec;
use core::fmt;

use crate::matrix::{self, Matrix, SymEigen};
use crate::scalar;

/// Smallest admissible eigenvalue of a positive-definite point. Inputs at or
/// below the floor are rejected rather than clamped so that modeling errors
/// surface instead of being silently absorbed.
pub const DEFAULT_EIG_FLOOR: f64 = 1e-12;

/// Relative asymmetry above which a would-be symmetric input is rejected.
pub const SYMMETRY_RTOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum ManifoldError {
    /// Asymmetry exceeded `SYMMETRY_RTOL * frobenius_norm`.
    NonSymmetric {
        asymmetry: f64,
        norm: f64,
    },
    /// An eigenvalue at or below the floor where positive-definiteness is required.
    NotPositiveDefinite {
        min_eigenvalue: f64,
        floor: f64,
    },
    DimMismatch {
        left: usize,
        right: usize,
    },
    EmptyCohort,
    CohortTooSmall {
        count: usize,
    },
    NoConvergence {
        iterations: usize,
        grad_norm: f64,
    },
    /// Internal eigensolver failure; practically unreachable for finite input.
    EigenFailure,
}

impl fmt::Display for ManifoldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldError::NonSymmetric { asymmetry, norm } => write!(
                f,
                "matrix is not symmetric: max |a_ij - a_ji| = {asymmetry:e} (norm {norm:e})"
            ),
            ManifoldError::NotPositiveDefinite {
                min_eigenvalue,
                floor,
            } => write!(
                f,
                "matrix is not positive-definite: min eigenvalue {min_eigenvalue:e} <= floor {floor:e}"
            ),
            ManifoldError::DimMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            ManifoldError::EmptyCohort => write!(f, "cohort is empty"),
            ManifoldError::CohortTooSmall { count } => {
                write!(f, "cohort of {count} points is too small (need at least 2)")
            }
            ManifoldError::NoConvergence {
                iterations,
                grad_norm,
            } => write!(
                f,
                "no convergence after {iterations} iterations (gradient norm {grad_norm:e})"
            ),
            ManifoldError::EigenFailure => write!(f, "eigendecomposition failed to converge"),
        }
    }
}

impl core::error::Error for ManifoldError {}

impl From<matrix::EigenFailure> for ManifoldError {
    fn from(_: matrix::EigenFailure) -> Self {
        ManifoldError::EigenFailure
    }
}

pub type Result<T> = core::result::Result<T, ManifoldError>;

/// Spectral decomposition of a symmetric matrix: `rotation * diag(values) *
/// rotation^T` reconstructs the input, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub rotation: Matrix,
    pub values: Vec<f64>,
}

/// Eigendecomposition of a symmetric matrix, with the symmetry check that
/// every spectral matrix function in this module relies on.
pub fn spd_eig(s: &Matrix) -> Result<EigenPair> {
    check_symmetric(s)?;
    let mut sym = s.clone();
    sym.symmetrize();
    let eig = matrix::sym_eigen(&sym)?;
    Ok(EigenPair {
        rotation: eig.vectors,
        values: eig.values,
    })
}

fn check_symmetric(s: &Matrix) -> Result<()> {
    assert!(s.is_square(), "expected a square matrix");
    let asym = s.asymmetry();
    let norm = s.frobenius_norm();
    if asym > SYMMETRY_RTOL * norm {
        return Err(ManifoldError::NonSymmetric {
            asymmetry: asym,
            norm,
        });
    }
    Ok(())
}

/// Scalar functions lifted to symmetric matrices through the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFn {
    /// Entrywise power of the eigenvalues; fractional or negative exponents
    /// require a positive-definite input.
    Power(f64),
    Log,
    Exp,
}

/// Applies `f` spectrally: `Q diag(f(lambda)) Q^T`.
pub fn spd_fn(s: &Matrix, f: MatrixFn) -> Result<Matrix> {
    let eig = spd_eig(s)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    let needs_pd = match f {
        MatrixFn::Log => true,
        MatrixFn::Power(p) => p != scalar::trunc(p) || p < 0.0,
        MatrixFn::Exp => false,
    };
    if needs_pd && min <= DEFAULT_EIG_FLOOR {
        return Err(ManifoldError::NotPositiveDefinite {
            min_eigenvalue: min,
            floor: DEFAULT_EIG_FLOOR,
        });
    }
    let mapped: Vec<f64> = eig
        .values
        .iter()
        .map(|&l| match f {
            MatrixFn::Power(p) => scalar::powf(l, p),
            MatrixFn::Log => scalar::ln(l),
            MatrixFn::Exp => scalar::exp(l),
        })
        .collect();
    Ok(Matrix::from_spectrum(&eig.rotation, &mapped))
}

/// A point on the SPD manifold. Exactly symmetric, eigenvalues above the
/// floor; carries its eigendecomposition and both matrix square roots.
#[derive(Debug, Clone)]
pub struct SPDPoint {
    entries: Matrix,
    eig: SymEigen,
    sqrt: Matrix,
    inv_sqrt: Matrix,
    eig_floor: f64,
}

impl SPDPoint {
    /// Validates symmetry (rejecting above [`SYMMETRY_RTOL`], then
    /// symmetrizing exactly) and positive-definiteness against the default
    /// eigenvalue floor.
    pub fn new(entries: Matrix) -> Result<Self> {
        Self::with_floor(entries, DEFAULT_EIG_FLOOR)
    }

    pub fn with_floor(entries: Matrix, eig_floor: f64) -> Result<Self> {
        check_symmetric(&entries)?;
        let mut sym = entries;
        sym.symmetrize();
        let eig = matrix::sym_eigen(&sym)?;
        let min = eig.values.first().copied().unwrap_or(0.0);
        if min <= eig_floor {
            return Err(ManifoldError::NotPositiveDefinite {
                min_eigenvalue: min,
                floor: eig_floor,
            });
        }
        let half: Vec<f64> = eig.values.iter().map(|&l| scalar::sqrt(l)).collect();
        let inv_half: Vec<f64> = half.iter().map(|&h| 1.0 / h).collect();
        let sqrt = Matrix::from_spectrum(&eig.vectors, &half);
        let inv_sqrt = Matrix::from_spectrum(&eig.vectors, &inv_half);
        Ok(SPDPoint {
            entries: sym,
            eig,
            sqrt,
            inv_sqrt,
            eig_floor,
        })
    }

    /// Identity point of the given dimension.
    pub fn identity(dim: usize) -> Self {
        SPDPoint::new(Matrix::identity(dim)).expect("identity is SPD")
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    pub fn eigen_pair(&self) -> EigenPair {
        EigenPair {
            rotation: self.eig.vectors.clone(),
            values: self.eig.values.clone(),
        }
    }

    pub fn eig_floor(&self) -> f64 {
        self.eig_floor
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// The principal square root.
    pub fn sqrt_matrix(&self) -> &Matrix {
        &self.sqrt
    }

    /// Inverse of the principal square root.
    pub fn inv_sqrt_matrix(&self) -> &Matrix {
        &self.inv_sqrt
    }

    pub fn inverse(&self) -> SPDPoint {
        let inv: Vec<f64> = self.eig.values.iter().map(|&l| 1.0 / l).collect();
        let entries = Matrix::from_spectrum(&self.eig.vectors, &inv);
        SPDPoint::with_floor(entries, self.eig_floor).expect("inverse of SPD is SPD")
    }

    /// Congruence by the whitening transform of `self`:
    /// `self^{-1/2} * m * self^{-1/2}`, symmetrized.
    pub(crate) fn whiten(&self, m: &Matrix) -> Matrix {
        let mut w = self.inv_sqrt.mul(m).mul(&self.inv_sqrt);
        w.symmetrize();
        w
    }

    /// Inverse of [`Self::whiten`]: `self^{1/2} * m * self^{1/2}`, symmetrized.
    pub(crate) fn unwhiten(&self, m: &Matrix) -> Matrix {
        let mut u = self.sqrt.mul(m).mul(&self.sqrt);
        u.symmetrize();
        u
    }
}

/// A tangent vector: a symmetric matrix attached to some base point.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    entries: Matrix,
}

impl TangentVector {
    pub fn new(entries: Matrix) -> Result<Self> {
        check_symmetric(&entries)?;
        let mut sym = entries;
        sym.symmetrize();
        Ok(TangentVector { entries: sym })
    }

    pub fn zero(dim: usize) -> Self {
        TangentVector {
            entries: Matrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries.frobenius_norm()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// Whether the vector lies in the trace-zero tangent space of the
    /// trace-normalized submanifold. Only meaningful when that mode is active.
    pub fn is_traceless(&self, tol: f64) -> bool {
        scalar::abs(self.trace()) <= tol
    }

    pub fn scale(&self, c: f64) -> TangentVector {
        TangentVector {
            entries: self.entries.scale(c),
        }
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(ManifoldError::DimMismatch { left: a, right: b });
    }
    Ok(())
}

/// Eigenvalues of the whitened matrix `rho0^{-1/2} rho1 rho0^{-1/2}` (equal to
/// the eigenvalues of `rho0^{-1} rho1`), ascending. Shared backbone of the
/// distance, log map, and geodesic.
fn relative_eigenvalues(rho0: &SPDPoint, rho1: &SPDPoint) -> Result<Vec<f64>> {
    check_dims(rho0.dim(), rho1.dim())?;
    let w = rho0.whiten(rho1.entries());
    Ok(matrix::sym_eigenvalues(&w)?)
}

/// Geodesic shot from `rho` with tangent `chi`, evaluated at unit time:
/// `rho^{1/2} exp(rho^{-1/2} chi rho^{-1/2}) rho^{1/2}`.
pub fn exp_map(rho: &SPDPoint, chi: &TangentVector) -> Result<SPDPoint> {
    check_dims(rho.dim(), chi.dim())?;
    let whitened = rho.whiten(chi.entries());
    let eig = matrix::sym_eigen(&whitened)?;
    let exped: Vec<f64> = eig.values.iter().map(|&l| scalar::exp(l)).collect();
    let e = Matrix::from_spectrum(&eig.vectors, &exped);
    SPDPoint::with_floor(rho.unwhiten(&e), rho.eig_floor())
}

/// Unique tangent vector at `rho0` whose geodesic reaches `rho1` at unit
/// time: `rho0^{1/2} log(rho0^{-1/2} rho1 rho0^{-1/2}) rho0^{1/2}`.
pub fn log_map(rho0: &SPDPoint, rho1: &SPDPoint) -> Result<TangentVector> {
    check_dims(rho0.dim(), rho1.dim())?;
    let w = rho0.whiten(rho1.entries());
    let eig = matrix::sym_eigen(&w)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min <= 0.0 {
        return Err(ManifoldError::NotPositiveDefinite {
            min_eigenvalue: min,
            floor: 0.0,
        });
    }
    let logged: Vec<f64> = eig.values.iter().map(|&l| scalar::ln(l)).collect();
    let l = Matrix::from_spectrum(&eig.vectors, &logged);
    TangentVector::new(rho0.unwhiten(&l))
}

/// Point at parameter `t` along the unique geodesic from `rho0` to `rho1`.
/// `t = 0` gives `rho0`, `t = 1` gives `rho1`.
pub fn geodesic(rho0: &SPDPoint, rho1: &SPDPoint, t: f64) -> Result<SPDPoint> {
    check_dims(rho0.dim(), rho1.dim())?;
    let w = rho0.whiten(rho1.entries());
    let eig = matrix::sym_eigen(&w)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min <= 0.0 {
        return Err(ManifoldError::NotPositiveDefinite {
            min_eigenvalue: min,
            floor: 0.0,
        });
    }
    let powered: Vec<f64> = eig.values.iter().map(|&l| scalar::powf(l, t)).collect();
    let wt = Matrix::from_spectrum(&eig.vectors, &powered);
    SPDPoint::with_floor(rho0.unwhiten(&wt), rho0.eig_floor())
}

/// Velocity of the identity-based geodesic `t -> exp(t chi)`:
/// `exp(t chi)^{1/2} chi exp(t chi)^{1/2}`, computed spectrally as
/// `Q diag(lambda_i e^{t lambda_i}) Q^T`.
pub fn geodesic_speed(chi: &TangentVector, t: f64) -> Result<Matrix> {
    let eig = matrix::sym_eigen(chi.entries())?;
    let mapped: Vec<f64> = eig.values.iter().map(|&l| l * scalar::exp(t * l)).collect();
    Ok(Matrix::from_spectrum(&eig.vectors, &mapped))
}

/// Geodesic (affine-invariant) distance:
/// `sqrt(sum_i ln^2 lambda_i)` over the eigenvalues of `rho0^{-1} rho1`.
pub fn riem_dist(rho0: &SPDPoint, rho1: &SPDPoint) -> Result<f64> {
    let rel = relative_eigenvalues(rho0, rho1)?;
    let min = rel.first().copied().unwrap_or(0.0);
    if min <= 0.0 {
        return Err(ManifoldError::NotPositiveDefinite {
            min_eigenvalue: min,
            floor: 0.0,
        });
    }
    let sum: f64 = rel
        .iter()
        .map(|&l| {
            let x = scalar::ln(l);
            x * x
        })
        .sum();
    Ok(scalar::sqrt(sum))
}

/// Euclidean baseline: Frobenius norm of the difference.
pub fn frobenius_dist(m0: &Matrix, m1: &Matrix) -> Result<f64> {
    check_dims(m0.rows(), m1.rows())?;
    check_dims(m0.cols(), m1.cols())?;
    Ok(m0.sub(m1).frobenius_norm())
}

/// Length of the vectorization of a symmetric `n x n` matrix.
pub fn vec_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Isometric flattening of a symmetric matrix: row-major upper triangle with
/// off-diagonal entries scaled by sqrt(2), so the vector 2-norm equals the
/// matrix Frobenius norm.
pub fn vec_at_identity(a: &Matrix) -> Result<Vec<f64>> {
    check_symmetric(a)?;
    let n = a.rows();
    let sqrt2 = scalar::sqrt(2.0);
    let mut out = Vec::with_capacity(vec_dim(n));
    for i in 0..n {
        for j in i..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            out.push(if i == j { v } else { sqrt2 * v });
        }
    }
    Ok(out)
}

/// Tangent coordinates of `rho` around `mean`:
/// `vec_at_identity(log(mean^{-1/2} rho mean^{-1/2}))`. The 2-norm of the
/// result equals `riem_dist(mean, rho)`.
pub fn vec_at(mean: &SPDPoint, rho: &SPDPoint) -> Result<Vec<f64>> {
    check_dims(mean.dim(), rho.dim())?;
    let w = mean.whiten(rho.entries());
    let logged = spd_fn(&w, MatrixFn::Log)?;
    vec_at_identity(&logged)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn spd_from_rows(rows: &[&[f64]]) -> SPDPoint {
        SPDPoint::new(Matrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn spd_eig_identity() {
        let eig = spd_eig(&Matrix::identity(3)).unwrap();
        for &l in &eig.values {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn spd_eig_rejects_asymmetric() {
        let m = Matrix::from_rows(&[&[1.0, 0.5], &[0.0, 1.0]]);
        assert!(matches!(
            spd_eig(&m),
            Err(ManifoldError::NonSymmetric { .. })
        ));
    }

    #[test]
    fn spd_fn_inverse_sqrt_of_identity() {
        let r = spd_fn(&Matrix::identity(3), MatrixFn::Power(-0.5)).unwrap();
        assert!(r.sub(&Matrix::identity(3)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn spd_fn_sqrt_diagonal() {
        let r = spd_fn(&Matrix::diag(&[4.0, 9.0]), MatrixFn::Power(0.5)).unwrap();
        assert!(r.sub(&Matrix::diag(&[2.0, 3.0])).frobenius_norm() < 1e-12);
    }

    #[test]
    fn spd_fn_log_rejects_indefinite() {
        let m = Matrix::diag(&[1.0, -2.0]);
        assert!(matches!(
            spd_fn(&m, MatrixFn::Log),
            Err(ManifoldError::NotPositiveDefinite { .. })
        ));
        // Integer powers of indefinite matrices are fine.
        let sq = spd_fn(&m, MatrixFn::Power(2.0)).unwrap();
        assert!(sq.sub(&Matrix::diag(&[1.0, 4.0])).frobenius_norm() < 1e-12);
    }

    #[test]
    fn spd_fn_log_exp_roundtrip() {
        let s_mat = Matrix::from_rows(&[&[2.0, 0.4, 0.1], &[0.4, 1.5, -0.2], &[0.1, -0.2, 3.0]]);
        let logged = spd_fn(&s_mat, MatrixFn::Log).unwrap();
        let back = spd_fn(&logged, MatrixFn::Exp).unwrap();
        let tol = 1e-10 * s_mat.frobenius_norm();
        assert!(back.sub(&s_mat).frobenius_norm() < tol);
    }

    #[test]
    fn point_rejects_non_pd() {
        let m = Matrix::diag(&[1.0, 0.0]);
        assert!(matches!(
            SPDPoint::new(m),
            Err(ManifoldError::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn exp_map_at_identity_is_matrix_exp() {
        let chi = TangentVector::new(Matrix::from_rows(&[&[0.3, 0.1], &[0.1, -0.2]])).unwrap();
        let via_map = exp_map(&SPDPoint::identity(2), &chi).unwrap();
        let direct = spd_fn(chi.entries(), MatrixFn::Exp).unwrap();
        assert!(via_map.entries().sub(&direct).frobenius_norm() < 1e-12);
    }

    #[test]
    fn exp_map_zero_tangent_is_identity_map() {
        let rho = spd_from_rows(&[&[2.0, 0.3], &[0.3, 1.5]]);
        let out = exp_map(&rho, &TangentVector::zero(2)).unwrap();
        assert!(out.entries().sub(rho.entries()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn exp_map_commuting_closed_form() {
        let chi = TangentVector::new(Matrix::diag(&[scalar::ln(2.0), scalar::ln(3.0)])).unwrap();
        let out = exp_map(&SPDPoint::identity(2), &chi).unwrap();
        assert!(
            out.entries()
                .sub(&Matrix::diag(&[2.0, 3.0]))
                .frobenius_norm()
                < 1e-12
        );
    }

    #[test]
    fn log_map_of_self_is_zero() {
        let rho = spd_from_rows(&[&[2.0, 0.5], &[0.5, 3.0]]);
        let chi = log_map(&rho, &rho).unwrap();
        assert!(chi.norm() < 1e-12);
    }

    #[test]
    fn log_map_at_identity_is_matrix_log() {
        let rho = spd_from_rows(&[&[2.0, 0.5], &[0.5, 3.0]]);
        let chi = log_map(&SPDPoint::identity(2), &rho).unwrap();
        let direct = spd_fn(rho.entries(), MatrixFn::Log).unwrap();
        assert!(chi.entries().sub(&direct).frobenius_norm() < 1e-12);
    }

    #[test]
    fn exp_log_roundtrip() {
        let rho0 = spd_from_rows(&[&[2.0, 0.4, 0.0], &[0.4, 1.0, 0.2], &[0.0, 0.2, 3.0]]);
        let rho1 = spd_from_rows(&[&[1.5, -0.3, 0.1], &[-0.3, 2.5, 0.0], &[0.1, 0.0, 0.8]]);
        let chi = log_map(&rho0, &rho1).unwrap();
        let back = exp_map(&rho0, &chi).unwrap();
        let tol = 1e-8 * rho1.entries().frobenius_norm();
        assert!(back.entries().sub(rho1.entries()).frobenius_norm() < tol);
    }

    #[test]
    fn geodesic_endpoints_and_midpoint() {
        let rho0 = SPDPoint::identity(2);
        let rho1 = spd_from_rows(&[&[4.0, 0.0], &[0.0, 4.0]]);
        let g0 = geodesic(&rho0, &rho1, 0.0).unwrap();
        let g1 = geodesic(&rho0, &rho1, 1.0).unwrap();
        let gm = geodesic(&rho0, &rho1, 0.5).unwrap();
        assert!(g0.entries().sub(rho0.entries()).frobenius_norm() < 1e-12);
        assert!(g1.entries().sub(rho1.entries()).frobenius_norm() < 1e-8);
        assert!(
            gm.entries()
                .sub(&Matrix::diag(&[2.0, 2.0]))
                .frobenius_norm()
                < 1e-9
        );
    }

    #[test]
    fn speed_at_zero_is_tangent() {
        let chi = TangentVector::new(Matrix::from_rows(&[&[0.2, 0.7], &[0.7, -0.1]])).unwrap();
        let v = geodesic_speed(&chi, 0.0).unwrap();
        assert!(v.sub(chi.entries()).frobenius_norm() < 1e-13);
    }

    #[test]
    fn speed_diagonal_closed_form() {
        let a = [0.5, -1.25, 2.0];
        let t = 0.7;
        let chi = TangentVector::new(Matrix::diag(&a)).unwrap();
        let v = geodesic_speed(&chi, t).unwrap();
        let expect = Matrix::diag(&[
            a[0] * scalar::exp(t * a[0]),
            a[1] * scalar::exp(t * a[1]),
            a[2] * scalar::exp(t * a[2]),
        ]);
        assert!(v.sub(&expect).frobenius_norm() < 1e-12);
    }

    #[test]
    fn distance_coincident_is_zero() {
        let rho = spd_from_rows(&[&[2.0, 0.5], &[0.5, 3.0]]);
        assert!(riem_dist(&rho, &rho).unwrap() < 1e-10);
    }

    #[test]
    fn distance_closed_form_sqrt_two() {
        let e = scalar::exp(1.0);
        let d = riem_dist(
            &SPDPoint::identity(2),
            &spd_from_rows(&[&[e, 0.0], &[0.0, e]]),
        )
        .unwrap();
        assert!((d - scalar::sqrt(2.0)).abs() < 1e-10);
    }

    #[test]
    fn frobenius_dist_direct() {
        let z = Matrix::zeros(2, 2);
        let i = Matrix::identity(2);
        assert!((frobenius_dist(&z, &i).unwrap() - scalar::sqrt(2.0)).abs() < 1e-14);
        assert!(frobenius_dist(&i, &i).unwrap() == 0.0);
    }

    #[test]
    fn frobenius_dist_matches_direct_summation() {
        let a = Matrix::from_rows(&[&[1.0, -2.0, 0.5], &[-2.0, 3.0, 1.1], &[0.5, 1.1, 0.2]]);
        let b = Matrix::from_rows(&[&[0.3, 0.0, -1.0], &[0.0, 2.0, 0.4], &[-1.0, 0.4, 5.0]]);
        let mut direct = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let d = a[(i, j)] - b[(i, j)];
                direct += d * d;
            }
        }
        assert!((frobenius_dist(&a, &b).unwrap() - direct.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn vec_at_identity_two_by_two() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 3.0]]);
        let v = vec_at_identity(&a).unwrap();
        assert_eq!(v.len(), 3);
        assert!((v[0] - 1.0).abs() < 1e-15);
        assert!((v[1] - 2.0 * scalar::sqrt(2.0)).abs() < 1e-15);
        assert!((v[2] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn vec_at_identity_is_isometric() {
        let a = Matrix::from_rows(&[&[1.0, -2.0, 0.3], &[-2.0, 0.0, 1.1], &[0.3, 1.1, 4.0]]);
        let v = vec_at_identity(&a).unwrap();
        let norm_v = scalar::sqrt(v.iter().map(|x| x * x).sum());
        assert!((norm_v - a.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn vec_at_mean_of_itself_is_zero() {
        let rho = spd_from_rows(&[&[2.0, 0.5], &[0.5, 3.0]]);
        let v = vec_at(&rho, &rho).unwrap();
        assert!(v.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn vec_at_diagonal_closed_form() {
        let e = scalar::exp(1.0);
        let v = vec_at(
            &SPDPoint::identity(2),
            &spd_from_rows(&[&[e, 0.0], &[0.0, 1.0]]),
        )
        .unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12);
        assert!(v[1].abs() < 1e-12);
        assert!(v[2].abs() < 1e-12);
    }

    #[test]
    fn vec_at_norm_equals_distance() {
        let mean = spd_from_rows(&[&[2.0, 0.4], &[0.4, 1.0]]);
        let rho = spd_from_rows(&[&[1.0, -0.2], &[-0.2, 0.7]]);
        let v = vec_at(&mean, &rho).unwrap();
        let norm_v = scalar::sqrt(v.iter().map(|x| x * x).sum());
        let d = riem_dist(&mean, &rho).unwrap();
        assert!((norm_v - d).abs() < 1e-8);
    }

    #[test]
    fn dim_mismatch_reported() {
        let a = SPDPoint::identity(2);
        let b = SPDPoint::identity(3);
        assert!(matches!(
            riem_dist(&a, &b),
            Err(ManifoldError::DimMismatch { left: 2, right: 3 })
        ));
    }
}

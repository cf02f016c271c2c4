//! Statistics over a family of SPD points: Fréchet mean by fixed-point
//! gradient descent, tangent-space covariance, Mahalanobis distance with a
//! pseudo-inverted covariance, and the induced Gaussian density.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::manifold::{vec_at, vec_dim, ManifoldError, Result, SPDPoint};
use crate::matrix::{self, Matrix, SymEigen};
use crate::scalar;

#[derive(Debug, Clone, Copy)]
pub struct FrechetConfig {
    /// Convergence threshold on the Frobenius norm of the mean tangent update.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FrechetConfig {
    fn default() -> Self {
        FrechetConfig {
            tol: 1e-9,
            max_iter: 100,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FrechetResult {
    pub mean: SPDPoint,
    /// Gradient-descent steps taken before the tolerance was met.
    pub iterations: usize,
    /// Final gradient norm (guaranteed `<= tol`).
    pub grad_norm: f64,
}

/// Mean whitened log-tangent at `at` plus half the mean squared distance (the
/// descent objective). Both come from the same per-point eigendecompositions.
fn tangent_and_objective(points: &[SPDPoint], at: &SPDPoint) -> Result<(Matrix, f64)> {
    let dim = at.dim();
    let n = points.len() as f64;
    let mut tangent = Matrix::zeros(dim, dim);
    let mut objective = 0.0;
    for p in points {
        let w = at.whiten(p.entries());
        let eig = matrix::sym_eigen(&w)?;
        let min = eig.values.first().copied().unwrap_or(0.0);
        if min <= 0.0 {
            return Err(ManifoldError::NotPositiveDefinite {
                min_eigenvalue: min,
                floor: 0.0,
            });
        }
        let logged: Vec<f64> = eig.values.iter().map(|&l| scalar::ln(l)).collect();
        objective += 0.5 * logged.iter().map(|x| x * x).sum::<f64>();
        tangent = tangent.add(&Matrix::from_spectrum(&eig.vectors, &logged));
    }
    Ok((tangent.scale(1.0 / n), objective / n))
}

const ARMIJO_C: f64 = 1e-4;
const MIN_STEP: f64 = 1e-6;

/// Fréchet (Karcher) mean of a cohort: the point minimizing the mean squared
/// geodesic distance, by Riemannian gradient descent
/// `m <- m^{1/2} exp(alpha * mean_i log(m^{-1/2} p_i m^{-1/2})) m^{1/2}`
/// started from the arithmetic average (which stays inside the cone).
///
/// The full step `alpha = 1` is taken whenever it achieves Armijo decrease of
/// the objective or contracts the gradient norm; that is every iteration for
/// cohorts of nearby points, where the iteration is the locally contractive
/// fixed-point map. For widely separated cohorts (geodesic diameter well
/// above 1) the unit step overshoots and oscillates, so it is halved until
/// the objective decreases and doubled back after each success. The gradient
/// test carries the final approach, where the objective decrease per step
/// falls below floating-point resolution. Every candidate evaluation counts
/// against `max_iter`.
pub fn frechet_mean(points: &[SPDPoint], cfg: &FrechetConfig) -> Result<FrechetResult> {
    let first = points.first().ok_or(ManifoldError::EmptyCohort)?;
    let dim = first.dim();
    for p in points {
        if p.dim() != dim {
            return Err(ManifoldError::DimMismatch {
                left: dim,
                right: p.dim(),
            });
        }
    }

    let n = points.len() as f64;
    let mut acc = Matrix::zeros(dim, dim);
    for p in points {
        acc = acc.add(p.entries());
    }
    let mut mean = SPDPoint::with_floor(acc.scale(1.0 / n), first.eig_floor())?;
    let (mut tangent, mut objective) = tangent_and_objective(points, &mean)?;
    let mut grad_norm = tangent.frobenius_norm();
    let mut alpha = 1.0f64;

    for iter in 0..=cfg.max_iter {
        if grad_norm <= cfg.tol {
            return Ok(FrechetResult {
                mean,
                iterations: iter,
                grad_norm,
            });
        }
        if iter == cfg.max_iter {
            return Err(ManifoldError::NoConvergence {
                iterations: iter,
                grad_norm,
            });
        }
        let eig = matrix::sym_eigen(&tangent)?;
        let exped: Vec<f64> = eig.values.iter().map(|&l| scalar::exp(alpha * l)).collect();
        let step = Matrix::from_spectrum(&eig.vectors, &exped);
        let candidate = SPDPoint::with_floor(mean.unwhiten(&step), mean.eig_floor())?;
        let (cand_tangent, cand_objective) = tangent_and_objective(points, &candidate)?;
        let cand_grad_norm = cand_tangent.frobenius_norm();
        let sufficient_decrease =
            cand_objective <= objective - ARMIJO_C * alpha * grad_norm * grad_norm;
        let gradient_contraction = cand_grad_norm <= 0.9 * grad_norm;
        if sufficient_decrease || gradient_contraction {
            mean = candidate;
            tangent = cand_tangent;
            objective = cand_objective;
            grad_norm = cand_grad_norm;
            alpha = (2.0 * alpha).min(1.0);
        } else if alpha > MIN_STEP {
            alpha *= 0.5;
        } else {
            // Numerical stagnation: no measurable descent at the smallest step.
            return Err(ManifoldError::NoConvergence {
                iterations: iter,
                grad_norm,
            });
        }
    }
    unreachable!("loop returns")
}

/// Sample covariance of the tangent coordinates around `mean`:
/// `(1/(N-1)) sum_i v_i v_i^T` with `v_i = vec_at(mean, p_i)`.
/// The result is a `d x d` symmetric PSD matrix, `d = dim (dim+1)/2`.
pub fn cohort_covariance(points: &[SPDPoint], mean: &SPDPoint) -> Result<Matrix> {
    if points.len() < 2 {
        return Err(ManifoldError::CohortTooSmall {
            count: points.len(),
        });
    }
    let d = vec_dim(mean.dim());
    let mut sigma = Matrix::zeros(d, d);
    for p in points {
        let v = vec_at(mean, p)?;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate().skip(i) {
                sigma[(i, j)] += vi * vj;
            }
        }
    }
    let scale = 1.0 / (points.len() as f64 - 1.0);
    for i in 0..d {
        for j in i..d {
            let v = sigma[(i, j)] * scale;
            sigma[(i, j)] = v;
            sigma[(j, i)] = v;
        }
    }
    Ok(sigma)
}

/// Fréchet mean plus tangent-space covariance of a cohort, with the
/// covariance spectrum cached for pseudo-inversion.
///
/// With `N` points of dimension `n` the covariance is `d x d` for
/// `d = n(n+1)/2`; whenever `N - 1 < d` it is rank-deficient by construction,
/// which is why the Mahalanobis form uses the Moore-Penrose pseudo-inverse.
#[derive(Debug, Clone)]
pub struct CohortStats {
    mean: SPDPoint,
    covariance: Matrix,
    count: usize,
    cov_eig: SymEigen,
    rank: usize,
}

impl CohortStats {
    /// Computes the mean (per `cfg`) and covariance of `points`.
    pub fn from_points(points: &[SPDPoint], cfg: &FrechetConfig) -> Result<Self> {
        let mean = frechet_mean(points, cfg)?.mean;
        let covariance = cohort_covariance(points, &mean)?;
        Self::new(mean, covariance, points.len())
    }

    /// Wraps a precomputed mean and covariance. The covariance must be
    /// `d x d` for the mean's dimension and PSD up to roundoff.
    pub fn new(mean: SPDPoint, covariance: Matrix, count: usize) -> Result<Self> {
        let d = vec_dim(mean.dim());
        if covariance.rows() != d || covariance.cols() != d {
            return Err(ManifoldError::DimMismatch {
                left: covariance.rows(),
                right: d,
            });
        }
        let mut cov = covariance;
        cov.symmetrize();
        let cov_eig = matrix::sym_eigen(&cov)?;
        let max = cov_eig.values.last().copied().unwrap_or(0.0);
        let min = cov_eig.values.first().copied().unwrap_or(0.0);
        let norm = cov.frobenius_norm();
        if min < -1e-10 * norm.max(1.0) {
            return Err(ManifoldError::NotPositiveDefinite {
                min_eigenvalue: min,
                floor: -1e-10 * norm.max(1.0),
            });
        }
        let tol = rank_tolerance(d, max);
        let rank = cov_eig.values.iter().filter(|&&l| l > tol).count();
        Ok(CohortStats {
            mean,
            covariance: cov,
            count,
            cov_eig,
            rank,
        })
    }

    pub fn mean(&self) -> &SPDPoint {
        &self.mean
    }

    pub fn covariance(&self) -> &Matrix {
        &self.covariance
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Numerical rank of the covariance.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Whether the covariance is rank-deficient (`rank < d`). Mahalanobis and
    /// density values are then taken on the support subspace.
    pub fn is_degenerate(&self) -> bool {
        self.rank < vec_dim(self.mean.dim())
    }

    fn rank_tol(&self) -> f64 {
        let d = vec_dim(self.mean.dim());
        rank_tolerance(d, self.cov_eig.values.last().copied().unwrap_or(0.0))
    }
}

fn rank_tolerance(d: usize, max_eigenvalue: f64) -> f64 {
    // The absolute floor absorbs roundoff from cohorts with no real spread: a
    // variance of 1e-20 corresponds to geodesic scatter of 1e-10, below what
    // the eigenvalue floor lets points resolve anyway.
    ((d as f64) * f64::EPSILON * max_eigenvalue.max(0.0)).max(1e-20)
}

/// Mahalanobis distance of `rho` from the cohort mean:
/// `v^T pinv(Sigma) v` with `v = vec_at(mean, rho)`. Zero at the mean;
/// components outside the covariance support contribute nothing.
pub fn mahalanobis(stats: &CohortStats, rho: &SPDPoint) -> Result<f64> {
    if rho.dim() != stats.mean.dim() {
        return Err(ManifoldError::DimMismatch {
            left: rho.dim(),
            right: stats.mean.dim(),
        });
    }
    let v = vec_at(&stats.mean, rho)?;
    let tol = stats.rank_tol();
    let q = &stats.cov_eig.vectors;
    let d = v.len();
    let mut xi = 0.0;
    for (k, &lambda) in stats.cov_eig.values.iter().enumerate() {
        if lambda <= tol {
            continue;
        }
        let mut proj = 0.0;
        for i in 0..d {
            proj += q[(i, k)] * v[i];
        }
        xi += proj * proj / lambda;
    }
    Ok(xi)
}

/// Gaussian density evaluated on the covariance support.
#[derive(Debug, Clone, Copy)]
pub struct Density {
    pub value: f64,
    /// Rank of the covariance the normalizer was computed on.
    pub rank: usize,
    /// Set when the covariance does not span the full tangent space; the
    /// value is then a density over the support subspace only.
    pub degenerate: bool,
}

/// Generalized Gaussian on the manifold: `k exp(-xi(rho)/2)` with `xi` the
/// Mahalanobis form and `k` the multivariate normal constant over the
/// covariance support, `k = (2 pi)^{-r/2} pdet(Sigma)^{-1/2}`.
pub fn gaussian_density(stats: &CohortStats, rho: &SPDPoint) -> Result<Density> {
    let xi = mahalanobis(stats, rho)?;
    let tol = stats.rank_tol();
    let mut log_pdet = 0.0;
    for &lambda in &stats.cov_eig.values {
        if lambda > tol {
            log_pdet += scalar::ln(lambda);
        }
    }
    let r = stats.rank() as f64;
    let log_k = -0.5 * (r * scalar::ln(2.0 * PI) + log_pdet);
    Ok(Density {
        value: scalar::exp(log_k - 0.5 * xi),
        rank: stats.rank(),
        degenerate: stats.is_degenerate(),
    })
}

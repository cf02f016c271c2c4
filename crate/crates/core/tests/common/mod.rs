//! Shared fixtures: seeded random rotations, SPD points, and symmetric
//! matrices built from Givens products so no external linear algebra is
//! needed.

use manifoldnet_core::matrix::Matrix;
use manifoldnet_core::rng::Xoshiro256;
use manifoldnet_core::SPDPoint;

/// Applies a Givens rotation G(i, j, theta) on the left: m <- G m.
fn rotate_left(m: &mut Matrix, i: usize, j: usize, theta: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    for col in 0..m.cols() {
        let a = m[(i, col)];
        let b = m[(j, col)];
        m[(i, col)] = c * a - s * b;
        m[(j, col)] = s * a + c * b;
    }
}

/// Random orthogonal matrix as a product of n^2 Givens rotations.
pub fn random_rotation(n: usize, rng: &mut Xoshiro256) -> Matrix {
    let mut q = Matrix::identity(n);
    if n < 2 {
        return q;
    }
    for _ in 0..(n * n) {
        let i = rng.below(n);
        let mut j = rng.below(n);
        while j == i {
            j = rng.below(n);
        }
        let theta = rng.uniform(0.0, core::f64::consts::TAU);
        rotate_left(&mut q, i, j, theta);
    }
    q
}

/// Random SPD point with eigenvalues uniform in [lo, hi] and a random
/// eigenbasis.
pub fn random_spd(n: usize, rng: &mut Xoshiro256, lo: f64, hi: f64) -> SPDPoint {
    let q = random_rotation(n, rng);
    let vals: Vec<f64> = (0..n).map(|_| rng.uniform(lo, hi)).collect();
    SPDPoint::new(Matrix::from_spectrum(&q, &vals)).expect("constructed SPD")
}

/// Random symmetric matrix with entries in [-scale, scale].
pub fn random_sym(n: usize, rng: &mut Xoshiro256, scale: f64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = rng.uniform(-scale, scale);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

/// Random invertible matrix with singular values in [0.5, 5] (condition
/// number at most 10): R1 * diag * R2.
pub fn random_invertible(n: usize, rng: &mut Xoshiro256) -> Matrix {
    let r1 = random_rotation(n, rng);
    let r2 = random_rotation(n, rng);
    let vals: Vec<f64> = (0..n).map(|_| rng.uniform(0.5, 5.0)).collect();
    let mut d = Matrix::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        d[(i, i)] = v;
    }
    r1.mul(&d).mul(&r2)
}

/// A * M * A^T.
pub fn congruence(a: &Matrix, m: &Matrix) -> Matrix {
    a.mul(m).mul(&a.transpose())
}

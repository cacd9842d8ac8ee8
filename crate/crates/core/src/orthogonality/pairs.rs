//! Norm comparisons for arbitrary pairs `(A, B)`: Roberts refutation and
//! Birkhoff–James tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::verdict::Witness;
use crate::error::Result;
use crate::linalg::{herm_eigen, operator_norm, CMatrix};
use crate::ranges::{compress, min_support, zero_tolerance, DEFAULT_NTHETA};

/// Polar grid of `λ` values; radii are relative and get multiplied by
/// `(1+‖A‖)/‖B‖` before use.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid {
    pub n_angles: usize,
    pub radii: Vec<f64>,
}

impl LambdaGrid {
    pub fn new(n_angles: usize, radii: Vec<f64>) -> Self {
        Self { n_angles, radii }
    }

    /// `count` radii log-spaced over `[lo, hi]`.
    pub fn log_spaced(n_angles: usize, lo: f64, hi: f64, count: usize) -> Self {
        let radii = if count == 1 {
            vec![lo]
        } else {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp())
                .collect()
        };
        Self { n_angles, radii }
    }

    /// Grid points in order: radius-major, angle-minor.
    pub fn points(&self, scale: f64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.radii.len() * self.n_angles);
        for &r in &self.radii {
            for k in 0..self.n_angles {
                let t = 2.0 * PI * k as f64 / self.n_angles as f64;
                out.push(Complex64::from_polar(r * scale, t));
            }
        }
        out
    }
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self::log_spaced(24, 1e-2, 1e2, 20)
    }
}

/// `(‖A + λB‖, ‖A − λB‖)`.
pub fn norm_pm(a: &CMatrix, b: &CMatrix, lambda: Complex64) -> Result<(f64, f64)> {
    a.check_same_dim(b)?;
    let lb = b.scale(lambda);
    Ok((operator_norm(&(a + &lb))?, operator_norm(&(a - &lb))?))
}

fn lambda_scale(norm_a: f64, norm_b: f64) -> f64 {
    (1.0 + norm_a) / norm_b
}

/// First grid `λ` with `|‖A+λB‖ − ‖A−λB‖| > tol·(1+‖A‖+‖B‖)`.
///
/// `None` only means no counterexample was found on the grid.
pub fn roberts_refute_pair(
    a: &CMatrix,
    b: &CMatrix,
    grid: &LambdaGrid,
    tol: f64,
) -> Result<Option<Witness>> {
    a.check_same_dim(b)?;
    let (na, nb) = (operator_norm(a)?, operator_norm(b)?);
    if nb == 0.0 {
        return Ok(None);
    }
    let threshold = tol * (1.0 + na + nb);
    for lambda in grid.points(lambda_scale(na, nb)) {
        let (p, m) = norm_pm(a, b, lambda)?;
        if (p - m).abs() > threshold {
            return Ok(Some(Witness {
                lambda,
                norm_plus: p,
                norm_minus: m,
            }));
        }
    }
    Ok(None)
}

/// Outcome of the numerical Birkhoff–James test `‖A‖ ≤ ‖A + λB‖ ∀λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BjPairReport {
    pub holds: bool,
    pub norm_a: f64,
    pub min_norm: f64,
    pub argmin: [f64; 2],
}

/// `A ⊥_B B` on the grid: `min_λ ‖A+λB‖ ≥ ‖A‖ − τ_fail·(1+‖A‖)`.
pub fn bj_pair(a: &CMatrix, b: &CMatrix, grid: &LambdaGrid, tau_fail: f64) -> Result<bool> {
    Ok(bj_pair_report(a, b, grid, tau_fail)?.holds)
}

pub fn bj_pair_report(
    a: &CMatrix,
    b: &CMatrix,
    grid: &LambdaGrid,
    tau_fail: f64,
) -> Result<BjPairReport> {
    a.check_same_dim(b)?;
    let (na, nb) = (operator_norm(a)?, operator_norm(b)?);
    let report = |min_norm: f64, at: Complex64| BjPairReport {
        holds: min_norm >= na - tau_fail * (1.0 + na),
        norm_a: na,
        min_norm,
        argmin: [at.re, at.im],
    };
    if nb == 0.0 {
        return Ok(report(na, Complex64::new(0.0, 0.0)));
    }
    let scale = lambda_scale(na, nb);
    let eval = |l: Complex64| operator_norm(&(a + &b.scale(l)));
    let mut best = (na, Complex64::new(0.0, 0.0));
    for lambda in grid.points(scale) {
        let v = eval(lambda)?;
        if v < best.0 {
            best = (v, lambda);
        }
    }
    // compass search around the grid minimizer; λ ↦ ‖A+λB‖ is convex
    let mut step = 0.5 * best.1.norm().max(1e-2 * scale);
    let dirs: Vec<Complex64> = (0..8)
        .map(|k| Complex64::from_polar(1.0, PI * k as f64 / 4.0))
        .collect();
    let mut iterations = 0;
    while step > 1e-10 * scale && iterations < 400 {
        iterations += 1;
        let mut improved = false;
        for d in &dirs {
            let cand = best.1 + d * step;
            let v = eval(cand)?;
            if v < best.0 {
                best = (v, cand);
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(report(best.0, best.1))
}

/// Birkhoff–James orthogonality of `A` to the identity, through
/// `(0, ‖A‖²) ∈ DV(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BjReport {
    pub orthogonal: bool,
    /// `min_θ h(θ)` of the compression: negative means `0` is outside its range.
    pub margin: f64,
    pub threshold: f64,
    /// Dimension of the top eigenspace of `A*A`.
    pub eigenspace_dim: usize,
}

/// Relative clustering width for the top eigenspace of `A*A`.
pub const TOP_EIGENSPACE_TOL: f64 = 1e-10;

pub fn bj_to_identity(a: &CMatrix) -> Result<bool> {
    Ok(bj_to_identity_report(a)?.orthogonal)
}

/// Compresses `A` to the top eigenspace of `A*A` and asks whether `0` lies in the
/// numerical range of the compression.
pub fn bj_to_identity_report(a: &CMatrix) -> Result<BjReport> {
    let gram = &a.adjoint() * a;
    let eig = herm_eigen(&gram)?;
    let top = eig.max();
    let norm = top.max(0.0).sqrt();
    let cut = top - TOP_EIGENSPACE_TOL * (1.0 + top.max(0.0));
    let basis: Vec<Vec<Complex64>> = (0..a.dim())
        .filter(|&k| eig.values[k] >= cut)
        .map(|k| eig.vector(k))
        .collect();
    let compressed = compress(a, &basis)?;
    let margin = min_support(&compressed, DEFAULT_NTHETA)?;
    let threshold = -zero_tolerance(norm);
    Ok(BjReport {
        orthogonal: margin >= threshold,
        margin,
        threshold,
        eigenspace_dim: basis.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan() -> CMatrix {
        CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn norm_pm_examples() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, -3.0]]).unwrap();
        let (p, m) = norm_pm(&a, &CMatrix::identity(2), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(p, m);
        assert!(norm_pm(&a, &CMatrix::identity(3), Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn refutation_finds_identity_versus_projection() {
        let a = CMatrix::identity(2);
        let b = CMatrix::from_real_diag(&[1.0, 0.0]);
        let grid = LambdaGrid::new(4, vec![0.5]); // λ = 0.5·(1+1)/1 = 1 at angle 0
        let w = roberts_refute_pair(&a, &b, &grid, 1e-6).unwrap().unwrap();
        assert_eq!(w.lambda, Complex64::new(1.0, 0.0));
        assert!((w.norm_plus - 2.0).abs() < 1e-14 && (w.norm_minus - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bj_pair_detects_parallel_matrices() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[0.5, -1.0]]).unwrap();
        assert!(!bj_pair(&a, &a, &LambdaGrid::default(), 1e-6).unwrap());
        let r = bj_pair_report(&a, &a, &LambdaGrid::default(), 1e-6).unwrap();
        assert!(r.min_norm < 1e-6, "{r:?}");
    }

    #[test]
    fn bj_to_identity_examples() {
        assert!(bj_to_identity(&CMatrix::from_real_diag(&[1.0, -1.0])).unwrap());
        assert!(!bj_to_identity(&CMatrix::from_real_diag(&[1.0, 0.0])).unwrap());
        let r = bj_to_identity_report(&jordan()).unwrap();
        assert!(r.orthogonal && r.eigenspace_dim == 1, "{r:?}");
    }
}

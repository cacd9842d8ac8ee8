//! Numerical range `W(A)`: support function, boundary sampling, central symmetry,
//! zero containment and compressions.

use std::f64::consts::PI;
use std::fmt::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::linalg::{operator_norm, CMatrix};
use crate::pencil::Pencil;

/// Default number of support-function samples on the circle.
pub const DEFAULT_NTHETA: usize = 720;
/// Smallest admissible angular grid.
pub const MIN_NTHETA: usize = 8;

/// `τ_zero = 1e−9·(1+‖A‖)`.
pub fn zero_tolerance(norm: f64) -> f64 {
    1e-9 * (1.0 + norm)
}

/// Uniform angle grid `2πj/N` as `(θ, cos θ, sin θ)`.
///
/// For even `N` the second half is the exact negation of the first, so that the
/// samples at `θ` and `θ+π` come from bitwise-opposite pencils.
pub(crate) fn angle_grid(n_theta: usize) -> Vec<(f64, f64, f64)> {
    let step = 2.0 * PI / n_theta as f64;
    let mut grid: Vec<(f64, f64, f64)> = (0..n_theta)
        .map(|j| {
            let t = step * j as f64;
            (t, t.cos(), t.sin())
        })
        .collect();
    if n_theta.is_multiple_of(2) {
        let half = n_theta / 2;
        for j in 0..half {
            let (_, c, s) = grid[j];
            grid[j + half].1 = -c;
            grid[j + half].2 = -s;
        }
    }
    grid
}

fn check_grid(n_theta: usize) -> Result<()> {
    if n_theta < MIN_NTHETA {
        return Err(invalid(format!(
            "angular grid needs at least {MIN_NTHETA} samples, got {n_theta}"
        )));
    }
    Ok(())
}

fn check_even_grid(n_theta: usize) -> Result<()> {
    check_grid(n_theta)?;
    if !n_theta.is_multiple_of(2) {
        return Err(invalid(format!(
            "angular grid size must be even, got {n_theta}"
        )));
    }
    Ok(())
}

/// Support function `h(θ) = λ_max(Re(e^{−iθ}A)) = λ_max(cos θ·Re A + sin θ·Im A)`.
pub fn nr_support(a: &CMatrix, theta: f64) -> Result<f64> {
    Pencil::new(a)?.support([theta.cos(), theta.sin(), 0.0])
}

pub(crate) fn support_samples(pencil: &Pencil, n_theta: usize) -> Result<Vec<f64>> {
    angle_grid(n_theta)
        .par_iter()
        .map(|&(_, c, s)| pencil.support([c, s, 0.0]))
        .collect()
}

/// Sampled support function and boundary of `W(A)`.
#[derive(Debug, Clone)]
pub struct NRProfile {
    pub thetas: Vec<f64>,
    pub support: Vec<f64>,
    pub boundary: Vec<Complex64>,
    /// Unit vectors `x` with `boundary[k] = ⟨A x, x⟩`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl NRProfile {
    /// `max_θ |h(θ) − h(θ+π)|`; requires an even grid.
    pub fn symmetry_defect(&self) -> Option<f64> {
        let n = self.support.len();
        n.is_multiple_of(2)
            .then(|| symmetry_defect_of(&self.support))
    }

    /// Outer estimate of the radial extent `max{s ≥ 0 : s·e^{iφ} ∈ W(A)}` from the
    /// sampled supporting half-planes. Returns `None` when the samples do not bound
    /// the ray (the origin is outside or on the edge of the range in that direction).
    pub fn radial_extent(&self, phi: f64) -> Option<f64> {
        let mut best = f64::INFINITY;
        for (&t, &h) in self.thetas.iter().zip(&self.support) {
            let c = (t - phi).cos();
            if c > 1e-6 {
                best = best.min(h / c);
            }
        }
        (best.is_finite() && best >= 0.0).then_some(best)
    }

    /// CSV with header `theta,h,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,h,re,im\n");
        for ((t, h), p) in self.thetas.iter().zip(&self.support).zip(&self.boundary) {
            let _ = writeln!(out, "{t:.12e},{h:.12e},{:.12e},{:.12e}", p.re, p.im);
        }
        out
    }
}

pub(crate) fn symmetry_defect_of(support: &[f64]) -> f64 {
    let half = support.len() / 2;
    (0..half)
        .map(|j| (support[j] - support[j + half]).abs())
        .fold(0.0, f64::max)
}

/// Samples `h` on a uniform grid of `n_theta` angles, with boundary points taken
/// from top eigenvectors of `Re(e^{−iθ}A)`.
pub fn nr_profile(a: &CMatrix, n_theta: usize) -> Result<NRProfile> {
    check_grid(n_theta)?;
    let pencil = Pencil::new(a)?;
    let samples: Vec<(f64, f64, Complex64, Vec<Complex64>)> = angle_grid(n_theta)
        .par_iter()
        .map(|&(t, c, s)| {
            let (h, x) = pencil.support_vector([c, s, 0.0])?;
            let p = a.quadratic_form(&x);
            Ok((t, h, p, x))
        })
        .collect::<Result<_>>()?;
    let mut profile = NRProfile {
        thetas: Vec::with_capacity(n_theta),
        support: Vec::with_capacity(n_theta),
        boundary: Vec::with_capacity(n_theta),
        vectors: Vec::with_capacity(n_theta),
    };
    for (t, h, p, x) in samples {
        profile.thetas.push(t);
        profile.support.push(h);
        profile.boundary.push(p);
        profile.vectors.push(x);
    }
    Ok(profile)
}

/// `max_θ |h(θ) − h(θ+π)|` over an even grid; zero exactly when the sampled
/// support function is centrally symmetric.
pub fn nr_symmetry_defect(a: &CMatrix, n_theta: usize) -> Result<f64> {
    check_even_grid(n_theta)?;
    let pencil = Pencil::new(a)?;
    Ok(symmetry_defect_of(&support_samples(&pencil, n_theta)?))
}

/// Whether `0 ∈ W(A)`, decided as `min_θ h(θ) ≥ −τ_zero`.
pub fn contains_zero(a: &CMatrix, n_theta: usize) -> Result<bool> {
    Ok(min_support(a, n_theta)? >= -zero_tolerance(operator_norm(a)?))
}

/// `min_θ h(θ)`: the signed distance margin of the origin with respect to `W(A)`.
pub fn min_support(a: &CMatrix, n_theta: usize) -> Result<f64> {
    check_grid(n_theta)?;
    let pencil = Pencil::new(a)?;
    Ok(support_samples(&pencil, n_theta)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

/// Compression `B_ij = ⟨A b_j, b_i⟩` onto the span of orthonormal columns `basis`.
pub fn compress(a: &CMatrix, basis: &[Vec<Complex64>]) -> Result<CMatrix> {
    let n = a.dim();
    let k = basis.len();
    if k == 0 || k > n {
        return Err(invalid(format!(
            "basis must have between 1 and {n} columns, got {k}"
        )));
    }
    if let Some(bad) = basis.iter().position(|b| b.len() != n) {
        return Err(invalid(format!("basis column {bad} has wrong length")));
    }
    for i in 0..k {
        for j in i..k {
            let ip: Complex64 = basis[i]
                .iter()
                .zip(&basis[j])
                .map(|(x, y)| x.conj() * y)
                .sum();
            let want = if i == j { 1.0 } else { 0.0 };
            if (ip - want).norm() > 1e-10 {
                return Err(invalid(format!(
                    "basis is not orthonormal: <b{i}, b{j}> = {ip}"
                )));
            }
        }
    }
    let images: Vec<Vec<Complex64>> = basis.iter().map(|b| a.apply(b)).collect();
    let mut out = Vec::with_capacity(k * k);
    for bi in basis {
        for img in &images {
            out.push(img.iter().zip(bi).map(|(y, x)| x.conj() * y).sum());
        }
    }
    CMatrix::new(k, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan() -> CMatrix {
        CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn support_of_identity_and_jordan() {
        let i = CMatrix::identity(3);
        assert!((nr_support(&i, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((nr_support(&i, PI).unwrap() + 1.0).abs() < 1e-15);
        for k in 0..12 {
            let t = k as f64 * 0.5;
            assert!((nr_support(&jordan(), t).unwrap() - 0.5).abs() < 1e-15);
        }
        let d = CMatrix::from_real_diag(&[1.0, 0.0]);
        assert!((nr_support(&d, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(nr_support(&d, PI).unwrap().abs() < 1e-15);
    }

    #[test]
    fn hermitian_profile_lies_on_real_axis() {
        let p = nr_profile(&CMatrix::from_real_diag(&[1.0, -1.0]), 8).unwrap();
        for z in &p.boundary {
            assert!(z.im.abs() < 1e-15 && z.re.abs() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn symmetry_defect_examples() {
        let d = nr_symmetry_defect(&CMatrix::from_real_diag(&[1.0, -1.0]), 720).unwrap();
        assert!(d <= 1e-12);
        let d = nr_symmetry_defect(&CMatrix::from_real_diag(&[1.0, 0.0]), 720).unwrap();
        assert!((d - 1.0).abs() <= 1e-12);
        assert!(nr_symmetry_defect(&jordan(), 9).is_err());
        assert!(nr_profile(&jordan(), 4).is_err());
    }

    #[test]
    fn zero_containment_examples() {
        assert!(!contains_zero(&CMatrix::from_real_diag(&[1.0, 2.0]), 720).unwrap());
        assert!(contains_zero(&jordan(), 720).unwrap());
        assert!(contains_zero(&CMatrix::from_real_diag(&[1.0, -1.0]), 720).unwrap());
    }

    #[test]
    fn compress_examples() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let e = |k: usize| {
            let mut v = vec![Complex64::new(0.0, 0.0); 2];
            v[k] = Complex64::new(1.0, 0.0);
            v
        };
        assert_eq!(compress(&a, &[e(0), e(1)]).unwrap(), a);
        let d = CMatrix::from_real_diag(&[1.0, 0.0]);
        assert_eq!(
            compress(&d, &[e(0)]).unwrap(),
            CMatrix::from_real_diag(&[1.0])
        );
        let skewed = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(compress(&a, &[skewed]).is_err());
    }

    #[test]
    fn radial_extent_of_unit_disk() {
        // W(2·J) is the unit disk
        let p = nr_profile(&jordan().scale_real(2.0), 720).unwrap();
        let r = p.radial_extent(0.3).unwrap();
        assert!((r - 1.0).abs() < 1e-4, "{r}");
        let shifted = nr_profile(&CMatrix::from_real_diag(&[1.0, 2.0]), 720).unwrap();
        assert!(shifted.radial_extent(PI).is_none());
    }

    #[test]
    fn csv_header_and_rows() {
        let csv = nr_profile(&jordan(), 8).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("theta,h,re,im"));
        assert_eq!(lines.count(), 8);
    }
}

//! Hermitian eigensolver: cyclic complex Jacobi rotations.

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{invalid, Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 60;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `‖H‖_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Admissible Hermitian defect of the input, relative to `1 + ‖H‖_F`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigen-decomposition of a Hermitian matrix.
///
/// `values` ascend; column `k` of `vectors` is the unit eigenvector for `values[k]`.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }
}

/// Full eigen-decomposition of a Hermitian matrix.
///
/// Fails when `‖H − H*‖ > 1e−10·(1+‖H‖)` (Frobenius norms) or when Jacobi does not
/// converge within [`MAX_SWEEPS`] sweeps.
pub fn herm_eigen(h: &CMatrix) -> Result<HermEigen> {
    let fro = h.frobenius_norm();
    let skew = (h - &h.adjoint()).frobenius_norm();
    if skew > HERMITIAN_TOL * (1.0 + fro) {
        return Err(invalid(format!(
            "matrix is not Hermitian (defect {skew:.3e})"
        )));
    }
    let n = h.dim();
    let mut work = symmetrized(h);
    let mut vecs = CMatrix::identity(n).as_slice().to_vec();
    jacobi(&mut work, n, Some(&mut vecs))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| work[a * n + a].re.total_cmp(&work[b * n + b].re));
    let values = order.iter().map(|&k| work[k * n + k].re).collect();
    let mut sorted = vec![Complex64::new(0.0, 0.0); n * n];
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            sorted[i * n + dst] = vecs[i * n + src];
        }
    }
    Ok(HermEigen {
        values,
        vectors: CMatrix::new(n, sorted)?,
    })
}

/// Largest eigenvalue of a Hermitian matrix given as a row-major buffer.
///
/// The buffer is assumed Hermitian; only the upper triangle and the real part of the
/// diagonal are trusted. Closed form for `n ≤ 2`, Jacobi otherwise.
pub fn top_eigenvalue(h: &[Complex64], n: usize) -> Result<f64> {
    match n {
        1 => Ok(h[0].re),
        2 => {
            let (a, b) = (h[0].re, h[3].re);
            let mid = 0.5 * (a + b);
            Ok(mid + (0.5 * (a - b)).hypot(h[1].norm()))
        }
        _ => {
            let mut work = upper_to_full(h, n);
            jacobi(&mut work, n, None)?;
            Ok((0..n)
                .map(|k| work[k * n + k].re)
                .fold(f64::NEG_INFINITY, f64::max))
        }
    }
}

/// Largest eigenvalue together with a unit eigenvector.
pub fn top_eigenpair(h: &[Complex64], n: usize) -> Result<(f64, Vec<Complex64>)> {
    let mut work = upper_to_full(h, n);
    let mut vecs = CMatrix::identity(n).as_slice().to_vec();
    jacobi(&mut work, n, Some(&mut vecs))?;
    let top = (0..n)
        .max_by(|&a, &b| work[a * n + a].re.total_cmp(&work[b * n + b].re))
        .expect("n > 0");
    let v = (0..n).map(|i| vecs[i * n + top]).collect();
    Ok((work[top * n + top].re, v))
}

fn symmetrized(h: &CMatrix) -> Vec<Complex64> {
    let n = h.dim();
    let mut out = h.as_slice().to_vec();
    for i in 0..n {
        out[i * n + i] = Complex64::new(h[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = 0.5 * (h[(i, j)] + h[(j, i)].conj());
            out[i * n + j] = z;
            out[j * n + i] = z.conj();
        }
    }
    out
}

fn upper_to_full(h: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = h.to_vec();
    for i in 0..n {
        out[i * n + i].im = 0.0;
        for j in i + 1..n {
            out[j * n + i] = h[i * n + j].conj();
        }
    }
    out
}

/// Cyclic Jacobi on a Hermitian buffer; on exit `h` is diagonal to within
/// `OFF_DIAGONAL_TOL·‖H‖_F`. When `vecs` is given it accumulates the rotations.
fn jacobi(h: &mut [Complex64], n: usize, mut vecs: Option<&mut [Complex64]>) -> Result<usize> {
    let fro = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_TOL * fro;
    for sweep in 0..=MAX_SWEEPS {
        let off = off_diagonal_norm(h, n);
        if off <= target || off == 0.0 {
            return Ok(sweep);
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = h[p * n + q];
                let abs_g = g.norm();
                if abs_g == 0.0 {
                    continue;
                }
                let a = h[p * n + p].re;
                let b = h[q * n + q].re;
                // negligible compared with both diagonal entries
                if abs_g < 1e-18 * (a.abs() + b.abs()) {
                    h[p * n + q] = Complex64::new(0.0, 0.0);
                    h[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = g / abs_g;
                let theta = (b - a) / (2.0 * abs_g);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                } else {
                    0.0
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // J = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let hkp = h[k * n + p];
                    let hkq = h[k * n + q];
                    h[k * n + p] = hkp * jpp + hkq * jqp;
                    h[k * n + q] = hkp * jpq + hkq * jqq;
                }
                for k in 0..n {
                    let hpk = h[p * n + k];
                    let hqk = h[q * n + k];
                    h[p * n + k] = jpp.conj() * hpk + jqp.conj() * hqk;
                    h[q * n + k] = jpq.conj() * hpk + jqq.conj() * hqk;
                }
                h[p * n + p] = Complex64::new(a - t * abs_g, 0.0);
                h[q * n + q] = Complex64::new(b + t * abs_g, 0.0);
                h[p * n + q] = Complex64::new(0.0, 0.0);
                h[q * n + p] = Complex64::new(0.0, 0.0);
                if let Some(v) = vecs.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * jpp + vkq * jqp;
                        v[k * n + q] = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }
    Err(Error::NumericalFailure(format!(
        "Jacobi did not converge in {MAX_SWEEPS} sweeps"
    )))
}

fn off_diagonal_norm(h: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += h[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

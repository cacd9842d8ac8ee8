use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{cartesian_parts, top_eigenpair, top_eigenvalue, CMatrix};

/// The Hermitian pencil `u1·Re A + u2·Im A + u3·A*A`.
///
/// Its top eigenvalue is the support function of the Davis–Wielandt shell in
/// direction `u`; with `u3 = 0` it is the support function of the numerical range.
#[derive(Debug, Clone)]
pub struct Pencil {
    n: usize,
    re: Vec<Complex64>,
    im: Vec<Complex64>,
    gram: Vec<Complex64>,
    norm_re: f64,
    norm_im: f64,
    norm_gram: f64,
}

impl Pencil {
    pub fn new(a: &CMatrix) -> Result<Self> {
        let parts = cartesian_parts(a);
        let n = a.dim();
        let spectral = |m: &CMatrix| -> Result<f64> {
            let top = top_eigenvalue(m.as_slice(), n)?;
            let bottom = -top_eigenvalue(m.scale_real(-1.0).as_slice(), n)?;
            Ok(top.abs().max(bottom.abs()))
        };
        Ok(Self {
            n,
            norm_re: spectral(&parts.re)?,
            norm_im: spectral(&parts.im)?,
            norm_gram: spectral(&parts.gram)?,
            re: parts.re.as_slice().to_vec(),
            im: parts.im.as_slice().to_vec(),
            gram: parts.gram.as_slice().to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `(‖Re A‖, ‖Im A‖, ‖A*A‖)`.
    pub fn part_norms(&self) -> (f64, f64, f64) {
        (self.norm_re, self.norm_im, self.norm_gram)
    }

    /// `‖A‖²`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_gram
    }

    fn combine(&self, u: [f64; 3]) -> Vec<Complex64> {
        let [u1, u2, u3] = u;
        self.re
            .iter()
            .zip(&self.im)
            .zip(&self.gram)
            .map(|((x, y), g)| x * u1 + y * u2 + g * u3)
            .collect()
    }

    /// Top eigenvalue of the pencil at `u`.
    pub fn support(&self, u: [f64; 3]) -> Result<f64> {
        top_eigenvalue(&self.combine(u), self.n)
    }

    /// Top eigenvalue and a unit top eigenvector of the pencil at `u`.
    pub fn support_vector(&self, u: [f64; 3]) -> Result<(f64, Vec<Complex64>)> {
        top_eigenpair(&self.combine(u), self.n)
    }

    /// `(⟨Ax,x⟩, ⟨A*Ax,x⟩)` for a unit vector `x`, evaluated through the parts.
    pub fn shell_coordinates(&self, x: &[Complex64]) -> (Complex64, f64) {
        let form = |m: &[Complex64]| -> f64 {
            let n = self.n;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let row: Complex64 = (0..n).map(|j| m[i * n + j] * x[j]).sum();
                acc += x[i].conj() * row;
            }
            acc.re
        };
        (
            Complex64::new(form(&self.re), form(&self.im)),
            form(&self.gram),
        )
    }
}

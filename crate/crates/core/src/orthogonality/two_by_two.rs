//! Closed forms for 2×2 matrices: the elliptical numerical range and the vertical
//! axis of the Davis–Wielandt ellipsoid.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eig2x2, herm_eigen, CMatrix};

fn require_2x2(a: &CMatrix) -> Result<()> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: a.dim(),
        });
    }
    Ok(())
}

/// `W(A)` for a 2×2 matrix: an elliptical disk with foci at the eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ellipse2x2 {
    pub center: Complex64,
    pub foci: (Complex64, Complex64),
    /// Full length of the minor axis, `sqrt(tr(A*A) − |α|² − |β|²)`.
    pub minor_axis: f64,
}

impl Ellipse2x2 {
    pub fn semi_minor(&self) -> f64 {
        0.5 * self.minor_axis
    }

    pub fn semi_major(&self) -> f64 {
        (0.5 * (self.foci.0 - self.foci.1).norm()).hypot(self.semi_minor())
    }

    /// Angle of the major axis (0 when the foci coincide).
    pub fn major_angle(&self) -> f64 {
        let d = self.foci.0 - self.foci.1;
        if d.norm() == 0.0 {
            0.0
        } else {
            d.arg()
        }
    }
}

pub fn ellipse_params_2x2(a: &CMatrix) -> Result<Ellipse2x2> {
    require_2x2(a)?;
    let (alpha, beta) = eig2x2(a)?;
    let fro2: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum();
    let radicand = fro2 - alpha.norm_sqr() - beta.norm_sqr();
    Ok(Ellipse2x2 {
        center: a.trace() * 0.5,
        foci: (alpha, beta),
        minor_axis: radicand.max(0.0).sqrt(),
    })
}

/// Center and vertical half-axis of the Davis–Wielandt ellipsoid of a 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DwAxis2x2 {
    /// `(tr(A)/2, tr(A*A)/2)`.
    pub center: (Complex64, f64),
    /// `‖A*A − (tr(A*A)/2)·I‖`.
    pub axis_halflength: f64,
}

pub fn dw_axis_2x2(a: &CMatrix) -> Result<DwAxis2x2> {
    require_2x2(a)?;
    let gram = &a.adjoint() * a;
    let half_trace = 0.5 * gram.trace().re;
    let eig = herm_eigen(&gram.shift(Complex64::new(-half_trace, 0.0)))?;
    Ok(DwAxis2x2 {
        center: (a.trace() * 0.5, half_trace),
        axis_halflength: eig.max().abs().max(eig.min().abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_examples() {
        let j = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let e = ellipse_params_2x2(&j).unwrap();
        assert_eq!(e.center, Complex64::new(0.0, 0.0));
        assert_eq!(e.minor_axis, 1.0);
        assert_eq!(e.semi_major(), 0.5);

        let e = ellipse_params_2x2(&CMatrix::from_real_diag(&[1.0, -1.0])).unwrap();
        assert_eq!(e.minor_axis, 0.0);
        let mut foci = [e.foci.0.re, e.foci.1.re];
        foci.sort_by(f64::total_cmp);
        assert_eq!(foci, [-1.0, 1.0]);

        let e = ellipse_params_2x2(&j.scale_real(2.0)).unwrap();
        assert_eq!(e.minor_axis, 2.0);
        assert!(ellipse_params_2x2(&CMatrix::identity(3)).is_err());
    }

    #[test]
    fn dw_axis_examples() {
        let j = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let d = dw_axis_2x2(&j).unwrap();
        assert_eq!(d.center, (Complex64::new(0.0, 0.0), 0.5));
        assert!((d.axis_halflength - 0.5).abs() < 1e-15);
        let d = dw_axis_2x2(&CMatrix::from_real_diag(&[1.0, -1.0])).unwrap();
        assert_eq!(d.center.1, 1.0);
        assert!(d.axis_halflength.abs() < 1e-15);
    }
}

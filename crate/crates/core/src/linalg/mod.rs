//! Dense complex matrices, the Hermitian eigensolver and the small closed forms the
//! rest of the crate builds on.

mod eigen;
mod matrix;

use num_complex::Complex64;

pub use eigen::{herm_eigen, top_eigenpair, top_eigenvalue, HermEigen};
pub use matrix::CMatrix;

use crate::error::{Error, Result};

/// Cartesian decomposition `A = Re A + i·Im A` together with the Gram matrix `A*A`.
#[derive(Debug, Clone)]
pub struct CartesianParts {
    pub re: CMatrix,
    pub im: CMatrix,
    pub gram: CMatrix,
}

/// `Re A = (A + A*)/2`, `Im A = (A − A*)/(2i)` and `A*A`.
///
/// All three outputs are Hermitian bit-for-bit: `(i, j)` and `(j, i)` entries are
/// computed from the same operands.
pub fn cartesian_parts(a: &CMatrix) -> CartesianParts {
    let n = a.dim();
    let mut re = CMatrix::zeros(n);
    let mut im = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let aij = a[(i, j)];
            let aji_conj = a[(j, i)].conj();
            re[(i, j)] = (aij + aji_conj) * 0.5;
            let d = aij - aji_conj;
            // d / (2i) = -i·d / 2
            im[(i, j)] = Complex64::new(d.im, -d.re) * 0.5;
        }
    }
    let mut gram = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = (0..n).map(|k| a[(k, i)].conj() * a[(k, j)]).sum();
        }
    }
    CartesianParts { re, im, gram }
}

/// Spectral norm `‖A‖ = sqrt(λ_max(A*A))`.
pub fn operator_norm(a: &CMatrix) -> Result<f64> {
    let gram = cartesian_parts_gram(a);
    Ok(top_eigenvalue(gram.as_slice(), a.dim())?.max(0.0).sqrt())
}

fn cartesian_parts_gram(a: &CMatrix) -> CMatrix {
    let n = a.dim();
    let mut gram = CMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            gram[(i, j)] = (0..n).map(|k| a[(k, i)].conj() * a[(k, j)]).sum();
        }
    }
    gram
}

/// Eigenvalues of a 2×2 matrix: the roots of `z² − tr(A)·z + det(A)`.
pub fn eig2x2(a: &CMatrix) -> Result<(Complex64, Complex64)> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: a.dim(),
        });
    }
    let tr = a.trace();
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    // pick the sign that avoids cancellation, recover the partner from the product
    let big = if (tr + disc).norm() >= (tr - disc).norm() {
        (tr + disc) * 0.5
    } else {
        (tr - disc) * 0.5
    };
    if big.norm() == 0.0 {
        return Ok((big, big));
    }
    Ok((big, det / big))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn jordan() -> CMatrix {
        CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn cartesian_parts_of_scalar_i() {
        let p = cartesian_parts(&CMatrix::from_diag(&[c(0.0, 1.0)]));
        assert_eq!(p.re[(0, 0)], c(0.0, 0.0));
        assert_eq!(p.im[(0, 0)], c(1.0, 0.0));
        assert_eq!(p.gram[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn cartesian_parts_of_jordan_block() {
        let a = jordan();
        let p = cartesian_parts(&a);
        assert_eq!(
            p.re,
            CMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap()
        );
        assert_eq!(
            p.im,
            CMatrix::from_rows(&[
                vec![c(0.0, 0.0), c(0.0, -0.5)],
                vec![c(0.0, 0.5), c(0.0, 0.0)]
            ])
            .unwrap()
        );
        let back = &p.re + &p.im.scale(c(0.0, 1.0));
        assert!((&back - &a).max_abs() <= 1e-15);
        assert_eq!(p.gram, CMatrix::from_real_diag(&[0.0, 1.0]));
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(
            operator_norm(&CMatrix::from_real_diag(&[1.0, -2.0])).unwrap(),
            2.0
        );
        assert_eq!(operator_norm(&jordan()).unwrap(), 1.0);
    }

    #[test]
    fn eig2x2_examples() {
        let (a, b) = eig2x2(&jordan()).unwrap();
        assert_eq!((a, b), (c(0.0, 0.0), c(0.0, 0.0)));

        let (a, b) = eig2x2(&CMatrix::from_real_diag(&[3.0, -5.0])).unwrap();
        let mut got = [a.re, b.re];
        got.sort_by(f64::total_cmp);
        assert_eq!(got, [-5.0, 3.0]);

        let m = CMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let (a, b) = eig2x2(&m).unwrap();
        let r = 33f64.sqrt();
        let mut got = [a.re, b.re];
        got.sort_by(f64::total_cmp);
        assert!((got[0] - (5.0 - r) / 2.0).abs() < 1e-14);
        assert!((got[1] - (5.0 + r) / 2.0).abs() < 1e-14);
        assert!(a.im.abs() < 1e-15 && b.im.abs() < 1e-15);
    }

    #[test]
    fn eig2x2_rejects_other_dimensions() {
        assert!(eig2x2(&CMatrix::identity(3)).is_err());
    }
}

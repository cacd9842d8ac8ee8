#![allow(dead_code)]

use dwshell::generate::MatrixRng;
use dwshell::CMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

/// Square complex matrices with entries in `[-2, 2] + i[-2, 2]`.
pub fn matrix(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CMatrix> {
    dims.prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
            CMatrix::new(
                n,
                v.into_iter()
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect(),
            )
            .unwrap()
        })
    })
}

pub fn hermitian(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CMatrix> {
    matrix(dims).prop_map(|a| (&a + &a.adjoint()).scale_real(0.5))
}

/// `U·(B ⊕ −B ⊕ 0)·U*`, unitarily similar to its negative.
pub fn roberts_generic(rng: &mut MatrixRng, n: usize) -> CMatrix {
    let k = n / 2;
    let b = rng.ginibre(k);
    let mut m = CMatrix::zeros(n);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = b[(i, j)];
            m[(k + i, k + j)] = -b[(i, j)];
        }
    }
    let u = rng.unitary(n);
    m.conjugate_by(&u.adjoint())
}

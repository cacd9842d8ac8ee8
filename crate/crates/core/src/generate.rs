//! Seeded random matrices for every class the deciders are exercised on.
//!
//! The stream is xoshiro256** seeded through SplitMix64 (`rand_xoshiro`'s
//! `seed_from_u64`). Uniforms take the top 53 bits of each output; Gaussians come
//! from the Marsaglia polar method, and a standard complex Gaussian is
//! `(x + iy)/√2` for one polar pair `(x, y)`, so `E|z|² = 1`. Matrices are filled
//! row-major, one polar pair per entry. Trial `t` of a harness run uses the seed
//! `seed + t·0x9E3779B97F4A7C15` (wrapping), which keeps trials independent of
//! evaluation order.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::CMatrix;

const SUBSTREAM_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed of trial `trial` in a run seeded with `seed`.
pub fn substream_seed(seed: u64, trial: u64) -> u64 {
    seed.wrapping_add(trial.wrapping_mul(SUBSTREAM_STRIDE))
}

pub struct MatrixRng {
    inner: Xoshiro256StarStar,
}

impl MatrixRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    pub fn for_trial(seed: u64, trial: u64) -> Self {
        Self::new(substream_seed(seed, trial))
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, len: usize) -> usize {
        ((self.uniform() * len as f64) as usize).min(len - 1)
    }

    /// Two independent standard normals.
    pub fn gaussian_pair(&mut self) -> (f64, f64) {
        loop {
            let x = 2.0 * self.uniform() - 1.0;
            let y = 2.0 * self.uniform() - 1.0;
            let s = x * x + y * y;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                return (x * f, y * f);
            }
        }
    }

    pub fn complex_gaussian(&mut self) -> Complex64 {
        let (x, y) = self.gaussian_pair();
        Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn ginibre(&mut self, n: usize) -> CMatrix {
        let data = (0..n * n).map(|_| self.complex_gaussian()).collect();
        CMatrix::new(n, data).expect("finite Gaussian entries")
    }

    pub fn hermitian(&mut self, n: usize) -> CMatrix {
        let g = self.ginibre(n);
        (&g + &g.adjoint()).scale_real(0.5)
    }

    /// Orthonormalized Ginibre sample; the triangular factor has positive diagonal.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        orthonormalize(&self.ginibre(n))
    }

    pub fn normal_with_spectrum(&mut self, spectrum: &[Complex64]) -> CMatrix {
        let u = self.unitary(spectrum.len());
        CMatrix::from_diag(spectrum).conjugate_by(&u.adjoint())
    }

    pub fn trace_zero_2x2(&mut self) -> CMatrix {
        let g = self.ginibre(2);
        g.shift(-g.trace() * 0.5)
    }

    /// Normal matrix with spectrum `S ∪ (−S)`, plus `0` when `n` is odd.
    pub fn symmetric_spectrum_normal(
        &mut self,
        n: usize,
        half: Option<&[Complex64]>,
    ) -> Result<CMatrix> {
        let half: Vec<Complex64> = match half {
            Some(s) if s.len() == n / 2 => s.to_vec(),
            Some(s) => {
                return Err(invalid(format!(
                    "half spectrum for n = {n} needs {} values, got {}",
                    n / 2,
                    s.len()
                )))
            }
            None => (0..n / 2).map(|_| self.complex_gaussian()).collect(),
        };
        let mut full = half.clone();
        full.extend(half.iter().map(|z| -z));
        if n % 2 == 1 {
            full.push(Complex64::new(0.0, 0.0));
        }
        Ok(self.normal_with_spectrum(&full))
    }

    /// `(A, B)` with `A*B = 0`: ranges in complementary coordinate blocks, then a
    /// common unitary conjugation.
    pub fn orthogonal_pair(&mut self, n: usize, k: usize) -> Result<(CMatrix, CMatrix)> {
        if k == 0 || k >= n {
            return Err(invalid(format!(
                "block split k = {k} must satisfy 0 < k < {n}"
            )));
        }
        let mut a = CMatrix::zeros(n);
        let mut b = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let z = self.complex_gaussian();
                if i < k {
                    a[(i, j)] = z;
                } else {
                    b[(i, j)] = z;
                }
            }
        }
        let u = self.unitary(n);
        let ut = u.adjoint();
        Ok((a.conjugate_by(&ut), b.conjugate_by(&ut)))
    }
}

/// Modified Gram–Schmidt, applied twice per column.
fn orthonormalize(g: &CMatrix) -> CMatrix {
    let n = g.dim();
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for prev in &q {
                let ip: Complex64 = prev.iter().zip(&v).map(|(p, x)| p.conj() * x).sum();
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= ip * p;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        q.push(v);
    }
    let mut out = CMatrix::zeros(n);
    for (j, col) in q.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out[(i, j)] = z;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenClass {
    Ginibre,
    Hermitian,
    Unitary,
    NormalWithSpectrum,
    #[serde(rename = "trace_zero_2x2")]
    TraceZero2x2,
    SymmetricSpectrumNormal,
    OrthogonalPair,
}

impl GenClass {
    pub const ALL: [GenClass; 7] = [
        GenClass::Ginibre,
        GenClass::Hermitian,
        GenClass::Unitary,
        GenClass::NormalWithSpectrum,
        GenClass::TraceZero2x2,
        GenClass::SymmetricSpectrumNormal,
        GenClass::OrthogonalPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenClass::Ginibre => "ginibre",
            GenClass::Hermitian => "hermitian",
            GenClass::Unitary => "unitary",
            GenClass::NormalWithSpectrum => "normal_with_spectrum",
            GenClass::TraceZero2x2 => "trace_zero_2x2",
            GenClass::SymmetricSpectrumNormal => "symmetric_spectrum_normal",
            GenClass::OrthogonalPair => "orthogonal_pair",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Everything needed to regenerate a sample bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub class: GenClass,
    pub n: usize,
    pub seed: u64,
    /// Full spectrum for `normal_with_spectrum`, half spectrum `S` for
    /// `symmetric_spectrum_normal`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<[f64; 2]>>,
    /// Block split for `orthogonal_pair` (default `n/2`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl GenSpec {
    pub fn new(class: GenClass, n: usize, seed: u64) -> Self {
        Self {
            class,
            n,
            seed,
            spectrum: None,
            k: None,
        }
    }

    pub fn with_spectrum(mut self, spectrum: &[Complex64]) -> Self {
        self.spectrum = Some(spectrum.iter().map(|z| [z.re, z.im]).collect());
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    fn spectrum_values(&self) -> Option<Vec<Complex64>> {
        self.spectrum
            .as_ref()
            .map(|s| s.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Single(CMatrix),
    Pair(CMatrix, CMatrix),
}

impl Generated {
    pub fn single(self) -> Option<CMatrix> {
        match self {
            Generated::Single(m) => Some(m),
            Generated::Pair(..) => None,
        }
    }

    pub fn pair(self) -> Option<(CMatrix, CMatrix)> {
        match self {
            Generated::Pair(a, b) => Some((a, b)),
            Generated::Single(_) => None,
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let n = spec.n;
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let mut rng = MatrixRng::new(spec.seed);
    let single = |m| Ok(Generated::Single(m));
    match spec.class {
        GenClass::Ginibre => single(rng.ginibre(n)),
        GenClass::Hermitian => single(rng.hermitian(n)),
        GenClass::Unitary => single(rng.unitary(n)),
        GenClass::NormalWithSpectrum => {
            let s = spec
                .spectrum_values()
                .ok_or_else(|| invalid("normal_with_spectrum needs a spectrum"))?;
            if s.len() != n {
                return Err(invalid(format!(
                    "spectrum has {} values, expected {n}",
                    s.len()
                )));
            }
            single(rng.normal_with_spectrum(&s))
        }
        GenClass::TraceZero2x2 => {
            if n != 2 {
                return Err(invalid(format!("trace_zero_2x2 requires n = 2, got {n}")));
            }
            single(rng.trace_zero_2x2())
        }
        GenClass::SymmetricSpectrumNormal => {
            if n < 2 {
                return Err(invalid("symmetric_spectrum_normal requires n >= 2"));
            }
            let half = spec.spectrum_values();
            single(rng.symmetric_spectrum_normal(n, half.as_deref())?)
        }
        GenClass::OrthogonalPair => {
            if n < 2 {
                return Err(invalid("orthogonal_pair requires n >= 2"));
            }
            let (a, b) = rng.orthogonal_pair(n, spec.k.unwrap_or(n / 2))?;
            Ok(Generated::Pair(a, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_norm;

    #[test]
    fn unitary_is_unitary() {
        for seed in 0..5 {
            let u = generate(&GenSpec::new(GenClass::Unitary, 5, seed))
                .unwrap()
                .single()
                .unwrap();
            let d = &(&u.adjoint() * &u) - &CMatrix::identity(5);
            assert!(d.max_abs() <= 1e-12, "seed {seed}: {}", d.max_abs());
        }
    }

    #[test]
    fn orthogonal_pair_annihilates() {
        let (a, b) = generate(&GenSpec::new(GenClass::OrthogonalPair, 4, 9).with_k(2))
            .unwrap()
            .pair()
            .unwrap();
        let prod = &a.adjoint() * &b;
        let scale = operator_norm(&a).unwrap() * operator_norm(&b).unwrap();
        assert!(operator_norm(&prod).unwrap() <= 1e-12 * scale);
    }

    #[test]
    fn deterministic_per_spec() {
        for class in GenClass::ALL {
            let n = if class == GenClass::TraceZero2x2 {
                2
            } else {
                4
            };
            let mut spec = GenSpec::new(class, n, 77);
            if class == GenClass::NormalWithSpectrum {
                spec = spec.with_spectrum(&[Complex64::new(1.0, 0.0); 4]);
            }
            assert_eq!(
                generate(&spec).unwrap(),
                generate(&spec).unwrap(),
                "{class:?}"
            );
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(generate(&GenSpec::new(GenClass::TraceZero2x2, 3, 0)).is_err());
        assert!(generate(&GenSpec::new(GenClass::NormalWithSpectrum, 3, 0)).is_err());
        assert!(generate(&GenSpec::new(GenClass::OrthogonalPair, 4, 0).with_k(4)).is_err());
        assert!(generate(&GenSpec::new(GenClass::Ginibre, 0, 0)).is_err());
        let spec = GenSpec::new(GenClass::SymmetricSpectrumNormal, 4, 0)
            .with_spectrum(&[Complex64::new(1.0, 0.0)]);
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn trace_zero_has_zero_trace() {
        let m = generate(&GenSpec::new(GenClass::TraceZero2x2, 2, 3))
            .unwrap()
            .single()
            .unwrap();
        assert!(m.trace().norm() < 1e-15);
    }

    #[test]
    fn spec_json_names() {
        let spec = GenSpec::new(GenClass::TraceZero2x2, 2, 1);
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains("\"trace_zero_2x2\""), "{s}");
        assert_eq!(
            GenClass::from_name("orthogonal_pair"),
            Some(GenClass::OrthogonalPair)
        );
    }
}

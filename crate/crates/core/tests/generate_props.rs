use std::f64::consts::PI;

use dwshell::generate::{generate, GenClass, GenSpec, MatrixRng};
use dwshell::operator_norm;
use dwshell::orthogonality::{classify, ClassTag};
use dwshell::ranges::nr_support;
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), n in 2usize..=5, class_index in 0usize..7) {
        let class = GenClass::ALL[class_index];
        let n = if class == GenClass::TraceZero2x2 { 2 } else { n };
        let mut spec = GenSpec::new(class, n, seed).with_k(1);
        if class == GenClass::NormalWithSpectrum {
            let values: Vec<Complex64> = (0..n).map(|k| Complex64::new(k as f64, 1.0)).collect();
            spec = spec.with_spectrum(&values);
        }
        let first = generate(&spec).unwrap();
        prop_assert_eq!(&first, &generate(&spec).unwrap());
    }

    #[test]
    fn class_residuals_meet_thresholds(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = MatrixRng::new(seed);
        prop_assert_eq!(classify(&rng.hermitian(n)).unwrap().tag, ClassTag::SelfAdjoint);
        prop_assert_eq!(classify(&rng.unitary(n)).unwrap().tag, ClassTag::Unitary);
        let normal = rng.symmetric_spectrum_normal(n, None).unwrap();
        prop_assert!(matches!(classify(&normal).unwrap().tag, ClassTag::Normal | ClassTag::Unitary | ClassTag::SelfAdjoint));
        let u = rng.unitary(n);
        prop_assert!(operator_norm(&(&(&u.adjoint() * &u) - &dwshell::CMatrix::identity(n))).unwrap() <= 1e-12);
    }

    #[test]
    fn normal_support_matches_convex_hull(seed in any::<u64>(), n in 1usize..=5, theta in 0.0..2.0 * PI) {
        let mut rng = MatrixRng::new(seed);
        let spectrum: Vec<Complex64> = (0..n).map(|_| rng.complex_gaussian() * 2.0).collect();
        let a = rng.normal_with_spectrum(&spectrum);
        let rot = Complex64::from_polar(1.0, -theta);
        let expected = spectrum.iter().map(|z| (rot * z).re).fold(f64::NEG_INFINITY, f64::max);
        let radius = spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!((nr_support(&a, theta).unwrap() - expected).abs() <= 1e-8 * (1.0 + radius));
    }

    #[test]
    fn orthogonal_pairs_annihilate(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = MatrixRng::new(seed);
        let k = 1 + rng.index(n - 1);
        let (a, b) = rng.orthogonal_pair(n, k).unwrap();
        let prod = operator_norm(&(&a.adjoint() * &b)).unwrap();
        prop_assert!(prod <= 1e-12 * operator_norm(&a).unwrap() * operator_norm(&b).unwrap());
    }
}

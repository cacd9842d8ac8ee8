//! Randomized batteries behind `dwshell proptest <suite>`.
//!
//! Trial `t` draws from the substream `(seed, t)`, so a failure replays with the
//! same `--seed` regardless of thread count.

use std::f64::consts::PI;

use anyhow::Result;
use clap::ValueEnum;
use dwshell::generate::{generate, substream_seed, GenClass, GenSpec, MatrixRng};
use dwshell::orthogonality::{
    bj_pair, bj_to_identity, center_selfadjoint, dw_axis_2x2, ellipse_params_2x2,
    roberts_refute_pair, roberts_to_identity, single_lambda_check, DeciderConfig, VerdictKind,
};
use dwshell::ranges::{nr_support, nr_symmetry_defect};
use dwshell::shell::{dv_upper_samples, shell_point, Direction3};
use dwshell::{herm_eigen, operator_norm, CMatrix, Pencil};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use crate::config::RunConfig;
use crate::{EXIT_NO, EXIT_YES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Pairs with A*B = 0: no Roberts witness, Birkhoff-James both ways.
    Chain,
    /// 2x2: trace criterion against the forced shell sweep.
    Twobytwo,
    /// Hermitian: spectral criterion, centering, single-λ check.
    Selfadjoint,
    /// Normal: spectral symmetry against shell sweep and fast path.
    Normal,
    /// Verdict invariance and necessary conditions on mixed matrices.
    Invariance,
    /// 2x2 numerical range against its ellipse.
    Ellipse,
    /// 2x2 shell against its vertical axis.
    Axis,
    /// Shell sweep against brute-force λ-grid refutation.
    Oracle,
    /// Generator determinism.
    Generators,
}

impl Suite {
    fn properties(self) -> &'static [&'static str] {
        match self {
            Suite::Chain => &["no_roberts_witness", "bj_a_b", "bj_b_a"],
            Suite::Twobytwo => &["trace_matches_shell"],
            Suite::Selfadjoint => &["spectral_criterion", "centering", "single_lambda"],
            Suite::Normal => &["shell_matches_construction", "fast_path_matches_shell"],
            Suite::Invariance => &[
                "negation",
                "rotation",
                "scaling",
                "unitary_similarity",
                "necessary_condition",
                "roberts_implies_bj",
            ],
            Suite::Ellipse => &["support_matches_ellipse"],
            Suite::Axis => &["vertical_bound", "extremes_attained"],
            Suite::Oracle => &["shell_matches_brute_force"],
            Suite::Generators => &["deterministic"],
        }
    }
}

type Checks = Vec<bool>;

pub fn run(cfg: &RunConfig, suite: Suite, trials: u64) -> Result<i32> {
    let names = suite.properties();
    let results: Vec<Checks> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = MatrixRng::for_trial(cfg.seed, t);
            run_trial(cfg, suite, &mut rng, t)
        })
        .collect::<Result<_>>()?;
    let summary: Vec<serde_json::Value> = names
        .iter()
        .enumerate()
        .map(|(p, name)| {
            let passed = results.iter().filter(|r| r[p]).count();
            let first_failure = results.iter().position(|r| !r[p]);
            json!({
                "property": name,
                "passed": passed,
                "trials": trials,
                "first_failing_trial": first_failure,
                "first_failing_substream": first_failure.map(|t| substream_seed(cfg.seed, t as u64)),
            })
        })
        .collect();
    let all_pass = results.iter().all(|r| r.iter().all(|&ok| ok));
    if cfg.json {
        let doc = json!({ "suite": format!("{suite:?}").to_lowercase(), "seed": cfg.seed, "properties": summary, "all_pass": all_pass });
        print!("{}", cfg.render(&doc));
    } else {
        for s in &summary {
            print!(
                "{}: {}/{}",
                s["property"].as_str().unwrap_or(""),
                s["passed"],
                s["trials"]
            );
            if let Some(t) = s["first_failing_trial"].as_u64() {
                print!("  first failure at trial {t} (--seed {})", cfg.seed);
            }
            println!();
        }
    }
    Ok(if all_pass { EXIT_YES } else { EXIT_NO })
}

fn run_trial(cfg: &RunConfig, suite: Suite, rng: &mut MatrixRng, t: u64) -> Result<Checks> {
    let dec = &cfg.decider;
    let tau_fail = dec.tolerances.tau_fail;
    let checks = match suite {
        Suite::Chain => {
            let n = 2 + rng.index(5);
            let k = 1 + rng.index(n - 1);
            let (a, b) = rng.orthogonal_pair(n, k)?;
            vec![
                roberts_refute_pair(&a, &b, &cfg.lambda_grid, 1e-9)?.is_none(),
                bj_pair(&a, &b, &cfg.lambda_grid, tau_fail)?,
                bj_pair(&b, &a, &cfg.lambda_grid, tau_fail)?,
            ]
        }
        Suite::Twobytwo => {
            let a = if t % 5 == 4 {
                rng.trace_zero_2x2()
            } else {
                rng.ginibre(2)
            };
            let fast = roberts_to_identity(
                &a,
                &DeciderConfig {
                    force_shell: false,
                    ..*dec
                },
            )?;
            let shell = roberts_to_identity(&a, &dec.forced_shell())?;
            vec![fast.kind != VerdictKind::Inconclusive && fast.kind == shell.kind]
        }
        Suite::Selfadjoint => {
            let n = 1 + rng.index(6);
            let h = rng.hermitian(n);
            let eig = herm_eigen(&h)?;
            let norm = operator_norm(&h)?;
            let truth = (eig.max() + eig.min()).abs() <= 1e-10 * (1.0 + norm);
            let v = roberts_to_identity(&h, dec)?;
            let expected = if truth {
                VerdictKind::RobertsCertified
            } else {
                VerdictKind::NotRoberts
            };
            let centred = h.shift(Complex64::new(-center_selfadjoint(&h)?, 0.0));
            let lambda0 = rng.uniform_in(0.1, 3.0);
            vec![
                v.kind == expected,
                roberts_to_identity(&centred, dec)?.is_roberts(),
                single_lambda_check(&centred, lambda0)?,
            ]
        }
        Suite::Normal => {
            let n = 3 + rng.index(3);
            let symmetric = t.is_multiple_of(2);
            let mut a = rng.symmetric_spectrum_normal(n, None)?;
            if !symmetric {
                let shift =
                    Complex64::from_polar(rng.uniform_in(0.1, 0.5), rng.uniform_in(0.0, 2.0 * PI));
                a = a.shift(shift);
            }
            let expected = if symmetric {
                VerdictKind::RobertsCertified
            } else {
                VerdictKind::NotRoberts
            };
            let shell = roberts_to_identity(&a, &dec.forced_shell())?;
            let fast = roberts_to_identity(
                &a,
                &DeciderConfig {
                    force_shell: false,
                    ..*dec
                },
            )?;
            vec![shell.kind == expected, fast.kind == shell.kind]
        }
        Suite::Invariance => {
            let a = mixed_matrix(rng, t);
            let kind = |m: &CMatrix| roberts_to_identity(m, dec).map(|v| v.kind);
            let base = kind(&a)?;
            let theta = 2.0 * PI * rng.index(24) as f64 / 24.0;
            let c = rng.uniform_in(0.1, 10.0);
            let u = rng.unitary(a.dim());
            let norm = operator_norm(&a)?;
            let roberts = base == VerdictKind::RobertsCertified;
            let nr = nr_symmetry_defect(&a, dec.nr_theta)?;
            vec![
                kind(&(-&a))? == base,
                kind(&a.scale(Complex64::from_polar(1.0, theta)))? == base,
                kind(&a.scale_real(c))? == base,
                kind(&a.conjugate_by(&u))? == base,
                !roberts || nr <= 3.0 * dec.tolerances.tau_pass * (1.0 + norm),
                !roberts || bj_to_identity(&a)?,
            ]
        }
        Suite::Ellipse => {
            let a = rng.ginibre(2);
            let e = ellipse_params_2x2(&a)?;
            let (big, small, psi) = (e.semi_major(), e.semi_minor(), e.major_angle());
            let norm = operator_norm(&a)?;
            let mut ok = true;
            for j in 0..360 {
                let th = 2.0 * PI * j as f64 / 360.0;
                // support function of the ellipse in direction θ
                let rel = th - psi;
                let expected = (Complex64::from_polar(1.0, -th) * e.center).re
                    + (big * big * rel.cos().powi(2) + small * small * rel.sin().powi(2)).sqrt();
                ok &= (nr_support(&a, th)? - expected).abs() <= 1e-8 * (1.0 + norm);
            }
            vec![ok]
        }
        Suite::Axis => {
            let a = rng.ginibre(2);
            let axis = dw_axis_2x2(&a)?;
            let (centre, half) = (axis.center.1, axis.axis_halflength);
            let cloud = dv_upper_samples(&a, &cfg.hemisphere())?;
            let lower = shell_point(&Pencil::new(&a)?, Direction3::new(0.0, 0.0, -1.0)?)?;
            let bounded = cloud
                .points
                .iter()
                .chain(std::iter::once(&lower))
                .all(|p| (p.r - centre).abs() <= half + 1e-10);
            let top = cloud
                .points
                .iter()
                .map(|p| p.r)
                .fold(f64::NEG_INFINITY, f64::max);
            let extremes =
                (top - centre - half).abs() <= 1e-6 && (lower.r - centre + half).abs() <= 1e-6;
            vec![bounded, extremes]
        }
        Suite::Oracle => {
            let n = 2 + rng.index(3);
            let a = if t.is_multiple_of(2) {
                rng.ginibre(n)
            } else {
                roberts_generic(rng, n.max(3))
            };
            let v = roberts_to_identity(&a, dec)?;
            let refuted =
                roberts_refute_pair(&a, &CMatrix::identity(a.dim()), &cfg.lambda_grid, tau_fail)?;
            vec![
                v.kind != VerdictKind::Inconclusive
                    && (v.kind == VerdictKind::NotRoberts) == refuted.is_some(),
            ]
        }
        Suite::Generators => {
            let class = GenClass::ALL[rng.index(GenClass::ALL.len())];
            let n = if class == GenClass::TraceZero2x2 {
                2
            } else {
                2 + rng.index(4)
            };
            let mut spec = GenSpec::new(class, n, substream_seed(cfg.seed, t));
            if class == GenClass::NormalWithSpectrum {
                let s: Vec<Complex64> = (0..n).map(|_| rng.complex_gaussian()).collect();
                spec = spec.with_spectrum(&s);
            }
            vec![generate(&spec)? == generate(&spec)?]
        }
    };
    Ok(checks)
}

/// `U·(B ⊕ −B ⊕ 0)·U*`.
fn roberts_generic(rng: &mut MatrixRng, n: usize) -> CMatrix {
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

fn mixed_matrix(rng: &mut MatrixRng, t: u64) -> CMatrix {
    let n = 2 + rng.index(3);
    match t % 5 {
        0 => rng.ginibre(n),
        1 => rng.hermitian(n),
        2 => rng
            .symmetric_spectrum_normal(n, None)
            .expect("size matches the drawn half spectrum"),
        3 => roberts_generic(rng, n.max(3)),
        _ => rng.trace_zero_2x2(),
    }
}

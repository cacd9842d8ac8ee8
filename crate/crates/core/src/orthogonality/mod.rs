//! Orthogonality deciders: Roberts orthogonality to the identity, general-pair
//! refutation, Birkhoff–James tests and 2×2 closed forms.

mod pairs;
mod two_by_two;
mod verdict;

use num_complex::Complex64;

pub use pairs::{
    bj_pair, bj_pair_report, bj_to_identity, bj_to_identity_report, norm_pm, roberts_refute_pair,
    BjPairReport, BjReport, LambdaGrid, TOP_EIGENSPACE_TOL,
};
pub use two_by_two::{dw_axis_2x2, ellipse_params_2x2, DwAxis2x2, Ellipse2x2};
pub use verdict::{
    ClassTag, Classification, Method, OrthVerdict, Tolerances, VerdictKind, Witness,
};

use crate::error::{invalid, Result};
use crate::linalg::{herm_eigen, operator_norm, CMatrix};
use crate::pencil::Pencil;
use crate::ranges::{angle_grid, support_samples, DEFAULT_NTHETA};
use crate::shell::{symmetry_sweep, HemisphereGrid, DEFAULT_NPHI, DEFAULT_SHELL_NTHETA};

/// Relative tolerance for the class residuals and the exact fast paths.
pub const CLASS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeciderConfig {
    pub tolerances: Tolerances,
    /// Angular grid for the nr-symmetry path.
    pub nr_theta: usize,
    pub shell_nphi: usize,
    pub shell_ntheta: usize,
    /// Refine the shell sweep around its worst direction.
    pub refine: bool,
    /// Skip the class fast paths and always run the shell sweep.
    pub force_shell: bool,
}

impl Default for DeciderConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            nr_theta: DEFAULT_NTHETA,
            shell_nphi: DEFAULT_NPHI,
            shell_ntheta: DEFAULT_SHELL_NTHETA,
            refine: true,
            force_shell: false,
        }
    }
}

impl DeciderConfig {
    pub fn forced_shell(mut self) -> Self {
        self.force_shell = true;
        self
    }
}

/// Residuals measured in operator norm; the tag is the most specific class with
/// priority SelfAdjoint > Unitary > Normal > TwoByTwo > Generic.
pub fn classify(a: &CMatrix) -> Result<Classification> {
    let norm = operator_norm(a)?;
    let adj = a.adjoint();
    let sa = operator_norm(&(a - &adj))?;
    let gram = &adj * a;
    let unitary = operator_norm(&(&gram - &CMatrix::identity(a.dim())))?;
    let normal = operator_norm(&(&gram - &(a * &adj)))?;
    let (tag, residual) = if sa <= CLASS_TOL * (1.0 + norm) {
        (ClassTag::SelfAdjoint, sa)
    } else if unitary <= CLASS_TOL {
        (ClassTag::Unitary, unitary)
    } else if normal <= CLASS_TOL * (1.0 + norm).powi(2) {
        (ClassTag::Normal, normal)
    } else if a.dim() == 2 {
        (ClassTag::TwoByTwo, normal)
    } else {
        (ClassTag::Generic, normal)
    };
    Ok(Classification {
        tag,
        residual,
        self_adjoint_residual: sa,
        unitary_residual: unitary,
        normal_residual: normal,
    })
}

struct Outcome {
    method: Method,
    defect: f64,
    scale: f64,
    pass_threshold: f64,
    /// Direction for the witness: `λ0` itself, tried first.
    probe: Complex64,
    lipschitz_bound: Option<f64>,
}

/// Decides `A ⊥_R I`, dispatching on [`classify`] unless `cfg.force_shell`.
pub fn roberts_to_identity(a: &CMatrix, cfg: &DeciderConfig) -> Result<OrthVerdict> {
    let class = classify(a)?;
    let norm = operator_norm(a)?;
    let tol = cfg.tolerances;
    let far = 1.0 + norm;
    let outcome = if cfg.force_shell {
        shell_outcome(a, cfg)?
    } else {
        match class.tag {
            ClassTag::SelfAdjoint => {
                let eig = herm_eigen(&hermitian_part(a))?;
                Outcome {
                    method: Method::SelfAdjoint,
                    defect: (eig.max() + eig.min()).abs(),
                    scale: 1.0 + norm,
                    pass_threshold: CLASS_TOL * (1.0 + norm),
                    probe: Complex64::new(far, 0.0),
                    lipschitz_bound: None,
                }
            }
            ClassTag::Unitary | ClassTag::Normal => {
                let support = support_samples(&Pencil::new(a)?, cfg.nr_theta)?;
                let half = support.len() / 2;
                let (worst, defect) = (0..half)
                    .map(|j| (j, (support[j] - support[j + half]).abs()))
                    .fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b });
                let theta = angle_grid(cfg.nr_theta)[worst].0;
                Outcome {
                    method: Method::NrSymmetry,
                    defect,
                    scale: 1.0 + norm,
                    pass_threshold: tol.tau_pass * (1.0 + norm),
                    probe: Complex64::from_polar(far, theta),
                    lipschitz_bound: None,
                }
            }
            ClassTag::TwoByTwo => {
                let tr = a.trace();
                let theta = if tr.norm() > 0.0 { tr.arg() } else { 0.0 };
                Outcome {
                    method: Method::Trace,
                    defect: tr.norm(),
                    scale: 1.0 + norm,
                    pass_threshold: CLASS_TOL * (1.0 + norm),
                    probe: Complex64::from_polar(far, theta),
                    lipschitz_bound: None,
                }
            }
            ClassTag::Generic => shell_outcome(a, cfg)?,
        }
    };
    let mut verdict = OrthVerdict {
        kind: VerdictKind::Inconclusive,
        method: outcome.method,
        bound: None,
        witness: None,
        defect: outcome.defect,
        scale: outcome.scale,
        lipschitz_bound: outcome.lipschitz_bound,
        class: class.tag,
        tolerances: tol,
    };
    if outcome.defect <= outcome.pass_threshold {
        verdict.kind = VerdictKind::RobertsCertified;
        verdict.bound = Some(outcome.defect);
    } else if outcome.defect > tol.tau_fail * outcome.scale
        || outcome.pass_threshold < tol.tau_pass * outcome.scale
    {
        // exact fast paths have a tighter pass threshold; any larger defect is
        // worth a witness attempt
        if let Some(w) = find_witness(a, outcome.probe, tol.tau_fail * (1.0 + norm))? {
            verdict.kind = VerdictKind::NotRoberts;
            verdict.witness = Some(w);
        }
    }
    Ok(verdict)
}

fn shell_outcome(a: &CMatrix, cfg: &DeciderConfig) -> Result<Outcome> {
    let pencil = Pencil::new(a)?;
    let grid = HemisphereGrid::lat_long(cfg.shell_nphi, cfg.shell_ntheta)?;
    let sweep = symmetry_sweep(&pencil, &grid, cfg.refine)?;
    let scale = 1.0 + pencil.norm_sq();
    let u = sweep.witness;
    let probe = match u.to_lambda() {
        Some(l) if l.norm() > 0.0 => l,
        Some(_) => Complex64::new(1.0, 0.0),
        None => Complex64::from_polar(10.0 * (1.0 + pencil.norm_sq().sqrt()), u.u2.atan2(u.u1)),
    };
    Ok(Outcome {
        method: Method::ShellSweep,
        defect: sweep.defect,
        scale,
        pass_threshold: cfg.tolerances.tau_pass * scale,
        probe,
        lipschitz_bound: Some(sweep.certified_bound),
    })
}

fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + &a.adjoint()).scale_real(0.5)
}

const PROBE_MULTIPLIERS: [f64; 12] = [
    2.0,
    4.0,
    8.0,
    16.0,
    64.0,
    256.0,
    1024.0,
    0.5,
    0.25,
    0.125,
    1.0 / 16.0,
    1.0 / 64.0,
];

/// Evaluates `λ0` and, if its norm gap is too small, multiples of it along the same
/// ray; returns the first `λ` whose gap exceeds `threshold`, else the best one if
/// it does.
fn find_witness(a: &CMatrix, lambda0: Complex64, threshold: f64) -> Result<Option<Witness>> {
    let id = CMatrix::identity(a.dim());
    let eval = |lambda: Complex64| -> Result<Witness> {
        let (p, m) = norm_pm(a, &id, lambda)?;
        Ok(Witness {
            lambda,
            norm_plus: p,
            norm_minus: m,
        })
    };
    let first = eval(lambda0)?;
    if first.gap() > threshold {
        return Ok(Some(first));
    }
    let mut best = first;
    for t in PROBE_MULTIPLIERS {
        let w = eval(lambda0 * t)?;
        if w.gap() > best.gap() {
            best = w;
        }
    }
    Ok((best.gap() > threshold).then_some(best))
}

fn require_self_adjoint(a: &CMatrix) -> Result<f64> {
    let norm = operator_norm(a)?;
    let sa = operator_norm(&(a - &a.adjoint()))?;
    if sa > CLASS_TOL * (1.0 + norm) {
        return Err(invalid(format!(
            "matrix is not self-adjoint (residual {sa:.3e})"
        )));
    }
    Ok(norm)
}

/// `λ = (λ_min + λ_max)/2`, the real shift making `A − λI` Roberts orthogonal to `I`.
pub fn center_selfadjoint(a: &CMatrix) -> Result<f64> {
    require_self_adjoint(a)?;
    let eig = herm_eigen(&hermitian_part(a))?;
    Ok(0.5 * (eig.min() + eig.max()))
}

/// Compares `‖A+λ0 I‖` with `‖A−λ0 I‖` for self-adjoint `A` and real `λ0 ≠ 0`.
pub fn single_lambda_check(a: &CMatrix, lambda0: f64) -> Result<bool> {
    if lambda0 == 0.0 || !lambda0.is_finite() {
        return Err(invalid("λ0 must be a nonzero finite real"));
    }
    let norm = require_self_adjoint(a)?;
    let (p, m) = norm_pm(a, &CMatrix::identity(a.dim()), Complex64::new(lambda0, 0.0))?;
    Ok((p - m).abs() <= CLASS_TOL * (1.0 + norm + lambda0.abs()))
}

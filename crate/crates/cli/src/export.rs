use std::path::Path;

use anyhow::Result;
use dwshell::orthogonality::norm_pm;
use dwshell::ranges::nr_profile;
use dwshell::shell::{dv_ub_symmetry_defect, dv_upper_samples};
use dwshell::CMatrix;
use num_complex::Complex64;
use serde_json::json;

use crate::config::{load_matrix, RunConfig};
use crate::{ExportKind, EXIT_YES};

pub fn run(cfg: &RunConfig, kind: ExportKind, path: &Path) -> Result<i32> {
    let a = load_matrix(path)?;
    match kind {
        ExportKind::Nr => {
            let profile = nr_profile(&a, cfg.decider.nr_theta)?;
            cfg.emit("nr.csv", &profile.to_csv())?;
        }
        ExportKind::Shell => {
            let grid = cfg.hemisphere();
            let cloud = dv_upper_samples(&a, &grid)?;
            cfg.emit("shell.csv", &cloud.to_csv())?;
            if cfg.out.is_some() || cfg.json {
                let report = shell_report(cfg, &a)?;
                if cfg.out.is_some() {
                    cfg.emit("shell.json", &cfg.render(&report))?;
                } else {
                    eprint!("{}", cfg.render(&report));
                }
            }
        }
    }
    Ok(EXIT_YES)
}

/// Symmetry defect of the sampled upper boundary, with the squared-norm gap at
/// `λ = 1` for scale.
fn shell_report(cfg: &RunConfig, a: &CMatrix) -> Result<serde_json::Value> {
    let grid = cfg.hemisphere();
    let sweep = dv_ub_symmetry_defect(a, &grid)?;
    let id = CMatrix::identity(a.dim());
    let (p, m) = norm_pm(a, &id, Complex64::new(1.0, 0.0))?;
    Ok(json!({
        "n_phi": grid.n_phi,
        "n_theta": grid.n_theta,
        "mesh": sweep.mesh,
        "defect": sweep.defect,
        "certified_bound": sweep.certified_bound,
        "lipschitz": sweep.lipschitz,
        "witness": sweep.witness,
        "witness_lambda": sweep.witness.to_lambda().map(|l| [l.re, l.im]),
        "squared_gap_at_unit": (p * p - m * m).abs(),
    }))
}

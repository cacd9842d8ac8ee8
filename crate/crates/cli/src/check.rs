use anyhow::Result;
use dwshell::orthogonality::{
    bj_pair_report, bj_to_identity_report, roberts_refute_pair, roberts_to_identity, VerdictKind,
};
use dwshell::CMatrix;
use serde_json::json;

use crate::config::{load_matrix, RunConfig};
use crate::{Relation, EXIT_INCONCLUSIVE, EXIT_NO, EXIT_YES};

fn status(holds: bool) -> i32 {
    if holds {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

pub fn run(cfg: &RunConfig, relation: Relation) -> Result<i32> {
    let (report, code) = match relation {
        Relation::Identity { path } => {
            let a = load_matrix(&path)?;
            let verdict = roberts_to_identity(&a, &cfg.decider)?;
            let code = match verdict.kind {
                VerdictKind::RobertsCertified => EXIT_YES,
                VerdictKind::NotRoberts => EXIT_NO,
                VerdictKind::Inconclusive => EXIT_INCONCLUSIVE,
            };
            (verdict.to_json(), code)
        }
        Relation::Pair { a, b } => {
            let (a, b) = (load_matrix(&a)?, load_matrix(&b)?);
            let tau = cfg.decider.tolerances.tau_fail;
            let witness = roberts_refute_pair(&a, &b, &cfg.lambda_grid, tau)?;
            let report = json!({
                "relation": "roberts-pair",
                "refuted": witness.is_some(),
                "witness": witness,
                "grid_points": cfg.lambda_grid.radii.len() * cfg.lambda_grid.n_angles,
                "threshold_multiplier": tau,
            });
            (report, status(witness.is_none()))
        }
        Relation::Bj { a, b: None } => {
            let a = load_matrix(&a)?;
            let r = bj_to_identity_report(&a)?;
            let report = json!({ "relation": "bj-identity", "report": r });
            (report, status(r.orthogonal))
        }
        Relation::Bj { a, b: Some(b) } => {
            let (a, b): (CMatrix, CMatrix) = (load_matrix(&a)?, load_matrix(&b)?);
            let r = bj_pair_report(&a, &b, &cfg.lambda_grid, cfg.decider.tolerances.tau_fail)?;
            let report = json!({ "relation": "bj-pair", "report": r });
            (report, status(r.holds))
        }
    };
    cfg.emit("verdict.json", &cfg.render(&report))?;
    Ok(code)
}

use anyhow::Result;
use dwshell::orthogonality::{norm_pm, roberts_to_identity, VerdictKind};
use dwshell::ranges::nr_symmetry_defect;
use dwshell::shell::dv_ub_symmetry_defect;
use dwshell::CMatrix;
use num_complex::Complex64;
use serde_json::json;

use crate::config::RunConfig;
use crate::{EXIT_NO, EXIT_YES};

const EXAMPLE: &str = include_str!("../fixtures/example1.json");

pub fn example_matrix() -> CMatrix {
    CMatrix::from_json_str(EXAMPLE).expect("embedded example is valid")
}

pub fn run(cfg: &RunConfig) -> Result<i32> {
    let a = example_matrix();
    let id = CMatrix::identity(a.dim());
    let (plus, minus) = norm_pm(&a, &id, Complex64::new(1.0, 0.0))?;
    let (plus4, minus4) = (format!("{plus:.4}"), format!("{minus:.4}"));
    let nr_defect = nr_symmetry_defect(&a, cfg.decider.nr_theta)?;
    let verdict = roberts_to_identity(&a, &cfg.decider)?;
    let sweep = dv_ub_symmetry_defect(&a, &cfg.hemisphere())?;
    let ok = plus4 == "2.6918" && minus4 == "2.7578" && verdict.kind == VerdictKind::NotRoberts;

    if cfg.json {
        let doc = json!({
            "norm_plus": plus,
            "norm_minus": minus,
            "norm_plus_rounded": plus4,
            "norm_minus_rounded": minus4,
            "nr_symmetry_defect": nr_defect,
            "verdict": verdict.to_json(),
            "shell": sweep,
            "shell_witness_lambda": sweep.witness.to_lambda().map(|l| [l.re, l.im]),
            "ok": ok,
        });
        print!("{}", cfg.render(&doc));
    } else {
        println!("‖A+I‖ = {plus4}");
        println!("‖A−I‖ = {minus4}");
        println!("nr symmetry defect = {nr_defect:.3e}");
        let u = sweep.witness;
        println!(
            "shell sweep: defect = {:.6}, worst direction = ({:.6}, {:.6}, {:.6})",
            sweep.defect, u.u1, u.u2, u.u3
        );
        if let Some(w) = verdict.witness {
            println!(
                "witness λ = {:.6}{:+.6}i: ‖A+λI‖ = {:.6}, ‖A−λI‖ = {:.6}",
                w.lambda.re, w.lambda.im, w.norm_plus, w.norm_minus
            );
        }
        println!(
            "{plus4} / {minus4}, verdict {:?} ({})",
            verdict.kind,
            verdict.method.tag()
        );
    }
    if ok {
        Ok(EXIT_YES)
    } else {
        eprintln!("example check failed: expected 2.6918 / 2.7578 and NotRoberts");
        Ok(EXIT_NO)
    }
}

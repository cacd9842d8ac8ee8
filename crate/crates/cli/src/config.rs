use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::Args;
use dwshell::orthogonality::{DeciderConfig, LambdaGrid, Tolerances};
use dwshell::ranges::MIN_NTHETA;
use dwshell::shell::HemisphereGrid;
use dwshell::CMatrix;

#[derive(Debug, Clone, Args)]
pub struct GridOpts {
    /// Angles for numerical-range sampling (even).
    #[arg(long, global = true, default_value_t = 720)]
    pub ntheta: usize,
    /// Latitude rings of the hemisphere grid, pole to equator.
    #[arg(long, global = true, default_value_t = 91)]
    pub nphi: usize,
    /// Longitudes per ring of the hemisphere grid (even).
    #[arg(long, global = true, default_value_t = 360)]
    pub shell_ntheta: usize,
    /// λ-grid radii relative to (1+‖A‖)/‖B‖: `lo:hi:count` (log-spaced) or a
    /// comma-separated list.
    #[arg(long, global = true, default_value = "1e-2:1e2:20")]
    pub lambda_radii: String,
    /// Angles of the λ-grid.
    #[arg(long, global = true, default_value_t = 24)]
    pub lambda_angles: usize,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_pass: f64,
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol_fail: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Bypass the class fast paths and always run the shell sweep.
    #[arg(long, global = true)]
    pub force_shell: bool,
    /// Directory for output files instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub decider: DeciderConfig,
    pub lambda_grid: LambdaGrid,
    pub seed: u64,
    pub json: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_opts(o: &GridOpts) -> Result<Self> {
        ensure!(
            o.ntheta >= MIN_NTHETA && o.ntheta.is_multiple_of(2),
            "--ntheta must be even and at least {MIN_NTHETA}"
        );
        ensure!(
            o.tol_pass > 0.0 && o.tol_pass < o.tol_fail,
            "tolerances must satisfy 0 < --tol-pass < --tol-fail"
        );
        ensure!(o.lambda_angles >= 1, "--lambda-angles must be positive");
        HemisphereGrid::lat_long(o.nphi, o.shell_ntheta)?;
        let decider = DeciderConfig {
            tolerances: Tolerances {
                tau_pass: o.tol_pass,
                tau_fail: o.tol_fail,
            },
            nr_theta: o.ntheta,
            shell_nphi: o.nphi,
            shell_ntheta: o.shell_ntheta,
            refine: true,
            force_shell: o.force_shell,
        };
        Ok(Self {
            decider,
            lambda_grid: parse_radii(&o.lambda_radii, o.lambda_angles)?,
            seed: o.seed,
            json: o.json,
            out: o.out.clone(),
        })
    }

    pub fn hemisphere(&self) -> HemisphereGrid {
        HemisphereGrid::lat_long(self.decider.shell_nphi, self.decider.shell_ntheta)
            .expect("validated in from_opts")
    }

    /// Writes `contents` to `<out>/<name>` when `--out` is set, else to stdout.
    pub fn emit(&self, name: &str, contents: &str) -> Result<()> {
        match &self.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .with_context(|| format!("cannot create {}", dir.display()))?;
                let path = dir.join(name);
                std::fs::write(&path, contents)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
            None => print!("{contents}"),
        }
        Ok(())
    }

    pub fn render(&self, value: &serde_json::Value) -> String {
        let mut s = if self.json {
            serde_json::to_string(value)
        } else {
            serde_json::to_string_pretty(value)
        }
        .expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

fn parse_radii(spec: &str, n_angles: usize) -> Result<LambdaGrid> {
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("invalid number {s:?} in --lambda-radii"))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [lo, hi, count] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            let count: usize = count
                .trim()
                .parse()
                .context("invalid count in --lambda-radii")?;
            ensure!(
                count >= 1 && lo > 0.0 && hi >= lo,
                "--lambda-radii needs 0 < lo <= hi and count >= 1"
            );
            LambdaGrid::log_spaced(n_angles, lo, hi, count)
        }
        [list] => {
            let radii = list.split(',').map(num).collect::<Result<Vec<_>>>()?;
            ensure!(
                radii.iter().all(|&r| r > 0.0 && r.is_finite()),
                "radii must be positive"
            );
            LambdaGrid::new(n_angles, radii)
        }
        _ => bail!("--lambda-radii must be `lo:hi:count` or a comma-separated list"),
    };
    Ok(grid)
}

/// Reads a matrix file: either a bare matrix object or a `gen` document with a
/// `matrix` field.
pub fn load_matrix(path: &Path) -> Result<CMatrix> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(_) => {
            // re-parse for the positioned error
            return CMatrix::from_json_str(&text).with_context(|| path.display().to_string());
        }
    };
    let inner = value.get("matrix").unwrap_or(&value);
    CMatrix::from_json_value(inner).with_context(|| path.display().to_string())
}

//! Davis–Wielandt shell `DV(A)`, the closed convex hull of
//! `{(⟨Ax,x⟩, ⟨A*Ax,x⟩) : ‖x‖ = 1}` viewed in `ℝ³`.
//!
//! Everything here goes through the support function
//! `h(u) = λ_max(u1·Re A + u2·Im A + u3·A*A)`. Points of the shell with an upward
//! supporting normal (`u3 > 0`) lie on its upper boundary, and the identity
//! `‖A + λI‖² = h(2λ1, 2λ2, 1) + |λ|²` ties the shell to Roberts orthogonality:
//! `A ⊥_R I` exactly when `h(u1, u2, u3) = h(−u1, −u2, u3)` on the closed upper
//! hemisphere.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::CMatrix;
use crate::pencil::Pencil;
use crate::ranges::{angle_grid, support_samples, zero_tolerance, DEFAULT_NTHETA};

pub const DEFAULT_NPHI: usize = 91;
pub const DEFAULT_SHELL_NTHETA: usize = 360;

/// Unit vector in `ℝ³`; `(u1, u2)` pairs with `μ` and `u3` with `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction3 {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl Direction3 {
    pub fn new(u1: f64, u2: f64, u3: f64) -> Result<Self> {
        let len2 = u1 * u1 + u2 * u2 + u3 * u3;
        if !len2.is_finite() || (len2 - 1.0).abs() > 1e-12 {
            return Err(invalid(format!(
                "direction is not a unit vector (|u|² = {len2})"
            )));
        }
        Ok(Self { u1, u2, u3 })
    }

    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let len = (x * x + y * y + z * z).sqrt();
        if !(len.is_finite() && len > 0.0) {
            return Err(invalid("cannot normalize a zero or non-finite direction"));
        }
        Ok(Self {
            u1: x / len,
            u2: y / len,
            u3: z / len,
        })
    }

    /// Polar angle `φ` from the north pole and azimuth `θ`.
    pub fn from_angles(phi: f64, theta: f64) -> Self {
        let (s, c) = if phi == FRAC_PI_2 {
            (1.0, 0.0)
        } else {
            phi.sin_cos()
        };
        Self {
            u1: s * theta.cos(),
            u2: s * theta.sin(),
            u3: c,
        }
    }

    /// `(−u1, −u2, u3)`.
    pub fn reflected(self) -> Self {
        Self {
            u1: -self.u1,
            u2: -self.u2,
            u3: self.u3,
        }
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.u1, self.u2, self.u3]
    }

    /// The λ with `(2λ1, 2λ2, 1) ∥ u`; `None` on the equator.
    pub fn to_lambda(self) -> Option<Complex64> {
        (self.u3 > 0.0).then(|| Complex64::new(self.u1, self.u2) / (2.0 * self.u3))
    }
}

/// A point `(μ, r)` of the shell together with the supporting normal that exposed it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellPoint {
    pub mu: Complex64,
    pub r: f64,
    pub u: Direction3,
    pub h: f64,
}

impl Serialize for ShellPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            u: [f64; 3],
            h: f64,
            mu: [f64; 2],
            r: f64,
        }
        Raw {
            u: self.u.as_array(),
            h: self.h,
            mu: [self.mu.re, self.mu.im],
            r: self.r,
        }
        .serialize(s)
    }
}

/// Latitude–longitude grid on the closed upper hemisphere.
///
/// Ring 0 is the pole (one direction); rings `1..n_phi` carry `n_theta` directions
/// each, the last ring being the equator. Longitudes `θ` and `θ+π` are bitwise
/// reflections of each other.
#[derive(Debug, Clone)]
pub struct HemisphereGrid {
    pub n_phi: usize,
    pub n_theta: usize,
    pub directions: Vec<Direction3>,
    /// `(φ, θ)` of each direction.
    pub angles: Vec<(f64, f64)>,
    /// Bound on the sup-norm distance from any point of the hemisphere to the grid.
    pub mesh: f64,
}

impl HemisphereGrid {
    pub fn lat_long(n_phi: usize, n_theta: usize) -> Result<Self> {
        if n_phi < 2 {
            return Err(invalid(format!(
                "need at least 2 latitude rings, got {n_phi}"
            )));
        }
        if n_theta < 8 || !n_theta.is_multiple_of(2) {
            return Err(invalid(format!(
                "longitude count must be even and at least 8, got {n_theta}"
            )));
        }
        let d_phi = FRAC_PI_2 / (n_phi - 1) as f64;
        let d_theta = 2.0 * PI / n_theta as f64;
        let longitudes = angle_grid(n_theta);
        let mut directions = Vec::with_capacity(1 + (n_phi - 1) * n_theta);
        let mut angles = Vec::with_capacity(directions.capacity());
        directions.push(Direction3 {
            u1: 0.0,
            u2: 0.0,
            u3: 1.0,
        });
        angles.push((0.0, 0.0));
        for i in 1..n_phi {
            let phi = if i == n_phi - 1 {
                FRAC_PI_2
            } else {
                d_phi * i as f64
            };
            let (s, c) = if i == n_phi - 1 {
                (1.0, 0.0)
            } else {
                phi.sin_cos()
            };
            for &(t, ct, st) in &longitudes {
                directions.push(Direction3 {
                    u1: s * ct,
                    u2: s * st,
                    u3: c,
                });
                angles.push((phi, t));
            }
        }
        // geodesic detour: half a meridian step plus at most half a parallel step
        let mesh = 0.5 * (d_phi + d_theta);
        Ok(Self {
            n_phi,
            n_theta,
            directions,
            angles,
            mesh,
        })
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Index of the direction `(−u1, −u2, u3)`.
    pub fn reflected_index(&self, k: usize) -> usize {
        if k == 0 {
            return 0;
        }
        let ring = (k - 1) / self.n_theta;
        let j = (k - 1) % self.n_theta;
        1 + ring * self.n_theta + (j + self.n_theta / 2) % self.n_theta
    }

    pub fn phi_step(&self) -> f64 {
        FRAC_PI_2 / (self.n_phi - 1) as f64
    }

    pub fn theta_step(&self) -> f64 {
        2.0 * PI / self.n_theta as f64
    }
}

impl Default for HemisphereGrid {
    fn default() -> Self {
        Self::lat_long(DEFAULT_NPHI, DEFAULT_SHELL_NTHETA).expect("default grid is valid")
    }
}

/// Sampled upper boundary of the shell.
#[derive(Debug, Clone, Serialize)]
pub struct ShellCloud {
    pub n_phi: usize,
    pub n_theta: usize,
    pub mesh: f64,
    pub points: Vec<ShellPoint>,
}

impl ShellCloud {
    /// CSV with header `u1,u2,u3,h,mu_re,mu_im,r`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u1,u2,u3,h,mu_re,mu_im,r\n");
        for p in &self.points {
            let _ = writeln!(
                out,
                "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                p.u.u1, p.u.u2, p.u.u3, p.h, p.mu.re, p.mu.im, p.r
            );
        }
        out
    }
}

/// `h(u) = λ_max(u1·Re A + u2·Im A + u3·A*A)`.
pub fn dv_support(a: &CMatrix, u: Direction3) -> Result<f64> {
    Pencil::new(a)?.support(u.as_array())
}

/// The shell point exposed by direction `u` (any hemisphere).
pub fn shell_point(pencil: &Pencil, u: Direction3) -> Result<ShellPoint> {
    let (h, x) = pencil.support_vector(u.as_array())?;
    let (mu, r) = pencil.shell_coordinates(&x);
    Ok(ShellPoint { mu, r, u, h })
}

/// Shell points for every grid direction with `u3 > 0`.
pub fn dv_upper_samples(a: &CMatrix, grid: &HemisphereGrid) -> Result<ShellCloud> {
    let pencil = Pencil::new(a)?;
    upper_samples(&pencil, grid)
}

pub(crate) fn upper_samples(pencil: &Pencil, grid: &HemisphereGrid) -> Result<ShellCloud> {
    let points = grid
        .directions
        .par_iter()
        .filter(|u| u.u3 > 0.0)
        .map(|&u| shell_point(pencil, u))
        .collect::<Result<Vec<_>>>()?;
    Ok(ShellCloud {
        n_phi: grid.n_phi,
        n_theta: grid.n_theta,
        mesh: grid.mesh,
        points,
    })
}

/// Result of the upper-boundary symmetry sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryDefect {
    /// `max |h(u) − h(Ru)|` over the grid and the refinement patch.
    pub defect: f64,
    /// `defect + L·mesh`, an upper bound of `|h(u) − h(Ru)|` on the whole hemisphere.
    pub certified_bound: f64,
    pub witness: Direction3,
    /// `L = 2(‖Re A‖ + ‖Im A‖ + ‖A*A‖)`, the sup-norm Lipschitz constant of `h − h∘R`.
    pub lipschitz: f64,
    pub mesh: f64,
}

impl SymmetryDefect {
    /// Bound on `|‖A+λI‖² − ‖A−λI‖²|` implied by `certified_bound`.
    pub fn lambda_bound(&self, lambda: Complex64) -> f64 {
        self.certified_bound * (4.0 * lambda.norm_sqr() + 1.0).sqrt()
    }
}

/// Sweep of `|h(u1,u2,u3) − h(−u1,−u2,u3)|` over the hemisphere grid, followed by
/// one 5×5 refinement round around the worst direction.
pub fn dv_ub_symmetry_defect(a: &CMatrix, grid: &HemisphereGrid) -> Result<SymmetryDefect> {
    symmetry_sweep(&Pencil::new(a)?, grid, true)
}

pub(crate) fn symmetry_sweep(
    pencil: &Pencil,
    grid: &HemisphereGrid,
    refine: bool,
) -> Result<SymmetryDefect> {
    let values: Vec<f64> = grid
        .directions
        .par_iter()
        .map(|u| pencil.support(u.as_array()))
        .collect::<Result<_>>()?;
    let (mut worst, mut defect) = (0usize, -1.0f64);
    for (k, &v) in values.iter().enumerate() {
        let d = (v - values[grid.reflected_index(k)]).abs();
        if d > defect {
            defect = d;
            worst = k;
        }
    }
    let mut witness = grid.directions[worst];
    if refine {
        let (phi0, theta0) = grid.angles[worst];
        let (dp, dt) = (0.5 * grid.phi_step(), 0.5 * grid.theta_step());
        let patch: Vec<Direction3> = (-2i32..=2)
            .flat_map(|a| (-2i32..=2).map(move |b| (a, b)))
            .filter(|&(a, b)| a != 0 || b != 0)
            .map(|(a, b)| {
                let phi = (phi0 + a as f64 * dp).clamp(0.0, FRAC_PI_2);
                Direction3::from_angles(phi, theta0 + b as f64 * dt)
            })
            .collect();
        let refined = patch
            .par_iter()
            .map(|&u| {
                let d = (pencil.support(u.as_array())?
                    - pencil.support(u.reflected().as_array())?)
                .abs();
                Ok((d, u))
            })
            .collect::<Result<Vec<_>>>()?;
        for (d, u) in refined {
            if d > defect {
                defect = d;
                witness = u;
            }
        }
    }
    let (nr, ni, ng) = pencil.part_norms();
    let lipschitz = 2.0 * (nr + ni + ng);
    Ok(SymmetryDefect {
        defect,
        certified_bound: defect + lipschitz * grid.mesh,
        witness,
        lipschitz,
        mesh: grid.mesh,
    })
}

/// Settings for the fiber-maximum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberSearch {
    /// Box half-width in units of `1 + ‖A‖`.
    pub box_scale: f64,
    /// Golden-section stopping width.
    pub step_tol: f64,
    /// Angular grid for the membership check `μ ∈ W(A)`.
    pub n_theta: usize,
}

impl Default for FiberSearch {
    fn default() -> Self {
        Self {
            box_scale: 1e3,
            step_tol: 1e-7,
            n_theta: DEFAULT_NTHETA,
        }
    }
}

/// Estimated `max L_μ(A)`, the height of the upper boundary above `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberMax {
    pub value: f64,
    /// Minimizer `v` of `h(v1, v2, 1) − ⟨v, μ⟩`.
    pub argmin: [f64; 2],
    /// The minimizer sits on the search box: `value` may overestimate.
    pub flagged: bool,
}

/// `ĝ(μ) = inf_v [λ_max(A*A + v1·Re A + v2·Im A) − v1·Re μ − v2·Im μ]`.
///
/// This is the concave upper envelope of the shell at `μ`: exact in the relative
/// interior of `W(A)`, an upper bound on its boundary (where the infimum escapes
/// to infinity and the result is flagged).
pub fn l_mu_max(a: &CMatrix, mu: Complex64, search: &FiberSearch) -> Result<FiberMax> {
    let pencil = Pencil::new(a)?;
    fiber_max(&pencil, mu, search)
}

pub(crate) fn fiber_max(pencil: &Pencil, mu: Complex64, search: &FiberSearch) -> Result<FiberMax> {
    let norm = pencil.norm_sq().sqrt();
    let tol = zero_tolerance(norm);
    let support = support_samples(pencil, search.n_theta)?;
    for (&(_, c, s), h) in angle_grid(search.n_theta).iter().zip(&support) {
        let along = c * mu.re + s * mu.im;
        if along > h + tol {
            return Err(Error::Domain(format!(
                "μ = {mu} lies outside the numerical range (excess {:.3e})",
                along - h
            )));
        }
    }
    let half = search.box_scale * (1.0 + norm);
    let objective = |v1: f64, v2: f64| -> Result<f64> {
        Ok(pencil.support([v1, v2, 1.0])? - v1 * mu.re - v2 * mu.im)
    };
    // the partial minimum over v2 is convex in v1, so nested golden sections are exact
    let (v1, _) = golden_min(-half, half, search.step_tol, |v1| {
        Ok(golden_min(-half, half, search.step_tol, |v2| objective(v1, v2))?.1)
    })?;
    let (v2, value) = golden_min(-half, half, search.step_tol, |v2| objective(v1, v2))?;
    let edge = 1e-3 * half;
    let flagged = half - v1.abs() < edge || half - v2.abs() < edge;
    Ok(FiberMax {
        value,
        argmin: [v1, v2],
        flagged,
    })
}

/// Golden-section search for a convex function on `[lo, hi]`.
fn golden_min<F>(mut lo: f64, mut hi: f64, tol: f64, mut f: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

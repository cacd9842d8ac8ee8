use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// Pass/fail multipliers for the three-valued Roberts verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub tau_pass: f64,
    pub tau_fail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tau_pass: 1e-8,
            tau_fail: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    RobertsCertified,
    NotRoberts,
    Inconclusive,
}

/// Which decision path produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SelfAdjoint,
    NrSymmetry,
    Trace,
    ShellSweep,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::SelfAdjoint => "selfadjoint",
            Method::NrSymmetry => "nr-symmetry",
            Method::Trace => "trace",
            Method::ShellSweep => "shell-sweep",
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// A concrete `λ` with `‖A+λB‖ ≠ ‖A−λB‖`, both norms recomputed directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub lambda: Complex64,
    pub norm_plus: f64,
    pub norm_minus: f64,
}

impl Witness {
    pub fn gap(&self) -> f64 {
        (self.norm_plus - self.norm_minus).abs()
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            lambda: [f64; 2],
            norm_plus: f64,
            norm_minus: f64,
        }
        Raw {
            lambda: [self.lambda.re, self.lambda.im],
            norm_plus: self.norm_plus,
            norm_minus: self.norm_minus,
        }
        .serialize(s)
    }
}

/// Matrix classes with a closed-form Roberts criterion, in dispatch priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassTag {
    SelfAdjoint,
    Unitary,
    Normal,
    TwoByTwo,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub tag: ClassTag,
    /// Detection residual of the chosen class (the normality residual for
    /// `TwoByTwo` and `Generic`).
    pub residual: f64,
    pub self_adjoint_residual: f64,
    pub unitary_residual: f64,
    pub normal_residual: f64,
}

/// Three-valued answer to "is `A ⊥_R I`?".
///
/// * `RobertsCertified`: `bound` holds the decisive defect, at most `τ_pass·scale`.
/// * `NotRoberts`: `witness` holds a `λ` whose two norms differ by more than
///   `τ_fail·(1+‖A‖)`.
/// * `Inconclusive`: the defect fell in the band between the two thresholds, or no
///   witness could be confirmed.
#[derive(Debug, Clone, Serialize)]
pub struct OrthVerdict {
    pub kind: VerdictKind,
    pub method: Method,
    pub bound: Option<f64>,
    pub witness: Option<Witness>,
    pub defect: f64,
    /// Scale the defect was compared against (`1+‖A‖` or `1+‖A‖²` by path).
    pub scale: f64,
    /// Shell sweep only: `defect + L·mesh`, valid between grid points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lipschitz_bound: Option<f64>,
    pub class: ClassTag,
    pub tolerances: Tolerances,
}

impl OrthVerdict {
    pub fn is_roberts(&self) -> bool {
        self.kind == VerdictKind::RobertsCertified
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serialization cannot fail")
    }
}

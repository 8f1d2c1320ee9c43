//! Named defect measurements shared by the verifiers and the report writer.

/// Which tolerance a defect is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tol {
    /// Operator-norm defect of an exact identity.
    Identity,
    /// Span projection distance or residual.
    Span,
    /// Integer mismatch, must be zero.
    Exact,
    /// Pointwise numerics of the solvable-group kernels.
    Pointwise,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub identity: f64,
    pub span: f64,
    pub pointwise: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: crate::tensorkit::TOL_IDENTITY,
            span: crate::tensorkit::TOL_SPAN,
            pointwise: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn of(&self, t: Tol) -> f64 {
        match t {
            Tol::Identity => self.identity,
            Tol::Span => self.span,
            Tol::Exact => 0.0,
            Tol::Pointwise => self.pointwise,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    /// Topic key naming the statement being checked.
    pub anchor: &'static str,
    pub defect: f64,
    pub tol: Tol,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &'static str, defect: f64, tol: Tol) -> Self {
        Self {
            name: name.into(),
            anchor,
            defect,
            tol,
        }
    }

    pub fn identity(name: impl Into<String>, anchor: &'static str, defect: f64) -> Self {
        Self::new(name, anchor, defect, Tol::Identity)
    }

    pub fn span(name: impl Into<String>, anchor: &'static str, defect: f64) -> Self {
        Self::new(name, anchor, defect, Tol::Span)
    }

    /// Dimension or count comparison; the defect is the absolute difference.
    pub fn exact(name: impl Into<String>, anchor: &'static str, got: usize, want: usize) -> Self {
        let name = format!("{} ({got} vs {want})", name.into());
        Self::new(name, anchor, got.abs_diff(want) as f64, Tol::Exact)
    }

    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.defect.is_finite() && self.defect <= tol.of(self.tol)
    }
}

/// Prefix every check name, for grouping inside a larger report.
pub fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}: {}", c.name);
            c
        })
        .collect()
}

pub fn all_pass(checks: &[Check], tol: &Tolerances) -> bool {
    checks.iter().all(|c| c.passes(tol))
}

pub fn worst(checks: &[Check]) -> f64 {
    checks.iter().map(|c| c.defect).fold(0.0, f64::max)
}

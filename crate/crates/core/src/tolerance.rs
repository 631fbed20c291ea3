use crate::error::{Error, Result};

/// Absolute tolerances used by set construction and projection.
///
/// `tie_eps` decides when two candidate projections are equidistant,
/// `merge_eps` when neighbouring intervals are glued together, and
/// `dedupe_eps` when two cloud points count as the same point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub tie_eps: f64,
    pub merge_eps: f64,
    pub dedupe_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            tie_eps: 1e-9,
            merge_eps: 1e-12,
            dedupe_eps: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(tie_eps: f64, merge_eps: f64, dedupe_eps: f64) -> Result<Self> {
        let tol = Self {
            tie_eps,
            merge_eps,
            dedupe_eps,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.tie_eps, self.merge_eps, self.dedupe_eps];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTolerance("tolerances must be finite".into()));
        }
        if self.tie_eps <= 0.0 {
            return Err(Error::InvalidTolerance("tie_eps must be positive".into()));
        }
        if self.merge_eps < 0.0 || self.dedupe_eps < 0.0 {
            return Err(Error::InvalidTolerance(
                "merge_eps and dedupe_eps must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Same tolerance with every field set to `eps`.
    pub fn uniform(eps: f64) -> Result<Self> {
        Self::new(eps, eps, eps)
    }
}

use super::constraint::{ConstraintSystem, LinearConstraint, RationalPoint};
use super::systems::facet_system;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member,
    Violated(LinearConstraint),
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationOutcome {
    pub verdict: Verdict,
    /// Constraints evaluated before the verdict was reached.
    pub evaluations: usize,
}

/// Separation over the bases polytope: the facet system is built once and
/// scanned in order (cardinality, parallel, series, locked) per query.
#[derive(Clone, Debug)]
pub struct SeparationOracle {
    system: ConstraintSystem,
}

impl SeparationOracle {
    pub fn new(m: &Matroid) -> Result<SeparationOracle> {
        Ok(SeparationOracle {
            system: facet_system(m)?,
        })
    }

    pub fn system(&self) -> &ConstraintSystem {
        &self.system
    }

    pub fn separate(&self, x: &RationalPoint) -> Result<SeparationOutcome> {
        if x.dim() != self.system.dim {
            return Err(Error::DimensionMismatch {
                expected: self.system.dim,
                got: x.dim(),
            });
        }
        let sx = x.scaled();
        let mut evaluations = 0;
        for c in self.system.constraints() {
            evaluations += 1;
            if !c.is_satisfied_by(&sx) {
                return Ok(SeparationOutcome {
                    verdict: Verdict::Violated(c.clone()),
                    evaluations,
                });
            }
        }
        Ok(SeparationOutcome {
            verdict: Verdict::Member,
            evaluations,
        })
    }
}

/// One-shot separation; see [`SeparationOracle`].
pub fn separate(m: &Matroid, x: &RationalPoint) -> Result<SeparationOutcome> {
    SeparationOracle::new(m)?.separate(x)
}

//! Self-contained membership certificates: a claim (target matrix, ambient
//! dimension and ring, letter discipline) plus a witness word.
//!
//! Verification is independent of how certificates are produced: it only
//! checks the witness against the discipline, evaluates it, and compares
//! with the target.

use std::fmt;

use crate::error::Error;
use crate::matrix::SqMatrix;
use crate::ring::RingSpec;
use crate::word::{check_discipline, Discipline, GroupExpr, Violation};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Claim {
    pub ring: RingSpec,
    pub n: usize,
    pub discipline: Discipline,
    pub target: SqMatrix,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub claim: Claim,
    pub witness: GroupExpr,
}

#[derive(Debug)]
pub enum VerifyError {
    /// The claim itself is inconsistent (sizes, rings).
    MalformedClaim(String),
    /// The witness violates the claimed discipline.
    Discipline(Violation),
    /// The witness cannot be evaluated in the claimed group.
    Evaluation(Error),
    /// The witness evaluates to something else than the target.
    TargetMismatch {
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::MalformedClaim(m) => write!(f, "malformed claim: {m}"),
            VerifyError::Discipline(v) => write!(f, "{v}"),
            VerifyError::Evaluation(e) => write!(f, "evaluation failed: {e}"),
            VerifyError::TargetMismatch {
                row,
                col,
                expected,
                found,
            } => write!(
                f,
                "target mismatch at ({row}, {col}): claimed {expected}, witness evaluates to {found}"
            ),
        }
    }
}

impl std::error::Error for VerifyError {}

impl Certificate {
    pub fn new(claim: Claim, witness: GroupExpr) -> Self {
        Certificate { claim, witness }
    }

    pub fn verify(&self) -> Result<(), VerifyError> {
        let c = &self.claim;
        if c.target.n() != c.n {
            return Err(VerifyError::MalformedClaim(format!(
                "target is {}x{} but the claim says n = {}",
                c.target.n(),
                c.target.n(),
                c.n
            )));
        }
        if c.target.spec() != c.ring {
            return Err(VerifyError::MalformedClaim(format!(
                "target ring {} differs from claimed ring {}",
                c.target.spec(),
                c.ring
            )));
        }
        if let Some(ideal) = c.discipline.ideal() {
            if ideal.spec() != c.ring {
                return Err(VerifyError::MalformedClaim(format!(
                    "discipline ideal lives in {} but the claim says {}",
                    ideal.spec(),
                    c.ring
                )));
            }
        }
        check_discipline(&self.witness, &c.discipline).map_err(VerifyError::Discipline)?;
        let value = self
            .witness
            .evaluate(c.n, c.ring)
            .map_err(VerifyError::Evaluation)?;
        if value != c.target {
            for i in 1..=c.n {
                for j in 1..=c.n {
                    if value.entry(i, j) != c.target.entry(i, j) {
                        return Err(VerifyError::TargetMismatch {
                            row: i,
                            col: j,
                            expected: c.target.entry(i, j).to_string(),
                            found: value.entry(i, j).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

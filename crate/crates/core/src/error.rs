use std::fmt;

use crate::poly::{Monomial, Polynomial, Rational, UvPolynomial};

/// A verification that did not come out exactly zero, or could not be run.
#[derive(Debug, Clone, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{identity}{}: residual with {} terms", fmt_n(*n), residual.len())]
    Residual {
        identity: String,
        n: Option<u32>,
        residual: Polynomial,
    },

    #[error("{identity}{}: residual {residual}", fmt_n(*n))]
    UvResidual {
        identity: String,
        n: Option<u32>,
        residual: UvPolynomial,
    },

    #[error("{identity}{}: point #{index} evaluates to {value}", fmt_n(Some(*n)))]
    Point {
        identity: String,
        n: u32,
        index: usize,
        point: Box<crate::e3::ConstrainedPoint>,
        params: Box<[Rational; 3]>,
        value: Box<Rational>,
    },

    #[error("{identity}{}: basis element {monomial} leaves {} residual terms", fmt_n(*n), residual.len())]
    Operator {
        identity: String,
        n: Option<u32>,
        monomial: Monomial,
        residual: Polynomial,
    },
}

fn fmt_n(n: Option<u32>) -> impl fmt::Display {
    struct N(Option<u32>);
    impl fmt::Display for N {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match self.0 {
                Some(n) => write!(f, " (n = {n})"),
                None => Ok(()),
            }
        }
    }
    N(n)
}

impl VerifyError {
    pub(crate) fn residual(identity: impl Into<String>, n: Option<u32>, residual: Polynomial) -> Self {
        VerifyError::Residual {
            identity: identity.into(),
            n,
            residual,
        }
    }

    /// Name of the failing identity, when there is one.
    pub fn identity(&self) -> Option<&str> {
        match self {
            VerifyError::InvalidArgument(_) => None,
            VerifyError::Residual { identity, .. }
            | VerifyError::UvResidual { identity, .. }
            | VerifyError::Point { identity, .. }
            | VerifyError::Operator { identity, .. } => Some(identity),
        }
    }

    /// The residual polynomial, for failures that carry one.
    pub fn residual_polynomial(&self) -> Option<&Polynomial> {
        match self {
            VerifyError::Residual { residual, .. } | VerifyError::Operator { residual, .. } => Some(residual),
            _ => None,
        }
    }
}

/// `Ok(())` iff `residual` is the zero polynomial.
pub(crate) fn require_zero(identity: &str, n: Option<u32>, residual: Polynomial) -> Result<(), VerifyError> {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(VerifyError::residual(identity, n, residual))
    }
}

//! Exact verification of real structures on the Jacobian of the orientable
//! double cover `X` of a Klein surface `Y = X / σ`.
//!
//! * [`homology`]: the integer action of `σ` on `H₁(X, ℤ)` and the
//!   symplectic change of basis that puts it into block form `[[I, A], [0, -I]]`.
//! * [`torus`]: fixed points of the induced involution on `ℂ^g / (ℤ^g + Pℤ^g)`,
//!   decided exactly in `(x, y)` coordinates, plus a floating-point scan oracle.
//! * [`gf2`]: kernels of integer matrices reduced mod 2.
//! * [`genus1`]: a fully rational genus-one model (`X = ℂ / (ℤ + τℤ)`,
//!   `σ(z) = z̄ + ½`) with divisors, Abel–Jacobi sums and the split of fixed
//!   classes into the two cosets `T1` / `T2`.
//! * [`lambda`]: the sign character attached to a real isomorphism `σ*L̄ ≅ L`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod genus1;
pub mod gf2;
pub mod homology;
pub mod lambda;
pub mod matrix;
pub mod torus;

pub use matrix::{IntegerMatrix, MatrixError};

/// Parity of the genus of `X`. The odd and even cases use different bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(genus: usize) -> Parity {
        if genus % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("genus must be at least 1")]
    Zero,
    #[error("genus {genus} does not have {parity} parity")]
    ParityMismatch { genus: usize, parity: Parity },
}

/// Checks `genus >= 1` and that `parity` agrees with it.
pub fn check_genus(genus: usize, parity: Parity) -> Result<(), GenusError> {
    if genus == 0 {
        Err(GenusError::Zero)
    } else if Parity::of(genus) != parity {
        Err(GenusError::ParityMismatch { genus, parity })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_checks() {
        assert_eq!(check_genus(0, Parity::Even), Err(GenusError::Zero));
        assert!(check_genus(3, Parity::Odd).is_ok());
        assert!(matches!(check_genus(3, Parity::Even), Err(GenusError::ParityMismatch { .. })));
        assert_eq!(serde_json::to_string(&Parity::Odd).unwrap(), "\"odd\"");
    }
}

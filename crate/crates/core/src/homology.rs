//! Action of the anti-holomorphic involution on `H₁(X, ℤ)`.
//!
//! Matrices act on coordinate columns with respect to a symplectic basis
//! `{γ₁ … γ_g, δ₁ … δ_g}`. For each parity there is a starting basis in which
//! the action has a fixed shape, and an integer symplectic change of basis
//! `C` after which the action reads `[[I_g, A], [0, -I_g]]`, i.e. every `γ_j`
//! is fixed.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{IntegerMatrix, MatrixError};
use crate::{check_genus, GenusError, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("K_n needs n >= 1")]
    ZeroSize,
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Why a matrix fails to have the block form `[[I, A], [0, -I]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InvConditionFailure {
    #[error("matrix is not of even square size")]
    Shape,
    #[error("upper-left block is not the identity")]
    UpperLeft,
    #[error("lower-left block is not zero")]
    LowerLeft,
    #[error("lower-right block is not minus the identity")]
    LowerRight,
}

fn k_block(n: usize) -> IntegerMatrix {
    IntegerMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(i + j + 1 == n)))
}

fn zeros(r: usize, c: usize) -> IntegerMatrix {
    IntegerMatrix::zeros(r, c)
}

fn scalar(v: i64) -> IntegerMatrix {
    IntegerMatrix::from_fn(1, 1, |_, _| BigInt::from(v))
}

/// `-2I - K` of size `n` (possibly empty).
fn minus_two_i_minus_k(n: usize) -> IntegerMatrix {
    (&IntegerMatrix::identity(n).scale(&BigInt::from(2)))
        .add(&k_block(n))
        .map(|m| -&m)
        .expect("same shape")
}

/// `I + K` of size `n` (possibly empty).
fn i_plus_k(n: usize) -> IntegerMatrix {
    IntegerMatrix::identity(n).add(&k_block(n)).expect("same shape")
}

/// The `n × n` anti-diagonal matrix of ones.
pub fn k_matrix(n: usize) -> Result<IntegerMatrix, HomologyError> {
    if n == 0 {
        return Err(HomologyError::ZeroSize);
    }
    Ok(k_block(n))
}

/// `J = [[0, -I_g], [I_g, 0]]`.
pub fn standard_intersection(genus: usize) -> Result<IntegerMatrix, HomologyError> {
    if genus == 0 {
        return Err(GenusError::Zero.into());
    }
    let i = IntegerMatrix::identity(genus);
    Ok(IntegerMatrix::from_blocks(&[
        vec![zeros(genus, genus), -&i],
        vec![i, zeros(genus, genus)],
    ])?)
}

/// Action of σ on homology in the starting basis.
///
/// Even genus: `K_{2g}`. Odd genus: blocks of sizes `1, g-1, 1, g-1` with
/// `+1` and `-1` on the two singleton slots and `K_{g-1}` swapping the two
/// large slots.
pub fn sigma_action(genus: usize, parity: Parity) -> Result<IntegerMatrix, HomologyError> {
    check_genus(genus, parity)?;
    match parity {
        Parity::Even => k_matrix(2 * genus),
        Parity::Odd => {
            let h = genus - 1;
            let k = k_block(h);
            Ok(IntegerMatrix::from_blocks(&[
                vec![scalar(1), zeros(1, h), zeros(1, 1), zeros(1, h)],
                vec![zeros(h, 1), zeros(h, h), zeros(h, 1), k.clone()],
                vec![zeros(1, 1), zeros(1, h), scalar(-1), zeros(1, h)],
                vec![zeros(h, 1), k, zeros(h, 1), zeros(h, h)],
            ])?)
        }
    }
}

/// Symplectic change of basis `C`.
///
/// Even genus: `[[-I, I+K], [-K, K]]`. Odd genus: the same pattern on the
/// two `(g-1)`-slots with `1` on both singleton slots.
pub fn basis_change(genus: usize, parity: Parity) -> Result<IntegerMatrix, HomologyError> {
    check_genus(genus, parity)?;
    match parity {
        Parity::Even => {
            let g = genus;
            let k = k_block(g);
            Ok(IntegerMatrix::from_blocks(&[
                vec![-&IntegerMatrix::identity(g), i_plus_k(g)],
                vec![-&k, k],
            ])?)
        }
        Parity::Odd => {
            let h = genus - 1;
            let k = k_block(h);
            Ok(IntegerMatrix::from_blocks(&[
                vec![scalar(1), zeros(1, h), zeros(1, 1), zeros(1, h)],
                vec![zeros(h, 1), -&IntegerMatrix::identity(h), zeros(h, 1), i_plus_k(h)],
                vec![zeros(1, 1), zeros(1, h), scalar(1), zeros(1, h)],
                vec![zeros(h, 1), -&k, zeros(h, 1), k],
            ])?)
        }
    }
}

/// The symmetric block `A` of the transformed action.
///
/// Even genus: `-2I - K`. Odd genus: `diag(0, -2I_{g-1} - K_{g-1})`.
pub fn a_matrix(genus: usize, parity: Parity) -> Result<IntegerMatrix, HomologyError> {
    check_genus(genus, parity)?;
    match parity {
        Parity::Even => Ok(minus_two_i_minus_k(genus)),
        Parity::Odd => {
            let h = genus - 1;
            Ok(IntegerMatrix::from_blocks(&[
                vec![zeros(1, 1), zeros(1, h)],
                vec![zeros(h, 1), minus_two_i_minus_k(h)],
            ])?)
        }
    }
}

/// `C⁻¹ S C`, computed exactly. `C` must be unimodular.
pub fn conjugate_action(c: &IntegerMatrix, s: &IntegerMatrix) -> Result<IntegerMatrix, HomologyError> {
    if c.shape() != s.shape() {
        return Err(MatrixError::DimensionMismatch { left: c.shape(), right: s.shape() }.into());
    }
    let c_inv = c.unimodular_inverse()?;
    Ok(c_inv.try_mul(s)?.try_mul(c)?)
}

/// Checks `S = [[I_g, A], [0, -I_g]]` and returns `A`.
pub fn check_inv_condition(s: &IntegerMatrix) -> Result<IntegerMatrix, InvConditionFailure> {
    let (n, m) = s.shape();
    if n != m || n % 2 != 0 || n == 0 {
        return Err(InvConditionFailure::Shape);
    }
    let g = n / 2;
    if s.submatrix(0, 0, g, g) != IntegerMatrix::identity(g) {
        return Err(InvConditionFailure::UpperLeft);
    }
    if !s.submatrix(g, 0, g, g).is_zero() {
        return Err(InvConditionFailure::LowerLeft);
    }
    if s.submatrix(g, g, g, g) != -&IntegerMatrix::identity(g) {
        return Err(InvConditionFailure::LowerRight);
    }
    Ok(s.submatrix(0, g, g, g))
}

/// The σ action together with the change of basis that exhibits the
/// invariant half-basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyAction {
    pub genus: usize,
    pub parity: Parity,
    pub action: IntegerMatrix,
    pub basis_change: IntegerMatrix,
    pub transformed: IntegerMatrix,
}

/// Outcome of the three structural checks on a [`HomologyAction`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyChecks {
    pub involution: bool,
    pub symplectic: bool,
    /// The `A` block when the transformed action has the expected form.
    pub a_block: Option<IntegerMatrix>,
}

impl HomologyChecks {
    pub fn all_pass(&self) -> bool {
        self.involution && self.symplectic && self.a_block.is_some()
    }
}

impl HomologyAction {
    pub fn new(genus: usize, parity: Parity) -> Result<Self, HomologyError> {
        let action = sigma_action(genus, parity)?;
        let basis_change = basis_change(genus, parity)?;
        let transformed = conjugate_action(&basis_change, &action)?;
        Ok(HomologyAction { genus, parity, action, basis_change, transformed })
    }

    pub fn for_genus(genus: usize) -> Result<Self, HomologyError> {
        Self::new(genus, Parity::of(genus))
    }

    pub fn checks(&self) -> HomologyChecks {
        let n = 2 * self.genus;
        let j = standard_intersection(self.genus).expect("genus validated at construction");
        let c = &self.basis_change;
        HomologyChecks {
            involution: &self.action * &self.action == IntegerMatrix::identity(n),
            symplectic: &(&c.transpose() * &j) * c == j,
            a_block: check_inv_condition(&self.transformed).ok(),
        }
    }
}

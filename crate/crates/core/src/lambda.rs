//! The sign character of a real isomorphism `α: L → σ*L̄`.
//!
//! For such an `α` the composite `(σ*ᾱ)∘α` is a real scalar `c`. Rescaling
//! `α` by `z` multiplies `c` by `|z|²`, so only the sign of `c` is intrinsic;
//! that sign is the character value `λ(L)`.

use std::ops::Mul;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::genus1::{classify_fixed_class, ClassLabel, Divisor};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LambdaError {
    #[error("isomorphism scalar must be a nonzero finite real, got {0}")]
    ZeroScalar(f64),
    #[error("rescaling factor must be nonzero")]
    ZeroRescale,
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("λ = -1 is impossible in degree {degree} on genus {genus}")]
    ParityViolation { genus: usize, degree: i64 },
    #[error("λ is undefined on a class labelled {0:?}")]
    Undefined(ClassLabel),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// The scalar `c` in `(σ*ᾱ)∘α = c·Id_L`. Reality of `c` is assumed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoScalar(f64);

impl IsoScalar {
    pub fn new(c: f64) -> Result<Self, LambdaError> {
        if c == 0.0 || !c.is_finite() {
            return Err(LambdaError::ZeroScalar(c));
        }
        Ok(IsoScalar(c))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalized {
    pub sign: Sign,
    /// Positive factor `1/√|c|` turning `α` into `α₀` with `(σ*ᾱ₀)∘α₀ = ±Id`.
    pub scale: f64,
}

pub fn normalize_iso(s: IsoScalar) -> Normalized {
    let c = s.0;
    Normalized {
        sign: if c > 0.0 { Sign::Plus } else { Sign::Minus },
        scale: 1.0 / c.abs().sqrt(),
    }
}

/// Scalar attached to `zα`: `|z|²·c`.
pub fn rescale_iso(s: IsoScalar, z: Complex64) -> Result<IsoScalar, LambdaError> {
    if z.norm_sqr() == 0.0 {
        return Err(LambdaError::ZeroRescale);
    }
    IsoScalar::new(z.norm_sqr() * s.0)
}

/// Whether a bundle of this degree on a curve of this genus may carry `λ = -1`:
/// exactly when `degree ≡ genus + 1 (mod 2)`.
pub fn lambda_minus_allowed(genus: usize, degree: i64) -> bool {
    (degree - genus as i64 - 1).rem_euclid(2) == 0
}

/// Degree and character value of a fixed bundle class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BundleClassMeta {
    genus: usize,
    degree: i64,
    lambda: Option<Sign>,
}

impl BundleClassMeta {
    pub fn new(genus: usize, degree: i64, lambda: Option<Sign>) -> Result<Self, LambdaError> {
        if genus == 0 {
            return Err(LambdaError::ZeroGenus);
        }
        if lambda == Some(Sign::Minus) && !lambda_minus_allowed(genus, degree) {
            return Err(LambdaError::ParityViolation { genus, degree });
        }
        Ok(BundleClassMeta { genus, degree, lambda })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn lambda(&self) -> Option<Sign> {
        self.lambda
    }
}

/// λ on a fixed degree-zero class of the genus-one model: `+1` on `T1`,
/// `-1` on `T2`.
pub fn lambda_of_model_class(d: &Divisor) -> Result<Sign, LambdaError> {
    match classify_fixed_class(d) {
        ClassLabel::T1 => Ok(Sign::Plus),
        ClassLabel::T2 => Ok(Sign::Minus),
        other => Err(LambdaError::Undefined(other)),
    }
}

/// Index of the image of the real-bundle map inside the fixed degree-zero
/// classes: 1 for even genus, 2 for odd genus.
pub fn theorem_index(genus: usize) -> Result<usize, LambdaError> {
    match genus {
        0 => Err(LambdaError::ZeroGenus),
        g if g % 2 == 0 => Ok(1),
        _ => Ok(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus1::{translation_class_x, ModelPoint};
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        let n = normalize_iso(IsoScalar::new(1.0).unwrap());
        assert_eq!((n.sign, n.scale), (Sign::Plus, 1.0));
        let n = normalize_iso(IsoScalar::new(4.0).unwrap());
        assert_eq!((n.sign, n.scale), (Sign::Plus, 0.5));
        let n = normalize_iso(IsoScalar::new(-9.0).unwrap());
        assert_eq!(n.sign, Sign::Minus);
        assert!((n.scale - 1.0 / 3.0).abs() < 1e-15);
        assert!((n.scale * n.scale * -9.0 + 1.0).abs() < 1e-12);
        assert!(IsoScalar::new(0.0).is_err());
        assert!(IsoScalar::new(f64::NAN).is_err());
    }

    #[test]
    fn rescale_examples() {
        let s = rescale_iso(IsoScalar::new(-1.0).unwrap(), Complex64::new(0.0, 3.0)).unwrap();
        assert_eq!(s.value(), -9.0);
        assert_eq!(normalize_iso(s).sign, Sign::Minus);
        assert_eq!(rescale_iso(IsoScalar::new(2.0).unwrap(), Complex64::new(1.0, 0.0)).unwrap().value(), 2.0);
        assert_eq!(
            rescale_iso(IsoScalar::new(2.0).unwrap(), Complex64::new(0.0, 0.0)),
            Err(LambdaError::ZeroRescale)
        );
    }

    proptest! {
        #[test]
        fn rescaling_preserves_sign(
            c in prop_oneof![-1e6..-1e-6f64, 1e-6..1e6f64],
            re in -1e3..1e3f64,
            im in -1e3..1e3f64,
        ) {
            prop_assume!(re != 0.0 || im != 0.0);
            let s = IsoScalar::new(c).unwrap();
            let z = Complex64::new(re, im);
            if let Ok(r) = rescale_iso(s, z) {
                prop_assert_eq!(normalize_iso(r).sign, normalize_iso(s).sign);
            }
        }
    }

    #[test]
    fn parity_law_examples() {
        for d0 in -3..=3 {
            assert!(lambda_minus_allowed(2, 2 * d0 + 1));
            assert!(lambda_minus_allowed(4, 2 * d0 + 1));
            assert!(lambda_minus_allowed(3, 2 * d0));
            assert!(lambda_minus_allowed(1, 2 * d0));
        }
        assert!(!lambda_minus_allowed(3, 1));
        assert!(!lambda_minus_allowed(2, 0));
    }

    #[test]
    fn bundle_meta_enforces_parity() {
        assert!(BundleClassMeta::new(1, 0, Some(Sign::Minus)).is_ok());
        assert_eq!(
            BundleClassMeta::new(3, 1, Some(Sign::Minus)),
            Err(LambdaError::ParityViolation { genus: 3, degree: 1 })
        );
        assert!(BundleClassMeta::new(3, 1, Some(Sign::Plus)).is_ok());
        assert!(BundleClassMeta::new(3, 1, None).is_ok());
        assert_eq!(BundleClassMeta::new(0, 1, None), Err(LambdaError::ZeroGenus));
    }

    #[test]
    fn model_lambda() {
        let o = ModelPoint::origin();
        let d = Divisor::from_terms([(ModelPoint::from_ratios((1, 2), (0, 1)), 1), (o, -1)]);
        assert_eq!(lambda_of_model_class(&d).unwrap(), Sign::Plus);
        let x = translation_class_x();
        assert_eq!(lambda_of_model_class(&x).unwrap(), Sign::Minus);
        assert_eq!(lambda_of_model_class(&(&x + &x)).unwrap(), Sign::Minus * Sign::Minus);
        assert_eq!(
            lambda_of_model_class(&Divisor::point(o)),
            Err(LambdaError::Undefined(ClassLabel::NonzeroDegree))
        );
    }

    #[test]
    fn index_values() {
        assert_eq!(theorem_index(2).unwrap(), 1);
        assert_eq!(theorem_index(3).unwrap(), 2);
        assert_eq!(theorem_index(1).unwrap(), 2);
        assert!(theorem_index(0).is_err());
    }
}

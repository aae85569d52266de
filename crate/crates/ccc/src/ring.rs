//! The truncated polynomial ring F_r[x]/(x^m), its unit group, and canonical
//! representatives of units modulo nonzero scalar multiples.
//!
//! A polynomial here is a length-m coefficient vector; it is a unit exactly
//! when its constant coefficient is nonzero. Scaling a unit by the inverse of
//! its constant coefficient picks out the unique class member with constant
//! coefficient 1, which serves as the canonical label of its scalar class.

use crate::field::{Field, FieldElement, FieldError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("operand does not belong to this ring")]
    MixedRings,
    #[error("element is not a unit (zero constant coefficient)")]
    NotAUnit,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// F_r[x]/(x^m) for a fixed field and truncation order m >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRing {
    field: Field,
    m: usize,
}

/// An element of a [`ResidueRing`]: m coefficients, degree-0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResiduePoly {
    coeffs: Vec<FieldElement>,
}

/// Canonical representative of a unit class under F_r^* scaling:
/// the class member whose constant coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetRep {
    poly: ResiduePoly,
}

impl ResiduePoly {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Canonical indices of the coefficients, degree-0 first.
    pub fn coeff_indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|e| e.index()).collect()
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }
}

impl CosetRep {
    pub fn poly(&self) -> &ResiduePoly {
        &self.poly
    }

    pub fn coeff_indices(&self) -> Vec<u64> {
        self.poly.coeff_indices()
    }
}

impl std::fmt::Display for CosetRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coeff_indices()
            .iter()
            .map(|i| i.to_string())
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl ResidueRing {
    pub fn new(field: Field, m: usize) -> Self {
        assert!(m >= 1, "truncation order must be at least 1");
        ResidueRing { field, m }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check(&self, a: &ResiduePoly) -> Result<(), RingError> {
        if a.coeffs.len() != self.m {
            return Err(RingError::MixedRings);
        }
        for c in &a.coeffs {
            self.field.check(c).map_err(|_| RingError::MixedRings)?;
        }
        Ok(())
    }

    pub fn poly(&self, coeffs: Vec<FieldElement>) -> Result<ResiduePoly, RingError> {
        let p = ResiduePoly { coeffs };
        self.check(&p)?;
        Ok(p)
    }

    pub fn poly_from_indices(&self, indices: &[u64]) -> Result<ResiduePoly, RingError> {
        if indices.len() != self.m || indices.iter().any(|&i| i >= self.field.r()) {
            return Err(RingError::MixedRings);
        }
        Ok(ResiduePoly {
            coeffs: indices.iter().map(|&i| self.field.element(i)).collect(),
        })
    }

    /// The constant polynomial 1.
    pub fn one(&self) -> ResiduePoly {
        let mut coeffs = vec![self.field.zero(); self.m];
        coeffs[0] = self.field.one();
        ResiduePoly { coeffs }
    }

    /// The polynomial x - alpha. For m = 1 this truncates to the constant
    /// -alpha.
    pub fn x_minus(&self, alpha: &FieldElement) -> Result<ResiduePoly, RingError> {
        let mut coeffs = vec![self.field.zero(); self.m];
        coeffs[0] = self.field.neg(alpha)?;
        if self.m >= 2 {
            coeffs[1] = self.field.one();
        }
        Ok(ResiduePoly { coeffs })
    }

    /// Product, with all terms of degree >= m dropped.
    pub fn mul(&self, a: &ResiduePoly, b: &ResiduePoly) -> Result<ResiduePoly, RingError> {
        self.check(a)?;
        self.check(b)?;
        let mut coeffs = vec![self.field.zero(); self.m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= self.m {
                    break;
                }
                let term = self.field.mul(x, y)?;
                coeffs[i + j] = self.field.add(&coeffs[i + j], &term)?;
            }
        }
        Ok(ResiduePoly { coeffs })
    }

    /// a^e by square and multiply; a^0 = 1.
    pub fn pow(&self, a: &ResiduePoly, mut e: u64) -> Result<ResiduePoly, RingError> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit by degree-by-degree back-substitution: the x^m
    /// modulus makes the linear system triangular.
    pub fn inv(&self, a: &ResiduePoly) -> Result<ResiduePoly, RingError> {
        self.check(a)?;
        if !a.is_unit() {
            return Err(RingError::NotAUnit);
        }
        let c0_inv = self.field.inv(&a.coeffs[0])?;
        let mut out = vec![self.field.zero(); self.m];
        out[0] = c0_inv.clone();
        for t in 1..self.m {
            let mut s = self.field.zero();
            for j in 1..=t {
                let term = self.field.mul(&a.coeffs[j], &out[t - j])?;
                s = self.field.add(&s, &term)?;
            }
            out[t] = self.field.neg(&self.field.mul(&c0_inv, &s)?)?;
        }
        Ok(ResiduePoly { coeffs: out })
    }

    /// Scale a unit so its constant coefficient is 1. Idempotent, and
    /// invariant under scaling the input by any nonzero field element.
    pub fn canonical_rep(&self, a: &ResiduePoly) -> Result<CosetRep, RingError> {
        self.check(a)?;
        if !a.is_unit() {
            return Err(RingError::NotAUnit);
        }
        let scale = self.field.inv(&a.coeffs[0])?;
        let coeffs = a
            .coeffs
            .iter()
            .map(|c| self.field.mul(c, &scale))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CosetRep {
            poly: ResiduePoly { coeffs },
        })
    }
}

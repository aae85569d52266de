//! Arithmetic in GF(p^k).
//!
//! Elements are residue polynomials over GF(p) reduced by a monic irreducible
//! modulus of degree k, stored constant coefficient first. Every element also
//! carries its position in the canonical element order,
//! `index = sum(coeffs[j] * p^j)`, so index 0 is the zero element and
//! enumeration is reproducible across runs and machines.

use thiserror::Error;

/// Largest supported field size. Everything here is exact small-scale
/// arithmetic; bigger fields would want log tables, which are out of scope.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree k must be at least 1")]
    InvalidDegree,
    #[error("field size p^k exceeds the supported maximum of 2^16")]
    TooLarge,
    #[error("modulus must be a monic degree-k polynomial with coefficients in [0, p)")]
    InvalidModulus,
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("operand does not belong to this field")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
}

/// A finite field GF(p^k) with a fixed canonical labeling of its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u64,
    k: u32,
    r: u64,
    /// Monic irreducible modulus, length k+1, constant coefficient first.
    /// For k = 1 this is the polynomial x, making reduction a no-op.
    modulus: Vec<u64>,
}

/// An element of a [`Field`], as a coefficient vector of length k over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    index: u64,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position in the canonical element order (base-p encoding of coeffs).
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

/// Elements order by their canonical index, not by coefficient lexicography.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index.cmp(&other.index)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn base_digits(mut value: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(value % p);
        value /= p;
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Remainder of `num` divided by the monic polynomial `den`, over GF(p).
/// Coefficients constant-first; `den` must be monic.
fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let dd = den.len() - 1;
    let mut rem: Vec<u64> = num.to_vec();
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        if lead != 0 {
            for (j, &dc) in den.iter().enumerate() {
                let sub = mul_mod(lead, dc, p);
                let idx = shift + j;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
    }
    rem
}

/// Trial division against every monic polynomial of degree 1..=deg/2.
fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for t in 1..=deg / 2 {
        let count = p.pow(t as u32);
        for c in 0..count {
            let mut div = base_digits(c, p, t);
            div.push(1);
            let rem = poly_rem(poly, &div, p);
            if rem.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(p^k) with the default modulus: the lexicographically smallest monic
    /// irreducible of degree k (non-leading coefficients compared as a base-p
    /// integer, constant digit least significant).
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        Self::build(p, k, None)
    }

    /// GF(p^k) with a caller-supplied modulus (length k+1, constant first).
    pub fn with_modulus(p: u64, k: u32, modulus: Vec<u64>) -> Result<Self, FieldError> {
        Self::build(p, k, Some(modulus))
    }

    fn build(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::InvalidDegree);
        }
        let r = p
            .checked_pow(k)
            .filter(|&r| r <= MAX_FIELD_SIZE)
            .ok_or(FieldError::TooLarge)?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1
                    || *m.last().unwrap() != 1
                    || m.iter().any(|&c| c >= p)
                {
                    return Err(FieldError::InvalidModulus);
                }
                if !poly_is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus { p });
                }
                m
            }
            None => Self::smallest_irreducible(p, k),
        };
        Ok(Field { p, k, r, modulus })
    }

    fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
        let count = p.pow(k);
        for c in 0..count {
            let mut cand = base_digits(c, p, k as usize);
            cand.push(1);
            if poly_is_irreducible(&cand, p) {
                return cand;
            }
        }
        unreachable!("an irreducible of every degree exists over GF(p)")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements, r = p^k.
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The element at a given position of the canonical order.
    ///
    /// Panics if `index >= r`.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.r, "element index {index} out of range");
        FieldElement {
            coeffs: base_digits(index, self.p, self.k as usize),
            index,
        }
    }

    pub fn element_from_coeffs(&self, coeffs: Vec<u64>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::MixedFields);
        }
        let index = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c);
        Ok(FieldElement { coeffs, index })
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All r elements, in canonical order; the zero element comes first.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.r).map(|i| self.element(i)).collect()
    }

    pub(crate) fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.coeffs.len() != self.k as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::MixedFields);
        }
        Ok(())
    }

    fn from_reduced(&self, coeffs: Vec<u64>) -> FieldElement {
        let index = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c);
        FieldElement { coeffs, index }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(self.from_reduced(coeffs))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        Ok(self.from_reduced(coeffs))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(self.from_reduced(coeffs))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let k = self.k as usize;
        let mut conv = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                conv[i + j] = (conv[i + j] + mul_mod(x, y, self.p)) % self.p;
            }
        }
        let mut rem = poly_rem(&conv, &self.modulus, self.p);
        rem.resize(k, 0);
        Ok(self.from_reduced(rem))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse, via a^(r-2).
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.pow(a, self.r - 2)
    }
}

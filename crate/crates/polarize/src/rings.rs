//! Exact arithmetic in the cyclotomic orders `Z[i]`, `Z[ζ6]` and `Z[ζ5]`.
//!
//! Elements are stored in the power basis of the ring generator and reduced
//! modulo the fixed minimal polynomial, with unbounded integer coefficients.
//! Each ring knows how many roots of unity its fraction field contains,
//! which makes the root-of-unity decision a single exact power computation:
//! a nonzero `a` is a root of unity iff `a^w = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("ring mismatch: expected {expected}, got {got}")]
    SpecMismatch { expected: RingKind, got: RingKind },
    #[error("expected {expected} power-basis coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("zero argument where a nonzero ring element is required")]
    ZeroArgument,
}

/// The three supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    /// `Z[i]`, `i^2 = -1`.
    Gaussian,
    /// `Z[a]` with `a` a primitive sixth root of unity, `a^2 = a - 1`.
    SixthRoot,
    /// `Z[z]` with `z` a primitive fifth root of unity.
    FifthRoot,
}

impl RingKind {
    pub const ALL: [RingKind; 3] = [RingKind::Gaussian, RingKind::SixthRoot, RingKind::FifthRoot];

    /// Letter used for the ring generator in the surface syntax.
    pub fn generator_symbol(self) -> char {
        match self {
            RingKind::Gaussian => 'i',
            RingKind::SixthRoot => 'a',
            RingKind::FifthRoot => 'z',
        }
    }

    pub fn parse_name(name: &str) -> Option<RingKind> {
        match name.to_ascii_lowercase().as_str() {
            "gaussian" => Some(RingKind::Gaussian),
            "sixthroot" => Some(RingKind::SixthRoot),
            "fifthroot" => Some(RingKind::FifthRoot),
            _ => None,
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RingKind::Gaussian => "gaussian",
            RingKind::SixthRoot => "sixthroot",
            RingKind::FifthRoot => "fifthroot",
        };
        f.write_str(name)
    }
}

/// Fixed table row describing one of the supported rings: degree, minimal
/// polynomial and the number `w` of roots of unity in the fraction field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingSpec {
    kind: RingKind,
    degree: usize,
    /// Coefficients `c_0..c_{d-1}` of the monic minimal polynomial
    /// `x^d + c_{d-1} x^{d-1} + ... + c_0`.
    minpoly_tail: &'static [i64],
    root_of_unity_count: u32,
}

const GAUSSIAN: RingSpec = RingSpec {
    kind: RingKind::Gaussian,
    degree: 2,
    minpoly_tail: &[1, 0], // x^2 + 1
    root_of_unity_count: 4,
};

const SIXTH_ROOT: RingSpec = RingSpec {
    kind: RingKind::SixthRoot,
    degree: 2,
    minpoly_tail: &[1, -1], // x^2 - x + 1
    root_of_unity_count: 6,
};

const FIFTH_ROOT: RingSpec = RingSpec {
    kind: RingKind::FifthRoot,
    degree: 4,
    minpoly_tail: &[1, 1, 1, 1], // x^4 + x^3 + x^2 + x + 1
    root_of_unity_count: 10,
};

/// Fixed table lookup for a ring kind.
pub fn ring_make(kind: RingKind) -> RingSpec {
    match kind {
        RingKind::Gaussian => GAUSSIAN,
        RingKind::SixthRoot => SIXTH_ROOT,
        RingKind::FifthRoot => FIFTH_ROOT,
    }
}

impl RingSpec {
    pub fn new(kind: RingKind) -> RingSpec {
        ring_make(kind)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of roots of unity in the fraction field.
    pub fn root_of_unity_count(&self) -> u32 {
        self.root_of_unity_count
    }

    /// The monic minimal polynomial as coefficients `c_0..c_d`, `c_d = 1`.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        let mut coeffs: Vec<BigInt> = self.minpoly_tail.iter().map(|&c| BigInt::from(c)).collect();
        coeffs.push(BigInt::one());
        coeffs
    }
}

/// An element of one of the cyclotomic orders, in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    spec: RingSpec,
    coeffs: Vec<BigInt>,
}

impl RingElement {
    pub fn new(spec: RingSpec, coeffs: Vec<BigInt>) -> Result<RingElement, RingError> {
        if coeffs.len() != spec.degree {
            return Err(RingError::CoefficientCount {
                expected: spec.degree,
                got: coeffs.len(),
            });
        }
        Ok(RingElement { spec, coeffs })
    }

    pub fn from_i64s(spec: RingSpec, coeffs: &[i64]) -> Result<RingElement, RingError> {
        RingElement::new(spec, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(spec: RingSpec) -> RingElement {
        RingElement {
            spec,
            coeffs: vec![BigInt::zero(); spec.degree],
        }
    }

    pub fn one(spec: RingSpec) -> RingElement {
        RingElement::integer(spec, 1)
    }

    pub fn integer(spec: RingSpec, n: impl Into<BigInt>) -> RingElement {
        let mut coeffs = vec![BigInt::zero(); spec.degree];
        coeffs[0] = n.into();
        RingElement { spec, coeffs }
    }

    /// The ring generator: `i`, `a` or `z` depending on the ring.
    pub fn generator(spec: RingSpec) -> RingElement {
        let mut coeffs = vec![BigInt::zero(); spec.degree];
        coeffs[1] = BigInt::one();
        RingElement { spec, coeffs }
    }

    /// The Gaussian imaginary unit.
    pub fn gaussian_i() -> RingElement {
        RingElement::generator(ring_make(RingKind::Gaussian))
    }

    /// The primitive sixth root of unity generating the SixthRoot ring.
    pub fn sixth_alpha() -> RingElement {
        RingElement::generator(ring_make(RingKind::SixthRoot))
    }

    /// The primitive cube root of unity `j = a - 1` inside the SixthRoot
    /// ring, checked against `j^2 + j + 1 = 0` on construction.
    pub fn sixth_j() -> RingElement {
        let spec = ring_make(RingKind::SixthRoot);
        let j = RingElement::from_i64s(spec, &[-1, 1]).unwrap();
        let check = j
            .mul(&j)
            .unwrap()
            .add(&j)
            .unwrap()
            .add(&RingElement::one(spec))
            .unwrap();
        assert!(check.is_zero(), "j = a - 1 must satisfy j^2 + j + 1 = 0");
        j
    }

    /// The primitive fifth root of unity generating the FifthRoot ring.
    pub fn fifth_zeta() -> RingElement {
        RingElement::generator(ring_make(RingKind::FifthRoot))
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self == &RingElement::one(self.spec)
    }

    fn check_spec(&self, other: &RingElement) -> Result<(), RingError> {
        if self.spec != other.spec {
            return Err(RingError::SpecMismatch {
                expected: self.spec.kind,
                got: other.spec.kind,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_spec(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RingElement {
            spec: self.spec,
            coeffs,
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_spec(other)?;
        let d = self.spec.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        // reduce with x^d = -(c_0 + c_1 x + ... + c_{d-1} x^{d-1})
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (t, m) in self.spec.minpoly_tail.iter().enumerate() {
                prod[k - d + t] -= &c * BigInt::from(*m);
            }
        }
        prod.truncate(d);
        Ok(RingElement {
            spec: self.spec,
            coeffs: prod,
        })
    }

    /// `self^n` by repeated squaring, `n >= 0`.
    pub fn power(&self, n: u64) -> RingElement {
        let mut result = RingElement::one(self.spec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same spec");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same spec");
            }
        }
        result
    }

    /// Field norm down to the rationals: the resultant of the minimal
    /// polynomial with the coordinate polynomial, computed as the
    /// determinant of the multiplication-by-`self` matrix.
    pub fn norm(&self) -> BigInt {
        let d = self.spec.degree;
        let mut basis_images = Vec::with_capacity(d);
        let mut power = self.clone();
        basis_images.push(power.coeffs.clone());
        for _ in 1..d {
            power = power.mul(&RingElement::generator(self.spec)).unwrap();
            basis_images.push(power.coeffs.clone());
        }
        // column j is self * x^j; determinant wants rows
        let rows: Vec<Vec<BigInt>> = (0..d)
            .map(|r| (0..d).map(|c| basis_images[c][r].clone()).collect())
            .collect();
        lattice::determinant(&rows)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Exact root-of-unity test: a nonzero element is a root of unity iff
    /// its `w`-th power is 1, where `w` counts the roots of unity of the
    /// fraction field. Errors on zero.
    pub fn is_root_of_unity(&self) -> Result<bool, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroArgument);
        }
        Ok(self.power(self.spec.root_of_unity_count as u64).is_one())
    }
}

/// Whether `a / b` is a root of unity in the fraction field, decided
/// without division: `(a/b)^w = 1` iff `a^w = b^w`.
pub fn ratio_is_root_of_unity(a: &RingElement, b: &RingElement) -> Result<bool, RingError> {
    if a.spec != b.spec {
        return Err(RingError::SpecMismatch {
            expected: a.spec.kind,
            got: b.spec.kind,
        });
    }
    if a.is_zero() || b.is_zero() {
        return Err(RingError::ZeroArgument);
    }
    let w = a.spec.root_of_unity_count as u64;
    Ok(a.power(w) == b.power(w))
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.spec.kind.generator_symbol();
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            if k == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push(sym);
                if k >= 2 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

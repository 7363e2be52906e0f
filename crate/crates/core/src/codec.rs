//! Encoding `E = M·G_n`, decoding `M = E·G_n⁻¹`, and the checks the receiver
//! can run on a code matrix: the determinant relation and, for 2×2 codes,
//! the row-ratio brackets around the silver ratio.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::matrix::{determinant, g_matrix, mat_mul, unimodular_inverse, IntMatrix};
use crate::sequences::ratio_interval;

/// A square message matrix whose entries are all positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MessageMatrix(IntMatrix);

impl MessageMatrix {
    pub fn new(body: IntMatrix) -> Result<Self> {
        if !body.is_square() {
            return Err(Error::NotSquare { rows: body.rows(), cols: body.cols() });
        }
        for r in 0..body.rows() {
            for c in 0..body.cols() {
                if !body[(r, c)].is_positive() {
                    return Err(Error::NonPositiveEntry { row: r, col: c });
                }
            }
        }
        Ok(MessageMatrix(body))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }
}

/// What travels over the channel: the code matrix plus its header.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodePackage {
    pub e: IntMatrix,
    pub p: u32,
    pub n: u32,
    /// The checking element `det(M)`.
    pub det_m: BigInt,
}

impl CodePackage {
    pub fn new(e: IntMatrix, p: u32, n: u32, det_m: BigInt) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("p must be at least 1"));
        }
        if n == 0 {
            return Err(Error::Domain("n must be at least 1"));
        }
        let order = p as usize + 1;
        if e.rows() != order || e.cols() != order {
            return Err(Error::DimensionMismatch { expected: (order, order), found: (e.rows(), e.cols()) });
        }
        Ok(CodePackage { e, p, n, det_m })
    }

    /// `det(G_n) = (-1)^{n(p+2)}`.
    pub fn transform_sign(&self) -> BigInt {
        det_sign(self.p, self.n)
    }

    /// The value `det(E)` must take for an undamaged package.
    pub fn expected_code_det(&self) -> BigInt {
        self.transform_sign() * &self.det_m
    }
}

pub(crate) fn det_sign(p: u32, n: u32) -> BigInt {
    if (u64::from(n) * (u64::from(p) + 2)) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub fn encode(m: &MessageMatrix, p: u32, n: u32) -> Result<CodePackage> {
    if p == 0 || n == 0 {
        return Err(Error::Domain("encode needs p >= 1 and n >= 1"));
    }
    let order = p as usize + 1;
    if m.order() != order {
        return Err(Error::DimensionMismatch { expected: (order, order), found: (m.order(), m.order()) });
    }
    let e = mat_mul(m.as_matrix(), &g_matrix(p, n)?)?;
    let det_m = determinant(m.as_matrix())?;
    Ok(CodePackage { e, p, n, det_m })
}

/// Right-multiplies by `G_n⁻¹`. No plausibility checks happen here.
pub fn decode(pkg: &CodePackage) -> Result<IntMatrix> {
    let inverse = unimodular_inverse(&g_matrix(pkg.p, pkg.n)?)?;
    mat_mul(&pkg.e, &inverse)
}

pub fn verify_det_relation(pkg: &CodePackage) -> Result<bool> {
    Ok(determinant(&pkg.e)? == pkg.expected_code_det())
}

/// Whether `num/den` lies strictly inside `ratio_interval(n)`.
pub fn row_ratio_ok(num: &BigInt, den: &BigInt, n: u32) -> Result<bool> {
    ratio_interval(n)?.contains_ratio(num, den)
}

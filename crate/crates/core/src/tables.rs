//! Reference witness records for small solvable instances of
//! g^2 X^ell + g Y^ell + 1 = 0, plus the published size-7 code of length 31.
//! The extension-field rows are stated against the standard moduli from
//! `field::standard_modulus`.

use crate::cac::{CacCode, Codeword, CodewordKind};
use crate::error::Result;
use crate::field::{FieldCtx, FieldElem};

/// A coordinate in a witness row: an integer residue, a polynomial in the
/// adjoined root `a` (constant term first), or a scaled power of one.
#[derive(Debug, Clone, Copy)]
pub enum ElemSpec {
    Int(u64),
    Poly(&'static [u64]),
    PolyPow(&'static [u64], u64),
    ScaledPolyPow(u64, &'static [u64], u64),
}

impl ElemSpec {
    pub fn resolve(&self, field: &FieldCtx) -> Result<FieldElem> {
        Ok(match *self {
            ElemSpec::Int(v) => field.elem(v),
            ElemSpec::Poly(c) => field.from_coeffs(c)?,
            ElemSpec::PolyPow(c, e) => field.pow(field.from_coeffs(c)?, e),
            ElemSpec::ScaledPolyPow(s, c, e) => {
                field.mul(field.elem(s), field.pow(field.from_coeffs(c)?, e))
            }
        })
    }
}

/// One recorded solvable instance: g is a generator of F_q^x and (x, y)
/// solves the diagonal equation with exponent ell.
#[derive(Debug, Clone, Copy)]
pub struct WitnessRow {
    pub q: u64,
    pub ell: u64,
    pub g: ElemSpec,
    pub x: ElemSpec,
    pub y: ElemSpec,
}

use ElemSpec::{Int, Poly, PolyPow, ScaledPolyPow};

/// Exponent 4, the eight prime powers q = 1 mod 4 with q <= 49.
pub fn ell4_rows() -> Vec<WitnessRow> {
    vec![
        WitnessRow { q: 9, ell: 4, g: Poly(&[1, 1]), x: Poly(&[1, 1]), y: Poly(&[1, 1]) },
        WitnessRow { q: 13, ell: 4, g: Int(2), x: Int(4), y: Int(1) },
        WitnessRow { q: 17, ell: 4, g: Int(3), x: Int(6), y: Int(2) },
        WitnessRow { q: 25, ell: 4, g: Poly(&[1, 2]), x: Int(1), y: PolyPow(&[1, 2], 2) },
        WitnessRow { q: 29, ell: 4, g: Int(2), x: Int(4), y: Int(4) },
        WitnessRow { q: 37, ell: 4, g: Int(5), x: Int(2), y: Int(2) },
        WitnessRow { q: 41, ell: 4, g: Int(6), x: Int(3), y: Int(3) },
        WitnessRow { q: 49, ell: 4, g: Poly(&[4, 1]), x: Int(2), y: ScaledPolyPow(2, &[4, 1], 7) },
    ]
}

/// Exponent 5, the three prime powers q = 1 mod 5 below the threshold 34.
pub fn ell5_rows() -> Vec<WitnessRow> {
    vec![
        WitnessRow { q: 11, ell: 5, g: Int(7), x: Int(10), y: Int(10) },
        WitnessRow { q: 16, ell: 5, g: Poly(&[0, 1]), x: PolyPow(&[0, 1], 2), y: PolyPow(&[0, 1], 2) },
        WitnessRow { q: 31, ell: 5, g: Int(3), x: Int(28), y: Int(3) },
    ]
}

/// Exponent 6, the 22 prime powers q = 1 mod 6 with 13 < q < 194.
pub fn ell6_rows() -> Vec<WitnessRow> {
    vec![
        WitnessRow { q: 19, ell: 6, g: Int(2), x: Int(1), y: Int(2) },
        WitnessRow { q: 25, ell: 6, g: Poly(&[3, 1]), x: PolyPow(&[3, 1], 3), y: Poly(&[3, 1]) },
        WitnessRow { q: 31, ell: 6, g: Int(3), x: Int(19), y: Int(27) },
        WitnessRow { q: 37, ell: 6, g: Int(2), x: Int(2), y: Int(1) },
        WitnessRow { q: 43, ell: 6, g: Int(3), x: Int(1), y: Int(28) },
        WitnessRow { q: 49, ell: 6, g: Poly(&[4, 1]), x: PolyPow(&[4, 1], 3), y: PolyPow(&[4, 1], 3) },
        WitnessRow { q: 61, ell: 6, g: Int(2), x: Int(24), y: Int(4) },
        WitnessRow { q: 67, ell: 6, g: Int(2), x: Int(4), y: Int(43) },
        WitnessRow { q: 73, ell: 6, g: Int(5), x: Int(1), y: Int(59) },
        WitnessRow { q: 79, ell: 6, g: Int(3), x: Int(6), y: Int(6) },
        WitnessRow { q: 97, ell: 6, g: Int(5), x: Int(5), y: Int(29) },
        WitnessRow { q: 103, ell: 6, g: Int(5), x: Int(5), y: Int(32) },
        WitnessRow { q: 109, ell: 6, g: Int(6), x: Int(16), y: Int(26) },
        WitnessRow { q: 121, ell: 6, g: Poly(&[2, 1]), x: PolyPow(&[2, 1], 7), y: PolyPow(&[2, 1], 4) },
        WitnessRow { q: 127, ell: 6, g: Int(3), x: Int(84), y: Int(3) },
        WitnessRow { q: 139, ell: 6, g: Int(2), x: Int(2), y: Int(103) },
        WitnessRow { q: 151, ell: 6, g: Int(6), x: Int(1), y: Int(132) },
        WitnessRow { q: 157, ell: 6, g: Int(5), x: Int(22), y: Int(82) },
        WitnessRow { q: 163, ell: 6, g: Int(2), x: Int(8), y: Int(1) },
        WitnessRow { q: 169, ell: 6, g: Poly(&[7, 2]), x: Int(1), y: PolyPow(&[7, 2], 2) },
        WitnessRow { q: 181, ell: 6, g: Int(2), x: Int(86), y: Int(148) },
        WitnessRow { q: 193, ell: 6, g: Int(5), x: Int(1), y: Int(127) },
    ]
}

pub fn all_witness_rows() -> Vec<WitnessRow> {
    let mut rows = ell4_rows();
    rows.extend(ell5_rows());
    rows.extend(ell6_rows());
    rows
}

/// The published optimal code of length 31: one non-equi codeword {0, 2, 5}
/// and six equi-difference codewords.
pub fn reference_cac_31() -> CacCode {
    let n = 31;
    let mut codewords = vec![Codeword::new([0, 2, 5], CodewordKind::Nonequi, n).unwrap()];
    for a in [4u64, 6, 7, 9, 10, 15] {
        codewords.push(Codeword::equi(a, n).unwrap());
    }
    CacCode { n, codewords }
}

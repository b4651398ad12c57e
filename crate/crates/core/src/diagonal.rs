//! Point counting and solvability search for g^2 X^ell + g Y^ell + 1 = 0
//! over F_q, together with the bound sheets that drive the scans.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::nt;

/// Per-(field, ell) table mapping each element to its number of ell-th roots.
pub struct PowerResidueTable {
    pub ell: u64,
    counts: Vec<u32>,
}

impl PowerResidueTable {
    pub fn new(field: &FieldCtx, ell: u64) -> Result<PowerResidueTable> {
        let q = field.q();
        if ell == 0 || (q - 1) % ell != 0 {
            return Err(Error::NotADivisor { d: ell, n: q - 1 });
        }
        let mut counts = vec![0u32; q as usize];
        counts[0] = 1;
        for e in 0..q - 1 {
            let target = field.gen_pow(e * ell);
            counts[target.index() as usize] += 1;
        }
        Ok(PowerResidueTable { ell, counts })
    }

    /// Number of y with y^ell = target: 0, 1 (target zero) or ell.
    pub fn count_roots(&self, target: FieldElem) -> u64 {
        self.counts[target.index() as usize] as u64
    }
}

/// All ell-th roots of `target`, ascending by discrete log (zero first).
pub fn ell_th_roots(field: &FieldCtx, ell: u64, target: FieldElem) -> Vec<FieldElem> {
    if target.is_zero() {
        return vec![field.zero()];
    }
    let e = field.dlog(target).unwrap();
    if e % ell != 0 {
        return Vec::new();
    }
    let step = (field.q() - 1) / ell;
    (0..ell)
        .map(|i| field.gen_pow(e / ell + i * step))
        .collect()
}

/// Affine solution count N_g, O(q) per generator via the root-count table.
pub fn count_affine(field: &FieldCtx, ell: u64, g: FieldElem) -> Result<u64> {
    let table = PowerResidueTable::new(field, ell)?;
    count_affine_with(field, &table, g)
}

pub fn count_affine_with(field: &FieldCtx, table: &PowerResidueTable, g: FieldElem) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::Domain("g must be nonzero".into()));
    }
    let ell = table.ell;
    let q = field.q();
    let g_inv = field.inv(g)?;
    let g_sq = field.mul(g, g);
    let neg_one = field.neg(field.one());
    // x = 0 contributes the y with y^ell = -1/g
    let mut count = table.count_roots(field.mul(neg_one, g_inv));
    for ex in 0..q - 1 {
        let x_ell = field.gen_pow(ex * ell);
        let v = field.neg(field.add(field.one(), field.mul(g_sq, x_ell)));
        count += table.count_roots(field.mul(v, g_inv));
    }
    Ok(count)
}

/// Projective solution count: affine points plus the classes (1 : y : 0)
/// with y^ell = -g.
pub fn count_projective(field: &FieldCtx, ell: u64, g: FieldElem) -> Result<u64> {
    let table = PowerResidueTable::new(field, ell)?;
    count_projective_with(field, &table, g)
}

pub fn count_projective_with(
    field: &FieldCtx,
    table: &PowerResidueTable,
    g: FieldElem,
) -> Result<u64> {
    let affine = count_affine_with(field, table, g)?;
    Ok(affine + table.count_roots(field.neg(g)))
}

/// Existence pattern of nontrivial projective solutions with a zero
/// coordinate, with the closed-form prediction it must match: some exist
/// exactly when ell <= 2, or ell = 4 with -1 outside the ell-th powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCoordClassification {
    pub ell: u64,
    pub x_zero: u64,
    pub y_zero: u64,
    pub infinity: u64,
    pub any_exists: bool,
    pub predicted_exists: bool,
}

pub fn classify_zero_coord(
    field: &FieldCtx,
    ell: u64,
    g: FieldElem,
) -> Result<ZeroCoordClassification> {
    if !field.is_generator(g) {
        return Err(Error::NotAGenerator(field.format_elem(g)));
    }
    let table = PowerResidueTable::new(field, ell)?;
    let g_inv = field.inv(g)?;
    let g_sq_inv = field.mul(g_inv, g_inv);
    let neg_one = field.neg(field.one());
    let x_zero = table.count_roots(field.mul(neg_one, g_inv));
    let y_zero = table.count_roots(field.mul(neg_one, g_sq_inv));
    let infinity = table.count_roots(field.neg(g));
    let minus_one_in_l = field.dlog(neg_one).map(|e| e % ell) == Some(0);
    let predicted = ell <= 2 || (ell == 4 && !minus_one_in_l);
    Ok(ZeroCoordClassification {
        ell,
        x_zero,
        y_zero,
        infinity,
        any_exists: x_zero + y_zero + infinity > 0,
        predicted_exists: predicted,
    })
}

/// A solved instance: a generator and an affine solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalWitness {
    pub g: FieldElem,
    pub x: FieldElem,
    pub y: FieldElem,
}

fn require_proper_divisor(field: &FieldCtx, ell: u64) -> Result<()> {
    let q = field.q();
    if ell == 0 || (q - 1) % ell != 0 {
        return Err(Error::NotADivisor { d: ell, n: q - 1 });
    }
    if ell == q - 1 {
        return Err(Error::DegenerateExponent { ell });
    }
    Ok(())
}

/// Scans generators by ascending exponent and, within each, candidate x by
/// ascending discrete log (zero first unless excluded), returning the first
/// witness found. An empty result is a legitimate outcome.
pub fn find_solvable_generator(
    field: &FieldCtx,
    ell: u64,
    require_nonzero_xy: bool,
) -> Result<Option<DiagonalWitness>> {
    require_proper_divisor(field, ell)?;
    let q = field.q();
    let neg_one = field.neg(field.one());
    for t in field.generator_exponents() {
        let g = field.gen_pow(t);
        let g_inv = field.inv(g)?;
        let g_sq = field.mul(g, g);
        if !require_nonzero_xy {
            let roots = ell_th_roots(field, ell, field.mul(neg_one, g_inv));
            if let Some(&y) = roots.first() {
                return Ok(Some(DiagonalWitness {
                    g,
                    x: field.zero(),
                    y,
                }));
            }
        }
        for ex in 0..q - 1 {
            let x = field.gen_pow(ex);
            let x_ell = field.gen_pow(ex * ell);
            let v = field.neg(field.add(field.one(), field.mul(g_sq, x_ell)));
            if v.is_zero() {
                if !require_nonzero_xy {
                    return Ok(Some(DiagonalWitness {
                        g,
                        x,
                        y: field.zero(),
                    }));
                }
                continue;
            }
            let target = field.mul(v, g_inv);
            let e = field.dlog(target).unwrap();
            if e % ell == 0 {
                return Ok(Some(DiagonalWitness {
                    g,
                    x,
                    y: field.gen_pow(e / ell),
                }));
            }
        }
    }
    Ok(None)
}

/// First affine solution with x*y != 0 for a fixed g, in the canonical order.
pub fn first_nonzero_witness(
    field: &FieldCtx,
    table: &PowerResidueTable,
    g: FieldElem,
) -> Option<(FieldElem, FieldElem)> {
    let ell = table.ell;
    let q = field.q();
    let g_inv = field.inv(g).ok()?;
    let g_sq = field.mul(g, g);
    for ex in 0..q - 1 {
        let x = field.gen_pow(ex);
        let x_ell = field.gen_pow(ex * ell);
        let v = field.neg(field.add(field.one(), field.mul(g_sq, x_ell)));
        if v.is_zero() {
            continue;
        }
        let target = field.mul(v, g_inv);
        let e = field.dlog(target).unwrap();
        if e % ell == 0 {
            return Some((x, field.gen_pow(e / ell)));
        }
    }
    None
}

/// Exact Hasse-Weil envelope over every generator:
/// |N_proj - (q+1)| <= (ell-1)(ell-2) sqrt(q), compared without floats.
pub fn hasse_weil_check(field: &FieldCtx, ell: u64) -> Result<bool> {
    let table = PowerResidueTable::new(field, ell)?;
    let q = field.q() as i128;
    let c = (ell as i128 - 1) * (ell as i128 - 2);
    for g in field.generators() {
        let n_proj = count_projective_with(field, &table, g)? as i128;
        let dev = n_proj - (q + 1);
        if dev * dev > c * c * q {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The thresholds attached to an exponent ell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSheet {
    pub ell: u64,
    pub omega: u32,
    pub delta: u8,
    /// Solvability threshold (2^omega (ell-3-delta) + 2)^2 - 2.
    pub b: i64,
    pub genus: u64,
    /// Least q with q > (ell-1) + (ell-1)(ell-2) sqrt(q).
    pub crude_q_threshold: u64,
    /// (ell-1)^2 (ell-2)^2, past which every g has a projective point.
    pub hasse_weil_threshold: u64,
}

/// b(ell) as a saturating i128, usable for arbitrary ell.
pub fn solvability_bound(ell: u64) -> i128 {
    let omega = nt::omega(ell);
    let delta = if ell % 4 == 0 { 1i128 } else { 0 };
    let base: i128 = (1i128 << omega.min(126)) * (ell as i128 - 3 - delta) + 2;
    base.checked_mul(base)
        .and_then(|s| s.checked_sub(2))
        .unwrap_or(i128::MAX)
}

pub fn bound_sheet(ell: u64) -> Result<BoundSheet> {
    if ell == 0 {
        return Err(Error::ZeroValue);
    }
    let omega = nt::omega(ell);
    let delta = u8::from(ell % 4 == 0);
    let b = solvability_bound(ell);
    if b > i64::MAX as i128 {
        return Err(Error::Overflow(format!("b({ell}) exceeds 64 bits")));
    }
    let e = ell as u128;
    let genus = u64::try_from(if ell < 2 { 0 } else { (e - 1) * (e - 2) / 2 })
        .map_err(|_| Error::Overflow(format!("genus of ell = {ell}")))?;
    let c = if ell < 2 { 0u128 } else { (e - 1) * (e - 2) };
    let hw = c
        .checked_mul(c)
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Overflow(format!("Hasse-Weil threshold for ell = {ell}")))?;
    let crude = crude_threshold(ell)?;
    Ok(BoundSheet {
        ell,
        omega,
        delta,
        b: b as i64,
        genus,
        crude_q_threshold: crude,
        hasse_weil_threshold: hw,
    })
}

fn crude_threshold(ell: u64) -> Result<u64> {
    let e = ell as u128;
    let c = if ell < 2 { 0u128 } else { (e - 1) * (e - 2) };
    let c_sq = c
        .checked_mul(c)
        .ok_or_else(|| Error::Overflow(format!("crude threshold for ell = {ell}")))?;
    let holds = |q: u128| -> bool {
        if q + 1 <= e {
            return false;
        }
        let lhs = (q - (e - 1)) * (q - (e - 1));
        lhs > c_sq * q
    };
    // q > (ell-1) + c sqrt(q) is monotone beyond the larger root, so bisect.
    let mut lo = 1u128;
    let mut hi = 2 * e + c_sq + 2;
    if holds(lo) {
        return Ok(1);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    u64::try_from(hi).map_err(|_| Error::Overflow(format!("crude threshold for ell = {ell}")))
}

/// Size bookkeeping for optimal weight-3 codes of odd prime length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CacSizeSheet {
    pub p: u64,
    pub o2: u64,
    /// Number of cosets that keep a leftover pair: the index of <-1,2> when
    /// 4 does not divide o2, zero otherwise.
    pub leftover_cosets: u64,
    pub ell0: u64,
    pub lower: u64,
    pub upper: u64,
    pub m_target: Option<u64>,
}

pub fn cac_size_sheet(p: u64) -> Result<CacSizeSheet> {
    if p <= 3 {
        return Err(Error::Domain(format!(
            "p = {p}: code length must be an odd prime >= 5"
        )));
    }
    let params = crate::field::h_params(p)?;
    let o2 = params.o2;
    let leftover = if o2 % 2 == 1 {
        (p - 1) / (2 * o2)
    } else if o2 % 4 == 2 {
        (p - 1) / o2
    } else {
        0
    };
    if (p - 1).checked_sub(2 * leftover).map(|v| v % 4) != Some(0) {
        return Err(Error::Consistency(format!(
            "p = {p}: (p-1-2*{leftover}) is not a multiple of 4"
        )));
    }
    let lower = (p - 1 - 2 * leftover) / 4;
    let upper = lower + leftover / 3;
    let m_target = if o2 % 4 != 0 {
        Some((p - 1 - 2 * params.ell0) / 4 + params.ell0 / 3)
    } else {
        None
    };
    Ok(CacSizeSheet {
        p,
        o2,
        leftover_cosets: leftover,
        ell0: params.ell0,
        lower,
        upper,
        m_target,
    })
}

/// Checks the divisor monotonicity of solvability: a witness for exponent
/// ell yields one for ell' | ell by raising the coordinates to ell/ell'.
pub fn divisor_solvability(field: &FieldCtx, ell: u64, ell_prime: u64) -> Result<bool> {
    if ell_prime == 0 || ell % ell_prime != 0 {
        return Err(Error::NotADivisor {
            d: ell_prime,
            n: ell,
        });
    }
    require_proper_divisor(field, ell)?;
    match find_solvable_generator(field, ell, false)? {
        None => Ok(true),
        Some(w) => {
            let m = ell / ell_prime;
            let x2 = field.pow(w.x, m);
            let y2 = field.pow(w.y, m);
            if !field.eval_diagonal(ell_prime, w.g, x2, y2).is_zero() {
                return Err(Error::Consistency(format!(
                    "power substitution failed for ell = {ell}, ell' = {ell_prime}"
                )));
            }
            Ok(find_solvable_generator(field, ell_prime, false)?.is_some())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct XyWitness {
    pub x: String,
    pub y: String,
}

/// Counting report for a fixed (q, ell, g), with printable coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalReport {
    pub q: u64,
    pub ell: u64,
    pub g: String,
    pub n_affine: u64,
    pub n_proj: u64,
    /// First solution with x*y != 0, if any.
    pub witness: Option<XyWitness>,
    /// Projective solutions with a zero coordinate, as (x : y : z) triples.
    pub zero_coord_solutions: Vec<[String; 3]>,
}

pub fn diagonal_report(field: &FieldCtx, ell: u64, g: FieldElem) -> Result<DiagonalReport> {
    if g.is_zero() {
        return Err(Error::Domain("g must be nonzero".into()));
    }
    let table = PowerResidueTable::new(field, ell)?;
    let n_affine = count_affine_with(field, &table, g)?;
    let n_proj = count_projective_with(field, &table, g)?;
    let witness = first_nonzero_witness(field, &table, g).map(|(x, y)| XyWitness {
        x: field.format_elem(x),
        y: field.format_elem(y),
    });
    let g_inv = field.inv(g)?;
    let neg_one = field.neg(field.one());
    let mut zero_coord = Vec::new();
    for y in ell_th_roots(field, ell, field.mul(neg_one, g_inv)) {
        zero_coord.push(["0".into(), field.format_elem(y), "1".into()]);
    }
    for x in ell_th_roots(field, ell, field.mul(neg_one, field.mul(g_inv, g_inv))) {
        zero_coord.push([field.format_elem(x), "0".into(), "1".into()]);
    }
    for y in ell_th_roots(field, ell, field.neg(g)) {
        zero_coord.push(["1".into(), field.format_elem(y), "0".into()]);
    }
    Ok(DiagonalReport {
        q: field.q(),
        ell,
        g: field.format_elem(g),
        n_affine,
        n_proj,
        witness,
        zero_coord_solutions: zero_coord,
    })
}

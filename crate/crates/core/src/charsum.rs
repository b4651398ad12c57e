//! Multiplicative characters, Jacobi sums, and the character-sum expressions
//! for the number of points on g^2 X^ell + g Y^ell + 1 = 0. Every count
//! computed here is cross-checked elsewhere against brute-force enumeration.

use num_complex::Complex64;

use crate::diagonal::{count_affine_with, PowerResidueTable};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::nt;

pub type ComplexVal = Complex64;

/// Tolerance for a single Jacobi-sum identity.
pub const JACOBI_TOL: f64 = 1e-9;
/// Tolerance for a full point-count sum of ~ell^2 terms of size sqrt(q).
pub const COUNT_TOL: f64 = 1e-3;

/// The ell-th roots of unity, the dlog-indexed character values, and the
/// full ell x ell Jacobi-sum table for one (field, ell) pair. Immutable
/// after construction; share freely across threads.
pub struct CharSystem<'f> {
    field: &'f FieldCtx,
    ell: u64,
    roots: Vec<ComplexVal>,
    jacobi: Vec<ComplexVal>,
}

/// One multiplicative character chi^power of order dividing ell, extended to
/// 0 by chi(0) = 1 for the trivial character and 0 otherwise.
pub struct Character<'a, 'f> {
    system: &'a CharSystem<'f>,
    power: u64,
}

impl<'a, 'f> Character<'a, 'f> {
    pub fn power(&self) -> u64 {
        self.power
    }

    pub fn is_trivial(&self) -> bool {
        self.power == 0
    }

    pub fn eval(&self, a: FieldElem) -> ComplexVal {
        self.system.chi(self.power, a)
    }
}

impl<'f> CharSystem<'f> {
    /// Builds the root and Jacobi tables eagerly; requires ell | q-1.
    pub fn new(field: &'f FieldCtx, ell: u64) -> Result<CharSystem<'f>> {
        let q = field.q();
        if ell == 0 || (q - 1) % ell != 0 {
            return Err(Error::NotADivisor { d: ell, n: q - 1 });
        }
        let roots: Vec<ComplexVal> = (0..ell)
            .map(|r| {
                let angle = 2.0 * std::f64::consts::PI * r as f64 / ell as f64;
                ComplexVal::new(angle.cos(), angle.sin())
            })
            .collect();

        // residues of (dlog a, dlog(1-a)) mod ell over a != 0, 1
        let one = field.one();
        let mut pairs = Vec::with_capacity((q as usize).saturating_sub(2));
        for idx in 0..q {
            let a = field.elem_from_index(idx)?;
            if a.is_zero() || a == one {
                continue;
            }
            let b = field.sub(one, a);
            let r1 = field.dlog(a).unwrap() % ell;
            let r2 = field.dlog(b).unwrap() % ell;
            pairs.push((r1, r2));
        }
        let mut jacobi = vec![ComplexVal::new(0.0, 0.0); (ell * ell) as usize];
        for j in 0..ell {
            for k in 0..ell {
                let mut s = ComplexVal::new(0.0, 0.0);
                for &(r1, r2) in &pairs {
                    s += roots[((j * r1 + k * r2) % ell) as usize];
                }
                // extended-character terms at a = 0 and a = 1
                if j == 0 {
                    s += 1.0;
                }
                if k == 0 {
                    s += 1.0;
                }
                jacobi[(j * ell + k) as usize] = s;
            }
        }
        Ok(CharSystem {
            field,
            ell,
            roots,
            jacobi,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn field(&self) -> &FieldCtx {
        self.field
    }

    pub fn character(&self, power: u64) -> Character<'_, 'f> {
        Character {
            system: self,
            power: power % self.ell,
        }
    }

    /// chi^j at a, with the extension chi(0) = [j = 0].
    pub fn chi(&self, j: u64, a: FieldElem) -> ComplexVal {
        let j = j % self.ell;
        match self.field.dlog(a) {
            None => {
                if j == 0 {
                    ComplexVal::new(1.0, 0.0)
                } else {
                    ComplexVal::new(0.0, 0.0)
                }
            }
            Some(e) => self.roots[(j * (e % self.ell) % self.ell) as usize],
        }
    }

    /// Cached J(chi^j, chi^k) = sum over a of chi^j(a) chi^k(1-a).
    pub fn jacobi(&self, j: u64, k: u64) -> ComplexVal {
        self.jacobi[((j % self.ell) * self.ell + (k % self.ell)) as usize]
    }

    /// N_g from the full character sum
    /// q + sum over 1 <= j,k <= ell-1 of chi^j(-g^-2) chi^k(-g^-1) J(chi^j, chi^k).
    pub fn count_for_generator(&self, g: FieldElem) -> Result<u64> {
        let q = self.field.q();
        if self.ell == q - 1 {
            return Err(Error::DegenerateExponent { ell: self.ell });
        }
        if !self.field.is_generator(g) {
            return Err(Error::NotAGenerator(self.field.format_elem(g)));
        }
        let neg_one = self.field.neg(self.field.one());
        let g_inv = self.field.inv(g)?;
        let u = self.field.mul(neg_one, self.field.mul(g_inv, g_inv));
        let v = self.field.mul(neg_one, g_inv);
        let eu = self.field.dlog(u).unwrap() % self.ell;
        let ev = self.field.dlog(v).unwrap() % self.ell;
        let mut s = ComplexVal::new(q as f64, 0.0);
        for j in 1..self.ell {
            for k in 1..self.ell {
                let w = self.roots[(j * eu % self.ell) as usize]
                    * self.roots[(k * ev % self.ell) as usize];
                s += w * self.jacobi[(j * self.ell + k) as usize];
            }
        }
        round_count(s, self.ell, q, "full character sum")
    }

    /// N_{g0^t} from the rewrite that drops the antidiagonal j + k = ell:
    /// q + 1 + sum of chi(-1)^(j+k) chi(g0^-1)^((2j+k)t) J(chi^j, chi^k).
    /// Requires ell >= 3 and gcd(t, ell) = 1.
    pub fn count_via_reduced_sum(&self, t: u64) -> Result<u64> {
        let ell = self.ell;
        let q = self.field.q();
        if ell < 3 {
            return Err(Error::Domain(format!(
                "the reduced sum needs ell >= 3, got {ell}"
            )));
        }
        if ell == q - 1 {
            return Err(Error::DegenerateExponent { ell });
        }
        if t == 0 || nt::gcd(t, ell) != 1 {
            return Err(Error::NotCoprime { a: t, m: ell });
        }
        let neg_one = self.field.neg(self.field.one());
        let d1 = self.field.dlog(neg_one).unwrap() % ell;
        let ginv = self.field.inv(self.field.generator())?;
        let dg = self.field.dlog(ginv).unwrap() % ell;
        let tm = t % ell;
        let mut s = ComplexVal::new((q + 1) as f64, 0.0);
        for j in 1..ell {
            for k in 1..ell {
                if j + k == ell {
                    continue;
                }
                let sign = self.roots[((j + k) * d1 % ell) as usize];
                let twist = self.roots[(((2 * j + k) % ell) * (tm * dg % ell) % ell) as usize];
                s += sign * twist * self.jacobi[(j * ell + k) as usize];
            }
        }
        round_count(s, ell, q, "reduced character sum")
    }
}

fn round_count(s: ComplexVal, ell: u64, q: u64, what: &str) -> Result<u64> {
    if s.im.abs() > COUNT_TOL {
        return Err(Error::Tolerance(format!(
            "{what} for ell={ell}, q={q}: imaginary part {}",
            s.im
        )));
    }
    let rounded = s.re.round();
    if (s.re - rounded).abs() > COUNT_TOL {
        return Err(Error::Tolerance(format!(
            "{what} for ell={ell}, q={q}: {} is not near an integer",
            s.re
        )));
    }
    if rounded < 0.0 {
        return Err(Error::Tolerance(format!(
            "{what} for ell={ell}, q={q}: negative count {rounded}"
        )));
    }
    Ok(rounded as u64)
}

/// One-shot wrapper around `CharSystem::count_for_generator`.
pub fn count_via_charsum(field: &FieldCtx, ell: u64, g: FieldElem) -> Result<u64> {
    CharSystem::new(field, ell)?.count_for_generator(g)
}

/// N(q, ell): the affine count summed over all phi(q-1) generators, checked
/// against its reduction to a sum over the phi(ell) coset representatives.
pub fn aggregate_count(field: &FieldCtx, ell: u64) -> Result<u64> {
    let q = field.q();
    if ell == 0 || (q - 1) % ell != 0 {
        return Err(Error::NotADivisor { d: ell, n: q - 1 });
    }
    if ell == q - 1 {
        return Err(Error::DegenerateExponent { ell });
    }
    let table = PowerResidueTable::new(field, ell)?;
    let mut total = 0u64;
    for t in field.generator_exponents() {
        total += count_affine_with(field, &table, field.gen_pow(t))?;
    }
    let mut subsum = 0u64;
    for t in 1..=ell {
        if nt::gcd(t, ell) == 1 {
            subsum += count_affine_with(field, &table, field.gen_pow(t))?;
        }
    }
    let reduced = nt::euler_phi(q - 1) / nt::euler_phi(ell) * subsum;
    if total != reduced {
        return Err(Error::Consistency(format!(
            "generator-sum reduction failed for q={q}, ell={ell}: {total} != {reduced}"
        )));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::count_affine;
    use crate::field::FieldCtx;

    #[test]
    fn extended_character_values() {
        let f31 = FieldCtx::prime(31).unwrap();
        let sys = CharSystem::new(&f31, 3).unwrap();
        let eps = sys.character(0);
        let chi = sys.character(1);
        assert_eq!(eps.eval(f31.zero()), ComplexVal::new(1.0, 0.0));
        assert_eq!(chi.eval(f31.zero()), ComplexVal::new(0.0, 0.0));
        let zeta = chi.eval(f31.generator());
        assert!((zeta - sys.roots[1]).norm() < 1e-12);
        assert!(chi.eval(f31.one()).re > 0.999);
    }

    #[test]
    fn jacobi_sum_identities() {
        for q in [7u64, 9, 11, 13, 16, 19, 25, 27] {
            let field = FieldCtx::with_default_modulus(q).unwrap();
            for ell in nt::divisors(q - 1).unwrap() {
                if ell == 1 {
                    continue;
                }
                let sys = CharSystem::new(&field, ell).unwrap();
                // J(eps, eps) = q
                assert!((sys.jacobi(0, 0) - ComplexVal::new(q as f64, 0.0)).norm() < JACOBI_TOL);
                for j in 1..ell {
                    // J(chi, eps) = 0
                    assert!(sys.jacobi(j, 0).norm() < JACOBI_TOL, "q={q} ell={ell} j={j}");
                    // J(chi, chi^-1) = -chi(-1)
                    let lam = sys.character(j);
                    let expect = -lam.eval(field.neg(field.one()));
                    assert!(
                        (sys.jacobi(j, ell - j) - expect).norm() < JACOBI_TOL,
                        "q={q} ell={ell} j={j}"
                    );
                    for k in 1..ell {
                        // symmetry
                        assert!((sys.jacobi(j, k) - sys.jacobi(k, j)).norm() < JACOBI_TOL);
                        if (j + k) % ell != 0 {
                            // |J| = sqrt(q) when chi^j, chi^k, chi^(j+k) nontrivial
                            assert!(
                                (sys.jacobi(j, k).norm() - (q as f64).sqrt()).abs() < 1e-6,
                                "q={q} ell={ell} j={j} k={k}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn charsum_matches_brute_force_small() {
        for q in [7u64, 9, 11, 13, 16, 19, 25, 31] {
            let field = FieldCtx::with_default_modulus(q).unwrap();
            let mut divs = nt::divisors(q - 1).unwrap();
            divs.pop(); // drop the degenerate ell = q-1
            for ell in divs {
                let sys = CharSystem::new(&field, ell).unwrap();
                for g in field.generators() {
                    assert_eq!(
                        sys.count_for_generator(g).unwrap(),
                        count_affine(&field, ell, g).unwrap(),
                        "q={q} ell={ell} g={}",
                        field.format_elem(g)
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_exponent_counts_q() {
        for q in [5u64, 7, 9, 11] {
            let field = FieldCtx::with_default_modulus(q).unwrap();
            for g in field.generators() {
                assert_eq!(count_via_charsum(&field, 1, g).unwrap(), q);
                assert_eq!(count_affine(&field, 1, g).unwrap(), q);
            }
        }
    }

    #[test]
    fn reduced_sum_agrees_with_brute_force() {
        let f31 = FieldCtx::prime(31).unwrap();
        let sys = CharSystem::new(&f31, 3).unwrap();
        assert_eq!(
            sys.count_via_reduced_sum(1).unwrap(),
            count_affine(&f31, 3, f31.generator()).unwrap()
        );
        let f11 = FieldCtx::prime(11).unwrap();
        let sys = CharSystem::new(&f11, 5).unwrap();
        assert_eq!(
            sys.count_via_reduced_sum(1).unwrap(),
            count_affine(&f11, 5, f11.generator()).unwrap()
        );
        let f19 = FieldCtx::prime(19).unwrap();
        let sys = CharSystem::new(&f19, 6).unwrap();
        assert_eq!(
            sys.count_via_reduced_sum(5).unwrap(),
            count_affine(&f19, 6, f19.gen_pow(5)).unwrap()
        );
        assert!(sys.count_via_reduced_sum(2).is_err());
    }

    #[test]
    fn aggregate_counts() {
        let f13 = FieldCtx::prime(13).unwrap();
        assert_eq!(aggregate_count(&f13, 6).unwrap(), 0);
        let f23 = FieldCtx::prime(23).unwrap();
        assert_eq!(aggregate_count(&f23, 11).unwrap(), 0);
        let f11 = FieldCtx::prime(11).unwrap();
        assert!(aggregate_count(&f11, 5).unwrap() > 0);
    }

    #[test]
    fn crude_bound_forces_positivity() {
        // wherever q clears the crude threshold, every generator has points
        for q in [64u64, 81, 101, 121, 125, 127, 128] {
            let field = FieldCtx::with_default_modulus(q).unwrap();
            let mut divs = nt::divisors(q - 1).unwrap();
            divs.pop();
            for ell in divs {
                let sheet = crate::diagonal::bound_sheet(ell).unwrap();
                if q < sheet.crude_q_threshold {
                    continue;
                }
                let table = PowerResidueTable::new(&field, ell).unwrap();
                for g in field.generators() {
                    assert!(
                        count_affine_with(&field, &table, g).unwrap() > 0,
                        "q={q} ell={ell}"
                    );
                }
            }
        }
    }
}

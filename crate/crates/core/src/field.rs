//! Arithmetic in F_p and F_{p^k}: construction with validated irreducible
//! moduli, full power/discrete-log tables, generator enumeration, and the
//! power-residue subgroups used by the solvability machinery.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nt;

/// Largest field the full dlog table is willing to hold.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

/// An element of a fixed `FieldCtx`, stored as its canonical index
/// `c0 + c1*p + ... + c_{k-1}*p^{k-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);

    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// JSON descriptor for a field, `modulus` empty for prime fields.
#[derive(Debug, Clone, Serialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
    pub generator: String,
}

/// A finite field F_{p^k} with a fixed generator and full exp/dlog tables.
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, constant term first, length k+1; empty when k = 1.
    modulus: Vec<u64>,
    /// pow_tab[e] is the index of generator^e, for 0 <= e < q-1.
    pow_tab: Vec<u32>,
    /// dlog_tab[index] inverts pow_tab; u32::MAX marks zero.
    dlog_tab: Vec<u32>,
    generator: u32,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

// ---------------------------------------------------------------------------
// polynomial helpers over F_p (dense, constant term first, trimmed)
// ---------------------------------------------------------------------------

fn poly_trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&mut prod, f, p);
    prod
}

/// Reduces `a` in place modulo the monic polynomial `f`.
fn poly_rem(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let deg_f = f.len() - 1;
    while a.len() > deg_f {
        let lead = *a.last().unwrap();
        let pos = a.len() - 1 - deg_f;
        if lead != 0 {
            for (i, &fi) in f.iter().enumerate() {
                let sub = lead * fi % p;
                let idx = pos + i;
                a[idx] = (a[idx] + p - sub) % p;
            }
        }
        a.pop();
    }
    poly_trim(a);
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    poly_rem(&mut b, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        // x mod y with y made monic first
        let inv_lead = nt::mod_pow(*y.last().unwrap(), p - 2, p);
        let monic: Vec<u64> = y.iter().map(|&c| c * inv_lead % p).collect();
        poly_rem(&mut x, &monic, p);
        std::mem::swap(&mut x, &mut y);
    }
    x
}

/// Irreducibility over F_p for a monic polynomial of degree >= 1.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u64;
    if k == 1 {
        return true;
    }
    // x^(p^m) mod f by iterating the Frobenius map
    let x = vec![0u64, 1];
    let mut frob = poly_powmod(&x, p, f, p);
    let mut powers = vec![frob.clone()]; // x^(p^1), x^(p^2), ...
    for _ in 1..k {
        frob = poly_powmod(&frob, p, f, p);
        powers.push(frob.clone());
    }
    // x^(p^k) must equal x
    let mut xk = powers[k as usize - 1].clone();
    sub_x(&mut xk, p);
    poly_trim(&mut xk);
    if !xk.is_empty() {
        return false;
    }
    for r in nt::factorize(k).expect("k >= 1").primes() {
        let mut t = powers[(k / r) as usize - 1].clone();
        sub_x(&mut t, p);
        let g = poly_gcd(&t, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn sub_x(a: &mut Vec<u64>, p: u64) {
    if a.len() < 2 {
        a.resize(2, 0);
    }
    a[1] = (a[1] + p - 1) % p;
    poly_trim(a);
}

/// A nontrivial monic factor of a reducible monic polynomial, found by root
/// search and then trial division by monic polynomials of low degree.
fn poly_find_factor(f: &[u64], p: u64) -> Vec<u64> {
    let k = f.len() - 1;
    for a in 0..p {
        let mut acc = 0u64;
        for &c in f.iter().rev() {
            acc = (acc * a + c) % p;
        }
        if acc == 0 {
            return vec![(p - a) % p, 1];
        }
    }
    for d in 2..=k / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                cand.push(rest % p);
                rest /= p;
            }
            cand.push(1);
            let mut rem = f.to_vec();
            poly_rem(&mut rem, &cand, p);
            if rem.is_empty() {
                return cand;
            }
        }
    }
    unreachable!("called on an irreducible polynomial")
}

/// Moduli matching the explicit constructions used by the reference witness
/// tables, so that printed coordinates reproduce them verbatim.
pub fn standard_modulus(p: u64, k: u32) -> Option<&'static [u64]> {
    match (p, k) {
        (3, 2) => Some(&[1, 0, 1]),   // x^2 + 1,  F_9  = F_3(sqrt(-1))
        (2, 4) => Some(&[1, 1, 0, 0, 1]), // x^4 + x + 1, F_16
        (5, 2) => Some(&[3, 0, 1]),   // x^2 - 2,  F_25 = F_5(sqrt(2))
        (7, 2) => Some(&[1, 0, 1]),   // x^2 + 1,  F_49 = F_7(sqrt(-1))
        (11, 2) => Some(&[9, 0, 1]),  // x^2 - 2,  F_121
        (13, 2) => Some(&[11, 0, 1]), // x^2 - 2,  F_169
        _ => None,
    }
}

/// Lexicographically smallest monic irreducible of degree k over F_p,
/// comparing coefficient lists constant term first.
pub fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    assert!(k >= 2);
    let total = p.pow(k);
    for idx in 0..total {
        let mut coeffs = vec![0u64; k as usize + 1];
        coeffs[k as usize] = 1;
        let mut rest = idx;
        for slot in (0..k as usize).rev() {
            coeffs[slot] = rest % p;
            rest /= p;
        }
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ---------------------------------------------------------------------------
// FieldCtx
// ---------------------------------------------------------------------------

impl FieldCtx {
    /// Prime field F_p with the smallest positive primitive root as generator.
    pub fn prime(p: u64) -> Result<Arc<FieldCtx>> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime { n: p });
        }
        if p > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge {
                q: p,
                limit: MAX_FIELD_SIZE,
            });
        }
        let g = nt::smallest_primitive_root(p)?;
        let q = p;
        let mut pow_tab = vec![0u32; (q - 1) as usize];
        let mut dlog_tab = vec![u32::MAX; q as usize];
        let mut cur = 1u64;
        for e in 0..(q - 1) as usize {
            pow_tab[e] = cur as u32;
            dlog_tab[cur as usize] = e as u32;
            cur = cur * g % p;
        }
        if cur != 1 {
            return Err(Error::Consistency(format!(
                "generator {g} of F_{p} does not have order {}",
                q - 1
            )));
        }
        Ok(Arc::new(FieldCtx {
            p,
            k: 1,
            q,
            modulus: Vec::new(),
            pow_tab,
            dlog_tab,
            generator: g as u32,
        }))
    }

    /// Extension field F_{p^k} defined by a monic irreducible modulus
    /// (constant term first). Coefficients are reduced mod p.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Arc<FieldCtx>> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime { n: p });
        }
        if modulus.len() < 3 {
            return Err(Error::Domain(
                "extension modulus must have degree at least 2".into(),
            ));
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Domain("modulus must be monic".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge {
                q: u64::MAX,
                limit: MAX_FIELD_SIZE,
            })?;
        if !poly_is_irreducible(&modulus, p) {
            let factor = poly_find_factor(&modulus, p);
            return Err(Error::ReducibleModulus {
                factor: poly_string(&factor),
            });
        }

        let order_factors = nt::factorize(q - 1)?;
        let one = vec![1u64];
        let mut gen_coeffs = None;
        for idx in 1..q {
            let cand = decode_raw(idx, p, k);
            let full_order = order_factors
                .primes()
                .all(|r| poly_powmod(&cand, (q - 1) / r, &modulus, p) != one);
            if full_order {
                gen_coeffs = Some(cand);
                break;
            }
        }
        let gen_coeffs = gen_coeffs
            .ok_or_else(|| Error::Consistency(format!("no generator found for q = {q}")))?;

        let mut pow_tab = vec![0u32; (q - 1) as usize];
        let mut dlog_tab = vec![u32::MAX; q as usize];
        let mut cur = vec![1u64];
        for e in 0..(q - 1) as usize {
            let idx = encode_raw(&cur, p, k);
            pow_tab[e] = idx as u32;
            dlog_tab[idx as usize] = e as u32;
            cur = poly_mulmod(&cur, &gen_coeffs, &modulus, p);
        }
        if cur != vec![1u64] {
            return Err(Error::Consistency(format!(
                "generator of F_{q} does not have order {}",
                q - 1
            )));
        }
        Ok(Arc::new(FieldCtx {
            p,
            k,
            q,
            modulus,
            pow_tab,
            dlog_tab,
            generator: encode_raw(&gen_coeffs, p, k) as u32,
        }))
    }

    /// F_q for a prime power q, with the standard modulus for the fields the
    /// witness tables name and the lexicographically smallest irreducible
    /// otherwise.
    pub fn with_default_modulus(q: u64) -> Result<Arc<FieldCtx>> {
        let f = nt::factorize(q)?;
        if f.factors.len() != 1 {
            return Err(Error::NotPrimePower { n: q });
        }
        let (p, k) = f.factors[0];
        if k == 1 {
            FieldCtx::prime(p)
        } else {
            match standard_modulus(p, k) {
                Some(m) => FieldCtx::extension(p, m),
                None => FieldCtx::extension(p, &smallest_irreducible(p, k)),
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    pub fn generator(&self) -> FieldElem {
        FieldElem(self.generator)
    }

    /// Embeds an integer residue into the prime subfield.
    pub fn elem(&self, r: u64) -> FieldElem {
        FieldElem((r % self.p) as u32)
    }

    pub fn elem_from_index(&self, idx: u64) -> Result<FieldElem> {
        if idx < self.q {
            Ok(FieldElem(idx as u32))
        } else {
            Err(Error::Domain(format!("index {idx} out of range for q = {}", self.q)))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.k as usize {
            return Err(Error::Domain(format!(
                "coefficient list longer than extension degree {}",
                self.k
            )));
        }
        let mut idx = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            idx += (c % self.p) * self.p.pow(i as u32);
        }
        Ok(FieldElem(idx as u32))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut rest = a.0 as u64;
        for _ in 0..self.k {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut ia = a.0 as u64;
        let mut ib = b.0 as u64;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.k {
            let s = (ia % self.p + ib % self.p) % self.p;
            out += s * scale;
            scale *= self.p;
            ia /= self.p;
            ib /= self.p;
        }
        FieldElem(out as u32)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let mut ia = a.0 as u64;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.k {
            let d = ia % self.p;
            out += ((self.p - d) % self.p) * scale;
            scale *= self.p;
            ia /= self.p;
        }
        FieldElem(out as u32)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem(0);
        }
        let ea = self.dlog_tab[a.0 as usize] as u64;
        let eb = self.dlog_tab[b.0 as usize] as u64;
        FieldElem(self.pow_tab[((ea + eb) % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let e = self.dlog_tab[a.0 as usize] as u64;
        Ok(FieldElem(
            self.pow_tab[((self.q - 1 - e) % (self.q - 1)) as usize],
        ))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e by exponent arithmetic on the dlog table; 0^0 = 1.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.is_zero() {
            return if e == 0 { FieldElem(1) } else { FieldElem(0) };
        }
        let base = self.dlog_tab[a.0 as usize] as u128;
        let exp = (base * (e % (self.q - 1)) as u128 % (self.q - 1) as u128) as usize;
        FieldElem(self.pow_tab[exp])
    }

    /// generator^e via the power table.
    pub fn gen_pow(&self, e: u64) -> FieldElem {
        FieldElem(self.pow_tab[(e % (self.q - 1)) as usize])
    }

    pub fn dlog(&self, a: FieldElem) -> Option<u64> {
        if a.is_zero() {
            None
        } else {
            Some(self.dlog_tab[a.0 as usize] as u64)
        }
    }

    pub fn is_generator(&self, a: FieldElem) -> bool {
        match self.dlog(a) {
            Some(e) => self.q == 2 || nt::gcd(e, self.q - 1) == 1,
            None => false,
        }
    }

    /// Exponents t of the generator with gcd(t, q-1) = 1, ascending.
    pub fn generator_exponents(&self) -> Vec<u64> {
        if self.q == 2 {
            return vec![1];
        }
        (1..self.q - 1)
            .filter(|&t| nt::gcd(t, self.q - 1) == 1)
            .collect()
    }

    /// The phi(q-1) generators of the multiplicative group, by ascending
    /// exponent of the canonical generator.
    pub fn generators(&self) -> Vec<FieldElem> {
        self.generator_exponents()
            .into_iter()
            .map(|t| self.gen_pow(t))
            .collect()
    }

    /// Evaluates g^2 x^ell + g y^ell + 1.
    pub fn eval_diagonal(&self, ell: u64, g: FieldElem, x: FieldElem, y: FieldElem) -> FieldElem {
        let gx = self.mul(self.mul(g, g), self.pow(x, ell));
        let gy = self.mul(g, self.pow(y, ell));
        self.add(self.add(gx, gy), self.one())
    }

    pub fn format_elem(&self, a: FieldElem) -> String {
        if self.k == 1 {
            return format!("{}", a.0);
        }
        let coeffs = self.coeffs(a);
        let mut parts = vec![format!("{}", coeffs[0])];
        for (i, &c) in coeffs.iter().enumerate().skip(1) {
            if i == 1 {
                parts.push(format!("{c}*a"));
            } else {
                parts.push(format!("{c}*a^{i}"));
            }
        }
        parts.join("+")
    }

    /// Parses "c0+c1*a+c2*a^2" style element syntax; bare "a", "a^2" and
    /// plain integers are accepted.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let mut coeffs = vec![0u64; self.k as usize];
        for raw in s.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in element '{s}'")));
            }
            let (coef_str, power) = match term.find('a') {
                None => (term, None),
                Some(pos) => {
                    let coef = term[..pos].trim_end_matches('*').trim();
                    let rest = &term[pos + 1..];
                    let power = if rest.is_empty() {
                        1usize
                    } else {
                        let exp = rest
                            .strip_prefix('^')
                            .ok_or_else(|| Error::Parse(format!("bad term '{term}'")))?;
                        exp.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Parse(format!("bad exponent in '{term}': {e}")))?
                    };
                    (coef, Some(power))
                }
            };
            let coef: u64 = if coef_str.is_empty() {
                1
            } else {
                coef_str
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad coefficient in '{term}': {e}")))?
            };
            let power = power.unwrap_or(0);
            if power >= self.k as usize {
                return Err(Error::Parse(format!(
                    "term '{term}' has degree {power}, field degree is {}",
                    self.k
                )));
            }
            coeffs[power] = (coeffs[power] + coef) % self.p;
        }
        self.from_coeffs(&coeffs)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
            generator: self.format_elem(self.generator()),
        }
    }
}

fn decode_raw(idx: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    let mut rest = idx;
    for _ in 0..k {
        out.push(rest % p);
        rest /= p;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn encode_raw(coeffs: &[u64], p: u64, _k: u32) -> u64 {
    let mut idx = 0u64;
    for &c in coeffs.iter().rev() {
        idx = idx * p + c;
    }
    idx
}

pub fn poly_string(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        match i {
            0 => parts.push(format!("{c}")),
            1 if c == 1 => parts.push("x".into()),
            1 => parts.push(format!("{c}*x")),
            _ if c == 1 => parts.push(format!("x^{i}")),
            _ => parts.push(format!("{c}*x^{i}")),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

// ---------------------------------------------------------------------------
// subgroups of the multiplicative group
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupKind {
    EllPowers { ell: u64 },
    MinusOneAndTwo,
}

/// A subgroup of F_q^x of the form {ell-th powers}, or <-1, 2> in a prime
/// field. Coset labels are discrete logs reduced mod the index.
pub struct SubgroupCtx {
    pub field: Arc<FieldCtx>,
    pub kind: SubgroupKind,
    pub order: u64,
    pub index: u64,
}

/// Order data for <-1, 2> in F_p^x, computed without building tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HParams {
    pub p: u64,
    /// multiplicative order of 2 mod p
    pub o2: u64,
    pub h_order: u64,
    pub ell0: u64,
}

pub fn h_params(p: u64) -> Result<HParams> {
    if !nt::is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    if p == 2 {
        return Err(Error::Domain("p must be an odd prime".into()));
    }
    let o2 = nt::multiplicative_order(2, p)?;
    // <2> contains -1 exactly when its order is even, so <-1,2> doubles only
    // for odd o2.
    let h_order = if o2 % 2 == 1 { 2 * o2 } else { o2 };
    Ok(HParams {
        p,
        o2,
        h_order,
        ell0: (p - 1) / h_order,
    })
}

impl SubgroupCtx {
    /// Subgroup of all ell-th powers; requires ell | q-1.
    pub fn ell_powers(field: Arc<FieldCtx>, ell: u64) -> Result<SubgroupCtx> {
        let q = field.q();
        if ell == 0 || (q - 1) % ell != 0 {
            return Err(Error::NotADivisor { d: ell, n: q - 1 });
        }
        Ok(SubgroupCtx {
            order: (q - 1) / ell,
            index: ell,
            kind: SubgroupKind::EllPowers { ell },
            field,
        })
    }

    /// The subgroup generated by -1 and 2 in a prime field F_p, p odd.
    pub fn minus_one_and_two(field: Arc<FieldCtx>) -> Result<SubgroupCtx> {
        if field.k() != 1 {
            return Err(Error::Domain(
                "<-1,2> subgroups are defined over prime fields".into(),
            ));
        }
        let params = h_params(field.p())?;
        let sub = SubgroupCtx {
            order: params.h_order,
            index: params.ell0,
            kind: SubgroupKind::MinusOneAndTwo,
            field,
        };
        debug_assert!(sub.closure_matches_labels());
        Ok(sub)
    }

    /// Coset label of a nonzero element: dlog reduced mod the index.
    pub fn coset_of(&self, a: FieldElem) -> Result<u64> {
        self.field
            .dlog(a)
            .map(|e| e % self.index)
            .ok_or_else(|| Error::Domain("zero has no coset".into()))
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        self.coset_of(a) == Ok(0)
    }

    /// The subgroup elements, ascending by canonical index.
    pub fn elements(&self) -> Vec<FieldElem> {
        let mut out: Vec<FieldElem> = (0..self.order)
            .map(|i| self.field.gen_pow(i * self.index))
            .collect();
        out.sort_unstable();
        out
    }

    /// Checks that <-1, 2> generated by closure equals the label-0 coset.
    pub fn closure_matches_labels(&self) -> bool {
        let f = &self.field;
        let p = f.p();
        let mut members = std::collections::BTreeSet::new();
        let mut x = 1u64;
        loop {
            members.insert(x);
            members.insert(p - x);
            x = x * 2 % p;
            if x == 1 {
                break;
            }
        }
        members.len() as u64 == self.order
            && members
                .iter()
                .all(|&m| self.contains(f.elem(m)))
    }
}

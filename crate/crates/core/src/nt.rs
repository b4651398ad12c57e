//! Elementary number theory: factorization, totient, Moebius, multiplicative
//! orders and Ramanujan sums, all exact over 64-bit integers.

use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Primes below 10^6, used for the trial-division stage of `factorize`.
static SMALL_PRIMES: LazyLock<Vec<u32>> = LazyLock::new(|| {
    let limit = 1_000_000usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(78_498);
    for n in 2..=limit {
        if !composite[n] {
            primes.push(n as u32);
            let mut m = n * n;
            while m <= limit {
                composite[m] = true;
                m += n;
            }
        }
    }
    primes
});

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // Brent's cycle detection; n is odd, composite, with no factor below 10^6.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mod_mul(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// A positive integer together with its sorted prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// All divisors of `n`, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = divs.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divs.extend(prev.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroValue);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    for &p in SMALL_PRIMES.iter() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    // Whatever survives trial division is 1, a prime, or a product of
    // primes above 10^6; split the latter with Pollard rho.
    let mut stack = Vec::new();
    if rest > 1 {
        stack.push(rest);
    }
    let mut large = Vec::new();
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            large.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    large.sort_unstable();
    let mut it = large.into_iter().peekable();
    while let Some(p) = it.next() {
        let mut e = 1u32;
        while it.peek() == Some(&p) {
            it.next();
            e += 1;
        }
        factors.push((p, e));
    }
    factors.sort_unstable();
    debug_assert_eq!(
        factors.iter().fold(1u64, |acc, &(p, e)| acc * p.pow(e)),
        n
    );
    Ok(Factorization { n, factors })
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

pub fn euler_phi(n: u64) -> u64 {
    let f = factorize(n).expect("euler_phi requires n >= 1");
    f.factors
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * p.pow(e - 1) * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n).expect("moebius requires n >= 1");
    if f.factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> u32 {
    factorize(n).expect("omega requires n >= 1").factors.len() as u32
}

/// Least k >= 1 with a^k = 1 (mod m), found by testing the divisors of phi(m).
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Domain(format!("modulus {m} must be at least 2")));
    }
    let a = a % m;
    if gcd(a, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    let phi = euler_phi(m);
    for d in divisors(phi)? {
        if mod_pow(a, d, m) == 1 {
            return Ok(d);
        }
    }
    Err(Error::Consistency(format!(
        "no order found for {a} mod {m}"
    )))
}

/// Hoelder's closed form for the Ramanujan sum c_n(m).
pub fn ramanujan_sum(n: u64, m: i64) -> i64 {
    assert!(n >= 1, "ramanujan_sum requires n >= 1");
    let mm = m.rem_euclid(n as i64) as u64;
    let d = if mm == 0 { n } else { gcd(n, mm) };
    let reduced = n / d;
    moebius(reduced) * (euler_phi(n) / euler_phi(reduced)) as i64
}

/// Evaluates c_n(m) as the literal complex sum over residues coprime to n and
/// cross-checks it against the divisor-sum identity. Panics if either the
/// floating-point value strays from an integer or the two routes disagree;
/// such a failure would indicate a bug, not bad input.
pub fn ramanujan_sum_oracle(n: u64, m: i64) -> i64 {
    assert!(n >= 1, "ramanujan_sum_oracle requires n >= 1");
    let mm = m.rem_euclid(n as i64) as u64;
    let mut re = 0f64;
    let mut im = 0f64;
    for t in 1..=n {
        if gcd(t, n) == 1 {
            let angle = 2.0 * std::f64::consts::PI * ((mm as u128 * t as u128 % n as u128) as f64)
                / n as f64;
            re += angle.cos();
            im += angle.sin();
        }
    }
    assert!(
        im.abs() < 1e-6,
        "c_{n}({m}): imaginary part {im} exceeds tolerance"
    );
    let rounded = re.round();
    assert!(
        (re - rounded).abs() < 1e-6,
        "c_{n}({m}): value {re} is not close to an integer"
    );
    let complex_value = rounded as i64;

    // Independent route: sum of d*mu(n/d) over divisors d of gcd(n, m).
    let g = if mm == 0 { n } else { gcd(n, mm) };
    let divisor_value: i64 = factorize(g)
        .expect("g >= 1")
        .divisors()
        .into_iter()
        .filter(|&d| n % d == 0)
        .map(|d| d as i64 * moebius(n / d))
        .sum();
    assert_eq!(
        complex_value, divisor_value,
        "c_{n}({m}): complex sum and divisor sum disagree"
    );
    complex_value
}

/// Closed form for the pair count behind the solvability bound: over
/// I = {1,...,ell-1}, the pairs (j,k) with 2j+k = td (mod ell) and j+k != ell
/// number |I| - 2 + 2*floor(d/ell) - (-1)^d * lambda, lambda = (1+(-1)^ell)/2.
pub fn count_s_prime_closed(ell: u64, d: u64) -> u64 {
    let size = ell - 1;
    let lambda = if ell % 2 == 0 { 1i64 } else { 0 };
    let sign = if d % 2 == 0 { 1i64 } else { -1 };
    let boundary = if d == ell { 2i64 } else { 0 };
    (size as i64 - 2 + boundary - sign * lambda) as u64
}

/// Counts pairs (j,k) in {1,...,ell-1}^2 with 2j + k = t*d (mod ell) and
/// j + k != ell by direct enumeration, and checks the closed form.
pub fn count_s_prime(ell: u64, d: u64, t: u64) -> Result<u64> {
    if ell < 3 {
        return Err(Error::Domain(format!("ell = {ell} must be at least 3")));
    }
    if d == 0 || ell % d != 0 {
        return Err(Error::NotADivisor { d, n: ell });
    }
    let cofactor = ell / d;
    if t == 0 || t > cofactor {
        return Err(Error::Domain(format!(
            "t = {t} must lie in 1..={cofactor}"
        )));
    }
    if gcd(t, cofactor) != 1 {
        return Err(Error::NotCoprime { a: t, m: cofactor });
    }
    let target = (t * d) % ell;
    let mut count = 0u64;
    for j in 1..ell {
        for k in 1..ell {
            if (2 * j + k) % ell == target && j + k != ell {
                count += 1;
            }
        }
    }
    let closed = count_s_prime_closed(ell, d);
    if count != closed {
        return Err(Error::Consistency(format!(
            "|S'({d},{t})| enumeration {count} != closed form {closed} for ell={ell}"
        )));
    }
    Ok(count)
}

/// Square roots mod an odd prime via Tonelli-Shanks; `None` for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let mut s = 0u32;
    let mut q = p - 1;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    let mut z = 2u64;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mod_mul(t2, t2, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r)
}

pub fn is_primitive_root(g: u64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    let g = g % p;
    if g == 0 {
        return Ok(false);
    }
    if p == 2 {
        return Ok(g == 1);
    }
    let f = factorize(p - 1)?;
    let primitive = f.primes().all(|r| mod_pow(g, (p - 1) / r, p) != 1);
    Ok(primitive)
}

pub fn smallest_primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    if p == 2 {
        return Ok(1);
    }
    let f = factorize(p - 1)?;
    for g in 2..p {
        if f.primes().all(|r| mod_pow(g, (p - 1) / r, p) != 1) {
            return Ok(g);
        }
    }
    Err(Error::Consistency(format!("no primitive root mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small_cases() {
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(
            factorize(2730).unwrap().factors,
            vec![(2, 1), (3, 1), (5, 1), (7, 1), (13, 1)]
        );
        assert_eq!(factorize(0).unwrap_err(), Error::ZeroValue);
    }

    #[test]
    fn factorize_large_semiprime() {
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
        let m = (1u64 << 61) - 1; // Mersenne prime
        assert_eq!(factorize(m).unwrap().factors, vec![(m, 1)]);
    }

    #[test]
    fn euler_phi_matches_coprime_count() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        for p in [2u64, 3, 31, 97] {
            assert_eq!(euler_phi(p), p - 1);
        }
        for n in 1..=300u64 {
            let direct = (1..=n).filter(|&t| gcd(t, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), direct, "phi({n})");
        }
    }

    #[test]
    fn moebius_values_and_divisor_sum() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        // sum over k | r of mu(k) vanishes except at r = 1
        for r in 1..=1000u64 {
            let s: i64 = divisors(r).unwrap().into_iter().map(moebius).sum();
            assert_eq!(s, if r == 1 { 1 } else { 0 }, "r = {r}");
        }
    }

    #[test]
    fn omega_counts_distinct_primes() {
        assert_eq!(omega(1), 0);
        assert_eq!(omega(6), 2);
        assert_eq!(omega(16), 1);
    }

    #[test]
    fn multiplicative_order_cases() {
        assert_eq!(multiplicative_order(2, 31).unwrap(), 5);
        assert_eq!(multiplicative_order(1, 17).unwrap(), 1);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(
            multiplicative_order(6, 12).unwrap_err(),
            Error::NotCoprime { a: 6, m: 12 }
        );
        // brute-force cross-check
        for m in 2..=60u64 {
            for a in 1..m {
                if gcd(a, m) != 1 {
                    continue;
                }
                let mut k = 1;
                let mut x = a;
                while x != 1 {
                    x = x * a % m;
                    k += 1;
                }
                assert_eq!(multiplicative_order(a, m).unwrap(), k, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn ramanujan_sum_examples() {
        assert_eq!(ramanujan_sum(6, 0), 2); // phi(6)
        assert_eq!(ramanujan_sum(9, 0), 6);
        assert_eq!(ramanujan_sum(6, 2), -1);
        assert_eq!(ramanujan_sum(4, 2), -2);
        assert_eq!(ramanujan_sum_oracle(1, 5), 1);
        assert_eq!(ramanujan_sum_oracle(5, 5), 4);
        assert_eq!(ramanujan_sum_oracle(12, 8), ramanujan_sum(12, 4));
    }

    #[test]
    fn ramanujan_sum_matches_oracle_small() {
        for n in 1..=120u64 {
            for m in 0..=n as i64 {
                assert_eq!(
                    ramanujan_sum(n, m),
                    ramanujan_sum_oracle(n, m),
                    "c_{n}({m})"
                );
            }
        }
    }

    #[test]
    fn ramanujan_sum_gcd_reduction() {
        for n in 1..=200u64 {
            for m in -25i64..=(n as i64 + 25) {
                let g = {
                    let mm = m.rem_euclid(n as i64) as u64;
                    if mm == 0 { n } else { gcd(n, mm) }
                };
                assert_eq!(ramanujan_sum(n, m), ramanujan_sum(n, g as i64));
            }
        }
    }

    #[test]
    fn ramanujan_at_one_is_moebius() {
        for n in 1..=500u64 {
            assert_eq!(ramanujan_sum_oracle(n, 1), moebius(n), "n = {n}");
        }
    }

    #[test]
    fn s_prime_counts() {
        assert_eq!(count_s_prime(5, 5, 1).unwrap(), 4);
        assert_eq!(count_s_prime(5, 1, 1).unwrap(), 2);
        assert_eq!(count_s_prime(6, 1, 1).unwrap(), 4);
        assert!(count_s_prime(2, 1, 1).is_err());
        assert!(count_s_prime(6, 4, 1).is_err());
        assert!(count_s_prime(6, 1, 4).is_err());
    }

    #[test]
    fn s_prime_matches_closed_form_everywhere() {
        for ell in 3..=60u64 {
            for d in divisors(ell).unwrap() {
                for t in 1..=ell / d {
                    if gcd(t, ell / d) == 1 {
                        count_s_prime(ell, d, t).unwrap();
                    }
                }
            }
        }
    }

    // The index-set partition behind the bound derivation: lines
    // ax + by = td (mod ell) over admissible (d, t) tile all of I x I.
    #[test]
    fn lattice_partition_by_parallel_lines() {
        for ell in 2..=60u64 {
            for (a, b) in [(2u64, 1u64), (1, 1), (3, 2)] {
                let mut seen = vec![0u32; (ell as usize - 1) * (ell as usize - 1)];
                for d in divisors(ell).unwrap() {
                    for t in 1..=ell / d {
                        if gcd(t, ell / d) != 1 {
                            continue;
                        }
                        let target = (t * d) % ell;
                        for x in 1..ell {
                            for y in 1..ell {
                                if (a * x + b * y) % ell == target {
                                    seen[((x - 1) * (ell - 1) + (y - 1)) as usize] += 1;
                                }
                            }
                        }
                    }
                }
                assert!(
                    seen.iter().all(|&c| c == 1),
                    "ell={ell} a={a} b={b}: not a partition"
                );
            }
        }
    }

    #[test]
    fn sqrt_mod_matches_enumeration() {
        for p in (3..300u64).filter(|&p| is_prime(p)) {
            for a in 0..p {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mod_mul(r, r, p), a, "p={p} a={a}"),
                    None => {
                        assert!((0..p).all(|x| mod_mul(x, x, p) != a), "p={p} a={a}")
                    }
                }
            }
        }
    }

    #[test]
    fn primality_and_primitive_roots() {
        assert!(is_prime(2) && is_prime(31) && is_prime((1 << 61) - 1));
        assert!(!is_prime(1) && !is_prime(561) && !is_prime(1_000_001));
        assert_eq!(smallest_primitive_root(2).unwrap(), 1);
        assert_eq!(smallest_primitive_root(7).unwrap(), 3);
        assert_eq!(smallest_primitive_root(31).unwrap(), 3);
        assert!(is_primitive_root(7, 11).unwrap());
        assert!(!is_primitive_root(3, 11).unwrap());
    }
}

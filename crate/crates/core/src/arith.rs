//! Rational-integer helpers: primality, trial-division factorization,
//! modular powers and square roots.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division limit shared by every factorization in the crate.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Below this modulus square roots are found by scanning residues.
const BRUTE_FORCE_SQRT_LIMIT: u64 = 100_000;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Factors `n >= 1` by trial division up to [`TRIAL_DIVISION_BOUND`].
///
/// A cofactor left over after trial division is accepted only if it is a
/// certified prime.
pub fn factor_u64(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let original = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND && p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if is_prime(n) {
            out.push((n, 1));
        } else {
            return Err(Error::Unfactorable(original.to_string(), TRIAL_DIVISION_BOUND));
        }
    }
    Ok(out)
}

/// Factors a positive big integer; cofactors beyond 64 bits must be absent.
pub fn factor_big(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    if let Some(small) = n.to_u64() {
        return factor_u64(small);
    }
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let bp = BigUint::from(p);
        if (&n % &bp).is_zero() {
            let mut e = 0;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            out.push((p, e));
            if let Some(small) = n.to_u64() {
                for (q, e) in factor_u64(small)? {
                    out.push((q, e));
                }
                return Ok(out);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Err(Error::Unfactorable(n.to_string(), TRIAL_DIVISION_BOUND))
}

/// Square-free test with honest failure beyond the trial-division range.
pub fn is_square_free(m: i64) -> Result<bool> {
    let mut n = m.unsigned_abs();
    if n == 0 {
        return Ok(false);
    }
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND && p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(false);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n == 1 || is_prime(n) {
        return Ok(true);
    }
    // Every prime factor of the cofactor now exceeds the bound.
    let r = n.isqrt();
    if r * r == n {
        return Ok(false);
    }
    let bound = TRIAL_DIVISION_BOUND as u128;
    if (n as u128) < bound * bound * bound {
        // exactly two distinct large prime factors
        return Ok(true);
    }
    Err(Error::SquareFreeUnverified(m, TRIAL_DIVISION_BOUND))
}

/// Least nonnegative residue of `a` modulo `m > 0`.
pub fn rem_euclid_big(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn residue_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Euler's criterion; `a` is taken modulo the odd prime `p`.
pub fn is_quadratic_residue(a: u64, p: u64) -> bool {
    let a = a % p;
    a == 0 || pow_mod(a, (p - 1) / 2, p) == 1
}

/// Some `x` with `x^2 = a (mod p)` for a prime `p`, or `None` for a non-residue.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if !is_quadratic_residue(a, p) {
        return None;
    }
    if p < BRUTE_FORCE_SQRT_LIMIT {
        return (1..p).find(|&x| mul_mod(x, x, p) == a);
    }
    Some(tonelli_shanks(a, p))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    if s == 1 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let z = (2..p).find(|&z| !is_quadratic_residue(z, p)).unwrap();
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Positive divisors of `n` in increasing order.
pub fn divisors_big(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor_big(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

pub fn big_abs(x: &BigInt) -> BigUint {
    x.magnitude().clone()
}

pub fn is_negative(x: &BigInt) -> bool {
    x.sign() == Sign::Minus
}

/// Exact integer square root of a nonnegative big integer if it is a perfect square.
pub fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if is_negative(x) {
        return None;
    }
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

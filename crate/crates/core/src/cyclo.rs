//! Splitting of rational primes in cyclotomic fields `Q(ζ_m)`.
//!
//! With `m = q^k n` and `q ∤ n`, the prime `q` has ramification index
//! `φ(q^k)`, residue degree equal to the order of `q` mod `n`, and
//! `φ(n)/f` prime factors.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Cyclotomic moduli `m` (`m ≢ 2 mod 4`) whose ring of integers has class number 1.
pub const CYCLOTOMIC_CLASS_NUMBER_ONE: [u64; 29] = [
    3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 24, 25, 27, 28, 32, 33, 35, 36, 40, 44,
    45, 48, 60, 84,
];

/// Square-free `m < 0` for which `Q(sqrt m)` has class number 1.
pub const IMAGINARY_QUADRATIC_CLASS_NUMBER_ONE: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

pub fn class_number_one_lists() -> (&'static [u64], &'static [i64]) {
    (&CYCLOTOMIC_CLASS_NUMBER_ONE, &IMAGINARY_QUADRATIC_CLASS_NUMBER_ONE)
}

pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidModulus("phi(0) is undefined".into()));
    }
    Ok(arith::factor_u64(m)?
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// Least `f >= 1` with `a^f = 1 (mod n)`.
pub fn multiplicative_order(a: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus(format!("modulus must be at least 2, got {n}")));
    }
    let r = a.rem_euclid(n as i64) as u64;
    if r.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a: a.to_string(), n: n.to_string() });
    }
    // the order divides φ(n): strip prime factors while the power stays 1
    let mut order = euler_phi(n)?;
    for (p, _) in arith::factor_u64(order)? {
        while order % p == 0 && arith::pow_mod(r, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// `a` is a primitive root modulo `n` when its order is `φ(n)`.
pub fn is_primitive_root(a: i64, n: u64) -> Result<bool> {
    Ok(multiplicative_order(a, n)? == euler_phi(n)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycloClass {
    Split,
    Inert,
    CompletelyRamified,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloSplitting {
    pub m: u64,
    pub q: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    pub phi_m: u64,
    /// `e > 1`; equals `q | m` except for `q = 2` when `m = 2 mod 4`.
    pub ramified: bool,
    pub classification: CycloClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicDescriptor {
    pub m: u64,
    pub degree: u64,
    /// `(-1)^((p-1)/2) p^(p-2)`, present when `m` is an odd prime.
    pub discriminant_prime_case: Option<String>,
}

pub fn cyclotomic_descriptor(m: u64) -> Result<CyclotomicDescriptor> {
    if m < 3 {
        return Err(Error::InvalidModulus(format!("cyclotomic modulus must be at least 3, got {m}")));
    }
    let disc = (m % 2 == 1 && arith::is_prime(m)).then(|| {
        let magnitude = BigInt::from(m).pow((m - 2) as u32);
        let signed = if ((m - 1) / 2).is_multiple_of(2) { magnitude } else { -magnitude };
        signed.to_string()
    });
    Ok(CyclotomicDescriptor { m, degree: euler_phi(m)?, discriminant_prime_case: disc })
}

fn check(m: u64, q: u64) -> Result<()> {
    if m < 3 {
        return Err(Error::InvalidModulus(format!("cyclotomic modulus must be at least 3, got {m}")));
    }
    if !arith::is_prime(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    Ok(())
}

/// `(e, f, g)` for `q` in `Q(ζ_m)`, with a classification label.
pub fn split_prime_cyclotomic(m: u64, q: u64) -> Result<CycloSplitting> {
    check(m, q)?;
    let mut n = m;
    let mut qk = 1u64;
    while n.is_multiple_of(q) {
        n /= q;
        qk *= q;
    }
    let e = euler_phi(qk)?;
    let (f, g) = if n == 1 {
        (1, 1)
    } else {
        let f = multiplicative_order(q as i64, n)?;
        (f, euler_phi(n)? / f)
    };
    let phi_m = euler_phi(m)?;
    debug_assert_eq!(e * f * g, phi_m);
    let classification = classify(m, q, e, g);
    let notes = (classification == CycloClass::CompletelyRamified && n == 1)
        .then(|| format!("({q}) = (1 - ζ)^{e} with ζ a primitive {m}-th root of unity"));
    Ok(CycloSplitting { m, q, e, f, g, phi_m, ramified: e > 1, classification, notes })
}

/// Ramified primes are `CompletelyRamified` when `g = 1` and `Mixed` when
/// they also split (`e > 1`, `g > 1`); unramified ones are `Split`, `Inert`
/// or `Mixed` by their residue degree.
fn classify(m: u64, q: u64, e: u64, g: u64) -> CycloClass {
    if e > 1 {
        if g == 1 {
            CycloClass::CompletelyRamified
        } else {
            CycloClass::Mixed
        }
    } else if (q - 1).is_multiple_of(m) {
        CycloClass::Split
    } else if g == 1 {
        CycloClass::Inert
    } else {
        CycloClass::Mixed
    }
}

pub fn cyclo_classification(m: u64, q: u64) -> Result<CycloClass> {
    Ok(split_prime_cyclotomic(m, q)?.classification)
}
